#include "commands.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string_view>
#include <thread>

#include "CLI11.hpp"
#include "counts_file.h"
#include "csv.h"
#include "label_files.h"
#include "manifest.h"
#include "presets.h"
#include "segcert/error.h"
#include "segcert/metrics.h"
#include "segcert/savgol.h"
#include "segcert/smoothing.h"
#include "segcert/synthetic.h"

#ifndef SEGCERT_VERSION
#define SEGCERT_VERSION "0.0.0"
#endif

namespace segcert::cli {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::size_t resolve_threads(std::size_t flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("SEGCERT_THREADS")) {
    std::size_t v = 0;
    std::istringstream in(env);
    if (in >> v && v > 0) return v;
    throw InvalidArgument("SEGCERT_THREADS must be a positive integer");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    parts.emplace_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_double(const std::string& token) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    throw InvalidArgument("not a number: '" + token + "'");
  }
  if (used != token.size()) throw InvalidArgument("not a number: '" + token + "'");
  return v;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  for (const std::string& tok : split(text, ',')) {
    if (tok.empty()) throw InvalidArgument("empty entry in list '" + text + "'");
    out.push_back(parse_double(tok));
  }
  return out;
}

// "a,b,c" lists, "lo:hi" decade ranges (both powers of ten) or
// "start:stop:step" linear ranges.
std::vector<double> parse_grid(const std::string& text) {
  if (text.find(':') == std::string::npos) return parse_list(text);
  const auto parts = split(text, ':');
  if (parts.size() == 3) {
    return linear_grid(parse_double(parts[0]), parse_double(parts[1]), parse_double(parts[2]));
  }
  if (parts.size() == 2) {
    auto exponent = [&](const std::string& tok) {
      const double v = parse_double(tok);
      const double e = std::round(std::log10(v));
      if (!(v > 0.0) || std::fabs(std::pow(10.0, e) - v) > 1e-9 * v) {
        throw InvalidArgument("decade range endpoints must be powers of ten: '" + text + "'");
      }
      return static_cast<int>(e);
    };
    return decade_grid(exponent(parts[0]), exponent(parts[1]));
  }
  throw InvalidArgument("cannot parse grid '" + text + "'");
}

std::vector<Algorithm> parse_algorithms(const std::string& text) {
  std::vector<Algorithm> out;
  for (const std::string& tok : split(text, ',')) {
    const auto a = parse_algorithm(tok);
    if (!a) throw InvalidArgument("unknown algorithm '" + tok + "'");
    out.push_back(*a);
  }
  return out;
}

std::vector<ErrorBudget> parse_budgets(const std::string& text) {
  if (text.empty()) throw InvalidArgument("--budgets must list at least one budget");
  std::vector<ErrorBudget> out;
  for (const std::string& tok : split(text, ',')) {
    if (tok.empty()) throw InvalidArgument("empty entry in --budgets");
    if (tok.back() == '%') {
      out.push_back({parse_double(tok.substr(0, tok.size() - 1)) / 100.0, true});
    } else {
      const double v = parse_double(tok);
      if (v < 0.0 || v != std::floor(v)) {
        throw InvalidArgument("absolute budgets must be nonnegative integers: '" + tok + "'");
      }
      out.push_back({v, false});
    }
  }
  return out;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw IoError("cannot write " + path);
  return f;
}

std::string label_token(ClassId c) { return c == kAbstain ? "~" : std::to_string(c); }

std::string integer_token(double v) { return std::to_string(static_cast<std::uint64_t>(v)); }

std::string fixed4(double v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(4) << v;
  return s.str();
}

// ---------------------------------------------------------------- certify

struct CertifyOptions {
  std::string counts;
  std::string samples;
  std::string truth;
  std::string out = "segcert";
  std::string algorithm = "segcertify";
  std::string correction = "holm";
  double sigma = 0.25;
  double tau = 0.75;
  double alpha = 0.001;
  std::uint64_t budget = 0;
  std::optional<ClassId> ignore_id;
  std::size_t threads = 0;
};

int cmd_certify(const CertifyOptions& o, const std::vector<std::string>& args,
                std::ostream& out) {
  const Clock::time_point run_start = Clock::now();
  CertConfig cfg;
  cfg.sigma = o.sigma;
  cfg.tau = o.tau;
  cfg.alpha = o.alpha;
  cfg.correction = *parse_correction(o.correction);
  cfg.budget = o.budget;
  if (o.algorithm == "segcertify") {
    cfg.validate();
  } else if (!(o.sigma > 0.0) || !(o.alpha > 0.0 && o.alpha < 1.0)) {
    throw InvalidArgument("sigma must be positive and alpha must lie in (0, 1)");
  }

  std::vector<ClassId> labels;
  std::vector<ComponentDecision> decisions;
  std::size_t num_classes = 0;
  double radius_value = 0.0;
  double cert_seconds = 0.0;
  bool may_contain_errors = false;

  if (o.algorithm == "joint_class") {
    if (o.samples.empty()) throw InvalidArgument("--algorithm joint_class requires --samples");
    const SamplesPair samples = parse_samples_file(o.samples);
    const Clock::time_point start = Clock::now();
    const JointResult jr = joint_class_certify(samples.samples0, samples.samples, o.sigma, o.alpha);
    cert_seconds = seconds_since(start);
    const std::size_t num = samples.samples0.front().size();
    labels = jr.certified ? jr.labeling : std::vector<ClassId>(num, kAbstain);
    radius_value = jr.radius;
    ClassId max_label = 1;
    for (const auto* set : {&samples.samples0, &samples.samples}) {
      for (const Labeling& v : *set) max_label = std::max(max_label, *std::max_element(v.begin(), v.end()));
    }
    num_classes = static_cast<std::size_t>(max_label) + 1;
    cfg.n0 = samples.samples0.size();
    cfg.n = samples.samples.size();
  } else {
    if (o.counts.empty()) throw InvalidArgument("--counts is required");
    const CountsPair data = parse_counts_file(o.counts);
    cfg.n0 = data.counts0.draws();
    cfg.n = data.counts.draws();
    num_classes = data.counts.num_classes();
    const Clock::time_point start = Clock::now();
    CertificationResult result =
        o.algorithm == "indiv_class"
            ? indiv_class_certify(data.counts0, data.counts, o.sigma, o.alpha)
            : seg_certify(data.counts0, data.counts, cfg, resolve_threads(o.threads));
    cert_seconds = seconds_since(start);
    labels = result.labels();
    decisions = std::move(result.decisions);
    radius_value = result.radius;
    may_contain_errors = result.may_contain_errors;
  }

  const std::size_t num = labels.size();
  const auto certified = static_cast<std::size_t>(
      std::count_if(labels.begin(), labels.end(), [](ClassId c) { return c != kAbstain; }));
  const double certified_fraction = static_cast<double>(certified) / static_cast<double>(num);

  std::optional<double> accuracy, miou, abstained;
  if (!o.truth.empty()) {
    const LabelMap pred{labels, num_classes};
    const LabelMap truth{parse_label_file(o.truth, o.ignore_id), num_classes};
    accuracy = certified_accuracy(pred, truth);
    abstained = abstain_rate(pred, truth);
    miou = mean_iou(std::span(&pred, 1), std::span(&truth, 1));
  }

  const std::string decisions_path = o.out + ".decisions.csv";
  const std::string labels_path = o.out + ".labels.txt";
  const std::string summary_path = o.out + ".summary.csv";
  const std::string manifest_path = o.out + ".manifest.json";
  {
    auto f = open_output(decisions_path);
    CsvWriter csv(f);
    if (decisions.empty()) {
      csv.row({"component", "label"});
      for (std::size_t i = 0; i < num; ++i) csv.row({std::to_string(i), label_token(labels[i])});
    } else {
      csv.row({"component", "label", "guessed_class", "hit_count", "p_value"});
      for (std::size_t i = 0; i < num; ++i) {
        const ComponentDecision& d = decisions[i];
        csv.row({std::to_string(i), label_token(d.label), std::to_string(d.guessed_class),
                 std::to_string(d.hit_count), format_number(d.p_value)});
      }
    }
  }
  {
    auto f = open_output(labels_path);
    write_labels(f, labels);
  }
  auto opt = [](const std::optional<double>& v) { return v ? format_number(*v) : std::string(); };
  {
    auto f = open_output(summary_path);
    CsvWriter csv(f);
    csv.row({"algorithm", "correction", "budget", "num_components", "num_certified",
             "certified_fraction", "radius", "accuracy", "miou", "abstain_rate", "time_s",
             "may_contain_errors"});
    csv.row({o.algorithm, o.algorithm == "segcertify" ? o.correction : "", std::to_string(o.budget),
             std::to_string(num), std::to_string(certified), format_number(certified_fraction),
             format_number(radius_value), opt(accuracy), opt(miou), opt(abstained),
             format_number(cert_seconds), may_contain_errors ? "true" : "false"});
  }

  out << "algorithm = " << o.algorithm << '\n';
  if (o.algorithm == "segcertify") out << "correction = " << o.correction << '\n';
  out << "components = " << num << '\n'
      << "certified = " << certified << " (" << fixed4(certified_fraction) << ")\n"
      << "R = " << fixed4(radius_value) << '\n';
  if (accuracy) {
    out << "accuracy = " << fixed4(*accuracy) << '\n'
        << "mIoU = " << fixed4(*miou) << '\n'
        << "abstain_rate = " << fixed4(*abstained) << '\n';
  }
  out << "t = " << fixed4(cert_seconds) << " s (certification only, excludes sampling)\n";
  if (may_contain_errors) {
    out << "note: error budget " << o.budget
        << " allows up to that many wrongly certified components\n";
  }

  RunManifest manifest;
  manifest.command = "certify";
  manifest.arguments = args;
  manifest.tool_version = SEGCERT_VERSION;
  manifest.parameters = {{"config", to_json(cfg)},
                         {"algorithm", o.algorithm},
                         {"counts", o.counts},
                         {"samples", o.samples},
                         {"truth", o.truth}};
  manifest.outputs = {decisions_path, labels_path, summary_path};
  manifest.duration_seconds = seconds_since(run_start);
  write_manifest(manifest_path, manifest);
  return kExitOk;
}

// ---------------------------------------------------------------- toy

struct ToyOptions {
  std::string preset;
  std::optional<std::size_t> reps;
  std::uint64_t seed = 0;
  std::string out;
  std::size_t threads = 0;
  bool desk = false;
  bool include_million = false;
  std::size_t window = 11;
  // custom preset
  std::string axis = "gamma";
  std::string gamma = "0";
  std::string n_grid = "1e1:1e5";
  std::size_t components = 100;
  std::size_t noisy = 1;
  double multiplier = 5.0;
  std::uint64_t n0 = 100;
  std::uint64_t n = 100;
  double alpha = 0.001;
  double tau = 0.75;
  double sigma = 0.25;
  std::size_t classes = 2;
  std::string algorithms = "segcertify_holm,segcertify_bonferroni";
  std::uint64_t budget = 0;
};

SweepSpec custom_spec(const ToyOptions& o) {
  SweepSpec spec;
  spec.oracle.num_components = o.components;
  spec.oracle.num_noisy = o.noisy;
  spec.oracle.noise_multiplier = o.multiplier;
  spec.oracle.num_classes = o.classes;
  spec.oracle.seed = o.seed;
  spec.cert.sigma = o.sigma;
  spec.cert.tau = o.tau;
  spec.cert.alpha = o.alpha;
  spec.cert.n0 = o.n0;
  spec.cert.n = o.n;
  spec.cert.budget = o.budget;
  spec.algorithms = parse_algorithms(o.algorithms);
  spec.reps = o.reps.value_or(600);
  if (o.axis == "gamma") {
    spec.axis = SweepAxis::kGamma;
    spec.grid = parse_grid(o.gamma);
  } else {
    spec.axis = SweepAxis::kComponents;
    spec.grid = parse_grid(o.n_grid);
    const auto g = parse_list(o.gamma);
    if (g.size() != 1) throw InvalidArgument("--gamma must be a single value on the N axis");
    spec.oracle.gamma = g.front();
  }
  return spec;
}

int cmd_toy(const ToyOptions& o, const std::vector<std::string>& args, std::ostream& out) {
  const Clock::time_point start = Clock::now();
  SweepSpec spec = o.preset == "custom"
                       ? custom_spec(o)
                       : toy_preset(o.preset, {o.reps, o.seed, o.desk, o.include_million});
  spec.threads = resolve_threads(o.threads);
  if (o.window % 2 == 0) throw InvalidArgument("--window must be odd");
  const SweepResult result = run_sweep(spec);

  std::ostringstream csv_text;
  CsvWriter csv(csv_text);
  csv.row({"axis", "algorithm", "raw_rate", "smoothed_rate"});
  for (Algorithm a : spec.algorithms) {
    const auto rows = result.series(a, spec.cert.budget);
    std::vector<double> raw;
    for (const SweepRow* r : rows) raw.push_back(r->mean_rate);
    const std::vector<double> smooth = savgol_smooth(raw, o.window, 1);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const double x = rows[i]->axis_value;
      csv.row({spec.axis == SweepAxis::kComponents ? integer_token(x) : format_number(x),
               std::string(to_string(a)),
               format_number(raw[i]), format_number(smooth[i])});
    }
  }

  if (o.out.empty()) {
    out << csv_text.str();
    return kExitOk;
  }
  {
    auto f = open_output(o.out);
    f << csv_text.str();
  }
  RunManifest manifest;
  manifest.command = "toy";
  manifest.arguments = args;
  manifest.tool_version = SEGCERT_VERSION;
  manifest.parameters = {{"preset", o.preset},
                         {"desk_scale", o.desk},
                         {"savgol_window", o.window},
                         {"savgol_degree", 1},
                         {"sweep", to_json(spec)}};
  manifest.outputs = {o.out};
  manifest.duration_seconds = seconds_since(start);
  write_manifest(o.out + ".manifest.json", manifest);
  return kExitOk;
}

// ---------------------------------------------------------------- kfwer

struct KfwerOptions {
  std::string budgets;
  std::string alphas = "0.1,0.001";
  std::string n_grid = "1e2:1e6";
  double gamma = 0.05;
  std::size_t noisy = 1;
  std::uint64_t n0 = 100;
  std::uint64_t n = 100;
  double tau = 0.75;
  std::size_t reps = 100;
  std::uint64_t seed = 0;
  std::string out;
  std::size_t threads = 0;
};

int cmd_kfwer(const KfwerOptions& o, const std::vector<std::string>& args, std::ostream& out) {
  const Clock::time_point start = Clock::now();
  const std::vector<ErrorBudget> budgets = parse_budgets(o.budgets);
  const std::vector<double> alphas = parse_list(o.alphas);
  const std::vector<double> grid = parse_grid(o.n_grid);
  const std::vector<std::string> budget_tokens = split(o.budgets, ',');

  std::ostringstream csv_text;
  CsvWriter csv(csv_text);
  csv.row({"N", "budget", "alpha", "rate"});
  nlohmann::json sweeps = nlohmann::json::array();
  for (double alpha : alphas) {
    SweepSpec spec = budget_sweep_spec(grid, alpha, o.reps, o.seed);
    spec.oracle.gamma = o.gamma;
    spec.oracle.num_noisy = o.noisy;
    spec.cert.n0 = o.n0;
    spec.cert.n = o.n;
    spec.cert.tau = o.tau;
    spec.threads = resolve_threads(o.threads);
    const SweepResult result = run_budget_sweep(spec, budgets);
    for (std::size_t r = 0; r < result.rows.size(); ++r) {
      const SweepRow& row = result.rows[r];
      // Relative budgets keep their "%" token; the resolved b varies with N.
      csv.row({integer_token(row.axis_value), budget_tokens[r / grid.size()],
               format_number(row.alpha), format_number(row.mean_rate)});
    }
    sweeps.push_back(to_json(spec));
  }

  if (o.out.empty()) {
    out << csv_text.str();
    return kExitOk;
  }
  {
    auto f = open_output(o.out);
    f << csv_text.str();
  }
  nlohmann::json budget_json = nlohmann::json::array();
  for (const ErrorBudget& b : budgets) {
    budget_json.push_back({{"value", b.value}, {"relative", b.relative}});
  }
  RunManifest manifest;
  manifest.command = "kfwer";
  manifest.arguments = args;
  manifest.tool_version = SEGCERT_VERSION;
  manifest.parameters = {{"budgets", budget_json}, {"sweeps", sweeps}};
  manifest.outputs = {o.out};
  manifest.duration_seconds = seconds_since(start);
  write_manifest(o.out + ".manifest.json", manifest);
  return kExitOk;
}

// ---------------------------------------------------------------- metrics

struct MetricsOptions {
  std::vector<std::string> preds;
  std::vector<std::string> truths;
  std::size_t num_classes = 0;
  std::optional<ClassId> ignore_id;
  std::string miou_mode = "pooled";
};

int cmd_metrics(const MetricsOptions& o, std::ostream& out) {
  if (o.preds.size() != o.truths.size()) {
    throw InvalidArgument("--pred and --truth must be given the same number of times");
  }
  std::vector<std::vector<ClassId>> preds, truths;
  ClassId max_label = 0;
  for (std::size_t i = 0; i < o.preds.size(); ++i) {
    preds.push_back(parse_label_file(o.preds[i]));
    truths.push_back(parse_label_file(o.truths[i], o.ignore_id));
    for (const auto* v : {&preds.back(), &truths.back()}) {
      for (ClassId c : *v) max_label = std::max(max_label, c);
    }
  }
  const std::size_t classes =
      o.num_classes > 0 ? o.num_classes : static_cast<std::size_t>(max_label) + 1;

  std::vector<LabelMap> pred_maps, truth_maps;
  LabelMap all_pred{{}, classes};
  LabelMap all_truth{{}, classes};
  for (std::size_t i = 0; i < preds.size(); ++i) {
    if (preds[i].size() != truths[i].size()) {
      throw DimensionMismatch("prediction " + o.preds[i] + " has " +
                              std::to_string(preds[i].size()) + " labels, truth has " +
                              std::to_string(truths[i].size()));
    }
    all_pred.labels.insert(all_pred.labels.end(), preds[i].begin(), preds[i].end());
    all_truth.labels.insert(all_truth.labels.end(), truths[i].begin(), truths[i].end());
    pred_maps.push_back({std::move(preds[i]), classes});
    truth_maps.push_back({std::move(truths[i]), classes});
  }
  const double acc = certified_accuracy(all_pred, all_truth);
  const double abst = abstain_rate(all_pred, all_truth);
  const double miou = mean_iou(pred_maps, truth_maps,
                               o.miou_mode == "per-input" ? MiouAveraging::kPerInputFirst
                                                          : MiouAveraging::kPooled);
  CsvWriter csv(out);
  csv.row({"accuracy", "miou", "abstain_rate"});
  csv.row({format_number(acc), format_number(miou), format_number(abst)});
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certified segmentation via randomized smoothing", "segcert"};
  app.require_subcommand(1);
  app.set_version_flag("--version", SEGCERT_VERSION);

  CertifyOptions copt;
  auto* certify = app.add_subcommand("certify", "Certify per-component counts from a file");
  certify->add_option("--counts", copt.counts, "Counts file (segcert-counts format)");
  certify->add_option("--samples", copt.samples, "Labeling samples file (joint_class only)");
  certify->add_option("--truth", copt.truth, "Ground-truth label file for metrics");
  certify->add_option("--out", copt.out, "Output path prefix")->capture_default_str();
  certify->add_option("--algorithm", copt.algorithm)
      ->check(CLI::IsMember({"segcertify", "indiv_class", "joint_class"}))
      ->capture_default_str();
  certify->add_option("--correction", copt.correction)
      ->check(CLI::IsMember({"holm", "bonferroni", "kfwer"}))
      ->capture_default_str();
  certify->add_option("--sigma", copt.sigma)->capture_default_str();
  certify->add_option("--tau", copt.tau)->capture_default_str();
  certify->add_option("--alpha", copt.alpha)->capture_default_str();
  certify->add_option("--budget", copt.budget, "Error budget b (kfwer runs with k = b + 1)")
      ->capture_default_str();
  certify->add_option("--ignore-id", copt.ignore_id, "Truth class id treated as ignore");
  certify->add_option("--threads", copt.threads, "Worker threads (default: SEGCERT_THREADS)");

  ToyOptions topt;
  auto* toy = app.add_subcommand("toy", "Synthetic oracle experiments");
  toy->add_option("--preset", topt.preset)
      ->required()
      ->check(CLI::IsMember({"fig3a", "fig3b", "fig3c", "custom"}));
  toy->add_option("--reps", topt.reps, "Repetitions per grid point");
  toy->add_option("--seed", topt.seed)->capture_default_str();
  toy->add_option("--out", topt.out, "CSV output path (default: stdout)");
  toy->add_option("--threads", topt.threads);
  toy->add_flag("--desk", topt.desk, "Coarse gamma step 0.005 and 100 reps");
  toy->add_flag("--include-1e6", topt.include_million, "Extend fig3c to N = 10^6");
  toy->add_option("--window", topt.window, "Savitzky-Golay window")->capture_default_str();
  toy->add_option("--axis", topt.axis)->check(CLI::IsMember({"gamma", "N"}));
  toy->add_option("--gamma", topt.gamma, "Gamma list or start:stop:step range");
  toy->add_option("--N-grid", topt.n_grid, "Component counts, list or lo:hi decades");
  toy->add_option("--components", topt.components);
  toy->add_option("--noisy", topt.noisy);
  toy->add_option("--multiplier", topt.multiplier);
  toy->add_option("--n0", topt.n0);
  toy->add_option("--n", topt.n);
  toy->add_option("--alpha", topt.alpha);
  toy->add_option("--tau", topt.tau);
  toy->add_option("--sigma", topt.sigma);
  toy->add_option("--classes", topt.classes);
  toy->add_option("--algorithms", topt.algorithms);
  toy->add_option("--budget", topt.budget);

  KfwerOptions kopt;
  auto* kfwer = app.add_subcommand("kfwer", "Error-budget (k-FWER) sweeps");
  kfwer->add_option("--budgets", kopt.budgets, "Budgets, e.g. 0,1,0.1%,1%")->required();
  kfwer->add_option("--alpha", kopt.alphas, "Comma-separated alphas")->capture_default_str();
  kfwer->add_option("--N-grid", kopt.n_grid)->capture_default_str();
  kfwer->add_option("--gamma", kopt.gamma)->capture_default_str();
  kfwer->add_option("--noisy", kopt.noisy)->capture_default_str();
  kfwer->add_option("--n0", kopt.n0)->capture_default_str();
  kfwer->add_option("--n", kopt.n)->capture_default_str();
  kfwer->add_option("--tau", kopt.tau)->capture_default_str();
  kfwer->add_option("--reps", kopt.reps)->capture_default_str();
  kfwer->add_option("--seed", kopt.seed)->capture_default_str();
  kfwer->add_option("--out", kopt.out, "CSV output path (default: stdout)");
  kfwer->add_option("--threads", kopt.threads);

  MetricsOptions mopt;
  auto* metrics = app.add_subcommand("metrics", "Accuracy, mIoU and abstain rate of label files");
  metrics->add_option("--pred", mopt.preds, "Prediction label file (repeatable)")->required();
  metrics->add_option("--truth", mopt.truths, "Ground-truth label file (repeatable)")->required();
  metrics->add_option("--num-classes", mopt.num_classes);
  metrics->add_option("--ignore-id", mopt.ignore_id);
  metrics->add_option("--miou-mode", mopt.miou_mode)
      ->check(CLI::IsMember({"pooled", "per-input"}))
      ->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*certify) return cmd_certify(copt, args, out);
    if (*toy) return cmd_toy(topt, args, out);
    if (*kfwer) return cmd_kfwer(kopt, args, out);
    if (*metrics) return cmd_metrics(mopt, out);
  } catch (const DimensionMismatch& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const FormatError& e) {
    err << "format error: " << e.what() << '\n';
    return kExitData;
  } catch (const InvariantViolation& e) {
    err << "invalid data: " << e.what() << '\n';
    return kExitData;
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const UndefinedMetric& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}

}  // namespace segcert::cli
