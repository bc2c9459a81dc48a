#include "segcert/stats.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "segcert/error.h"

namespace segcert {
namespace {

constexpr double kLn2Pi = 1.837877066409345483560659472811;  // log(2*pi)
constexpr double kLnSqrt2Pi = 0.918938533204672741780329736406;

// Error of Stirling's approximation: log(x!) - log(sqrt(2*pi*x) (x/e)^x).
double stirlerr(double n) {
  constexpr double S0 = 1.0 / 12.0;
  constexpr double S1 = 1.0 / 360.0;
  constexpr double S2 = 1.0 / 1260.0;
  constexpr double S3 = 1.0 / 1680.0;
  constexpr double S4 = 1.0 / 1188.0;
  if (n <= 15.0) {
    return std::lgamma(n + 1.0) - (n + 0.5) * std::log(n) + n - kLnSqrt2Pi;
  }
  const double nn = n * n;
  if (n > 500.0) return (S0 - S1 / nn) / n;
  if (n > 80.0) return (S0 - (S1 - S2 / nn) / nn) / n;
  if (n > 35.0) return (S0 - (S1 - (S2 - S3 / nn) / nn) / nn) / n;
  return (S0 - (S1 - (S2 - (S3 - S4 / nn) / nn) / nn) / nn) / n;
}

// Deviance term x*log(x/np) + np - x, evaluated without cancellation when
// x is close to np.
double bd0(double x, double np) {
  if (std::fabs(x - np) < 0.1 * (x + np)) {
    double v = (x - np) / (x + np);
    double s = (x - np) * v;
    double ej = 2.0 * x * v;
    v *= v;
    for (int j = 1; j < 1000; ++j) {
      ej *= v;
      const double s1 = s + ej / (2 * j + 1);
      if (s1 == s) return s1;
      s = s1;
    }
  }
  return x * std::log(x / np) + np - x;
}

// Generalized binomial term C(k+m, k) p^k q^m for real k, m >= 0.
double saddle_pmf(double k, double m, double p, double q) {
  const double n = k + m;
  if (p == 0.0) return k == 0.0 ? 1.0 : 0.0;
  if (q == 0.0) return m == 0.0 ? 1.0 : 0.0;
  if (k == 0.0) {
    if (m == 0.0) return 1.0;
    const double lc = p < 0.1 ? -bd0(n, n * q) - n * p : n * std::log(q);
    return std::exp(lc);
  }
  if (m == 0.0) {
    const double lc = q < 0.1 ? -bd0(n, n * p) - n * q : n * std::log(p);
    return std::exp(lc);
  }
  const double lc = stirlerr(n) - stirlerr(k) - stirlerr(m) - bd0(k, n * p) -
                    bd0(m, n * q);
  const double lf = kLn2Pi + std::log(k) + std::log(m / n);
  return std::exp(lc - 0.5 * lf);
}

// x^a (1-x)^b / (a B(a, b)), the prefactor of the continued fraction.
double beta_front(double a, double b, double x) {
  if (a < 1.0 || b < 1.0) {
    return std::exp(std::lgamma(a + b) - std::lgamma(a + 1.0) - std::lgamma(b) +
                    a * std::log(x) + b * std::log1p(-x));
  }
  return saddle_pmf(a, b - 1.0, x, 1.0 - x) * (1.0 - x);
}

double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIter = 200000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw std::runtime_error("incomplete beta continued fraction did not converge");
}

void check_binomial_args(Count x, Count n, double p0) {
  if (n == 0) throw InvalidArgument("binomial test requires n >= 1");
  if (x > n) {
    throw InvalidArgument("binomial test requires x <= n (x=" + std::to_string(x) +
                          ", n=" + std::to_string(n) + ")");
  }
  if (!(p0 > 0.0 && p0 < 1.0)) {
    throw InvalidArgument("binomial null probability must lie in (0, 1)");
  }
}

double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

}  // namespace

double binom_pmf(Count k, Count n, double p) {
  if (k > n) return 0.0;
  return saddle_pmf(static_cast<double>(k), static_cast<double>(n - k), p, 1.0 - p);
}

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw InvalidArgument("incomplete beta requires a > 0 and b > 0");
  }
  if (!(x >= 0.0 && x <= 1.0)) {
    throw InvalidArgument("incomplete beta requires x in [0, 1]");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return clamp01(beta_front(a, b, x) * beta_continued_fraction(a, b, x));
  }
  const double y = 1.0 - x;
  return clamp01(1.0 - beta_front(b, a, y) * beta_continued_fraction(b, a, y));
}

double binom_p_value_ge(Count x, Count n, double p0) {
  check_binomial_args(x, n, p0);
  if (x == 0) return 1.0;
  return regularized_incomplete_beta(static_cast<double>(x),
                                     static_cast<double>(n - x + 1), p0);
}

double binom_p_value_two_sided(Count x, Count n, double p0) {
  check_binomial_args(x, n, p0);
  constexpr double kRelSlack = 1e-7;
  const double threshold = binom_pmf(x, n, p0) * (1.0 + kRelSlack);

  // The pmf is unimodal, so {j : pmf(j) <= threshold} is a prefix [0, lo]
  // together with a suffix [hi, n]; both ends are found by bisection.
  Count mode = static_cast<Count>(std::floor((static_cast<double>(n) + 1.0) * p0));
  if (mode > n) mode = n;
  if (binom_pmf(mode, n, p0) <= threshold) return 1.0;

  double total = 0.0;
  if (binom_pmf(0, n, p0) <= threshold) {
    // Largest j in [0, mode) with pmf(j) <= threshold.
    Count lo = 0;
    Count hi = mode;
    while (hi - lo > 1) {
      const Count mid = lo + (hi - lo) / 2;
      if (binom_pmf(mid, n, p0) <= threshold) lo = mid; else hi = mid;
    }
    // P[X <= lo] = P[n - X >= n - lo] with n - X ~ Binomial(n, 1 - p0).
    total += binom_p_value_ge(n - lo, n, 1.0 - p0);
  }
  if (binom_pmf(n, n, p0) <= threshold) {
    // Smallest j in (mode, n] with pmf(j) <= threshold.
    Count lo = mode;
    Count hi = n;
    while (hi - lo > 1) {
      const Count mid = lo + (hi - lo) / 2;
      if (binom_pmf(mid, n, p0) <= threshold) hi = mid; else lo = mid;
    }
    total += binom_p_value_ge(hi, n, p0);
  }
  return clamp01(total);
}

double clopper_pearson_lower(Count x, Count n, double conf) {
  if (!(conf > 0.0 && conf < 1.0)) {
    throw InvalidArgument("confidence level must lie in (0, 1)");
  }
  if (n == 0) throw InvalidArgument("Clopper-Pearson bound requires n >= 1");
  if (x > n) throw InvalidArgument("Clopper-Pearson bound requires x <= n");
  if (x == 0) return 0.0;

  // P[Binomial(n, p) >= x] is increasing in p; bisect for the level 1 - conf.
  const double target = 1.0 - conf;
  double lo = 0.0;
  double hi = 1.0;
  for (int iter = 0; iter < 200 && hi - lo > 1e-14; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double tail = regularized_incomplete_beta(
        static_cast<double>(x), static_cast<double>(n - x + 1), mid);
    if (tail < target) lo = mid; else hi = mid;
  }
  return lo;
}

double norm_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

namespace {

// Acklam's rational approximation for p <= 0.5, followed by one Newton
// step against norm_cdf.
double lower_norm_quantile(double p) {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double kLowBreak = 0.02425;

  double x;
  if (p < kLowBreak) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  }
  if (p == 0.5) return 0.0;
  const double err = norm_cdf(x) - p;
  const double density = std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
  return x - err / density;
}

}  // namespace

double norm_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw InvalidArgument("normal quantile requires p in (0, 1)");
  }
  if (p > 0.5) return -lower_norm_quantile(1.0 - p);
  return lower_norm_quantile(p);
}

}  // namespace segcert
