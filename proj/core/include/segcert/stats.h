#ifndef SEGCERT_STATS_H_
#define SEGCERT_STATS_H_

#include <cstdint>

namespace segcert {

using Count = std::uint64_t;

// Binomial probability mass P[X = k] for X ~ Binomial(n, p), computed with
// Loader's saddle-point expansion so that it stays accurate for n up to 1e9.
double binom_pmf(Count k, Count n, double p);

// Regularized incomplete beta function I_x(a, b) for a, b > 0 and
// x in [0, 1], evaluated with the modified Lentz continued fraction.
double regularized_incomplete_beta(double a, double b, double x);

// One-sided p-value P[X >= x], X ~ Binomial(n, p0), i.e. the test of
// H0: p <= p0. Uses P[X >= x] = I_{p0}(x, n - x + 1).
double binom_p_value_ge(Count x, Count n, double p0);

// Exact two-sided binomial test ("minlike" convention): the total mass of
// outcomes at most as likely as the observed one, with a 1e-7 relative
// tolerance on the likelihood comparison.
double binom_p_value_two_sided(Count x, Count n, double p0);

// One-sided Clopper-Pearson lower confidence bound at level `conf`:
// the p solving P[Binomial(n, p) >= x] = 1 - conf. Zero when x == 0.
double clopper_pearson_lower(Count x, Count n, double conf);

double norm_cdf(double z);

// Standard normal quantile. Throws InvalidArgument unless 0 < p < 1.
double norm_quantile(double p);

}  // namespace segcert

#endif  // SEGCERT_STATS_H_
