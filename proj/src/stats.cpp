#include "loglin/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace loglin {

namespace {

constexpr int kMaxTerms = 10000;
constexpr double kEps = 1e-16;

void require_same_shape(const ContingencyTable& o, const ContingencyTable& e) {
  if (!o.same_shape(e)) {
    throw InputError("observed and expected tables differ in shape");
  }
}

// Series expansion of P(a, x); converges quickly for x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double term = 1.0 / a;
  double sum = term;
  for (int n = 0; n < kMaxTerms; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a, x) (modified Lentz); for x ≥ a + 1.
double gamma_q_fraction(double a, double x) {
  constexpr double tiny = std::numeric_limits<double>::min() / kEps;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < kMaxTerms; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

void require_gamma_args(double a, double x) {
  if (!(a > 0.0) || !(x >= 0.0) || std::isnan(x)) {
    throw InputError("incomplete gamma needs a > 0 and x >= 0");
  }
}

void require_chi2_args(double x, int df) {
  if (df < 1) throw InputError("chi-square df must be at least 1");
  if (!(x >= 0.0)) throw InputError("chi-square statistic must be nonnegative");
}

}  // namespace

double pearson_chi2(const ContingencyTable& observed,
                    const ContingencyTable& expected) {
  require_same_shape(observed, expected);
  double sum = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double o = observed[i];
    const double e = expected[i];
    if (e > 0.0) {
      sum += (o - e) * (o - e) / e;
    } else if (o > 0.0) {
      throw InputError("expected count is zero where the observed count is positive");
    }
  }
  return sum;
}

double deviance_g2(const ContingencyTable& observed,
                   const ContingencyTable& expected) {
  require_same_shape(observed, expected);
  double sum = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double o = observed[i];
    const double e = expected[i];
    if (o == 0.0) continue;
    if (!(e > 0.0)) {
      throw InputError("expected count is zero where the observed count is positive");
    }
    sum += o * std::log(e / o);
  }
  // Rounding can leave a tiny negative value when the tables coincide.
  return std::max(0.0, -2.0 * sum);
}

double gamma_p(double a, double x) {
  require_gamma_args(a, x);
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return gamma_p_series(a, x);
  return 1.0 - gamma_q_fraction(a, x);
}

double gamma_q(double a, double x) {
  require_gamma_args(a, x);
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_fraction(a, x);
}

double chi2_sf(double x, int df) {
  require_chi2_args(x, df);
  return std::clamp(gamma_q(0.5 * df, 0.5 * x), 0.0, 1.0);
}

double chi2_cdf(double x, int df) {
  require_chi2_args(x, df);
  return std::clamp(gamma_p(0.5 * df, 0.5 * x), 0.0, 1.0);
}

TestReport goodness_of_fit(const ContingencyTable& observed,
                           const ContingencyTable& expected, int df) {
  TestReport r;
  r.g2 = deviance_g2(observed, expected);
  r.pearson_x2 = pearson_chi2(observed, expected);
  r.df = df;
  if (df > 0) {
    r.p_g2 = chi2_sf(r.g2, df);
    r.p_x2 = chi2_sf(r.pearson_x2, df);
  }
  return r;
}

}  // namespace loglin
