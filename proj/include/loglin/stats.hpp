#pragma once

#include "loglin/table.hpp"

namespace loglin {

struct TestReport {
  double g2 = 0.0;
  double pearson_x2 = 0.0;
  int df = 0;
  double p_g2 = 1.0;
  double p_x2 = 1.0;
};

/// Σ (O − E)² / E over cells with E > 0. A cell with E = 0 and O > 0 throws.
double pearson_chi2(const ContingencyTable& observed,
                    const ContingencyTable& expected);

/// −2 Σ O log(E / O); cells with O = 0 contribute nothing.
double deviance_g2(const ContingencyTable& observed,
                   const ContingencyTable& expected);

/// Regularized lower incomplete gamma P(a, x).
double gamma_p(double a, double x);
/// Regularized upper incomplete gamma Q(a, x) = 1 − P(a, x).
double gamma_q(double a, double x);

/// Upper tail of the chi-square distribution, Q(df/2, x/2).
double chi2_sf(double x, int df);
/// Lower tail, P(df/2, x/2).
double chi2_cdf(double x, int df);

/// Both statistics with their p-values. With df = 0 the p-values are 1.
TestReport goodness_of_fit(const ContingencyTable& observed,
                           const ContingencyTable& expected, int df);

}  // namespace loglin
