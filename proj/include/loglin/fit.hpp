#pragma once

#include <string>
#include <vector>

#include "loglin/model.hpp"
#include "loglin/table.hpp"

namespace loglin {

enum class FitMethod { ClosedForm, Ipf };

std::string to_string(FitMethod m);

struct FitResult {
  GeneratingClass model;
  ContingencyTable fitted;
  FitMethod method = FitMethod::ClosedForm;
  /// IPF cycles performed; 0 for closed form.
  int iterations = 0;
  /// Largest |observed − fitted| over all generator margins.
  double max_margin_deviation = 0.0;
  int df = 0;
  /// False only when IPF stopped at `max_iter` above tolerance.
  bool converged = true;
};

/// Cliques of a decomposable model in an order with the running
/// intersection property: separators[i] = cliques[i+1] ∩ (cliques[0..i]),
/// each contained in some earlier clique.
struct CliqueTree {
  std::vector<NameSet> cliques;
  std::vector<NameSet> separators;
};

/// Throws InputError when `gc` is not decomposable.
CliqueTree build_clique_tree(const GeneratingClass& gc);

inline constexpr double kDefaultIpfTolerance = 1e-8;
inline constexpr int kDefaultIpfMaxIterations = 1000;

/// One observed marginal table per generator, in generator order.
std::vector<ContingencyTable> sufficient_statistics(const ContingencyTable& t,
                                                    const GeneratingClass& gc);

/// Closed-form MLE: product of clique margins over separator margins.
/// A zero separator margin yields a zero cell.
FitResult fit_decomposable(const ContingencyTable& t, const GeneratingClass& gc);

/// Iterative proportional fitting from the all-ones table. Stops when the
/// largest absolute margin deviation after a full cycle is at most `tol`;
/// otherwise returns the last iterate with `converged == false`.
FitResult fit_ipf(const ContingencyTable& t, const GeneratingClass& gc,
                  double tol = kDefaultIpfTolerance,
                  int max_iter = kDefaultIpfMaxIterations);

/// Closed form for decomposable models, IPF otherwise.
FitResult fit(const ContingencyTable& t, const GeneratingClass& gc,
              double tol = kDefaultIpfTolerance,
              int max_iter = kDefaultIpfMaxIterations);

/// Cells minus free parameters: ∏ L_f − Σ_{terms} ∏_{f∈term} (L_f − 1).
int degrees_of_freedom(const GeneratingClass& gc,
                       const std::vector<FactorSpec>& factors);

/// Largest absolute difference between observed and fitted generator margins.
double birch_check(const FitResult& fr, const ContingencyTable& t);

/// e.g. "n(123) * n(134) / n(13)"; throws InputError when not decomposable.
std::string render_factorization(const GeneratingClass& gc);

}  // namespace loglin
