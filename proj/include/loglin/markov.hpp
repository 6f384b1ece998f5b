#pragma once

#include <map>
#include <string>
#include <vector>

#include "loglin/graph.hpp"
#include "loglin/model.hpp"
#include "loglin/table.hpp"

namespace loglin {

/// Probability table over factor levels; entries sum to one (±1e-12).
class JointDistribution {
 public:
  /// Normalizes `weights` by their total; throws when the total is zero.
  static JointDistribution from_weights(const ContingencyTable& weights);

  const std::vector<FactorSpec>& factors() const { return table_.factors(); }
  std::span<const double> probs() const { return table_.counts(); }
  const ContingencyTable& table() const { return table_; }

 private:
  explicit JointDistribution(ContingencyTable t) : table_(std::move(t)) {}
  ContingencyTable table_;
};

/// Positive potential tables, one per maximal clique of `graph`. Each
/// potential's factors are the clique's factors in the joint factor order.
struct CliquePotentialSet {
  UndirectedGraph graph;
  std::map<NameSet, ContingencyTable> potentials;
};

inline constexpr double kDefaultCiTolerance = 1e-9;
inline constexpr std::size_t kMaxEnumeratedCells = 1'000'000;
inline constexpr std::size_t kMaxMarkovCheckVertices = 5;

/// P(x) = (1/Z) ∏ ψ_C(x_C) by enumeration over all cells.
JointDistribution distribution_from_potentials(
    const CliquePotentialSet& ps, const std::vector<FactorSpec>& factors);

/// A ⊥ B | C.
struct CiStatement {
  NameSet a, b, c;
  auto operator<=>(const CiStatement&) const = default;
};

/// Renders as "{2} ⊥ {4} | {1,3}".
std::string to_string(const CiStatement& s);

/// |P(a,b|c) − P(a|c)P(b|c)| ≤ tol on every slice with P(c) > tol.
bool ci_holds(const JointDistribution& d, const NameSet& a, const NameSet& b,
              const NameSet& c, double tol = kDefaultCiTolerance);

struct MarkovReport {
  bool pairwise = false;
  bool local = false;
  bool global = false;
};

/// Brute-force check of the three Markov properties of `d` relative to `g`.
/// The graph's vertices must be the distribution's factors (at most 5).
MarkovReport check_markov_properties(const JointDistribution& d,
                                     const UndirectedGraph& g,
                                     double tol = kDefaultCiTolerance);

/// For each non-adjacent pair u, v: u ⊥ v | bd(u). Decomposable models add
/// the clique/separator statements. Throws for non-graphical models.
std::vector<CiStatement> implied_independences(const GeneratingClass& gc);

}  // namespace loglin
