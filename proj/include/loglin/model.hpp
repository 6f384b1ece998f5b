#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "loglin/common.hpp"
#include "loglin/graph.hpp"
#include "loglin/table.hpp"

namespace loglin {

/// A hierarchical log-linear model given by its maximal interaction terms.
///
/// Construction drops generators contained in other generators. Generators
/// are kept in a canonical order (lexicographic in factor positions).
class GeneratingClass {
 public:
  GeneratingClass(std::vector<std::string> factors,
                  std::vector<NameSet> generators);

  /// The single-generator model over all factors.
  static GeneratingClass saturated(std::vector<std::string> factors);

  const std::vector<std::string>& factors() const { return factors_; }
  const std::vector<NameSet>& generators() const { return generators_; }
  NameSet factor_set() const { return {factors_.begin(), factors_.end()}; }
  std::size_t position(const std::string& factor) const;

  bool is_saturated() const;

  /// Factor names of `term` in factor order.
  std::vector<std::string> ordered(const NameSet& term) const;
  /// "123" when every factor name is one character, else "A,B,C".
  std::string format_term(const NameSet& term) const;
  /// "[123][34]" or "[A,B][C]".
  std::string to_string() const;

  bool operator==(const GeneratingClass&) const = default;

 private:
  std::vector<std::string> factors_;
  std::vector<NameSet> generators_;
};

/// Downward-closed set of interaction terms; includes the empty term.
struct TermSet {
  std::set<NameSet> terms;

  bool contains(const NameSet& t) const { return terms.count(t) != 0; }
  std::size_t size() const { return terms.size(); }
};

/// Parses `[123][34]` (single-character shorthand) or `[A,B][C]`.
/// Whitespace is ignored; non-maximal generators are absorbed.
GeneratingClass parse_model(std::string_view text,
                            const std::vector<FactorSpec>& factors);
GeneratingClass parse_model(std::string_view text,
                            const std::vector<std::string>& factor_names);

TermSet hierarchical_closure(const GeneratingClass& gc);

bool is_comprehensive(const GeneratingClass& gc);

/// Vertices are the factors; u–v is an edge iff some generator holds both.
UndirectedGraph interaction_graph(const GeneratingClass& gc);

/// Generators coincide with the maximal cliques of the interaction graph.
bool is_graphical(const GeneratingClass& gc);

/// Graphical with a chordal interaction graph.
bool is_decomposable(const GeneratingClass& gc);

/// Model whose generators are the maximal cliques of `g`. The factor order
/// defaults to sorted vertex names.
GeneratingClass model_from_graph(const UndirectedGraph& g);
GeneratingClass model_from_graph(const UndirectedGraph& g,
                                 std::vector<std::string> factor_order);

}  // namespace loglin
