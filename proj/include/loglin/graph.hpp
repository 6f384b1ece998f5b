#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "loglin/common.hpp"

namespace loglin {

/// Unordered vertex pair, stored with `first < second`.
using Edge = std::pair<std::string, std::string>;

Edge make_edge(std::string u, std::string v);

/// Simple undirected graph over named vertices: no loops, no multi-edges.
class UndirectedGraph {
 public:
  UndirectedGraph() = default;
  explicit UndirectedGraph(const NameSet& vertices);
  UndirectedGraph(const NameSet& vertices, const std::vector<Edge>& edges);

  /// Complete graph on `vertices`.
  static UndirectedGraph complete(const NameSet& vertices);

  NameSet vertices() const;
  std::size_t vertex_count() const { return adj_.size(); }
  bool has_vertex(const std::string& v) const { return adj_.count(v) != 0; }
  bool has_edge(const std::string& u, const std::string& v) const;
  /// Throws InputError for an unknown vertex.
  const NameSet& neighbors(const std::string& v) const;
  /// Sorted lexicographically.
  std::vector<Edge> edges() const;
  std::size_t edge_count() const;

  UndirectedGraph with_edge(const std::string& u, const std::string& v) const;
  UndirectedGraph without_edge(const std::string& u, const std::string& v) const;
  /// Subgraph induced on `keep`.
  UndirectedGraph induced(const NameSet& keep) const;

  /// Sorted edge list, e.g. "1-2 1-3 2-3".
  std::string to_string() const;

  bool operator==(const UndirectedGraph&) const = default;

 private:
  void insert_edge(const std::string& u, const std::string& v);

  std::map<std::string, NameSet> adj_;
};

/// Vertices outside `a` adjacent to some vertex in `a`.
NameSet boundary(const UndirectedGraph& g, const NameSet& a);

/// All maximal cliques (Bron–Kerbosch with pivoting), sorted. Isolated
/// vertices are singleton cliques; the empty graph has no cliques.
std::vector<NameSet> maximal_cliques(const UndirectedGraph& g);

bool is_clique(const UndirectedGraph& g, const NameSet& s);

/// Maximum-cardinality search visit order; ties go to the smallest name.
std::vector<std::string> maximum_cardinality_search(const UndirectedGraph& g);

struct ChordalityResult {
  bool chordal = false;
  /// Maximum-cardinality-search visit order (always filled).
  std::vector<std::string> search_order;
  /// Perfect elimination ordering (reverse search order) when chordal.
  std::optional<std::vector<std::string>> elimination_order;
};

ChordalityResult check_chordal(const UndirectedGraph& g);
inline bool is_chordal(const UndirectedGraph& g) {
  return check_chordal(g).chordal;
}

/// True iff every path from `a` to `b` meets `c`. The sets must be pairwise
/// disjoint with `a` and `b` nonempty.
bool separates(const UndirectedGraph& g, const NameSet& a, const NameSet& b,
               const NameSet& c);

/// Chordal supergraph by greedy minimum-fill elimination. Chordal inputs are
/// returned unchanged. Not guaranteed to add the minimum number of edges.
UndirectedGraph triangulate(const UndirectedGraph& g);

/// Brute-force isomorphism test; both graphs must have at most 8 vertices.
bool isomorphic(const UndirectedGraph& g1, const UndirectedGraph& g2);

inline constexpr std::size_t kMaxIsomorphismVertices = 8;

/// Renders a name set as "{1,3}" (names in set order).
std::string format_set(const NameSet& s);

}  // namespace loglin
