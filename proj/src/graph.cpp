#include "loglin/graph.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace loglin {

Edge make_edge(std::string u, std::string v) {
  if (u == v) throw InputError("loop edge on vertex '" + u + "'");
  if (v < u) std::swap(u, v);
  return {std::move(u), std::move(v)};
}

UndirectedGraph::UndirectedGraph(const NameSet& vertices) {
  for (const auto& v : vertices) {
    if (v.empty()) throw InputError("vertex name must be nonempty");
    adj_[v];
  }
}

UndirectedGraph::UndirectedGraph(const NameSet& vertices,
                                 const std::vector<Edge>& edges)
    : UndirectedGraph(vertices) {
  for (const auto& [u, v] : edges) insert_edge(u, v);
}

UndirectedGraph UndirectedGraph::complete(const NameSet& vertices) {
  UndirectedGraph g(vertices);
  for (auto i = vertices.begin(); i != vertices.end(); ++i) {
    for (auto j = std::next(i); j != vertices.end(); ++j) g.insert_edge(*i, *j);
  }
  return g;
}

void UndirectedGraph::insert_edge(const std::string& u, const std::string& v) {
  if (u == v) throw InputError("loop edge on vertex '" + u + "'");
  auto iu = adj_.find(u);
  auto iv = adj_.find(v);
  if (iu == adj_.end() || iv == adj_.end()) {
    throw InputError("edge " + u + "-" + v + " has an endpoint outside the graph");
  }
  iu->second.insert(v);
  iv->second.insert(u);
}

NameSet UndirectedGraph::vertices() const {
  NameSet s;
  for (const auto& [v, _] : adj_) s.insert(v);
  return s;
}

bool UndirectedGraph::has_edge(const std::string& u, const std::string& v) const {
  auto it = adj_.find(u);
  return it != adj_.end() && it->second.count(v) != 0;
}

const NameSet& UndirectedGraph::neighbors(const std::string& v) const {
  auto it = adj_.find(v);
  if (it == adj_.end()) throw InputError("unknown vertex '" + v + "'");
  return it->second;
}

std::vector<Edge> UndirectedGraph::edges() const {
  std::vector<Edge> out;
  for (const auto& [u, nbrs] : adj_) {
    for (const auto& v : nbrs) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

std::size_t UndirectedGraph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& [_, nbrs] : adj_) twice += nbrs.size();
  return twice / 2;
}

UndirectedGraph UndirectedGraph::with_edge(const std::string& u,
                                           const std::string& v) const {
  UndirectedGraph g = *this;
  g.insert_edge(u, v);
  return g;
}

UndirectedGraph UndirectedGraph::without_edge(const std::string& u,
                                              const std::string& v) const {
  if (!has_edge(u, v)) throw InputError("no edge " + u + "-" + v);
  UndirectedGraph g = *this;
  g.adj_[u].erase(v);
  g.adj_[v].erase(u);
  return g;
}

UndirectedGraph UndirectedGraph::induced(const NameSet& keep) const {
  UndirectedGraph g;
  for (const auto& v : keep) {
    const auto& nbrs = neighbors(v);
    auto& out = g.adj_[v];
    for (const auto& w : nbrs) {
      if (keep.count(w)) out.insert(w);
    }
  }
  return g;
}

std::string UndirectedGraph::to_string() const {
  std::string s;
  for (const auto& [u, v] : edges()) {
    if (!s.empty()) s += ' ';
    s += u + "-" + v;
  }
  return s;
}

std::string format_set(const NameSet& s) {
  std::string out = "{";
  for (const auto& v : s) {
    if (out.size() > 1) out += ',';
    out += v;
  }
  return out + "}";
}

namespace {

void require_vertices(const UndirectedGraph& g, const NameSet& s) {
  for (const auto& v : s) {
    if (!g.has_vertex(v)) throw InputError("unknown vertex '" + v + "'");
  }
}

void bron_kerbosch(const UndirectedGraph& g, NameSet& r, NameSet p, NameSet x,
                   std::vector<NameSet>& out) {
  if (p.empty() && x.empty()) {
    out.push_back(r);
    return;
  }
  // Pivot: vertex of P ∪ X with the most neighbours in P.
  const std::string* pivot = nullptr;
  std::size_t best = 0;
  for (const auto* set : {&p, &x}) {
    for (const auto& u : *set) {
      std::size_t n = 0;
      for (const auto& w : g.neighbors(u)) n += p.count(w);
      if (pivot == nullptr || n > best) {
        pivot = &u;
        best = n;
      }
    }
  }
  const NameSet& pivot_nbrs = g.neighbors(*pivot);
  std::vector<std::string> candidates;
  for (const auto& v : p) {
    if (!pivot_nbrs.count(v)) candidates.push_back(v);
  }
  for (const auto& v : candidates) {
    const auto& nv = g.neighbors(v);
    NameSet p2, x2;
    for (const auto& w : p) {
      if (nv.count(w)) p2.insert(w);
    }
    for (const auto& w : x) {
      if (nv.count(w)) x2.insert(w);
    }
    r.insert(v);
    bron_kerbosch(g, r, std::move(p2), std::move(x2), out);
    r.erase(v);
    p.erase(v);
    x.insert(v);
  }
}

}  // namespace

NameSet boundary(const UndirectedGraph& g, const NameSet& a) {
  require_vertices(g, a);
  NameSet out;
  for (const auto& v : a) {
    for (const auto& u : g.neighbors(v)) {
      if (!a.count(u)) out.insert(u);
    }
  }
  return out;
}

std::vector<NameSet> maximal_cliques(const UndirectedGraph& g) {
  std::vector<NameSet> out;
  if (g.vertex_count() == 0) return out;
  NameSet r;
  bron_kerbosch(g, r, g.vertices(), {}, out);
  std::sort(out.begin(), out.end());
  return out;
}

bool is_clique(const UndirectedGraph& g, const NameSet& s) {
  for (auto i = s.begin(); i != s.end(); ++i) {
    for (auto j = std::next(i); j != s.end(); ++j) {
      if (!g.has_edge(*i, *j)) return false;
    }
  }
  return true;
}

std::vector<std::string> maximum_cardinality_search(const UndirectedGraph& g) {
  std::map<std::string, std::size_t> weight;
  for (const auto& v : g.vertices()) weight[v] = 0;
  std::vector<std::string> order;
  order.reserve(weight.size());
  while (!weight.empty()) {
    auto best = weight.begin();
    for (auto it = weight.begin(); it != weight.end(); ++it) {
      if (it->second > best->second) best = it;
    }
    const std::string v = best->first;
    weight.erase(best);
    order.push_back(v);
    for (const auto& u : g.neighbors(v)) {
      auto it = weight.find(u);
      if (it != weight.end()) ++it->second;
    }
  }
  return order;
}

ChordalityResult check_chordal(const UndirectedGraph& g) {
  ChordalityResult result;
  result.search_order = maximum_cardinality_search(g);
  const auto& order = result.search_order;
  std::map<std::string, std::size_t> pos;
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;

  // For each vertex, its earlier-visited neighbours must form a clique; it
  // suffices that all but the latest one are adjacent to the latest one.
  for (const auto& v : order) {
    const std::size_t pv = pos[v];
    std::vector<std::string> earlier;
    for (const auto& u : g.neighbors(v)) {
      if (pos[u] < pv) earlier.push_back(u);
    }
    if (earlier.size() < 2) continue;
    const auto latest = *std::max_element(
        earlier.begin(), earlier.end(),
        [&](const std::string& a, const std::string& b) { return pos[a] < pos[b]; });
    for (const auto& u : earlier) {
      if (u != latest && !g.has_edge(u, latest)) return result;
    }
  }
  result.chordal = true;
  result.elimination_order.emplace(order.rbegin(), order.rend());
  return result;
}

bool separates(const UndirectedGraph& g, const NameSet& a, const NameSet& b,
               const NameSet& c) {
  require_vertices(g, a);
  require_vertices(g, b);
  require_vertices(g, c);
  if (a.empty() || b.empty()) {
    throw InputError("separation query needs nonempty A and B");
  }
  for (const auto& v : a) {
    if (b.count(v) || c.count(v)) throw InputError("A, B, C must be disjoint");
  }
  for (const auto& v : b) {
    if (c.count(v)) throw InputError("A, B, C must be disjoint");
  }
  NameSet visited(a.begin(), a.end());
  std::deque<std::string> queue(a.begin(), a.end());
  while (!queue.empty()) {
    const std::string v = queue.front();
    queue.pop_front();
    for (const auto& u : g.neighbors(v)) {
      if (c.count(u) || visited.count(u)) continue;
      if (b.count(u)) return false;
      visited.insert(u);
      queue.push_back(u);
    }
  }
  return true;
}

UndirectedGraph triangulate(const UndirectedGraph& g) {
  UndirectedGraph result = g;
  UndirectedGraph work = g;
  NameSet remaining = g.vertices();
  while (!remaining.empty()) {
    std::string best;
    std::size_t best_fill = std::numeric_limits<std::size_t>::max();
    for (const auto& v : remaining) {
      std::vector<std::string> nbrs;
      for (const auto& u : work.neighbors(v)) {
        if (remaining.count(u)) nbrs.push_back(u);
      }
      std::size_t fill = 0;
      for (std::size_t i = 0; i < nbrs.size(); ++i) {
        for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
          if (!work.has_edge(nbrs[i], nbrs[j])) ++fill;
        }
      }
      if (fill < best_fill) {
        best_fill = fill;
        best = v;
      }
    }
    std::vector<std::string> nbrs;
    for (const auto& u : work.neighbors(best)) {
      if (remaining.count(u)) nbrs.push_back(u);
    }
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
        if (!work.has_edge(nbrs[i], nbrs[j])) {
          work = work.with_edge(nbrs[i], nbrs[j]);
          result = result.with_edge(nbrs[i], nbrs[j]);
        }
      }
    }
    remaining.erase(best);
  }
  return result;
}

bool isomorphic(const UndirectedGraph& g1, const UndirectedGraph& g2) {
  if (g1.vertex_count() > kMaxIsomorphismVertices ||
      g2.vertex_count() > kMaxIsomorphismVertices) {
    throw InputError("isomorphism test limited to " +
                     std::to_string(kMaxIsomorphismVertices) + " vertices");
  }
  if (g1.vertex_count() != g2.vertex_count() ||
      g1.edge_count() != g2.edge_count()) {
    return false;
  }
  const auto v1 = g1.vertices();
  const std::vector<std::string> from(v1.begin(), v1.end());
  const auto v2 = g2.vertices();
  std::vector<std::string> to(v2.begin(), v2.end());

  auto degrees = [](const UndirectedGraph& g) {
    std::vector<std::size_t> d;
    for (const auto& v : g.vertices()) d.push_back(g.neighbors(v).size());
    std::sort(d.begin(), d.end());
    return d;
  };
  if (degrees(g1) != degrees(g2)) return false;

  const auto edges1 = g1.edges();
  do {
    std::map<std::string, std::string> image;
    for (std::size_t i = 0; i < from.size(); ++i) image[from[i]] = to[i];
    const bool ok = std::all_of(edges1.begin(), edges1.end(), [&](const Edge& e) {
      return g2.has_edge(image[e.first], image[e.second]);
    });
    if (ok) return true;
  } while (std::next_permutation(to.begin(), to.end()));
  return false;
}

}  // namespace loglin
