#include "loglin/markov.hpp"

#include <algorithm>
#include <cmath>

#include "loglin/fit.hpp"

namespace loglin {

JointDistribution JointDistribution::from_weights(const ContingencyTable& weights) {
  const double z = weights.total();
  if (!(z > 0.0)) throw NumericError("distribution weights sum to zero");
  std::vector<double> p(weights.counts().begin(), weights.counts().end());
  for (double& v : p) v /= z;
  return JointDistribution(weights.with_counts(std::move(p)));
}

JointDistribution distribution_from_potentials(
    const CliquePotentialSet& ps, const std::vector<FactorSpec>& factors) {
  NameSet names;
  std::size_t cells = 1;
  for (const auto& f : factors) {
    names.insert(f.name);
    cells *= f.level_count();
  }
  if (names != ps.graph.vertices()) {
    throw InputError("potential graph vertices do not match the factors");
  }
  if (cells > kMaxEnumeratedCells) {
    throw InputError("joint table too large to enumerate");
  }
  const auto cliques = maximal_cliques(ps.graph);
  if (ps.potentials.size() != cliques.size()) {
    throw InputError("need exactly one potential per maximal clique");
  }
  std::vector<double> product(cells, 1.0);
  for (const auto& c : cliques) {
    auto it = ps.potentials.find(c);
    if (it == ps.potentials.end()) {
      throw InputError("missing potential for clique " + format_set(c));
    }
    const auto& psi = it->second;
    if (psi.factors() != select_factors(factors, c)) {
      throw InputError("potential for clique " + format_set(c) +
                       " has the wrong factors");
    }
    for (double v : psi.counts()) {
      if (!(v > 0.0)) throw InputError("potentials must be strictly positive");
    }
    const auto map = margin_offsets(factors, c);
    for (std::size_t off = 0; off < cells; ++off) product[off] *= psi[map[off]];
  }
  return JointDistribution::from_weights(ContingencyTable(factors, std::move(product)));
}

std::string to_string(const CiStatement& s) {
  return format_set(s.a) + " ⊥ " + format_set(s.b) + " | " + format_set(s.c);
}

bool ci_holds(const JointDistribution& d, const NameSet& a, const NameSet& b,
              const NameSet& c, double tol) {
  if (a.empty() || b.empty()) {
    throw InputError("conditional independence needs nonempty A and B");
  }
  for (const auto& v : a) {
    if (b.count(v) || c.count(v)) throw InputError("A, B, C must be disjoint");
  }
  for (const auto& v : b) {
    if (c.count(v)) throw InputError("A, B, C must be disjoint");
  }
  NameSet abc = a;
  abc.insert(b.begin(), b.end());
  abc.insert(c.begin(), c.end());
  NameSet ac = a, bc = b;
  ac.insert(c.begin(), c.end());
  bc.insert(c.begin(), c.end());

  const auto joint = marginalize(d.table(), abc);
  const auto p_ac = marginalize(joint, ac);
  const auto p_bc = marginalize(joint, bc);
  const auto p_c = marginalize(joint, c);
  const auto map_ac = margin_offsets(joint.factors(), ac);
  const auto map_bc = margin_offsets(joint.factors(), bc);
  const auto map_c = margin_offsets(joint.factors(), c);
  for (std::size_t off = 0; off < joint.size(); ++off) {
    const double pc = p_c[map_c[off]];
    if (!(pc > tol)) continue;
    const double lhs = joint[off] / pc;
    const double rhs = (p_ac[map_ac[off]] / pc) * (p_bc[map_bc[off]] / pc);
    if (std::abs(lhs - rhs) > tol) return false;
  }
  return true;
}

MarkovReport check_markov_properties(const JointDistribution& d,
                                     const UndirectedGraph& g, double tol) {
  NameSet names;
  for (const auto& f : d.factors()) names.insert(f.name);
  if (names != g.vertices()) {
    throw InputError("graph vertices do not match distribution factors");
  }
  if (names.size() > kMaxMarkovCheckVertices) {
    throw InputError("Markov property check limited to " +
                     std::to_string(kMaxMarkovCheckVertices) + " vertices");
  }
  const std::vector<std::string> v(names.begin(), names.end());
  MarkovReport r{true, true, true};

  for (std::size_t i = 0; i < v.size() && r.pairwise; ++i) {
    for (std::size_t j = i + 1; j < v.size() && r.pairwise; ++j) {
      if (g.has_edge(v[i], v[j])) continue;
      NameSet rest = names;
      rest.erase(v[i]);
      rest.erase(v[j]);
      r.pairwise = ci_holds(d, {v[i]}, {v[j]}, rest, tol);
    }
  }

  for (const auto& x : v) {
    const NameSet bd = boundary(g, {x});
    NameSet others;
    for (const auto& u : v) {
      if (u != x && !bd.count(u)) others.insert(u);
    }
    if (others.empty()) continue;
    if (!ci_holds(d, {x}, others, bd, tol)) {
      r.local = false;
      break;
    }
  }

  // Every assignment of vertices to A, B, C, or none.
  std::size_t combos = 1;
  for (std::size_t i = 0; i < v.size(); ++i) combos *= 4;
  for (std::size_t code = 0; code < combos && r.global; ++code) {
    NameSet a, b, c;
    std::size_t rem = code;
    for (const auto& x : v) {
      switch (rem % 4) {
        case 1: a.insert(x); break;
        case 2: b.insert(x); break;
        case 3: c.insert(x); break;
        default: break;
      }
      rem /= 4;
    }
    if (a.empty() || b.empty() || *a.begin() > *b.begin()) continue;
    if (separates(g, a, b, c) && !ci_holds(d, a, b, c, tol)) r.global = false;
  }
  return r;
}

std::vector<CiStatement> implied_independences(const GeneratingClass& gc) {
  if (!is_graphical(gc)) {
    throw InputError("model " + gc.to_string() + " is not graphical");
  }
  const auto g = interaction_graph(gc);
  std::vector<CiStatement> out;
  auto add = [&](NameSet a, NameSet b, NameSet c) {
    if (a.empty() || b.empty()) return;
    CiStatement s{std::move(a), std::move(b), std::move(c)};
    CiStatement mirrored{s.b, s.a, s.c};
    if (std::find(out.begin(), out.end(), s) == out.end() &&
        std::find(out.begin(), out.end(), mirrored) == out.end()) {
      out.push_back(std::move(s));
    }
  };
  const auto& f = gc.factors();
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = i + 1; j < f.size(); ++j) {
      if (g.has_edge(f[i], f[j])) continue;
      NameSet bd = boundary(g, {f[i]});
      bd.erase(f[j]);
      add({f[i]}, {f[j]}, std::move(bd));
    }
  }
  if (is_chordal(g)) {
    const auto tree = build_clique_tree(gc);
    NameSet history = tree.cliques.front();
    for (std::size_t i = 1; i < tree.cliques.size(); ++i) {
      const auto& sep = tree.separators[i - 1];
      NameSet residual, earlier;
      for (const auto& x : tree.cliques[i]) {
        if (!sep.count(x)) residual.insert(x);
      }
      for (const auto& x : history) {
        if (!sep.count(x)) earlier.insert(x);
      }
      add(std::move(residual), std::move(earlier), sep);
      history.insert(tree.cliques[i].begin(), tree.cliques[i].end());
    }
  }
  return out;
}

}  // namespace loglin
