#include "loglin/fit.hpp"

#include <algorithm>
#include <cmath>

namespace loglin {

std::string to_string(FitMethod m) {
  return m == FitMethod::ClosedForm ? "closed-form" : "ipf";
}

namespace {

bool is_subset(const NameSet& a, const NameSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

NameSet intersect(const NameSet& a, const NameSet& b) {
  NameSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::inserter(out, out.end()));
  return out;
}

void require_model_matches(const ContingencyTable& t, const GeneratingClass& gc) {
  if (gc.factor_set() != t.factor_set()) {
    throw InputError("model factors " + format_set(gc.factor_set()) +
                     " do not match table factors " + format_set(t.factor_set()));
  }
}

}  // namespace

CliqueTree build_clique_tree(const GeneratingClass& gc) {
  const auto graph = interaction_graph(gc);
  const auto chordal = check_chordal(graph);
  if (!chordal.chordal || !is_graphical(gc)) {
    throw InputError("model " + gc.to_string() + " is not decomposable");
  }
  // Visiting vertices in search order, {v} ∪ (earlier neighbours of v) is a
  // clique; the maximal ones, taken in order of first appearance, have the
  // running intersection property.
  const auto& order = chordal.search_order;
  CliqueTree tree;
  NameSet seen;
  std::vector<bool> used(gc.generators().size(), false);
  for (const auto& v : order) {
    NameSet c{v};
    for (const auto& u : graph.neighbors(v)) {
      if (seen.count(u)) c.insert(u);
    }
    seen.insert(v);
    for (std::size_t i = 0; i < gc.generators().size(); ++i) {
      if (!used[i] && gc.generators()[i] == c) {
        used[i] = true;
        tree.cliques.push_back(c);
      }
    }
  }
  if (tree.cliques.size() != gc.generators().size()) {
    throw std::logic_error("clique ordering missed a generator of " +
                           gc.to_string());
  }
  NameSet history = tree.cliques.front();
  for (std::size_t i = 1; i < tree.cliques.size(); ++i) {
    auto sep = intersect(tree.cliques[i], history);
    const bool contained = std::any_of(
        tree.cliques.begin(), tree.cliques.begin() + static_cast<long>(i),
        [&](const NameSet& earlier) { return is_subset(sep, earlier); });
    if (!contained) {
      throw std::logic_error("running intersection property violated for " +
                             gc.to_string());
    }
    tree.separators.push_back(std::move(sep));
    history.insert(tree.cliques[i].begin(), tree.cliques[i].end());
  }
  return tree;
}

std::vector<ContingencyTable> sufficient_statistics(const ContingencyTable& t,
                                                    const GeneratingClass& gc) {
  for (const auto& f : gc.factors()) {
    if (!t.has_factor(f)) {
      throw InputError("model factor '" + f + "' is not in the table");
    }
  }
  std::vector<ContingencyTable> out;
  out.reserve(gc.generators().size());
  for (const auto& g : gc.generators()) out.push_back(marginalize(t, g));
  return out;
}

FitResult fit_decomposable(const ContingencyTable& t, const GeneratingClass& gc) {
  require_model_matches(t, gc);
  const auto tree = build_clique_tree(gc);

  std::vector<double> fitted(t.size(), 1.0);
  for (const auto& c : tree.cliques) {
    const auto margin = marginalize(t, c);
    const auto map = margin_offsets(t.factors(), c);
    for (std::size_t off = 0; off < fitted.size(); ++off) {
      fitted[off] *= margin[map[off]];
    }
  }
  for (const auto& s : tree.separators) {
    const auto margin = marginalize(t, s);
    const auto map = margin_offsets(t.factors(), s);
    for (std::size_t off = 0; off < fitted.size(); ++off) {
      const double denom = margin[map[off]];
      if (denom > 0.0) {
        fitted[off] /= denom;
      } else if (fitted[off] != 0.0) {
        throw NumericError("zero separator margin " + gc.format_term(s) +
                           " with nonzero clique product");
      }
    }
  }

  FitResult fr{gc, t.with_counts(std::move(fitted)), FitMethod::ClosedForm, 0,
               0.0, degrees_of_freedom(gc, t.factors()), true};
  fr.max_margin_deviation = birch_check(fr, t);
  return fr;
}

FitResult fit_ipf(const ContingencyTable& t, const GeneratingClass& gc,
                  double tol, int max_iter) {
  require_model_matches(t, gc);
  if (!(tol > 0.0)) throw InputError("IPF tolerance must be positive");
  if (max_iter < 1) throw InputError("IPF max_iter must be at least 1");

  struct Margin {
    std::vector<double> observed;
    std::vector<std::size_t> map;
  };
  std::vector<Margin> margins;
  for (const auto& g : gc.generators()) {
    auto obs = marginalize(t, g);
    for (double v : obs.counts()) {
      if (!(v > 0.0)) {
        throw InputError("IPF requires strictly positive observed margins; margin " +
                         gc.format_term(g) + " has a zero cell");
      }
    }
    margins.push_back({std::vector<double>(obs.counts().begin(), obs.counts().end()),
                       margin_offsets(t.factors(), g)});
  }

  std::vector<double> fitted(t.size(), 1.0);
  std::vector<double> current;
  auto fitted_margin = [&](const Margin& m) {
    current.assign(m.observed.size(), 0.0);
    for (std::size_t off = 0; off < fitted.size(); ++off) {
      current[m.map[off]] += fitted[off];
    }
  };

  int cycles = 0;
  double deviation = 0.0;
  bool converged = false;
  while (cycles < max_iter) {
    ++cycles;
    for (const auto& m : margins) {
      fitted_margin(m);
      for (std::size_t off = 0; off < fitted.size(); ++off) {
        const double cur = current[m.map[off]];
        fitted[off] = cur > 0.0 ? fitted[off] * m.observed[m.map[off]] / cur : 0.0;
      }
    }
    deviation = 0.0;
    for (const auto& m : margins) {
      fitted_margin(m);
      for (std::size_t k = 0; k < current.size(); ++k) {
        deviation = std::max(deviation, std::abs(current[k] - m.observed[k]));
      }
    }
    if (deviation <= tol) {
      converged = true;
      break;
    }
  }
  return FitResult{gc,
                   t.with_counts(std::move(fitted)),
                   FitMethod::Ipf,
                   cycles,
                   deviation,
                   degrees_of_freedom(gc, t.factors()),
                   converged};
}

FitResult fit(const ContingencyTable& t, const GeneratingClass& gc, double tol,
              int max_iter) {
  if (is_decomposable(gc)) return fit_decomposable(t, gc);
  return fit_ipf(t, gc, tol, max_iter);
}

int degrees_of_freedom(const GeneratingClass& gc,
                       const std::vector<FactorSpec>& factors) {
  auto levels = [&](const std::string& name) -> long long {
    for (const auto& f : factors) {
      if (f.name == name) return static_cast<long long>(f.level_count());
    }
    throw InputError("no level count for factor '" + name + "'");
  };
  long long cells = 1;
  for (const auto& name : gc.factors()) cells *= levels(name);
  long long params = 0;
  for (const auto& term : hierarchical_closure(gc).terms) {
    long long p = 1;
    for (const auto& f : term) p *= levels(f) - 1;
    params += p;
  }
  return static_cast<int>(cells - params);
}

double birch_check(const FitResult& fr, const ContingencyTable& t) {
  double worst = 0.0;
  for (const auto& g : fr.model.generators()) {
    worst = std::max(worst, max_abs_difference(marginalize(t, g),
                                               marginalize(fr.fitted, g)));
  }
  return worst;
}

std::string render_factorization(const GeneratingClass& gc) {
  const auto tree = build_clique_tree(gc);
  auto term = [&](const NameSet& s) { return "n(" + gc.format_term(s) + ")"; };
  std::string out;
  for (const auto& c : tree.cliques) {
    if (!out.empty()) out += " * ";
    out += term(c);
  }
  if (tree.separators.empty()) return out;
  std::string denom;
  for (const auto& s : tree.separators) {
    if (!denom.empty()) denom += " * ";
    denom += term(s);
  }
  return out + " / " + (tree.separators.size() > 1 ? "(" + denom + ")" : denom);
}

}  // namespace loglin
