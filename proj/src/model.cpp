#include "loglin/model.hpp"

#include <algorithm>
#include <cctype>

namespace loglin {

namespace {

bool all_single_char(const std::vector<std::string>& names) {
  return std::all_of(names.begin(), names.end(),
                     [](const std::string& n) { return n.size() == 1; });
}

bool is_subset(const NameSet& a, const NameSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

GeneratingClass::GeneratingClass(std::vector<std::string> factors,
                                 std::vector<NameSet> generators)
    : factors_(std::move(factors)) {
  const NameSet known(factors_.begin(), factors_.end());
  if (known.size() != factors_.size()) {
    throw InputError("model factor list has duplicates");
  }
  if (generators.empty()) throw InputError("model has no generators");
  for (const auto& g : generators) {
    if (g.empty()) throw InputError("empty generator");
    for (const auto& f : g) {
      if (!known.count(f)) throw InputError("unknown factor '" + f + "' in model");
    }
  }
  std::sort(generators.begin(), generators.end());
  generators.erase(std::unique(generators.begin(), generators.end()),
                   generators.end());
  for (std::size_t i = 0; i < generators.size(); ++i) {
    bool absorbed = false;
    for (std::size_t j = 0; j < generators.size() && !absorbed; ++j) {
      absorbed = i != j && generators[i].size() < generators[j].size() &&
                 is_subset(generators[i], generators[j]);
    }
    if (!absorbed) generators_.push_back(generators[i]);
  }
  auto key = [this](const NameSet& s) {
    std::vector<std::size_t> k;
    for (const auto& f : s) k.push_back(position(f));
    std::sort(k.begin(), k.end());
    return k;
  };
  std::sort(generators_.begin(), generators_.end(),
            [&](const NameSet& a, const NameSet& b) { return key(a) < key(b); });
}

GeneratingClass GeneratingClass::saturated(std::vector<std::string> factors) {
  NameSet all(factors.begin(), factors.end());
  return GeneratingClass(std::move(factors), {all});
}

std::size_t GeneratingClass::position(const std::string& factor) const {
  auto it = std::find(factors_.begin(), factors_.end(), factor);
  if (it == factors_.end()) throw InputError("unknown factor '" + factor + "'");
  return static_cast<std::size_t>(it - factors_.begin());
}

bool GeneratingClass::is_saturated() const {
  return generators_.size() == 1 && generators_.front().size() == factors_.size();
}

std::vector<std::string> GeneratingClass::ordered(const NameSet& term) const {
  std::vector<std::string> out;
  for (const auto& f : factors_) {
    if (term.count(f)) out.push_back(f);
  }
  return out;
}

std::string GeneratingClass::format_term(const NameSet& term) const {
  const bool compact = all_single_char(factors_);
  std::string s;
  for (const auto& f : ordered(term)) {
    if (!compact && !s.empty()) s += ',';
    s += f;
  }
  return s;
}

std::string GeneratingClass::to_string() const {
  std::string s;
  for (const auto& g : generators_) s += "[" + format_term(g) + "]";
  return s;
}

GeneratingClass parse_model(std::string_view text,
                            const std::vector<FactorSpec>& factors) {
  std::vector<std::string> names;
  for (const auto& f : factors) names.push_back(f.name);
  return parse_model(text, names);
}

GeneratingClass parse_model(std::string_view text,
                            const std::vector<std::string>& factor_names) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  }
  const NameSet known(factor_names.begin(), factor_names.end());
  const bool shorthand = all_single_char(factor_names);

  std::vector<NameSet> generators;
  std::size_t i = 0;
  if (s.empty()) throw InputError("empty model string");
  while (i < s.size()) {
    if (s[i] != '[') {
      throw InputError("model syntax: expected '[' at position " +
                       std::to_string(i) + " in '" + s + "'");
    }
    const auto close = s.find(']', i + 1);
    if (close == std::string::npos) throw InputError("model syntax: unclosed '['");
    const std::string body = s.substr(i + 1, close - i - 1);
    if (body.find('[') != std::string::npos) {
      throw InputError("model syntax: nested '['");
    }
    if (body.empty()) throw InputError("empty generator '[]'");

    std::vector<std::string> names;
    if (body.find(',') != std::string::npos) {
      std::size_t start = 0;
      while (true) {
        const auto comma = body.find(',', start);
        names.push_back(body.substr(start, comma == std::string::npos
                                               ? std::string::npos
                                               : comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
    } else if (shorthand) {
      for (char ch : body) names.emplace_back(1, ch);
    } else {
      names.push_back(body);
    }
    NameSet gen;
    for (const auto& n : names) {
      if (n.empty()) throw InputError("model syntax: empty factor name");
      if (!known.count(n)) throw InputError("unknown factor '" + n + "' in model");
      gen.insert(n);
    }
    generators.push_back(std::move(gen));
    i = close + 1;
  }
  return GeneratingClass(factor_names, std::move(generators));
}

TermSet hierarchical_closure(const GeneratingClass& gc) {
  TermSet ts;
  ts.terms.insert(NameSet{});
  for (const auto& g : gc.generators()) {
    const std::vector<std::string> members(g.begin(), g.end());
    const std::size_t n = members.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
      NameSet term;
      for (std::size_t b = 0; b < n; ++b) {
        if (mask & (std::size_t{1} << b)) term.insert(members[b]);
      }
      ts.terms.insert(std::move(term));
    }
  }
  return ts;
}

bool is_comprehensive(const GeneratingClass& gc) {
  NameSet covered;
  for (const auto& g : gc.generators()) covered.insert(g.begin(), g.end());
  return covered.size() == gc.factors().size();
}

UndirectedGraph interaction_graph(const GeneratingClass& gc) {
  std::vector<Edge> edges;
  for (const auto& g : gc.generators()) {
    for (auto i = g.begin(); i != g.end(); ++i) {
      for (auto j = std::next(i); j != g.end(); ++j) edges.push_back(make_edge(*i, *j));
    }
  }
  return UndirectedGraph(gc.factor_set(), edges);
}

bool is_graphical(const GeneratingClass& gc) {
  auto cliques = maximal_cliques(interaction_graph(gc));
  auto gens = gc.generators();
  std::sort(gens.begin(), gens.end());
  return cliques == gens;
}

bool is_decomposable(const GeneratingClass& gc) {
  return is_graphical(gc) && is_chordal(interaction_graph(gc));
}

GeneratingClass model_from_graph(const UndirectedGraph& g) {
  const auto v = g.vertices();
  return model_from_graph(g, std::vector<std::string>(v.begin(), v.end()));
}

GeneratingClass model_from_graph(const UndirectedGraph& g,
                                 std::vector<std::string> factor_order) {
  if (NameSet(factor_order.begin(), factor_order.end()) != g.vertices()) {
    throw InputError("factor order does not match graph vertices");
  }
  return GeneratingClass(std::move(factor_order), maximal_cliques(g));
}

}  // namespace loglin
