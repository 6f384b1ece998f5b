#include "loglin/select.hpp"

#include <algorithm>

#include "loglin/stats.hpp"

namespace loglin {

namespace {

Edge oriented(const GeneratingClass& gc, const std::string& u, const std::string& v) {
  return gc.position(u) < gc.position(v) ? Edge{u, v} : Edge{v, u};
}

}  // namespace

std::string edge_label(const Edge& e) {
  if (e.first.size() == 1 && e.second.size() == 1) return e.first + e.second;
  return e.first + "-" + e.second;
}

std::vector<Edge> deletable_edges(const GeneratingClass& gc) {
  if (!is_decomposable(gc)) {
    throw InputError("model " + gc.to_string() + " is not decomposable");
  }
  std::vector<Edge> out;
  const auto& f = gc.factors();
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = i + 1; j < f.size(); ++j) {
      const auto holders = std::count_if(
          gc.generators().begin(), gc.generators().end(),
          [&](const NameSet& g) { return g.count(f[i]) && g.count(f[j]); });
      if (holders == 1) out.emplace_back(f[i], f[j]);
    }
  }
  return out;
}

GeneratingClass delete_edge(const GeneratingClass& gc, const Edge& edge) {
  const auto candidates = deletable_edges(gc);
  const auto e = oriented(gc, edge.first, edge.second);
  if (std::find(candidates.begin(), candidates.end(), e) == candidates.end()) {
    throw InputError("edge " + edge_label(e) + " is not deletable from " +
                     gc.to_string());
  }
  const auto g = interaction_graph(gc).without_edge(e.first, e.second);
  return model_from_graph(g, gc.factors());
}

std::vector<CandidateEvaluation> evaluate_candidates(const ContingencyTable& t,
                                                     const GeneratingClass& gc) {
  const auto current = fit_decomposable(t, gc);
  const double current_g2 = deviance_g2(t, current.fitted);
  std::vector<CandidateEvaluation> out;
  for (const auto& e : deletable_edges(gc)) {
    CandidateEvaluation ev{e, delete_edge(gc, e)};
    const auto reduced = fit_decomposable(t, ev.reduced_model);
    ev.model_g2 = deviance_g2(t, reduced.fitted);
    ev.model_df = reduced.df;
    ev.df = reduced.df - current.df;
    ev.g2 = std::max(0.0, ev.model_g2 - current_g2);
    ev.p = chi2_sf(ev.g2, ev.df);
    out.push_back(std::move(ev));
  }
  return out;
}

EliminationTrace backward_select(const ContingencyTable& t, double alpha,
                                 TieRule tie_rule) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw InputError("alpha must lie in [0, 1]");
  }
  auto model = GeneratingClass::saturated(t.factor_names());
  EliminationTrace trace{{}, model, alpha, tie_rule};
  while (true) {
    EliminationStep step{model};
    const auto current = fit_decomposable(t, model);
    step.model_df = current.df;
    step.model_g2 = deviance_g2(t, current.fitted);
    step.candidates = evaluate_candidates(t, model);
    if (step.candidates.empty()) {
      step.stop_reason = "no deletable edges";
      trace.steps.push_back(std::move(step));
      break;
    }
    // Candidates are in lexicographic order; pick the first or last maximum.
    const CandidateEvaluation* best = nullptr;
    for (const auto& c : step.candidates) {
      if (best == nullptr || c.p > best->p ||
          (c.p == best->p && tie_rule == TieRule::ReverseLexicographic)) {
        best = &c;
      }
    }
    if (!(best->p > alpha)) {
      step.stop_reason = "largest p-value does not exceed alpha";
      trace.steps.push_back(std::move(step));
      break;
    }
    step.chosen = best->edge;
    model = best->reduced_model;
    trace.steps.push_back(std::move(step));
  }
  trace.final_model = model;
  return trace;
}

}  // namespace loglin
