#pragma once

#include <optional>
#include <string>
#include <vector>

#include "loglin/fit.hpp"
#include "loglin/graph.hpp"
#include "loglin/model.hpp"
#include "loglin/table.hpp"

namespace loglin {

/// Result of testing the removal of one edge from the current model.
///
/// `df`, `g2`, `p` describe the test of the reduced model against the
/// current one (difference in deviance and in degrees of freedom). For the
/// first step, where the current model is saturated, this is the reduced
/// model's own goodness-of-fit test. `model_df` and `model_g2` are always
/// against the saturated model.
struct CandidateEvaluation {
  Edge edge;
  GeneratingClass reduced_model;
  int df = 0;
  double g2 = 0.0;
  double p = 1.0;
  int model_df = 0;
  double model_g2 = 0.0;
};

/// How to choose among candidates sharing the largest p-value.
enum class TieRule { Lexicographic, ReverseLexicographic };

struct EliminationStep {
  GeneratingClass model;
  int model_df = 0;
  double model_g2 = 0.0;
  std::vector<CandidateEvaluation> candidates;
  std::optional<Edge> chosen;
  std::string stop_reason;
};

struct EliminationTrace {
  std::vector<EliminationStep> steps;
  GeneratingClass final_model;
  double alpha = 0.05;
  TieRule tie_rule = TieRule::Lexicographic;
};

inline constexpr double kDefaultAlpha = 0.05;

/// Edges of the interaction graph lying in exactly one generator, oriented
/// and sorted by factor order.
std::vector<Edge> deletable_edges(const GeneratingClass& gc);

/// Maximal cliques of the interaction graph without `edge`.
GeneratingClass delete_edge(const GeneratingClass& gc, const Edge& edge);

/// Fits every single-edge reduction of `gc` in closed form and tests it
/// against `gc`. Candidates are listed in factor-order edge order.
std::vector<CandidateEvaluation> evaluate_candidates(const ContingencyTable& t,
                                                     const GeneratingClass& gc);

/// Backward elimination from the saturated model: repeatedly remove the
/// edge with the largest p-value while that p-value exceeds `alpha`.
EliminationTrace backward_select(const ContingencyTable& t,
                                 double alpha = kDefaultAlpha,
                                 TieRule tie_rule = TieRule::Lexicographic);

/// "ab" for single-character names, else "A-B".
std::string edge_label(const Edge& e);

}  // namespace loglin
