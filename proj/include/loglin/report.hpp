#pragma once

#include <string>

#include "json.hpp"

#include "loglin/fit.hpp"
#include "loglin/markov.hpp"
#include "loglin/model.hpp"
#include "loglin/select.hpp"
#include "loglin/stats.hpp"
#include "loglin/table.hpp"

namespace loglin {

enum class ReportFormat { Text, Json };

ReportFormat parse_report_format(const std::string& s);

/// Structured report shared by every CLI command. Keys serialize sorted;
/// numbers keep full precision in JSON and are fixed at 5 decimals in text.
struct Report {
  nlohmann::json doc = nlohmann::json::object();
  int exit_code = 0;
};

std::string tool_version();

nlohmann::json describe_table(const ContingencyTable& t);
nlohmann::json describe_model(const GeneratingClass& gc);
nlohmann::json describe_fit(const FitResult& fr, const ContingencyTable& observed);
nlohmann::json describe_test(const TestReport& r);
nlohmann::json describe_candidate(const CandidateEvaluation& c);
nlohmann::json describe_trace(const EliminationTrace& trace);

std::string render_json(const Report& r);
std::string render_text(const Report& r);
std::string render(const Report& r, ReportFormat format);

/// Fixed 5-decimal rendering used by text reports.
std::string format_number(double v);

}  // namespace loglin
