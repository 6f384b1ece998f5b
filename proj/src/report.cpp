#include "loglin/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#ifndef LOGLIN_VERSION
#define LOGLIN_VERSION "0.0.0"
#endif

namespace loglin {

using nlohmann::json;

ReportFormat parse_report_format(const std::string& s) {
  if (s == "text") return ReportFormat::Text;
  if (s == "json") return ReportFormat::Json;
  throw InputError("unknown report format '" + s + "'");
}

std::string tool_version() { return LOGLIN_VERSION; }

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.5f", v);
  std::string s = buf;
  if (s == "-0.00000") s = "0.00000";
  return s;
}

json describe_table(const ContingencyTable& t) {
  json factors = json::array();
  for (const auto& f : t.factors()) {
    factors.push_back({{"name", f.name}, {"levels", f.levels}});
  }
  return {{"factors", factors}, {"N", t.total()}, {"cells", t.size()}};
}

json describe_model(const GeneratingClass& gc) {
  json gens = json::array();
  for (const auto& g : gc.generators()) gens.push_back(gc.ordered(g));
  const bool graphical = is_graphical(gc);
  const bool decomposable = graphical && is_decomposable(gc);
  json m = {{"model", gc.to_string()},
            {"factors", gc.factors()},
            {"generators", gens},
            {"hierarchical", true},
            {"comprehensive", is_comprehensive(gc)},
            {"graphical", graphical},
            {"decomposable", decomposable},
            {"saturated", gc.is_saturated()},
            {"graph", interaction_graph(gc).to_string()}};
  if (decomposable) m["factorization"] = render_factorization(gc);
  return m;
}

json describe_fit(const FitResult& fr, const ContingencyTable& observed) {
  json cells = json::array();
  for (std::size_t off = 0; off < fr.fitted.size(); ++off) {
    const auto idx = fr.fitted.levels_of(off);
    json labels = json::array();
    for (std::size_t i = 0; i < idx.size(); ++i) {
      labels.push_back(fr.fitted.factor(i).levels[idx[i]]);
    }
    cells.push_back({{"levels", labels},
                     {"observed", observed[off]},
                     {"fitted", fr.fitted[off]}});
  }
  return {{"method", to_string(fr.method)},
          {"iterations", fr.iterations},
          {"converged", fr.converged},
          {"max_margin_deviation", fr.max_margin_deviation},
          {"df", fr.df},
          {"cells", cells}};
}

json describe_test(const TestReport& r) {
  return {{"g2", r.g2},
          {"pearson_x2", r.pearson_x2},
          {"df", r.df},
          {"p_g2", r.p_g2},
          {"p_x2", r.p_x2}};
}

json describe_candidate(const CandidateEvaluation& c) {
  return {{"edge", edge_label(c.edge)},
          {"reduced_model", c.reduced_model.to_string()},
          {"df", c.df},
          {"g2", c.g2},
          {"p", c.p},
          {"model_df", c.model_df},
          {"model_g2", c.model_g2}};
}

json describe_trace(const EliminationTrace& trace) {
  json steps = json::array();
  for (const auto& s : trace.steps) {
    json cands = json::array();
    for (const auto& c : s.candidates) cands.push_back(describe_candidate(c));
    json step = {{"model", s.model.to_string()},
                 {"model_df", s.model_df},
                 {"model_g2", s.model_g2},
                 {"candidates", cands}};
    if (s.chosen) {
      step["chosen"] = edge_label(*s.chosen);
    } else {
      step["stop_reason"] = s.stop_reason;
    }
    steps.push_back(std::move(step));
  }
  return {{"alpha", trace.alpha},
          {"tie_rule", trace.tie_rule == TieRule::Lexicographic
                           ? "lexicographic"
                           : "reverse-lexicographic"},
          {"steps", steps},
          {"final_model", trace.final_model.to_string()}};
}

std::string render_json(const Report& r) { return r.doc.dump(2) + "\n"; }

namespace {

std::string yes_no(const json& v) { return v.get<bool>() ? "yes" : "no"; }

std::string num(const json& v) { return format_number(v.get<double>()); }

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string lpad(std::string s, std::size_t width) {
  if (s.size() < width) s.insert(0, width - s.size(), ' ');
  return s;
}

void text_table(std::ostream& os, const json& t) {
  os << "table:";
  for (const auto& f : t["factors"]) {
    os << ' ' << f["name"].get<std::string>() << '[';
    bool first = true;
    for (const auto& l : f["levels"]) {
      os << (first ? "" : ",") << l.get<std::string>();
      first = false;
    }
    os << ']';
  }
  os << "  N = " << num(t["N"]) << '\n';
}

void text_model(std::ostream& os, const json& m) {
  os << "model: " << m["model"].get<std::string>() << '\n'
     << "  hierarchical: " << yes_no(m["hierarchical"])
     << "  comprehensive: " << yes_no(m["comprehensive"])
     << "  graphical: " << yes_no(m["graphical"])
     << "  decomposable: " << yes_no(m["decomposable"])
     << "  saturated: " << yes_no(m["saturated"]) << '\n'
     << "  graph: " << m["graph"].get<std::string>() << '\n';
  if (m.contains("factorization")) {
    os << "  closed form: m = " << m["factorization"].get<std::string>() << '\n';
  }
}

void text_fit(std::ostream& os, const json& f, const json& factors) {
  os << "fit: method " << f["method"].get<std::string>() << "  iterations "
     << f["iterations"].get<int>() << "  converged " << yes_no(f["converged"])
     << "  max margin deviation " << num(f["max_margin_deviation"]) << '\n';
  std::vector<std::size_t> width;
  for (const auto& fac : factors) {
    std::size_t w = fac["name"].get<std::string>().size();
    for (const auto& l : fac["levels"]) w = std::max(w, l.get<std::string>().size());
    width.push_back(w + 2);
  }
  os << "  ";
  for (std::size_t i = 0; i < width.size(); ++i) {
    os << pad(factors[i]["name"].get<std::string>(), width[i]);
  }
  os << lpad("observed", 14) << lpad("fitted", 14) << '\n';
  for (const auto& c : f["cells"]) {
    os << "  ";
    for (std::size_t i = 0; i < width.size(); ++i) {
      os << pad(c["levels"][i].get<std::string>(), width[i]);
    }
    os << lpad(num(c["observed"]), 14) << lpad(num(c["fitted"]), 14) << '\n';
  }
}

void text_test(std::ostream& os, const json& t) {
  os << "goodness of fit (df " << t["df"].get<int>() << "):\n"
     << "  G2          " << lpad(num(t["g2"]), 12) << "  p-value "
     << num(t["p_g2"]) << '\n'
     << "  Pearson X2  " << lpad(num(t["pearson_x2"]), 12) << "  p-value "
     << num(t["p_x2"]) << '\n';
}

void text_trace(std::ostream& os, const json& tr) {
  os << "backward elimination (alpha " << num(tr["alpha"]) << ", ties "
     << tr["tie_rule"].get<std::string>() << ")\n";
  int n = 1;
  for (const auto& s : tr["steps"]) {
    os << "step " << n++ << ": " << s["model"].get<std::string>() << "  (df "
       << s["model_df"].get<int>() << ", G2 " << num(s["model_g2"]) << ")\n";
    std::size_t w = 6;
    for (const auto& c : s["candidates"]) {
      w = std::max(w, c["reduced_model"].get<std::string>().size() + 2);
    }
    os << "  " << pad("Edge", 6) << pad("Clique", w) << lpad("d.f.", 5)
       << lpad("G2", 12) << lpad("p-value", 10) << lpad("model d.f.", 12)
       << lpad("model G2", 12) << '\n';
    for (const auto& c : s["candidates"]) {
      os << "  " << pad(c["edge"].get<std::string>(), 6)
         << pad(c["reduced_model"].get<std::string>(), w)
         << lpad(std::to_string(c["df"].get<int>()), 5) << lpad(num(c["g2"]), 12)
         << lpad(num(c["p"]), 10)
         << lpad(std::to_string(c["model_df"].get<int>()), 12)
         << lpad(num(c["model_g2"]), 12) << '\n';
    }
    if (s.contains("chosen")) {
      os << "  delete " << s["chosen"].get<std::string>() << '\n';
    } else {
      os << "  stop: " << s["stop_reason"].get<std::string>() << '\n';
    }
  }
  os << "final model: " << tr["final_model"].get<std::string>() << '\n';
}

}  // namespace

std::string render_text(const Report& r) {
  const auto& d = r.doc;
  std::ostringstream os;
  os << "loglin " << d.value("version", "") << " " << d.value("command", "") << '\n';
  if (d.contains("table")) text_table(os, d["table"]);
  if (d.contains("model")) text_model(os, d["model"]);
  if (d.contains("fit")) text_fit(os, d["fit"], d["table"]["factors"]);
  if (d.contains("df")) os << "degrees of freedom: " << d["df"].get<int>() << '\n';
  if (d.contains("test")) text_test(os, d["test"]);
  if (d.contains("independences")) {
    os << "implied independences:";
    if (d["independences"].empty()) os << " none";
    os << '\n';
    for (const auto& s : d["independences"]) os << "  " << s.get<std::string>() << '\n';
  }
  if (d.contains("trace")) text_trace(os, d["trace"]);
  if (d.contains("sample")) {
    const auto& s = d["sample"];
    os << "sample: scheme " << s["scheme"].get<std::string>() << "  seed "
       << s["seed"].get<std::uint64_t>() << "  rng " << s["rng"].get<std::string>()
       << "  N " << num(s["N"]) << '\n';
    if (s.contains("fixed")) {
      os << "  fixed:";
      for (const auto& f : s["fixed"]) os << ' ' << f.get<std::string>();
      os << '\n';
    }
    for (const auto& c : s["cells"]) {
      os << " ";
      for (const auto& l : c["levels"]) os << ' ' << pad(l.get<std::string>(), 8);
      os << lpad(num(c["count"]), 14) << '\n';
    }
    if (s.contains("out")) os << "  written to " << s["out"].get<std::string>() << '\n';
  }
  if (d.contains("warning")) os << "warning: " << d["warning"].get<std::string>() << '\n';
  return os.str();
}

std::string render(const Report& r, ReportFormat format) {
  return format == ReportFormat::Json ? render_json(r) : render_text(r);
}

}  // namespace loglin
