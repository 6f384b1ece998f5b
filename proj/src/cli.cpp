#include "loglin/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <ostream>

#include "CLI11.hpp"

#include "loglin/csv.hpp"
#include "loglin/sample.hpp"

namespace loglin::cli {

using nlohmann::json;

namespace {

Report base_report(const std::string& command) {
  Report r;
  r.doc["command"] = command;
  r.doc["version"] = tool_version();
  return r;
}

std::vector<std::string> infer_factors(const std::string& model) {
  const bool commas = model.find(',') != std::string::npos;
  std::vector<std::string> names;
  std::string current;
  bool inside = false;
  auto flush = [&] {
    if (!current.empty() &&
        std::find(names.begin(), names.end(), current) == names.end()) {
      names.push_back(current);
    }
    current.clear();
  };
  for (char ch : model) {
    if (std::isspace(static_cast<unsigned char>(ch))) continue;
    if (ch == '[') {
      inside = true;
    } else if (ch == ']') {
      flush();
      inside = false;
    } else if (inside && ch == ',') {
      flush();
    } else if (inside) {
      current += ch;
      if (!commas) flush();
    }
  }
  if (names.empty()) throw InputError("model string names no factors");
  return names;
}

ContingencyTable uniform_table(const std::vector<std::size_t>& shape, double value) {
  std::vector<FactorSpec> factors;
  for (std::size_t i = 0; i < shape.size(); ++i) {
    if (shape[i] == 0) throw InputError("--shape entries must be positive");
    FactorSpec f{std::to_string(i + 1), {}};
    for (std::size_t l = 0; l < shape[i]; ++l) f.levels.push_back(std::to_string(l + 1));
    factors.push_back(std::move(f));
  }
  return ContingencyTable::filled(std::move(factors), value);
}

json sample_cells(const ContingencyTable& t) {
  json cells = json::array();
  for (std::size_t off = 0; off < t.size(); ++off) {
    const auto idx = t.levels_of(off);
    json labels = json::array();
    for (std::size_t i = 0; i < idx.size(); ++i) labels.push_back(t.factor(i).levels[idx[i]]);
    cells.push_back({{"levels", labels}, {"count", t[off]}});
  }
  return cells;
}

}  // namespace

Report cmd_fit(const FitOptions& opts) {
  const auto table = read_table_csv(opts.table);
  const auto gc = parse_model(opts.model, table.factors());
  const auto fr = fit(table, gc, opts.tol, opts.max_iter);

  Report r = base_report("fit");
  r.doc["table"] = describe_table(table);
  r.doc["table"]["path"] = opts.table.string();
  r.doc["model"] = describe_model(gc);
  r.doc["fit"] = describe_fit(fr, table);
  r.doc["test"] = describe_test(goodness_of_fit(table, fr.fitted, fr.df));
  if (opts.out) {
    write_table_csv(*opts.out, fr.fitted);
    r.doc["fit"]["out"] = opts.out->string();
  }
  if (!fr.converged) {
    r.doc["warning"] = "IPF did not converge within " + std::to_string(opts.max_iter) +
                       " cycles (max margin deviation " +
                       format_number(fr.max_margin_deviation) + ")";
    r.exit_code = kExitNumericError;
  }
  return r;
}

Report cmd_select(const SelectOptions& opts) {
  const auto table = read_table_csv(opts.table);
  const auto trace = backward_select(table, opts.alpha, opts.tie_rule);
  Report r = base_report("select");
  r.doc["table"] = describe_table(table);
  r.doc["table"]["path"] = opts.table.string();
  r.doc["trace"] = describe_trace(trace);
  r.doc["model"] = describe_model(trace.final_model);
  const auto final_fit = fit_decomposable(table, trace.final_model);
  r.doc["test"] = describe_test(goodness_of_fit(table, final_fit.fitted, final_fit.df));
  return r;
}

Report cmd_classify(const ClassifyOptions& opts) {
  std::optional<ContingencyTable> table;
  std::vector<std::string> factors = opts.factors;
  if (opts.table) {
    table = read_table_csv(*opts.table);
    if (factors.empty()) factors = table->factor_names();
  }
  if (factors.empty()) factors = infer_factors(opts.model);
  const auto gc = parse_model(opts.model, factors);

  Report r = base_report("classify");
  r.doc["model"] = describe_model(gc);
  if (table) {
    if (table->factor_set() != gc.factor_set()) {
      throw InputError("--factors do not match the table's factors");
    }
    r.doc["table"] = describe_table(*table);
    r.doc["df"] = degrees_of_freedom(gc, table->factors());
  }
  json cis = json::array();
  if (is_graphical(gc)) {
    for (const auto& s : implied_independences(gc)) cis.push_back(to_string(s));
  }
  r.doc["independences"] = cis;
  return r;
}

Report cmd_simulate(const SimulateOptions& opts) {
  SamplingScheme scheme;
  scheme.kind = parse_sampling_kind(opts.scheme);
  scheme.fixed_factors = NameSet(opts.fixed.begin(), opts.fixed.end());
  scheme.seed = opts.seed;
  scheme.validate();

  if (opts.table.has_value() == !opts.shape.empty()) {
    throw InputError("simulate needs exactly one of --table or --shape");
  }
  ContingencyTable base = opts.table ? read_table_csv(*opts.table)
                                     : uniform_table(opts.shape, 1.0);
  auto rescale = [&](double total) {
    const double z = base.total();
    if (!(z > 0.0)) throw InputError("base table sums to zero");
    std::vector<double> v(base.counts().begin(), base.counts().end());
    for (double& x : v) x *= total / z;
    base = base.with_counts(std::move(v));
  };

  ContingencyTable sampled;
  switch (scheme.kind) {
    case SamplingKind::Poisson:
      if (opts.n) rescale(static_cast<double>(*opts.n));
      sampled = sample_poisson(base, scheme.seed);
      break;
    case SamplingKind::Multinomial:
      if (!opts.n) throw InputError("multinomial sampling needs --n");
      sampled = sample_multinomial(*opts.n, JointDistribution::from_weights(base),
                                   scheme.seed);
      break;
    case SamplingKind::ProductMultinomial:
      if (opts.n) rescale(static_cast<double>(*opts.n));
      sampled = sample_product_multinomial(base, scheme.fixed_factors, scheme.seed);
      break;
  }

  Report r = base_report("simulate");
  r.doc["table"] = describe_table(sampled);
  json s = {{"scheme", to_string(scheme.kind)},
            {"seed", scheme.seed},
            {"rng", rng_identity()},
            {"N", sampled.total()},
            {"cells", sample_cells(sampled)}};
  if (!opts.fixed.empty()) s["fixed"] = opts.fixed;
  if (opts.out) {
    write_table_csv(*opts.out, sampled);
    s["out"] = opts.out->string();
  }
  r.doc["sample"] = s;
  return r;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Log-linear model analysis of multi-way contingency tables"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"text", "json"}));

  FitOptions fit_opts;
  std::string fit_out;
  auto* fit_cmd = app.add_subcommand("fit", "Fit a model and test goodness of fit");
  fit_cmd->add_option("--table", fit_opts.table, "Table CSV (long format)")->required();
  fit_cmd->add_option("--model", fit_opts.model, "Model, e.g. [12][3] or [A,B][C]")
      ->required();
  fit_cmd->add_option("--tol", fit_opts.tol, "IPF margin tolerance");
  fit_cmd->add_option("--max-iter", fit_opts.max_iter, "IPF cycle limit");
  fit_cmd->add_option("--out", fit_out, "Write the fitted table as CSV");
  fit_cmd->add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"text", "json"}));

  SelectOptions sel_opts;
  std::string tie = "lexicographic";
  auto* sel_cmd = app.add_subcommand("select", "Backward elimination over decomposable models");
  sel_cmd->add_option("--table", sel_opts.table, "Table CSV (long format)")->required();
  sel_cmd->add_option("--alpha", sel_opts.alpha, "Elimination threshold");
  sel_cmd->add_option("--tie-rule", tie, "Tie break on equal p-values")
      ->check(CLI::IsMember({"lexicographic", "reverse-lexicographic"}));
  sel_cmd->add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"text", "json"}));

  ClassifyOptions cls_opts;
  std::string cls_factors, cls_table;
  auto* cls_cmd = app.add_subcommand("classify", "Classify a model and list implied independences");
  cls_cmd->add_option("--model", cls_opts.model, "Model string")->required();
  cls_cmd->add_option("--factors", cls_factors, "Comma-separated factor names");
  cls_cmd->add_option("--table", cls_table, "Take factors and levels from a table");
  cls_cmd->add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"text", "json"}));

  SimulateOptions sim_opts;
  std::string sim_table, sim_shape, sim_fixed, sim_out;
  std::uint64_t sim_n = 0;
  auto* sim_cmd = app.add_subcommand("simulate", "Draw a table under a sampling scheme");
  sim_cmd->add_option("--scheme", sim_opts.scheme, "poisson | multinomial | product-multinomial")
      ->check(CLI::IsMember({"poisson", "multinomial", "product-multinomial"}));
  sim_cmd->add_option("--table", sim_table, "Base table: weights, means, or expected counts");
  sim_cmd->add_option("--shape", sim_shape, "Uniform base table shape, e.g. 2,2,2");
  auto* n_opt = sim_cmd->add_option("--n", sim_n, "Total count");
  sim_cmd->add_option("--fixed", sim_fixed, "Comma-separated fixed factors");
  sim_cmd->add_option("--seed", sim_opts.seed, "Random seed");
  sim_cmd->add_option("--out", sim_out, "Write the sampled table as CSV");
  sim_cmd->add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  auto split = [](const std::string& s) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (start <= s.size() && !s.empty()) {
      const auto comma = s.find(',', start);
      parts.push_back(s.substr(start, comma == std::string::npos ? std::string::npos
                                                                 : comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    return parts;
  };

  try {
    Report report;
    if (*fit_cmd) {
      if (!fit_out.empty()) fit_opts.out = fit_out;
      report = cmd_fit(fit_opts);
    } else if (*sel_cmd) {
      sel_opts.tie_rule = tie == "lexicographic" ? TieRule::Lexicographic
                                                 : TieRule::ReverseLexicographic;
      report = cmd_select(sel_opts);
    } else if (*cls_cmd) {
      cls_opts.factors = split(cls_factors);
      if (!cls_table.empty()) cls_opts.table = cls_table;
      report = cmd_classify(cls_opts);
    } else {
      if (!sim_table.empty()) sim_opts.table = sim_table;
      for (const auto& p : split(sim_shape)) {
        try {
          sim_opts.shape.push_back(std::stoul(p));
        } catch (const std::exception&) {
          throw InputError("invalid --shape entry '" + p + "'");
        }
      }
      if (n_opt->count() > 0) sim_opts.n = sim_n;
      sim_opts.fixed = split(sim_fixed);
      if (!sim_out.empty()) sim_opts.out = sim_out;
      report = cmd_simulate(sim_opts);
    }
    out << render(report, parse_report_format(format));
    return report.exit_code;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << '\n';
    return kExitNumericError;
  }
}

}  // namespace loglin::cli
