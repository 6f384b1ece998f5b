// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "loglin/fit.hpp"
#include "loglin/markov.hpp"
#include "loglin/sample.hpp"
#include "loglin/select.hpp"
#include "loglin/stats.hpp"
#include "test_support.hpp"

using namespace loglin;

namespace {

// Collects failure messages for one criterion.
struct Check {
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
  void near(double got, double want, double tol, const std::string& what) {
    if (!(std::abs(got - want) <= tol)) {
      std::ostringstream os;
      os.precision(10);
      os << what << ": got " << got << ", want " << want << " ± " << tol;
      failures.push_back(os.str());
    }
  }
};

int g_failed = 0;

void criterion(int id, const std::string& name, const std::function<void(Check&)>& body) {
  Check c;
  const auto start = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.failures.push_back(std::string("exception: ") + e.what());
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool pass = c.failures.empty();
  if (!pass) ++g_failed;
  std::printf("%s  %2d  %s  (%.2fs)\n", pass ? "PASS" : "FAIL", id, name.c_str(), secs);
  const std::size_t shown = std::min<std::size_t>(c.failures.size(), 10);
  for (std::size_t i = 0; i < shown; ++i) std::printf("        %s\n", c.failures[i].c_str());
  if (c.failures.size() > shown) {
    std::printf("        ... %zu more\n", c.failures.size() - shown);
  }
}

void expect_cells(Check& c, const ContingencyTable& fitted, const std::vector<double>& want,
                  double tol) {
  c.expect(fitted.size() == want.size(), "cell count");
  for (std::size_t i = 0; i < std::min(fitted.size(), want.size()); ++i) {
    c.near(fitted[i], want[i], tol, "cell " + std::to_string(i));
  }
}

void fitted_model_check(Check& c, const std::string& file, const std::string& model,
                        const std::vector<double>& cells, double cell_tol, double g2, int df,
                        double p) {
  const auto t = testing::load(file);
  const auto fr = fit(t, parse_model(model, t.factors()));
  expect_cells(c, fr.fitted, cells, cell_tol);
  const auto rep = goodness_of_fit(t, fr.fitted, fr.df);
  c.near(rep.g2, g2, 0.005, "G2");
  c.expect(rep.df == df, "df " + std::to_string(rep.df));
  c.near(rep.p_g2, p, 0.001, "p-value");
}

// --- Criterion 5 -----------------------------------------------------------

struct Row {
  const char* edge;
  double g2;
  double p;
};

void expect_rows(Check& c, const std::vector<CandidateEvaluation>& got,
                 const std::vector<Row>& rows, const std::string& table) {
  std::map<std::string, const CandidateEvaluation*> by_edge;
  for (const auto& e : got) by_edge[edge_label(e.edge)] = &e;
  for (const auto& r : rows) {
    const auto it = by_edge.find(r.edge);
    if (it == by_edge.end()) {
      c.expect(false, table + " row " + r.edge + " missing");
      continue;
    }
    c.near(it->second->g2, r.g2, 0.01, table + " " + r.edge + " G2");
    c.near(it->second->p, r.p, 0.001, table + " " + r.edge + " p");
  }
}

// --- Criterion 6 -----------------------------------------------------------

using Terms = std::vector<NameSet>;

struct ClosedFormRow {
  std::string model;
  bool closed_form;
  Terms numerator;
  Terms denominator;
};

Terms sorted(Terms t) {
  std::sort(t.begin(), t.end());
  return t;
}

// "n(12) * n(34) / (n(1) * n())" -> numerator and denominator term lists.
std::pair<Terms, Terms> parse_factorization(const std::string& s) {
  Terms num, den;
  const auto slash = s.find('/');
  std::size_t pos = 0;
  while ((pos = s.find("n(", pos)) != std::string::npos) {
    const auto close = s.find(')', pos);
    NameSet term;
    for (std::size_t i = pos + 2; i < close; ++i) term.insert(std::string(1, s[i]));
    (slash != std::string::npos && pos > slash ? den : num).push_back(term);
    pos = close + 1;
  }
  return {num, den};
}

Terms relabel(const Terms& terms, const std::map<std::string, std::string>& sigma) {
  Terms out;
  for (const auto& t : terms) {
    NameSet m;
    for (const auto& v : t) m.insert(sigma.at(v));
    out.push_back(m);
  }
  return sorted(out);
}

// --- Criterion 10 ----------------------------------------------------------

// Lower tail by composite Simpson on the substituted integrand (t = u²).
double chi2_cdf_oracle(double x, int k) {
  if (x <= 0.0) return 0.0;
  const double log_norm = (k / 2.0) * std::log(2.0) + std::lgamma(k / 2.0);
  auto f = [&](double u) {
    if (u == 0.0) return k == 1 ? 2.0 * std::exp(-log_norm) : 0.0;
    return 2.0 * std::exp((k - 1) * std::log(u) - u * u / 2.0 - log_norm);
  };
  const int n = 4000;
  const double b = std::sqrt(x), h = b / n;
  double s = f(0.0) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(i * h);
  return s * h / 3.0;
}

CliquePotentialSet random_potentials(const UndirectedGraph& g,
                                     const std::vector<FactorSpec>& factors,
                                     std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(0.05, 5.0);
  CliquePotentialSet ps{g, {}};
  for (const auto& cl : maximal_cliques(g)) {
    auto psi = ContingencyTable::zeros(select_factors(factors, cl));
    std::vector<double> v(psi.size());
    for (auto& x : v) x = d(rng);
    ps.potentials.emplace(cl, psi.with_counts(std::move(v)));
  }
  return ps;
}

}  // namespace

int main() {
  const auto start = std::chrono::steady_clock::now();

  criterion(1, "complete independence on the personality table", [](Check& c) {
    fitted_model_check(c, "personality.csv", "[P][C][D]",
                       {739.9, 74.07, 193.7, 19.39, 788.2, 78.9, 206.3, 20.65}, 0.05, 8.723,
                       4, 0.068);
  });

  criterion(2, "joint independence on the classroom table", [](Check& c) {
    fitted_model_check(c, "classroom.csv", "[AR][B]",
                       {14.020, 6.597, 14.845, 34.639, 4.948, 4.948, 2.979, 1.402, 3.154,
                        7.360, 1.051, 1.051},
                       0.005, 5.560, 5, 0.351);
  });

  criterion(3, "conditional independence on the infant survival table", [](Check& c) {
    fitted_model_check(c, "infant.csv", "[CP][CS]",
                       {2.632, 176.367, 4.367, 292.632, 17.012, 196.987, 1.987, 23.012},
                       0.005, 0.082, 2, 0.959);
  });

  criterion(4, "no three-factor interaction via IPF on the accident table", [](Check& c) {
    const auto t = testing::load("accident.csv");
    const auto fr = fit_ipf(t, parse_model("[AD][AI][DI]", t.factors()), 1e-8, 100);
    c.expect(fr.method == FitMethod::Ipf, "method");
    c.expect(fr.converged, "did not converge within 100 cycles");
    expect_cells(c, fr.fitted,
                 {350.48858, 149.51130, 25.51142, 23.48870, 59.51104, 112.48921, 19.48896,
                  79.51079},
                 0.001);
    const auto rep = goodness_of_fit(t, fr.fitted, fr.df);
    c.near(rep.g2, 0.043, 0.005, "G2");
    c.expect(rep.df == 1, "df");
    c.near(rep.p_g2, 0.835, 0.001, "p-value");
  });

  criterion(5, "backward selection on the WAM table", [](Check& c) {
    const auto t = testing::load("wam.csv");
    const auto trace = backward_select(t, 0.05);
    c.expect(trace.steps.size() == 4, "expected 4 steps, got " +
                                          std::to_string(trace.steps.size()));
    if (trace.steps.size() < 4) return;
    expect_rows(c, trace.steps[0].candidates,
                {{"ab", 18.585, 0.29078}, {"ac", 20.689, 0.19080}, {"ad", 14.172, 0.58588},
                 {"ae", 18.781, 0.28017}, {"af", 11.951, 0.74734}, {"bc", 26.739, 0.04447},
                 {"bd", 34.733, 0.00432}, {"be", 56.570, 0.00000}, {"bf", 11.673, 0.76616},
                 {"cd", 29.439, 0.02114}, {"ce", 26.052, 0.05329}, {"cf", 81.657, 0.00000},
                 {"de", 78.248, 0.00000}, {"df", 46.221, 0.00009}, {"ef", 17.728, 0.34005}},
                "first step");
    c.expect(trace.steps[0].candidates.size() == 15, "first step candidate count");
    expect_rows(c, trace.steps[1].candidates,
                {{"ab", 12.456, 0.13198}, {"bc", 18.097, 0.02051}, {"bd", 27.358, 0.00061},
                 {"be", 49.723, 0.00000}, {"af", 5.822, 0.66711}, {"cf", 73.014, 0.00000},
                 {"df", 38.845, 0.00001}, {"ef", 10.881, 0.20852}},
                "second step");
    c.expect(trace.steps[1].candidates.size() == 8, "second step candidate count");
    expect_rows(c, trace.steps[3].candidates,
                {{"ab", 10.606, 0.03137}, {"ac", 10.432, 0.03374}, {"ae", 10.426, 0.03383},
                 {"bd", 25.507, 0.00004}, {"cf", 67.832, 0.00000}},
                "final step");
    const char* choices[] = {"bf", "af", "ad"};
    for (int i = 0; i < 3; ++i) {
      const auto& chosen = trace.steps[static_cast<std::size_t>(i)].chosen;
      c.expect(chosen && edge_label(*chosen) == choices[i],
               std::string("step ") + std::to_string(i + 1) + " should delete " + choices[i]);
    }
    c.expect(!trace.steps[3].chosen.has_value(), "selection should stop at step 4");
    c.expect(trace.final_model.to_string() == "[abce][bcde][cdef]",
             "final model " + trace.final_model.to_string());
  });

  criterion(6, "four-vertex graph classes and closed-form structure", [](Check& c) {
    const auto four = testing::numbered_factors(4);
    const std::vector<ClosedFormRow> reference_rows = {
        {"[1][2][3][4]", true, {{"1"}, {"2"}, {"3"}, {"4"}}, {{}, {}, {}}},
        {"[12][3][4]", true, {{"1", "2"}, {"3"}, {"4"}}, {{}, {}}},
        {"[12][13][4]", true, {{"1", "2"}, {"1", "3"}, {"4"}}, {{"1"}, {}}},
        {"[12][34]", true, {{"1", "2"}, {"3", "4"}}, {{}}},
        {"[12][13][14]", true, {{"1", "2"}, {"1", "3"}, {"1", "4"}}, {{"1"}, {"1"}}},
        {"[12][23][34]", true, {{"1", "2"}, {"2", "3"}, {"3", "4"}}, {{"2"}, {"3"}}},
        {"[123][4]", true, {{"1", "2", "3"}, {"4"}}, {{}}},
        {"[123][14]", true, {{"1", "2", "3"}, {"1", "4"}}, {{"1"}}},
        {"[12][23][34][14]", false, {}, {}},
        {"[123][134]", true, {{"1", "2", "3"}, {"1", "3", "4"}}, {{"1", "3"}}},
        {"[1234]", true, {{"1", "2", "3", "4"}}, {}},
    };

    std::vector<UndirectedGraph> reps;
    for (std::uint64_t mask = 0; mask < 64; ++mask) {
      const auto g = testing::graph_from_mask(4, mask);
      const bool seen = std::any_of(reps.begin(), reps.end(),
                                    [&](const UndirectedGraph& r) { return isomorphic(r, g); });
      if (!seen) reps.push_back(g);
    }
    c.expect(reps.size() == 11, "isomorphism classes: " + std::to_string(reps.size()));

    int decomposable = 0;
    std::vector<bool> row_used(reference_rows.size(), false);
    for (const auto& rep : reps) {
      const auto gc = model_from_graph(rep, four);
      const bool dec = is_decomposable(gc);
      decomposable += dec ? 1 : 0;

      std::size_t match = reference_rows.size();
      for (std::size_t i = 0; i < reference_rows.size(); ++i) {
        if (isomorphic(rep, interaction_graph(parse_model(reference_rows[i].model, four)))) {
          c.expect(match == reference_rows.size(), "class matches two rows: " + rep.to_string());
          match = i;
        }
      }
      if (match == reference_rows.size()) {
        c.expect(false, "class without a row: " + rep.to_string());
        continue;
      }
      row_used[match] = true;
      const auto& row = reference_rows[match];
      c.expect(dec == row.closed_form, "decomposability of " + row.model);
      if (!dec) continue;

      const auto [num, den] = parse_factorization(render_factorization(gc));
      const auto row_graph = interaction_graph(parse_model(row.model, four));
      // Some isomorphism onto the row's labelling must carry the rendered
      // clique and separator terms onto the row's terms.
      std::vector<std::string> perm = four;
      bool found = false;
      do {
        std::map<std::string, std::string> sigma;
        for (std::size_t i = 0; i < 4; ++i) sigma[four[i]] = perm[i];
        bool iso = true;
        for (const auto& [u, v] : rep.edges()) iso = iso && row_graph.has_edge(sigma[u], sigma[v]);
        if (!iso || rep.edge_count() != row_graph.edge_count()) continue;
        found = relabel(num, sigma) == sorted(row.numerator) &&
                relabel(den, sigma) == sorted(row.denominator);
      } while (!found && std::next_permutation(perm.begin(), perm.end()));
      c.expect(found, "factorization of " + gc.to_string() + " vs row " + row.model + ": " +
                          render_factorization(gc));
    }
    c.expect(decomposable == 10, "decomposable classes: " + std::to_string(decomposable));
    c.expect(std::all_of(row_used.begin(), row_used.end(), [](bool b) { return b; }),
             "some row matched no class");
  });

  criterion(7, "degrees of freedom for all three-factor models", [](Check& c) {
    using Formula = long (*)(long, long, long);
    const std::vector<std::pair<const char*, Formula>> rows = {
        {"[1][2][3]", [](long i, long j, long k) { return i * j * k - i - j - k + 2; }},
        {"[12][3]", [](long i, long j, long k) { return (i * j - 1) * (k - 1); }},
        {"[13][2]", [](long i, long j, long k) { return (i * k - 1) * (j - 1); }},
        {"[23][1]", [](long i, long j, long k) { return (j * k - 1) * (i - 1); }},
        {"[12][13]", [](long i, long j, long k) { return i * (j - 1) * (k - 1); }},
        {"[12][23]", [](long i, long j, long k) { return j * (i - 1) * (k - 1); }},
        {"[13][23]", [](long i, long j, long k) { return k * (i - 1) * (j - 1); }},
        {"[12][13][23]", [](long i, long j, long k) { return (i - 1) * (j - 1) * (k - 1); }},
        {"[123]", [](long, long, long) { return 0L; }},
    };
    int checks = 0;
    for (long i = 2; i <= 4; ++i) {
      for (long j = 2; j <= 4; ++j) {
        for (long k = 2; k <= 4; ++k) {
          const auto factors = testing::factors_with_levels(
              {static_cast<std::size_t>(i), static_cast<std::size_t>(j),
               static_cast<std::size_t>(k)});
          for (const auto& [model, formula] : rows) {
            ++checks;
            const int got = degrees_of_freedom(parse_model(model, factors), factors);
            c.expect(got == formula(i, j, k),
                     std::string(model) + " at " + std::to_string(i) + "x" +
                         std::to_string(j) + "x" + std::to_string(k));
          }
        }
      }
    }
    c.expect(checks == 243, "check count " + std::to_string(checks));
  });

  criterion(8, "IPF agrees with the closed form on random decomposable models", [](Check& c) {
    std::mt19937_64 rng(20240801);
    std::uniform_int_distribution<std::size_t> nfac(3, 4), lev(2, 3);
    for (int rep = 0; rep < 100; ++rep) {
      const std::size_t n = nfac(rng);
      std::vector<std::size_t> levels(n);
      for (auto& l : levels) l = lev(rng);
      const auto t = testing::random_positive_table(levels, rng);
      const auto gc = testing::random_decomposable(n, rng);
      const auto closed = fit_decomposable(t, gc);
      const auto ipf = fit_ipf(t, gc, 1e-10, 10000);
      c.expect(ipf.converged, gc.to_string() + " IPF did not converge");
      c.near(max_abs_difference(closed.fitted, ipf.fitted), 0.0, 1e-6,
             gc.to_string() + " max cell difference");
      c.near(closed.max_margin_deviation, 0.0, 1e-9 * t.total(),
             gc.to_string() + " closed-form margin deviation");
    }
  });

  criterion(9, "Markov properties of factorized distributions", [](Check& c) {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<std::size_t> nv(2, 5);
    for (int rep = 0; rep < 200; ++rep) {
      const std::size_t n = nv(rng);
      const auto g = testing::random_graph(n, 0.5, rng);
      const auto f = testing::factors_with_levels(std::vector<std::size_t>(n, 2));
      const auto d = distribution_from_potentials(random_potentials(g, f, rng), f);
      const auto r = check_markov_properties(d, g, 1e-9);
      c.expect(r.global && r.local && r.pairwise, "graph " + g.to_string());
    }
    const auto correlated = JointDistribution::from_weights(
        ContingencyTable({{"x", {"0", "1"}}, {"y", {"0", "1"}}}, {1, 0, 0, 1}));
    const auto r = check_markov_properties(correlated, UndirectedGraph({"x", "y"}), 1e-9);
    c.expect(!r.pairwise, "correlated pair should fail pairwise on the edgeless graph");
  });

  criterion(10, "chi-square tail against numerical integration", [](Check& c) {
    int points = 0;
    for (int k = 1; k <= 30; ++k) {
      for (int i = 0; i <= 33; ++i) {
        const double x = 100.0 * i / 33.0;
        ++points;
        c.near(chi2_sf(x, k), 1.0 - chi2_cdf_oracle(x, k), 1e-7,
               "x=" + std::to_string(x) + " df=" + std::to_string(k));
      }
    }
    c.expect(points >= 1000, "grid size " + std::to_string(points));
  });

  criterion(11, "sampling constraints and chi-square calibration", [](Check& c) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::uint64_t> total(1, 5000);
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
      const auto w = testing::random_positive_table({2, 3, 2}, rng);
      const std::uint64_t n = total(rng);
      const auto draw = sample_multinomial(n, JointDistribution::from_weights(w), seed);
      c.expect(draw.total() == static_cast<double>(n),
               "multinomial total, seed " + std::to_string(seed));
      const NameSet fixed = seed % 2 ? NameSet{"1"} : NameSet{"2", "3"};
      const auto pm = sample_product_multinomial(w, fixed, seed);
      c.expect(max_abs_difference(marginalize(pm, fixed), marginalize(w, fixed)) == 0.0,
               "product-multinomial margin, seed " + std::to_string(seed));
    }

    const auto weights = testing::random_positive_table({2, 3, 3}, rng, 5, 20);
    const auto gc = parse_model("[12][13]", weights.factors());
    const auto truth = JointDistribution::from_weights(fit_decomposable(weights, gc).fitted);
    const int df = degrees_of_freedom(gc, weights.factors());
    double sum = 0.0;
    const int reps = 500;
    for (int r = 0; r < reps; ++r) {
      const auto draw = sample_multinomial(5000, truth, 50000 + static_cast<std::uint64_t>(r));
      sum += deviance_g2(draw, fit_decomposable(draw, gc).fitted);
    }
    c.near(sum / reps, df, 0.2 * df, "mean G2 over replicates");
  });

  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("%d of 11 criteria failed; total %.2fs\n", g_failed, secs);
  return g_failed == 0 ? 0 : 1;
}
