#include "loglin/sample.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace loglin {

namespace {

using Engine = std::mt19937_64;

// Sequential conditional binomials: cell k gets Binomial(remaining, w_k / rest)
// where rest is the weight of cells k.. onward. The last positive-weight cell
// takes whatever remains, so the draw always sums to n.
void draw_multinomial(Engine& rng, std::uint64_t n, std::span<const double> weights,
                      std::span<double> out) {
  const std::size_t m = weights.size();
  std::vector<double> suffix(m + 1, 0.0);
  std::size_t last = m;
  for (std::size_t k = m; k-- > 0;) {
    if (!(weights[k] >= 0.0)) throw InputError("sampling weights must be nonnegative");
    suffix[k] = suffix[k + 1] + weights[k];
    if (last == m && weights[k] > 0.0) last = k;
  }
  if (last == m) {
    if (n > 0) throw NumericError("sampling weights sum to zero");
    std::fill(out.begin(), out.end(), 0.0);
    return;
  }
  std::uint64_t remaining = n;
  for (std::size_t k = 0; k < m; ++k) {
    std::uint64_t x = 0;
    if (k == last) {
      x = remaining;
    } else if (k < last && remaining > 0 && weights[k] > 0.0) {
      const double p = std::clamp(weights[k] / suffix[k], 0.0, 1.0);
      std::binomial_distribution<std::uint64_t> binom(remaining, p);
      x = binom(rng);
    }
    out[k] = static_cast<double>(x);
    remaining -= x;
  }
}

}  // namespace

std::string to_string(SamplingKind k) {
  switch (k) {
    case SamplingKind::Poisson: return "poisson";
    case SamplingKind::Multinomial: return "multinomial";
    case SamplingKind::ProductMultinomial: return "product-multinomial";
  }
  return "unknown";
}

SamplingKind parse_sampling_kind(const std::string& s) {
  if (s == "poisson") return SamplingKind::Poisson;
  if (s == "multinomial") return SamplingKind::Multinomial;
  if (s == "product-multinomial") return SamplingKind::ProductMultinomial;
  throw InputError("unknown sampling scheme '" + s + "'");
}

void SamplingScheme::validate() const {
  const bool needs_fixed = kind == SamplingKind::ProductMultinomial;
  if (needs_fixed != !fixed_factors.empty()) {
    throw InputError(needs_fixed
                         ? "product-multinomial sampling needs fixed factors"
                         : "fixed factors apply only to product-multinomial sampling");
  }
}

std::string rng_identity() {
  std::string lib = "unknown-stdlib";
#if defined(__GLIBCXX__)
  lib = "libstdc++-" + std::to_string(__GLIBCXX__);
#elif defined(_LIBCPP_VERSION)
  lib = "libc++-" + std::to_string(_LIBCPP_VERSION);
#endif
  return "std::mt19937_64/" + lib;
}

ContingencyTable sample_poisson(const ContingencyTable& means, std::uint64_t seed) {
  Engine rng(seed);
  std::vector<double> out(means.size(), 0.0);
  for (std::size_t i = 0; i < means.size(); ++i) {
    if (means[i] > 0.0) {
      std::poisson_distribution<std::uint64_t> pois(means[i]);
      out[i] = static_cast<double>(pois(rng));
    }
  }
  return means.with_counts(std::move(out));
}

ContingencyTable sample_multinomial(std::uint64_t n_total,
                                    const JointDistribution& probs,
                                    std::uint64_t seed) {
  Engine rng(seed);
  std::vector<double> out(probs.probs().size(), 0.0);
  draw_multinomial(rng, n_total, probs.probs(), out);
  return probs.table().with_counts(std::move(out));
}

ContingencyTable sample_product_multinomial(const ContingencyTable& expected,
                                            const NameSet& fixed_factors,
                                            std::uint64_t seed) {
  if (fixed_factors.empty()) {
    throw InputError("product-multinomial sampling needs fixed factors");
  }
  const auto margin = marginalize(expected, fixed_factors);
  std::vector<std::uint64_t> totals(margin.size());
  for (std::size_t s = 0; s < margin.size(); ++s) {
    const double m = margin[s];
    if (!(m > 0.0) || m != std::floor(m)) {
      throw InputError("fixed margins must be positive integers");
    }
    totals[s] = static_cast<std::uint64_t>(m);
  }
  const auto map = margin_offsets(expected.factors(), fixed_factors);
  // Cells of each slice in storage order.
  std::vector<std::vector<std::size_t>> slices(margin.size());
  for (std::size_t off = 0; off < expected.size(); ++off) {
    slices[map[off]].push_back(off);
  }
  Engine rng(seed);
  std::vector<double> out(expected.size(), 0.0);
  std::vector<double> weights, draw;
  for (std::size_t s = 0; s < slices.size(); ++s) {
    weights.clear();
    for (auto off : slices[s]) weights.push_back(expected[off]);
    draw.assign(weights.size(), 0.0);
    draw_multinomial(rng, totals[s], weights, draw);
    for (std::size_t k = 0; k < slices[s].size(); ++k) out[slices[s][k]] = draw[k];
  }
  return expected.with_counts(std::move(out));
}

}  // namespace loglin
