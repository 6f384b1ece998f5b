#pragma once

#include <cstdint>
#include <string>

#include "loglin/markov.hpp"
#include "loglin/table.hpp"

namespace loglin {

enum class SamplingKind { Poisson, Multinomial, ProductMultinomial };

std::string to_string(SamplingKind k);
/// Accepts "poisson", "multinomial", "product-multinomial".
SamplingKind parse_sampling_kind(const std::string& s);

struct SamplingScheme {
  SamplingKind kind = SamplingKind::Multinomial;
  /// Nonempty exactly for product-multinomial sampling.
  NameSet fixed_factors;
  std::uint64_t seed = 0;

  /// Throws InputError when the invariant on `fixed_factors` fails.
  void validate() const;
};

/// Generator identity recorded in reports next to the seed.
std::string rng_identity();

/// Independent Poisson(mean) counts per cell.
ContingencyTable sample_poisson(const ContingencyTable& means, std::uint64_t seed);

/// Multinomial(n_total, probs) counts; always sums to n_total.
ContingencyTable sample_multinomial(std::uint64_t n_total,
                                    const JointDistribution& probs,
                                    std::uint64_t seed);

/// Independent multinomial draw inside every slice of `fixed_factors`, with
/// the slice total of `expected` and its normalized cell shares. The output's
/// margin over `fixed_factors` equals that of `expected` exactly.
ContingencyTable sample_product_multinomial(const ContingencyTable& expected,
                                            const NameSet& fixed_factors,
                                            std::uint64_t seed);

}  // namespace loglin
