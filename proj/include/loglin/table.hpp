#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "loglin/common.hpp"

namespace loglin {

/// A categorical factor with its ordered level labels.
struct FactorSpec {
  std::string name;
  std::vector<std::string> levels;

  std::size_t level_count() const { return levels.size(); }
  /// Position of `label` in `levels`; throws InputError when absent.
  std::size_t level_index(std::string_view label) const;

  bool operator==(const FactorSpec&) const = default;
};

/// Dense multi-way table of nonnegative counts.
///
/// Cells are stored in lexicographic order of level indices with the last
/// factor varying fastest. Observed tables hold integer counts; fitted
/// tables share the type and may hold fractional values.
class ContingencyTable {
 public:
  ContingencyTable() = default;
  /// Validates factor specs, array length, and nonnegativity.
  ContingencyTable(std::vector<FactorSpec> factors, std::vector<double> counts);

  static ContingencyTable zeros(std::vector<FactorSpec> factors);
  static ContingencyTable filled(std::vector<FactorSpec> factors, double value);

  const std::vector<FactorSpec>& factors() const { return factors_; }
  const FactorSpec& factor(std::size_t i) const { return factors_.at(i); }
  std::size_t dimension() const { return factors_.size(); }
  std::size_t size() const { return counts_.size(); }
  std::span<const double> counts() const { return counts_; }
  double total() const;

  std::vector<std::string> factor_names() const;
  NameSet factor_set() const;
  bool has_factor(std::string_view name) const;
  /// Throws InputError for an unknown factor.
  std::size_t factor_index(std::string_view name) const;
  std::vector<std::size_t> shape() const;

  /// Count at a label tuple (one label per factor, in factor order).
  double cell(std::span<const std::string> labels) const;
  double cell(std::initializer_list<std::string> labels) const;
  double at(std::span<const std::size_t> levels) const;
  double operator[](std::size_t offset) const { return counts_[offset]; }

  std::size_t offset_of(std::span<const std::size_t> levels) const;
  std::vector<std::size_t> levels_of(std::size_t offset) const;

  /// Same factors, new cell values.
  ContingencyTable with_counts(std::vector<double> counts) const;

  bool same_shape(const ContingencyTable& other) const;

 private:
  std::vector<FactorSpec> factors_;
  std::vector<double> counts_;
};

/// One input record for `from_records`: a level label per factor plus a count.
struct Record {
  std::vector<std::string> labels;
  double count = 0.0;
};

/// Builds a table from cell records. Unmentioned cells are zero; duplicate
/// label tuples, unknown labels, and negative counts throw InputError.
ContingencyTable from_records(std::vector<FactorSpec> factors,
                              std::span<const Record> records);

/// Sums out every factor not in `keep`. Kept factors retain their original
/// relative order; an empty `keep` yields a zero-dimensional table holding N.
ContingencyTable marginalize(const ContingencyTable& table,
                             const NameSet& keep);

/// For each cell of `table`, the offset of the matching cell in
/// `marginalize(table, keep)`.
std::vector<std::size_t> margin_offsets(const std::vector<FactorSpec>& factors,
                                        const NameSet& keep);

/// Factor specs of `factors` whose names are in `keep`, in original order.
std::vector<FactorSpec> select_factors(const std::vector<FactorSpec>& factors,
                                       const NameSet& keep);

/// Largest absolute cell difference; tables must share a shape.
double max_abs_difference(const ContingencyTable& a, const ContingencyTable& b);

}  // namespace loglin
