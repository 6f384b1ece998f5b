#include "loglin/table.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace loglin {

std::size_t FactorSpec::level_index(std::string_view label) const {
  auto it = std::find(levels.begin(), levels.end(), label);
  if (it == levels.end()) {
    throw InputError("unknown level '" + std::string(label) + "' for factor '" +
                     name + "'");
  }
  return static_cast<std::size_t>(it - levels.begin());
}

namespace {

void validate_factors(const std::vector<FactorSpec>& factors) {
  std::set<std::string> names;
  for (const auto& f : factors) {
    if (f.name.empty()) throw InputError("factor name must be nonempty");
    if (!names.insert(f.name).second) {
      throw InputError("duplicate factor name '" + f.name + "'");
    }
    if (f.levels.empty()) {
      throw InputError("factor '" + f.name + "' has no levels");
    }
    std::set<std::string> labels(f.levels.begin(), f.levels.end());
    if (labels.size() != f.levels.size()) {
      throw InputError("factor '" + f.name + "' has duplicate level labels");
    }
  }
}

std::size_t cell_count(const std::vector<FactorSpec>& factors) {
  std::size_t n = 1;
  for (const auto& f : factors) n *= f.level_count();
  return n;
}

}  // namespace

ContingencyTable::ContingencyTable(std::vector<FactorSpec> factors,
                                   std::vector<double> counts)
    : factors_(std::move(factors)), counts_(std::move(counts)) {
  validate_factors(factors_);
  if (counts_.size() != cell_count(factors_)) {
    throw InputError("count array length " + std::to_string(counts_.size()) +
                     " does not match the product of level counts " +
                     std::to_string(cell_count(factors_)));
  }
  for (double c : counts_) {
    if (!std::isfinite(c) || c < 0.0) {
      throw InputError("cell counts must be finite and nonnegative");
    }
  }
}

ContingencyTable ContingencyTable::zeros(std::vector<FactorSpec> factors) {
  return filled(std::move(factors), 0.0);
}

ContingencyTable ContingencyTable::filled(std::vector<FactorSpec> factors,
                                          double value) {
  const std::size_t n = cell_count(factors);
  return ContingencyTable(std::move(factors), std::vector<double>(n, value));
}

double ContingencyTable::total() const {
  return std::accumulate(counts_.begin(), counts_.end(), 0.0);
}

std::vector<std::string> ContingencyTable::factor_names() const {
  std::vector<std::string> names;
  names.reserve(factors_.size());
  for (const auto& f : factors_) names.push_back(f.name);
  return names;
}

NameSet ContingencyTable::factor_set() const {
  NameSet s;
  for (const auto& f : factors_) s.insert(f.name);
  return s;
}

bool ContingencyTable::has_factor(std::string_view name) const {
  return std::any_of(factors_.begin(), factors_.end(),
                     [&](const FactorSpec& f) { return f.name == name; });
}

std::size_t ContingencyTable::factor_index(std::string_view name) const {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i].name == name) return i;
  }
  throw InputError("unknown factor '" + std::string(name) + "'");
}

std::vector<std::size_t> ContingencyTable::shape() const {
  std::vector<std::size_t> s;
  s.reserve(factors_.size());
  for (const auto& f : factors_) s.push_back(f.level_count());
  return s;
}

double ContingencyTable::cell(std::span<const std::string> labels) const {
  if (labels.size() != factors_.size()) {
    throw InputError("cell address has " + std::to_string(labels.size()) +
                     " labels, table has " + std::to_string(factors_.size()) +
                     " factors");
  }
  std::vector<std::size_t> idx(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    idx[i] = factors_[i].level_index(labels[i]);
  }
  return at(idx);
}

double ContingencyTable::cell(std::initializer_list<std::string> labels) const {
  return cell(std::span<const std::string>(labels.begin(), labels.size()));
}

double ContingencyTable::at(std::span<const std::size_t> levels) const {
  return counts_[offset_of(levels)];
}

std::size_t ContingencyTable::offset_of(
    std::span<const std::size_t> levels) const {
  if (levels.size() != factors_.size()) {
    throw InputError("level index tuple has wrong arity");
  }
  std::size_t off = 0;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i] >= factors_[i].level_count()) {
      throw InputError("level index out of range for factor '" +
                       factors_[i].name + "'");
    }
    off = off * factors_[i].level_count() + levels[i];
  }
  return off;
}

std::vector<std::size_t> ContingencyTable::levels_of(std::size_t offset) const {
  std::vector<std::size_t> idx(factors_.size());
  for (std::size_t i = factors_.size(); i-- > 0;) {
    const std::size_t l = factors_[i].level_count();
    idx[i] = offset % l;
    offset /= l;
  }
  return idx;
}

ContingencyTable ContingencyTable::with_counts(std::vector<double> counts) const {
  return ContingencyTable(factors_, std::move(counts));
}

bool ContingencyTable::same_shape(const ContingencyTable& other) const {
  return factors_ == other.factors_;
}

ContingencyTable from_records(std::vector<FactorSpec> factors,
                              std::span<const Record> records) {
  auto table = ContingencyTable::zeros(factors);
  std::vector<double> counts(table.size(), 0.0);
  std::vector<bool> seen(table.size(), false);
  std::vector<std::size_t> idx(factors.size());
  for (const auto& r : records) {
    if (r.labels.size() != factors.size()) {
      throw InputError("record has " + std::to_string(r.labels.size()) +
                       " labels, expected " + std::to_string(factors.size()));
    }
    if (!std::isfinite(r.count) || r.count < 0.0) {
      throw InputError("negative or non-finite record count");
    }
    for (std::size_t i = 0; i < factors.size(); ++i) {
      idx[i] = factors[i].level_index(r.labels[i]);
    }
    const std::size_t off = table.offset_of(idx);
    if (seen[off]) {
      std::string tuple;
      for (const auto& l : r.labels) tuple += (tuple.empty() ? "" : ", ") + l;
      throw InputError("duplicate cell (" + tuple + ")");
    }
    seen[off] = true;
    counts[off] = r.count;
  }
  return ContingencyTable(std::move(factors), std::move(counts));
}

std::vector<FactorSpec> select_factors(const std::vector<FactorSpec>& factors,
                                       const NameSet& keep) {
  std::vector<FactorSpec> out;
  for (const auto& f : factors) {
    if (keep.count(f.name)) out.push_back(f);
  }
  if (out.size() != keep.size()) {
    for (const auto& name : keep) {
      if (std::none_of(factors.begin(), factors.end(),
                       [&](const FactorSpec& f) { return f.name == name; })) {
        throw InputError("unknown factor '" + name + "'");
      }
    }
  }
  return out;
}

std::vector<std::size_t> margin_offsets(const std::vector<FactorSpec>& factors,
                                        const NameSet& keep) {
  select_factors(factors, keep);  // validates names
  // Stride of each source factor inside the marginal table (0 if summed out).
  std::vector<std::size_t> stride(factors.size(), 0);
  std::size_t s = 1;
  for (std::size_t i = factors.size(); i-- > 0;) {
    if (keep.count(factors[i].name)) {
      stride[i] = s;
      s *= factors[i].level_count();
    }
  }
  const std::size_t n = cell_count(factors);
  std::vector<std::size_t> out(n);
  std::vector<std::size_t> idx(factors.size(), 0);
  std::size_t target = 0;
  for (std::size_t off = 0; off < n; ++off) {
    out[off] = target;
    // Odometer increment, last factor fastest.
    for (std::size_t i = factors.size(); i-- > 0;) {
      if (++idx[i] < factors[i].level_count()) {
        target += stride[i];
        break;
      }
      target -= stride[i] * (factors[i].level_count() - 1);
      idx[i] = 0;
    }
  }
  return out;
}

ContingencyTable marginalize(const ContingencyTable& table,
                             const NameSet& keep) {
  auto kept = select_factors(table.factors(), keep);
  const auto map = margin_offsets(table.factors(), keep);
  std::size_t n = 1;
  for (const auto& f : kept) n *= f.level_count();
  std::vector<double> sums(n, 0.0);
  const auto counts = table.counts();
  for (std::size_t off = 0; off < counts.size(); ++off) {
    sums[map[off]] += counts[off];
  }
  return ContingencyTable(std::move(kept), std::move(sums));
}

double max_abs_difference(const ContingencyTable& a, const ContingencyTable& b) {
  if (!a.same_shape(b)) throw InputError("tables differ in shape");
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d = std::max(d, std::abs(a[i] - b[i]));
  }
  return d;
}

}  // namespace loglin
