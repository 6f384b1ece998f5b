#include "loglin/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

namespace loglin {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(std::string_view(line).substr(
        start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return fields;
}

double parse_count(const std::string& text, std::size_t line_no) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (text.empty() || ec != std::errc() || ptr != end || !std::isfinite(value) ||
      value < 0.0) {
    throw InputError("line " + std::to_string(line_no) + ": invalid count '" +
                     text + "'");
  }
  return value;
}

}  // namespace

ContingencyTable read_table_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (trim(line).empty()) continue;
    header = split_row(line);
    break;
  }
  if (header.size() < 2 || header.back() != "count") {
    throw InputError(
        "CSV header must name at least one factor and end with 'count'");
  }
  header.pop_back();

  std::vector<FactorSpec> factors;
  for (const auto& name : header) factors.push_back({name, {}});

  std::vector<Record> records;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_row(line);
    if (fields.size() != header.size() + 1) {
      throw InputError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(header.size() + 1) + " fields, got " +
                       std::to_string(fields.size()));
    }
    Record r;
    r.count = parse_count(fields.back(), line_no);
    fields.pop_back();
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (fields[i].empty()) {
        throw InputError("line " + std::to_string(line_no) +
                         ": empty level label");
      }
      auto& levels = factors[i].levels;
      if (std::find(levels.begin(), levels.end(), fields[i]) == levels.end()) {
        levels.push_back(fields[i]);
      }
    }
    r.labels = std::move(fields);
    records.push_back(std::move(r));
  }
  if (records.empty()) throw InputError("CSV has no data rows");
  return from_records(std::move(factors), records);
}

ContingencyTable read_table_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  return read_table_csv(in);
}

void write_table_csv(std::ostream& out, const ContingencyTable& table) {
  for (const auto& f : table.factors()) out << f.name << ',';
  out << "count\n";
  for (std::size_t off = 0; off < table.size(); ++off) {
    const auto idx = table.levels_of(off);
    for (std::size_t i = 0; i < idx.size(); ++i) {
      out << table.factor(i).levels[idx[i]] << ',';
    }
    const double v = table[off];
    if (v == std::floor(v) && v < 9.007199254740992e15) {
      out << static_cast<long long>(v) << '\n';
    } else {
      out << std::setprecision(17) << v << '\n';
    }
  }
}

void write_table_csv(const std::filesystem::path& path,
                     const ContingencyTable& table) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  write_table_csv(out, table);
}

}  // namespace loglin
