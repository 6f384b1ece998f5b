#pragma once

#include <filesystem>
#include <iosfwd>

#include "loglin/table.hpp"

namespace loglin {

// Long format: header row of factor names followed by a `count` column, one
// data row per cell. Level order within a factor is order of first
// appearance. Missing cells are zero; duplicate cells are an error.

ContingencyTable read_table_csv(std::istream& in);
ContingencyTable read_table_csv(const std::filesystem::path& path);

/// Writes every cell in storage order. Integer-valued counts are written
/// without a fractional part; others at round-trip precision.
void write_table_csv(std::ostream& out, const ContingencyTable& table);
void write_table_csv(const std::filesystem::path& path,
                     const ContingencyTable& table);

}  // namespace loglin
