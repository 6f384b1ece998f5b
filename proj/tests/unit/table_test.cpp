#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "loglin/csv.hpp"
#include "loglin/table.hpp"
#include "test_support.hpp"

namespace loglin {
namespace {

std::vector<FactorSpec> personality_factors() {
  return {{"Personality", {"A", "B"}},
          {"Cholesterol", {"Normal", "High"}},
          {"DBP", {"Normal", "High"}}};
}

ContingencyTable personality() {
  const std::vector<Record> records = {
      {{"A", "Normal", "Normal"}, 716}, {{"A", "Normal", "High"}, 79},
      {{"A", "High", "Normal"}, 207},   {{"A", "High", "High"}, 25},
      {{"B", "Normal", "Normal"}, 819}, {{"B", "Normal", "High"}, 67},
      {{"B", "High", "Normal"}, 186},   {{"B", "High", "High"}, 22}};
  return from_records(personality_factors(), records);
}

TEST(FromRecords, PersonalityTotal) {
  const auto t = personality();
  EXPECT_EQ(t.size(), 8u);
  EXPECT_DOUBLE_EQ(t.total(), 2121.0);
}

TEST(FromRecords, EmptyRecordsGiveZeroTable) {
  const auto t = from_records({{"X", {"a", "b"}}, {"Y", {"a", "b"}}}, {});
  EXPECT_EQ(t.size(), 4u);
  EXPECT_DOUBLE_EQ(t.total(), 0.0);
  EXPECT_DOUBLE_EQ(t.cell({"b", "a"}), 0.0);
}

TEST(FromRecords, RejectsDuplicatesUnknownLabelsNegativeCounts) {
  const std::vector<Record> dup = {{{"A", "Normal", "Normal"}, 1},
                                   {{"A", "Normal", "Normal"}, 2}};
  EXPECT_THROW(from_records(personality_factors(), dup), InputError);
  const std::vector<Record> unknown = {{{"C", "Normal", "Normal"}, 1}};
  EXPECT_THROW(from_records(personality_factors(), unknown), InputError);
  const std::vector<Record> negative = {{{"A", "Normal", "Normal"}, -1}};
  EXPECT_THROW(from_records(personality_factors(), negative), InputError);
}

TEST(ContingencyTable, RejectsBadFactorSpecs) {
  EXPECT_THROW(ContingencyTable::zeros({{"", {"a"}}}), InputError);
  EXPECT_THROW(ContingencyTable::zeros({{"X", {"a", "a"}}}), InputError);
  EXPECT_THROW(ContingencyTable({{"X", {"a", "b"}}}, {1.0}), InputError);
}

TEST(Marginalize, PersonalityMargins) {
  const auto t = personality();
  const auto p = marginalize(t, {"Personality"});
  EXPECT_DOUBLE_EQ(p.cell({"A"}), 1027.0);
  EXPECT_DOUBLE_EQ(p.cell({"B"}), 1094.0);
  const auto c = marginalize(t, {"Cholesterol"});
  EXPECT_DOUBLE_EQ(c.cell({"Normal"}), 1681.0);
  EXPECT_DOUBLE_EQ(c.cell({"High"}), 440.0);
  // Hand sum of the DBP columns of the observed table.
  const auto d = marginalize(t, {"DBP"});
  EXPECT_DOUBLE_EQ(d.cell({"Normal"}), 716.0 + 207 + 819 + 186);
  EXPECT_DOUBLE_EQ(d.cell({"High"}), 79.0 + 25 + 67 + 22);
  EXPECT_DOUBLE_EQ(d.cell({"Normal"}), 1928.0);
}

TEST(Marginalize, EmptyKeepIsScalarTotal) {
  const auto m = marginalize(personality(), {});
  EXPECT_EQ(m.dimension(), 0u);
  ASSERT_EQ(m.size(), 1u);
  EXPECT_DOUBLE_EQ(m[0], 2121.0);
}

TEST(Marginalize, UnknownFactorThrows) {
  EXPECT_THROW(marginalize(personality(), {"Age"}), InputError);
}

TEST(Cell, Lookups) {
  EXPECT_DOUBLE_EQ(personality().cell({"A", "Normal", "Normal"}), 716.0);
  EXPECT_THROW(personality().cell({"A", "Normal", "Low"}), InputError);
  const auto infant = testing::load("infant.csv");
  EXPECT_DOUBLE_EQ(infant.cell({"B", "Less", "Died"}), 17.0);
}

// Property: margins agree with brute-force enumeration, compose, and keep N.
TEST(Marginalize, PropertiesOnRandomTables) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> lv(1, 3);
  std::uniform_int_distribution<int> dims(1, 4);
  for (int rep = 0; rep < 60; ++rep) {
    std::vector<std::size_t> levels(static_cast<std::size_t>(dims(rng)));
    for (auto& l : levels) l = lv(rng);
    const auto t = testing::random_positive_table(levels, rng, 0, 20);
    const auto names = t.factor_names();
    const std::size_t n = names.size();
    for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
      NameSet keep;
      std::vector<std::size_t> keep_idx;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (std::size_t{1} << i)) {
          keep.insert(names[i]);
          keep_idx.push_back(i);
        }
      }
      const auto m = marginalize(t, keep);
      EXPECT_DOUBLE_EQ(m.total(), t.total());
      for (std::size_t off = 0; off < m.size(); ++off) {
        EXPECT_DOUBLE_EQ(m[off], testing::brute_margin(t, keep_idx, m.levels_of(off)));
      }
      // Compose with every subset of the kept set.
      for (std::size_t sub = mask;; sub = (sub - 1) & mask) {
        NameSet inner;
        for (std::size_t i = 0; i < n; ++i) {
          if (sub & (std::size_t{1} << i)) inner.insert(names[i]);
        }
        const auto direct = marginalize(t, inner);
        const auto nested = marginalize(m, inner);
        ASSERT_TRUE(direct.same_shape(nested));
        for (std::size_t k = 0; k < direct.size(); ++k) EXPECT_EQ(direct[k], nested[k]);
        if (sub == 0) break;
      }
    }
    const auto full = marginalize(t, t.factor_set());
    for (std::size_t k = 0; k < t.size(); ++k) EXPECT_EQ(full[k], t[k]);
  }
}

TEST(Csv, ReadsBundledDataset) {
  const auto t = testing::load("personality.csv");
  EXPECT_EQ(t.factor_names(), (std::vector<std::string>{"P", "C", "D"}));
  EXPECT_EQ(t.factor(1).levels, (std::vector<std::string>{"Normal", "High"}));
  EXPECT_DOUBLE_EQ(t.total(), 2121.0);
}

TEST(Csv, RoundTripPreservesCells) {
  const auto t = testing::load("classroom.csv");
  std::stringstream ss;
  write_table_csv(ss, t);
  const auto back = read_table_csv(ss);
  EXPECT_TRUE(back.same_shape(t));
  EXPECT_DOUBLE_EQ(max_abs_difference(back, t), 0.0);
}

TEST(Csv, MissingCellsAreZero) {
  std::stringstream ss("X,Y,count\na,u,3\nb,v,4\n");
  const auto t = read_table_csv(ss);
  EXPECT_EQ(t.size(), 4u);
  EXPECT_DOUBLE_EQ(t.cell({"a", "v"}), 0.0);
  EXPECT_DOUBLE_EQ(t.cell({"b", "v"}), 4.0);
}

TEST(Csv, MalformedInputs) {
  std::stringstream no_count("X,Y,n\na,b,1\n");
  EXPECT_THROW(read_table_csv(no_count), InputError);
  std::stringstream short_row("X,Y,count\na,1\n");
  EXPECT_THROW(read_table_csv(short_row), InputError);
  std::stringstream bad_count("X,count\na,-2\n");
  EXPECT_THROW(read_table_csv(bad_count), InputError);
  std::stringstream dup("X,count\na,1\na,2\n");
  EXPECT_THROW(read_table_csv(dup), InputError);
  EXPECT_THROW(read_table_csv(std::filesystem::path("/no/such/file.csv")), InputError);
}

}  // namespace
}  // namespace loglin
