#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "quadtor/classify.hpp"

using namespace quadtor;

namespace {

std::set<std::string> names(const std::vector<TorsionGroupId>& gs) {
  std::set<std::string> out;
  for (const auto& g : gs) out.insert(g.str());
  return out;
}

RankOracle oracle_with(const std::string& text) {
  RankOracle o = RankOracle::with_builtin_data();
  std::istringstream in(text);
  o.load_stream(in, "inline");
  return o;
}

const ClassificationRow& row17() {
  static const ClassificationRow row = cl_classify_field(17, RankOracle::with_builtin_data());
  return row;
}

}  // namespace

TEST(Classify, Field17) {
  const auto& row = row17();
  EXPECT_FALSE(row.outside_surveyed_range);
  EXPECT_EQ(names(row.groups_with({GroupStatus::InfinitelyMany})),
            (std::set<std::string>{"Z/11", "Z/14", "Z/2 + Z/10", "Z/2 + Z/12"}));
  EXPECT_EQ(names(row.groups_with({GroupStatus::PossibleFinite})), (std::set<std::string>{"Z/13"}));
  EXPECT_EQ(names(row.groups_with({GroupStatus::Impossible})), (std::set<std::string>{"Z/15", "Z/16", "Z/18"}));
  EXPECT_TRUE(row.groups_with({GroupStatus::Unresolved}).empty());
}

TEST(Classify, MazurAndCyclotomicGroups) {
  const auto& row = row17();
  int mazur = 0, cyclo = 0;
  for (const auto& [g, v] : row.entries) {
    if (is_mazur_group(g)) {
      ++mazur;
      EXPECT_EQ(v.status, GroupStatus::AlwaysPresent) << g.str();
    } else if (v.status == GroupStatus::ExcludedCyclotomic) {
      ++cyclo;
      EXPECT_TRUE(g.m == 3 || g.m == 4) << g.str();
    }
  }
  EXPECT_EQ(mazur, 15);
  EXPECT_EQ(cyclo, 3);
  EXPECT_EQ(row.entries.size(), 26u);
}

TEST(Classify, ThirteenWitnessIsNonCusp) {
  const GroupVerdict& v = row17().entries.at({1, 13});
  EXPECT_NE(v.provenance.find("sqrt(17)"), std::string::npos) << v.provenance;
}

TEST(Classify, ScreensDecideGenusTwo) {
  RankOracle o = RankOracle::with_builtin_data();
  EXPECT_EQ(cl_classify_group(2, {1, 13}, o).status, GroupStatus::Impossible);
  EXPECT_EQ(cl_classify_group(17, {1, 18}, o).status, GroupStatus::Impossible);
}

TEST(Classify, MissingDataIsFlagged) {
  RankOracle o = RankOracle::with_builtin_data();
  GroupVerdict v = cl_classify_group(2, {1, 14}, o, {4});
  EXPECT_EQ(v.status, GroupStatus::Unresolved);
  EXPECT_TRUE(v.missing_data);
}

TEST(Classify, UserRankDataDecides) {
  RankOracle o = oracle_with("X1_15,1,0,0\nX1_15,5,0,0\nX1_14,1,0,0\nX1_14,5,0,0\n");
  EXPECT_EQ(cl_classify_group(5, {1, 15}, o).status, GroupStatus::PossibleFinite);
  EXPECT_EQ(cl_classify_group(5, {1, 14}, o).status, GroupStatus::Impossible);
}

TEST(Classify, RejectsBadFields) {
  RankOracle o;
  EXPECT_THROW(cl_classify_field(1, o), std::invalid_argument);
  EXPECT_THROW(cl_classify_field(12, o), std::invalid_argument);
  EXPECT_THROW(cl_classify_field(-5, o), std::invalid_argument);
}

TEST(Classify, RangeIsOrderedAndDeterministic) {
  RankOracle o = RankOracle::with_builtin_data();
  ClassifyConfig one{6, 100, 1}, many{6, 100, 3};
  auto a = cl_classify_range(2, 15, o, one);
  auto b = cl_classify_range(2, 15, o, many);
  ASSERT_EQ(a.size(), 10u);
  EXPECT_EQ(a, b);
  for (size_t i = 1; i < a.size(); ++i) EXPECT_LT(a[i - 1].d, a[i].d);
  EXPECT_TRUE(cl_classify_range(4, 4, o).empty());
  auto far = cl_classify_range(101, 101, o, one);
  ASSERT_EQ(far.size(), 1u);
  EXPECT_TRUE(far[0].outside_surveyed_range);
}

TEST(Emit, TextForField17) {
  EXPECT_EQ(cl_emit({row17()}, EmitFormat::Text),
            "Q(sqrt(17))\n"
            "  Z/nZ, n = 11, 13, 14\n"
            "  Z/2Z + Z/2nZ, n = 5, 6\n");
}

TEST(Emit, TextMarksUnresolved) {
  RankOracle o = RankOracle::with_builtin_data();
  std::string t = cl_emit({cl_classify_field(2, o, {4})}, EmitFormat::Text);
  EXPECT_NE(t.find("maybe Z/14Z"), std::string::npos) << t;
  EXPECT_EQ(t.find("n = maybe"), std::string::npos) << t;
}

TEST(Emit, CsvHasAllGroups) {
  std::string csv = cl_emit({row17()}, EmitFormat::Csv);
  EXPECT_EQ(csv.rfind("d,group,status,missing_data,provenance\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 27);
}

TEST(Emit, JsonRoundTrip) {
  std::vector<ClassificationRow> rows = {row17()};
  auto back = cl_parse_json(cl_emit(rows, EmitFormat::Json));
  EXPECT_EQ(back, rows);
}

TEST(Emit, Errors) {
  EXPECT_THROW(cl_emit({}, EmitFormat::Text), std::invalid_argument);
  ClassificationRow partial = row17();
  partial.entries.erase(partial.entries.begin());
  EXPECT_THROW(cl_emit({partial}, EmitFormat::Json), std::invalid_argument);
  EXPECT_THROW(parse_format("xml"), std::invalid_argument);
  EXPECT_THROW(cl_parse_json("{"), std::exception);
  EXPECT_EQ(parse_status(to_string(GroupStatus::PossibleFinite)), GroupStatus::PossibleFinite);
}
