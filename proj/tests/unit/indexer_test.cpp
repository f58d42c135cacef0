#include <gtest/gtest.h>

#include <sstream>

#include "rthes/indexer.hpp"

namespace rthes {
namespace {

std::shared_ptr<const Lexicon> lexicon() {
  Lexicon::Builder b;
  b.add_entry({"en", "data base", "computing", "C_DB", "data base", Category::noun, {}});
  b.add_entry({"en", "data", "general", "C_DATA", "data", Category::noun, {}});
  b.add_entry({"en", "bank", "finance", "C_FIN_INST", "bank", Category::noun, {}});
  b.add_entry({"en", "bank", "geography", "C_RIVERBANK", "riverbank", Category::noun, {}});
  b.add_variation({"en", "databases", "data base"});
  b.add_variation({"en", "bases", "base"});
  for (auto w : {"store", "differ", "the", "only", "and"}) b.add_stopword("en", w);
  return b.build();
}

Occurrence at(ConceptId c, DocId doc, std::uint32_t phrase, std::uint32_t pos) {
  return {std::move(c), doc, phrase, pos, Category::noun};
}

TEST(Distance, SamePhraseOnly) {
  EXPECT_EQ(distance(at("a", 1, 1, 5), at("b", 1, 1, 8)), 3u);
  EXPECT_EQ(distance(at("a", 1, 1, 5), at("b", 1, 2, 8)), 0u);
  EXPECT_EQ(distance(at("a", 1, 1, 5), at("b", 2, 1, 8)), 0u);
}

TEST(BindingForce, InverseDistanceInsideWindow) {
  EXPECT_DOUBLE_EQ(binding_force(at("a", 1, 1, 1), at("b", 1, 1, 3), 5), 0.5);
  EXPECT_DOUBLE_EQ(binding_force(at("a", 1, 1, 1), at("b", 1, 2, 3), 5), 0.0);
  EXPECT_DOUBLE_EQ(binding_force(at("a", 1, 1, 1), at("b", 1, 1, 7), 5), 0.0);
}

TEST(Association, TableRows) {
  const auto a = association(4.25, 9, 3);
  EXPECT_NEAR(a.k, 0.70, 0.01);
  EXPECT_NEAR(a.m, 0.33, 0.01);
  const auto b = association(3, 3, 3);
  EXPECT_NEAR(b.k, 0.29, 0.01);
  EXPECT_NEAR(b.m, 0.29, 0.01);
  const auto c = association(1, 2, 3);
  EXPECT_DOUBLE_EQ(c.k, 0.125);
  EXPECT_NEAR(c.m, 0.06, 0.01);
  EXPECT_DOUBLE_EQ(association(1, 1, 3).m, 0.0);
}

TEST(PairStatistics, SumsForcesAndCountsPairs) {
  const std::vector<Occurrence> occ{at("x", 1, 1, 1), at("y", 1, 1, 2), at("x", 1, 1, 4),
                                    at("y", 1, 2, 1), at("x", 1, 2, 9), at("z", 1, 3, 1)};
  const auto stats = pair_statistics(occ, DistMatrix{});
  ASSERT_EQ(stats.size(), 1u);
  EXPECT_EQ(stats[0].first, "x");
  EXPECT_EQ(stats[0].second, "y");
  EXPECT_EQ(stats[0].f, 3u);
  EXPECT_DOUBLE_EQ(stats[0].b, 1.0 + 0.5 + 0.0);
}

TEST(PairStatistics, CategoryWindowApplies) {
  std::vector<Occurrence> occ{at("x", 1, 1, 1), at("y", 1, 1, 4)};
  occ[1].category = Category::verb;
  DistMatrix dist;
  dist.set(Category::noun, Category::verb, 2);
  EXPECT_DOUBLE_EQ(pair_statistics(occ, dist)[0].b, 0.0);
  EXPECT_NEAR(pair_statistics(occ, DistMatrix{})[0].b, 1.0 / 3, 1e-12);
}

TEST(SignificantTerms, ThresholdIsInclusive) {
  const std::vector<PairStats> stats{{"a", "b", 0, 0, 0, 0.10}, {"c", "d", 0, 0, 0, 0.0999}};
  EXPECT_EQ(significant_terms(stats, 0.10), (std::set<ConceptId>{"a", "b"}));
  EXPECT_TRUE(significant_terms(stats, 0.5).empty());
}

TEST(ExtractOccurrences, CompoundsKeepTheirFirstPosition) {
  const auto result = extract_occurrences("Databases store data. Data bases differ.", 1, "en", *lexicon());
  EXPECT_TRUE(result.pending.empty());
  EXPECT_EQ(result.occurrences, (std::vector<Occurrence>{at("C_DB", 1, 1, 1), at("C_DATA", 1, 1, 3),
                                                         at("C_DB", 1, 2, 1)}));
}

TEST(ExtractOccurrences, StopwordsOnlyGiveNothing) {
  const auto result = extract_occurrences("The only store. And the differ!", 1, "en", *lexicon());
  EXPECT_TRUE(result.occurrences.empty());
  EXPECT_TRUE(result.pending.empty());
}

TEST(ExtractOccurrences, AmbiguousAndUnknownTermsArePending) {
  const auto result = extract_occurrences("The bank and qwzx.", 3, "en", *lexicon());
  ASSERT_EQ(result.pending.size(), 2u);
  EXPECT_EQ(result.pending[0].surface, "bank");
  EXPECT_EQ(result.pending[0].position, 2u);
  EXPECT_EQ(result.pending[0].candidates.size(), 2u);
  EXPECT_TRUE(result.pending[1].unknown());
  EXPECT_EQ(result.pending[1].document, 3u);
}

TEST(ExtractOccurrences, LookAheadStopsAtPhraseEnd) {
  const auto result = extract_occurrences("Data. Bases", 1, "en", *lexicon());
  ASSERT_EQ(result.occurrences.size(), 1u);
  EXPECT_EQ(result.occurrences[0].concept_id, "C_DATA");
  EXPECT_EQ(result.pending.size(), 1u);
}

TEST(StatsTsv, SortedByDescendingM) {
  const std::vector<PairStats> stats{{"a", "b", 1, 2, 0.125, 0.0625}, {"c", "d", 4.25, 9, 0.7023, 0.3316}};
  std::ostringstream out;
  write_stats_tsv(out, stats, [](const ConceptId& c) { return "t_" + c; });
  EXPECT_EQ(out.str(),
            "term1\tterm2\tb\tf\tb/f\tk\tM\n"
            "t_c\tt_d\t4.25\t9\t0.47\t0.70\t0.33\n"
            "t_a\tt_b\t1.00\t2\t0.50\t0.12\t0.06\n");
}

}  // namespace
}  // namespace rthes
