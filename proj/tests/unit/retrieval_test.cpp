#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "rthes/errors.hpp"
#include "rthes/retrieval.hpp"

namespace rthes {
namespace {

using Rect = TermDocRectangle;

TEST(Match, ReturnsOnlyInclusionMinimalDomains) {
  RectangularThesaurus th;
  const auto ab = th.insert(Rect{{"a", "b"}, {1, 2}}).node;
  th.insert(Rect{{"a", "b", "c"}, {1}});
  const auto result = match(th, {"a"});
  ASSERT_EQ(result.matches.size(), 1u);
  EXPECT_EQ(result.matches[0].node, ab);
  EXPECT_EQ(result.matches[0].feedback, std::set<ConceptId>{"b"});
  EXPECT_EQ(result.documents(), (std::set<DocId>{1, 2}));
}

TEST(Match, ExactDomainHasNoFeedback) {
  RectangularThesaurus th;
  th.insert(Rect{{"a", "b"}, {1}});
  const auto result = match(th, {"a", "b"});
  ASSERT_EQ(result.matches.size(), 1u);
  EXPECT_TRUE(result.matches[0].feedback.empty());
}

TEST(Match, IncomparableMinimaAreAllReturned) {
  RectangularThesaurus th;
  th.insert(Rect{{"a", "b"}, {1}});
  th.insert(Rect{{"a", "c"}, {2}});
  const auto result = match(th, {"a"});
  ASSERT_EQ(result.matches.size(), 2u);
  EXPECT_EQ(result.documents(), (std::set<DocId>{1, 2}));
}

TEST(Match, UncoveredQueryIsEmptyAndBroadeningHelps) {
  RectangularThesaurus th;
  th.insert(Rect{{"a", "b"}, {1}});
  EXPECT_TRUE(match(th, {"a", "z"}).empty());
  const auto wider = broaden(Query{"en", {}, {"a", "z"}}, "z");
  EXPECT_EQ(wider.concepts, std::set<ConceptId>{"a"});
  EXPECT_FALSE(match(th, wider.concepts).empty());
  EXPECT_THROW(broaden(wider, "q"), Error);
  EXPECT_THROW(match(th, {}), EmptyQuery);
}

TEST(Match, DocumentsAgreeWithTheFlattenedRelation) {
  std::mt19937 rng(31);
  for (int round = 0; round < 40; ++round) {
    RectangularThesaurus th;
    for (const auto& [d, terms] : oracle::random_term_sets(rng, 6, 5, 0.4)) th.insert(Rect{terms, {d}});
    const auto flat = th.flatten();
    for (int mask = 1; mask < 32; ++mask) {
      std::set<ConceptId> q;
      for (int t = 0; t < 5; ++t)
        if (mask & (1 << t)) q.insert("T" + std::to_string(t));
      const auto expected = oracle::common_documents(flat, q);
      EXPECT_EQ(match(th, q).documents(), expected) << "round " << round << " mask " << mask;
    }
  }
}

TEST(ResolveQuery, NormalizesLikeTheIndexer) {
  const auto lex = fixture::lexicon();
  const std::vector<std::string> terms{"Information", "retrieval", "the"};
  const auto r = resolve_query(*lex, "en", terms);
  EXPECT_EQ(r.query.concepts, (std::set<ConceptId>{"C_INFO", "C_RETRIEVAL"}));
  EXPECT_TRUE(r.ambiguities.empty());

  const std::vector<std::string> compound{"Data Bases"};
  EXPECT_EQ(resolve_query(*lex, "en", compound).query.concepts, std::set<ConceptId>{"C_DB"});
}

TEST(ResolveQuery, AmbiguousTermsNeedAContext) {
  const auto lex = fixture::lexicon();
  const std::vector<std::string> terms{"bank"};
  const auto open = resolve_query(*lex, "en", terms);
  ASSERT_EQ(open.ambiguities.size(), 1u);
  EXPECT_EQ(open.ambiguities[0].candidates.size(), 2u);
  const auto settled = resolve_query(*lex, "en", terms, {{"bank", "geography"}});
  EXPECT_EQ(settled.query.concepts, std::set<ConceptId>{"C_RIVERBANK"});
}

TEST(ResolveQuery, LanguagesMeetInConcepts) {
  const auto lex = fixture::lexicon();
  const std::vector<std::string> en{"information", "retrieval"};
  const std::vector<std::string> de{"Information", "Recherche"};
  EXPECT_EQ(resolve_query(*lex, "en", en).query.concepts, resolve_query(*lex, "de", de).query.concepts);
}

TEST(ResolveQuery, NothingResolvableIsAnError) {
  const auto lex = fixture::lexicon();
  const std::vector<std::string> unknown{"qwzx"};
  EXPECT_THROW(resolve_query(*lex, "en", unknown), EmptyQuery);
  EXPECT_THROW(resolve_query(*lex, "fr", unknown), LexiconError);
  const std::vector<std::string> mixed{"qwzx", "index"};
  const auto r = resolve_query(*lex, "en", mixed);
  EXPECT_EQ(r.unknown, std::vector<std::string>{"qwzx"});
}

TEST(RenderConcept, FallsBackToTheId) {
  const auto lex = fixture::lexicon();
  EXPECT_EQ(render_concept(*lex, "C_RIVERBANK", "en"), "riverbank");
  EXPECT_EQ(render_concept(*lex, "C_NOPE", "en"), "C_NOPE");
}

}  // namespace
}  // namespace rthes
