#include <gtest/gtest.h>

#include "rthes/text.hpp"

namespace rthes {
namespace {

TEST(FoldCase, LowersAsciiAndLatin1) {
  EXPECT_EQ(fold_case("Data BASE"), "data base");
  EXPECT_EQ(fold_case("ÜBERSICHT Análise"), "übersicht análise");
  EXPECT_EQ(fold_case("ß"), "ß");
}

TEST(Tokenize, NumbersPhrasesAndPositions) {
  const auto tokens = tokenize("Databases store data. Data bases differ!");
  ASSERT_EQ(tokens.size(), 6u);
  EXPECT_EQ(tokens[0].text, "Databases");
  EXPECT_EQ(tokens[2].phrase, 1u);
  EXPECT_EQ(tokens[2].position, 3u);
  EXPECT_EQ(tokens[3].text, "Data");
  EXPECT_EQ(tokens[3].phrase, 2u);
  EXPECT_EQ(tokens[3].position, 1u);
  EXPECT_EQ(tokens[3].offset, 22u);
}

TEST(Tokenize, PeriodInsideTokenDoesNotEndPhrase) {
  const auto tokens = tokenize("Version 3.5 ships. Next");
  ASSERT_EQ(tokens.size(), 5u);
  EXPECT_EQ(tokens[1].text, "3");
  EXPECT_EQ(tokens[2].text, "5");
  EXPECT_EQ(tokens[3].phrase, 1u);
  EXPECT_EQ(tokens[4].phrase, 2u);
}

TEST(Tokenize, HyphensJoinButNeverStandAlone) {
  const auto tokens = tokenize("object-oriented -- design");
  ASSERT_EQ(tokens.size(), 2u);
  EXPECT_EQ(tokens[0].text, "object-oriented");
  EXPECT_EQ(tokens[1].position, 2u);
}

TEST(Tokenize, EmptyPhrasesAreNotNumbered) {
  const auto tokens = tokenize("... ! First. ?? Second.");
  ASSERT_EQ(tokens.size(), 2u);
  EXPECT_EQ(tokens[0].phrase, 1u);
  EXPECT_EQ(tokens[1].phrase, 2u);
}

TEST(Tokenize, Utf8PunctuationSeparates) {
  const auto tokens = tokenize("Recherche\u2014Datenbank «Größe»");
  ASSERT_EQ(words("Recherche\u2014Datenbank «Größe»"), (std::vector<std::string>{"Recherche", "Datenbank", "Größe"}));
  EXPECT_EQ(tokens.size(), 3u);
}

}  // namespace
}  // namespace rthes
