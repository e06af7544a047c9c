#include <gtest/gtest.h>

#include <fstream>

#include "test_util.hpp"
#include "transit/errors.hpp"
#include "transit/lexicon.hpp"

namespace transit {
namespace {

using testing::TempDir;

Token word(std::string surface, std::string lemma, std::string upos = "NOUN") {
  Token t;
  t.index = 1;
  t.surface = std::move(surface);
  t.lemma = std::move(lemma);
  t.upos = std::move(upos);
  return t;
}

TEST(Lexicon, ContainsByMode) {
  const auto& lex = LexiconSet::shipped();
  EXPECT_TRUE(lex.body_parts.contains(word("eyes", "eye")));
  EXPECT_FALSE(lex.body_parts.contains(word("chair", "chair")));
  EXPECT_TRUE(lex.human_agents.contains(word("I", "I", "PRON")));
  // Surface mode ignores the lemma.
  EXPECT_TRUE(lex.human_agents.contains(word("Children", "child")));
  EXPECT_FALSE(lex.human_agents.contains(word("childs", "children")));
}

TEST(Lexicon, ShippedMinimumEntries) {
  const auto& lex = LexiconSet::shipped();
  for (const char* bp : {"eye", "hand", "head", "shoulder", "body", "arm"})
    EXPECT_TRUE(lex.body_parts.contains_term(bp)) << bp;
  for (const char* v : {"write", "walk", "kick", "hand", "retrieve", "enter",
                        "bring", "sit"})
    EXPECT_TRUE(lex.material_verbs.contains_term(v)) << v;
  for (const char* v : {"think", "feel", "perceive", "see", "imagine", "notice",
                        "understand", "know"})
    EXPECT_TRUE(lex.mental_verbs.contains_term(v)) << v;
  EXPECT_GE(lex.material_verbs.size(), 140u);
  EXPECT_LE(lex.material_verbs.size(), 170u);
  EXPECT_GE(lex.mental_verbs.size(), 140u);
  EXPECT_LE(lex.mental_verbs.size(), 170u);
  EXPECT_FALSE(lex.material_verbs.contains_term("be"));
  EXPECT_FALSE(lex.mental_verbs.contains_term("be"));
}

TEST(Lexicon, ShippedVerbListsDisjoint) {
  const auto& lex = LexiconSet::shipped();
  for (const auto& v : lex.material_verbs.entries())
    EXPECT_FALSE(lex.mental_verbs.entries().count(v)) << v;
}

TEST(Lexicon, FileFormat) {
  TempDir dir;
  std::ofstream(dir.path() / "x.txt") << "# header\n\n  Eye  \nhand # trailing\nEYE\n";
  const auto lex = load_lexicon(dir.path() / "x.txt", MatchMode::kLemma);
  EXPECT_EQ(lex.size(), 2u);
  EXPECT_TRUE(lex.contains_term("eye"));
  EXPECT_TRUE(lex.contains_term("Hand"));
  EXPECT_EQ(lex.name(), "x");
}

TEST(Lexicon, EmptyFileRejected) {
  TempDir dir;
  std::ofstream(dir.path() / "empty.txt") << "# nothing\n\n";
  EXPECT_THROW(load_lexicon(dir.path() / "empty.txt", MatchMode::kLemma), LoadError);
  EXPECT_THROW(load_lexicon(dir.path() / "absent.txt", MatchMode::kLemma), LoadError);
  EXPECT_THROW(Lexicon("e", std::initializer_list<std::string_view>{" "}, MatchMode::kLemma),
               LoadError);
}

TEST(LexiconSet, OverrideFallsBackPerFile) {
  TempDir dir;
  std::ofstream(dir.path() / "body_parts.txt") << "elbow\n";
  const auto lex = LexiconSet::load(dir.path());
  EXPECT_EQ(lex.body_parts.size(), 1u);
  EXPECT_FALSE(lex.body_parts.contains_term("eye"));
  EXPECT_EQ(lex.material_verbs.size(), LexiconSet::shipped().material_verbs.size());
}

TEST(LexiconSet, OverlappingVerbListsRejected) {
  TempDir dir;
  std::ofstream(dir.path() / "material_verbs.txt") << "kick\nfeel\n";
  try {
    LexiconSet::load(dir.path());
    FAIL();
  } catch (const LoadError& e) {
    ASSERT_FALSE(e.violations().empty());
    EXPECT_NE(e.violations()[0].find("feel"), std::string::npos);
  }
}

TEST(LexiconSet, MissingOverrideDirectory) {
  EXPECT_THROW(LexiconSet::load("/nonexistent/lexicons"), LoadError);
}

}  // namespace
}  // namespace transit
