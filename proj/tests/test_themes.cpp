#include <gtest/gtest.h>

#include <sstream>

#include "test_util.hpp"
#include "transit/conllu.hpp"
#include "transit/errors.hpp"
#include "transit/themes.hpp"

namespace transit {
namespace {

using testing::make_sentence;

TEST(Themes, TruthTable) {
  EXPECT_EQ(tag_theme(true, false), ThemeLabel::kMedicalProcedural);
  EXPECT_EQ(tag_theme(false, true), ThemeLabel::kEmpathetic);
  EXPECT_EQ(tag_theme(true, true), ThemeLabel::kBoth);
  EXPECT_EQ(tag_theme(false, false), ThemeLabel::kNeither);
}

TEST(Themes, MedicalByLemmaOrSurface) {
  const auto& lex = LexiconSet::shipped();
  EXPECT_TRUE(is_medical(make_sentence("I/I/PRON/2/nsubj checked/check/VERB/0/root "
                                       "the/the/DET/4/det vitals/vital/NOUN/2/obj"),
                         lex));
  EXPECT_TRUE(is_medical(make_sentence("She/she/PRON/2/nsubj took/take/VERB/0/root "
                                       "statins/statin/NOUN/2/obj"),
                         lex));
  EXPECT_FALSE(is_medical(make_sentence("She/she/PRON/2/nsubj smiled/smile/VERB/0/root"),
                          lex));
}

class FixtureThemes : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { corpus_ = new Corpus(load_corpus(testing::corpus_manifest())); }
  static void TearDownTestSuite() { delete corpus_; }
  static Corpus* corpus_;
  const LexiconSet& lex = LexiconSet::shipped();
};
Corpus* FixtureThemes::corpus_ = nullptr;

TEST_F(FixtureThemes, CountsPartitionTheCorpus) {
  const auto table = tag_corpus(corpus_->essays, corpus_->annotations, lex);
  EXPECT_EQ(table.total(), 120u);
  EXPECT_EQ(table.counts[0], 38u);
  EXPECT_EQ(table.counts[1], 41u);
  EXPECT_EQ(table.counts[2], 18u);
  EXPECT_EQ(table.counts[3], 23u);
  std::size_t sum = 0;
  double fsum = 0;
  for (auto t : kAllThemes) {
    sum += table.counts[static_cast<std::size_t>(t)];
    fsum += table.fraction(t);
  }
  EXPECT_EQ(sum, table.total());
  EXPECT_NEAR(fsum, 1.0, 1e-12);
}

TEST_F(FixtureThemes, MatchesAuthoredLabels) {
  const auto table = tag_corpus(corpus_->essays, corpus_->annotations, lex);
  std::size_t i = 0;
  for (const auto& e : corpus_->essays) {
    for (const auto& s : e.sentences) {
      const auto& row = table.rows.at(i++);
      ASSERT_EQ(row.sentence_id, s.sentence_id);
      EXPECT_EQ(theme_name(row.theme), *s.meta("gold_theme")) << e.essay_id << "/" << s.sentence_id;
      EXPECT_EQ(row.theme, tag_theme(row.is_medical, row.is_empathic));
    }
  }
}

TEST_F(FixtureThemes, NoAnnotationsMeansNoEmpathy) {
  const auto table = tag_corpus(corpus_->essays, AnnotationTable{}, lex);
  EXPECT_EQ(table.counts[static_cast<std::size_t>(ThemeLabel::kEmpathetic)], 0u);
  EXPECT_EQ(table.counts[static_cast<std::size_t>(ThemeLabel::kBoth)], 0u);
  EXPECT_EQ(table.total(), 120u);
}

TEST_F(FixtureThemes, PredictedFlags) {
  std::vector<bool> flags(corpus_->sentence_count(), true);
  const auto table = tag_corpus(corpus_->essays, flags, lex);
  EXPECT_EQ(table.counts[static_cast<std::size_t>(ThemeLabel::kNeither)], 0u);
  EXPECT_EQ(table.counts[static_cast<std::size_t>(ThemeLabel::kMedicalProcedural)], 0u);
  flags.pop_back();
  EXPECT_THROW(tag_corpus(corpus_->essays, flags, lex), ContractError);
}

TEST_F(FixtureThemes, Csv) {
  const auto table = tag_corpus(corpus_->essays, corpus_->annotations, lex);
  std::ostringstream out;
  write_theme_csv(out, table);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "essay_id,sentence_id,theme,is_medical,is_empathic");
  std::size_t n = 0;
  while (std::getline(in, line)) ++n;
  EXPECT_EQ(n, 120u);
}

}  // namespace
}  // namespace transit
