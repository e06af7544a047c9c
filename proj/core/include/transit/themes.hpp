#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "transit/corpus.hpp"
#include "transit/lexicon.hpp"

namespace transit {

// Any token whose lemma or surface is a medical term.
bool is_medical(const Sentence& sentence, const LexiconSet& lex);

ThemeLabel tag_theme(bool medical, bool empathic);

struct ThemeRow {
  std::string essay_id;
  std::string sentence_id;
  ThemeLabel theme = ThemeLabel::kNeither;
  bool is_medical = false;
  bool is_empathic = false;
};

struct ThemeTable {
  std::vector<ThemeRow> rows;  // corpus order
  std::array<std::size_t, kThemeCount> counts{};

  std::size_t total() const { return rows.size(); }
  double fraction(ThemeLabel theme) const;
};

// Empathy flags source: gold annotations, or a parallel vector of predicted
// flags in corpus sentence order.
ThemeTable tag_corpus(const std::vector<Essay>& essays,
                      const AnnotationTable& annotations,
                      const LexiconSet& lex);
ThemeTable tag_corpus(const std::vector<Essay>& essays,
                      const std::vector<bool>& empathic_flags,
                      const LexiconSet& lex);

// essay_id,sentence_id,theme,is_medical,is_empathic
void write_theme_csv(std::ostream& out, const ThemeTable& table);

}  // namespace transit
