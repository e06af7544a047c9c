#include "transit/themes.hpp"

#include <ostream>

#include "transit/errors.hpp"

namespace transit {

bool is_medical(const Sentence& sentence, const LexiconSet& lex) {
  for (const auto& t : sentence.tokens) {
    if (lex.medical_terms.contains_term(t.lemma) ||
        lex.medical_terms.contains_term(t.surface))
      return true;
  }
  return false;
}

ThemeLabel tag_theme(bool medical, bool empathic) {
  if (medical && empathic) return ThemeLabel::kBoth;
  if (medical) return ThemeLabel::kMedicalProcedural;
  if (empathic) return ThemeLabel::kEmpathetic;
  return ThemeLabel::kNeither;
}

double ThemeTable::fraction(ThemeLabel theme) const {
  if (rows.empty()) return 0.0;
  return static_cast<double>(counts[static_cast<std::size_t>(theme)]) /
         static_cast<double>(rows.size());
}

namespace {

template <typename FlagFn>
ThemeTable tag_with(const std::vector<Essay>& essays, const LexiconSet& lex,
                    FlagFn&& empathic_flag) {
  ThemeTable table;
  std::size_t ordinal = 0;
  for (const auto& essay : essays) {
    for (const auto& s : essay.sentences) {
      ThemeRow row;
      row.essay_id = essay.essay_id;
      row.sentence_id = s.sentence_id;
      row.is_medical = is_medical(s, lex);
      row.is_empathic = empathic_flag(essay, s, ordinal++);
      row.theme = tag_theme(row.is_medical, row.is_empathic);
      ++table.counts[static_cast<std::size_t>(row.theme)];
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

}  // namespace

ThemeTable tag_corpus(const std::vector<Essay>& essays,
                      const AnnotationTable& annotations,
                      const LexiconSet& lex) {
  return tag_with(essays, lex, [&](const Essay& e, const Sentence& s, std::size_t) {
    return annotations.is_empathic(e.essay_id, s.sentence_id);
  });
}

ThemeTable tag_corpus(const std::vector<Essay>& essays,
                      const std::vector<bool>& empathic_flags,
                      const LexiconSet& lex) {
  std::size_t total = 0;
  for (const auto& e : essays) total += e.sentences.size();
  if (empathic_flags.size() != total)
    throw ContractError("expected " + std::to_string(total) +
                        " predicted empathy flags, got " +
                        std::to_string(empathic_flags.size()));
  return tag_with(essays, lex, [&](const Essay&, const Sentence&, std::size_t i) {
    return static_cast<bool>(empathic_flags[i]);
  });
}

void write_theme_csv(std::ostream& out, const ThemeTable& table) {
  out << "essay_id,sentence_id,theme,is_medical,is_empathic\n";
  for (const auto& r : table.rows) {
    out << r.essay_id << ',' << r.sentence_id << ',' << theme_name(r.theme)
        << ',' << (r.is_medical ? 1 : 0) << ',' << (r.is_empathic ? 1 : 0)
        << '\n';
  }
}

}  // namespace transit
