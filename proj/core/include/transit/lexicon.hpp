#pragma once

#include <filesystem>
#include <initializer_list>
#include <set>
#include <string>
#include <string_view>

#include "transit/corpus.hpp"

namespace transit {

enum class MatchMode { kLemma, kSurface };

class Lexicon {
 public:
  Lexicon() = default;
  // Entries are lowercased, trimmed and deduplicated. Throws LoadError when
  // nothing is left.
  Lexicon(std::string name, std::set<std::string, std::less<>> entries,
          MatchMode mode);
  Lexicon(std::string name, std::initializer_list<std::string_view> entries,
          MatchMode mode);

  const std::string& name() const { return name_; }
  MatchMode match_mode() const { return mode_; }
  const std::set<std::string, std::less<>>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  // Lemma mode compares the lowercased lemma, Surface mode the lowercased form.
  bool contains(const Token& token) const;
  bool contains_term(std::string_view term) const;  // case-insensitive

 private:
  std::string name_;
  std::set<std::string, std::less<>> entries_;
  MatchMode mode_ = MatchMode::kLemma;
};

// One entry per line, '#' starts a comment, blank lines ignored.
Lexicon load_lexicon(const std::filesystem::path& path, MatchMode mode);

struct LexiconSet {
  Lexicon human_agents;
  Lexicon body_parts;
  Lexicon material_verbs;
  Lexicon mental_verbs;
  Lexicon medical_terms;
  Lexicon extroversion_cues;
  Lexicon confidence_cues;

  // Throws LoadError if a verb lemma is both material and mental.
  void validate() const;

  // Loads the seven lexicon files. Files missing from `override_dir` fall
  // back to the shipped copies.
  static LexiconSet load(const std::filesystem::path& override_dir = {});
  // Loaded once and cached.
  static const LexiconSet& shipped();
};

// Location of the lexicons shipped with the toolkit. Honors the
// TRANSIT_LEXICON_DIR environment variable.
std::filesystem::path shipped_lexicon_dir();

}  // namespace transit
