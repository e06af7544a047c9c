#include "transit/lexicon.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <vector>

#include "transit/errors.hpp"

namespace transit {

namespace {

std::string normalize(std::string_view raw) {
  std::size_t b = 0, e = raw.size();
  while (b < e && std::isspace(static_cast<unsigned char>(raw[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(raw[e - 1]))) --e;
  return to_lower(raw.substr(b, e - b));
}

std::set<std::string, std::less<>> normalized(
    const std::set<std::string, std::less<>>& raw) {
  std::set<std::string, std::less<>> out;
  for (const auto& entry : raw) {
    auto n = normalize(entry);
    if (!n.empty()) out.insert(std::move(n));
  }
  return out;
}

}  // namespace

Lexicon::Lexicon(std::string name, std::set<std::string, std::less<>> entries,
                 MatchMode mode)
    : name_(std::move(name)), entries_(normalized(entries)), mode_(mode) {
  if (entries_.empty())
    throw LoadError({"lexicon '" + name_ + "' has no entries"});
}

Lexicon::Lexicon(std::string name,
                 std::initializer_list<std::string_view> entries,
                 MatchMode mode)
    : Lexicon(std::move(name),
              std::set<std::string, std::less<>>(entries.begin(), entries.end()),
              mode) {}

bool Lexicon::contains(const Token& token) const {
  return entries_.count(mode_ == MatchMode::kLemma ? token.lower_lemma()
                                                   : token.lower_surface()) > 0;
}

bool Lexicon::contains_term(std::string_view term) const {
  return entries_.count(to_lower(term)) > 0;
}

Lexicon load_lexicon(const std::filesystem::path& path, MatchMode mode) {
  std::ifstream in(path);
  if (!in) throw LoadError({"cannot read lexicon '" + path.string() + "'"});
  std::set<std::string, std::less<>> entries;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    auto n = normalize(line);
    if (!n.empty()) entries.insert(std::move(n));
  }
  if (entries.empty())
    throw LoadError({"lexicon '" + path.string() + "' has no entries"});
  return Lexicon(path.stem().string(), std::move(entries), mode);
}

void LexiconSet::validate() const {
  std::vector<std::string> violations;
  for (const auto& verb : material_verbs.entries()) {
    if (mental_verbs.entries().count(verb))
      violations.push_back("verb '" + verb +
                           "' is listed as both material and mental");
  }
  if (!violations.empty()) throw LoadError(std::move(violations));
}

std::filesystem::path shipped_lexicon_dir() {
  if (const char* env = std::getenv("TRANSIT_LEXICON_DIR"); env && *env)
    return env;
#ifdef TRANSIT_SOURCE_LEXICON_DIR
  if (std::filesystem::exists(TRANSIT_SOURCE_LEXICON_DIR))
    return TRANSIT_SOURCE_LEXICON_DIR;
#endif
#ifdef TRANSIT_INSTALLED_LEXICON_DIR
  return TRANSIT_INSTALLED_LEXICON_DIR;
#else
  return "lexicons";
#endif
}

LexiconSet LexiconSet::load(const std::filesystem::path& override_dir) {
  const auto shipped = shipped_lexicon_dir();
  std::vector<std::string> violations;
  const auto pick = [&](const char* file, MatchMode mode) -> Lexicon {
    std::filesystem::path path = shipped / file;
    if (!override_dir.empty() && std::filesystem::exists(override_dir / file))
      path = override_dir / file;
    try {
      return load_lexicon(path, mode);
    } catch (const LoadError& e) {
      violations.insert(violations.end(), e.violations().begin(),
                        e.violations().end());
      return {};
    }
  };
  if (!override_dir.empty() && !std::filesystem::is_directory(override_dir))
    throw LoadError({"lexicon directory '" + override_dir.string() +
                     "' does not exist"});
  LexiconSet set;
  // Subjects are matched on surface forms ("I", "Children"), like the
  // frequency list they come from.
  set.human_agents = pick("human_agents.txt", MatchMode::kSurface);
  set.body_parts = pick("body_parts.txt", MatchMode::kLemma);
  set.material_verbs = pick("material_verbs.txt", MatchMode::kLemma);
  set.mental_verbs = pick("mental_verbs.txt", MatchMode::kLemma);
  set.medical_terms = pick("medical_terms.txt", MatchMode::kLemma);
  set.extroversion_cues = pick("extroversion_cues.txt", MatchMode::kLemma);
  set.confidence_cues = pick("confidence_cues.txt", MatchMode::kLemma);
  if (!violations.empty()) throw LoadError(std::move(violations));
  set.validate();
  return set;
}

const LexiconSet& LexiconSet::shipped() {
  static const LexiconSet cached = load();
  return cached;
}

}  // namespace transit
