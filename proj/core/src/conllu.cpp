#include "transit/conllu.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "json.hpp"
#include "transit/errors.hpp"

namespace transit {

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find('\t', start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

std::optional<int> to_int(std::string_view text) {
  int value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

class DocumentBuilder {
 public:
  explicit DocumentBuilder(ConlluDocument& doc) : doc_(doc) {}

  void comment(std::string_view body) {
    body = trim(body);
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      current_.metadata.emplace_back(std::string(body), std::string());
      return;
    }
    const std::string key(trim(body.substr(0, eq)));
    const std::string value(trim(body.substr(eq + 1)));
    if (key == "sent_id") {
      current_.sentence_id = value;
      has_id_ = true;
    } else if (key == "text") {
      current_.raw_text = value;
      has_text_ = true;
    } else {
      current_.metadata.emplace_back(key, value);
    }
    pending_ = true;
  }

  void token(Token t) {
    current_.tokens.push_back(std::move(t));
    pending_ = true;
  }

  void flush() {
    if (!pending_) return;
    if (current_.tokens.empty()) {
      // Comment-only block: keep its metadata for the next sentence.
      return;
    }
    ++ordinal_;
    if (!has_id_) current_.sentence_id = std::to_string(ordinal_);
    if (!has_text_) {
      std::string text;
      for (const auto& t : current_.tokens) {
        if (!text.empty()) text += ' ';
        text += t.surface;
      }
      current_.raw_text = std::move(text);
    }
    validate_sentence(current_);
    doc_.sentences.push_back(std::move(current_));
    current_ = Sentence{};
    has_id_ = has_text_ = pending_ = false;
  }

 private:
  ConlluDocument& doc_;
  Sentence current_;
  std::size_t ordinal_ = 0;
  bool has_id_ = false;
  bool has_text_ = false;
  bool pending_ = false;
};

Token parse_token_line(std::string_view line, std::size_t line_no,
                       bool& skipped) {
  const auto fields = split_tabs(line);
  if (fields.size() != 10) {
    throw ParseError("line " + std::to_string(line_no) + ": expected 10 tab-separated fields, found " +
                         std::to_string(fields.size()),
                     line_no);
  }
  const std::string_view id = fields[0];
  skipped = false;
  if (id.find('-') != std::string_view::npos ||
      id.find('.') != std::string_view::npos) {
    skipped = true;  // multiword range or empty node
    return {};
  }
  const auto index = to_int(id);
  if (!index || *index < 1)
    throw ParseError("line " + std::to_string(line_no) + ": invalid token id '" +
                         std::string(id) + "'",
                     line_no);
  const auto head = to_int(fields[6]);
  if (!head)
    throw ParseError("line " + std::to_string(line_no) + ": non-integer head '" +
                         std::string(fields[6]) + "'",
                     line_no);
  Token t;
  t.index = *index;
  t.surface = fields[1];
  t.lemma = fields[2];
  t.upos = fields[3];
  t.xpos = fields[4];
  t.feats = fields[5];
  t.head = *head;
  t.deprel = fields[7];
  t.deps = fields[8];
  t.misc = fields[9];
  return t;
}

}  // namespace

ConlluDocument parse_document(std::istream& input, std::string source_path) {
  ConlluDocument doc;
  doc.source_path = std::move(source_path);
  DocumentBuilder builder(doc);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(input, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (trim(line).empty()) {
      builder.flush();
      continue;
    }
    if (line.front() == '#') {
      builder.comment(std::string_view(line).substr(1));
      continue;
    }
    bool skipped = false;
    Token t = parse_token_line(line, line_no, skipped);
    if (!skipped) builder.token(std::move(t));
  }
  builder.flush();
  return doc;
}

ConlluDocument parse_document(std::string_view text, std::string source_path) {
  std::istringstream in{std::string(text)};
  return parse_document(in, std::move(source_path));
}

ConlluDocument read_document(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw LoadError({"cannot open CoNLL-U file '" + path.string() + "'"});
  return parse_document(in, path.string());
}

void write_sentence(std::ostream& out, const Sentence& sentence) {
  out << "# sent_id = " << sentence.sentence_id << '\n';
  out << "# text = " << sentence.raw_text << '\n';
  for (const auto& [key, value] : sentence.metadata) {
    if (value.empty())
      out << "# " << key << '\n';
    else
      out << "# " << key << " = " << value << '\n';
  }
  for (const auto& t : sentence.tokens) {
    out << t.index << '\t' << t.surface << '\t' << t.lemma << '\t' << t.upos
        << '\t' << t.xpos << '\t' << t.feats << '\t' << t.head << '\t'
        << t.deprel << '\t' << t.deps << '\t' << t.misc << '\n';
  }
  out << '\n';
}

void write_document(std::ostream& out, const std::vector<Sentence>& sentences) {
  for (const auto& s : sentences) write_sentence(out, s);
}

std::string to_conllu(const std::vector<Sentence>& sentences) {
  std::ostringstream out;
  write_document(out, sentences);
  return out.str();
}

CorpusManifest read_manifest(const std::filesystem::path& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in)
    throw LoadError({"cannot open manifest '" + manifest_path.string() + "'"});
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw LoadError({"manifest '" + manifest_path.string() +
                     "' is not valid JSON: " + e.what()});
  }
  std::vector<std::string> violations;
  CorpusManifest manifest;
  if (!j.is_object() || !j.contains("essays") || !j["essays"].is_array()) {
    throw LoadError({"manifest '" + manifest_path.string() +
                     "' must be an object with an 'essays' array"});
  }
  for (std::size_t i = 0; i < j["essays"].size(); ++i) {
    const auto& e = j["essays"][i];
    const std::string where = "essays[" + std::to_string(i) + "]";
    if (!e.is_object() || !e.contains("essay_id") || !e["essay_id"].is_string() ||
        !e.contains("score") || !e["score"].is_number() ||
        !e.contains("conllu_path") || !e["conllu_path"].is_string()) {
      violations.push_back(where + " needs string essay_id, numeric score, string conllu_path");
      continue;
    }
    manifest.essays.push_back({e["essay_id"].get<std::string>(),
                               e["score"].get<double>(),
                               e["conllu_path"].get<std::string>()});
  }
  if (j.contains("annotations")) {
    if (!j["annotations"].is_array()) {
      violations.emplace_back("'annotations' must be an array");
    } else {
      for (std::size_t i = 0; i < j["annotations"].size(); ++i) {
        const auto& a = j["annotations"][i];
        const std::string where = "annotations[" + std::to_string(i) + "]";
        if (!a.is_object() || !a.contains("essay_id") ||
            !a["essay_id"].is_string() || !a.contains("sentence_id")) {
          violations.push_back(where + " needs essay_id and sentence_id");
          continue;
        }
        EmpathyAnnotation ann;
        ann.essay_id = a["essay_id"].get<std::string>();
        ann.sentence_id = a["sentence_id"].is_string()
                              ? a["sentence_id"].get<std::string>()
                              : a["sentence_id"].dump();
        if (a.contains("labels") && a["labels"].is_array()) {
          for (const auto& l : a["labels"])
            if (l.is_string()) ann.fine_labels.push_back(l.get<std::string>());
        }
        if (a.contains("empathic")) {
          if (!a["empathic"].is_boolean()) {
            violations.push_back(where + ".empathic must be a boolean");
            continue;
          }
          ann.empathic = a["empathic"].get<bool>();
        } else {
          // Cognitive, affective and prosocial labels collapse into one flag.
          ann.empathic = !ann.fine_labels.empty();
        }
        manifest.annotations.push_back(std::move(ann));
      }
    }
  }
  if (!violations.empty()) throw LoadError(std::move(violations));
  return manifest;
}

void write_manifest(const std::filesystem::path& manifest_path,
                    const CorpusManifest& manifest) {
  nlohmann::ordered_json j;
  j["essays"] = nlohmann::ordered_json::array();
  for (const auto& e : manifest.essays) {
    nlohmann::ordered_json row;
    row["essay_id"] = e.essay_id;
    row["score"] = e.score;
    row["conllu_path"] = e.conllu_path;
    j["essays"].push_back(std::move(row));
  }
  j["annotations"] = nlohmann::ordered_json::array();
  for (const auto& a : manifest.annotations) {
    nlohmann::ordered_json row;
    row["essay_id"] = a.essay_id;
    row["sentence_id"] = a.sentence_id;
    row["empathic"] = a.empathic;
    if (!a.fine_labels.empty()) row["labels"] = a.fine_labels;
    j["annotations"].push_back(std::move(row));
  }
  std::ofstream out(manifest_path);
  if (!out) throw LoadError({"cannot write manifest '" + manifest_path.string() + "'"});
  out << j.dump(2) << '\n';
}

Corpus load_corpus(const std::filesystem::path& manifest_path) {
  const CorpusManifest manifest = read_manifest(manifest_path);
  const auto base = manifest_path.parent_path();
  std::vector<std::string> violations;
  std::set<std::string> seen_ids;
  Corpus corpus;
  for (const auto& entry : manifest.essays) {
    if (!seen_ids.insert(entry.essay_id).second) {
      violations.push_back("duplicate essay_id '" + entry.essay_id + "'");
      continue;
    }
    const auto path = base / entry.conllu_path;
    if (!std::filesystem::exists(path)) {
      violations.push_back("essay '" + entry.essay_id + "': missing file '" +
                           path.string() + "'");
      continue;
    }
    try {
      auto doc = read_document(path);
      corpus.essays.push_back(
          make_essay(entry.essay_id, std::move(doc.sentences), entry.score));
    } catch (const ParseError& e) {
      violations.push_back("essay '" + entry.essay_id + "' (" + path.string() +
                           "): " + e.what());
    } catch (const StructureError& e) {
      violations.push_back("essay '" + entry.essay_id + "' (" + path.string() +
                           "): " + e.what());
    } catch (const Error& e) {
      violations.push_back(std::string(e.what()));
    }
  }

  std::map<std::string, std::set<std::string>> sentence_ids;
  for (const auto& e : corpus.essays) {
    auto& ids = sentence_ids[e.essay_id];
    for (const auto& s : e.sentences) {
      if (!ids.insert(s.sentence_id).second)
        violations.push_back("essay '" + e.essay_id +
                             "': duplicate sentence id '" + s.sentence_id + "'");
    }
  }
  std::set<std::pair<std::string, std::string>> seen_pairs;
  for (const auto& a : manifest.annotations) {
    if (!seen_pairs.insert({a.essay_id, a.sentence_id}).second) {
      violations.push_back("duplicate annotation for essay '" + a.essay_id +
                           "' sentence '" + a.sentence_id + "'");
      continue;
    }
    if (!seen_ids.count(a.essay_id)) {
      violations.push_back("annotation references unknown essay '" +
                           a.essay_id + "'");
      continue;
    }
    auto it = sentence_ids.find(a.essay_id);
    // Essays that failed to load were already reported.
    if (it == sentence_ids.end()) continue;
    if (!it->second.count(a.sentence_id))
      violations.push_back("annotation references unknown sentence '" +
                           a.sentence_id + "' in essay '" + a.essay_id + "'");
  }
  if (!violations.empty()) throw LoadError(std::move(violations));
  corpus.annotations = AnnotationTable(manifest.annotations);
  return corpus;
}

}  // namespace transit
