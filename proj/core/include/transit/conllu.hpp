#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "transit/corpus.hpp"

namespace transit {

struct ConlluDocument {
  std::vector<Sentence> sentences;
  std::string source_path;
};

// Reads CoNLL-U v2. Multiword-token ranges ("3-4") and empty nodes ("5.1")
// are skipped. Sentence ids come from "# sent_id", else the 1-based ordinal.
// Throws ParseError (with line number) or StructureError (with sentence id).
ConlluDocument parse_document(std::istream& input,
                              std::string source_path = {});
ConlluDocument parse_document(std::string_view text,
                              std::string source_path = {});
ConlluDocument read_document(const std::filesystem::path& path);

void write_sentence(std::ostream& out, const Sentence& sentence);
void write_document(std::ostream& out, const std::vector<Sentence>& sentences);
std::string to_conllu(const std::vector<Sentence>& sentences);

struct ManifestEssay {
  std::string essay_id;
  double score = 1.0;
  std::string conllu_path;  // relative to the manifest's directory
};

struct CorpusManifest {
  std::vector<ManifestEssay> essays;
  std::vector<EmpathyAnnotation> annotations;
};

CorpusManifest read_manifest(const std::filesystem::path& manifest_path);
void write_manifest(const std::filesystem::path& manifest_path,
                    const CorpusManifest& manifest);

// Parses every essay listed in the manifest and joins annotations. All
// violations (missing files, duplicate essay ids, dangling annotations,
// parse failures, bad scores) are collected into one LoadError.
Corpus load_corpus(const std::filesystem::path& manifest_path);

}  // namespace transit
