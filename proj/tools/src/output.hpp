#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace transit::cli {

// Writes through a temporary sibling and renames it into place, so readers
// never see a half-written file.
void write_file_atomic(const std::filesystem::path& path, std::string_view bytes);

// Collects what a run read and wrote; saved as run_manifest.json.
class RunRecord {
 public:
  explicit RunRecord(std::string command);

  nlohmann::ordered_json& flags() { return flags_; }
  void add_input(std::string role, const std::filesystem::path& path);
  // Writes `bytes` under `dir` atomically and records the file.
  void write(const std::filesystem::path& dir, const std::string& name,
             std::string_view bytes);
  void save(const std::filesystem::path& dir) const;

 private:
  std::string command_;
  nlohmann::ordered_json flags_ = nlohmann::ordered_json::object();
  nlohmann::ordered_json inputs_ = nlohmann::ordered_json::array();
  std::vector<std::string> outputs_;
};

}  // namespace transit::cli
