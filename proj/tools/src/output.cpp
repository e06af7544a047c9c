#include "output.hpp"

#include <fstream>
#include <system_error>
#include <unistd.h>

#include "transit/errors.hpp"

namespace transit::cli {

namespace fs = std::filesystem;

namespace {

// FNV-1a over the file bytes; enough to tell whether an input changed.
std::string digest_of(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return "";
  std::uint64_t h = 1469598103934665603ull;
  char buf[1 << 14];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 1099511628211ull;
    }
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
  return hex;
}

}  // namespace

void write_file_atomic(const fs::path& path, std::string_view bytes) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error("cannot move " + tmp.string() + " into place: " + ec.message());
  }
}

RunRecord::RunRecord(std::string command) : command_(std::move(command)) {}

void RunRecord::add_input(std::string role, const fs::path& path) {
  if (path.empty()) return;
  nlohmann::ordered_json j;
  j["role"] = std::move(role);
  j["path"] = path.string();
  if (fs::is_regular_file(path)) j["fnv1a64"] = digest_of(path);
  inputs_.push_back(std::move(j));
}

void RunRecord::write(const fs::path& dir, const std::string& name,
                      std::string_view bytes) {
  write_file_atomic(dir / name, bytes);
  outputs_.push_back(name);
}

void RunRecord::save(const fs::path& dir) const {
  nlohmann::ordered_json j;
  j["command"] = command_;
  j["version"] = TRANSIT_VERSION;
  j["inputs"] = inputs_;
  j["flags"] = flags_;
  j["outputs"] = outputs_;
  write_file_atomic(dir / "run_manifest.json", j.dump(2) + "\n");
}

}  // namespace transit::cli
