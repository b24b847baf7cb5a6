#include "cli/manifest.hpp"

#include <fstream>

#include <json.hpp>

#include "axistour/errors.hpp"

namespace axistour::cli {

std::uint64_t fnv1a64_file(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot hash file: " + path.string());
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  char buffer[1 << 16];
  while (file) {
    file.read(buffer, sizeof(buffer));
    const std::streamsize got = file.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      hash ^= static_cast<unsigned char>(buffer[i]);
      hash *= 0x100000001b3ULL;
    }
  }
  return hash;
}

ManifestWriter::ManifestWriter(std::filesystem::path run_dir) : run_dir_(std::move(run_dir)) {}

void ManifestWriter::record(const std::filesystem::path& path) {
  Artifact artifact;
  artifact.relative_path = std::filesystem::relative(path, run_dir_).string();
  artifact.bytes = static_cast<std::uint64_t>(std::filesystem::file_size(path));
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx",
                static_cast<unsigned long long>(fnv1a64_file(path)));
  artifact.hash = hex;
  artifacts_.push_back(std::move(artifact));
}

void ManifestWriter::set_config_json(std::string config_json) {
  config_json_ = std::move(config_json);
}

void ManifestWriter::add_stage(const std::string& stage) { stages_.push_back(stage); }

void ManifestWriter::write() const {
  nlohmann::json j;
  j["config"] = nlohmann::json::parse(config_json_.empty() ? "{}" : config_json_);
  j["stages"] = stages_;
  nlohmann::json arts = nlohmann::json::array();
  for (const auto& artifact : artifacts_) {
    arts.push_back({{"path", artifact.relative_path},
                    {"bytes", artifact.bytes},
                    {"fnv1a64", artifact.hash}});
  }
  j["artifacts"] = arts;
  std::ofstream file(run_dir_ / "manifest.json");
  if (!file) throw IoError("cannot write manifest in " + run_dir_.string());
  file << j.dump(2) << '\n';
}

}  // namespace axistour::cli
