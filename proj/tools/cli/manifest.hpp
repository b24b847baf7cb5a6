#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace axistour::cli {

std::uint64_t fnv1a64_file(const std::filesystem::path& path);

/// Collects every artifact a run writes and lands them in manifest.json with
/// size and content hash, so reruns can be compared file by file.
class ManifestWriter {
 public:
  explicit ManifestWriter(std::filesystem::path run_dir);

  // Registers a file that already exists on disk, keyed by its run-relative
  // path.
  void record(const std::filesystem::path& path);

  void set_config_json(std::string config_json);
  void add_stage(const std::string& stage);

  void write() const;

  struct Artifact {
    std::string relative_path;
    std::uint64_t bytes;
    std::string hash;
  };
  const std::vector<Artifact>& artifacts() const { return artifacts_; }

 private:
  std::filesystem::path run_dir_;
  std::string config_json_;
  std::vector<std::string> stages_;
  std::vector<Artifact> artifacts_;
};

}  // namespace axistour::cli
