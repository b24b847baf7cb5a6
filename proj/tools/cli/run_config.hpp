#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "axistour/numeric.hpp"

namespace axistour::cli {

enum class Method { axistour, skewsort, randorder, pca, tica9, tica75 };

std::string method_name(Method method);
Method parse_method(const std::string& name);

enum class ReductionKind { projection, prefix };

/// Everything a pipeline run depends on. Serialized verbatim into the run
/// manifest so a run can be reproduced from it.
struct RunConfig {
  std::filesystem::path input;
  std::filesystem::path output_dir;
  std::optional<Index> max_words;
  bool lowercase = false;

  Method method = Method::axistour;
  Index k = 100;
  double alpha = 1.0 / 3.0;
  std::vector<Index> p_list;
  std::uint64_t seed = 0;

  int ica_max_iter = 10000;
  double ica_tol = 1e-10;

  int tica_iterations = 10000;
  double tica_step = 0.1;
  bool tica_cyclic = false;

  // Optional stages.
  bool metrics = true;
  std::optional<ReductionKind> reduction;  // defaults per method when unset
  std::vector<std::pair<Index, Index>> plot_intervals;
  std::vector<std::filesystem::path> analogy_paths;
  std::vector<std::filesystem::path> similarity_paths;
  std::vector<std::filesystem::path> categorization_paths;
  std::vector<Index> k_grid;  // extra tours for the k-sensitivity table
  bool text_artifacts = false;

  ReductionKind effective_reduction() const {
    if (reduction) return *reduction;
    return method == Method::axistour ? ReductionKind::projection : ReductionKind::prefix;
  }
};

std::string to_json(const RunConfig& config);
RunConfig config_from_json_file(const std::filesystem::path& path);

/// Resolves a dataset path against AXISTOUR_DATA_DIR when it is relative and
/// does not exist as given.
std::filesystem::path resolve_data_path(const std::filesystem::path& path);

}  // namespace axistour::cli
