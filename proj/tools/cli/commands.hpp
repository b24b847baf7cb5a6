#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "cli/run_config.hpp"

namespace axistour::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;
inline constexpr int kExitNumeric = 3;

struct PipelineOutcome {
  int exit_code = kExitOk;
  std::string failed_stage;
  std::string message;
};

/// Full chain: load -> center -> whiten -> {fastica | tica | none} -> orient
/// -> order -> apply -> metrics / reduction / eval / plots, with every
/// artifact recorded in manifest.json.
PipelineOutcome run_pipeline(const RunConfig& config);
int cmd_pipeline(const RunConfig& config);

/// Consolidates a finished run directory into report.json / report.csv.
int cmd_report(const std::filesystem::path& run_dir);

struct IcaArgs {
  std::filesystem::path input;
  std::filesystem::path out_dir;
  std::optional<Index> max_words;
  bool lowercase = false;
  int max_iter = 10000;
  double tol = 1e-10;
  std::uint64_t seed = 0;
};
int cmd_ica(const IcaArgs& args);

struct TourArgs {
  std::filesystem::path s_path;  // binary cache produced by `ica`
  std::filesystem::path out_dir;
  Index k = 100;
  std::uint64_t seed = 0;
};
int cmd_tour(const TourArgs& args);

struct ReduceArgs {
  std::filesystem::path t_path;
  std::filesystem::path gamma_path;
  std::filesystem::path out_dir;
  std::vector<Index> p_list;
  double alpha = 1.0 / 3.0;
  ReductionKind kind = ReductionKind::projection;
  bool signed_weights = false;  // Random Order Projection
  bool dump_f = false;
};
int cmd_reduce(const ReduceArgs& args);

struct MetricsArgs {
  std::filesystem::path t_path;
  std::filesystem::path out_dir;
  Index k = 100;
  std::vector<std::pair<Index, Index>> intervals;
};
int cmd_metrics(const MetricsArgs& args);

struct EvalArgs {
  std::filesystem::path t_path;
  std::filesystem::path gamma_path;  // needed for projection reduction
  std::filesystem::path out_dir;
  std::vector<Index> dims;
  double alpha = 1.0 / 3.0;
  ReductionKind kind = ReductionKind::prefix;
  std::string method = "unknown";
  std::uint64_t seed = 0;
  std::vector<std::filesystem::path> analogy_paths;
  std::vector<std::filesystem::path> similarity_paths;
  std::vector<std::filesystem::path> categorization_paths;
};
int cmd_eval(const EvalArgs& args);

struct PlotArgs {
  std::filesystem::path t_path;
  std::filesystem::path out_dir;
  std::pair<Index, Index> interval{0, 0};
};
int cmd_plot(const PlotArgs& args);

struct TicaArgs {
  std::filesystem::path input;
  std::filesystem::path out_dir;
  std::optional<Index> max_words;
  bool lowercase = false;
  Index width = 9;
  int iterations = 10000;
  double step = 0.1;
  bool cyclic = false;
  std::uint64_t seed = 0;
};
int cmd_tica(const TicaArgs& args);

}  // namespace axistour::cli
