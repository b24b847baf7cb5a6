#include "cli/run_config.hpp"

#include <cstdlib>
#include <fstream>

#include <json.hpp>

#include "axistour/errors.hpp"

namespace axistour::cli {

using nlohmann::json;

std::string method_name(Method method) {
  switch (method) {
    case Method::axistour: return "axistour";
    case Method::skewsort: return "skewsort";
    case Method::randorder: return "randorder";
    case Method::pca: return "pca";
    case Method::tica9: return "tica9";
    case Method::tica75: return "tica75";
  }
  return "axistour";
}

Method parse_method(const std::string& name) {
  if (name == "axistour") return Method::axistour;
  if (name == "skewsort") return Method::skewsort;
  if (name == "randorder") return Method::randorder;
  if (name == "pca") return Method::pca;
  if (name == "tica9") return Method::tica9;
  if (name == "tica75") return Method::tica75;
  throw DataError("unknown method: " + name);
}

std::string to_json(const RunConfig& config) {
  json j;
  j["input"] = config.input.string();
  j["output_dir"] = config.output_dir.string();
  if (config.max_words) j["max_words"] = *config.max_words;
  j["lowercase"] = config.lowercase;
  j["method"] = method_name(config.method);
  j["k"] = config.k;
  j["alpha"] = config.alpha;
  j["p_list"] = config.p_list;
  j["seed"] = config.seed;
  j["ica_max_iter"] = config.ica_max_iter;
  j["ica_tol"] = config.ica_tol;
  j["tica_iterations"] = config.tica_iterations;
  j["tica_step"] = config.tica_step;
  j["tica_cyclic"] = config.tica_cyclic;
  j["metrics"] = config.metrics;
  if (config.reduction) {
    j["reduction"] = *config.reduction == ReductionKind::projection ? "projection" : "prefix";
  }
  json intervals = json::array();
  for (const auto& [a, b] : config.plot_intervals) {
    intervals.push_back({a, b});
  }
  j["plot_intervals"] = intervals;
  auto paths = [](const std::vector<std::filesystem::path>& v) {
    json arr = json::array();
    for (const auto& p : v) arr.push_back(p.string());
    return arr;
  };
  j["analogy"] = paths(config.analogy_paths);
  j["similarity"] = paths(config.similarity_paths);
  j["categorization"] = paths(config.categorization_paths);
  j["k_grid"] = config.k_grid;
  j["text_artifacts"] = config.text_artifacts;
  return j.dump(2);
}

RunConfig config_from_json_file(const std::filesystem::path& path) {
  std::ifstream file(path);
  if (!file) throw IoError("cannot open config file: " + path.string());
  json j;
  try {
    file >> j;
  } catch (const json::exception& e) {
    throw DataError("bad config json: " + std::string(e.what()));
  }

  RunConfig config;
  if (j.contains("input")) config.input = j["input"].get<std::string>();
  if (j.contains("output_dir")) config.output_dir = j["output_dir"].get<std::string>();
  if (j.contains("max_words")) config.max_words = j["max_words"].get<Index>();
  if (j.contains("lowercase")) config.lowercase = j["lowercase"].get<bool>();
  if (j.contains("method")) config.method = parse_method(j["method"].get<std::string>());
  if (j.contains("k")) config.k = j["k"].get<Index>();
  if (j.contains("alpha")) config.alpha = j["alpha"].get<double>();
  if (j.contains("p_list")) config.p_list = j["p_list"].get<std::vector<Index>>();
  if (j.contains("seed")) config.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("ica_max_iter")) config.ica_max_iter = j["ica_max_iter"].get<int>();
  if (j.contains("ica_tol")) config.ica_tol = j["ica_tol"].get<double>();
  if (j.contains("tica_iterations")) config.tica_iterations = j["tica_iterations"].get<int>();
  if (j.contains("tica_step")) config.tica_step = j["tica_step"].get<double>();
  if (j.contains("tica_cyclic")) config.tica_cyclic = j["tica_cyclic"].get<bool>();
  if (j.contains("metrics")) config.metrics = j["metrics"].get<bool>();
  if (j.contains("reduction")) {
    const std::string kind = j["reduction"].get<std::string>();
    if (kind == "projection") {
      config.reduction = ReductionKind::projection;
    } else if (kind == "prefix") {
      config.reduction = ReductionKind::prefix;
    } else {
      throw DataError("unknown reduction kind: " + kind);
    }
  }
  if (j.contains("plot_intervals")) {
    for (const auto& pair : j["plot_intervals"]) {
      config.plot_intervals.emplace_back(pair.at(0).get<Index>(), pair.at(1).get<Index>());
    }
  }
  auto read_paths = [&j](const char* key, std::vector<std::filesystem::path>& out) {
    if (!j.contains(key)) return;
    for (const auto& p : j[key]) out.emplace_back(p.get<std::string>());
  };
  read_paths("analogy", config.analogy_paths);
  read_paths("similarity", config.similarity_paths);
  read_paths("categorization", config.categorization_paths);
  if (j.contains("k_grid")) config.k_grid = j["k_grid"].get<std::vector<Index>>();
  if (j.contains("text_artifacts")) config.text_artifacts = j["text_artifacts"].get<bool>();
  return config;
}

std::filesystem::path resolve_data_path(const std::filesystem::path& path) {
  if (path.is_absolute() || std::filesystem::exists(path)) return path;
  if (const char* base = std::getenv("AXISTOUR_DATA_DIR")) {
    const std::filesystem::path candidate = std::filesystem::path(base) / path;
    if (std::filesystem::exists(candidate)) return candidate;
  }
  return path;
}

}  // namespace axistour::cli
