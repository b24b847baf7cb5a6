#include <CLI11.hpp>
#include <iostream>
#include <string>
#include <vector>

#include "cli/commands.hpp"
#include "cli/run_config.hpp"

namespace {

using namespace axistour;
using namespace axistour::cli;

std::pair<Index, Index> parse_interval(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw CLI::ValidationError("interval must look like a:b");
  }
  return {static_cast<Index>(std::stoll(text.substr(0, colon))),
          static_cast<Index>(std::stoll(text.substr(colon + 1)))};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Axis ordering and dimensionality reduction for ICA-transformed word embeddings"};
  app.require_subcommand(1);

  // ---- pipeline ----------------------------------------------------------
  auto* pipeline = app.add_subcommand("pipeline", "Run the full chain and write a manifest");
  std::string config_path;
  std::string input, out_dir, method = "axistour", reduction;
  long long max_words = -1;
  bool lowercase = false, no_metrics = false, text_artifacts = false;
  long long k = -1;
  double alpha = -1.0;
  std::vector<long long> p_list, k_grid;
  long long seed = -1;
  long long ica_max_iter = -1;
  double ica_tol = -1.0;
  long long tica_iterations = -1;
  double tica_step = -1.0;
  std::vector<std::string> intervals, analogy, similarity, categorization;

  pipeline->add_option("--config", config_path, "JSON config file; explicit flags win");
  pipeline->add_option("--input", input, "text embedding file (word v1 ... vd per line)");
  pipeline->add_option("--out", out_dir, "run directory");
  pipeline->add_option("--method", method,
                       "axistour | skewsort | randorder | pca | tica9 | tica75");
  pipeline->add_option("--max-words", max_words, "load only the first N words");
  pipeline->add_flag("--lowercase", lowercase, "fold tokens to lower case (first wins)");
  pipeline->add_option("--k", k, "top-k words per axis embedding (default 100)");
  pipeline->add_option("--alpha", alpha, "skewness weight exponent (default 1/3)");
  pipeline->add_option("--p", p_list, "target dimensions, e.g. --p 5 20 100");
  pipeline->add_option("--seed", seed, "master seed; stages derive their own streams");
  pipeline->add_option("--ica-max-iter", ica_max_iter, "FastICA iteration cap (default 10000)");
  pipeline->add_option("--ica-tol", ica_tol, "FastICA tolerance (default 1e-10)");
  pipeline->add_option("--tica-iterations", tica_iterations, "TICA gradient steps");
  pipeline->add_option("--tica-step", tica_step, "TICA step size (default 0.1)");
  pipeline->add_option("--reduction", reduction, "projection | prefix (default per method)");
  pipeline->add_flag("--no-metrics", no_metrics, "skip continuity metrics");
  pipeline->add_flag("--text-artifacts", text_artifacts, "also write text matrices and F dumps");
  pipeline->add_option("--interval", intervals, "plot interval a:b (repeatable)");
  pipeline->add_option("--analogy", analogy, "analogy dataset file (repeatable)");
  pipeline->add_option("--similarity", similarity, "similarity dataset file (repeatable)");
  pipeline->add_option("--categorization", categorization,
                       "categorization dataset file (repeatable)");
  pipeline->add_option("--k-grid", k_grid, "k values for the k-sensitivity table");

  // ---- stage subcommands --------------------------------------------------
  IcaArgs ica_args;
  auto* ica_cmd = app.add_subcommand("ica", "Load, center, whiten, FastICA, orient");
  std::string ica_input, ica_out;
  long long ica_seed = 0, ica_cap = 10000, ica_words = -1;
  double ica_tolerance = 1e-10;
  bool ica_lower = false;
  ica_cmd->add_option("--input", ica_input)->required();
  ica_cmd->add_option("--out", ica_out)->required();
  ica_cmd->add_option("--max-words", ica_words);
  ica_cmd->add_flag("--lowercase", ica_lower);
  ica_cmd->add_option("--max-iter", ica_cap);
  ica_cmd->add_option("--tol", ica_tolerance);
  ica_cmd->add_option("--seed", ica_seed);

  auto* tour_cmd = app.add_subcommand("tour", "Axis embeddings, TSP order, anchored apply");
  std::string tour_s, tour_out;
  long long tour_k = 100, tour_seed = 0;
  tour_cmd->add_option("--s", tour_s, "s.bin from the ica stage")->required();
  tour_cmd->add_option("--out", tour_out)->required();
  tour_cmd->add_option("--k", tour_k);
  tour_cmd->add_option("--seed", tour_seed);

  auto* reduce_cmd = app.add_subcommand("reduce", "Interval projections or prefix truncation");
  std::string reduce_t, reduce_gamma, reduce_out, reduce_kind = "projection";
  std::vector<long long> reduce_p;
  double reduce_alpha = 1.0 / 3.0;
  bool reduce_signed = false, reduce_dump_f = false;
  reduce_cmd->add_option("--t", reduce_t, "t.bin")->required();
  reduce_cmd->add_option("--gamma", reduce_gamma, "skewness.csv (default: recompute)");
  reduce_cmd->add_option("--out", reduce_out)->required();
  reduce_cmd->add_option("--p", reduce_p)->required();
  reduce_cmd->add_option("--alpha", reduce_alpha);
  reduce_cmd->add_option("--kind", reduce_kind, "projection | prefix");
  reduce_cmd->add_flag("--signed", reduce_signed, "signed weights (Random Order Projection)");
  reduce_cmd->add_flag("--dump-f", reduce_dump_f, "write F as CSV");

  auto* metrics_cmd = app.add_subcommand("metrics", "Continuity metrics and histogram");
  std::string metrics_t, metrics_out;
  long long metrics_k = 100;
  std::vector<std::string> metrics_intervals;
  metrics_cmd->add_option("--t", metrics_t)->required();
  metrics_cmd->add_option("--out", metrics_out)->required();
  metrics_cmd->add_option("--k", metrics_k);
  metrics_cmd->add_option("--interval", metrics_intervals, "interval a:b (repeatable)");

  auto* eval_cmd = app.add_subcommand("eval", "Analogy / similarity / categorization sweep");
  std::string eval_t, eval_gamma, eval_out, eval_kind = "prefix", eval_method = "unknown";
  std::vector<long long> eval_dims;
  double eval_alpha = 1.0 / 3.0;
  long long eval_seed = 0;
  std::vector<std::string> eval_an, eval_sim, eval_cat;
  eval_cmd->add_option("--t", eval_t)->required();
  eval_cmd->add_option("--gamma", eval_gamma);
  eval_cmd->add_option("--out", eval_out)->required();
  eval_cmd->add_option("--dims", eval_dims, "dimensions to sweep");
  eval_cmd->add_option("--alpha", eval_alpha);
  eval_cmd->add_option("--kind", eval_kind, "projection | prefix");
  eval_cmd->add_option("--method", eval_method, "method label for the report");
  eval_cmd->add_option("--seed", eval_seed);
  eval_cmd->add_option("--analogy", eval_an);
  eval_cmd->add_option("--similarity", eval_sim);
  eval_cmd->add_option("--categorization", eval_cat);

  auto* plot_cmd = app.add_subcommand("plot", "Semicircular 2-D projection (SVG + CSV)");
  std::string plot_t, plot_out, plot_interval;
  plot_cmd->add_option("--t", plot_t)->required();
  plot_cmd->add_option("--out", plot_out)->required();
  plot_cmd->add_option("--interval", plot_interval, "a:b")->required();

  auto* tica_cmd = app.add_subcommand("tica", "Topographic ICA baseline");
  std::string tica_input, tica_out;
  long long tica_width = 9, tica_iters = 10000, tica_seed = 0, tica_words = -1;
  double tica_step_arg = 0.1;
  bool tica_lower = false, tica_cyclic = false;
  tica_cmd->add_option("--input", tica_input)->required();
  tica_cmd->add_option("--out", tica_out)->required();
  tica_cmd->add_option("--width", tica_width, "neighborhood width, e.g. 9 or 75");
  tica_cmd->add_option("--iterations", tica_iters);
  tica_cmd->add_option("--step", tica_step_arg);
  tica_cmd->add_option("--max-words", tica_words);
  tica_cmd->add_flag("--lowercase", tica_lower);
  tica_cmd->add_flag("--cyclic", tica_cyclic, "wrap the neighborhood at the ends");
  tica_cmd->add_option("--seed", tica_seed);

  auto* report_cmd = app.add_subcommand("report", "Consolidate a finished run directory");
  std::string report_dir;
  report_cmd->add_option("--run", report_dir)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (pipeline->parsed()) {
      RunConfig config;
      if (!config_path.empty()) config = config_from_json_file(config_path);
      if (pipeline->count("--input")) config.input = input;
      if (pipeline->count("--out")) config.output_dir = out_dir;
      if (pipeline->count("--method")) config.method = parse_method(method);
      if (pipeline->count("--max-words")) config.max_words = max_words;
      if (pipeline->count("--lowercase")) config.lowercase = lowercase;
      if (pipeline->count("--k")) config.k = k;
      if (pipeline->count("--alpha")) config.alpha = alpha;
      if (pipeline->count("--p")) config.p_list.assign(p_list.begin(), p_list.end());
      if (pipeline->count("--seed")) config.seed = static_cast<std::uint64_t>(seed);
      if (pipeline->count("--ica-max-iter")) config.ica_max_iter = static_cast<int>(ica_max_iter);
      if (pipeline->count("--ica-tol")) config.ica_tol = ica_tol;
      if (pipeline->count("--tica-iterations")) {
        config.tica_iterations = static_cast<int>(tica_iterations);
      }
      if (pipeline->count("--tica-step")) config.tica_step = tica_step;
      if (pipeline->count("--reduction")) {
        config.reduction = reduction == "projection" ? ReductionKind::projection
                           : reduction == "prefix"   ? ReductionKind::prefix
                                                     : throw CLI::ValidationError(
                                                           "reduction must be projection|prefix");
      }
      if (pipeline->count("--no-metrics")) config.metrics = false;
      if (pipeline->count("--text-artifacts")) config.text_artifacts = true;
      for (const auto& text : intervals) config.plot_intervals.push_back(parse_interval(text));
      for (const auto& p : analogy) config.analogy_paths.emplace_back(p);
      for (const auto& p : similarity) config.similarity_paths.emplace_back(p);
      for (const auto& p : categorization) config.categorization_paths.emplace_back(p);
      if (pipeline->count("--k-grid")) config.k_grid.assign(k_grid.begin(), k_grid.end());
      return cmd_pipeline(config);
    }
    if (ica_cmd->parsed()) {
      ica_args.input = ica_input;
      ica_args.out_dir = ica_out;
      if (ica_words >= 0) ica_args.max_words = ica_words;
      ica_args.lowercase = ica_lower;
      ica_args.max_iter = static_cast<int>(ica_cap);
      ica_args.tol = ica_tolerance;
      ica_args.seed = static_cast<std::uint64_t>(ica_seed);
      return cmd_ica(ica_args);
    }
    if (tour_cmd->parsed()) {
      TourArgs args;
      args.s_path = tour_s;
      args.out_dir = tour_out;
      args.k = tour_k;
      args.seed = static_cast<std::uint64_t>(tour_seed);
      return cmd_tour(args);
    }
    if (reduce_cmd->parsed()) {
      ReduceArgs args;
      args.t_path = reduce_t;
      args.gamma_path = reduce_gamma;
      args.out_dir = reduce_out;
      args.p_list.assign(reduce_p.begin(), reduce_p.end());
      args.alpha = reduce_alpha;
      args.kind = reduce_kind == "prefix" ? ReductionKind::prefix : ReductionKind::projection;
      args.signed_weights = reduce_signed;
      args.dump_f = reduce_dump_f;
      return cmd_reduce(args);
    }
    if (metrics_cmd->parsed()) {
      MetricsArgs args;
      args.t_path = metrics_t;
      args.out_dir = metrics_out;
      args.k = metrics_k;
      for (const auto& text : metrics_intervals) args.intervals.push_back(parse_interval(text));
      return cmd_metrics(args);
    }
    if (eval_cmd->parsed()) {
      EvalArgs args;
      args.t_path = eval_t;
      args.gamma_path = eval_gamma;
      args.out_dir = eval_out;
      args.dims.assign(eval_dims.begin(), eval_dims.end());
      args.alpha = eval_alpha;
      args.kind = eval_kind == "projection" ? ReductionKind::projection : ReductionKind::prefix;
      args.method = eval_method;
      args.seed = static_cast<std::uint64_t>(eval_seed);
      for (const auto& p : eval_an) args.analogy_paths.emplace_back(p);
      for (const auto& p : eval_sim) args.similarity_paths.emplace_back(p);
      for (const auto& p : eval_cat) args.categorization_paths.emplace_back(p);
      return cmd_eval(args);
    }
    if (plot_cmd->parsed()) {
      PlotArgs args;
      args.t_path = plot_t;
      args.out_dir = plot_out;
      args.interval = parse_interval(plot_interval);
      return cmd_plot(args);
    }
    if (tica_cmd->parsed()) {
      TicaArgs args;
      args.input = tica_input;
      args.out_dir = tica_out;
      if (tica_words >= 0) args.max_words = tica_words;
      args.lowercase = tica_lower;
      args.width = tica_width;
      args.iterations = static_cast<int>(tica_iters);
      args.step = tica_step_arg;
      args.cyclic = tica_cyclic;
      args.seed = static_cast<std::uint64_t>(tica_seed);
      return cmd_tica(args);
    }
    if (report_cmd->parsed()) {
      return cmd_report(report_dir);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
