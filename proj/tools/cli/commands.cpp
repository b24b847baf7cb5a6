#include "cli/commands.hpp"

#include <fstream>
#include <iostream>
#include <map>

#include <json.hpp>

#include "axistour/axis_tour.hpp"
#include "axistour/continuity.hpp"
#include "axistour/dimred.hpp"
#include "axistour/embedding.hpp"
#include "axistour/errors.hpp"
#include "axistour/fastica.hpp"
#include "axistour/rng.hpp"
#include "axistour/task_eval.hpp"
#include "axistour/tica.hpp"
#include "axistour/viz.hpp"
#include "axistour/whiten.hpp"
#include "cli/manifest.hpp"

namespace axistour::cli {

namespace {

// Seed streams; every stage draws from the master seed through its own
// counter so stages stay independent.
enum SeedStream : std::uint64_t {
  kStreamIca = 0,
  kStreamTour = 1,
  kStreamRandomOrder = 2,
  kStreamEval = 3,
  kStreamTica = 4,
  kStreamKGrid = 5,
};

struct MetricRow {
  std::string name;
  double value;
};

void write_metric_csv(const std::vector<MetricRow>& rows, const std::filesystem::path& path) {
  std::ofstream file(path);
  if (!file) throw IoError("cannot write " + path.string());
  file << "metric,value\n";
  for (const auto& row : rows) {
    file << row.name << ',' << format_double(row.value) << '\n';
  }
}

void write_metric_json(const std::vector<MetricRow>& rows, const std::filesystem::path& path) {
  nlohmann::json j;
  for (const auto& row : rows) j[row.name] = row.value;
  std::ofstream file(path);
  if (!file) throw IoError("cannot write " + path.string());
  file << j.dump(2) << '\n';
}

void write_histogram_csv(const Histogram& histogram, const std::filesystem::path& path) {
  std::ofstream file(path);
  if (!file) throw IoError("cannot write " + path.string());
  file << "bin_lo,bin_hi,count\n";
  const double width =
      (histogram.hi - histogram.lo) / static_cast<double>(histogram.counts.size());
  for (std::size_t b = 0; b < histogram.counts.size(); ++b) {
    file << format_double(histogram.lo + width * static_cast<double>(b)) << ','
         << format_double(histogram.lo + width * static_cast<double>(b + 1)) << ','
         << histogram.counts[b] << '\n';
  }
  file << "underflow,," << histogram.underflow << '\n';
  file << "overflow,," << histogram.overflow << '\n';
}

void write_axis_words(const EmbeddingMatrix& t, const std::filesystem::path& path, Index m = 5) {
  std::ofstream file(path);
  if (!file) throw IoError("cannot write " + path.string());
  const Index count = std::min<Index>(m, t.rows());
  const EmbeddingMatrix t_hat = t.normalized ? t : normalize_rows(t);
  file << "axis\twords\n";
  for (Index axis = 0; axis < t.cols(); ++axis) {
    file << axis << '\t';
    const auto words = top_words(t_hat, t.vocab, axis, count);
    for (std::size_t i = 0; i < words.size(); ++i) {
      if (i) file << ' ';
      file << words[i];
    }
    file << '\n';
  }
}

void write_eval_csv(const std::vector<EvalReport>& reports, const std::filesystem::path& path) {
  std::ofstream file(path);
  if (!file) throw IoError("cannot write " + path.string());
  file << "task,dataset,method,p,score,coverage,items_scored,items_total\n";
  for (const auto& r : reports) {
    file << r.task << ',' << r.dataset << ',' << r.method << ',' << r.p << ','
         << format_double(r.score) << ',' << format_double(r.coverage) << ',' << r.items_scored
         << ',' << r.items_total << '\n';
  }
}

void write_eval_json(const std::vector<EvalReport>& reports, const std::filesystem::path& path) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) {
    arr.push_back({{"task", r.task},
                   {"dataset", r.dataset},
                   {"method", r.method},
                   {"p", r.p},
                   {"score", r.score},
                   {"coverage", r.coverage},
                   {"items_scored", r.items_scored},
                   {"items_total", r.items_total}});
  }
  std::ofstream file(path);
  if (!file) throw IoError("cannot write " + path.string());
  file << arr.dump(2) << '\n';
}

EmbeddingMatrix reduce_for_method(const EmbeddingMatrix& t, const Vector& gamma, Index p,
                                  double alpha, ReductionKind kind, Method method) {
  if (kind == ReductionKind::prefix) return prefix_axes(t, p);
  const ProjectionMode mode = method == Method::randorder ? ProjectionMode::random_order
                              : method == Method::skewsort ? ProjectionMode::skewness_sort
                                                           : ProjectionMode::axis_tour;
  const ProjectionMatrix projection = build_projection(gamma, p, alpha, mode);
  EmbeddingMatrix out;
  out.vocab = t.vocab;
  out.data = t.data * projection.f;
  out.centered = t.centered;
  out.normalized = false;
  return out;
}

int print_error(const std::string& what, const std::string& message, int code) {
  std::cerr << what << ": " << message << '\n';
  return code;
}

template <typename Fn>
int guarded(const char* what, Fn&& fn) {
  try {
    return fn();
  } catch (const NumericError& e) {
    return print_error(what, e.what(), kExitNumeric);
  } catch (const DataError& e) {
    return print_error(what, e.what(), kExitData);
  } catch (const Error& e) {
    return print_error(what, e.what(), kExitData);
  } catch (const std::exception& e) {
    return print_error(what, e.what(), kExitData);
  }
}

std::vector<EvalReport> run_eval_tasks(const EmbeddingMatrix& embedding, const std::string& method,
                                       std::uint64_t kmeans_seed,
                                       const std::vector<std::filesystem::path>& analogy_paths,
                                       const std::vector<std::filesystem::path>& similarity_paths,
                                       const std::vector<std::filesystem::path>& categorization_paths) {
  std::vector<EvalReport> reports;
  for (const auto& path : analogy_paths) {
    EvalReport r = eval_analogy(embedding, load_analogy_dataset(resolve_data_path(path)));
    r.method = method;
    reports.push_back(std::move(r));
  }
  for (const auto& path : similarity_paths) {
    EvalReport r = eval_similarity(embedding, load_similarity_dataset(resolve_data_path(path)));
    r.method = method;
    reports.push_back(std::move(r));
  }
  for (const auto& path : categorization_paths) {
    EvalReport r = eval_categorization(
        embedding, load_categorization_dataset(resolve_data_path(path)), {.seed = kmeans_seed});
    r.method = method;
    reports.push_back(std::move(r));
  }
  return reports;
}

}  // namespace

PipelineOutcome run_pipeline(const RunConfig& config) {
  PipelineOutcome outcome;
  if (config.input.empty() || config.output_dir.empty() || config.k < 1 || config.alpha < 0) {
    outcome.exit_code = kExitUsage;
    outcome.failed_stage = "config";
    outcome.message = "pipeline needs --input, --out, k >= 1 and alpha >= 0";
    return outcome;
  }
  if (config.method == Method::pca &&
      config.effective_reduction() == ReductionKind::projection) {
    outcome.exit_code = kExitUsage;
    outcome.failed_stage = "config";
    outcome.message = "projection reduction is undefined for the pca baseline; use prefix";
    return outcome;
  }

  std::string stage = "init";
  try {
    std::filesystem::create_directories(config.output_dir);
    ManifestWriter manifest(config.output_dir);
    manifest.set_config_json(to_json(config));
    auto save_artifact = [&](const std::filesystem::path& path) { manifest.record(path); };

    stage = "load";
    LoadOptions load_options;
    load_options.max_words = config.max_words;
    load_options.lowercase = config.lowercase;
    const EmbeddingMatrix raw = load_text_embeddings(resolve_data_path(config.input), load_options);
    manifest.add_stage("load");

    stage = "center";
    const EmbeddingMatrix centered = center_columns(raw);
    manifest.add_stage("center");

    stage = "whiten";
    const WhitenResult white = pca_whiten(centered);
    manifest.add_stage("whiten");

    EmbeddingMatrix ordered;  // the matrix T every later stage consumes
    switch (config.method) {
      case Method::pca: {
        // Whitened PCA baseline: columns already follow descending eigenvalue.
        ordered = white.z;
        break;
      }
      case Method::axistour:
      case Method::skewsort:
      case Method::randorder: {
        stage = "fastica";
        FastIcaOptions ica_options;
        ica_options.max_iter = config.ica_max_iter;
        ica_options.tol = config.ica_tol;
        ica_options.seed = derive_seed(config.seed, kStreamIca);
        const IcaResult ica = fastica(white.z, ica_options);
        manifest.add_stage("fastica");
        {
          const auto b_path = config.output_dir / "b.txt";
          save_matrix_text(compose_unmixing(white.model, ica.b), b_path);
          save_artifact(b_path);
          const auto s_path = config.output_dir / "s.bin";
          save_binary_cache(ica.s, s_path);
          save_artifact(s_path);
        }
        if (!ica.converged) {
          std::cerr << "note: fastica hit max_iter (" << config.ica_max_iter
                    << ") before tolerance\n";
        }

        if (config.method == Method::axistour) {
          stage = "tour";
          const AxisEmbeddingSet axes = axis_embeddings(ica.s, config.k);
          const TourOrder tour = anchor_tour(
              solve_axis_tour(axes, derive_seed(config.seed, kStreamTour)), axes);
          const auto tour_path = config.output_dir / "tour.txt";
          save_tour(tour, tour_path);
          save_artifact(tour_path);
          manifest.add_stage("tour");
          stage = "apply";
          ordered = apply_tour(ica.s, tour);
          manifest.add_stage("apply");
        } else if (config.method == Method::skewsort) {
          stage = "order";
          ordered = permute_columns(ica.s, skewness_sort_order(ica.s));
          manifest.add_stage("skewness_sort");
        } else {
          stage = "order";
          const auto [perm, signs] =
              random_order(ica.s, derive_seed(config.seed, kStreamRandomOrder));
          ordered = permute_columns(ica.s, perm, &signs);
          manifest.add_stage("random_order");
        }
        break;
      }
      case Method::tica9:
      case Method::tica75: {
        stage = "tica";
        TicaOptions tica_options;
        tica_options.width = config.method == Method::tica9 ? 9 : 75;
        tica_options.iterations = config.tica_iterations;
        tica_options.step = config.tica_step;
        tica_options.cyclic = config.tica_cyclic;
        tica_options.seed = derive_seed(config.seed, kStreamTica);
        const TicaModel model = tica_fit(white.z, tica_options);
        manifest.add_stage("tica");
        {
          const auto w_path = config.output_dir / "w.txt";
          save_matrix_text(model.w, w_path);
          save_artifact(w_path);
          const auto trace_path = config.output_dir / "tica_likelihood.csv";
          std::ofstream trace(trace_path);
          trace << "iteration,log_likelihood\n";
          for (std::size_t i = 0; i < model.likelihood_trace.size(); ++i) {
            trace << i << ',' << format_double(model.likelihood_trace[i]) << '\n';
          }
          trace.close();
          save_artifact(trace_path);
        }
        ordered = orient_positive_skew(tica_transform(white.z, model)).first;
        break;
      }
    }

    stage = "skewness";
    const Vector gamma = column_skewness(ordered.data);
    {
      const auto gamma_path = config.output_dir / "skewness.csv";
      save_vector_csv(gamma, gamma_path, "skewness");
      save_artifact(gamma_path);
    }

    {
      const auto t_path = config.output_dir / "t.bin";
      save_binary_cache(ordered, t_path);
      save_artifact(t_path);
      if (config.text_artifacts) {
        const auto text_path = config.output_dir / "t.txt";
        save_text_embeddings(ordered, text_path);
        save_artifact(text_path);
      }
      const auto words_path = config.output_dir / "axis_words.txt";
      write_axis_words(ordered, words_path);
      save_artifact(words_path);
    }

    if (config.metrics) {
      stage = "metrics";
      const AxisEmbeddingSet axes = axis_embeddings(ordered, config.k);
      const auto order = identity_order(axes.dims());
      const ContinuityReport report = continuity_report(axes, order);
      std::vector<MetricRow> rows;
      rows.push_back({"c_d", report.c_d});
      rows.push_back({"cosine_variance", report.variance});
      rows.push_back({"wrap_cosine", report.wrap});
      try {
        rows.push_back(
            {"skewness_continuity_spearman", skewness_continuity_correlation(axes, order, gamma)});
      } catch (const DataError&) {
        // Undefined on constant inputs; omit the row.
      }
      const EmbeddingMatrix normalized = normalize_rows(ordered);
      for (const auto& interval : config.plot_intervals) {
        const std::string suffix =
            std::to_string(interval.first) + "_" + std::to_string(interval.second);
        rows.push_back({"c_I_" + suffix, interval_continuity(axes, interval)});
        try {
          const ProjectionFrame frame = project_2d(normalized, interval);
          rows.push_back({"d_I_" + suffix, scatter_quality(frame)});
        } catch (const EmptyShowSet&) {
        }
      }
      const auto metrics_csv = config.output_dir / "metrics.csv";
      write_metric_csv(rows, metrics_csv);
      save_artifact(metrics_csv);
      const auto metrics_json = config.output_dir / "metrics.json";
      write_metric_json(rows, metrics_json);
      save_artifact(metrics_json);
      const auto histogram_csv = config.output_dir / "histogram.csv";
      write_histogram_csv(report.histogram, histogram_csv);
      save_artifact(histogram_csv);
      manifest.add_stage("metrics");
    }

    if (!config.k_grid.empty() && config.method == Method::axistour) {
      stage = "k_grid";
      const EmbeddingMatrix sources = load_binary_cache(config.output_dir / "s.bin");
      std::map<Index, EmbeddingMatrix> toured_by_k1;
      for (std::size_t i = 0; i < config.k_grid.size(); ++i) {
        const Index k1 = config.k_grid[i];
        const AxisEmbeddingSet axes = axis_embeddings(sources, k1);
        const TourOrder tour = anchor_tour(
            solve_axis_tour(axes, derive_seed(config.seed, kStreamKGrid + i)), axes);
        toured_by_k1.emplace(k1, apply_tour(sources, tour));
      }
      const KSensitivity grid = k_sensitivity(toured_by_k1, config.k_grid);
      const auto grid_path = config.output_dir / "k_sensitivity.csv";
      std::ofstream file(grid_path);
      file << "k1";
      for (Index k2 : grid.k2) file << ",c_k2_" << k2;
      file << ",M\n";
      for (std::size_t row = 0; row < grid.k1.size(); ++row) {
        file << grid.k1[row];
        for (Index col = 0; col < grid.c.cols(); ++col) {
          file << ',' << format_double(grid.c(static_cast<Index>(row), col));
        }
        file << ',' << format_double(grid.m(static_cast<Index>(row))) << '\n';
      }
      file.close();
      save_artifact(grid_path);
      manifest.add_stage("k_grid");
    }

    if (!config.p_list.empty()) {
      stage = "reduce";
      const ReductionKind kind = config.effective_reduction();
      for (Index p : config.p_list) {
        const EmbeddingMatrix reduced =
            reduce_for_method(ordered, gamma, p, config.alpha, kind, config.method);
        const auto reduced_path =
            config.output_dir / ("reduced_p" + std::to_string(p) + ".bin");
        save_binary_cache(reduced, reduced_path);
        save_artifact(reduced_path);
        if (config.text_artifacts && kind == ReductionKind::projection) {
          const ProjectionMode mode = config.method == Method::randorder
                                          ? ProjectionMode::random_order
                                      : config.method == Method::skewsort
                                          ? ProjectionMode::skewness_sort
                                          : ProjectionMode::axis_tour;
          const auto f_path = config.output_dir / ("f_p" + std::to_string(p) + ".csv");
          save_projection_csv(build_projection(gamma, p, config.alpha, mode), f_path);
          save_artifact(f_path);
        }
      }
      manifest.add_stage("reduce");
    }

    const bool has_eval_data = !config.analogy_paths.empty() ||
                               !config.similarity_paths.empty() ||
                               !config.categorization_paths.empty();
    if (has_eval_data) {
      stage = "eval";
      std::vector<EvalReport> reports;
      std::vector<Index> dims = config.p_list;
      if (dims.empty()) dims.push_back(ordered.cols());
      const ReductionKind kind = config.effective_reduction();
      for (Index p : dims) {
        const EmbeddingMatrix reduced =
            reduce_for_method(ordered, gamma, p, config.alpha, kind, config.method);
        auto batch = run_eval_tasks(reduced, method_name(config.method),
                                    derive_seed(config.seed, kStreamEval), config.analogy_paths,
                                    config.similarity_paths, config.categorization_paths);
        for (auto& r : batch) r.p = p;
        reports.insert(reports.end(), batch.begin(), batch.end());
      }
      const auto eval_csv = config.output_dir / "eval.csv";
      write_eval_csv(reports, eval_csv);
      save_artifact(eval_csv);
      const auto eval_json = config.output_dir / "eval.json";
      write_eval_json(reports, eval_json);
      save_artifact(eval_json);
      manifest.add_stage("eval");
    }

    if (!config.plot_intervals.empty()) {
      stage = "plot";
      const EmbeddingMatrix normalized = normalize_rows(ordered);
      for (const auto& interval : config.plot_intervals) {
        const ProjectionFrame frame = project_2d(normalized, interval);
        const std::string suffix =
            std::to_string(interval.first) + "_" + std::to_string(interval.second);
        const auto svg_path = config.output_dir / ("plot_" + suffix + ".svg");
        emit_scatter(frame, ordered.vocab, ScatterFormat::svg, svg_path);
        save_artifact(svg_path);
        const auto csv_path = config.output_dir / ("plot_" + suffix + ".csv");
        emit_scatter(frame, ordered.vocab, ScatterFormat::csv, csv_path);
        save_artifact(csv_path);
      }
      manifest.add_stage("plot");
    }

    stage = "manifest";
    manifest.write();
  } catch (const NumericError& e) {
    outcome.exit_code = kExitNumeric;
    outcome.failed_stage = stage;
    outcome.message = e.what();
  } catch (const Error& e) {
    outcome.exit_code = kExitData;
    outcome.failed_stage = stage;
    outcome.message = e.what();
  } catch (const std::exception& e) {
    outcome.exit_code = kExitData;
    outcome.failed_stage = stage;
    outcome.message = e.what();
  }
  return outcome;
}

int cmd_pipeline(const RunConfig& config) {
  const PipelineOutcome outcome = run_pipeline(config);
  if (outcome.exit_code != kExitOk) {
    std::cerr << "pipeline failed at stage '" << outcome.failed_stage
              << "': " << outcome.message << '\n';
  }
  return outcome.exit_code;
}

int cmd_report(const std::filesystem::path& run_dir) {
  return guarded("report", [&]() {
    const auto manifest_path = run_dir / "manifest.json";
    if (!std::filesystem::exists(manifest_path)) {
      throw DataError("no manifest.json in " + run_dir.string());
    }
    nlohmann::json manifest;
    {
      std::ifstream file(manifest_path);
      try {
        file >> manifest;
      } catch (const nlohmann::json::exception& e) {
        throw DataError("corrupt manifest: " + std::string(e.what()));
      }
    }

    nlohmann::json report;
    report["config"] = manifest.value("config", nlohmann::json::object());
    report["stages"] = manifest.value("stages", nlohmann::json::array());

    std::vector<std::string> csv_lines;
    const auto metrics_path = run_dir / "metrics.json";
    if (std::filesystem::exists(metrics_path)) {
      std::ifstream file(metrics_path);
      nlohmann::json metrics;
      file >> metrics;
      report["metrics"] = metrics;
      for (const auto& [key, value] : metrics.items()) {
        csv_lines.push_back(key + "," + format_double(value.get<double>()));
      }
    }
    const auto eval_path = run_dir / "eval.json";
    if (std::filesystem::exists(eval_path)) {
      std::ifstream file(eval_path);
      nlohmann::json eval;
      file >> eval;
      report["tasks"] = eval;
      for (const auto& entry : eval) {
        csv_lines.push_back(entry["task"].get<std::string>() + "_" +
                            entry["dataset"].get<std::string>() + "_p" +
                            std::to_string(entry["p"].get<Index>()) + "," +
                            format_double(entry["score"].get<double>()));
      }
    }
    const auto histogram_path = run_dir / "histogram.csv";
    if (std::filesystem::exists(histogram_path)) {
      report["histogram_file"] = "histogram.csv";
    }

    {
      std::ofstream file(run_dir / "report.json");
      if (!file) throw IoError("cannot write report.json");
      file << report.dump(2) << '\n';
    }
    {
      std::ofstream file(run_dir / "report.csv");
      if (!file) throw IoError("cannot write report.csv");
      file << "metric,value\n";
      for (const auto& line : csv_lines) file << line << '\n';
    }
    return kExitOk;
  });
}

int cmd_ica(const IcaArgs& args) {
  return guarded("ica", [&]() {
    std::filesystem::create_directories(args.out_dir);
    LoadOptions load_options;
    load_options.max_words = args.max_words;
    load_options.lowercase = args.lowercase;
    const EmbeddingMatrix raw = load_text_embeddings(resolve_data_path(args.input), load_options);
    const EmbeddingMatrix centered = center_columns(raw);
    const WhitenResult white = pca_whiten(centered);

    FastIcaOptions options;
    options.max_iter = args.max_iter;
    options.tol = args.tol;
    options.seed = derive_seed(args.seed, kStreamIca);
    const IcaResult ica = fastica(white.z, options);

    save_binary_cache(ica.s, args.out_dir / "s.bin");
    save_matrix_text(compose_unmixing(white.model, ica.b), args.out_dir / "b.txt");
    save_vector_csv(ica.skewness, args.out_dir / "skewness.csv", "skewness");
    save_whitening_model(white.model, args.out_dir / "whitening.txt");
    std::cout << "ica: " << (ica.converged ? "converged" : "max_iter reached") << " after "
              << ica.iterations_used << " iterations\n";
    return kExitOk;
  });
}

int cmd_tour(const TourArgs& args) {
  return guarded("tour", [&]() {
    std::filesystem::create_directories(args.out_dir);
    const EmbeddingMatrix sources = load_binary_cache(args.s_path);
    const AxisEmbeddingSet axes = axis_embeddings(sources, args.k);
    const TourOrder tour =
        anchor_tour(solve_axis_tour(axes, derive_seed(args.seed, kStreamTour)), axes);
    save_tour(tour, args.out_dir / "tour.txt");
    const EmbeddingMatrix ordered = apply_tour(sources, tour);
    save_binary_cache(ordered, args.out_dir / "t.bin");
    save_vector_csv(column_skewness(ordered.data), args.out_dir / "skewness.csv", "skewness");
    write_axis_words(ordered, args.out_dir / "axis_words.txt");
    std::cout << "tour: score " << format_double(tour.score) << " over " << axes.dims()
              << " axes\n";
    return kExitOk;
  });
}

int cmd_reduce(const ReduceArgs& args) {
  return guarded("reduce", [&]() {
    std::filesystem::create_directories(args.out_dir);
    const EmbeddingMatrix ordered = load_binary_cache(args.t_path);
    const Vector gamma = args.gamma_path.empty() ? column_skewness(ordered.data)
                                                 : load_vector_csv(args.gamma_path);
    for (Index p : args.p_list) {
      EmbeddingMatrix reduced;
      if (args.kind == ReductionKind::prefix) {
        reduced = prefix_axes(ordered, p);
      } else {
        const ProjectionMode mode =
            args.signed_weights ? ProjectionMode::random_order : ProjectionMode::axis_tour;
        const ProjectionMatrix projection = build_projection(gamma, p, args.alpha, mode);
        reduced.vocab = ordered.vocab;
        reduced.data = ordered.data * projection.f;
        reduced.centered = ordered.centered;
        if (args.dump_f) {
          save_projection_csv(projection, args.out_dir / ("f_p" + std::to_string(p) + ".csv"));
        }
      }
      save_binary_cache(reduced, args.out_dir / ("reduced_p" + std::to_string(p) + ".bin"));
    }
    return kExitOk;
  });
}

int cmd_metrics(const MetricsArgs& args) {
  return guarded("metrics", [&]() {
    std::filesystem::create_directories(args.out_dir);
    const EmbeddingMatrix ordered = load_binary_cache(args.t_path);
    const AxisEmbeddingSet axes = axis_embeddings(ordered, args.k);
    const auto order = identity_order(axes.dims());
    const ContinuityReport report = continuity_report(axes, order);

    std::vector<MetricRow> rows;
    rows.push_back({"c_d", report.c_d});
    rows.push_back({"cosine_variance", report.variance});
    rows.push_back({"wrap_cosine", report.wrap});
    try {
      const Vector gamma = column_skewness(ordered.data);
      rows.push_back(
          {"skewness_continuity_spearman", skewness_continuity_correlation(axes, order, gamma)});
    } catch (const DataError&) {
    }
    const EmbeddingMatrix normalized = normalize_rows(ordered);
    for (const auto& interval : args.intervals) {
      const std::string suffix =
          std::to_string(interval.first) + "_" + std::to_string(interval.second);
      rows.push_back({"c_I_" + suffix, interval_continuity(axes, interval)});
      try {
        rows.push_back({"d_I_" + suffix, scatter_quality(project_2d(normalized, interval))});
      } catch (const EmptyShowSet&) {
      }
    }
    write_metric_csv(rows, args.out_dir / "metrics.csv");
    write_metric_json(rows, args.out_dir / "metrics.json");
    write_histogram_csv(report.histogram, args.out_dir / "histogram.csv");
    return kExitOk;
  });
}

int cmd_eval(const EvalArgs& args) {
  return guarded("eval", [&]() {
    std::filesystem::create_directories(args.out_dir);
    const EmbeddingMatrix ordered = load_binary_cache(args.t_path);
    const Vector gamma = args.gamma_path.empty() ? column_skewness(ordered.data)
                                                 : load_vector_csv(args.gamma_path);
    std::vector<Index> dims = args.dims;
    if (dims.empty()) dims.push_back(ordered.cols());

    std::vector<EvalReport> reports;
    for (Index p : dims) {
      EmbeddingMatrix reduced;
      if (args.kind == ReductionKind::prefix) {
        reduced = prefix_axes(ordered, p);
      } else {
        reduced = reduce_dimensions(ordered, gamma, p, args.alpha);
      }
      auto batch = run_eval_tasks(reduced, args.method, derive_seed(args.seed, kStreamEval),
                                  args.analogy_paths, args.similarity_paths,
                                  args.categorization_paths);
      for (auto& r : batch) r.p = p;
      reports.insert(reports.end(), batch.begin(), batch.end());
    }
    write_eval_csv(reports, args.out_dir / "eval.csv");
    write_eval_json(reports, args.out_dir / "eval.json");
    return kExitOk;
  });
}

int cmd_plot(const PlotArgs& args) {
  return guarded("plot", [&]() {
    std::filesystem::create_directories(args.out_dir);
    const EmbeddingMatrix ordered = load_binary_cache(args.t_path);
    const EmbeddingMatrix normalized =
        ordered.normalized ? ordered : normalize_rows(ordered);
    const ProjectionFrame frame = project_2d(normalized, args.interval);
    const std::string suffix =
        std::to_string(args.interval.first) + "_" + std::to_string(args.interval.second);
    emit_scatter(frame, ordered.vocab, ScatterFormat::svg,
                 args.out_dir / ("plot_" + suffix + ".svg"));
    emit_scatter(frame, ordered.vocab, ScatterFormat::csv,
                 args.out_dir / ("plot_" + suffix + ".csv"));
    return kExitOk;
  });
}

int cmd_tica(const TicaArgs& args) {
  return guarded("tica", [&]() {
    std::filesystem::create_directories(args.out_dir);
    LoadOptions load_options;
    load_options.max_words = args.max_words;
    load_options.lowercase = args.lowercase;
    const EmbeddingMatrix raw = load_text_embeddings(resolve_data_path(args.input), load_options);
    const EmbeddingMatrix centered = center_columns(raw);
    const WhitenResult white = pca_whiten(centered);

    TicaOptions options;
    options.width = args.width;
    options.iterations = args.iterations;
    options.step = args.step;
    options.cyclic = args.cyclic;
    options.seed = derive_seed(args.seed, kStreamTica);
    const TicaModel model = tica_fit(white.z, options);

    save_matrix_text(model.w, args.out_dir / "w.txt");
    const EmbeddingMatrix sources = orient_positive_skew(tica_transform(white.z, model)).first;
    save_binary_cache(sources, args.out_dir / "t.bin");
    save_vector_csv(column_skewness(sources.data), args.out_dir / "skewness.csv", "skewness");
    write_axis_words(sources, args.out_dir / "axis_words.txt");
    std::ofstream trace(args.out_dir / "tica_likelihood.csv");
    trace << "iteration,log_likelihood\n";
    for (std::size_t i = 0; i < model.likelihood_trace.size(); ++i) {
      trace << i << ',' << format_double(model.likelihood_trace[i]) << '\n';
    }
    std::cout << "tica: log-likelihood " << format_double(model.likelihood_trace.front())
              << " -> " << format_double(model.likelihood_trace.back()) << '\n';
    return kExitOk;
  });
}

}  // namespace axistour::cli
