#include "axistour/whiten.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <fstream>

#include "axistour/errors.hpp"

namespace axistour {

WhitenResult pca_whiten(const EmbeddingMatrix& x, double eigen_floor) {
  if (!x.centered) throw DataError("pca_whiten requires a centered matrix");
  const Index n = x.rows();
  const Index d = x.cols();
  if (n <= d) throw DataError("pca_whiten requires n > d");

  WhitenResult out;
  out.model.mean = x.data.colwise().mean();
  const Matrix centered = x.data.rowwise() - out.model.mean.transpose();
  const Matrix cov = (centered.transpose() * centered) / static_cast<double>(n - 1);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
  if (solver.info() != Eigen::Success) throw NumericError("eigendecomposition failed");

  // Eigen returns ascending order; reverse to descending.
  out.model.eigenvalues = solver.eigenvalues().reverse();
  out.model.components = solver.eigenvectors().rowwise().reverse();

  const double floor =
      eigen_floor >= 0 ? eigen_floor : 1e-10 * out.model.eigenvalues(0);
  for (Index j = 0; j < d; ++j) {
    if (out.model.eigenvalues(j) < floor) {
      throw RankDeficient(out.model.eigenvalues(j), floor);
    }
  }

  // Deterministic sign: largest-magnitude entry of each component positive.
  for (Index j = 0; j < d; ++j) {
    Index arg = 0;
    double best = 0.0;
    for (Index i = 0; i < d; ++i) {
      const double a = std::abs(out.model.components(i, j));
      if (a > best) {
        best = a;
        arg = i;
      }
    }
    if (out.model.components(arg, j) < 0) out.model.components.col(j) *= -1.0;
  }

  out.z.vocab = x.vocab;
  out.z.data = centered * out.model.components *
               out.model.eigenvalues.cwiseSqrt().cwiseInverse().asDiagonal();
  out.z.centered = true;
  out.z.normalized = false;
  return out;
}

EmbeddingMatrix unwhiten(const EmbeddingMatrix& z, const WhiteningModel& model) {
  EmbeddingMatrix out;
  out.vocab = z.vocab;
  out.data = z.data * model.eigenvalues.cwiseSqrt().asDiagonal() * model.components.transpose();
  out.data.rowwise() += model.mean.transpose();
  out.centered = true;
  out.normalized = false;
  return out;
}

void save_whitening_model(const WhiteningModel& model, const std::filesystem::path& path) {
  std::ofstream file(path);
  if (!file) throw IoError("cannot write model file: " + path.string());
  const Index d = model.components.rows();
  file << d << '\n';
  auto write_row = [&](const auto& row) {
    std::string line;
    for (Index j = 0; j < row.size(); ++j) {
      if (j) line += ' ';
      line += format_double(row(j), 17);
    }
    file << line << '\n';
  };
  write_row(model.mean);
  write_row(model.eigenvalues);
  for (Index i = 0; i < d; ++i) write_row(model.components.row(i));
  if (!file) throw IoError("write failed: " + path.string());
}

WhiteningModel load_whitening_model(const std::filesystem::path& path) {
  std::ifstream file(path);
  if (!file) throw IoError("cannot open model file: " + path.string());
  Index d;
  if (!(file >> d) || d <= 0) throw DataError("bad model header: " + path.string());
  WhiteningModel model;
  model.mean.resize(d);
  model.eigenvalues.resize(d);
  model.components.resize(d, d);
  for (Index j = 0; j < d; ++j) file >> model.mean(j);
  for (Index j = 0; j < d; ++j) file >> model.eigenvalues(j);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) file >> model.components(i, j);
  }
  if (!file) throw DataError("truncated model file: " + path.string());
  return model;
}

}  // namespace axistour
