#include "axistour/fastica.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "axistour/errors.hpp"
#include "axistour/rng.hpp"

namespace axistour {

namespace {

// W <- (W W^T)^(-1/2) W, the symmetric decorrelation step.
Matrix symmetric_decorrelate(const Matrix& w) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(w * w.transpose());
  const Eigen::VectorXd inv_sqrt = solver.eigenvalues().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
  return solver.eigenvectors() * inv_sqrt.asDiagonal() * solver.eigenvectors().transpose() * w;
}

}  // namespace

IcaResult fastica(const EmbeddingMatrix& z, const FastIcaOptions& options) {
  if (options.max_iter < 1) throw DataError("fastica requires max_iter >= 1");
  if (!(options.tol > 0)) throw DataError("fastica requires tol > 0");
  const Index n = z.rows();
  const Index d = z.cols();
  if (n < 2 || d < 1) throw DataError("fastica input is too small");

  {
    const Matrix cov = sample_covariance(z.data);
    const double deviation = (cov - Matrix::Identity(d, d)).norm();
    if (deviation > 1e-3) throw NotWhitened(deviation);
  }

  auto rng = make_rng(options.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix w(d, d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) w(i, j) = gauss(rng);
  }
  w = symmetric_decorrelate(w);

  IcaResult result;
  const double inv_n = 1.0 / static_cast<double>(n);
  Matrix u(n, d), g(n, d);
  for (int iter = 0; iter < options.max_iter; ++iter) {
    u.noalias() = z.data * w.transpose();
    g = u.array().tanh();
    const Vector g_prime_mean = (1.0 - g.array().square()).matrix().colwise().mean().transpose();
    Matrix w_next = (g.transpose() * z.data) * inv_n;
    w_next.noalias() -= g_prime_mean.asDiagonal() * w;
    w_next = symmetric_decorrelate(w_next);

    const double lim =
        ((w_next * w.transpose()).diagonal().cwiseAbs().array() - 1.0).abs().maxCoeff();
    w = w_next;
    result.iterations_used = iter + 1;
    if (lim < options.tol) {
      result.converged = true;
      break;
    }
  }

  EmbeddingMatrix sources;
  sources.vocab = z.vocab;
  sources.data = z.data * w.transpose();
  sources.centered = z.centered;
  sources.normalized = false;

  auto [oriented, flips] = orient_positive_skew(sources);
  result.s = std::move(oriented);
  result.b = w.transpose() * flips.asDiagonal();
  result.skewness = column_skewness(result.s.data);
  return result;
}

Vector column_skewness(const Eigen::Ref<const Matrix>& m) {
  const Index n = m.rows();
  const Index d = m.cols();
  if (n < 3) throw DataError("column_skewness requires at least 3 samples");
  Vector out(d);
  for (Index j = 0; j < d; ++j) {
    const double mean = m.col(j).mean();
    const Eigen::ArrayXd centered = m.col(j).array() - mean;
    const double m2 = centered.square().mean();
    if (m2 <= 0.0) throw DegenerateColumn(static_cast<std::size_t>(j));
    const double m3 = centered.cube().mean();
    out(j) = m3 / std::pow(m2, 1.5);
  }
  return out;
}

std::pair<EmbeddingMatrix, Vector> orient_positive_skew(const EmbeddingMatrix& s) {
  EmbeddingMatrix out = s;
  Vector flips = Vector::Ones(s.cols());
  for (Index j = 0; j < s.cols(); ++j) {
    // Degenerate (constant) columns count as zero skewness: no flip.
    const double mean = s.data.col(j).mean();
    const double m3 = (s.data.col(j).array() - mean).cube().mean();
    if (m3 < 0) {
      flips(j) = -1.0;
      out.data.col(j) *= -1.0;
    }
  }
  return {std::move(out), std::move(flips)};
}

Matrix compose_unmixing(const WhiteningModel& model, const Matrix& b_white) {
  return model.components * model.eigenvalues.cwiseSqrt().cwiseInverse().asDiagonal() * b_white;
}

}  // namespace axistour
