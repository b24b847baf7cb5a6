#include "axistour/tica.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "axistour/errors.hpp"
#include "axistour/rng.hpp"

namespace axistour {

namespace {

constexpr double kEnergyClamp = 1e-12;

std::vector<double> self_convolve(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

Matrix symmetric_orthonormalize(const Matrix& w) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(w * w.transpose());
  const Eigen::VectorXd inv_sqrt =
      solver.eigenvalues().cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
  return solver.eigenvectors() * inv_sqrt.asDiagonal() * solver.eigenvectors().transpose() * w;
}

}  // namespace

NeighborhoodMatrix neighborhood_matrix(Index d, Index width, bool cyclic) {
  if (width < 1 || width > d) throw DataError("neighborhood width out of range");
  const std::vector<double> rect(static_cast<std::size_t>(width), 1.0);
  const std::vector<double> filter = self_convolve(self_convolve(rect, rect), rect);
  const Index length = static_cast<Index>(filter.size());  // 3*width - 2
  const Index center = (length - 1) / 2;

  NeighborhoodMatrix out;
  out.width = width;
  out.h = Matrix::Zero(d, d);
  for (Index l = 0; l < d; ++l) {
    for (Index offset = -center; offset < length - center; ++offset) {
      Index m = l + offset;
      if (cyclic) {
        m = ((m % d) + d) % d;
      } else if (m < 0 || m >= d) {
        continue;
      }
      out.h(l, m) += filter[static_cast<std::size_t>(offset + center)];
    }
  }
  // Even widths have no symmetric filter center; average out the half-step.
  out.h = ((out.h + out.h.transpose()) / 2.0).eval();
  return out;
}

double approx_log_likelihood(const Matrix& s, const NeighborhoodMatrix& h, double beta_half,
                             double beta_zero) {
  const Matrix energy = s.array().square().matrix() * h.h;  // h is symmetric
  const double mean_sqrt = energy.array().max(0.0).sqrt().rowwise().sum().mean();
  return -beta_half * mean_sqrt + beta_zero * static_cast<double>(s.cols());
}

TicaModel tica_fit(const EmbeddingMatrix& z, const TicaOptions& options) {
  if (!(options.step > 0)) throw DataError("tica_fit requires step > 0");
  if (options.iterations < 0) throw DataError("tica_fit requires iterations >= 0");
  const Index n = z.rows();
  const Index d = z.cols();
  {
    const Matrix cov = sample_covariance(z.data);
    const double deviation = (cov - Matrix::Identity(d, d)).norm();
    if (deviation > 1e-3) throw NotWhitened(deviation);
  }
  const NeighborhoodMatrix neighborhood = neighborhood_matrix(d, options.width, options.cyclic);

  TicaModel model;
  model.width = options.width;
  model.step = options.step;
  model.iterations = options.iterations;

  auto rng = make_rng(options.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  model.w.resize(d, d);
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) model.w(i, j) = gauss(rng);
  }
  model.w = symmetric_orthonormalize(model.w);

  const double inv_n = 1.0 / static_cast<double>(n);
  Matrix sources = z.data * model.w.transpose();
  model.likelihood_trace.push_back(
      approx_log_likelihood(sources, neighborhood, model.beta_half, model.beta_zero));

  double step = options.step;
  for (int iter = 0; iter < options.iterations; ++iter) {
    const Matrix energy = sources.array().square().matrix() * neighborhood.h;
    // g = dG/dy = -beta_half / (2 sqrt(y)), clamped near zero.
    const Matrix g =
        (-model.beta_half / (2.0 * energy.array().max(kEnergyClamp).sqrt())).matrix();
    const Matrix modulation = g * neighborhood.h;  // h symmetric
    const Matrix weighted = sources.cwiseProduct(modulation);
    const Matrix gradient = (weighted.transpose() * z.data) * inv_n;

    model.w += step * gradient;
    model.w = symmetric_orthonormalize(model.w);

    const double ortho_error =
        (model.w * model.w.transpose() - Matrix::Identity(d, d)).norm();
    model.max_orthonormality_error = std::max(model.max_orthonormality_error, ortho_error);

    sources.noalias() = z.data * model.w.transpose();
    model.likelihood_trace.push_back(
        approx_log_likelihood(sources, neighborhood, model.beta_half, model.beta_zero));

    if ((iter + 1) % 100 == 0) step *= 0.999;
  }
  return model;
}

EmbeddingMatrix tica_transform(const EmbeddingMatrix& z, const TicaModel& model) {
  EmbeddingMatrix out;
  out.vocab = z.vocab;
  out.data = z.data * model.w.transpose();
  out.centered = z.centered;
  out.normalized = false;
  return out;
}

Vector higher_order_correlation(const Matrix& s, const std::vector<Index>& order) {
  const Index d = s.cols();
  if (static_cast<Index>(order.size()) != d) throw DataError("order size mismatch");
  const Index n = s.rows();
  if (n < 2) throw DataError("higher_order_correlation needs n >= 2");
  Matrix sq = s.array().square();
  const Eigen::RowVectorXd means = sq.colwise().mean();
  sq.rowwise() -= means;
  Vector out(d - 1);
  for (Index i = 0; i + 1 < d; ++i) {
    out(i) = sq.col(order[i]).dot(sq.col(order[i + 1])) / static_cast<double>(n - 1);
  }
  return out;
}

SyntheticTopographicSource generate_topographic_sources(Index d, Index n, Index width,
                                                        std::uint64_t seed) {
  const NeighborhoodMatrix neighborhood = neighborhood_matrix(d, width);
  auto rng = make_rng(seed);
  std::exponential_distribution<double> expo(1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  SyntheticTopographicSource out;
  out.u.resize(n, d);
  out.z.resize(n, d);
  for (Index t = 0; t < n; ++t) {
    for (Index l = 0; l < d; ++l) out.u(t, l) = expo(rng);
  }
  for (Index t = 0; t < n; ++t) {
    for (Index l = 0; l < d; ++l) out.z(t, l) = gauss(rng);
  }
  out.sigma = (out.u * neighborhood.h.transpose()).array().max(0.0).sqrt();
  out.s = out.sigma.cwiseProduct(out.z);
  return out;
}

}  // namespace axistour
