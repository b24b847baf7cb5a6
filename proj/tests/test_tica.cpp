#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "axistour/continuity.hpp"
#include "axistour/errors.hpp"
#include "axistour/tica.hpp"
#include "support.hpp"

using namespace axistour;
using testsupport::make_embedding;
using testsupport::random_gaussian;

namespace {

// Brute-force oracle: h(l, m) = (rect * rect * rect)[m - l + center] with
// truncation, then symmetrization.
Matrix convolution_oracle(Index d, Index width) {
  std::vector<double> rect(static_cast<std::size_t>(width), 1.0);
  auto convolve = [](const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
  };
  const auto filter = convolve(convolve(rect, rect), rect);
  const Index length = static_cast<Index>(filter.size());
  const Index center = (length - 1) / 2;
  Matrix h = Matrix::Zero(d, d);
  for (Index l = 0; l < d; ++l) {
    for (Index m = 0; m < d; ++m) {
      const Index offset = m - l + center;
      if (offset >= 0 && offset < length) h(l, m) = filter[static_cast<std::size_t>(offset)];
    }
  }
  return ((h + h.transpose()) / 2.0).eval();
}

}  // namespace

TEST_CASE("neighborhood_matrix") {
  SUBCASE("width=1 is the identity") {
    const NeighborhoodMatrix h = neighborhood_matrix(6, 1);
    CHECK((h.h - Matrix::Identity(6, 6)).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("width=5, d=20 matches the convolution oracle exactly") {
    const NeighborhoodMatrix h = neighborhood_matrix(20, 5);
    CHECK((h.h - convolution_oracle(20, 5)).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("matches the oracle for every d <= 50, width <= 11") {
    for (Index d : {7, 13, 26, 50}) {
      for (Index width : {1, 2, 3, 5, 7, 11}) {
        if (width > d) continue;
        const NeighborhoodMatrix h = neighborhood_matrix(d, width);
        CHECK((h.h - convolution_oracle(d, width)).cwiseAbs().maxCoeff() == 0.0);
      }
    }
  }
  SUBCASE("symmetric and banded at the production widths 9 and 75") {
    for (Index width : {9, 75}) {
      const NeighborhoodMatrix h = neighborhood_matrix(300, width);
      CHECK((h.h - h.h.transpose()).cwiseAbs().maxCoeff() == 0.0);
      // Support never exceeds the filter half-width.
      const Index reach = (3 * width - 2 - 1) / 2 + 1;
      CHECK(h.h(0, reach + 1) == 0.0);
      CHECK(h.h(0, 1) > 0.0);
    }
  }
  SUBCASE("width out of range rejected") {
    CHECK_THROWS_AS(neighborhood_matrix(5, 0), DataError);
    CHECK_THROWS_AS(neighborhood_matrix(5, 6), DataError);
  }
}

TEST_CASE("approx_log_likelihood") {
  SUBCASE("all-zero sources give beta_zero * d") {
    const NeighborhoodMatrix h = neighborhood_matrix(4, 2);
    const Matrix s = Matrix::Zero(10, 4);
    CHECK(approx_log_likelihood(s, h) == doctest::Approx(1.2 * 4).epsilon(1e-12));
  }
  SUBCASE("single axis with h=1 is the closed form on a 5-sample toy") {
    NeighborhoodMatrix h;
    h.width = 1;
    h.h = Matrix::Ones(1, 1);
    Matrix s(5, 1);
    s << 0.5, -1.5, 2.0, -0.25, 1.0;
    // G(s^2) = -0.8 |s| + 1.2 per sample.
    const double expected = (-0.8 * s.cwiseAbs().sum() / 5.0) + 1.2;
    CHECK(approx_log_likelihood(s, h) == doctest::Approx(expected).epsilon(1e-12));
  }
  SUBCASE("doubling h scales the sqrt energy by sqrt(2)") {
    const Matrix s = random_gaussian(50, 6, 3);
    NeighborhoodMatrix h = neighborhood_matrix(6, 2);
    NeighborhoodMatrix h2 = h;
    h2.h *= 2.0;
    const double base = approx_log_likelihood(s, h);
    const double doubled = approx_log_likelihood(s, h2);
    // LL = -0.8 E[sum sqrt(y)] + 1.2 d, so the sqrt-energy term scales.
    const double energy_base = (1.2 * 6 - base) / 0.8;
    const double energy_doubled = (1.2 * 6 - doubled) / 0.8;
    CHECK(energy_doubled == doctest::Approx(std::sqrt(2.0) * energy_base).epsilon(1e-12));
  }
}

TEST_CASE("tica_fit") {
  SUBCASE("iterations=0 returns the seeded orthonormal initialization") {
    EmbeddingMatrix z = make_embedding(random_gaussian(500, 5, 1), true);
    z.data = (z.data.rowwise() - z.data.colwise().mean()).eval();
    const Matrix cov = sample_covariance(z.data);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    z.data = z.data * solver.operatorInverseSqrt();
    TicaOptions options;
    options.width = 3;
    options.iterations = 0;
    options.seed = 42;
    const TicaModel model = tica_fit(z, options);
    CHECK(model.likelihood_trace.size() == 1);
    CHECK((model.w * model.w.transpose() - Matrix::Identity(5, 5)).norm() < 1e-8);

    const TicaModel again = tica_fit(z, options);
    CHECK((model.w - again.w).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("gradient ascent raises the likelihood on synthetic sources") {
    const SyntheticTopographicSource synthetic = generate_topographic_sources(12, 4000, 3, 7);
    // Mix and whiten so the model has to learn something.
    const Matrix mixing = random_gaussian(12, 12, 8);
    EmbeddingMatrix x = make_embedding(synthetic.s * mixing.transpose());
    x = center_columns(x);
    const Matrix cov = sample_covariance(x.data);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    x.data = x.data * solver.operatorInverseSqrt();

    TicaOptions options;
    options.width = 3;
    options.iterations = 60;
    options.step = 0.1;
    options.seed = 3;
    const TicaModel model = tica_fit(x, options);
    CHECK(model.likelihood_trace.back() > model.likelihood_trace.front());
    CHECK(model.max_orthonormality_error < 1e-8);
  }

  SUBCASE("the analytic gradient matches finite differences") {
    // Tiny instance: d=3, n=40. Perturb W along the gradient direction and
    // compare the likelihood delta against the inner product prediction.
    const Matrix s0 = random_gaussian(40, 3, 5);
    EmbeddingMatrix z = make_embedding(s0, true);
    const Matrix cov = sample_covariance(z.data);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    z.data = z.data * solver.operatorInverseSqrt();

    const NeighborhoodMatrix h = neighborhood_matrix(3, 2);
    const Matrix w = Matrix::Identity(3, 3);

    auto likelihood_of = [&](const Matrix& weights) {
      return approx_log_likelihood(z.data * weights.transpose(), h);
    };

    // Analytic gradient (same expression as the fitter, including the
    // chain-rule factor of 2 absorbed into proportionality; build it here
    // explicitly with the factor so finite differences agree).
    const Matrix sources = z.data * w.transpose();
    const Matrix energy = sources.array().square().matrix() * h.h;
    const Matrix g = (-0.8 / (2.0 * energy.array().max(1e-12).sqrt())).matrix();
    const Matrix modulation = g * h.h;
    const Matrix weighted = sources.cwiseProduct(modulation);
    const Matrix gradient = 2.0 * (weighted.transpose() * z.data) / 40.0;

    const double eps = 1e-6;
    for (Index i = 0; i < 3; ++i) {
      for (Index j = 0; j < 3; ++j) {
        Matrix perturbed = w;
        perturbed(i, j) += eps;
        const double fd = (likelihood_of(perturbed) - likelihood_of(w)) / eps;
        CHECK(fd == doctest::Approx(gradient(i, j)).epsilon(1e-3));
      }
    }
  }

  SUBCASE("non-whitened input rejected") {
    Matrix wild = random_gaussian(200, 4, 9);
    wild.col(0) *= 10.0;
    CHECK_THROWS_AS(tica_fit(make_embedding(wild, true), {}), NotWhitened);
  }
}

TEST_CASE("tica_fit recovers adjacency: learned order beats a random order") {
  // Paired comparison on synthetic topographic sources: the mean adjacent
  // higher-order correlation along the fitted order must exceed the same
  // statistic along a random column order, for every seed.
  int positive = 0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const SyntheticTopographicSource synthetic =
        generate_topographic_sources(12, 6000, 3, 4000 + seed);
    const Matrix mixing = random_gaussian(12, 12, 4100 + seed);
    EmbeddingMatrix x = make_embedding(synthetic.s * mixing.transpose());
    x = center_columns(x);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sample_covariance(x.data));
    x.data = x.data * solver.operatorInverseSqrt();

    TicaOptions options;
    options.width = 3;
    options.iterations = 150;
    options.step = 0.1;
    options.seed = 4200 + seed;
    const TicaModel model = tica_fit(x, options);
    const Matrix fitted = x.data * model.w.transpose();

    const double learned =
        higher_order_correlation(fitted, identity_order(12)).mean();
    auto rng = axistour::make_rng(4300 + seed);
    std::vector<Index> shuffled = identity_order(12);
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const double random_order_mean = higher_order_correlation(fitted, shuffled).mean();
    if (learned > random_order_mean) ++positive;
  }
  CHECK(positive == 10);
}

TEST_CASE("higher_order_correlation") {
  SUBCASE("independent columns stay near zero") {
    const Index n = 20000;
    const Matrix s = random_gaussian(n, 4, 11);
    const Vector corr = higher_order_correlation(s, identity_order(4));
    CHECK(corr.cwiseAbs().maxCoeff() < 3.0 / std::sqrt(static_cast<double>(n)) * 3.0);
  }
  SUBCASE("a duplicated neighbor has covariance var(s^2)") {
    const Matrix base = random_gaussian(5000, 1, 13);
    Matrix s(5000, 2);
    s.col(0) = base.col(0);
    s.col(1) = base.col(0);
    const Vector corr = higher_order_correlation(s, identity_order(2));
    const Eigen::ArrayXd sq = base.col(0).array().square();
    const double var = (sq - sq.mean()).square().sum() / (5000 - 1);
    CHECK(corr(0) == doctest::Approx(var).epsilon(1e-9));
    CHECK(corr(0) > 0.0);
  }
  SUBCASE("3-column toy matches the covariance oracle") {
    const Matrix s = random_gaussian(300, 3, 17);
    const Vector corr = higher_order_correlation(s, identity_order(3));
    for (Index i = 0; i < 2; ++i) {
      const Eigen::ArrayXd a = s.col(i).array().square();
      const Eigen::ArrayXd b = s.col(i + 1).array().square();
      const double expected = ((a - a.mean()) * (b - b.mean())).sum() / (300 - 1);
      CHECK(corr(i) == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("generate_topographic_sources") {
  SUBCASE("the generative identity s = sigma .* z holds") {
    const SyntheticTopographicSource out = generate_topographic_sources(8, 100, 3, 21);
    CHECK((out.s - out.sigma.cwiseProduct(out.z)).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("width=1 shows no adjacent higher-order correlation") {
    const SyntheticTopographicSource out = generate_topographic_sources(6, 30000, 1, 23);
    const Vector corr = higher_order_correlation(out.s, identity_order(6));
    // Normalize by the agreeing scale: correlations, not raw covariances.
    for (Index i = 0; i < corr.size(); ++i) {
      const Eigen::ArrayXd a = out.s.col(i).array().square();
      const Eigen::ArrayXd b = out.s.col(i + 1).array().square();
      const double denom = std::sqrt((a - a.mean()).square().sum() / 29999) *
                           std::sqrt((b - b.mean()).square().sum() / 29999);
      CHECK(std::abs(corr(i) / denom) < 0.05);
    }
  }
  SUBCASE("width=5 shows positive adjacent higher-order correlations") {
    double total = 0.0;
    int count = 0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const SyntheticTopographicSource out = generate_topographic_sources(12, 8000, 5, seed);
      const Vector corr = higher_order_correlation(out.s, identity_order(12));
      total += corr.mean();
      ++count;
    }
    CHECK(total / count > 0.0);
  }
  SUBCASE("fixed seed reproduces the sources") {
    const SyntheticTopographicSource a = generate_topographic_sources(5, 50, 2, 9);
    const SyntheticTopographicSource b = generate_topographic_sources(5, 50, 2, 9);
    CHECK((a.s - b.s).cwiseAbs().maxCoeff() == 0.0);
  }
}
