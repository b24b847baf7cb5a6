#include <doctest.h>

#include <cmath>

#include "axistour/dimred.hpp"
#include "axistour/errors.hpp"
#include "axistour/fastica.hpp"
#include "support.hpp"

using namespace axistour;
using testsupport::make_embedding;
using testsupport::random_gaussian;

TEST_CASE("make_intervals follows the floor-division law") {
  SUBCASE("d=10, p=3 gives lengths 4,3,3") {
    const IntervalPartition partition = make_intervals(10, 3);
    REQUIRE(partition.intervals.size() == 3);
    CHECK(partition.intervals[0] == std::pair<Index, Index>{0, 3});
    CHECK(partition.intervals[1] == std::pair<Index, Index>{4, 6});
    CHECK(partition.intervals[2] == std::pair<Index, Index>{7, 9});
  }
  SUBCASE("d=300, p=7 gives six intervals of 43 and one of 42") {
    const IntervalPartition partition = make_intervals(300, 7);
    REQUIRE(partition.intervals.size() == 7);
    for (int r = 0; r < 6; ++r) {
      CHECK(partition.intervals[r].second - partition.intervals[r].first + 1 == 43);
    }
    CHECK(partition.intervals[6].second - partition.intervals[6].first + 1 == 42);
    CHECK(partition.intervals[6].second == 299);
  }
  SUBCASE("p=d gives singletons") {
    const IntervalPartition partition = make_intervals(5, 5);
    for (Index r = 0; r < 5; ++r) {
      CHECK(partition.intervals[r] == std::pair<Index, Index>{r, r});
    }
  }
  SUBCASE("out-of-range p rejected") {
    CHECK_THROWS_AS(make_intervals(4, 5), DataError);
    CHECK_THROWS_AS(make_intervals(4, 0), DataError);
  }
}

TEST_CASE("projection_vector implements the skewness weights") {
  SUBCASE("alpha=0 is uniform") {
    Vector gamma(4);
    gamma << 3, 1, 7, 2;
    const Vector f = projection_vector(gamma, {0, 3}, 0.0);
    for (Index l = 0; l < 4; ++l) {
      CHECK(f(l) == doctest::Approx(0.5).epsilon(1e-15));
    }
  }
  SUBCASE("singleton interval puts weight 1 on its axis") {
    Vector gamma(3);
    gamma << 0.4, 0.0, 2.0;
    const Vector f = projection_vector(gamma, {1, 1}, 1.0 / 3.0);
    CHECK(f(1) == 1.0);
    CHECK(f(0) == 0.0);
    CHECK(f(2) == 0.0);
  }
  SUBCASE("gamma=(8,1) with alpha=1/3 gives (2,1)/sqrt(5)") {
    Vector gamma(2);
    gamma << 8, 1;
    const Vector f = projection_vector(gamma, {0, 1}, 1.0 / 3.0);
    CHECK(f(0) == doctest::Approx(2.0 / std::sqrt(5.0)).epsilon(1e-12));
    CHECK(f(1) == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-12));
  }
  SUBCASE("all-zero interval falls back to uniform") {
    Vector gamma = Vector::Zero(3);
    const Vector f = projection_vector(gamma, {0, 2}, 0.5);
    CHECK(f(0) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  }
  SUBCASE("negative gamma rejected") {
    Vector gamma(2);
    gamma << -1, 1;
    CHECK_THROWS_AS(projection_vector(gamma, {0, 1}, 0.5), DataError);
  }
  SUBCASE("negative alpha rejected") {
    Vector gamma = Vector::Ones(2);
    CHECK_THROWS_AS(projection_vector(gamma, {0, 1}, -0.1), DataError);
  }
}

TEST_CASE("signed_projection_vector carries skewness signs") {
  SUBCASE("all positive matches the unsigned variant") {
    Vector gamma(3);
    gamma << 2, 5, 0.5;
    const Vector signed_f = signed_projection_vector(gamma, {0, 2}, 1.0 / 3.0);
    const Vector plain_f = projection_vector(gamma, {0, 2}, 1.0 / 3.0);
    CHECK((signed_f - plain_f).cwiseAbs().maxCoeff() < 1e-15);
  }
  SUBCASE("gamma=(-8,1) with alpha=1/3 gives (-2,1)/sqrt(5)") {
    Vector gamma(2);
    gamma << -8, 1;
    const Vector f = signed_projection_vector(gamma, {0, 1}, 1.0 / 3.0);
    CHECK(f(0) == doctest::Approx(-2.0 / std::sqrt(5.0)).epsilon(1e-12));
    CHECK(f(1) == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-12));
  }
  SUBCASE("single negative entry gets weight -1") {
    Vector gamma(2);
    gamma << -3, 1;
    const Vector f = signed_projection_vector(gamma, {0, 0}, 0.25);
    CHECK(f(0) == -1.0);
  }
}

TEST_CASE("projection matrix columns are unit, interval-supported vectors") {
  Vector gamma(10);
  gamma << 0.5, 2, 0, 1, 4, 0.1, 0.9, 3, 2.5, 0.7;
  const ProjectionMatrix projection = build_projection(gamma, 3, 1.0 / 3.0);
  const IntervalPartition partition = make_intervals(10, 3);
  for (Index r = 0; r < 3; ++r) {
    CHECK(projection.f.col(r).norm() == doctest::Approx(1.0).epsilon(1e-12));
    for (Index l = 0; l < 10; ++l) {
      const bool inside =
          l >= partition.intervals[r].first && l <= partition.intervals[r].second;
      if (!inside) CHECK(projection.f(l, r) == 0.0);
      if (inside) CHECK(projection.f(l, r) >= 0.0);
    }
  }
}

TEST_CASE("reduce_dimensions") {
  SUBCASE("p=d is the exact identity") {
    const Matrix t = random_gaussian(50, 12, 19);
    Vector gamma = random_gaussian(12, 1, 20).cwiseAbs();
    const EmbeddingMatrix out = reduce_dimensions(make_embedding(t), gamma, 12, 1.0 / 3.0);
    CHECK((out.data - t).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("p=1 with alpha=0 is the row sum over sqrt(d)") {
    const Matrix t = random_gaussian(20, 4, 23);
    Vector gamma = Vector::Ones(4);
    const EmbeddingMatrix out = reduce_dimensions(make_embedding(t), gamma, 1, 0.0);
    for (Index i = 0; i < 20; ++i) {
      CHECK(out.data(i, 0) == doctest::Approx(t.row(i).sum() / 2.0).epsilon(1e-12));
    }
  }
  SUBCASE("n=3 toy against a hand-built product") {
    Matrix t(3, 4);
    t << 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12;
    Vector gamma(4);
    gamma << 8, 1, 1, 1;
    // Intervals (0,1) and (2,3); alpha=1/3 weights (2,1)/sqrt(5), (1,1)/sqrt(2).
    const EmbeddingMatrix out = reduce_dimensions(make_embedding(t), gamma, 2, 1.0 / 3.0);
    for (Index i = 0; i < 3; ++i) {
      CHECK(out.data(i, 0) ==
            doctest::Approx((2 * t(i, 0) + t(i, 1)) / std::sqrt(5.0)).epsilon(1e-12));
      CHECK(out.data(i, 1) ==
            doctest::Approx((t(i, 2) + t(i, 3)) / std::sqrt(2.0)).epsilon(1e-12));
    }
  }
  SUBCASE("gamma length mismatch rejected") {
    CHECK_THROWS_AS(
        reduce_dimensions(make_embedding(random_gaussian(5, 3, 2)), Vector::Ones(4), 2, 0.5),
        DataError);
  }
}

TEST_CASE("skewness_sort_order sorts descending with stable ties") {
  SUBCASE("gamma=(0.1,0.9,0.5) orders as 1,2,0") {
    // Build columns with those approximate skewness ranks via scaled cubes.
    Matrix m(200, 3);
    const Matrix base = random_gaussian(200, 1, 3);
    m.col(0) = base.col(0) + 0.1 * base.col(0).array().square().matrix();
    m.col(1) = base.col(0) + 2.0 * base.col(0).array().square().matrix();
    m.col(2) = base.col(0) + 0.5 * base.col(0).array().square().matrix();
    const auto order = skewness_sort_order(make_embedding(m));
    CHECK(order == std::vector<Index>{1, 2, 0});
  }
  SUBCASE("equal skewness keeps the original order") {
    Matrix m(4, 3);
    m << 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1;  // identical columns
    const auto order = skewness_sort_order(make_embedding(m));
    CHECK(order == std::vector<Index>{0, 1, 2});
  }
}

TEST_CASE("random_order is a seeded permutation with signs") {
  const EmbeddingMatrix e = make_embedding(random_gaussian(10, 8, 5));
  const auto [perm1, signs1] = random_order(e, 42);
  const auto [perm2, signs2] = random_order(e, 42);
  CHECK(perm1 == perm2);
  CHECK(signs1 == signs2);

  const auto [perm3, signs3] = random_order(e, 43);
  CHECK(perm1 != perm3);  // overwhelmingly likely for d=8

  std::vector<Index> sorted = perm1;
  std::sort(sorted.begin(), sorted.end());
  for (Index i = 0; i < 8; ++i) CHECK(sorted[static_cast<std::size_t>(i)] == i);
  for (int s : signs1) CHECK((s == 1 || s == -1));

  SUBCASE("d=1") {
    const EmbeddingMatrix one = make_embedding(random_gaussian(5, 1, 2));
    const auto [perm, signs] = random_order(one, 7);
    CHECK(perm == std::vector<Index>{0});
    CHECK(signs.size() == 1);
  }
}

TEST_CASE("permute_columns applies order and signs") {
  Matrix m(2, 3);
  m << 1, 2, 3, 4, 5, 6;
  const auto out =
      permute_columns(make_embedding(m), {2, 0, 1}, nullptr);
  CHECK(out.data(0, 0) == 3.0);
  CHECK(out.data(0, 1) == 1.0);

  std::vector<int> signs{-1, 1, -1};
  const auto flipped = permute_columns(make_embedding(m), {0, 1, 2}, &signs);
  CHECK(flipped.data(0, 0) == -1.0);
  CHECK(flipped.data(0, 1) == 2.0);
  CHECK(flipped.data(0, 2) == -3.0);
}

TEST_CASE("prefix_axes keeps the leading columns") {
  const Matrix m = random_gaussian(6, 4, 9);
  const EmbeddingMatrix e = make_embedding(m);
  CHECK((prefix_axes(e, 4).data - m).cwiseAbs().maxCoeff() == 0.0);
  CHECK(prefix_axes(e, 1).data.cols() == 1);
  CHECK((prefix_axes(e, 2).data - m.leftCols(2)).cwiseAbs().maxCoeff() == 0.0);
  CHECK_THROWS_AS(prefix_axes(e, 5), DataError);
}

TEST_CASE("skewness-sort projection at p=d is the sorted matrix itself") {
  Matrix m = random_gaussian(300, 6, 13);
  // Positive-skew columns so the sorted matrix has well-defined weights.
  m = m.array().square().matrix() + 0.05 * m;
  const EmbeddingMatrix sorted =
      permute_columns(make_embedding(m), skewness_sort_order(make_embedding(m)), nullptr);
  const Vector gamma_sorted = column_skewness(sorted.data);
  const EmbeddingMatrix projected = reduce_dimensions(sorted, gamma_sorted, 6, 1.0 / 3.0);
  CHECK((projected.data - sorted.data).cwiseAbs().maxCoeff() < 1e-12);
}
