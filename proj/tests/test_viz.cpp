#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "axistour/axis_tour.hpp"
#include "axistour/continuity.hpp"
#include "axistour/errors.hpp"
#include "axistour/redact.hpp"
#include "axistour/viz.hpp"
#include "support.hpp"

using namespace axistour;
using testsupport::TempDir;
using testsupport::make_embedding;
using testsupport::random_gaussian;

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream file(path);
  std::stringstream ss;
  ss << file.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("projection_directions spans the semicircle") {
  const Matrix dirs = projection_directions({3, 7});
  REQUIRE(dirs.rows() == 5);
  CHECK(dirs(0, 0) == doctest::Approx(1.0).epsilon(1e-15));   // theta = 0
  CHECK(dirs(0, 1) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(dirs(4, 0) == doctest::Approx(-1.0).epsilon(1e-15));  // theta = pi
  CHECK(std::abs(dirs(4, 1)) < 1e-12);
  CHECK(dirs(2, 0) == doctest::Approx(0.0).epsilon(1e-12));   // midpoint
  CHECK(dirs(2, 1) == doctest::Approx(1.0).epsilon(1e-15));
  for (Index l = 0; l < 5; ++l) {
    CHECK(dirs.row(l).norm() == doctest::Approx(1.0).epsilon(1e-15));
  }
  CHECK_THROWS_AS(projection_directions({4, 4}), DataError);
}

TEST_CASE("project_2d") {
  SUBCASE("an indicator row lands on its axis direction") {
    Matrix m = Matrix::Zero(3, 5);
    m(0, 1) = 1.0;  // indicator of axis a for the interval (1,3)
    m(1, 2) = 0.7;
    m(2, 3) = 1.0;
    EmbeddingMatrix e = normalize_rows(make_embedding(m));
    const ProjectionFrame frame = project_2d(e, {1, 3});
    CHECK(frame.coords(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(frame.coords(0, 1) == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("3-row toy equals the hand matrix product") {
    Matrix m = random_gaussian(3, 4, 3);
    EmbeddingMatrix e = normalize_rows(make_embedding(m));
    const ProjectionFrame frame = project_2d(e, {0, 3});
    const Matrix expected = e.data * projection_directions({0, 3});
    CHECK((frame.coords - expected).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("show set matches the set identity") {
    Matrix m = random_gaussian(60, 6, 17);
    EmbeddingMatrix e = normalize_rows(make_embedding(m));
    const ProjectionFrame frame = project_2d(e, {1, 4});

    std::set<Index> expected;
    for (Index axis = 1; axis <= 4; ++axis) {
      for (Index i : top_k_indices(e, axis, 5)) {
        if (frame.coords(i, 1) >= 0.0) expected.insert(i);
      }
    }
    const std::set<Index> got(frame.show.begin(), frame.show.end());
    CHECK(got == expected);
  }
  SUBCASE("norms are non-expansive against the direction matrix") {
    Matrix m = random_gaussian(40, 6, 23);
    EmbeddingMatrix e = normalize_rows(make_embedding(m));
    const ProjectionFrame frame = project_2d(e, {0, 5});
    const double sigma_max =
        frame.directions.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV)
            .singularValues()(0);
    for (Index i = 0; i < 40; ++i) {
      const double restricted = e.data.row(i).norm();
      CHECK(frame.coords.row(i).norm() <= restricted * sigma_max + 1e-12);
    }
  }
  SUBCASE("argmax colors follow the highest normalized value") {
    Matrix m = random_gaussian(30, 5, 29);
    EmbeddingMatrix e = normalize_rows(make_embedding(m));
    const ProjectionFrame frame = project_2d(e, {1, 3});
    for (Index i = 0; i < 30; ++i) {
      Index arg = 1;
      for (Index axis = 2; axis <= 3; ++axis) {
        if (e.data(i, axis) > e.data(i, arg)) arg = axis;
      }
      CHECK(frame.argmax_axis[static_cast<std::size_t>(i)] == arg);
    }
  }
  SUBCASE("interval out of range rejected") {
    EmbeddingMatrix e = normalize_rows(make_embedding(random_gaussian(5, 3, 1)));
    CHECK_THROWS_AS(project_2d(e, {1, 3}), DataError);
  }
}

TEST_CASE("emit_scatter output is byte-stable and well-formed") {
  TempDir dir("viz");
  Matrix m = random_gaussian(25, 5, 31).array() + 0.3;
  EmbeddingMatrix e = normalize_rows(make_embedding(m));
  const ProjectionFrame frame = project_2d(e, {0, 4});

  SUBCASE("svg golden comparison across two emissions") {
    emit_scatter(frame, e.vocab, ScatterFormat::svg, dir.path() / "a.svg");
    emit_scatter(frame, e.vocab, ScatterFormat::svg, dir.path() / "b.svg");
    const std::string a = slurp(dir.path() / "a.svg");
    CHECK(a == slurp(dir.path() / "b.svg"));
    CHECK(a.find("<svg") == 0);
    CHECK(a.find("</svg>") != std::string::npos);
    CHECK(a.find("<circle") != std::string::npos);
  }
  SUBCASE("csv has one row per word with a shown flag") {
    emit_scatter(frame, e.vocab, ScatterFormat::csv, dir.path() / "points.csv");
    const std::string csv = slurp(dir.path() / "points.csv");
    CHECK(csv.rfind("word,x,y,argmax_axis,shown", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 26);  // header + 25 rows
    CHECK(csv.find(",true") != std::string::npos);
  }
  SUBCASE("empty show set still renders axes") {
    ProjectionFrame bare = frame;
    bare.show.clear();
    emit_scatter(bare, e.vocab, ScatterFormat::svg, dir.path() / "bare.svg");
    const std::string svg = slurp(dir.path() / "bare.svg");
    CHECK(svg.find("<line") != std::string::npos);
    CHECK(svg.find("<circle") == std::string::npos);
  }
  SUBCASE("sensitive tokens are redacted in the render") {
    EmbeddingMatrix pii;
    pii.vocab.add("hello");
    pii.vocab.add("user@example.com");
    pii.data = normalize_matrix_rows((random_gaussian(2, 4, 5).array() + 1.0).matrix());
    pii.normalized = true;
    const ProjectionFrame f = project_2d(pii, {0, 3});
    emit_scatter(f, pii.vocab, ScatterFormat::svg, dir.path() / "pii.svg");
    const std::string svg = slurp(dir.path() / "pii.svg");
    CHECK(svg.find("user@example.com") == std::string::npos);
    CHECK(svg.find("***@***.com") != std::string::npos);
  }
}

TEST_CASE("token redaction rules") {
  CHECK(redact_token("hello") == "hello");
  CHECK(redact_token("f.c.") == "f.c.");
  CHECK(redact_token("3,048") == "3,048");
  CHECK(redact_token("lycos.com") == "***.com");
  CHECK(redact_token("http://x.org") == "http://***.org");
  CHECK(redact_token("www.example.com") == "***.com");
  CHECK(redact_token("user@example.com") == "***@***.com");
  CHECK(redact_token("555-867-5309") == "***-***-****");
  CHECK(redact_token("2-6-2") == "2-6-2");  // too few digits for a phone
  CHECK(redact_token("1977-2010") == "1977-2010");  // one dash only
}
