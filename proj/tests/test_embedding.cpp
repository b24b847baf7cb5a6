#include <doctest.h>

#include <fstream>

#include "axistour/embedding.hpp"
#include "axistour/errors.hpp"
#include "support.hpp"

using namespace axistour;
using testsupport::TempDir;
using testsupport::make_embedding;
using testsupport::random_gaussian;

namespace {

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream file(path);
  file << text;
}

}  // namespace

TEST_CASE("load_text_embeddings parses a fixture in file order") {
  TempDir dir("load");
  const auto path = dir.path() / "fixture.txt";
  write_file(path,
             "alpha 1.5 -2 0.25 3\n"
             "beta 0 0.5 1e-3 -4.5\n"
             "gamma 7 8 9 10\n");
  const EmbeddingMatrix e = load_text_embeddings(path);
  REQUIRE(e.rows() == 3);
  REQUIRE(e.cols() == 4);
  CHECK(e.vocab.word(0) == "alpha");
  CHECK(e.vocab.word(2) == "gamma");
  CHECK(e.data(0, 0) == 1.5);
  CHECK(e.data(0, 1) == -2.0);
  CHECK(e.data(1, 2) == 1e-3);
  CHECK(e.data(2, 3) == 10.0);
  CHECK_FALSE(e.centered);
  CHECK_FALSE(e.normalized);
}

TEST_CASE("load_text_embeddings honors max_words") {
  TempDir dir("loadmax");
  const auto path = dir.path() / "fixture.txt";
  write_file(path, "a 1 2\nb 3 4\nc 5 6\n");
  LoadOptions options;
  options.max_words = 1;
  const EmbeddingMatrix e = load_text_embeddings(path, options);
  CHECK(e.rows() == 1);
  CHECK(e.vocab.word(0) == "a");
}

TEST_CASE("load_text_embeddings rejects bad input") {
  TempDir dir("loadbad");
  SUBCASE("NaN literal") {
    const auto path = dir.path() / "nan.txt";
    write_file(path, "a 1 NaN\n");
    CHECK_THROWS_AS(load_text_embeddings(path), NonFiniteEntry);
  }
  SUBCASE("inconsistent dimension") {
    const auto path = dir.path() / "dim.txt";
    write_file(path, "a 1 2\nb 3\n");
    CHECK_THROWS_AS(load_text_embeddings(path), InconsistentDimension);
  }
  SUBCASE("duplicate token under the verbatim policy") {
    const auto path = dir.path() / "dup.txt";
    write_file(path, "a 1 2\na 3 4\n");
    CHECK_THROWS_AS(load_text_embeddings(path), DuplicateToken);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_text_embeddings(dir.path() / "absent.txt"), IoError);
  }
}

TEST_CASE("lowercase policy dedups with first occurrence winning") {
  TempDir dir("loadlc");
  const auto path = dir.path() / "lc.txt";
  write_file(path, "Cat 1 2\ncat 3 4\nDog 5 6\n");
  LoadOptions options;
  options.lowercase = true;
  const EmbeddingMatrix e = load_text_embeddings(path, options);
  REQUIRE(e.rows() == 2);
  CHECK(e.vocab.word(0) == "cat");
  CHECK(e.data(0, 0) == 1.0);
  CHECK(e.vocab.find("CAT").has_value());
}

TEST_CASE("text round-trip keeps 12 significant digits") {
  TempDir dir("roundtrip");
  EmbeddingMatrix e = make_embedding(random_gaussian(40, 7, 11) * 1e3);
  e.data(0, 0) = 1.0 / 3.0;
  e.data(1, 1) = -2.7182818284590452e-7;
  const auto path = dir.path() / "out.txt";
  save_text_embeddings(e, path);
  const EmbeddingMatrix back = load_text_embeddings(path);
  REQUIRE(back.rows() == e.rows());
  for (Index i = 0; i < e.rows(); ++i) {
    for (Index j = 0; j < e.cols(); ++j) {
      CHECK(back.data(i, j) == doctest::Approx(e.data(i, j)).epsilon(1e-11));
    }
  }
}

TEST_CASE("binary cache round-trips exactly with flags") {
  TempDir dir("cache");
  EmbeddingMatrix e = make_embedding(random_gaussian(25, 6, 3));
  e.centered = true;
  const auto path = dir.path() / "cache.bin";
  save_binary_cache(e, path);
  const EmbeddingMatrix back = load_binary_cache(path);
  CHECK(back.centered);
  CHECK_FALSE(back.normalized);
  CHECK(back.vocab.word(24) == e.vocab.word(24));
  CHECK((back.data - e.data).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("center_columns subtracts column means") {
  Matrix m(2, 2);
  m << 1, 3, 3, 5;
  const EmbeddingMatrix centered = center_columns(make_embedding(m));
  CHECK(centered.data(0, 0) == -1.0);
  CHECK(centered.data(0, 1) == -1.0);
  CHECK(centered.data(1, 0) == 1.0);
  CHECK(centered.data(1, 1) == 1.0);
  CHECK(centered.centered);

  SUBCASE("already centered flag rejects a second pass") {
    CHECK_THROWS_AS(center_columns(centered), DataError);
  }
  SUBCASE("zero-mean input is unchanged") {
    Matrix zm(2, 1);
    zm << -2, 2;
    const EmbeddingMatrix out = center_columns(make_embedding(zm));
    CHECK(out.data(0, 0) == -2.0);
    CHECK(out.data(1, 0) == 2.0);
  }
  SUBCASE("single row becomes zero") {
    Matrix one(1, 3);
    one << 4, -1, 9;
    const EmbeddingMatrix out = center_columns(make_embedding(one));
    CHECK(out.data.cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("center_columns drives column means below 1e-9 on large random input") {
  EmbeddingMatrix e = make_embedding(random_gaussian(100000, 8, 5) * 50.0);
  const EmbeddingMatrix centered = center_columns(e);
  CHECK(centered.data.colwise().mean().cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("normalize_rows") {
  SUBCASE("3-4-5 triangle") {
    Matrix m(1, 2);
    m << 3, 4;
    const EmbeddingMatrix out = normalize_rows(make_embedding(m));
    CHECK(out.data(0, 0) == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(out.data(0, 1) == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(out.normalized);
  }
  SUBCASE("unit row unchanged") {
    Matrix m(1, 2);
    m << 1, 0;
    CHECK(normalize_rows(make_embedding(m)).data(0, 0) == 1.0);
  }
  SUBCASE("zero row raises ZeroNormRow with the offending index") {
    Matrix m(2, 2);
    m << 1, 1, 0, 0;
    try {
      normalize_rows(make_embedding(m));
      FAIL("expected ZeroNormRow");
    } catch (const ZeroNormRow& err) {
      REQUIRE(err.rows.size() == 1);
      CHECK(err.rows[0] == 1);
    }
  }
  SUBCASE("idempotent within 1e-12") {
    const EmbeddingMatrix once = normalize_rows(make_embedding(random_gaussian(50, 5, 9)));
    const EmbeddingMatrix twice = normalize_rows(once);
    CHECK((twice.data - once.data).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("matrix text and vector csv round-trips") {
  TempDir dir("mat");
  const Matrix m = random_gaussian(6, 4, 21);
  save_matrix_text(m, dir.path() / "m.txt");
  const Matrix back = load_matrix_text(dir.path() / "m.txt");
  CHECK((back - m).cwiseAbs().maxCoeff() < 1e-11);

  Vector v(3);
  v << 0.5, -1.25, 3.75;
  save_vector_csv(v, dir.path() / "v.csv", "skewness");
  const Vector vb = load_vector_csv(dir.path() / "v.csv");
  REQUIRE(vb.size() == 3);
  CHECK(vb(1) == -1.25);
}
