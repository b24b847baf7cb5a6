#include "axistour/embedding.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "axistour/errors.hpp"

namespace axistour {

namespace {

constexpr char kCacheMagic[4] = {'A', 'X', 'T', 'E'};
constexpr std::uint32_t kCacheVersion = 1;

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

template <typename T>
void write_pod(std::ostream& os, const T& value) {
  os.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
void read_pod(std::istream& is, T& value) {
  is.read(reinterpret_cast<char*>(&value), sizeof(T));
}

}  // namespace

EmbeddingMatrix load_text_embeddings(const std::filesystem::path& path,
                                     const LoadOptions& options) {
  std::ifstream file(path);
  if (!file) throw IoError("cannot open embedding file: " + path.string());
  if (options.max_words && *options.max_words < 0) {
    throw DataError("max_words must be non-negative");
  }

  EmbeddingMatrix out;
  out.vocab.set_lowercased(options.lowercase);
  std::vector<double> values;
  Index dim = -1;
  Index kept = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(file, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) continue;
    if (options.max_words && kept >= *options.max_words) break;

    auto tokens = split_ws(line);
    if (tokens.size() < 2) {
      throw DataError("line " + std::to_string(line_no) + " has no vector values");
    }
    std::string word(tokens[0]);
    if (options.lowercase) word = Vocabulary::to_lower(word);

    if (dim < 0) dim = static_cast<Index>(tokens.size()) - 1;
    if (static_cast<Index>(tokens.size()) - 1 != dim) {
      throw InconsistentDimension(line_no, static_cast<std::size_t>(dim), tokens.size() - 1);
    }

    if (!out.vocab.add(word)) {
      if (options.lowercase) continue;  // first occurrence wins
      throw DuplicateToken(word, line_no);
    }

    for (std::size_t t = 1; t < tokens.size(); ++t) {
      double v;
      if (!parse_double(tokens[t], v) || !std::isfinite(v)) throw NonFiniteEntry(line_no);
      values.push_back(v);
    }
    ++kept;
  }
  if (dim < 0) throw DataError("embedding file is empty: " + path.string());

  out.data = Eigen::Map<const Matrix>(values.data(), kept, dim);
  return out;
}

void save_text_embeddings(const EmbeddingMatrix& embedding, const std::filesystem::path& path) {
  std::ofstream file(path);
  if (!file) throw IoError("cannot write embedding file: " + path.string());
  std::string line;
  for (Index i = 0; i < embedding.rows(); ++i) {
    line = embedding.vocab.word(i);
    for (Index j = 0; j < embedding.cols(); ++j) {
      line += ' ';
      line += format_double(embedding.data(i, j));
    }
    line += '\n';
    file << line;
  }
  if (!file) throw IoError("write failed: " + path.string());
}

void save_binary_cache(const EmbeddingMatrix& embedding, const std::filesystem::path& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot write cache file: " + path.string());
  file.write(kCacheMagic, 4);
  write_pod(file, kCacheVersion);
  std::uint8_t flags = (embedding.centered ? 1u : 0u) | (embedding.normalized ? 2u : 0u) |
                       (embedding.vocab.lowercased() ? 4u : 0u);
  write_pod(file, flags);
  const std::uint64_t n = static_cast<std::uint64_t>(embedding.rows());
  const std::uint64_t d = static_cast<std::uint64_t>(embedding.cols());
  write_pod(file, n);
  write_pod(file, d);
  for (const auto& word : embedding.vocab.words()) {
    const std::uint32_t len = static_cast<std::uint32_t>(word.size());
    write_pod(file, len);
    file.write(word.data(), static_cast<std::streamsize>(len));
  }
  file.write(reinterpret_cast<const char*>(embedding.data.data()),
             static_cast<std::streamsize>(n * d * sizeof(double)));
  if (!file) throw IoError("write failed: " + path.string());
}

EmbeddingMatrix load_binary_cache(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open cache file: " + path.string());
  char magic[4];
  file.read(magic, 4);
  if (!file || std::memcmp(magic, kCacheMagic, 4) != 0) {
    throw DataError("not an embedding cache file: " + path.string());
  }
  std::uint32_t version;
  read_pod(file, version);
  if (version != kCacheVersion) {
    throw DataError("unsupported cache version " + std::to_string(version));
  }
  std::uint8_t flags;
  read_pod(file, flags);
  std::uint64_t n, d;
  read_pod(file, n);
  read_pod(file, d);
  EmbeddingMatrix out;
  out.centered = flags & 1u;
  out.normalized = flags & 2u;
  out.vocab.set_lowercased(flags & 4u);
  std::string word;
  for (std::uint64_t i = 0; i < n; ++i) {
    std::uint32_t len;
    read_pod(file, len);
    word.resize(len);
    file.read(word.data(), static_cast<std::streamsize>(len));
    if (!out.vocab.add(word)) throw DataError("duplicate token in cache: " + word);
  }
  out.data.resize(static_cast<Index>(n), static_cast<Index>(d));
  file.read(reinterpret_cast<char*>(out.data.data()),
            static_cast<std::streamsize>(n * d * sizeof(double)));
  if (!file) throw DataError("truncated cache file: " + path.string());
  return out;
}

void save_matrix_text(const Matrix& m, const std::filesystem::path& path) {
  std::ofstream file(path);
  if (!file) throw IoError("cannot write matrix file: " + path.string());
  file << m.rows() << ' ' << m.cols() << '\n';
  std::string line;
  for (Index i = 0; i < m.rows(); ++i) {
    line.clear();
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) line += ' ';
      line += format_double(m(i, j));
    }
    line += '\n';
    file << line;
  }
  if (!file) throw IoError("write failed: " + path.string());
}

Matrix load_matrix_text(const std::filesystem::path& path) {
  std::ifstream file(path);
  if (!file) throw IoError("cannot open matrix file: " + path.string());
  Index rows, cols;
  if (!(file >> rows >> cols)) throw DataError("bad matrix header: " + path.string());
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    for (Index j = 0; j < cols; ++j) {
      if (!(file >> m(i, j))) throw DataError("truncated matrix file: " + path.string());
    }
  }
  return m;
}

void save_vector_csv(const Vector& v, const std::filesystem::path& path,
                     const std::string& value_name) {
  std::ofstream file(path);
  if (!file) throw IoError("cannot write csv file: " + path.string());
  file << "axis," << value_name << '\n';
  for (Index i = 0; i < v.size(); ++i) {
    file << i << ',' << format_double(v(i)) << '\n';
  }
  if (!file) throw IoError("write failed: " + path.string());
}

Vector load_vector_csv(const std::filesystem::path& path) {
  std::ifstream file(path);
  if (!file) throw IoError("cannot open csv file: " + path.string());
  std::string line;
  if (!std::getline(file, line)) throw DataError("empty csv file: " + path.string());
  std::vector<double> values;
  std::size_t line_no = 1;
  while (std::getline(file, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos) throw DataError("bad csv row at line " + std::to_string(line_no));
    double v;
    if (!parse_double(std::string_view(line).substr(comma + 1), v)) {
      throw DataError("bad csv value at line " + std::to_string(line_no));
    }
    values.push_back(v);
  }
  return Eigen::Map<const Vector>(values.data(), static_cast<Index>(values.size()));
}

EmbeddingMatrix center_columns(const EmbeddingMatrix& e) {
  if (e.centered) throw DataError("matrix is already centered");
  EmbeddingMatrix out;
  out.vocab = e.vocab;
  out.data = e.data.rowwise() - e.data.colwise().mean();
  out.centered = true;
  out.normalized = false;
  return out;
}

EmbeddingMatrix normalize_rows(const EmbeddingMatrix& e) {
  EmbeddingMatrix out;
  out.vocab = e.vocab;
  out.data = normalize_matrix_rows(e.data);
  out.centered = e.centered;
  out.normalized = true;
  return out;
}

Matrix normalize_matrix_rows(const Matrix& m) {
  const Vector norms = m.rowwise().norm();
  std::vector<std::size_t> bad;
  for (Index i = 0; i < norms.size(); ++i) {
    if (norms(i) < 1e-12) bad.push_back(static_cast<std::size_t>(i));
  }
  if (!bad.empty()) throw ZeroNormRow(std::move(bad));
  return m.array().colwise() / norms.array();
}

}  // namespace axistour
