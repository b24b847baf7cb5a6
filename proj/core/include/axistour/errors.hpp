#pragma once

#include <cstddef>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace axistour {

namespace detail {
inline std::string sci(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", value);
  return buf;
}
}  // namespace detail

// Base class for everything thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// File access / parse problems and violated data contracts (CLI exit code 2).
struct DataError : Error {
  using Error::Error;
};

// Numeric failures: rank deficiency, non-whitened inputs (CLI exit code 3).
struct NumericError : Error {
  using Error::Error;
};

struct IoError : DataError {
  using DataError::DataError;
};

struct NonFiniteEntry : DataError {
  explicit NonFiniteEntry(std::size_t line)
      : DataError("non-finite literal at line " + std::to_string(line)), line(line) {}
  std::size_t line;
};

struct DuplicateToken : DataError {
  DuplicateToken(const std::string& token, std::size_t line)
      : DataError("duplicate token '" + token + "' at line " + std::to_string(line)),
        token(token),
        line(line) {}
  std::string token;
  std::size_t line;
};

struct InconsistentDimension : DataError {
  InconsistentDimension(std::size_t line, std::size_t expected, std::size_t got)
      : DataError("line " + std::to_string(line) + " has " + std::to_string(got) +
                  " values, expected " + std::to_string(expected)),
        line(line) {}
  std::size_t line;
};

struct ZeroNormRow : DataError {
  explicit ZeroNormRow(std::vector<std::size_t> rows_in)
      : DataError("rows with (near-)zero norm: " + join(rows_in)), rows(std::move(rows_in)) {}
  std::vector<std::size_t> rows;

 private:
  static std::string join(const std::vector<std::size_t>& rows) {
    std::string out;
    for (std::size_t i = 0; i < rows.size() && i < 8; ++i) {
      if (i) out += ", ";
      out += std::to_string(rows[i]);
    }
    if (rows.size() > 8) out += ", ...";
    return out;
  }
};

struct DegenerateColumn : DataError {
  explicit DegenerateColumn(std::size_t column)
      : DataError("column " + std::to_string(column) + " has zero variance"), column(column) {}
  std::size_t column;
};

struct RankDeficient : NumericError {
  RankDeficient(double eigenvalue, double floor)
      : NumericError("eigenvalue " + detail::sci(eigenvalue) + " below floor " +
                     detail::sci(floor)),
        eigenvalue(eigenvalue),
        floor(floor) {}
  double eigenvalue;
  double floor;
};

struct NotWhitened : NumericError {
  explicit NotWhitened(double deviation)
      : NumericError("input covariance deviates from identity by " + detail::sci(deviation) +
                     " (Frobenius)"),
        deviation(deviation) {}
  double deviation;
};

struct EmptyShowSet : DataError {
  EmptyShowSet() : DataError("projection frame has an empty show set") {}
};

}  // namespace axistour
