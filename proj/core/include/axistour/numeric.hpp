#pragma once

#include <Eigen/Dense>
#include <charconv>
#include <cstdint>
#include <string>

namespace axistour {

// Row-major throughout: rows are words/samples, columns are axes.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

inline double cosine(const Eigen::Ref<const Vector>& a, const Eigen::Ref<const Vector>& b) {
  const double na = a.norm();
  const double nb = b.norm();
  return a.dot(b) / (na * nb);
}

// Sample covariance with the 1/(n-1) convention; input need not be centered.
inline Matrix sample_covariance(const Eigen::Ref<const Matrix>& x) {
  const Index n = x.rows();
  const Eigen::RowVectorXd mean = x.colwise().mean();
  const Matrix centered = x.rowwise() - mean;
  return (centered.transpose() * centered) / static_cast<double>(n - 1);
}

// Locale-independent formatting with a fixed number of significant digits.
inline std::string format_double(double value, int significant_digits = 12) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general,
                           significant_digits);
  return std::string(buf, res.ptr);
}

inline bool parse_double(std::string_view text, double& out) {
  auto res = std::from_chars(text.data(), text.data() + text.size(), out);
  return res.ec == std::errc{} && res.ptr == text.data() + text.size();
}

}  // namespace axistour
