#ifndef ADAPROX_LINALG_HPP
#define ADAPROX_LINALG_HPP

#include <cmath>
#include <cstddef>
#include <vector>

namespace adaprox {

using Vec = std::vector<double>;

namespace linalg {

inline double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2_sq(const Vec& a) { return dot(a, a); }

inline double norm2(const Vec& a) { return std::sqrt(norm2_sq(a)); }

inline double norm1(const Vec& a) {
  double s = 0.0;
  for (double v : a) s += std::abs(v);
  return s;
}

inline double norm_inf(const Vec& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

inline Vec sub(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vec add(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vec scaled(const Vec& a, double s) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

// r += s * a
inline void add_scaled(Vec& r, double s, const Vec& a) {
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += s * a[i];
}

inline double distance(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

inline bool all_finite(const Vec& a) {
  for (double v : a)
    if (!std::isfinite(v)) return false;
  return true;
}

// Dense row-major matrix, just enough for the problem library.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  Vec data;  // rows*cols, row-major

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  Vec apply(const Vec& x) const {
    Vec y(rows, 0.0);
    for (std::size_t i = 0; i < rows; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < cols; ++j) s += data[i * cols + j] * x[j];
      y[i] = s;
    }
    return y;
  }

  Vec apply_transpose(const Vec& x) const {
    Vec y(cols, 0.0);
    for (std::size_t i = 0; i < rows; ++i) {
      double xi = x[i];
      for (std::size_t j = 0; j < cols; ++j) y[j] += data[i * cols + j] * xi;
    }
    return y;
  }
};

}  // namespace linalg
}  // namespace adaprox

#endif
