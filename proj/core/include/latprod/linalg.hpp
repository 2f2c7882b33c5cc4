#ifndef LATPROD_LINALG_HPP
#define LATPROD_LINALG_HPP

#include <vector>

#include "latprod/interval.hpp"

namespace latprod {

// Dense column vector.
template <class S>
struct Vec {
  std::vector<S> a;

  Vec() = default;
  explicit Vec(int n) : a(n, S{}) {}
  explicit Vec(std::vector<S> v) : a(std::move(v)) {}

  int size() const { return static_cast<int>(a.size()); }
  S& operator[](int i) { return a[i]; }
  const S& operator[](int i) const { return a[i]; }
};

// Dense matrix, row major. Dimensions here are 2 or 3 in practice; the
// code stays generic where it costs nothing.
template <class S>
struct Mat {
  int rows = 0, cols = 0;
  std::vector<S> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, S{}) {}

  S& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const S& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = S{Rat(1)};
    return m;
  }
};

using VecQ = Vec<Rat>;
using VecI = Vec<RatInterval>;
using MatQ = Mat<Rat>;
using MatI = Mat<RatInterval>;

template <class S>
Mat<S> operator*(const Mat<S>& x, const Mat<S>& y) {
  Mat<S> z(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const S& xik = x(i, k);
      for (int j = 0; j < y.cols; ++j) z(i, j) = z(i, j) + xik * y(k, j);
    }
  return z;
}

template <class S>
Vec<S> operator*(const Mat<S>& x, const Vec<S>& v) {
  Vec<S> r(x.rows);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) r[i] = r[i] + x(i, j) * v[j];
  return r;
}

template <class S>
Vec<S> operator+(const Vec<S>& u, const Vec<S>& v) {
  Vec<S> r(u.size());
  for (int i = 0; i < u.size(); ++i) r[i] = u[i] + v[i];
  return r;
}

template <class S>
Vec<S> operator-(const Vec<S>& u, const Vec<S>& v) {
  Vec<S> r(u.size());
  for (int i = 0; i < u.size(); ++i) r[i] = u[i] - v[i];
  return r;
}

template <class S>
Mat<S> transpose(const Mat<S>& x) {
  Mat<S> t(x.cols, x.rows);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j) t(j, i) = x(i, j);
  return t;
}

// Determinant by cofactor expansion (n <= 3) or fraction-free Gauss.
Rat det(const MatQ& m);
RatInterval det(const MatI& m);

// Exact inverse; throws domain_error when singular.
MatQ inverse(const MatQ& m);

// Interval inverse via adjugate/det; throws precision_error when the
// determinant interval straddles zero.
MatI inverse(const MatI& m);

// Solve m x = b exactly.
VecQ solve(const MatQ& m, const VecQ& b);

MatI widen(const MatQ& m);
VecI widen(const VecQ& v);

inline bool operator==(const MatQ& x, const MatQ& y) {
  return x.rows == y.rows && x.cols == y.cols && x.a == y.a;
}
inline bool operator==(const VecQ& x, const VecQ& y) { return x.a == y.a; }

}  // namespace latprod

#endif
