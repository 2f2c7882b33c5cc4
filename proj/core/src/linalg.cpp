#include "latprod/linalg.hpp"

namespace latprod {

namespace {

// Cofactor expansion; fine for the 2x2 and 3x3 cases this library uses.
template <class S>
S det_cofactor(const Mat<S>& m) {
  int n = m.rows;
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  S acc{};
  for (int j = 0; j < n; ++j) {
    Mat<S> minor(n - 1, n - 1);
    for (int i = 1; i < n; ++i) {
      int cc = 0;
      for (int c = 0; c < n; ++c) {
        if (c == j) continue;
        minor(i - 1, cc++) = m(i, c);
      }
    }
    S term = m(0, j) * det_cofactor(minor);
    if (j % 2 == 0)
      acc = acc + term;
    else
      acc = acc - term;
  }
  return acc;
}

template <class S>
Mat<S> adjugate(const Mat<S>& m) {
  int n = m.rows;
  Mat<S> adj(n, n);
  if (n == 1) {
    adj(0, 0) = S{Rat(1)};
    return adj;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Mat<S> minor(n - 1, n - 1);
      int rr = 0;
      for (int r = 0; r < n; ++r) {
        if (r == i) continue;
        int cc = 0;
        for (int c = 0; c < n; ++c) {
          if (c == j) continue;
          minor(rr, cc++) = m(r, c);
        }
        ++rr;
      }
      S cof = det_cofactor(minor);
      if ((i + j) % 2 == 1) cof = S{} - cof;
      adj(j, i) = cof;  // transposed
    }
  return adj;
}

}  // namespace

Rat det(const MatQ& m) {
  if (m.rows != m.cols) throw domain_error("determinant of non-square matrix");
  return det_cofactor(m);
}

RatInterval det(const MatI& m) {
  if (m.rows != m.cols) throw domain_error("determinant of non-square matrix");
  return det_cofactor(m);
}

MatQ inverse(const MatQ& m) {
  Rat d = det(m);
  if (sgn(d) == 0) throw domain_error("singular matrix");
  MatQ adj = adjugate(m);
  Rat inv_d = Rat(1) / d;
  for (auto& x : adj.a) x *= inv_d;
  return adj;
}

MatI inverse(const MatI& m) {
  RatInterval d = det(m);
  if (!d.excludes_zero())
    throw precision_error("interval determinant straddles zero; refine inputs");
  MatI adj = adjugate(m);
  RatInterval r = recip(d);
  for (auto& x : adj.a) x = x * r;
  return adj;
}

VecQ solve(const MatQ& m, const VecQ& b) { return inverse(m) * b; }

MatI widen(const MatQ& m) {
  MatI w(m.rows, m.cols);
  for (size_t i = 0; i < m.a.size(); ++i) w.a[i] = RatInterval(m.a[i]);
  return w;
}

VecI widen(const VecQ& v) {
  VecI w(v.size());
  for (int i = 0; i < v.size(); ++i) w[i] = RatInterval(v[i]);
  return w;
}

}  // namespace latprod
