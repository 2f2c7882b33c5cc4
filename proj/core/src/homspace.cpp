#include "latprod/homspace.hpp"

#include <algorithm>
#include <sstream>

namespace latprod {

namespace {

const char* kNonUnimodular = "basis is not unimodular: |det| = ";

}  // namespace

Lattice lattice_from_matrix(const MatQ& basis) {
  if (basis.rows != basis.cols) throw domain_error("lattice basis must be square");
  Rat d = rat_abs(det(basis));
  if (d != 1) throw domain_error(kNonUnimodular + format_rat(d));
  Lattice x;
  x.exact = true;
  x.bq = basis;
  x.bi = widen(basis);
  x.det_abs = RatInterval(Rat(1));
  return x;
}

Lattice lattice_from_matrix(const MatI& basis) {
  if (basis.rows != basis.cols) throw domain_error("lattice basis must be square");
  RatInterval d = interval_abs(det(basis));
  if (!d.contains(Rat(1)))
    throw domain_error(kNonUnimodular + format_interval(d));
  Lattice x;
  x.exact = false;
  x.bi = basis;
  x.det_abs = d;
  return x;
}

namespace {

template <class S>
Mat<S> h_matrix(const Vec<S>& v) {
  int d = v.size() + 1;
  Mat<S> m = Mat<S>::identity(d);
  for (int i = 0; i < d - 1; ++i) m(i, d - 1) = v[i];
  return m;
}

template <class S>
Mat<S> z_matrix(const Vec<S>& v) {
  int d = v.size() + 1;
  Mat<S> m = Mat<S>::identity(d);
  for (int j = 0; j < d - 1; ++j) m(0, j + 1) = v[j];
  return m;
}

}  // namespace

Lattice h_lattice(const VecQ& v) { return lattice_from_matrix(h_matrix(v)); }
Lattice h_lattice(const VecI& v) { return lattice_from_matrix(h_matrix(v)); }
Lattice z_lattice(const VecQ& v) { return lattice_from_matrix(z_matrix(v)); }
Lattice z_lattice(const VecI& v) { return lattice_from_matrix(z_matrix(v)); }

Lattice dual(const Lattice& x) {
  if (x.exact) return lattice_from_matrix(transpose(inverse(x.bq)));
  return lattice_from_matrix(transpose(inverse(x.bi)));
}

Lattice integer_lattice(int d) { return lattice_from_matrix(MatQ::identity(d)); }

Grid make_grid(const Lattice& x, const VecQ& shift) {
  if (shift.size() != x.dim()) throw domain_error("shift dimension mismatch");
  Grid y;
  y.x = x;
  y.exact = x.exact;
  y.vq = shift;
  y.vi = widen(shift);
  return y;
}

Grid make_grid(const Lattice& x, const VecI& shift) {
  if (shift.size() != x.dim()) throw domain_error("shift dimension mismatch");
  Grid y;
  y.x = x;
  y.exact = false;
  y.vi = shift;
  return y;
}

Rat coordinate_product(const VecQ& w) {
  Rat p(1);
  for (int i = 0; i < w.size(); ++i) p *= w[i];
  return p;
}

RatInterval coordinate_product(const VecI& w) {
  RatInterval p{Rat(1), Rat(1)};
  for (int i = 0; i < w.size(); ++i) p = p * w[i];
  return p;
}

namespace {

struct CoeffBox {
  std::vector<Int> lo, hi;
  Int count;  // product of range sizes (0 if empty)
};

// Integer coefficient ranges guaranteed to cover every grid point in
// the sup-norm box of radius R: n = B^{-1}(w - v), w in [-R, R]^d.
CoeffBox coeff_box(const MatI& binv, const VecI& v, const Rat& R) {
  int d = binv.rows;
  CoeffBox box;
  box.lo.resize(d);
  box.hi.resize(d);
  box.count = 1;
  for (int i = 0; i < d; ++i) {
    RatInterval acc;
    for (int j = 0; j < d; ++j) {
      RatInterval wj{-R - v[j].hi, R - v[j].lo};
      acc = acc + binv(i, j) * wj;
    }
    box.lo[i] = ceil_int(acc.lo);
    box.hi[i] = floor_int(acc.hi);
    Int len = box.hi[i] - box.lo[i] + 1;
    if (len < 0) len = 0;
    box.count *= len;
  }
  return box;
}

void check_box_size(const CoeffBox& box) {
  if (box.count > 100000000) {
    throw refused_error("enumeration box too large: about " + box.count.get_str() +
                        " candidate points");
  }
}

// Odometer over the integer box, lexicographic.
template <class F>
void for_each_coeff(const CoeffBox& box, F&& fn) {
  if (box.count == 0) return;
  std::vector<Int> n(box.lo);
  int d = static_cast<int>(n.size());
  for (;;) {
    fn(n);
    int k = d - 1;
    while (k >= 0) {
      if (n[k] < box.hi[k]) {
        ++n[k];
        break;
      }
      n[k] = box.lo[k];
      --k;
    }
    if (k < 0) break;
  }
}

}  // namespace

std::vector<GridPointQ> enumerate_grid_points(const Grid& y, const Rat& R) {
  if (sgn(R) < 0) throw domain_error("box radius must be nonnegative");
  if (!y.exact) throw domain_error("exact enumeration requires the exact regime");
  int d = y.dim();
  MatQ binv = inverse(y.x.bq);
  CoeffBox box = coeff_box(widen(binv), widen(y.vq), R);
  check_box_size(box);
  std::vector<GridPointQ> out;
  for_each_coeff(box, [&](const std::vector<Int>& n) {
    VecQ w = y.vq;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) w[i] += y.x.bq(i, j) * Rat(n[j]);
    for (int i = 0; i < d; ++i)
      if (rat_abs(w[i]) > R) return;
    out.push_back({n, std::move(w)});
  });
  return out;
}

std::vector<GridPointI> enumerate_grid_points_certified(const Grid& y, const Rat& R) {
  if (sgn(R) < 0) throw domain_error("box radius must be nonnegative");
  int d = y.dim();
  MatI binv = inverse(y.x.bi);
  CoeffBox box = coeff_box(binv, y.vi, R);
  check_box_size(box);
  std::vector<GridPointI> out;
  for_each_coeff(box, [&](const std::vector<Int>& n) {
    VecI w = y.vi;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) w[i] = w[i] + y.x.bi(i, j) * RatInterval(Rat(n[j]));
    // Keep unless certainly outside the box.
    for (int i = 0; i < d; ++i)
      if (interval_abs(w[i]).lo > R) return;
    out.push_back({n, std::move(w)});
  });
  return out;
}

ProductSample product_scan(const Grid& y, const Rat& R) {
  ProductSample s;
  s.exact = y.exact;
  s.radius = R;
  if (y.exact) {
    s.points_q = enumerate_grid_points(y, R);
    s.values_q.reserve(s.points_q.size());
    bool first = true;
    for (size_t k = 0; k < s.points_q.size(); ++k) {
      Rat val = coordinate_product(s.points_q[k].w);
      s.values_q.push_back(val);
      Rat av = rat_abs(val);
      if (first || av < s.min_abs_q) {
        s.min_abs_q = av;
        s.witness = static_cast<int>(k);
        first = false;
      }
    }
    s.min_abs_i = RatInterval(s.min_abs_q);
  } else {
    s.points_i = enumerate_grid_points_certified(y, R);
    bool first = true;
    for (size_t k = 0; k < s.points_i.size(); ++k) {
      RatInterval val = coordinate_product(s.points_i[k].w);
      s.values_i.push_back(val);
      RatInterval av = interval_abs(val);
      if (first || av.mid() < s.min_abs_i.mid()) {
        s.min_abs_i = av;
        s.witness = static_cast<int>(k);
        first = false;
      }
    }
  }
  return s;
}

Grid unit_reduce(const Grid& y, const std::vector<FlowVector>& stab) {
  if (stab.empty()) return y;
  int d = y.dim();
  for (const auto& f : stab)
    if (f.dim() != d) throw domain_error("stabilizer dimension mismatch");

  int r = static_cast<int>(stab.size());
  std::vector<long> best(r, 0), k(r, -3);
  double best_score = -1;
  VecI best_diag;
  for (;;) {
    // a = exp(sum k_i stab_i), computed as interval diagonal.
    VecI tsum(d);
    for (int i = 0; i < r; ++i)
      for (int c = 0; c < d; ++c)
        tsum[c] = tsum[c] + Rat(k[i]) * stab[i].as_interval()[c];
    VecI diag(d);
    for (int c = 0; c < d; ++c) diag[c] = exp_interval(tsum[c]);
    // Score: max row sup norm of diag * B, midpoint arithmetic.
    double score = 0;
    for (int i = 0; i < d; ++i) {
      double row = 0;
      for (int j = 0; j < d; ++j)
        row = std::max(row, std::abs(to_double((diag[i] * y.x.bi(i, j)).mid())));
      score = std::max(score, row);
    }
    if (best_score < 0 || score < best_score) {
      best_score = score;
      best = k;
      best_diag = diag;
    }
    int idx = 0;
    while (idx < r) {
      if (k[idx] < 3) {
        ++k[idx];
        break;
      }
      k[idx] = -3;
      ++idx;
    }
    if (idx == r) break;
  }

  bool all_zero = std::all_of(best.begin(), best.end(), [](long v) { return v == 0; });
  if (all_zero) return y;

  MatI nb(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) nb(i, j) = best_diag[i] * y.x.bi(i, j);
  VecI nv(d);
  for (int i = 0; i < d; ++i) nv[i] = best_diag[i] * y.vi[i];
  return make_grid(lattice_from_matrix(nb), nv);
}

namespace {

// Coefficients of x in the module basis: solve C c = x.coords.
VecQ module_coeffs(const std::vector<FieldElement>& basis, const FieldElement& x) {
  int d = static_cast<int>(basis.size());
  MatQ C(d, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) C(i, j) = basis[j].coords[i];
  VecQ b(d);
  for (int i = 0; i < d; ++i) b[i] = x.coords[i];
  return solve(C, b);
}

bool all_integral(const VecQ& v) {
  for (int i = 0; i < v.size(); ++i)
    if (v[i].get_den() != 1) return false;
  return true;
}

FieldElement from_module_coeffs(const std::vector<FieldElement>& basis,
                                const std::vector<Int>& n) {
  FieldElement acc = FieldElement::zero(basis[0].dim());
  for (size_t j = 0; j < basis.size(); ++j)
    acc = fe_add(acc, fe_scale(Rat(n[j]), basis[j]));
  return acc;
}

// Does u * Lambda = Lambda?  (|Norm u| = 1, so containment suffices.)
bool stabilizes_module(const TotallyRealField& K, const std::vector<FieldElement>& basis,
                       const FieldElement& u) {
  for (const auto& b : basis) {
    if (!all_integral(module_coeffs(basis, fe_mul(K, u, b)))) return false;
  }
  return true;
}

}  // namespace

ExactGridMin exact_grid_min_compact(const TotallyRealField& K,
                                    const std::vector<FieldElement>& basis,
                                    const FieldElement& t, const UnitSet& units) {
  int d = K.degree();
  if (static_cast<int>(basis.size()) != d) throw domain_error("basis size must equal degree");
  ExactGridMin out;

  // Grid through the origin: minimum 0 at lambda = -t.
  VecQ tc = module_coeffs(basis, t);
  if (all_integral(tc)) {
    out.min_norm = 0;
    out.zero_in_grid = true;
    out.witness = FieldElement::zero(d);
    out.witness_coeffs.assign(d, Int(0));
    for (int i = 0; i < d; ++i) out.witness_coeffs[i] = -Int(tc[i].get_num());
    EmbeddingMatrix em = geometric_embedding_matrix(K, basis, Rat(1, 1000000));
    out.scale = em.scale;
    out.scaled_value = RatInterval(Rat(0));
    return out;
  }

  if (units.rank != d - 1)
    throw refused_error("unit rank " + std::to_string(units.rank) + " < " +
                        std::to_string(d - 1) + ": completeness cannot be certified");

  // Replace each generator by a power stabilizing both the module and
  // the coset t + Lambda.
  std::vector<FieldElement> stab_units;
  for (const auto& u : units.units) {
    FieldElement w = u;
    int p = 1;
    for (; p <= 24; ++p) {
      if (stabilizes_module(K, basis, w)) break;
      w = fe_mul(K, w, u);
    }
    if (p > 24) throw refused_error("no unit power stabilizes the module");
    FieldElement wq = w;
    int q = 1;
    for (; q <= 4096; ++q) {
      FieldElement delta = fe_sub(fe_mul(K, wq, t), t);
      if (all_integral(module_coeffs(basis, delta))) break;
      wq = fe_mul(K, wq, w);
    }
    if (q > 4096) throw refused_error("no unit power stabilizes the grid coset");
    stab_units.push_back(wq);
  }

  // Covering radius bound of the log lattice of the stabilizing units:
  // rho_inf <= (sum_i ||log w_i||_inf) / 2.
  Rat exp_eps = pow2(-80);
  Rat rho_hi(0);
  for (const auto& w : stab_units) {
    Rat norm_hi(0);
    for (int i = 1; i <= d; ++i) {
      RatInterval ae = interval_abs(embed(K, w, i, exp_eps));
      RatInterval lg = log_interval(ae, 192);
      norm_hi = std::max(norm_hi, interval_abs(lg).hi);
    }
    rho_hi += norm_hi;
  }
  rho_hi /= 2;

  // Initial upper bound from the nearest module point.
  std::vector<Int> n0(d);
  for (int i = 0; i < d; ++i) n0[i] = -round_int(tc[i]);
  FieldElement xi0 = fe_add(from_module_coeffs(basis, n0), t);
  Rat V = rat_abs(norm_trace(K, xi0).first);
  if (sgn(V) == 0) throw domain_error("unexpected zero norm off the lattice");

  // Complete search region: every grid element with |Norm| <= V has a
  // unit translate with all embeddings bounded by C = e^rho * V^(1/d).
  RatInterval expC = exp_interval(RatInterval(rho_hi, rho_hi), 192);
  RatInterval vroot = nth_root_interval(RatInterval(V), d, pow2(-40));
  Rat C = expC.hi * vroot.hi;
  C += C / 1048576;  // outward slack

  EmbeddingMatrix em = geometric_embedding_matrix(K, basis, pow2(-60));
  MatI einv = inverse(em.M);
  // Coefficient box: n = E^{-1}(y - sigma(t)), y in [-C, C]^d.
  VecI sigt(d);
  for (int i = 0; i < d; ++i) sigt[i] = embed(K, t, i + 1, pow2(-60));
  CoeffBox box;
  box.lo.resize(d);
  box.hi.resize(d);
  box.count = 1;
  for (int i = 0; i < d; ++i) {
    RatInterval acc;
    for (int j = 0; j < d; ++j) {
      RatInterval yj{-C - sigt[j].hi, C - sigt[j].lo};
      acc = acc + einv(i, j) * yj;
    }
    box.lo[i] = ceil_int(acc.lo);
    box.hi[i] = floor_int(acc.hi);
    Int len = box.hi[i] - box.lo[i] + 1;
    if (len < 0) len = 0;
    box.count *= len;
  }
  check_box_size(box);

  bool first = true;
  for_each_coeff(box, [&](const std::vector<Int>& n) {
    FieldElement xi = fe_add(from_module_coeffs(basis, n), t);
    Rat a = rat_abs(norm_trace(K, xi).first);
    if (first || a < out.min_norm) {
      out.min_norm = a;
      out.witness_coeffs = n;
      out.witness = xi;
      first = false;
    }
  });
  if (first || out.min_norm > V) {
    // The box always contains an orbit representative of the optimum;
    // reaching here means interval slack ate it. Fall back to V.
    out.min_norm = V;
    out.witness_coeffs = n0;
    out.witness = xi0;
  }

  out.scale = em.scale;
  out.scaled_value = RatInterval(out.min_norm) * recip(em.det_abs);
  return out;
}

MuResult mu_estimate_sample(const Lattice& x, int k, const Rat& R) {
  if (k < 1) throw domain_error("torus resolution must be >= 1");
  int d = x.dim();
  MuResult out;
  out.certified = false;
  bool first = true;
  std::vector<int> j(d, 0);
  for (;;) {
    std::ostringstream name;
    for (int i = 0; i < d; ++i) name << (i ? "," : "") << j[i] << "/" << k;
    if (x.exact) {
      VecQ v(d);
      for (int i = 0; i < d; ++i)
        for (int c = 0; c < d; ++c) v[i] += x.bq(i, c) * Rat(j[c], k);
      ProductSample s = product_scan(make_grid(x, v), R);
      Rat m = s.points_q.empty() ? Rat(0) : s.min_abs_q;
      out.ledger.push_back({name.str(), RatInterval(m), true, m});
      if (first || m > out.value_exact) {
        out.value_exact = m;
        out.witness = name.str();
        first = false;
      }
    } else {
      VecI v(d);
      for (int i = 0; i < d; ++i)
        for (int c = 0; c < d; ++c) v[i] = v[i] + x.bi(i, c) * RatInterval(Rat(j[c], k));
      ProductSample s = product_scan(make_grid(x, v), R);
      RatInterval m = s.points_i.empty() ? RatInterval(Rat(0)) : s.min_abs_i;
      out.ledger.push_back({name.str(), m, false, Rat(0)});
      if (first || m.mid() > out.value.mid()) {
        out.value = m;
        out.witness = name.str();
        first = false;
      }
    }
    int idx = d - 1;
    while (idx >= 0) {
      if (j[idx] < k - 1) {
        ++j[idx];
        break;
      }
      j[idx] = 0;
      --idx;
    }
    if (idx < 0) break;
  }
  if (x.exact) out.value = RatInterval(out.value_exact);
  return out;
}

MuResult mu_estimate_certified(const TotallyRealField& K,
                               const std::vector<FieldElement>& basis, const UnitSet& units,
                               int m_max) {
  if (m_max < 1) throw domain_error("denominator bound must be >= 1");
  int d = K.degree();
  MuResult out;
  out.certified = true;
  bool first = true;
  for (int m = 1; m <= m_max; ++m) {
    std::vector<int> c(d, 0);
    for (;;) {
      bool nonzero = std::any_of(c.begin(), c.end(), [](int v) { return v != 0; });
      if (nonzero) {
        FieldElement t = FieldElement::zero(d);
        for (int i = 0; i < d; ++i) t = fe_add(t, fe_scale(Rat(c[i], m), basis[i]));
        ExactGridMin g = exact_grid_min_compact(K, basis, t, units);
        std::ostringstream name;
        for (int i = 0; i < d; ++i) name << (i ? "," : "") << c[i] << "/" << m;
        out.ledger.push_back({name.str(), g.scaled_value, true, g.min_norm});
        if (!g.zero_in_grid && (first || g.scaled_value.lo > out.value.lo)) {
          out.value = g.scaled_value;
          out.witness = name.str();
          first = false;
        }
      }
      int idx = d - 1;
      while (idx >= 0) {
        if (c[idx] < m - 1) {
          ++c[idx];
          break;
        }
        c[idx] = 0;
        --idx;
      }
      if (idx < 0) break;
    }
  }
  if (first) throw refused_error("no nonzero rational translation available");
  return out;
}

}  // namespace latprod
