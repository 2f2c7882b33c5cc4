#include "latprod/numberfield.hpp"

#include <algorithm>

namespace latprod {

bool operator==(const FieldElement& a, const FieldElement& b) { return a.coords == b.coords; }

namespace {

void check_same_dim(const FieldElement& a, const FieldElement& b) {
  if (a.dim() != b.dim()) throw domain_error("field elements of mismatched degree");
}

// Power sums s_k = sum_i theta_i^k from the coefficients of monic f
// (Newton's identities).
std::vector<Rat> power_sums(const IntPoly& f) {
  int d = f.degree();
  // e_k: elementary symmetric functions, from f = x^d - e1 x^{d-1} + e2 x^{d-2} - ...
  std::vector<Rat> e(d + 1, Rat(0));
  e[0] = 1;
  for (int k = 1; k <= d; ++k) {
    Rat coef(f.c[d - k]);
    e[k] = (k % 2 == 0 ? coef : -coef);
  }
  std::vector<Rat> s(d, Rat(0));
  s[0] = d;
  for (int k = 1; k < d; ++k) {
    // Newton: s_k = e1 s_{k-1} - e2 s_{k-2} + ... + (-1)^{k-1} k e_k
    Rat sk(0);
    for (int j = 1; j < k; ++j) {
      Rat term = e[j] * s[k - j];
      sk += (j % 2 == 1 ? term : -term);
    }
    sk += (k % 2 == 1 ? Rat(k) * e[k] : -Rat(k) * e[k]);
    s[k] = sk;
  }
  return s;
}

bool has_rational_root(const IntPoly& f) {
  // Monic: any rational root is an integer dividing the constant term.
  if (sgn(f.c[0]) == 0) return true;
  Int c0 = abs(f.c[0]);
  for (Int t(1); t * t <= c0; ++t) {
    if (c0 % t != 0) continue;
    Int other = c0 / t;
    for (const Int& cand : {t, -t, other, -other}) {
      if (sgn(f.eval(Rat(cand))) == 0) return true;
    }
  }
  return false;
}

}  // namespace

TotallyRealField make_field(const IntPoly& f) {
  int d = f.degree();
  if (d != 2 && d != 3) throw domain_error("field degree must be 2 or 3");
  if (!f.is_monic()) throw domain_error("defining polynomial must be monic");
  if (!is_squarefree(f)) throw domain_error("defining polynomial is not squarefree");
  // Degrees 2 and 3: reducible over Q iff a rational (integer) root exists.
  if (has_rational_root(f)) throw domain_error("reducible defining polynomial: " + f.str());
  auto roots = isolate_roots(f);
  if (static_cast<int>(roots.size()) != d)
    throw domain_error("not totally real: " + f.str() + " has " +
                       std::to_string(roots.size()) + " real roots, needs " + std::to_string(d));
  return {f, std::move(roots)};
}

FieldElement fe_add(const FieldElement& a, const FieldElement& b) {
  check_same_dim(a, b);
  std::vector<Rat> c(a.coords);
  for (int i = 0; i < b.dim(); ++i) c[i] += b.coords[i];
  return FieldElement(std::move(c));
}

FieldElement fe_sub(const FieldElement& a, const FieldElement& b) {
  return fe_add(a, fe_neg(b));
}

FieldElement fe_neg(const FieldElement& a) {
  std::vector<Rat> c(a.coords);
  for (auto& x : c) x = -x;
  return FieldElement(std::move(c));
}

FieldElement fe_scale(const Rat& s, const FieldElement& a) {
  std::vector<Rat> c(a.coords);
  for (auto& x : c) x *= s;
  return FieldElement(std::move(c));
}

FieldElement fe_mul(const TotallyRealField& K, const FieldElement& a, const FieldElement& b) {
  check_same_dim(a, b);
  int d = K.degree();
  if (a.dim() != d) throw domain_error("element degree does not match field");
  // Multiply then reduce by theta^d = -(f_{d-1} theta^{d-1} + ... + f_0).
  std::vector<Rat> prod(2 * d - 1, Rat(0));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) prod[i + j] += a.coords[i] * b.coords[j];
  for (int k = 2 * d - 2; k >= d; --k) {
    Rat top = prod[k];
    if (sgn(top) == 0) continue;
    prod[k] = 0;
    for (int j = 0; j < d; ++j) prod[k - d + j] -= top * Rat(K.f.c[j]);
  }
  prod.resize(d);
  return FieldElement(std::move(prod));
}

MatQ multiplication_matrix(const TotallyRealField& K, const FieldElement& a) {
  int d = K.degree();
  MatQ m(d, d);
  FieldElement col = a;
  FieldElement th = FieldElement::theta(d);
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) m(i, j) = col.coords[i];
    if (j + 1 < d) col = fe_mul(K, col, th);
  }
  return m;
}

FieldElement fe_inv(const TotallyRealField& K, const FieldElement& a) {
  if (a.is_zero()) throw domain_error("inverse of zero field element");
  // Extended Euclid: u*g + v*f = 1 with g the coordinate polynomial.
  RatPoly g = a.as_poly();
  RatPoly f = RatPoly::from_int(K.f);
  RatPoly r0 = f, r1 = g;
  RatPoly s0{{}}, s1{{Rat(1)}};
  while (!r1.is_zero() && r1.degree() > 0) {
    auto dv = divmod(r0, r1);
    RatPoly r2 = dv.rem;
    RatPoly s2 = s0 - dv.quot * s1;
    r0 = r1;
    r1 = r2;
    s0 = s1;
    s1 = s2;
  }
  if (r1.is_zero()) throw domain_error("element not invertible (defining poly reducible?)");
  Rat unit = r1.c[0];
  RatPoly inv = (Rat(1) / unit) * s1;
  std::vector<Rat> c(K.degree(), Rat(0));
  for (size_t i = 0; i < inv.c.size(); ++i) c[i] = inv.c[i];
  return FieldElement(std::move(c));
}

FieldElement fe_pow(const TotallyRealField& K, const FieldElement& a, long e) {
  int d = K.degree();
  if (e < 0) return fe_pow(K, fe_inv(K, a), -e);
  FieldElement acc = FieldElement::one(d), base = a;
  while (e > 0) {
    if (e & 1) acc = fe_mul(K, acc, base);
    base = fe_mul(K, base, base);
    e >>= 1;
  }
  return acc;
}

std::pair<Rat, Rat> norm_trace(const TotallyRealField& K, const FieldElement& a) {
  int d = K.degree();
  if (a.dim() != d) throw domain_error("element degree does not match field");
  Rat norm;
  if (a.is_zero()) {
    norm = 0;
  } else {
    // f monic: Res(f, g) = prod_i g(theta_i).
    norm = resultant(RatPoly::from_int(K.f), a.as_poly());
  }
  auto s = power_sums(K.f);
  Rat trace(0);
  for (int i = 0; i < d; ++i) trace += a.coords[i] * s[i];
  return {norm, trace};
}

RatInterval embed(const TotallyRealField& K, const FieldElement& a, int i, const Rat& eps) {
  if (i < 1 || i > K.degree()) throw domain_error("embedding index out of range");
  if (sgn(eps) <= 0) throw domain_error("embedding width must be positive");
  return eval_at_root(a.as_poly(), K.roots[i - 1], eps);
}

namespace {

// True if u equals +- prod units[i]^{e_i} with |e_i| <= ebound.
bool reducible_over(const TotallyRealField& K, const std::vector<FieldElement>& gens,
                    const FieldElement& u, long ebound) {
  int d = K.degree();
  FieldElement one = FieldElement::one(d);
  std::vector<long> e(gens.size(), -ebound);
  if (gens.empty()) {
    return u == one || u == fe_neg(one);
  }
  for (;;) {
    FieldElement prod = one;
    for (size_t i = 0; i < gens.size(); ++i) prod = fe_mul(K, prod, fe_pow(K, gens[i], e[i]));
    if (u == prod || u == fe_neg(prod)) return true;
    size_t k = 0;
    while (k < e.size()) {
      if (e[k] < ebound) {
        ++e[k];
        break;
      }
      e[k] = -ebound;
      ++k;
    }
    if (k == e.size()) return false;
  }
}

// Interval dot product.
RatInterval dot(const std::vector<RatInterval>& x, const std::vector<RatInterval>& y) {
  RatInterval acc;
  for (size_t i = 0; i < x.size(); ++i) acc = acc + x[i] * y[i];
  return acc;
}

}  // namespace

UnitSet find_units(const TotallyRealField& K, long H, const Rat& log_width) {
  if (H < 0) throw domain_error("coordinate bound must be >= 0");
  int d = K.degree();
  UnitSet out;

  // Exhaustive scan of the coordinate box, canonical order.
  std::vector<FieldElement> found;
  std::vector<long> c(d, -H);
  for (;;) {
    std::vector<Rat> coords;
    coords.reserve(d);
    for (long x : c) coords.emplace_back(x);
    FieldElement u(std::move(coords));
    if (!u.is_zero()) {
      Rat n = norm_trace(K, u).first;
      if (n == 1 || n == -1) found.push_back(u);
    }
    int k = 0;
    while (k < d) {
      if (c[k] < H) {
        ++c[k];
        break;
      }
      c[k] = -H;
      ++k;
    }
    if (k == d) break;
  }

  // Canonical order: by max |coordinate|, then lexicographic. Keeps the
  // generator list deterministic and small units first.
  std::sort(found.begin(), found.end(), [](const FieldElement& x, const FieldElement& y) {
    Rat mx(0), my(0);
    for (const auto& v : x.coords) mx = std::max(mx, rat_abs(v));
    for (const auto& v : y.coords) my = std::max(my, rat_abs(v));
    if (mx != my) return mx < my;
    for (int i = 0; i < x.dim(); ++i)
      if (x.coords[i] != y.coords[i]) return x.coords[i] < y.coords[i];
    return false;
  });

  for (const auto& u : found) {
    if (static_cast<int>(out.units.size()) >= d - 1) break;  // Dirichlet rank bound
    if (!reducible_over(K, out.units, u, 5)) out.units.push_back(u);
  }

  // Interval log vectors, refined until every entry excludes zero in
  // absolute value and the entry-sum width is below log_width.
  Rat eps = pow2(-64);
  for (const auto& u : out.units) {
    std::vector<RatInterval> lv(d);
    int rounds = 0;
    for (;;) {
      bool ok = true;
      RatInterval sum;
      for (int i = 1; i <= d; ++i) {
        RatInterval ae = interval_abs(embed(K, u, i, eps));
        if (!ae.excludes_zero()) {
          // A norm +-1 element has no zero embedding; this is a
          // precision failure, not a mathematical one.
          ok = false;
          break;
        }
        lv[i - 1] = log_interval(ae, 192);
        sum = sum + lv[i - 1];
      }
      if (ok && sum.width() <= log_width) break;
      eps *= pow2(-32);
      if (++rounds > 64) throw precision_error("unit log vectors would not certify");
    }
    out.log_vectors.push_back(std::move(lv));
  }

  // Rank certification by interval Gram determinant, escalating the
  // embedding precision until the determinant interval excludes zero.
  int r = static_cast<int>(out.units.size());
  if (r == 0) {
    out.rank = 0;
    return out;
  }
  long prec_round = 0;
  for (;;) {
    MatI gram(r, r);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) gram(i, j) = dot(out.log_vectors[i], out.log_vectors[j]);
    RatInterval g = det(gram);
    if (g.excludes_zero()) {
      out.rank = r;
      break;
    }
    if (++prec_round > 8) throw precision_error("unit rank certificate did not converge");
    // Tighten all log vectors and retry.
    eps *= pow2(-32);
    for (size_t k = 0; k < out.units.size(); ++k) {
      for (int i = 1; i <= d; ++i) {
        RatInterval e = interval_abs(embed(K, out.units[k], i, eps));
        out.log_vectors[k][i - 1] = log_interval(e, 256);
      }
    }
  }
  return out;
}

EmbeddingMatrix geometric_embedding_matrix(const TotallyRealField& K,
                                           const std::vector<FieldElement>& basis,
                                           const Rat& eps) {
  int d = K.degree();
  if (static_cast<int>(basis.size()) != d) throw domain_error("basis size must equal degree");
  // Exact span check on coordinates.
  MatQ coord(d, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) coord(i, j) = basis[j].coords[i];
  if (sgn(det(coord)) == 0) throw domain_error("elements do not form a basis");

  EmbeddingMatrix out;
  Rat entry_eps = eps;
  for (;;) {
    out.M = MatI(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) out.M(i, j) = embed(K, basis[j], i + 1, entry_eps);
    RatInterval dm = det(out.M);
    if (dm.excludes_zero()) {
      out.det_abs = interval_abs(dm);
      break;
    }
    entry_eps /= 1024;
  }

  // Exact cross-check value: trace-form Gram determinant = (det M)^2.
  MatQ gram(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) gram(i, j) = norm_trace(K, fe_mul(K, basis[i], basis[j])).second;
  out.disc = det(gram);

  // Normalizing scalar c = |det M|^{-1/d}.
  Rat root_eps = std::min(eps, Rat(1, 1000000)) / (d * 4);
  RatInterval root = nth_root_interval(out.det_abs, d, root_eps);
  out.scale = recip(root);
  return out;
}

}  // namespace latprod
