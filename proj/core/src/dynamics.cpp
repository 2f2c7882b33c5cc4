#include "latprod/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace latprod {

AffineMap AffineMap::from_exact(const MatQ& g, const VecQ& v) {
  if (det(g) != 1) throw domain_error("affine map linear part must have det 1");
  AffineMap a;
  a.exact = true;
  a.gq = g;
  a.vq = v;
  a.gi = widen(g);
  a.vi = widen(v);
  return a;
}

AffineMap AffineMap::from_exact_linear(const MatQ& g) {
  return from_exact(g, VecQ(g.rows));
}

AffineMap AffineMap::identity(int d) { return from_exact(MatQ::identity(d), VecQ(d)); }

AffineMap compose(const AffineMap& a, const AffineMap& b) {
  if (!a.exact || !b.exact) throw domain_error("interval affine composition not supported");
  return AffineMap::from_exact(a.gq * b.gq, a.gq * b.vq + a.vq);
}

AffineMap affine_inverse(const AffineMap& a) {
  if (!a.exact) throw domain_error("interval affine inverse not supported");
  MatQ gi = inverse(a.gq);
  VecQ nv = gi * a.vq;
  for (int i = 0; i < nv.size(); ++i) nv[i] = -nv[i];
  return AffineMap::from_exact(gi, nv);
}

Grid apply(const AffineMap& a, const Grid& y) {
  if (a.exact && y.exact) {
    Lattice x = lattice_from_matrix(a.gq * y.x.bq);
    return make_grid(x, a.gq * y.vq + a.vq);
  }
  MatI nb = a.gi * y.x.bi;
  VecI nv = a.gi * y.vi + a.vi;
  return make_grid(lattice_from_matrix(nb), nv);
}

bool operator==(const AffineMap& a, const AffineMap& b) {
  return a.exact && b.exact && a.gq == b.gq && a.vq == b.vq;
}

VecI flow_exp(const FlowVector& t, long prec) {
  int d = t.dim();
  VecI out(d);
  for (int i = 0; i < d; ++i) {
    const RatInterval& e = t.as_interval()[i];
    if (e.is_point() && sgn(e.lo) == 0)
      out[i] = RatInterval(Rat(1));
    else
      out[i] = exp_interval(e, prec);
  }
  return out;
}

FlowVector flow_log(const VecQ& diag, long prec) {
  Rat prod(1);
  for (int i = 0; i < diag.size(); ++i) {
    if (sgn(diag[i]) <= 0) throw domain_error("diagonal entries must be positive");
    prod *= diag[i];
  }
  if (prod != 1) throw domain_error("diagonal is not unimodular: product = " + format_rat(prod));
  VecI out(diag.size());
  bool all_one = true;
  for (int i = 0; i < diag.size(); ++i) {
    if (diag[i] == 1) {
      out[i] = RatInterval(Rat(0));
    } else {
      out[i] = log_interval(RatInterval(diag[i]), prec);
      all_one = false;
    }
  }
  if (all_one) return FlowVector::from_exact(VecQ(diag.size()));
  return FlowVector::from_interval(out);
}

Rat root_value(const Root& alpha, const VecQ& t) {
  if (alpha.is_pair) return t[alpha.i - 1] - t[alpha.j - 1];
  return t[alpha.k - 1];
}

RatInterval root_value(const Root& alpha, const FlowVector& t) {
  const VecI& v = t.as_interval();
  if (alpha.is_pair) return v[alpha.i - 1] - v[alpha.j - 1];
  return v[alpha.k - 1];
}

AffineMap unipotent(int d, const Root& alpha, const Rat& s) {
  if (alpha.is_pair) {
    if (alpha.i < 1 || alpha.i > d || alpha.j < 1 || alpha.j > d)
      throw domain_error("root index out of range");
    MatQ m = MatQ::identity(d);
    m(alpha.i - 1, alpha.j - 1) = s;
    return AffineMap::from_exact_linear(m);
  }
  if (alpha.k < 1 || alpha.k > d) throw domain_error("root index out of range");
  VecQ v(d);
  v[alpha.k - 1] = s;
  return AffineMap::from_exact(MatQ::identity(d), v);
}

Rat conjugate_unipotent(const VecQ& diag, const Root& alpha, const Rat& s) {
  Rat prod(1);
  for (int i = 0; i < diag.size(); ++i) {
    if (sgn(diag[i]) <= 0) throw domain_error("diagonal entries must be positive");
    prod *= diag[i];
  }
  if (prod != 1) throw domain_error("diagonal is not unimodular");
  if (alpha.is_pair) return diag[alpha.i - 1] / diag[alpha.j - 1] * s;
  return diag[alpha.k - 1] * s;
}

namespace {

std::string root_name(const Root& a) {
  std::ostringstream os;
  if (a.is_pair)
    os << "pair(" << a.i << "," << a.j << ")";
  else
    os << "single(" << a.k << ")";
  return os.str();
}

}  // namespace

HorosphericalSplit horospherical_split(const AffineMap& g, const VecQ& b) {
  if (!g.exact) throw domain_error("horospherical splitting needs the exact regime");
  int d = g.dim();
  if (b.size() != d) throw domain_error("diagonal dimension mismatch");
  Rat prod(1);
  for (int i = 0; i < d; ++i) {
    if (sgn(b[i]) <= 0) throw domain_error("diagonal entries must be positive");
    prod *= b[i];
  }
  if (prod != 1) throw domain_error("diagonal is not unimodular");

  // Regularity: all roots nonzero at log b.
  std::vector<std::string> vanishing;
  for (int i = 0; i < d; ++i) {
    if (b[i] == 1) vanishing.push_back(root_name(Root::single(i + 1)));
    for (int j = i + 1; j < d; ++j)
      if (b[i] == b[j]) vanishing.push_back(root_name(Root::pair(i + 1, j + 1)));
  }
  if (!vanishing.empty()) {
    std::string msg = "diagonal not regular; vanishing roots:";
    for (const auto& s : vanishing) msg += " " + s;
    throw domain_error(msg);
  }

  // Sort coordinates by descending b; upper triangular becomes the
  // expanding side.
  std::vector<int> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&](int x, int y) { return b[x] > b[y]; });

  MatQ M(d, d);
  for (int s = 0; s < d; ++s)
    for (int t = 0; t < d; ++t) M(s, t) = g.gq(perm[s], perm[t]);

  // Column elimination from the bottom-right: M = T * L with T upper
  // triangular and L lower unipotent; fails exactly when a trailing
  // principal minor vanishes.
  MatQ L = MatQ::identity(d);
  for (int k = d - 1; k >= 1; --k) {
    if (sgn(M(k, k)) == 0)
      throw domain_error("outside the open factorization cell: zero principal minor in b-order");
    for (int j = 0; j < k; ++j) {
      if (sgn(M(k, j)) == 0) continue;
      Rat c = M(k, j) / M(k, k);
      for (int r = 0; r <= k; ++r) M(r, j) -= c * M(r, k);
      M(k, j) = 0;
      // L := E^{-1} L with E^{-1} = I + c e_{kj}: row_k += c * row_j.
      for (int t = 0; t < d; ++t) L(k, t) += c * L(j, t);
    }
  }
  if (sgn(M(0, 0)) == 0)
    throw domain_error("outside the open factorization cell: zero principal minor in b-order");

  MatQ D(d, d), U = MatQ::identity(d);
  for (int i = 0; i < d; ++i) D(i, i) = M(i, i);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) U(i, j) = M(i, j) / M(i, i);

  // Vector part: v = D U w_minus + D w_plus with w_minus supported on
  // contracting coordinates (b < 1) and w_plus on expanding ones.
  VecQ vs(d);
  for (int s = 0; s < d; ++s) vs[s] = g.vq[perm[s]];
  VecQ z(d);
  for (int s = 0; s < d; ++s) z[s] = vs[s] / D(s, s);
  std::vector<bool> contracting(d);
  for (int s = 0; s < d; ++s) contracting[s] = b[perm[s]] < 1;
  VecQ wminus(d), wplus(d);
  for (int s = d - 1; s >= 0; --s) {
    if (!contracting[s]) continue;
    Rat acc = z[s];
    for (int t = s + 1; t < d; ++t)
      if (contracting[t]) acc -= U(s, t) * wminus[t];
    wminus[s] = acc;
  }
  for (int s = 0; s < d; ++s) {
    if (contracting[s]) continue;
    Rat acc = z[s];
    for (int t = 0; t < d; ++t)
      if (contracting[t]) acc -= U(s, t) * wminus[t];
    wplus[s] = acc;
  }

  // Unsort everything.
  auto unsort_mat = [&](const MatQ& A) {
    MatQ out(d, d);
    for (int s = 0; s < d; ++s)
      for (int t = 0; t < d; ++t) out(perm[s], perm[t]) = A(s, t);
    return out;
  };
  auto unsort_vec = [&](const VecQ& w) {
    VecQ out(d);
    for (int s = 0; s < d; ++s) out[perm[s]] = w[s];
    return out;
  };

  HorosphericalSplit split;
  split.c = AffineMap::from_exact(unsort_mat(D), VecQ(d));
  split.u_plus = AffineMap::from_exact(unsort_mat(U), unsort_vec(wplus));
  split.u_minus = AffineMap::from_exact(unsort_mat(L), unsort_vec(wminus));
  return split;
}

namespace {

VecQ fe_coords_vec(const FieldElement& x) {
  VecQ v(x.dim());
  for (int i = 0; i < x.dim(); ++i) v[i] = x.coords[i];
  return v;
}

// Coefficients of x in the module basis.
VecQ module_coords(const std::vector<FieldElement>& basis, const FieldElement& x) {
  int d = static_cast<int>(basis.size());
  MatQ C(d, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) C(i, j) = basis[j].coords[i];
  return solve(C, fe_coords_vec(x));
}

bool integral_vec(const VecQ& v) {
  for (int i = 0; i < v.size(); ++i)
    if (v[i].get_den() != 1) return false;
  return true;
}

bool stabilizes(const TotallyRealField& K, const std::vector<FieldElement>& basis,
                const FieldElement& u) {
  for (const auto& bel : basis)
    if (!integral_vec(module_coords(basis, fe_mul(K, u, bel)))) return false;
  return true;
}

}  // namespace

CompactOrbit compact_orbit_lattice(const TotallyRealField& K,
                                   const std::vector<FieldElement>& basis,
                                   const UnitSet& units, const Rat& verify_width) {
  int d = K.degree();
  if (units.rank != d - 1)
    throw refused_error("compact orbit construction needs unit rank d-1");

  CompactOrbit orbit;
  EmbeddingMatrix em = geometric_embedding_matrix(K, basis, pow2(-80));
  orbit.embedding = em.M;
  orbit.scale = em.scale;

  // Normalized lattice: scale * M, det interval must contain 1.
  {
    MatI nb(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) nb(i, j) = em.scale * em.M(i, j);
    orbit.x0 = lattice_from_matrix(nb);
  }

  // Coordinate change from power basis to the module basis.
  MatQ C(d, d);
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) C(i, j) = basis[j].coords[i];
  MatQ Cinv = inverse(C);

  for (const auto& u : units.units) {
    // Unit squares are totally positive; take a further power if the
    // square does not stabilize a non-monogenic module basis.
    FieldElement omega = fe_mul(K, u, u);
    int tries = 0;
    while (!stabilizes(K, basis, omega)) {
      omega = fe_mul(K, omega, fe_mul(K, u, u));
      if (++tries > 12) throw refused_error("no unit-square power stabilizes the module");
    }
    MatQ exact = Cinv * multiplication_matrix(K, omega) * C;
    for (const auto& entry : exact.a)
      if (entry.get_den() != 1)
        throw refused_error("stabilizer matrix is not integral");

    // Interval verification B^{-1} diag(sigma(omega)) B, refined until
    // the width target is met and each entry captures its integer.
    Rat eps = pow2(-64);
    MatI verify;
    for (int round = 0;; ++round) {
      MatI M(d, d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) M(i, j) = embed(K, basis[j], i + 1, eps);
      VecI diag(d);
      for (int i = 0; i < d; ++i) diag[i] = embed(K, omega, i + 1, eps);
      MatI dm(d, d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) dm(i, j) = diag[i] * M(i, j);
      verify = inverse(M) * dm;
      bool ok = true;
      for (int i = 0; i < d && ok; ++i)
        for (int j = 0; j < d && ok; ++j) {
          if (verify(i, j).width() >= verify_width) ok = false;
          if (!verify(i, j).contains(exact(i, j))) ok = false;
        }
      if (ok) break;
      if (round > 12) throw precision_error("stabilizer verification would not certify");
      eps *= pow2(-32);
    }
    orbit.verification.push_back(verify);
    orbit.exact_mult.push_back(exact);

    // Logarithm of the embedding diagonal.
    Rat leps = pow2(-96);
    VecI lv(d);
    for (int i = 0; i < d; ++i) {
      RatInterval e = embed(K, omega, i + 1, leps);
      if (sgn(e.lo) <= 0) throw precision_error("totally positive unit embedding straddles 0");
      lv[i] = log_interval(e, 256);
    }
    orbit.stab.omega_basis.push_back(FlowVector::from_interval(lv));
    orbit.stab.unit_elems.push_back(omega);
  }
  orbit.stab.field = K;

  // Covolume of the log lattice inside the trace-zero hyperplane.
  const auto& ob = orbit.stab.omega_basis;
  if (d == 2) {
    RatInterval q = ob[0].as_interval()[0] * ob[0].as_interval()[0] +
                    ob[0].as_interval()[1] * ob[0].as_interval()[1];
    orbit.stab.covolume = nth_root_interval(q, 2, pow2(-40));
  } else {
    const VecI& a = ob[0].as_interval();
    const VecI& b = ob[1].as_interval();
    RatInterval c0 = a[1] * b[2] - a[2] * b[1];
    RatInterval c1 = a[2] * b[0] - a[0] * b[2];
    RatInterval c2 = a[0] * b[1] - a[1] * b[0];
    RatInterval q = c0 * c0 + c1 * c1 + c2 * c2;
    orbit.stab.covolume = nth_root_interval(q, 2, pow2(-40));
  }
  return orbit;
}

IndependenceReport independence_check(const StabilizerData& stab, const Root& alpha,
                                      long coeff_bound) {
  if (stab.omega_basis.size() != 2 || stab.omega_basis[0].dim() != 3)
    throw refused_error("independence check needs d = 3 and stabilizer rank 2");
  if (coeff_bound < 1) throw domain_error("coefficient bound must be >= 1");

  RatInterval r1 = root_value(alpha, stab.omega_basis[0]);
  RatInterval r2 = root_value(alpha, stab.omega_basis[1]);

  for (int round = 0;; ++round) {
    bool straddle = false;
    Rat min_lb;
    Rat min_ub;
    bool first = true;
    for (long p = -coeff_bound; p <= coeff_bound && !straddle; ++p) {
      for (long q = -coeff_bound; q <= coeff_bound; ++q) {
        if (p == 0 && q == 0) continue;
        RatInterval comb = interval_abs(Rat(p) * r1 + Rat(q) * r2);
        if (!comb.excludes_zero()) {
          straddle = true;
          break;
        }
        if (first || comb.lo < min_lb) min_lb = comb.lo;
        if (first || comb.hi < min_ub) min_ub = comb.hi;
        first = false;
      }
    }
    if (!straddle) {
      IndependenceReport rep;
      rep.certified = true;
      rep.bound = coeff_bound;
      rep.min_abs_lb = min_lb;
      rep.epsilon = min_ub;
      return rep;
    }
    // Escalate: recompute the log vectors at higher precision.
    if (!stab.field || stab.unit_elems.size() != 2 || round > 10)
      throw precision_error("independence certificate straddles zero; cannot refine further");
    Rat eps = pow2(-128 - 64 * round);
    auto refine = [&](const FieldElement& w) {
      VecI lv(3);
      for (int i = 0; i < 3; ++i) {
        RatInterval e = interval_abs(embed(*stab.field, w, i + 1, eps));
        lv[i] = log_interval(e, 256 + 64 * round);
      }
      return FlowVector::from_interval(lv);
    };
    r1 = root_value(alpha, refine(stab.unit_elems[0]));
    r2 = root_value(alpha, refine(stab.unit_elems[1]));
  }
}

std::vector<RecurrencePoint> recurrence_sequence(const StabilizerData& stab,
                                                 const FlowVector& direction, const Rat& m,
                                                 int count) {
  if (count < 0) throw domain_error("count must be >= 0");
  std::vector<RecurrencePoint> out;
  if (count == 0) return out;
  if (stab.omega_basis.empty()) throw refused_error("empty stabilizer");
  int d = direction.dim();
  if (d != 3) throw refused_error("recurrence sequences are built for d = 3");
  int r = static_cast<int>(stab.omega_basis.size());

  // a' = (-m, 0, m).
  VecI aprime(3);
  aprime[0] = RatInterval(-m);
  aprime[2] = RatInterval(m);
  const VecI& dir = direction.as_interval();
  RatInterval dd;
  for (int i = 0; i < 3; ++i) dd = dd + dir[i] * dir[i];
  if (!dd.excludes_zero()) throw domain_error("direction must be nonzero");

  struct Candidate {
    Rat skey;
    std::vector<Int> coeffs;
    RatInterval s, delta2, t2mt3;
    VecI point;
  };

  long bound = 4;
  for (; bound <= 512; bound *= 2) {
    std::vector<Candidate> cands;
    std::vector<long> k(r, -bound);
    for (;;) {
      bool nonzero = std::any_of(k.begin(), k.end(), [](long v) { return v != 0; });
      if (nonzero) {
        VecI p(3);
        for (int i = 0; i < r; ++i)
          for (int c = 0; c < 3; ++c)
            p[c] = p[c] + Rat(k[i]) * stab.omega_basis[i].as_interval()[c];
        // Projection parameter of p - a' on the ray.
        RatInterval num;
        for (int c = 0; c < 3; ++c) num = num + (p[c] - aprime[c]) * dir[c];
        RatInterval s = num / dd;
        if (sgn(s.lo) >= 0) {
          VecI pt(3);
          RatInterval delta2;
          for (int c = 0; c < 3; ++c) {
            pt[c] = aprime[c] + s * dir[c];
            RatInterval diff = pt[c] - p[c];
            delta2 = delta2 + diff * diff;
          }
          Candidate cand;
          cand.skey = s.mid();
          cand.coeffs.assign(k.begin(), k.end());
          cand.s = s;
          cand.delta2 = delta2;
          cand.t2mt3 = pt[1] - pt[2];
          cand.point = pt;
          cands.push_back(std::move(cand));
        }
      }
      int idx = 0;
      while (idx < r) {
        if (k[idx] < bound) {
          ++k[idx];
          break;
        }
        k[idx] = -bound;
        ++idx;
      }
      if (idx == r) break;
    }

    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
      if (a.skey != b.skey) return a.skey < b.skey;
      return a.coeffs < b.coeffs;
    });

    out.clear();
    bool have_record = false;
    Rat record;
    for (const auto& cand : cands) {
      // Half-plane constraint, certified (exact when inputs are exact).
      if (cand.t2mt3.hi > -m) continue;
      Rat d2_ub = cand.delta2.hi;
      if (have_record && d2_ub > record) continue;
      RecurrencePoint rp;
      rp.t = direction.exact && cand.s.is_point() && cand.point[0].is_point() &&
                     cand.point[1].is_point() && cand.point[2].is_point()
                 ? FlowVector::from_exact(VecQ(std::vector<Rat>{cand.point[0].lo,
                                                                cand.point[1].lo,
                                                                cand.point[2].lo}))
                 : FlowVector::from_interval(cand.point);
      rp.s = cand.s;
      rp.delta = nth_root_interval(interval_abs(cand.delta2), 2, pow2(-40));
      rp.nearest = cand.coeffs;
      out.push_back(std::move(rp));
      record = d2_ub;
      have_record = true;
      if (static_cast<int>(out.size()) == count) return out;
    }
  }
  throw precision_error("recurrence enumeration bound exhausted before finding " +
                        std::to_string(count) + " records");
}

ShrinkingFactors factor_shrinking(const MatQ& p) {
  if (p.rows != 3 || p.cols != 3) throw domain_error("shrinking factorization needs 3x3");
  if (det(p) != 1) throw domain_error("matrix must have det 1");
  if (sgn(p(0, 1)) != 0 || sgn(p(0, 2)) != 0)
    throw domain_error("wrong zero pattern: first row must be (alpha, 0, 0)");
  const Rat& delta = p(1, 2);
  const Rat& tau = p(2, 1);
  const Rat& mu = p(2, 2);
  if (sgn(tau) == 0) throw domain_error("tau = 0: pattern not admissible");
  if (sgn(mu) == 0) throw domain_error("mu = 0: pattern not admissible");

  ShrinkingFactors f;
  f.t0 = delta / mu;
  f.b1 = MatQ(3, 3);
  f.b1(0, 0) = p(0, 0);
  f.b1(1, 0) = p(1, 0) - delta * p(2, 0) / mu;
  f.b1(1, 1) = p(1, 1) - delta * tau / mu;
  f.b1(2, 0) = p(2, 0);
  f.b1(2, 2) = mu;
  f.b2 = MatQ::identity(3);
  f.b2(2, 1) = tau / mu;
  return f;
}

ConjugatorReport solve_conjugator(const MatQ& g0, const VecQ& v) {
  if (g0.rows != 3 || g0.cols != 3) throw domain_error("conjugator solve needs 3x3");
  if (v.size() != 2) throw domain_error("v must be a 2-vector");
  if (sgn(det(g0)) == 0) throw domain_error("singular g0");
  MatQ gv = MatQ::identity(3);
  gv(0, 1) = v[0];
  gv(0, 2) = v[1];
  ConjugatorReport rep;
  rep.p = gv * inverse(g0);
  rep.pattern_zero_ok = sgn(rep.p(0, 1)) == 0 && sgn(rep.p(0, 2)) == 0;
  rep.tau_nonzero = sgn(rep.p(2, 1)) != 0;
  rep.mu_nonzero = sgn(rep.p(2, 2)) != 0;
  return rep;
}

ConjugatorFieldReport solve_conjugator_field(const TotallyRealField& K,
                                             const FieldElement& alpha,
                                             const FieldElement& beta) {
  if (K.degree() != 3) throw refused_error("conjugator field solve needs a cubic field");
  std::vector<FieldElement> basis = {FieldElement::one(3), alpha, beta};
  // Basis check happens inside the embedding-matrix construction.
  Rat eps = pow2(-64);
  for (int round = 0;; ++round) {
    EmbeddingMatrix em = geometric_embedding_matrix(K, basis, eps);
    // g0 = c * S, rows sigma_1..sigma_3; v = (sigma_1(alpha), sigma_1(beta)).
    MatI g0(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) g0(i, j) = em.scale * em.M(i, j);
    MatI gv = widen(MatQ::identity(3));
    gv(0, 1) = em.M(0, 1);
    gv(0, 2) = em.M(0, 2);
    ConjugatorFieldReport rep;
    bool ok = true;
    try {
      rep.p = gv * inverse(g0);
    } catch (const precision_error&) {
      ok = false;
    }
    if (ok) {
      rep.tau = rep.p(2, 1);
      rep.mu = rep.p(2, 2);
      if (rep.tau.excludes_zero() && rep.mu.excludes_zero()) {
        rep.certified_nonzero = true;
        return rep;
      }
      if (round > 10) {
        rep.certified_nonzero = false;  // escalation exhausted; flagged
        return rep;
      }
    }
    if (round > 12) throw precision_error("conjugator pattern would not certify");
    eps *= pow2(-32);
  }
}

namespace {

std::vector<std::vector<double>> lattice_columns_mid(const Lattice& x) {
  int d = x.dim();
  std::vector<std::vector<double>> cols(d, std::vector<double>(d));
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i) cols[j][i] = to_double(x.bi(i, j).mid());
  return cols;
}

// Deterministic column normalization: flip signs so the first nonzero
// entry is positive, then sort by sup norm (ties by lexicographic).
void canonicalize_columns(std::vector<std::vector<double>>& cols) {
  for (auto& c : cols) {
    for (double v : c) {
      if (v < 0) {
        for (auto& w : c) w = -w;
        break;
      }
      if (v > 0) break;
    }
  }
  std::sort(cols.begin(), cols.end(), [](const auto& a, const auto& b) {
    double na = 0, nb = 0;
    for (double v : a) na = std::max(na, std::fabs(v));
    for (double v : b) nb = std::max(nb, std::fabs(v));
    if (na != nb) return na < nb;
    return a < b;
  });
}

std::vector<std::vector<int>> build_small_unimodular(int d) {
  std::vector<std::vector<int>> out;
  int n = d * d;
  std::vector<int> e(n, -1);
  for (;;) {
    MatQ m(d, d);
    for (int i = 0; i < n; ++i) m.a[i] = e[i];
    Rat dt = det(m);
    if (dt == 1 || dt == -1) out.push_back(e);
    int k = 0;
    while (k < n) {
      if (e[k] < 1) {
        ++e[k];
        break;
      }
      e[k] = -1;
      ++k;
    }
    if (k == n) break;
  }
  return out;
}

// Unimodular matrices with entries in {-1, 0, 1}.
const std::vector<std::vector<int>>& small_unimodular(int d) {
  static const std::vector<std::vector<int>> two = build_small_unimodular(2);
  static const std::vector<std::vector<int>> three = build_small_unimodular(3);
  return d == 2 ? two : three;
}

}  // namespace

std::vector<OrbitScanRow> orbit_scan(const Lattice& x, const std::vector<FlowVector>& flows,
                                     const std::vector<Lattice>& targets) {
  int d = x.dim();
  std::vector<OrbitScanRow> rows;
  rows.reserve(flows.size());

  std::vector<std::vector<std::vector<double>>> target_cols;
  for (const auto& t : targets) {
    auto cols = lattice_columns_mid(t);
    canonicalize_columns(cols);
    target_cols.push_back(std::move(cols));
  }
  const auto& units = small_unimodular(d);

  for (const auto& f : flows) {
    OrbitScanRow row;
    for (int i = 0; i < d; ++i) row.flow.push_back(to_double(f.as_interval()[i].mid()));
    // Acted basis a*x as doubles.
    std::vector<std::vector<double>> cols(d, std::vector<double>(d));
    for (int j = 0; j < d; ++j)
      for (int i = 0; i < d; ++i)
        cols[j][i] = std::exp(row.flow[i]) * to_double(x.bi(i, j).mid());

    // Shortest nonzero vector in sup norm: enumerate coefficients in a
    // box derived from the inverse, radius = best known.
    double best = 0;
    for (int j = 0; j < d; ++j) {
      double n = 0;
      for (int i = 0; i < d; ++i) n = std::max(n, std::fabs(cols[j][i]));
      if (j == 0 || n < best) best = n;
    }
    {
      int n = d;
      std::vector<std::vector<double>> a(n, std::vector<double>(2 * n, 0));
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a[i][j] = cols[j][i];
        a[i][n + i] = 1;
      }
      for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r = c + 1; r < n; ++r)
          if (std::fabs(a[r][c]) > std::fabs(a[piv][c])) piv = r;
        std::swap(a[c], a[piv]);
        double pv = a[c][c];
        for (int j = 0; j < 2 * n; ++j) a[c][j] /= pv;
        for (int r = 0; r < n; ++r) {
          if (r == c) continue;
          double f2 = a[r][c];
          for (int j = 0; j < 2 * n; ++j) a[r][j] -= f2 * a[c][j];
        }
      }
      // coefficient bounds: |n_i| <= sum_j |inv(i,j)| * best * 1.0001
      std::vector<long> lim(n);
      for (int i = 0; i < n; ++i) {
        double s = 0;
        for (int j = 0; j < n; ++j) s += std::fabs(a[i][n + j]);
        lim[i] = static_cast<long>(std::floor(s * best * 1.0001)) + 1;
      }
      std::vector<long> c(n);
      for (int i = 0; i < n; ++i) c[i] = -lim[i];
      for (;;) {
        bool nz = std::any_of(c.begin(), c.end(), [](long v) { return v != 0; });
        if (nz) {
          double norm = 0;
          for (int i = 0; i < n; ++i) {
            double w = 0;
            for (int j = 0; j < n; ++j) w += cols[j][i] * static_cast<double>(c[j]);
            norm = std::max(norm, std::fabs(w));
          }
          if (norm < best) best = norm;
        }
        int k = 0;
        while (k < n) {
          if (c[k] < lim[k]) {
            ++c[k];
            break;
          }
          c[k] = -lim[k];
          ++k;
        }
        if (k == n) break;
      }
    }
    row.shortest = best;

    // Distance to each target after canonical reduction, minimized over
    // small unimodular basis changes.
    auto my_cols = cols;
    canonicalize_columns(my_cols);
    for (const auto& tc : target_cols) {
      double bestd = 0;
      bool first = true;
      for (const auto& u : units) {
        // columns of A*U
        double dist = 0;
        for (int j = 0; j < d; ++j) {
          for (int i = 0; i < d; ++i) {
            double v = 0;
            for (int k2 = 0; k2 < d; ++k2) v += my_cols[k2][i] * u[static_cast<size_t>(k2) * d + j];
            dist = std::max(dist, std::fabs(v - tc[j][i]));
          }
        }
        if (first || dist < bestd) {
          bestd = dist;
          first = false;
        }
      }
      row.target_dist.push_back(bestd);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace latprod
