#ifndef LATPROD_DYNAMICS_HPP
#define LATPROD_DYNAMICS_HPP

#include <optional>
#include <string>
#include <vector>

#include "latprod/homspace.hpp"

namespace latprod {

// Affine map (g, v): w -> g w + v, det g = 1. Exact or interval regime.
struct AffineMap {
  bool exact = true;
  MatQ gq;
  VecQ vq;
  MatI gi;
  VecI vi;

  int dim() const { return gi.rows; }

  static AffineMap from_exact(const MatQ& g, const VecQ& v);
  static AffineMap from_exact_linear(const MatQ& g);
  static AffineMap identity(int d);
};

AffineMap compose(const AffineMap& a, const AffineMap& b);
AffineMap affine_inverse(const AffineMap& a);
Grid apply(const AffineMap& a, const Grid& y);
bool operator==(const AffineMap& a, const AffineMap& b);

// diag(exp t): interval entries unless t = 0.
VecI flow_exp(const FlowVector& t, long prec = 128);
// Inverse: requires positive entries with product 1 (exactly, in the
// rational regime; interval containing 1 otherwise).
FlowVector flow_log(const VecQ& diag, long prec = 128);
// alpha(t) for exact flow vectors.
Rat root_value(const Root& alpha, const VecQ& t);
RatInterval root_value(const Root& alpha, const FlowVector& t);

// Unipotent u_alpha(s) as an affine map (elementary matrix for pair
// roots, pure translation s*e_k for single roots).
AffineMap unipotent(int d, const Root& alpha, const Rat& s);

// a u_alpha(s) a^{-1} = u_alpha(s') with s' = e^{alpha(log a)} s; exact
// for rational positive diagonals (the factor is a_i/a_j or a_k).
Rat conjugate_unipotent(const VecQ& diag, const Root& alpha, const Rat& s);

// Unique factorization g = c * u_plus * u_minus relative to a regular
// positive rational diagonal b; exact. Throws domain_error when b is
// not regular (the offending roots are listed) and a distinct
// domain_error when g sits outside the open factorization cell.
struct HorosphericalSplit {
  AffineMap c, u_plus, u_minus;
};
HorosphericalSplit horospherical_split(const AffineMap& g, const VecQ& b);

// Compact-orbit data built from a unit set of rank d-1: the normalized
// geometric-embedding lattice and the log-stabilizer built from unit
// squares (squares are totally positive, so their embedding diagonals
// lie in the positive diagonal group).
struct StabilizerData {
  std::vector<FlowVector> omega_basis;   // log(sigma(omega_i)), interval regime
  std::vector<FieldElement> unit_elems;  // omega_i = u_i^2
  RatInterval covolume;                  // of the log lattice in the hyperplane
  // Source field, kept so certificates can refine their enclosures.
  std::optional<TotallyRealField> field;
};

struct CompactOrbit {
  Lattice x0;          // normalized embedding lattice (interval regime)
  StabilizerData stab;
  MatI embedding;      // unnormalized sigma_i(basis_j)
  RatInterval scale;
  // Verification: interval enclosures of B^{-1} diag(sigma(omega)) B,
  // one per stabilizer generator, each containing the exact integer
  // multiplication matrix with entry widths below the bound requested.
  std::vector<MatI> verification;
  std::vector<MatQ> exact_mult;  // M_{omega_i}, exact integer entries
};

CompactOrbit compact_orbit_lattice(const TotallyRealField& K,
                                   const std::vector<FieldElement>& basis,
                                   const UnitSet& units,
                                   const Rat& verify_width = pow2(-28));

// No integer relation p*alpha(w1) + q*alpha(w2) = 0 with
// 0 < max(|p|,|q|) <= bound, certified by interval exclusion. Never
// reports "dependent": on persistent straddle it throws
// precision_error. The reported epsilon is an achieved small positive
// group element (an upper bound on min |p a1 + q a2| over the scan).
struct IndependenceReport {
  bool certified = false;
  long bound = 0;
  Rat epsilon;      // the group meets (0, epsilon]
  Rat min_abs_lb;   // certified lower bound over the scanned combinations
};
IndependenceReport independence_check(const StabilizerData& stab, const Root& alpha,
                                      long coeff_bound);

// Points on the ray {a' + s * direction, s >= 0} (a' = (-m, 0, m))
// lying in the half-plane t_2 - t_3 <= -m, at which the distance to the
// stabilizer log-lattice achieves a running record. delta values are
// nonincreasing; an exactly periodic direction yields delta = 0.
struct RecurrencePoint {
  FlowVector t;
  RatInterval s;
  RatInterval delta;     // Euclidean distance enclosure
  std::vector<Int> nearest;  // lattice coefficients of the near point
};
std::vector<RecurrencePoint> recurrence_sequence(const StabilizerData& stab,
                                                 const FlowVector& direction, const Rat& m,
                                                 int count);

// p = u_23(delta/mu) * b1 * b2 for the lower-block pattern
// (a 0 0 / b g d / e tau mu), tau != 0, mu != 0; exact.
struct ShrinkingFactors {
  Rat t0;
  MatQ b1, b2;
};
ShrinkingFactors factor_shrinking(const MatQ& p);

// p = g_v * g0^{-1} with the zero/nonzero pattern report. Generic exact
// version; tau/mu are the (3,2) and (3,3) entries.
struct ConjugatorReport {
  MatQ p;
  bool pattern_zero_ok = false;  // first row is (alpha, 0, 0)
  bool tau_nonzero = false;
  bool mu_nonzero = false;
};
ConjugatorReport solve_conjugator(const MatQ& g0, const VecQ& v);

// Field-data version: g0 is the geometric embedding of (1, alpha,
// beta); the first-row zero pattern holds exactly by the trace-form
// identity, and tau, mu are certified nonzero by interval refinement.
struct ConjugatorFieldReport {
  MatI p;
  RatInterval tau, mu;
  bool certified_nonzero = false;
};
ConjugatorFieldReport solve_conjugator_field(const TotallyRealField& K,
                                             const FieldElement& alpha,
                                             const FieldElement& beta);

// Diagnostics: shortest-vector length of a*x (sup norm) and distances
// to target lattices after canonical basis reduction. Double precision,
// deterministic.
struct OrbitScanRow {
  std::vector<double> flow;
  double shortest = 0;
  std::vector<double> target_dist;
};
std::vector<OrbitScanRow> orbit_scan(const Lattice& x, const std::vector<FlowVector>& flows,
                                     const std::vector<Lattice>& targets);

}  // namespace latprod

#endif
