#ifndef LATPROD_DIOPHANTINE_HPP
#define LATPROD_DIOPHANTINE_HPP

#include <string>
#include <vector>

#include "latprod/dynamics.hpp"

namespace latprod {

// A refinable real scan target: exact rational, a field embedding, or a
// plain real algebraic number.
struct ScanTarget {
  enum class Kind { rational, field_embed, algebraic };
  Kind kind = Kind::rational;
  Rat r;
  TotallyRealField field;  // field_embed only (small; copied)
  FieldElement elem;
  int embed_index = 1;
  RealRoot root;

  static ScanTarget make_rational(const Rat& x);
  static ScanTarget make_embed(const TotallyRealField& K, const FieldElement& e, int idx);
  static ScanTarget make_algebraic(const RealRoot& r);

  bool is_rational() const { return kind == Kind::rational; }
  RatInterval enclosure(const Rat& eps) const;
  std::string str() const;
};

// Formula selector. pair_product is the two-factor weighted product;
// weighted_products allows one to three factors; linear_form is the
// |nm| <.> shape with optional half-integer weight shift.
struct TargetSpec {
  enum class Weights { pair_product, weighted_products, linear_form };
  Weights weights = Weights::pair_product;
  std::vector<ScanTarget> alphas;
  std::vector<ScanTarget> gammas;
  Rat weight_shift;  // 0 or 1/2 (linear_form only)
};

struct RunningRecord {
  long long threshold = 0;  // |n| (products) or |n m| (linear form)
  double value = 0;
  long long n = 0, m = 0;
  bool certified = false;
  RatInterval cert;  // enclosure of the exact value at the witness
};

struct ScanResult {
  long long N = 0;
  int workers = 1;
  std::vector<RunningRecord> running_min;  // nonincreasing values
  std::vector<RunningRecord> records;      // near-minima within 2x of the final min
  std::vector<std::string> precision_log;
  double final_min() const { return running_min.empty() ? 0.0 : running_min.back().value; }
};

// min over 1 <= |n| <= N of |n| * prod_i <n a_i - g_i>, incremental
// 128-bit fixed point; running minima re-verified by exact interval
// recomputation to relative error 1e-6.
ScanResult scan_products(const TargetSpec& spec, long long N, int workers = 1);

// min over 0 < |n m| <= N of w(n) w(m) <n a + m b - g> with
// w(t) = |t + weight_shift|; divisor-bounded double loop.
ScanResult scan_linear_form(const TargetSpec& spec, long long N, int workers = 1);

// Positive-floor construction for rationally dependent translations:
// for each q_i, find a rational-coordinate element g_i of the quadratic
// field such that the p  roduct-form floor argument applies with
// gamma_i = sigma_iota(g_i):
//   - the module Z + Z(q_i alpha) translated by g_i has exact positive
//     norm minimum c_i (complete unit-orbit enumeration);
//   - |n + 1/2| <n q_i alpha_real - gamma_i>  >=  c_i * shape(n) with an
//     explicit positive lower bound floor_i;
//   - pairwise separation gamma_i/q_i - gamma_j/q_j stays away from
//     (1/M) Z, M = lcm of the q_i numerators, by rho > 0.
// Total floor: min(eps^k / 2, eps^{k-1} min_i floor_i) for
// eps = rho_lb * min|q_i| / 4.
struct FloorCertificate {
  bool certified = false;
  int embed_index = 2;
  std::vector<Rat> q;
  std::vector<FieldElement> g;
  std::vector<RatInterval> gamma;   // sigma_iota(g_i) enclosures
  std::vector<Rat> grid_min;        // exact module minima c_i
  std::vector<Rat> floor_each;
  Rat rho_lb;
  Int sep_modulus;
  Rat epsilon;
  Rat floor_total;
  std::string notes;
};

FloorCertificate floor_construction(const TotallyRealField& K2, const FieldElement& alpha,
                                    int embed_index, const std::vector<Rat>& q,
                                    const UnitSet& units, int den_sweep_max = 4);

// Consistency scan of min over |n| <= N (n = 0 included) of
// |n + 1/2| prod_i <n q_i alpha - gamma_i>. With a valid certificate the
// scan can never dip below floor_total; if it does, something is broken
// and the call throws.
struct FloorScanResult {
  ScanResult scan;
  long long stabilization_N0 = 0;  // threshold of the last improvement
  bool above_floor = false;
};

FloorScanResult floor_scan(const TotallyRealField& K2, const FieldElement& alpha,
                           const std::vector<Rat>& q, const FloorCertificate& cert,
                           long long N, int workers = 1);

}  // namespace latprod

#endif
