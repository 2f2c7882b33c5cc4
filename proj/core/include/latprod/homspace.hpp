#ifndef LATPROD_HOMSPACE_HPP
#define LATPROD_HOMSPACE_HPP

#include <optional>
#include <string>
#include <vector>

#include "latprod/flow.hpp"
#include "latprod/numberfield.hpp"

namespace latprod {

// Point of the space of unimodular lattices. Two numeric regimes:
// exact (rational basis matrix, |det| == 1 checked exactly) and
// certified (interval matrix whose |det| interval must contain 1).
// The interval view is always populated.
struct Lattice {
  bool exact = true;
  MatQ bq;
  MatI bi;
  RatInterval det_abs;  // [1,1] in the exact regime

  int dim() const { return bi.rows; }
};

Lattice lattice_from_matrix(const MatQ& basis);
Lattice lattice_from_matrix(const MatI& basis);

// Lattice spanned by the columns of [[I, v], [0, 1]].
Lattice h_lattice(const VecQ& v);
Lattice h_lattice(const VecI& v);
// Lattice spanned by the columns of [[1, v^t], [0, I]].
Lattice z_lattice(const VecQ& v);
Lattice z_lattice(const VecI& v);
// Dual lattice: basis (B^t)^{-1}.
Lattice dual(const Lattice& x);

Lattice integer_lattice(int d);

// Grid: a lattice translate x + v.
struct Grid {
  Lattice x;
  bool exact = true;
  VecQ vq;
  VecI vi;

  int dim() const { return x.dim(); }
};

Grid make_grid(const Lattice& x, const VecQ& shift);
Grid make_grid(const Lattice& x, const VecI& shift);

// Signed coordinate product N(w).
Rat coordinate_product(const VecQ& w);
RatInterval coordinate_product(const VecI& w);

// A grid point together with its integer coefficient vector.
struct GridPointQ {
  std::vector<Int> coeffs;
  VecQ w;
};
struct GridPointI {
  std::vector<Int> coeffs;
  VecI w;
};

// All points w of the grid with sup-norm <= R. Exact regime: the list
// is exactly the box contents. Certified regime: conservative, i.e. a
// point is included unless it is certainly outside, so nothing within
// the box is ever missed. Refuses boxes with more than 10^8 candidates.
std::vector<GridPointQ> enumerate_grid_points(const Grid& y, const Rat& R);
std::vector<GridPointI> enumerate_grid_points_certified(const Grid& y, const Rat& R);

// Truncated product-set sample over the sup-norm box of radius R.
struct ProductSample {
  bool exact = true;
  Rat radius;
  // Entries: grid point coordinates and signed product value.
  std::vector<GridPointQ> points_q;
  std::vector<Rat> values_q;
  std::vector<GridPointI> points_i;
  std::vector<RatInterval> values_i;
  // Smallest |value|; an upper bound for the grid minimum.
  Rat min_abs_q;            // exact regime
  RatInterval min_abs_i;    // certified regime
  int witness = -1;         // index into the entry arrays
};

ProductSample product_scan(const Grid& y, const Rat& R);

// Pick a = exp(sum k_i stab_i), |k_i| <= 3, minimizing the max row norm
// of the acted basis; returns a*y. Product values along the grid are
// unchanged. Result is in the certified regime unless stab is empty.
Grid unit_reduce(const Grid& y, const std::vector<FlowVector>& stab);

// Exact inhomogeneous data for a compact-orbit grid: the minimum of
// |Norm(lambda + t)| over the module Lambda spanned by `basis`, by
// complete unit-orbit enumeration. Values lie in (1/m^d) Z, so the
// minimum is attained and exact.
struct ExactGridMin {
  Rat min_norm;            // min |Norm(lambda + t)|, exact
  RatInterval scale;       // normalizing scalar c of the embedding
  RatInterval scaled_value;  // min_norm * c^d = grid minimum of the normalized grid
  std::vector<Int> witness_coeffs;  // lambda coefficients in `basis`
  FieldElement witness;    // lambda + t
  bool zero_in_grid = false;
};

ExactGridMin exact_grid_min_compact(const TotallyRealField& K,
                                    const std::vector<FieldElement>& basis,
                                    const FieldElement& t, const UnitSet& units);

// Inhomogeneous-minimum estimation.
struct MuLedgerEntry {
  std::string translation;  // printable
  RatInterval value;
  bool exact = false;
  Rat value_exact;
};

struct MuResult {
  bool certified = false;     // sample mode: estimate only
  Rat value_exact;            // valid in sample mode (exact lattice)
  RatInterval value;          // certified mode: lower-bound interval
  std::vector<MuLedgerEntry> ledger;
  std::string witness;
};

// Sample mode: max over the k^d torus sample (fundamental-parallelepiped
// coordinates j/k mapped through the basis) of the truncated grid
// minimum at radius R. An estimate: neither an upper nor a lower bound.
MuResult mu_estimate_sample(const Lattice& x, int k, const Rat& R);

// Certified mode: max over rational translations with denominator <=
// m_max of the exact compact-orbit grid minimum, scaled to the
// normalized lattice. A certified lower bound for the inhomogeneous
// minimum.
MuResult mu_estimate_certified(const TotallyRealField& K,
                               const std::vector<FieldElement>& basis, const UnitSet& units,
                               int m_max);

}  // namespace latprod

#endif
