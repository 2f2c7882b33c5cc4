#ifndef LATPROD_NUMBERFIELD_HPP
#define LATPROD_NUMBERFIELD_HPP

#include <utility>
#include <vector>

#include "latprod/linalg.hpp"
#include "latprod/realroot.hpp"

namespace latprod {

// Totally real field Q[x]/(f), f monic irreducible of degree 2 or 3
// with all roots real. Roots are stored sorted ascending; embedding
// index i (1-based) means "evaluate at the i-th smallest root".
struct TotallyRealField {
  IntPoly f;
  std::vector<RealRoot> roots;

  int degree() const { return f.degree(); }
};

// Element in power-basis coordinates (1, theta, ..., theta^{d-1}).
struct FieldElement {
  std::vector<Rat> coords;

  FieldElement() = default;
  explicit FieldElement(std::vector<Rat> c) : coords(std::move(c)) {}
  static FieldElement zero(int d) { return FieldElement(std::vector<Rat>(d, Rat(0))); }
  static FieldElement one(int d) {
    std::vector<Rat> c(d, Rat(0));
    c[0] = 1;
    return FieldElement(std::move(c));
  }
  static FieldElement theta(int d) {
    std::vector<Rat> c(d, Rat(0));
    c[1] = 1;
    return FieldElement(std::move(c));
  }
  static FieldElement rational(int d, const Rat& r) {
    std::vector<Rat> c(d, Rat(0));
    c[0] = r;
    return FieldElement(std::move(c));
  }

  int dim() const { return static_cast<int>(coords.size()); }
  bool is_zero() const {
    for (const auto& x : coords)
      if (sgn(x) != 0) return false;
    return true;
  }
  bool is_integral() const {
    for (const auto& x : coords)
      if (x.get_den() != 1) return false;
    return true;
  }
  RatPoly as_poly() const { return RatPoly(coords); }
};

bool operator==(const FieldElement& a, const FieldElement& b);

// Rejects reducible, non-monic, wrong-degree and not-totally-real input.
TotallyRealField make_field(const IntPoly& f);

FieldElement fe_add(const FieldElement& a, const FieldElement& b);
FieldElement fe_sub(const FieldElement& a, const FieldElement& b);
FieldElement fe_neg(const FieldElement& a);
FieldElement fe_scale(const Rat& s, const FieldElement& a);
FieldElement fe_mul(const TotallyRealField& K, const FieldElement& a, const FieldElement& b);
FieldElement fe_inv(const TotallyRealField& K, const FieldElement& a);
FieldElement fe_pow(const TotallyRealField& K, const FieldElement& a, long e);

// Norm via the resultant of f with the coordinate polynomial; trace via
// Newton power sums. Both exact.
std::pair<Rat, Rat> norm_trace(const TotallyRealField& K, const FieldElement& a);

// Multiplication-by-a matrix in the power basis (columns are a*theta^j).
MatQ multiplication_matrix(const TotallyRealField& K, const FieldElement& a);

// Enclosure of sigma_i(a) of width <= eps, i in 1..d.
RatInterval embed(const TotallyRealField& K, const FieldElement& a, int i, const Rat& eps);

// Units of the order Z[theta] found by exhaustive box search.
struct UnitSet {
  // Multiplicatively reduced generators (torsion +-1 excluded).
  std::vector<FieldElement> units;
  // log|sigma_i| enclosures, one vector per unit; entry sums straddle 0.
  std::vector<std::vector<RatInterval>> log_vectors;
  // Certified rank of the subgroup generated (via interval Gram
  // determinant); always <= d - 1.
  int rank = 0;
};

// All elements with integer power-basis coordinates in [-H, H]^d and
// norm +-1, multiplicatively reduced (exponent bound 5); log vectors
// are refined until the Gram certificate decides the rank and each
// entry sum has width below `log_width`.
UnitSet find_units(const TotallyRealField& K, long H, const Rat& log_width = Rat(1, 10000000000LL));

struct EmbeddingMatrix {
  MatI M;                 // M[i][j] = sigma_{i+1}(basis[j])
  RatInterval det_abs;    // |det M|
  RatInterval scale;      // c > 0 with |det(cM)| = 1
  Rat disc;               // exact: det of the trace-form Gram = (det M)^2
};

// Geometric embedding matrix of a Q-basis of K, entries of width <= eps.
// Throws domain_error if the elements do not span.
EmbeddingMatrix geometric_embedding_matrix(const TotallyRealField& K,
                                           const std::vector<FieldElement>& basis,
                                           const Rat& eps);

}  // namespace latprod

#endif
