#ifndef LATPROD_FLOW_HPP
#define LATPROD_FLOW_HPP

#include "latprod/linalg.hpp"

namespace latprod {

// Element of the trace-zero hyperplane (the Lie algebra of the positive
// diagonal group). Carries either exact rational entries (sum exactly
// zero) or interval entries (sum interval containing zero).
struct FlowVector {
  bool exact = true;
  VecQ tq;
  VecI ti;

  FlowVector() = default;

  static FlowVector from_exact(VecQ v) {
    Rat s(0);
    for (int i = 0; i < v.size(); ++i) s += v[i];
    if (sgn(s) != 0) throw domain_error("flow vector entries must sum to zero");
    FlowVector f;
    f.exact = true;
    f.ti = widen(v);
    f.tq = std::move(v);
    return f;
  }

  static FlowVector from_interval(VecI v) {
    RatInterval s;
    for (int i = 0; i < v.size(); ++i) s = s + v[i];
    if (!s.contains_zero())
      throw domain_error("flow vector entry-sum interval does not contain zero");
    FlowVector f;
    f.exact = false;
    f.ti = std::move(v);
    return f;
  }

  int dim() const { return ti.size(); }

  const VecI& as_interval() const { return ti; }
};

// Root functional on the trace-zero hyperplane: t_i - t_j (pair) or t_k
// (single). Indices are 1-based.
struct Root {
  bool is_pair = true;
  int i = 1, j = 2;  // pair(i, j), i != j
  int k = 1;         // single(k)

  static Root pair(int i, int j) {
    if (i == j) throw domain_error("pair root needs i != j");
    Root r;
    r.is_pair = true;
    r.i = i;
    r.j = j;
    return r;
  }
  static Root single(int k) {
    Root r;
    r.is_pair = false;
    r.k = k;
    return r;
  }
};

}  // namespace latprod

#endif
