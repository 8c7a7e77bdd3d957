#pragma once

#include <utility>
#include <vector>

#include "gemb/weyl.hpp"

namespace gemb {

// Nested pair Q subset-of P of standard parabolic subsets. Indexes the
// projection between the two partial flag varieties G/P_Q -> G/P_P.
struct ParabolicPair {
  SimpleRootSubset Q, P;
  ParabolicPair(const SimpleRootSubset& q, const SimpleRootSubset& p);
};

// Label (u, w, P) of an open Richardson variety in G/P_P: the intersection
// of the Schubert cell of u with the opposite Schubert cell of w. The u
// component is normalized to its minimal coset representative.
struct RichardsonIndex {
  WeylElement u, w;
  SimpleRootSubset P;
  RichardsonIndex(const WeylElement& u_in, const WeylElement& w_in, const SimpleRootSubset& P_in);

  friend bool operator==(const RichardsonIndex& a, const RichardsonIndex& b) {
    return a.u == b.u && a.w == b.w && a.P == b.P;
  }
};

// Minimal coset representative w^P of w W_P.
WeylElement project_rep(const WeylElement& w, const SimpleRootSubset& P);

// The fiber { w' in W^Q : (w')^P = w^P } of the representative projection
// over the P-coset of w. Sorted by reduced word; never empty. For fixed
// (Q, P) these fibers partition W^Q as w^P runs over W^P.
std::vector<WeylElement> kls_fiber(const WeylElement& w, const ParabolicPair& pair);

// All pairs (u', v') with u' <= u a and v' >= v a for some a in W_I: the
// B x B cell labels of the closed orbit that meet the closure of the cell
// indexed by (u, v). Sorted lexicographically by reduced-word pairs.
std::vector<std::pair<WeylElement, WeylElement>> ht_cells_in_closure(const SimpleRootSubset& I,
                                                                     const WeylElement& u,
                                                                     const WeylElement& v);

// Mirror image with the inequalities reversed: pairs (w', x') with
// w' >= w b and x' <= x b for some b in W_I.
std::vector<std::pair<WeylElement, WeylElement>> ht_opposite_cells_in_closure(
    const SimpleRootSubset& I, const WeylElement& w, const WeylElement& x);

}  // namespace gemb
