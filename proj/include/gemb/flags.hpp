#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "gemb/fq.hpp"
#include "gemb/weyl.hpp"

namespace gemb::fq {

// Linear subspace of F_p^n in canonical form: the rows hold the reduced
// row echelon basis, so two equal subspaces compare equal entrywise.
struct Subspace {
  int n = 0;
  int p = 0;
  int dim = 0;
  std::array<std::uint8_t, 16> rows{};

  std::uint8_t get(int i, int j) const { return rows[static_cast<std::size_t>(i * n + j)]; }

  friend bool operator==(const Subspace&, const Subspace&) = default;
};

// Injective encoding used for sorting and indexing.
std::uint64_t subspace_code(const Subspace& s);

// Span of the given vectors (each of length n, entries already in [0, p)).
Subspace subspace_span(int n, int p, const std::vector<std::array<std::uint8_t, 4>>& vectors);
// Column span and null space of a matrix.
Subspace image_of(const Mat& m);
Subspace kernel_of(const Mat& m);

bool contains_vector(const Subspace& s, const std::array<std::uint8_t, 4>& v);
bool subspace_contains(const Subspace& outer, const Subspace& inner);
Subspace intersect_subspaces(const Subspace& a, const Subspace& b);

// All subspaces of dimension dim, sorted by subspace_code.
std::vector<Subspace> all_subspaces(int n, int p, int dim);

// A point of a partial flag variety: a nested chain of subspaces with
// strictly increasing dimensions.
struct FlagPoint {
  int n = 0;
  int p = 0;
  std::vector<Subspace> parts;

  friend bool operator==(const FlagPoint&, const FlagPoint&) = default;
};

// Injective key for indexing flags of a fixed dimension vector.
std::vector<std::uint64_t> flag_code(const FlagPoint& f);

// The subspace dimensions cut out by a standard parabolic subset I of the
// type A system on n-1 generators: ascending {d in 1..n-1 : a_d not in I}.
std::vector<int> flag_dims(int n, const SimpleRootSubset& I);

// Every flag with the given ascending dimension vector, in deterministic
// order (lexicographic in the per-step subspace codes).
std::vector<FlagPoint> enumerate_flags(int n, int p, const std::vector<int>& dims);

// Keeps exactly the parts whose dimensions appear in dims (which must be a
// subset of the flag's dimension vector).
FlagPoint project_flag(const FlagPoint& f, const std::vector<int>& dims);

// An invertible matrix whose first d columns span the dimension-d part of
// the flag, for every part, with the standard basis filling out the rest.
Mat completion_matrix(const FlagPoint& f);

// Labels of the triangular-group orbits through the flag, as minimal coset
// representatives modulo the parabolic subset I that cuts out the flag's
// dimension vector. The upper label is the w with the flag in the image of
// BwB; the opposite label uses the lower triangular subgroup.
WeylElement flag_cell_label(const FlagPoint& f, const RootSystem& sys, const SimpleRootSubset& I);
WeylElement flag_opposite_cell_label(const FlagPoint& f, const RootSystem& sys,
                                     const SimpleRootSubset& I);

}  // namespace gemb::fq
