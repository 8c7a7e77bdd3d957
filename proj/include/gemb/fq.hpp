#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "gemb/weyl.hpp"

namespace gemb::fq {

// Primes accepted as field sizes.
inline constexpr std::array<int, 6> kSupportedPrimes{2, 3, 5, 7, 11, 13};

bool supported_prime(int p);
// Throws std::invalid_argument unless p is one of kSupportedPrimes.
void require_supported_prime(int p);

// Multiplicative inverse mod p (p prime, 0 < a < p).
int inv_mod(int a, int p);

// Square matrix over F_p, 1 <= n <= 4, entries stored row-major in [0, p).
struct Mat {
  int n = 0;
  int p = 0;
  std::array<std::uint8_t, 16> a{};

  std::uint8_t get(int i, int j) const { return a[static_cast<std::size_t>(i * n + j)]; }
  void set(int i, int j, int v);

  static Mat zero(int n, int p);
  static Mat identity(int n, int p);

  friend bool operator==(const Mat&, const Mat&) = default;
};

Mat add(const Mat& x, const Mat& y);
Mat mul(const Mat& x, const Mat& y);
Mat scalar_mul(int c, const Mat& x);
Mat transpose(const Mat& x);
bool is_zero(const Mat& x);
int rank_of(const Mat& x);
bool is_invertible(const Mat& x);
// Throws std::invalid_argument when x is singular.
Mat inverse_of(const Mat& x);

// Bijective encoding of a matrix as sum a[i] * p^i over row-major positions.
std::uint64_t mat_code(const Mat& x);
Mat mat_from_code(std::uint64_t code, int n, int p);

// Scales a nonzero matrix so its first nonzero entry (row-major) is 1.
// This is the canonical representative of the projective class.
// Throws std::invalid_argument on the zero matrix.
Mat normalize_projective(const Mat& x);
// True when x and y are nonzero scalar multiples of each other.
bool proj_equal(const Mat& x, const Mat& y);

// A set of projective points, stored as sorted unique codes of normalized
// representatives.
struct PointSet {
  int n = 0;
  int p = 0;
  std::vector<std::uint64_t> codes;

  std::size_t size() const { return codes.size(); }
  bool contains(std::uint64_t code) const;

  friend bool operator==(const PointSet&, const PointSet&) = default;
};

// Sorts and dedups; codes must encode normalized n-by-n matrices over F_p.
PointSet make_point_set(int n, int p, std::vector<std::uint64_t> codes);
PointSet set_union(const PointSet& x, const PointSet& y);
PointSet set_intersection(const PointSet& x, const PointSet& y);
PointSet set_difference(const PointSet& x, const PointSet& y);

// Guard for routines that walk the full matrix space: requires q^(n*n) to be
// at most 2^20, throwing std::invalid_argument otherwise.
void require_enumerable(int n, int q);

// Calls fn(m) for every normalized nonzero matrix, i.e. one representative
// per projective class. Enumeration order is deterministic.
void for_each_proj_matrix(int n, int p, const std::function<void(const Mat&)>& fn);

// All (q^(n*n) - 1) / (q - 1) projective classes of nonzero matrices.
PointSet enumerate_proj_matrices(int n, int q);

// Projective classes whose normalized representative satisfies pred.
PointSet variety_points(int n, int q, const std::function<bool(const Mat&)>& pred);

// Common predicates.
bool rank_le(const Mat& x, int r);
bool rank_eq(const Mat& x, int r);
bool column_zero(const Mat& x, int c);
// True when all 2x2 minors drawn from columns c1 and c2 vanish, i.e. the two
// columns are linearly dependent.
bool columns_wedge_zero(const Mat& x, int c1, int c2);

enum class OrbitSide { upper, lower };

// Generators of the invertible upper (or lower) triangular matrices:
// elementary transvections on the first off-diagonal plus one-spot torus
// scalings. Positive words in these reach the whole subgroup.
std::vector<Mat> triangular_generators(int n, int p, OrbitSide side);
// Generators of the full invertible group (both triangular sets combined).
std::vector<Mat> gl_generators(int n, int p);

// Orbit of the projective class of seed under left and right multiplication
// by the chosen triangular subgroup pair (g1, g2) . x = g1 x g2^{-1}.
PointSet bxb_orbit(const Mat& seed, OrbitSide side);
// Orbit under the full group acting on both sides.
PointSet gxg_orbit(const Mat& seed);

// Splits pts into orbits under the chosen triangular pair action. Throws
// std::invalid_argument if pts is not a union of such orbits.
std::vector<PointSet> split_into_orbits(const PointSet& pts, OrbitSide side);

// Permutation matrix of w (type A group on n-1 generators): entry
// (w(j), j) = 1 in 1-based terms.
Mat permutation_matrix(const WeylElement& w, int p);
// diag(1, ..., 1, 0, ..., 0) with r ones.
Mat rank_idempotent(int n, int p, int r);

// The Weyl group element w with g in BwB, where B is the invertible upper
// triangular subgroup. sys must be the type A system on n-1 generators and
// g must be invertible. Recovered from rank jumps of lower-left submatrices.
WeylElement bruhat_cell_of(const Mat& g, const RootSystem& sys);
// Same for the lower triangular subgroup: the w with g in B-wB-.
WeylElement opposite_bruhat_cell_of(const Mat& g, const RootSystem& sys);

}  // namespace gemb::fq
