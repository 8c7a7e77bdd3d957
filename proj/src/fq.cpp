#include "gemb/fq.hpp"

#include <algorithm>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace gemb::fq {

namespace {

void require_shape(const Mat& x) {
  if (x.n < 1 || x.n > 4) throw std::invalid_argument("matrix size must be between 1 and 4");
  require_supported_prime(x.p);
}

void require_compatible(const Mat& x, const Mat& y) {
  require_shape(x);
  if (x.n != y.n || x.p != y.p)
    throw std::invalid_argument("matrices live over different spaces");
}

// Row reduction over F_p on a working copy; returns the rank and leaves the
// reduced rows in buf (row echelon, not fully reduced).
int eliminate(int n, int m, int p, int* buf) {
  int r = 0;
  for (int col = 0; col < m && r < n; ++col) {
    int pivot = -1;
    for (int i = r; i < n; ++i)
      if (buf[i * m + col] != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    for (int j = 0; j < m; ++j) std::swap(buf[r * m + j], buf[pivot * m + j]);
    const int inv = inv_mod(buf[r * m + col], p);
    for (int j = 0; j < m; ++j) buf[r * m + j] = buf[r * m + j] * inv % p;
    for (int i = 0; i < n; ++i) {
      if (i == r || buf[i * m + col] == 0) continue;
      const int f = buf[i * m + col];
      for (int j = 0; j < m; ++j)
        buf[i * m + j] = ((buf[i * m + j] - f * buf[r * m + j]) % p + p) % p;
    }
    ++r;
  }
  return r;
}

// Rank of the submatrix of g with rows in [i0, i1) and cols in [j0, j1).
int sub_rank(const Mat& g, int i0, int i1, int j0, int j1) {
  int buf[16];
  const int rows = i1 - i0, cols = j1 - j0;
  if (rows <= 0 || cols <= 0) return 0;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) buf[i * cols + j] = g.get(i0 + i, j0 + j);
  return eliminate(rows, cols, g.p, buf);
}

void require_same_universe(const PointSet& x, const PointSet& y) {
  if (x.n != y.n || x.p != y.p)
    throw std::invalid_argument("point sets live over different spaces");
}

void require_type_a(const RootSystem& sys, int n) {
  if (sys.type().family != 'A' || sys.rank() != n - 1)
    throw std::invalid_argument("matrix decompositions need the type A group on n-1 generators");
}

}  // namespace

bool supported_prime(int p) {
  return std::find(kSupportedPrimes.begin(), kSupportedPrimes.end(), p) != kSupportedPrimes.end();
}

void require_supported_prime(int p) {
  if (!supported_prime(p)) {
    std::ostringstream os;
    os << "unsupported field size " << p << "; expected one of 2, 3, 5, 7, 11, 13";
    throw std::invalid_argument(os.str());
  }
}

int inv_mod(int a, int p) {
  a %= p;
  if (a < 0) a += p;
  for (int x = 1; x < p; ++x)
    if (a * x % p == 1) return x;
  throw std::invalid_argument("element has no inverse");
}

void Mat::set(int i, int j, int v) {
  v %= p;
  if (v < 0) v += p;
  a[static_cast<std::size_t>(i * n + j)] = static_cast<std::uint8_t>(v);
}

Mat Mat::zero(int n, int p) {
  Mat m;
  m.n = n;
  m.p = p;
  require_shape(m);
  return m;
}

Mat Mat::identity(int n, int p) {
  Mat m = zero(n, p);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

Mat add(const Mat& x, const Mat& y) {
  require_compatible(x, y);
  Mat out = Mat::zero(x.n, x.p);
  for (int i = 0; i < x.n * x.n; ++i)
    out.a[i] = static_cast<std::uint8_t>((x.a[i] + y.a[i]) % x.p);
  return out;
}

Mat mul(const Mat& x, const Mat& y) {
  require_compatible(x, y);
  Mat out = Mat::zero(x.n, x.p);
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j) {
      int acc = 0;
      for (int k = 0; k < x.n; ++k) acc += x.get(i, k) * y.get(k, j);
      out.set(i, j, acc % x.p);
    }
  return out;
}

Mat scalar_mul(int c, const Mat& x) {
  require_shape(x);
  c %= x.p;
  if (c < 0) c += x.p;
  Mat out = Mat::zero(x.n, x.p);
  for (int i = 0; i < x.n * x.n; ++i) out.a[i] = static_cast<std::uint8_t>(x.a[i] * c % x.p);
  return out;
}

Mat transpose(const Mat& x) {
  require_shape(x);
  Mat out = Mat::zero(x.n, x.p);
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j) out.set(j, i, x.get(i, j));
  return out;
}

bool is_zero(const Mat& x) {
  require_shape(x);
  for (int i = 0; i < x.n * x.n; ++i)
    if (x.a[i] != 0) return false;
  return true;
}

int rank_of(const Mat& x) {
  require_shape(x);
  return sub_rank(x, 0, x.n, 0, x.n);
}

bool is_invertible(const Mat& x) { return rank_of(x) == x.n; }

Mat inverse_of(const Mat& x) {
  require_shape(x);
  const int n = x.n, p = x.p;
  // Reduce [x | I]; if x reduces to I the right half is the inverse.
  int buf[32];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      buf[i * 2 * n + j] = x.get(i, j);
      buf[i * 2 * n + n + j] = i == j ? 1 : 0;
    }
  if (eliminate(n, 2 * n, p, buf) != n || buf[0 * 2 * n + 0] != 1)
    throw std::invalid_argument("matrix is singular");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (buf[i * 2 * n + j] != (i == j ? 1 : 0)) throw std::invalid_argument("matrix is singular");
  Mat out = Mat::zero(n, p);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.set(i, j, buf[i * 2 * n + n + j]);
  return out;
}

std::uint64_t mat_code(const Mat& x) {
  require_shape(x);
  std::uint64_t code = 0;
  for (int i = x.n * x.n; i-- > 0;) code = code * static_cast<std::uint64_t>(x.p) + x.a[i];
  return code;
}

Mat mat_from_code(std::uint64_t code, int n, int p) {
  Mat out = Mat::zero(n, p);
  for (int i = 0; i < n * n; ++i) {
    out.a[i] = static_cast<std::uint8_t>(code % static_cast<std::uint64_t>(p));
    code /= static_cast<std::uint64_t>(p);
  }
  if (code != 0) throw std::invalid_argument("code out of range for this matrix space");
  return out;
}

Mat normalize_projective(const Mat& x) {
  require_shape(x);
  for (int i = 0; i < x.n * x.n; ++i)
    if (x.a[i] != 0) return scalar_mul(inv_mod(x.a[i], x.p), x);
  throw std::invalid_argument("zero matrix has no projective class");
}

bool proj_equal(const Mat& x, const Mat& y) {
  require_compatible(x, y);
  return normalize_projective(x) == normalize_projective(y);
}

bool PointSet::contains(std::uint64_t code) const {
  return std::binary_search(codes.begin(), codes.end(), code);
}

PointSet make_point_set(int n, int p, std::vector<std::uint64_t> codes) {
  require_shape(Mat::zero(n, p));
  std::sort(codes.begin(), codes.end());
  codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
  return PointSet{n, p, std::move(codes)};
}

PointSet set_union(const PointSet& x, const PointSet& y) {
  require_same_universe(x, y);
  std::vector<std::uint64_t> out;
  out.reserve(x.codes.size() + y.codes.size());
  std::set_union(x.codes.begin(), x.codes.end(), y.codes.begin(), y.codes.end(),
                 std::back_inserter(out));
  return PointSet{x.n, x.p, std::move(out)};
}

PointSet set_intersection(const PointSet& x, const PointSet& y) {
  require_same_universe(x, y);
  std::vector<std::uint64_t> out;
  std::set_intersection(x.codes.begin(), x.codes.end(), y.codes.begin(), y.codes.end(),
                        std::back_inserter(out));
  return PointSet{x.n, x.p, std::move(out)};
}

PointSet set_difference(const PointSet& x, const PointSet& y) {
  require_same_universe(x, y);
  std::vector<std::uint64_t> out;
  std::set_difference(x.codes.begin(), x.codes.end(), y.codes.begin(), y.codes.end(),
                      std::back_inserter(out));
  return PointSet{x.n, x.p, std::move(out)};
}

void require_enumerable(int n, int q) {
  require_shape(Mat::zero(n, q));
  // q^(n*n) <= 2^20, checked without overflow.
  std::uint64_t total = 1;
  for (int i = 0; i < n * n; ++i) {
    total *= static_cast<std::uint64_t>(q);
    if (total > (std::uint64_t{1} << 20)) {
      std::ostringstream os;
      os << "matrix space of size " << q << "^" << n * n << " is too large to enumerate";
      throw std::invalid_argument(os.str());
    }
  }
}

void for_each_proj_matrix(int n, int p, const std::function<void(const Mat&)>& fn) {
  require_enumerable(n, p);
  const int m = n * n;
  Mat cur = Mat::zero(n, p);
  // First nonzero entry at position k (row-major) is pinned to 1; the
  // positions above k run through all values.
  for (int k = 0; k < m; ++k) {
    for (int i = 0; i < k; ++i) cur.a[i] = 0;
    cur.a[k] = 1;
    for (int i = k + 1; i < m; ++i) cur.a[i] = 0;
    while (true) {
      fn(cur);
      int pos = k + 1;
      while (pos < m && cur.a[pos] == p - 1) cur.a[pos++] = 0;
      if (pos >= m) break;
      ++cur.a[pos];
    }
  }
}

PointSet enumerate_proj_matrices(int n, int q) {
  return variety_points(n, q, [](const Mat&) { return true; });
}

PointSet variety_points(int n, int q, const std::function<bool(const Mat&)>& pred) {
  std::vector<std::uint64_t> codes;
  for_each_proj_matrix(n, q, [&](const Mat& m) {
    if (pred(m)) codes.push_back(mat_code(m));
  });
  return make_point_set(n, q, std::move(codes));
}

bool rank_le(const Mat& x, int r) { return rank_of(x) <= r; }

bool rank_eq(const Mat& x, int r) { return rank_of(x) == r; }

bool column_zero(const Mat& x, int c) {
  require_shape(x);
  for (int i = 0; i < x.n; ++i)
    if (x.get(i, c) != 0) return false;
  return true;
}

bool columns_wedge_zero(const Mat& x, int c1, int c2) {
  require_shape(x);
  for (int i = 0; i < x.n; ++i)
    for (int j = i + 1; j < x.n; ++j) {
      const int minor = x.get(i, c1) * x.get(j, c2) - x.get(j, c1) * x.get(i, c2);
      if (minor % x.p != 0) return false;
    }
  return true;
}

std::vector<Mat> triangular_generators(int n, int p, OrbitSide side) {
  require_shape(Mat::zero(n, p));
  std::vector<Mat> gens;
  for (int i = 0; i + 1 < n; ++i)
    for (int t = 1; t < p; ++t) {
      Mat g = Mat::identity(n, p);
      if (side == OrbitSide::upper)
        g.set(i, i + 1, t);
      else
        g.set(i + 1, i, t);
      gens.push_back(g);
    }
  for (int i = 0; i < n; ++i)
    for (int lambda = 2; lambda < p; ++lambda) {
      Mat g = Mat::identity(n, p);
      g.set(i, i, lambda);
      gens.push_back(g);
    }
  return gens;
}

std::vector<Mat> gl_generators(int n, int p) {
  std::vector<Mat> gens = triangular_generators(n, p, OrbitSide::upper);
  std::vector<Mat> lower = triangular_generators(n, p, OrbitSide::lower);
  gens.insert(gens.end(), lower.begin(), lower.end());
  std::sort(gens.begin(), gens.end(),
            [](const Mat& x, const Mat& y) { return mat_code(x) < mat_code(y); });
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  return gens;
}

namespace {

PointSet orbit_of(const Mat& seed, const std::vector<Mat>& gens) {
  require_enumerable(seed.n, seed.p);
  const Mat start = normalize_projective(seed);
  std::unordered_set<std::uint64_t> seen{mat_code(start)};
  std::vector<Mat> frontier{start};
  while (!frontier.empty()) {
    const Mat cur = frontier.back();
    frontier.pop_back();
    for (const Mat& g : gens)
      for (const Mat& next : {mul(g, cur), mul(cur, g)}) {
        const std::uint64_t code = mat_code(normalize_projective(next));
        if (seen.insert(code).second) frontier.push_back(mat_from_code(code, seed.n, seed.p));
      }
  }
  return make_point_set(seed.n, seed.p,
                        std::vector<std::uint64_t>(seen.begin(), seen.end()));
}

}  // namespace

PointSet bxb_orbit(const Mat& seed, OrbitSide side) {
  return orbit_of(seed, triangular_generators(seed.n, seed.p, side));
}

PointSet gxg_orbit(const Mat& seed) { return orbit_of(seed, gl_generators(seed.n, seed.p)); }

std::vector<PointSet> split_into_orbits(const PointSet& pts, OrbitSide side) {
  std::vector<PointSet> orbits;
  std::unordered_set<std::uint64_t> assigned;
  for (const std::uint64_t code : pts.codes) {
    if (assigned.count(code)) continue;
    PointSet orbit = bxb_orbit(mat_from_code(code, pts.n, pts.p), side);
    for (const std::uint64_t c : orbit.codes) {
      if (!pts.contains(c))
        throw std::invalid_argument("set is not closed under the triangular pair action");
      assigned.insert(c);
    }
    orbits.push_back(std::move(orbit));
  }
  return orbits;
}

Mat permutation_matrix(const WeylElement& w, int p) {
  const std::vector<int> line = one_line(w);
  const int n = static_cast<int>(line.size());
  Mat out = Mat::zero(n, p);
  for (int j = 0; j < n; ++j) out.set(line[j] - 1, j, 1);
  return out;
}

Mat rank_idempotent(int n, int p, int r) {
  if (r < 0 || r > n) throw std::invalid_argument("rank out of range");
  Mat out = Mat::zero(n, p);
  for (int i = 0; i < r; ++i) out.set(i, i, 1);
  return out;
}

WeylElement bruhat_cell_of(const Mat& g, const RootSystem& sys) {
  require_shape(g);
  const int n = g.n;
  require_type_a(sys, n);
  if (!is_invertible(g)) throw std::invalid_argument("matrix is singular");
  // R(i, j) = rank of the submatrix on rows [i, n) and columns [0, j).
  // Column j of the permutation has its 1 in the unique row i where
  // R(i, j+1) - R(i+1, j+1) - R(i, j) + R(i+1, j) = 1.
  int rk[5][5];
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) rk[i][j] = sub_rank(g, i, n, 0, j);
  std::vector<int> line(n, 0);
  for (int j = 0; j < n; ++j) {
    int hits = 0;
    for (int i = 0; i < n; ++i) {
      if (rk[i][j + 1] - rk[i + 1][j + 1] - rk[i][j] + rk[i + 1][j] == 1) {
        line[j] = i + 1;
        ++hits;
      }
    }
    if (hits != 1) throw std::logic_error("rank table did not define a permutation");
  }
  return from_one_line(sys, line);
}

WeylElement opposite_bruhat_cell_of(const Mat& g, const RootSystem& sys) {
  require_shape(g);
  const int n = g.n;
  require_type_a(sys, n);
  // Conjugating by the order-reversing permutation swaps the two triangular
  // subgroups, so the lower decomposition of g is read off from the upper
  // decomposition of JgJ via w(c) = n+1 - w'(n+1-c).
  Mat rev = Mat::zero(n, g.p);
  for (int i = 0; i < n; ++i) rev.set(i, n - 1 - i, 1);
  const std::vector<int> inner = one_line(bruhat_cell_of(mul(rev, mul(g, rev)), sys));
  std::vector<int> line(n, 0);
  for (int c = 1; c <= n; ++c) line[c - 1] = n + 1 - inner[static_cast<std::size_t>(n - c)];
  return from_one_line(sys, line);
}

}  // namespace gemb::fq
