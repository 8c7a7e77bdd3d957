#include "gemb/flags.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "gemb/richardson.hpp"

namespace gemb::fq {

namespace {

void require_space(int n, int p) {
  if (n < 1 || n > 4) throw std::invalid_argument("vector space dimension must be between 1 and 4");
  require_supported_prime(p);
}

// Reduced row echelon form of the rows in buf (count x n); returns the rank
// and compacts the nonzero rows to the front.
int rref(int count, int n, int p, int* buf) {
  int r = 0;
  for (int col = 0; col < n && r < count; ++col) {
    int pivot = -1;
    for (int i = r; i < count; ++i)
      if (buf[i * n + col] != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    for (int j = 0; j < n; ++j) std::swap(buf[r * n + j], buf[pivot * n + j]);
    const int inv = inv_mod(buf[r * n + col], p);
    for (int j = 0; j < n; ++j) buf[r * n + j] = buf[r * n + j] * inv % p;
    for (int i = 0; i < count; ++i) {
      if (i == r || buf[i * n + col] == 0) continue;
      const int f = buf[i * n + col];
      for (int j = 0; j < n; ++j) buf[i * n + j] = ((buf[i * n + j] - f * buf[r * n + j]) % p + p) % p;
    }
    ++r;
  }
  return r;
}

Subspace from_buffer(int n, int p, int count, const int* vecs) {
  int buf[64];
  for (int i = 0; i < count * n; ++i) buf[i] = vecs[i];
  const int dim = rref(count, n, p, buf);
  Subspace s;
  s.n = n;
  s.p = p;
  s.dim = dim;
  for (int i = 0; i < dim * n; ++i) s.rows[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(buf[i]);
  return s;
}

// Reduces v against the echelon rows of s; returns true when it lands on 0.
bool reduces_to_zero(const Subspace& s, std::array<int, 4>& v) {
  for (int i = 0; i < s.dim; ++i) {
    int lead = -1;
    for (int j = 0; j < s.n; ++j)
      if (s.get(i, j) != 0) {
        lead = j;
        break;
      }
    if (lead < 0) continue;
    const int c = v[static_cast<std::size_t>(lead)];
    if (c == 0) continue;
    for (int j = 0; j < s.n; ++j)
      v[static_cast<std::size_t>(j)] =
          ((v[static_cast<std::size_t>(j)] - c * s.get(i, j)) % s.p + s.p) % s.p;
  }
  for (int j = 0; j < s.n; ++j)
    if (v[static_cast<std::size_t>(j)] != 0) return false;
  return true;
}

}  // namespace

std::uint64_t subspace_code(const Subspace& s) {
  std::uint64_t code = static_cast<std::uint64_t>(s.dim);
  for (int i = s.n * s.n; i-- > 0;)
    code = code * static_cast<std::uint64_t>(s.p) +
           (i < s.dim * s.n ? s.rows[static_cast<std::size_t>(i)] : 0);
  return code;
}

Subspace subspace_span(int n, int p, const std::vector<std::array<std::uint8_t, 4>>& vectors) {
  require_space(n, p);
  if (vectors.size() > 16) throw std::invalid_argument("too many spanning vectors");
  int buf[64];
  for (std::size_t i = 0; i < vectors.size(); ++i)
    for (int j = 0; j < n; ++j)
      buf[i * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)] =
          vectors[i][static_cast<std::size_t>(j)] % p;
  return from_buffer(n, p, static_cast<int>(vectors.size()), buf);
}

Subspace image_of(const Mat& m) {
  require_space(m.n, m.p);
  int buf[16];
  for (int j = 0; j < m.n; ++j)
    for (int i = 0; i < m.n; ++i) buf[j * m.n + i] = m.get(i, j);
  return from_buffer(m.n, m.p, m.n, buf);
}

Subspace kernel_of(const Mat& m) {
  require_space(m.n, m.p);
  const int n = m.n, p = m.p;
  int buf[16];
  for (int i = 0; i < n * n; ++i) buf[i] = m.a[static_cast<std::size_t>(i)];
  const int r = rref(n, n, p, buf);
  // Pivot columns of the reduced matrix; the others are free.
  bool is_pivot[4] = {false, false, false, false};
  int pivot_row[4] = {-1, -1, -1, -1};
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < n; ++j)
      if (buf[i * n + j] != 0) {
        is_pivot[j] = true;
        pivot_row[j] = i;
        break;
      }
  int vecs[64];
  int count = 0;
  for (int f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    for (int j = 0; j < n; ++j) {
      int val = 0;
      if (j == f)
        val = 1;
      else if (is_pivot[j])
        val = (p - buf[pivot_row[j] * n + f] % p) % p;
      vecs[count * n + j] = val;
    }
    ++count;
  }
  return from_buffer(n, p, count, vecs);
}

bool contains_vector(const Subspace& s, const std::array<std::uint8_t, 4>& v) {
  require_space(s.n, s.p);
  std::array<int, 4> w{};
  for (int j = 0; j < s.n; ++j) w[static_cast<std::size_t>(j)] = v[static_cast<std::size_t>(j)] % s.p;
  return reduces_to_zero(s, w);
}

bool subspace_contains(const Subspace& outer, const Subspace& inner) {
  if (outer.n != inner.n || outer.p != inner.p)
    throw std::invalid_argument("subspaces live over different spaces");
  for (int i = 0; i < inner.dim; ++i) {
    std::array<std::uint8_t, 4> v{};
    for (int j = 0; j < inner.n; ++j) v[static_cast<std::size_t>(j)] = inner.get(i, j);
    if (!contains_vector(outer, v)) return false;
  }
  return true;
}

Subspace intersect_subspaces(const Subspace& a, const Subspace& b) {
  if (a.n != b.n || a.p != b.p) throw std::invalid_argument("subspaces live over different spaces");
  // Scan all combinations of a's basis and keep the vectors lying in b.
  std::vector<std::array<std::uint8_t, 4>> found;
  std::array<int, 4> coef{};
  const int total = [&] {
    int t = 1;
    for (int i = 0; i < a.dim; ++i) t *= a.p;
    return t;
  }();
  for (int it = 1; it < total; ++it) {
    int rem = it;
    for (int i = 0; i < a.dim; ++i) {
      coef[static_cast<std::size_t>(i)] = rem % a.p;
      rem /= a.p;
    }
    std::array<std::uint8_t, 4> v{};
    for (int j = 0; j < a.n; ++j) {
      int acc = 0;
      for (int i = 0; i < a.dim; ++i) acc += coef[static_cast<std::size_t>(i)] * a.get(i, j);
      v[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>(acc % a.p);
    }
    if (contains_vector(b, v)) found.push_back(v);
  }
  return subspace_span(a.n, a.p, found);
}

std::vector<Subspace> all_subspaces(int n, int p, int dim) {
  require_space(n, p);
  if (dim < 0 || dim > n) throw std::invalid_argument("subspace dimension out of range");
  std::vector<Subspace> out;
  if (dim == 0) {
    Subspace s;
    s.n = n;
    s.p = p;
    out.push_back(s);
    return out;
  }
  // Enumerate echelon shapes: pivot columns j_1 < ... < j_dim, free entries
  // to the right of each pivot outside the pivot columns.
  std::vector<int> pivots(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) pivots[static_cast<std::size_t>(i)] = i;
  while (true) {
    std::vector<std::pair<int, int>> free_pos;
    for (int i = 0; i < dim; ++i)
      for (int j = pivots[static_cast<std::size_t>(i)] + 1; j < n; ++j)
        if (std::find(pivots.begin(), pivots.end(), j) == pivots.end())
          free_pos.emplace_back(i, j);
    std::vector<int> digits(free_pos.size(), 0);
    while (true) {
      Subspace s;
      s.n = n;
      s.p = p;
      s.dim = dim;
      for (int i = 0; i < dim; ++i)
        s.rows[static_cast<std::size_t>(i * n + pivots[static_cast<std::size_t>(i)])] = 1;
      for (std::size_t k = 0; k < free_pos.size(); ++k)
        s.rows[static_cast<std::size_t>(free_pos[k].first * n + free_pos[k].second)] =
            static_cast<std::uint8_t>(digits[k]);
      out.push_back(s);
      std::size_t pos = 0;
      while (pos < digits.size() && digits[pos] == p - 1) digits[pos++] = 0;
      if (pos >= digits.size()) break;
      ++digits[pos];
    }
    // Next pivot combination in lexicographic order.
    int i = dim - 1;
    while (i >= 0 && pivots[static_cast<std::size_t>(i)] == n - dim + i) --i;
    if (i < 0) break;
    ++pivots[static_cast<std::size_t>(i)];
    for (int k = i + 1; k < dim; ++k)
      pivots[static_cast<std::size_t>(k)] = pivots[static_cast<std::size_t>(k - 1)] + 1;
  }
  std::sort(out.begin(), out.end(),
            [](const Subspace& x, const Subspace& y) { return subspace_code(x) < subspace_code(y); });
  return out;
}

std::vector<std::uint64_t> flag_code(const FlagPoint& f) {
  std::vector<std::uint64_t> code;
  code.reserve(f.parts.size());
  for (const Subspace& s : f.parts) code.push_back(subspace_code(s));
  return code;
}

std::vector<int> flag_dims(int n, const SimpleRootSubset& I) {
  if (I.group().type().family != 'A' || I.group().rank() != n - 1)
    throw std::invalid_argument("flag dimensions need a subset of the type A system on n-1 generators");
  std::vector<int> dims;
  for (int d = 1; d < n; ++d)
    if (!I.contains(static_cast<std::size_t>(d - 1))) dims.push_back(d);
  return dims;
}

std::vector<FlagPoint> enumerate_flags(int n, int p, const std::vector<int>& dims) {
  require_space(n, p);
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (dims[i] < 1 || dims[i] >= n) throw std::invalid_argument("flag dimension out of range");
    if (i > 0 && dims[i] <= dims[i - 1])
      throw std::invalid_argument("flag dimensions must strictly increase");
  }
  std::vector<FlagPoint> out;
  FlagPoint base;
  base.n = n;
  base.p = p;
  out.push_back(base);
  for (const int d : dims) {
    const std::vector<Subspace> layer = all_subspaces(n, p, d);
    std::vector<FlagPoint> next;
    for (const FlagPoint& f : out)
      for (const Subspace& s : layer) {
        if (!f.parts.empty() && !subspace_contains(s, f.parts.back())) continue;
        FlagPoint g = f;
        g.parts.push_back(s);
        next.push_back(std::move(g));
      }
    out = std::move(next);
  }
  return out;
}

FlagPoint project_flag(const FlagPoint& f, const std::vector<int>& dims) {
  FlagPoint out;
  out.n = f.n;
  out.p = f.p;
  std::size_t at = 0;
  for (const int d : dims) {
    while (at < f.parts.size() && f.parts[at].dim != d) ++at;
    if (at >= f.parts.size()) throw std::invalid_argument("flag has no part of the requested dimension");
    out.parts.push_back(f.parts[at]);
  }
  return out;
}

Mat completion_matrix(const FlagPoint& f) {
  require_space(f.n, f.p);
  const int n = f.n, p = f.p;
  std::vector<std::array<std::uint8_t, 4>> cols;
  Subspace span;
  span.n = n;
  span.p = p;
  auto try_add = [&](const std::array<std::uint8_t, 4>& v) {
    if (contains_vector(span, v)) return;
    cols.push_back(v);
    std::vector<std::array<std::uint8_t, 4>> basis = cols;
    span = subspace_span(n, p, basis);
  };
  for (const Subspace& part : f.parts) {
    for (int i = 0; i < part.dim; ++i) {
      std::array<std::uint8_t, 4> v{};
      for (int j = 0; j < n; ++j) v[static_cast<std::size_t>(j)] = part.get(i, j);
      try_add(v);
    }
    if (static_cast<int>(cols.size()) != part.dim)
      throw std::invalid_argument("flag parts are not nested");
  }
  for (int e = 0; e < n && static_cast<int>(cols.size()) < n; ++e) {
    std::array<std::uint8_t, 4> v{};
    v[static_cast<std::size_t>(e)] = 1;
    try_add(v);
  }
  Mat g = Mat::zero(n, p);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) g.set(i, j, cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)]);
  return g;
}

namespace {

void require_label_inputs(const FlagPoint& f, const RootSystem& sys, const SimpleRootSubset& I) {
  if (&I.group() != &sys) throw std::invalid_argument("subset belongs to a different group");
  const std::vector<int> dims = flag_dims(f.n, I);
  std::vector<int> have;
  for (const Subspace& s : f.parts) have.push_back(s.dim);
  if (dims != have)
    throw std::invalid_argument("flag dimensions do not match the parabolic subset");
}

}  // namespace

WeylElement flag_cell_label(const FlagPoint& f, const RootSystem& sys, const SimpleRootSubset& I) {
  require_label_inputs(f, sys, I);
  return project_rep(bruhat_cell_of(completion_matrix(f), sys), I);
}

WeylElement flag_opposite_cell_label(const FlagPoint& f, const RootSystem& sys,
                                     const SimpleRootSubset& I) {
  require_label_inputs(f, sys, I);
  // The stabilizer of the flag coset acts on the right by upper triangular
  // matrices, so the relevant decomposition here mixes sides: lower
  // triangular on the left, upper on the right. Reversing the rows turns a
  // lower-left factor into an upper-left one, at the price of composing the
  // label with the longest element.
  const Mat g = completion_matrix(f);
  Mat rev = Mat::zero(f.n, f.p);
  for (int i = 0; i < f.n; ++i) rev.set(i, f.n - 1 - i, 1);
  const WeylElement w = longest_element(sys) * bruhat_cell_of(mul(rev, g), sys);
  return project_rep(w, I);
}

}  // namespace gemb::fq
