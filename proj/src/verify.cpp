#include "gemb/verify.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "gemb/flags.hpp"
#include "gemb/fq.hpp"
#include "gemb/orbits.hpp"
#include "gemb/parallel.hpp"
#include "gemb/polyfit.hpp"
#include "gemb/richardson.hpp"

namespace gemb::fq {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string join_ints(const std::vector<int>& xs) {
  std::ostringstream os;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) os << ",";
    os << xs[i];
  }
  return os.str();
}

void require_q_list(const std::vector<int>& q_list) {
  if (q_list.empty()) throw std::invalid_argument("need at least one field size");
  for (const int q : q_list) require_supported_prime(q);
  for (std::size_t i = 0; i < q_list.size(); ++i)
    for (std::size_t j = i + 1; j < q_list.size(); ++j)
      if (q_list[i] == q_list[j]) throw std::invalid_argument("field sizes must be distinct");
}

void require_small_q(int q) {
  if (q != 2 && q != 3) throw std::invalid_argument("field size must be 2 or 3 for this check");
}

void require_small_n(int n) {
  if (n < 2 || n > 3) throw std::invalid_argument("matrix size must be 2 or 3 for this check");
}

// Elementary one-parameter matrices attached to the i-th simple root of the
// type A system on n-1 generators.
Mat upper_elementary(int n, int p, int i, int t) {
  Mat g = Mat::identity(n, p);
  g.set(i, i + 1, t);
  return g;
}

Mat lower_elementary(int n, int p, int i, int t) {
  Mat g = Mat::identity(n, p);
  g.set(i + 1, i, t);
  return g;
}

// Calls fn for every normalized n x n matrix that vanishes outside the
// given row-major positions.
void for_each_normalized_on(int n, int p, const std::vector<int>& positions,
                            const std::function<void(const Mat&)>& fn) {
  const std::size_t m = positions.size();
  Mat cur = Mat::zero(n, p);
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t i = 0; i < m; ++i) cur.a[static_cast<std::size_t>(positions[i])] = 0;
    cur.a[static_cast<std::size_t>(positions[k])] = 1;
    while (true) {
      fn(cur);
      std::size_t pos = k + 1;
      while (pos < m && cur.a[static_cast<std::size_t>(positions[pos])] ==
                            static_cast<std::uint8_t>(p - 1))
        cur.a[static_cast<std::size_t>(positions[pos++])] = 0;
      if (pos >= m) break;
      ++cur.a[static_cast<std::size_t>(positions[pos])];
    }
  }
}

std::array<int, 3> column_from_code(int code, int q) {
  std::array<int, 3> v{};
  for (int i = 0; i < 3; ++i) {
    v[static_cast<std::size_t>(i)] = code % q;
    code /= q;
  }
  return v;
}

bool columns_dependent(const std::array<int, 3>& u, const std::array<int, 3>& v, int q) {
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      const int minor = u[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)] -
                        u[static_cast<std::size_t>(j)] * v[static_cast<std::size_t>(i)];
      if (minor % q != 0) return false;
    }
  return true;
}

Mat from_columns(int q, const std::array<int, 3>& c1, const std::array<int, 3>& c2,
                 const std::array<int, 3>& c3) {
  Mat m = Mat::zero(3, q);
  for (int i = 0; i < 3; ++i) {
    m.set(i, 0, c1[static_cast<std::size_t>(i)]);
    m.set(i, 1, c2[static_cast<std::size_t>(i)]);
    m.set(i, 2, c3[static_cast<std::size_t>(i)]);
  }
  return m;
}

}  // namespace

void Report::param(std::string key, std::string value) {
  params.emplace_back(std::move(key), std::move(value));
}

void Report::count(std::string key, long long value) {
  counts.emplace_back(std::move(key), value);
}

void Report::fail(std::string witness) {
  pass = false;
  if (witnesses.size() < 32) witnesses.push_back(std::move(witness));
}

void Report::require(bool ok, const std::string& witness) {
  if (!ok) fail(witness);
}

std::string report_json(const Report& r) {
  ordered_json j;
  j["check"] = r.check;
  ordered_json pj = ordered_json::object();
  for (const auto& [k, v] : r.params) pj[k] = v;
  j["params"] = pj;
  j["pass"] = r.pass;
  ordered_json cj = ordered_json::object();
  for (const auto& [k, v] : r.counts) cj[k] = v;
  j["counts"] = cj;
  j["witnesses"] = ordered_json::array();
  for (const auto& w : r.witnesses) j["witnesses"].push_back(w);
  return j.dump(2) + "\n";
}

std::string report_text(const Report& r) {
  std::ostringstream os;
  os << "check: " << r.check << "\n";
  for (const auto& [k, v] : r.params) os << "param " << k << " = " << v << "\n";
  for (const auto& [k, v] : r.counts) os << "count " << k << " = " << v << "\n";
  for (const auto& w : r.witnesses) os << "witness: " << w << "\n";
  os << "result: " << (r.pass ? "pass" : "FAIL") << "\n";
  return os.str();
}

Report verify_example1(const std::vector<int>& q_list, const VerifyOptions& opts) {
  require_q_list(q_list);
  if (q_list.size() < 6)
    throw std::invalid_argument("need at least six field sizes for the degree-5 fit");

  Report rep;
  rep.check = "example1";
  rep.param("q", join_ints(q_list));
  rep.param("threads", std::to_string(opts.threads));

  // Row-major positions of the three columns of a 3 x 3 matrix.
  const std::vector<int> middle_zero_positions{0, 2, 3, 5, 6, 8};

  std::vector<long long> mid_zero_counts, rank1_counts;
  for (const int q : q_list) {
    const int q3 = q * q * q;

    // Left side, branch C2 = 0: the wedge equations hold identically, so
    // walk the middle-column-zero slice and apply the remaining predicate.
    std::vector<std::uint64_t> lhs_codes;
    for_each_normalized_on(3, q, middle_zero_positions, [&](const Mat& m) {
      if (columns_wedge_zero(m, 0, 1) && columns_wedge_zero(m, 1, 2) && rank_le(m, 2))
        lhs_codes.push_back(mat_code(m));
    });

    // Left side, branch C2 != 0: for each middle column, the two wedge
    // equations constrain the outer columns independently; scan all
    // candidates for each side and combine.
    std::vector<std::uint64_t> dependent_codes = sharded_collect<std::uint64_t>(
        static_cast<std::uint64_t>(q3 - 1), opts.threads,
        [&](std::uint64_t lo, std::uint64_t hi) {
          std::vector<std::uint64_t> out;
          std::vector<std::array<int, 3>> s1, s3;
          for (std::uint64_t idx = lo; idx < hi; ++idx) {
            const std::array<int, 3> mid = column_from_code(static_cast<int>(idx) + 1, q);
            s1.clear();
            s3.clear();
            for (int c = 0; c < q3; ++c) {
              const std::array<int, 3> cand = column_from_code(c, q);
              if (columns_dependent(cand, mid, q)) s1.push_back(cand);
              if (columns_dependent(mid, cand, q)) s3.push_back(cand);
            }
            for (const auto& c1 : s1)
              for (const auto& c3 : s3) {
                const Mat m = from_columns(q, c1, mid, c3);
                if (rank_le(m, 2)) out.push_back(mat_code(normalize_projective(m)));
              }
          }
          return out;
        });
    lhs_codes.insert(lhs_codes.end(), dependent_codes.begin(), dependent_codes.end());
    const PointSet lhs = make_point_set(3, q, std::move(lhs_codes));

    // Right side piece 1: middle column zero.
    std::vector<std::uint64_t> mid_codes;
    for_each_normalized_on(3, q, middle_zero_positions,
                           [&](const Mat& m) { mid_codes.push_back(mat_code(m)); });
    const PointSet mid_zero = make_point_set(3, q, std::move(mid_codes));

    // Right side piece 2: rank at most one, as outer products of a nonzero
    // column and a nonzero row. Scaling the column only rescales the
    // product, so one column per projective class suffices.
    std::vector<std::uint64_t> rank1_codes;
    for (int c = 1; c < q3; ++c) {
      const std::array<int, 3> u = column_from_code(c, q);
      int first = 0;
      while (u[static_cast<std::size_t>(first)] == 0) ++first;
      if (u[static_cast<std::size_t>(first)] != 1) continue;
      for (int r = 1; r < q3; ++r) {
        const std::array<int, 3> v = column_from_code(r, q);
        Mat m = Mat::zero(3, q);
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j)
            m.set(i, j, u[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)]);
        rank1_codes.push_back(mat_code(normalize_projective(m)));
      }
    }
    const PointSet rank1 = make_point_set(3, q, std::move(rank1_codes));

    const PointSet rhs = set_union(mid_zero, rank1);
    if (lhs != rhs) {
      rep.fail("set identity failed at q = " + std::to_string(q));
      const PointSet extra = set_difference(lhs, rhs);
      const PointSet missing = set_difference(rhs, lhs);
      for (std::size_t i = 0; i < extra.codes.size() && i < 3; ++i)
        rep.fail("  only on the equation side: code " + std::to_string(extra.codes[i]));
      for (std::size_t i = 0; i < missing.codes.size() && i < 3; ++i)
        rep.fail("  only on the union side: code " + std::to_string(missing.codes[i]));
    }

    // Independent cross-check against a plain filter of the full matrix
    // space, where that space is small enough to walk.
    if (q <= 3) {
      const PointSet lhs_direct = variety_points(3, q, [](const Mat& m) {
        return columns_wedge_zero(m, 0, 1) && columns_wedge_zero(m, 1, 2) && rank_le(m, 2);
      });
      const PointSet rhs_direct = variety_points(
          3, q, [](const Mat& m) { return column_zero(m, 1) || rank_le(m, 1); });
      rep.require(lhs_direct == lhs,
                  "constructive left side disagrees with the direct filter at q = " +
                      std::to_string(q));
      rep.require(rhs_direct == rhs,
                  "constructive right side disagrees with the direct filter at q = " +
                      std::to_string(q));
    }

    const std::string tag = "q=" + std::to_string(q);
    rep.count(tag + ".lhs", static_cast<long long>(lhs.size()));
    rep.count(tag + ".middle_column_zero", static_cast<long long>(mid_zero.size()));
    rep.count(tag + ".rank_le_1", static_cast<long long>(rank1.size()));
    mid_zero_counts.push_back(static_cast<long long>(mid_zero.size()));
    rank1_counts.push_back(static_cast<long long>(rank1.size()));
  }

  const std::vector<long long> nodes(q_list.begin(), q_list.end());
  const IntPolynomial mid_poly = interpolate_integer_polynomial(nodes, mid_zero_counts);
  const IntPolynomial rank1_poly = interpolate_integer_polynomial(nodes, rank1_counts);
  rep.param("count_polynomial.middle_column_zero", mid_poly.str());
  rep.param("count_polynomial.rank_le_1", rank1_poly.str());
  rep.require(mid_poly.degree() == 5,
              "middle-column-zero counts fit degree " + std::to_string(mid_poly.degree()) +
                  ", expected 5");
  rep.require(rank1_poly.degree() == 4,
              "rank-one counts fit degree " + std::to_string(rank1_poly.degree()) +
                  ", expected 4");
  return rep;
}

Report verify_example2(const std::vector<int>& q_list, const VerifyOptions& opts) {
  require_q_list(q_list);
  for (const int q : q_list) require_small_q(q);

  Report rep;
  rep.check = "example2";
  rep.param("q", join_ints(q_list));
  rep.param("threads", std::to_string(opts.threads));

  const RootSystemPtr sys = RootSystem::build("A3");
  const SimpleRootSubset I = SimpleRootSubset::from_indices(*sys, {0, 2});
  const WeylElement dense_label = project_rep(longest_element(*sys), I);
  const WeylElement e = sys->identity();

  for (const int q : q_list) {
    const std::vector<Subspace> subs = all_subspaces(4, q, 2);
    std::map<std::uint64_t, int> sub_index;
    for (std::size_t i = 0; i < subs.size(); ++i)
      sub_index[subspace_code(subs[i])] = static_cast<int>(i);
    auto index_of = [&](const Subspace& s) {
      const auto it = sub_index.find(subspace_code(s));
      if (it == sub_index.end()) throw std::logic_error("plane missing from the index");
      return it->second;
    };

    std::vector<char> dense_upper(subs.size()), dense_both(subs.size());
    long long upper_count = 0;
    for (std::size_t i = 0; i < subs.size(); ++i) {
      FlagPoint f;
      f.n = 4;
      f.p = q;
      f.parts = {subs[i]};
      const bool du = flag_cell_label(f, *sys, I) == dense_label;
      const bool dl = flag_opposite_cell_label(f, *sys, I) == e;
      dense_upper[i] = du;
      dense_both[i] = du && dl;
      if (du) ++upper_count;
    }
    rep.require(upper_count == static_cast<long long>(q) * q * q * q,
                "dense cell of the plane variety has the wrong size at q = " + std::to_string(q));

    std::vector<std::pair<int, int>> theta_pairs;
    for (std::size_t i = 0; i < subs.size(); ++i)
      for (std::size_t j = 0; j < subs.size(); ++j)
        if (dense_both[i] && dense_both[j])
          theta_pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));

    // Route one: walk every matrix satisfying the two entry equations and
    // record the (kernel, image) pairs of those in the stratum.
    std::vector<int> positions;
    for (int pos = 0; pos < 16; ++pos)
      if (pos != 3 && pos != 12) positions.push_back(pos);
    std::set<std::pair<int, int>> image_scan;
    for_each_normalized_on(4, q, positions, [&](const Mat& m) {
      if ((m.a[0] | m.a[4] | m.a[8]) == 0) return;    // first column zero
      if ((m.a[7] | m.a[11] | m.a[15]) == 0) return;  // last column zero
      if (rank_of(m) != 2) return;
      const int vi = index_of(kernel_of(m));
      const int wi = index_of(image_of(m));
      if (dense_both[static_cast<std::size_t>(vi)] && dense_both[static_cast<std::size_t>(wi)])
        image_scan.insert({vi, wi});
    });

    // Route two: for each candidate pair, decide membership by enumerating
    // the maps with the prescribed kernel and image.
    const std::vector<std::pair<int, int>> route_pairs = theta_pairs;
    std::vector<std::pair<int, int>> found = sharded_collect<std::pair<int, int>>(
        route_pairs.size(), opts.threads, [&](std::uint64_t lo, std::uint64_t hi) {
          std::vector<std::pair<int, int>> out;
          for (std::uint64_t t = lo; t < hi; ++t) {
            const auto [vi, wi] = route_pairs[static_cast<std::size_t>(t)];
            const Subspace& V = subs[static_cast<std::size_t>(vi)];
            const Subspace& W = subs[static_cast<std::size_t>(wi)];
            FlagPoint fv;
            fv.n = 4;
            fv.p = q;
            fv.parts = {V};
            const Mat Qinv = inverse_of(completion_matrix(fv));
            bool member = false;
            for (int mcode = 0; mcode < q * q * q * q && !member; ++mcode) {
              int digits[4], rem = mcode;
              for (int d = 0; d < 4; ++d) {
                digits[d] = rem % q;
                rem /= q;
              }
              if ((digits[0] * digits[3] - digits[1] * digits[2]) % q == 0) continue;
              Mat cols = Mat::zero(4, q);
              for (int col = 0; col < 2; ++col)
                for (int row = 0; row < 4; ++row)
                  cols.set(row, 2 + col,
                           digits[col * 2 + 0] * W.get(0, row) + digits[col * 2 + 1] * W.get(1, row));
              const Mat A = mul(cols, Qinv);
              if (A.get(0, 3) != 0 || A.get(3, 0) != 0) continue;
              if (column_zero(A, 0) || column_zero(A, 3)) continue;
              if (rank_of(A) != 2) continue;
              if (kernel_of(A) != V || image_of(A) != W)
                throw std::logic_error("constructed map has the wrong kernel or image");
              member = true;
            }
            if (member) out.push_back({vi, wi});
          }
          return out;
        });
    const std::set<std::pair<int, int>> image_fiber(found.begin(), found.end());
    rep.require(image_scan == image_fiber,
                "matrix scan and fiber enumeration disagree at q = " + std::to_string(q));

    // The witness pair lies in the open double cell but not in the image.
    auto basis_vector = [](int i) {
      std::array<std::uint8_t, 4> v{};
      v[static_cast<std::size_t>(i)] = 1;
      return v;
    };
    auto sum_vector = [&](int i, int j) {
      std::array<std::uint8_t, 4> v{};
      v[static_cast<std::size_t>(i)] = 1;
      v[static_cast<std::size_t>(j)] = 1;
      return v;
    };
    const Subspace Vstar = subspace_span(4, q, {sum_vector(0, 3), sum_vector(1, 2)});
    const Subspace Wstar = subspace_span(4, q, {sum_vector(0, 2), sum_vector(1, 3)});
    const int vs = index_of(Vstar), ws = index_of(Wstar);
    rep.require(dense_both[static_cast<std::size_t>(vs)] && dense_both[static_cast<std::size_t>(ws)],
                "witness pair escaped the open double cell at q = " + std::to_string(q));
    rep.require(image_scan.count({vs, ws}) == 0,
                "witness pair unexpectedly reached at q = " + std::to_string(q));

    // Every transverse pair of the open double cell is reached.
    const Subspace E14 = subspace_span(4, q, {basis_vector(0), basis_vector(3)});
    const Subspace E23 = subspace_span(4, q, {basis_vector(1), basis_vector(2)});
    long long transverse = 0;
    for (const auto& [vi, wi] : theta_pairs) {
      if (intersect_subspaces(subs[static_cast<std::size_t>(vi)], E14).dim != 0) continue;
      if (intersect_subspaces(subs[static_cast<std::size_t>(wi)], E23).dim != 0) continue;
      ++transverse;
      rep.require(image_scan.count({vi, wi}) == 1,
                  "transverse pair missing at q = " + std::to_string(q) + ", pair (" +
                      std::to_string(vi) + "," + std::to_string(wi) + ")");
    }

    // The linear-algebra obstruction that blocks the witness pair: both
    // admissible image lines are forced, and the kernel makes them collide.
    const Subspace L1 = intersect_subspaces(
        Wstar, subspace_span(4, q, {basis_vector(0), basis_vector(1), basis_vector(2)}));
    const Subspace L2 = intersect_subspaces(
        Wstar, subspace_span(4, q, {basis_vector(1), basis_vector(2), basis_vector(3)}));
    rep.require(L1 == subspace_span(4, q, {sum_vector(0, 2)}) &&
                    L2 == subspace_span(4, q, {sum_vector(1, 3)}) &&
                    intersect_subspaces(L1, L2).dim == 0 && contains_vector(Vstar, sum_vector(0, 3)),
                "witness obstruction shape is off at q = " + std::to_string(q));

    rep.require(image_scan.size() < theta_pairs.size(),
                "projected image is not a strict subset at q = " + std::to_string(q));

    const std::string tag = "q=" + std::to_string(q);
    rep.count(tag + ".planes", static_cast<long long>(subs.size()));
    rep.count(tag + ".open_double_cell_planes",
              static_cast<long long>(std::count(dense_both.begin(), dense_both.end(), 1)));
    rep.count(tag + ".candidate_pairs", static_cast<long long>(theta_pairs.size()));
    rep.count(tag + ".image_pairs", static_cast<long long>(image_scan.size()));
    rep.count(tag + ".transverse_pairs", transverse);
  }
  return rep;
}

Report verify_kls(int n, int q, std::string_view parabolic, const VerifyOptions& opts) {
  require_small_n(n);
  require_small_q(q);
  (void)opts;

  const RootSystemPtr sys = RootSystem::build(std::string(1, 'A') + std::to_string(n - 1));
  const SimpleRootSubset P = parse_subset(*sys, parabolic);
  const SimpleRootSubset none = SimpleRootSubset::none(*sys);
  const ParabolicPair pair(none, P);

  Report rep;
  rep.check = "kls";
  rep.param("n", std::to_string(n));
  rep.param("q", std::to_string(q));
  rep.param("parabolic", P.str());

  const std::vector<int> full_dims = flag_dims(n, none);
  const std::vector<int> part_dims = flag_dims(n, P);

  const std::vector<FlagPoint> fulls = enumerate_flags(n, q, full_dims);
  std::vector<WeylElement> full_upper, full_lower;
  full_upper.reserve(fulls.size());
  full_lower.reserve(fulls.size());
  for (const FlagPoint& f : fulls) {
    full_upper.push_back(flag_cell_label(f, *sys, none));
    full_lower.push_back(flag_opposite_cell_label(f, *sys, none));
  }

  const std::vector<FlagPoint> partials = enumerate_flags(n, q, part_dims);
  std::map<std::vector<std::uint64_t>, int> partial_index;
  for (std::size_t i = 0; i < partials.size(); ++i)
    partial_index[flag_code(partials[i])] = static_cast<int>(i);
  std::vector<WeylElement> part_upper, part_lower;
  for (const FlagPoint& f : partials) {
    part_upper.push_back(flag_cell_label(f, *sys, P));
    part_lower.push_back(flag_opposite_cell_label(f, *sys, P));
  }
  std::vector<int> projected(fulls.size());
  for (std::size_t i = 0; i < fulls.size(); ++i)
    projected[i] = partial_index.at(flag_code(project_flag(fulls[i], part_dims)));

  long long pairs_checked = 0;
  for (const WeylElement& u : min_coset_reps(P)) {
    for (const WeylElement& w : sys->all_elements()) {
      const WeylElement wP = project_rep(w, P);
      std::set<int> lhs;
      for (std::size_t i = 0; i < partials.size(); ++i)
        if (part_upper[i] == u && part_lower[i] == wP) lhs.insert(static_cast<int>(i));

      std::set<int> covered;
      bool disjoint = true;
      for (const WeylElement& wprime : kls_fiber(w, pair)) {
        std::set<int> img;
        for (std::size_t i = 0; i < fulls.size(); ++i)
          if (full_upper[i] == u && full_lower[i] == wprime) img.insert(projected[i]);
        for (const int idx : img)
          if (!covered.insert(idx).second) disjoint = false;
      }
      rep.require(disjoint, "projected pieces overlap at u = " + to_word(u) +
                                ", w = " + to_word(w));
      rep.require(covered == lhs, "projected pieces do not cover at u = " + to_word(u) +
                                      ", w = " + to_word(w));
      ++pairs_checked;
    }
  }
  rep.count("full_flags", static_cast<long long>(fulls.size()));
  rep.count("partial_flags", static_cast<long long>(partials.size()));
  rep.count("index_pairs", pairs_checked);
  return rep;
}

namespace {

// Shared by the cell and partition checks: the double-cell partition of one
// rank stratum obtained by flooding from the seeded translates, plus the
// seed-to-cell assignment.
struct SeededCells {
  std::vector<PointSet> cells;
  std::vector<int> cell_of_pair;  // indexed by ui * |W| + vi
};

SeededCells seeded_cells(const RootSystem& sys, const Mat& h, OrbitSide side) {
  const std::vector<WeylElement> W = sys.all_elements();
  const std::size_t m = W.size();
  SeededCells out;
  out.cell_of_pair.assign(m * m, -1);
  for (std::size_t ui = 0; ui < m; ++ui)
    for (std::size_t vi = 0; vi < m; ++vi) {
      const Mat seed = normalize_projective(
          mul(mul(permutation_matrix(W[ui], h.p), h), transpose(permutation_matrix(W[vi], h.p))));
      const std::uint64_t code = mat_code(seed);
      int id = -1;
      for (std::size_t c = 0; c < out.cells.size(); ++c)
        if (out.cells[c].contains(code)) {
          id = static_cast<int>(c);
          break;
        }
      if (id < 0) {
        out.cells.push_back(bxb_orbit(seed, side));
        id = static_cast<int>(out.cells.size()) - 1;
      }
      out.cell_of_pair[ui * m + vi] = id;
    }
  return out;
}

}  // namespace

Report verify_cells(int n, int q, const VerifyOptions& opts) {
  require_small_n(n);
  require_small_q(q);
  (void)opts;

  const EmbeddingModel model = proj_matrices_model(n);
  const RootSystemPtr sys = model.group;
  const std::vector<WeylElement> W = sys->all_elements();
  const std::size_t m = W.size();

  Report rep;
  rep.check = "cells";
  rep.param("n", std::to_string(n));
  rep.param("q", std::to_string(q));

  for (int r = 1; r <= n; ++r) {
    const OrbitDescriptor& d = model.orbits[static_cast<std::size_t>(r - 1)];
    const Mat h = rank_idempotent(n, q, r);
    const PointSet stratum = variety_points(n, q, [r](const Mat& x) { return rank_eq(x, r); });

    for (const CellSide side : {CellSide::standard, CellSide::opposite}) {
      const OrbitSide os = side == CellSide::standard ? OrbitSide::upper : OrbitSide::lower;
      const std::string side_name = side == CellSide::standard ? "standard" : "opposite";
      const SeededCells sc = seeded_cells(*sys, h, os);

      std::vector<CellIndex> canon;
      canon.reserve(m * m);
      for (std::size_t ui = 0; ui < m; ++ui)
        for (std::size_t vi = 0; vi < m; ++vi)
          canon.push_back(canonicalize_cell(d, W[ui], W[vi], side));

      bool agree = true;
      for (std::size_t a = 0; a < m * m && agree; ++a)
        for (std::size_t b = a + 1; b < m * m; ++b) {
          const bool same_orbit = sc.cell_of_pair[a] == sc.cell_of_pair[b];
          const bool same_canon = canon[a] == canon[b];
          if (same_orbit != same_canon) {
            rep.fail("cell partition mismatch, rank " + std::to_string(r) + " " + side_name +
                     ": pairs (" + to_word(W[a / m]) + "," + to_word(W[a % m]) + ") and (" +
                     to_word(W[b / m]) + "," + to_word(W[b % m]) + ")");
            agree = false;
            break;
          }
        }

      // The cells must tile the stratum.
      std::vector<std::uint64_t> all_codes;
      std::size_t total = 0;
      for (const PointSet& c : sc.cells) {
        total += c.size();
        all_codes.insert(all_codes.end(), c.codes.begin(), c.codes.end());
      }
      const PointSet covered = make_point_set(n, q, std::move(all_codes));
      rep.require(covered == stratum && total == stratum.size(),
                  "cells do not tile the rank " + std::to_string(r) + " stratum on the " +
                      side_name + " side");

      rep.count("rank" + std::to_string(r) + "." + side_name + ".cells",
                static_cast<long long>(sc.cells.size()));
    }
    rep.count("rank" + std::to_string(r) + ".points", static_cast<long long>(stratum.size()));
  }
  return rep;
}

Report verify_partition(int n, int q, const VerifyOptions& opts) {
  require_small_n(n);
  require_small_q(q);
  (void)opts;

  const EmbeddingModel model = proj_matrices_model(n);
  const RootSystemPtr sys = model.group;
  const std::vector<WeylElement> W = sys->all_elements();
  const std::size_t m = W.size();

  Report rep;
  rep.check = "partition";
  rep.param("n", std::to_string(n));
  rep.param("q", std::to_string(q));

  const PointSet universe = enumerate_proj_matrices(n, q);
  std::uint64_t expected = 0, power = 1;
  for (int i = 0; i < n * n; ++i) power *= static_cast<std::uint64_t>(q);
  expected = (power - 1) / static_cast<std::uint64_t>(q - 1);
  rep.require(universe.size() == expected, "projective matrix space has the wrong size");
  rep.count("points", static_cast<long long>(universe.size()));

  std::vector<PointSet> strata;
  PointSet covered{n, q, {}};
  for (int r = 1; r <= n; ++r) {
    const PointSet stratum = variety_points(n, q, [r](const Mat& x) { return rank_eq(x, r); });
    const PointSet orbit = gxg_orbit(rank_idempotent(n, q, r));
    rep.require(orbit == stratum,
                "two-sided orbit differs from the rank " + std::to_string(r) + " stratum");
    rep.require(set_intersection(covered, stratum).size() == 0,
                "rank strata overlap at rank " + std::to_string(r));
    covered = set_union(covered, stratum);
    rep.count("rank" + std::to_string(r) + ".points", static_cast<long long>(stratum.size()));
    strata.push_back(stratum);
  }
  rep.require(covered == universe, "rank strata do not cover the space");

  std::vector<std::vector<PointSet>> upper_cells, lower_cells;
  for (int r = 1; r <= n; ++r) {
    const PointSet& stratum = strata[static_cast<std::size_t>(r - 1)];
    const std::vector<PointSet> cu = split_into_orbits(stratum, OrbitSide::upper);
    const std::vector<PointSet> cl = split_into_orbits(stratum, OrbitSide::lower);
    std::size_t su = 0, sl = 0;
    for (const PointSet& c : cu) su += c.size();
    for (const PointSet& c : cl) sl += c.size();
    rep.require(su == stratum.size() && sl == stratum.size(),
                "double cells do not tile the rank " + std::to_string(r) + " stratum");
    long long nonempty = 0;
    std::size_t refined = 0;
    for (const PointSet& a : cu)
      for (const PointSet& b : cl) {
        const std::size_t isz = set_intersection(a, b).size();
        if (isz > 0) ++nonempty;
        refined += isz;
      }
    rep.require(refined == stratum.size(),
                "cell intersections do not refine the rank " + std::to_string(r) + " stratum");
    rep.count("rank" + std::to_string(r) + ".upper_cells", static_cast<long long>(cu.size()));
    rep.count("rank" + std::to_string(r) + ".lower_cells", static_cast<long long>(cl.size()));
    rep.count("rank" + std::to_string(r) + ".nonempty_intersections", nonempty);
    upper_cells.push_back(cu);
    lower_cells.push_back(cl);
  }

  if (n == 2) {
    // The rank model of the projective 2 x 2 matrices is the wonderful
    // model of its group: same orbit shapes in the same order.
    const EmbeddingModel wonderful = wonderful_model(sys);
    bool same = wonderful.orbits.size() == model.orbits.size();
    for (std::size_t i = 0; same && i < model.orbits.size(); ++i)
      same = wonderful.orbits[i] == model.orbits[i];
    rep.require(same, "rank model and toroidal model disagree on orbit shapes");

    // On the closed stratum the (kernel, image) fibers are equinumerous.
    const PointSet& closed = strata[0];
    std::map<std::pair<std::uint64_t, std::uint64_t>, long long> fibers;
    for (const std::uint64_t code : closed.codes) {
      const Mat x = mat_from_code(code, n, q);
      ++fibers[{subspace_code(kernel_of(x)), subspace_code(image_of(x))}];
    }
    const long long expected_fibers = static_cast<long long>(q + 1) * (q + 1);
    bool equal_fibers = static_cast<long long>(fibers.size()) == expected_fibers;
    for (const auto& [key, cnt] : fibers)
      if (cnt != fibers.begin()->second) equal_fibers = false;
    rep.require(equal_fibers, "kernel-image fibers of the closed stratum are not equinumerous");
    rep.count("closed_stratum.fibers", static_cast<long long>(fibers.size()));

    // Census of the closed-orbit nonemptiness criterion over all labels.
    const Mat h = rank_idempotent(n, q, 1);
    const SeededCells su = seeded_cells(*sys, h, OrbitSide::upper);
    const SeededCells sl = seeded_cells(*sys, h, OrbitSide::lower);
    for (std::size_t ui = 0; ui < m; ++ui)
      for (std::size_t vi = 0; vi < m; ++vi)
        for (std::size_t wi = 0; wi < m; ++wi)
          for (std::size_t xi = 0; xi < m; ++xi) {
            const PointSet& cu = su.cells[static_cast<std::size_t>(su.cell_of_pair[ui * m + vi])];
            const PointSet& cl = sl.cells[static_cast<std::size_t>(sl.cell_of_pair[wi * m + xi])];
            const bool actual = set_intersection(cu, cl).size() > 0;
            StratumIndex s{model.orbits[0], W[ui], W[vi], W[wi], W[xi]};
            const bool predicted = closed_orbit_stratum_nonempty(s);
            rep.require(actual == predicted,
                        "closed-orbit criterion mismatch at (" + to_word(W[ui]) + "," +
                            to_word(W[vi]) + "," + to_word(W[wi]) + "," + to_word(W[xi]) + ")");
          }
    rep.count("closed_orbit_census", static_cast<long long>(m * m * m * m));
  }
  return rep;
}

Report verify_descriptors(int n, int q, const VerifyOptions& opts) {
  if (n < 2 || n > 4) throw std::invalid_argument("matrix size must be between 2 and 4");
  require_small_q(q);
  (void)opts;

  const EmbeddingModel model = proj_matrices_model(n);

  Report rep;
  rep.check = "descriptors";
  rep.param("n", std::to_string(n));
  rep.param("q", std::to_string(q));

  for (int r = 1; r <= n; ++r) {
    const OrbitDescriptor& d = model.orbits[static_cast<std::size_t>(r - 1)];
    const Mat h = rank_idempotent(n, q, r);

    std::uint32_t j_mask = 0, k_mask = 0;
    for (int i = 0; i + 1 < n; ++i) {
      bool fixes = true;
      bool conjugates = true;
      for (int t = 1; t < q && (fixes || conjugates); ++t) {
        const Mat x = upper_elementary(n, q, i, t);
        const Mat y = lower_elementary(n, q, i, t);
        const Mat xi = inverse_of(x);
        const Mat yi = inverse_of(y);
        if (!(proj_equal(mul(x, h), h) && proj_equal(mul(y, h), h) &&
              proj_equal(mul(h, xi), h) && proj_equal(mul(h, yi), h)))
          fixes = false;
        if (!(proj_equal(mul(mul(x, h), xi), h) && proj_equal(mul(mul(y, h), yi), h)))
          conjugates = false;
      }
      if (fixes)
        j_mask |= 1u << i;
      else if (conjugates)
        k_mask |= 1u << i;
    }

    rep.require(d.J.mask() == j_mask, "orbit rank" + std::to_string(r) +
                                          ": fixing roots read off the action disagree with J");
    rep.require(d.K.mask() == k_mask, "orbit rank" + std::to_string(r) +
                                          ": conjugating roots read off the action disagree with K");
    rep.require(d.I.mask() == (j_mask | k_mask),
                "orbit rank" + std::to_string(r) + ": I is not the union of the two sets");
  }
  rep.count("orbits", n);
  return rep;
}

}  // namespace gemb::fq
