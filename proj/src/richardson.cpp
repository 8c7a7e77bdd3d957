#include "gemb/richardson.hpp"

#include <stdexcept>

namespace gemb {

namespace {

void require_same(const RootSystem* a, const RootSystem* b, const char* what) {
  if (a == nullptr || b == nullptr)
    throw std::invalid_argument(std::string(what) + ": uninitialized operand");
  if (a != b) throw std::invalid_argument(std::string(what) + ": operands from different groups");
}

}  // namespace

ParabolicPair::ParabolicPair(const SimpleRootSubset& q, const SimpleRootSubset& p) : Q(q), P(p) {
  require_same(q.group_ptr(), p.group_ptr(), "ParabolicPair");
  if (!q.subset_of(p))
    throw std::invalid_argument("ParabolicPair: Q = " + q.str() + " is not contained in P = " +
                                p.str());
}

RichardsonIndex::RichardsonIndex(const WeylElement& u_in, const WeylElement& w_in,
                                 const SimpleRootSubset& P_in)
    : u(project_rep(u_in, P_in)), w(w_in), P(P_in) {
  require_same(w_in.group_ptr(), P_in.group_ptr(), "RichardsonIndex");
}

WeylElement project_rep(const WeylElement& w, const SimpleRootSubset& P) {
  return parabolic_decompose(w, P).first;
}

std::vector<WeylElement> kls_fiber(const WeylElement& w, const ParabolicPair& pair) {
  require_same(w.group_ptr(), pair.Q.group_ptr(), "kls_fiber");
  const WeylElement target = project_rep(w, pair.P);
  std::vector<WeylElement> out;
  for (const WeylElement& cand : min_coset_reps(pair.Q))
    if (project_rep(cand, pair.P) == target) out.push_back(cand);
  return out;  // min_coset_reps is word-lex sorted already
}

namespace {

std::vector<std::pair<WeylElement, WeylElement>> closure_pairs(const SimpleRootSubset& I,
                                                               const WeylElement& left,
                                                               const WeylElement& right,
                                                               bool left_below) {
  require_same(I.group_ptr(), left.group_ptr(), "ht_cells_in_closure");
  require_same(I.group_ptr(), right.group_ptr(), "ht_cells_in_closure");
  const RootSystem& sys = left.group();
  const std::size_t n = sys.order();
  const auto elems = sys.all_elements();

  // hit[a * n + b]: the pair (element a, element b) is realized by some
  // group element of W_I moving both bounds simultaneously
  std::vector<char> hit(n * n, 0);
  std::vector<int> firsts, seconds;
  for (const WeylElement& a : parabolic_subgroup(I)) {
    const WeylElement la = left * a, ra = right * a;
    firsts.clear();
    seconds.clear();
    for (const WeylElement& cand : elems) {
      if (left_below ? bruhat_leq(cand, la) : bruhat_leq(la, cand)) firsts.push_back(cand.id());
      if (left_below ? bruhat_leq(ra, cand) : bruhat_leq(cand, ra)) seconds.push_back(cand.id());
    }
    for (int f : firsts)
      for (int s : seconds) hit[static_cast<std::size_t>(f) * n + s] = 1;
  }

  std::vector<std::pair<WeylElement, WeylElement>> out;
  for (const WeylElement& f : elems)
    for (const WeylElement& s : elems)
      if (hit[static_cast<std::size_t>(f.id()) * n + s.id()]) out.emplace_back(f, s);
  return out;  // nested word-sorted loops keep the output sorted
}

}  // namespace

std::vector<std::pair<WeylElement, WeylElement>> ht_cells_in_closure(const SimpleRootSubset& I,
                                                                     const WeylElement& u,
                                                                     const WeylElement& v) {
  return closure_pairs(I, u, v, /*left_below=*/true);
}

std::vector<std::pair<WeylElement, WeylElement>> ht_opposite_cells_in_closure(
    const SimpleRootSubset& I, const WeylElement& w, const WeylElement& x) {
  return closure_pairs(I, w, x, /*left_below=*/false);
}

}  // namespace gemb
