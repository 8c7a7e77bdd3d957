#include "gemb/weyl.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace gemb {

namespace {

[[noreturn]] void bad_type(std::string_view text) {
  throw std::invalid_argument("unsupported Cartan type '" + std::string(text) +
                              "': expected one of A1..A6, B2..B6, C2..C6, D2..D6");
}

std::size_t expected_group_order(CartanType t) {
  auto factorial = [](int k) {
    std::size_t f = 1;
    for (int i = 2; i <= k; ++i) f *= static_cast<std::size_t>(i);
    return f;
  };
  const int r = t.rank;
  switch (t.family) {
    case 'A': return factorial(r + 1);
    case 'B':
    case 'C': return (std::size_t{1} << r) * factorial(r);
    case 'D': return (std::size_t{1} << (r - 1)) * factorial(r);
    default: bad_type(t.str());
  }
}

int expected_positive_roots(CartanType t) {
  const int r = t.rank;
  switch (t.family) {
    case 'A': return r * (r + 1) / 2;
    case 'B':
    case 'C': return r * r;
    case 'D': return r * (r - 1);
    default: bad_type(t.str());
  }
}

void require_same_group(const RootSystem* a, const RootSystem* b, const char* what) {
  if (a == nullptr || b == nullptr)
    throw std::invalid_argument(std::string(what) + ": uninitialized group reference");
  if (a != b)
    throw std::invalid_argument(std::string(what) + ": operands belong to different groups");
}

// Applies a signed-root table (image of every positive root) to a signed
// root index; both use the +-(r+1) encoding.
inline int signed_apply(const std::int16_t* table, int signed_root) {
  return signed_root > 0 ? table[signed_root - 1] : -table[-signed_root - 1];
}

}  // namespace

CartanType CartanType::parse(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.size() < 2) bad_type(text);
  char fam = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  int rank = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) bad_type(text);
    rank = rank * 10 + (s[i] - '0');
    if (rank > 99) bad_type(text);
  }
  CartanType t{fam, rank};
  const bool ok = (fam == 'A' && rank >= 1 && rank <= 6) ||
                  ((fam == 'B' || fam == 'C' || fam == 'D') && rank >= 2 && rank <= 6);
  if (!ok) bad_type(text);
  return t;
}

std::string CartanType::str() const {
  return std::string(1, family) + std::to_string(rank);
}

// ---------------------------------------------------------------------------
// RootSystem construction

RootSystemPtr RootSystem::build(CartanType type) {
  // re-validate through parse so both entry points enforce the same bounds
  CartanType checked = CartanType::parse(type.str());
  auto sys = std::shared_ptr<RootSystem>(new RootSystem());
  sys->init(checked);
  return sys;
}

RootSystemPtr RootSystem::build(std::string_view type) {
  return build(CartanType::parse(type));
}

void RootSystem::init(CartanType t) {
  type_ = t;
  const int r = t.rank;

  // Cartan integers c(i,j): s_i(alpha_j) = alpha_j - c(i,j) alpha_i.
  cartan_.assign(static_cast<std::size_t>(r) * r, 0);
  auto C = [&](int i, int j) -> int& { return cartan_[static_cast<std::size_t>(i) * r + j]; };
  for (int i = 0; i < r; ++i) C(i, i) = 2;
  auto link = [&](int i, int j, int cij, int cji) {
    C(i, j) = cij;
    C(j, i) = cji;
  };
  switch (t.family) {
    case 'A':
      for (int i = 0; i + 1 < r; ++i) link(i, i + 1, -1, -1);
      break;
    case 'B':  // last simple root short: its row carries the -2
      for (int i = 0; i + 2 < r; ++i) link(i, i + 1, -1, -1);
      link(r - 2, r - 1, -1, -2);
      break;
    case 'C':  // last simple root long
      for (int i = 0; i + 2 < r; ++i) link(i, i + 1, -1, -1);
      link(r - 2, r - 1, -2, -1);
      break;
    case 'D':  // chain on 0..r-2, node r-1 attached to node r-3
      for (int i = 0; i + 2 < r; ++i) link(i, i + 1, -1, -1);
      if (r >= 3) link(r - 3, r - 1, -1, -1);
      break;
    default: bad_type(t.str());
  }

  // Close the simple roots under the simple reflections.
  std::map<std::vector<int>, char> seen;
  std::vector<std::vector<int>> queue;
  for (int i = 0; i < r; ++i) {
    std::vector<int> e(r, 0);
    e[i] = 1;
    seen.emplace(e, 1);
    queue.push_back(std::move(e));
  }
  auto reflect = [&](const std::vector<int>& b, int s) {
    int pairing = 0;
    for (int j = 0; j < r; ++j) pairing += b[j] * C(s, j);
    std::vector<int> out = b;
    out[s] -= pairing;
    return out;
  };
  for (std::size_t head = 0; head < queue.size(); ++head) {
    std::vector<int> b = queue[head];  // copy: queue may reallocate
    for (int s = 0; s < r; ++s) {
      auto nb = reflect(b, s);
      if (seen.emplace(nb, 1).second) queue.push_back(std::move(nb));
    }
  }

  // Keep positives, simple roots pinned at indices 0..r-1.
  std::vector<std::vector<int>> tail;
  for (const auto& [root, unused] : seen) {
    (void)unused;
    bool nonneg = true, nonpos = true;
    int height = 0;
    for (int c : root) {
      nonneg = nonneg && c >= 0;
      nonpos = nonpos && c <= 0;
      height += c;
    }
    if (!nonneg && !nonpos)
      throw std::logic_error("root closure produced a mixed-sign vector");
    if (!nonneg) continue;
    if (height == 1) continue;  // simple roots added below in index order
    tail.push_back(root);
  }
  std::sort(tail.begin(), tail.end(), [](const auto& a, const auto& b) {
    int ha = std::accumulate(a.begin(), a.end(), 0);
    int hb = std::accumulate(b.begin(), b.end(), 0);
    if (ha != hb) return ha < hb;
    return a < b;
  });
  pos_roots_.clear();
  for (int i = 0; i < r; ++i) {
    std::vector<int> e(r, 0);
    e[i] = 1;
    pos_roots_.push_back(std::move(e));
  }
  for (auto& root : tail) pos_roots_.push_back(std::move(root));
  num_pos_ = static_cast<int>(pos_roots_.size());
  if (num_pos_ != expected_positive_roots(t))
    throw std::logic_error("positive root count mismatch for " + t.str());

  std::map<std::vector<int>, int> pos_index;
  for (int k = 0; k < num_pos_; ++k) pos_index.emplace(pos_roots_[k], k);

  // Signed images of every positive root under each simple reflection.
  const int m = num_pos_;
  refl_.assign(r, std::vector<std::int16_t>(m, 0));
  for (int s = 0; s < r; ++s) {
    for (int k = 0; k < m; ++k) {
      auto img = reflect(pos_roots_[k], s);
      auto it = pos_index.find(img);
      if (it != pos_index.end()) {
        refl_[s][k] = static_cast<std::int16_t>(it->second + 1);
      } else {
        for (int& c : img) c = -c;
        refl_[s][k] = static_cast<std::int16_t>(-(pos_index.at(img) + 1));
      }
    }
  }

  // Enumerate the group by right multiplication, deduplicating elements by
  // their action on the positive roots.
  auto key_of = [m](const std::int16_t* act) {
    return std::string(reinterpret_cast<const char*>(act), sizeof(std::int16_t) * m);
  };
  std::unordered_map<std::string, int> index;
  acts_.assign(m, 0);
  for (int k = 0; k < m; ++k) acts_[k] = static_cast<std::int16_t>(k + 1);
  index.emplace(key_of(acts_.data()), 0);
  lengths_.assign(1, 0);
  rmul_.assign(r, -1);

  std::vector<std::int16_t> nact(m);
  for (int id = 0; id < static_cast<int>(lengths_.size()); ++id) {
    for (int s = 0; s < r; ++s) {
      if (rmul_[static_cast<std::size_t>(id) * r + s] >= 0) continue;
      const std::int16_t* act = acts_.data() + static_cast<std::size_t>(id) * m;
      for (int k = 0; k < m; ++k) nact[k] = static_cast<std::int16_t>(signed_apply(act, refl_[s][k]));
      auto [it, inserted] = index.emplace(key_of(nact.data()), static_cast<int>(lengths_.size()));
      int id2 = it->second;
      if (inserted) {
        acts_.insert(acts_.end(), nact.begin(), nact.end());
        lengths_.push_back(static_cast<std::uint8_t>(lengths_[id] + 1));
        rmul_.insert(rmul_.end(), r, -1);
      }
      rmul_[static_cast<std::size_t>(id) * r + s] = id2;
      rmul_[static_cast<std::size_t>(id2) * r + s] = id;  // (ws)s = w
    }
  }
  const std::size_t n_elems = lengths_.size();
  if (n_elems != expected_group_order(t))
    throw std::logic_error("group order mismatch for " + t.str());

  // Left multiplication table and inverses via the dedup map.
  lmul_.assign(n_elems * r, -1);
  inv_.assign(n_elems, -1);
  std::vector<std::int16_t> buf(m);
  for (std::size_t id = 0; id < n_elems; ++id) {
    const std::int16_t* act = acts_.data() + id * m;
    for (int s = 0; s < r; ++s) {
      for (int k = 0; k < m; ++k) buf[k] = static_cast<std::int16_t>(signed_apply(refl_[s].data(), act[k]));
      lmul_[id * r + s] = index.at(key_of(buf.data()));
    }
    for (int k = 0; k < m; ++k) {
      int v = act[k];
      if (v > 0)
        buf[v - 1] = static_cast<std::int16_t>(k + 1);
      else
        buf[-v - 1] = static_cast<std::int16_t>(-(k + 1));
    }
    inv_[id] = index.at(key_of(buf.data()));
  }

  // Lex-minimal reduced words, filled in BFS (length) order.
  words_.assign(n_elems, {});
  for (std::size_t id = 1; id < n_elems; ++id) {
    for (int s = 0; s < r; ++s) {
      int down = lmul_[id * r + s];
      if (lengths_[down] < lengths_[id]) {
        words_[id].reserve(words_[down].size() + 1);
        words_[id].push_back(static_cast<std::uint8_t>(s));
        words_[id].insert(words_[id].end(), words_[down].begin(), words_[down].end());
        break;
      }
    }
  }

  // Integrity: length equals the number of inverted positive roots.
  longest_id_ = -1;
  for (std::size_t id = 0; id < n_elems; ++id) {
    const std::int16_t* act = acts_.data() + id * m;
    int inversions = 0;
    for (int k = 0; k < m; ++k) inversions += act[k] < 0;
    if (inversions != lengths_[id])
      throw std::logic_error("length/inversion mismatch in group table");
    if (lengths_[id] == m) longest_id_ = static_cast<int>(id);
  }
  if (longest_id_ < 0) throw std::logic_error("no longest element found");

  word_sorted_ids_.resize(n_elems);
  std::iota(word_sorted_ids_.begin(), word_sorted_ids_.end(), 0);
  std::sort(word_sorted_ids_.begin(), word_sorted_ids_.end(), [this](int a, int b) {
    return words_[a] < words_[b];
  });
}

WeylElement RootSystem::simple_reflection(int i) const {
  if (i < 0 || i >= rank())
    throw std::invalid_argument("simple reflection index " + std::to_string(i + 1) +
                                " out of range for " + type_.str());
  return WeylElement(this, rmul_[i]);
}

WeylElement RootSystem::element(int id) const {
  if (id < 0 || id >= static_cast<int>(order()))
    throw std::invalid_argument("element id out of range");
  return WeylElement(this, id);
}

std::vector<WeylElement> RootSystem::all_elements() const {
  std::vector<WeylElement> out;
  out.reserve(order());
  for (int id : word_sorted_ids_) out.push_back(WeylElement(this, id));
  return out;
}

int RootSystem::root_image(int id, int signed_root) const {
  const std::int16_t* act = acts_.data() + static_cast<std::size_t>(id) * num_pos_;
  return signed_apply(act, signed_root);
}

// ---------------------------------------------------------------------------
// WeylElement

int WeylElement::length() const { return sys_->length_id(id_); }

const std::vector<std::uint8_t>& WeylElement::word() const { return sys_->word_id(id_); }

WeylElement WeylElement::inverse() const { return WeylElement(sys_, sys_->inverse_id(id_)); }

bool operator<(const WeylElement& a, const WeylElement& b) {
  if (a.sys_ != b.sys_) return a.sys_ < b.sys_;
  return a.sys_->word_id(a.id_) < b.sys_->word_id(b.id_);
}

WeylElement operator*(const WeylElement& a, const WeylElement& b) { return multiply(a, b); }

WeylElement multiply(const WeylElement& a, const WeylElement& b) {
  require_same_group(a.group_ptr(), b.group_ptr(), "multiply");
  const RootSystem& sys = a.group();
  int id = a.id();
  for (std::uint8_t s : b.word()) id = sys.right_multiply(id, s);
  return sys.element(id);
}

WeylElement inverse(const WeylElement& a) {
  if (a.group_ptr() == nullptr) throw std::invalid_argument("inverse: uninitialized element");
  return a.inverse();
}

int length(const WeylElement& a) {
  if (a.group_ptr() == nullptr) throw std::invalid_argument("length: uninitialized element");
  return a.length();
}

bool has_left_descent(const WeylElement& w, int s) {
  const RootSystem& sys = w.group();
  return sys.length_id(sys.left_multiply(w.id(), s)) < w.length();
}

bool has_right_descent(const WeylElement& w, int s) {
  const RootSystem& sys = w.group();
  return sys.length_id(sys.right_multiply(w.id(), s)) < w.length();
}

bool bruhat_leq(const WeylElement& u, const WeylElement& w) {
  require_same_group(u.group_ptr(), w.group_ptr(), "bruhat_leq");
  const RootSystem& sys = u.group();
  const int r = sys.rank();
  int ui = u.id(), wi = w.id();
  while (wi != 0) {
    if (ui == 0) return true;
    int s = -1;
    for (int j = 0; j < r; ++j) {
      if (sys.length_id(sys.left_multiply(wi, j)) < sys.length_id(wi)) {
        s = j;
        break;
      }
    }
    int us = sys.left_multiply(ui, s);
    if (sys.length_id(us) < sys.length_id(ui)) ui = us;
    wi = sys.left_multiply(wi, s);
  }
  return ui == 0;
}

std::pair<WeylElement, WeylElement> parabolic_decompose(const WeylElement& u, const SimpleRootSubset& J) {
  require_same_group(u.group_ptr(), J.group_ptr(), "parabolic_decompose");
  const RootSystem& sys = u.group();
  int w = u.id();   // invariant: u = w * par
  int par = 0;
  for (;;) {
    int found = -1;
    for (int j : J.members()) {
      if (sys.length_id(sys.right_multiply(w, j)) < sys.length_id(w)) {
        found = j;
        break;
      }
    }
    if (found < 0) break;
    w = sys.right_multiply(w, found);
    par = sys.left_multiply(par, found);
  }
  return {sys.element(w), sys.element(par)};
}

std::vector<WeylElement> min_coset_reps(const SimpleRootSubset& J) {
  const RootSystem& sys = J.group();
  const auto members = J.members();
  std::vector<WeylElement> out;
  for (const WeylElement& w : sys.all_elements()) {
    bool minimal = true;
    for (int j : members) {
      if (sys.length_id(sys.right_multiply(w.id(), j)) < w.length()) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back(w);
  }
  return out;  // all_elements is word-lex sorted already
}

std::vector<WeylElement> parabolic_subgroup(const SimpleRootSubset& J) {
  const RootSystem& sys = J.group();
  const auto members = J.members();
  std::vector<int> ids{0};
  std::vector<char> seen(sys.order(), 0);
  seen[0] = 1;
  for (std::size_t head = 0; head < ids.size(); ++head) {
    for (int j : members) {
      int next = sys.right_multiply(ids[head], j);
      if (!seen[next]) {
        seen[next] = 1;
        ids.push_back(next);
      }
    }
  }
  std::vector<WeylElement> out;
  out.reserve(ids.size());
  for (int id : ids) out.push_back(sys.element(id));
  std::sort(out.begin(), out.end());
  return out;
}

WeylElement longest_element(const RootSystem& sys) { return sys.longest_element(); }

WeylElement longest_element(const SimpleRootSubset& J) {
  const RootSystem& sys = J.group();
  const auto members = J.members();
  int id = 0;
  for (;;) {
    int up = -1;
    for (int j : members) {
      int next = sys.right_multiply(id, j);
      if (sys.length_id(next) > sys.length_id(id)) {
        up = next;
        break;
      }
    }
    if (up < 0) return sys.element(id);
    id = up;
  }
}

std::string to_word(const WeylElement& w) {
  if (w.is_identity()) return "e";
  std::string out;
  for (std::uint8_t s : w.word()) {
    if (!out.empty()) out += '.';
    out += 's';
    out += std::to_string(s + 1);
  }
  return out;
}

WeylElement parse_word(const RootSystem& sys, std::string_view text) {
  auto fail = [&](const std::string& why) -> void {
    throw std::invalid_argument("cannot parse word '" + std::string(text) + "': " + why);
  };
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) fail("empty input (use 'e' for the identity)");
  if (s == "e") return sys.identity();
  if (s.back() == '.') fail("trailing separator");
  int id = 0;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t dot = s.find('.', pos);
    std::string tok = s.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
    pos = dot == std::string::npos ? s.size() : dot + 1;
    if (!tok.empty() && (tok[0] == 's' || tok[0] == 'S')) tok = tok.substr(1);
    if (tok.empty()) fail("empty letter");
    int k = 0;
    for (char c : tok) {
      if (!std::isdigit(static_cast<unsigned char>(c))) fail("letter '" + tok + "' is not s<index>");
      k = k * 10 + (c - '0');
    }
    if (k < 1 || k > sys.rank())
      fail("generator index " + std::to_string(k) + " out of range 1.." + std::to_string(sys.rank()));
    id = sys.right_multiply(id, k - 1);
  }
  return sys.element(id);
}

SimpleRootSubset parse_subset(const RootSystem& sys, std::string_view text) {
  auto fail = [&](const std::string& why) -> void {
    throw std::invalid_argument("cannot parse subset '" + std::string(text) + "': " + why);
  };
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty() || s == "{}" || s == "none") return SimpleRootSubset::none(sys);
  if (s.back() == ',') fail("trailing separator");
  std::uint32_t mask = 0;
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t comma = s.find(',', pos);
    std::string tok = s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    pos = comma == std::string::npos ? s.size() : comma + 1;
    if (!tok.empty() && (tok[0] == 'a' || tok[0] == 'A')) tok = tok.substr(1);
    if (tok.empty()) fail("empty entry");
    int k = 0;
    for (char c : tok) {
      if (!std::isdigit(static_cast<unsigned char>(c))) fail("entry '" + tok + "' is not a<index>");
      k = k * 10 + (c - '0');
    }
    if (k < 1 || k > sys.rank())
      fail("simple root index " + std::to_string(k) + " out of range 1.." + std::to_string(sys.rank()));
    mask |= 1u << (k - 1);
  }
  return SimpleRootSubset(sys, mask);
}

WeylElement from_one_line(const RootSystem& sys, const std::vector<int>& perm) {
  if (sys.type().family != 'A')
    throw std::invalid_argument("one-line permutation form requires a type A group, got " +
                                sys.type().str());
  const int n = sys.rank() + 1;
  if (static_cast<int>(perm.size()) != n)
    throw std::invalid_argument("one-line form for " + sys.type().str() + " needs " +
                                std::to_string(n) + " values");
  std::vector<char> hit(n + 1, 0);
  for (int v : perm) {
    if (v < 1 || v > n || hit[v])
      throw std::invalid_argument("one-line form is not a permutation of 1.." + std::to_string(n));
    hit[v] = 1;
  }
  std::vector<int> p = perm;
  std::vector<int> letters;
  for (;;) {
    int i = -1;
    for (int k = 0; k + 1 < n; ++k) {
      if (p[k] > p[k + 1]) {
        i = k;
        break;
      }
    }
    if (i < 0) break;
    std::swap(p[i], p[i + 1]);
    letters.push_back(i);
  }
  int id = 0;
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) id = sys.right_multiply(id, *it);
  return sys.element(id);
}

std::vector<int> one_line(const WeylElement& w) {
  const RootSystem& sys = w.group();
  if (sys.type().family != 'A')
    throw std::invalid_argument("one-line permutation form requires a type A group, got " +
                                sys.type().str());
  const int n = sys.rank() + 1;
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i + 1;
  const auto& word = w.word();
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    const int a = *it + 1, b = *it + 2;  // compose on the left: relabel values
    for (int& v : p) v = (v == a) ? b : (v == b ? a : v);
  }
  return p;
}

// ---------------------------------------------------------------------------
// SimpleRootSubset

SimpleRootSubset::SimpleRootSubset(const RootSystem& sys, std::uint32_t mask)
    : sys_(&sys), mask_(mask) {
  if (mask >> sys.rank())
    throw std::invalid_argument("subset mask has bits beyond rank " + std::to_string(sys.rank()));
}

SimpleRootSubset SimpleRootSubset::none(const RootSystem& sys) { return SimpleRootSubset(sys, 0); }

SimpleRootSubset SimpleRootSubset::all(const RootSystem& sys) {
  return SimpleRootSubset(sys, (1u << sys.rank()) - 1u);
}

SimpleRootSubset SimpleRootSubset::from_indices(const RootSystem& sys, const std::vector<int>& indices0) {
  std::uint32_t mask = 0;
  for (int i : indices0) {
    if (i < 0 || i >= sys.rank())
      throw std::invalid_argument("simple root index " + std::to_string(i + 1) +
                                  " out of range for " + sys.type().str());
    mask |= 1u << i;
  }
  return SimpleRootSubset(sys, mask);
}

int SimpleRootSubset::size() const { return __builtin_popcount(mask_); }

std::vector<int> SimpleRootSubset::members() const {
  std::vector<int> out;
  for (int i = 0; i < (sys_ ? sys_->rank() : 0); ++i)
    if (contains(i)) out.push_back(i);
  return out;
}

bool SimpleRootSubset::subset_of(const SimpleRootSubset& other) const {
  require_same_group(sys_, other.sys_, "subset_of");
  return (mask_ & ~other.mask_) == 0;
}

SimpleRootSubset SimpleRootSubset::united(const SimpleRootSubset& other) const {
  require_same_group(sys_, other.sys_, "united");
  return SimpleRootSubset(*sys_, mask_ | other.mask_);
}

SimpleRootSubset SimpleRootSubset::intersected(const SimpleRootSubset& other) const {
  require_same_group(sys_, other.sys_, "intersected");
  return SimpleRootSubset(*sys_, mask_ & other.mask_);
}

SimpleRootSubset SimpleRootSubset::complement() const {
  return SimpleRootSubset(*sys_, ~mask_ & ((1u << sys_->rank()) - 1u));
}

std::string SimpleRootSubset::str() const {
  if (mask_ == 0) return "{}";
  std::string out;
  for (int i : members()) {
    if (!out.empty()) out += ',';
    out += 'a';
    out += std::to_string(i + 1);
  }
  return out;
}

}  // namespace gemb
