#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gemb {

// Cartan type label for the supported finite families, e.g. "A3" or "B2".
struct CartanType {
  char family = 'A';
  int rank = 1;

  static CartanType parse(std::string_view text);
  std::string str() const;
  friend bool operator==(const CartanType&, const CartanType&) = default;
};

class RootSystem;
class SimpleRootSubset;
using RootSystemPtr = std::shared_ptr<const RootSystem>;

// Element of a finite Weyl group. Stores a dense id into the element table
// of its RootSystem; ids are deduplicated by the action on roots at
// construction time, so the id is a normal form and equality is id equality.
// Elements are only valid while the owning RootSystemPtr is alive.
class WeylElement {
 public:
  WeylElement() = default;

  const RootSystem& group() const { return *sys_; }
  const RootSystem* group_ptr() const { return sys_; }
  int id() const { return id_; }
  bool is_identity() const { return id_ == 0; }

  int length() const;
  // Lexicographically minimal reduced word, letters 0-based.
  const std::vector<std::uint8_t>& word() const;
  WeylElement inverse() const;

  friend bool operator==(const WeylElement& a, const WeylElement& b) {
    return a.sys_ == b.sys_ && a.id_ == b.id_;
  }
  friend bool operator!=(const WeylElement& a, const WeylElement& b) { return !(a == b); }
  // Total order: group pointer first, then plain lexicographic order on the
  // reduced words (the identity's empty word sorts first).
  friend bool operator<(const WeylElement& a, const WeylElement& b);
  friend WeylElement operator*(const WeylElement& a, const WeylElement& b);

 private:
  friend class RootSystem;
  WeylElement(const RootSystem* sys, int id) : sys_(sys), id_(id) {}

  const RootSystem* sys_ = nullptr;
  int id_ = 0;
};

// Subset of the simple roots of one group, stored as a bitmask (bit i is
// alpha_{i+1} in the 1-based naming used for serialization).
class SimpleRootSubset {
 public:
  SimpleRootSubset() = default;
  SimpleRootSubset(const RootSystem& sys, std::uint32_t mask);
  static SimpleRootSubset none(const RootSystem& sys);
  static SimpleRootSubset all(const RootSystem& sys);
  static SimpleRootSubset from_indices(const RootSystem& sys, const std::vector<int>& indices0);

  const RootSystem& group() const { return *sys_; }
  const RootSystem* group_ptr() const { return sys_; }
  std::uint32_t mask() const { return mask_; }
  bool empty() const { return mask_ == 0; }
  int size() const;
  bool contains(int i) const { return (mask_ >> i) & 1u; }
  std::vector<int> members() const;  // ascending, 0-based

  bool subset_of(const SimpleRootSubset& other) const;
  SimpleRootSubset united(const SimpleRootSubset& other) const;
  SimpleRootSubset intersected(const SimpleRootSubset& other) const;
  SimpleRootSubset complement() const;

  std::string str() const;  // "a1,a3"; the empty set prints "{}"

  friend bool operator==(const SimpleRootSubset& a, const SimpleRootSubset& b) {
    return a.sys_ == b.sys_ && a.mask_ == b.mask_;
  }
  friend bool operator!=(const SimpleRootSubset& a, const SimpleRootSubset& b) { return !(a == b); }

 private:
  const RootSystem* sys_ = nullptr;
  std::uint32_t mask_ = 0;
};

// Root system plus fully enumerated Weyl group of one of the classical
// families. Positive roots are integer vectors in the simple-root basis.
// Everything is immutable after build().
class RootSystem {
 public:
  // Supported: A1..A6, B2..B6, C2..C6, D2..D6. Throws std::invalid_argument
  // otherwise. The full group is enumerated up front (at most 46080
  // elements at the rank cap).
  static RootSystemPtr build(CartanType type);
  static RootSystemPtr build(std::string_view type);

  CartanType type() const { return type_; }
  int rank() const { return type_.rank; }

  // Cartan integer c(i,j) defined by s_i(alpha_j) = alpha_j - c(i,j) alpha_i.
  int cartan(int i, int j) const { return cartan_[static_cast<std::size_t>(i) * rank() + j]; }
  bool orthogonal(int i, int j) const { return cartan(i, j) == 0; }

  int positive_root_count() const { return num_pos_; }
  // Coordinates in the simple-root basis; index i < rank is alpha_{i+1}.
  const std::vector<int>& positive_root(int idx) const { return pos_roots_[idx]; }

  std::size_t order() const { return lengths_.size(); }

  WeylElement identity() const { return WeylElement(this, 0); }
  WeylElement simple_reflection(int i) const;
  WeylElement element(int id) const;
  std::vector<WeylElement> all_elements() const;  // word-lex sorted
  WeylElement longest_element() const { return WeylElement(this, longest_id_); }

  // Table access by element id.
  int right_multiply(int id, int s) const { return rmul_[static_cast<std::size_t>(id) * rank() + s]; }
  int left_multiply(int id, int s) const { return lmul_[static_cast<std::size_t>(id) * rank() + s]; }
  int inverse_id(int id) const { return inv_[id]; }
  int length_id(int id) const { return lengths_[id]; }
  const std::vector<std::uint8_t>& word_id(int id) const { return words_[id]; }

  // Image of a signed positive root (+(r+1) or -(r+1)) under element id.
  int root_image(int id, int signed_root) const;

 private:
  RootSystem() = default;
  void init(CartanType type);

  CartanType type_;
  std::vector<int> cartan_;                       // rank x rank
  int num_pos_ = 0;
  std::vector<std::vector<int>> pos_roots_;       // simple roots first, index i = alpha_{i+1}
  std::vector<std::vector<std::int16_t>> refl_;   // signed images of Phi+ under each s_i
  std::vector<std::int16_t> acts_;                // |W| x num_pos_, signed images
  std::vector<std::int32_t> rmul_, lmul_, inv_;
  std::vector<std::uint8_t> lengths_;
  std::vector<std::vector<std::uint8_t>> words_;  // lex-minimal reduced words
  std::vector<std::int32_t> word_sorted_ids_;
  int longest_id_ = 0;
};

// Group operations. All of these throw std::invalid_argument when handed
// elements or subsets of different RootSystem instances.
WeylElement multiply(const WeylElement& a, const WeylElement& b);
WeylElement inverse(const WeylElement& a);
int length(const WeylElement& a);

bool has_left_descent(const WeylElement& w, int s);
bool has_right_descent(const WeylElement& w, int s);

// Bruhat order u <= w. Descent recursion: strip the smallest left descent s
// of w and lift u along it; each step is decided by one length/root-sign
// test. The subword characterization is cross-checked in the test suite.
bool bruhat_leq(const WeylElement& u, const WeylElement& w);

// u = u^J * u_J with u^J the minimal representative of u W_J and lengths
// additive; returns (u^J, u_J). The decomposition is unique.
std::pair<WeylElement, WeylElement> parabolic_decompose(const WeylElement& u, const SimpleRootSubset& J);

// Minimal coset representatives W^J = { w : l(w s) > l(w) for all s in J }.
std::vector<WeylElement> min_coset_reps(const SimpleRootSubset& J);

// The standard parabolic subgroup W_J as a sorted element list.
std::vector<WeylElement> parabolic_subgroup(const SimpleRootSubset& J);

WeylElement longest_element(const RootSystem& sys);
WeylElement longest_element(const SimpleRootSubset& J);  // longest element of W_J

// Reduced-word serialization: "s1.s2.s1"; the identity prints "e".
std::string to_word(const WeylElement& w);
WeylElement parse_word(const RootSystem& sys, std::string_view text);

// Subset serialization: "a1,a3" (bare indices also accepted); the empty set
// parses from "{}", "" or "none".
SimpleRootSubset parse_subset(const RootSystem& sys, std::string_view text);

// One-line permutation form for type A groups (W(A_{n-1}) = S_n acting on
// {1..n}, s_i the adjacent transposition (i, i+1)). Errors on other types.
WeylElement from_one_line(const RootSystem& sys, const std::vector<int>& perm);
std::vector<int> one_line(const WeylElement& w);

}  // namespace gemb

template <>
struct std::hash<gemb::WeylElement> {
  std::size_t operator()(const gemb::WeylElement& w) const noexcept {
    auto h = std::hash<const void*>()(static_cast<const void*>(w.group_ptr()));
    return h ^ (std::hash<int>()(w.id()) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
  }
};
