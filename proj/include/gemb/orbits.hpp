#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gemb/weyl.hpp"

namespace gemb {

// Combinatorial shape of a group-embedding orbit: its stabiliser is encoded
// by simple-root subsets I = J disjoint-union K with J orthogonal to K. The
// toroidal flag marks shapes with J empty that arise in toroidal embeddings.
struct OrbitDescriptor {
  std::string name;
  SimpleRootSubset I, J, K;
  bool toroidal = false;
};

// Compares the mathematical data (Cartan type, I, J, K, toroidal); the name
// is a display label and does not participate.
bool operator==(const OrbitDescriptor& a, const OrbitDescriptor& b);
inline bool operator!=(const OrbitDescriptor& a, const OrbitDescriptor& b) { return !(a == b); }

// Validates I = J u K, J and K disjoint and mutually orthogonal, and
// toroidal => J empty. Errors name the violated condition; the
// orthogonality error names the offending root pair.
OrbitDescriptor make_descriptor(std::string name, const SimpleRootSubset& I,
                                const SimpleRootSubset& J, const SimpleRootSubset& K,
                                bool toroidal);

// An embedding model: the group, its orbit list in closure-increasing order
// (dense orbit last), and the cover edges of the closure order as index
// pairs (smaller, larger).
struct EmbeddingModel {
  std::string name;
  RootSystemPtr group;
  std::vector<OrbitDescriptor> orbits;
  std::vector<std::pair<int, int>> closure_edges;

  const OrbitDescriptor& orbit_by_name(std::string_view orbit_name) const;
};

// Rank stratification of the projective matrix monoid P(M_n): orbits
// "rank1".."rankn" over A_{n-1}, totally ordered by rank. Requires n >= 2.
EmbeddingModel proj_matrices_model(int n);

// The wonderful model of a group of the given type: one toroidal orbit
// "O<indices>" per subset K of the simple roots with I = K and J empty,
// ordered by (size, mask); the closure order is subset inclusion.
EmbeddingModel wonderful_model(const RootSystemPtr& group);
EmbeddingModel wonderful_model(std::string_view cartan_type);

enum class CellSide { standard, opposite };

// B x B (or B- x B-) orbit label inside one embedding orbit, in canonical
// form: u = u^I z with z in W_K, and v = v^I.
struct CellIndex {
  OrbitDescriptor orbit;
  WeylElement u, v;
  CellSide side = CellSide::standard;
};
bool operator==(const CellIndex& a, const CellIndex& b);
inline bool operator!=(const CellIndex& a, const CellIndex& b) { return !(a == b); }

// Canonical representative of the cell of (u, v): two inputs canonicalize
// to the same CellIndex exactly when u^I = u'^I, v W_I = v' W_I and
// u_K v_K^{-1} = u'_K v'_K^{-1}. The same normal form serves both sides.
CellIndex canonicalize_cell(const OrbitDescriptor& orbit, const WeylElement& u,
                            const WeylElement& v, CellSide side);

// Stratum label over one orbit, normal form u = u^I, x = x^I, v_J = w_J = e.
struct StratumIndex {
  OrbitDescriptor orbit;
  WeylElement u, v, w, x;
};
bool operator==(const StratumIndex& a, const StratumIndex& b);

// All normal-form stratum labels of every orbit of the model, in model
// orbit order and then lexicographic in the reduced words of (u, v, w, x).
std::vector<StratumIndex> enumerate_strata(const EmbeddingModel& model);

// Descriptor of the minimal toroidal shape dominating d: I = K = K(d) and
// J empty. Toroidal descriptors are returned unchanged.
OrbitDescriptor minimal_toroidal_cover(const OrbitDescriptor& d);

// Exact nonemptiness of the stratum of (u, v, w, x) on the closed orbit of
// a model with trivial stabiliser shape (I empty): both coordinate pairs
// must be Bruhat-comparable, w <= u and v <= x. The second coordinate is
// co-graded (v = e labels the dense cell on that side), hence the reversed
// comparison. Errors when I is nonempty; no closed-form criterion is
// provided there.
bool closed_orbit_stratum_nonempty(const StratumIndex& s);

// Serialization. JSON is deterministic (fixed key order, 2-space indent).
std::string model_json(const EmbeddingModel& model);
std::string model_dot(const EmbeddingModel& model);
std::string strata_json(const std::vector<StratumIndex>& strata);
std::string strata_text(const std::vector<StratumIndex>& strata);
std::string cell_json(const CellIndex& cell);
std::string cell_text(const CellIndex& cell);

}  // namespace gemb
