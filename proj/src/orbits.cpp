#include "gemb/orbits.hpp"

#include <json.hpp>

#include <algorithm>
#include <stdexcept>

namespace gemb {

namespace {

using json = nlohmann::ordered_json;

void require_same(const RootSystem* a, const RootSystem* b, const char* what) {
  if (a == nullptr || b == nullptr)
    throw std::invalid_argument(std::string(what) + ": uninitialized operand");
  if (a != b) throw std::invalid_argument(std::string(what) + ": operands from different groups");
}

// W_K component of the parabolic part of u for the orthogonal splitting
// W_I = W_J x W_K.
WeylElement k_part(const WeylElement& u, const OrbitDescriptor& d) {
  const WeylElement par = parabolic_decompose(u, d.I).second;
  return parabolic_decompose(par, d.K).second;
}

json subset_json(const SimpleRootSubset& s) {
  json arr = json::array();
  for (int i : s.members()) arr.push_back("a" + std::to_string(i + 1));
  return arr;
}

json descriptor_json(const OrbitDescriptor& d) {
  json o;
  o["name"] = d.name;
  o["I"] = subset_json(d.I);
  o["J"] = subset_json(d.J);
  o["K"] = subset_json(d.K);
  o["toroidal"] = d.toroidal;
  return o;
}

}  // namespace

bool operator==(const OrbitDescriptor& a, const OrbitDescriptor& b) {
  if (a.I.group_ptr() == nullptr || b.I.group_ptr() == nullptr)
    return a.I.group_ptr() == b.I.group_ptr() && a.toroidal == b.toroidal;
  return a.I.group().type() == b.I.group().type() && a.I.mask() == b.I.mask() &&
         a.J.mask() == b.J.mask() && a.K.mask() == b.K.mask() && a.toroidal == b.toroidal;
}

OrbitDescriptor make_descriptor(std::string name, const SimpleRootSubset& I,
                                const SimpleRootSubset& J, const SimpleRootSubset& K,
                                bool toroidal) {
  require_same(I.group_ptr(), J.group_ptr(), "make_descriptor");
  require_same(I.group_ptr(), K.group_ptr(), "make_descriptor");
  if (!J.intersected(K).empty())
    throw std::invalid_argument("descriptor '" + name + "': J = " + J.str() + " and K = " +
                                K.str() + " must be disjoint");
  if (J.united(K) != I)
    throw std::invalid_argument("descriptor '" + name + "': I = " + I.str() +
                                " must equal the union of J = " + J.str() + " and K = " + K.str());
  for (int j : J.members())
    for (int k : K.members())
      if (!I.group().orthogonal(j, k))
        throw std::invalid_argument("descriptor '" + name + "': roots a" + std::to_string(j + 1) +
                                    " and a" + std::to_string(k + 1) + " are not orthogonal");
  if (toroidal && !J.empty())
    throw std::invalid_argument("descriptor '" + name + "': toroidal shapes require empty J, got " +
                                J.str());
  return OrbitDescriptor{std::move(name), I, J, K, toroidal};
}

const OrbitDescriptor& EmbeddingModel::orbit_by_name(std::string_view orbit_name) const {
  for (const auto& d : orbits)
    if (d.name == orbit_name) return d;
  std::string known;
  for (const auto& d : orbits) {
    if (!known.empty()) known += ", ";
    known += d.name;
  }
  throw std::invalid_argument("model '" + name + "' has no orbit named '" +
                              std::string(orbit_name) + "' (known: " + known + ")");
}

EmbeddingModel proj_matrices_model(int n) {
  if (n < 2) throw std::invalid_argument("proj_matrices model needs n >= 2");
  auto group = RootSystem::build(CartanType{'A', n - 1});
  EmbeddingModel model;
  model.name = "proj_matrices-n" + std::to_string(n);
  model.group = group;
  for (int r = 1; r <= n; ++r) {
    // 1-based: I = Delta minus alpha_r, K = {alpha_1..alpha_{r-1}},
    // J = {alpha_{r+1}..alpha_{n-1}}
    std::uint32_t all = (1u << (n - 1)) - 1u;
    std::uint32_t imask = r <= n - 1 ? (all & ~(1u << (r - 1))) : all;
    std::uint32_t kmask = (1u << (r - 1)) - 1u;
    std::uint32_t jmask = imask & ~kmask;
    SimpleRootSubset I(*group, imask), J(*group, jmask), K(*group, kmask);
    model.orbits.push_back(
        make_descriptor("rank" + std::to_string(r), I, J, K, /*toroidal=*/J.empty()));
  }
  for (int r = 1; r < n; ++r) model.closure_edges.emplace_back(r - 1, r);
  return model;
}

EmbeddingModel wonderful_model(const RootSystemPtr& group) {
  if (!group) throw std::invalid_argument("wonderful model needs a group");
  EmbeddingModel model;
  model.name = "wonderful-" + group->type().str();
  model.group = group;
  std::vector<std::uint32_t> masks;
  for (std::uint32_t m = 0; m < (1u << group->rank()); ++m) masks.push_back(m);
  std::sort(masks.begin(), masks.end(), [](std::uint32_t a, std::uint32_t b) {
    int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  for (std::uint32_t m : masks) {
    SimpleRootSubset K(*group, m);
    std::string nm = "O";
    for (int i : K.members()) nm += std::to_string(i + 1);
    model.orbits.push_back(make_descriptor(nm, K, SimpleRootSubset::none(*group), K, true));
  }
  for (std::size_t a = 0; a < masks.size(); ++a)
    for (std::size_t b = 0; b < masks.size(); ++b)
      if ((masks[a] & ~masks[b]) == 0 && __builtin_popcount(masks[b]) ==
                                             __builtin_popcount(masks[a]) + 1)
        model.closure_edges.emplace_back(static_cast<int>(a), static_cast<int>(b));
  return model;
}

EmbeddingModel wonderful_model(std::string_view cartan_type) {
  return wonderful_model(RootSystem::build(cartan_type));
}

bool operator==(const CellIndex& a, const CellIndex& b) {
  return a.orbit == b.orbit && a.u == b.u && a.v == b.v && a.side == b.side;
}

CellIndex canonicalize_cell(const OrbitDescriptor& orbit, const WeylElement& u,
                            const WeylElement& v, CellSide side) {
  require_same(orbit.I.group_ptr(), u.group_ptr(), "canonicalize_cell");
  require_same(orbit.I.group_ptr(), v.group_ptr(), "canonicalize_cell");
  const WeylElement z = k_part(u, orbit) * k_part(v, orbit).inverse();
  const WeylElement u_min = parabolic_decompose(u, orbit.I).first;
  const WeylElement v_min = parabolic_decompose(v, orbit.I).first;
  return CellIndex{orbit, u_min * z, v_min, side};
}

bool operator==(const StratumIndex& a, const StratumIndex& b) {
  return a.orbit == b.orbit && a.u == b.u && a.v == b.v && a.w == b.w && a.x == b.x;
}

std::vector<StratumIndex> enumerate_strata(const EmbeddingModel& model) {
  std::vector<StratumIndex> out;
  for (const OrbitDescriptor& orbit : model.orbits) {
    const auto outer = min_coset_reps(orbit.I);   // u and x run over W^I
    const auto inner = min_coset_reps(orbit.J);   // v and w run over W^J
    for (const WeylElement& u : outer)
      for (const WeylElement& v : inner)
        for (const WeylElement& w : inner)
          for (const WeylElement& x : outer) out.push_back(StratumIndex{orbit, u, v, w, x});
  }
  return out;  // sorted: model orbit order, then nested word-sorted loops
}

OrbitDescriptor minimal_toroidal_cover(const OrbitDescriptor& d) {
  if (d.toroidal) return d;
  return make_descriptor(d.name + "~", d.K, SimpleRootSubset::none(d.K.group()), d.K, true);
}

bool closed_orbit_stratum_nonempty(const StratumIndex& s) {
  if (!s.orbit.I.empty())
    throw std::invalid_argument("nonemptiness criterion is only available on orbits with empty I, "
                                "got I = " + s.orbit.I.str());
  // Componentwise cell-intersection criterion. The second coordinate is
  // co-graded (v = e labels the dense cell on that side), so its comparison
  // runs the other way.
  return bruhat_leq(s.w, s.u) && bruhat_leq(s.v, s.x);
}

std::string model_json(const EmbeddingModel& model) {
  json o;
  o["name"] = model.name;
  o["cartan_type"] = model.group->type().str();
  o["orbits"] = json::array();
  for (const auto& d : model.orbits) o["orbits"].push_back(descriptor_json(d));
  o["closure_edges"] = json::array();
  for (auto [a, b] : model.closure_edges)
    o["closure_edges"].push_back(json::array({model.orbits[a].name, model.orbits[b].name}));
  return o.dump(2) + "\n";
}

std::string model_dot(const EmbeddingModel& model) {
  std::string out = "digraph \"" + model.name + "\" {\n  rankdir=BT;\n";
  for (const auto& d : model.orbits) out += "  \"" + d.name + "\";\n";
  for (auto [a, b] : model.closure_edges)
    out += "  \"" + model.orbits[a].name + "\" -> \"" + model.orbits[b].name + "\";\n";
  out += "}\n";
  return out;
}

std::string strata_json(const std::vector<StratumIndex>& strata) {
  json arr = json::array();
  for (const auto& s : strata) {
    json o;
    o["orbit"] = s.orbit.name;
    o["u"] = to_word(s.u);
    o["v"] = to_word(s.v);
    o["w"] = to_word(s.w);
    o["x"] = to_word(s.x);
    arr.push_back(std::move(o));
  }
  return arr.dump(2) + "\n";
}

std::string strata_text(const std::vector<StratumIndex>& strata) {
  std::string out;
  for (const auto& s : strata) {
    out += s.orbit.name;
    out += ' ';
    out += to_word(s.u);
    out += ' ';
    out += to_word(s.v);
    out += ' ';
    out += to_word(s.w);
    out += ' ';
    out += to_word(s.x);
    out += '\n';
  }
  return out;
}

std::string cell_json(const CellIndex& cell) {
  json o;
  o["orbit"] = cell.orbit.name;
  o["u"] = to_word(cell.u);
  o["v"] = to_word(cell.v);
  o["side"] = cell.side == CellSide::standard ? "standard" : "opposite";
  return o.dump(2) + "\n";
}

std::string cell_text(const CellIndex& cell) {
  return cell.orbit.name + " u=" + to_word(cell.u) + " v=" + to_word(cell.v) +
         " side=" + (cell.side == CellSide::standard ? "standard" : "opposite") + "\n";
}

}  // namespace gemb
