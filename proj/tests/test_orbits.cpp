#include "gemb/orbits.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

using gemb::CellIndex;
using gemb::CellSide;
using gemb::EmbeddingModel;
using gemb::OrbitDescriptor;
using gemb::RootSystem;
using gemb::SimpleRootSubset;
using gemb::StratumIndex;
using gemb::WeylElement;

namespace {

// The raw equivalence predicate that canonicalize_cell must realize: equal
// minimal representatives mod I on both slots plus equal K-twist.
bool cells_equivalent(const OrbitDescriptor& d, const WeylElement& u, const WeylElement& v,
                      const WeylElement& up, const WeylElement& vp) {
  auto kpart = [&](const WeylElement& y) {
    return gemb::parabolic_decompose(gemb::parabolic_decompose(y, d.I).second, d.K).second;
  };
  return gemb::parabolic_decompose(u, d.I).first == gemb::parabolic_decompose(up, d.I).first &&
         gemb::parabolic_decompose(v, d.I).first == gemb::parabolic_decompose(vp, d.I).first &&
         kpart(u) * kpart(v).inverse() == kpart(up) * kpart(vp).inverse();
}

std::string subset_str(const SimpleRootSubset& s) { return s.str(); }

}  // namespace

TEST_CASE("descriptor validation") {
  auto a2 = RootSystem::build("A2");
  auto a3 = RootSystem::build("A3");
  auto none2 = SimpleRootSubset::none(*a2);

  CHECK_NOTHROW(gemb::make_descriptor("closed", none2, none2, none2, true));
  CHECK_NOTHROW(gemb::make_descriptor("closed", none2, none2, none2, false));
  CHECK_NOTHROW(gemb::make_descriptor("ok", gemb::parse_subset(*a3, "a1,a3"),
                                      gemb::parse_subset(*a3, "a3"),
                                      gemb::parse_subset(*a3, "a1"), false));

  // adjacent simple roots are not orthogonal; the error names the pair
  try {
    gemb::make_descriptor("bad", SimpleRootSubset::all(*a2), gemb::parse_subset(*a2, "a2"),
                          gemb::parse_subset(*a2, "a1"), false);
    FAIL("expected an exception");
  } catch (const std::invalid_argument& e) {
    std::string msg = e.what();
    CHECK(msg.find("a1") != std::string::npos);
    CHECK(msg.find("a2") != std::string::npos);
    CHECK(msg.find("orthogonal") != std::string::npos);
  }

  // J and K must be disjoint
  CHECK_THROWS_AS(gemb::make_descriptor("bad", gemb::parse_subset(*a2, "a1"),
                                        gemb::parse_subset(*a2, "a1"),
                                        gemb::parse_subset(*a2, "a1"), false),
                  std::invalid_argument);
  // I must be exactly the union
  CHECK_THROWS_AS(gemb::make_descriptor("bad", SimpleRootSubset::all(*a3),
                                        gemb::parse_subset(*a3, "a3"),
                                        gemb::parse_subset(*a3, "a1"), false),
                  std::invalid_argument);
  // toroidal needs empty J
  CHECK_THROWS_AS(gemb::make_descriptor("bad", gemb::parse_subset(*a3, "a1"),
                                        gemb::parse_subset(*a3, "a1"),
                                        SimpleRootSubset::none(*a3), true),
                  std::invalid_argument);
}

TEST_CASE("descriptor equality ignores the name") {
  auto a3 = RootSystem::build("A3");
  auto d1 = gemb::make_descriptor("x", gemb::parse_subset(*a3, "a1"),
                                  SimpleRootSubset::none(*a3), gemb::parse_subset(*a3, "a1"), true);
  auto d2 = gemb::make_descriptor("y", gemb::parse_subset(*a3, "a1"),
                                  SimpleRootSubset::none(*a3), gemb::parse_subset(*a3, "a1"), true);
  auto d3 = gemb::make_descriptor("x", gemb::parse_subset(*a3, "a1"),
                                  SimpleRootSubset::none(*a3), gemb::parse_subset(*a3, "a1"),
                                  false);
  CHECK(d1 == d2);
  CHECK(d1 != d3);
}

TEST_CASE("projective matrix model descriptors") {
  CHECK_THROWS_AS(gemb::proj_matrices_model(1), std::invalid_argument);

  auto m2 = gemb::proj_matrices_model(2);
  REQUIRE(m2.orbits.size() == 2);
  CHECK(m2.group->type().str() == "A1");
  CHECK(m2.orbits[0].name == "rank1");
  CHECK(subset_str(m2.orbits[0].I) == "{}");
  CHECK(subset_str(m2.orbits[0].J) == "{}");
  CHECK(subset_str(m2.orbits[0].K) == "{}");
  CHECK(m2.orbits[1].name == "rank2");
  CHECK(subset_str(m2.orbits[1].I) == "a1");
  CHECK(subset_str(m2.orbits[1].J) == "{}");
  CHECK(subset_str(m2.orbits[1].K) == "a1");
  CHECK(m2.orbits[1].toroidal);
  CHECK(m2.closure_edges == std::vector<std::pair<int, int>>{{0, 1}});

  auto m3 = gemb::proj_matrices_model(3);
  REQUIRE(m3.orbits.size() == 3);
  CHECK(subset_str(m3.orbits[0].I) == "a2");
  CHECK(subset_str(m3.orbits[0].J) == "a2");
  CHECK(subset_str(m3.orbits[0].K) == "{}");
  CHECK_FALSE(m3.orbits[0].toroidal);
  CHECK(subset_str(m3.orbits[1].I) == "a1");
  CHECK(subset_str(m3.orbits[1].J) == "{}");
  CHECK(subset_str(m3.orbits[1].K) == "a1");
  CHECK(subset_str(m3.orbits[2].I) == "a1,a2");
  CHECK(subset_str(m3.orbits[2].K) == "a1,a2");
  CHECK(m3.closure_edges == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});

  auto m4 = gemb::proj_matrices_model(4);
  CHECK(subset_str(m4.orbits[1].I) == "a1,a3");
  CHECK(subset_str(m4.orbits[1].J) == "a3");
  CHECK(subset_str(m4.orbits[1].K) == "a1");

  CHECK(m2.orbit_by_name("rank1") == m2.orbits[0]);
  CHECK_THROWS_AS(m2.orbit_by_name("rank9"), std::invalid_argument);

  // exactly one orbit never below another: the dense one, listed last
  for (const auto& m : {m2, m3, m4}) {
    std::set<int> lowers;
    for (auto [a, b] : m.closure_edges) lowers.insert(a);
    CHECK(lowers.size() + 1 == m.orbits.size());
    CHECK(lowers.count(static_cast<int>(m.orbits.size()) - 1) == 0);
  }
}

TEST_CASE("wonderful model descriptors") {
  auto w1 = gemb::wonderful_model("A1");
  REQUIRE(w1.orbits.size() == 2);
  CHECK(w1.orbits[0].name == "O");
  CHECK(w1.orbits[1].name == "O1");
  CHECK(w1.closure_edges.size() == 1);

  auto w2 = gemb::wonderful_model("A2");
  REQUIRE(w2.orbits.size() == 4);
  CHECK(w2.orbits[0].name == "O");
  CHECK(w2.orbits[1].name == "O1");
  CHECK(w2.orbits[2].name == "O2");
  CHECK(w2.orbits[3].name == "O12");
  for (const auto& d : w2.orbits) {
    CHECK(d.toroidal);
    CHECK(d.J.empty());
    CHECK(d.I == d.K);
  }
  // Boolean lattice covers on two atoms
  std::set<std::pair<std::string, std::string>> edges;
  for (auto [a, b] : w2.closure_edges) edges.insert({w2.orbits[a].name, w2.orbits[b].name});
  CHECK(edges == std::set<std::pair<std::string, std::string>>{
                     {"O", "O1"}, {"O", "O2"}, {"O1", "O12"}, {"O2", "O12"}});

  auto w3 = gemb::wonderful_model("B3");
  CHECK(w3.orbits.size() == 8);
  CHECK(w3.closure_edges.size() == 12);  // edges of the 3-cube
  CHECK(w3.orbits[7].name == "O123");
}

TEST_CASE("cell canonicalization on fixed examples") {
  auto m3 = gemb::proj_matrices_model(3);
  const auto& sys = *m3.group;
  const auto& rank1 = m3.orbits[0];  // I = {a2}, K = {}

  auto canon = gemb::canonicalize_cell(rank1, gemb::parse_word(sys, "s2"),
                                       gemb::parse_word(sys, "s1.s2"), CellSide::standard);
  CHECK(canon.u.is_identity());
  CHECK(gemb::to_word(canon.v) == "s1");
  CHECK(canon.side == CellSide::standard);

  // identity pair is already canonical
  auto id = gemb::canonicalize_cell(rank1, sys.identity(), sys.identity(), CellSide::opposite);
  CHECK(id.u.is_identity());
  CHECK(id.v.is_identity());
  CHECK(id.side == CellSide::opposite);

  // empty I leaves everything untouched
  auto m2 = gemb::proj_matrices_model(2);
  for (const WeylElement& u : m2.group->all_elements())
    for (const WeylElement& v : m2.group->all_elements()) {
      auto c = gemb::canonicalize_cell(m2.orbits[0], u, v, CellSide::standard);
      CHECK(c.u == u);
      CHECK(c.v == v);
    }

  auto b2 = RootSystem::build("B2");
  CHECK_THROWS_AS(
      gemb::canonicalize_cell(rank1, b2->identity(), b2->identity(), CellSide::standard),
      std::invalid_argument);
}

TEST_CASE("cell canonicalization is idempotent and constant exactly on predicate classes") {
  std::vector<EmbeddingModel> models;
  models.push_back(gemb::proj_matrices_model(2));
  models.push_back(gemb::proj_matrices_model(3));
  models.push_back(gemb::wonderful_model("A2"));
  models.push_back(gemb::wonderful_model("B2"));

  for (const auto& model : models) {
    CAPTURE(model.name);
    auto elems = model.group->all_elements();
    for (const auto& orbit : model.orbits) {
      CAPTURE(orbit.name);
      std::vector<CellIndex> canon;
      for (const WeylElement& u : elems)
        for (const WeylElement& v : elems)
          canon.push_back(gemb::canonicalize_cell(orbit, u, v, CellSide::standard));

      const std::size_t n = elems.size();
      for (std::size_t i = 0; i < canon.size(); ++i) {
        // idempotent, and the canonical pair satisfies the normal form
        auto again = gemb::canonicalize_cell(orbit, canon[i].u, canon[i].v, CellSide::standard);
        CHECK(again == canon[i]);
        auto upar = gemb::parabolic_decompose(canon[i].u, orbit.I).second;
        CHECK(gemb::parabolic_decompose(upar, orbit.J).second.is_identity());
        CHECK(gemb::parabolic_decompose(canon[i].v, orbit.I).second.is_identity());

        for (std::size_t j = 0; j < canon.size(); ++j) {
          bool same = canon[i] == canon[j];
          bool pred = cells_equivalent(orbit, elems[i / n], elems[i % n], elems[j / n],
                                       elems[j % n]);
          CHECK(same == pred);
        }
      }
    }
  }
}

TEST_CASE("strata enumeration counts and normal form") {
  auto w1 = gemb::wonderful_model("A1");
  auto strata = gemb::enumerate_strata(w1);
  CHECK(strata.size() == 20);  // 16 on the closed orbit, 4 on the dense one
  int closed = 0;
  for (const auto& s : strata)
    if (s.orbit.name == "O") ++closed;
  CHECK(closed == 16);

  auto m2 = gemb::proj_matrices_model(2);
  auto strata2 = gemb::enumerate_strata(m2);
  REQUIRE(strata2.size() == 20);

  // the A1 wonderful model and P(M_2) carry the same index set
  for (std::size_t i = 0; i < strata2.size(); ++i) {
    CHECK(strata[i].orbit == strata2[i].orbit);
    CHECK(gemb::to_word(strata[i].u) == gemb::to_word(strata2[i].u));
    CHECK(gemb::to_word(strata[i].v) == gemb::to_word(strata2[i].v));
    CHECK(gemb::to_word(strata[i].w) == gemb::to_word(strata2[i].w));
    CHECK(gemb::to_word(strata[i].x) == gemb::to_word(strata2[i].x));
  }

  auto m3 = gemb::proj_matrices_model(3);
  auto strata3 = gemb::enumerate_strata(m3);
  CHECK(strata3.size() == 81 + 324 + 36);

  // normal form and no duplicates
  for (const auto& model : {m2, m3}) {
    auto list = gemb::enumerate_strata(model);
    std::set<std::tuple<std::string, int, int, int, int>> seen;
    for (const auto& s : list) {
      CHECK(gemb::parabolic_decompose(s.u, s.orbit.I).second.is_identity());
      CHECK(gemb::parabolic_decompose(s.x, s.orbit.I).second.is_identity());
      CHECK(gemb::parabolic_decompose(s.v, s.orbit.J).second.is_identity());
      CHECK(gemb::parabolic_decompose(s.w, s.orbit.J).second.is_identity());
      CHECK(seen.insert({s.orbit.name, s.u.id(), s.v.id(), s.w.id(), s.x.id()}).second);
    }
  }
}

TEST_CASE("minimal toroidal cover") {
  auto m3 = gemb::proj_matrices_model(3);

  // non-toroidal orbit: cover collapses to the K-part
  auto cover0 = gemb::minimal_toroidal_cover(m3.orbits[0]);
  CHECK(cover0.toroidal);
  CHECK(cover0.I.empty());
  CHECK(cover0.J.empty());
  CHECK(cover0.K.empty());

  // toroidal orbit: unchanged
  CHECK(gemb::minimal_toroidal_cover(m3.orbits[1]) == m3.orbits[1]);
  CHECK(gemb::minimal_toroidal_cover(m3.orbits[1]).name == "rank2");

  // the cover shrinks I and J and preserves K, for every built-in orbit
  for (int n : {2, 3, 4}) {
    auto m = gemb::proj_matrices_model(n);
    for (const auto& d : m.orbits) {
      auto c = gemb::minimal_toroidal_cover(d);
      CHECK(d.K.subset_of(c.K));
      CHECK(c.K.subset_of(d.K));
      CHECK(c.J.subset_of(d.J));
      CHECK(c.I.subset_of(d.I));
    }
  }
}

TEST_CASE("closed orbit stratum nonemptiness") {
  auto w1 = gemb::wonderful_model("A1");
  const auto& closed = w1.orbits[0];
  const auto& dense = w1.orbits[1];
  auto e = w1.group->identity();
  auto s = w1.group->simple_reflection(0);

  CHECK(gemb::closed_orbit_stratum_nonempty(StratumIndex{closed, e, e, e, e}));
  CHECK(gemb::closed_orbit_stratum_nonempty(StratumIndex{closed, s, e, e, s}));
  CHECK(gemb::closed_orbit_stratum_nonempty(StratumIndex{closed, e, e, e, s}));
  CHECK_FALSE(gemb::closed_orbit_stratum_nonempty(StratumIndex{closed, e, e, s, e}));
  CHECK_FALSE(gemb::closed_orbit_stratum_nonempty(StratumIndex{closed, s, s, e, e}));
  CHECK_THROWS_AS(gemb::closed_orbit_stratum_nonempty(StratumIndex{dense, e, e, e, e}),
                  std::invalid_argument);
}

TEST_CASE("model serialization") {
  auto w1 = gemb::wonderful_model("A1");
  auto js = gemb::model_json(w1);
  CHECK(js.find("\"name\": \"wonderful-A1\"") != std::string::npos);
  CHECK(js.find("\"cartan_type\": \"A1\"") != std::string::npos);
  CHECK(js.find("\"toroidal\": true") != std::string::npos);
  CHECK(js == gemb::model_json(w1));  // deterministic

  CHECK(gemb::model_dot(w1) ==
        "digraph \"wonderful-A1\" {\n"
        "  rankdir=BT;\n"
        "  \"O\";\n"
        "  \"O1\";\n"
        "  \"O\" -> \"O1\";\n"
        "}\n");

  auto strata = gemb::enumerate_strata(w1);
  auto text = gemb::strata_text(strata);
  CHECK(std::count(text.begin(), text.end(), '\n') == 20);
  CHECK(text.substr(0, text.find('\n')) == "O e e e e");
  auto sj = gemb::strata_json(strata);
  CHECK(sj.find("\"orbit\": \"O\"") != std::string::npos);

  // the K-twist of (e, s1) lands in the u slot: u* = e * (e * s1^{-1}) = s1
  auto cell = gemb::canonicalize_cell(w1.orbits[1], w1.group->identity(),
                                      w1.group->simple_reflection(0), CellSide::standard);
  CHECK(gemb::cell_text(cell) == "O1 u=s1 v=e side=standard\n");
  CHECK(gemb::cell_json(cell).find("\"side\": \"standard\"") != std::string::npos);
}
