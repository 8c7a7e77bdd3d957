#include <doctest.h>

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "gemb/verify.hpp"

using namespace gemb::fq;

namespace {

long long count_of(const Report& r, const std::string& key) {
  for (const auto& [k, v] : r.counts)
    if (k == key) return v;
  FAIL("missing count ", key);
  return -1;
}

std::string param_of(const Report& r, const std::string& key) {
  for (const auto& [k, v] : r.params)
    if (k == key) return v;
  FAIL("missing param ", key);
  return "";
}

// Everything except the thread count, which is reported but must not affect
// any result.
bool same_outcome(const Report& a, const Report& b) {
  auto strip = [](const Report& r) {
    std::vector<std::pair<std::string, std::string>> params;
    for (const auto& kv : r.params)
      if (kv.first != "threads") params.push_back(kv);
    return params;
  };
  return a.check == b.check && a.pass == b.pass && strip(a) == strip(b) &&
         a.counts == b.counts && a.witnesses == b.witnesses;
}

}  // namespace

TEST_CASE("report rendering") {
  Report r;
  r.check = "demo";
  r.param("q", "2,3");
  r.count("points", 15);
  const std::string json = report_json(r);
  CHECK(json.find("\"check\": \"demo\"") != std::string::npos);
  CHECK(json.find("\"pass\": true") != std::string::npos);
  CHECK(json.find("\"points\": 15") != std::string::npos);
  CHECK(json.back() == '\n');
  const std::string text = report_text(r);
  CHECK(text.find("check: demo") != std::string::npos);
  CHECK(text.find("param q = 2,3") != std::string::npos);
  CHECK(text.find("count points = 15") != std::string::npos);
  CHECK(text.find("result: pass") != std::string::npos);

  for (int i = 0; i < 40; ++i) r.fail("witness " + std::to_string(i));
  CHECK(!r.pass);
  CHECK(r.witnesses.size() == 32);  // witness list is capped
  CHECK(report_text(r).find("result: FAIL") != std::string::npos);
  CHECK(report_json(r).find("\"pass\": false") != std::string::npos);
}

TEST_CASE("set identity for the determinantal example") {
  VerifyOptions opts;
  opts.threads = 4;
  const std::vector<int> all_q = {2, 3, 5, 7, 11, 13};
  const Report r = verify_example1(all_q, opts);
  CHECK(r.pass);
  CHECK(r.witnesses.empty());
  CHECK(count_of(r, "q=2.lhs") == 91);
  CHECK(count_of(r, "q=2.middle_column_zero") == 63);
  CHECK(count_of(r, "q=2.rank_le_1") == 49);
  CHECK(count_of(r, "q=3.middle_column_zero") == 364);
  CHECK(count_of(r, "q=3.rank_le_1") == 169);
  CHECK(param_of(r, "count_polynomial.middle_column_zero") ==
        "x^5 + x^4 + x^3 + x^2 + x + 1");
  CHECK(param_of(r, "count_polynomial.rank_le_1") == "x^4 + 2x^3 + 3x^2 + 2x + 1");

  // The identity is a statement about sets, so the shard count cannot matter.
  VerifyOptions one;
  one.threads = 1;
  CHECK(same_outcome(verify_example1(all_q, one), r));

  CHECK_THROWS_AS(verify_example1({2, 3, 5}, opts), std::invalid_argument);
  CHECK_THROWS_AS(verify_example1({2, 3, 5, 7, 11, 11}, opts), std::invalid_argument);
  CHECK_THROWS_AS(verify_example1({2, 3, 5, 7, 11, 17}, opts), std::invalid_argument);
  CHECK_THROWS_AS(verify_example1({}, opts), std::invalid_argument);
}

TEST_CASE("strict inclusion for the kernel-image example") {
  VerifyOptions opts;
  opts.threads = 4;
  const Report r = verify_example2({2, 3}, opts);
  CHECK(r.pass);
  CHECK(r.witnesses.empty());
  CHECK(count_of(r, "q=2.planes") == 35);
  CHECK(count_of(r, "q=3.planes") == 130);
  CHECK(count_of(r, "q=2.open_double_cell_planes") == 6);
  CHECK(count_of(r, "q=3.open_double_cell_planes") == 48);
  CHECK(count_of(r, "q=2.candidate_pairs") == 36);
  CHECK(count_of(r, "q=3.candidate_pairs") == 2304);
  // Strictness: the image misses at least the recorded witness pair.
  CHECK(count_of(r, "q=2.image_pairs") < 36);
  CHECK(count_of(r, "q=3.image_pairs") < 2304);
  CHECK(count_of(r, "q=2.transverse_pairs") <= count_of(r, "q=2.image_pairs"));

  VerifyOptions one;
  one.threads = 1;
  CHECK(same_outcome(verify_example2({2, 3}, one), r));

  CHECK_THROWS_AS(verify_example2({5}, opts), std::invalid_argument);
  CHECK_THROWS_AS(verify_example2({2, 2}, opts), std::invalid_argument);
  CHECK_THROWS_AS(verify_example2({}, opts), std::invalid_argument);
}

TEST_CASE("fiber decomposition of projected cell intersections") {
  const Report r = verify_kls(3, 2, "a1", {});
  CHECK(r.pass);
  CHECK(count_of(r, "full_flags") == 21);
  CHECK(count_of(r, "partial_flags") == 7);
  CHECK(count_of(r, "index_pairs") == 18);

  for (const char* p : {"a2", "a1,a2"}) CHECK(verify_kls(3, 2, p, {}).pass);
  for (const int q : {2, 3}) CHECK(verify_kls(2, q, "a1", {}).pass);
  CHECK(verify_kls(3, 3, "a1", {}).pass);

  CHECK_THROWS_AS(verify_kls(3, 2, "a7", {}), std::invalid_argument);
  CHECK_THROWS_AS(verify_kls(3, 2, "bogus", {}), std::invalid_argument);
  CHECK_THROWS_AS(verify_kls(4, 2, "a1", {}), std::invalid_argument);
  CHECK_THROWS_AS(verify_kls(3, 5, "a1", {}), std::invalid_argument);
}

TEST_CASE("double cells agree with the word normal form") {
  const Report r2 = verify_cells(2, 2, {});
  CHECK(r2.pass);
  CHECK(count_of(r2, "rank1.standard.cells") == 4);
  CHECK(count_of(r2, "rank1.opposite.cells") == 4);
  CHECK(count_of(r2, "rank2.standard.cells") == 2);
  CHECK(count_of(r2, "rank1.points") == 9);
  CHECK(count_of(r2, "rank2.points") == 6);

  CHECK(verify_cells(2, 3, {}).pass);

  const Report r3 = verify_cells(3, 2, {});
  CHECK(r3.pass);
  CHECK(count_of(r3, "rank1.standard.cells") == 9);
  CHECK(count_of(r3, "rank2.standard.cells") == 18);
  CHECK(count_of(r3, "rank3.standard.cells") == 6);
  CHECK(count_of(r3, "rank2.opposite.cells") == 18);

  CHECK_THROWS_AS(verify_cells(4, 2, {}), std::invalid_argument);
  CHECK_THROWS_AS(verify_cells(3, 5, {}), std::invalid_argument);
}

TEST_CASE("orbit strata partition the projective matrix space") {
  const Report r2 = verify_partition(2, 2, {});
  CHECK(r2.pass);
  CHECK(count_of(r2, "points") == 15);
  CHECK(count_of(r2, "closed_stratum.fibers") == 9);  // (q + 1)^2
  CHECK(count_of(r2, "closed_orbit_census") == 16);
  CHECK(count_of(r2, "rank1.nonempty_intersections") == 9);
  // Every standard class meets every opposite class in the invertible stratum.
  CHECK(count_of(r2, "rank2.nonempty_intersections") == 4);

  const Report r2b = verify_partition(2, 3, {});
  CHECK(r2b.pass);
  CHECK(count_of(r2b, "points") == 40);
  CHECK(count_of(r2b, "closed_stratum.fibers") == 16);

  const Report r3 = verify_partition(3, 2, {});
  CHECK(r3.pass);
  CHECK(count_of(r3, "points") == 511);
  CHECK(count_of(r3, "rank1.points") == 49);
  CHECK(count_of(r3, "rank2.points") == 294);
  CHECK(count_of(r3, "rank3.points") == 168);
  CHECK(count_of(r3, "rank3.nonempty_intersections") == 36);

  CHECK_THROWS_AS(verify_partition(4, 2, {}), std::invalid_argument);
  CHECK_THROWS_AS(verify_partition(2, 7, {}), std::invalid_argument);
}

TEST_CASE("stabilizer shapes match the declared orbit data") {
  for (const int n : {2, 3, 4})
    for (const int q : {2, 3}) {
      const Report r = verify_descriptors(n, q, {});
      CHECK(r.pass);
      CHECK(count_of(r, "orbits") == n);
    }
  CHECK_THROWS_AS(verify_descriptors(5, 2, {}), std::invalid_argument);
  CHECK_THROWS_AS(verify_descriptors(3, 7, {}), std::invalid_argument);
}
