#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gemb/weyl.hpp"

namespace gemb::fq {

struct VerifyOptions {
  int threads = 1;
};

// Outcome of one verification run. counts and params keep insertion order
// so serialized reports are deterministic.
struct Report {
  std::string check;
  std::vector<std::pair<std::string, std::string>> params;
  bool pass = true;
  std::vector<std::pair<std::string, long long>> counts;
  std::vector<std::string> witnesses;

  void param(std::string key, std::string value);
  void count(std::string key, long long value);
  // Records a failed condition: sets pass = false and keeps a witness line.
  void fail(std::string witness);
  // Asserts a condition that should hold; on failure records the witness.
  void require(bool ok, const std::string& witness);
};

std::string report_json(const Report& r);
std::string report_text(const Report& r);

// Set identity for the 3x3 projective matrix monoid: the locus carved out
// by the two column-wedge equations and the rank bound equals the union of
// the middle-column-zero locus and the rank <= 1 locus, over every listed
// field size. Also interpolates the count polynomials of the two right-hand
// pieces (degrees 5 and 4). Requires at least six distinct supported primes.
Report verify_example1(const std::vector<int>& q_list, const VerifyOptions& opts = {});

// Strict inclusion for a projected stratum image on pairs of planes in
// F_q^4: the pairs (kernel, image) of the rank-2 matrices satisfying the
// stratum conditions omit an explicit witness pair of the open double cell
// while containing every transverse pair. Cross-checked by a second,
// fiberwise enumeration route. Requires q in {2, 3}.
Report verify_example2(const std::vector<int>& q_list, const VerifyOptions& opts = {});

// Fiber decomposition of open Richardson sets under the projection from the
// full flag variety to G/P: for all u minimal mod P and all w, the projected
// open Richardson sets indexed by the fiber of w partition the target open
// Richardson set. Requires 2 <= n <= 3, q in {2, 3}.
Report verify_kls(int n, int q, std::string_view parabolic, const VerifyOptions& opts = {});

// Double-cell partition of each rank stratum of the projective matrix
// monoid: orbit enumeration from seeded translates agrees with the cell
// normal form, on both triangular sides. Requires 2 <= n <= 3, q in {2, 3}.
Report verify_cells(int n, int q, const VerifyOptions& opts = {});

// Global decomposition of the projective matrix monoid: rank strata are
// exactly the two-sided full-group orbits, they partition the space, and
// each stratum splits into double cells on both sides with matching totals.
// For n = 2 also checks the toroidal-model consistency, the kernel-image
// fiber equinumerosity on the closed stratum, and the closed-orbit stratum
// nonemptiness criterion. Requires 2 <= n <= 3, q in {2, 3}.
Report verify_partition(int n, int q, const VerifyOptions& opts = {});

// Stabiliser shape of each rank stratum read off from the group action:
// the simple roots whose one-parameter subgroups fix the base point
// projectively (J), and those fixing it only by conjugation (K), must match
// the model descriptors. Requires 2 <= n <= 3, q in {2, 3}.
Report verify_descriptors(int n, int q, const VerifyOptions& opts = {});

}  // namespace gemb::fq
