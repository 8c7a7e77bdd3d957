// Command-line surface for the embedding-strata library: enumerate stratum
// labels, canonicalize cell labels, and run the finite-field verifiers.
//
// Exit codes: 0 success (verifier passed), 1 a verifier ran and found a
// counterexample, 2 usage or guard violation.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gemb/orbits.hpp"
#include "gemb/verify.hpp"
#include "gemb/weyl.hpp"

namespace {

gemb::EmbeddingModel build_model(const std::string& model, const std::string& type, int n) {
  if (model == "proj_matrices") {
    if (n <= 0)
      throw std::invalid_argument("--n is required for the proj_matrices model");
    return gemb::proj_matrices_model(n);
  }
  if (model == "wonderful") {
    if (type.empty())
      throw std::invalid_argument("--type is required for the wonderful model");
    return gemb::wonderful_model(type);
  }
  throw std::invalid_argument("unknown model: " + model +
                              " (expected proj_matrices or wonderful)");
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw std::invalid_argument("cannot open output file: " + out_path);
  f << text;
}

gemb::CellSide parse_side(const std::string& side) {
  if (side == "standard") return gemb::CellSide::standard;
  if (side == "opposite") return gemb::CellSide::opposite;
  throw std::invalid_argument("unknown side: " + side + " (expected standard or opposite)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Strata of group embeddings: enumeration, normal forms, finite-field checks"};
  app.require_subcommand(1);

  std::string model_name = "proj_matrices", cartan_type, orbit_name, u_word = "e", v_word = "e";
  std::string side_name = "standard", format = "text", out_path, parabolic = "{}";
  int n = 0, single_q = 2, threads = 1;
  bool dot = false;
  std::vector<int> q_list;

  CLI::App* strata = app.add_subcommand("strata", "List stratum labels of an embedding model");
  strata->add_option("--model", model_name, "proj_matrices or wonderful");
  strata->add_option("--type", cartan_type, "Cartan type for the wonderful model, e.g. A2");
  strata->add_option("--n", n, "matrix size for the proj_matrices model");
  strata->add_option("--format", format, "json, text, or dot")
      ->check(CLI::IsMember({"json", "text", "dot"}));
  strata->add_flag("--dot", dot, "shorthand for --format dot (orbit closure graph)");
  strata->add_option("--out", out_path, "write output to a file instead of stdout");

  CLI::App* canon = app.add_subcommand("canon", "Canonical form of a double-cell label");
  canon->add_option("--model", model_name, "proj_matrices or wonderful");
  canon->add_option("--type", cartan_type, "Cartan type for the wonderful model");
  canon->add_option("--n", n, "matrix size for the proj_matrices model");
  canon->add_option("--orbit", orbit_name, "orbit name within the model")->required();
  canon->add_option("--u", u_word, "reduced word, e.g. s1.s2 (identity: e)");
  canon->add_option("--v", v_word, "reduced word, e.g. s1.s2 (identity: e)");
  canon->add_option("--side", side_name, "standard or opposite");
  canon->add_option("--format", format, "json or text")
      ->check(CLI::IsMember({"json", "text"}));
  canon->add_option("--out", out_path, "write output to a file instead of stdout");

  CLI::App* verify = app.add_subcommand("verify", "Run a finite-field verifier");
  verify->require_subcommand(1);
  std::string verify_format = "json";
  CLI::App* v_ex1 = verify->add_subcommand("example1", "determinantal set identity");
  CLI::App* v_ex2 = verify->add_subcommand("example2", "kernel-image pair inclusion");
  CLI::App* v_kls = verify->add_subcommand("kls", "fiber decomposition of projected cells");
  CLI::App* v_cells = verify->add_subcommand("cells", "double cells vs word normal form");
  CLI::App* v_part = verify->add_subcommand("partition", "orbit strata partition the space");
  for (CLI::App* sub : {v_ex1, v_ex2}) {
    sub->add_option("--q", q_list, "comma-separated primes, e.g. 2,3,5")
        ->delimiter(',')
        ->required();
  }
  for (CLI::App* sub : {v_kls, v_cells, v_part}) {
    sub->add_option("--n", n, "matrix size")->required();
    sub->add_option("--q", single_q, "field size");
  }
  v_kls->add_option("--parabolic", parabolic, "simple-root subset, e.g. a1 or a1,a2 or {}");
  for (CLI::App* sub : {v_ex1, v_ex2, v_kls, v_cells, v_part}) {
    sub->add_option("--threads", threads, "worker cap; never affects the output")
        ->check(CLI::PositiveNumber);
    sub->add_option("--format", verify_format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--out", out_path, "write the report to a file instead of stdout");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (strata->parsed()) {
      const gemb::EmbeddingModel model = build_model(model_name, cartan_type, n);
      if (dot || format == "dot") {
        emit(gemb::model_dot(model), out_path);
      } else {
        const std::vector<gemb::StratumIndex> labels = gemb::enumerate_strata(model);
        emit(format == "json" ? gemb::strata_json(labels) : gemb::strata_text(labels), out_path);
      }
      return 0;
    }
    if (canon->parsed()) {
      const gemb::EmbeddingModel model = build_model(model_name, cartan_type, n);
      const gemb::OrbitDescriptor& orbit = model.orbit_by_name(orbit_name);
      const gemb::WeylElement u = gemb::parse_word(*model.group, u_word);
      const gemb::WeylElement v = gemb::parse_word(*model.group, v_word);
      const gemb::CellIndex cell = gemb::canonicalize_cell(orbit, u, v, parse_side(side_name));
      emit(format == "json" ? gemb::cell_json(cell) : gemb::cell_text(cell), out_path);
      return 0;
    }

    gemb::fq::VerifyOptions opts;
    opts.threads = threads;
    gemb::fq::Report report;
    if (v_ex1->parsed())
      report = gemb::fq::verify_example1(q_list, opts);
    else if (v_ex2->parsed())
      report = gemb::fq::verify_example2(q_list, opts);
    else if (v_kls->parsed())
      report = gemb::fq::verify_kls(n, single_q, parabolic, opts);
    else if (v_cells->parsed())
      report = gemb::fq::verify_cells(n, single_q, opts);
    else if (v_part->parsed())
      report = gemb::fq::verify_partition(n, single_q, opts);
    else
      throw std::invalid_argument("no command selected");
    emit(verify_format == "text" ? gemb::fq::report_text(report) : gemb::fq::report_json(report),
         out_path);
    return report.pass ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
