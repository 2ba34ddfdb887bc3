#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "kitaev/config.hpp"
#include "kitaev/experiment.hpp"

using namespace kitaev;

namespace {

const char* kValid = R"(# comment
experiment = fixed-gauge-sweep
lattice.kind = square-octagon
lattice.L1 = 1
lattice.L2 = 1
couplings.J = [1, 1, 1.4142135623730951]
sweep.kappa = 0/0.4/5
optimizer.seed = 9
output = out.csv
)";

}  // namespace

TEST_CASE("parsing") {
  ExperimentConfig cfg = parse_config_text(kValid);
  CHECK(cfg.experiment == "fixed-gauge-sweep");
  CHECK(cfg.lattice_kind == LatticeKind::square_octagon);
  CHECK(cfg.L1 == 1);
  CHECK(cfg.couplings.J[2] == doctest::Approx(1.4142135623730951));
  REQUIRE(cfg.sweep_kappa.size() == 5);
  CHECK(cfg.sweep_kappa.front() == 0.0);
  CHECK(cfg.sweep_kappa.back() == doctest::Approx(0.4));
  CHECK(cfg.sweep_kappa[1] == doctest::Approx(0.1));
  CHECK(cfg.optimizer.seed == 9);
  CHECK(validate(cfg).empty());

  ExperimentConfig list = parse_config_text(
      "experiment = vortex-splitting\nlattice.kind = honeycomb\nlattice.L1 = 3\n"
      "lattice.L2 = 3\nsweep.kappa = [0.1, 0.2]\nsweep.kappa_int = [0.05]\noutput = o.csv\n");
  REQUIRE(list.sweep_kappa.size() == 2);
  CHECK(validate(list).empty());

  CHECK_THROWS_AS(parse_config_text("experiment fixed\n"), config_error);
  CHECK_THROWS_AS(parse_config_text("unknown.key = 3\n"), config_error);
  CHECK_THROWS_AS(parse_config_text("couplings.J = [1, 1]\n"), config_error);
  CHECK_THROWS_AS(parse_config_text("sweep.kappa = 0/0.5\n"), config_error);
  CHECK_THROWS_AS(parse_config_text("sweep.kappa = 0/0.5/0\n"), config_error);
}

TEST_CASE("validation diagnostics") {
  // Field in a fixed-gauge run is rejected.
  ExperimentConfig cfg = parse_config_text(kValid);
  cfg.couplings.h = {0.1, 0.0, 0.0};
  auto diags = validate(cfg);
  REQUIRE(diags.size() == 1);
  CHECK(diags[0].find("couplings.h") != std::string::npos);

  // Honeycomb 1x1 rejected.
  ExperimentConfig hc = parse_config_text(kValid);
  hc.lattice_kind = LatticeKind::honeycomb;
  CHECK(!validate(hc).empty());

  // Dynamical runs capped by the projector expansion.
  ExperimentConfig dyn = parse_config_text(
      "experiment = dynamical-field-sweep\nlattice.kind = square-octagon\n"
      "lattice.L1 = 2\nlattice.L2 = 2\nsweep.h0 = 0/1/3\noutput = o.csv\n");
  auto dyn_diags = validate(dyn);
  REQUIRE(dyn_diags.size() == 1);
  CHECK(dyn_diags[0].find("lattice") != std::string::npos);

  // Non-monotone sweep grid.
  ExperimentConfig grid = parse_config_text(kValid);
  grid.sweep_kappa = {0.3, 0.1};
  CHECK(!validate(grid).empty());

  // Unknown experiment.
  ExperimentConfig unknown = parse_config_text(kValid);
  unknown.experiment = "bogus";
  CHECK(!validate(unknown).empty());

  // Vortex pair out of range.
  ExperimentConfig vort = parse_config_text(kValid);
  vort.vortex_pair = {0, 7};
  CHECK(!validate(vort).empty());
}

TEST_CASE("vortex splitting experiment writes the expected CSV") {
  std::string out = "test_vortex_split.csv";
  ExperimentConfig cfg = parse_config_text(
      "experiment = vortex-splitting\nlattice.kind = honeycomb\nlattice.L1 = 3\n"
      "lattice.L2 = 3\nsweep.kappa = 0.2/0.4/3\noutput = " + out + "\n");
  REQUIRE(validate(cfg).empty());
  run_experiment(cfg);

  std::ifstream in(out);
  REQUIRE(in.good());
  std::string header;
  std::getline(in, header);
  CHECK(header == "kappa,kappa_int,splitting,E0");
  int rows = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) {
      ++rows;
    }
  }
  CHECK(rows == 3);
  in.close();

  std::ifstream manifest(out + ".manifest.txt");
  REQUIRE(manifest.good());
  std::string first;
  std::getline(manifest, first);
  CHECK(first.find("kitaev-vqe") != std::string::npos);
  manifest.close();
  std::remove(out.c_str());
  std::remove((out + ".manifest.txt").c_str());
}

TEST_CASE("single fixed-gauge run CSV is reproducible") {
  std::string out1 = "single_run_a.csv";
  std::string out2 = "single_run_b.csv";
  std::string base =
      "experiment = single-run\nmode = fixed-gauge\nlattice.kind = square-octagon\n"
      "lattice.L1 = 1\nlattice.L2 = 1\ncouplings.J = [1, 1, 1.4142135623730951]\n"
      "couplings.kappa = 0.2\noptimizer.seed = 4\noutput = ";
  ExperimentConfig a = parse_config_text(base + out1 + "\n");
  ExperimentConfig b = parse_config_text(base + out2 + "\n");
  run_experiment(a);
  run_experiment(b);
  auto read = [](const std::string& p) {
    std::ifstream in(p);
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
  };
  std::string ca = read(out1), cb = read(out2);
  CHECK(!ca.empty());
  CHECK(ca == cb);
  for (const std::string& f : {out1, out2, out1 + ".manifest.txt", out2 + ".manifest.txt"}) {
    std::remove(f.c_str());
  }
}

TEST_CASE("oracle pass emits reference columns only") {
  std::string out = "oracle_pass.csv";
  ExperimentConfig cfg = parse_config_text(
      "experiment = dynamical-field-sweep\nlattice.kind = square-octagon\n"
      "lattice.L1 = 1\nlattice.L2 = 1\ncouplings.J = [1, 1, 1.4142135623730951]\n"
      "sweep.h0 = 0/0.2/2\noutput = " + out + "\n");
  REQUIRE(validate(cfg).empty());
  run_experiment(cfg, /*oracle_only=*/true);
  std::ifstream in(out);
  std::string header;
  std::getline(in, header);
  CHECK(header == "h,E_exact,m_z_exact,w_exact");
  in.close();
  std::remove(out.c_str());
  std::remove((out + ".manifest.txt").c_str());
}
