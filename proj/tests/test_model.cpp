// Copyright 2026 The zenogate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sstream>

#include <catch_amalgamated.hpp>

#include "zenogate/config.hpp"
#include "zenogate/gates.hpp"
#include "zenogate/model.hpp"
#include "zenogate/zeno.hpp"

using namespace zenogate;
using Catch::Matchers::WithinAbs;

namespace {

BasisState swap12(const BasisState& s) {
  auto lv = s.levels();
  auto ph = s.photons();
  std::swap(lv[0], lv[1]);
  std::swap(ph[0], ph[1]);
  return BasisState(lv, ph);
}

}  // namespace

TEST_CASE("drive Hamiltonian entries") {
  const SystemLayout layout(3);
  const BasisState seed = BasisState::vacuum(layout, "ffs");
  const BasisState excited = BasisState::vacuum(layout, "ffe");

  SECTION("detuning sits on every excited population") {
    const HamiltonianSpec spec = HamiltonianSpec::uniform(3, 0.0, 1.0);
    SubspaceBasis b(layout, {seed, excited});
    Eigen::MatrixXcd h1 = drive_hamiltonian(spec, b).dense();
    CHECK_THAT(std::abs(h1(b.index_of(excited), b.index_of(excited)) - 1.0), WithinAbs(0, 1e-15));
    CHECK_THAT(std::abs(h1(b.index_of(seed), b.index_of(seed))), WithinAbs(0, 1e-15));
  }

  SECTION("the drive couples the central s and e levels with amplitude omega") {
    const HamiltonianSpec spec = HamiltonianSpec::uniform(3, 0.07, 1.0);
    SubspaceBasis b = sector_basis(spec, seed);
    Eigen::MatrixXcd h1 = drive_hamiltonian(spec, b).dense();
    CHECK_THAT(std::abs(h1(b.index_of(seed), b.index_of(excited)) - 0.07), WithinAbs(0, 1e-15));
  }

  SECTION("omega = delta = 0 gives the zero matrix") {
    const HamiltonianSpec probe = HamiltonianSpec::uniform(3, 0.1, 1.0);
    SubspaceBasis b = sector_basis(probe, seed);
    const HamiltonianSpec spec = HamiltonianSpec::uniform(3, 0.0, 0.0);
    CHECK(drive_hamiltonian(spec, b).sparse().nonZeros() == 0);
  }
}

TEST_CASE("exchange Hamiltonian entries") {
  const SystemLayout layout(3);
  const HamiltonianSpec probe = HamiltonianSpec::uniform(3, 0.1, 1.0);
  const BasisState seed = BasisState::vacuum(layout, "ffs");
  SubspaceBasis b = sector_basis(probe, seed);

  SECTION("central coupling connects e_A to a photon in either mode") {
    const HamiltonianSpec spec(layout, PulseParams(0.1, 1.0),
                               Couplings({1.0, 1.0}, /*g_central=*/0.83));
    Eigen::MatrixXcd h2 = exchange_hamiltonian(spec, b).dense();
    const int col = b.index_of(BasisState::vacuum(layout, "ffe"));
    const int row = b.index_of(BasisState::vacuum(layout, "ffg").with_photon(0, 1));
    CHECK_THAT(std::abs(h2(row, col) - 0.83), WithinAbs(0, 1e-15));
  }

  SECTION("idle-sector spectrum is {-sqrt2, 0, 0, +sqrt2} g") {
    const HamiltonianSpec spec = HamiltonianSpec::uniform(3, 0.1, 1.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(exchange_hamiltonian(spec, b).dense());
    const double r2 = std::numbers::sqrt2;
    CHECK_THAT(es.eigenvalues()(0), WithinAbs(-r2, 1e-12));
    CHECK_THAT(es.eigenvalues()(1), WithinAbs(0.0, 1e-12));
    CHECK_THAT(es.eigenvalues()(2), WithinAbs(0.0, 1e-12));
    CHECK_THAT(es.eigenvalues()(3), WithinAbs(r2, 1e-12));
  }

  SECTION("zero couplings give the zero matrix") {
    const HamiltonianSpec spec(layout, PulseParams(0.1, 1.0), Couplings({0.0, 0.0}, 0.0));
    CHECK(exchange_hamiltonian(spec, b).sparse().nonZeros() == 0);
  }
}

TEST_CASE("exchange spectra across all three sectors, as multisets") {
  const HamiltonianSpec spec = HamiltonianSpec::uniform(3, 0.1, 1.0);
  for (SectorKind kind : {SectorKind::idle, SectorKind::single, SectorKind::full}) {
    SubspaceBasis b = sector_basis(spec, sector_seed(kind, spec.layout));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(exchange_hamiltonian(spec, b).dense());
    const std::vector<double> expected = analytic_sector_spectrum(kind, spec.layout);
    REQUIRE(static_cast<int>(expected.size()) == es.eigenvalues().size());
    for (int i = 0; i < es.eigenvalues().size(); ++i)
      CHECK_THAT(es.eigenvalues()(i), WithinAbs(expected[i], 1e-12));
  }
}

TEST_CASE("the Hamiltonian commutes with the excitation number") {
  for (int n : {3, 7}) {
    const HamiltonianSpec spec = HamiltonianSpec::uniform(n, 0.1, 1.0);
    SubspaceBasis b = sector_basis(spec, sector_seed(SectorKind::full, spec.layout));
    const OperatorMatrix h = total_hamiltonian(spec, b);
    const OperatorMatrix n_exc = excitation_operator(b);
    CHECK(commutator_max_abs(h, n_exc) <= 1e-13);
  }
}

TEST_CASE("swapping data qudits 1 and 2 conjugates the Hamiltonian") {
  const SystemLayout layout(3);
  const PulseParams pulse(0.1, 1.0);
  const HamiltonianSpec spec(layout, pulse, Couplings({1.1, 0.9}, 1.0));
  const HamiltonianSpec swapped(layout, pulse, Couplings({0.9, 1.1}, 1.0));

  const ComputationalEncoding enc(layout);
  SubspaceBasis b1 = sector_basis(spec, enc.all_states());
  SubspaceBasis b2 = sector_basis(swapped, enc.all_states());
  REQUIRE(b1.size() == b2.size());

  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(b1.size(), b1.size());
  for (int j = 0; j < b1.size(); ++j) p(b2.index_of(swap12(b1.state(j))), j) = 1.0;

  const Eigen::MatrixXcd h1 = total_hamiltonian(spec, b1).dense();
  const Eigen::MatrixXcd h2 = total_hamiltonian(swapped, b2).dense();
  CHECK((p * h1 * p.adjoint() - h2).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("jump operators enumerate every decay channel") {
  const SystemLayout layout(3);
  const HamiltonianSpec spec = HamiltonianSpec::uniform(3, 0.1, 1.0);
  const DecoherenceParams dec = DecoherenceParams::uniform(layout, 0.01, 0.02);
  const ComputationalEncoding enc(layout);
  SubspaceBasis b = sector_basis(spec, enc.all_states(), &dec);

  const std::vector<JumpChannel> channels = build_jump_operators(dec, layout, b);
  REQUIRE(channels.size() == 2 + 9);
  for (int i = 0; i < 2; ++i) CHECK(channels[i].rate == 0.01);
  for (std::size_t i = 2; i < channels.size(); ++i) CHECK(channels[i].rate == 0.02);

  SECTION("photon decay lowers a photon with amplitude 1") {
    const BasisState from = BasisState::vacuum(layout, "ffg").with_photon(0, 1);
    const BasisState to = BasisState::vacuum(layout, "ffg");
    const Eigen::MatrixXcd a1 = channels[0].op.dense();
    CHECK_THAT(std::abs(a1(b.index_of(to), b.index_of(from)) - 1.0), WithinAbs(0, 1e-15));
  }

  SECTION("relaxation maps central e to central s") {
    const BasisState from = BasisState::vacuum(layout, "ffe");
    const BasisState to = BasisState::vacuum(layout, "ffs");
    // channels: 2 mode channels, then per-site (g, s, f); central site block
    // starts at 2 + 2*3, and s is its second entry
    const Eigen::MatrixXcd sigma = channels[2 + 6 + 1].op.dense();
    CHECK(channels[2 + 6 + 1].name == "sigma_s,A");
    CHECK_THAT(std::abs(sigma(b.index_of(to), b.index_of(from)) - 1.0), WithinAbs(0, 1e-15));
  }

  SECTION("the dissipative union closure holds 32 states") { CHECK(b.size() == 32); }

  SECTION("a basis closed only under the Hamiltonian rejects the jumps") {
    SubspaceBasis h_only = sector_basis(spec, enc.all_states());
    CHECK(h_only.size() == 24);
    CHECK_THROWS_AS(build_jump_operators(dec, layout, h_only), ClosureError);
  }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(PulseParams(-0.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Couplings({1.0, std::nan("")}, 1.0), std::invalid_argument);
  DecoherenceParams dec = DecoherenceParams::uniform(SystemLayout(3), 0.1, 0.1);
  dec.kappa[0] = -1;
  CHECK_THROWS_AS(dec.validate(), std::invalid_argument);
  CHECK_THROWS_AS(HamiltonianSpec(SystemLayout(3), PulseParams(0.1, 1.0), Couplings({1.0}, 1.0)),
                  std::invalid_argument);
}

TEST_CASE("model config files round-trip the documented keys") {
  std::istringstream in(
      "# coupling-mismatch run\n"
      "n_qubits = 3\n"
      "omega = 0.05\n"
      "delta = 0.5\n"
      "g_central = 1.0\n"
      "g_data = 1.1, 0.9\n"
      "kappa = 0.01\n"
      "gamma = 0.002\n");
  std::vector<std::string> seen;
  ModelConfig cfg = parse_model_config(in, {}, &seen);
  CHECK(cfg.n_qubits == 3);
  CHECK(cfg.omega == 0.05);
  CHECK(cfg.delta == 0.5);
  CHECK(cfg.g_data == std::vector<double>{1.1, 0.9});
  CHECK(cfg.kappa == 0.01);
  CHECK(cfg.gamma == 0.002);
  CHECK(std::count(seen.begin(), seen.end(), "delta") == 1);

  const HamiltonianSpec spec = cfg.hamiltonian_spec();
  CHECK(spec.couplings.g_data[0] == 1.1);
  CHECK(spec.pulse.omega == 0.05);

  std::istringstream bad("frequency = 2\n");
  CHECK_THROWS_AS(parse_model_config(bad), std::invalid_argument);
}
