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

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "zenogate/zenogate.hpp"

namespace {

using namespace zenogate;

struct CliOptions {
  std::string config_path;
  std::optional<double> omega, delta, kappa, gamma, dg1, dg2, g_mhz;
  std::optional<int> n_qubits, grid, samples, threads;
  std::string out_path;
};

// precedence: built-in defaults < config file < explicit flags
ExperimentConfig resolve(const CliOptions& cli, int default_n_qubits) {
  ExperimentConfig cfg;
  cfg.model.n_qubits = default_n_qubits;
  if (!cli.config_path.empty()) {
    ModelConfig base = cfg.model;
    std::vector<std::string> seen;
    cfg.model = load_model_config(cli.config_path, base, &seen);
    for (const auto& k : seen)
      if (k == "delta") cfg.delta_set = true;
  }
  if (cli.n_qubits) cfg.model.n_qubits = *cli.n_qubits;
  if (cli.omega) cfg.model.omega = *cli.omega;
  if (cli.delta) {
    cfg.model.delta = *cli.delta;
    cfg.delta_set = true;
  }
  if (cli.kappa) cfg.model.kappa = *cli.kappa;
  if (cli.gamma) cfg.model.gamma = *cli.gamma;
  if (cli.grid) cfg.grid = *cli.grid;
  if (cli.samples) cfg.samples = *cli.samples;
  if (cli.threads) cfg.threads = *cli.threads;
  if (cli.dg1) cfg.dg1 = *cli.dg1;
  if (cli.dg2) cfg.dg2 = *cli.dg2;
  if (cli.g_mhz) cfg.g_mhz = *cli.g_mhz;
  if ((cli.dg1 || cli.dg2) && cfg.model.g_data.empty()) {
    const SystemLayout layout(cfg.model.n_qubits, cfg.model.n_max);
    cfg.model.g_data.assign(layout.n_modes(), cfg.model.g_central);
    if (cli.dg1 && layout.n_modes() >= 1) cfg.model.g_data[0] += *cli.dg1;
    if (cli.dg2 && layout.n_modes() >= 2) cfg.model.g_data[1] += *cli.dg2;
  }
  return cfg;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open output file '" + path + "'");
  return os;
}

void write_or_print(const std::string& path, const std::string& fallback_name,
                    const std::function<void(std::ostream&)>& writer) {
  if (path.empty()) {
    writer(std::cout);
  } else {
    auto os = open_out(path);
    writer(os);
    std::cout << fallback_name << " written to " << path << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "zenogate: multiqubit tunable phase gate simulator for a qudit-resonator network\n"
      "All frequencies are in units of the reference coupling g; times in 1/g."};
  app.require_subcommand(1);

  CliOptions cli;
  app.add_option("--config", cli.config_path, "config file with key = value model parameters");
  app.add_option("--omega", cli.omega, "drive Rabi frequency (units of g)");
  app.add_option("--delta", cli.delta, "detuning (units of g); 0 selects the resonant regime");
  app.add_option("--kappa", cli.kappa, "photon decay rate per mode (units of g)");
  app.add_option("--gamma", cli.gamma, "relaxation rate per decay path (units of g)");
  app.add_option("--dg1", cli.dg1, "coupling offset of data qudit 1 (units of g)");
  app.add_option("--dg2", cli.dg2, "coupling offset of data qudit 2 (units of g)");
  app.add_option("--n", cli.n_qubits, "total number of qudits including the central one");
  app.add_option("--grid", cli.grid, "sweep resolution per axis");
  app.add_option("--samples", cli.samples, "time samples per run (default 400)");
  app.add_option("--threads", cli.threads, "worker threads for sweeps (0 = all cores)");
  app.add_option("--g-mhz", cli.g_mhz, "reference coupling in MHz; adds physical-unit output");
  app.add_option("--out", cli.out_path, "output file (CSV); default prints to stdout");

  std::string fig2_variant = "a";
  auto* fig2 = app.add_subcommand(
      "fig2", "seed-amplitude time series in both regimes (a: far-detuned, c: resonant)");
  fig2->add_option("variant", fig2_variant, "a or c")->check(CLI::IsMember({"a", "c"}));

  std::string fig3_variant = "a";
  auto* fig3 = app.add_subcommand(
      "fig3", "fidelity vs coupling mismatch (a: far-detuned, b: resonant)");
  fig3->add_option("variant", fig3_variant, "a or b")->check(CLI::IsMember({"a", "b"}));

  std::string fig4_variant = "a";
  auto* fig4 = app.add_subcommand(
      "fig4", "fidelity vs decoherence rates via the master equation (a/b)");
  fig4->add_option("variant", fig4_variant, "a or b")->check(CLI::IsMember({"a", "b"}));

  std::string fig6_variant = "a";
  auto* fig6 = app.add_subcommand(
      "fig6", "seven-qubit seed-amplitude time series (a: far-detuned, b: resonant)");
  fig6->add_option("variant", fig6_variant, "a or b")->check(CLI::IsMember({"a", "b"}));

  auto* zeno = app.add_subcommand(
      "zeno-check", "exchange-Hamiltonian spectra and projectors vs the closed forms");
  auto* truth = app.add_subcommand(
      "truth-table", "per-input return fidelity and phase of the far-detuned gate");
  auto* gate_time = app.add_subcommand("gate-time", "gate times in both regimes");

  // global options may follow the subcommand, e.g. "gate-time --n 7"
  for (auto* sc : app.get_subcommands({})) sc->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*fig2) {
      auto cfg = resolve(cli, 3);
      auto res = run_fig2(cfg, fig2_variant[0]);
      std::optional<PhysicalUnits> units;
      if (cfg.g_mhz) units.emplace(*cfg.g_mhz);
      write_or_print(cli.out_path, "time series", [&](std::ostream& os) {
        res.write_csv(os, units);
      });
      std::cout << "gate time gt = " << res.gate_time;
      if (units) std::cout << " (" << units->time_ns(res.gate_time) << " ns)";
      std::cout << "\nfinal seed amplitudes:";
      for (std::size_t k = 0; k < res.series.labels.size(); ++k) {
        auto a = res.final_amplitude(k);
        std::cout << "\n  " << res.series.labels[k] << ": " << a.real() << (a.imag() < 0 ? " - " : " + ")
                  << std::abs(a.imag()) << "i";
      }
      std::cout << "\n";
    } else if (*fig3) {
      auto cfg = resolve(cli, 3);
      auto res = run_fig3(cfg, fig3_variant[0]);
      write_or_print(cli.out_path, "fidelity sweep", [&](std::ostream& os) { res.write_csv(os); });
      double fmin = 1, fmax = 0;
      for (double f : res.fidelity) {
        fmin = std::min(fmin, f);
        fmax = std::max(fmax, f);
      }
      std::cout << "fidelity range [" << fmin << ", " << fmax << "]\n";
    } else if (*fig4) {
      auto cfg = resolve(cli, 3);
      auto res = run_fig4(cfg, fig4_variant[0]);
      write_or_print(cli.out_path, "fidelity sweep", [&](std::ostream& os) { res.write_csv(os); });
      double fmin = 1, fmax = 0;
      for (double f : res.fidelity) {
        fmin = std::min(fmin, f);
        fmax = std::max(fmax, f);
      }
      std::cout << "fidelity range [" << fmin << ", " << fmax << "]\n";
    } else if (*fig6) {
      auto cfg = resolve(cli, 7);
      auto res = run_fig6(cfg, fig6_variant[0]);
      std::optional<PhysicalUnits> units;
      if (cfg.g_mhz) units.emplace(*cfg.g_mhz);
      write_or_print(cli.out_path, "time series", [&](std::ostream& os) {
        res.write_csv(os, units);
      });
      auto a = res.final_amplitude(0);
      std::cout << "gate time gt = " << res.gate_time;
      if (units) std::cout << " (" << units->time_ns(res.gate_time) << " ns)";
      std::cout << "\nfinal seed amplitude: " << a.real() << (a.imag() < 0 ? " - " : " + ")
                << std::abs(a.imag()) << "i\n";
    } else if (*zeno) {
      auto cfg = resolve(cli, 3);
      auto res = run_zeno_check(cfg);
      res.write_table(std::cout);
      if (!cli.out_path.empty()) {
        auto os = open_out(cli.out_path);
        res.write_table(os);
      }
      const bool ok = res.worst_spectrum_error() < 1e-10;
      std::cout << (ok ? "zeno-check OK" : "zeno-check FAILED") << "\n";
      return ok ? 0 : 1;
    } else if (*truth) {
      auto cfg = resolve(cli, 3);
      auto res = run_truth_table(cfg);
      write_or_print(cli.out_path, "truth table", [&](std::ostream& os) { res.write_csv(os); });
      for (const auto& r : res.rows)
        std::cout << (r.pass ? "pass" : "FAIL") << "  " << r.label
                  << "  return_fidelity=" << r.return_fidelity << "  phase=" << r.phase
                  << "  target=" << r.target_phase << "\n";
      return res.all_pass() ? 0 : 1;
    } else if (*gate_time) {
      auto cfg = resolve(cli, 3);
      auto rep = run_gate_time(cfg);
      std::cout << "n_qubits=" << rep.n_qubits << " omega=" << rep.omega
                << " delta=" << rep.delta << "\n";
      if (rep.nonresonant_gt > 0) {
        std::cout << "far-detuned pi-phase time: gt = " << rep.nonresonant_gt;
        if (rep.nonresonant_ns) std::cout << " (" << *rep.nonresonant_ns << " ns)";
        std::cout << "\n";
      }
      std::cout << "resonant Rabi-cycle time:  gt = " << rep.resonant_gt;
      if (rep.resonant_ns) std::cout << " (" << *rep.resonant_ns << " ns)";
      std::cout << "\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
