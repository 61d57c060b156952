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

#pragma once

#include <atomic>
#include <exception>
#include <mutex>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "zenogate/config.hpp"
#include "zenogate/gates.hpp"
#include "zenogate/zeno.hpp"

namespace zenogate {

/// One batch run: resolved model parameters plus sweep/output knobs.
struct ExperimentConfig {
  ModelConfig model;
  bool delta_set = false;  // an explicit delta overrides the variant default
  int grid = 0;            // 0 = per-experiment default
  int samples = 400;
  double dg1 = 0.0;
  double dg2 = 0.0;
  std::optional<double> g_mhz;
  int closure_cap = 4096;
  int threads = 0;  // 0 = hardware concurrency

  double resolve_delta(double variant_default) const {
    return delta_set ? model.delta : variant_default;
  }
};

namespace detail {

/// Runs fn(0..n-1) on a small worker pool; any index may run on any worker,
/// results must be written into per-index slots so output order never
/// depends on scheduling.
template <typename Fn>
void parallel_for(int n, int threads, Fn&& fn) {
  if (n <= 0) return;
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min(threads, n));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int w = 0; w < threads; ++w)
    pool.emplace_back([&] {
      try {
        for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

using Header = std::vector<std::pair<std::string, std::string>>;

inline Header base_header(const std::string& experiment, const ExperimentConfig& cfg,
                          double delta_used) {
  Header h;
  h.emplace_back("experiment", experiment);
  h.emplace_back("n_qubits", std::to_string(cfg.model.n_qubits));
  h.emplace_back("n_max", std::to_string(cfg.model.n_max));
  h.emplace_back("omega", fmt_g(cfg.model.omega));
  h.emplace_back("delta", fmt_g(delta_used));
  h.emplace_back("g_central", fmt_g(cfg.model.g_central));
  if (!cfg.model.g_data.empty()) {
    std::string gd;
    for (double g : cfg.model.g_data) gd += (gd.empty() ? "" : " ") + fmt_g(g);
    h.emplace_back("g_data", gd);
  }
  if (cfg.model.kappa != 0) h.emplace_back("kappa", fmt_g(cfg.model.kappa));
  if (cfg.model.gamma != 0) h.emplace_back("gamma", fmt_g(cfg.model.gamma));
  h.emplace_back("samples", std::to_string(cfg.samples));
  if (cfg.g_mhz) h.emplace_back("g_mhz", fmt_g(*cfg.g_mhz));
  return h;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Time-series experiments: seed-amplitude evolution
// ---------------------------------------------------------------------------

/// Seed-amplitude time series for the idle, single-active and all-active
/// seeds, merged on one time grid.
struct SeedSeriesResult {
  TimeSeries series;          // one complex column per seed
  double gate_time;           // run duration in 1/g
  detail::Header header;

  Complex final_amplitude(std::size_t seed_column) const {
    return series.final_value(seed_column);
  }
  void write_csv(std::ostream& os, const std::optional<PhysicalUnits>& units) const {
    series.write_csv(os, header, units ? &*units : nullptr);
  }
};

/// Variant 'a': far-detuned run over one pi-phase time. Variant 'c': the
/// resonant run over one full Rabi cycle. Tracks the idle, single-active and
/// all-active seeds (three independent sector propagations).
inline SeedSeriesResult run_fig2(const ExperimentConfig& cfg, char variant) {
  if (variant != 'a' && variant != 'c')
    throw std::invalid_argument("run_fig2: variant must be 'a' or 'c'");
  const double delta = cfg.resolve_delta(variant == 'a' ? 1.0 : 0.0);
  ModelConfig mc = cfg.model;
  mc.delta = delta;
  const HamiltonianSpec spec = mc.hamiltonian_spec();
  const PulseParams& pulse = spec.pulse;
  const int n = spec.layout.n_qubits;

  const double tau = variant == 'a' ? nonresonant_gate_time(pulse, n)
                                    : resonant_gate_time(pulse, n);

  const BasisState seeds[3] = {
      sector_seed(SectorKind::idle, spec.layout),
      sector_seed(SectorKind::single, spec.layout),
      sector_seed(SectorKind::full, spec.layout),
  };

  SeedSeriesResult out;
  out.gate_time = tau;
  std::vector<TimeSeries> parts(3);
  detail::parallel_for(3, cfg.threads, [&](int k) {
    SubspaceBasis basis = sector_basis(spec, seeds[k], nullptr, cfg.closure_cap);
    auto bp = std::make_shared<const SubspaceBasis>(std::move(basis));
    const OperatorMatrix h = total_hamiltonian(spec, *bp);
    PropagationOptions opts;
    opts.tracked = {bp->index_of(seeds[k])};
    parts[k] = propagate_state(h, StateVector::unit(bp, seeds[k]), tau, tau / cfg.samples, opts)
                   .series;
  });
  out.series.times = parts[0].times;
  for (int k = 0; k < 3; ++k) {
    out.series.labels.push_back(parts[k].labels[0]);
  }
  out.series.values.resize(out.series.times.size());
  for (std::size_t s = 0; s < out.series.times.size(); ++s)
    for (int k = 0; k < 3; ++k) out.series.values[s].push_back(parts[k].values[s][0]);

  out.header = detail::base_header(std::string("fig2") + variant, cfg, delta);
  out.header.emplace_back("gate_time_gt", detail::fmt_g(tau));
  if (cfg.g_mhz)
    out.header.emplace_back("gate_time_ns", detail::fmt_g(PhysicalUnits(*cfg.g_mhz).time_ns(tau)));
  return out;
}

/// Variant 'a'/'b': far-detuned / resonant evolution of the all-active
/// N-qubit seed (the CLI defaults this experiment to seven qubits).
inline SeedSeriesResult run_fig6(const ExperimentConfig& cfg, char variant) {
  if (variant != 'a' && variant != 'b')
    throw std::invalid_argument("run_fig6: variant must be 'a' or 'b'");
  const double delta = cfg.resolve_delta(variant == 'a' ? 1.0 : 0.0);
  ModelConfig mc = cfg.model;
  mc.delta = delta;
  const HamiltonianSpec spec = mc.hamiltonian_spec();
  const int n = spec.layout.n_qubits;
  const double tau = variant == 'a' ? nonresonant_gate_time(spec.pulse, n)
                                    : resonant_gate_time(spec.pulse, n);

  const BasisState seed = sector_seed(SectorKind::full, spec.layout);
  SubspaceBasis basis = sector_basis(spec, seed, nullptr, cfg.closure_cap);
  auto bp = std::make_shared<const SubspaceBasis>(std::move(basis));
  const OperatorMatrix h = total_hamiltonian(spec, *bp);
  PropagationOptions opts;
  opts.tracked = {bp->index_of(seed)};

  SeedSeriesResult out;
  out.gate_time = tau;
  out.series =
      propagate_state(h, StateVector::unit(bp, seed), tau, tau / cfg.samples, opts).series;
  out.header = detail::base_header(std::string("fig6") + variant, cfg, delta);
  out.header.emplace_back("gate_time_gt", detail::fmt_g(tau));
  if (cfg.g_mhz)
    out.header.emplace_back("gate_time_ns", detail::fmt_g(PhysicalUnits(*cfg.g_mhz).time_ns(tau)));
  return out;
}

// ---------------------------------------------------------------------------
// Fidelity sweeps
// ---------------------------------------------------------------------------

/// Fidelity over a rectangular parameter grid, row-major with the first
/// axis outermost.
struct SweepResult {
  std::string x_name, y_name;
  std::vector<double> x, y;
  std::vector<double> fidelity;  // index = ix * y.size() + iy
  detail::Header header;

  double at(int ix, int iy) const { return fidelity.at(ix * y.size() + iy); }

  void write_csv(std::ostream& os) const {
    for (const auto& [k, v] : header) os << "# " << k << "=" << v << "\n";
    os << x_name << "," << y_name << ",F\n";
    for (std::size_t ix = 0; ix < x.size(); ++ix)
      for (std::size_t iy = 0; iy < y.size(); ++iy)
        os << detail::fmt_g(x[ix]) << "," << detail::fmt_g(y[iy]) << ","
           << detail::fmt_g(fidelity[ix * y.size() + iy]) << "\n";
  }
};

namespace detail {

inline std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  if (n == 1) {
    v[0] = a;
    return v;
  }
  for (int i = 0; i < n; ++i) v[i] = a + (b - a) * double(i) / double(n - 1);
  return v;
}

}  // namespace detail

/// Gate fidelity vs coupling mismatch (dg1, dg2), graded superposition
/// input, evaluated at exactly the nominal gate time of the ideal couplings.
/// Variant 'a' is far-detuned, 'b' resonant.
inline SweepResult run_fig3(const ExperimentConfig& cfg, char variant) {
  if (variant != 'a' && variant != 'b')
    throw std::invalid_argument("run_fig3: variant must be 'a' or 'b'");
  if (cfg.model.n_qubits != 3)
    throw std::invalid_argument("run_fig3: the mismatch sweep is defined for n_qubits == 3");
  const double delta = cfg.resolve_delta(variant == 'a' ? 1.0 : 0.0);
  ModelConfig mc = cfg.model;
  mc.delta = delta;
  const HamiltonianSpec ideal = mc.hamiltonian_spec();
  const int n = ideal.layout.n_qubits;
  const double tau = variant == 'a' ? nonresonant_gate_time(ideal.pulse, n)
                                    : resonant_gate_time(ideal.pulse, n);

  const ComputationalEncoding enc(ideal.layout);
  const InputState input = InputState::graded_three_qubit(enc);
  const GateSpec gate(n, std::numbers::pi);

  // one closure for the whole sweep; the reachable set does not depend on
  // the coupling values as long as they stay nonzero
  auto bp = std::make_shared<const SubspaceBasis>(
      sector_basis(ideal, enc.all_states(), nullptr, cfg.closure_cap));
  const StateVector psi0 = input.embed(bp);

  const int g = cfg.grid > 0 ? cfg.grid : 21;
  SweepResult out;
  out.x_name = "dg1";
  out.y_name = "dg2";
  out.x = detail::linspace(-0.1 * mc.g_central, 0.1 * mc.g_central, g);
  out.y = out.x;
  out.fidelity.assign(std::size_t(g) * g, 0.0);

  detail::parallel_for(g * g, cfg.threads, [&](int idx) {
    const int ix = idx / g, iy = idx % g;
    const double dg[2] = {out.x[ix], out.y[iy]};
    const HamiltonianSpec spec(ideal.layout, ideal.pulse,
                               Couplings::mismatched(ideal.layout, dg, mc.g_central));
    const OperatorMatrix h = total_hamiltonian(spec, *bp);
    const StateVector psi = propagate_state(h, psi0, tau, tau).final_state;
    out.fidelity[idx] = pure_fidelity(psi, input, gate);
  });

  out.header = detail::base_header(std::string("fig3") + variant, cfg, delta);
  out.header.emplace_back("grid", std::to_string(g));
  out.header.emplace_back("gate_time_gt", detail::fmt_g(tau));
  return out;
}

/// Gate fidelity vs decoherence rates (kappa, gamma): master-equation run,
/// mode trace, overlap with the ideal image. Variant 'a' far-detuned, 'b'
/// resonant.
inline SweepResult run_fig4(const ExperimentConfig& cfg, char variant) {
  if (variant != 'a' && variant != 'b')
    throw std::invalid_argument("run_fig4: variant must be 'a' or 'b'");
  if (cfg.model.n_qubits != 3)
    throw std::invalid_argument("run_fig4: the decoherence sweep is defined for n_qubits == 3");
  const double delta = cfg.resolve_delta(variant == 'a' ? 1.0 : 0.0);
  ModelConfig mc = cfg.model;
  mc.delta = delta;
  const HamiltonianSpec spec = mc.hamiltonian_spec();
  const int n = spec.layout.n_qubits;
  const double tau = variant == 'a' ? nonresonant_gate_time(spec.pulse, n)
                                    : resonant_gate_time(spec.pulse, n);

  const ComputationalEncoding enc(spec.layout);
  const InputState input = InputState::graded_three_qubit(enc);
  const GateSpec gate(n, std::numbers::pi);

  // the closure must include the decay targets, so close over the jump
  // generators with a probe decoherence setting
  const DecoherenceParams probe = DecoherenceParams::uniform(spec.layout, 1.0, 1.0);
  auto bp = std::make_shared<const SubspaceBasis>(
      sector_basis(spec, enc.all_states(), &probe, cfg.closure_cap));
  const OperatorMatrix h = total_hamiltonian(spec, *bp);
  const DensityMatrix rho0 = DensityMatrix::pure(input.embed(bp));

  const int g = cfg.grid > 0 ? cfg.grid : 11;
  SweepResult out;
  out.x_name = "kappa";
  out.y_name = "gamma";
  out.x = detail::linspace(0.0, 0.1 * mc.g_central, g);
  out.y = out.x;
  out.fidelity.assign(std::size_t(g) * g, 0.0);

  detail::parallel_for(g * g, cfg.threads, [&](int idx) {
    const int ix = idx / g, iy = idx % g;
    const DecoherenceParams dec =
        DecoherenceParams::uniform(spec.layout, out.x[ix], out.y[iy]);
    const std::vector<JumpChannel> jumps = build_jump_operators(dec, spec.layout, *bp);
    const DensityMatrix rho_tau = propagate_density(h, jumps, rho0, tau, tau).final_state;
    out.fidelity[idx] = mixed_fidelity(partial_trace_modes(rho_tau), input, gate);
  });

  out.header = detail::base_header(std::string("fig4") + variant, cfg, delta);
  out.header.emplace_back("grid", std::to_string(g));
  out.header.emplace_back("gate_time_gt", detail::fmt_g(tau));
  return out;
}

// ---------------------------------------------------------------------------
// Validation reports
// ---------------------------------------------------------------------------

struct TruthTableRow {
  std::string label;
  double return_fidelity;  // |<in|psi(tau)>|, the unsquared overlap
  double phase;            // acquired phase, radians
  double target_phase;
  bool pass;
};

struct TruthTableResult {
  std::vector<TruthTableRow> rows;
  double fidelity_threshold;
  double phase_tolerance;
  detail::Header header;

  bool all_pass() const {
    for (const auto& r : rows)
      if (!r.pass) return false;
    return true;
  }

  void write_csv(std::ostream& os) const {
    for (const auto& [k, v] : header) os << "# " << k << "=" << v << "\n";
    os << "state,return_fidelity,phase,target_phase,pass\n";
    for (const auto& r : rows)
      os << r.label << "," << detail::fmt_g(r.return_fidelity) << "," << detail::fmt_g(r.phase)
         << "," << detail::fmt_g(r.target_phase) << "," << (r.pass ? 1 : 0) << "\n";
  }
};

inline double wrapped_phase_distance(double a, double b) {
  double d = std::fmod(std::abs(a - b), 2 * std::numbers::pi);
  return std::min(d, 2 * std::numbers::pi - d);
}

/// Evolves every computational input individually through the far-detuned
/// gate and scores the return overlap and acquired phase against the target
/// map. Thresholds (0.98 on the unsquared overlap, 0.05 rad) are calibrated
/// to the omega/g = 0.1 leakage scale.
inline TruthTableResult run_truth_table(const ExperimentConfig& cfg) {
  const double delta = cfg.resolve_delta(1.0);
  if (delta == 0)
    throw std::invalid_argument("run_truth_table: needs the far-detuned regime (delta != 0)");
  ModelConfig mc = cfg.model;
  mc.delta = delta;
  const HamiltonianSpec spec = mc.hamiltonian_spec();
  const int n = spec.layout.n_qubits;
  const double tau = nonresonant_gate_time(spec.pulse, n);
  const ComputationalEncoding enc(spec.layout);
  const GateSpec gate(n, std::numbers::pi);
  const BasisState flagged = gate.flagged_state(spec.layout);

  TruthTableResult out;
  out.fidelity_threshold = 0.98;
  out.phase_tolerance = 0.05;
  out.rows.resize(enc.n_states());
  detail::parallel_for(enc.n_states(), cfg.threads, [&](int code) {
    const BasisState in = enc.state(code);
    auto bp = std::make_shared<const SubspaceBasis>(
        sector_basis(spec, in, nullptr, cfg.closure_cap));
    const OperatorMatrix h = total_hamiltonian(spec, *bp);
    const StateVector psi =
        propagate_state(h, StateVector::unit(bp, in), tau, tau).final_state;
    const Complex a = psi.amplitude(in);
    TruthTableRow row;
    row.label = in.label();
    row.return_fidelity = std::abs(a);
    row.phase = std::arg(a);
    row.target_phase = (in == flagged) ? gate.phase : 0.0;
    row.pass = row.return_fidelity >= out.fidelity_threshold &&
               wrapped_phase_distance(row.phase, row.target_phase) <= out.phase_tolerance;
    out.rows[code] = std::move(row);
  });

  out.header = detail::base_header("truth-table", cfg, delta);
  out.header.emplace_back("gate_time_gt", detail::fmt_g(tau));
  out.header.emplace_back("fidelity_threshold", detail::fmt_g(out.fidelity_threshold));
  out.header.emplace_back("phase_tolerance", detail::fmt_g(out.phase_tolerance));
  return out;
}

struct ZenoCheckRow {
  std::string sector;
  std::vector<double> analytic;  // closed-form spectrum, ascending
  std::vector<double> numeric;   // computed spectrum, ascending
  double spectrum_error;         // max |analytic - numeric|
  double projector_residual;     // max over groups of ||P^2 - P||, plus completeness
  double eigvec_residual;        // max ||H v - lambda v|| over closed-form vectors
};

struct ZenoCheckResult {
  std::vector<ZenoCheckRow> rows;
  detail::Header header;

  double worst_spectrum_error() const {
    double m = 0;
    for (const auto& r : rows) m = std::max(m, r.spectrum_error);
    return m;
  }

  void write_table(std::ostream& os) const {
    for (const auto& r : rows) {
      os << "sector " << r.sector << "\n  analytic:";
      for (double v : r.analytic) os << " " << detail::fmt_g(v);
      os << "\n  numeric: ";
      for (double v : r.numeric) os << " " << detail::fmt_g(v);
      os << "\n  spectrum_error=" << detail::fmt_g(r.spectrum_error)
         << " projector_residual=" << detail::fmt_g(r.projector_residual)
         << " eigvec_residual=" << detail::fmt_g(r.eigvec_residual) << "\n";
    }
  }
};

/// Diagonalizes the exchange Hamiltonian on each seed sector and scores it
/// against the closed forms: spectrum, projector algebra, and (for three
/// qubits) the printed eigenvectors.
inline ZenoCheckResult run_zeno_check(const ExperimentConfig& cfg) {
  ModelConfig mc = cfg.model;
  if (mc.omega == 0) mc.omega = 0.1;  // the closure probe needs the drive on
  const HamiltonianSpec spec = mc.hamiltonian_spec();
  const SystemLayout& layout = spec.layout;

  ZenoCheckResult out;
  const SectorKind kinds[3] = {SectorKind::idle, SectorKind::single, SectorKind::full};
  const char* names[3] = {"idle", "single-active", "all-active"};
  for (int k = 0; k < 3; ++k) {
    const BasisState seed = sector_seed(kinds[k], layout);
    auto bp = std::make_shared<const SubspaceBasis>(
        sector_basis(spec, seed, nullptr, cfg.closure_cap));
    const OperatorMatrix h2 = exchange_hamiltonian(spec, *bp);
    const ZenoSubspace z = diagonalize_exchange(bp, h2);

    ZenoCheckRow row;
    row.sector = names[k];
    row.analytic = analytic_sector_spectrum(kinds[k], layout);
    row.numeric = z.eigenvalues;
    row.spectrum_error = 0;
    for (std::size_t i = 0; i < row.numeric.size() && i < row.analytic.size(); ++i)
      row.spectrum_error = std::max(row.spectrum_error,
                                    std::abs(row.numeric[i] - row.analytic[i]));

    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(bp->size(), bp->size());
    row.projector_residual = 0;
    for (const auto& grp : z.groups) {
      row.projector_residual =
          std::max(row.projector_residual,
                   (grp.projector * grp.projector - grp.projector).cwiseAbs().maxCoeff());
      sum += grp.projector;
    }
    row.projector_residual =
        std::max(row.projector_residual,
                 (sum - Eigen::MatrixXcd::Identity(bp->size(), bp->size())).cwiseAbs().maxCoeff());

    row.eigvec_residual = 0;
    std::vector<AnalyticEigenpair> pairs;
    if (layout.n_qubits == 3)
      pairs = analytic_sector_eigenpairs(kinds[k], layout);
    else if (kinds[k] == SectorKind::full)
      pairs.push_back(analytic_dark_state(layout));
    for (const auto& p : pairs) {
      Eigen::VectorXcd v = p.vector(*bp);
      row.eigvec_residual =
          std::max(row.eigvec_residual, (h2.dense() * v - p.value * v).norm());
    }
    out.rows.push_back(std::move(row));
  }
  out.header = detail::base_header("zeno-check", cfg, mc.delta);
  return out;
}

/// Gate times in both regimes, with physical units when g is given.
struct GateTimeReport {
  int n_qubits;
  double omega, delta;
  double nonresonant_gt = 0;  // pi-phase time; 0 when delta == 0
  double resonant_gt = 0;
  std::optional<double> nonresonant_ns, resonant_ns;
};

inline GateTimeReport run_gate_time(const ExperimentConfig& cfg) {
  const double delta = cfg.resolve_delta(1.0);
  GateTimeReport rep;
  rep.n_qubits = cfg.model.n_qubits;
  rep.omega = cfg.model.omega;
  rep.delta = delta;
  const PulseParams pulse(cfg.model.omega, delta);
  if (delta != 0) rep.nonresonant_gt = nonresonant_gate_time(pulse, rep.n_qubits);
  rep.resonant_gt = resonant_gate_time(pulse, rep.n_qubits);
  if (cfg.g_mhz) {
    const PhysicalUnits units(*cfg.g_mhz);
    if (delta != 0) rep.nonresonant_ns = units.time_ns(rep.nonresonant_gt);
    rep.resonant_ns = units.time_ns(rep.resonant_gt);
  }
  return rep;
}

}  // namespace zenogate
