#pragma once

// The experiment catalog and dispatcher behind `ontology-lab`.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "lab/config.hpp"
#include "lab/report.hpp"
#include "ontolab/ontolab.hpp"
#include "ontolab/io/sheet_json.hpp"

namespace ontolab::lab {

struct Experiment {
  std::string name;
  std::string description;
  std::string topic;
  std::vector<ParamSpec> params;
  std::function<Report(const Params&, std::uint64_t seed)> run;
};

namespace detail {

inline json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

inline fermion::Vec3 vec3(const json& v, const std::string& key) {
  if (!v.is_array() || v.size() != 3 || !v[0].is_number() || !v[1].is_number() || !v[2].is_number()) {
    throw ConfigError(key, "expected [x, y, z]");
  }
  return {v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

inline std::vector<fermion::Vec3> points(const Params& p, const std::string& key) {
  std::vector<fermion::Vec3> out;
  std::size_t i = 0;
  for (const auto& v : p.array(key)) out.push_back(vec3(v, Params::path(key, i++)));
  if (out.empty()) throw ConfigError("params." + key, "needs at least one point");
  return out;
}

inline fermion::GridSpec grid_spec(const Params& p) {
  fermion::GridSpec g;
  g.n_theta = static_cast<int>(p.integer("n_theta"));
  const auto n_phi = p.integer("n_phi");
  g.n_phi = n_phi > 0 ? static_cast<int>(n_phi) : 2 * g.n_theta;
  g.n_rho = static_cast<int>(p.integer("n_rho"));
  g.rho_min = p.number("rho_min");
  g.rho_max = p.number("rho_max");
  return g;
}

inline std::vector<ParamSpec> grid_params(int n_theta, int n_phi, int n_rho) {
  return {
      {"n_theta", ParamType::kInteger, "Gauss-Legendre nodes in cos(theta)", n_theta},
      {"n_phi", ParamType::kInteger, "uniform phi nodes (0 means 2 n_theta)", n_phi},
      {"n_rho", ParamType::kInteger, "uniform nodes in rho = log|q|", n_rho},
      {"rho_min", ParamType::kNumber, "lower end of the rho grid", -3.0},
      {"rho_max", ParamType::kNumber, "upper end of the rho grid", 3.0},
  };
}

inline json default_points() {
  return json::array({json::array({0.0, 0.0, 0.0}), json::array({0.0, 0.0, 1.0}), json::array({0.5, -0.3, 2.0}),
                      json::array({1.0, 2.0, 3.0}), json::array({-2.0, 0.7, -1.1})});
}

inline std::vector<std::vector<std::uint32_t>> class_members(const info_loss::Quotient& q) {
  std::vector<std::vector<std::uint32_t>> members(q.num_classes);
  for (std::size_t s = 0; s < q.class_of.size(); ++s) members[q.class_of[s]].push_back(static_cast<std::uint32_t>(s));
  return members;
}

/// Graph from `graph_file` or inline `successors`; returns the label base used.
inline std::pair<info_loss::FunctionalGraph, unsigned> input_graph(const Params& p) {
  std::optional<unsigned> base;
  if (p.has("index_base")) {
    const auto b = p.integer("index_base");
    if (b != 0 && b != 1) throw ConfigError("params.index_base", "must be 0 or 1");
    base = static_cast<unsigned>(b);
  }
  if (p.has("graph_file") == p.has("successors")) {
    throw ConfigError("params.graph_file", "give exactly one of graph_file or successors");
  }
  if (p.has("successors")) {
    const unsigned b = base.value_or(0);
    const auto raw = p.integers("successors");
    if (raw.empty()) throw ConfigError("params.successors", "must not be empty");
    std::vector<info_loss::State> succ;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (raw[i] < static_cast<std::int64_t>(b) || raw[i] - b >= static_cast<std::int64_t>(raw.size())) {
        throw ConfigError(Params::path("successors", i), "successor out of range");
      }
      succ.push_back(static_cast<info_loss::State>(raw[i] - b));
    }
    return {info_loss::FunctionalGraph(std::move(succ)), b};
  }
  const std::string path = p.file("graph_file");
  try {
    std::ifstream in(path);
    if (!in.good()) throw ConfigError("params.graph_file", "cannot open " + path);
    unsigned used = base.value_or(0);
    if (!base) {
      std::string line;
      while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] != '#') break;
        if (auto d = io::declared_index_base(line)) {
          used = *d;
          break;
        }
      }
    }
    return {io::load_graph(path, used), used};
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError("params.graph_file", e.what());
  }
}

// ---------------------------------------------------------------------------

inline Report clock_spectrum(const Params& p, std::uint64_t) {
  const auto n = p.integer("N");
  const double omega = p.number("omega");
  const double tau = p.has("tau") ? p.number("tau") : 2.0 * kPi / (static_cast<double>(n) * omega);
  const clock::ClockModel model(n, tau);
  const Spectrum s = clock::energy_spectrum(model);
  Report r;
  r.table.columns = {"level", "energy", "predicted", "deviation"};
  json energies = json::array();
  double worst = 0.0;
  for (Eigen::Index k = 0; k < s.eigenvalues.size(); ++k) {
    const double e = s.eigenvalues(k);
    const double pred = model.energy_level(k);
    worst = std::max(worst, std::abs(e - pred));
    energies.push_back(e);
    r.table.add({k, e, pred, e - pred});
  }
  r.results = {{"N", n}, {"tau", tau}, {"energies", energies}};
  const ComplexMatrix u = clock::build_evolution_matrix(model);
  r.residuals = {{"spectrum_max_abs", worst},
                 {"unitarity_defect", unitarity_defect(u)},
                 {"reconstruction", max_abs(unitary_from_spectrum(s, tau) - u)}};
  return r;
}

inline Report oscillator_identities(const Params& p, std::uint64_t) {
  const double omega = p.number("omega");
  const auto ells = p.integers("ells");
  if (ells.empty()) throw ConfigError("params.ells", "must not be empty");
  Report r;
  r.table.columns = {"ell", "su2", "casimir", "commutator", "hamiltonian", "deformation", "clock_spectrum",
                     "clock_evolution"};
  double worst = 0.0;
  for (auto ell : ells) {
    const double tau = 2.0 * kPi / ((2.0 * static_cast<double>(ell) + 1.0) * omega);
    const auto rep = oscillator::build_spin_rep(ell, tau);
    const auto cross = oscillator::clock_cross_check(rep);
    const double res[] = {oscillator::su2_residual(rep),
                          oscillator::casimir_residual(rep),
                          oscillator::commutator_identity_residual(rep),
                          oscillator::hamiltonian_identity_residual(rep),
                          oscillator::deformation_residual(rep),
                          cross.spectrum_residual,
                          cross.evolution_residual};
    for (double v : res) worst = std::max(worst, v);
    r.table.add({ell, res[0], res[1], res[2], res[3], res[4], res[5], res[6]});
  }
  r.results = {{"omega", omega}, {"ells", ells}};
  r.residuals = {{"max_residual", worst}};
  return r;
}

inline Report continuum_scan(const Params& p, std::uint64_t) {
  const auto scan = oscillator::continuum_scan(p.integers("ells"), p.number("omega"), p.integer("levels"));
  Report r;
  r.table.columns = {"ell", "level", "eigenvalue", "deviation", "predicted_deviation"};
  for (const auto& row : scan.rows) r.table.add({row.ell, row.level, row.eigenvalue, row.deviation, row.predicted_deviation});
  json fits = json::array();
  double worst = 0.0;
  for (const auto& f : scan.fits) {
    fits.push_back({{"level", f.level},
                    {"coefficient", f.coefficient},
                    {"predicted", f.predicted},
                    {"relative_error", f.relative_error},
                    {"order", f.order}});
    worst = std::max(worst, f.relative_error);
  }
  r.results = {{"fits", fits}, {"extrapolated_ground", scan.extrapolated_ground}};
  r.residuals = {{"max_fit_relative_error", worst},
                 {"extrapolated_ground_error", std::abs(scan.extrapolated_ground - 0.5 * scan.omega)}};
  return r;
}

inline Report infoloss_classes(const Params& p, std::uint64_t) {
  const auto [g, base] = input_graph(p);
  const auto q = info_loss::equivalence_classes(g);
  Report r;
  r.table.columns = {"state", "successor", "class"};
  for (std::size_t s = 0; s < g.size(); ++s) r.table.add({s + base, g(static_cast<info_loss::State>(s)) + base, q.class_of[s]});
  json classes = json::array();
  for (const auto& members : class_members(q)) {
    json c = json::array();
    for (auto s : members) c.push_back(s + base);
    classes.push_back(c);
  }
  r.results = {{"index_base", base},
               {"num_states", g.size()},
               {"num_classes", q.num_classes},
               {"classes", classes},
               {"class_successor", q.class_successor},
               {"quotient_is_permutation", info_loss::is_permutation(q)},
               {"bijection", g.is_bijection()}};
  if (g.size() <= 64) {
    const auto to_rows = [](const ComplexMatrix& m) {
      json rows = json::array();
      for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(static_cast<int>(m(i, j).real()));
        rows.push_back(row);
      }
      return rows;
    };
    r.results["evolution_matrix"] = to_rows(info_loss::evolution_matrix(g));
    r.results["quotient_matrix"] = to_rows(info_loss::quotient_evolution(q));
  }
  r.residuals = {{"quotient_unitarity_defect",
                  q.num_classes <= info_loss::kMaxDenseStates ? unitarity_defect(info_loss::quotient_evolution(q)) : 0.0}};
  return r;
}

inline Report infoloss_census(const Params& p, std::uint64_t seed) {
  const std::string source = p.string("source");
  std::optional<info_loss::FunctionalGraph> g;
  if (source == "random") {
    const auto n = p.integer("n");
    if (n < 1 || n > 100000000) throw ConfigError("params.n", "must be in [1, 1e8]");
    std::mt19937_64 rng(seed);
    g = info_loss::random_graph(static_cast<std::size_t>(n), rng);
  } else if (source == "shift-merge") {
    g = info_loss::shift_with_merge(static_cast<unsigned>(p.integer("volume")), static_cast<unsigned>(p.integer("boundary")));
  } else if (source == "file") {
    g = input_graph(p).first;
  } else {
    throw ConfigError("params.source", "must be random, shift-merge or file");
  }
  const auto c = info_loss::limit_cycle_census(*g);
  Report r;
  r.table.columns = {"depth", "count"};
  for (std::size_t d = 0; d < c.transient_histogram.size(); ++d) r.table.add({d, c.transient_histogram[d]});
  json cycles = json::array();
  for (const auto& cy : c.cycles) cycles.push_back({{"start", cy.start}, {"length", cy.length}});
  r.results = {{"num_states", g->size()},
               {"cycles", cycles},
               {"on_cycle", c.on_cycle},
               {"classes", c.classes},
               {"transient_histogram", c.transient_histogram}};
  std::size_t total = 0;
  for (auto v : c.transient_histogram) total += v;
  std::size_t cycle_total = 0;
  for (const auto& cy : c.cycles) cycle_total += cy.length;
  r.residuals = {{"histogram_total_minus_n", static_cast<std::int64_t>(total) - static_cast<std::int64_t>(g->size())},
                 {"cycle_lengths_minus_on_cycle",
                  static_cast<std::int64_t>(cycle_total) - static_cast<std::int64_t>(c.on_cycle)}};
  return r;
}

inline Report fermion_commute(const Params& p, std::uint64_t) {
  const fermion::SheetGrid grid(grid_spec(p));
  const auto b = fermion::beable_commutator_residuals(grid);
  Report r;
  r.table.columns = {"pair", "norm"};
  for (const auto& c : b.commutators) r.table.add({c.pair, c.norm});
  r.results = {{"dimension", b.dimension}};
  r.residuals = {{"max_commutator", b.max_commutator},
                 {"helicity_spectrum", b.helicity_spectrum_residual},
                 {"dilatation_hermiticity", b.dilatation_hermiticity},
                 {"dilatation_discretization", b.dilatation_discretization_error}};
  return r;
}

/// Max relative error of the calibrated single-direction wave over `xs`.
inline double calibration_error(const fermion::GridSpec& spec, const fermion::Vec3& dir, double q0,
                                const std::vector<fermion::Vec3>& xs, double* q_used = nullptr) {
  fermion::GridSpec g = spec;
  g.frame = fermion::frame_for_pole(dir);
  fermion::SheetGrid grid(g);
  grid.add({dir, 0.0, q0, 0.0, 1.0});
  const auto samples = grid.samples();
  const double q = samples.front().q;
  if (q_used) *q_used = q;
  double worst = 0.0;
  for (const auto& x : xs) {
    const auto exact = fermion::plane_wave(dir, q, x);
    worst = std::max(worst, (fermion::position_wave(samples, x) - exact).norm() / exact.norm());
  }
  return worst;
}

inline Report fermion_wave(const Params& p, std::uint64_t) {
  const auto xs = points(p, "points");
  Report r;
  r.table.columns = {"x1", "x2", "x3", "re_up", "im_up", "re_dn", "im_dn"};
  const auto emit = [&](const std::vector<fermion::Vec3>& at, const std::function<fermion::Spinor(const fermion::Vec3&)>& f) {
    for (const auto& x : at) {
      const auto psi = f(x);
      r.table.add({x.x(), x.y(), x.z(), psi(0).real(), psi(0).imag(), psi(1).real(), psi(1).imag()});
    }
  };

  if (p.has("grid_file")) {
    std::vector<fermion::WaveSample> samples;
    try {
      samples = io::load_samples(p.file("grid_file"));
    } catch (const Error& e) {
      throw ConfigError("params.grid_file", e.what());
    }
    emit(xs, [&](const fermion::Vec3& x) { return fermion::position_wave(samples, x); });
    r.results = {{"source", "grid_file"}, {"samples", samples.size()}};
    r.residuals = json::object();
    return r;
  }

  const fermion::GridSpec spec = grid_spec(p);
  const fermion::Vec3 dir = vec3(p.array("direction"), "params.direction");
  if (std::abs(dir.norm() - 1.0) > 1e-12) throw ConfigError("params.direction", "must be a unit vector");
  const double q0 = p.number("q0");
  fermion::GridSpec g = spec;
  g.frame = fermion::frame_for_pole(dir);
  fermion::SheetGrid grid(g);
  grid.add({dir, 0.0, q0, 0.0, 1.0});
  const fermion::QuadratureConfig qc{p.boolean("check_refinement"), p.number("refinement_tolerance")};
  emit(xs, [&](const fermion::Vec3& x) { return fermion::beable_to_position_wave(grid, x, qc); });

  double q_used = 0.0;
  const double err = calibration_error(spec, dir, q0, xs, &q_used);

  json convergence = json::array();
  bool monotone = true;
  double previous = INFINITY;
  double rate = 0.0;
  int rate_terms = 0;
  std::int64_t previous_n = 0;
  for (auto n : p.integers("convergence_n_theta")) {
    fermion::GridSpec c = spec;
    c.n_theta = static_cast<int>(n);
    c.n_phi = 2 * c.n_theta;
    const double e = calibration_error(c, dir, q0, xs);
    convergence.push_back({{"n_theta", n}, {"error", e}});
    if (previous_n > 0) {
      monotone = monotone && e < previous;
      if (e > 0.0 && previous > 0.0) {
        rate += std::log(previous / e) / std::log(static_cast<double>(n) / static_cast<double>(previous_n));
        ++rate_terms;
      }
    }
    previous = e;
    previous_n = n;
  }
  r.results = {{"q", q_used},
               {"calibration_constant", fermion::kWaveCalibration},
               {"convergence", convergence},
               {"monotone", monotone},
               {"mean_algebraic_order", rate_terms ? rate / rate_terms : 0.0}};
  r.residuals = {{"relative_error", err}};
  return r;
}

inline Report weyl_check(const Params& p, std::uint64_t) {
  const auto xs = points(p, "points");
  std::vector<fermion::SheetComponent> comps;
  std::size_t i = 0;
  for (const auto& c : p.array("components")) {
    const std::string base = Params::path("components", i++);
    if (!c.is_object()) throw ConfigError(base, "must be an object");
    fermion::SheetComponent s;
    for (const auto& [key, v] : c.items()) {
      const std::string k = base + "." + key;
      if (key == "direction") {
        s.direction = vec3(v, k).normalized();
      } else if (key == "kappa" || key == "q0" || key == "rho_width") {
        if (!v.is_number()) throw ConfigError(k, "expected number");
        (key == "kappa" ? s.kappa : key == "q0" ? s.q0 : s.rho_width) = v.get<double>();
      } else if (key == "amplitude") {
        if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) throw ConfigError(k, "expected [re, im]");
        s.amplitude = {v[0].get<double>(), v[1].get<double>()};
      } else {
        throw ConfigError(k, "unknown component key");
      }
    }
    comps.push_back(s);
  }
  if (comps.empty()) throw ConfigError("params.components", "needs at least one component");

  fermion::GridSpec spec = grid_spec(p);
  for (const auto& c : comps) {
    if (c.kappa == 0.0) {
      spec.frame = fermion::frame_for_pole(c.direction);
      break;
    }
  }
  fermion::SheetGrid grid(spec);
  for (auto& c : comps) {
    if (c.kappa == 0.0) c.direction = spec.pole();
    grid.add(c);
  }
  const double t = p.number("t");
  const auto check = fermion::weyl_consistency_check(grid, t, xs);
  Report r;
  r.table.columns = {"x1", "x2", "x3", "deviation"};
  for (std::size_t k = 0; k < xs.size(); ++k) r.table.add({xs[k].x(), xs[k].y(), xs[k].z(), check.deviations[k]});
  r.results = {{"t", t}, {"components", comps.size()}, {"grid_norm", grid.norm()}};
  r.residuals = {{"max_deviation", check.max_deviation}};
  return r;
}

inline Report flow_transport(const Params& p, std::uint64_t) {
  const auto n = p.integer("grid_size");
  if (n < 1) throw ConfigError("params.grid_size", "must be positive");
  flow::FlowSystem sys = flow::harmonic_flow(static_cast<std::size_t>(n), p.number("c0"), p.number("a1"), p.number("b1"),
                                             p.number("dt"));
  if (p.has("f_samples")) {
    sys.f_samples = p.numbers("f_samples");
    if (sys.f_samples.size() != sys.grid_size) throw ConfigError("params.f_samples", "length must equal grid_size");
  }
  const auto samples = p.integer("samples");
  if (samples < 1) throw ConfigError("params.samples", "must be >= 1");
  const auto rep = flow::transport_check(sys, p.number("packet_center"), p.number("t"), p.number("packet_width"),
                                         static_cast<std::size_t>(samples));
  Report r;
  r.table.columns = {"t", "mean_quantum", "mean_classical", "center_classical", "deviation", "norm_drift"};
  double worst_dev = 0.0, worst_drift = 0.0;
  for (const auto& s : rep.samples) {
    r.table.add({s.t, s.mean_quantum, s.mean_classical, s.center_classical, s.deviation, s.norm_drift});
    worst_dev = std::max(worst_dev, s.deviation);
    worst_drift = std::max(worst_drift, s.norm_drift);
  }
  const auto& f = rep.final();
  r.results = {{"t", f.t},
               {"mean_quantum", f.mean_quantum},
               {"mean_classical", f.mean_classical},
               {"deviation", f.deviation},
               {"norm_drift", f.norm_drift},
               {"center_classical", f.center_classical},
               {"width_bias", rep.width_bias}};
  r.residuals = {{"max_deviation", worst_dev}, {"max_norm_drift", worst_drift}, {"waveform_residual", rep.waveform_residual}};
  return r;
}

inline Report blackhole_table(const Params& p, std::uint64_t) {
  const auto masses = p.numbers("masses");
  if (masses.empty()) throw ConfigError("params.masses", "must not be empty");
  const double c = p.number("integration_constant");
  const double de = p.number("delta_e");
  Report r;
  r.table.columns = {"M", "T_H", "sigma", "bits", "ln_rho"};
  json balance = json::array();
  double worst_balance = 0.0, worst_fd = 0.0;
  for (double m : masses) {
    const auto h = blackhole::horizon_bits(m, c);
    r.table.add({m, blackhole::hawking_temperature(m), blackhole::absorption_cross_section(m), h.bits, h.ln_rho});
    const auto ratio = blackhole::log_density_ratio(m, de);
    worst_balance = std::max(worst_balance, std::abs(ratio.first_order - de / blackhole::hawking_temperature(m)));
    const double step = 1e-4 * m;
    const double fd = (blackhole::horizon_bits(m + step, c).ln_rho - blackhole::horizon_bits(m - step, c).ln_rho) / (2.0 * step);
    worst_fd = std::max(worst_fd, std::abs(fd - 8.0 * kPi * m) / (8.0 * kPi * m));
    balance.push_back({{"M", m}, {"first_order", ratio.first_order}, {"exact", ratio.exact}});
  }
  r.results = {{"delta_e", de}, {"integration_constant", c}, {"log_density_ratio", balance}};
  r.residuals = {{"detailed_balance", worst_balance}, {"dlnrho_dM_relative", worst_fd}};
  return r;
}

}  // namespace detail

inline const std::vector<Experiment>& catalog() {
  using detail::grid_params;
  static const std::vector<Experiment> experiments = [] {
    std::vector<Experiment> e;
    e.push_back({"clock-spectrum", "Diagonalise the N-state clock evolution and compare energies with 2 pi (n + 1/2) / (N tau)",
                 "clock automaton: cyclic permutation and its energy spectrum",
                 {{"N", ParamType::kInteger, "number of clock states", 5},
                  {"tau", ParamType::kNumber, "time step (default 2 pi / (N omega))", nullptr},
                  {"omega", ParamType::kNumber, "angular frequency used when tau is omitted", 1.0}},
                 detail::clock_spectrum});
    e.push_back({"oscillator-identities",
                 "Finite-dimensional oscillator: SU(2) algebra, Casimir, deformed commutator and Hamiltonian identities",
                 "clock as a spin-l oscillator: exact operator identities at finite N",
                 {{"ells", ParamType::kArray, "spin values l (N = 2l + 1)", json::array({1, 10, 100, 200})},
                  {"omega", ParamType::kNumber, "angular frequency", 1.0}},
                 detail::oscillator_identities});
    e.push_back({"continuum-scan",
                 "Lowest levels of (omega^2 x^2 + p^2) / 2 against omega (n + 1/2) and the 1/(2l+1) correction",
                 "continuum limit of the finite oscillator",
                 {{"ells", ParamType::kArray, "spin values l", json::array({50, 100, 200, 400})},
                  {"omega", ParamType::kNumber, "angular frequency", 1.0},
                  {"levels", ParamType::kInteger, "number of distinct low levels", 5}},
                 detail::continuum_scan});
    e.push_back({"infoloss-classes", "Equivalence classes and quotient evolution of a deterministic map",
                 "information loss: states with a common future",
                 {{"graph_file", ParamType::kString, "functional graph file (text or FGR1 binary)", nullptr},
                  {"successors", ParamType::kArray, "inline successor list", nullptr},
                  {"index_base", ParamType::kInteger, "label base 0 or 1 (default: file directive, else 0)", nullptr}},
                 detail::infoloss_classes});
    e.push_back({"infoloss-census", "Limit cycles, class count and transient depths of a large functional graph",
                 "information loss: limit cycles and state census",
                 {{"source", ParamType::kString, "random, shift-merge or file", "random"},
                  {"n", ParamType::kInteger, "states of a random graph", 1000000},
                  {"volume", ParamType::kInteger, "shift-merge state bits", 16},
                  {"boundary", ParamType::kInteger, "shift-merge boundary bits", 4},
                  {"graph_file", ParamType::kString, "functional graph file", nullptr},
                  {"successors", ParamType::kArray, "inline successor list", nullptr},
                  {"index_base", ParamType::kInteger, "label base 0 or 1", nullptr}},
                 detail::infoloss_census});
    e.push_back({"fermion-commute", "Pairwise commutators of the discretised sheet beables",
                 "massless fermion: beables on the sheet grid", grid_params(32, 64, 64), detail::fermion_commute});

    auto wave = grid_params(32, 64, 65);
    wave.push_back({"direction", ParamType::kArray, "unit direction of the single-direction state", json::array({0.0, 0.0, 1.0})});
    wave.push_back({"q0", ParamType::kNumber, "signed momentum along the direction", 1.0});
    wave.push_back({"points", ParamType::kArray, "evaluation points [x, y, z]", detail::default_points()});
    wave.push_back({"convergence_n_theta", ParamType::kArray, "n_theta values for the refinement study",
                    json::array({4, 8, 16, 32})});
    wave.push_back({"check_refinement", ParamType::kBoolean, "fail if 50% finer angles change the wave", false});
    wave.push_back({"refinement_tolerance", ParamType::kNumber, "allowed relative change under refinement", 1e-6});
    wave.push_back({"grid_file", ParamType::kString, "transform a stored grid state instead", nullptr});
    e.push_back({"fermion-wave", "Position-space spinor wave of a sheet state, with the plane-wave calibration",
                 "massless fermion: sheets to position-space wave function", wave, detail::fermion_wave});

    auto weyl = grid_params(32, 64, 64);
    weyl.push_back({"t", ParamType::kNumber, "evolution time", 1.0});
    weyl.push_back({"points", ParamType::kArray, "evaluation points [x, y, z]", detail::default_points()});
    weyl.push_back(
        {"components", ParamType::kArray, "state components {direction, kappa, q0, rho_width, amplitude}",
         json::array({{{"direction", {0.0, 0.0, 1.0}}, {"kappa", 5.0}, {"q0", 1.0}, {"rho_width", 0.3}, {"amplitude", {1.0, 0.0}}},
                      {{"direction", {1.0, 0.0, 0.0}}, {"kappa", 8.0}, {"q0", -0.7}, {"rho_width", 0.4}, {"amplitude", {0.0, 1.0}}},
                      {{"direction", {0.6, 0.0, 0.8}}, {"kappa", 6.0}, {"q0", 1.5}, {"rho_width", 0.3}, {"amplitude", {0.5, 0.0}}}})});
    e.push_back({"weyl-check", "Deterministic sheet motion against Weyl evolution of the transformed wave",
                 "massless fermion: sheet dynamics reproduce the Weyl equation", weyl, detail::weyl_check});

    e.push_back({"flow-transport", "Quantum generator of dq/dt = f(q) transporting a packet, against classical characteristics",
                 "first-order flow lifted to a Hamiltonian linear in momentum",
                 {{"grid_size", ParamType::kInteger, "periodic grid points", 256},
                  {"c0", ParamType::kNumber, "f = c0 + a1 sin q + b1 cos q", 0.5},
                  {"a1", ParamType::kNumber, "sin q coefficient", 0.3},
                  {"b1", ParamType::kNumber, "cos q coefficient", 0.0},
                  {"f_samples", ParamType::kArray, "explicit f on the grid (overrides c0, a1, b1)", nullptr},
                  {"t", ParamType::kNumber, "final time", 2.0},
                  {"packet_center", ParamType::kNumber, "initial packet centre", 1.0},
                  {"packet_width", ParamType::kNumber, "initial density standard deviation", 0.1},
                  {"samples", ParamType::kInteger, "number of equally spaced report times", 1},
                  {"dt", ParamType::kNumber, "RK4 step of the characteristic oracle", 0.01}},
                 detail::flow_transport});
    e.push_back({"blackhole-table", "Hawking temperature, cross section, horizon bits and log state density per mass",
                 "black holes: temperature, detailed balance and area counting",
                 {{"masses", ParamType::kArray, "masses in Planck units", json::array({1.0})},
                  {"delta_e", ParamType::kNumber, "energy step for the density ratio", 1e-3},
                  {"integration_constant", ParamType::kNumber, "additive constant C in ln rho", 0.0}},
                 detail::blackhole_table});
    return e;
  }();
  return experiments;
}

inline const Experiment* find_experiment(const std::string& name) {
  for (const auto& e : catalog()) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

inline json catalog_json() {
  json list = json::array();
  for (const auto& e : catalog()) {
    json params = json::array();
    for (const auto& p : e.params) {
      json item = {{"name", p.name}, {"type", to_string(p.type)}, {"description", p.description}};
      if (!p.default_value.is_null()) item["default"] = p.default_value;
      params.push_back(item);
    }
    list.push_back({{"name", e.name}, {"description", e.description}, {"topic", e.topic}, {"params", params}});
  }
  return {{"version", kVersion}, {"experiments", list}};
}

/// Validates, runs and times one experiment. Module failures come back as
/// UpstreamError; config problems as ConfigError.
inline Report run_experiment(const RunConfig& cfg) {
  const Experiment* e = find_experiment(cfg.experiment);
  if (e == nullptr) throw ConfigError("experiment", "unknown experiment '" + cfg.experiment + "'");
  const Params params = validate_params(e->params, cfg.params, cfg.base_dir);
  const auto start = std::chrono::steady_clock::now();
  Report r;
  try {
    r = e->run(params, cfg.seed);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& err) {
    throw UpstreamError(e->name, err);
  } catch (const nlohmann::json::exception& err) {
    throw ConfigError("params", err.what());
  }
  r.duration_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.experiment = e->name;
  r.inputs = {{"params", params.raw()}, {"seed", cfg.seed}};
  return r;
}

}  // namespace ontolab::lab
