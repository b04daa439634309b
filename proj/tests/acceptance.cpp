// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "lab/experiments.hpp"
#include "ontolab/ontolab.hpp"
#include "oracles/oracles.hpp"

using namespace ontolab;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("FAILED ") + what;
    }
  }
  void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome clock_spectrum() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (std::int64_t n : {3, 5, 11, 101, 401}) {
    const double tau = 2.0 * oracle::kPi / static_cast<double>(n);
    const Spectrum s = clock::energy_spectrum(clock::ClockModel(n, tau));
    for (std::int64_t k = 0; k < n; ++k) {
      worst = std::max(worst, std::abs(s.eigenvalues(k) - 2.0 * oracle::kPi * (k + 0.5) / (n * tau)));
    }
  }
  const double t = seconds_since(t0);
  o.check(worst <= 1e-10, "max |E - E_n| <= 1e-10");
  o.check(t < 5.0, "runtime < 5 s");
  o.note("max |E - E_n| = " + fmt("%.2e", worst) + ", " + fmt("%.2f s", t));
  return o;
}

Outcome finite_identities() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  double comm = 0.0, cas = 0.0, ham = 0.0;
  for (std::int64_t ell : {1, 10, 100, 200}) {
    const double tau = 2.0 * oracle::kPi / (2.0 * ell + 1.0);
    const auto rep = oscillator::build_spin_rep(ell, tau);
    comm = std::max(comm, oscillator::commutator_identity_residual(rep));
    cas = std::max(cas, oscillator::casimir_residual(rep));
    ham = std::max(ham, oscillator::hamiltonian_identity_residual(rep));
  }
  const double t = seconds_since(t0);
  o.check(comm <= 1e-9, "[x,p] identity");
  o.check(cas <= 1e-9, "Casimir identity");
  o.check(ham <= 1e-9, "Hamiltonian decomposition");
  o.check(t < 30.0, "runtime < 30 s");
  o.note("commutator " + fmt("%.2e", comm) + ", Casimir " + fmt("%.2e", cas) + ", Hamiltonian " + fmt("%.2e", ham) +
         ", " + fmt("%.2f s", t));
  return o;
}

Outcome continuum_limit() {
  Outcome o;
  const auto scan = oscillator::continuum_scan({50, 100, 200, 400}, 1.0, 5);
  double ground = NAN;
  for (const auto& r : scan.rows) {
    if (r.ell == 200 && r.level == 0) ground = r.eigenvalue;
  }
  const double ground_err = std::abs(ground - (0.5 - 0.5 / 401.0));
  o.check(ground_err <= 1e-9, "ground state at l = 200");
  double worst = 0.0;
  for (const auto& f : scan.fits) {
    const double h = f.level + 0.5;
    const double predicted = -(0.25 + h * h);
    worst = std::max(worst, std::abs(f.coefficient - predicted) / std::abs(predicted));
  }
  o.check(worst <= 0.02, "1/(2l+1) coefficients within 2%");
  o.note("ground error " + fmt("%.2e", ground_err) + ", worst coefficient error " + fmt("%.2e", worst));
  return o;
}

Outcome information_loss() {
  Outcome o;
  using info_loss::FunctionalGraph;
  // 1-based 1->2, 2->3, 3->1, 4->2
  const FunctionalGraph fig({1, 2, 0, 1});
  const ComplexMatrix m = info_loss::evolution_matrix(fig);
  const int expected[4][4] = {{0, 0, 1, 0}, {1, 0, 0, 1}, {0, 1, 0, 0}, {0, 0, 0, 0}};
  bool matrix_ok = true;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) matrix_ok = matrix_ok && m(i, j) == Complex(expected[i][j]);
  o.check(matrix_ok, "four-state evolution matrix");
  const auto q = info_loss::equivalence_classes(fig);
  const bool classes_ok = q.num_classes == 3 && q.class_of[0] == q.class_of[3] && q.class_of[0] != q.class_of[1] &&
                          q.class_of[1] != q.class_of[2] && q.class_of[0] != q.class_of[2];
  o.check(classes_ok, "classes {1,4},{2},{3}");
  const bool cycle_ok = info_loss::is_permutation(q) && q.class_successor[q.class_of[0]] == q.class_of[1] &&
                        q.class_successor[q.class_of[1]] == q.class_of[2] &&
                        q.class_successor[q.class_of[2]] == q.class_of[0];
  o.check(cycle_ok, "3-cycle quotient");

  std::mt19937_64 rng(20240601);
  int literal = 0;
  bool random_ok = true;
  for (int trial = 0; trial < 1000 && random_ok; ++trial) {
    const std::size_t n = trial % 4 == 0 ? 1 + rng() % 64 : 1 + rng() % 10000;
    const FunctionalGraph g = info_loss::random_graph(n, rng);
    const oracle::Map f(g.successors().begin(), g.successors().end());
    const auto qq = info_loss::equivalence_classes(g);
    random_ok = random_ok && info_loss::is_permutation(qq);
    random_ok = random_ok && qq.num_classes == oracle::image_iteration_classes(f);
    if (n <= 64) {
      random_ok = random_ok && qq.num_classes == oracle::pairwise_merge_classes(f);
      ++literal;
    }
    const oracle::Map far = oracle::far_image(f);
    for (std::size_t x = 1; x < n && random_ok; ++x) {
      random_ok = (qq.class_of[x] == qq.class_of[x - 1]) == (far[x] == far[x - 1]);
    }
  }
  o.check(random_ok, "1000 random graphs against merge oracles");

  std::mt19937_64 big_rng(7);
  const FunctionalGraph big = info_loss::random_graph(1000000, big_rng);
  const auto t0 = std::chrono::steady_clock::now();
  const auto census = info_loss::limit_cycle_census(big);
  const double t = seconds_since(t0);
  o.check(t < 10.0, "1e6-node census < 10 s");

  const oracle::Map f(big.successors().begin(), big.successors().end());
  std::vector<std::uint32_t> sample;
  std::mt19937_64 pick(3);
  for (int i = 0; i < 10000; ++i) sample.push_back(static_cast<std::uint32_t>(pick() % f.size()));
  const auto depths = oracle::depth_oracle(f, sample);
  std::set<std::uint32_t> starts;
  for (const auto& c : census.cycles) starts.insert(c.start);
  std::vector<std::size_t> seen(census.transient_histogram.size(), 0);
  bool census_ok = census.on_cycle == oracle::image_iteration_classes(f);
  for (const auto& d : depths) {
    census_ok = census_ok && d.depth < census.transient_histogram.size() && census.transient_histogram[d.depth] > 0 &&
                starts.count(d.cycle_min) == 1;
  }
  o.check(census_ok, "census against doubling oracle on 1e4 sampled states");
  o.note(std::to_string(literal) + " trials with the literal pairwise oracle, census " + fmt("%.2f s", t) + ", " +
         std::to_string(census.cycles.size()) + " cycles, " + std::to_string(census.on_cycle) + " classes");
  return o;
}

const std::vector<fermion::Vec3> kPoints{{0, 0, 0}, {0, 0, 1}, {0.5, -0.3, 2.0}, {1, 2, 3}, {-2, 0.7, -1.1}};

Outcome fermion_beables() {
  Outcome o;
  using namespace fermion;
  const auto b = beable_commutator_residuals(SheetGrid(GridSpec{}));
  o.check(b.max_commutator <= 1e-12, "beable commutators <= 1e-12");

  GridSpec g;
  g.n_rho = 65;
  SheetGrid single(g);
  single.add({Vec3::UnitZ(), 0.0, 1.0, 0.0, 1.0});
  const double single_dev = weyl_consistency_check(single, 1.0, kPoints).max_deviation;
  o.check(single_dev <= 1e-8, "single-ray Weyl consistency <= 1e-8");

  SheetGrid three(GridSpec{});
  three.add({Vec3(0, 0, 1), 5.0, 1.0, 0.3, 1.0});
  three.add({Vec3(1, 0, 0), 8.0, -0.7, 0.4, Complex(0, 1)});
  three.add({Vec3(0.6, 0, 0.8), 6.0, 1.5, 0.3, 0.5});
  const double three_dev = weyl_consistency_check(three, 1.0, kPoints).max_deviation;
  o.check(three_dev <= 1e-6, "three-ray Weyl consistency <= 1e-6");

  // cross-check path (b) against the series oracle for one sample
  const auto samples = three.samples();
  const auto& s = samples[samples.size() / 2];
  const Spinor chi = helicity_spinor(s.k);
  const auto series = oracle::weyl_propagate({s.q * s.k.x(), s.q * s.k.y(), s.q * s.k.z()}, 1.0, {chi(0), chi(1)});
  const std::vector<WaveSample> one{{s.k, s.q, 1.0, 1.0}};
  const Spinor closed = weyl_evolved_wave(one, Vec3::Zero(), 1.0);
  const Complex pre = kWaveCalibration / (2.0 * kPi) * (-s.q * s.q);
  const double prop_err = std::abs(closed(0) - pre * series[0]) + std::abs(closed(1) - pre * series[1]);
  o.check(prop_err <= 1e-12, "Weyl propagator against series oracle");
  o.note("commutators " + fmt("%.1e", b.max_commutator) + ", single " + fmt("%.2e", single_dev) + ", three-ray " +
         fmt("%.2e", three_dev));
  return o;
}

double wave_error(int n_theta) {
  using namespace fermion;
  GridSpec g;
  g.n_theta = n_theta;
  g.n_phi = 2 * n_theta;
  g.n_rho = 65;
  SheetGrid grid(g);
  grid.add({Vec3::UnitZ(), 0.0, 1.0, 0.0, 1.0});
  const auto samples = grid.samples();
  double worst = 0.0;
  for (const auto& x : kPoints) {
    const auto ref = oracle::plane_wave_z(1.0, x.z());
    const auto psi = position_wave(samples, x);
    worst = std::max(worst, std::hypot(std::abs(psi(0) - ref[0]), std::abs(psi(1) - ref[1])));
  }
  return worst;  // |ref| = 1
}

Outcome wave_calibration() {
  Outcome o;
  const double err = wave_error(32);
  o.check(err <= 1e-6, "relative error <= 1e-6 at n_theta = 32");
  std::string series;
  double prev = INFINITY;
  bool monotone = true;
  std::vector<double> errs;
  for (int n : {4, 8, 16, 32}) {
    const double e = wave_error(n);
    monotone = monotone && e < prev;
    prev = e;
    errs.push_back(e);
    series += (series.empty() ? "" : " ") + std::to_string(n) + ":" + fmt("%.1e", e);
  }
  o.check(monotone, "monotone decrease under doubling");
  o.note("errors " + series + ", reduction per doubling " + fmt("%.1e", errs[0] / errs[1]) + " " +
         fmt("%.1e", errs[1] / errs[2]) + " " + fmt("%.1e", errs[2] / errs[3]));
  return o;
}

Outcome flow_transport() {
  Outcome o;
  const auto c = flow::transport_check(flow::harmonic_flow(256, 0.5, 0.0, 0.0), 1.0, 2.0);
  o.check(c.final().deviation <= 1e-10 && c.waveform_residual <= 1e-10, "constant f transports exactly");

  const auto sys = flow::harmonic_flow(256, 0.5, 0.3, 0.0);
  const auto r = flow::transport_check(sys, 1.0, 2.0);
  // independent oracle: initial density carried by RK4 on the analytic f
  const auto f = [](double q) { return 0.5 + 0.3 * std::sin(q); };
  Complex acc = 0.0;
  double norm = 0.0;
  for (std::size_t j = 0; j < 256; ++j) {
    const double q = 2.0 * oracle::kPi * static_cast<double>(j) / 256.0;
    double amp = 0.0;
    for (int w = -3; w <= 3; ++w) {
      const double d = q - 1.0 + 2.0 * oracle::kPi * w;
      amp += std::exp(-d * d / (4.0 * 0.01));
    }
    norm += amp * amp;
    acc += amp * amp * std::polar(1.0, oracle::rk4(f, q, 2.0, 2000));
  }
  const double oracle_mean = std::arg(acc / norm);
  const double dev = std::abs(std::remainder(r.final().mean_quantum - oracle_mean, 2.0 * oracle::kPi));
  o.check(dev <= 1e-3, "packet mean within 1e-3 of the RK4 oracle at t = 2");
  o.check(r.final().norm_drift <= 1e-12 && c.final().norm_drift <= 1e-12, "norm drift <= 1e-12");
  o.note("constant " + fmt("%.1e", std::max(c.final().deviation, c.waveform_residual)) + ", sine " + fmt("%.2e", dev) +
         ", drift " + fmt("%.1e", r.final().norm_drift) + ", packet-width offset of the central ray " +
         fmt("%.2e", r.width_bias));
  return o;
}

Outcome blackhole_quantities() {
  Outcome o;
  const double pi = oracle::kPi;
  const double th = blackhole::hawking_temperature(1.0);
  const double sigma = blackhole::absorption_cross_section(1.0);
  const double bits = blackhole::horizon_bits(1.0).bits;
  o.check(std::abs(th - 1.0 / (8.0 * pi)) <= 1e-8, "T_H(1)");
  o.check(std::abs(sigma - 8.0 * pi) <= 1e-8, "sigma(1)");
  o.check(std::abs(bits - 4.0 * pi / std::log(2.0)) <= 1e-8, "bits(1)");
  bool balance = true;
  for (double m : {0.1, 1.0, 42.0}) {
    for (double de : {1e-6, 1e-3, 0.05}) {
      balance = balance && blackhole::log_density_ratio(m, de).first_order == de / blackhole::hawking_temperature(m);
    }
  }
  o.check(balance, "first-order exponent equals dE / T_H exactly");
  double worst = 0.0;
  for (double m : {0.5, 1.0, 7.0}) {
    const double h = 1e-4 * m;
    const double fd = (blackhole::horizon_bits(m + h).ln_rho - blackhole::horizon_bits(m - h).ln_rho) / (2.0 * h);
    worst = std::max(worst, std::abs(fd - 8.0 * pi * m) / (8.0 * pi * m));
  }
  o.check(worst <= 1e-6, "d ln rho / dM = 8 pi M");
  o.note("bits(1) = " + fmt("%.8f", bits) + ", slope error " + fmt("%.1e", worst));
  return o;
}

Outcome reproducibility() {
  Outcome o;
  using lab::json;
  const std::vector<json> configs = {
      {{"experiment", "clock-spectrum"}, {"params", {{"N", 11}}}},
      {{"experiment", "oscillator-identities"}, {"params", {{"ells", {1, 10}}}}},
      {{"experiment", "continuum-scan"}, {"params", {{"ells", {20, 40}}, {"levels", 3}}}},
      {{"experiment", "infoloss-classes"}, {"params", {{"successors", {1, 2, 0, 1}}}}},
      {{"experiment", "infoloss-census"}, {"params", {{"n", 100000}}}, {"seed", 42}},
      {{"experiment", "fermion-commute"}, {"params", {{"n_theta", 8}, {"n_phi", 16}, {"n_rho", 16}}}},
      {{"experiment", "fermion-wave"}, {"params", {{"n_theta", 16}}}},
      {{"experiment", "weyl-check"}, {"params", {{"n_theta", 12}, {"n_rho", 24}}}},
      {{"experiment", "flow-transport"}, {"params", {{"grid_size", 64}, {"packet_width", 0.4}}}},
      {{"experiment", "blackhole-table"}, {"params", {{"masses", {0.5, 1, 2}}}}},
  };
  int identical = 0;
  for (const auto& doc : configs) {
    const auto cfg = lab::parse_config(doc);
    const std::string a = lab::run_experiment(cfg).payload().dump();
    const std::string b = lab::run_experiment(cfg).payload().dump();
    if (a == b) {
      ++identical;
    } else {
      o.check(false, doc["experiment"].get<std::string>() + " payload differs");
    }
  }
  o.note(std::to_string(identical) + "/" + std::to_string(configs.size()) + " experiments byte-identical");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"clock spectrum", clock_spectrum},
      {"finite-N operator identities", finite_identities},
      {"continuum limit", continuum_limit},
      {"information loss", information_loss},
      {"fermion beables and Weyl consistency", fermion_beables},
      {"plane-wave calibration", wave_calibration},
      {"flow transport", flow_transport},
      {"black-hole quantities", blackhole_quantities},
      {"reproducibility", reproducibility},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    failed += !o.pass;
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
  return failed == 0 ? 0 : 1;
}
