#include "ddelta/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>

#include "ddelta/eigen.hpp"
#include "ddelta/lambert_w.hpp"
#include "ddelta/output.hpp"
#include "ddelta/quantize.hpp"
#include "ddelta/transform.hpp"

namespace ddelta {
namespace {

class Suite {
 public:
  // value <= threshold passes.
  void bound(std::string name, double value, double threshold) {
    results_.push_back({std::move(name), value <= threshold, value, threshold});
  }
  // Boolean property; value is the number of violations.
  void property(std::string name, int violations) {
    results_.push_back({std::move(name), violations == 0, static_cast<double>(violations), 0.0});
  }
  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  std::vector<CheckResult> results_;
};

double rel(double x, double y) { return std::abs(x - y) / std::max(1.0, std::abs(y)); }

std::vector<BoundState> random_states(SeededRng& rng, int count) {
  std::vector<BoundState> out;
  while (static_cast<int>(out.size()) < count) {
    const Spectrum sp = spectrum(Coupling(rng.log_uniform(0.05, 5.0)));
    const auto& s = sp.states[rng.next() % sp.count()];
    out.push_back(s);
  }
  return out;
}

void model_checks(Suite& s, SeededRng& rng) {
  int homogeneous = 0;
  int monotone = 0;
  double round_trip = 0.0;
  for (int i = 0; i < 200; ++i) {
    PhysicalParams p{rng.log_uniform(0.1, 10.0), rng.log_uniform(0.1, 10.0), rng.log_uniform(0.1, 10.0),
                     rng.log_uniform(0.1, 10.0)};
    const double a = coupling_from_physical(p).value();
    PhysicalParams doubled = p;
    doubled.alpha *= 2.0;
    if (coupling_from_physical(doubled).value() != a / 2.0) ++homogeneous;

    const double x1 = rng.log_uniform(1e-3, 1e3);
    const double x2 = x1 * (1.0 + rng.uniform(1e-6, 1.0));
    if (!(energy_from_xi(x2) < energy_from_xi(x1))) ++monotone;

    const double xi = rng.log_uniform(0.1, 10.0);
    const EnergyScale scale = EnergyScale::from_physical(p);
    const double kappa = xi / p.halfsep;
    const double direct = -p.hbar * p.hbar * kappa * kappa / (2.0 * p.mass);
    round_trip = std::max(round_trip, std::abs(energy_from_xi(xi, scale) - direct) / std::abs(direct));
  }
  s.property("model.coupling_homogeneous", homogeneous);
  s.property("model.energy_monotone", monotone);
  s.bound("model.energy_round_trip", round_trip, 1e-14);
}

void quantize_checks(Suite& s, SeededRng& rng) {
  double residual = 0.0;
  double oracle = 0.0;
  int ordering = 0;
  for (int i = 0; i < 200; ++i) {
    const double a = rng.log_uniform(1e-3, 1e3);
    const double e = solve_even(Coupling(a));
    residual = std::max(residual, std::abs(quantization_residual(Parity::Even, a, e)));
    oracle = std::max(oracle, rel(e, even_root_closed_form(a)));
    if (const auto o = solve_odd(Coupling(a))) {
      residual = std::max(residual, std::abs(quantization_residual(Parity::Odd, a, *o)));
      if (const auto w = odd_root_closed_form(a)) oracle = std::max(oracle, rel(*o, *w));
      // Past a ~ 0.03 the two roots agree to every digit; the log-form gap
      // still has to be finite there.
      if (*o > e || (*o == e && !std::isfinite(level_splitting(Coupling(a)).log_gap))) ++ordering;
    }
  }
  s.bound("quantize.residual_certificate", residual, 1e-11);
  s.bound("quantize.lambert_w_agreement", oracle, 1e-10);
  s.property("quantize.odd_below_even", ordering);

  int threshold = 0;
  for (int i = 0; i <= 400; ++i) {
    const double a = 0.9 + 0.2 * i / 400.0;
    if (solve_odd(Coupling(a)).has_value() != (a < 1.0)) ++threshold;
  }
  s.property("quantize.odd_threshold_sweep", threshold);

  int monotone = 0;
  double prev_e = INFINITY;
  double prev_o = INFINITY;
  for (int i = 0; i <= 200; ++i) {
    const double a = std::pow(10.0, -2.0 + 2.0 * i / 200.0) * 0.99;
    const double e = solve_even(Coupling(a));
    const double o = solve_odd(Coupling(a)).value_or(NAN);
    if (!(e < prev_e) || !(o < prev_o)) ++monotone;
    prev_e = e;
    prev_o = o;
  }
  s.property("quantize.roots_decrease_with_a", monotone);

  const double g2 = level_splitting(Coupling(1e-2)).log_gap;
  const double g3 = level_splitting(Coupling(1e-3)).log_gap;
  s.property("quantize.degenerate_limit", g3 < g2 ? 0 : 1);

  double asym = 0.0;
  for (double a : {0.05, 0.1}) {
    asym = std::max(asym, std::abs(solve_even(Coupling(a)) - 0.5 / a) / (std::exp(-1.0 / a) / a));
  }
  s.bound("quantize.small_a_asymptotics", asym, 1.0);
}

// Central differences lose about eps |phi| / h^2 to rounding; h = 1e-4 keeps
// that and the h^2 xi^4 truncation term both under 1e-7 for xi <= 10.
constexpr double kFdStep = 1e-4;

// |phi'' - xi^2 phi| / ((1 + xi^2) max(|phi(x)|, |phi(L)|)) with phi'' by central differences.
double fd_schrodinger_residual(const PiecewiseWaveFn& w, double x) {
  // Use the step actually represented after rounding x +- h.
  const double xp = x + kFdStep;
  const double xm = x - kFdStep;
  const double hp = xp - x;
  const double hm = x - xm;
  const double d2 = 2.0 * ((w(xp) - w(x)) / hp - (w(x) - w(xm)) / hm) / (hp + hm);
  const double xi2 = w.xi() * w.xi();
  const double scale = std::max(std::abs(w(x)), std::abs(w.value_at_halfsep()));
  return std::abs(d2 - xi2 * w(x)) / ((1.0 + xi2) * scale);
}

void eigen_checks(Suite& s, SeededRng& rng, const QuadratureSpec& quad) {
  const auto states = random_states(rng, 20);
  int parity = 0;
  double origin = 0.0;
  double schrodinger = 0.0;
  double decay = 0.0;
  double match = 0.0;
  double norm = 0.0;
  for (const auto& st : states) {
    const PiecewiseWaveFn w(st);
    const double sign = parity_sign(st.parity);
    const double reach = tail_cutoff(st.xi);
    for (int i = 0; i < 50; ++i) {
      const double x = rng.uniform(0.0, reach);
      if (w(-x) != sign * w(x)) ++parity;
      if (std::abs(std::abs(x) - 1.0) > 2.0 * kFdStep && x > 2.0 * kFdStep) {
        schrodinger = std::max(schrodinger, fd_schrodinger_residual(w, x));
      }
      if (x >= 1.0) {
        const double env = std::abs(w.value_at_halfsep()) * std::exp(-st.xi * (x - 1.0));
        decay = std::max(decay, std::abs(w(x)) - env);
      }
    }
    origin = std::max(origin, st.parity == Parity::Even ? std::abs(w.derivative(0.0)) : std::abs(w(0.0)));
    match = std::max(match, match_report(w).worst());
    norm = std::max(norm, norm_check(w, quad));
  }
  s.property("eigen.parity_exact", parity);
  s.bound("eigen.origin_condition", origin, 1e-15);
  s.bound("eigen.schrodinger_fd_residual", schrodinger, 1e-6);
  s.bound("eigen.exponential_envelope", decay, 1e-15);
  s.bound("eigen.matching_conditions", match, 1e-10);
  s.bound("eigen.unit_norm", norm, 1e-10);

  const Spectrum sp = spectrum(Coupling(0.25));
  const double ortho = std::abs(overlap(PiecewiseWaveFn(sp.states[0]), PiecewiseWaveFn(sp.states[1]), quad));
  s.bound("eigen.orthogonality", ortho, 1e-10);

  BoundState perturbed = sp.states[0];
  perturbed.xi *= 1.0 + 1e-3;
  const double off = match_report(PiecewiseWaveFn::off_shell(perturbed)).jump_err;
  s.property("eigen.off_shell_detected", off > 1e-4 ? 0 : 1);
}

void transform_checks(Suite& s, SeededRng& rng, const QuadratureSpec& quad) {
  double forward = 0.0;
  double inverse = 0.0;
  double parseval = 0.0;
  double decay = 0.0;
  for (double a : {0.25, 0.5, 1.5}) {
    for (const auto& st : spectrum(Coupling(a)).states) {
      const PiecewiseWaveFn w(st);
      const AnalyticTransform t = analytic_transform(w);
      const HalfLineFunction f = half_line(w);
      for (int i = 0; i < 10; ++i) {
        const double k = rng.uniform(0.0, 20.0);
        forward = std::max(forward, std::abs(fourier_transform(t.kind, f, k, quad) - t(k)));
        const double x = rng.uniform(0.05, 4.0);
        inverse = std::max(inverse, std::abs(inverse_reconstruct(t, x, quad) - w(x)));
      }
      parseval = std::max(parseval, parseval_residual(w, t, quad));
      for (double k : {1e2, 1e3, 1e4, 1e5}) decay = std::max(decay, std::abs(t(k)) * k * k / std::abs(t.prefactor));
    }
  }
  s.bound("transform.forward_vs_analytic", forward, 1e-8);
  s.bound("transform.inverse_round_trip", inverse, 1e-6);
  s.bound("transform.parseval", parseval, 1e-8);
  s.bound("transform.k2_phi_bounded", decay, 1.0 + 1e-12);

  const auto corpus = differentiation_corpus();
  double ident = 0.0;
  double linear = 0.0;
  for (const auto& fn : corpus) {
    for (TransformKind kind : {TransformKind::Sine, TransformKind::Cosine}) {
      for (double k : {0.0, 0.5, 1.0, 2.0, 4.0}) ident = std::max(ident, differentiation_residual(fn, kind, k, quad));
    }
  }
  for (int i = 0; i < 5; ++i) {
    const auto& f = corpus[rng.next() % corpus.size()];
    const auto& g = corpus[rng.next() % corpus.size()];
    const double al = rng.uniform(-2.0, 2.0);
    const double be = rng.uniform(-2.0, 2.0);
    const double k = rng.uniform(0.0, 5.0);
    const TransformKind kind = (rng.next() & 1) ? TransformKind::Sine : TransformKind::Cosine;
    const HalfLineFunction hf{f.f, {}, 0.0};
    const HalfLineFunction hg{g.f, {}, 0.0};
    const HalfLineFunction combo{[&](double x) { return al * f.f(x) + be * g.f(x); }, {}, 0.0};
    const double lhs = fourier_transform(kind, combo, k, quad);
    const double rhs = al * fourier_transform(kind, hf, k, quad) + be * fourier_transform(kind, hg, k, quad);
    linear = std::max(linear, std::abs(lhs - rhs));
  }
  s.bound("transform.differentiation_identities", ident, 1e-7);
  s.bound("transform.linearity", linear, 1e-9);

  double tab12 = 0.0;
  double tab34 = 0.0;
  double pv_methods = 0.0;
  for (TableIntegral which : {TableIntegral::A1, TableIntegral::A2, TableIntegral::A3, TableIntegral::A4}) {
    for (int i = 0; i < 4; ++i) {
      const double c = rng.uniform(0.5, 2.0);
      const double x = (i % 2 == 0) ? c * rng.uniform(0.1, 0.9) : c * rng.uniform(1.1, 3.0);
      const TabulatedValue v = tabulated_integral({which, c, rng.uniform(0.5, 2.0), x}, quad);
      const double diff = std::abs(v.numeric - v.closed_form);
      if (which == TableIntegral::A1 || which == TableIntegral::A2) {
        tab12 = std::max(tab12, diff);
      } else {
        tab34 = std::max(tab34, diff);
        pv_methods = std::max(pv_methods, std::abs(v.numeric - v.alternate));
      }
    }
  }
  s.bound("transform.table_A1_A2", tab12, 1e-7);
  s.bound("transform.table_A3_A4", tab34, 1e-5);
  s.bound("transform.pv_methods_agree", pv_methods, 1e-6);

  const NonexistenceDiagnostic d = positive_energy_nonexistence(Coupling(1.0), 1.0, {2.0, 4, 24, 8.0, quad});
  s.property("transform.pv_tail_does_not_decay", d.min_window_ratio() > 0.5 ? 0 : 1);
}

// The well-vs-delta energy gap is first order in theta, about 5 theta at a = 1/4.
constexpr double kWellTheta = 0.005;

void oracle_checks(Suite& s, const GridSpec& grid) {
  int certificates = 0;
  double well = 0.0;
  double grid_err = 0.0;
  int counts = 0;
  for (double a : {0.25, 0.5, 0.75}) {
    const Spectrum sp = spectrum(Coupling(a));
    const auto levels = square_well_spectrum(well_for_coupling(Coupling(a), kWellTheta));
    for (const auto& l : levels) {
      if (!(l.det_lo * l.det_hi < 0.0)) ++certificates;
    }
    if (levels.size() != sp.count()) ++counts;
    for (std::size_t i = 0; i < std::min(levels.size(), sp.count()); ++i) {
      well = std::max(well, std::abs(levels[i].energy - sp.states[i].energy));
    }
    const auto g = grid_eigensolve(Coupling(a), grid);
    if (g.size() != sp.count()) ++counts;
    for (std::size_t i = 0; i < std::min(g.size(), sp.count()); ++i) {
      if (g[i].parity != sp.states[i].parity) ++counts;
      grid_err = std::max(grid_err, std::abs(g[i].energy - sp.states[i].energy));
    }
  }
  s.property("oracle.transfer_matrix_certificates", certificates);
  s.property("oracle.state_counts", counts);
  s.bound("oracle.square_well_small_theta", well, 0.05);
  s.bound("oracle.grid_vs_analytic", grid_err, 1e-3);

  const auto wide = square_well_spectrum(well_for_coupling(Coupling(1.5), 0.01));
  s.property("oracle.single_state_a_1.5", wide.size() == 1 ? 0 : 1);

  const GridSpec small{20.0, 80001, 1e-3};
  const GridSpec big{40.0, 160001, 1e-3};
  const auto g1 = grid_eigensolve(Coupling(0.25), small);
  const auto g2 = grid_eigensolve(Coupling(0.25), big);
  double box = g1.size() == g2.size() ? 0.0 : INFINITY;
  for (std::size_t i = 0; i < std::min(g1.size(), g2.size()); ++i) {
    box = std::max(box, std::abs(g1[i].energy - g2[i].energy));
  }
  s.bound("oracle.box_size_independence", box, 1e-6);

  const LimitStudy ls = delta_limit_study(4.0, 1.0, {0.4, 0.2, 0.1, 0.05, 0.025});
  s.property("oracle.limit_converges", (ls.converging(Parity::Even) ? 0 : 1) + (ls.converging(Parity::Odd) ? 0 : 1));
}

}  // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& opts) {
  Suite s;
  SeededRng rng(opts.seed);
  model_checks(s, rng);
  quantize_checks(s, rng);
  eigen_checks(s, rng, opts.quad);
  transform_checks(s, rng, opts.quad);
  oracle_checks(s, opts.grid);
  return s.take();
}

}  // namespace ddelta
