// Acceptance criteria 1-8. Prints one PASS/FAIL line per criterion with the
// measured figure and wall time; exits non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "ddelta/eigen.hpp"
#include "ddelta/lambert_w.hpp"
#include "ddelta/oracle.hpp"
#include "ddelta/output.hpp"
#include "ddelta/quantize.hpp"
#include "ddelta/transform.hpp"

using namespace ddelta;

namespace {

struct Verdict {
  bool passed = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), f, a, b, c);
  return buf;
}

Verdict spectrum_counting() {
  bool ok = spectrum(Coupling(1.5)).count() == 1 && spectrum(Coupling(1.5)).states[0].parity == Parity::Even;
  const Spectrum q = spectrum(Coupling(0.25));
  ok = ok && q.count() == 2 && q.states[0].parity == Parity::Even && q.states[1].parity == Parity::Odd;
  for (double a : {-1.0, -0.25, -1e-6, -1e6}) ok = ok && spectrum(Coupling(a)).count() == 0;
  int flips = 0;
  for (int i = 0; i < 50; ++i) {
    const double a = 0.5 + 1.0 * i / 49.0;  // steps straddle a = 1 without landing on it
    if (spectrum(Coupling(a)).count() != (a < 1.0 ? 2u : 1u)) ++flips;
  }
  if (spectrum(Coupling(1.0)).count() != 1) ++flips;
  return {ok && flips == 0, fmt("counts ok=%g, threshold mismatches=%g", ok, flips)};
}

Verdict residual_certificate() {
  SeededRng rng(101);
  double residual = 0.0;
  double oracle = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double a = rng.log_uniform(1e-2, 1e2);
    const double e = solve_even(Coupling(a));
    residual = std::max(residual, std::abs(quantization_residual(Parity::Even, a, e)));
    oracle = std::max(oracle, std::abs(e - even_root_closed_form(a)));
    if (const auto o = solve_odd(Coupling(a))) {
      residual = std::max(residual, std::abs(quantization_residual(Parity::Odd, a, *o)));
      const auto w = odd_root_closed_form(a);
      oracle = std::max(oracle, w ? std::abs(*o - *w) : INFINITY);
    } else if (odd_root_closed_form(a)) {
      oracle = INFINITY;
    }
  }
  return {residual <= 1e-11 && oracle <= 1e-10, fmt("max residual %.3g (<= 1e-11), max |bisection - W| %.3g (<= 1e-10)", residual, oracle)};
}

Verdict matching() {
  SeededRng rng(202);
  double continuity = 0.0;
  double worst = 0.0;
  int n = 0;
  while (n < 20) {
    const Spectrum sp = spectrum(Coupling(rng.log_uniform(0.05, 5.0)));
    const PiecewiseWaveFn w(sp.states[rng.next() % sp.count()]);
    const MatchReport r = match_report(w);
    continuity = std::max(continuity, r.continuity_err);
    worst = std::max({worst, r.jump_err, r.c1_err, r.c2_err});
    ++n;
  }
  return {continuity <= 1e-15 && worst <= 1e-10, fmt("continuity %.3g, jump/origin residuals %.3g (<= 1e-10)", continuity, worst)};
}

Verdict transform_pipeline() {
  double forward = 0.0;
  double inverse = 0.0;
  double parseval = 0.0;
  for (double a : {0.25, 0.5, 1.5}) {
    for (const auto& s : spectrum(Coupling(a)).states) {
      const PiecewiseWaveFn w(s);
      const AnalyticTransform t = analytic_transform(w);
      const HalfLineFunction f = half_line(w);
      for (int i = 0; i < 50; ++i) {
        const double k = 0.4 * i;
        forward = std::max(forward, std::abs(fourier_transform(t.kind, f, k) - t(k)));
        const double x = 0.05 + 0.1 * i;
        inverse = std::max(inverse, std::abs(inverse_reconstruct(t, x) - w(x)));
      }
      parseval = std::max(parseval, parseval_residual(w, t));
    }
  }
  return {forward <= 1e-8 && inverse <= 1e-7 && parseval <= 1e-8,
          fmt("forward %.3g (<= 1e-8), inverse %.3g (<= 1e-7), Parseval %.3g (<= 1e-8)", forward, inverse, parseval)};
}

Verdict table_integrals() {
  SeededRng rng(303);
  double a12 = 0.0;
  double a34 = 0.0;
  double methods = 0.0;
  for (TableIntegral which : {TableIntegral::A1, TableIntegral::A2, TableIntegral::A3, TableIntegral::A4}) {
    for (Branch b : {Branch::Below, Branch::Above}) {
      for (int i = 0; i < 20; ++i) {
        const double c = rng.uniform(0.5, 2.0);
        const double d = rng.uniform(0.5, 2.0);
        const double x = b == Branch::Below ? c * rng.uniform(0.1, 0.9) : c * rng.uniform(1.1, 3.0);
        const TabulatedValue v = tabulated_integral({which, c, d, x});
        const double diff = std::abs(v.numeric - v.closed_form);
        if (which == TableIntegral::A1 || which == TableIntegral::A2) {
          a12 = std::max(a12, diff);
        } else {
          a34 = std::max(a34, diff);
          methods = std::max(methods, std::abs(v.numeric - v.alternate));
        }
      }
    }
  }
  return {a12 <= 1e-7 && a34 <= 1e-5 && methods <= 1e-6,
          fmt("A1/A2 %.3g (<= 1e-7), A3/A4 %.3g (<= 1e-5), PV methods %.3g (<= 1e-6)", a12, a34, methods)};
}

Verdict nonexistence() {
  const NonexistenceDiagnostic d = positive_energy_nonexistence(Coupling(1.0), 1.0);
  bool bound_decays = d.bound_amplitude.size() == d.window_starts.size();
  double worst_decay = 0.0;  // largest measured / predicted ratio
  for (std::size_t j = 1; bound_decays && j < d.bound_amplitude.size(); ++j) {
    const double predicted = std::exp(-d.bound_xi * (d.window_starts[j] - d.window_starts[j - 1]));
    const double measured = d.bound_amplitude[j] / d.bound_amplitude[j - 1];
    worst_decay = std::max(worst_decay, measured / predicted);
  }
  // Sampling the window maximum on a grid may land a little below the true
  // peak, so allow a factor 1.5 on the predicted decay.
  bound_decays = bound_decays && worst_decay <= 1.5;
  const bool flat = d.window_starts.size() == 5 && d.min_window_ratio() > 0.5;
  return {flat && bound_decays,
          fmt("PV min window ratio %.3g (> 0.5), bound decay vs e^{-xi dX} %.3g (<= 1.5), pointwise %.3g",
              d.min_window_ratio(), worst_decay, d.max_pointwise_error)};
}

Verdict square_well_limit() {
  const std::vector<double> thetas{0.4, 0.2, 0.1, 0.05, 0.025};
  bool ok = true;
  for (double a : {0.25, 0.5}) {
    const LimitStudy s = delta_limit_study(1.0 / a, 1.0, thetas);
    ok = ok && s.converging(Parity::Even) && s.converging(Parity::Odd);
  }
  double grid = 0.0;
  for (double a : {0.25, 0.5}) {
    const Spectrum sp = spectrum(Coupling(a));
    const auto g = grid_eigensolve(Coupling(a), GridSpec{});
    if (g.size() != sp.count()) grid = INFINITY;
    for (std::size_t i = 0; i < std::min(g.size(), sp.count()); ++i) {
      grid = std::max(grid, std::abs(g[i].energy - sp.states[i].energy));
    }
  }
  return {ok && grid <= 1e-3, fmt("limit converging=%g, grid |dE| %.3g (<= 1e-3)", ok, grid)};
}

Verdict identities_and_degeneracy() {
  double ident = 0.0;
  for (const auto& fn : differentiation_corpus()) {
    for (TransformKind kind : {TransformKind::Sine, TransformKind::Cosine}) {
      for (int i = 0; i <= 20; ++i) ident = std::max(ident, differentiation_residual(fn, kind, 0.4 * i));
    }
  }
  const double g2 = level_splitting(Coupling(1e-2)).log_gap;
  const double g3 = level_splitting(Coupling(1e-3)).log_gap;
  return {ident <= 1e-7 && g3 < g2, fmt("identities %.3g (<= 1e-7), log gap a=1e-2 %.6g > a=1e-3 %.6g", ident, g2, g3)};
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  std::function<Verdict()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "spectrum counting", 1.0, spectrum_counting},
      {2, "quantization residual certificate", 1.0, residual_certificate},
      {3, "matching conditions", 1.0, matching},
      {4, "transform pipeline", 30.0, transform_pipeline},
      {5, "table integrals", 30.0, table_integrals},
      {6, "positive-energy nonexistence", 30.0, nonexistence},
      {7, "square-well limit and grid", 60.0, square_well_limit},
      {8, "differentiation identities and degeneracy", 5.0, identities_and_degeneracy},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool pass = v.passed && secs < c.budget_s;
    failed += !pass;
    std::printf("%s criterion %d (%s): %s [%.3f s, budget %.0f s]\n", pass ? "PASS" : "FAIL", c.id, c.name,
                v.detail.c_str(), secs, c.budget_s);
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
