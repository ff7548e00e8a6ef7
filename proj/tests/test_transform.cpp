#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "doctest.h"
#include "ddelta/output.hpp"
#include "ddelta/quantize.hpp"
#include "ddelta/transform.hpp"

using namespace ddelta;

namespace {

const double kS = std::sqrt(2.0 / std::numbers::pi);

PiecewiseWaveFn wavefn(double a, Parity p) {
  for (const auto& s : spectrum(Coupling(a)).states) {
    if (s.parity == p) return PiecewiseWaveFn(s);
  }
  throw std::logic_error("state missing");
}

// Numerical inverse of a numerical forward transform; both transforms are
// involutions on the half line.
double round_trip(const CorpusFunction& fn, TransformKind kind, double x) {
  const Integrand spectrum_fn = [&](double k) { return fourier_transform(kind, {fn.f, {}, 0.0}, k); };
  const Integrand back = [&](double k) { return spectrum_fn(k) * trig(trig_of(kind), k * x); };
  // Paired with the matching parity the transforms are Gaussian-like and
  // negligible past k = 12.
  QuadratureSpec q;
  q.rel_tol = 1e-9;
  return kS * value_or_throw(integrate(back, 0.0, 12.0, q), "round trip");
}

}  // namespace

TEST_CASE("transform kind follows parity") {
  CHECK(transform_kind_for(Parity::Even) == TransformKind::Cosine);
  CHECK(transform_kind_for(Parity::Odd) == TransformKind::Sine);
  CHECK(to_string(TransformKind::Sine) == "sine");
}

TEST_CASE("analytic transform at k = 0") {
  const PiecewiseWaveFn w = wavefn(0.25, Parity::Even);
  const AnalyticTransform t = analytic_transform(w);
  CHECK(t.prefactor == doctest::Approx(kS * w.value_at_halfsep() / 0.25).epsilon(1e-15));
  CHECK(t(0.0) == doctest::Approx(t.prefactor / (w.xi() * w.xi())).epsilon(1e-15));
  CHECK(analytic_transform(wavefn(0.25, Parity::Odd))(0.0) == 0.0);
}

TEST_CASE("numeric transform of the eigenfunctions matches the closed form") {
  for (double a : {0.25, 0.5, 1.5}) {
    for (const auto& s : spectrum(Coupling(a)).states) {
      const PiecewiseWaveFn w(s);
      const AnalyticTransform t = analytic_transform(w);
      for (double k : {0.0, 0.1, 1.0, 2.5, 5.0, 12.0, 40.0}) {
        CAPTURE(a);
        CAPTURE(k);
        CHECK(std::abs(fourier_transform(t.kind, half_line(w), k) - t(k)) <= 1e-8);
      }
    }
  }
}

TEST_CASE("simple transforms") {
  const HalfLineFunction zero{[](double) { return 0.0; }, {}, 5.0};
  CHECK(sine_transform(zero, 1.0) == 0.0);
  CHECK(cosine_transform(zero, 1.0) == 0.0);
  const HalfLineFunction decay{[](double x) { return std::exp(-x); }, {}, 0.0};
  CHECK(cosine_transform(decay, 0.0) == doctest::Approx(kS).epsilon(1e-12));
  // F_S{e^{-x}}(k) = sqrt(2/pi) k / (1 + k^2)
  CHECK(sine_transform(decay, 2.0) == doctest::Approx(kS * 2.0 / 5.0).epsilon(1e-11));
  CHECK_THROWS_AS(cosine_transform(decay, -1.0), std::invalid_argument);
}

TEST_CASE("linearity") {
  SeededRng rng(31);
  const auto corpus = differentiation_corpus();
  for (int i = 0; i < 20; ++i) {
    const auto& f = corpus[rng.next() % corpus.size()];
    const auto& g = corpus[rng.next() % corpus.size()];
    const double al = rng.uniform(-3.0, 3.0);
    const double be = rng.uniform(-3.0, 3.0);
    const double k = rng.uniform(0.0, 6.0);
    for (TransformKind kind : {TransformKind::Sine, TransformKind::Cosine}) {
      const double lhs = fourier_transform(kind, {[&](double x) { return al * f.f(x) + be * g.f(x); }, {}, 0.0}, k);
      const double rhs = al * fourier_transform(kind, {f.f, {}, 0.0}, k) + be * fourier_transform(kind, {g.f, {}, 0.0}, k);
      CHECK(std::abs(lhs - rhs) <= 1e-10);
    }
  }
}

TEST_CASE("differentiation identities on the corpus") {
  CHECK(kDifferentiationCorpusVersion == 1);
  for (const auto& fn : differentiation_corpus()) {
    for (TransformKind kind : {TransformKind::Sine, TransformKind::Cosine}) {
      for (int i = 0; i <= 20; ++i) {
        const double k = 0.4 * i;
        CAPTURE(fn.name);
        CAPTURE(k);
        CHECK(differentiation_residual(fn, kind, k) <= 1e-7);
      }
    }
  }
}

TEST_CASE("round trip of the corpus functions") {
  // Cosine for f'(0) = 0, sine for f(0) = 0: the even or odd extension is
  // then smooth.
  const auto corpus = differentiation_corpus();
  const std::pair<std::string, TransformKind> cases[] = {
      {"gauss", TransformKind::Cosine}, {"x_gauss", TransformKind::Sine}, {"x2_gauss", TransformKind::Cosine}};
  for (const auto& [name, kind] : cases) {
    const auto it = std::find_if(corpus.begin(), corpus.end(), [&](const CorpusFunction& c) { return c.name == name; });
    REQUIRE(it != corpus.end());
    for (double x : {0.3, 1.0, 2.2}) {
      CAPTURE(name);
      CHECK(std::abs(round_trip(*it, kind, x) - it->f(x)) <= 1e-6);
    }
  }
}

TEST_CASE("inverse reconstructs the eigenfunctions") {
  const PiecewiseWaveFn even = wavefn(0.25, Parity::Even);
  const PiecewiseWaveFn odd = wavefn(0.25, Parity::Odd);
  CHECK(std::abs(inverse_reconstruct(analytic_transform(even), 0.5) - even(0.5)) <= 1e-7);
  CHECK(std::abs(inverse_reconstruct(analytic_transform(odd), 2.0) - odd(2.0)) <= 1e-7);
  CHECK(std::abs(inverse_reconstruct(analytic_transform(odd), 1e-9)) <= 1e-7);
  for (double x : {0.05, 0.7, 1.0, 1.3, 3.0, 6.0}) {
    CHECK(std::abs(inverse_reconstruct(analytic_transform(even), x) - even(x)) <= 1e-7);
    CHECK(std::abs(inverse_reconstruct(analytic_transform(odd), x) - odd(x)) <= 1e-7);
  }
}

TEST_CASE("Parseval") {
  for (const auto& [a, p] : {std::pair{1.5, Parity::Even}, std::pair{0.25, Parity::Odd}, std::pair{0.5, Parity::Even}}) {
    const PiecewiseWaveFn w = wavefn(a, p);
    CHECK(parseval_residual(w, analytic_transform(w)) <= 1e-8);
  }
  const PiecewiseWaveFn w = wavefn(1.5, Parity::Even);
  AnalyticTransform doubled = analytic_transform(w);
  doubled.prefactor *= 2.0;
  CHECK(parseval_residual(w, doubled) == doctest::Approx(3.0).epsilon(1e-8));
}

TEST_CASE("k^2 Phi(k) stays bounded") {
  for (double a : {0.25, 1.5}) {
    for (const auto& s : spectrum(Coupling(a)).states) {
      const AnalyticTransform t = analytic_transform(PiecewiseWaveFn(s));
      for (double k = 10.0; k < 1e7; k *= 3.0) CHECK(std::abs(t(k)) * k * k <= std::abs(t.prefactor));
    }
  }
}

TEST_CASE("table integral reference values") {
  const TabulatedValue a1 = tabulated_integral({TableIntegral::A1, 1.0, 1.0, 0.5});
  CHECK(a1.closed_form == doctest::Approx(0.301122048203389685).epsilon(1e-15));
  CHECK(std::abs(a1.numeric - a1.closed_form) <= 1e-7);
  const TabulatedValue a2 = tabulated_integral({TableIntegral::A2, 1.0, 1.0, 2.0});
  CHECK(a2.closed_form == doctest::Approx(0.328034509504793965).epsilon(1e-15));
  CHECK(std::abs(a2.numeric - a2.closed_form) <= 1e-7);
}

TEST_CASE("table integrals on random cases per branch") {
  SeededRng rng(41);
  for (TableIntegral which : {TableIntegral::A1, TableIntegral::A2, TableIntegral::A3, TableIntegral::A4}) {
    const bool pv = which == TableIntegral::A3 || which == TableIntegral::A4;
    for (int i = 0; i < 10; ++i) {
      const double c = rng.uniform(0.5, 2.0);
      const double d = rng.uniform(0.5, 2.0);
      const double x = (i % 2) ? c * rng.uniform(0.1, 0.9) : c * rng.uniform(1.1, 3.0);
      const TabulatedValue v = tabulated_integral({which, c, d, x});
      CAPTURE(to_string(which));
      CHECK(std::abs(v.numeric - v.closed_form) <= (pv ? 1e-5 : 1e-7));
      if (pv) CHECK(std::abs(v.numeric - v.alternate) <= 1e-6);
    }
  }
}

TEST_CASE("A3 and A4 branches agree at x = c") {
  for (TableIntegral which : {TableIntegral::A3, TableIntegral::A4}) {
    for (double c : {0.7, 1.0, 1.9}) {
      const TabulatedCase tc{which, c, 1.3, c};
      CHECK(tabulated_closed_form(tc, Branch::Below) == tabulated_closed_form(tc, Branch::Above));
    }
  }
}

TEST_CASE("PV cosine integral: both methods") {
  for (double w : {0.5, 1.0, 3.0}) {
    for (double d : {0.5, 1.0, 2.0}) {
      // PV int_0^inf cos(w k) / (k^2 - d^2) dk = -pi sin(w d) / (2 d)
      const double exact = -std::numbers::pi * std::sin(w * d) / (2.0 * d);
      CHECK(pv_cosine_integral(w, d, PvMethod::SingularitySubtraction) == doctest::Approx(exact).epsilon(1e-9));
      CHECK(pv_cosine_integral(w, d, PvMethod::SymmetricExcision) == doctest::Approx(exact).epsilon(1e-7));
    }
  }
}

TEST_CASE("invalid table inputs") {
  CHECK_THROWS_AS(tabulated_integral({TableIntegral::A1, 0.0, 1.0, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(tabulated_integral({TableIntegral::A4, 1.0, -1.0, 0.5}), std::invalid_argument);
}

TEST_CASE("positive-energy reconstruction does not decay") {
  const NonexistenceDiagnostic d = positive_energy_nonexistence(Coupling(1.0), 1.0);
  REQUIRE(d.window_starts.size() == 5);
  CHECK(d.max_pointwise_error <= 1e-6);
  CHECK(d.min_window_ratio() > 0.5);
  REQUIRE(d.bound_amplitude.size() == 5);
  for (std::size_t j = 1; j < d.bound_amplitude.size(); ++j) {
    const double dx = d.window_starts[j] - d.window_starts[j - 1];
    CHECK(d.bound_amplitude[j] <= d.bound_amplitude[j - 1] * std::exp(-d.bound_xi * dx) * 1.5 + 1e-12);
  }
}

TEST_CASE("repulsive coupling still has a standing-wave reconstruction") {
  const NonexistenceDiagnostic d = positive_energy_nonexistence(Coupling(-1.0), 2.0);
  CHECK(d.bound_xi == 0.0);
  CHECK(d.bound_amplitude.empty());
  CHECK(d.min_window_ratio() > 0.5);
}
