#include "ddelta/transform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ddelta/quantize.hpp"

namespace ddelta {
namespace {

const double kSqrt2OverPi = std::sqrt(2.0 / std::numbers::pi);

constexpr int kMaxHalfPeriodPanels = 2000;

double locate_cutoff(const HalfLineFunction& fn, const QuadratureSpec& q) {
  double x = 1.0;
  if (!fn.breakpoints.empty()) x = std::max(x, fn.breakpoints.back());
  for (int i = 0; i < 64; ++i, x *= 2.0) {
    double envelope = 0.0;
    for (int j = 0; j <= 8; ++j) envelope = std::max(envelope, std::abs(fn.f(x * (1.0 + j / 8.0))));
    if (envelope * x < 1e-2 * q.abs_tol) return x;
  }
  throw QuadratureError("transform: integrand does not decay", x);
}

// I(omega) = int_0^inf cos(omega k) / (k^2 + s^2) dk
double lorentzian_cosine(double omega, double s, const QuadratureSpec& q) {
  const double s2 = s * s;
  const QuadResult r = integrate_fourier([s2](double k) { return 1.0 / (k * k + s2); }, Trig::Cos, omega, 0.0, q);
  return value_or_throw(r, "lorentzian cosine integral");
}

double pv_by_subtraction(double omega, double d, const QuadratureSpec& q) {
  const double d2 = d * d;
  // cos(wk) - cos(wd) written as a product so the removable singularity at
  // k = d does not lose digits.
  const Integrand regular = [omega, d, d2](double k) {
    const double num = -2.0 * std::sin(0.5 * omega * (k + d)) * std::sin(0.5 * omega * (k - d));
    return num / (k * k - d2);
  };
  const double pts[] = {0.0, d, 2.0 * d};
  double total = value_or_throw(integrate(regular, std::span<const double>(pts), q), "pv near part");
  // PV int_0^{2d} dk / (k^2 - d^2) = ln(1/3) / (2d)
  total += std::cos(omega * d) * std::log(1.0 / 3.0) / (2.0 * d);
  const QuadResult tail = integrate_fourier([d2](double k) { return 1.0 / (k * k - d2); }, Trig::Cos, omega, 2.0 * d, q);
  return total + value_or_throw(tail, "pv tail");
}

double pv_by_excision(double omega, double d, const QuadratureSpec& q) {
  const double d2 = d * d;
  const Integrand plain = [omega, d2](double k) { return std::cos(omega * k) / (k * k - d2); };
  // F(d + u) + F(d - u): the 1/u parts cancel, leaving a bounded integrand.
  const Integrand folded = [omega, d](double u) {
    const double num = std::cos(omega * (d + u)) * (2.0 * d - u) - std::cos(omega * (d - u)) * (2.0 * d + u);
    return num / (u * (4.0 * d * d - u * u));
  };
  auto at = [&](double h) {
    double v = value_or_throw(integrate(plain, 0.0, d - h, q), "pv left");
    v += value_or_throw(integrate(folded, 0.0, h, q), "pv excised");
    const QuadResult tail = integrate_fourier([d2](double k) { return 1.0 / (k * k - d2); }, Trig::Cos, omega, d + h, q);
    return v + value_or_throw(tail, "pv right");
  };
  double h = 0.5 * d;
  double prev = at(h);
  for (int i = 0; i < 8; ++i) {
    h *= 0.5;
    const double cur = at(h);
    if (std::abs(cur - prev) <= std::max(q.abs_tol, q.rel_tol * std::abs(cur)) * 10.0) return cur;
    prev = cur;
  }
  return prev;
}

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(name) + " must be positive");
}

}  // namespace

std::string_view to_string(TransformKind k) noexcept { return k == TransformKind::Sine ? "sine" : "cosine"; }

TransformKind transform_kind_for(Parity p) noexcept {
  return p == Parity::Odd ? TransformKind::Sine : TransformKind::Cosine;
}

double AnalyticTransform::operator()(double k) const noexcept {
  const double s = xi / halfsep;
  return prefactor * trig(trig_of(kind), k * halfsep) / (k * k + s * s);
}

AnalyticTransform analytic_transform(const PiecewiseWaveFn& w) {
  AnalyticTransform t;
  t.kind = transform_kind_for(w.parity());
  t.prefactor = kSqrt2OverPi * w.value_at_halfsep() / w.coupling();
  t.xi = w.xi();
  return t;
}

HalfLineFunction half_line(const PiecewiseWaveFn& w) {
  return {[w](double x) { return w(x); }, {1.0}, tail_cutoff(w.xi())};
}

double fourier_transform(TransformKind kind, const HalfLineFunction& fn, double k, const QuadratureSpec& q) {
  if (!(k >= 0.0)) throw std::invalid_argument("transform wavenumber must be >= 0");
  if (kind == TransformKind::Sine && k == 0.0) return 0.0;
  const double cutoff = fn.cutoff > 0.0 ? fn.cutoff : locate_cutoff(fn, q);

  std::vector<double> pts{0.0, cutoff};
  for (double b : fn.breakpoints) {
    if (b > 0.0 && b < cutoff) pts.push_back(b);
  }
  if (k > 0.0) {
    double spacing = std::numbers::pi / k;
    const double count = cutoff / spacing;
    if (count > kMaxHalfPeriodPanels) spacing *= std::ceil(count / kMaxHalfPeriodPanels);
    for (double x = spacing; x < cutoff; x += spacing) pts.push_back(x);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  const Trig tk = trig_of(kind);
  const Integrand integrand = [&fn, tk, k](double x) { return fn.f(x) * trig(tk, k * x); };
  return kSqrt2OverPi * value_or_throw(integrate(integrand, pts, q), "fourier transform");
}

double sine_transform(const HalfLineFunction& f, double k, const QuadratureSpec& q) {
  return fourier_transform(TransformKind::Sine, f, k, q);
}

double cosine_transform(const HalfLineFunction& f, double k, const QuadratureSpec& q) {
  return fourier_transform(TransformKind::Cosine, f, k, q);
}

double inverse_reconstruct(const AnalyticTransform& t, double x, const QuadratureSpec& q) {
  require_positive(x, "x");
  const double l = t.halfsep;
  const double s = t.xi / l;
  // trig(kL) trig(kx) = (cos k(x - L) +- cos k(x + L)) / 2
  const double near = lorentzian_cosine(std::abs(x - l), s, q);
  const double far = lorentzian_cosine(x + l, s, q);
  const double combo = t.kind == TransformKind::Cosine ? near + far : near - far;
  return kSqrt2OverPi * t.prefactor * 0.5 * combo;
}

double transform_norm(const AnalyticTransform& t, const QuadratureSpec& q) {
  const double s2 = (t.xi / t.halfsep) * (t.xi / t.halfsep);
  const Integrand g = [s2](double k) {
    const double den = k * k + s2;
    return 1.0 / (den * den);
  };
  // trig^2(kL) = (1 +- cos 2kL) / 2
  const double flat = value_or_throw(integrate_to_infinity(g, 0.0, q), "transform norm");
  const double osc = value_or_throw(integrate_fourier(g, Trig::Cos, 2.0 * t.halfsep, 0.0, q), "transform norm");
  const double sum = t.kind == TransformKind::Cosine ? flat + osc : flat - osc;
  return t.prefactor * t.prefactor * 0.5 * sum;
}

double parseval_residual(const PiecewiseWaveFn& w, const AnalyticTransform& t, const QuadratureSpec& q) {
  const double nx = w.half_axis_norm();
  return std::abs(nx - transform_norm(t, q)) / nx;
}

std::string_view to_string(TableIntegral t) noexcept {
  switch (t) {
    case TableIntegral::A1: return "A1";
    case TableIntegral::A2: return "A2";
    case TableIntegral::A3: return "A3";
    case TableIntegral::A4: return "A4";
  }
  return "?";
}

double tabulated_closed_form(const TabulatedCase& tc, Branch b) {
  const double c = tc.c;
  const double d = tc.d;
  const double x = tc.x;
  const double scale = std::numbers::pi / (2.0 * d);
  const bool below = b == Branch::Below;
  switch (tc.which) {
    case TableIntegral::A1:
      return scale * (below ? std::exp(-c * d) * std::sinh(d * x) : std::sinh(c * d) * std::exp(-d * x));
    case TableIntegral::A2:
      return scale * (below ? std::exp(-c * d) * std::cosh(d * x) : std::cosh(c * d) * std::exp(-d * x));
    case TableIntegral::A3:
      return scale * (below ? std::cos(c * d) * std::sin(d * x) : std::sin(c * d) * std::cos(d * x));
    case TableIntegral::A4:
      return -scale * (below ? std::sin(c * d) * std::cos(d * x) : std::cos(c * d) * std::sin(d * x));
  }
  return 0.0;
}

double tabulated_closed_form(const TabulatedCase& tc) {
  return tabulated_closed_form(tc, tc.x <= tc.c ? Branch::Below : Branch::Above);
}

double pv_cosine_integral(double omega, double d, PvMethod method, const QuadratureSpec& q) {
  require_positive(d, "d");
  omega = std::abs(omega);
  return method == PvMethod::SingularitySubtraction ? pv_by_subtraction(omega, d, q) : pv_by_excision(omega, d, q);
}

TabulatedValue tabulated_integral(const TabulatedCase& tc, const QuadratureSpec& q) {
  require_positive(tc.c, "c");
  require_positive(tc.d, "d");
  require_positive(tc.x, "x");
  const double near_w = std::abs(tc.x - tc.c);
  const double far_w = tc.x + tc.c;
  // sin sin = (cos(near) - cos(far)) / 2, cos cos = (cos(near) + cos(far)) / 2
  const bool sine_pair = tc.which == TableIntegral::A1 || tc.which == TableIntegral::A3;
  auto combine = [sine_pair](double n, double f) { return 0.5 * (sine_pair ? n - f : n + f); };

  TabulatedValue out;
  out.closed_form = tabulated_closed_form(tc);
  if (tc.which == TableIntegral::A1 || tc.which == TableIntegral::A2) {
    out.numeric = combine(lorentzian_cosine(near_w, tc.d, q), lorentzian_cosine(far_w, tc.d, q));
    out.alternate = out.numeric;
    return out;
  }
  out.numeric = combine(pv_cosine_integral(near_w, tc.d, PvMethod::SingularitySubtraction, q),
                        pv_cosine_integral(far_w, tc.d, PvMethod::SingularitySubtraction, q));
  out.alternate = combine(pv_cosine_integral(near_w, tc.d, PvMethod::SymmetricExcision, q),
                          pv_cosine_integral(far_w, tc.d, PvMethod::SymmetricExcision, q));
  return out;
}

double pv_reconstruct(TransformKind kind, double a, double kappa, double x, PvMethod method, const QuadratureSpec& q) {
  require_positive(kappa, "kappa");
  require_positive(x, "x");
  const double near = pv_cosine_integral(x - 1.0, kappa, method, q);
  const double far = pv_cosine_integral(x + 1.0, kappa, method, q);
  const double combo = kind == TransformKind::Cosine ? near + far : near - far;
  // sqrt(2/pi) * [sqrt(2/pi) phi(L) / a] * combo / 2 with phi(L) = 1
  return 2.0 / std::numbers::pi / a * 0.5 * combo;
}

double pv_reconstruct_closed_form(TransformKind kind, double a, double kappa, double x) {
  const TableIntegral which = kind == TransformKind::Cosine ? TableIntegral::A4 : TableIntegral::A3;
  return 2.0 / std::numbers::pi / a * tabulated_closed_form({which, 1.0, kappa, x});
}

double NonexistenceDiagnostic::min_window_ratio() const {
  double r = std::numeric_limits<double>::infinity();
  for (const auto* seq : {&cosine_amplitude, &sine_amplitude}) {
    for (std::size_t j = 0; j + 1 < seq->size(); ++j) r = std::min(r, (*seq)[j + 1] / (*seq)[j]);
  }
  return r;
}

NonexistenceDiagnostic positive_energy_nonexistence(Coupling a, double kappa, const NonexistenceSpec& spec) {
  require_positive(kappa, "kappa");
  NonexistenceDiagnostic out;
  out.a = a.value();
  out.kappa = kappa;

  const bool has_bound = a.attractive();
  AnalyticTransform bound_t;
  if (has_bound) {
    const double xi = solve_even(a);
    bound_t = analytic_transform(PiecewiseWaveFn(BoundState{Parity::Even, xi, a, energy_from_xi(xi)}));
    out.bound_xi = xi;
  }

  double x0 = spec.first_window;
  for (int j = 0; j <= spec.doublings; ++j, x0 *= 2.0) {
    const double width = x0;
    const int n = std::max(spec.min_samples,
                           static_cast<int>(std::ceil(width * kappa / (2.0 * std::numbers::pi) * spec.samples_per_period)));
    double amp_c = 0.0;
    double amp_s = 0.0;
    double amp_b = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double x = x0 + width * static_cast<double>(i) / n;
      const double vc = pv_reconstruct(TransformKind::Cosine, out.a, kappa, x, PvMethod::SingularitySubtraction, spec.quad);
      const double vs = pv_reconstruct(TransformKind::Sine, out.a, kappa, x, PvMethod::SingularitySubtraction, spec.quad);
      amp_c = std::max(amp_c, std::abs(vc));
      amp_s = std::max(amp_s, std::abs(vs));
      out.max_pointwise_error =
          std::max({out.max_pointwise_error,
                    std::abs(vc - pv_reconstruct_closed_form(TransformKind::Cosine, out.a, kappa, x)),
                    std::abs(vs - pv_reconstruct_closed_form(TransformKind::Sine, out.a, kappa, x))});
      if (has_bound && i % std::max(1, n / spec.min_samples) == 0) {
        amp_b = std::max(amp_b, std::abs(inverse_reconstruct(bound_t, x, spec.quad)));
      }
    }
    out.window_starts.push_back(x0);
    out.cosine_amplitude.push_back(amp_c);
    out.sine_amplitude.push_back(amp_s);
    if (has_bound) out.bound_amplitude.push_back(amp_b);
  }
  return out;
}

std::vector<CorpusFunction> differentiation_corpus() {
  auto g = [](double x) { return std::exp(-0.5 * x * x); };
  auto gs = [](double x) { return std::exp(-0.5 * (x - 1.0) * (x - 1.0)); };
  std::vector<CorpusFunction> c;
  c.push_back({"gauss", g, [g](double x) { return -x * g(x); }, [g](double x) { return (x * x - 1.0) * g(x); }});
  c.push_back({"x_gauss", [g](double x) { return x * g(x); }, [g](double x) { return (1.0 - x * x) * g(x); },
               [g](double x) { return (x * x * x - 3.0 * x) * g(x); }});
  c.push_back({"x2_gauss", [g](double x) { return x * x * g(x); },
               [g](double x) { return (2.0 * x - x * x * x) * g(x); },
               [g](double x) { return (x * x * x * x - 5.0 * x * x + 2.0) * g(x); }});
  c.push_back({"one_plus_x_gauss", [g](double x) { return (1.0 + x) * g(x); },
               [g](double x) { return (1.0 - x - x * x) * g(x); },
               [g](double x) { return (x * x * x + x * x - 3.0 * x - 1.0) * g(x); }});
  c.push_back({"shifted_gauss", gs, [gs](double x) { return -(x - 1.0) * gs(x); },
               [gs](double x) { return ((x - 1.0) * (x - 1.0) - 1.0) * gs(x); }});
  return c;
}

double differentiation_residual(const CorpusFunction& fn, TransformKind kind, double k, const QuadratureSpec& q) {
  const double lhs = fourier_transform(kind, {fn.d2, {}, 0.0}, k, q);
  const double base = fourier_transform(kind, {fn.f, {}, 0.0}, k, q);
  const double boundary = kind == TransformKind::Sine ? kSqrt2OverPi * k * fn.f(0.0) : -kSqrt2OverPi * fn.d1(0.0);
  return std::abs(lhs - (-k * k * base + boundary));
}

}  // namespace ddelta
