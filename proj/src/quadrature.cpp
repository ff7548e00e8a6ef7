#include "ddelta/quadrature.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <queue>

namespace ddelta {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// QUADPACK qk21 abscissae and weights. Odd indices of kXgk are the Gauss nodes.
constexpr double kXgk[11] = {0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
                             0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
                             0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
                             0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
                             0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
                             0.0};
constexpr double kWgk[11] = {0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
                             0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
                             0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
                             0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
                             0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
                             0.149445554002916905664936468389821};
constexpr double kWg[5] = {0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
                           0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
                           0.295524224714752870173892994651338};

struct WorseFirst {
  bool operator()(const Panel& x, const Panel& y) const { return x.error < y.error; }
};

double tolerance(const QuadratureSpec& spec, double value) {
  return std::max(spec.abs_tol, spec.rel_tol * std::abs(value));
}

double env_or(const char* name, double fallback) {
  const char* raw = std::getenv(name);
  if (raw == nullptr || *raw == '\0') return fallback;
  char* end = nullptr;
  const double v = std::strtod(raw, &end);
  if (end == raw || !(v > 0.0)) return fallback;
  return v;
}

}  // namespace

QuadratureSpec quadrature_spec_from_env(QuadratureSpec base) {
  base.rel_tol = env_or("DDELTA_QUAD_REL_TOL", base.rel_tol);
  base.abs_tol = env_or("DDELTA_QUAD_ABS_TOL", base.abs_tol);
  return base;
}

double value_or_throw(const QuadResult& r, const char* what) {
  if (!r.converged) throw QuadratureError(std::string(what) + ": quadrature did not converge", r.abs_error);
  return r.value;
}

Panel gauss_kronrod21(const Integrand& f, double a, double b, int depth) {
  const double centr = 0.5 * (a + b);
  const double hlgth = 0.5 * (b - a);
  const double dhlgth = std::abs(hlgth);

  double fv1[10];
  double fv2[10];
  const double fc = f(centr);
  double resg = 0.0;
  double resk = kWgk[10] * fc;
  double resabs = std::abs(resk);
  for (int j = 0; j < 10; ++j) {
    const double absc = hlgth * kXgk[j];
    const double f1 = f(centr - absc);
    const double f2 = f(centr + absc);
    fv1[j] = f1;
    fv2[j] = f2;
    resk += kWgk[j] * (f1 + f2);
    resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  const double reskh = resk * 0.5;
  double resasc = kWgk[10] * std::abs(fc - reskh);
  for (int j = 0; j < 10; ++j) resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));

  Panel p;
  p.a = a;
  p.b = b;
  p.depth = depth;
  p.value = resk * hlgth;
  resabs *= dhlgth;
  resasc *= dhlgth;
  double err = std::abs((resk - resg) * hlgth);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double floor = 50.0 * kEps * resabs;
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps) && err <= floor) {
    err = floor;
    p.roundoff_limited = true;
  }
  if (!std::isfinite(p.value)) err = std::numeric_limits<double>::infinity();
  p.error = err;
  return p;
}

QuadResult integrate(const Integrand& f, std::span<const double> points, const QuadratureSpec& spec) {
  QuadResult out;
  if (points.size() < 2) return out;

  std::priority_queue<Panel, std::vector<Panel>, WorseFirst> live;
  std::vector<Panel> settled;
  double value = 0.0;
  double live_err = 0.0;
  double settled_err = 0.0;
  bool depth_limited = false;

  auto admit = [&](const Panel& p) {
    value += p.value;
    if (p.roundoff_limited) {
      settled_err += p.error;
      settled.push_back(p);
    } else {
      live_err += p.error;
      live.push(p);
    }
    out.evaluations += 21;
  };

  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (points[i + 1] != points[i]) admit(gauss_kronrod21(f, points[i], points[i + 1]));
  }

  while (!live.empty() && live_err > tolerance(spec, value)) {
    if (static_cast<int>(live.size() + settled.size()) >= spec.max_panels) break;
    const Panel worst = live.top();
    live.pop();
    live_err -= worst.error;
    value -= worst.value;
    const double mid = 0.5 * (worst.a + worst.b);
    if (worst.depth >= spec.max_depth || mid == worst.a || mid == worst.b) {
      depth_limited = true;
      value += worst.value;
      settled_err += worst.error;
      settled.push_back(worst);
      continue;
    }
    admit(gauss_kronrod21(f, worst.a, mid, worst.depth + 1));
    admit(gauss_kronrod21(f, mid, worst.b, worst.depth + 1));
  }

  // Re-sum in a fixed left-to-right order so the result does not depend on
  // the refinement history.
  double controllable = 0.0;
  while (!live.empty()) {
    controllable += live.top().error;
    settled.push_back(live.top());
    live.pop();
  }
  std::sort(settled.begin(), settled.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  out.value = 0.0;
  out.abs_error = 0.0;
  double depth_err = 0.0;
  for (const Panel& p : settled) {
    out.value += p.value;
    out.abs_error += p.error;
    if (!p.roundoff_limited) depth_err += p.error;
  }
  const double tol = tolerance(spec, out.value);
  out.converged = std::isfinite(out.value) && controllable <= tol && (!depth_limited || depth_err <= tol);
  return out;
}

QuadResult integrate(const Integrand& f, double a, double b, const QuadratureSpec& spec) {
  const double pts[2] = {a, b};
  return integrate(f, std::span<const double>(pts), spec);
}

QuadResult integrate_to_infinity(const Integrand& f, double a, const QuadratureSpec& spec) {
  const Integrand mapped = [&f, a](double t) {
    const double s = 1.0 - t;
    const double v = f(a + t / s);
    return v == 0.0 ? 0.0 : v / (s * s);
  };
  const double pts[] = {0.0, 0.5, 0.9, 0.99, 1.0};
  return integrate(mapped, std::span<const double>(pts), spec);
}

Extrapolation wynn_epsilon(std::span<const double> partial_sums) {
  Extrapolation ex;
  const std::size_t n = partial_sums.size();
  if (n == 0) return ex;
  ex.value = partial_sums.back();
  if (n < 3) {
    ex.change = n == 2 ? std::abs(partial_sums[1] - partial_sums[0]) : std::numeric_limits<double>::infinity();
    return ex;
  }
  // Column k of the epsilon table; even columns hold the accelerated sums.
  std::vector<double> prev(n, 0.0);
  std::vector<double> cur(partial_sums.begin(), partial_sums.end());
  double best = cur.back();
  double best_prev = cur[n - 2];
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<double> next(n - k);
    bool broke = false;
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
      const double diff = cur[i + 1] - cur[i];
      if (diff == 0.0) {
        broke = true;
        break;
      }
      next[i] = prev[i + 1] + 1.0 / diff;
    }
    if (broke) break;
    if (k % 2 == 0) {
      if (next.size() >= 2) {
        best = next.back();
        best_prev = next[next.size() - 2];
      } else {
        best_prev = best;
        best = next.back();
      }
    }
    prev = std::move(cur);
    cur = std::move(next);
    if (cur.size() < 2) break;
  }
  ex.value = best;
  ex.change = std::abs(best - best_prev);
  return ex;
}

QuadResult integrate_fourier(const Integrand& g, Trig kind, double omega, double a, const QuadratureSpec& spec) {
  omega = std::abs(omega);
  if (omega == 0.0) {
    if (kind == Trig::Sin) return {};
    return integrate_to_infinity(g, a, spec);
  }
  const Integrand h = [&g, kind, omega](double k) { return g(k) * trig(kind, omega * k); };
  const double half = std::numbers::pi / omega;
  const double phase = kind == Trig::Sin ? 0.0 : 0.5;
  double m = std::floor(a / half - phase) + 1.0;
  double z = (m + phase) * half;

  // Leading stretch up to the first zero; geometric breakpoints keep a long
  // low-frequency stretch from starting at a single huge panel.
  std::vector<double> lead{a};
  for (double step = 1.0; a + step < z; step *= 2.0) lead.push_back(a + step);
  lead.push_back(z);
  QuadResult out = integrate(h, std::span<const double>(lead), spec);

  std::vector<double> sums{out.value};
  double panel_err = out.abs_error;
  bool ok = out.converged;
  int quiet = 0;
  Extrapolation ex{out.value, std::numeric_limits<double>::infinity()};
  for (int j = 0; j < spec.max_tail_terms; ++j) {
    const double z0 = (m + phase + j) * half;
    const double z1 = z0 + half;
    QuadratureSpec panel_spec = spec;
    panel_spec.abs_tol = spec.abs_tol * 1e-3;
    const QuadResult term = integrate(h, z0, z1, panel_spec);
    out.evaluations += term.evaluations;
    panel_err += term.abs_error;
    ok = ok && term.converged;
    sums.push_back(sums.back() + term.value);

    const std::size_t window = std::min<std::size_t>(sums.size(), 24);
    ex = wynn_epsilon(std::span<const double>(sums).last(window));
    const double tol = tolerance(spec, ex.value);
    if (std::abs(term.value) <= 1e-3 * spec.abs_tol || (sums.size() >= 6 && ex.change <= tol)) {
      if (++quiet >= 2) break;
    } else {
      quiet = 0;
    }
  }
  out.value = ex.value;
  out.abs_error = panel_err + ex.change;
  out.converged = ok && quiet >= 2;
  return out;
}

}  // namespace ddelta
