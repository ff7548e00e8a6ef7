#include "ddelta/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ddelta/quantize.hpp"

namespace ddelta {

void validate(const WellConfig& cfg) {
  if (!std::isfinite(cfg.theta) || !std::isfinite(cfg.v0) || !std::isfinite(cfg.halfsep)) {
    throw std::invalid_argument("well parameters must be finite");
  }
  if (!(cfg.halfsep > 0.0)) throw std::invalid_argument("halfsep must be positive");
  if (!(cfg.theta > 0.0 && cfg.theta < 2.0 * cfg.halfsep)) {
    throw std::invalid_argument("well width must satisfy 0 < theta < 2L");
  }
}

WellConfig well_for_coupling(Coupling a, double theta) { return {theta, 1.0 / (a.value() * theta), 1.0}; }

double matching_determinant(const WellConfig& cfg, Parity p, double energy) {
  const double q = std::sqrt(-energy);
  const double inner = cfg.halfsep - 0.5 * cfg.theta;
  // Free region, scaled by 1 / cosh(q inner) so deep levels do not overflow.
  double phi = 1.0;
  double dphi = 0.0;
  const double t = std::tanh(q * inner);
  if (p == Parity::Even) {
    dphi = q * t;
  } else {
    phi = q > 0.0 ? t : inner;  // q -> 0: sinh(qx)/q -> x
    dphi = q > 0.0 ? q : 1.0;
  }
  // Inside the well: k^2 = v0 + E > 0.
  const double k = std::sqrt(cfg.v0 + energy);
  const double c = std::cos(k * cfg.theta);
  const double s = std::sin(k * cfg.theta);
  const double sk = k > 0.0 ? s / k : cfg.theta;
  const double phi_out = c * phi + sk * dphi;
  const double dphi_out = -k * s * phi + c * dphi;
  return dphi_out + q * phi_out;
}

std::vector<WellLevel> square_well_spectrum(const WellConfig& cfg, const WellScan& scan) {
  validate(cfg);
  std::vector<WellLevel> levels;
  if (!(cfg.v0 > 0.0)) return levels;
  const int n = std::max(2, scan.points);

  std::vector<double> grid;
  grid.push_back(-cfg.v0 * (1.0 - 1e-12));
  for (int j = 1; j < n; ++j) grid.push_back(-cfg.v0 + cfg.v0 * static_cast<double>(j) / n);
  grid.push_back(-cfg.v0 * 1e-12);

  for (Parity p : {Parity::Even, Parity::Odd}) {
    auto det = [&](double e) { return matching_determinant(cfg, p, e); };
    double prev_e = grid.front();
    double prev_d = det(prev_e);
    for (std::size_t j = 1; j < grid.size(); ++j) {
      const double e = grid[j];
      const double d = det(e);
      if ((prev_d < 0.0) != (d < 0.0)) {
        WellLevel lv;
        lv.parity = p;
        lv.bracket_lo = prev_e;
        lv.bracket_hi = e;
        lv.det_lo = prev_d;
        lv.det_hi = d;
        double lo = prev_e;
        double hi = e;
        double dlo = prev_d;
        while (hi - lo > scan.energy_tol * std::max(1.0, std::abs(lo))) {
          const double mid = 0.5 * (lo + hi);
          if (mid <= lo || mid >= hi) break;
          const double dm = det(mid);
          if ((dm < 0.0) == (dlo < 0.0)) {
            lo = mid;
            dlo = dm;
          } else {
            hi = mid;
          }
        }
        lv.energy = 0.5 * (lo + hi);
        lv.residual = std::abs(det(lv.energy));
        levels.push_back(lv);
      }
      prev_e = e;
      prev_d = d;
    }
  }
  std::sort(levels.begin(), levels.end(), [](const WellLevel& x, const WellLevel& y) { return x.energy < y.energy; });
  return levels;
}

std::optional<double> LimitRow::gap(Parity p) const {
  const auto& w = p == Parity::Even ? well_even : well_odd;
  const auto& d = p == Parity::Even ? delta_even : delta_odd;
  if (!w || !d) return std::nullopt;
  return std::abs(*w - *d);
}

bool LimitStudy::converging(Parity p) const {
  if (rows.size() < 2) return false;
  std::vector<double> gaps;
  for (const auto& r : rows) {
    const auto g = r.gap(p);
    if (!g) return false;
    gaps.push_back(*g);
  }
  for (std::size_t i = 1; i < gaps.size(); ++i) {
    if (gaps[i] > 1.05 * gaps[i - 1]) return false;
  }
  return gaps.back() < 0.25 * gaps.front();
}

LimitStudy delta_limit_study(double alpha, double halfsep, const std::vector<double>& thetas, const WellScan& scan) {
  if (thetas.empty()) throw std::invalid_argument("need at least one theta");
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    if (!(thetas[i] > 0.0 && thetas[i] < 2.0 * halfsep)) throw std::invalid_argument("theta must lie in (0, 2L)");
    if (i > 0 && !(thetas[i] < thetas[i - 1])) throw std::invalid_argument("thetas must be strictly decreasing");
  }
  LimitStudy study;
  study.alpha = alpha;
  study.halfsep = halfsep;

  // Delta spectrum: a = 1 / (alpha L), E = -xi^2 / L^2.
  const Coupling a(1.0 / (alpha * halfsep));
  const Spectrum spec = spectrum(a, EnergyScale(1.0 / (halfsep * halfsep)));

  for (double theta : thetas) {
    LimitRow row;
    row.theta = theta;
    row.v0 = alpha / theta;
    for (const auto& s : spec.states) (s.parity == Parity::Even ? row.delta_even : row.delta_odd) = s.energy;
    for (const auto& lv : square_well_spectrum({theta, row.v0, halfsep}, scan)) {
      auto& slot = lv.parity == Parity::Even ? row.well_even : row.well_odd;
      if (!slot) slot = lv.energy;  // lowest level of each parity
    }
    study.rows.push_back(row);
  }
  return study;
}

// ---- Finite-difference grid -----------------------------------------------

namespace {

struct Tridiagonal {
  std::vector<double> diag;
  double off = 0.0;  // constant off-diagonal
};

Tridiagonal grid_hamiltonian(Coupling a, const GridSpec& g) {
  validate(g);
  const double h = g.spacing();
  const int m = g.n - 2;  // interior unknowns
  Tridiagonal t;
  t.diag.assign(m, 2.0 / (h * h));
  t.off = -1.0 / (h * h);

  // Each delta becomes the nodes within delta_width / 2 of +-1, with the
  // discrete weight normalized to exactly 1 / a.
  const double half = 0.5 * g.delta_width + 1e-9 * h;
  for (double centre : {-1.0, 1.0}) {
    std::vector<int> nodes;
    for (int i = 0; i < m; ++i) {
      const double x = -g.x_max + (i + 1) * h;
      if (std::abs(x - centre) <= half) nodes.push_back(i);
    }
    const double depth = 1.0 / (a.value() * static_cast<double>(nodes.size()) * h);
    for (int i : nodes) t.diag[i] -= depth;
  }
  return t;
}

int sturm_count(const Tridiagonal& t, double lambda) {
  // Negative pivots of the LDL^T factorization of T - lambda I.
  const double off2 = t.off * t.off;
  int count = 0;
  double d = 1.0;
  for (std::size_t i = 0; i < t.diag.size(); ++i) {
    d = (t.diag[i] - lambda) - (i == 0 ? 0.0 : off2 / d);
    if (d == 0.0) d = -1e-300;
    if (d < 0.0) ++count;
  }
  return count;
}

// Solves (T - sigma I) y = rhs by the Thomas algorithm.
std::vector<double> shifted_solve(const Tridiagonal& t, double sigma, const std::vector<double>& rhs) {
  const std::size_t m = t.diag.size();
  std::vector<double> cp(m);
  std::vector<double> dp(m);
  double denom = t.diag[0] - sigma;
  cp[0] = t.off / denom;
  dp[0] = rhs[0] / denom;
  for (std::size_t i = 1; i < m; ++i) {
    denom = (t.diag[i] - sigma) - t.off * cp[i - 1];
    if (denom == 0.0) denom = 1e-300;
    cp[i] = t.off / denom;
    dp[i] = (rhs[i] - t.off * dp[i - 1]) / denom;
  }
  std::vector<double> y(m);
  y[m - 1] = dp[m - 1];
  for (std::size_t i = m - 1; i-- > 0;) y[i] = dp[i] - cp[i] * y[i + 1];
  return y;
}

double normalize(std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  s = std::sqrt(s);
  for (double& x : v) x /= s;
  return s;
}

}  // namespace

void validate(const GridSpec& g) {
  if (g.n < 3) throw std::invalid_argument("grid needs at least 3 points");
  if (!(g.x_max > 1.0 + g.delta_width)) throw std::invalid_argument("grid box must contain both deltas");
  if (!(g.delta_width >= 2.0 * g.spacing() * (1.0 - 1e-9))) {
    throw std::invalid_argument("delta_width must span at least two grid spacings");
  }
}

int grid_eigenvalue_count_below(Coupling a, const GridSpec& g, double lambda) {
  return sturm_count(grid_hamiltonian(a, g), lambda);
}

std::vector<GridLevel> grid_eigensolve(Coupling a, const GridSpec& g) {
  const Tridiagonal t = grid_hamiltonian(a, g);
  const int bound = sturm_count(t, 0.0);
  std::vector<GridLevel> levels;
  if (bound == 0) return levels;

  double lower = 0.0;
  for (double d : t.diag) lower = std::min(lower, d - 2.0 * std::abs(t.off));

  const std::size_t m = t.diag.size();
  for (int j = 0; j < bound; ++j) {
    // j-th eigenvalue: smallest lambda with count(lambda) > j.
    double lo = lower;
    double hi = 0.0;
    for (int it = 0; it < 200 && hi - lo > 1e-13 * std::max(1.0, std::abs(lo)); ++it) {
      const double mid = 0.5 * (lo + hi);
      if (sturm_count(t, mid) > j) hi = mid;
      else lo = mid;
    }
    const double lambda = 0.5 * (lo + hi);

    std::vector<double> y(m);
    for (std::size_t i = 0; i < m; ++i) y[i] = 1.0 + 0.01 * std::sin(0.37 * static_cast<double>(i));
    normalize(y);
    const double sigma = lambda + 1e-9 * std::max(1.0, std::abs(lambda));
    double resid = 1.0;
    for (int it = 0; it < 8 && resid > 1e-8; ++it) {
      y = shifted_solve(t, sigma, y);
      normalize(y);
      resid = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        double ty = t.diag[i] * y[i];
        if (i > 0) ty += t.off * y[i - 1];
        if (i + 1 < m) ty += t.off * y[i + 1];
        resid += (ty - lambda * y[i]) * (ty - lambda * y[i]);
      }
      resid = std::sqrt(resid) / std::max(1.0, std::abs(lambda));
    }
    if (resid > 1e-6) throw std::runtime_error("inverse iteration did not converge for grid level");

    double sym = 0.0;
    for (std::size_t i = 0; i < m; ++i) sym += y[i] * y[m - 1 - i];
    levels.push_back({sym > 0.0 ? Parity::Even : Parity::Odd, lambda});
  }
  return levels;
}

}  // namespace ddelta
