#include "ddelta/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "ddelta/eigen.hpp"
#include "ddelta/output.hpp"
#include "ddelta/quantize.hpp"
#include "ddelta/transform.hpp"
#include "ddelta/verify.hpp"

namespace ddelta {
namespace {

constexpr int kSchemaVersion = 1;

struct PhysicalFlags {
  std::optional<double> hbar, mass, alpha, halfsep;
  bool any() const { return hbar || mass || alpha || halfsep; }
  PhysicalParams resolve() const {
    PhysicalParams p;
    if (hbar) p.hbar = *hbar;
    if (mass) p.mass = *mass;
    if (alpha) p.alpha = *alpha;
    if (halfsep) p.halfsep = *halfsep;
    return p;
  }
};

void add_common(CLI::App* sub, RunConfig& cfg, std::string& format) {
  sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("-o,--output", cfg.output, "Output file (default stdout)");
}

CLI::Option* add_coupling(CLI::App* sub, RunConfig& cfg, PhysicalFlags& phys, bool repeatable) {
  CLI::Option* a = sub->add_option("--a", cfg.a_values, "Dimensionless coupling a = hbar^2 / (2 m alpha L)");
  if (!repeatable) a->expected(1);
  CLI::Option* opts[] = {
      sub->add_option("--hbar", phys.hbar, "Reduced Planck constant"),
      sub->add_option("--mass", phys.mass, "Particle mass"),
      sub->add_option("--alpha", phys.alpha, "Delta strength (energy x length)"),
      sub->add_option("--halfsep", phys.halfsep, "Half the separation L between the deltas"),
  };
  for (CLI::Option* o : opts) a->excludes(o);
  return a;
}

void add_quad(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--rel-tol", cfg.quad.rel_tol, "Quadrature relative tolerance");
  sub->add_option("--abs-tol", cfg.quad.abs_tol, "Quadrature absolute tolerance");
}

Coupling coupling_of(const RunConfig& cfg) {
  if (cfg.physical) {
    validate(*cfg.physical);
    return coupling_from_physical(*cfg.physical);
  }
  if (cfg.a_values.empty()) throw std::invalid_argument("a coupling is required: pass --a or physical parameters");
  return Coupling(cfg.a_values.front());
}

Table spectrum_table(const RunConfig& cfg) {
  const Coupling a = coupling_of(cfg);
  Table t{"spectrum", kSchemaVersion, {"parity", "xi", "energy_over_e0", "residual"}, {}};
  for (const auto& s : spectrum(a).states) {
    t.add({std::string(to_string(s.parity)), s.xi, -s.xi * s.xi, quantization_residual(s.parity, a.value(), s.xi)});
  }
  return t;
}

Table wavefn_table(const RunConfig& cfg) {
  if (cfg.samples < 2) throw std::invalid_argument("--samples must be at least 2");
  if (!(cfg.x_min < cfg.x_max)) throw std::invalid_argument("--x-min must be below --x-max");
  const Coupling a = coupling_of(cfg);
  Table t{"wavefn", kSchemaVersion, {"parity", "x", "phi"}, {}};
  for (const auto& s : spectrum(a).states) {
    const PiecewiseWaveFn w(s);
    for (int i = 0; i < cfg.samples; ++i) {
      const double x = cfg.x_min + (cfg.x_max - cfg.x_min) * i / (cfg.samples - 1);
      t.add({std::string(to_string(s.parity)), x, w(x)});
    }
  }
  return t;
}

Table curves_table(const RunConfig& cfg) {
  std::vector<double> as = cfg.a_values;
  if (cfg.physical) {
    validate(*cfg.physical);
    as = {coupling_from_physical(*cfg.physical).value()};
  }
  if (as.empty()) as = {1.5, 0.25};
  const CurveTable c = quantization_curves(cfg.xi_max, cfg.n, as);
  Table t{"curves", kSchemaVersion, {"xi", "even_rhs", "odd_rhs"}, {}};
  for (double a : as) t.columns.push_back("line_a=" + format_number(a));
  for (std::size_t i = 0; i < c.xi.size(); ++i) {
    std::vector<Cell> row{c.xi[i], c.even_rhs[i], c.odd_rhs[i]};
    for (const auto& line : c.lines) row.emplace_back(line[i]);
    t.add(std::move(row));
  }
  return t;
}

Cell maybe(const std::optional<double>& v) { return v ? Cell(*v) : Cell(std::monostate{}); }

int limit_study(const RunConfig& cfg, Table& t) {
  const Coupling a = coupling_of(cfg);
  if (!a.attractive()) throw std::invalid_argument("limit-study needs an attractive coupling (a > 0)");
  const LimitStudy study = delta_limit_study(1.0 / a.value(), 1.0, cfg.thetas);
  t = Table{"limit-study", kSchemaVersion, {"theta", "v0", "parity", "e_well", "e_delta", "gap"}, {}};
  for (const auto& r : study.rows) {
    t.add({r.theta, r.v0, "even", maybe(r.well_even), maybe(r.delta_even), maybe(r.gap(Parity::Even))});
    t.add({r.theta, r.v0, "odd", maybe(r.well_odd), maybe(r.delta_odd), maybe(r.gap(Parity::Odd))});
  }
  int status = kExitOk;
  const Spectrum sp = spectrum(a);
  for (const auto& s : sp.states) {
    if (!study.converging(s.parity)) status = kExitCheckFailed;
  }
  return status;
}

int integrals(const RunConfig& cfg, Table& t, std::ostream& err) {
  if (cfg.cases < 1) throw std::invalid_argument("--cases must be positive");
  t = Table{"integrals", kSchemaVersion, {"case", "c", "d", "x", "numeric", "closed_form", "abs_diff"}, {}};
  SeededRng rng(cfg.seed);
  int status = kExitOk;
  for (TableIntegral which : {TableIntegral::A1, TableIntegral::A2, TableIntegral::A3, TableIntegral::A4}) {
    const bool pv = which == TableIntegral::A3 || which == TableIntegral::A4;
    const double limit = pv ? 1e-5 : 1e-7;
    for (Branch b : {Branch::Below, Branch::Above}) {
      for (int i = 0; i < cfg.cases; ++i) {
        const double c = rng.uniform(0.5, 2.0);
        const double d = rng.uniform(0.5, 2.0);
        const double x = b == Branch::Below ? c * rng.uniform(0.1, 0.9) : c * rng.uniform(1.1, 3.0);
        const TabulatedValue v = tabulated_integral({which, c, d, x}, cfg.quad);
        const double diff = std::abs(v.numeric - v.closed_form);
        t.add({std::string(to_string(which)), c, d, x, v.numeric, v.closed_form, diff});
        if (!(diff <= limit)) {
          err << to_string(which) << " at c=" << c << " d=" << d << " x=" << x << ": |diff| " << diff
              << " exceeds " << limit << '\n';
          status = kExitCheckFailed;
        }
      }
    }
  }
  return status;
}

int verify(const RunConfig& cfg, Table& t, std::ostream& err) {
  validate(cfg.grid);
  const auto results = run_verification({cfg.seed, cfg.quad, cfg.grid});
  t = Table{"verify", kSchemaVersion, {"check", "status", "value", "threshold"}, {}};
  int failed = 0;
  for (const auto& r : results) {
    t.add({r.name, r.passed ? "PASS" : "FAIL", r.value, r.threshold});
    if (!r.passed) {
      ++failed;
      err << "FAIL " << r.name << ": " << r.value << " (threshold " << r.threshold << ")\n";
    }
  }
  err << results.size() - failed << "/" << results.size() << " checks passed\n";
  return failed ? kExitCheckFailed : kExitOk;
}

}  // namespace

ParseResult parse_flags(int argc, const char* const* argv) {
  RunConfig cfg;
  cfg.quad = quadrature_spec_from_env();
  PhysicalFlags phys;
  std::string format = "csv";

  CLI::App app{"Bound states of the symmetric double-delta well", "ddelta"};
  app.require_subcommand(1, 1);

  auto* spectrum_cmd = app.add_subcommand("spectrum", "Bound-state decay constants and energies");
  add_coupling(spectrum_cmd, cfg, phys, false);

  auto* wavefn_cmd = app.add_subcommand("wavefn", "Sample the normalized eigenfunctions");
  add_coupling(wavefn_cmd, cfg, phys, false);
  wavefn_cmd->add_option("--x-min", cfg.x_min, "First sample, in units of L");
  wavefn_cmd->add_option("--x-max", cfg.x_max, "Last sample, in units of L");
  wavefn_cmd->add_option("--samples", cfg.samples, "Samples per state");

  auto* curves_cmd = app.add_subcommand("curves", "Both sides of the quantization conditions");
  add_coupling(curves_cmd, cfg, phys, true);
  curves_cmd->add_option("--xi-max", cfg.xi_max, "Largest xi");
  curves_cmd->add_option("--n", cfg.n, "Number of xi samples");

  auto* verify_cmd = app.add_subcommand("verify", "Run the seeded invariant suite");
  verify_cmd->add_option("--seed", cfg.seed, "Seed for the randomized checks");
  verify_cmd->add_option("--grid-x-max", cfg.grid.x_max, "Finite-difference box half-width");
  verify_cmd->add_option("--grid-n", cfg.grid.n, "Finite-difference grid points");
  verify_cmd->add_option("--grid-width", cfg.grid.delta_width, "Width each delta is spread over");
  add_quad(verify_cmd, cfg);

  auto* limit_cmd = app.add_subcommand("limit-study", "Square-well pair converging to the deltas");
  add_coupling(limit_cmd, cfg, phys, false);
  limit_cmd->add_option("--theta", cfg.thetas, "Well widths, strictly decreasing");

  auto* integrals_cmd = app.add_subcommand("integrals", "Table integrals against quadrature");
  integrals_cmd->add_option("--seed", cfg.seed, "Seed for the sampled cases");
  integrals_cmd->add_option("--cases", cfg.cases, "Cases per integral and branch");
  add_quad(integrals_cmd, cfg);

  for (CLI::App* sub : {spectrum_cmd, wavefn_cmd, curves_cmd, verify_cmd, limit_cmd, integrals_cmd}) {
    add_common(sub, cfg, format);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    return {std::nullopt, kExitOk, app.help()};
  } catch (const CLI::CallForAllHelp&) {
    return {std::nullopt, kExitOk, app.help("", CLI::AppFormatMode::All)};
  } catch (const CLI::ParseError& e) {
    return {std::nullopt, kExitUsage, std::string("error: ") + e.what() + "\n\n" + app.help()};
  }

  if (spectrum_cmd->parsed()) cfg.command = Command::Spectrum;
  else if (wavefn_cmd->parsed()) cfg.command = Command::Wavefn;
  else if (curves_cmd->parsed()) cfg.command = Command::Curves;
  else if (verify_cmd->parsed()) cfg.command = Command::Verify;
  else if (limit_cmd->parsed()) cfg.command = Command::LimitStudy;
  else cfg.command = Command::Integrals;

  cfg.format = format == "json" ? Format::Json : Format::Csv;
  if (phys.any()) cfg.physical = phys.resolve();
  return {cfg, kExitOk, {}};
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Table table;
  int status = kExitOk;
  try {
    switch (config.command) {
      case Command::Spectrum: table = spectrum_table(config); break;
      case Command::Wavefn: table = wavefn_table(config); break;
      case Command::Curves: table = curves_table(config); break;
      case Command::Verify: status = verify(config, table, err); break;
      case Command::LimitStudy: status = limit_study(config, table); break;
      case Command::Integrals: status = integrals(config, table, err); break;
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "failed: " << e.what() << '\n';
    return kExitCheckFailed;
  }
  if (config.format == Format::Json) write_json(out, table);
  else write_csv(out, table);
  return status;
}

int cli_main(int argc, const char* const* argv) {
  const ParseResult parsed = parse_flags(argc, argv);
  if (!parsed.config) {
    (parsed.status == kExitOk ? std::cout : std::cerr) << parsed.message;
    return parsed.status;
  }
  const RunConfig& cfg = *parsed.config;
  std::ostringstream buffer;
  const int status = run(cfg, buffer, std::cerr);
  if (status == kExitUsage) return status;
  if (cfg.output.empty()) {
    std::cout << buffer.str();
    return status;
  }
  std::ofstream file(cfg.output, std::ios::binary);
  file << buffer.str();
  if (!file) {
    std::cerr << "error: cannot write " << cfg.output << '\n';
    return kExitUsage;
  }
  return status;
}

}  // namespace ddelta
