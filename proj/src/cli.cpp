#include "hardy/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "hardy/errors.hpp"
#include "hardy/expression_parser.hpp"
#include "hardy/format.hpp"
#include "hardy/gelfand.hpp"
#include "hardy/io.hpp"
#include "hardy/literals.hpp"
#include "hardy/verify.hpp"

namespace hardy::cli {
namespace {

using literals::parse_boundary_symbol;
using literals::parse_complex;
using literals::parse_eta;
using literals::parse_expression;
using literals::parse_multiplier;

/// Reads `key = value` lines ('#' starts a comment) and appends `--key value`
/// for every key not already present on the command line.
std::vector<std::string> merge_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw ArgumentError("--config needs a path");
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i + 2));
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (path.empty()) return args;

  std::ifstream f(path);
  if (!f) throw ArgumentError("cannot read config file '" + path + "'");
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
  };
  auto present = [&](const std::string& flag) {
    return std::any_of(args.begin(), args.end(),
                       [&](const std::string& a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
  };
  std::string line;
  int number = 0;
  while (std::getline(f, line)) {
    ++number;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ArgumentError("config line " + std::to_string(number) + " is not key=value: '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ArgumentError("config line " + std::to_string(number) + " has an empty key");
    const std::string flag = "--" + key;
    if (present(flag)) continue;
    args.push_back(flag);
    args.push_back(value);
  }
  return args;
}

std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const double v = literals::parse_real(item);
    if (v != std::floor(v) || std::abs(v) > 1e9) throw ArgumentError(what + " must be a list of integers");
    out.push_back(static_cast<int>(v));
  }
  if (out.empty()) throw ArgumentError(what + " must not be empty");
  return out;
}

std::optional<double> parse_z(const std::string& text) {
  if (text == "inf" || text == "infinity") return std::nullopt;
  const double z = literals::parse_real(text);
  if (!(z >= 0.0) || !std::isfinite(z)) throw ArgumentError("z must be a nonnegative number or 'inf'");
  return z;
}

void require_range(double value, double lo, double hi, const std::string& what) {
  if (!(value >= lo && value <= hi))
    throw ArgumentError(what + " must lie in [" + format_double(lo) + ", " + format_double(hi) + "]");
}

struct Outputs {
  std::string csv;
  std::string svg;
};

/// Every input is parsed and validated before any computation or write.
struct Common {
  std::string out;
  std::string svg;

  void add(CLI::App* app, bool with_svg) {
    app->add_option("--out", out, "CSV output path");
    if (with_svg) app->add_option("--svg", svg, "SVG scatter output path");
  }

  void write(const Outputs& o) const {
    if (!out.empty()) io::write_file(out, o.csv);
    if (!svg.empty()) io::write_file(svg, o.svg);
  }
};

struct GridFlags {
  double t_min = SpectrumGrids{}.t_min;
  double t_max = SpectrumGrids{}.t_max;
  int t_points = SpectrumGrids{}.t_points;
  int s_points = SpectrumGrids{}.s_points;
  int circle_points = SpectrumGrids{}.circle_points;

  void add(CLI::App* app) {
    app->add_option("--t-min", t_min, "smallest positive t");
    app->add_option("--t-max", t_max, "largest finite t");
    app->add_option("--t-points", t_points, "log-spaced t samples");
    app->add_option("--s-points", s_points, "s samples at a jump");
    app->add_option("--circle-points", circle_points, "uniform circle samples");
  }

  SpectrumGrids grids() const {
    require_range(t_points, 2, 1e6, "--t-points");
    require_range(s_points, 2, 1e6, "--s-points");
    require_range(circle_points, 1, 1e6, "--circle-points");
    SpectrumGrids g;
    g.t_min = t_min;
    g.t_max = t_max;
    g.t_points = t_points;
    g.s_points = s_points;
    g.circle_points = circle_points;
    (void)g.t_grid();
    return g;
  }
};

int build_op(const std::string& toeplitz, const std::string& composition, const std::string& parabolic,
             const std::string& multiplier, const std::string& expression, int dim, const Common& common,
             std::ostream& out) {
  require_range(dim, 1, 8192, "--dim");
  const int given = !toeplitz.empty() + !composition.empty() + !parabolic.empty() + !multiplier.empty() +
                    !expression.empty();
  if (given != 1)
    throw ArgumentError("build-op needs exactly one of --toeplitz, --composition, --parabolic, --multiplier, --expr");

  AlgebraExpression e = AlgebraExpression::identity();
  if (!toeplitz.empty()) e = AlgebraExpression::toeplitz(parse_boundary_symbol(toeplitz));
  if (!composition.empty()) e = AlgebraExpression::composition(parse_eta(composition));
  if (!parabolic.empty()) e = AlgebraExpression::composition(ParabolicParam(parse_complex(parabolic)));
  if (!multiplier.empty()) e = AlgebraExpression::multiplier(parse_multiplier(multiplier));
  if (!expression.empty()) e = parse_expression(expression);

  const OperatorMatrix m = evaluate_expression(e, dim);
  const double norm = singular_values(m).front();
  const std::string comment = "build-op N=" + std::to_string(dim) + " op=" + e.to_string();
  common.write({io::matrix_csv(m, comment), {}});
  out << "build-op: N=" << dim << " op=" << e.to_string() << " norm=" << format_double(norm)
      << " max_entry=" << format_double(m.max_modulus()) << '\n';
  return kSuccess;
}

int ess_spectrum(const std::string& a, const std::string& eta, const std::string& expression, std::string mode,
                 const GridFlags& flags, double max_points, const Common& common, std::ostream& out) {
  if (mode.empty()) mode = expression.empty() ? "product" : "general";
  const SpectrumGrids grids = flags.grids();
  require_range(max_points, 1, 1e9, "--max-points");
  auto check_size = [&](std::size_t n) {
    if (static_cast<double>(n) > max_points)
      throw ArgumentError("the requested grids give " + std::to_string(n) + " points, above --max-points " +
                          format_double(max_points) + "; lower --t-points or --circle-points");
  };
  SpectrumSet set;
  if (mode == "general") {
    if (expression.empty() || !a.empty() || !eta.empty())
      throw ArgumentError("--mode general takes --expr and no --a/--eta");
    const AlgebraExpression e = parse_expression(expression);
    check_size(spectrum_general_size(e, grids));
    set = spectrum_general(e, grids);
  } else if (mode == "product" || mode == "sum") {
    if (a.empty() || eta.empty() || !expression.empty())
      throw ArgumentError("--mode " + mode + " takes --a and --eta and no --expr");
    const PiecewiseSymbol symbol = parse_boundary_symbol(a);
    const EtaMap map = parse_eta(eta);
    if (mode == "product") {
      check_size(spectrum_product_size(symbol, map, grids));
      set = spectrum_product(symbol, map, grids);
    } else {
      check_size(spectrum_sum_size(symbol, map, grids));
      set = spectrum_sum(symbol, map, grids);
    }
  } else {
    throw ArgumentError("--mode must be product, sum or general");
  }

  const std::string comment = "ess-spectrum " + set.description + " t_count=" + std::to_string(set.t_count) +
                              " s_count=" + std::to_string(set.s_count) +
                              " lambda_count=" + std::to_string(set.lambda_count) +
                              " cluster_count=" + std::to_string(set.cluster_count);
  Outputs o{io::points_csv(set.points, comment), {}};
  if (!common.svg.empty()) o.svg = io::render_svg(set.points, {.title = set.description});
  common.write(o);

  double radius = 0.0;
  for (const Complex p : set.points) radius = std::max(radius, std::abs(p));
  out << "ess-spectrum: " << set.points.size() << " points (" << set.description
      << ") max_modulus=" << format_double(radius) << '\n';
  return kSuccess;
}

int gelfand_eval(const std::string& expression, double lambda, double s, const std::string& z,
                 const std::vector<std::string>& ws, const Common& common, std::ostream& out) {
  if (expression.empty()) throw ArgumentError("gelfand-eval needs --expr");
  const AlgebraExpression e = parse_expression(expression);
  IdealPoint p;
  p.lambda = normalize_angle(lambda);
  p.s = s;
  p.z = parse_z(z);
  std::vector<EtaMap> varying;
  for (const auto& m : e.etas())
    if (!m.constant_value()) varying.push_back(m);
  if (ws.size() != varying.size())
    throw ConfigurationError("expression has " + std::to_string(varying.size()) +
                             " non-constant eta(s); give one --w value for each, in order of appearance");
  p.surrogate.path = ws.empty() ? "none" : "user";
  for (std::size_t i = 0; i < ws.size(); ++i) p.surrogate.values.emplace(varying[i].label(), parse_complex(ws[i]));
  p.validate();

  const Complex v = gelfand_evaluate(e, p);
  const Complex single[] = {v};
  common.write({io::points_csv(single, "gelfand-eval " + e.to_string()), {}});
  out << "gelfand-eval: value=" << format_complex(v) << '\n';
  return kSuccess;
}

int check_identity(const std::string& a, int dim, int block, const std::string& form, double tol,
                   const Common& common, std::ostream& out) {
  if (a.empty()) throw ArgumentError("check-identity needs --a");
  require_range(dim, 8, 8192, "--dim");
  if (block < 1 || 8 * block > dim) throw ArgumentError("--block must satisfy 1 <= M <= N/8");
  if (form != "corrected" && form != "printed") throw ArgumentError("--form must be corrected or printed");
  const ParabolicParam param(parse_complex(a));
  const IdentityForm f = form == "corrected" ? IdentityForm::Corrected : IdentityForm::Printed;

  const OperatorMatrix m = evaluate_expression(identity_expression(param, f), dim).principal_block(block);
  const double residual = m.max_modulus();
  common.write({io::matrix_csv(m, "check-identity residual block a=" + format_complex(param.a()) +
                                      " N=" + std::to_string(dim) + " form=" + form),
                {}});
  const bool pass = residual < tol;
  out << "check-identity: a=" << format_complex(param.a()) << " N=" << dim << " M=" << block << " form=" << form
      << " residual=" << format_double(residual) << (pass ? " PASS" : " FAIL") << " (tol " << tol
      << ")\n";
  return pass ? kSuccess : kFailure;
}

int check_commutator(const std::string& expression, const std::string& a, const std::string& b,
                     const std::string& theta, const std::string& dims_text, const std::string& ks_text,
                     const CompactnessPolicy& policy, const std::string& expect, const Common& common,
                     std::ostream& out) {
  AlgebraExpression e = AlgebraExpression::identity();
  if (!expression.empty()) {
    if (!a.empty() || !b.empty() || !theta.empty()) throw ArgumentError("--expr excludes --a/--b/--theta");
    e = parse_expression(expression);
  } else {
    if (a.empty() || (b.empty() == theta.empty()))
      throw ArgumentError("check-commutator needs --expr, or --a with exactly one of --b/--theta");
    const auto ta = AlgebraExpression::toeplitz(parse_boundary_symbol(a));
    const auto other = b.empty() ? AlgebraExpression::multiplier(parse_multiplier(theta))
                                 : AlgebraExpression::toeplitz(parse_boundary_symbol(b));
    e = commutator(ta, other);
  }
  const auto dims = parse_int_list(dims_text, "--dims");
  const auto ks = parse_int_list(ks_text, "--ks");
  if (!expect.empty() && expect != "compact" && expect != "non-compact" && expect != "inconclusive")
    throw ArgumentError("--expect must be compact, non-compact or inconclusive");
  for (int n : dims) require_range(n, 1, 8192, "--dims entries");

  const CompactnessReport report = compactness_profile(e, dims, ks, policy);
  common.write({io::compactness_csv(report, "check-commutator " + e.to_string()), {}});
  const std::string verdict = to_string(report.verdict);
  out << "check-commutator: " << e.to_string() << " verdict=" << verdict << " (" << report.reason << ")\n";
  if (!expect.empty() && verdict != expect) return kFailure;
  return kSuccess;
}

int series(const std::string& eta_text, std::optional<double> alpha, int terms, int dim, int block,
           std::optional<double> tol, const Common& common, std::ostream& out) {
  if (eta_text.empty()) throw ArgumentError("series needs --eta");
  require_range(dim, 1, 8192, "--dim");
  require_range(terms, 0, 400, "--terms");
  const EtaMap eta = parse_eta(eta_text);
  const double a = alpha ? *alpha : choose_alpha(eta);
  const SeriesConfig cfg = SeriesConfig::make(eta, a, terms, dim, block);

  const SeriesResult r = series_approximation(eta, cfg);
  common.write({io::residual_csv(r.residuals, "series eta=" + eta.label() + " alpha=" + format_double(a) +
                                                  " ratio=" + format_double(cfg.ratio) + " N=" + std::to_string(dim) +
                                                  " M=" + std::to_string(block)),
                {}});
  const double last = r.residuals.back();
  const bool pass = !tol || last <= *tol;
  out << "series: eta=" << eta.label() << " alpha=" << format_double(a) << " ratio=" << format_double(cfg.ratio)
      << " K=" << terms << " residual=" << format_double(last) << (pass ? "" : " FAIL") << '\n';
  return pass ? kSuccess : kFailure;
}

int eigs(const std::string& expression, int dim, const Common& common, std::ostream& out) {
  if (expression.empty()) throw ArgumentError("eigs needs --expr");
  require_range(dim, 1, 4096, "--dim");
  const AlgebraExpression e = parse_expression(expression);
  const auto values = finite_section_eigenvalues(e, dim);
  const std::string comment = "eigs N=" + std::to_string(dim) + " op=" + e.to_string() +
                              " (finite-section eigenvalues need not converge to the essential spectrum)";
  Outputs o{io::points_csv(values, comment), {}};
  if (!common.svg.empty()) o.svg = io::render_svg(values, {.title = "eigenvalues " + e.to_string()});
  common.write(o);
  double radius = 0.0;
  for (const Complex v : values) radius = std::max(radius, std::abs(v));
  out << "eigs: N=" << dim << " count=" << values.size() << " spectral_radius=" << format_double(radius) << '\n';
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite-section and essential-spectrum laboratory for Toeplitz, composition and multiplier operators",
               "hardy-spectra"};
  app.require_subcommand(1);
  app.fallthrough(false);

  Common common;
  GridFlags grids;
  std::string toeplitz, composition, parabolic, multiplier, expression, a, b, theta, eta, mode, z = "inf";
  std::string form = "corrected", dims = "128,256,512", ks = "1,2,4,8,16,32", expect;
  std::vector<std::string> ws;
  int build_dim = 64, identity_dim = 256, series_dim = 256, eigs_dim = 64;
  int identity_block = 16, series_block = 16, terms = 20;
  double lambda = 0.0, s = 0.0, tol = 1e-6, max_points = 5e6;
  std::optional<double> alpha, series_tol;
  CompactnessPolicy policy;
  std::function<int()> action;

  auto* build = app.add_subcommand("build-op", "write the N x N finite section of one operator");
  build->add_option("--toeplitz", toeplitz, "boundary symbol literal");
  build->add_option("--composition", composition, "eta literal");
  build->add_option("--parabolic", parabolic, "parameter a with Im a > 0");
  build->add_option("--multiplier", multiplier, "multiplier literal");
  build->add_option("--expr", expression, "expression literal");
  build->add_option("--dim", build_dim, "dimension N");
  common.add(build, false);
  build->callback([&] {
    action = [&] { return build_op(toeplitz, composition, parabolic, multiplier, expression, build_dim, common, out); };
  });

  auto* ess = app.add_subcommand("ess-spectrum", "sample an essential spectrum");
  ess->add_option("--a", a, "boundary symbol literal");
  ess->add_option("--eta", eta, "eta literal");
  ess->add_option("--expr", expression, "expression literal (general mode)");
  ess->add_option("--mode", mode, "product, sum or general");
  ess->add_option("--max-points", max_points, "refuse grids that would produce more points");
  grids.add(ess);
  common.add(ess, true);
  ess->callback(
      [&] { action = [&] { return ess_spectrum(a, eta, expression, mode, grids, max_points, common, out); }; });

  auto* gel = app.add_subcommand("gelfand-eval", "evaluate the Gelfand transform at one ideal point");
  gel->add_option("--expr", expression, "expression literal");
  gel->add_option("--lambda", lambda, "fiber angle");
  gel->add_option("--s", s, "fiber coordinate in [0, 1]");
  gel->add_option("--z", z, "z in [0, inf] ('inf' allowed)");
  gel->add_option("--w", ws, "value of each non-constant eta, in order");
  common.add(gel, false);
  gel->callback([&] { action = [&] { return gelfand_eval(expression, lambda, s, z, ws, common, out); }; });

  auto* ident = app.add_subcommand("check-identity", "residual of T_h C_phi_a - D_theta_a");
  ident->add_option("--a", a, "parameter a with Im a > 0");
  ident->add_option("--dim", identity_dim, "dimension N");
  ident->add_option("--block", identity_block, "principal block M");
  ident->add_option("--form", form, "corrected or printed");
  ident->add_option("--tol", tol, "pass threshold");
  common.add(ident, false);
  ident->callback([&] { action = [&] { return check_identity(a, identity_dim, identity_block, form, tol, common, out); }; });

  auto* comm = app.add_subcommand("check-commutator", "compactness diagnostics from singular values");
  comm->add_option("--expr", expression, "expression literal");
  comm->add_option("--a", a, "boundary symbol literal");
  comm->add_option("--b", b, "second boundary symbol literal");
  comm->add_option("--theta", theta, "multiplier literal");
  comm->add_option("--dims", dims, "ascending dimensions");
  comm->add_option("--ks", ks, "reported singular value indices");
  comm->add_option("--k-star", policy.k_star, "index k* of the tail singular value");
  comm->add_option("--k-dagger", policy.k_dagger, "index k+ tested for a plateau");
  comm->add_option("--small-ratio", policy.small_ratio, "compact if sigma_k*/sigma_1 is at most this");
  comm->add_option("--plateau-ratio", policy.plateau_ratio, "sigma_k+ must keep this fraction of its smallest-N value");
  comm->add_option("--floor-ratio", policy.floor_ratio, "sigma_k+/sigma_1 floor for non-compact");
  comm->add_option("--growth-tolerance", policy.growth_tolerance, "allowed relative growth of sigma_k between dimensions");
  comm->add_option("--noise-floor", policy.noise_floor, "values below this times sigma_1 are ignored");
  comm->add_option("--expect", expect, "exit 1 unless the verdict matches");
  common.add(comm, false);
  comm->callback([&] {
    action = [&] { return check_commutator(expression, a, b, theta, dims, ks, policy, expect, common, out); };
  });

  auto* ser = app.add_subcommand("series", "partial sums of the multiplier series for C_phi");
  ser->add_option("--eta", eta, "eta literal");
  ser->add_option("--alpha", alpha, "alpha (default: choose_alpha)");
  ser->add_option("--terms", terms, "K");
  ser->add_option("--dim", series_dim, "dimension N");
  ser->add_option("--block", series_block, "principal block M");
  ser->add_option("--tol", series_tol, "exit 1 if the final residual exceeds this");
  common.add(ser, false);
  ser->callback([&] {
    action = [&] { return series(eta, alpha, terms, series_dim, series_block, series_tol, common, out); };
  });

  auto* eig = app.add_subcommand("eigs", "finite-section eigenvalues");
  eig->add_option("--expr", expression, "expression literal");
  eig->add_option("--dim", eigs_dim, "dimension N");
  common.add(eig, true);
  eig->callback([&] { action = [&] { return eigs(expression, eigs_dim, common, out); }; });

  try {
    std::vector<std::string> args = merge_config(raw_args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    if (code != 0) err << app.help();
    return code == 0 ? kSuccess : kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return kUsage;
  }

  try {
    return action();
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kFailure;
  } catch (const IoError& e) {
    err << "i/o failure: " << e.what() << '\n';
    return kFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace hardy::cli
