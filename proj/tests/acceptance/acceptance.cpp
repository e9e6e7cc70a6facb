// Acceptance battery: one PASS/FAIL line per criterion; exit status 1 if
// any criterion fails. An optional argument names the command-line tool,
// which is then also exercised as a separate process.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "hardy/cli.hpp"
#include "hardy/expression_parser.hpp"
#include "hardy/format.hpp"
#include "hardy/gelfand.hpp"
#include "hardy/verify.hpp"

using namespace hardy;
using literals::parse_expression;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    if (!detail.empty()) detail += "; ";
    detail += (ok ? "" : "FAILED ") + what;
  }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double norm(const AlgebraExpression& e, int n) { return singular_values(evaluate_expression(e, n)).front(); }

const PiecewiseSymbol u1 = PiecewiseSymbol::step(0.0);

Outcome corrected_identity() {
  Outcome o;
  for (Complex a : {Complex(0.0, 1.0), Complex(1.0, 1.0), Complex(0.0, 2.0)}) {
    const double r = identity_residual(ParabolicParam(a), 256, 16);
    o.require(r < 1e-6, "a=" + format_complex(a) + " residual " + num(r));
  }
  const ParabolicParam ai({0.0, 1.0});
  const auto h = AlgebraExpression::toeplitz(AnalyticSymbol::reciprocal(ai.as_eta()));
  const auto product = evaluate_expression(h * AlgebraExpression::composition(ai), 256);
  const auto d = multiplier_matrix(MultiplierSymbol::exponential(ai.a()), 256);
  const double anchors[2][2] = {{2.0 / 3.0, 2.0 / 9.0}, {2.0 / 9.0, 10.0 / 27.0}};
  double worst = 0.0;
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k)
      worst = std::max({worst, std::abs(product(j, k) - anchors[j][k]), std::abs(d(j, k) - anchors[j][k])});
  o.require(worst < 1e-9, "anchor entries within " + num(worst));
  const double printed = identity_residual(ai, 256, 16, IdentityForm::Printed);
  o.require(printed >= 0.2, "printed multiplier residual " + num(printed));
  return o;
}

Outcome multiplier_unit() {
  Outcome o;
  const auto d = multiplier_matrix(MultiplierSymbol::constant(1.0), 64);
  const double err = (d.entries() - ComplexMatrix::Identity(64, 64)).cwiseAbs().maxCoeff();
  o.require(err < 1e-10, "max |D_1 - I| = " + num(err));
  return o;
}

Outcome series_convergence() {
  Outcome o;
  const EtaMap eta = EtaMap::constant({0.0, 1.0});
  const double alpha = choose_alpha(eta);
  o.require(alpha == 2.0, "alpha = " + num(alpha));
  const auto cfg = SeriesConfig::make(eta, alpha, 20, 256, 16);
  const auto r = series_approximation(eta, cfg).residuals;
  o.require(r[20] <= 1e-4, "residual(20) = " + num(r[20]));
  o.require(r[5] >= r[10] && r[10] >= r[15] && r[15] >= r[20], "monotone over K = 5,10,15,20");
  const double slope = log_slope(r, {5, 10, 15, 20});
  o.require(slope <= std::log(0.5) + 0.1, "log-slope " + num(slope));
  return o;
}

Outcome product_spectrum() {
  Outcome o;
  const auto s = spectrum_product(PiecewiseSymbol::constant(1.0), EtaMap::constant({0.0, 1.0}));
  std::vector<Complex> segment;
  for (int k = 0; k <= 1000; ++k) segment.emplace_back(k / 1000.0, 0.0);
  const double h = hausdorff_distance(s.points, segment);
  o.require(h < 1e-3, "Hausdorff distance to [0,1] = " + num(h));
  return o;
}

Outcome homomorphism() {
  Outcome o;
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const EtaMap cusp = EtaMap::exp_cusp();
  const EtaMap poly = EtaMap::polynomial({{0.0, 1.0}, {0.25, 0.5}});
  const std::vector<AlgebraExpression> leaves{
      AlgebraExpression::identity(),
      AlgebraExpression::toeplitz(u1),
      AlgebraExpression::toeplitz(PiecewiseSymbol::step(2.0, {0.5, -1.0}) + PiecewiseSymbol::monomial(-1)),
      AlgebraExpression::toeplitz(AnalyticSymbol::prefactor(poly)),
      AlgebraExpression::multiplier(MultiplierSymbol::exponential({0.5, 1.0})),
      AlgebraExpression::multiplier(MultiplierSymbol::series_term(3, 2.0)),
      AlgebraExpression::multiplier(MultiplierSymbol::rational({1.0}, {1.0, 1.0})),
      AlgebraExpression::composition(ParabolicParam({0.0, 1.0})),
      AlgebraExpression::composition(cusp),
      AlgebraExpression::composition(poly),
  };
  const auto cluster = cluster_set(cusp, 0.0).points;
  std::function<AlgebraExpression(int)> tree = [&](int depth) -> AlgebraExpression {
    if (depth == 0 || u(rng) < 0.25) return leaves[rng() % leaves.size()];
    switch (rng() % 4) {
      case 0: return tree(depth - 1) + tree(depth - 1);
      case 1: return tree(depth - 1) * tree(depth - 1);
      case 2: return Complex(2 * u(rng) - 1, 2 * u(rng) - 1) * tree(depth - 1);
      default: return adjoint(tree(depth - 1));
    }
  };
  double worst_mul = 0.0, worst_adj = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    IdealPoint p;
    p.s = u(rng);
    if (trial % 2 == 0) {
      p.lambda = 0.0;
      if (u(rng) < 0.9) p.z = 10.0 * u(rng);
      p.surrogate.path = "cluster";
      p.surrogate.values[cusp.label()] = cluster[rng() % cluster.size()];
      p.surrogate.values[poly.label()] = poly(1.0);
    } else {
      p.lambda = kTwoPi * u(rng);
      p.surrogate.path = "radial";
      p.surrogate.values[cusp.label()] = cusp.near_boundary(p.lambda, 1e-12);
      p.surrogate.values[poly.label()] = poly(unit(p.lambda));
    }
    const auto a = tree(4), b = tree(4);
    const Complex ga = gelfand_evaluate(a, p), gb = gelfand_evaluate(b, p);
    worst_mul = std::max(worst_mul, std::abs(gelfand_evaluate(a * b, p) - ga * gb));
    worst_adj = std::max(worst_adj, std::abs(gelfand_evaluate(adjoint(a), p) - std::conj(ga)));
  }
  o.require(worst_mul < 1e-12, "max |G(AB) - G(A)G(B)| = " + num(worst_mul));
  o.require(worst_adj < 1e-12, "max |G(A*) - conj G(A)| = " + num(worst_adj));
  return o;
}

Outcome norm_laws() {
  Outcome o;
  const auto t = AlgebraExpression::toeplitz(u1);
  std::vector<double> norms;
  for (int n : {64, 128, 256, 512}) norms.push_back(norm(t, n));
  o.require(std::abs(norms.back() - 1.0) <= 0.02, "||T_u1|| at 512 = " + num(norms.back()));
  o.require(std::is_sorted(norms.begin(), norms.end()), "nondecreasing over N = 64..512");
  for (const auto& theta : {MultiplierSymbol::exponential({0.0, 1.0}), MultiplierSymbol::rational({1.0}, {1.0, 1.0})}) {
    const double d = singular_values(multiplier_matrix(theta, 512)).front();
    o.require(d <= theta.sup_norm() + 1e-8, "||D|| for " + theta.label() + " = " + num(d));
  }
  return o;
}

Outcome compactness_battery() {
  Outcome o;
  const std::vector<int> dims{128, 256, 512};
  const auto rank_one = compactness_profile(parse_expression("[T[mono:1], T[mono:-1]]"), dims, {1, 2});
  for (std::size_t i = 0; i < dims.size(); ++i) {
    o.require(std::abs(rank_one.sigma[i][0] - 1.0) <= 1e-12 && rank_one.sigma[i][1] < 1e-12,
              "[T_z, T_conj z] N=" + std::to_string(dims[i]) + " sigma_2 = " + num(rank_one.sigma[i][1]));
  }
  const auto commutator = compactness_profile(parse_expression("[T[step:0], D[rational:1/1,1]]"), dims, {1, 32});
  o.require(commutator.verdict == Verdict::Compact, "[T_u1, D_1/(1+t)] " + to_string(commutator.verdict));
  const auto semi = compactness_profile(parse_expression("T[step:0]*T[step:0] - T[step:0*step:0]"), dims, {1, 2});
  o.require(semi.verdict == Verdict::NonCompact, "T_u1 T_u1 - T_u1^2 " + to_string(semi.verdict));
  return o;
}

Outcome gelfand_norm_bound() {
  Outcome o;
  const char* registered[] = {
      "T[step:0]",
      "T[step:0] + P[0+1i]",
      "T[step:0]*P[0+1i]",
      "D[exp:0+1i] + {0.5}T[mono:1]",
      "T[step:0]*D[rational:1/1,1] + {0+1i}P[1+1i]",
      "P[1+1i]*T[poly:0.5,0.5]",
      "C[poly:0+1i,0+0.5i] + T[step:3]",
      "C[eta-exp]*T[step:1] + D[series:2:1]",
  };
  for (const char* text : registered) {
    const auto e = parse_expression(text);
    double sup = 0.0;
    for (const Complex v : spectrum_general(e).points) sup = std::max(sup, std::abs(v));
    const double n = norm(e, 512);
    o.require(sup <= n + 0.05, std::string(text) + ": sup " + num(sup) + " vs " + num(n));
  }
  return o;
}

Outcome index_values() {
  Outcome o;
  const int z3 = winding_index(PiecewiseSymbol::monomial(3), 4096);
  const int c = winding_index(PiecewiseSymbol::constant({2.0, 1.0}), 4096);
  const int zbar = winding_index(PiecewiseSymbol::monomial(-1), 4096);
  o.require(z3 == -3, "ind(z^3) = " + std::to_string(z3));
  o.require(c == 0, "ind(const) = " + std::to_string(c));
  o.require(zbar == 1, "ind(conj z) = " + std::to_string(zbar));
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

Outcome determinism(const std::string& tool) {
  Outcome o;
  const fs::path dir = fs::temp_directory_path() / ("hardy_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::vector<std::vector<std::string>> commands{
      {"build-op", "--parabolic", "1+1i", "--dim", "64"},
      {"build-op", "--expr", "[T[step:0], D[rational:1/1,1]]", "--dim", "48"},
      {"ess-spectrum", "--a", "const:1", "--eta", "const:0+1i"},
      {"ess-spectrum", "--a", "step:0", "--eta", "eta-exp", "--mode", "sum", "--circle-points", "16", "--t-points",
       "40"},
      {"ess-spectrum", "--expr", "T[step:0]*C[eta-exp] + D[exp:0+1i]", "--circle-points", "32", "--t-points", "40"},
      {"gelfand-eval", "--expr", "T[step:0]*P[0+1i]", "--s", "0.25", "--z", "2"},
      {"check-identity", "--a", "1+1i", "--dim", "128", "--block", "8"},
      {"check-commutator", "--a", "step:0", "--theta", "rational:1/1,1", "--dims", "64,96,128"},
      {"series", "--eta", "poly:0+1i,0+0.25i", "--dim", "96", "--block", "8", "--terms", "12"},
      {"eigs", "--expr", "T[step:0] + P[0+1i]", "--dim", "48"},
  };
  const bool has_svg[] = {false, false, true, true, true, false, false, false, false, true};
  auto outputs = [&](std::size_t i, const std::string& tag) {
    std::vector<std::string> args = commands[i];
    const fs::path csv = dir / (tag + std::to_string(i) + ".csv");
    const fs::path svg = dir / (tag + std::to_string(i) + ".svg");
    args.insert(args.end(), {"--out", csv.string()});
    if (has_svg[i]) args.insert(args.end(), {"--svg", svg.string()});
    return std::tuple{args, csv, svg};
  };
  for (std::size_t i = 0; i < commands.size(); ++i) {
    std::string first_csv, first_svg;
    bool same = true;
    for (const char* threads : {"1", "4"}) {
      ::setenv("HARDY_SPECTRA_THREADS", threads, 1);
      const auto [args, csv, svg] = outputs(i, std::string("t") + threads + "_");
      std::ostringstream out, err;
      const int code = cli::run(args, out, err);
      if (code != 0) {
        o.require(false, commands[i][0] + " exited " + std::to_string(code) + ": " + err.str());
        same = false;
        break;
      }
      if (first_csv.empty()) {
        first_csv = slurp(csv);
        first_svg = has_svg[i] ? slurp(svg) : "";
      } else {
        same = same && slurp(csv) == first_csv && (!has_svg[i] || slurp(svg) == first_svg);
      }
    }
    if (!tool.empty() && same) {
      const auto [args, csv, svg] = outputs(i, "proc_");
      std::string line = "\"" + tool + "\"";
      for (const auto& a : args) line += " '" + a + "'";
      line += " > /dev/null 2>&1";
      const int status = std::system(line.c_str());
      same = status == 0 && slurp(csv) == first_csv && (!has_svg[i] || slurp(svg) == first_svg);
    }
    o.require(same, commands[i][0] + (same ? " identical" : " differs"));
  }
  ::unsetenv("HARDY_SPECTRA_THREADS");
  fs::remove_all(dir);
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string tool = argc > 1 ? argv[1] : "";
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"corrected parabolic identity", corrected_identity},
      {"unit multiplier is the identity", multiplier_unit},
      {"multiplier series for C_phi", series_convergence},
      {"product spectrum for a = 1, eta = i", product_spectrum},
      {"Gelfand transform is a *-homomorphism", homomorphism},
      {"norm laws", norm_laws},
      {"compactness battery", compactness_battery},
      {"Gelfand sup within truncated norm", gelfand_norm_bound},
      {"winding index", index_values},
      {"CLI determinism", [&] { return determinism(tool); }},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::cout << "criterion " << (i + 1) << ": " << (o.pass ? "PASS" : "FAIL") << " " << criteria[i].first << " ("
              << o.detail << ") [" << num(secs) << " s]" << std::endl;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
