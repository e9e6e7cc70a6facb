#include "hardy/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "hardy/errors.hpp"
#include "hardy/format.hpp"
#include "hardy/parallel.hpp"

namespace hardy {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Compact: return "compact";
    case Verdict::NonCompact: return "non-compact";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

Verdict classify(const std::vector<std::vector<double>>& sv, const CompactnessPolicy& p, std::string* reason) {
  if (sv.empty()) throw ArgumentError("classification needs at least one dimension");
  const auto need = static_cast<std::size_t>(std::max(p.k_star, p.k_dagger));
  if (p.k_star < 1 || p.k_dagger < 1) throw ArgumentError("policy indices must be >= 1");
  for (const auto& s : sv)
    if (s.size() < need) throw ArgumentError("policy index exceeds the smallest dimension");

  auto say = [&](const std::string& text) {
    if (reason) *reason = text;
  };
  const auto& first = sv.front();
  const auto& last = sv.back();
  const double s1 = last[0];
  const auto ks = static_cast<std::size_t>(p.k_star - 1);
  const auto kd = static_cast<std::size_t>(p.k_dagger - 1);

  if (s1 == 0.0) {
    say("zero section");
    return Verdict::Compact;
  }

  bool converged = true;
  std::string growth_note;
  for (std::size_t i = 0; i + 1 < sv.size() && converged; ++i) {
    for (std::size_t k = 0; k <= ks; ++k) {
      if (sv[i + 1][k] <= p.noise_floor * s1) continue;
      if (sv[i + 1][k] > (1.0 + p.growth_tolerance) * sv[i][k]) {
        converged = false;
        growth_note = "sigma_" + std::to_string(k + 1) + " grew from " + format_double(sv[i][k]) + " to " +
                      format_double(sv[i + 1][k]);
        break;
      }
    }
  }
  const double tail = last[ks] / s1;
  if (tail <= p.small_ratio && converged) {
    say("sigma_k*/sigma_1 = " + format_double(tail) + " and sections converged");
    return Verdict::Compact;
  }

  const bool plateau = last[kd] >= p.plateau_ratio * first[kd];
  const bool above_floor = last[kd] >= p.floor_ratio * s1;
  if (plateau && above_floor) {
    say("sigma_k+ = " + format_double(last[kd]) + " persists (" + format_double(first[kd]) + " at smallest N)");
    return Verdict::NonCompact;
  }

  std::ostringstream os;
  os << "sigma_k*/sigma_1 = " << format_double(tail);
  if (!converged) os << "; " << growth_note;
  os << "; sigma_k+/sigma_1 = " << format_double(last[kd] / s1);
  say(os.str());
  return Verdict::Inconclusive;
}

CompactnessReport compactness_profile(const AlgebraExpression& e, const std::vector<int>& dims,
                                      const std::vector<int>& ks, const CompactnessPolicy& policy,
                                      const EvaluationOptions& eval) {
  if (dims.empty()) throw ArgumentError("compactness profile needs at least one dimension");
  if (!std::is_sorted(dims.begin(), dims.end()) || std::adjacent_find(dims.begin(), dims.end()) != dims.end())
    throw ArgumentError("dimensions must be strictly ascending");
  if (dims.front() < 1) throw ArgumentError("dimensions must be >= 1");
  for (int k : ks)
    if (k < 1 || k > dims.front()) throw ArgumentError("k = " + std::to_string(k) + " outside [1, min N]");
  if (policy.k_star > dims.front() || policy.k_dagger > dims.front())
    throw ArgumentError("policy indices exceed the smallest dimension");

  std::vector<std::vector<double>> full(dims.size());
  parallel_for(dims.size(), [&](std::size_t i) { full[i] = singular_values(evaluate_expression(e, dims[i], eval)); });

  CompactnessReport report;
  report.dims = dims;
  report.ks = ks;
  report.policy = policy;
  for (const auto& s : full) {
    std::vector<double> row;
    for (int k : ks) row.push_back(s[static_cast<std::size_t>(k - 1)]);
    report.sigma.push_back(std::move(row));
  }
  report.verdict = classify(full, policy, &report.reason);
  return report;
}

AlgebraExpression identity_expression(const ParabolicParam& a, IdentityForm form) {
  const EtaMap eta = a.as_eta();
  const AnalyticSymbol h =
      form == IdentityForm::Corrected ? AnalyticSymbol::reciprocal(eta) : AnalyticSymbol::printed_factor(eta);
  return AlgebraExpression::toeplitz(h) * AlgebraExpression::composition(a) -
         AlgebraExpression::multiplier(MultiplierSymbol::exponential(a.a()));
}

double identity_residual(const ParabolicParam& a, int n, int block, IdentityForm form) {
  if (block < 1 || 8 * block > n) throw ArgumentError("identity residual needs 1 <= M <= N/8");
  const OperatorMatrix m = evaluate_expression(identity_expression(a, form), n);
  return m.principal_block(block).max_modulus();
}

double choose_alpha(const EtaMap& eta) {
  const double eps = eta.epsilon();
  if (!(eps > 0.0)) throw ArgumentError("choose_alpha needs epsilon > 0");
  const double s = eta.sup_norm();
  return std::max(2.0 * s * s / eps, 2.0 * s);
}

double series_ratio(const EtaMap& eta, double alpha) {
  if (!(alpha > 0.0)) throw ArgumentError("alpha must be positive");
  const Complex shift = kI * alpha;
  if (auto c = eta.constant_value()) return std::abs(shift - *c) / alpha;

  double worst = 0.0;
  constexpr int kAngles = 2048;
  for (double r : {0.0, 0.25, 0.5, 0.75, 0.9, 0.99, 0.999})
    for (int k = 0; k < kAngles; ++k) worst = std::max(worst, std::abs(shift - eta(std::polar(r, kTwoPi * k / kAngles))));
  for (int k = 0; k < kAngles; ++k) {
    const Complex w = eta.near_boundary(kTwoPi * k / kAngles, Complex{1e-9, 0.0});
    if (std::isfinite(w.real()) && std::isfinite(w.imag())) worst = std::max(worst, std::abs(shift - w));
  }
  return worst / alpha;
}

SeriesConfig SeriesConfig::make(const EtaMap& eta, double alpha, int terms, int dim, int block) {
  if (!(alpha > 0.0)) throw ArgumentError("alpha must be positive");
  if (terms < 0) throw ArgumentError("term count must be >= 0");
  if (dim < 1 || block < 1 || block > dim) throw ArgumentError("need 1 <= block <= dim");
  SeriesConfig cfg{alpha, terms, dim, block, series_ratio(eta, alpha)};
  if (!(cfg.ratio < 1.0))
    throw ConfigurationError("series ratio " + format_double(cfg.ratio) + " >= 1 for alpha = " + format_double(alpha) +
                             "; choose_alpha gives " + format_double(choose_alpha(eta)));
  return cfg;
}

SeriesResult series_approximation(const EtaMap& eta, const SeriesConfig& cfg) {
  if (!(cfg.ratio < 1.0)) throw ConfigurationError("series ratio must be < 1");
  if (cfg.dim < 1 || cfg.block < 1 || cfg.block > cfg.dim || cfg.terms < 0)
    throw ArgumentError("inconsistent series configuration");
  const int n = cfg.dim;
  const int m = cfg.block;

  const ComplexMatrix c = composition_matrix(eta, n).entries();
  const ComplexMatrix p = toeplitz_matrix(AnalyticSymbol::prefactor(eta), n).entries();
  const QuadratureScheme q = default_quadrature(n);

  // Every left factor is lower triangular, so N×N products are exact
  // finite sections and principal blocks only need principal blocks.
  std::vector<ComplexMatrix> terms(static_cast<std::size_t>(cfg.terms) + 1);
  parallel_for(terms.size(), [&](std::size_t k) {
    const auto power = static_cast<unsigned>(k);
    const ComplexMatrix t = toeplitz_matrix(AnalyticSymbol::shift_power(eta, cfg.alpha, power), n).entries();
    const ComplexMatrix d = multiplier_matrix(MultiplierSymbol::series_term(power, cfg.alpha), n, q).entries();
    terms[k] = t * d;
  });

  SeriesResult out;
  ComplexMatrix partial = ComplexMatrix::Zero(n, n);
  for (const auto& term : terms) {
    partial += term;
    const ComplexMatrix block = p.topLeftCorner(m, m) * partial.topLeftCorner(m, m);
    out.residuals.push_back((c.topLeftCorner(m, m) - block).cwiseAbs().maxCoeff());
  }
  out.approximation = OperatorMatrix(p * partial);
  return out;
}

double log_slope(const std::vector<double>& residuals, const std::vector<int>& ks) {
  if (ks.size() < 2) throw ArgumentError("log slope needs at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int k : ks) {
    if (k < 0 || static_cast<std::size_t>(k) >= residuals.size()) throw ArgumentError("k outside the residual curve");
    const double r = residuals[static_cast<std::size_t>(k)];
    if (!(r > 0.0)) throw NumericalError("log slope needs positive residuals");
    const double y = std::log(r);
    sx += k;
    sy += y;
    sxx += static_cast<double>(k) * k;
    sxy += k * y;
  }
  const double cnt = static_cast<double>(ks.size());
  const double den = cnt * sxx - sx * sx;
  if (den == 0.0) throw ArgumentError("log slope needs distinct k values");
  return (cnt * sxy - sx * sy) / den;
}

std::vector<Complex> finite_section_eigenvalues(const AlgebraExpression& e, int n, const EvaluationOptions& eval) {
  const OperatorMatrix op = evaluate_expression(e, n, eval);
  const ComplexMatrix& m = op.entries();
  std::vector<Complex> out;

  const bool lower = m.triangularView<Eigen::StrictlyUpper>().toDenseMatrix().isZero(0.0);
  const bool upper = m.triangularView<Eigen::StrictlyLower>().toDenseMatrix().isZero(0.0);
  if (lower || upper) {
    for (int k = 0; k < n; ++k) out.push_back(m(k, k));
    return out;
  }
  if (op.is_hermitian(1e-12 * std::max(1.0, op.max_modulus()))) {
    const ComplexMatrix sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericalError("self-adjoint eigen-solver did not converge");
    for (int k = 0; k < n; ++k) out.emplace_back(solver.eigenvalues()(k), 0.0);
    return out;
  }
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(m, false);
  if (solver.info() != Eigen::Success) throw NumericalError("eigen-solver did not converge");
  for (int k = 0; k < n; ++k) out.push_back(solver.eigenvalues()(k));
  return out;
}

}  // namespace hardy
