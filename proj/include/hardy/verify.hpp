#pragma once

#include <string>
#include <vector>

#include "hardy/gelfand.hpp"
#include "hardy/operators.hpp"

namespace hardy {

enum class Verdict { Compact, NonCompact, Inconclusive };
std::string to_string(Verdict v);

/// Engineering thresholds for reading compactness off finite sections.
///
/// compact: σ_{k*}(N_max) ≤ small_ratio·σ_1(N_max), and the sections have
///   converged: for every k ≤ k* with σ_k above noise_floor·σ_1, σ_k grows by
///   at most growth_tolerance between consecutive N.
/// non-compact (checked second): σ_{k†}(N_max) ≥ plateau_ratio·σ_{k†}(N_min)
///   and σ_{k†}(N_max) ≥ floor_ratio·σ_1(N_max).
/// Anything else is inconclusive.
struct CompactnessPolicy {
  int k_star = 32;
  int k_dagger = 2;
  double small_ratio = 0.05;
  double plateau_ratio = 0.5;
  double floor_ratio = 0.1;
  double growth_tolerance = 0.10;
  double noise_floor = 1e-10;
};

struct CompactnessReport {
  std::vector<int> dims;
  std::vector<int> ks;
  /// sigma[i][j] = σ_{ks[j]} at dims[i] (1-based k).
  std::vector<std::vector<double>> sigma;
  Verdict verdict = Verdict::Inconclusive;
  CompactnessPolicy policy;
  std::string reason;
};

/// Classifies e from the singular values of its finite sections. `dims`
/// must be ascending and every k (including the policy's k*, k†) at most
/// dims.front().
CompactnessReport compactness_profile(const AlgebraExpression& e, const std::vector<int>& dims,
                                      const std::vector<int>& ks,
                                      const CompactnessPolicy& policy = {},
                                      const EvaluationOptions& eval = {});

/// Verdict from full singular value lists per dimension (exposed for tests).
Verdict classify(const std::vector<std::vector<double>>& singular_values, const CompactnessPolicy& policy,
                 std::string* reason = nullptr);

enum class IdentityForm { Corrected, Printed };

/// T_h C_{φ_a} − D_{ϑ_a} with h = 2i/(2i + a(1−z)) (or the printed factor).
AlgebraExpression identity_expression(const ParabolicParam& a, IdentityForm form = IdentityForm::Corrected);

/// Max modulus of the principal M×M block of identity_expression at
/// dimension N; requires M ≤ N/8.
double identity_residual(const ParabolicParam& a, int n, int block,
                         IdentityForm form = IdentityForm::Corrected);

/// α = max(2S²/ε, 2S), which guarantees ‖iα − η‖_∞ < α.
double choose_alpha(const EtaMap& eta);

/// sup |iα − η| / α over the spot-check grid of η.
double series_ratio(const EtaMap& eta, double alpha);

struct SeriesConfig {
  double alpha = 0.0;
  int terms = 20;  ///< K: partial sums S_0 … S_K
  int dim = 256;
  int block = 16;
  double ratio = 0.0;

  /// Computes the ratio; throws ConfigurationError if it is ≥ 1 and
  /// ArgumentError for α ≤ 0 or inconsistent sizes.
  static SeriesConfig make(const EtaMap& eta, double alpha, int terms, int dim, int block);
};

struct SeriesResult {
  OperatorMatrix approximation;   ///< prefactor · S_K
  std::vector<double> residuals;  ///< residuals[k] for S_k, k = 0..K
};

/// C_φ ≈ T_{(2i+η(1−z))/2i} Σ_{n≤k} T_{(iα−η)^n} D_{ϑ_n}; residual k is the
/// principal-block max modulus of C_φ minus the k-th partial product.
SeriesResult series_approximation(const EtaMap& eta, const SeriesConfig& cfg);

/// Least-squares slope of log(residual) against k over the given ks.
double log_slope(const std::vector<double>& residuals, const std::vector<int>& ks);

/// Eigenvalues of the N×N section. Triangular sections return their
/// diagonal, Hermitian ones use the self-adjoint solver.
std::vector<Complex> finite_section_eigenvalues(const AlgebraExpression& e, int n,
                                                const EvaluationOptions& eval = {});

}  // namespace hardy
