#pragma once

#include <vector>

#include "hardy/types.hpp"

namespace hardy {

/// Gauss–Laguerre rule for ∫₀^∞ f(t) e^{−2t} dt.
///
/// The multiplier matrices live in the Laguerre-function basis
/// ψ_n(t) = √2 e^{−t} L_n(2t), the image of the monomials z^n under the
/// Cayley isometry followed by the Fourier transform. Working in x = 2t, the
/// rule is the classical Q-point Gauss–Laguerre rule with nodes x_i and
/// weights w_i; the scheme stores `scaled_weights` = w_i e^{x_i}, which stay
/// representable for large Q while w_i itself underflows.
class QuadratureScheme {
public:
  /// Nodes by Golub–Welsch, polished with Newton steps on L_Q; weights from
  /// w_i = x_i / ((Q+1)² L_{Q+1}(x_i)²) in log-scaled arithmetic.
  static QuadratureScheme gauss_laguerre(int nodes, double tolerance = 1e-9);

  int size() const noexcept { return static_cast<int>(x_.size()); }
  double tolerance() const noexcept { return tolerance_; }
  /// Nodes in the x = 2t variable.
  const std::vector<double>& nodes() const noexcept { return x_; }
  const std::vector<double>& scaled_weights() const noexcept { return scaled_weights_; }
  double t_node(int i) const { return 0.5 * x_[static_cast<std::size_t>(i)]; }

  /// Table B with B(i, n) = sqrt(scaled_weight_i) · e^{−x_i/2} L_n(x_i), so
  /// that Bᵀ diag(ϑ(t_i)) B approximates the multiplier matrix and BᵀB = I
  /// whenever size() ≥ count.
  Eigen::MatrixXd weighted_laguerre_functions(int count) const;

  /// Largest relative error of the rule on ∫₀^∞ t^k e^{−2t} dt = k!/2^{k+1}
  /// over 0 ≤ k ≤ kmax (evaluated in log space).
  double moment_error(int kmax) const;

private:
  std::vector<double> x_;
  std::vector<double> scaled_weights_;
  double tolerance_ = 1e-9;
};

}  // namespace hardy
