#include "hardy/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "hardy/errors.hpp"
#include "hardy/parallel.hpp"

namespace hardy {
namespace {

constexpr double kRescale = 1e100;
const double kLogRescale = std::log(kRescale);

/// Three-term Laguerre recurrence with rescaling. After advance() the true
/// values are L_n = current·e^{log_scale}, L_{n−1} = previous·e^{log_scale}.
template <class Real>
struct ScaledLaguerre {
  Real x;
  Real previous = 0;
  Real current = 1;
  Real log_scale = 0;
  int n = 0;

  explicit ScaledLaguerre(Real x_) : x(x_) {}

  void advance() {
    const Real next = n == 0 ? 1 - x : ((2 * n + 1 - x) * current - n * previous) / (n + 1);
    previous = current;
    current = next;
    ++n;
    if (std::abs(current) > kRescale) {
      current /= kRescale;
      previous /= kRescale;
      log_scale += kLogRescale;
    }
  }
};

}  // namespace

QuadratureScheme QuadratureScheme::gauss_laguerre(int nodes, double tolerance) {
  if (nodes < 1) throw ArgumentError("Gauss-Laguerre rule needs at least one node");
  if (!(tolerance > 0.0)) throw ArgumentError("quadrature tolerance must be positive");

  Eigen::VectorXd diag(nodes);
  Eigen::VectorXd sub(std::max(nodes - 1, 0));
  for (int k = 0; k < nodes; ++k) diag(k) = 2.0 * k + 1.0;
  for (int k = 1; k < nodes; ++k) sub(k - 1) = k;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("Golub-Welsch eigenvalue computation failed");

  QuadratureScheme q;
  q.tolerance_ = tolerance;
  q.x_.resize(static_cast<std::size_t>(nodes));
  q.scaled_weights_.resize(static_cast<std::size_t>(nodes));

  parallel_for(static_cast<std::size_t>(nodes), [&](std::size_t i) {
    // Refinement and weights run in extended precision; the weights
    // otherwise drift by O(Q·eps) and spoil the zeroth moment.
    using Wide = long double;
    Wide x = solver.eigenvalues()(static_cast<Eigen::Index>(i));
    // Newton on L_Q; the step L_Q/L_Q' is invariant under the rescaling.
    for (int it = 0; it < 6; ++it) {
      ScaledLaguerre<Wide> l(x);
      for (int k = 0; k < nodes; ++k) l.advance();
      const Wide derivative = nodes * (l.current - l.previous) / x;
      if (derivative == 0) break;
      const Wide step = l.current / derivative;
      x -= step;
      if (std::abs(step) <= 4 * std::numeric_limits<Wide>::epsilon() * x) break;
    }
    ScaledLaguerre<Wide> l(x);
    for (int k = 0; k <= nodes; ++k) l.advance();
    // w = x / ((Q+1)² L_{Q+1}(x)²), stored as w·e^x
    const Wide log_l = std::log(std::abs(l.current)) + l.log_scale;
    const Wide log_w = std::log(x) - 2 * std::log(static_cast<Wide>(nodes) + 1) - 2 * log_l + x;
    q.x_[i] = static_cast<double>(x);
    q.scaled_weights_[i] = static_cast<double>(std::exp(log_w));
  });

  for (double w : q.scaled_weights_)
    if (!(w > 0.0) || !std::isfinite(w)) throw NumericalError("non-positive Gauss-Laguerre weight");
  return q;
}

Eigen::MatrixXd QuadratureScheme::weighted_laguerre_functions(int count) const {
  if (count < 1) throw ArgumentError("need at least one Laguerre function");
  const int q = size();
  Eigen::MatrixXd table(q, count);
  parallel_for(static_cast<std::size_t>(q), [&](std::size_t i) {
    const double x = x_[i];
    const double shift = 0.5 * std::log(scaled_weights_[i]) - 0.5 * x;
    ScaledLaguerre<double> l(x);
    for (int n = 0; n < count; ++n) {
      table(static_cast<Eigen::Index>(i), n) = l.current * std::exp(l.log_scale + shift);
      l.advance();
    }
  });
  return table;
}

double QuadratureScheme::moment_error(int kmax) const {
  double worst = 0.0;
  std::vector<double> terms(x_.size());
  for (int k = 0; k <= kmax; ++k) {
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < x_.size(); ++i) {
      terms[i] = std::log(scaled_weights_[i]) - x_[i] + k * std::log(x_[i]);
      top = std::max(top, terms[i]);
    }
    double sum = 0.0;
    for (double t : terms) sum += std::exp(t - top);
    const double log_rule = top + std::log(sum);
    // ∫ x^k e^{−x} dx = k!; the t-moment differs only by the factor 2^{−(k+1)}
    const double rel = std::abs(std::expm1(log_rule - std::lgamma(k + 1.0)));
    worst = std::max(worst, rel);
  }
  return worst;
}

}  // namespace hardy
