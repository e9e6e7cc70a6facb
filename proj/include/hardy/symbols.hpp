#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hardy/power_series.hpp"
#include "hardy/types.hpp"

namespace hardy {

// ---------------------------------------------------------------------------
// Boundary symbols on the unit circle
// ---------------------------------------------------------------------------

/// A jump of a piecewise continuous symbol at `angle`. The symbol carries
/// `height` times the canonical step located there, so the left limit minus
/// the right limit at `angle` equals `height`.
struct Jump {
  double angle = 0.0;
  Complex height{0.0, 0.0};
};

/// Σ_k c_k e^{i(k + lowest_index)θ}.
struct TrigPolynomial {
  int lowest_index = 0;
  std::vector<Complex> coefficients;
};

/// Samples at θ_k = 2πk/M, linearly interpolated in angle (periodic).
struct SampledCurve {
  std::vector<Complex> values;
};

/// A continuous function given by an evaluator. `breakpoints` lists the
/// angles where derivatives may jump; quadrature splits there.
struct CompositeCurve {
  std::function<Complex(double)> evaluate;
  std::vector<double> breakpoints;
};

using ContinuousPart = std::variant<TrigPolynomial, SampledCurve, CompositeCurve>;

/// u_λ(e^{iθ}) = (θ − θ_λ)/2π on the arc (θ_λ, θ_λ + 2π); value 0 at θ_λ
/// itself (the right limit).
double canonical_step(double theta, double location);

/// Piecewise continuous symbol: continuous part plus a finite linear
/// combination of canonical steps. Immutable after construction.
class PiecewiseSymbol {
public:
  /// Throws StructuralError when two jumps share a location or a part is
  /// malformed (empty sample list, non-finite data).
  PiecewiseSymbol(ContinuousPart continuous, std::vector<Jump> jumps, std::string label = {});

  static PiecewiseSymbol constant(Complex c);
  /// c·z^n; negative n gives powers of conj(z).
  static PiecewiseSymbol monomial(int n, Complex c = 1.0);
  static PiecewiseSymbol trig_polynomial(int lowest_index, std::vector<Complex> coefficients);
  static PiecewiseSymbol sampled(std::vector<Complex> values);
  static PiecewiseSymbol step(double angle, Complex height = 1.0);

  const ContinuousPart& continuous_part() const noexcept { return continuous_; }
  std::span<const Jump> jumps() const noexcept { return jumps_; }
  const std::string& label() const noexcept { return label_; }
  bool is_continuous() const noexcept { return jumps_.empty(); }
  bool is_real_valued(double tol = 1e-14) const;
  bool has_jump_at(double angle) const;

  Complex continuous_value(double theta) const;
  /// Right-continuous point evaluation.
  Complex value(double theta) const;
  /// (a(λ⁻), a(λ⁺)).
  std::pair<Complex, Complex> one_sided_limits(double angle) const;
  /// Sampled sup-norm, including both one-sided limits at every jump.
  double sup_norm(int samples = 4096) const;

  friend PiecewiseSymbol operator+(const PiecewiseSymbol& a, const PiecewiseSymbol& b);
  friend PiecewiseSymbol operator*(const PiecewiseSymbol& a, const PiecewiseSymbol& b);
  friend PiecewiseSymbol operator*(Complex c, const PiecewiseSymbol& a);

private:
  ContinuousPart continuous_;
  std::vector<Jump> jumps_;
  std::string label_;
};

std::pair<Complex, Complex> one_sided_limits(const PiecewiseSymbol& s, double angle);

struct FourierOptions {
  double tolerance = 1e-10;  ///< absolute, on every returned coefficient
  int max_refinements = 6;
  int max_index = 1 << 16;
};

/// â(n) = (1/2π)∫ a(e^{iθ}) e^{−inθ} dθ. Steps use their closed form,
/// trigonometric parts are exact, other continuous parts use composite
/// Gauss–Legendre panels split at breakpoints.
Complex fourier_coefficient(const PiecewiseSymbol& s, int n, const FourierOptions& opts = {});

/// All coefficients with |n| ≤ max_index; entry i holds â(i − max_index).
std::vector<Complex> fourier_coefficients(const PiecewiseSymbol& s, int max_index,
                                          const FourierOptions& opts = {});

/// Fredholm index of T_a for a continuous symbol: minus the winding number
/// of θ ↦ a(e^{iθ}) about 0, by accumulated argument increments.
int winding_index(const PiecewiseSymbol& s, int samples, double margin = 1e-8);

// ---------------------------------------------------------------------------
// Multiplier symbols on [0, ∞]
// ---------------------------------------------------------------------------

class MultiplierSymbol {
public:
  enum class Kind { Constant, Exponential, SeriesTerm, Rational, General };

  static MultiplierSymbol constant(Complex c);
  /// ϑ_a(t) = e^{iat}; requires Im a > 0.
  static MultiplierSymbol exponential(Complex a);
  /// ϑ_n(t) = (−it)^n e^{−αt}/n!; requires α > 0.
  static MultiplierSymbol series_term(unsigned n, double alpha);
  /// p(t)/q(t) with ascending coefficient lists; deg p ≤ deg q and q
  /// nonvanishing on [0, ∞).
  static MultiplierSymbol rational(std::vector<Complex> numerator, std::vector<Complex> denominator);
  static MultiplierSymbol general(std::function<Complex(double)> evaluate, Complex at_infinity,
                                  std::string label, double tail_tolerance = 1e-6);

  Complex operator()(double t) const { return evaluate_(t); }
  Complex value_at_infinity() const noexcept { return at_infinity_; }
  double sup_norm() const noexcept { return sup_norm_; }
  Kind kind() const noexcept { return kind_; }
  const std::string& label() const noexcept { return label_; }
  bool is_real_valued() const noexcept { return real_valued_; }

  /// Exponent a of ϑ_a, for Kind::Exponential.
  std::optional<Complex> exponent() const noexcept { return exponent_; }

  friend MultiplierSymbol operator*(const MultiplierSymbol& a, const MultiplierSymbol& b);

private:
  MultiplierSymbol(Kind kind, std::function<Complex(double)> evaluate, Complex at_infinity,
                   std::string label);
  void check_tail(double tolerance) const;
  double sampled_sup() const;

  Kind kind_;
  std::function<Complex(double)> evaluate_;
  Complex at_infinity_;
  std::string label_;
  double sup_norm_ = 0.0;
  bool real_valued_ = false;
  std::optional<Complex> exponent_;
};

// ---------------------------------------------------------------------------
// Analytic self-map data
// ---------------------------------------------------------------------------

/// η ∈ H^∞ with Im η ≥ ε > 0, defining φ(z) = (2iz + η(1−z))/(2i + η(1−z)).
class EtaMap {
public:
  enum class Kind { Constant, Polynomial, ExpCusp };

  static EtaMap constant(Complex w);
  /// When epsilon is omitted the grid infimum of Im η is used.
  static EtaMap polynomial(std::vector<Complex> coefficients, std::optional<double> epsilon = {});
  /// η(z) = 2i + exp(−(1+z)/(1−z)); ε = 1, sup |η| = 3.
  static EtaMap exp_cusp();

  Complex operator()(Complex z) const;
  /// η(λ(1 − d)) for the boundary point λ = e^{i·angle}; d is the offset
  /// from λ, kept separate so points very close to λ lose no precision.
  Complex near_boundary(double angle, Complex offset) const;
  series::Series taylor(std::size_t order) const;

  Kind kind() const noexcept { return kind_; }
  double epsilon() const noexcept { return epsilon_; }
  double sup_norm() const noexcept { return sup_norm_; }
  const std::string& label() const noexcept { return label_; }
  std::optional<Complex> constant_value() const;
  std::span<const Complex> coefficients() const noexcept { return coefficients_; }

private:
  EtaMap(Kind kind, std::vector<Complex> coefficients, std::string label);
  void spot_check();

  Kind kind_;
  std::vector<Complex> coefficients_;
  std::string label_;
  double epsilon_ = 0.0;
  double sup_norm_ = 0.0;
};

/// The parabolic non-automorphism φ_a(z) = ((2i−a)z + a)/(−az + a + 2i),
/// which is the η ≡ a member of the EtaMap family.
class ParabolicParam {
public:
  explicit ParabolicParam(Complex a);
  Complex a() const noexcept { return a_; }
  Complex map(Complex z) const;
  EtaMap as_eta() const { return EtaMap::constant(a_); }

private:
  Complex a_;
};

// ---------------------------------------------------------------------------
// Cluster sets
// ---------------------------------------------------------------------------

/// Approach paths towards a boundary point λ, described in the right
/// half-plane coordinate w, with z = λ(w − 1)/(w + 1):
///  * radial: w real and growing,
///  * Stolz: arg w fixed at each of `stolz_angles` (|angle| < π/2),
///  * tangential: Re w fixed at each of `horocycle_offsets`, Im w → ±∞.
/// Samples are taken at distances |z − λ| geometrically spaced in
/// [depth_min, depth_max].
struct ClusterSampling {
  double depth_min = 1e-12;
  double depth_max = 1e-10;
  int samples_per_path = 8;
  bool radial = true;
  std::vector<double> stolz_angles{-kPi / 3, -kPi / 6, kPi / 6, kPi / 3};
  std::vector<double> horocycle_offsets{1e-3, 1e-2, 1e-1, 1.0};
  double tolerance = 1e-9;  ///< deduplication resolution
};

struct ApproachSample {
  std::string path;
  double depth = 0.0;
  Complex offset;  ///< d with z = λ(1 − d)
};

std::vector<ApproachSample> approach_samples(const ClusterSampling& sampling);

struct ClusterSet {
  std::vector<Complex> points;
  std::vector<std::string> paths;
  std::size_t samples = 0;
  std::size_t skipped = 0;  ///< non-finite evaluations
  double radius_bound = 0.0;  ///< recorded sup |η|
};

ClusterSet cluster_set(const EtaMap& eta, double angle, const ClusterSampling& sampling = {});

/// Greedy deduplication in input order: a point within `tol` of an earlier
/// kept point is dropped.
std::vector<Complex> deduplicate(std::span<const Complex> points, double tol);

}  // namespace hardy
