#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hardy/quadrature.hpp"
#include "hardy/symbols.hpp"

namespace hardy {

/// Dense N×N finite section in the monomial basis z^0 … z^{N−1}.
class OperatorMatrix {
public:
  OperatorMatrix() = default;
  /// Throws ArgumentError for an empty, non-square or non-finite matrix.
  explicit OperatorMatrix(ComplexMatrix entries);

  static OperatorMatrix identity(int n) { return OperatorMatrix(ComplexMatrix::Identity(n, n)); }

  int dim() const noexcept { return static_cast<int>(entries_.rows()); }
  const ComplexMatrix& entries() const noexcept { return entries_; }
  Complex operator()(int j, int k) const { return entries_(j, k); }

  OperatorMatrix principal_block(int m) const;
  double max_modulus() const;
  bool is_hermitian(double tol) const;

private:
  ComplexMatrix entries_;
};

// ---------------------------------------------------------------------------
// Symbols derived from an analytic map η
// ---------------------------------------------------------------------------

/// Analytic (H^∞) Toeplitz symbols built from η. Their boundary values at a
/// fiber over λ only depend on λ and the value w that η takes there.
class AnalyticSymbol {
public:
  enum class Kind {
    Eta,            ///< η
    Prefactor,      ///< (2i + η(1−z))/2i
    ShiftPower,     ///< (iα − η)^n
    Reciprocal,     ///< 2i/(2i + η(1−z)), the multiplier in T_h C_φ = D_ϑ
    PrintedFactor,  ///< 2i(1−z)/(2i + η(1−z)), kept as a regression guard
  };

  static AnalyticSymbol eta(EtaMap map) { return {Kind::Eta, std::move(map)}; }
  static AnalyticSymbol prefactor(EtaMap map) { return {Kind::Prefactor, std::move(map)}; }
  static AnalyticSymbol shift_power(EtaMap map, double alpha, unsigned n);
  static AnalyticSymbol reciprocal(EtaMap map) { return {Kind::Reciprocal, std::move(map)}; }
  static AnalyticSymbol printed_factor(EtaMap map) { return {Kind::PrintedFactor, std::move(map)}; }

  Kind kind() const noexcept { return kind_; }
  const EtaMap& map() const noexcept { return map_; }
  double alpha() const noexcept { return alpha_; }
  unsigned power() const noexcept { return power_; }
  std::string label() const;

  series::Series taylor(std::size_t order) const;
  /// Boundary value at e^{i·angle} when η takes the value w there.
  Complex boundary_value(double angle, Complex w) const;

private:
  AnalyticSymbol(Kind kind, EtaMap map) : kind_(kind), map_(std::move(map)) {}
  Kind kind_;
  EtaMap map_;
  double alpha_ = 0.0;
  unsigned power_ = 0;
};

using ToeplitzSymbol = std::variant<PiecewiseSymbol, AnalyticSymbol>;

// ---------------------------------------------------------------------------
// Builders
// ---------------------------------------------------------------------------

/// Entry (j,k) = â(j−k).
OperatorMatrix toeplitz_matrix(const ToeplitzSymbol& symbol, int n,
                               const FourierOptions& opts = {});

/// Column n holds the first N Taylor coefficients of φ^n.
/// Throws ArgumentError when |φ(0)| ≥ 1.
OperatorMatrix composition_matrix(const EtaMap& eta, int n);
OperatorMatrix composition_matrix(const ParabolicParam& param, int n);
/// φ's Taylor coefficients through degree order−1.
series::Series self_map_taylor(const EtaMap& eta, std::size_t order);

/// Default rule used for an N-dimensional multiplier: max(2N, 64) nodes.
QuadratureScheme default_quadrature(int n);

/// Entry (m,n) = 2∫₀^∞ ϑ(t) L_m(2t) L_n(2t) e^{−2t} dt. The rule must pass
/// the moment test for k ≤ 2N, and the result is cross-checked on its
/// principal block and last row against a rule with 1.5× the nodes; either
/// failure above q.tolerance() throws NumericalError.
OperatorMatrix multiplier_matrix(const MultiplierSymbol& theta, int n, const QuadratureScheme& q);
OperatorMatrix multiplier_matrix(const MultiplierSymbol& theta, int n);

/// Descending singular values.
std::vector<double> singular_values(const OperatorMatrix& m);

// ---------------------------------------------------------------------------
// Formal expressions in the generators
// ---------------------------------------------------------------------------

class AlgebraExpression;

namespace expr {
struct Node;
}

/// Immutable expression tree over the generators: Toeplitz operators,
/// Fourier multipliers and composition operators, combined by sums,
/// products, scalar multiples and adjoints.
class AlgebraExpression {
public:
  static AlgebraExpression identity();
  static AlgebraExpression toeplitz(ToeplitzSymbol symbol);
  static AlgebraExpression multiplier(MultiplierSymbol symbol);
  static AlgebraExpression composition(EtaMap map);
  static AlgebraExpression composition(const ParabolicParam& param);

  const expr::Node& node() const noexcept { return *node_; }
  const void* id() const noexcept { return node_.get(); }
  bool contains_product() const;
  /// Every η referenced by a Composition leaf or an analytic Toeplitz leaf,
  /// in first-visit order, one entry per label.
  std::vector<EtaMap> etas() const;
  /// Jump locations of every piecewise Toeplitz leaf.
  std::vector<double> jump_angles() const;
  std::string to_string() const;

  friend AlgebraExpression operator+(const AlgebraExpression& a, const AlgebraExpression& b);
  friend AlgebraExpression operator-(const AlgebraExpression& a, const AlgebraExpression& b);
  friend AlgebraExpression operator*(const AlgebraExpression& a, const AlgebraExpression& b);
  friend AlgebraExpression operator*(Complex c, const AlgebraExpression& a);
  friend AlgebraExpression adjoint(const AlgebraExpression& e);

private:
  explicit AlgebraExpression(std::shared_ptr<const expr::Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const expr::Node> node_;
};

namespace expr {
struct Identity {};
struct Toeplitz { ToeplitzSymbol symbol; };
struct Multiplier { MultiplierSymbol symbol; };
struct Composition { EtaMap map; };
struct Sum { AlgebraExpression lhs, rhs; };
struct Product { AlgebraExpression lhs, rhs; };
struct Scaled { Complex factor; AlgebraExpression operand; };
struct Adjoint { AlgebraExpression operand; };

struct Node {
  std::variant<Identity, Toeplitz, Multiplier, Composition, Sum, Product, Scaled, Adjoint> value;
};
}  // namespace expr

AlgebraExpression adjoint(const AlgebraExpression& e);
AlgebraExpression commutator(const AlgebraExpression& a, const AlgebraExpression& b);

struct EvaluationOptions {
  /// Extra rows/columns carried through products; -1 selects N/2. Leaves
  /// are built at N + padding and the result is cut back to N×N.
  int padding = -1;
  FourierOptions fourier{};
  double quadrature_tolerance = 1e-9;
};

OperatorMatrix evaluate_expression(const AlgebraExpression& e, int n,
                                   const EvaluationOptions& opts = {});

}  // namespace hardy
