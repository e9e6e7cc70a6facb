#include "hardy/operators.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include <Eigen/SVD>

#include "hardy/errors.hpp"
#include "hardy/format.hpp"

namespace hardy {

// ---------------------------------------------------------------------------
// OperatorMatrix
// ---------------------------------------------------------------------------

OperatorMatrix::OperatorMatrix(ComplexMatrix entries) : entries_(std::move(entries)) {
  if (entries_.rows() < 1 || entries_.rows() != entries_.cols())
    throw ArgumentError("operator matrix must be square with dimension >= 1");
  if (!entries_.allFinite()) throw NumericalError("operator matrix has non-finite entries");
}

OperatorMatrix OperatorMatrix::principal_block(int m) const {
  if (m < 1 || m > dim()) throw ArgumentError("block size must lie in [1, N]");
  return OperatorMatrix(entries_.topLeftCorner(m, m));
}

double OperatorMatrix::max_modulus() const { return entries_.cwiseAbs().maxCoeff(); }

bool OperatorMatrix::is_hermitian(double tol) const {
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

// ---------------------------------------------------------------------------
// AnalyticSymbol
// ---------------------------------------------------------------------------

AnalyticSymbol AnalyticSymbol::shift_power(EtaMap map, double alpha, unsigned n) {
  if (!(alpha > 0.0)) throw ArgumentError("shift power needs alpha > 0");
  AnalyticSymbol s(Kind::ShiftPower, std::move(map));
  s.alpha_ = alpha;
  s.power_ = n;
  return s;
}

std::string AnalyticSymbol::label() const {
  const std::string& eta = map_.label();
  switch (kind_) {
    case Kind::Eta: return eta;
    case Kind::Prefactor: return "(2i+(" + eta + ")(1-z))/2i";
    case Kind::ShiftPower: return "(" + format_double(alpha_) + "i-(" + eta + "))^" + std::to_string(power_);
    case Kind::Reciprocal: return "2i/(2i+(" + eta + ")(1-z))";
    case Kind::PrintedFactor: return "2i(1-z)/(2i+(" + eta + ")(1-z))";
  }
  return eta;
}

series::Series AnalyticSymbol::taylor(std::size_t order) const {
  const series::Series eta = map_.taylor(order);
  const Complex two_i = 2.0 * kI;
  const std::vector<Complex> one_minus_z{1.0, -1.0};
  auto eta_times_one_minus_z = [&] { return series::multiply(eta, one_minus_z, order); };
  auto denominator = [&] { return series::add(std::vector<Complex>{two_i}, eta_times_one_minus_z(), order); };

  switch (kind_) {
    case Kind::Eta: return eta;
    case Kind::Prefactor:
      return series::add(std::vector<Complex>{1.0}, series::scale(eta_times_one_minus_z(), 1.0 / two_i, order), order);
    case Kind::ShiftPower: {
      series::Series base = series::scale(eta, -1.0, order);
      if (order > 0) base[0] += kI * alpha_;
      return series::power(base, power_, order);
    }
    case Kind::Reciprocal: return series::divide(std::vector<Complex>{two_i}, denominator(), order);
    case Kind::PrintedFactor:
      return series::divide(std::vector<Complex>{two_i, -two_i}, denominator(), order);
  }
  return {};
}

Complex AnalyticSymbol::boundary_value(double angle, Complex w) const {
  const Complex lambda = unit(angle);
  const Complex two_i = 2.0 * kI;
  const Complex one_minus = angle == 0.0 ? Complex{} : 1.0 - lambda;
  switch (kind_) {
    case Kind::Eta: return w;
    case Kind::Prefactor: return (two_i + w * one_minus) / two_i;
    case Kind::ShiftPower: return std::pow(kI * alpha_ - w, static_cast<int>(power_));
    case Kind::Reciprocal: return two_i / (two_i + w * one_minus);
    case Kind::PrintedFactor: return two_i * one_minus / (two_i + w * one_minus);
  }
  return {};
}

// ---------------------------------------------------------------------------
// Builders
// ---------------------------------------------------------------------------

OperatorMatrix toeplitz_matrix(const ToeplitzSymbol& symbol, int n, const FourierOptions& opts) {
  if (n < 1) throw ArgumentError("dimension must be >= 1");
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  if (const auto* pc = std::get_if<PiecewiseSymbol>(&symbol)) {
    const auto c = fourier_coefficients(*pc, n - 1, opts);
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) m(j, k) = c[static_cast<std::size_t>(j - k + n - 1)];
  } else {
    const auto t = std::get<AnalyticSymbol>(symbol).taylor(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k)
      for (int j = k; j < n; ++j) m(j, k) = t[static_cast<std::size_t>(j - k)];
  }
  return OperatorMatrix(std::move(m));
}

series::Series self_map_taylor(const EtaMap& eta, std::size_t order) {
  const series::Series e = eta.taylor(order);
  const Complex phi0 = e.front() / (2.0 * kI + e.front());
  if (!(std::abs(phi0) < 1.0 - 1e-14))
    throw ArgumentError("|phi(0)| >= 1: '" + eta.label() + "' does not define a self-map of the disc");
  // φ = (2iz + η(1−z)) / (2i + η(1−z))
  const std::vector<Complex> one_minus_z{1.0, -1.0};
  const series::Series eta_part = series::multiply(e, one_minus_z, order);
  const series::Series num = series::add(std::vector<Complex>{0.0, 2.0 * kI}, eta_part, order);
  const series::Series den = series::add(std::vector<Complex>{2.0 * kI}, eta_part, order);
  return series::divide(num, den, order);
}

OperatorMatrix composition_matrix(const EtaMap& eta, int n) {
  if (n < 1) throw ArgumentError("dimension must be >= 1");
  const auto phi = self_map_taylor(eta, static_cast<std::size_t>(n));
  ComplexMatrix m = ComplexMatrix::Zero(n, n);
  m(0, 0) = 1.0;
  // column k+1 = first n coefficients of (column k)·φ
  for (int k = 0; k + 1 < n; ++k) {
    for (int l = 0; l < n; ++l) {
      const Complex c = m(l, k);
      if (c == Complex{}) continue;
      for (int j = l; j < n; ++j) m(j, k + 1) += c * phi[static_cast<std::size_t>(j - l)];
    }
  }
  return OperatorMatrix(std::move(m));
}

OperatorMatrix composition_matrix(const ParabolicParam& param, int n) {
  return composition_matrix(param.as_eta(), n);
}

QuadratureScheme default_quadrature(int n) { return QuadratureScheme::gauss_laguerre(std::max(2 * n, 256)); }

namespace {

Eigen::VectorXcd sample_multiplier(const MultiplierSymbol& theta, const QuadratureScheme& q) {
  Eigen::VectorXcd v(q.size());
  for (int i = 0; i < q.size(); ++i) {
    v(i) = theta(q.t_node(i));
    if (!std::isfinite(v(i).real()) || !std::isfinite(v(i).imag()))
      throw NumericalError("multiplier '" + theta.label() + "' is not finite at a quadrature node");
  }
  return v;
}

}  // namespace

OperatorMatrix multiplier_matrix(const MultiplierSymbol& theta, int n, const QuadratureScheme& q) {
  if (n < 1) throw ArgumentError("dimension must be >= 1");
  if (q.size() < n) throw ArgumentError("quadrature rule needs at least N nodes");
  if (const double moments = q.moment_error(2 * n); moments > q.tolerance())
    throw NumericalError("quadrature moment test reached " + format_double(moments) + ", tolerance " +
                             format_double(q.tolerance()),
                         moments);

  const Eigen::MatrixXd table = q.weighted_laguerre_functions(n);
  const Eigen::VectorXcd values = sample_multiplier(theta, q);
  ComplexMatrix d;
  if (theta.is_real_valued()) {
    const Eigen::MatrixXd weighted = values.real().asDiagonal() * table;
    const Eigen::MatrixXd real = table.transpose() * weighted;
    d = real.cast<Complex>();
  } else {
    const ComplexMatrix weighted = values.asDiagonal() * table.cast<Complex>();
    d = table.transpose().cast<Complex>() * weighted;
  }

  // Cross-check the principal block and the last row with a finer rule.
  const QuadratureScheme fine = QuadratureScheme::gauss_laguerre(q.size() + q.size() / 2, q.tolerance());
  const Eigen::MatrixXd fine_table = fine.weighted_laguerre_functions(n);
  const Eigen::VectorXcd fine_values = sample_multiplier(theta, fine);
  const int m = std::min(n, 16);
  const ComplexMatrix weighted_fine = fine_values.asDiagonal() * fine_table.cast<Complex>();
  const ComplexMatrix block = fine_table.leftCols(m).transpose().cast<Complex>() * weighted_fine.leftCols(m);
  const ComplexMatrix last_row = fine_table.col(n - 1).transpose().cast<Complex>() * weighted_fine;
  const double achieved = std::max((block - d.topLeftCorner(m, m)).cwiseAbs().maxCoeff(),
                                   (last_row - d.row(n - 1)).cwiseAbs().maxCoeff());
  if (achieved > q.tolerance())
    throw NumericalError("multiplier quadrature for '" + theta.label() + "' reached " + format_double(achieved) +
                             ", tolerance " + format_double(q.tolerance()),
                         achieved);
  return OperatorMatrix(std::move(d));
}

OperatorMatrix multiplier_matrix(const MultiplierSymbol& theta, int n) {
  return multiplier_matrix(theta, n, default_quadrature(n));
}

std::vector<double> singular_values(const OperatorMatrix& m) {
  Eigen::BDCSVD<ComplexMatrix> svd(m.entries());
  if (svd.info() != Eigen::Success) throw NumericalError("singular value decomposition did not converge");
  const auto& s = svd.singularValues();
  return {s.data(), s.data() + s.size()};
}

// ---------------------------------------------------------------------------
// Expressions
// ---------------------------------------------------------------------------

namespace {

template <class Visitor>
void walk(const AlgebraExpression& e, Visitor&& visit) {
  visit(e);
  std::visit(
      [&](const auto& n) {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, expr::Sum> || std::is_same_v<T, expr::Product>) {
          walk(n.lhs, visit);
          walk(n.rhs, visit);
        } else if constexpr (std::is_same_v<T, expr::Scaled> || std::is_same_v<T, expr::Adjoint>) {
          walk(n.operand, visit);
        }
      },
      e.node().value);
}

}  // namespace

AlgebraExpression AlgebraExpression::identity() {
  return AlgebraExpression(std::make_shared<const expr::Node>(expr::Node{expr::Identity{}}));
}

AlgebraExpression AlgebraExpression::toeplitz(ToeplitzSymbol symbol) {
  return AlgebraExpression(std::make_shared<const expr::Node>(expr::Node{expr::Toeplitz{std::move(symbol)}}));
}

AlgebraExpression AlgebraExpression::multiplier(MultiplierSymbol symbol) {
  return AlgebraExpression(std::make_shared<const expr::Node>(expr::Node{expr::Multiplier{std::move(symbol)}}));
}

AlgebraExpression AlgebraExpression::composition(EtaMap map) {
  return AlgebraExpression(std::make_shared<const expr::Node>(expr::Node{expr::Composition{std::move(map)}}));
}

AlgebraExpression AlgebraExpression::composition(const ParabolicParam& param) { return composition(param.as_eta()); }

AlgebraExpression operator+(const AlgebraExpression& a, const AlgebraExpression& b) {
  return AlgebraExpression(std::make_shared<const expr::Node>(expr::Node{expr::Sum{a, b}}));
}

AlgebraExpression operator-(const AlgebraExpression& a, const AlgebraExpression& b) {
  return a + Complex{-1.0, 0.0} * b;
}

AlgebraExpression operator*(const AlgebraExpression& a, const AlgebraExpression& b) {
  return AlgebraExpression(std::make_shared<const expr::Node>(expr::Node{expr::Product{a, b}}));
}

AlgebraExpression operator*(Complex c, const AlgebraExpression& a) {
  return AlgebraExpression(std::make_shared<const expr::Node>(expr::Node{expr::Scaled{c, a}}));
}

AlgebraExpression adjoint(const AlgebraExpression& e) {
  return AlgebraExpression(std::make_shared<const expr::Node>(expr::Node{expr::Adjoint{e}}));
}

AlgebraExpression commutator(const AlgebraExpression& a, const AlgebraExpression& b) { return a * b - b * a; }

bool AlgebraExpression::contains_product() const {
  bool found = false;
  walk(*this, [&](const AlgebraExpression& e) { found = found || std::holds_alternative<expr::Product>(e.node().value); });
  return found;
}

std::vector<EtaMap> AlgebraExpression::etas() const {
  std::vector<EtaMap> out;
  auto add = [&](const EtaMap& m) {
    if (std::none_of(out.begin(), out.end(), [&](const EtaMap& k) { return k.label() == m.label(); })) out.push_back(m);
  };
  walk(*this, [&](const AlgebraExpression& e) {
    if (const auto* c = std::get_if<expr::Composition>(&e.node().value)) add(c->map);
    if (const auto* t = std::get_if<expr::Toeplitz>(&e.node().value))
      if (const auto* a = std::get_if<AnalyticSymbol>(&t->symbol)) add(a->map());
  });
  return out;
}

std::vector<double> AlgebraExpression::jump_angles() const {
  std::vector<double> out;
  walk(*this, [&](const AlgebraExpression& e) {
    if (const auto* t = std::get_if<expr::Toeplitz>(&e.node().value))
      if (const auto* p = std::get_if<PiecewiseSymbol>(&t->symbol))
        for (const auto& j : p->jumps()) out.push_back(j.angle);
  });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string AlgebraExpression::to_string() const {
  return std::visit(
      [](const auto& n) -> std::string {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, expr::Identity>) return "I";
        else if constexpr (std::is_same_v<T, expr::Toeplitz>)
          return "T[" + std::visit([](const auto& s) { return s.label(); }, n.symbol) + "]";
        else if constexpr (std::is_same_v<T, expr::Multiplier>) return "D[" + n.symbol.label() + "]";
        else if constexpr (std::is_same_v<T, expr::Composition>) return "C[" + n.map.label() + "]";
        else if constexpr (std::is_same_v<T, expr::Sum>) return "(" + n.lhs.to_string() + " + " + n.rhs.to_string() + ")";
        else if constexpr (std::is_same_v<T, expr::Product>) return n.lhs.to_string() + "*" + n.rhs.to_string();
        else if constexpr (std::is_same_v<T, expr::Scaled>) return "{" + format_complex(n.factor) + "}" + n.operand.to_string();
        else return "(" + n.operand.to_string() + ")'";
      },
      node().value);
}

namespace {

class Evaluator {
public:
  Evaluator(int dim, const EvaluationOptions& opts) : dim_(dim), opts_(opts) {}

  const ComplexMatrix& operator()(const AlgebraExpression& e) {
    if (auto it = memo_.find(e.id()); it != memo_.end()) return it->second;
    ComplexMatrix m = std::visit([&](const auto& n) { return build(n); }, e.node().value);
    return memo_.emplace(e.id(), std::move(m)).first->second;
  }

private:
  ComplexMatrix build(const expr::Identity&) { return ComplexMatrix::Identity(dim_, dim_); }
  ComplexMatrix build(const expr::Toeplitz& n) { return toeplitz_matrix(n.symbol, dim_, opts_.fourier).entries(); }
  ComplexMatrix build(const expr::Multiplier& n) {
    if (!rule_) rule_ = QuadratureScheme::gauss_laguerre(std::max(2 * dim_, 256), opts_.quadrature_tolerance);
    return multiplier_matrix(n.symbol, dim_, *rule_).entries();
  }
  ComplexMatrix build(const expr::Composition& n) { return composition_matrix(n.map, dim_).entries(); }
  ComplexMatrix build(const expr::Sum& n) { return (*this)(n.lhs) + (*this)(n.rhs); }
  ComplexMatrix build(const expr::Product& n) { return (*this)(n.lhs) * (*this)(n.rhs); }
  ComplexMatrix build(const expr::Scaled& n) { return n.factor * (*this)(n.operand); }
  ComplexMatrix build(const expr::Adjoint& n) { return (*this)(n.operand).adjoint(); }

  int dim_;
  const EvaluationOptions& opts_;
  std::optional<QuadratureScheme> rule_;
  std::unordered_map<const void*, ComplexMatrix> memo_;
};

}  // namespace

OperatorMatrix evaluate_expression(const AlgebraExpression& e, int n, const EvaluationOptions& opts) {
  if (n < 1) throw ArgumentError("dimension must be >= 1");
  int padding = 0;
  if (e.contains_product()) padding = opts.padding < 0 ? n / 2 : opts.padding;
  Evaluator eval(n + padding, opts);
  return OperatorMatrix(eval(e).topLeftCorner(n, n));
}

}  // namespace hardy
