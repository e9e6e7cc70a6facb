#include "hardy/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

#include <boost/math/quadrature/gauss.hpp>

#include "hardy/errors.hpp"
#include "hardy/format.hpp"

namespace hardy {
namespace {

constexpr double kAngleTol = 1e-12;

bool same_angle(double a, double b) {
  const double d = std::abs(normalize_angle(a) - normalize_angle(b));
  return d < kAngleTol || kTwoPi - d < kAngleTol;
}

bool finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

double unit_step_coefficient_scale(int n) { return 1.0 / (kTwoPi * n); }

/// û_λ(n) = λ^{−n} û₁(n), û₁(0) = 1/2, û₁(n) = i/(2πn).
Complex step_coefficient(double location, int n) {
  if (n == 0) return 0.5;
  return kI * unit_step_coefficient_scale(n) * unit(-n * location);
}

Complex trig_value(const TrigPolynomial& p, double theta) {
  Complex acc{};
  for (std::size_t k = 0; k < p.coefficients.size(); ++k)
    acc += p.coefficients[k] * unit((static_cast<int>(k) + p.lowest_index) * theta);
  return acc;
}

Complex sampled_value(const SampledCurve& c, double theta) {
  const std::size_t m = c.values.size();
  const double x = normalize_angle(theta) / kTwoPi * static_cast<double>(m);
  auto i = static_cast<std::size_t>(std::floor(x));
  if (i >= m) i = m - 1;
  const double f = x - static_cast<double>(i);
  return (1.0 - f) * c.values[i] + f * c.values[(i + 1) % m];
}

/// Angles where the continuous part or the steps are not smooth.
std::vector<double> kinks(const PiecewiseSymbol& s) {
  std::vector<double> out;
  for (const auto& j : s.jumps()) out.push_back(j.angle);
  if (const auto* sc = std::get_if<SampledCurve>(&s.continuous_part())) {
    const std::size_t m = sc->values.size();
    for (std::size_t k = 0; k < m; ++k) out.push_back(kTwoPi * static_cast<double>(k) / static_cast<double>(m));
  } else if (const auto* cc = std::get_if<CompositeCurve>(&s.continuous_part())) {
    out.insert(out.end(), cc->breakpoints.begin(), cc->breakpoints.end());
  }
  return out;
}

std::vector<double> sorted_unique_angles(std::vector<double> angles) {
  for (auto& a : angles) a = normalize_angle(a);
  std::sort(angles.begin(), angles.end());
  std::vector<double> out;
  for (double a : angles)
    if (out.empty() || a - out.back() > kAngleTol) out.push_back(a);
  if (out.size() > 1 && kTwoPi - out.back() < kAngleTol) out.pop_back();
  return out;
}

/// (1/2π)∫₀^{2π} f(θ) e^{−inθ} dθ for n in [lo, hi], composite 30-point
/// Gauss–Legendre panels on the arcs between breakpoints. Each arc gets
/// enough panels that e^{−inθ} turns by at most 16 radians per panel; the
/// panel count is doubled until two successive levels agree to tolerance.
std::vector<Complex> quadrature_coefficients(const std::function<Complex(double)>& f,
                                             const std::vector<double>& breakpoints, int lo, int hi,
                                             const FourierOptions& opts) {
  using Rule = boost::math::quadrature::gauss<double, 30>;
  const auto& abscissa = Rule::abscissa();
  const auto& weights = Rule::weights();

  std::vector<double> edges = sorted_unique_angles(breakpoints);
  if (edges.empty() || edges.front() > kAngleTol) edges.insert(edges.begin(), 0.0);
  // arcs run edges[i] -> edges[i+1], the last one wraps to edges[0] + 2π
  edges.push_back(edges.front() + kTwoPi);

  const int kmax = std::max(std::abs(lo), std::abs(hi));
  const std::size_t count = static_cast<std::size_t>(hi - lo + 1);

  auto integrate = [&](int level) {
    std::vector<Complex> out(count, Complex{});
    for (std::size_t a = 0; a + 1 < edges.size(); ++a) {
      const double left = edges[a];
      const double len = edges[a + 1] - left;
      const int base = std::max(1, static_cast<int>(std::ceil(len * (kmax + 1) / 16.0)));
      const int panels = base << level;
      const double h = len / panels;
      for (int p = 0; p < panels; ++p) {
        const double mid = left + (p + 0.5) * h;
        for (std::size_t q = 0; q < abscissa.size(); ++q) {
          for (int sign : {-1, 1}) {
            const double theta = mid + sign * 0.5 * h * abscissa[q];
            const Complex g = f(theta) * (0.5 * h * weights[q] / kTwoPi);
            const Complex step = unit(-theta);
            Complex tw = unit(-lo * theta);
            for (std::size_t i = 0; i < count; ++i) {
              if (i % 32 == 0) tw = unit(-(lo + static_cast<int>(i)) * theta);
              out[i] += g * tw;
              tw *= step;
            }
          }
        }
      }
    }
    return out;
  };

  std::vector<Complex> previous = integrate(0);
  double achieved = 0.0;
  for (int level = 1; level <= opts.max_refinements; ++level) {
    std::vector<Complex> current = integrate(level);
    achieved = 0.0;
    for (std::size_t i = 0; i < count; ++i) achieved = std::max(achieved, std::abs(current[i] - previous[i]));
    if (achieved <= opts.tolerance) return current;
    previous = std::move(current);
  }
  throw NumericalError("Fourier quadrature did not converge: achieved " + format_double(achieved) +
                           " against tolerance " + format_double(opts.tolerance),
                       achieved);
}

std::vector<Complex> coefficient_range(const PiecewiseSymbol& s, int lo, int hi, const FourierOptions& opts) {
  const int kmax = std::max(std::abs(lo), std::abs(hi));
  if (kmax > opts.max_index)
    throw ArgumentError("Fourier index " + std::to_string(kmax) + " exceeds the configured maximum " +
                        std::to_string(opts.max_index));
  const std::size_t count = static_cast<std::size_t>(hi - lo + 1);
  std::vector<Complex> out(count, Complex{});

  std::visit(
      [&](const auto& part) {
        using T = std::decay_t<decltype(part)>;
        if constexpr (std::is_same_v<T, TrigPolynomial>) {
          for (std::size_t k = 0; k < part.coefficients.size(); ++k) {
            const int n = static_cast<int>(k) + part.lowest_index;
            if (n >= lo && n <= hi) out[static_cast<std::size_t>(n - lo)] += part.coefficients[k];
          }
        } else {
          const auto cont = [&s](double theta) { return s.continuous_value(theta); };
          const auto q = quadrature_coefficients(cont, kinks(s), lo, hi, opts);
          for (std::size_t i = 0; i < count; ++i) out[i] += q[i];
        }
      },
      s.continuous_part());

  for (const auto& j : s.jumps())
    for (std::size_t i = 0; i < count; ++i) out[i] += j.height * step_coefficient(j.angle, lo + static_cast<int>(i));
  return out;
}

}  // namespace

double canonical_step(double theta, double location) {
  if (same_angle(theta, location)) return 0.0;
  return normalize_angle(theta - location) / kTwoPi;
}

// ---------------------------------------------------------------------------
// PiecewiseSymbol
// ---------------------------------------------------------------------------

PiecewiseSymbol::PiecewiseSymbol(ContinuousPart continuous, std::vector<Jump> jumps, std::string label)
    : continuous_(std::move(continuous)), jumps_(std::move(jumps)), label_(std::move(label)) {
  std::visit(
      [](const auto& part) {
        using T = std::decay_t<decltype(part)>;
        if constexpr (std::is_same_v<T, TrigPolynomial>) {
          for (const auto& c : part.coefficients)
            if (!finite(c)) throw StructuralError("non-finite trigonometric coefficient");
        } else if constexpr (std::is_same_v<T, SampledCurve>) {
          if (part.values.empty()) throw StructuralError("sampled symbol needs at least one sample");
          for (const auto& c : part.values)
            if (!finite(c)) throw StructuralError("non-finite symbol sample");
        } else {
          if (!part.evaluate) throw StructuralError("composite symbol without an evaluator");
        }
      },
      continuous_);

  for (auto& j : jumps_) {
    if (!std::isfinite(j.angle) || !finite(j.height)) throw StructuralError("non-finite jump data");
    j.angle = normalize_angle(j.angle);
  }
  std::sort(jumps_.begin(), jumps_.end(), [](const Jump& a, const Jump& b) { return a.angle < b.angle; });
  for (std::size_t i = 0; i < jumps_.size(); ++i) {
    const Jump& next = jumps_[(i + 1) % jumps_.size()];
    if (jumps_.size() > 1 && same_angle(jumps_[i].angle, next.angle))
      throw StructuralError("jump locations must be pairwise distinct (angle " + format_double(next.angle) + ")");
  }
  if (label_.empty()) label_ = "symbol";
}

PiecewiseSymbol PiecewiseSymbol::constant(Complex c) {
  return PiecewiseSymbol(TrigPolynomial{0, {c}}, {}, "const:" + format_complex(c));
}

PiecewiseSymbol PiecewiseSymbol::monomial(int n, Complex c) {
  std::string label = "mono:" + std::to_string(n);
  if (c != Complex{1.0, 0.0}) label = format_complex(c) + "*" + label;
  return PiecewiseSymbol(TrigPolynomial{n, {c}}, {}, label);
}

PiecewiseSymbol PiecewiseSymbol::trig_polynomial(int lowest_index, std::vector<Complex> coefficients) {
  std::string label = "trig:" + std::to_string(lowest_index) + ":";
  for (std::size_t k = 0; k < coefficients.size(); ++k) label += (k ? "," : "") + format_complex(coefficients[k]);
  return PiecewiseSymbol(TrigPolynomial{lowest_index, std::move(coefficients)}, {}, label);
}

PiecewiseSymbol PiecewiseSymbol::sampled(std::vector<Complex> values) {
  const std::string label = "sampled:" + std::to_string(values.size());
  return PiecewiseSymbol(SampledCurve{std::move(values)}, {}, label);
}

PiecewiseSymbol PiecewiseSymbol::step(double angle, Complex height) {
  return PiecewiseSymbol(TrigPolynomial{0, {}}, {Jump{angle, height}},
                         "step:" + format_double(normalize_angle(angle)) + ":" + format_complex(height));
}

bool PiecewiseSymbol::is_real_valued(double tol) const {
  for (const auto& j : jumps_)
    if (std::abs(j.height.imag()) > tol) return false;
  return std::visit(
      [&](const auto& part) {
        using T = std::decay_t<decltype(part)>;
        if constexpr (std::is_same_v<T, TrigPolynomial>) {
          const int lo = part.lowest_index;
          const int hi = lo + static_cast<int>(part.coefficients.size()) - 1;
          auto coeff = [&](int n) {
            return (n >= lo && n <= hi) ? part.coefficients[static_cast<std::size_t>(n - lo)] : Complex{};
          };
          for (int n = std::min(lo, -hi); n <= std::max(hi, -lo); ++n)
            if (std::abs(coeff(n) - std::conj(coeff(-n))) > tol) return false;
          return true;
        } else if constexpr (std::is_same_v<T, SampledCurve>) {
          return std::all_of(part.values.begin(), part.values.end(),
                             [&](Complex v) { return std::abs(v.imag()) <= tol; });
        } else {
          for (int k = 0; k < 512; ++k)
            if (std::abs(part.evaluate(kTwoPi * (k + 0.5) / 512.0).imag()) > tol) return false;
          return true;
        }
      },
      continuous_);
}

bool PiecewiseSymbol::has_jump_at(double angle) const {
  return std::any_of(jumps_.begin(), jumps_.end(), [&](const Jump& j) { return same_angle(j.angle, angle); });
}

Complex PiecewiseSymbol::continuous_value(double theta) const {
  return std::visit(
      [&](const auto& part) -> Complex {
        using T = std::decay_t<decltype(part)>;
        if constexpr (std::is_same_v<T, TrigPolynomial>) return trig_value(part, theta);
        else if constexpr (std::is_same_v<T, SampledCurve>) return sampled_value(part, theta);
        else return part.evaluate(normalize_angle(theta));
      },
      continuous_);
}

Complex PiecewiseSymbol::value(double theta) const {
  Complex v = continuous_value(theta);
  for (const auto& j : jumps_) v += j.height * canonical_step(theta, j.angle);
  return v;
}

std::pair<Complex, Complex> PiecewiseSymbol::one_sided_limits(double angle) const {
  const Complex base = continuous_value(angle);
  Complex left = base, right = base;
  for (const auto& j : jumps_) {
    if (same_angle(angle, j.angle)) {
      left += j.height;  // u_λ(λ⁻) = 1, u_λ(λ⁺) = 0
    } else {
      const Complex v = j.height * canonical_step(angle, j.angle);
      left += v;
      right += v;
    }
  }
  return {left, right};
}

double PiecewiseSymbol::sup_norm(int samples) const {
  double sup = 0.0;
  for (int k = 0; k < samples; ++k) {
    const auto [l, r] = one_sided_limits(kTwoPi * k / samples);
    sup = std::max({sup, std::abs(l), std::abs(r)});
  }
  for (const auto& j : jumps_) {
    const auto [l, r] = one_sided_limits(j.angle);
    sup = std::max({sup, std::abs(l), std::abs(r)});
  }
  return sup;
}

PiecewiseSymbol operator*(Complex c, const PiecewiseSymbol& a) {
  ContinuousPart part = std::visit(
      [&](const auto& p) -> ContinuousPart {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, TrigPolynomial>) {
          TrigPolynomial out = p;
          for (auto& v : out.coefficients) v *= c;
          return out;
        } else if constexpr (std::is_same_v<T, SampledCurve>) {
          SampledCurve out = p;
          for (auto& v : out.values) v *= c;
          return out;
        } else {
          return CompositeCurve{[c, f = p.evaluate](double t) { return c * f(t); }, p.breakpoints};
        }
      },
      a.continuous_part());
  std::vector<Jump> jumps(a.jumps().begin(), a.jumps().end());
  for (auto& j : jumps) j.height *= c;
  return PiecewiseSymbol(std::move(part), std::move(jumps), format_complex(c) + "*(" + a.label() + ")");
}

PiecewiseSymbol operator+(const PiecewiseSymbol& a, const PiecewiseSymbol& b) {
  std::vector<Jump> jumps(a.jumps().begin(), a.jumps().end());
  for (const auto& j : b.jumps()) {
    auto it = std::find_if(jumps.begin(), jumps.end(), [&](const Jump& k) { return same_angle(k.angle, j.angle); });
    if (it != jumps.end()) it->height += j.height;
    else jumps.push_back(j);
  }
  std::erase_if(jumps, [](const Jump& j) { return j.height == Complex{}; });

  const auto* ta = std::get_if<TrigPolynomial>(&a.continuous_part());
  const auto* tb = std::get_if<TrigPolynomial>(&b.continuous_part());
  ContinuousPart part;
  if (ta && tb) {
    const bool ea = ta->coefficients.empty(), eb = tb->coefficients.empty();
    const int lo = ea ? tb->lowest_index : eb ? ta->lowest_index : std::min(ta->lowest_index, tb->lowest_index);
    const int hi = std::max(ea ? lo : ta->lowest_index + static_cast<int>(ta->coefficients.size()) - 1,
                            eb ? lo : tb->lowest_index + static_cast<int>(tb->coefficients.size()) - 1);
    TrigPolynomial sum{lo, std::vector<Complex>(static_cast<std::size_t>(hi - lo + 1), Complex{})};
    for (const auto* t : {ta, tb})
      for (std::size_t k = 0; k < t->coefficients.size(); ++k)
        sum.coefficients[static_cast<std::size_t>(t->lowest_index - lo) + k] += t->coefficients[k];
    part = std::move(sum);
  } else {
    auto pa = std::make_shared<const PiecewiseSymbol>(a);
    auto pb = std::make_shared<const PiecewiseSymbol>(b);
    std::vector<double> bp = kinks(a);
    const auto kb = kinks(b);
    bp.insert(bp.end(), kb.begin(), kb.end());
    part = CompositeCurve{[pa, pb](double t) { return pa->continuous_value(t) + pb->continuous_value(t); },
                          sorted_unique_angles(bp)};
  }
  return PiecewiseSymbol(std::move(part), std::move(jumps), "(" + a.label() + ")+(" + b.label() + ")");
}

PiecewiseSymbol operator*(const PiecewiseSymbol& a, const PiecewiseSymbol& b) {
  const std::string label = a.label() + "*" + b.label();
  const auto* ta = std::get_if<TrigPolynomial>(&a.continuous_part());
  const auto* tb = std::get_if<TrigPolynomial>(&b.continuous_part());
  if (ta && tb && a.is_continuous() && b.is_continuous()) {
    TrigPolynomial prod{ta->lowest_index + tb->lowest_index, {}};
    if (!ta->coefficients.empty() && !tb->coefficients.empty()) {
      prod.coefficients = series::multiply(ta->coefficients, tb->coefficients,
                                           ta->coefficients.size() + tb->coefficients.size() - 1);
    }
    return PiecewiseSymbol(std::move(prod), {}, label);
  }

  // Jumps of the product: left−right of a·b at every jump location of either
  // factor. The continuous remainder is a·b minus those steps.
  std::vector<double> locations;
  for (const auto& j : a.jumps()) locations.push_back(j.angle);
  for (const auto& j : b.jumps()) locations.push_back(j.angle);
  locations = sorted_unique_angles(locations);
  std::vector<Jump> jumps;
  for (double loc : locations) {
    const auto [al, ar] = a.one_sided_limits(loc);
    const auto [bl, br] = b.one_sided_limits(loc);
    const Complex h = al * bl - ar * br;
    if (h != Complex{}) jumps.push_back({loc, h});
  }

  auto pa = std::make_shared<const PiecewiseSymbol>(a);
  auto pb = std::make_shared<const PiecewiseSymbol>(b);
  std::vector<double> bp = kinks(a);
  const auto kb = kinks(b);
  bp.insert(bp.end(), kb.begin(), kb.end());
  CompositeCurve remainder{[pa, pb, jumps](double t) {
                             Complex v = pa->value(t) * pb->value(t);
                             for (const auto& j : jumps) v -= j.height * canonical_step(t, j.angle);
                             return v;
                           },
                           sorted_unique_angles(bp)};
  return PiecewiseSymbol(std::move(remainder), std::move(jumps), label);
}

std::pair<Complex, Complex> one_sided_limits(const PiecewiseSymbol& s, double angle) {
  return s.one_sided_limits(angle);
}

Complex fourier_coefficient(const PiecewiseSymbol& s, int n, const FourierOptions& opts) {
  return coefficient_range(s, n, n, opts).front();
}

std::vector<Complex> fourier_coefficients(const PiecewiseSymbol& s, int max_index, const FourierOptions& opts) {
  if (max_index < 0) throw ArgumentError("max_index must be nonnegative");
  return coefficient_range(s, -max_index, max_index, opts);
}

int winding_index(const PiecewiseSymbol& s, int samples, double margin) {
  if (!s.is_continuous()) throw ArgumentError("winding_index needs a continuous symbol; '" + s.label() + "' has jumps");
  if (samples < 3) throw ArgumentError("winding_index needs at least 3 samples");

  std::vector<Complex> curve(static_cast<std::size_t>(samples));
  for (int k = 0; k < samples; ++k) {
    curve[static_cast<std::size_t>(k)] = s.value(kTwoPi * k / samples);
    if (std::abs(curve[static_cast<std::size_t>(k)]) < margin)
      throw NotFredholmError("symbol '" + s.label() + "' vanishes within margin " + format_double(margin) +
                             "; T_a is not Fredholm");
  }
  double total = 0.0;
  for (int k = 0; k < samples; ++k) {
    const Complex a = curve[static_cast<std::size_t>(k)];
    const Complex b = curve[static_cast<std::size_t>((k + 1) % samples)];
    const double inc = std::arg(b / a);
    if (std::abs(inc) > kPi / 2)
      throw NumericalError("argument increment exceeds pi/2; increase the sample count");
    total += inc;
  }
  const double winding = total / kTwoPi;
  const double rounded = std::round(winding);
  if (std::abs(winding - rounded) > 1e-6)
    throw NumericalError("accumulated argument is not a multiple of 2pi", std::abs(winding - rounded));
  return -static_cast<int>(rounded);
}

// ---------------------------------------------------------------------------
// MultiplierSymbol
// ---------------------------------------------------------------------------

MultiplierSymbol::MultiplierSymbol(Kind kind, std::function<Complex(double)> evaluate, Complex at_infinity,
                                   std::string label)
    : kind_(kind), evaluate_(std::move(evaluate)), at_infinity_(at_infinity), label_(std::move(label)) {}

void MultiplierSymbol::check_tail(double tolerance) const {
  for (double t : {1e8, 1e10, 1e12}) {
    const Complex v = evaluate_(t);
    if (!finite(v) || std::abs(v - at_infinity_) > tolerance)
      throw ArgumentError("multiplier '" + label_ + "' does not approach its value at infinity (t = " +
                          format_double(t) + ")");
  }
}

double MultiplierSymbol::sampled_sup() const {
  double sup = std::abs(evaluate_(0.0));
  constexpr int kPoints = 4000;
  for (int k = 0; k < kPoints; ++k) {
    const double t = std::pow(10.0, -6.0 + 18.0 * k / (kPoints - 1));
    const Complex v = evaluate_(t);
    if (!finite(v)) throw ArgumentError("multiplier '" + label_ + "' is not bounded on [0, inf)");
    sup = std::max(sup, std::abs(v));
  }
  return std::max(sup, std::abs(at_infinity_));
}

MultiplierSymbol MultiplierSymbol::constant(Complex c) {
  MultiplierSymbol m(Kind::Constant, [c](double) { return c; }, c, "const:" + format_complex(c));
  m.sup_norm_ = std::abs(c);
  m.real_valued_ = c.imag() == 0.0;
  return m;
}

MultiplierSymbol MultiplierSymbol::exponential(Complex a) {
  if (!(a.imag() > 0.0)) throw ArgumentError("exponential multiplier needs Im a > 0");
  MultiplierSymbol m(Kind::Exponential, [a](double t) { return std::exp(kI * a * t); }, 0.0,
                     "exp:" + format_complex(a));
  m.sup_norm_ = 1.0;
  m.real_valued_ = a.real() == 0.0;
  m.exponent_ = a;
  return m;
}

MultiplierSymbol MultiplierSymbol::series_term(unsigned n, double alpha) {
  if (!(alpha > 0.0)) throw ArgumentError("series term needs alpha > 0");
  const Complex phase = std::pow(-kI, static_cast<int>(n));
  const double log_nfact = std::lgamma(n + 1.0);
  auto eval = [n, alpha, phase, log_nfact](double t) -> Complex {
    if (n == 0) return std::exp(-alpha * t);
    if (t <= 0.0) return 0.0;
    return phase * std::exp(n * std::log(t) - alpha * t - log_nfact);
  };
  MultiplierSymbol m(Kind::SeriesTerm, eval, 0.0,
                     "series:" + std::to_string(n) + ":" + format_double(alpha));
  m.sup_norm_ = n == 0 ? 1.0 : std::exp(n * std::log(n / alpha) - n - log_nfact);
  m.real_valued_ = n % 2 == 0;
  return m;
}

MultiplierSymbol MultiplierSymbol::rational(std::vector<Complex> numerator, std::vector<Complex> denominator) {
  auto trim = [](std::vector<Complex>& c) {
    while (!c.empty() && c.back() == Complex{}) c.pop_back();
  };
  trim(numerator);
  trim(denominator);
  if (denominator.empty()) throw ArgumentError("rational multiplier with zero denominator");
  if (numerator.size() > denominator.size()) throw ArgumentError("rational multiplier is unbounded at infinity");

  std::string label = "rational:";
  for (std::size_t k = 0; k < numerator.size(); ++k) label += (k ? "," : "") + format_complex(numerator[k]);
  if (numerator.empty()) label += "0";
  label += "/";
  for (std::size_t k = 0; k < denominator.size(); ++k) label += (k ? "," : "") + format_complex(denominator[k]);

  const Complex at_inf = numerator.size() == denominator.size() ? numerator.back() / denominator.back() : Complex{};
  auto eval = [numerator, denominator](double t) -> Complex {
    // evaluate in 1/t for large t to keep the ratio finite
    if (t > 1.0) {
      const double u = 1.0 / t;
      const std::size_t d = denominator.size() - 1;
      Complex num{}, den{};
      for (std::size_t k = 0; k < numerator.size(); ++k) num += numerator[k] * std::pow(u, static_cast<double>(d - k));
      for (std::size_t k = 0; k <= d; ++k) den += denominator[k] * std::pow(u, static_cast<double>(d - k));
      return num / den;
    }
    return series::evaluate(numerator, t) / series::evaluate(denominator, t);
  };
  bool real = true;
  for (const auto* c : {&numerator, &denominator})
    for (const auto& v : *c) real = real && v.imag() == 0.0;

  MultiplierSymbol m(Kind::Rational, eval, at_inf, label);
  // denominator must not vanish on [0, ∞)
  const double scale = std::abs(denominator.front()) + std::abs(denominator.back());
  for (int k = 0; k <= 4000; ++k) {
    const double t = k == 0 ? 0.0 : std::pow(10.0, -6.0 + 18.0 * (k - 1) / 3999.0);
    const double u = t > 1.0 ? 1.0 / t : 1.0;
    Complex den{};
    const std::size_t d = denominator.size() - 1;
    for (std::size_t j = 0; j <= d; ++j)
      den += denominator[j] * (t > 1.0 ? std::pow(u, static_cast<double>(d - j)) : std::pow(t, static_cast<double>(j)));
    if (std::abs(den) < 1e-12 * scale) throw ArgumentError("rational multiplier denominator vanishes on [0, inf)");
  }
  m.check_tail(1e-6);
  m.sup_norm_ = m.sampled_sup();
  m.real_valued_ = real;
  return m;
}

MultiplierSymbol MultiplierSymbol::general(std::function<Complex(double)> evaluate, Complex at_infinity,
                                           std::string label, double tail_tolerance) {
  if (!evaluate) throw ArgumentError("multiplier without an evaluator");
  MultiplierSymbol m(Kind::General, std::move(evaluate), at_infinity, std::move(label));
  m.check_tail(tail_tolerance);
  m.sup_norm_ = m.sampled_sup();
  bool real = at_infinity.imag() == 0.0;
  for (int k = 0; k < 200 && real; ++k) real = m.evaluate_(std::pow(10.0, -3.0 + 6.0 * k / 199.0)).imag() == 0.0;
  m.real_valued_ = real;
  return m;
}

MultiplierSymbol operator*(const MultiplierSymbol& a, const MultiplierSymbol& b) {
  auto fa = a.evaluate_;
  auto fb = b.evaluate_;
  MultiplierSymbol m(MultiplierSymbol::Kind::General, [fa, fb](double t) { return fa(t) * fb(t); },
                     a.at_infinity_ * b.at_infinity_, "(" + a.label_ + ")*(" + b.label_ + ")");
  m.sup_norm_ = m.sampled_sup();
  m.real_valued_ = a.real_valued_ && b.real_valued_;
  return m;
}

// ---------------------------------------------------------------------------
// EtaMap
// ---------------------------------------------------------------------------

EtaMap::EtaMap(Kind kind, std::vector<Complex> coefficients, std::string label)
    : kind_(kind), coefficients_(std::move(coefficients)), label_(std::move(label)) {}

EtaMap EtaMap::constant(Complex w) {
  if (!finite(w) || !(w.imag() > 0.0)) throw ArgumentError("constant eta needs Im eta > 0");
  EtaMap m(Kind::Constant, {w}, "const:" + format_complex(w));
  m.epsilon_ = w.imag();
  m.sup_norm_ = std::abs(w);
  return m;
}

EtaMap EtaMap::polynomial(std::vector<Complex> coefficients, std::optional<double> epsilon) {
  while (coefficients.size() > 1 && coefficients.back() == Complex{}) coefficients.pop_back();
  if (coefficients.empty()) throw ArgumentError("polynomial eta needs coefficients");
  for (const auto& c : coefficients)
    if (!finite(c)) throw ArgumentError("non-finite eta coefficient");
  std::string label = "poly:";
  for (std::size_t k = 0; k < coefficients.size(); ++k) label += (k ? "," : "") + format_complex(coefficients[k]);

  EtaMap m(Kind::Polynomial, std::move(coefficients), label);
  // Im η is harmonic, so its infimum and |η|'s supremum sit on the circle.
  constexpr int kAngles = 2048;
  double inf_im = std::numeric_limits<double>::infinity();
  double sup_abs = 0.0;
  double lipschitz = 0.0;
  for (std::size_t k = 1; k < m.coefficients_.size(); ++k) lipschitz += k * std::abs(m.coefficients_[k]);
  for (int k = 0; k < kAngles; ++k) {
    const Complex v = m(unit(kTwoPi * k / kAngles));
    inf_im = std::min(inf_im, v.imag());
    sup_abs = std::max(sup_abs, std::abs(v));
  }
  // grid values miss the true extremes by at most lipschitz · (half spacing)
  const double slack = lipschitz * kPi / kAngles;
  m.sup_norm_ = sup_abs + slack;
  if (epsilon) {
    m.epsilon_ = *epsilon;
  } else {
    m.epsilon_ = inf_im - slack;
    if (m.coefficients_.size() == 1) m.epsilon_ = inf_im;
  }
  if (!(m.epsilon_ > 0.0)) throw ArgumentError("eta '" + label + "' needs Im eta >= epsilon > 0");
  m.spot_check();
  return m;
}

EtaMap EtaMap::exp_cusp() {
  EtaMap m(Kind::ExpCusp, {}, "eta-exp");
  m.epsilon_ = 1.0;
  m.sup_norm_ = 3.0;
  m.spot_check();
  return m;
}

void EtaMap::spot_check() {
  for (double r : {0.0, 0.25, 0.5, 0.75, 0.9, 0.99, 0.999, 1.0}) {
    if (r == 1.0 && kind_ == Kind::ExpCusp) continue;
    for (int k = 0; k < 64; ++k) {
      const Complex v = (*this)(r * unit(kTwoPi * k / 64.0));
      if (!finite(v)) throw ArgumentError("eta '" + label_ + "' is not finite on the disc grid");
      if (v.imag() < epsilon_ - 1e-12)
        throw ArgumentError("eta '" + label_ + "' violates Im eta >= " + format_double(epsilon_) + " on the disc grid");
      if (std::abs(v) > sup_norm_ * (1 + 1e-12) + 1e-12)
        throw ArgumentError("eta '" + label_ + "' exceeds its recorded sup-norm");
    }
  }
}

Complex EtaMap::operator()(Complex z) const {
  switch (kind_) {
    case Kind::Constant: return coefficients_.front();
    case Kind::Polynomial: return series::evaluate(coefficients_, z);
    case Kind::ExpCusp: return 2.0 * kI + std::exp(-(1.0 + z) / (1.0 - z));
  }
  return {};
}

Complex EtaMap::near_boundary(double angle, Complex offset) const {
  const Complex lambda = unit(angle);
  const Complex z = lambda * (1.0 - offset);
  if (kind_ != Kind::ExpCusp) return (*this)(z);
  const Complex one_minus_z = (1.0 - lambda) + lambda * offset;
  return 2.0 * kI + std::exp(-(1.0 + z) / one_minus_z);
}

series::Series EtaMap::taylor(std::size_t order) const {
  switch (kind_) {
    case Kind::Constant:
    case Kind::Polynomial: return series::truncate(coefficients_, order);
    case Kind::ExpCusp: {
      // −(1+z)/(1−z) = −1 − 2Σ_{k≥1} z^k
      series::Series arg(order, Complex{-2.0, 0.0});
      if (order > 0) arg[0] = -1.0;
      auto out = series::exp(arg, order);
      if (order > 0) out[0] += 2.0 * kI;
      return out;
    }
  }
  return {};
}

std::optional<Complex> EtaMap::constant_value() const {
  if (kind_ == Kind::Constant) return coefficients_.front();
  if (kind_ == Kind::Polynomial && coefficients_.size() == 1) return coefficients_.front();
  return std::nullopt;
}

ParabolicParam::ParabolicParam(Complex a) : a_(a) {
  if (!finite(a) || !(a.imag() > 0.0)) throw ArgumentError("parabolic parameter needs Im a > 0");
}

Complex ParabolicParam::map(Complex z) const {
  return ((2.0 * kI - a_) * z + a_) / (-a_ * z + a_ + 2.0 * kI);
}

// ---------------------------------------------------------------------------
// Cluster sets
// ---------------------------------------------------------------------------

std::vector<ApproachSample> approach_samples(const ClusterSampling& cfg) {
  if (!(cfg.depth_min > 0.0) || !(cfg.depth_max >= cfg.depth_min) || cfg.depth_max >= 1.0)
    throw ArgumentError("cluster sampling needs 0 < depth_min <= depth_max < 1");
  if (cfg.samples_per_path < 1) throw ArgumentError("cluster sampling needs at least one sample per path");

  std::vector<double> depths;
  for (int k = 0; k < cfg.samples_per_path; ++k) {
    const double f = cfg.samples_per_path == 1 ? 0.0 : static_cast<double>(k) / (cfg.samples_per_path - 1);
    depths.push_back(cfg.depth_max * std::pow(cfg.depth_min / cfg.depth_max, f));
  }

  std::vector<ApproachSample> out;
  if (cfg.radial)
    for (double d : depths) out.push_back({"radial", d, Complex{d, 0.0}});
  for (double angle : cfg.stolz_angles) {
    if (!(std::abs(angle) < kPi / 2)) throw ArgumentError("Stolz angles must lie in (-pi/2, pi/2)");
    const std::string id = "stolz:" + format_double(angle);
    for (double d : depths) out.push_back({id, d, d * unit(-angle)});
  }
  for (double c : cfg.horocycle_offsets) {
    if (!(c > 0.0)) throw ArgumentError("horocycle offsets must be positive");
    for (int sign : {1, -1}) {
      const std::string id = "tangential:" + format_double(c) + (sign > 0 ? ":+" : ":-");
      for (double d : depths) {
        const double r = 2.0 / d;
        if (r <= c + 1.0) continue;
        const double y = sign * std::sqrt(r * r - (c + 1.0) * (c + 1.0));
        const Complex w{c, y};
        out.push_back({id, d, 2.0 / (w + 1.0)});
      }
    }
  }
  return out;
}

std::vector<Complex> deduplicate(std::span<const Complex> points, double tol) {
  std::vector<Complex> kept;
  for (const auto& p : points) {
    const bool seen = std::any_of(kept.begin(), kept.end(), [&](Complex k) { return std::abs(k - p) <= tol; });
    if (!seen) kept.push_back(p);
  }
  return kept;
}

ClusterSet cluster_set(const EtaMap& eta, double angle, const ClusterSampling& sampling) {
  ClusterSet out;
  out.radius_bound = eta.sup_norm();
  std::vector<Complex> values;
  for (const auto& s : approach_samples(sampling)) {
    if (out.paths.empty() || out.paths.back() != s.path) out.paths.push_back(s.path);
    ++out.samples;
    const Complex v = eta.near_boundary(angle, s.offset);
    if (!finite(v)) {
      ++out.skipped;
      continue;
    }
    values.push_back(v);
  }
  out.points = deduplicate(values, sampling.tolerance);
  return out;
}

}  // namespace hardy
