#include "hardy/gelfand.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hardy/errors.hpp"
#include "hardy/parallel.hpp"

namespace hardy {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

Complex surrogate_value(const EtaMap& eta, const QcSurrogate& q) {
  if (auto c = eta.constant_value()) return *c;
  const auto it = q.values.find(eta.label());
  if (it == q.values.end())
    throw ConfigurationError("eta '" + eta.label() + "' has no value in surrogate '" + q.path + "'");
  return it->second;
}

Complex fiber_value(const PiecewiseSymbol& a, double lambda, double s) {
  const auto [left, right] = a.one_sided_limits(lambda);
  return s * left + (1.0 - s) * right;
}

Complex evaluate(const AlgebraExpression& e, const IdealPoint& p) {
  return std::visit(
      [&](const auto& n) -> Complex {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, expr::Identity>) {
          return 1.0;
        } else if constexpr (std::is_same_v<T, expr::Toeplitz>) {
          if (const auto* pc = std::get_if<PiecewiseSymbol>(&n.symbol)) return fiber_value(*pc, p.lambda, p.s);
          const auto& an = std::get<AnalyticSymbol>(n.symbol);
          return an.boundary_value(p.lambda, surrogate_value(an.map(), p.surrogate));
        } else if constexpr (std::is_same_v<T, expr::Multiplier>) {
          return p.z ? n.symbol(*p.z) : n.symbol.value_at_infinity();
        } else if constexpr (std::is_same_v<T, expr::Composition>) {
          const Complex w = surrogate_value(n.map, p.surrogate);
          if (!p.z) return 0.0;
          return std::exp(kI * *p.z * w);
        } else if constexpr (std::is_same_v<T, expr::Sum>) {
          return evaluate(n.lhs, p) + evaluate(n.rhs, p);
        } else if constexpr (std::is_same_v<T, expr::Product>) {
          return evaluate(n.lhs, p) * evaluate(n.rhs, p);
        } else if constexpr (std::is_same_v<T, expr::Scaled>) {
          return n.factor * evaluate(n.operand, p);
        } else {
          return std::conj(evaluate(n.operand, p));
        }
      },
      e.node().value);
}

void check_grids(const SpectrumGrids& g) {
  if (!(g.t_min > 0.0) || !(g.t_max > g.t_min) || g.t_points < 2)
    throw ArgumentError("t-grid needs 0 < t_min < t_max and at least 2 points");
  if (g.s_points < 2) throw ArgumentError("s-grid needs at least 2 points");
  if (g.circle_points < 1) throw ArgumentError("circle grid needs at least 1 point");
}

/// s-values used at λ: the full grid at a jump, a single value elsewhere.
std::vector<double> s_values(bool jump, const SpectrumGrids& g) {
  return jump ? g.s_grid() : std::vector<double>{0.0};
}

bool has_jump_at(std::span<const double> jumps, double lambda) {
  return std::any_of(jumps.begin(), jumps.end(), [&](double j) { return j == lambda; });
}

/// One surrogate per approach sample, carrying the value of every
/// non-constant η; surrogates whose value tuples agree within tol collapse.
std::vector<QcSurrogate> surrogates_at(std::span<const EtaMap> etas, double lambda, const ClusterSampling& cfg) {
  std::vector<const EtaMap*> varying;
  for (const auto& e : etas)
    if (!e.constant_value()) varying.push_back(&e);
  if (varying.empty()) return {QcSurrogate{}};

  std::vector<QcSurrogate> out;
  for (const auto& sample : approach_samples(cfg)) {
    QcSurrogate q;
    q.path = sample.path + "@" + std::to_string(sample.depth);
    bool ok = true;
    for (const EtaMap* e : varying) {
      const Complex w = e->near_boundary(lambda, sample.offset);
      if (!finite(w)) {
        ok = false;
        break;
      }
      q.values.emplace(e->label(), w);
    }
    if (!ok) continue;
    const bool seen = std::any_of(out.begin(), out.end(), [&](const QcSurrogate& k) {
      for (const auto& [label, w] : q.values)
        if (std::abs(k.values.at(label) - w) > cfg.tolerance) return false;
      return true;
    });
    if (!seen) out.push_back(std::move(q));
  }
  if (out.empty()) throw NumericalError("every approach sample overflowed while building surrogates");
  return out;
}

}  // namespace

void IdealPoint::validate() const {
  if (!(lambda >= 0.0 && lambda < kTwoPi)) throw ArgumentError("ideal point angle must lie in [0, 2pi)");
  if (!(s >= 0.0 && s <= 1.0)) throw ArgumentError("ideal point s must lie in [0, 1]");
  if (z) {
    if (!(*z >= 0.0) || !std::isfinite(*z)) throw ArgumentError("ideal point z must be finite and >= 0, or infinity");
    if (lambda != 0.0) throw ArgumentError("a finite z requires lambda = 1");
  }
}

Complex gelfand_evaluate(const AlgebraExpression& e, const IdealPoint& p) {
  p.validate();
  return evaluate(e, p);
}

std::vector<double> SpectrumGrids::t_grid() const {
  check_grids(*this);
  std::vector<double> t{0.0};
  const double ratio = std::log(t_max / t_min);
  for (int k = 0; k < t_points; ++k) t.push_back(t_min * std::exp(ratio * k / (t_points - 1)));
  t.back() = t_max;
  t.push_back(kInf);
  return t;
}

std::vector<double> SpectrumGrids::s_grid() const {
  check_grids(*this);
  std::vector<double> s;
  for (int k = 0; k < s_points; ++k) s.push_back(static_cast<double>(k) / (s_points - 1));
  return s;
}

std::vector<double> SpectrumGrids::circle_grid(std::span<const double> extra) const {
  check_grids(*this);
  std::vector<double> angles;
  for (int k = 0; k < circle_points; ++k) angles.push_back(kTwoPi * k / circle_points);
  for (double a : extra) angles.push_back(normalize_angle(a));
  std::sort(angles.begin(), angles.end());
  angles.erase(std::unique(angles.begin(), angles.end()), angles.end());
  return angles;
}

SpectrumSet spectrum_product(const PiecewiseSymbol& a, const EtaMap& eta, const SpectrumGrids& grids) {
  const auto ts = grids.t_grid();
  const auto ss = s_values(a.has_jump_at(0.0), grids);
  const auto cluster = cluster_set(eta, 0.0, grids.cluster);
  const auto [left, right] = a.one_sided_limits(0.0);

  SpectrumSet out;
  for (double s : ss) {
    const Complex x = s * left + (1.0 - s) * right;
    for (const Complex w : cluster.points)
      for (double t : ts) out.points.push_back(std::isinf(t) ? Complex{} : x * std::exp(kI * w * t));
  }
  out.t_count = static_cast<int>(ts.size());
  out.s_count = static_cast<int>(ss.size());
  out.lambda_count = 1;
  out.cluster_count = static_cast<int>(cluster.points.size());
  out.description = "product a=" + a.label() + " eta=" + eta.label();
  return out;
}

SpectrumSet spectrum_sum(const PiecewiseSymbol& a, const EtaMap& eta, const SpectrumGrids& grids) {
  const auto ts = grids.t_grid();
  std::vector<double> jumps;
  for (const auto& j : a.jumps()) jumps.push_back(j.angle);
  const auto lambdas = grids.circle_grid(jumps);
  const auto cluster = cluster_set(eta, 0.0, grids.cluster);

  std::vector<Complex> translates;
  for (const Complex w : cluster.points)
    for (double t : ts) translates.push_back(std::isinf(t) ? Complex{} : std::exp(kI * w * t));

  SpectrumSet out;
  for (double lambda : lambdas) {
    const auto [left, right] = a.one_sided_limits(lambda);
    for (double s : s_values(has_jump_at(jumps, lambda), grids)) {
      const Complex x = s * left + (1.0 - s) * right;
      for (const Complex v : translates) out.points.push_back(x + v);
    }
  }
  out.t_count = static_cast<int>(ts.size());
  out.s_count = jumps.empty() ? 1 : grids.s_points;
  out.lambda_count = static_cast<int>(lambdas.size());
  out.cluster_count = static_cast<int>(cluster.points.size());
  out.description = "sum a=" + a.label() + " eta=" + eta.label();
  return out;
}

std::vector<IdealPoint> sample_ideal_points(const AlgebraExpression& e, const SpectrumGrids& grids) {
  const auto ts = grids.t_grid();
  const auto jumps = e.jump_angles();
  const auto etas = e.etas();
  const auto lambdas = grids.circle_grid(jumps);

  std::vector<IdealPoint> points;
  for (double s : s_values(has_jump_at(jumps, 0.0), grids))
    for (const auto& q : surrogates_at(etas, 0.0, grids.cluster))
      for (double t : ts)
        points.push_back({0.0, s, q, std::isinf(t) ? std::nullopt : std::optional<double>(t)});

  for (double lambda : lambdas) {
    if (lambda == 0.0) continue;
    const auto surrogates = surrogates_at(etas, lambda, grids.cluster);
    for (double s : s_values(has_jump_at(jumps, lambda), grids))
      for (const auto& q : surrogates) points.push_back({lambda, s, q, std::nullopt});
  }
  return points;
}

SpectrumSet spectrum_general(const AlgebraExpression& e, const SpectrumGrids& grids) {
  const auto points = sample_ideal_points(e, grids);
  SpectrumSet out;
  out.points.resize(points.size());
  parallel_for(points.size(), [&](std::size_t i) { out.points[i] = gelfand_evaluate(e, points[i]); });
  out.t_count = static_cast<int>(grids.t_grid().size());
  out.s_count = grids.s_points;
  out.lambda_count = static_cast<int>(grids.circle_grid(e.jump_angles()).size());
  out.cluster_count = static_cast<int>(surrogates_at(e.etas(), 0.0, grids.cluster).size());
  out.description = "general " + e.to_string();
  return out;
}

std::size_t spectrum_product_size(const PiecewiseSymbol& a, const EtaMap& eta, const SpectrumGrids& grids) {
  return s_values(a.has_jump_at(0.0), grids).size() * cluster_set(eta, 0.0, grids.cluster).points.size() *
         grids.t_grid().size();
}

std::size_t spectrum_sum_size(const PiecewiseSymbol& a, const EtaMap& eta, const SpectrumGrids& grids) {
  std::vector<double> jumps;
  for (const auto& j : a.jumps()) jumps.push_back(j.angle);
  const std::size_t translates = cluster_set(eta, 0.0, grids.cluster).points.size() * grids.t_grid().size();
  std::size_t count = 0;
  for (double lambda : grids.circle_grid(jumps)) count += s_values(has_jump_at(jumps, lambda), grids).size();
  return count * translates;
}

std::size_t spectrum_general_size(const AlgebraExpression& e, const SpectrumGrids& grids) {
  const auto jumps = e.jump_angles();
  const auto etas = e.etas();
  std::size_t count = s_values(has_jump_at(jumps, 0.0), grids).size() * surrogates_at(etas, 0.0, grids.cluster).size() *
                      grids.t_grid().size();
  for (double lambda : grids.circle_grid(jumps))
    if (lambda != 0.0)
      count += s_values(has_jump_at(jumps, lambda), grids).size() * surrogates_at(etas, lambda, grids.cluster).size();
  return count;
}

double hausdorff_distance(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.empty() || b.empty()) throw ArgumentError("Hausdorff distance needs nonempty sets");
  auto directed = [](std::span<const Complex> from, std::span<const Complex> to) {
    double worst = 0.0;
    for (const Complex p : from) {
      double best = kInf;
      for (const Complex q : to) best = std::min(best, std::abs(p - q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

double hausdorff_distance(const SpectrumSet& a, const SpectrumSet& b) {
  return hausdorff_distance(std::span<const Complex>(a.points), std::span<const Complex>(b.points));
}

}  // namespace hardy
