#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hardy/operators.hpp"

namespace hardy {

/// Point-evaluation surrogate for a functional in the fiber M_λ(QC): the
/// approach path it came from and the value each registered η takes along it
/// (keyed by EtaMap::label()).
struct QcSurrogate {
  std::string path = "none";
  std::map<std::string, Complex> values;
};

/// A sampled point (x, y, z) of the maximal ideal space: x = (λ, s) on the
/// Gohberg–Krupnik cylinder, y given by a QcSurrogate over the same λ, and
/// z ∈ [0, ∞] (std::nullopt stands for ∞). z finite forces λ = 1.
struct IdealPoint {
  double lambda = 0.0;
  double s = 0.0;
  QcSurrogate surrogate;
  std::optional<double> z;

  /// Throws ArgumentError when an invariant is violated.
  void validate() const;
};

/// Γ(e)(p). Toeplitz(a) ↦ s·a(λ⁻) + (1−s)·a(λ⁺); Multiplier(ϑ) ↦ ϑ(z);
/// Composition(η) ↦ exp(i·z·w), 0 at z = ∞; nodes are mapped
/// homomorphically. Constant η needs no registration; any other η without a
/// surrogate value throws ConfigurationError.
Complex gelfand_evaluate(const AlgebraExpression& e, const IdealPoint& p);

struct SpectrumGrids {
  double t_min = 1e-3;
  double t_max = 40.0;
  int t_points = 2500;   ///< log-spaced on [t_min, t_max]; t = 0 and ∞ are added
  int s_points = 101;    ///< uniform on [0, 1], used only at jumps
  int circle_points = 256;
  ClusterSampling cluster{};

  /// 0, the log grid, then +∞.
  std::vector<double> t_grid() const;
  std::vector<double> s_grid() const;
  /// Uniform angles plus the given jump angles, sorted, deduplicated.
  std::vector<double> circle_grid(std::span<const double> extra) const;
};

struct SpectrumSet {
  std::vector<Complex> points;
  int t_count = 0;
  int s_count = 0;
  int lambda_count = 0;
  int cluster_count = 0;
  std::string description;
};

/// {(s a(1⁻) + (1−s) a(1⁺)) e^{iwt} : w ∈ C₁(η), t ∈ [0, ∞], s ∈ [0, 1]}.
/// Ordered by (s, w, t); s only varies where a jumps at 1.
SpectrumSet spectrum_product(const PiecewiseSymbol& a, const EtaMap& eta,
                             const SpectrumGrids& grids = {});

/// {(s a(λ⁻) + (1−s) a(λ⁺)) + e^{iwt} : λ, s, w ∈ C₁(η), t ∈ [0, ∞]}.
SpectrumSet spectrum_sum(const PiecewiseSymbol& a, const EtaMap& eta,
                         const SpectrumGrids& grids = {});

/// The ideal points sampled for e: the λ = 1 stratum with z over the t-grid
/// and ∞, then every other circle-grid λ with z = ∞.
std::vector<IdealPoint> sample_ideal_points(const AlgebraExpression& e,
                                            const SpectrumGrids& grids = {});

/// {Γ(e)(p)} over sample_ideal_points(e, grids), in the same order.
SpectrumSet spectrum_general(const AlgebraExpression& e, const SpectrumGrids& grids = {});

/// Number of points the corresponding spectrum call would return, computed
/// without materialising the set.
std::size_t spectrum_product_size(const PiecewiseSymbol& a, const EtaMap& eta, const SpectrumGrids& grids = {});
std::size_t spectrum_sum_size(const PiecewiseSymbol& a, const EtaMap& eta, const SpectrumGrids& grids = {});
std::size_t spectrum_general_size(const AlgebraExpression& e, const SpectrumGrids& grids = {});

/// Symmetric Hausdorff distance between finite point sets.
double hausdorff_distance(std::span<const Complex> a, std::span<const Complex> b);
double hausdorff_distance(const SpectrumSet& a, const SpectrumSet& b);

}  // namespace hardy
