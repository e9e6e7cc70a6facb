#include <doctest.h>

#include "hardy/errors.hpp"
#include "hardy/expression_parser.hpp"
#include "hardy/verify.hpp"

using namespace hardy;
using literals::parse_expression;

namespace {

const EtaMap eta_i = EtaMap::constant({0.0, 1.0});

std::vector<double> geometric(double first, double ratio, int count) {
  std::vector<double> out;
  for (int k = 0; k < count; ++k) out.push_back(first * std::pow(ratio, k));
  return out;
}

}  // namespace

TEST_SUITE("classification policy") {
  CompactnessPolicy small_policy() {
    CompactnessPolicy p;
    p.k_star = 8;
    return p;
  }

  TEST_CASE("fast stable decay is compact") {
    const std::vector<std::vector<double>> sv{geometric(1.0, 0.5, 16), geometric(1.0, 0.5, 32)};
    CHECK(classify(sv, small_policy()) == Verdict::Compact);
  }

  TEST_CASE("persistent second singular value is non-compact") {
    auto a = geometric(1.0, 0.5, 16), b = geometric(1.0, 0.5, 32);
    b[1] = 0.45;
    a[1] = 0.3;
    std::string reason;
    CHECK(classify({a, b}, small_policy(), &reason) == Verdict::NonCompact);
    CHECK_FALSE(reason.empty());
  }

  TEST_CASE("slow decay without growth is inconclusive") {
    const std::vector<std::vector<double>> sv{geometric(1.0, 0.97, 16), geometric(1.0, 0.97, 32)};
    CompactnessPolicy p = small_policy();
    p.k_dagger = 16;
    p.floor_ratio = 0.9;
    CHECK(classify(sv, p) == Verdict::Inconclusive);
  }

  TEST_CASE("growth below the noise floor is ignored") {
    auto a = geometric(1.0, 0.1, 16), b = geometric(1.0, 0.1, 32);
    b[12] = 10 * a[12];
    CHECK(classify({a, b}, small_policy()) == Verdict::Compact);
  }

  TEST_CASE("policy indices are checked") {
    CHECK_THROWS_AS(classify({geometric(1.0, 0.5, 4)}, CompactnessPolicy{}), ArgumentError);
    CHECK(to_string(Verdict::NonCompact) == "non-compact");
  }
}

TEST_SUITE("compactness profiles") {
  TEST_CASE("rank-one commutator of the shift") {
    const auto e = parse_expression("[T[mono:1], T[mono:-1]]");
    const auto r = compactness_profile(e, {64, 128}, {1, 2, 32});
    CHECK(r.sigma[1][0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.sigma[1][1] < 1e-12);
    CHECK(r.verdict == Verdict::Compact);
  }

  TEST_CASE("continuous-step Toeplitz commutators are compact") {
    for (const char* text : {"[T[poly:0,1], T[step:0]]", "[T[trig:-1:1,0,1], T[step:2]]"}) {
      const auto r = compactness_profile(parse_expression(text), {128, 256}, {1, 32});
      CHECK_MESSAGE(r.verdict == Verdict::Compact, text, " ", r.reason);
    }
  }

  TEST_CASE("singular values are nonincreasing in k") {
    const auto r = compactness_profile(parse_expression("T[step:0]*T[step:0] - T[step:0*step:0]"), {64, 96},
                                       {1, 2, 4, 8, 16, 32});
    for (const auto& row : r.sigma) CHECK(std::is_sorted(row.rbegin(), row.rend()));
    CHECK_THROWS_AS(compactness_profile(parse_expression("I"), {64, 32}, {1}), ArgumentError);
    CHECK_THROWS_AS(compactness_profile(parse_expression("I"), {16}, {1}), ArgumentError);
  }
}

TEST_SUITE("identity residual") {
  TEST_CASE("corrected form holds, printed form fails") {
    for (Complex a : {Complex(0.0, 1.0), Complex(1.0, 1.0), Complex(0.0, 2.0)}) {
      CHECK(identity_residual(ParabolicParam(a), 256, 16) < 1e-6);
      CHECK(identity_residual(ParabolicParam(a), 256, 16, IdentityForm::Printed) >= 0.2);
    }
  }

  TEST_CASE("printed form at entry (1,0)") {
    const auto m = evaluate_expression(identity_expression(ParabolicParam({0.0, 1.0}), IdentityForm::Printed), 64);
    // printed product gives −4/9 at (1,0) where the multiplier has 2/9
    CHECK(std::abs(m(1, 0) - (-4.0 / 9.0 - 2.0 / 9.0)) < 1e-10);
  }

  TEST_CASE("identical sides give zero") {
    const auto c = AlgebraExpression::composition(ParabolicParam({0.0, 1.0}));
    CHECK(evaluate_expression(c - c, 64).max_modulus() == 0.0);
  }

  TEST_CASE("nonincreasing in N up to quadrature noise") {
    for (Complex a : {Complex(0.0, 1.0), Complex(1.0, 1.0), Complex(0.0, 2.0)}) {
      double previous = 1.0;
      for (int n : {64, 128, 256}) {
        const double r = identity_residual(ParabolicParam(a), n, 8);
        CHECK(r <= previous + 1e-12);
        previous = r;
      }
    }
  }

  TEST_CASE("block size limit") {
    CHECK_THROWS_AS(identity_residual(ParabolicParam({0.0, 1.0}), 64, 9), ArgumentError);
  }
}

TEST_SUITE("series") {
  TEST_CASE("choose_alpha examples") {
    CHECK(choose_alpha(eta_i) == 2.0);
    CHECK(series_ratio(eta_i, 2.0) == 0.5);
    const auto two_i = EtaMap::constant({0.0, 2.0});
    CHECK(choose_alpha(two_i) == 4.0);
    CHECK(series_ratio(two_i, 4.0) == 0.5);
    CHECK(series_ratio(eta_i, 1.0) == 0.0);
  }

  TEST_CASE("choose_alpha guarantees a ratio below one") {
    for (const auto& eta : {EtaMap::polynomial({{0.5, 1.0}, {0.0, 0.4}, {0.2, 0.0}}), EtaMap::exp_cusp()}) {
      const double alpha = choose_alpha(eta);
      CHECK(series_ratio(eta, alpha) < 1.0);
    }
  }

  TEST_CASE("ratio at least one is a configuration error") {
    CHECK_THROWS_AS(SeriesConfig::make(EtaMap::constant({0.0, 1.0}), 0.4, 5, 32, 4), ConfigurationError);
    CHECK_THROWS_AS(SeriesConfig::make(eta_i, -1.0, 5, 32, 4), ArgumentError);
  }

  TEST_CASE("residual curve for eta = i") {
    const auto cfg = SeriesConfig::make(eta_i, 2.0, 20, 256, 16);
    const auto r = series_approximation(eta_i, cfg);
    REQUIRE(r.residuals.size() == 21);
    CHECK(r.residuals.back() <= 1e-4);
    CHECK(r.residuals.front() > 0.0);
    for (std::size_t k = 1; k < r.residuals.size(); ++k) CHECK(r.residuals[k] <= r.residuals[k - 1]);
    CHECK(log_slope(r.residuals, {5, 10, 15, 20}) <= std::log(cfg.ratio) + 0.1);
  }

  TEST_CASE("large K agrees with the multiplier route") {
    const auto cfg = SeriesConfig::make(eta_i, 2.0, 40, 128, 8);
    const auto approx = series_approximation(eta_i, cfg).approximation;
    const auto via_identity = evaluate_expression(
        AlgebraExpression::toeplitz(AnalyticSymbol::prefactor(eta_i)) *
            AlgebraExpression::multiplier(MultiplierSymbol::exponential({0.0, 1.0})),
        128);
    CHECK((approx.entries() - via_identity.entries()).topLeftCorner(8, 8).cwiseAbs().maxCoeff() < 1e-8);
  }

  TEST_CASE("non-constant eta converges too") {
    const auto eta = EtaMap::polynomial({{0.0, 1.0}, {0.0, 0.25}});
    const double alpha = choose_alpha(eta);
    const auto cfg = SeriesConfig::make(eta, alpha, 30, 128, 8);
    const auto r = series_approximation(eta, cfg);
    CHECK(r.residuals.back() < 1e-3 * r.residuals.front());
  }

  TEST_CASE("log slope of an exact geometric curve") {
    const auto curve = geometric(3.0, 0.25, 10);
    CHECK(log_slope(curve, {1, 4, 9}) == doctest::Approx(std::log(0.25)));
  }
}

TEST_SUITE("finite section eigenvalues") {
  TEST_CASE("shift is nilpotent") {
    for (const auto& v : finite_section_eigenvalues(parse_expression("T[mono:1]"), 32)) CHECK(v == Complex(0.0));
  }

  TEST_CASE("identity") {
    for (const auto& v : finite_section_eigenvalues(parse_expression("I"), 8)) CHECK(v == Complex(1.0));
  }

  TEST_CASE("positive contraction") {
    for (const auto& v : finite_section_eigenvalues(parse_expression("D[exp:0+1i]"), 64)) {
      CHECK(v.imag() == 0.0);
      CHECK(v.real() > -1e-12);
      CHECK(v.real() <= 1.0 + 1e-9);
    }
  }

  TEST_CASE("general matrices") {
    const auto values = finite_section_eigenvalues(parse_expression("T[step:0] + {0+1i}T[mono:2]'"), 24);
    CHECK(values.size() == 24);
  }
}
