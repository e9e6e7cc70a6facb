#include <doctest.h>

#include "hardy/errors.hpp"
#include "hardy/expression_parser.hpp"
#include "hardy/operators.hpp"
#include "oracles.hpp"

using namespace hardy;

namespace {

const PiecewiseSymbol u1 = PiecewiseSymbol::step(0.0);
const ParabolicParam a_i({0.0, 1.0});

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("operator matrices reject bad input") {
  CHECK_THROWS_AS(OperatorMatrix(ComplexMatrix(0, 0)), ArgumentError);
  CHECK_THROWS_AS(OperatorMatrix(ComplexMatrix::Zero(2, 3)), ArgumentError);
  ComplexMatrix bad = ComplexMatrix::Zero(2, 2);
  bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS((void)OperatorMatrix(bad), NumericalError);
}

TEST_SUITE("toeplitz") {
  TEST_CASE("shift and constants") {
    const auto s = toeplitz_matrix(PiecewiseSymbol::monomial(1), 4).entries();
    ComplexMatrix shift = ComplexMatrix::Zero(4, 4);
    for (int k = 0; k < 3; ++k) shift(k + 1, k) = 1.0;
    CHECK(s == shift);
    const auto c = toeplitz_matrix(PiecewiseSymbol::constant({2.0, 1.0}), 5).entries();
    CHECK(c == Complex(2.0, 1.0) * ComplexMatrix::Identity(5, 5));
  }

  TEST_CASE("step symbol entries") {
    const auto t = toeplitz_matrix(u1, 3);
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        const Complex expected = j == k ? Complex(0.5) : Complex(0.0, 1.0 / (2 * kPi * (j - k)));
        CHECK(std::abs(t(j, k) - expected) < 1e-15);
      }
  }

  TEST_CASE("structure, hermitian symmetry, norm bound") {
    const auto s = u1 + PiecewiseSymbol::trig_polynomial(-1, {0.25, 0.0, 0.25});
    const auto t = toeplitz_matrix(s, 40);
    for (int j = 1; j < 40; ++j)
      for (int k = 1; k < 40; ++k) CHECK(t(j, k) == t(j - 1, k - 1));
    CHECK(t.is_hermitian(1e-14));
    CHECK(singular_values(t).front() <= s.sup_norm() + 1e-12);
  }

  TEST_CASE("analytic symbols are lower triangular") {
    const auto t = toeplitz_matrix(AnalyticSymbol::reciprocal(a_i.as_eta()), 6).entries();
    // h = 2/(3 − z) = (2/3) Σ (z/3)^k
    for (int j = 0; j < 6; ++j)
      for (int k = 0; k < 6; ++k) {
        const double expected = j >= k ? 2.0 / 3.0 * std::pow(1.0 / 3.0, j - k) : 0.0;
        CHECK(std::abs(t(j, k) - expected) < 1e-15);
      }
  }
}

TEST_SUITE("composition") {
  TEST_CASE("parabolic a = i against exact rational powers") {
    // φ = (1+z)/(3−z) = (1+z) · (1/3) Σ (z/3)^k
    const std::size_t order = 6;
    std::vector<oracle::Fraction> geometric(order);
    std::int64_t p = 3;
    for (std::size_t k = 0; k < order; ++k, p *= 3) geometric[k] = oracle::Fraction(1, p);
    const auto phi = oracle::multiply({1, 1}, geometric, order);
    std::vector<oracle::Fraction> power{1};
    power.resize(order);
    const auto c = composition_matrix(a_i, static_cast<int>(order));
    for (std::size_t n = 0; n < order; ++n) {
      for (std::size_t j = 0; j < order; ++j)
        CHECK(std::abs(c(static_cast<int>(j), static_cast<int>(n)) - power[j].value()) < 1e-15);
      power = oracle::multiply(power, phi, order);
    }
    CHECK(std::abs(c(1, 1) - 4.0 / 9.0) < 1e-15);
    CHECK(std::abs(c(2, 2) - 8.0 / 27.0) < 1e-15);
  }

  TEST_CASE("identity map and first column") {
    // η with φ(z) = z would need η = ∞; the first column is e₀ for every map.
    const auto c = composition_matrix(EtaMap::exp_cusp(), 8);
    CHECK(c(0, 0) == Complex(1.0));
    for (int j = 1; j < 8; ++j) CHECK(c(j, 0) == Complex(0.0));
  }

  TEST_CASE("parabolic semigroup blockwise") {
    const ParabolicParam a({0.5, 1.0}), b({-0.25, 0.5}), ab(a.a() + b.a());
    double previous = 1.0;
    for (int n : {32, 64, 128}) {
      const ComplexMatrix prod = composition_matrix(a, n).entries() * composition_matrix(b, n).entries();
      const double r = max_abs(prod.topLeftCorner(8, 8) - composition_matrix(ab, n).entries().topLeftCorner(8, 8));
      CHECK(r <= previous + 1e-15);
      previous = r;
    }
    CHECK(previous < 1e-12);
  }
}

TEST_SUITE("multiplier") {
  TEST_CASE("constant one is the identity") {
    const auto d = multiplier_matrix(MultiplierSymbol::constant(1.0), 64);
    CHECK(max_abs(d.entries() - ComplexMatrix::Identity(64, 64)) < 1e-10);
  }

  TEST_CASE("exponential symbol closed forms") {
    const auto d = multiplier_matrix(MultiplierSymbol::exponential({0.0, 1.0}), 8);
    CHECK(std::abs(d(0, 0) - 2.0 / 3.0) < 1e-12);
    CHECK(std::abs(d(0, 1) - 2.0 / 9.0) < 1e-12);
    CHECK(std::abs(d(1, 0) - 2.0 / 9.0) < 1e-12);
    CHECK(std::abs(d(1, 1) - 10.0 / 27.0) < 1e-12);
    auto theta = [](double t) { return Complex(std::exp(-t)); };
    for (int m = 0; m < 6; ++m)
      for (int n = 0; n < 6; ++n) CHECK(std::abs(d(m, n) - oracle::multiplier_entry(theta, m, n)) < 1e-11);
  }

  TEST_CASE("rational symbol against the exponential integral") {
    const auto d = multiplier_matrix(MultiplierSymbol::rational({1.0}, {1.0, 1.0}), 16);
    CHECK(std::abs(d(0, 0) - 2.0 * oracle::scaled_e1(2.0)) < 1e-10);
    CHECK(std::abs(d(0, 0) - 0.72265723) < 1e-8);
    auto theta = [](double t) { return Complex(1.0 / (1.0 + t)); };
    for (int m = 0; m < 5; ++m) CHECK(std::abs(d(m, 4 - m) - oracle::multiplier_entry(theta, m, 4 - m)) < 1e-10);
  }

  TEST_CASE("complex symbols give symmetric, non-hermitian matrices") {
    const auto theta = MultiplierSymbol::exponential({1.0, 1.0});
    const auto d = multiplier_matrix(theta, 12);
    auto f = [](double t) { return std::exp(Complex(-t, t)); };
    CHECK(std::abs(d(2, 3) - oracle::multiplier_entry(f, 2, 3)) < 1e-11);
    CHECK(d.entries().isApprox(d.entries().transpose()));
    CHECK_FALSE(d.is_hermitian(1e-3));
  }

  TEST_CASE("hermitian and norm bound for real symbols") {
    for (const auto& theta : {MultiplierSymbol::exponential({0.0, 1.0}), MultiplierSymbol::rational({1.0}, {1.0, 1.0})}) {
      const auto d = multiplier_matrix(theta, 128);
      CHECK(d.is_hermitian(1e-12));
      CHECK(singular_values(d).front() <= theta.sup_norm() + 1e-9);
    }
  }

  TEST_CASE("multiplicative up to truncation") {
    const auto t1 = MultiplierSymbol::exponential({0.0, 1.0});
    const auto t2 = MultiplierSymbol::rational({1.0}, {1.0, 1.0});
    double previous = 1.0;
    for (int n : {4, 8, 16, 32}) {
      const ComplexMatrix gap = multiplier_matrix(t1 * t2, n).entries() -
                                multiplier_matrix(t1, n).entries() * multiplier_matrix(t2, n).entries();
      const double r = max_abs(gap.topLeftCorner(4, 4));
      CHECK((r < previous || r < 1e-13));
      previous = r;
    }
    CHECK(previous < 1e-13);
  }

  TEST_CASE("unmet tolerance reports the achieved error") {
    const auto rough = MultiplierSymbol::general([](double t) { return Complex(t < 1.0 ? 1.0 : 0.0); }, 0.0, "jump");
    try {
      (void)multiplier_matrix(rough, 16, QuadratureScheme::gauss_laguerre(64, 1e-12));
      FAIL("expected NumericalError");
    } catch (const NumericalError& e) {
      CHECK(e.achieved() > 1e-12);
    }
  }
}

TEST_SUITE("singular values") {
  TEST_CASE("identity, shift, rank one") {
    for (double s : singular_values(OperatorMatrix::identity(5))) CHECK(s == doctest::Approx(1.0));
    const auto shift = singular_values(toeplitz_matrix(PiecewiseSymbol::monomial(1), 6));
    for (int k = 0; k < 5; ++k) CHECK(shift[static_cast<std::size_t>(k)] == doctest::Approx(1.0));
    CHECK(shift.back() < 1e-15);
    Eigen::VectorXcd u(3), v(3);
    u << 1.0, Complex(0.0, 2.0), 2.0;
    v << 3.0, 0.0, Complex(4.0, 0.0);
    const auto r = singular_values(OperatorMatrix(u * v.adjoint()));
    CHECK(r[0] == doctest::Approx(15.0));
    CHECK(r[1] < 1e-14);
    CHECK(std::is_sorted(r.rbegin(), r.rend()));
  }
}

TEST_SUITE("expressions") {
  TEST_CASE("identity and adjoint leaves") {
    CHECK(evaluate_expression(AlgebraExpression::identity(), 4).entries() == ComplexMatrix::Identity(4, 4));
    const auto z = AlgebraExpression::toeplitz(PiecewiseSymbol::monomial(1));
    const auto zt = evaluate_expression(adjoint(z), 5).entries();
    CHECK(zt == toeplitz_matrix(PiecewiseSymbol::monomial(1), 5).entries().adjoint());
  }

  TEST_CASE("corrected identity entries at a = i") {
    const auto th = AlgebraExpression::toeplitz(AnalyticSymbol::reciprocal(a_i.as_eta()));
    const auto prod = evaluate_expression(th * AlgebraExpression::composition(a_i), 256);
    CHECK(std::abs(prod(0, 0) - 2.0 / 3.0) < 1e-15);
    CHECK(std::abs(prod(0, 1) - 2.0 / 9.0) < 1e-15);
    CHECK(std::abs(prod(1, 0) - 2.0 / 9.0) < 1e-15);
    CHECK(std::abs(prod(1, 1) - 10.0 / 27.0) < 1e-15);
    const auto residual = evaluate_expression(th * AlgebraExpression::composition(a_i) -
                                                  AlgebraExpression::multiplier(MultiplierSymbol::exponential(a_i.a())),
                                              256);
    CHECK(residual.principal_block(2).max_modulus() < 1e-10);
  }

  TEST_CASE("padding keeps finite-section products exact for banded factors") {
    const auto z = AlgebraExpression::toeplitz(PiecewiseSymbol::monomial(1));
    const auto zbar = AlgebraExpression::toeplitz(PiecewiseSymbol::monomial(-1));
    const auto padded = singular_values(evaluate_expression(commutator(z, zbar), 16));
    CHECK(padded[0] == doctest::Approx(1.0));
    CHECK(padded[1] < 1e-14);
    EvaluationOptions raw;
    raw.padding = 0;
    const auto unpadded = singular_values(evaluate_expression(commutator(z, zbar), 16, raw));
    CHECK(unpadded[1] == doctest::Approx(1.0));
  }

  TEST_CASE("parser builds the same trees as the factories") {
    const auto parsed = literals::parse_expression("{2}T[mono:1]' + [T[step:0], D[rational:1/1,1]] - I");
    const auto z = AlgebraExpression::toeplitz(PiecewiseSymbol::monomial(1));
    const auto built = Complex(2.0) * adjoint(z) +
                       commutator(AlgebraExpression::toeplitz(u1),
                                  AlgebraExpression::multiplier(MultiplierSymbol::rational({1.0}, {1.0, 1.0}))) -
                       AlgebraExpression::identity();
    CHECK(max_abs(evaluate_expression(parsed, 24).entries() - evaluate_expression(built, 24).entries()) == 0.0);
    CHECK(parsed.contains_product());
    CHECK(parsed.jump_angles() == std::vector<double>{0.0});
    CHECK_THROWS_AS(literals::parse_expression("T[mono:1] +"), ArgumentError);
    CHECK_THROWS_AS(literals::parse_expression("X[1]"), ArgumentError);
    CHECK_THROWS_AS(literals::parse_expression("(I"), ArgumentError);
  }

  TEST_CASE("etas are collected once per label") {
    const auto e = literals::parse_expression("C[eta-exp]*P[0+1i] + C[eta-exp]'");
    const auto etas = e.etas();
    REQUIRE(etas.size() == 2);
    CHECK(etas[0].label() == "eta-exp");
  }
}
