#include <gtest/gtest.h>

#include <anires/borel.hpp>
#include <anires/model_integral.hpp>

#include <cmath>
#include <random>
#include <thread>

using namespace anires;

namespace {

std::shared_ptr<const CoefficientTable> model_table(int kmax) {
  return std::make_shared<const CoefficientTable>(model::coefficients(kmax));
}

ResummedApproximant model_approximant(int N) {
  return ResummedApproximant::build(model_table(12), model::large_order_params(N), N);
}

}  // namespace

TEST(BorelCoefficients, ModelClosedForm) {
  const ResummedApproximant a = model_approximant(12);
  EXPECT_EQ(a.a(0, 0), BigRational(1));
  EXPECT_EQ(a.a(1, 0), BigRational(0));
  EXPECT_EQ(a.a(1, 1), make_rational(1, 6));
  EXPECT_EQ(a.a(2, 2), make_rational(9, 160));
  for (int n = 0; n <= 12; ++n) {
    const BigRational expected =
        pow(make_rational(1, 8), n) * make_rational(n + 1, 2 * n + 1) * factorial(2 * n) / (factorial(n) * factorial(n));
    EXPECT_EQ(a.a(n, n), expected) << n;
    for (int p = n + 1; p <= 12; ++p) EXPECT_EQ(a.a(p, n), BigRational(0)) << p << "," << n;
  }
}

TEST(BorelCoefficients, FloatMatchesExact) {
  const auto t = model::coefficients(8);
  const auto col = t.column(1);
  std::vector<double> colf;
  for (const auto& c : col) colf.push_back(to_double(c));
  const auto exact = borel_coefficients(col, BigRational(2), make_rational(1, 3), BigRational(3), 8);
  const auto approx = borel_coefficients(colf, 2.0, 1.0 / 3.0, 3.0, 8);
  for (int p = 0; p <= 8; ++p) EXPECT_NEAR(approx[p], to_double(exact[p]), 1e-9 * std::max(1.0, std::fabs(approx[p])));
  EXPECT_THROW(borel_coefficients(col, BigRational(2), BigRational(0), BigRational(3), 9), std::invalid_argument);
}

TEST(BorelCoefficients, LinearInColumn) {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<long> num(-50, 50), den(1, 9);
  std::vector<BigRational> col(9);
  for (auto& c : col) c = make_rational(num(rng), den(rng));
  const BigRational scale = make_rational(-7, 3);
  std::vector<BigRational> scaled;
  for (const auto& c : col) scaled.push_back(scale * c);
  const auto a = borel_coefficients(col, make_rational(5, 2), make_rational(1, 3), BigRational(3), 8);
  const auto b = borel_coefficients(scaled, make_rational(5, 2), make_rational(1, 3), BigRational(3), 8);
  for (int p = 0; p <= 8; ++p) EXPECT_EQ(b[p], scale * a[p]);
}

TEST(BasisIntegral, HighPrecisionValues) {
  // mpmath quadrature of the t-form, 40 digits.
  EXPECT_NEAR(basis_integral({0, 1.0, -0.5, 4.0}, 1.0), 0.5456413607650470421, 1e-12);
  EXPECT_NEAR(basis_integral({2, 1.5, 1.0 / 3.0, 3.0}, 0.5), 0.18168502334272785222, 1e-12);
  EXPECT_NEAR(basis_integral({3, 2.5, 1.0 / 3.0, 3.0}, 2.0), 0.52267172814379228188, 1e-11);
  EXPECT_NEAR(basis_integral({1, 1.0, -0.5, 4.0}, 1e3), 0.026583750567828258493, 1e-12);
}

TEST(BasisIntegral, ModelLeadingTermIsReference) {
  for (double g : {0.1, 1.0, 10.0})
    EXPECT_NEAR(basis_integral({0, 1.0, -0.5, 4.0}, g), model::z_reference(g, 0.0), 1e-10);
}

TEST(BasisIntegral, WAndTFormsAgree) {
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<int> ps(0, 10);
  std::uniform_real_distribution<double> b0s(0.0, 5.0), alphas(-0.5, 1.0), logg(std::log(2e-3), std::log(1e3));
  for (int i = 0; i < 60; ++i) {
    const BorelBasisSpec s{ps(rng), b0s(rng), alphas(rng), 3.0};
    const double g = std::exp(logg(rng));
    const double w = basis_integral(s, g, {}, BasisMethod::w_form);
    const double t = basis_integral(s, g, {}, BasisMethod::t_form);
    EXPECT_NEAR(w / t, 1.0, 1e-9) << "p=" << s.p << " b0=" << s.b0 << " alpha=" << s.alpha << " g=" << g;
  }
}

TEST(BasisIntegral, SmallCouplingLimits) {
  const BorelBasisSpec s0{0, 1.5, 1.0 / 3.0, 3.0};
  EXPECT_NEAR(basis_integral(s0, 1e-8), 1.0, 1e-7);
  for (int p : {1, 3}) {
    const BorelBasisSpec s{p, 1.5, 1.0 / 3.0, 3.0};
    const double g = 1e-6;
    double poch = 1.0;
    for (int i = 0; i < p; ++i) poch *= s.b0 + 1.0 + i;
    EXPECT_NEAR(basis_integral(s, g) / std::pow(s.sigma * g / 4.0, p), poch, 1e-4 * poch);
  }
}

TEST(BasisIntegral, SeriesBranchContinuous) {
  const double g = 1e-3 / 3.0;
  for (int p : {0, 2, 5}) {
    const BorelBasisSpec s{p, 2.5, 1.0 / 3.0, 3.0};
    const double below = basis_integral(s, g * (1.0 - 1e-9));
    const double above = basis_integral(s, g * (1.0 + 1e-9), {}, BasisMethod::w_form);
    EXPECT_NEAR(below / above, 1.0, 1e-8) << p;
  }
}

TEST(BasisIntegral, StrongCouplingExponent) {
  for (const BorelBasisSpec& s : {BorelBasisSpec{0, 1.5, 1.0 / 3.0, 3.0}, BorelBasisSpec{2, 2.0, -0.5, 4.0}}) {
    // Corrections fall off like g^{-1/2}, so compare well inside the asymptotic regime.
    const double a = basis_integral(s, 1e5) * std::pow(1e5, -s.alpha);
    const double b = basis_integral(s, 1e6) * std::pow(1e6, -s.alpha);
    EXPECT_GT(std::fabs(a), 0.0);
    EXPECT_NEAR(a / b, 1.0, 1e-2);
  }
}

TEST(BasisIntegral, Validation) {
  EXPECT_THROW(basis_integral({-1, 1.0, 0.0, 1.0}, 1.0), std::invalid_argument);
  EXPECT_THROW(basis_integral({0, 1.0, 0.0, 0.0}, 1.0), std::invalid_argument);
  EXPECT_THROW(basis_integral({0, 1.0, 0.0, 1.0}, 0.0), std::domain_error);
}

TEST(BasisSeries, ExactMatchesFloat) {
  for (int p = 0; p <= 5; ++p)
    for (int k = 0; k <= 10; ++k) {
      const BigRational e = basis_series_coefficient(p, k, make_rational(5, 2), make_rational(1, 3), BigRational(3));
      const double f = basis_series_coefficient(p, k, 2.5, 1.0 / 3.0, 3.0);
      EXPECT_NEAR(f, to_double(e), 1e-12 * std::max(1.0, std::fabs(f)));
    }
  EXPECT_EQ(basis_series_coefficient(3, 2, BigRational(1), BigRational(0), BigRational(1)), BigRational(0));
}

TEST(BasisSeries, ModelLeadingSeriesIsZk0) {
  // sigma = 4, alpha = -1/2, b0 = 1: I_0 reproduces Z(g, 0) term by term.
  for (int k = 0; k <= 20; ++k)
    EXPECT_EQ(basis_series_coefficient(0, k, BigRational(1), make_rational(-1, 2), BigRational(4)), model::z_coeff(k, 0));
}

TEST(Reexpansion, ExactIdentity) {
  for (int N : {4, 8, 12}) EXPECT_EQ(reexpansion_check(model_approximant(N)), BigRational(0)) << N;
}

TEST(Reexpansion, FloatPath) {
  EXPECT_LE(reexpansion_check_float(model_approximant(8)), 1e-10);
}

TEST(Resum, ModelAgainstReference) {
  const ResummedApproximant a = model_approximant(8);
  EXPECT_NEAR(resum(a, 1.0, 0.0), model::z_reference(1.0, 0.0), 1e-3);
  for (double d = -1.0; d <= 1.5; d += 0.25) EXPECT_NEAR(resum(a, 1.0, d), model::z_reference(1.0, d), 1e-2) << d;
}

TEST(Resum, WeakCouplingLimit) {
  const ResummedApproximant a = model_approximant(8);
  for (double d : {-1.0, 0.0, 1.0}) EXPECT_NEAR(resum(a, 1e-9, d), 1.0, 1e-8);
}

TEST(Resum, ConvergesMonotonicallyInOrder) {
  const double ref = model::z_reference(1.0, 0.5);
  double previous = INFINITY;
  for (int N : {2, 4, 6, 8}) {
    const double err = std::fabs(resum(model_approximant(N), 1.0, 0.5) - ref);
    EXPECT_LE(err, previous) << N;
    previous = err;
  }
}

TEST(Resum, GridMatchesPointwise) {
  const ResummedApproximant a = model_approximant(6);
  const std::vector<double> ds{-1.0, 0.0, 0.7};
  const auto grid = resum_grid(a, 0.8, ds);
  for (std::size_t i = 0; i < ds.size(); ++i) EXPECT_DOUBLE_EQ(grid[i], resum(a, 0.8, ds[i]));
}

TEST(Resum, ConcurrentCallsMatchSerial) {
  const ResummedApproximant serial = model_approximant(8);
  std::vector<double> gs;
  for (int i = 1; i <= 16; ++i) gs.push_back(0.125 * i);
  std::vector<double> expected;
  for (double g : gs) expected.push_back(resum(serial, g, 0.5));

  const ResummedApproximant shared = model_approximant(8);
  std::vector<double> got(gs.size());
  std::vector<std::thread> pool;
  for (int t = 0; t < 4; ++t)
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < gs.size(); i += 4) got[i] = resum(shared, gs[i], 0.5);
      for (std::size_t i = 0; i < gs.size(); ++i) (void)resum(shared, gs[i], -0.5);
    });
  for (auto& th : pool) th.join();
  for (std::size_t i = 0; i < gs.size(); ++i) EXPECT_EQ(got[i], expected[i]);
}

TEST(Approximant, OrderBeyondTable) {
  EXPECT_THROW(ResummedApproximant::build(model_table(4), model::large_order_params(), 5), std::range_error);
  EXPECT_THROW(ResummedApproximant::build(nullptr, model::large_order_params(), 1), std::invalid_argument);
}

TEST(Approximant, JsonExport) {
  const std::string j = model_approximant(2).to_json();
  for (const char* key : {"\"N\": 2", "\"sigma\": \"4\"", "\"alpha\": \"-1/2\"", "\"b0_offset\": \"1\"", "\"a\":",
                          "\"numerator\": \"9\"", "\"denominator\": \"160\"", "normalization"})
    EXPECT_NE(j.find(key), std::string::npos) << key;
}
