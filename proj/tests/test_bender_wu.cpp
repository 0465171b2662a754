#include <gtest/gtest.h>

#include <anires/bender_wu.hpp>

#include <cmath>
#include <fstream>

using namespace anires;

namespace {

const bw::BwState& state12() {
  static const bw::BwState s = bw::build(12);
  return s;
}

CoefficientTable reference_table() {
  std::ifstream in(ANIRES_TEST_DATA_DIR "/energy_coefficients.csv");
  return CoefficientTable::read_csv(in);
}

}  // namespace

TEST(BenderWu, LowOrders) {
  const auto& E = state12().energies();
  EXPECT_EQ(E.at(0, 0), BigRational(1));
  EXPECT_EQ(E.at(1, 0), BigRational(2));
  EXPECT_EQ(E.at(1, 1), make_rational(-1, 4));
  EXPECT_EQ(E.at(4, 3), make_rational(2465, 128));
  EXPECT_EQ(E.at(7, 6), make_rational(4423646695L, 1769472L));
  EXPECT_EQ(E.at(12, 12), parse_rational("-52920213881686076606297/35224100536320000"));
}

TEST(BenderWu, AllTableEntries) {
  const CoefficientTable ref = reference_table();
  ASSERT_EQ(ref.kmax(), 12);
  const auto& E = state12().energies();
  for (int k = 0; k <= 12; ++k)
    for (int n = 0; n <= k; ++n) EXPECT_EQ(E.at(k, n), ref.at(k, n)) << "k=" << k << " n=" << n;
}

TEST(BenderWu, FirstOrderFromGaussianMoments) {
  // <x^4> = 3/4, <x^2 y^2> = 1/4: (g/4)(<x^4 + y^4 + 2 x^2 y^2> - 2 delta <x^2 y^2>).
  const auto& E = state12().energies();
  const BigRational x4 = make_rational(3, 4), x2y2 = make_rational(1, 4);
  EXPECT_EQ(E.at(1, 0), 2 * x4 + 2 * x2y2);
  // (2 delta) E_11 = -2 delta <x^2 y^2>
  EXPECT_EQ(2 * E.at(1, 1), -2 * x2y2);
}

TEST(BenderWu, SecondOrderAgainstDiagonalization) {
  // Even-parity 30x30 product-basis diagonalization at g = 1e-4, delta = 0:
  // second difference of E(g) estimates E_20 as -8.99333.
  const double gb = 2.5e-5;
  const double fd = -8.993330702367075 * gb * gb;
  EXPECT_NEAR(to_double(state12().energies().at(2, 0)) * gb * gb / fd, 1.0, 0.05);
}

TEST(BenderWu, SupportAndSymmetry) {
  const auto& s = state12();
  for (int k = 0; k <= 12; ++k)
    for (int n = 0; n <= k; ++n) {
      EXPECT_EQ(s.A(0, 0, k, n), BigRational(k == 0 && n == 0 ? 1 : 0));
      EXPECT_EQ(s.A(1, 0, k, n), s.A(0, 1, k, n));
      EXPECT_EQ(s.A(2 * k - n + 1, 0, k, n), BigRational(0));
      // Phi_kn is symmetric under x <-> y.
      for (int i = 0; i <= 2 * k - n; ++i)
        for (int j = 0; j <= 2 * k - n; ++j) ASSERT_EQ(s.A(i, j, k, n), s.A(j, i, k, n));
    }
  EXPECT_EQ(s.A(-1, 0, 3, 1), BigRational(0));
  EXPECT_EQ(s.A(0, 0, 2, 3), BigRational(0));
}

TEST(BenderWu, StorageGrowsCubically) {
  // Blocks of side 2k+1 for each n <= k: sum (k+1)(2k+1)^2 ~ 4k^3.
  const auto s = bw::build(8);
  std::size_t expected = 0;
  for (int k = 0; k <= 8; ++k) expected += static_cast<std::size_t>(k + 1) * (2 * k + 1) * (2 * k + 1);
  EXPECT_EQ(s.stored_entries(), expected);
}

TEST(BenderWu, AlternatingSigns) {
  const auto s = bw::build(16);
  const auto& E = s.energies();
  for (int n = 0; n <= 16; ++n)
    for (int k = std::max(n, 1); k <= 16; ++k) EXPECT_EQ(sign(E.at(k, n)), ((k + n) % 2 == 1) ? 1 : -1) << k << "," << n;
}

TEST(BenderWu, RatioApproachesThreeK) {
  const auto s = bw::build(20);
  const auto& E = s.energies();
  for (int k = 8; k <= 19; ++k) {
    const double ratio = to_double(E.at(k + 1, 0) / E.at(k, 0));
    EXPECT_LT(ratio, 0.0);
    // Leading deviation is -1/(2k); the 1/k^2 term is still sizeable at k ~ 8.
    EXPECT_LE(std::fabs(-ratio / (3.0 * (k + 1)) - 1.0), 1.0 / k) << k;
  }
}

TEST(BenderWu, EnergySeriesConvention) {
  const auto t = bw::energy_series(state12());
  EXPECT_EQ(t, state12().energies());
  EXPECT_THROW(bw::build(-1), std::invalid_argument);
}
