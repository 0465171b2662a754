#include <gtest/gtest.h>

#include <anires/bender_wu.hpp>
#include <anires/vpt.hpp>

#include <cmath>

using namespace anires;
using namespace anires::vpt;

namespace {

const CoefficientTable& energies() {
  static const CoefficientTable t = bw::build(12).energies();
  return t;
}

CoefficientTable isotropic_part(const CoefficientTable& t) {
  CoefficientTable iso(t.kmax());
  for (int k = 0; k <= t.kmax(); ++k) iso.set(k, 0, t.at(k, 0));
  return iso;
}

}  // namespace

TEST(Laurent, EvaluateAndDifferentiate) {
  const LaurentInOmega w({{-2, 3.0}, {0, 1.0}, {1, -2.0}});
  EXPECT_NEAR(w(2.0), 0.75 + 1.0 - 4.0, 1e-15);
  const LaurentInOmega d = w.derivative();
  EXPECT_EQ(d.coefficient(-3), -6.0);
  EXPECT_EQ(d.coefficient(0), -2.0);
  EXPECT_EQ(d.coefficient(-1), 0.0);
  EXPECT_EQ(w.min_power(), -2);
  EXPECT_EQ(w.max_power(), 1);
  EXPECT_THROW(w(0.0), std::domain_error);
}

TEST(Reexpansion, LowOrders) {
  const BigRational d = make_rational(1, 2);
  const auto e0 = reexpansion_coefficients(energies(), 0, d);
  ASSERT_EQ(e0.size(), 1u);
  EXPECT_EQ(e0[0], BigRational(1));
  // eps_1 = (1/2)(2 rho Omega) + (2 - delta/2)
  const auto e1 = reexpansion_coefficients(energies(), 1, d);
  EXPECT_EQ(e1[0], BigRational(2) - d / 2);
  EXPECT_EQ(e1[1], make_rational(1, 2));
  // (2 rho Omega)^0 part of eps_2 is E_2(delta) = -9 + (9/4)(2 delta) - (3/16)(2 delta)^2
  const auto e2 = reexpansion_coefficients(energies(), 2, d);
  EXPECT_EQ(e2[0], BigRational(-9) + make_rational(9, 4) * 2 * d - make_rational(3, 16) * 4 * d * d);
  EXPECT_EQ(e2[2], make_rational(-1, 8));
  EXPECT_THROW(reexpansion_coefficients(energies(), 13, d), std::range_error);
}

TEST(WLaurent, ZerothOrderIsOmega) {
  const LaurentInOmega w = w_laurent(energies(), 0, 0.3, 0.4);
  EXPECT_EQ(w, LaurentInOmega({{1, 1.0}}));
}

TEST(WLaurent, FirstOrderClosedForm) {
  // W_1 = Omega + (1 - Omega^2)/(2 Omega) + E_1 gbar / Omega^2, E_1 = 2 - delta/2.
  const LaurentInOmega w = w_laurent(energies(), 1, 0.1, 0.5);
  for (double om : {0.5, 1.0, 1.7, 3.0}) EXPECT_NEAR(w(om), om + (1 - om * om) / (2 * om) + 0.175 / (om * om), 1e-14);
  EXPECT_EQ(w.max_power(), 1);
  EXPECT_EQ(w.min_power(), -2);
}

TEST(WLaurent, FirstOrderAtOmegaOne) {
  for (double g : {0.05, 0.5, 2.0}) EXPECT_NEAR(w_laurent(energies(), 1, g, 0.0)(1.0), 1.0 + 2.0 * g, 1e-14);
}

TEST(WLaurent, PowerRange) {
  for (int k = 1; k <= 12; ++k) {
    const LaurentInOmega w = w_laurent(energies(), k, 0.7, -0.3);
    EXPECT_GE(w.min_power(), 1 - 3 * k);
    EXPECT_LE(w.max_power(), 1 + 3 * k);
  }
}

TEST(WLaurent, IsotropicReduction) {
  const CoefficientTable iso = isotropic_part(energies());
  for (int k = 1; k <= 11; ++k) EXPECT_EQ(w_laurent(energies(), k, 0.4, 0.0), w_laurent(iso, k, 0.4, 0.0)) << k;
}

TEST(WLaurent, MatchesSeriesAtTrialFrequencyOne) {
  // At Omega = omega = 1 the reexpanded series is the plain truncated series.
  const double g = 0.05, d = 0.25;
  for (int k = 0; k <= 6; ++k)
    EXPECT_NEAR(w_laurent(energies(), k, g, d)(1.0), truncated_double_sum(energies(), g, 2 * d, k), 1e-12);
}

TEST(Optimize, FirstOrderRoot) {
  // Extremum of W_1 at g/4 = 0.1, delta = 0.5: Omega^3 - Omega - 0.7 = 0.
  const VptOrderResult r = vpt_energy(energies(), 1, 0.1, 0.5);
  ASSERT_EQ(r.candidates.size(), 1u);
  EXPECT_NEAR(r.omega(), 1.2491518109200057, 1e-10);
  EXPECT_NEAR(r.W(), 1.1369996605916952, 1e-12);
  EXPECT_EQ(r.kind(), CandidateKind::extremum);
}

TEST(Optimize, OddOrdersHaveExtrema) {
  for (double d : {-1.5, -0.5, 0.5, 1.5}) {
    for (int k : {1, 3, 5}) EXPECT_EQ(vpt_energy(energies(), k, 0.1, d).kind(), CandidateKind::extremum) << k << " " << d;
    EXPECT_EQ(vpt_energy(energies(), 2, 0.1, d).kind(), CandidateKind::turning_point) << d;
    EXPECT_EQ(vpt_energy(energies(), 6, 0.1, 1.5).kind(), CandidateKind::turning_point);
  }
}

TEST(Optimize, EvenOrderExtremaComeInFlatPairs) {
  // Where an even order has extrema at all, they form a close max/min pair whose W values
  // agree to a few 1e-6, so on a plot the curve looks like it has a turning point.
  const VptOrderResult r = vpt_energy(energies(), 4, 0.1, 0.5);
  ASSERT_EQ(r.candidates.size(), 2u);
  EXPECT_NEAR(r.candidates[0].omega, 1.3863845960037104, 1e-9);
  EXPECT_NEAR(r.candidates[1].omega, 1.4560778663124385, 1e-9);
  EXPECT_NEAR(r.candidates[0].w, 1.134735498112926, 1e-12);
  EXPECT_NEAR(r.candidates[1].w, 1.1347333255983414, 1e-12);
  for (int k : {4, 6})
    for (double d : {-1.5, -0.5, 0.5, 1.5}) {
      const VptOrderResult e = vpt_energy(energies(), k, 0.1, d);
      if (e.kind() != CandidateKind::extremum) continue;
      EXPECT_EQ(e.candidates.size() % 2, 0u) << k << " " << d;
      EXPECT_LT(std::fabs(e.candidates.front().w - e.candidates.back().w), 1e-5) << k << " " << d;
    }
}

TEST(Optimize, StationarityAtChosenPoint) {
  for (int k = 1; k <= 11; ++k) {
    const LaurentInOmega w = w_laurent(energies(), k, 0.1, 0.5);
    const VptOrderResult r = optimize_omega(w, k);
    const LaurentInOmega d1 = w.derivative();
    const double om = r.omega();
    if (r.kind() == CandidateKind::extremum)
      EXPECT_LE(std::fabs(d1(om)), 1e-10 * d1.magnitude(om)) << k;
    else
      EXPECT_LE(std::fabs(d1.derivative()(om)), 1e-8 * d1.derivative().magnitude(om)) << k;
    for (std::size_t i = 1; i < r.candidates.size(); ++i) EXPECT_LT(r.candidates[i - 1].omega, r.candidates[i].omega);
  }
}

TEST(Optimize, SelectionRules) {
  // Three extrema for k = 9 at g/4 = 1, delta = -0.5.
  const VptOrderResult low_w = vpt_energy(energies(), 9, 1.0, -0.5, Selection::smallest_w);
  const VptOrderResult low_om = vpt_energy(energies(), 9, 1.0, -0.5, Selection::smallest_omega);
  ASSERT_EQ(low_w.candidates.size(), 3u);
  EXPECT_EQ(low_om.chosen, 0u);
  EXPECT_EQ(low_w.chosen, 2u);
  for (const auto& c : low_w.candidates) EXPECT_GE(c.w, low_w.W());
}

TEST(Optimize, ShapeDependsLittleOnDelta) {
  double lo = INFINITY, hi = 0.0;
  for (double d : {-1.5, -0.5, 0.5, 1.5}) {
    const double om = vpt_energy(energies(), 5, 0.1, d).omega();
    lo = std::min(lo, om);
    hi = std::max(hi, om);
  }
  EXPECT_LT(hi / lo, 1.3);
}

TEST(Optimize, NoCandidate) {
  EXPECT_THROW(optimize_omega(LaurentInOmega({{1, 1.0}}), 0), std::runtime_error);
}

TEST(Optimize, RescalingToGeneralOmega) {
  // E(omega, gbar) = omega E(1, gbar / omega^3).
  const double omega = 2.0;
  for (int k : {3, 5}) {
    const VptOrderResult scaled = vpt_energy(energies(), k, 0.8, 0.5, Selection::smallest_w, omega);
    const VptOrderResult unit = vpt_energy(energies(), k, 0.8 / (omega * omega * omega), 0.5);
    EXPECT_NEAR(scaled.W(), omega * unit.W(), 1e-10);
    EXPECT_NEAR(scaled.omega(), omega * unit.omega(), 1e-9);
  }
}

TEST(Optimize, ConvergencePlateau) {
  for (double g : {0.1, 1.0})
    for (double d : {-2.5, -1.5, -0.5, 0.5, 1.5}) {
      const double w3 = vpt_energy(energies(), 3, g, d).W();
      const double w5 = vpt_energy(energies(), 5, g, d).W();
      const double w9 = vpt_energy(energies(), 9, g, d).W();
      const double w11 = vpt_energy(energies(), 11, g, d).W();
      EXPECT_LE(std::fabs(w11 - w9), std::fabs(w5 - w3)) << g << " " << d;
    }
}
