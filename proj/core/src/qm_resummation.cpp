#include "anires/qm_resummation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace anires::qm {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

double beta_half(int n) {
  if (n < 0) throw std::domain_error("beta_half: n must be >= 0");
  return std::exp(2.0 * log_gamma(n + 0.5) - log_gamma(2.0 * n + 1.0));
}

std::vector<ImaginaryPartTerm> qm_imaginary_terms(int n_max) {
  if (n_max < 0) throw std::invalid_argument("qm_imaginary_terms: n_max must be >= 0");
  std::vector<ImaginaryPartTerm> terms;
  for (int n = 0; n <= n_max; ++n) {
    ImaginaryPartTerm t;
    t.n = n;
    t.sign = n % 2 == 0 ? 1 : -1;
    t.prefactor = 6.0 / kPi * std::exp(n * std::numbers::ln2 - log_gamma(n + 1.0)) * beta_half(n);
    t.exponent_scale = 0.75;
    t.power = n + 1.0;
    terms.push_back(t);
  }
  return terms;
}

double gamma_n(int n) {
  if (n < 0) throw std::domain_error("gamma_n: n must be >= 0");
  const double mag = 6.0 / (kPi * kPi) * beta_half(n) * std::exp(-log_gamma(n + 1.0));
  return n % 2 == 0 ? -mag : mag;
}

ScaledValue qm_large_order_estimate(int k, int n, double sigma_in_gbar) {
  if (k < 1 || n < 0) throw std::domain_error("qm_large_order_estimate: requires k >= 1, n >= 0");
  if (!(sigma_in_gbar > 0.0)) throw std::domain_error("qm_large_order_estimate: sigma must be positive");
  const double g = gamma_n(n);
  const double log_mag =
      std::log(std::fabs(g)) + k * std::log(sigma_in_gbar) + log_gamma(k + 1.0) + n * std::log(static_cast<double>(k));
  const int sgn = (g < 0 ? -1 : 1) * (k % 2 == 0 ? 1 : -1);
  return ScaledValue::from_log(sgn, log_mag);
}

LargeOrderParams large_order_params(const BigRational& sigma, int n_max) {
  if (n_max < 0) throw std::invalid_argument("qm::large_order_params: n_max must be >= 0");
  std::vector<double> gamma;
  for (int n = 0; n <= n_max; ++n) gamma.push_back(gamma_n(n));
  return LargeOrderParams::make(sigma, make_rational(1, 3), AffineMap{BigRational(1), BigRational(0)},
                                std::move(gamma));
}

ResummedApproximant make_approximant(std::shared_ptr<const CoefficientTable> table, int N,
                                     const BigRational& sigma) {
  return ResummedApproximant::build(std::move(table), large_order_params(sigma, N), N);
}

double resum_energy(const ResummedApproximant& approx, double g_over_4, double delta, const QuadratureSpec& quad) {
  if (!(g_over_4 > 0.0)) throw std::domain_error("resum_energy: requires g/4 > 0");
  return resum(approx, g_over_4, 2.0 * delta, quad);
}

double resum_energy(const CoefficientTable& table, int N, double g_over_4, double delta, double sigma,
                    const QuadratureSpec& quad) {
  const auto approx = make_approximant(std::make_shared<const CoefficientTable>(table), N, BigRational(sigma));
  return resum_energy(approx, g_over_4, delta, quad);
}

}  // namespace anires::qm
