#include "anires/model_integral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace anires::model {

namespace {

constexpr double kPi = std::numbers::pi;

int parity(int k) { return k % 2 == 0 ? 1 : -1; }

}  // namespace

BigRational z_coeff(int k, int n) {
  if (k < 0 || n < 0)
    throw std::domain_error("z_coeff: negative index (" + std::to_string(k) + "," + std::to_string(n) + ")");
  if (k < n) return BigRational(0);
  // (-1)^{k+n} (2n)! (2k)! / (8^n n! (n!)^2 (k-n)!)
  const BigRational nf = factorial(n);
  BigRational q = factorial(2 * n) * factorial(2 * k) / (pow(BigRational(8), n) * nf * nf * nf * factorial(k - n));
  if ((k + n) % 2 != 0) q = -q;
  return q;
}

CoefficientTable coefficients(int kmax) {
  CoefficientTable t(kmax);
  for (int k = 0; k <= kmax; ++k) {
    // Walk n upward using the ratio Z_{k,n+1}/Z_{kn} = -(2n+1)(k-n) / (4 (n+1)^2).
    BigRational z = parity(k) * factorial(2 * k) / factorial(k);
    for (int n = 0; n <= k; ++n) {
      t.set(k, n, z);
      z *= make_rational(-(2L * n + 1) * (k - n), 4L * (n + 1) * (n + 1));
    }
  }
  return t;
}

BigRational z_coeff_delta(int k, const BigRational& delta) {
  if (k < 0) throw std::domain_error("z_coeff_delta: negative order");
  BigRational z = parity(k) * factorial(2 * k) / factorial(k);
  BigRational sum(0);
  BigRational dn(1);
  for (int n = 0; n <= k; ++n) {
    sum += z * dn;
    z *= make_rational(-(2L * n + 1) * (k - n), 4L * (n + 1) * (n + 1));
    dn *= delta;
  }
  return sum;
}

ScaledValue z_coeff_delta_legendre(int k, double delta) {
  if (k < 0) throw std::domain_error("z_coeff_delta_legendre: negative order");
  if (!(delta < 2.0)) throw std::domain_error("z_coeff_delta_legendre: requires delta < 2");
  const double x = (4.0 - delta) / (2.0 * std::sqrt(4.0 - 2.0 * delta));
  // Rounding can put x a hair below 1 when delta is tiny.
  const ScaledValue p = legendre_scaled(k, std::max(x, 1.0));
  const double log_prefactor =
      log_gamma(2.0 * k + 1.0) - log_gamma(k + 1.0) + 0.5 * k * std::log1p(-0.5 * delta);
  return ScaledValue::from_log(parity(k), log_prefactor) * p;
}

QuadratureResult z_reference_result(double g, double delta, const QuadratureSpec& spec) {
  if (!(g > 0.0)) throw std::domain_error("z_reference: requires g > 0");
  if (!(delta < 2.0)) throw std::domain_error("z_reference: requires delta < 2");
  // exp(-rho - g(1 - delta/4) rho^2) I_0(delta g rho^2 / 4)
  //   = exp(-rho - c rho^2) * [exp(-|x|) I_0(|x|)],  c = g (1 - delta/4 - |delta|/4)
  const double c = g * (1.0 - 0.25 * delta - 0.25 * std::fabs(delta));
  const double b = 0.25 * std::fabs(delta) * g;
  return integrate_semiline(
      [c, b](double rho) {
        const double r2 = rho * rho;
        return std::exp(-rho - c * r2) * bessel_i0_scaled(b * r2);
      },
      spec);
}

double z_reference(double g, double delta, const QuadratureSpec& spec) {
  return z_reference_result(g, delta, spec).value;
}

SeriesSum strong_coupling_kappa(double delta, int terms) {
  if (terms < 1) throw std::invalid_argument("strong_coupling_kappa: need at least one term");
  SeriesSum s;
  s.divergent = std::fabs(delta) >= 2.0;
  // t_n = binom(2n, n)^2 (delta/32)^n
  double term = 1.0;
  double sum = 0.0;
  double ratio = 0.0;
  for (int n = 0; n < terms; ++n) {
    sum += term;
    const double f = 2.0 * (2.0 * n + 1.0) / (n + 1.0);
    ratio = f * f * delta / 32.0;
    term *= ratio;
  }
  const double r = std::fabs(ratio);
  s.value = 0.5 * std::sqrt(kPi) * sum;
  s.remainder_estimate = r < 1.0 ? 0.5 * std::sqrt(kPi) * std::fabs(term) / (1.0 - r)
                                 : std::numeric_limits<double>::infinity();
  return s;
}

std::vector<ImaginaryPartTerm> imaginary_part_terms(int n_max) {
  if (n_max < 0) throw std::invalid_argument("imaginary_part_terms: n_max must be >= 0");
  std::vector<ImaginaryPartTerm> terms;
  for (int n = 0; n <= n_max; ++n) {
    ImaginaryPartTerm t;
    t.n = n;
    t.sign = -parity(n);
    t.prefactor = std::exp(log_gamma(n + 0.5) - n * std::numbers::ln2 - 2.0 * log_gamma(n + 1.0));
    t.exponent_scale = 4.0;
    t.power = n + 0.5;
    terms.push_back(t);
  }
  return terms;
}

ScaledValue dispersion_coefficient(const ImaginaryPartTerm& term, int k, const QuadratureSpec& spec) {
  if (k < 1) throw std::domain_error("dispersion_coefficient: requires k >= 1");
  // With u = 1/(sigma |g|) the integral becomes sigma^k \int_0^inf u^{k+p-1} e^{-u} du.
  // The quadrature runs on the integrand divided by Gamma(k+p) so it stays O(1), split at
  // the peak u = s-1 so neither piece has to resolve a narrow bump far from its origin.
  const double s = k + term.power;
  const double lg = log_gamma(s);
  const double peak = std::max(s - 1.0, 1.0);
  auto density = [s, lg](double u) { return u > 0.0 ? std::exp((s - 1.0) * std::log(u) - u - lg) : 0.0; };
  const QuadratureResult head = integrate_unit(Integrand([&](double x) { return peak * density(peak * x); }), spec);
  const QuadratureResult tail = integrate_semiline([&](double v) { return density(peak + v); }, spec);
  QuadratureResult q;
  q.value = head.value + tail.value;
  const int sgn = -parity(k) * term.sign;
  const double log_mag =
      std::log(term.prefactor / kPi) + k * std::log(term.exponent_scale) + lg + std::log(q.value);
  return ScaledValue::from_log(sgn, log_mag);
}

ScaledValue large_order_estimate(int k, int n) {
  if (k < 1 || n < 0) throw std::domain_error("large_order_estimate: requires k >= 1, n >= 0");
  // (-1)^{k+n} Gamma(n+1/2)/(2^n n!^2) (4^k/pi) k! k^{n-1/2}
  const double log_mag = log_gamma(n + 0.5) - n * std::numbers::ln2 - 2.0 * log_gamma(n + 1.0) +
                         k * std::log(4.0) - std::log(kPi) + log_gamma(k + 1.0) + (n - 0.5) * std::log(k);
  return ScaledValue::from_log(parity(k + n), log_mag);
}

ScaledValue large_order_estimate_fixed_delta(int k, double delta) {
  if (k < 1) throw std::domain_error("large_order_estimate_fixed_delta: requires k >= 1");
  if (delta == 0.0 || !(delta < 2.0))
    throw std::domain_error("large_order_estimate_fixed_delta: requires delta != 0 and delta < 2");
  const double kd = k * delta;
  double log_mag = log_gamma(k + 1.0) - std::log(static_cast<double>(k)) - std::log(kPi);
  double correction = 0.0;
  if (delta > 0.0) {
    log_mag += 0.5 * std::log(2.0) + k * std::log(4.0) - 0.5 * std::log(delta);
    correction = 1.0 + 0.5 / kd;
  } else {
    log_mag += 0.5 * std::log(2.0 - delta) + k * std::log(4.0 - 2.0 * delta) - 0.5 * std::log(-delta);
    correction = 1.0 - 0.5 / kd;
  }
  return ScaledValue::from_log(parity(k), log_mag + std::log(correction));
}

LargeOrderParams large_order_params(int n_max) {
  std::vector<double> gamma;
  for (const ImaginaryPartTerm& t : imaginary_part_terms(n_max))
    gamma.push_back(-t.sign * t.prefactor / kPi);
  return LargeOrderParams::make(BigRational(4), make_rational(-1, 2),
                                AffineMap{BigRational(1), make_rational(-1, 2)}, std::move(gamma));
}

}  // namespace anires::model
