#pragma once

#include <vector>

#include "anires/series.hpp"
#include "anires/special_functions.hpp"

/// The zero-dimensional anisotropic partition function
///   Z(g, delta) = (1/2pi) \int dx dy exp{-(x^2+y^2)/2 - g/4 [x^4 + 2(1-delta) x^2 y^2 + y^4]}
/// and everything known about its expansion in g and delta.
namespace anires::model {

/// Exact Z_kn, coefficient of g^k delta^n; zero for k < n.
/// std::domain_error for negative indices.
BigRational z_coeff(int k, int n);

/// Z_kn for 0 <= n <= k <= kmax.
CoefficientTable coefficients(int kmax);

/// Z_k(delta) = sum_n Z_kn delta^n, exact.
BigRational z_coeff_delta(int k, const BigRational& delta);

/// Z_k(delta) from the Legendre closed form,
///   (-1)^k (2k)!/k! (1 - delta/2)^{k/2} P_k((4 - delta) / (2 sqrt(4 - 2 delta))),
/// in extended range. Requires delta < 2.
ScaledValue z_coeff_delta_legendre(int k, double delta);

/// Reference value of Z(g, delta) from the one-dimensional rho-integral with the
/// exponentially scaled Bessel function. Requires g > 0 and delta < 2.
QuadratureResult z_reference_result(double g, double delta, const QuadratureSpec& spec = {});
double z_reference(double g, double delta, const QuadratureSpec& spec = {});

struct SeriesSum {
  double value = 0.0;
  double remainder_estimate = 0.0;
  /// Set when |delta| >= 2, where the series does not converge.
  bool divergent = false;
};

/// kappa(delta) with Z -> kappa(delta) g^{-1/2} for g -> infinity, summed to `terms` terms.
SeriesSum strong_coupling_kappa(double delta, int terms);

/// One delta^n contribution to the imaginary part on the negative-coupling cut:
///   sign * prefactor * (1/(exponent_scale |g|))^power * exp(-1/(exponent_scale |g|)) * delta^n
/// in the expansion variables of the owning series.
struct ImaginaryPartTerm {
  int n = 0;
  int sign = 1;
  double prefactor = 0.0;
  double exponent_scale = 0.0;
  double power = 0.0;
};

/// Terms n = 0..n_max of Im Z: prefactor Gamma(n+1/2) / (2^n n!^2), power n+1/2, scale 4.
std::vector<ImaginaryPartTerm> imaginary_part_terms(int n_max);

/// Coefficient of g^k obtained from the dispersion integral
///   F_k = (1/pi) \int_{-inf}^0 dg Im F(g + i0) / g^{k+1}
/// over a single imaginary-part term, evaluated by quadrature. Requires k >= 1.
ScaledValue dispersion_coefficient(const ImaginaryPartTerm& term, int k, const QuadratureSpec& spec = {});

/// Leading large-k estimate of Z_kn (valid for k >> n), in extended range. Requires k >= 1.
ScaledValue large_order_estimate(int k, int n);

/// Large-k estimate of Z_k(delta) at fixed delta != 0 (anisotropic regime k|delta| >> 1),
/// including the first 1/(k delta) correction. Growth constant 4 for delta > 0 and
/// 4 - 2 delta for delta < 0.
ScaledValue large_order_estimate_fixed_delta(int k, double delta);

/// sigma = 4, alpha = -1/2, beta(n) = n - 1/2 (so b0(n) = n + 1), gamma_n for n <= n_max.
LargeOrderParams large_order_params(int n_max = 0);

}  // namespace anires::model
