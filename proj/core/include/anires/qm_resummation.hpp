#pragma once

#include <memory>
#include <vector>

#include "anires/borel.hpp"
#include "anires/model_integral.hpp"
#include "anires/series.hpp"

/// Large-order behavior and Borel resummation of the anisotropic oscillator ground-state
/// energy E(g, delta) = sum_{k,n} E_kn (g/4)^k (2 delta)^n.
namespace anires::qm {

using model::ImaginaryPartTerm;

/// Default growth constant of E_kn in the variable g/4.
inline constexpr double kDefaultSigma = 3.0;

/// B(n+1/2, n+1/2) from Gamma functions.
double beta_half(int n);

/// Terms n = 0..n_max of Im E(g + i0, delta) for g < 0 in the raw variables g and delta:
/// prefactor (6/pi) (2^n/n!) B(n+1/2, n+1/2), sign (-1)^n, power n+1, exponential
/// argument 4/(3|g|) (exponent_scale 3/4).
std::vector<ImaginaryPartTerm> qm_imaginary_terms(int n_max);

/// gamma_n in the variables g/4 and 2 delta: -(6/pi^2) (-1)^n B(n+1/2, n+1/2) / n!.
double gamma_n(int n);

/// gamma_n (-1)^k sigma^k k! k^n in extended range. Requires k >= 1.
ScaledValue qm_large_order_estimate(int k, int n, double sigma_in_gbar = kDefaultSigma);

/// sigma (growth constant in g/4), alpha = 1/3, beta(n) = n, so b0(n) = n + 3/2.
LargeOrderParams large_order_params(const BigRational& sigma = BigRational(3), int n_max = 0);

/// Order-N approximant of the energy table (columns in g/4 and 2 delta).
ResummedApproximant make_approximant(std::shared_ptr<const CoefficientTable> table, int N,
                                     const BigRational& sigma = BigRational(3));

/// E^{(N)} at coupling g/4 and anisotropy delta.
double resum_energy(const ResummedApproximant& approx, double g_over_4, double delta,
                    const QuadratureSpec& quad = {});

/// Convenience form building the approximant on the fly.
double resum_energy(const CoefficientTable& table, int N, double g_over_4, double delta,
                    double sigma = kDefaultSigma, const QuadratureSpec& quad = {});

}  // namespace anires::qm
