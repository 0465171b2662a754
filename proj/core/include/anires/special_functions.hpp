#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace anires {

/// Floating value with an extended binary exponent: sign * mantissa * 2^exponent,
/// mantissa in [1, 2) or exactly 0. Lets Legendre polynomials and factorial-sized
/// coefficients travel far past the double range.
class ScaledValue {
 public:
  ScaledValue() = default;

  /// Normalizes an arbitrary double (possibly 0) into mantissa/exponent form.
  static ScaledValue from_double(double value);
  /// Builds sign * exp(log_abs). Exact up to the rounding of log_abs.
  static ScaledValue from_log(int sign, double log_abs);
  /// Builds sign * mantissa * 2^exponent and renormalizes.
  static ScaledValue from_parts(int sign, double mantissa, std::int64_t exponent);

  int sign() const { return sign_; }
  double mantissa() const { return mantissa_; }
  std::int64_t exponent() const { return exponent_; }
  bool is_zero() const { return sign_ == 0; }

  /// Natural log of |value|; -inf for zero.
  double log_abs() const;
  /// Converts to double; overflows to +-inf or underflows to 0 like ldexp.
  double to_double() const;

  ScaledValue operator-() const;
  friend ScaledValue operator*(const ScaledValue& a, const ScaledValue& b);
  friend ScaledValue operator/(const ScaledValue& a, const ScaledValue& b);
  friend bool operator==(const ScaledValue&, const ScaledValue&) = default;

 private:
  int sign_ = 0;
  double mantissa_ = 0.0;
  std::int64_t exponent_ = 0;
};

struct QuadratureSpec {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_refinements = 15;

  /// Throws std::invalid_argument unless all fields are positive.
  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  double l1_norm = 0.0;
  int levels = 0;
};

/// Raised when a quadrature does not meet its tolerance. Carries the best
/// available estimate so callers can still report it.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, double best_estimate, double error_bound)
      : std::runtime_error(what), best_estimate_(best_estimate), error_bound_(error_bound) {}

  double best_estimate() const { return best_estimate_; }
  double error_bound() const { return error_bound_; }

 private:
  double best_estimate_;
  double error_bound_;
};

/// ln Gamma(x) for x > 0; std::domain_error otherwise.
double log_gamma(double x);

/// x (x-1) ... (x-m+1) / m!. The exact-rational variant lives in series.hpp.
double generalized_binomial(double x, int m);

/// P_k(x) for x >= 1 by the three-term recurrence, renormalized every step.
ScaledValue legendre_scaled(int k, double x);

/// exp(-x) I_0(x) for x >= 0.
double bessel_i0_scaled(double x);

/// Integrand on (0,1) that also receives 1-w computed without cancellation.
using UnitIntegrand = std::function<double(double w, double one_minus_w)>;
using Integrand = std::function<double(double)>;

/// Double-exponential quadrature on (0,1). Integrable endpoint singularities are fine.
QuadratureResult integrate_unit(const UnitIntegrand& f, const QuadratureSpec& spec = {});
QuadratureResult integrate_unit(const Integrand& f, const QuadratureSpec& spec = {});

/// Double-exponential quadrature on (0, inf).
QuadratureResult integrate_semiline(const Integrand& f, const QuadratureSpec& spec = {});

}  // namespace anires
