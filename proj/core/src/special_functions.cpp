#include "anires/special_functions.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

namespace anires {

namespace {

constexpr double kLn2 = std::numbers::ln2;

// Below this point the positive-term power series is used; above it the
// asymptotic expansion, whose optimal-truncation error is ~exp(-2x).
constexpr double kBesselSwitch = 40.0;

}  // namespace

// ---------------------------------------------------------------------------
// ScaledValue

ScaledValue ScaledValue::from_double(double value) {
  ScaledValue v;
  if (value == 0.0) return v;
  if (!std::isfinite(value)) throw std::domain_error("ScaledValue: non-finite input");
  int e = 0;
  const double m = std::frexp(std::fabs(value), &e);  // m in [0.5, 1)
  v.sign_ = value < 0 ? -1 : 1;
  v.mantissa_ = 2.0 * m;
  v.exponent_ = e - 1;
  return v;
}

ScaledValue ScaledValue::from_parts(int sign, double mantissa, std::int64_t exponent) {
  if (sign == 0 || mantissa == 0.0) return {};
  ScaledValue v = from_double(mantissa);
  v.sign_ *= sign < 0 ? -1 : 1;
  v.exponent_ += exponent;
  return v;
}

ScaledValue ScaledValue::from_log(int sign, double log_abs) {
  if (sign == 0 || log_abs == -std::numeric_limits<double>::infinity()) return {};
  if (!std::isfinite(log_abs)) throw std::domain_error("ScaledValue: non-finite logarithm");
  const double e = std::floor(log_abs / kLn2);
  const double m = std::exp(log_abs - e * kLn2);
  return from_parts(sign, m, static_cast<std::int64_t>(e));
}

double ScaledValue::log_abs() const {
  if (sign_ == 0) return -std::numeric_limits<double>::infinity();
  return std::log(mantissa_) + static_cast<double>(exponent_) * kLn2;
}

double ScaledValue::to_double() const {
  if (sign_ == 0) return 0.0;
  constexpr std::int64_t kLimit = 4096;
  if (exponent_ > kLimit) return sign_ * std::numeric_limits<double>::infinity();
  if (exponent_ < -kLimit) return sign_ * 0.0;
  return sign_ * std::ldexp(mantissa_, static_cast<int>(exponent_));
}

ScaledValue ScaledValue::operator-() const {
  ScaledValue v = *this;
  v.sign_ = -v.sign_;
  return v;
}

ScaledValue operator*(const ScaledValue& a, const ScaledValue& b) {
  if (a.is_zero() || b.is_zero()) return {};
  return ScaledValue::from_parts(a.sign_ * b.sign_, a.mantissa_ * b.mantissa_,
                                 a.exponent_ + b.exponent_);
}

ScaledValue operator/(const ScaledValue& a, const ScaledValue& b) {
  if (b.is_zero()) throw std::domain_error("ScaledValue: division by zero");
  if (a.is_zero()) return {};
  return ScaledValue::from_parts(a.sign_ * b.sign_, a.mantissa_ / b.mantissa_,
                                 a.exponent_ - b.exponent_);
}

// ---------------------------------------------------------------------------
// Scalar functions

double log_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_gamma: argument must be positive");
  return std::lgamma(x);
}

double generalized_binomial(double x, int m) {
  if (m < 0) throw std::invalid_argument("generalized_binomial: negative lower index");
  double r = 1.0;
  for (int i = 0; i < m; ++i) r *= (x - i) / (i + 1);
  return r;
}

ScaledValue legendre_scaled(int k, double x) {
  if (k < 0) throw std::domain_error("legendre_scaled: negative degree");
  if (!(x >= 1.0)) throw std::domain_error("legendre_scaled: argument must be >= 1");
  if (k == 0) return ScaledValue::from_double(1.0);

  // (prev, cur) share the binary exponent `shift`.
  double prev = 1.0;
  double cur = x;
  std::int64_t shift = 0;
  for (int n = 1; n < k; ++n) {
    const double next = ((2.0 * n + 1.0) * x * cur - n * prev) / (n + 1.0);
    int e = 0;
    std::frexp(next, &e);
    prev = std::ldexp(cur, -e);
    cur = std::ldexp(next, -e);
    shift += e;
  }
  return ScaledValue::from_parts(1, cur, shift);
}

double bessel_i0_scaled(double x) {
  if (!(x >= 0.0)) throw std::domain_error("bessel_i0_scaled: argument must be >= 0");
  if (x < kBesselSwitch) {
    const double q = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int m = 1; m < 500; ++m) {
      term *= q / (static_cast<double>(m) * m);
      sum += term;
      if (term < sum * 1e-17) break;
    }
    return std::exp(-x) * sum;
  }
  double term = 1.0;
  double sum = 1.0;
  for (int k = 0; k < 200; ++k) {
    const double next = term * (2.0 * k + 1.0) * (2.0 * k + 1.0) / (8.0 * (k + 1.0) * x);
    if (next > term) break;
    term = next;
    sum += term;
    if (term < sum * 1e-17) break;
  }
  return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

// ---------------------------------------------------------------------------
// Quadrature

void QuadratureSpec::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0) || max_refinements < 1)
    throw std::invalid_argument("QuadratureSpec: tolerances must be > 0 and max_refinements >= 1");
}

namespace {

// Integrators precompute abscissa tables; keep one per thread and refinement depth.
boost::math::quadrature::tanh_sinh<double>& tanh_sinh_for(int refinements) {
  thread_local std::map<int, boost::math::quadrature::tanh_sinh<double>> cache;
  auto it = cache.find(refinements);
  if (it == cache.end())
    it = cache.emplace(refinements, boost::math::quadrature::tanh_sinh<double>(refinements)).first;
  return it->second;
}

boost::math::quadrature::exp_sinh<double>& exp_sinh_for(int refinements) {
  thread_local std::map<int, boost::math::quadrature::exp_sinh<double>> cache;
  auto it = cache.find(refinements);
  if (it == cache.end())
    it = cache.emplace(refinements, boost::math::quadrature::exp_sinh<double>(refinements)).first;
  return it->second;
}

QuadratureResult check(const char* name, double q, double err, double l1, std::size_t levels,
                       const QuadratureSpec& spec) {
  QuadratureResult r{q, err, l1, static_cast<int>(levels)};
  const double allowed = std::max(spec.abs_tol, spec.rel_tol * std::fabs(q));
  if (!std::isfinite(q) || !(err <= allowed)) {
    std::ostringstream os;
    os.precision(17);
    os << name << ": no convergence after " << levels << " levels (estimate " << q
       << ", error bound " << err << ", allowed " << allowed << ")";
    throw QuadratureError(os.str(), q, err);
  }
  return r;
}

// Boost compares its level-difference estimate with tol * L1 on its own internal
// interval, which can be twice ours; asking for a tenth keeps check() satisfied.
double engine_tolerance(const QuadratureSpec& spec) { return 0.1 * spec.rel_tol; }

}  // namespace

QuadratureResult integrate_unit(const UnitIntegrand& f, const QuadratureSpec& spec) {
  spec.validate();
  double err = 0.0;
  double l1 = 0.0;
  std::size_t levels = 0;
  double q = 0.0;
  try {
    // Boost passes a signed distance to the nearest endpoint as the second argument.
    auto g = [&f](double w, double wc) {
      const double one_minus_w = wc > 0.0 ? wc : 1.0 - w;
      return f(w, one_minus_w);
    };
    q = tanh_sinh_for(spec.max_refinements).integrate(g, 0.0, 1.0, engine_tolerance(spec), &err, &l1, &levels);
  } catch (const QuadratureError&) {
    throw;
  } catch (const std::exception& e) {
    throw QuadratureError(std::string("integrate_unit: ") + e.what(), q,
                          std::numeric_limits<double>::infinity());
  }
  return check("integrate_unit", q, err, l1, levels, spec);
}

QuadratureResult integrate_unit(const Integrand& f, const QuadratureSpec& spec) {
  return integrate_unit(UnitIntegrand([&f](double w, double) { return f(w); }), spec);
}

QuadratureResult integrate_semiline(const Integrand& f, const QuadratureSpec& spec) {
  spec.validate();
  double err = 0.0;
  double l1 = 0.0;
  std::size_t levels = 0;
  double q = 0.0;
  try {
    q = exp_sinh_for(spec.max_refinements).integrate(f, 0.0, std::numeric_limits<double>::infinity(),
                                                     engine_tolerance(spec), &err, &l1, &levels);
  } catch (const std::exception& e) {
    throw QuadratureError(std::string("integrate_semiline: ") + e.what(), q,
                          std::numeric_limits<double>::infinity());
  }
  return check("integrate_semiline", q, err, l1, levels, spec);
}

}  // namespace anires
