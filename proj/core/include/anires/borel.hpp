#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "anires/series.hpp"
#include "anires/special_functions.hpp"

namespace anires {

/// Parameters of one basis function
///   I_p(g) = \int_0^inf dt e^{-t} t^{b0} / Gamma(b0+1) * ((1 + sqrt(1+s))/2)^{2 alpha} * w(s)^p,
///   s = sigma g t,  w(s) = (sqrt(1+s) - 1) / (sqrt(1+s) + 1).
/// Its power series in g has the large-order growth (-1)^k k! k^{b0-3/2} sigma^k and
/// I_p(g) ~ g^alpha for g -> infinity.
struct BorelBasisSpec {
  int p = 0;
  double b0 = 0.0;
  double alpha = 0.0;
  double sigma = 1.0;

  void validate() const;
};

enum class BasisMethod {
  /// Small-coupling series when sigma*g < 1e-3, w-substitution quadrature otherwise.
  automatic,
  /// Quadrature over w in (0,1).
  w_form,
  /// Quadrature over the Borel variable t in (0, inf).
  t_form,
  /// Optimally truncated power series in g.
  small_coupling_series,
};

/// I_p(g) for g > 0. Quadrature failures propagate as QuadratureError.
double basis_integral(const BorelBasisSpec& spec, double g, const QuadratureSpec& quad = {},
                      BasisMethod method = BasisMethod::automatic);

/// Coefficient of g^k in the power series of I_p:
///   sigma^k (b0+1)_k 4^{-p} (-1)^{k-p} (a)_j (a+1/2)_j / ((2a+1)_j j!),  j = k-p, a = p - alpha,
/// and zero for k < p.
BigRational basis_series_coefficient(int p, int k, const BigRational& b0, const BigRational& alpha,
                                     const BigRational& sigma);
double basis_series_coefficient(int p, int k, double b0, double alpha, double sigma);

/// a_p = sum_{k<=p} c_k / (b0+1)_k (4/sigma)^k binom(p+k-1-2 alpha, p-k) for p = 0..N.
/// `column` holds c_0..c_N of one delta-power (entries below the first nonzero order may be 0).
std::vector<BigRational> borel_coefficients(std::span<const BigRational> column, const BigRational& b0,
                                            const BigRational& alpha, const BigRational& sigma, int N);
std::vector<double> borel_coefficients(std::span<const double> column, double b0, double alpha,
                                       double sigma, int N);

/// Order-N resummation of a double series sum_{k,n} c_kn x^k y^n: each y^n column is
/// reexpanded as sum_{p=n}^N a_pn I_pn(x) with b0 = b0_of_n(n).
class ResummedApproximant {
 public:
  static ResummedApproximant build(std::shared_ptr<const CoefficientTable> table, LargeOrderParams params,
                                   int order);

  int order() const { return order_; }
  const LargeOrderParams& params() const { return params_; }
  const CoefficientTable& input() const { return *table_; }

  /// a_pn; zero outside n <= p <= N.
  const BigRational& a(int p, int n) const;
  BorelBasisSpec basis(int p, int n) const;

  /// I_pn(g), memoized per (p, n, g). Safe to call concurrently.
  double basis_value(int p, int n, double g, const QuadratureSpec& quad = {}) const;

  /// {N, sigma, alpha, b0_slope, b0_offset, normalization, a: [{p, n, numerator, denominator}]}
  std::string to_json() const;

 private:
  struct Cache {
    std::mutex mutex;
    std::map<std::tuple<int, int, double>, double> values;
  };

  ResummedApproximant() = default;

  std::shared_ptr<const CoefficientTable> table_;
  LargeOrderParams params_;
  int order_ = 0;
  std::vector<std::vector<BigRational>> a_;  // a_[n][p]
  std::shared_ptr<Cache> cache_;
};

/// Z^{(N)}(g, y) = sum_n y^n sum_{p=n}^N a_pn I_pn(g). Requires g > 0.
double resum(const ResummedApproximant& approx, double g, double y, const QuadratureSpec& quad = {});

/// Same at one coupling for many values of the second variable; basis integrals computed once.
std::vector<double> resum_grid(const ResummedApproximant& approx, double g, std::span<const double> ys,
                               const QuadratureSpec& quad = {});

/// Reexpands sum_p a_pn I_pn in powers of g and returns the largest deviation from the
/// input coefficients for k <= N, relative to |c_kn| where nonzero. Exactly zero when the
/// construction is consistent.
BigRational reexpansion_check(const ResummedApproximant& approx);

/// Floating-point counterpart: a_pn and the reexpansion both in double arithmetic.
double reexpansion_check_float(const ResummedApproximant& approx);

}  // namespace anires
