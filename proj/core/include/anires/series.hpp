#pragma once

#include <gmpxx.h>

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "anires/special_functions.hpp"

namespace anires {

/// Exact rational, always kept in lowest terms with a positive denominator.
using BigRational = mpq_class;

BigRational make_rational(long numerator, long denominator = 1);
/// Parses "p/q" or "p" (decimal integers, optional sign). std::invalid_argument on bad input.
BigRational parse_rational(std::string_view text);
/// "p/q", or "p" when the denominator is 1.
std::string to_fraction_string(const BigRational& q);
/// Decimal expansion with `digits` significant digits (scientific notation when large).
std::string to_decimal_string(const BigRational& q, int digits = 40);
double to_double(const BigRational& q);
/// ln|q| without overflow, -inf for 0.
double log_abs(const BigRational& q);
int sign(const BigRational& q);
BigRational pow(const BigRational& base, int exponent);
/// (x)_m = x (x+1) ... (x+m-1).
BigRational pochhammer(const BigRational& x, int m);
/// x (x-1) ... (x-m+1) / m!.
BigRational generalized_binomial(const BigRational& x, int m);
BigRational factorial(int n);

/// Triangular table of exact coefficients c(k, n), 0 <= n <= k <= kmax, multiplying
/// g^k delta^n (or whatever pair of expansion variables the producer documents).
class CoefficientTable {
 public:
  explicit CoefficientTable(int kmax);

  int kmax() const { return kmax_; }
  /// Number of stored entries, (kmax+1)(kmax+2)/2.
  std::size_t size() const { return entries_.size(); }

  /// Entry (k, n); zero for n > k. std::out_of_range for k > kmax or negative indices.
  const BigRational& at(int k, int n) const;
  void set(int k, int n, BigRational value);

  /// Coefficients of column n for k = 0..kmax (zeros for k < n).
  std::vector<BigRational> column(int n) const;

  /// CSV with header `k,n,numerator,denominator,value`; value is a 40-digit decimal.
  void write_csv(std::ostream& os) const;
  /// CSV with header `k,n,value` where value is "p/q".
  void write_fraction_csv(std::ostream& os, std::string_view value_header = "value") const;
  /// Reads either layout written above.
  static CoefficientTable read_csv(std::istream& is);

  friend bool operator==(const CoefficientTable&, const CoefficientTable&) = default;

 private:
  static std::size_t index(int k, int n) { return static_cast<std::size_t>(k) * (k + 1) / 2 + n; }

  int kmax_;
  std::vector<BigRational> entries_;
};

/// sum_{k<=K} sum_{n<=k} c(k,n) g^k delta^n, exact.
BigRational truncated_double_sum(const CoefficientTable& table, const BigRational& g,
                                 const BigRational& delta, int K);
double truncated_double_sum(const CoefficientTable& table, double g, double delta, int K);

/// n -> slope * n + offset.
struct AffineMap {
  BigRational slope;
  BigRational offset;

  BigRational operator()(int n) const { return slope * n + offset; }
};

/// Large-order data c_kn ~ gamma_n (-1)^k k! k^{beta(n)} sigma^k together with the
/// strong-coupling exponent alpha. The Borel parameter is b0(n) = beta(n) + 3/2.
struct LargeOrderParams {
  std::vector<double> gamma_n;
  BigRational sigma;
  AffineMap beta_of_n;
  AffineMap b0_of_n;
  BigRational alpha;

  static LargeOrderParams make(BigRational sigma, BigRational alpha, AffineMap beta_of_n,
                               std::vector<double> gamma_n = {});

  /// Throws std::invalid_argument if sigma <= 0 or b0 != beta + 3/2.
  void validate() const;
};

/// Sign and log-magnitude of one series coefficient.
struct SignedLog {
  int sign = 0;
  double log_abs = 0.0;
};

struct CrossoverReport {
  std::vector<int> k_grid;
  /// f(k) = ln|c_k / ((-sigma)^k k!)|.
  std::vector<double> f_values;
  /// Two-point slope of f against ln k on [k_i, k_{i+1}]; one entry fewer than the grid.
  std::vector<double> beta_local;
  double threshold = -0.75;
  /// First grid k whose interval slope is at or below the threshold.
  std::optional<int> k_cross;

  /// Mean of the interval slopes whose intervals lie inside [k_lo, k_hi].
  double mean_beta(int k_lo, int k_hi) const;
  /// CSV with header `k,f,beta_local`; beta_local is empty on the last row.
  void write_csv(std::ostream& os) const;
};

/// k_min, k_min*ratio, ... up to k_max (inclusive when hit exactly).
std::vector<int> geometric_grid(int k_min, int k_max, int ratio = 2);

/// Local large-order exponent of a sign-alternating column. `coefficient(k)` supplies
/// c_k for every k in the grid. std::domain_error names the first k that breaks the
/// (-1)^k sign pattern; std::invalid_argument for a bad grid.
CrossoverReport local_exponent(const std::function<SignedLog(int)>& coefficient, double sigma,
                               std::span<const int> k_grid, double threshold = -0.75);
/// Column given as c_0..c_K, exact or scaled.
CrossoverReport local_exponent(std::span<const BigRational> column, double sigma,
                               std::span<const int> k_grid, double threshold = -0.75);
CrossoverReport local_exponent(std::span<const ScaledValue> column, double sigma,
                               std::span<const int> k_grid, double threshold = -0.75);

}  // namespace anires
