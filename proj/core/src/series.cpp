#include "anires/series.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace anires {

// ---------------------------------------------------------------------------
// Rational helpers

BigRational make_rational(long numerator, long denominator) {
  if (denominator == 0) throw std::invalid_argument("make_rational: zero denominator");
  BigRational q(numerator, denominator);
  q.canonicalize();
  return q;
}

BigRational parse_rational(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  auto valid_integer = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  const auto slash = text.find('/');
  std::string_view num = trim(text.substr(0, slash));
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : trim(text.substr(slash + 1));
  if (!valid_integer(num) || !valid_integer(den) || den.front() == '-' || den.front() == '+')
    throw std::invalid_argument("parse_rational: malformed rational '" + std::string(text) + "'");
  if (num.front() == '+') num.remove_prefix(1);
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw std::invalid_argument("parse_rational: zero denominator");
  BigRational q(n, d);
  q.canonicalize();
  return q;
}

std::string to_fraction_string(const BigRational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_decimal_string(const BigRational& q, int digits) {
  if (digits < 1) throw std::invalid_argument("to_decimal_string: digits must be >= 1");
  if (q == 0) return "0";
  BigRational a = abs(q);
  // Decimal exponent e with 10^e <= a < 10^(e+1); start from the float estimate and fix up.
  long e = static_cast<long>(std::floor(log_abs(a) / std::numbers::ln10));
  auto pow10 = [](long p) {
    mpz_class z;
    mpz_ui_pow_ui(z.get_mpz_t(), 10, static_cast<unsigned long>(p < 0 ? -p : p));
    return p < 0 ? BigRational(mpz_class(1), z) : BigRational(z);
  };
  while (a >= pow10(e + 1)) ++e;
  while (a < pow10(e)) --e;

  // Round a * 10^(digits-1-e) half away from zero.
  BigRational scaled = a * pow10(digits - 1 - e);
  mpz_class twice = (2 * scaled.get_num() + scaled.get_den()) / (2 * scaled.get_den());
  std::string s = twice.get_str();
  if (static_cast<int>(s.size()) > digits) {  // rounding carried into a new digit
    ++e;
    s.pop_back();
  }
  // Trim trailing zeros of the significand.
  while (s.size() > 1 && s.back() == '0') s.pop_back();

  std::string out = q < 0 ? "-" : "";
  if (e >= -6 && e < digits) {
    if (e < 0) {
      out += "0." + std::string(static_cast<std::size_t>(-e - 1), '0') + s;
    } else if (static_cast<long>(s.size()) <= e + 1) {
      out += s + std::string(static_cast<std::size_t>(e + 1 - static_cast<long>(s.size())), '0');
    } else {
      out += s.substr(0, static_cast<std::size_t>(e + 1)) + "." + s.substr(static_cast<std::size_t>(e + 1));
    }
  } else {
    out += s.substr(0, 1);
    if (s.size() > 1) out += "." + s.substr(1);
    out += (e < 0 ? "e-" : "e+") + std::to_string(e < 0 ? -e : e);
  }
  return out;
}

double to_double(const BigRational& q) {
  const double d = q.get_d();
  if (d != 0.0 || q == 0) return d;
  return std::exp(log_abs(q)) * sign(q);
}

double log_abs(const BigRational& q) {
  if (q == 0) return -std::numeric_limits<double>::infinity();
  auto log_mpz = [](const mpz_class& z) {
    long e = 0;
    const double m = mpz_get_d_2exp(&e, z.get_mpz_t());
    return std::log(std::fabs(m)) + static_cast<double>(e) * std::numbers::ln2;
  };
  return log_mpz(q.get_num()) - log_mpz(q.get_den());
}

int sign(const BigRational& q) { return sgn(q); }

BigRational pow(const BigRational& base, int exponent) {
  if (exponent < 0) {
    if (base == 0) throw std::domain_error("pow: zero to a negative power");
    return pow(BigRational(1) / base, -exponent);
  }
  mpz_class num;
  mpz_class den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  return BigRational(num, den);  // already coprime
}

BigRational pochhammer(const BigRational& x, int m) {
  if (m < 0) throw std::invalid_argument("pochhammer: negative length");
  BigRational r(1);
  for (int i = 0; i < m; ++i) r *= x + i;
  return r;
}

BigRational generalized_binomial(const BigRational& x, int m) {
  if (m < 0) throw std::invalid_argument("generalized_binomial: negative lower index");
  BigRational r(1);
  for (int i = 0; i < m; ++i) {
    r *= x - i;
    r /= i + 1;
  }
  return r;
}

BigRational factorial(int n) {
  if (n < 0) throw std::domain_error("factorial: negative argument");
  mpz_class z;
  mpz_fac_ui(z.get_mpz_t(), static_cast<unsigned long>(n));
  return BigRational(z);
}

// ---------------------------------------------------------------------------
// CoefficientTable

CoefficientTable::CoefficientTable(int kmax) : kmax_(kmax) {
  if (kmax < 0) throw std::invalid_argument("CoefficientTable: kmax must be >= 0");
  entries_.resize(index(kmax, kmax) + 1);
}

const BigRational& CoefficientTable::at(int k, int n) const {
  static const BigRational kZero(0);
  if (k < 0 || n < 0 || k > kmax_)
    throw std::out_of_range("CoefficientTable: index (" + std::to_string(k) + "," + std::to_string(n) +
                            ") outside kmax " + std::to_string(kmax_));
  if (n > k) return kZero;
  return entries_[index(k, n)];
}

void CoefficientTable::set(int k, int n, BigRational value) {
  if (k < 0 || n < 0 || k > kmax_ || n > k)
    throw std::out_of_range("CoefficientTable::set: index (" + std::to_string(k) + "," +
                            std::to_string(n) + ") outside the triangle");
  entries_[index(k, n)] = std::move(value);
}

std::vector<BigRational> CoefficientTable::column(int n) const {
  std::vector<BigRational> c(static_cast<std::size_t>(kmax_) + 1);
  for (int k = n; k <= kmax_; ++k) c[static_cast<std::size_t>(k)] = at(k, n);
  return c;
}

void CoefficientTable::write_csv(std::ostream& os) const {
  os << "k,n,numerator,denominator,value\n";
  for (int k = 0; k <= kmax_; ++k)
    for (int n = 0; n <= k; ++n) {
      const BigRational& q = at(k, n);
      os << k << ',' << n << ',' << q.get_num().get_str() << ',' << q.get_den().get_str() << ','
         << to_decimal_string(q) << '\n';
    }
}

void CoefficientTable::write_fraction_csv(std::ostream& os, std::string_view value_header) const {
  os << "k,n," << value_header << '\n';
  for (int k = 0; k <= kmax_; ++k)
    for (int n = 0; n <= k; ++n) os << k << ',' << n << ',' << to_fraction_string(at(k, n)) << '\n';
}

CoefficientTable CoefficientTable::read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("read_csv: empty input");
  struct Row {
    int k;
    int n;
    BigRational v;
  };
  std::vector<Row> rows;
  int kmax = -1;
  while (std::getline(is, line)) {
    if (line.empty() || line == "\r") continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    if (cells.size() < 3) throw std::invalid_argument("read_csv: short row '" + line + "'");
    Row r{std::stoi(cells[0]), std::stoi(cells[1]), {}};
    r.v = cells.size() >= 4 ? parse_rational(cells[2] + "/" + cells[3]) : parse_rational(cells[2]);
    kmax = std::max(kmax, r.k);
    rows.push_back(std::move(r));
  }
  if (kmax < 0) throw std::invalid_argument("read_csv: no rows");
  CoefficientTable t(kmax);
  for (auto& r : rows) t.set(r.k, r.n, std::move(r.v));
  return t;
}

BigRational truncated_double_sum(const CoefficientTable& table, const BigRational& g,
                                 const BigRational& delta, int K) {
  if (K > table.kmax() || K < 0) throw std::range_error("truncated_double_sum: order outside table");
  // Horner in g over the delta-polynomials of each order.
  BigRational sum(0);
  for (int k = K; k >= 0; --k) {
    BigRational row(0);
    for (int n = k; n >= 0; --n) row = row * delta + table.at(k, n);
    sum = sum * g + row;
  }
  return sum;
}

double truncated_double_sum(const CoefficientTable& table, double g, double delta, int K) {
  if (K > table.kmax() || K < 0) throw std::range_error("truncated_double_sum: order outside table");
  double sum = 0.0;
  for (int k = K; k >= 0; --k) {
    double row = 0.0;
    for (int n = k; n >= 0; --n) row = row * delta + to_double(table.at(k, n));
    sum = sum * g + row;
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Large-order parameters

LargeOrderParams LargeOrderParams::make(BigRational sigma, BigRational alpha, AffineMap beta_of_n,
                                        std::vector<double> gamma_n) {
  LargeOrderParams p;
  p.gamma_n = std::move(gamma_n);
  p.sigma = std::move(sigma);
  p.alpha = std::move(alpha);
  p.b0_of_n = AffineMap{beta_of_n.slope, beta_of_n.offset + make_rational(3, 2)};
  p.beta_of_n = std::move(beta_of_n);
  p.validate();
  return p;
}

void LargeOrderParams::validate() const {
  if (sigma <= 0) throw std::invalid_argument("LargeOrderParams: sigma must be positive");
  if (b0_of_n.slope != beta_of_n.slope || b0_of_n.offset != beta_of_n.offset + make_rational(3, 2))
    throw std::invalid_argument("LargeOrderParams: b0(n) must equal beta(n) + 3/2");
}

// ---------------------------------------------------------------------------
// Crossover diagnostics

std::vector<int> geometric_grid(int k_min, int k_max, int ratio) {
  if (k_min < 1 || k_max < k_min || ratio < 2)
    throw std::invalid_argument("geometric_grid: need 1 <= k_min <= k_max and ratio >= 2");
  std::vector<int> grid;
  for (long k = k_min; k <= k_max; k *= ratio) grid.push_back(static_cast<int>(k));
  return grid;
}

CrossoverReport local_exponent(const std::function<SignedLog(int)>& coefficient, double sigma,
                               std::span<const int> k_grid, double threshold) {
  if (k_grid.size() < 2) throw std::invalid_argument("local_exponent: need at least two grid points");
  if (!(sigma > 0.0)) throw std::invalid_argument("local_exponent: sigma must be positive");
  for (std::size_t i = 1; i < k_grid.size(); ++i)
    if (k_grid[i] <= k_grid[i - 1] || k_grid[i - 1] < 1)
      throw std::invalid_argument("local_exponent: grid must be positive and strictly increasing");

  CrossoverReport r;
  r.threshold = threshold;
  r.k_grid.assign(k_grid.begin(), k_grid.end());
  int pattern = 0;
  for (int k : k_grid) {
    const SignedLog c = coefficient(k);
    const int alternating = c.sign * (k % 2 == 0 ? 1 : -1);
    if (c.sign == 0 || (pattern != 0 && alternating != pattern))
      throw std::domain_error("local_exponent: coefficient at k=" + std::to_string(k) +
                              " breaks the alternating sign pattern");
    pattern = alternating;
    r.f_values.push_back(c.log_abs - k * std::log(sigma) - log_gamma(k + 1.0));
  }
  for (std::size_t i = 0; i + 1 < r.k_grid.size(); ++i) {
    const double dlnk = std::log(static_cast<double>(r.k_grid[i + 1])) - std::log(static_cast<double>(r.k_grid[i]));
    r.beta_local.push_back((r.f_values[i + 1] - r.f_values[i]) / dlnk);
  }
  for (std::size_t i = 0; i < r.beta_local.size(); ++i)
    if (r.beta_local[i] <= threshold) {
      r.k_cross = r.k_grid[i];
      break;
    }
  return r;
}

CrossoverReport local_exponent(std::span<const BigRational> column, double sigma,
                               std::span<const int> k_grid, double threshold) {
  return local_exponent(
      [&](int k) {
        if (k < 0 || static_cast<std::size_t>(k) >= column.size())
          throw std::out_of_range("local_exponent: grid point beyond the column");
        const BigRational& q = column[static_cast<std::size_t>(k)];
        return SignedLog{sign(q), log_abs(q)};
      },
      sigma, k_grid, threshold);
}

CrossoverReport local_exponent(std::span<const ScaledValue> column, double sigma,
                               std::span<const int> k_grid, double threshold) {
  return local_exponent(
      [&](int k) {
        if (k < 0 || static_cast<std::size_t>(k) >= column.size())
          throw std::out_of_range("local_exponent: grid point beyond the column");
        const ScaledValue& v = column[static_cast<std::size_t>(k)];
        return SignedLog{v.sign(), v.log_abs()};
      },
      sigma, k_grid, threshold);
}

double CrossoverReport::mean_beta(int k_lo, int k_hi) const {
  double sum = 0.0;
  int count = 0;
  for (std::size_t i = 0; i < beta_local.size(); ++i)
    if (k_grid[i] >= k_lo && k_grid[i + 1] <= k_hi) {
      sum += beta_local[i];
      ++count;
    }
  if (count == 0) throw std::invalid_argument("mean_beta: no grid interval inside the window");
  return sum / count;
}

void CrossoverReport::write_csv(std::ostream& os) const {
  os << "k,f,beta_local\n";
  os.precision(15);
  for (std::size_t i = 0; i < k_grid.size(); ++i) {
    os << k_grid[i] << ',' << f_values[i] << ',';
    if (i < beta_local.size()) os << beta_local[i];
    os << '\n';
  }
}

}  // namespace anires
