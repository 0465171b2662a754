#include "anires/borel.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace anires {

namespace {

constexpr double kSmallCoupling = 1e-3;

double small_coupling_series(const BorelBasisSpec& s, double g) {
  double sum = 0.0;
  double previous = std::numeric_limits<double>::infinity();
  for (int k = s.p; k < s.p + 400; ++k) {
    const double term = basis_series_coefficient(s.p, k, s.b0, s.alpha, s.sigma) * std::pow(g, k);
    const double mag = std::fabs(term);
    if (mag > previous) break;  // asymptotic series: stop at the smallest term
    sum += term;
    if (mag <= 1e-17 * std::fabs(sum)) break;
    previous = mag;
  }
  return sum;
}

double w_form(const BorelBasisSpec& s, double g, const QuadratureSpec& quad) {
  const double sg = s.sigma * g;
  const double edge = 2.0 * s.b0 + 2.0 * s.alpha + 3.0;
  const double log_front = (s.b0 + 1.0) * std::log(4.0 / sg) - log_gamma(s.b0 + 1.0);
  // w = c x / (1 - x + c x) puts the image of the typical t = b0 + 1 at x = 1/2.
  const double s_typ = sg * (s.b0 + 1.0);
  const double c = s_typ / (2.0 + 2.0 * std::sqrt(1.0 + s_typ));
  const double log_c = std::log(c);
  return integrate_unit(
             UnitIntegrand([=](double x, double one_minus_x) {
               if (x <= 0.0 || one_minus_x <= 0.0) return 0.0;
               const double d = one_minus_x + c * x;
               const double w = c * x / d;
               const double one_minus_w = one_minus_x / d;
               const double log_d = std::log(d);
               const double log_w = log_c + std::log(x) - log_d;
               const double log_one_minus_w = std::log(one_minus_x) - log_d;
               const double log_f = log_front + std::log1p(w) + (s.b0 + s.p) * log_w - edge * log_one_minus_w -
                                    4.0 * w / (one_minus_w * one_minus_w * sg) + log_c - 2.0 * log_d;
               return std::exp(log_f);
             }),
             quad)
      .value;
}

double t_form(const BorelBasisSpec& s, double g, const QuadratureSpec& quad) {
  const double lg = log_gamma(s.b0 + 1.0);
  return integrate_semiline(
             [=](double t) {
               if (t <= 0.0) return 0.0;
               const double root = std::sqrt(1.0 + s.sigma * g * t);
               // w = s/(1+root)^2, 1 - w = 2/(1+root)
               const double log_w = std::log(s.sigma * g * t) - 2.0 * std::log1p(root);
               const double log_f = -t + s.b0 * std::log(t) - lg + 2.0 * s.alpha * std::log(0.5 * (1.0 + root)) +
                                    (s.p > 0 ? s.p * log_w : 0.0);
               return std::exp(log_f);
             },
             quad)
      .value;
}

}  // namespace

void BorelBasisSpec::validate() const {
  if (p < 0) throw std::invalid_argument("BorelBasisSpec: p must be >= 0");
  if (!(sigma > 0.0)) throw std::invalid_argument("BorelBasisSpec: sigma must be positive");
  if (!(b0 > -1.0)) throw std::invalid_argument("BorelBasisSpec: b0 must exceed -1");
  if (!std::isfinite(2.0 * b0 + 2.0 * alpha + 3.0)) throw std::invalid_argument("BorelBasisSpec: non-finite exponent");
}

double basis_integral(const BorelBasisSpec& spec, double g, const QuadratureSpec& quad, BasisMethod method) {
  spec.validate();
  if (!(g > 0.0)) throw std::domain_error("basis_integral: requires g > 0");
  switch (method) {
    case BasisMethod::automatic:
      return spec.sigma * g < kSmallCoupling ? small_coupling_series(spec, g) : w_form(spec, g, quad);
    case BasisMethod::w_form:
      return w_form(spec, g, quad);
    case BasisMethod::t_form:
      return t_form(spec, g, quad);
    case BasisMethod::small_coupling_series:
      return small_coupling_series(spec, g);
  }
  throw std::logic_error("basis_integral: unknown method");
}

BigRational basis_series_coefficient(int p, int k, const BigRational& b0, const BigRational& alpha,
                                     const BigRational& sigma) {
  if (p < 0 || k < 0) throw std::invalid_argument("basis_series_coefficient: negative index");
  if (k < p) return BigRational(0);
  const int j = k - p;
  const BigRational a = p - alpha;
  BigRational c = pow(sigma, k) * pochhammer(b0 + 1, k) / pow(BigRational(4), p);
  c *= pochhammer(a, j) * pochhammer(a + make_rational(1, 2), j);
  c /= pochhammer(2 * a + 1, j) * factorial(j);
  return j % 2 == 0 ? c : BigRational(-c);
}

double basis_series_coefficient(int p, int k, double b0, double alpha, double sigma) {
  if (p < 0 || k < 0) throw std::invalid_argument("basis_series_coefficient: negative index");
  if (k < p) return 0.0;
  const int j = k - p;
  const double a = p - alpha;
  double c = std::pow(4.0, -p);
  for (int i = 0; i < k; ++i) c *= sigma * (b0 + 1.0 + i);
  for (int i = 0; i < j; ++i) c *= -(a + i) * (a + 0.5 + i) / ((2.0 * a + 1.0 + i) * (i + 1.0));
  return c;
}

std::vector<BigRational> borel_coefficients(std::span<const BigRational> column, const BigRational& b0,
                                            const BigRational& alpha, const BigRational& sigma, int N) {
  if (N < 0 || column.size() < static_cast<std::size_t>(N) + 1)
    throw std::invalid_argument("borel_coefficients: column shorter than N+1");
  // Weights c_k (4/sigma)^k / (b0+1)_k, then the binomial triangle.
  std::vector<BigRational> weighted(static_cast<std::size_t>(N) + 1);
  BigRational scale(1);
  const BigRational four_over_sigma = BigRational(4) / sigma;
  for (int k = 0; k <= N; ++k) {
    if (k > 0) scale *= four_over_sigma / (b0 + k);
    weighted[static_cast<std::size_t>(k)] = column[static_cast<std::size_t>(k)] * scale;
  }
  std::vector<BigRational> a(static_cast<std::size_t>(N) + 1);
  for (int p = 0; p <= N; ++p) {
    BigRational sum(0);
    for (int k = 0; k <= p; ++k) {
      const BigRational& c = weighted[static_cast<std::size_t>(k)];
      if (c == 0) continue;
      sum += c * generalized_binomial(BigRational(p + k - 1) - 2 * alpha, p - k);
    }
    a[static_cast<std::size_t>(p)] = sum;
  }
  return a;
}

std::vector<double> borel_coefficients(std::span<const double> column, double b0, double alpha, double sigma,
                                       int N) {
  if (N < 0 || column.size() < static_cast<std::size_t>(N) + 1)
    throw std::invalid_argument("borel_coefficients: column shorter than N+1");
  std::vector<double> weighted(static_cast<std::size_t>(N) + 1);
  double scale = 1.0;
  for (int k = 0; k <= N; ++k) {
    if (k > 0) scale *= 4.0 / sigma / (b0 + k);
    weighted[static_cast<std::size_t>(k)] = column[static_cast<std::size_t>(k)] * scale;
  }
  std::vector<double> a(static_cast<std::size_t>(N) + 1, 0.0);
  for (int p = 0; p <= N; ++p)
    for (int k = 0; k <= p; ++k)
      a[static_cast<std::size_t>(p)] +=
          weighted[static_cast<std::size_t>(k)] * anires::generalized_binomial(p + k - 1 - 2.0 * alpha, p - k);
  return a;
}

// ---------------------------------------------------------------------------
// ResummedApproximant

ResummedApproximant ResummedApproximant::build(std::shared_ptr<const CoefficientTable> table,
                                               LargeOrderParams params, int order) {
  if (!table) throw std::invalid_argument("ResummedApproximant: null table");
  if (order < 0 || order > table->kmax())
    throw std::range_error("ResummedApproximant: order " + std::to_string(order) + " exceeds table kmax " +
                           std::to_string(table->kmax()));
  params.validate();
  ResummedApproximant r;
  r.table_ = std::move(table);
  r.params_ = std::move(params);
  r.order_ = order;
  r.cache_ = std::make_shared<Cache>();
  for (int n = 0; n <= order; ++n) {
    std::vector<BigRational> column = r.table_->column(n);
    column.resize(static_cast<std::size_t>(order) + 1);
    r.a_.push_back(borel_coefficients(column, r.params_.b0_of_n(n), r.params_.alpha, r.params_.sigma, order));
  }
  return r;
}

const BigRational& ResummedApproximant::a(int p, int n) const {
  static const BigRational kZero(0);
  if (n < 0 || p < n || p > order_) return kZero;
  return a_[static_cast<std::size_t>(n)][static_cast<std::size_t>(p)];
}

BorelBasisSpec ResummedApproximant::basis(int p, int n) const {
  return BorelBasisSpec{p, to_double(params_.b0_of_n(n)), to_double(params_.alpha), to_double(params_.sigma)};
}

double ResummedApproximant::basis_value(int p, int n, double g, const QuadratureSpec& quad) const {
  const auto key = std::make_tuple(p, n, g);
  {
    std::lock_guard lock(cache_->mutex);
    if (auto it = cache_->values.find(key); it != cache_->values.end()) return it->second;
  }
  const double v = basis_integral(basis(p, n), g, quad);
  std::lock_guard lock(cache_->mutex);
  cache_->values.emplace(key, v);
  return v;
}

std::string ResummedApproximant::to_json() const {
  nlohmann::ordered_json j;
  j["N"] = order_;
  j["sigma"] = to_fraction_string(params_.sigma);
  j["alpha"] = to_fraction_string(params_.alpha);
  j["b0_slope"] = to_fraction_string(params_.b0_of_n.slope);
  j["b0_offset"] = to_fraction_string(params_.b0_of_n.offset);
  j["normalization"] = "I_p carries 1/(4^p Gamma(b0+1))";
  auto entries = nlohmann::ordered_json::array();
  for (int n = 0; n <= order_; ++n)
    for (int p = n; p <= order_; ++p) {
      const BigRational& q = a(p, n);
      entries.push_back({{"p", p}, {"n", n}, {"numerator", q.get_num().get_str()},
                         {"denominator", q.get_den().get_str()}});
    }
  j["a"] = std::move(entries);
  return j.dump(2);
}

double resum(const ResummedApproximant& approx, double g, double y, const QuadratureSpec& quad) {
  const std::array<double, 1> ys{y};
  return resum_grid(approx, g, ys, quad).front();
}

std::vector<double> resum_grid(const ResummedApproximant& approx, double g, std::span<const double> ys,
                               const QuadratureSpec& quad) {
  if (!(g > 0.0)) throw std::domain_error("resum: requires g > 0");
  const int N = approx.order();
  std::vector<double> column_sums(static_cast<std::size_t>(N) + 1, 0.0);
  for (int n = 0; n <= N; ++n)
    for (int p = n; p <= N; ++p) {
      const BigRational& a = approx.a(p, n);
      if (a == 0) continue;
      column_sums[static_cast<std::size_t>(n)] += to_double(a) * approx.basis_value(p, n, g, quad);
    }
  std::vector<double> out;
  out.reserve(ys.size());
  for (double y : ys) {
    double v = 0.0;
    for (int n = N; n >= 0; --n) v = v * y + column_sums[static_cast<std::size_t>(n)];
    out.push_back(v);
  }
  return out;
}

BigRational reexpansion_check(const ResummedApproximant& approx) {
  const int N = approx.order();
  const LargeOrderParams& lp = approx.params();
  BigRational worst(0);
  for (int n = 0; n <= N; ++n) {
    const BigRational b0 = lp.b0_of_n(n);
    for (int k = 0; k <= N; ++k) {
      BigRational z(0);
      for (int p = n; p <= k; ++p) {
        const BigRational& a = approx.a(p, n);
        if (a != 0) z += a * basis_series_coefficient(p, k, b0, lp.alpha, lp.sigma);
      }
      const BigRational& target = approx.input().at(k, n);
      BigRational residual = abs(z - target);
      if (target != 0) residual /= abs(target);
      if (residual > worst) worst = residual;
    }
  }
  return worst;
}

double reexpansion_check_float(const ResummedApproximant& approx) {
  const int N = approx.order();
  const LargeOrderParams& lp = approx.params();
  const double alpha = to_double(lp.alpha);
  const double sigma = to_double(lp.sigma);
  double worst = 0.0;
  for (int n = 0; n <= N; ++n) {
    const double b0 = to_double(lp.b0_of_n(n));
    std::vector<double> column(static_cast<std::size_t>(N) + 1, 0.0);
    for (int k = n; k <= N; ++k) column[static_cast<std::size_t>(k)] = to_double(approx.input().at(k, n));
    const std::vector<double> a = borel_coefficients(column, b0, alpha, sigma, N);
    for (int k = n; k <= N; ++k) {
      double z = 0.0;
      for (int p = n; p <= k; ++p) z += a[static_cast<std::size_t>(p)] * basis_series_coefficient(p, k, b0, alpha, sigma);
      const double target = column[static_cast<std::size_t>(k)];
      const double residual = target != 0.0 ? std::fabs(z - target) / std::fabs(target) : std::fabs(z);
      worst = std::max(worst, residual);
    }
  }
  return worst;
}

}  // namespace anires
