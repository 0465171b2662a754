#include "anires/vpt.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace anires::vpt {

double LaurentInOmega::coefficient(int power) const {
  auto it = terms_.find(power);
  return it == terms_.end() ? 0.0 : it->second;
}

int LaurentInOmega::min_power() const { return terms_.empty() ? 0 : terms_.begin()->first; }
int LaurentInOmega::max_power() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

double LaurentInOmega::operator()(double omega) const {
  if (!(omega > 0.0)) throw std::domain_error("LaurentInOmega: requires Omega > 0");
  // Horner over the contiguous power range, then shift by Omega^{min}.
  if (terms_.empty()) return 0.0;
  long double acc = 0.0L;
  const int lo = min_power();
  for (int p = max_power(); p >= lo; --p) acc = acc * omega + coefficient(p);
  return static_cast<double>(acc * std::pow(static_cast<long double>(omega), lo));
}

LaurentInOmega LaurentInOmega::derivative() const {
  std::map<int, double> d;
  for (const auto& [p, c] : terms_)
    if (p != 0 && c != 0.0) d[p - 1] = p * c;
  return LaurentInOmega(std::move(d));
}

double LaurentInOmega::magnitude(double omega) const {
  double s = 0.0;
  for (const auto& [p, c] : terms_) s += std::fabs(c) * std::pow(omega, p);
  return s;
}

std::vector<BigRational> energy_polynomials(const CoefficientTable& table, const BigRational& delta) {
  const BigRational two_delta = 2 * delta;
  std::vector<BigRational> e;
  for (int j = 0; j <= table.kmax(); ++j) {
    BigRational v(0);
    for (int n = j; n >= 0; --n) v = v * two_delta + table.at(j, n);
    e.push_back(v);
  }
  return e;
}

namespace {

std::vector<BigRational> reexpansion_from(const std::vector<BigRational>& e, int l) {
  std::vector<BigRational> eps(static_cast<std::size_t>(l) + 1);
  for (int m = 0; m <= l; ++m) {
    const int j = l - m;
    eps[static_cast<std::size_t>(m)] = e[static_cast<std::size_t>(j)] * generalized_binomial(make_rational(1 - 3 * j, 2), m);
  }
  return eps;
}

}  // namespace

std::vector<BigRational> reexpansion_coefficients(const CoefficientTable& table, int l, const BigRational& delta) {
  if (l < 0 || l > table.kmax())
    throw std::range_error("reexpansion_coefficients: l=" + std::to_string(l) + " outside table range");
  return reexpansion_from(energy_polynomials(table, delta), l);
}

LaurentInOmega w_laurent(const CoefficientTable& table, int k, double g_over_4, double delta, double omega) {
  if (k < 0 || k > table.kmax())
    throw std::range_error("w_laurent: order " + std::to_string(k) + " outside table range");
  if (!(g_over_4 > 0.0)) throw std::domain_error("w_laurent: requires g/4 > 0");
  if (!(omega > 0.0)) throw std::domain_error("w_laurent: requires omega > 0");
  const BigRational g(g_over_4);
  const BigRational w2 = BigRational(omega) * BigRational(omega);
  const std::vector<BigRational> e = energy_polynomials(table, BigRational(delta));

  // Term (j, m) with l = j + m: E_j binom((1-3j)/2, m) gbar^j Omega^{1-3j-2m} (omega^2 - Omega^2)^m.
  std::map<int, BigRational> exact;
  BigRational gj(1);
  for (int j = 0; j <= k; ++j) {
    if (j > 0) gj *= g;
    BigRational w2m(1);
    for (int m = 0; j + m <= k; ++m) {
      if (m > 0) w2m *= w2;
      const BigRational front = e[static_cast<std::size_t>(j)] * generalized_binomial(make_rational(1 - 3 * j, 2), m) * gj;
      if (front == 0) continue;
      // (omega^2 - Omega^2)^m = sum_i binom(m, i) omega^{2(m-i)} (-Omega^2)^i
      BigRational binom(1);
      BigRational w2_rest = pow(w2, m);
      const BigRational inv_w2 = 1 / w2;
      for (int i = 0; i <= m; ++i) {
        const int power = 1 - 3 * j - 2 * m + 2 * i;
        BigRational c = front * binom * w2_rest;
        if (i % 2 == 1) c = -c;
        exact[power] += c;
        binom = binom * (m - i) / (i + 1);
        w2_rest *= inv_w2;
      }
    }
  }
  std::map<int, double> terms;
  for (const auto& [p, c] : exact)
    if (c != 0) terms[p] = to_double(c);
  return LaurentInOmega(std::move(terms));
}

namespace {

std::vector<double> sign_change_roots(const LaurentInOmega& f, const OmegaScan& scan) {
  std::vector<double> roots;
  const double ratio = std::pow(scan.hi / scan.lo, 1.0 / scan.steps);
  double a = scan.lo;
  double fa = f(a);
  for (int s = 1; s <= scan.steps; ++s) {
    const double b = s == scan.steps ? scan.hi : scan.lo * std::pow(ratio, s);
    const double fb = f(b);
    if (fa == 0.0) {
      roots.push_back(a);
    } else if ((fa < 0.0) != (fb < 0.0) && fb != 0.0) {
      double lo = a, hi = b, flo = fa;
      while (hi - lo > scan.tolerance * std::max(1.0, lo)) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    a = b;
    fa = fb;
  }
  return roots;
}

}  // namespace

const char* to_string(CandidateKind kind) {
  return kind == CandidateKind::extremum ? "extremum" : "turning_point";
}

VptOrderResult optimize_omega(const LaurentInOmega& W, int k, Selection selection, const OmegaScan& scan) {
  if (!(scan.lo > 0.0) || !(scan.hi > scan.lo) || scan.steps < 1)
    throw std::invalid_argument("optimize_omega: bad scan bracket");
  const LaurentInOmega d1 = W.derivative();
  VptOrderResult r;
  r.k = k;
  CandidateKind kind = CandidateKind::extremum;
  std::vector<double> roots = sign_change_roots(d1, scan);
  if (roots.empty()) {
    kind = CandidateKind::turning_point;
    roots = sign_change_roots(d1.derivative(), scan);
  }
  if (roots.empty())
    throw std::runtime_error("optimize_omega: no extremum or turning point of W_" + std::to_string(k) +
                             " in [" + std::to_string(scan.lo) + ", " + std::to_string(scan.hi) +
                             "]; extend the scan bracket");
  const double ratio = std::pow(scan.hi / scan.lo, 1.0 / scan.steps);
  for (double x : roots) {
    if (x < scan.lo * ratio || x > scan.hi / ratio)
      throw std::runtime_error("optimize_omega: candidate Omega=" + std::to_string(x) +
                               " sits at the edge of the scan bracket; extend it");
    r.candidates.push_back(Candidate{x, kind, W(x)});
  }
  if (selection == Selection::smallest_w) {
    auto it = std::min_element(r.candidates.begin(), r.candidates.end(),
                               [](const Candidate& a, const Candidate& b) { return a.w < b.w; });
    r.chosen = static_cast<std::size_t>(it - r.candidates.begin());
  }
  return r;
}

VptOrderResult vpt_energy(const CoefficientTable& table, int k, double g_over_4, double delta, Selection selection,
                          double omega) {
  return optimize_omega(w_laurent(table, k, g_over_4, delta, omega), k, selection);
}

}  // namespace anires::vpt
