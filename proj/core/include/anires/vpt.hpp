#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "anires/series.hpp"

/// Variational perturbation theory for the oscillator energy E = sum E_kn (g/4)^k (2 delta)^n:
/// the trial frequency Omega is introduced through omega^2 = Omega^2 + (omega^2 - Omega^2),
/// the series is reexpanded to order k and Omega is fixed by minimal sensitivity.
namespace anires::vpt {

/// Finite Laurent polynomial sum_p c_p Omega^p.
class LaurentInOmega {
 public:
  LaurentInOmega() = default;
  explicit LaurentInOmega(std::map<int, double> terms) : terms_(std::move(terms)) {}

  const std::map<int, double>& terms() const { return terms_; }
  double coefficient(int power) const;
  int min_power() const;
  int max_power() const;

  /// Requires Omega > 0.
  double operator()(double omega) const;
  LaurentInOmega derivative() const;
  /// sum |c_p| Omega^p, the natural size for residual checks.
  double magnitude(double omega) const;

  friend bool operator==(const LaurentInOmega&, const LaurentInOmega&) = default;

 private:
  std::map<int, double> terms_;
};

/// E_j(delta) = sum_n E_jn (2 delta)^n for j = 0..kmax.
std::vector<BigRational> energy_polynomials(const CoefficientTable& table, const BigRational& delta);

/// eps_l as a polynomial in (2 rho Omega): entry m holds E_{l-m}(delta) binom((1-3(l-m))/2, m).
/// std::range_error for l > kmax.
std::vector<BigRational> reexpansion_coefficients(const CoefficientTable& table, int l, const BigRational& delta);

/// W_k(Omega) = Omega sum_{l<=k} eps_l (gbar/Omega^3)^l with rho = (omega^2 - Omega^2)/(2 gbar).
/// The construction is exact in the binary values of g_over_4, delta and omega; the
/// coefficients are rounded once at the end.
LaurentInOmega w_laurent(const CoefficientTable& table, int k, double g_over_4, double delta, double omega = 1.0);

enum class CandidateKind { extremum, turning_point };

struct Candidate {
  double omega = 0.0;
  CandidateKind kind = CandidateKind::extremum;
  double w = 0.0;
};

struct VptOrderResult {
  int k = 0;
  /// Ascending in Omega.
  std::vector<Candidate> candidates;
  std::size_t chosen = 0;

  double omega() const { return candidates.at(chosen).omega; }
  double W() const { return candidates.at(chosen).w; }
  CandidateKind kind() const { return candidates.at(chosen).kind; }
};

/// Candidate set: the extrema of W, or its turning points if there is no extremum.
enum class Selection {
  /// Lowest W over the candidate set.
  smallest_w,
  /// Smallest Omega in the candidate set.
  smallest_omega,
};

struct OmegaScan {
  double lo = 1e-2;
  double hi = 1e2;
  int steps = 400;
  double tolerance = 1e-12;
};

/// Stationary points of W located by a sign-change scan and bisection.
/// std::runtime_error when neither extrema nor turning points exist inside the scan.
VptOrderResult optimize_omega(const LaurentInOmega& W, int k, Selection selection = Selection::smallest_w,
                              const OmegaScan& scan = {});

const char* to_string(CandidateKind kind);

VptOrderResult vpt_energy(const CoefficientTable& table, int k, double g_over_4, double delta,
                          Selection selection = Selection::smallest_w, double omega = 1.0);

}  // namespace anires::vpt
