#pragma once

#include <cstddef>
#include <vector>

#include "anires/series.hpp"

/// Rayleigh-Schroedinger coefficients of the ground state of
///   H = -(1/2) Laplacian + (x^2 + y^2)/2 + (g/4) [x^4 + 2(1 - delta) x^2 y^2 + y^4]
/// from the Bender-Wu difference equation for the polynomial part of the wave function.
namespace anires::bw {

/// Coefficients A_ij^{kn} of Phi_kn = sum A_ij^{kn} x^{2i} y^{2j} and the energies E_kn.
class BwState {
 public:
  int kmax() const { return kmax_; }

  /// A_ij^{kn}; zero outside the support (negative index, k < n, i or j > 2k - n).
  const BigRational& A(int i, int j, int k, int n) const;

  /// E_kn multiplying (g/4)^k (2 delta)^n.
  const CoefficientTable& energies() const { return energies_; }

  /// Number of stored A entries (all orders).
  std::size_t stored_entries() const;

 private:
  friend BwState build(int kmax);

  explicit BwState(int kmax) : kmax_(kmax), energies_(kmax) {}

  struct Block {
    int side = 0;  // entries for 0 <= i, j < side
    std::vector<BigRational> a;
  };

  Block& block(int k, int n) { return blocks_[static_cast<std::size_t>(k) * (k + 1) / 2 + n]; }
  const Block& block(int k, int n) const { return blocks_[static_cast<std::size_t>(k) * (k + 1) / 2 + n]; }

  int kmax_;
  std::vector<Block> blocks_;
  CoefficientTable energies_;
};

/// Solves the recursion for k = 0..kmax, n = 0..k. Throws std::invalid_argument for kmax < 0
/// and std::logic_error if an internal consistency check fails (x <-> y symmetry, support
/// bound, vanishing residual of the i = j = 0 equation).
BwState build(int kmax);

/// E_kn keyed so that entry (k, n) multiplies (g/4)^k (2 delta)^n.
CoefficientTable energy_series(const BwState& state);

}  // namespace anires::bw
