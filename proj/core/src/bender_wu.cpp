#include "anires/bender_wu.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace anires::bw {

namespace {

const BigRational& zero() {
  static const BigRational z(0);
  return z;
}

std::string where(int i, int j, int k, int n) {
  return "(i,j,k,n)=(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + "," +
         std::to_string(n) + ")";
}

}  // namespace

const BigRational& BwState::A(int i, int j, int k, int n) const {
  if (i < 0 || j < 0 || n < 0 || k < n || k > kmax_) return zero();
  const Block& b = block(k, n);
  if (i >= b.side || j >= b.side) return zero();
  return b.a[static_cast<std::size_t>(i) * b.side + j];
}

std::size_t BwState::stored_entries() const {
  std::size_t total = 0;
  for (const Block& b : blocks_) total += b.a.size();
  return total;
}

BwState build(int kmax) {
  if (kmax < 0) throw std::invalid_argument("bw::build: kmax must be >= 0");
  BwState s(kmax);
  s.blocks_.resize(static_cast<std::size_t>(kmax + 1) * (kmax + 2) / 2);

  // e(l, m) = A_10^{lm} + A_01^{lm}
  std::vector<BigRational> e(s.blocks_.size());
  auto e_at = [&](int l, int m) -> const BigRational& { return e[static_cast<std::size_t>(l) * (l + 1) / 2 + m]; };

  for (int k = 0; k <= kmax; ++k) {
    for (int n = 0; n <= k; ++n) {
      // Phi_kn has total degree 4k, so i + j <= 2k; the support bound i, j <= 2k - n is
      // checked afterwards rather than imposed.
      BwState::Block& blk = s.block(k, n);
      const int deg = 2 * k;
      blk.side = deg + 1;
      blk.a.assign(static_cast<std::size_t>(blk.side) * blk.side, BigRational(0));
      auto here = [&](int i, int j) -> BigRational& { return blk.a[static_cast<std::size_t>(i) * blk.side + j]; };
      auto cur = [&](int i, int j) -> const BigRational& {
        return (i < blk.side && j < blk.side) ? here(i, j) : zero();
      };

      if (k == 0 && n == 0) here(0, 0) = 1;

      for (int total = deg; total >= 1; --total) {
        for (int i = total; i >= 0; --i) {
          const int j = total - i;
          BigRational rhs = BigRational((2 * i + 1) * (i + 1)) * cur(i + 1, j) +
                            BigRational((2 * j + 1) * (j + 1)) * cur(i, j + 1);
          rhs += s.A(i - 2, j, k - 1, n) + s.A(i, j - 2, k - 1, n) + 2 * s.A(i - 1, j - 1, k - 1, n) -
                 s.A(i - 1, j - 1, k - 1, n - 1);
          for (int m = 0; m <= n; ++m)
            for (int l = std::max(m, 1); l <= k; ++l) {
              const BigRational& a = s.A(i, j, k - l, n - m);
              if (a == 0) continue;
              const BigRational& el = e_at(l, m);
              if (el != 0) rhs -= el * a;
            }
          here(i, j) = rhs / (2 * total);
        }
      }

      if (cur(1, 0) != cur(0, 1))
        throw std::logic_error("bw::build: A_10 != A_01 at " + where(1, 0, k, n));

      const int bound = 2 * k - n;
      for (int i = 0; i < blk.side; ++i)
        for (int j = 0; j < blk.side; ++j)
          if ((i > bound || j > bound) && here(i, j) != 0)
            throw std::logic_error("bw::build: nonzero entry outside support at " + where(i, j, k, n));

      e[static_cast<std::size_t>(k) * (k + 1) / 2 + n] = cur(1, 0) + cur(0, 1);

      // The i = j = 0 equation has a vanishing left side; its right side must vanish too.
      BigRational residual = cur(1, 0) + cur(0, 1);
      for (int m = 0; m <= n; ++m)
        for (int l = std::max(m, 1); l <= k; ++l) residual -= e_at(l, m) * s.A(0, 0, k - l, n - m);
      if (residual != 0) throw std::logic_error("bw::build: nonzero i=j=0 residual at " + where(0, 0, k, n));

      BigRational energy = k == 0 && n == 0 ? BigRational(1) : BigRational(e_at(k, n));
      if (k > 0 && k % 2 == 0) energy = -energy;
      s.energies_.set(k, n, energy);
    }
  }
  return s;
}

CoefficientTable energy_series(const BwState& state) { return state.energies(); }

}  // namespace anires::bw
