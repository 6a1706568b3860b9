#include "hfcone/oracles.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

#include "hfcone/cone.hpp"
#include "hfcone/gradings.hpp"
#include "hfcone/knotcx.hpp"

namespace hfcone::oracles {

using f2::BitMatrix;
using f2::SparseVec;

namespace {

long long floor_div(long long a, long long b) {
  long long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

void split(long long s, int n, long long& sigma, long long& k) {
  if (n <= 0) throw std::invalid_argument("expects n > 0");
  sigma = residue(s, n);
  k = floor_div(s - sigma, n);
}

// Columns of the cone boundary restricted to the A blocks.
std::vector<SparseVec> d_columns(const SurgeryCone& cone) {
  std::vector<SparseVec> cols;
  for (const auto& b : cone.blocks)
    if (b.kind == 'A')
      for (int k = 0; k < b.size; ++k) cols.push_back(cone.complex.boundary.columns[b.offset + k]);
  return cols;
}

}  // namespace

long long epsilon(long long s, int n) {
  long long sigma = 0;
  long long k = 0;
  split(s, n, sigma, k);
  if (k >= 0) return k * sigma + k * (k - 1) * n / 2;
  return (k + 1) * sigma + k * (k + 1) * n / 2;
}

long long cokernel_exponent(long long t, int n) {
  long long sigma = 0;
  long long k = 0;
  split(t, n, sigma, k);
  return (k + 1) * sigma + n * k * (k + 1) / 2;
}

long long mirrored_epsilon(long long t, int n) { return epsilon(-t, n); }

std::vector<SparseVec> unknot_kernel_basis(int n, int i, int delta, int width) {
  const SurgeryCone cone = build_cone(builtin_unknot(), n, i, delta, width);
  std::vector<SparseVec> out;
  for (int m = 0; m <= delta; ++m) {
    std::vector<int> v;
    for (const auto& b : cone.blocks) {
      if (b.kind != 'A') continue;
      const long long e = epsilon(b.s, n);
      // Block index 0 is the bottom of the truncated tower A_s.
      if (m >= e) v.push_back(b.offset + static_cast<int>(m - e));
    }
    out.push_back(f2::normalize(std::move(v)));
  }
  return out;
}

bool unknot_kernel_check(int n, int i, int delta, int width) {
  const SurgeryCone cone = build_cone(builtin_unknot(), n, i, delta, width);
  const auto basis = unknot_kernel_basis(n, i, delta, width);
  for (const auto& v : basis)
    if (!cone.complex.boundary.apply(v).empty()) return false;
  const auto cols = d_columns(cone);
  const int kernel_dim = static_cast<int>(cols.size()) - f2::rank_of(cols);
  return f2::rank_of(basis) == kernel_dim && kernel_dim == delta + 1;
}

bool unknot_cokernel_check(int n, int i, int delta, int width, bool perturb, CokernelVariant variant) {
  const SurgeryCone cone = build_cone(builtin_unknot(), -n, i, delta, width);
  const int dim = cone.complex.dim();
  // pi as a (delta+1) x dim matrix, columns on B blocks only.
  BitMatrix pi(delta + 1, dim);
  int first_visible = -1;
  for (const auto& b : cone.blocks) {
    if (b.kind != 'B') continue;
    const long long e =
        variant == CokernelVariant::corrected ? cokernel_exponent(b.s, n) : mirrored_epsilon(b.s, n);
    for (int m = 0; m < b.size; ++m) {
      if (m < e) continue;
      pi.set(static_cast<int>(m - e), b.offset + m, true);
      if (first_visible < 0) first_visible = b.offset + m;
    }
  }
  auto cols = d_columns(cone);
  if (perturb) {
    if (cols.empty() || first_visible < 0) return false;
    f2::add_into(cols.front(), {first_visible});
  }
  const BitMatrix d = BitMatrix::from_columns(dim, cols);
  return (pi * d).is_zero() && pi.rank() == delta + 1;
}

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

ExpectedModule x_module(int genus, int d, const Rational& shift) {
  if (d < 0) throw std::invalid_argument("x_module needs d >= 0");
  ExpectedModule out;
  out.source = "X(" + std::to_string(genus) + "," + std::to_string(d) + ")";
  for (int i = 0; i <= d; ++i) {
    const long long count = binomial(2 * genus, i);
    for (long long k = 0; k < count; ++k) out.reduced.pieces.push_back({shift - (d - i), d - i + 1});
  }
  out.reduced.canonicalize();
  return out;
}

std::vector<long long> symmetric_product_betti(int genus, int d) {
  // Coefficient of t^d in (1 + x t)^{2g} / ((1 - t)(1 - x^2 t)), as a polynomial in x.
  std::vector<long long> out(static_cast<std::size_t>(2 * d + 1), 0);
  for (int a = 0; a <= std::min(d, 2 * genus); ++a)      // from (1 + x t)^{2g}
    for (int c = 0; a + c <= d; ++c)                     // from 1 / (1 - x^2 t)
      out[static_cast<std::size_t>(a + 2 * c)] += binomial(2 * genus, a);  // 1 / (1 - t) absorbs the rest
  return out;
}

ExpectedModule circle_bundle_euler_one(int genus) {
  ExpectedModule out;
  out.source = "circle bundle, Euler number 1";
  for (int s = 1; s <= genus - 1; ++s) {
    const ExpectedModule x = x_module(genus, genus - 1 - s, Rational(s * s - 1));
    for (int copy = 0; copy < 2; ++copy)
      out.reduced.pieces.insert(out.reduced.pieces.end(), x.reduced.pieces.begin(), x.reduced.pieces.end());
  }
  out.reduced.canonicalize();
  return out;
}

Rational circle_bundle_shift(int n, int i, int s) {
  Rational c = d_lens(n, residue(i, n)) - 1;
  if (s >= 0) {
    c -= s;
    for (int t = 0; t <= s; ++t)
      if (residue(t, n) == residue(i, n)) c += 2 * t;
  } else {
    c += s;
    for (int t = s; t <= 0; ++t)
      if (residue(t, n) == residue(i, n)) c -= 2 * t;
  }
  return c;
}

ExpectedModule expected_circle_bundle(int genus, int n, int i) {
  if (n <= 0) throw std::invalid_argument("expected_circle_bundle needs n > 0");
  const int r = residue(i, n);
  // Representative of minimal absolute value, ties toward the positive one.
  int j = r;
  if (r - n < 0 && std::abs(r - n) < std::abs(r)) j = r - n;
  ExpectedModule out;
  out.source = "circle bundle, Euler number " + std::to_string(n);
  out.tie = 2 * r == n;
  for (int s = -(genus - 1); s <= genus - 1; ++s) {
    if (residue(s, n) != r || s == j) continue;
    const ExpectedModule x = x_module(genus, genus - 1 - std::abs(s), circle_bundle_shift(n, r, s));
    out.reduced.pieces.insert(out.reduced.pieces.end(), x.reduced.pieces.begin(), x.reduced.pieces.end());
  }
  out.reduced.canonicalize();
  return out;
}

}  // namespace hfcone::oracles
