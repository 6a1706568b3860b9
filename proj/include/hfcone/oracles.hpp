#pragma once

#include <string>
#include <vector>

#include "hfcone/f2.hpp"
#include "hfcone/homalg.hpp"

// Closed-form answers used to cross-check the cone computations.
namespace hfcone::oracles {

struct ExpectedModule {
  std::vector<Rational> towers;
  GradedModule reduced;
  std::string source;
  bool tie = false;  // set when the minimal representative j was ambiguous
};

// Exponent of the s-component of the unknot kernel injection (n > 0).
long long epsilon(long long s, int n);

// Exponent of the unknot cokernel projection on B_t for surgery -n (n > 0):
// (k+1) sigma + n k(k+1)/2 with t = sigma + k n.
long long cokernel_exponent(long long t, int n);

// The mirrored kernel exponent epsilon(-t, n). It agrees with
// cokernel_exponent only for t <= 0 and is kept as a negative control.
long long mirrored_epsilon(long long t, int n);

// Image of the truncated tower under the kernel injection, in the basis of
// build_cone(builtin_unknot(), n, i, delta, width); one vector per U-power.
std::vector<f2::SparseVec> unknot_kernel_basis(int n, int i, int delta, int width);

// span(kernel basis) == ker D exactly (both inclusions by rank).
bool unknot_kernel_check(int n, int i, int delta, int width);

enum class CokernelVariant { corrected, mirrored };

// pi o D = 0 and pi onto F2[U]/U^{delta+1} for surgery -n on the unknot.
// perturb flips one entry of D first (must then fail).
bool unknot_cokernel_check(int n, int i, int delta, int width, bool perturb = false,
                           CokernelVariant variant = CokernelVariant::corrected);

long long binomial(int n, int k);

// X(g, d) shifted by `shift`: binom(2g, i) pieces of length d-i+1 with bottom
// shift - (d-i), for i = 0..d.
ExpectedModule x_module(int genus, int d, const Rational& shift);

// Betti numbers of Sym^d of a closed genus-g surface from Macdonald's
// generating function, indexed by degree 0..2d.
std::vector<long long> symmetric_product_betti(int genus, int d);

// Reduced HF+ of the circle bundle of Euler number 1 over a genus-g surface.
ExpectedModule circle_bundle_euler_one(int genus);

// Reduced HF+ of the circle bundle with Euler number n > 0, class i.
ExpectedModule expected_circle_bundle(int genus, int n, int i);

// The shift c(i, s) for Euler number n.
Rational circle_bundle_shift(int n, int i, int s);

}  // namespace hfcone::oracles
