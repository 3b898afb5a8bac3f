#pragma once

#include "wzeta/algebra.hpp"

namespace wzeta {

// Version tag for the kernel-element definitions below. Cached reduced bases
// record it so a cache built against older map code is never reused.
inline constexpr int kKernelVersion = 1;

// Signed reversal: z_s -> (-1)^{w(s)} z_{reverse(s)}. An involution that
// preserves the stuffle product.
TruncatedSeries psi1(const TruncatedSeries& a);

// Binomial expansion: z_s -> sum over b >= 0 of prod_j C(s_j+b_j-1, b_j)
// z_{(s_1+b_1,...,s_k+b_k)}, truncated. A homomorphism for concatenation.
TruncatedSeries phi1(const TruncatedSeries& a);

// Duality substitution X -> X+Y, Y -> -Y on the binary-word expansion. An
// involution.
TruncatedSeries psi2(const TruncatedSeries& a);

// (1+y) * ((1/(1+y)) stuffled with a), where * is concatenation by (1+z_1).
TruncatedSeries phi2(const TruncatedSeries& a);

// Kernel element f_family = Phi_family - psi_family. Every truncation of the
// result is a weighted congruence holding for all large p. family is 1
// (reversal) or 2 (duality).
TruncatedSeries kernel_element(int family, const TruncatedSeries& a);

// exp of the degree-raising derivation d(x)=x^2, d(y)=xy for the
// concatenation product; the sum is finite at any truncation.
TruncatedSeries exp_derivation(const TruncatedSeries& a);

// Whether exp_derivation(a) == phi1(a) exactly. The two sides are computed by
// unrelated routes.
bool exp_derivation_matches_phi1(const TruncatedSeries& a);

}  // namespace wzeta
