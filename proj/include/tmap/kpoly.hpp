// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <tmap/field.hpp>

#include <vector>

namespace tmap
{
/// Univariate polynomial over K, lowest coefficient first, no trailing zeros.
using KPoly = std::vector<Fe>;

KPoly kp_trim(KPoly a);
/// Degree; -1 for the zero polynomial.
long kp_deg(const KPoly& a);
inline bool kp_is_zero(const KPoly& a) { return a.empty(); }
KPoly kp_const(const Fe& c);
KPoly kp_x(const ExtensionField& K);
const Fe& kp_lc(const KPoly& a);

KPoly kp_add(const ExtensionField& K, const KPoly& a, const KPoly& b);
KPoly kp_sub(const ExtensionField& K, const KPoly& a, const KPoly& b);
KPoly kp_neg(const ExtensionField& K, const KPoly& a);
KPoly kp_scale(const ExtensionField& K, const KPoly& a, const Fe& c);
KPoly kp_mul(const ExtensionField& K, const KPoly& a, const KPoly& b);
void kp_divmod(const ExtensionField& K, const KPoly& a, const KPoly& b, KPoly& q, KPoly& r);
KPoly kp_div(const ExtensionField& K, const KPoly& a, const KPoly& b);
KPoly kp_mod(const ExtensionField& K, const KPoly& a, const KPoly& b);
KPoly kp_monic(const ExtensionField& K, const KPoly& a);
KPoly kp_derivative(const ExtensionField& K, const KPoly& a);
Fe kp_eval(const ExtensionField& K, const KPoly& a, const Fe& x);
/// Applies sigma^j to every coefficient.
KPoly kp_frobenius(const ExtensionField& K, const KPoly& a, long j);

/// Monic gcd (zero if both inputs are zero).
KPoly kp_gcd(const ExtensionField& K, KPoly a, KPoly b);

struct XgcdResult
{
    KPoly g, s, t;  // s a + t b = g, g monic
};
XgcdResult kp_xgcd(const ExtensionField& K, const KPoly& a, const KPoly& b);

KPoly kp_powmod(const ExtensionField& K, KPoly base, uint64_t e, const KPoly& m);

/// Res(a, b); for monic a this is the product of b over the roots of a.
Fe kp_resultant(const ExtensionField& K, const KPoly& a, const KPoly& b);

bool kp_is_squarefree(const ExtensionField& K, const KPoly& a);
/// Distinct roots in K, sorted by index. Odd characteristic only.
std::vector<Fe> kp_roots(const ExtensionField& K, const KPoly& a, uint64_t seed = 1);
}  // namespace tmap
