// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <tmap/descent.hpp>
#include <tmap/jacobian.hpp>

#include <optional>
#include <utility>
#include <vector>

namespace tmap
{
/// f = prod h_k^{e_k} with f ~ f_inf * y^r * x^s at infinity.
struct MillerFunction
{
    std::vector<std::pair<FunctionTrace, uint64_t>> factors;
    Fe f_inf;
    long r = 0, s = 0;
};

/// (f) = ell * D up to the part at infinity.
MillerFunction miller_build(const ExtensionField& K, const Curve& C, const Divisor& D, uint32_t ell);
Fe miller_eval(const ExtensionField& K, const Curve& C, const MillerFunction& F, const Divisor& D);

/// Weil-reciprocity pairing; throws DegenerateSupport on support collisions.
Fe weil_pairing(const ExtensionField& K, const Curve& C, const Divisor& D1, const Divisor& D2, uint32_t ell);
/// As weil_pairing, but resolves support collisions by shifting one argument by a
/// multiple of the other, which leaves the value unchanged.
Fe weil_pairing_retry(const ExtensionField& K, const Curve& C, const Divisor& D1, const Divisor& D2,
                      uint32_t ell, unsigned* retries = nullptr);

/// Smallest k in [0, ell) with base^k = v.
std::optional<uint32_t> mu_dlog(const ExtensionField& K, const Fe& base, const Fe& v, uint32_t ell);

/// Which private basis a descent point is expressed in.
enum class BasisTag : int
{
    primary = 0,    // u: right slot of the extended pairing
    secondary = 1,  // u': left slot
};

/// A point of the descended jacobian over K. Mumford pairs are laid out as
/// 2g+1 slots (a_0..a_g, b_0..b_{g-1}) with a padded monic; slot s occupies
/// coords[s*d .. s*d + d).
struct DescentPoint
{
    std::vector<Fe> coords;
    BasisTag tag = BasisTag::primary;

    bool operator==(const DescentPoint&) const = default;
};

std::vector<Fe> divisor_slots(const ExtensionField& K, unsigned g, const Divisor& D);
/// Inverse of divisor_slots; throws PreconditionError on malformed slot values.
Divisor divisor_from_slots(const ExtensionField& K, unsigned g, const std::vector<Fe>& slots);

/// Component i = sigma^{-i} of the i-th rho-component, a divisor on the curve itself.
std::vector<Divisor> point_components(const ExtensionField& K, const DescentTable& tab, unsigned g,
                                      const DescentPoint& P);
DescentPoint components_to_point(const ExtensionField& K, const DescentTable& tab, unsigned g,
                                 const std::vector<Divisor>& comps, BasisTag tag);
/// rho-components (on the conjugate curves) without the twist.
std::vector<Divisor> point_rho_components(const ExtensionField& K, const DescentTable& tab, unsigned g,
                                          const DescentPoint& P);

/// E(P', Q) = prod_i e(component_i(P'), component_i(Q)).
Fe extended_pairing(const ExtensionField& K, const Curve& C, uint32_t ell, const DescentTable& left,
                    const DescentTable& right, const DescentPoint& Pp, const DescentPoint& Q);
/// Same value computed on the conjugate curves from the rho-components.
Fe extended_pairing_via_rho(const ExtensionField& K, const Curve& C, uint32_t ell, const DescentTable& left,
                            const DescentTable& right, const DescentPoint& Pp, const DescentPoint& Q);
}  // namespace tmap
