// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <tmap/kpoly.hpp>

#include <utility>
#include <vector>

namespace tmap
{
/// y^2 = f(x), f monic squarefree of degree 2g+1, odd characteristic.
struct Curve
{
    KPoly f;
    unsigned g = 2;
};

Curve make_curve(const ExtensionField& K, const KPoly& f);
/// The conjugate curve y^2 = f^{sigma^j}(x).
Curve conjugate_curve(const ExtensionField& K, const Curve& C, long j);

/// Mumford pair Div(a, b); the zero divisor is (1, 0).
struct Divisor
{
    KPoly a, b;

    bool operator==(const Divisor&) const = default;
};

Divisor div_zero(const ExtensionField& K);
bool div_is_zero(const Divisor& D);
Divisor div_neg(const ExtensionField& K, const Divisor& D);
/// P - infinity for an affine point P = (x, y) on the curve.
Divisor point_divisor(const ExtensionField& K, const Curve& C, const Fe& x, const Fe& y);
/// a monic, deg b < deg a, a | f - b^2 (reduced additionally asks deg a <= g).
bool div_is_valid(const ExtensionField& K, const Curve& C, const Divisor& D, bool reduced = true);
/// Applies sigma^j to the coefficients: a divisor on the conjugate curve.
Divisor div_frobenius(const ExtensionField& K, const Divisor& D, long j);

/// h = h1 / prod (y - beta_i), with h ~ h_inf * y^{-inf_a} * x^{inf_c} at infinity.
struct FunctionTrace
{
    KPoly h1;
    std::vector<KPoly> betas;
    Fe h_inf;
    long inf_a = 0;
    long inf_c = 0;
};

FunctionTrace trace_one(const ExtensionField& K);
/// Recomputes (h_inf, inf_a, inf_c) from h1 and the betas.
void compute_h_inf(const ExtensionField& K, const Curve& C, FunctionTrace& h);

struct Composition
{
    Divisor semi;  // semireduced D with D1 + D2 = D + div(h)
    KPoly h;       // gcd(a1, a2, b1 + b2), monic
};
Composition compose(const ExtensionField& K, const Curve& C, const Divisor& D1, const Divisor& D2);

struct ReductionStep
{
    Divisor next;  // D = next + div(numer / (y - beta))
    KPoly numer;
    KPoly beta;
};
ReductionStep reduce_step(const ExtensionField& K, const Curve& C, const Divisor& D);

/// D1 + D2 = D3 + div(h).
std::pair<Divisor, FunctionTrace> add_with_trace(const ExtensionField& K, const Curve& C, const Divisor& D1,
                                                 const Divisor& D2);
Divisor div_add(const ExtensionField& K, const Curve& C, const Divisor& D1, const Divisor& D2);
Divisor div_sub(const ExtensionField& K, const Curve& C, const Divisor& D1, const Divisor& D2);
Divisor scalar_mul(const ExtensionField& K, const Curve& C, u128 n, const Divisor& D);

/// h(D+) where D+ is the affine part of D. Throws DegenerateSupport on a zero or pole.
Fe eval_trace_at(const ExtensionField& K, const Curve& C, const FunctionTrace& h, const Divisor& D);

// Point counting and group orders (genus 2).

/// #C(K) including the point at infinity.
uint64_t count_points(const ExtensionField& K, const KPoly& f);
/// #C(K_2) over the quadratic extension of K.
uint64_t count_points_quadratic(const ExtensionField& K, const KPoly& f);

/// L(T) = 1 + a1 T + a2 T^2 + q a1 T^3 + q^2 T^4.
struct LPolyG2
{
    i128 a1 = 0, a2 = 0;
    u128 q = 0;
};
LPolyG2 lpoly_from_counts(u128 q, u128 n1, u128 n2);
/// L-polynomial of the same curve over the degree-n extension.
LPolyG2 lpoly_lift(const LPolyG2& L, unsigned n);
u128 lpoly_order(const LPolyG2& L);

/// #J(K) from direct counts over K and its quadratic extension.
u128 jacobian_order(const ExtensionField& K, const Curve& C);
/// #J over F_{p^n} for a curve with coefficients in F_p (given as integers).
u128 jacobian_order_prime_model(uint32_t p, const PolyP& f0, unsigned n);

Divisor random_point_divisor(const ExtensionField& K, const Curve& C, Rng& rng);
Divisor random_divisor(const ExtensionField& K, const Curve& C, uint64_t seed);

struct CurveContext
{
    Curve curve;
    u128 order = 0;
    uint32_t ell = 0;
    u128 cofactor = 0;  // order with every factor ell removed
};
CurveContext make_context(const ExtensionField& K, const Curve& C, u128 order, uint32_t ell);
/// A divisor of exact order ell.
Divisor ell_torsion_point(const ExtensionField& K, const CurveContext& ctx, uint64_t seed);
}  // namespace tmap
