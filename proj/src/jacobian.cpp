// SPDX-License-Identifier: Apache-2.0
#include <tmap/jacobian.hpp>

namespace tmap
{
Curve make_curve(const ExtensionField& K, const KPoly& f_in)
{
    require(K.p() != 2, "characteristic 2 is not supported");
    KPoly f = kp_trim(f_in);
    const long n = kp_deg(f);
    require(n >= 5 && n % 2 == 1, "curve polynomial must have odd degree 2g+1 with g >= 2");
    require(f.back() == K.one(), "curve polynomial must be monic");
    require(kp_is_squarefree(K, f), "curve polynomial must be squarefree");
    return {f, static_cast<unsigned>((n - 1) / 2)};
}

Curve conjugate_curve(const ExtensionField& K, const Curve& C, long j)
{
    return {kp_frobenius(K, C.f, j), C.g};
}

Divisor div_zero(const ExtensionField& K)
{
    return {{K.one()}, {}};
}

bool div_is_zero(const Divisor& D)
{
    return D.a.size() == 1;
}

Divisor div_neg(const ExtensionField& K, const Divisor& D)
{
    return {D.a, kp_neg(K, D.b)};
}

Divisor point_divisor(const ExtensionField& K, const Curve& C, const Fe& x, const Fe& y)
{
    require(K.sqr(y) == kp_eval(K, C.f, x), "point is not on the curve");
    return {{K.neg(x), K.one()}, kp_const(y)};
}

bool div_is_valid(const ExtensionField& K, const Curve& C, const Divisor& D, bool reduced)
{
    if (D.a.empty() || D.a.back() != K.one())
        return false;
    if (kp_deg(D.b) >= kp_deg(D.a))
        return false;
    if (reduced && kp_deg(D.a) > static_cast<long>(C.g))
        return false;
    return kp_mod(K, kp_sub(K, C.f, kp_mul(K, D.b, D.b)), D.a).empty();
}

Divisor div_frobenius(const ExtensionField& K, const Divisor& D, long j)
{
    return {kp_frobenius(K, D.a, j), kp_frobenius(K, D.b, j)};
}

FunctionTrace trace_one(const ExtensionField& K)
{
    return {{K.one()}, {}, K.one(), 0, 0};
}

void compute_h_inf(const ExtensionField& K, const Curve& C, FunctionTrace& h)
{
    ensure(!h.h1.empty() && h.h1.back() == K.one(), "trace numerator must be monic");
    Fe den = K.one();
    long a = 0, c = kp_deg(h.h1);
    for (const auto& beta : h.betas)
    {
        if (kp_deg(beta) > static_cast<long>(C.g))
        {
            den = K.mul(den, K.neg(beta.back()));
            c -= kp_deg(beta);
        }
        else
            ++a;
    }
    h.h_inf = K.inv(den);
    h.inf_a = a;
    h.inf_c = c;
}

Composition compose(const ExtensionField& K, const Curve& C, const Divisor& D1, const Divisor& D2)
{
    // h = s1 a1 + s2 a2 + s3 (b1 + b2)
    const XgcdResult g1 = kp_xgcd(K, D1.a, D2.a);
    const XgcdResult g2 = kp_xgcd(K, g1.g, kp_add(K, D1.b, D2.b));
    const KPoly& h = g2.g;
    const KPoly s1 = kp_mul(K, g2.s, g1.s);
    const KPoly s2 = kp_mul(K, g2.s, g1.t);
    const KPoly& s3 = g2.t;
    const KPoly a = kp_div(K, kp_mul(K, D1.a, D2.a), kp_mul(K, h, h));
    if (kp_deg(a) == 0)
        return {div_zero(K), h};
    KPoly num = kp_mul(K, kp_mul(K, s1, D1.a), D2.b);
    num = kp_add(K, num, kp_mul(K, kp_mul(K, s2, D2.a), D1.b));
    num = kp_add(K, num, kp_mul(K, s3, kp_add(K, kp_mul(K, D1.b, D2.b), C.f)));
    KPoly q, r;
    kp_divmod(K, num, h, q, r);
    ensure(r.empty(), "composition numerator not divisible by the gcd");
    return {{a, kp_mod(K, q, a)}, h};
}

ReductionStep reduce_step(const ExtensionField& K, const Curve& C, const Divisor& D)
{
    require(kp_deg(D.a) > static_cast<long>(C.g), "divisor is already reduced");
    KPoly q, r;
    kp_divmod(K, kp_sub(K, C.f, kp_mul(K, D.b, D.b)), D.a, q, r);
    ensure(r.empty(), "a does not divide f - b^2");
    const KPoly an = kp_monic(K, q);
    const KPoly bn = kp_mod(K, kp_neg(K, D.b), an);
    return {{an, bn}, D.a, kp_neg(K, D.b)};
}

std::pair<Divisor, FunctionTrace> add_with_trace(const ExtensionField& K, const Curve& C, const Divisor& D1,
                                                 const Divisor& D2)
{
    Composition comp = compose(K, C, D1, D2);
    FunctionTrace h;
    h.h1 = comp.h;
    Divisor D = std::move(comp.semi);
    while (kp_deg(D.a) > static_cast<long>(C.g))
    {
        ReductionStep st = reduce_step(K, C, D);
        h.h1 = kp_mul(K, h.h1, st.numer);
        h.betas.push_back(std::move(st.beta));
        D = std::move(st.next);
    }
    compute_h_inf(K, C, h);
    return {std::move(D), std::move(h)};
}

Divisor div_add(const ExtensionField& K, const Curve& C, const Divisor& D1, const Divisor& D2)
{
    if (div_is_zero(D1))
        return D2;
    if (div_is_zero(D2))
        return D1;
    Divisor D = compose(K, C, D1, D2).semi;
    while (kp_deg(D.a) > static_cast<long>(C.g))
        D = reduce_step(K, C, D).next;
    return D;
}

Divisor div_sub(const ExtensionField& K, const Curve& C, const Divisor& D1, const Divisor& D2)
{
    return div_add(K, C, D1, div_neg(K, D2));
}

Divisor scalar_mul(const ExtensionField& K, const Curve& C, u128 n, const Divisor& D)
{
    Divisor r = div_zero(K);
    Divisor base = D;
    while (n)
    {
        if (n & 1)
            r = div_add(K, C, r, base);
        n >>= 1;
        if (n)
            base = div_add(K, C, base, base);
    }
    return r;
}

Fe eval_trace_at(const ExtensionField& K, const Curve&, const FunctionTrace& h, const Divisor& D)
{
    if (div_is_zero(D))
        return K.one();
    const Fe num = kp_resultant(K, D.a, h.h1);
    if (K.is_zero(num))
        throw DegenerateSupport("trace numerator vanishes on the divisor support");
    Fe den = K.one();
    for (const auto& beta : h.betas)
    {
        const Fe v = kp_resultant(K, D.a, kp_sub(K, D.b, beta));
        if (K.is_zero(v))
            throw DegenerateSupport("trace denominator vanishes on the divisor support");
        den = K.mul(den, v);
    }
    return K.div(num, den);
}

Divisor random_point_divisor(const ExtensionField& K, const Curve& C, Rng& rng)
{
    for (;;)
    {
        const Fe x = K.random(rng);
        const auto y = K.sqrt(kp_eval(K, C.f, x));
        if (!y)
            continue;
        const Fe yy = uniform(rng, 2) ? K.neg(*y) : *y;
        return point_divisor(K, C, x, yy);
    }
}

Divisor random_divisor(const ExtensionField& K, const Curve& C, uint64_t seed)
{
    Rng rng(seed);
    const Divisor p1 = random_point_divisor(K, C, rng);
    const Divisor p2 = random_point_divisor(K, C, rng);
    const Divisor p3 = random_point_divisor(K, C, rng);
    const u128 r = uniform(rng, K.order());
    return div_add(K, C, scalar_mul(K, C, r, div_add(K, C, p1, p2)), p3);
}

CurveContext make_context(const ExtensionField& K, const Curve& C, u128 order, uint32_t ell)
{
    require(is_prime(ell), "ell must be prime");
    require(ell != K.p(), "ell must differ from the characteristic");
    require((K.order() - 1) % ell == 0, "ell must divide |K| - 1");
    require(order % (u128{ell} * ell) == 0, "ell^2 must divide the jacobian order");
    CurveContext ctx{C, order, ell, order};
    while (ctx.cofactor % ell == 0)
        ctx.cofactor /= ell;
    return ctx;
}

Divisor ell_torsion_point(const ExtensionField& K, const CurveContext& ctx, uint64_t seed)
{
    const Curve& C = ctx.curve;
    for (uint64_t attempt = 0; attempt < 200; ++attempt)
    {
        Divisor P = scalar_mul(K, C, ctx.cofactor, random_divisor(K, C, derive_seed(seed, attempt)));
        if (div_is_zero(P))
            continue;
        for (;;)
        {
            Divisor Q = scalar_mul(K, C, ctx.ell, P);
            if (div_is_zero(Q))
                return P;
            P = std::move(Q);
        }
    }
    throw PreconditionError("no point of order ell found; the ell-part of the jacobian looks trivial");
}
}  // namespace tmap
