// SPDX-License-Identifier: Apache-2.0
#include <tmap/pairing.hpp>

namespace tmap
{
MillerFunction miller_build(const ExtensionField& K, const Curve& C, const Divisor& D, uint32_t ell)
{
    require(ell >= 2, "ell must be at least 2");
    MillerFunction F;
    F.f_inf = K.one();
    if (div_is_zero(D))
        return F;
    auto absorb = [&](FunctionTrace&& h) {
        F.f_inf = K.mul(F.f_inf, h.h_inf);
        F.r -= h.inf_a;
        F.s += h.inf_c;
        F.factors.emplace_back(std::move(h), 1);
    };
    int top = 31;
    while (!((ell >> top) & 1))
        --top;
    Divisor T = D;
    for (int bit = top - 1; bit >= 0; --bit)
    {
        for (auto& fac : F.factors)
            fac.second *= 2;
        F.f_inf = K.sqr(F.f_inf);
        F.r *= 2;
        F.s *= 2;
        auto [T2, h] = add_with_trace(K, C, T, T);
        absorb(std::move(h));
        T = std::move(T2);
        if ((ell >> bit) & 1)
        {
            auto [T3, h3] = add_with_trace(K, C, T, D);
            absorb(std::move(h3));
            T = std::move(T3);
        }
    }
    ensure(div_is_zero(T), "Miller input is not ell-torsion");
    const long ord = -static_cast<long>(2 * C.g + 1) * F.r - 2 * F.s;
    ensure(ord == -static_cast<long>(ell) * kp_deg(D.a), "Miller function has the wrong order at infinity");
    return F;
}

Fe miller_eval(const ExtensionField& K, const Curve& C, const MillerFunction& F, const Divisor& D)
{
    Fe v = K.one();
    for (const auto& [h, e] : F.factors)
        v = K.mul(v, K.pow(eval_trace_at(K, C, h, D), e));
    return v;
}

Fe weil_pairing(const ExtensionField& K, const Curve& C, const Divisor& D1, const Divisor& D2, uint32_t ell)
{
    if (div_is_zero(D1) || div_is_zero(D2))
        return K.one();
    const MillerFunction f1 = miller_build(K, C, D1, ell);
    const MillerFunction f2 = miller_build(K, C, D2, ell);
    const long r1 = kp_deg(D1.a), r2 = kp_deg(D2.a);
    Fe e = K.div(miller_eval(K, C, f1, D2), miller_eval(K, C, f2, D1));
    e = K.mul(e, K.pow(K.inv(f1.f_inf), static_cast<uint64_t>(r2)));
    e = K.mul(e, K.pow(f2.f_inf, static_cast<uint64_t>(r1)));
    // tame symbol at infinity: (-1)^{ord f1 * ord f2}
    if ((r1 * r2) % 2 == 1)
        e = K.neg(e);
    ensure(K.pow(e, ell) == K.one(), "pairing value is not an ell-th root of unity");
    return e;
}

Fe weil_pairing_retry(const ExtensionField& K, const Curve& C, const Divisor& D1, const Divisor& D2,
                      uint32_t ell, unsigned* retries)
{
    unsigned tries = 0;
    auto done = [&](const Fe& v) {
        if (retries)
            *retries = tries;
        return v;
    };
    try
    {
        return done(weil_pairing(K, C, D1, D2, ell));
    }
    catch (const DegenerateSupport&)
    {
    }
    // e(D, kD) = 1 by alternation
    Divisor m = div_zero(K);
    for (uint32_t k = 0; k < ell; ++k)
    {
        if (m == D2)
            return done(K.one());
        m = div_add(K, C, m, D1);
    }
    // e(D1, D2 + k D1) = e(D1 + k D2, D2) = e(D1, D2)
    Divisor shifted2 = D2, shifted1 = D1;
    for (uint32_t k = 1; k < ell; ++k)
    {
        shifted2 = div_add(K, C, shifted2, D1);
        ++tries;
        try
        {
            return done(weil_pairing(K, C, D1, shifted2, ell));
        }
        catch (const DegenerateSupport&)
        {
        }
        shifted1 = div_add(K, C, shifted1, D2);
        ++tries;
        try
        {
            return done(weil_pairing(K, C, shifted1, D2, ell));
        }
        catch (const DegenerateSupport&)
        {
        }
    }
    throw DegenerateSupport("pairing retries exhausted");
}

std::optional<uint32_t> mu_dlog(const ExtensionField& K, const Fe& base, const Fe& v, uint32_t ell)
{
    Fe acc = K.one();
    for (uint32_t k = 0; k < ell; ++k)
    {
        if (acc == v)
            return k;
        acc = K.mul(acc, base);
    }
    return std::nullopt;
}

std::vector<Fe> divisor_slots(const ExtensionField& K, unsigned g, const Divisor& D)
{
    require(kp_deg(D.a) <= static_cast<long>(g), "divisor is not reduced");
    std::vector<Fe> s(2 * g + 1, K.zero());
    for (size_t i = 0; i < D.a.size(); ++i)
        s[i] = D.a[i];
    for (size_t i = 0; i < D.b.size(); ++i)
        s[g + 1 + i] = D.b[i];
    return s;
}

Divisor divisor_from_slots(const ExtensionField& K, unsigned g, const std::vector<Fe>& slots)
{
    require(slots.size() == 2 * g + 1, "wrong number of divisor slots");
    Divisor D;
    D.a = kp_trim(KPoly(slots.begin(), slots.begin() + g + 1));
    D.b = kp_trim(KPoly(slots.begin() + g + 1, slots.end()));
    require(!D.a.empty() && D.a.back() == K.one(), "slot values do not describe a monic a");
    require(kp_deg(D.b) < kp_deg(D.a), "slot values give deg b >= deg a");
    return D;
}

namespace
{
std::vector<std::vector<Fe>> slot_blocks(const ExtensionField& K, unsigned g, const DescentPoint& P)
{
    const size_t d = K.d();
    require(P.coords.size() == (2 * g + 1) * d, "descent point has the wrong length");
    std::vector<std::vector<Fe>> out;
    for (size_t s = 0; s < 2 * g + 1; ++s)
        out.emplace_back(P.coords.begin() + s * d, P.coords.begin() + (s + 1) * d);
    return out;
}
}  // namespace

std::vector<Divisor> point_components(const ExtensionField& K, const DescentTable& tab, unsigned g,
                                      const DescentPoint& P)
{
    const size_t d = K.d();
    auto blocks = slot_blocks(K, g, P);
    std::vector<std::vector<Fe>> per_comp(d, std::vector<Fe>(2 * g + 1));
    for (size_t s = 0; s < blocks.size(); ++s)
    {
        auto c = twisted_components(K, tab, blocks[s]);
        for (size_t i = 0; i < d; ++i)
            per_comp[i][s] = c[i];
    }
    std::vector<Divisor> out;
    for (size_t i = 0; i < d; ++i)
        out.push_back(divisor_from_slots(K, g, per_comp[i]));
    return out;
}

std::vector<Divisor> point_rho_components(const ExtensionField& K, const DescentTable& tab, unsigned g,
                                          const DescentPoint& P)
{
    const size_t d = K.d();
    auto blocks = slot_blocks(K, g, P);
    std::vector<std::vector<Fe>> per_comp(d, std::vector<Fe>(2 * g + 1));
    for (size_t s = 0; s < blocks.size(); ++s)
    {
        auto c = rho(K, tab, blocks[s]);
        for (size_t i = 0; i < d; ++i)
            per_comp[i][s] = c[i];
    }
    std::vector<Divisor> out;
    for (size_t i = 0; i < d; ++i)
        out.push_back(divisor_from_slots(K, g, per_comp[i]));
    return out;
}

DescentPoint components_to_point(const ExtensionField& K, const DescentTable& tab, unsigned g,
                                 const std::vector<Divisor>& comps, BasisTag tag)
{
    const size_t d = K.d();
    require(comps.size() == d, "need one component per conjugate");
    std::vector<std::vector<Fe>> slots;
    for (const auto& D : comps)
        slots.push_back(divisor_slots(K, g, D));
    DescentPoint P;
    P.tag = tag;
    P.coords.resize((2 * g + 1) * d);
    for (size_t s = 0; s < 2 * g + 1; ++s)
    {
        std::vector<Fe> c(d);
        for (size_t i = 0; i < d; ++i)
            c[i] = slots[i][s];
        auto x = from_twisted_components(K, tab, c);
        for (size_t j = 0; j < d; ++j)
            P.coords[s * d + j] = x[j];
    }
    return P;
}

Fe extended_pairing(const ExtensionField& K, const Curve& C, uint32_t ell, const DescentTable& left,
                    const DescentTable& right, const DescentPoint& Pp, const DescentPoint& Q)
{
    require(Pp.tag == BasisTag::secondary, "left slot takes points in the secondary basis");
    require(Q.tag == BasisTag::primary, "right slot takes points in the primary basis");
    const auto cl = point_components(K, left, C.g, Pp);
    const auto cr = point_components(K, right, C.g, Q);
    Fe e = K.one();
    for (size_t i = 0; i < cl.size(); ++i)
        e = K.mul(e, weil_pairing_retry(K, C, cl[i], cr[i], ell));
    return e;
}

Fe extended_pairing_via_rho(const ExtensionField& K, const Curve& C, uint32_t ell, const DescentTable& left,
                            const DescentTable& right, const DescentPoint& Pp, const DescentPoint& Q)
{
    require(Pp.tag == BasisTag::secondary, "left slot takes points in the secondary basis");
    require(Q.tag == BasisTag::primary, "right slot takes points in the primary basis");
    const auto cl = point_rho_components(K, left, C.g, Pp);
    const auto cr = point_rho_components(K, right, C.g, Q);
    Fe e = K.one();
    for (size_t i = 0; i < cl.size(); ++i)
    {
        const Curve Ci = conjugate_curve(K, C, static_cast<long>(i));
        const Fe ei = weil_pairing_retry(K, Ci, cl[i], cr[i], ell);
        e = K.mul(e, K.frobenius(ei, -static_cast<long>(i)));
    }
    return e;
}
}  // namespace tmap
