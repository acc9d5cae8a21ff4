// SPDX-License-Identifier: Apache-2.0
#include <tmap/multipoly.hpp>

namespace tmap
{
unsigned Monomial::degree() const
{
    unsigned s = 0;
    for (auto e : exps)
        s += e;
    return s;
}

Monomial monomial_one(size_t nvars)
{
    return {std::vector<uint16_t>(nvars, 0), std::vector<uint8_t>(nvars, 0)};
}

Monomial monomial_mul(const Monomial& a, const Monomial& b)
{
    require(a.exps.size() == b.exps.size(), "monomial arity mismatch");
    Monomial r = a;
    for (size_t i = 0; i < a.exps.size(); ++i)
    {
        if (b.exps[i] == 0)
            continue;
        require(a.exps[i] == 0 || a.frob[i] == b.frob[i], "mixing Frobenius tags on one variable");
        r.exps[i] = static_cast<uint16_t>(a.exps[i] + b.exps[i]);
        r.frob[i] = b.frob[i];
    }
    return r;
}

bool monomial_divides(const Monomial& a, const Monomial& b)
{
    for (size_t i = 0; i < a.exps.size(); ++i)
    {
        if (a.exps[i] > b.exps[i])
            return false;
        if (a.exps[i] && a.frob[i] != b.frob[i])
            return false;
    }
    return true;
}

Monomial monomial_div(const Monomial& b, const Monomial& a)
{
    require(monomial_divides(a, b), "monomial does not divide");
    Monomial r = b;
    for (size_t i = 0; i < a.exps.size(); ++i)
    {
        r.exps[i] = static_cast<uint16_t>(b.exps[i] - a.exps[i]);
        if (r.exps[i] == 0)
            r.frob[i] = 0;
    }
    return r;
}

MultiPoly mp_zero(size_t nvars)
{
    return {nvars, {}};
}

MultiPoly mp_const(size_t nvars, const Fe& c)
{
    return mp_term(nvars, monomial_one(nvars), c);
}

MultiPoly mp_var(const ExtensionField& K, size_t nvars, size_t i, uint8_t frob)
{
    require(i < nvars, "variable index out of range");
    Monomial m = monomial_one(nvars);
    m.exps[i] = 1;
    m.frob[i] = static_cast<uint8_t>(frob % K.d());
    return mp_term(nvars, m, K.one());
}

MultiPoly mp_term(size_t nvars, const Monomial& m, const Fe& c)
{
    MultiPoly r{nvars, {}};
    if (c != Fe{})
        r.terms.emplace(m, c);
    return r;
}

void mp_add_term(const ExtensionField& K, MultiPoly& f, const Monomial& m, const Fe& c)
{
    if (K.is_zero(c))
        return;
    auto [it, inserted] = f.terms.emplace(m, c);
    if (!inserted)
    {
        it->second = K.add(it->second, c);
        if (K.is_zero(it->second))
            f.terms.erase(it);
    }
}

MultiPoly mp_add(const ExtensionField& K, const MultiPoly& a, const MultiPoly& b)
{
    require(a.nvars == b.nvars, "polynomial arity mismatch");
    MultiPoly r = a;
    for (const auto& [m, c] : b.terms)
        mp_add_term(K, r, m, c);
    return r;
}

MultiPoly mp_sub(const ExtensionField& K, const MultiPoly& a, const MultiPoly& b)
{
    require(a.nvars == b.nvars, "polynomial arity mismatch");
    MultiPoly r = a;
    for (const auto& [m, c] : b.terms)
        mp_add_term(K, r, m, K.neg(c));
    return r;
}

MultiPoly mp_scale(const ExtensionField& K, const MultiPoly& a, const Fe& c)
{
    MultiPoly r{a.nvars, {}};
    if (K.is_zero(c))
        return r;
    for (const auto& [m, v] : a.terms)
        r.terms.emplace_hint(r.terms.end(), m, K.mul(v, c));
    return r;
}

MultiPoly mp_mul(const ExtensionField& K, const MultiPoly& a, const MultiPoly& b)
{
    require(a.nvars == b.nvars, "polynomial arity mismatch");
    MultiPoly r{a.nvars, {}};
    for (const auto& [ma, ca] : a.terms)
        for (const auto& [mb, cb] : b.terms)
            mp_add_term(K, r, monomial_mul(ma, mb), K.mul(ca, cb));
    return r;
}

MultiPoly mp_pow(const ExtensionField& K, const MultiPoly& a, unsigned e)
{
    MultiPoly r = mp_const(a.nvars, K.one());
    for (unsigned i = 0; i < e; ++i)
        r = mp_mul(K, r, a);
    return r;
}

unsigned mp_total_degree(const MultiPoly& a)
{
    unsigned d = 0;
    for (const auto& [m, c] : a.terms)
        d = std::max(d, m.degree());
    return d;
}

bool mp_over_prime_field(const ExtensionField& K, const MultiPoly& a)
{
    for (const auto& [m, c] : a.terms)
        if (!K.in_prime_field(c))
            return false;
    return true;
}

bool mp_has_tags(const MultiPoly& a)
{
    for (const auto& [m, c] : a.terms)
        for (auto f : m.frob)
            if (f)
                return true;
    return false;
}

Fe mp_eval(const ExtensionField& K, const MultiPoly& a, const std::vector<Fe>& x)
{
    require(x.size() == a.nvars, "evaluation point has wrong arity");
    Fe r;
    for (const auto& [m, c] : a.terms)
    {
        Fe t = c;
        for (size_t i = 0; i < a.nvars; ++i)
            if (m.exps[i])
            {
                const Fe xi = m.frob[i] ? K.frobenius(x[i], m.frob[i]) : x[i];
                t = K.mul(t, K.pow(xi, m.exps[i]));
            }
        r = K.add(r, t);
    }
    return r;
}

uint32_t mp_eval_k(const ExtensionField& K, const MultiPoly& a, const Vec& x)
{
    require(x.size() == a.nvars, "evaluation point has wrong arity");
    const Zmod& z = K.zp();
    uint32_t r = 0;
    for (const auto& [m, c] : a.terms)
    {
        uint32_t t = c.c[0];
        for (size_t i = 0; i < a.nvars && t; ++i)
            if (m.exps[i])
                t = z.mul(t, z.pow(x[i], m.exps[i]));
        r = z.add(r, t);
    }
    return r;
}

MultiPoly mp_derivative(const ExtensionField& K, const MultiPoly& a, size_t i)
{
    require(i < a.nvars, "variable index out of range");
    MultiPoly r{a.nvars, {}};
    for (const auto& [m, c] : a.terms)
    {
        if (m.exps[i] == 0)
            continue;
        require(m.frob[i] == 0, "derivative of a Frobenius-tagged variable");
        const uint32_t e = m.exps[i] % K.p();
        if (e == 0)
            continue;
        Monomial nm = m;
        nm.exps[i] -= 1;
        mp_add_term(K, r, nm, K.mul_scalar(c, e));
    }
    return r;
}

MultiPoly mp_random(const ExtensionField& K, size_t nvars, unsigned max_deg, size_t nterms, Rng& rng,
                    bool prime_field_coeffs)
{
    MultiPoly r{nvars, {}};
    for (size_t t = 0; t < nterms; ++t)
    {
        Monomial m = monomial_one(nvars);
        const unsigned deg = static_cast<unsigned>(uniform(rng, max_deg + 1));
        for (unsigned k = 0; k < deg; ++k)
            m.exps[uniform(rng, nvars)] += 1;
        Fe c = prime_field_coeffs ? K.scalar(static_cast<uint32_t>(1 + uniform(rng, K.p() - 1)))
                                  : K.random_nonzero(rng);
        mp_add_term(K, r, m, c);
    }
    return r;
}
}  // namespace tmap
