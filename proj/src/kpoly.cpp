// SPDX-License-Identifier: Apache-2.0
#include <tmap/kpoly.hpp>

#include <algorithm>

namespace tmap
{
KPoly kp_trim(KPoly a)
{
    while (!a.empty() && a.back() == Fe{})
        a.pop_back();
    return a;
}

long kp_deg(const KPoly& a)
{
    return static_cast<long>(a.size()) - 1;
}

KPoly kp_const(const Fe& c)
{
    return c == Fe{} ? KPoly{} : KPoly{c};
}

KPoly kp_x(const ExtensionField& K)
{
    return {K.zero(), K.one()};
}

const Fe& kp_lc(const KPoly& a)
{
    require(!a.empty(), "leading coefficient of zero polynomial");
    return a.back();
}

KPoly kp_add(const ExtensionField& K, const KPoly& a, const KPoly& b)
{
    KPoly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < r.size(); ++i)
    {
        if (i < a.size() && i < b.size())
            r[i] = K.add(a[i], b[i]);
        else
            r[i] = i < a.size() ? a[i] : b[i];
    }
    return kp_trim(std::move(r));
}

KPoly kp_sub(const ExtensionField& K, const KPoly& a, const KPoly& b)
{
    KPoly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < r.size(); ++i)
    {
        const Fe x = i < a.size() ? a[i] : Fe{};
        const Fe y = i < b.size() ? b[i] : Fe{};
        r[i] = K.sub(x, y);
    }
    return kp_trim(std::move(r));
}

KPoly kp_neg(const ExtensionField& K, const KPoly& a)
{
    KPoly r(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        r[i] = K.neg(a[i]);
    return r;
}

KPoly kp_scale(const ExtensionField& K, const KPoly& a, const Fe& c)
{
    if (K.is_zero(c))
        return {};
    KPoly r(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        r[i] = K.mul(a[i], c);
    return r;
}

KPoly kp_mul(const ExtensionField& K, const KPoly& a, const KPoly& b)
{
    if (a.empty() || b.empty())
        return {};
    KPoly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
    {
        if (K.is_zero(a[i]))
            continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = K.add(r[i + j], K.mul(a[i], b[j]));
    }
    return kp_trim(std::move(r));
}

void kp_divmod(const ExtensionField& K, const KPoly& a, const KPoly& b, KPoly& q, KPoly& r)
{
    require(!b.empty(), "polynomial division by zero");
    r = a;
    const size_t db = b.size() - 1;
    if (r.size() < b.size())
    {
        q.clear();
        return;
    }
    q.assign(r.size() - db, Fe{});
    const Fe lc_inv = K.inv(b.back());
    for (size_t k = r.size(); k-- > db;)
    {
        if (K.is_zero(r[k]))
            continue;
        const Fe c = K.mul(r[k], lc_inv);
        q[k - db] = c;
        for (size_t i = 0; i <= db; ++i)
            r[k - db + i] = K.sub(r[k - db + i], K.mul(c, b[i]));
    }
    q = kp_trim(std::move(q));
    r.resize(db);
    r = kp_trim(std::move(r));
}

KPoly kp_div(const ExtensionField& K, const KPoly& a, const KPoly& b)
{
    KPoly q, r;
    kp_divmod(K, a, b, q, r);
    return q;
}

KPoly kp_mod(const ExtensionField& K, const KPoly& a, const KPoly& b)
{
    if (a.size() < b.size())
        return a;
    KPoly q, r;
    kp_divmod(K, a, b, q, r);
    return r;
}

KPoly kp_monic(const ExtensionField& K, const KPoly& a)
{
    if (a.empty() || a.back() == K.one())
        return a;
    return kp_scale(K, a, K.inv(a.back()));
}

KPoly kp_derivative(const ExtensionField& K, const KPoly& a)
{
    if (a.size() <= 1)
        return {};
    KPoly r(a.size() - 1);
    for (size_t i = 1; i < a.size(); ++i)
        r[i - 1] = K.mul_scalar(a[i], static_cast<uint32_t>(i % K.p()));
    return kp_trim(std::move(r));
}

Fe kp_eval(const ExtensionField& K, const KPoly& a, const Fe& x)
{
    Fe r;
    for (size_t i = a.size(); i-- > 0;)
        r = K.add(K.mul(r, x), a[i]);
    return r;
}

KPoly kp_frobenius(const ExtensionField& K, const KPoly& a, long j)
{
    KPoly r(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        r[i] = K.frobenius(a[i], j);
    return r;
}

KPoly kp_gcd(const ExtensionField& K, KPoly a, KPoly b)
{
    while (!b.empty())
    {
        KPoly r = kp_mod(K, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return kp_monic(K, a);
}

XgcdResult kp_xgcd(const ExtensionField& K, const KPoly& a, const KPoly& b)
{
    KPoly r0 = a, r1 = b;
    KPoly s0{K.one()}, s1{};
    KPoly t0{}, t1{K.one()};
    while (!r1.empty())
    {
        KPoly q, r;
        kp_divmod(K, r0, r1, q, r);
        KPoly s2 = kp_sub(K, s0, kp_mul(K, q, s1));
        KPoly t2 = kp_sub(K, t0, kp_mul(K, q, t1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.empty())
        return {{}, {}, {}};
    const Fe iv = K.inv(r0.back());
    return {kp_scale(K, r0, iv), kp_scale(K, s0, iv), kp_scale(K, t0, iv)};
}

KPoly kp_powmod(const ExtensionField& K, KPoly base, uint64_t e, const KPoly& m)
{
    KPoly r = kp_mod(K, {K.one()}, m);
    base = kp_mod(K, base, m);
    while (e)
    {
        if (e & 1)
            r = kp_mod(K, kp_mul(K, r, base), m);
        base = kp_mod(K, kp_mul(K, base, base), m);
        e >>= 1;
    }
    return r;
}

Fe kp_resultant(const ExtensionField& K, const KPoly& a_in, const KPoly& b_in)
{
    KPoly a = a_in, b = b_in;
    if (a.empty() || b.empty())
        return K.zero();
    Fe acc = K.one();
    for (;;)
    {
        const long m = kp_deg(a), n = kp_deg(b);
        if (n == 0)
            return K.mul(acc, K.pow(b[0], static_cast<uint64_t>(m)));
        if (m == 0)
            return K.mul(acc, K.pow(a[0], static_cast<uint64_t>(n)));
        // Res(a,b) = (-1)^{mn} Res(b,a) = (-1)^{mn} lc(b)^{m - deg r} Res(b, r)
        KPoly r = kp_mod(K, a, b);
        if (r.empty())
            return K.zero();
        if ((m * n) % 2 == 1)
            acc = K.neg(acc);
        acc = K.mul(acc, K.pow(b.back(), static_cast<uint64_t>(m - kp_deg(r))));
        a = std::move(b);
        b = std::move(r);
    }
}

bool kp_is_squarefree(const ExtensionField& K, const KPoly& a)
{
    if (a.size() <= 1)
        return true;
    return kp_deg(kp_gcd(K, a, kp_derivative(K, a))) == 0;
}

namespace
{
void split_roots(const ExtensionField& K, const KPoly& g, Rng& rng, std::vector<Fe>& out)
{
    const long n = kp_deg(g);
    if (n <= 0)
        return;
    if (n == 1)
    {
        out.push_back(K.neg(K.div(g[0], g[1])));
        return;
    }
    for (;;)
    {
        KPoly shift{K.random(rng), K.one()};
        KPoly h = kp_powmod(K, shift, (K.order() - 1) / 2, g);
        h = kp_sub(K, h, {K.one()});
        KPoly f = kp_gcd(K, g, h);
        const long df = kp_deg(f);
        if (df > 0 && df < n)
        {
            split_roots(K, f, rng, out);
            split_roots(K, kp_div(K, g, f), rng, out);
            return;
        }
    }
}
}  // namespace

std::vector<Fe> kp_roots(const ExtensionField& K, const KPoly& a, uint64_t seed)
{
    std::vector<Fe> out;
    if (a.size() <= 1)
        return out;
    if (K.order() <= 64 || K.p() == 2)
    {
        for (uint64_t i = 0; i < K.order(); ++i)
        {
            Fe x = K.from_index(i);
            if (K.is_zero(kp_eval(K, a, x)))
                out.push_back(x);
        }
        return out;
    }
    const KPoly m = kp_monic(K, a);
    KPoly xq = kp_powmod(K, kp_x(K), K.order(), m);
    KPoly lin = kp_gcd(K, m, kp_sub(K, xq, kp_x(K)));
    Rng rng(seed);
    split_roots(K, lin, rng, out);
    std::sort(out.begin(), out.end(),
              [&](const Fe& x, const Fe& y) { return K.to_index(x) < K.to_index(y); });
    return out;
}
}  // namespace tmap
