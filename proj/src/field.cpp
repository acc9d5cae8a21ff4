// SPDX-License-Identifier: Apache-2.0
#include <tmap/field.hpp>

#include <algorithm>

namespace tmap
{
namespace
{
PolyP polyp_powmod(const Zmod& z, PolyP base, uint64_t e, const PolyP& m)
{
    PolyP r{1};
    base = polyp_mod(z, base, m);
    while (e)
    {
        if (e & 1)
            r = polyp_mulmod(z, r, base, m);
        base = polyp_mulmod(z, base, base, m);
        e >>= 1;
    }
    return r;
}

std::vector<uint64_t> prime_factors(uint64_t n)
{
    std::vector<uint64_t> out;
    for (uint64_t q = 2; q * q <= n; ++q)
        if (n % q == 0)
        {
            out.push_back(q);
            while (n % q == 0)
                n /= q;
        }
    if (n > 1)
        out.push_back(n);
    return out;
}
}  // namespace

PolyP polyp_trim(PolyP f)
{
    while (!f.empty() && f.back() == 0)
        f.pop_back();
    return f;
}

PolyP polyp_mod(const Zmod& z, PolyP a, const PolyP& m)
{
    a = polyp_trim(std::move(a));
    const size_t dm = m.size() - 1;
    const uint32_t lc_inv = z.inv(m.back());
    while (a.size() > dm)
    {
        const uint32_t c = z.mul(a.back(), lc_inv);
        const size_t shift = a.size() - 1 - dm;
        for (size_t i = 0; i <= dm; ++i)
            a[shift + i] = z.sub(a[shift + i], z.mul(c, m[i]));
        a = polyp_trim(std::move(a));
    }
    return a;
}

PolyP polyp_mulmod(const Zmod& z, const PolyP& a, const PolyP& b, const PolyP& m)
{
    if (a.empty() || b.empty())
        return {};
    PolyP r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = z.add(r[i + j], z.mul(a[i], b[j]));
    return polyp_mod(z, std::move(r), m);
}

PolyP polyp_gcd(const Zmod& z, PolyP a, PolyP b)
{
    a = polyp_trim(std::move(a));
    b = polyp_trim(std::move(b));
    while (!b.empty())
    {
        PolyP r = polyp_mod(z, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty())
    {
        const uint32_t iv = z.inv(a.back());
        for (auto& c : a)
            c = z.mul(c, iv);
    }
    return a;
}

bool is_irreducible(const Zmod& z, const PolyP& f_in)
{
    const PolyP f = polyp_trim(f_in);
    if (f.size() < 2 || f.back() != 1)
        return false;
    const size_t n = f.size() - 1;
    if (n == 1)
        return true;
    const PolyP x{0, 1};
    // x^(p^i) mod f for i = 0..n
    std::vector<PolyP> frob{polyp_mod(z, x, f)};
    for (size_t i = 1; i <= n; ++i)
        frob.push_back(polyp_powmod(z, frob.back(), z.m, f));
    auto minus_x = [&](PolyP g) {
        g.resize(std::max<size_t>(g.size(), 2), 0);
        g[1] = z.sub(g[1], 1);
        return polyp_trim(std::move(g));
    };
    if (!minus_x(frob[n]).empty())
        return false;
    for (auto r : prime_factors(n))
    {
        PolyP g = polyp_gcd(z, f, minus_x(frob[n / r]));
        if (g.size() != 1)
            return false;
    }
    return true;
}

ExtensionField::ExtensionField(uint32_t p, PolyP modulus)
    : zp_{p}, d_(0), modulus_(polyp_trim(std::move(modulus))), q_(1), small_(p < (1u << 16))
{
    require(is_prime(p), "field characteristic must be prime");
    require(modulus_.size() >= 2 && modulus_.size() - 1 <= max_degree, "modulus degree out of range");
    require(modulus_.back() == 1, "modulus must be monic");
    for (auto c : modulus_)
        require(c < p, "modulus coefficient not reduced");
    require(is_irreducible(zp_, modulus_), "modulus is not irreducible");
    d_ = modulus_.size() - 1;
    for (size_t i = 0; i < d_; ++i)
        q_ *= p;

    // w^d = -sum m_i w^i; then shift repeatedly.
    std::array<uint32_t, max_degree> cur{};
    for (size_t i = 0; i < d_; ++i)
        cur[i] = zp_.neg(modulus_[i]);
    for (size_t k = 0; k + 1 < d_; ++k)
    {
        reduce_.push_back(cur);
        std::array<uint32_t, max_degree> nxt{};
        const uint32_t top = cur[d_ - 1];
        for (size_t i = d_ - 1; i > 0; --i)
            nxt[i] = cur[i - 1];
        for (size_t i = 0; i < d_; ++i)
            nxt[i] = zp_.add(nxt[i], zp_.mul(top, zp_.neg(modulus_[i])));
        cur = nxt;
    }

    // Frobenius tables: sigma(w) = w^p.
    frob_.assign(d_, {});
    Fe w = d_ > 1 ? theta(1) : Fe{};
    if (d_ == 1)
        w.c[0] = zp_.neg(modulus_[0]);
    Fe sw = w;
    for (size_t j = 0; j < d_; ++j)
    {
        Fe acc = one();
        for (size_t i = 0; i < d_; ++i)
        {
            frob_[j].push_back(acc);
            acc = mul(acc, sw);
        }
        sw = pow(sw, p);
    }
}

Fe ExtensionField::theta(size_t i) const
{
    require(i < d_, "theta index out of range");
    Fe r;
    r.c[i] = 1;
    return r;
}

bool ExtensionField::in_prime_field(const Fe& a) const
{
    for (size_t i = 1; i < d_; ++i)
        if (a.c[i])
            return false;
    return true;
}

Fe ExtensionField::add(const Fe& a, const Fe& b) const
{
    Fe r;
    for (size_t i = 0; i < d_; ++i)
        r.c[i] = zp_.add(a.c[i], b.c[i]);
    return r;
}

Fe ExtensionField::sub(const Fe& a, const Fe& b) const
{
    Fe r;
    for (size_t i = 0; i < d_; ++i)
        r.c[i] = zp_.sub(a.c[i], b.c[i]);
    return r;
}

Fe ExtensionField::neg(const Fe& a) const
{
    Fe r;
    for (size_t i = 0; i < d_; ++i)
        r.c[i] = zp_.neg(a.c[i]);
    return r;
}

Fe ExtensionField::mul_scalar(const Fe& a, uint32_t s) const
{
    Fe r;
    for (size_t i = 0; i < d_; ++i)
        r.c[i] = zp_.mul(a.c[i], s);
    return r;
}

Fe ExtensionField::mul(const Fe& a, const Fe& b) const
{
    const uint64_t p = zp_.m;
    uint64_t t[2 * max_degree - 1] = {};
    if (small_)
    {
        for (size_t i = 0; i < d_; ++i)
        {
            if (!a.c[i])
                continue;
            for (size_t j = 0; j < d_; ++j)
                t[i + j] += uint64_t{a.c[i]} * b.c[j];
        }
        for (size_t k = 0; k < 2 * d_ - 1; ++k)
            t[k] %= p;
        Fe r;
        for (size_t i = 0; i < d_; ++i)
        {
            uint64_t acc = t[i];
            for (size_t k = 0; k + 1 < d_; ++k)
                acc += t[d_ + k] * reduce_[k][i];
            r.c[i] = static_cast<uint32_t>(acc % p);
        }
        return r;
    }
    for (size_t i = 0; i < d_; ++i)
        for (size_t j = 0; j < d_; ++j)
            t[i + j] += uint64_t{a.c[i]} * b.c[j] % p;
    for (size_t k = 0; k < 2 * d_ - 1; ++k)
        t[k] %= p;
    Fe r;
    for (size_t i = 0; i < d_; ++i)
    {
        uint64_t acc = t[i];
        for (size_t k = 0; k + 1 < d_; ++k)
            acc += t[d_ + k] * reduce_[k][i] % p;
        r.c[i] = static_cast<uint32_t>(acc % p);
    }
    return r;
}

Fe ExtensionField::pow(Fe a, uint64_t e) const
{
    Fe r = one();
    while (e)
    {
        if (e & 1)
            r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

Fe ExtensionField::inv(const Fe& a) const
{
    require(!is_zero(a), "inverse of zero in K");
    return pow(a, q_ - 2);
}

Fe ExtensionField::frobenius(const Fe& x, long j) const
{
    const long dd = static_cast<long>(d_);
    const size_t jj = static_cast<size_t>(((j % dd) + dd) % dd);
    if (jj == 0)
        return x;
    Fe r;
    for (size_t i = 0; i < d_; ++i)
    {
        if (!x.c[i])
            continue;
        r = add(r, mul_scalar(frob_[jj][i], x.c[i]));
    }
    return r;
}

bool ExtensionField::is_square(const Fe& a) const
{
    if (is_zero(a) || zp_.m == 2)
        return true;
    return pow(a, (q_ - 1) / 2) == one();
}

std::optional<Fe> ExtensionField::sqrt(const Fe& a) const
{
    if (is_zero(a))
        return a;
    if (zp_.m == 2)
        return pow(a, q_ / 2);
    if (!is_square(a))
        return std::nullopt;
    // Tonelli-Shanks
    uint64_t t = q_ - 1;
    unsigned s = 0;
    while ((t & 1) == 0)
    {
        t >>= 1;
        ++s;
    }
    Fe nonres;
    for (uint64_t idx = 2;; ++idx)
    {
        nonres = from_index(idx % q_);
        if (!is_zero(nonres) && !is_square(nonres))
            break;
    }
    Fe c = pow(nonres, t);
    Fe x = pow(a, (t + 1) / 2);
    Fe b = pow(a, t);
    unsigned m = s;
    while (b != one())
    {
        unsigned i = 0;
        Fe bb = b;
        while (bb != one())
        {
            bb = sqr(bb);
            ++i;
        }
        Fe f = c;
        for (unsigned k = 0; k + 1 < m - i; ++k)
            f = sqr(f);
        x = mul(x, f);
        c = sqr(f);
        b = mul(b, c);
        m = i;
    }
    return x;
}

Fe ExtensionField::random(Rng& rng) const
{
    Fe r;
    for (size_t i = 0; i < d_; ++i)
        r.c[i] = static_cast<uint32_t>(uniform(rng, zp_.m));
    return r;
}

Fe ExtensionField::random_nonzero(Rng& rng) const
{
    Fe r;
    do
        r = random(rng);
    while (is_zero(r));
    return r;
}

uint64_t ExtensionField::to_index(const Fe& a) const
{
    uint64_t idx = 0;
    for (size_t i = d_; i-- > 0;)
        idx = idx * zp_.m + a.c[i];
    return idx;
}

Fe ExtensionField::from_index(uint64_t idx) const
{
    Fe r;
    for (size_t i = 0; i < d_; ++i)
    {
        r.c[i] = static_cast<uint32_t>(idx % zp_.m);
        idx /= zp_.m;
    }
    return r;
}

Fe ExtensionField::from_coords(const Vec& v) const
{
    require(v.size() == d_, "coordinate vector has wrong length");
    Fe r;
    for (size_t i = 0; i < d_; ++i)
        r.c[i] = v[i] % zp_.m;
    return r;
}

ExtensionField make_extension(uint32_t p, size_t d, uint64_t seed)
{
    require(is_prime(p), "p must be prime");
    require(d >= 1 && d <= max_degree, "extension degree out of range");
    if (d == 1)
        return ExtensionField(p, {0, 1});
    Zmod z{p};
    Rng rng(seed);
    for (;;)
    {
        PolyP f(d + 1, 0);
        f[d] = 1;
        for (size_t i = 0; i < d; ++i)
            f[i] = static_cast<uint32_t>(uniform(rng, p));
        if (f[0] != 0 && is_irreducible(z, f))
            return ExtensionField(p, f);
    }
}

PolyP minimal_polynomial(const ExtensionField& K, const Fe& a)
{
    std::vector<Fe> conj{a};
    for (size_t j = 1; j < K.d(); ++j)
    {
        Fe c = K.frobenius(a, static_cast<long>(j));
        if (c == a)
            break;
        conj.push_back(c);
    }
    // prod (X - c) with coefficients in K
    std::vector<Fe> poly{K.one()};
    for (const auto& c : conj)
    {
        std::vector<Fe> nxt(poly.size() + 1, K.zero());
        for (size_t i = 0; i < poly.size(); ++i)
        {
            nxt[i + 1] = K.add(nxt[i + 1], poly[i]);
            nxt[i] = K.sub(nxt[i], K.mul(poly[i], c));
        }
        poly = std::move(nxt);
    }
    PolyP out;
    for (const auto& c : poly)
    {
        ensure(K.in_prime_field(c), "minimal polynomial left the prime field");
        out.push_back(c.c[0]);
    }
    return out;
}

Basis theta_basis(const ExtensionField& K)
{
    return basis_from_matrix(K, Mat::identity(K.d()));
}

Basis basis_from_matrix(const ExtensionField& K, const Mat& to_theta)
{
    require(to_theta.rows == K.d() && to_theta.cols == K.d(), "conversion table has wrong shape");
    auto inv = inverse(K.zp(), to_theta);
    require(inv.has_value(), "conversion table is singular");
    Basis b;
    b.to_theta = to_theta;
    b.from_theta = *inv;
    for (size_t i = 0; i < K.d(); ++i)
    {
        Fe e;
        for (size_t j = 0; j < K.d(); ++j)
            e.c[j] = to_theta(i, j);
        b.elements.push_back(e);
    }
    return b;
}

Basis basis_from_elements(const ExtensionField& K, const std::vector<Fe>& elems)
{
    require(elems.size() == K.d(), "basis needs d elements");
    Mat t(K.d(), K.d());
    for (size_t i = 0; i < K.d(); ++i)
        for (size_t j = 0; j < K.d(); ++j)
            t(i, j) = elems[i].c[j];
    return basis_from_matrix(K, t);
}

bool is_scalar_multiple_of_theta(const ExtensionField& K, const Basis& b)
{
    // a u_i = theta_i for all i  <=>  u_i = u_0 * w^i
    const Fe& u0 = b.elements[0];
    for (size_t i = 1; i < K.d(); ++i)
        if (b.elements[i] != K.mul(u0, K.theta(i)))
            return false;
    return true;
}

Basis random_basis(const ExtensionField& K, uint64_t seed, bool exclude_scalar_multiples)
{
    Rng rng(seed);
    const size_t d = K.d();
    for (;;)
    {
        Mat t(d, d);
        for (auto& v : t.a)
            v = static_cast<uint32_t>(uniform(rng, K.p()));
        if (!inverse(K.zp(), t))
            continue;
        Basis b = basis_from_matrix(K, t);
        if (exclude_scalar_multiples && d >= 2 && is_scalar_multiple_of_theta(K, b))
            continue;
        return b;
    }
}

Vec coordinates(const ExtensionField& K, const Basis& b, const Fe& x)
{
    // x_theta = c_u * to_theta  =>  c_u = x_theta * from_theta
    const size_t d = K.d();
    Vec out(d, 0);
    for (size_t j = 0; j < d; ++j)
    {
        uint64_t acc = 0;
        for (size_t i = 0; i < d; ++i)
            acc = (acc + uint64_t{x.c[i]} * b.from_theta(i, j)) % K.p();
        out[j] = static_cast<uint32_t>(acc);
    }
    return out;
}

Fe from_coordinates(const ExtensionField& K, const Basis& b, const Vec& coords)
{
    require(coords.size() == K.d(), "coordinate vector has wrong length");
    Fe r;
    for (size_t i = 0; i < K.d(); ++i)
        if (coords[i])
            r = K.add(r, K.mul_scalar(b.elements[i], coords[i]));
    return r;
}

Vec change_basis(const ExtensionField& K, const Vec& x, const Basis& from, const Basis& to)
{
    return coordinates(K, to, from_coordinates(K, from, x));
}
}  // namespace tmap
