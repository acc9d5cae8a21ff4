// SPDX-License-Identifier: Apache-2.0
#include <tmap/jacobian.hpp>

namespace tmap
{
uint64_t count_points(const ExtensionField& K, const KPoly& f)
{
    uint64_t n = K.order() + 1;
    int64_t chi_sum = 0;
    for (uint64_t i = 0; i < K.order(); ++i)
    {
        const Fe v = kp_eval(K, f, K.from_index(i));
        if (!K.is_zero(v))
            chi_sum += K.is_square(v) ? 1 : -1;
    }
    return static_cast<uint64_t>(static_cast<int64_t>(n) + chi_sum);
}

uint64_t count_points_quadratic(const ExtensionField& K, const KPoly& f)
{
    const uint64_t q = K.order();
    require(q <= 12000, "field too large for direct quadratic-extension counting");
    // quadratic character table on K
    std::vector<int8_t> chi(q);
    Fe nonsq;
    bool have_nonsq = false;
    for (uint64_t i = 0; i < q; ++i)
    {
        const Fe v = K.from_index(i);
        chi[i] = K.is_zero(v) ? 0 : (K.is_square(v) ? 1 : -1);
        if (chi[i] < 0 && !have_nonsq)
        {
            nonsq = v;
            have_nonsq = true;
        }
    }
    ensure(have_nonsq, "no nonsquare in K");
    // K_2 = K(t), t^2 = nonsq; chi_{K_2}(z) = chi_K(N(z)).
    auto mul2 = [&](const Fe& x0, const Fe& x1, const Fe& y0, const Fe& y1, Fe& r0, Fe& r1) {
        r0 = K.add(K.mul(x0, y0), K.mul(nonsq, K.mul(x1, y1)));
        r1 = K.add(K.mul(x0, y1), K.mul(x1, y0));
    };
    int64_t chi_sum = 0;
    // x1 = 0: f(x) in K is a square in K_2
    for (uint64_t i = 0; i < q; ++i)
        if (!K.is_zero(kp_eval(K, f, K.from_index(i))))
            ++chi_sum;
    // x1 != 0: f(x0 - x1 t) is the conjugate of f(x0 + x1 t), same norm
    for (uint64_t j = 1; j < q; ++j)
    {
        const Fe x1 = K.from_index(j);
        if (K.to_index(K.neg(x1)) < j)
            continue;
        for (uint64_t i = 0; i < q; ++i)
        {
            const Fe x0 = K.from_index(i);
            Fe r0 = f.back(), r1{};
            for (size_t k = f.size() - 1; k-- > 0;)
            {
                Fe t0, t1;
                mul2(r0, r1, x0, x1, t0, t1);
                r0 = K.add(t0, f[k]);
                r1 = t1;
            }
            const Fe norm = K.sub(K.sqr(r0), K.mul(nonsq, K.sqr(r1)));
            chi_sum += 2 * chi[K.to_index(norm)];
        }
    }
    return static_cast<uint64_t>(static_cast<int64_t>(q * q + 1) + chi_sum);
}

LPolyG2 lpoly_from_counts(u128 q, u128 n1, u128 n2)
{
    const i128 s1 = static_cast<i128>(q + 1) - static_cast<i128>(n1);
    const i128 s2 = static_cast<i128>(q * q + 1) - static_cast<i128>(n2);
    ensure((s1 * s1 - s2) % 2 == 0, "inconsistent point counts");
    return {-s1, (s1 * s1 - s2) / 2, q};
}

LPolyG2 lpoly_lift(const LPolyG2& L, unsigned n)
{
    require(n >= 1, "extension degree must be positive");
    const i128 q = static_cast<i128>(L.q);
    const i128 e[5] = {1, -L.a1, L.a2, -q * L.a1, q * q};
    std::vector<i128> s(2 * n + 1, 0);
    for (unsigned k = 1; k <= 2 * n; ++k)
    {
        i128 acc = 0;
        for (unsigned i = 1; i <= 4 && i < k; ++i)
            acc += ((i % 2) ? 1 : -1) * e[i] * s[k - i];
        if (k <= 4)
            acc += ((k % 2) ? 1 : -1) * static_cast<i128>(k) * e[k];
        s[k] = acc;
    }
    u128 Q = 1;
    for (unsigned i = 0; i < n; ++i)
        Q *= L.q;
    const i128 S1 = s[n], S2 = s[2 * n];
    return {-S1, (S1 * S1 - S2) / 2, Q};
}

u128 lpoly_order(const LPolyG2& L)
{
    const i128 q = static_cast<i128>(L.q);
    const i128 v = 1 + L.a1 + L.a2 + q * L.a1 + q * q;
    ensure(v > 0, "nonpositive group order");
    return static_cast<u128>(v);
}

u128 jacobian_order(const ExtensionField& K, const Curve& C)
{
    require(C.g == 2, "group order is only implemented for genus 2");
    const uint64_t n1 = count_points(K, C.f);
    const uint64_t n2 = count_points_quadratic(K, C.f);
    return lpoly_order(lpoly_from_counts(K.order(), n1, n2));
}

u128 jacobian_order_prime_model(uint32_t p, const PolyP& f0, unsigned n)
{
    require(f0.size() == 6, "genus-2 model needs a degree-5 polynomial");
    const ExtensionField k1(p, {0, 1});
    const ExtensionField k2 = make_extension(p, 2, 1);
    KPoly f1, f2;
    for (auto c : f0)
    {
        f1.push_back(k1.scalar(c));
        f2.push_back(k2.scalar(c));
    }
    const LPolyG2 L = lpoly_from_counts(p, count_points(k1, f1), count_points(k2, f2));
    return lpoly_order(lpoly_lift(L, n));
}
}  // namespace tmap
