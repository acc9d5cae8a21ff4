// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <tmap/protocol.hpp>

#include <map>
#include <memory>

namespace tmap::test
{
inline ExtensionField f4()
{
    return ExtensionField(2, {1, 1, 1});
}

inline Fe fe(const ExtensionField& K, std::initializer_list<uint32_t> coords)
{
    return K.from_coords(Vec(coords));
}

/// Naive power by repeated multiplication, independent of the Frobenius tables.
inline Fe naive_pow(const ExtensionField& K, const Fe& x, uint64_t e)
{
    Fe r = K.one();
    for (uint64_t i = 0; i < e; ++i)
        r = K.mul(r, x);
    return r;
}

/// True when f (over F_p, monic) has no monic factor of degree <= deg f / 2,
/// by trial division over every monic candidate.
inline bool brute_force_irreducible(uint32_t p, const PolyP& f)
{
    const Zmod z{p};
    const size_t n = f.size() - 1;
    for (size_t k = 1; k <= n / 2; ++k)
    {
        uint64_t count = 1;
        for (size_t i = 0; i < k; ++i)
            count *= p;
        for (uint64_t idx = 0; idx < count; ++idx)
        {
            PolyP g(k + 1, 0);
            g[k] = 1;
            uint64_t t = idx;
            for (size_t i = 0; i < k; ++i)
            {
                g[i] = static_cast<uint32_t>(t % p);
                t /= p;
            }
            if (polyp_mod(z, f, g).empty())
                return false;
        }
    }
    return true;
}

/// Protocol instances are expensive enough to share inside one test binary.
struct Instance
{
    Trapdoor td;
    PublicParams pp;
    std::unique_ptr<PublicEvaluator> ev;
};

inline const Instance& instance(uint64_t seed, uint32_t p = 7, size_t d = 4, uint32_t ell = 5)
{
    static std::map<std::tuple<uint64_t, uint32_t, size_t, uint32_t>, std::unique_ptr<Instance>> cache;
    auto& slot = cache[{seed, p, d, ell}];
    if (!slot)
    {
        ProtocolParams params;
        params.p = p;
        params.d = d;
        params.ell = ell;
        slot = std::make_unique<Instance>();
        slot->td = setup(params, seed);
        slot->pp = publish(slot->td);
        slot->ev = std::make_unique<PublicEvaluator>(slot->pp);
    }
    return *slot;
}
}  // namespace tmap::test
