// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace tmap
{
/// Caller violated a documented precondition (bad parameters, wrong shape).
struct PreconditionError : std::invalid_argument
{
    using std::invalid_argument::invalid_argument;
};

/// Malformed serialized input.
struct SchemaError : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

/// An internal identity failed to hold. Always a bug.
struct InvariantError : std::logic_error
{
    using std::logic_error::logic_error;
};

/// A function factor vanished at the evaluation divisor.
struct DegenerateSupport : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

using Rng = std::mt19937_64;
using u128 = unsigned __int128;
using i128 = __int128;

std::string to_string_u128(u128 v);
/// Parses a decimal string; throws SchemaError on malformed input.
u128 parse_u128(const std::string& s);

/// Uniform integer in [0, n). Rejection sampling keeps results identical across
/// standard libraries, unlike std::uniform_int_distribution.
inline uint64_t uniform(Rng& rng, uint64_t n)
{
    if (n <= 1)
        return 0;
    const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t x;
    do
        x = rng();
    while (x >= limit);
    return x % n;
}

/// Derives an independent stream seed from (seed, tag).
inline uint64_t derive_seed(uint64_t seed, uint64_t tag)
{
    uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (tag + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline void require(bool cond, const std::string& what)
{
    if (!cond)
        throw PreconditionError(what);
}

inline void ensure(bool cond, const std::string& what)
{
    if (!cond)
        throw InvariantError(what);
}
}  // namespace tmap
