// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <tmap/common.hpp>
#include <tmap/zmod.hpp>

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

namespace tmap
{
constexpr size_t max_degree = 8;

/// Element of K in coordinates of the power basis theta_i = w^i.
struct Fe
{
    std::array<uint32_t, max_degree> c{};

    auto operator<=>(const Fe&) const = default;
    bool operator==(const Fe&) const = default;
};

/// Polynomial over the prime field, lowest coefficient first.
using PolyP = std::vector<uint32_t>;

PolyP polyp_trim(PolyP f);
PolyP polyp_mulmod(const Zmod& z, const PolyP& a, const PolyP& b, const PolyP& m);
PolyP polyp_mod(const Zmod& z, PolyP a, const PolyP& m);
PolyP polyp_gcd(const Zmod& z, PolyP a, PolyP b);
/// Rabin's test for a monic polynomial.
bool is_irreducible(const Zmod& z, const PolyP& f);

class ExtensionField
{
public:
    /// K = F_p[w]/(modulus). The modulus must be monic and irreducible.
    ExtensionField(uint32_t p, PolyP modulus);

    uint32_t p() const { return zp_.m; }
    size_t d() const { return d_; }
    const Zmod& zp() const { return zp_; }
    const PolyP& modulus() const { return modulus_; }
    /// |K|, which fits in 64 bits for the supported envelope.
    uint64_t order() const { return q_; }

    Fe zero() const { return {}; }
    Fe one() const { return scalar(1); }
    Fe scalar(uint32_t v) const
    {
        Fe r;
        r.c[0] = v % zp_.m;
        return r;
    }
    Fe theta(size_t i) const;

    bool is_zero(const Fe& a) const { return a == Fe{}; }
    bool in_prime_field(const Fe& a) const;

    Fe add(const Fe& a, const Fe& b) const;
    Fe sub(const Fe& a, const Fe& b) const;
    Fe neg(const Fe& a) const;
    Fe mul(const Fe& a, const Fe& b) const;
    Fe mul_scalar(const Fe& a, uint32_t s) const;
    Fe sqr(const Fe& a) const { return mul(a, a); }
    Fe pow(Fe a, uint64_t e) const;
    Fe inv(const Fe& a) const;
    Fe div(const Fe& a, const Fe& b) const { return mul(a, inv(b)); }

    /// x^(p^j); any integer j, taken modulo d.
    Fe frobenius(const Fe& x, long j) const;

    bool is_square(const Fe& a) const;
    std::optional<Fe> sqrt(const Fe& a) const;

    Fe random(Rng& rng) const;
    Fe random_nonzero(Rng& rng) const;

    uint64_t to_index(const Fe& a) const;
    Fe from_index(uint64_t idx) const;

    Vec coords(const Fe& a) const { return Vec(a.c.begin(), a.c.begin() + d_); }
    Fe from_coords(const Vec& v) const;

private:
    Zmod zp_;
    size_t d_;
    PolyP modulus_;
    uint64_t q_;
    bool small_;
    // reduce_[k] = w^(d+k) in theta coordinates
    std::vector<std::array<uint32_t, max_degree>> reduce_;
    // frob_[j][i] = sigma^j(w^i) in theta coordinates
    std::vector<std::vector<Fe>> frob_;
};

/// Randomized search for an irreducible modulus; deterministic for a seed.
ExtensionField make_extension(uint32_t p, size_t d, uint64_t seed);

/// Minimal polynomial over the prime field (monic, lowest coefficient first).
PolyP minimal_polynomial(const ExtensionField& K, const Fe& a);

/// A basis of K over k viewed through its conversion table.
struct Basis
{
    std::vector<Fe> elements;  // u_i in theta coordinates
    Mat to_theta;              // row i = coordinates of u_i
    Mat from_theta;            // inverse of to_theta

    bool operator==(const Basis& o) const { return to_theta == o.to_theta; }
};

Basis theta_basis(const ExtensionField& K);
Basis basis_from_matrix(const ExtensionField& K, const Mat& to_theta);
Basis basis_from_elements(const ExtensionField& K, const std::vector<Fe>& elems);
/// True when a * (u_i) = (theta_i) for some a in K.
bool is_scalar_multiple_of_theta(const ExtensionField& K, const Basis& b);
/// Uniform random basis; for d >= 2 scalar multiples of theta are resampled.
Basis random_basis(const ExtensionField& K, uint64_t seed, bool exclude_scalar_multiples = true);

/// Coordinates of x in basis b.
Vec coordinates(const ExtensionField& K, const Basis& b, const Fe& x);
Fe from_coordinates(const ExtensionField& K, const Basis& b, const Vec& coords);
Vec change_basis(const ExtensionField& K, const Vec& x, const Basis& from, const Basis& to);
}  // namespace tmap
