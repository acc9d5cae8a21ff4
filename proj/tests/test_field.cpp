// SPDX-License-Identifier: Apache-2.0
#include "helpers.hpp"

#include <doctest.h>

using namespace tmap;
using namespace tmap::test;

TEST_CASE("make_extension over F_2 finds the unique irreducible quadratic")
{
    for (uint64_t seed = 0; seed < 5; ++seed)
    {
        const ExtensionField K = make_extension(2, 2, seed);
        CHECK(K.modulus() == PolyP{1, 1, 1});
        CHECK(K.order() == 4);
    }
}

TEST_CASE("degree-one tower is the prime field")
{
    const ExtensionField K = make_extension(11, 1, 3);
    CHECK(K.d() == 1);
    CHECK(K.order() == 11);
    const Basis th = theta_basis(K);
    REQUIRE(th.elements.size() == 1);
    CHECK(th.elements[0] == K.one());
}

TEST_CASE("cubic modulus over F_7 passes a brute-force irreducibility check")
{
    for (uint64_t seed = 0; seed < 10; ++seed)
    {
        const ExtensionField K = make_extension(7, 3, seed);
        CHECK(K.modulus().size() == 4);
        CHECK(brute_force_irreducible(7, K.modulus()));
    }
    CHECK(make_extension(7, 3, 99).modulus() == make_extension(7, 3, 99).modulus());
}

TEST_CASE("non-prime characteristic is rejected")
{
    CHECK_THROWS_AS(make_extension(9, 2, 1), PreconditionError);
    CHECK_THROWS_AS(ExtensionField(7, {6, 0, 1}), PreconditionError);  // x^2 - 1 is reducible
}

TEST_CASE("all invertible 2x2 matrices over F_2 give bases of F_4")
{
    const ExtensionField K = f4();
    const Zmod z{2};
    size_t invertible = 0;
    for (uint32_t bits = 0; bits < 16; ++bits)
    {
        Mat m(2, 2);
        for (size_t e = 0; e < 4; ++e)
            m.a[e] = (bits >> e) & 1;
        if (rank(z, m) < 2)
            continue;
        ++invertible;
        const Basis b = basis_from_matrix(K, m);
        CHECK(mat_mul(z, b.to_theta, b.from_theta) == Mat::identity(2));
        CHECK(b.elements[0] != b.elements[1]);
    }
    CHECK(invertible == 6);

    Mat m(2, 2);
    m(0, 0) = 1;
    m(1, 0) = 1;
    m(1, 1) = 1;
    const Basis b = basis_from_matrix(K, m);
    CHECK(b.elements[0] == K.one());
    CHECK(b.elements[1] == fe(K, {1, 1}));
}

TEST_CASE("identity basis is a scalar multiple of theta and random_basis avoids it")
{
    const ExtensionField K = make_extension(7, 4, 1);
    CHECK(is_scalar_multiple_of_theta(K, theta_basis(K)));
    for (uint64_t seed = 0; seed < 50; ++seed)
    {
        const Basis b = random_basis(K, seed);
        CHECK_FALSE(is_scalar_multiple_of_theta(K, b));
        CHECK(mat_mul(K.zp(), b.to_theta, b.from_theta) == Mat::identity(4));
    }
    // d = 1: every basis is {c} with c != 0
    const ExtensionField k = make_extension(5, 1, 1);
    for (uint64_t seed = 0; seed < 10; ++seed)
        CHECK_FALSE(k.is_zero(random_basis(k, seed).elements[0]));
}

TEST_CASE("frobenius")
{
    const ExtensionField F4 = f4();
    const Fe w = F4.theta(1);
    CHECK(F4.frobenius(w, 1) == naive_pow(F4, w, 2));
    CHECK(F4.frobenius(w, 1) == fe(F4, {1, 1}));

    const ExtensionField K = make_extension(7, 4, 2);
    Rng rng(5);
    for (int i = 0; i < 200; ++i)
    {
        const Fe x = K.random(rng), y = K.random(rng);
        CHECK(K.frobenius(x, 1) == naive_pow(K, x, 7));
        CHECK(K.frobenius(K.frobenius(x, 1), 3) == x);
        CHECK(K.frobenius(x, 4) == x);
        CHECK(K.frobenius(K.mul(x, y), 1) == K.mul(K.frobenius(x, 1), K.frobenius(y, 1)));
        CHECK(K.frobenius(K.add(x, y), 2) == K.add(K.frobenius(x, 2), K.frobenius(y, 2)));
        const Fe c = K.scalar(static_cast<uint32_t>(i % 7));
        CHECK(K.frobenius(c, 1) == c);
    }
}

TEST_CASE("change_basis")
{
    const ExtensionField F4 = f4();
    Mat m(2, 2);
    m(0, 0) = 1;
    m(1, 0) = 1;
    m(1, 1) = 1;
    const Basis b = basis_from_matrix(F4, m);
    const Basis th = theta_basis(F4);
    // oracle: search all coordinate pairs c with c0 * 1 + c1 * (1 + w) = w
    Vec found;
    for (uint32_t c0 = 0; c0 < 2; ++c0)
        for (uint32_t c1 = 0; c1 < 2; ++c1)
            if (F4.add(F4.mul(F4.scalar(c0), b.elements[0]), F4.mul(F4.scalar(c1), b.elements[1])) == F4.theta(1))
                found = {c0, c1};
    CHECK(found == Vec{1, 1});
    CHECK(change_basis(F4, Vec{0, 1}, th, b) == Vec{1, 1});

    const ExtensionField K = make_extension(13, 5, 4);
    const Basis u = random_basis(K, 8), v = random_basis(K, 9);
    CHECK(coordinates(K, u, u.elements[0]) == Vec{1, 0, 0, 0, 0});
    Rng rng(3);
    for (int i = 0; i < 100; ++i)
    {
        const Fe x = K.random(rng);
        const Vec cu = coordinates(K, u, x);
        CHECK(from_coordinates(K, u, cu) == x);
        CHECK(change_basis(K, change_basis(K, cu, u, v), v, u) == cu);
    }
}

TEST_CASE("minimal polynomial")
{
    const ExtensionField F4 = f4();
    CHECK(minimal_polynomial(F4, F4.theta(1)) == PolyP{1, 1, 1});
    const ExtensionField K = make_extension(7, 3, 6);
    CHECK(minimal_polynomial(K, K.scalar(3)) == PolyP{4, 1});  // x - 3
    Rng rng(2);
    int full = 0;
    for (int i = 0; i < 50; ++i)
    {
        const Fe a = K.random(rng);
        const PolyP mp = minimal_polynomial(K, a);
        CHECK(3 % (mp.size() - 1) == 0);
        if (mp.size() != 4)
            continue;
        ++full;
        CHECK(brute_force_irreducible(7, mp));
        for (long j = 0; j < 3; ++j)
        {
            const Fe c = K.frobenius(a, j);
            Fe v = K.zero();
            for (size_t k = mp.size(); k-- > 0;)
                v = K.add(K.mul(v, c), K.scalar(mp[k]));
            CHECK(K.is_zero(v));
        }
    }
    CHECK(full > 40);
}

TEST_CASE("field axioms on random triples")
{
    for (auto [p, d] : {std::pair<uint32_t, size_t>{7, 4}, {31, 6}, {3, 8}})
    {
        const ExtensionField K = make_extension(p, d, 17);
        Rng rng(p * 100 + d);
        for (int i = 0; i < 1000; ++i)
        {
            const Fe a = K.random(rng), b = K.random(rng), c = K.random(rng);
            CHECK(K.mul(K.mul(a, b), c) == K.mul(a, K.mul(b, c)));
            CHECK(K.add(K.add(a, b), c) == K.add(a, K.add(b, c)));
            CHECK(K.mul(a, K.add(b, c)) == K.add(K.mul(a, b), K.mul(a, c)));
            CHECK(K.mul(a, b) == K.mul(b, a));
            CHECK(K.add(a, K.neg(a)) == K.zero());
            if (!K.is_zero(a))
                CHECK(K.mul(a, K.inv(a)) == K.one());
        }
    }
}

TEST_CASE("square roots")
{
    const ExtensionField K = make_extension(7, 4, 3);
    Rng rng(1);
    for (int i = 0; i < 200; ++i)
    {
        const Fe a = K.random(rng);
        const auto s = K.sqrt(K.sqr(a));
        REQUIRE(s.has_value());
        CHECK(K.sqr(*s) == K.sqr(a));
        CHECK(K.is_square(K.sqr(a)));
    }
}
