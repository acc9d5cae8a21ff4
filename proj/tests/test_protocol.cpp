// SPDX-License-Identifier: Apache-2.0
#include "helpers.hpp"

#include <tmap/serialize.hpp>

#include <doctest.h>

using namespace tmap;
using namespace tmap::test;

namespace
{
struct Private
{
    ExtensionField K;
    Curve C;
    DescentTable tab_u, tab_up;
};

Private open_trapdoor(const Trapdoor& td)
{
    ExtensionField K(td.params.p, td.modulus);
    Curve C = make_curve(K, td.f);
    DescentTable tu = build_descent_tables(K, basis_from_matrix(K, td.basis_primary));
    DescentTable tup = build_descent_tables(K, basis_from_matrix(K, td.basis_secondary));
    return {K, C, tu, tup};
}

Divisor combo(const Private& s, uint32_t x, const Divisor& a, uint32_t y, const Divisor& b)
{
    return div_add(s.K, s.C, scalar_mul(s.K, s.C, x, a), scalar_mul(s.K, s.C, y, b));
}

// M applied to components with jacobian arithmetic
std::vector<Divisor> matrix_oracle(const Private& s, const Mat& M, const std::vector<Divisor>& c)
{
    std::vector<Divisor> out;
    for (size_t i = 0; i < M.rows; ++i)
    {
        Divisor acc = div_zero(s.K);
        for (size_t j = 0; j < M.cols; ++j)
            acc = div_add(s.K, s.C, acc, scalar_mul(s.K, s.C, M(i, j), c[j]));
        out.push_back(acc);
    }
    return out;
}
}  // namespace

TEST_CASE("parameter envelope")
{
    ProtocolParams p;
    const ProtocolParams n = normalize_params(p);
    CHECK(n.N == 4);
    CHECK(n.N1 == 16);
    CHECK(n.t == 16);
    CHECK(n.switches == 16);
    p.d = 5;
    try
    {
        normalize_params(p);
        FAIL("ell not dividing p^d - 1 was accepted");
    }
    catch (const PreconditionError& e)
    {
        CHECK(std::string(e.what()).find("16806") != std::string::npos);
    }
    ProtocolParams bad;
    bad.d = 3;
    CHECK_THROWS_AS(normalize_params(bad), PreconditionError);
    bad = {};
    bad.p = 9;
    CHECK_THROWS_AS(normalize_params(bad), PreconditionError);
    bad = {};
    bad.g = 3;
    CHECK_THROWS_AS(normalize_params(bad), PreconditionError);
    bad = {};
    bad.ell = 7;
    CHECK_THROWS_AS(normalize_params(bad), PreconditionError);
    bad = {};
    bad.N1 = 8;
    CHECK_THROWS_AS(normalize_params(bad), PreconditionError);
}

TEST_CASE("setup at (7, 4, 5)")
{
    const Instance& in = instance(1);
    const Trapdoor& td = in.td;
    CHECK(2400 % 5 == 0);
    CHECK(td.order % 25 == 0);
    CHECK(td.curve_attempts <= 4000);
    const Private s = open_trapdoor(td);
    CHECK(jacobian_order(s.K, s.C) == td.order);
    CHECK(weil_pairing_retry(s.K, s.C, td.a, td.b, 5) != s.K.one());
    CHECK(in.pp.zeta != s.K.one());
    CHECK(s.K.pow(in.pp.zeta, 5) == s.K.one());
    CHECK(td.mats.mats.size() == 16);
    for (const auto& M : td.mats.mats)
        CHECK(validate_matrix(M));
}

TEST_CASE("setup is deterministic")
{
    ProtocolParams params;
    const Trapdoor t1 = setup(params, 1);
    const std::string pp1 = dump_public_params(publish(t1));
    CHECK(dump_public_params(publish(setup(params, 1))) == pp1);
    CHECK(dump_public_params(publish(t1)) == pp1);
    CHECK(dump_public_params(instance(2).pp) != pp1);
}

TEST_CASE("torsion components")
{
    const Instance& in = instance(1);
    const Trapdoor& td = in.td;
    const Private s = open_trapdoor(td);
    const auto comps = point_components(s.K, s.tab_u, 2, in.pp.D_beta);
    REQUIRE(comps.size() == 4);
    for (size_t i = 0; i < 4; ++i)
        CHECK(comps[i] == combo(s, td.v1[i], td.a, td.v2[i], td.b));
    // not the descent of a single point: the components are not all equal
    bool coherent = true;
    for (size_t i = 1; i < 4; ++i)
        coherent = coherent && comps[i] == comps[0];
    CHECK_FALSE(coherent);

    const DescentPoint zero = in.ev->scalar(0, in.pp.D_beta);
    CHECK(in.ev->is_zero(zero));
    for (const auto& D : point_components(s.K, s.tab_u, 2, zero))
        CHECK(div_is_zero(D));

    Rng rng(4);
    const DescentPoint P = in.pp.D_beta, Q = in.ev->phi(3, in.pp.D_beta);
    const auto cp = point_components(s.K, s.tab_u, 2, P), cq = point_components(s.K, s.tab_u, 2, Q);
    for (int i = 0; i < 50; ++i)
    {
        const uint32_t x = static_cast<uint32_t>(uniform(rng, 5)), y = static_cast<uint32_t>(uniform(rng, 5));
        const DescentPoint R = in.ev->add(in.ev->scalar(x, P), in.ev->scalar(y, Q));
        const auto cr = point_components(s.K, s.tab_u, 2, R);
        for (size_t j = 0; j < 4; ++j)
            CHECK(cr[j] == combo(s, x, cp[j], y, cq[j]));
        CHECK(components_to_point(s.K, s.tab_u, 2, cr, BasisTag::primary) == R);
    }
}

TEST_CASE("phi evaluators match matrix action")
{
    const Instance& in = instance(1);
    const Trapdoor& td = in.td;
    const Private s = open_trapdoor(td);
    const Zmod z{5};
    Rng rng(6);
    DescentPoint P = in.pp.D_beta;
    for (int i = 0; i < 50; ++i)
    {
        const size_t a = uniform(rng, 16), b = uniform(rng, 16);
        const auto cp = point_components(s.K, s.tab_u, 2, P);
        const DescentPoint Pa = in.ev->phi(a, P);
        CHECK(point_components(s.K, s.tab_u, 2, Pa) == matrix_oracle(s, td.mats.mats[a], cp));
        const DescentPoint Pab = in.ev->apply(ae_word({static_cast<uint16_t>(a), static_cast<uint16_t>(b)}), P);
        CHECK(Pab == in.ev->phi(a, in.ev->phi(b, P)));
        CHECK(point_components(s.K, s.tab_u, 2, Pab) ==
              matrix_oracle(s, mat_mul(z, td.mats.mats[a], td.mats.mats[b]), cp));
        CHECK(in.ev->is_torsion(Pab));
        P = in.ev->add(Pa, in.pp.D_beta);
    }
    // 2 I is the doubling map; the zero matrix gives the zero point
    CHECK(matrix_oracle(s, mat_scale(z, Mat::identity(4), 2), point_components(s.K, s.tab_u, 2, in.pp.D_beta)) ==
          point_components(s.K, s.tab_u, 2, in.ev->scalar(2, in.pp.D_beta)));
    CHECK(in.ev->is_zero(in.ev->apply(AlgebraElement{}, in.pp.D_beta)));
}

TEST_CASE("published invariants")
{
    const Instance& in = instance(1);
    const Private s = open_trapdoor(in.td);
    CHECK(in.ev->is_zero(in.ev->apply(in.pp.f_mu, in.pp.D_beta)));
    const DescentPoint D_alpha = in.ev->apply(in.pp.f_lambda, in.pp.D_beta);
    CHECK(point_components(s.K, s.tab_u, 2, D_alpha) == point_components(s.K, s.tab_up, 2, in.pp.D_alpha_prime));
    CHECK(in.pp.D_alpha_prime.tag == BasisTag::secondary);
    CHECK(in.pp.D_beta.tag == BasisTag::primary);

    Rng rng(7);
    const Zmod z{5};
    for (int i = 0; i < 100; ++i)
    {
        Word w(uniform(rng, 4));
        for (auto& c : w)
            c = static_cast<uint16_t>(uniform(rng, 16));
        const AlgebraElement g = ae_mul(z, ae_word(w), in.pp.f_mu);
        CHECK(in.ev->is_zero(in.ev->apply(g, in.pp.D_beta)));
    }
    // psi maps each published relation to zero
    for (const auto& rel : in.pp.relations)
    {
        AlgebraElement r = ae_word({rel.i, rel.j});
        r = ae_add(z, r, ae_word({rel.j, rel.i}, z.neg(rel.r)));
        r = ae_add(z, r, ae_scale(z, ae_linear(z, rel.L), z.neg(1)));
        const Mat P = psi(in.td.mats, r);
        CHECK(P == Mat(4, 4));
        CHECK(mat_vec(z, P, in.td.v1) == Vec(4, 0));
    }
}

TEST_CASE("slot tags are enforced")
{
    const Instance& in = instance(1);
    CHECK_THROWS_AS(in.ev->pair(in.pp.D_beta, in.pp.D_beta), PreconditionError);
    CHECK_THROWS_AS(in.ev->pair(in.pp.D_alpha_prime, in.pp.D_alpha_prime), PreconditionError);
    CHECK_THROWS_AS(in.ev->pair(in.pp.D_beta, in.pp.D_alpha_prime), PreconditionError);
    CHECK_THROWS_AS(in.ev->phi(0, in.pp.D_alpha_prime), PreconditionError);
    CHECK_THROWS_AS(in.ev->add(in.pp.D_beta, in.pp.D_alpha_prime), PreconditionError);
}

TEST_CASE("encode, evaluate, zero test")
{
    const Instance& in = instance(1);
    const PublicParams& pp = in.pp;
    const PublicEvaluator& ev = *in.ev;
    const Fe zeta = pp.zeta;
    const ExtensionField& K = ev.field();

    PublicParams bare = pp;
    bare.params.t = 0;
    bare.params.switches = 0;
    CHECK(encode(bare, 0, 1).terms.empty());
    CHECK(zero_test(ev, pp, encode(bare, 0, 1)));
    CHECK(trilinear_eval(ev, pp, 1, 1, ae_scalar(Zmod{5}, 1)) == zeta);

    const AlgebraElement g3 = encode(pp, 3, 11);
    CHECK(ae_degree(g3) <= pp.params.N);
    CHECK(trilinear_eval(ev, pp, 0, 2, g3) == K.one());
    CHECK(trilinear_eval(ev, pp, 2, 0, g3) == K.one());
    CHECK(trilinear_eval(ev, pp, 2, 3, encode(pp, 4, 5)) == K.pow(zeta, 4));  // 24 = 4 mod 5
    CHECK(trilinear_eval(ev, pp, 1, 1, g3) == trilinear_eval(ev, pp, 1, 1, encode(pp, 3, 12)));

    CHECK(zero_test(ev, pp, encode(pp, 0, 3)));
    for (uint32_t z = 1; z < 5; ++z)
        CHECK_FALSE(zero_test(ev, pp, encode(pp, z, 100 + z)));
    CHECK(zero_test(ev, pp, pp.f_lambda));
    CHECK(zero_test(ev, pp, ae_mul(Zmod{5}, ae_word({2, 7}), pp.f_mu)));

    AlgebraElement too_long = ae_word(Word(pp.params.N + 1, 0));
    CHECK_THROWS_AS(trilinear_eval(ev, pp, 1, 1, too_long), PreconditionError);

    Rng rng(3);
    for (int i = 0; i < 25; ++i)
    {
        const uint32_t x = static_cast<uint32_t>(uniform(rng, 5)), y = static_cast<uint32_t>(uniform(rng, 5)),
                       z = static_cast<uint32_t>(uniform(rng, 5));
        CHECK(trilinear_eval(ev, pp, x, y, encode(pp, z, rng())) == K.pow(zeta, (x * y * z) % 5));
    }
}

TEST_CASE("trapdoor decode")
{
    const Instance& in = instance(1);
    const Zmod zl{5};
    for (uint32_t z = 0; z < 5; ++z)
        for (uint64_t s = 0; s < 5; ++s)
            CHECK(trapdoor_decode(in.td, encode(in.pp, z, s)) == z);
    const AlgebraElement g1 = encode(in.pp, 2, 1), g2 = encode(in.pp, 4, 2);
    CHECK(trapdoor_decode(in.td, ae_add(zl, g1, g2)) == 1);
    CHECK(trapdoor_decode(in.td, ae_scale(zl, g1, 3)) == 1);

    // brute-force discrete log of the public value
    for (uint32_t z = 0; z < 5; ++z)
    {
        const AlgebraElement g = encode(in.pp, z, 40 + z);
        const auto dl = mu_dlog(in.ev->field(), in.pp.zeta, trilinear_eval(*in.ev, in.pp, 1, 1, g), 5);
        REQUIRE(dl.has_value());
        CHECK(*dl == trapdoor_decode(in.td, g));
    }

    // decode is unchanged by every single switch
    Rng rng(9);
    AlgebraElement g = encode(in.pp, 3, 77);
    for (int i = 0; i < 50; ++i)
    {
        apply_random_switch(zl, g, in.pp.relations, rng);
        CHECK(trapdoor_decode(in.td, g) == 3);
    }
}

TEST_CASE("other parameter points")
{
    // 3^4 - 1 = 80 and 11^4 - 1 = 14640 are both divisible by 5
    for (uint32_t p : {3u, 11u})
    {
        const Instance& in = instance(5, p, 4, 5);
        CHECK(in.pp.params.p == p);
        for (uint32_t z = 0; z < 5; ++z)
        {
            const AlgebraElement g = encode(in.pp, z, z);
            CHECK(trapdoor_decode(in.td, g) == z);
            CHECK(trilinear_eval(*in.ev, in.pp, 1, 2, g) == in.ev->field().pow(in.pp.zeta, (2 * z) % 5));
        }
    }
}
