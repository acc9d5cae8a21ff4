// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <tmap/algebra.hpp>
#include <tmap/pairing.hpp>

#include <memory>
#include <string>
#include <vector>

namespace tmap
{
struct ProtocolParams
{
    uint32_t p = 7;
    size_t d = 4;
    unsigned g = 2;
    uint32_t ell = 5;
    size_t N = 0;         // degree bound of encodings (default d)
    size_t N1 = 0;        // number of generators (default d^2)
    size_t t = 0;         // sparse terms per encoding (default d^2)
    size_t switches = 0;  // switches per encoding (default d^2)

    bool operator==(const ProtocolParams&) const = default;
};

/// Fills zero fields with defaults and checks the supported envelope.
ProtocolParams normalize_params(ProtocolParams pp);

/// Chart equations of the jacobian (g = 2) in variables (a1, a0, b1, b0):
/// f - b^2 = E_x * x + E_1 mod x^2 + a1 x + a0.
std::vector<MultiPoly> chart_equations(const ExtensionField& K, const KPoly& f);
/// Chart coordinates (a1, a0, b1, b0) of a degree-2 divisor.
std::vector<Fe> chart_point(const Divisor& D);
/// Descent coordinates in chart order, one block of d values per chart variable.
std::vector<Fe> chart_descent_coords(size_t d, const DescentPoint& P);
/// Descent coordinates of the (1, 1, ..., 1) leading slot: identifies chart points.
std::vector<Fe> leading_slot(size_t d, const DescentPoint& P);

struct Trapdoor
{
    ProtocolParams params;
    uint64_t seed = 0;
    PolyP modulus;
    KPoly f;
    u128 order = 0;
    Mat basis_primary;    // u, rows in theta coordinates
    Mat basis_secondary;  // u'
    Divisor a, b;
    Vec v1, v2;  // V_i = v1_i a + v2_i b
    EndoMatrixSet mats;
    Vec lambda_coeffs;
    Vec mu_coeffs;
    size_t curve_attempts = 0;
};

struct MaskedTuple
{
    std::string name;
    BasisTag tag = BasisTag::primary;
    DescentTuple tuple;
};

/// Everything the evaluator programs need. Stands in for obfuscated programs
/// and is only ever read by PublicEvaluator.
struct EvaluatorData
{
    KPoly f;
    Mat basis_primary;
    Mat basis_secondary;
    std::vector<Mat> phi;
};

struct PublicParams
{
    ProtocolParams params;
    PolyP modulus;
    DescentPoint D_alpha_prime;
    DescentPoint D_beta;
    AlgebraElement f_lambda;
    AlgebraElement f_mu;
    std::vector<Relation> relations;
    Fe zeta;
    std::vector<MaskedTuple> masked;
    EvaluatorData evaluators;
};

Trapdoor setup(const ProtocolParams& params, uint64_t seed);
PublicParams publish(const Trapdoor& td);

/// Opaque evaluators for the group law on each descended jacobian, the phi_i
/// and the extended pairing.
class PublicEvaluator
{
public:
    explicit PublicEvaluator(const PublicParams& pp);

    const ExtensionField& field() const { return K_; }
    size_t generators() const { return mats_.size(); }

    DescentPoint add(const DescentPoint& P, const DescentPoint& Q) const;
    DescentPoint neg(const DescentPoint& P) const;
    DescentPoint scalar(uint64_t n, const DescentPoint& P) const;
    DescentPoint phi(size_t i, const DescentPoint& P) const;
    /// phi(gamma)(P) on the primary variety.
    DescentPoint apply(const AlgebraElement& gamma, const DescentPoint& P) const;
    Fe pair(const DescentPoint& Pp, const DescentPoint& Q) const;
    /// Fast ell-torsion check through the published group law.
    bool is_torsion(const DescentPoint& P) const;
    bool is_zero(const DescentPoint& P) const;

private:
    const DescentTable& table(BasisTag tag) const;
    std::vector<Divisor> comps(const DescentPoint& P) const;
    DescentPoint point(const std::vector<Divisor>& c, BasisTag tag) const;
    std::vector<Divisor> apply_matrix_comps(const Mat& M, const std::vector<Divisor>& c) const;

    ExtensionField K_;
    Curve C_;
    uint32_t ell_;
    DescentTable tab_u_, tab_up_;
    std::vector<Mat> mats_;
};

/// Nonzero z with sum z_i M_i v = 0 for v = v1, v2.
std::optional<Vec> find_mu(const EndoMatrixSet& ms, const Vec& v1, const Vec& v2, Rng& rng);
/// Exponent k with E(Lambda V, V) = e(a, b)^k for Lambda = sum c_i M_i.
uint32_t lambda_exponent(const EndoMatrixSet& ms, const Vec& c, const Vec& v1, const Vec& v2);
std::optional<Vec> find_lambda(const EndoMatrixSet& ms, const Vec& v1, const Vec& v2, Rng& rng);

AlgebraElement encode(const PublicParams& pp, uint32_t z, uint64_t seed);
Fe trilinear_eval(const PublicEvaluator& ev, const PublicParams& pp, uint32_t x, uint32_t y,
                  const AlgebraElement& gamma);
bool zero_test(const PublicEvaluator& ev, const PublicParams& pp, const AlgebraElement& gamma);
/// Throws PreconditionError when gamma does not act inside span(V, Lambda V).
uint32_t trapdoor_decode(const Trapdoor& td, const AlgebraElement& gamma);

/// Random words of length < N times f_mu, plus f_lambda: the spanning set of U.
AlgebraElement random_u_element(const PublicParams& pp, Rng& rng);
}  // namespace tmap
