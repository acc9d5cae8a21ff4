// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <tmap/field.hpp>

#include <map>
#include <vector>

namespace tmap
{
/// x_1^e_1 ... x_n^e_n where variable i may carry a Frobenius tag f_i, meaning it
/// enters as sigma^{f_i}(x_i). Tags are zero wherever the exponent is zero.
struct Monomial
{
    std::vector<uint16_t> exps;
    std::vector<uint8_t> frob;

    auto operator<=>(const Monomial&) const = default;
    bool operator==(const Monomial&) const = default;
    unsigned degree() const;
    bool is_constant() const { return degree() == 0; }
};

Monomial monomial_one(size_t nvars);
Monomial monomial_mul(const Monomial& a, const Monomial& b);
/// True when a divides b (same tags on shared variables).
bool monomial_divides(const Monomial& a, const Monomial& b);
Monomial monomial_div(const Monomial& b, const Monomial& a);

/// Sparse polynomial with coefficients in K (or k embedded in K).
struct MultiPoly
{
    size_t nvars = 0;
    std::map<Monomial, Fe> terms;

    bool operator==(const MultiPoly&) const = default;
    bool is_zero() const { return terms.empty(); }
};

MultiPoly mp_zero(size_t nvars);
MultiPoly mp_const(size_t nvars, const Fe& c);
MultiPoly mp_var(const ExtensionField& K, size_t nvars, size_t i, uint8_t frob = 0);
MultiPoly mp_term(size_t nvars, const Monomial& m, const Fe& c);

void mp_add_term(const ExtensionField& K, MultiPoly& f, const Monomial& m, const Fe& c);
MultiPoly mp_add(const ExtensionField& K, const MultiPoly& a, const MultiPoly& b);
MultiPoly mp_sub(const ExtensionField& K, const MultiPoly& a, const MultiPoly& b);
MultiPoly mp_scale(const ExtensionField& K, const MultiPoly& a, const Fe& c);
MultiPoly mp_mul(const ExtensionField& K, const MultiPoly& a, const MultiPoly& b);
MultiPoly mp_pow(const ExtensionField& K, const MultiPoly& a, unsigned e);
unsigned mp_total_degree(const MultiPoly& a);
bool mp_over_prime_field(const ExtensionField& K, const MultiPoly& a);
bool mp_has_tags(const MultiPoly& a);

/// Evaluation at a point of K^n; tagged variables see sigma^f of the coordinate.
Fe mp_eval(const ExtensionField& K, const MultiPoly& a, const std::vector<Fe>& x);
/// Evaluation of a polynomial over k at a k-point.
uint32_t mp_eval_k(const ExtensionField& K, const MultiPoly& a, const Vec& x);
/// Partial derivative in variable i (untagged polynomials only).
MultiPoly mp_derivative(const ExtensionField& K, const MultiPoly& a, size_t i);

/// Random polynomial with the given number of terms and degree bound.
MultiPoly mp_random(const ExtensionField& K, size_t nvars, unsigned max_deg, size_t nterms, Rng& rng,
                    bool prime_field_coeffs = false);
}  // namespace tmap
