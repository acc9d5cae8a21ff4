// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <tmap/multipoly.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace tmap
{
using KMat = std::vector<std::vector<Fe>>;

/// Descent tables of a basis: products of basis elements in basis coordinates,
/// plus the conjugation matrices used by rho.
struct DescentTable
{
    Basis basis;
    size_t d = 0;
    size_t kmax = 2;
    // orders[k-2][i_1 * d^{k-1} + ... + i_k] = coordinates of u_{i_1} ... u_{i_k}
    std::vector<std::vector<Vec>> orders;
    // frob_u[f][i * d + j] = coordinates of sigma^f(u_i) * u_j (frob_u[0] is Delta)
    std::vector<std::vector<Vec>> frob_u;
    KMat R;     // R[i][j] = sigma^i(u_j)
    KMat Rinv;  // inverse of R over K

    const Vec& delta(size_t i, size_t j) const { return orders[0][i * d + j]; }
};

DescentTable build_descent_tables(const ExtensionField& K, const Basis& basis, size_t kmax = 2);
/// Coordinates of u_{i_1} ... u_{i_k} via the order-2 recurrence.
Vec delta_product(const ExtensionField& K, const DescentTable& t, const std::vector<size_t>& idx);

/// d polynomials over k in n*d variables; variable y_{v,j} has index v*d + j.
using DescentTuple = std::vector<MultiPoly>;
inline size_t yvar(size_t v, size_t j, size_t d) { return v * d + j; }

DescentTuple global_descent(const ExtensionField& K, const MultiPoly& F, const DescentTable& t);
std::vector<MultiPoly> descend_variety(const ExtensionField& K, const std::vector<MultiPoly>& gens,
                                       const DescentTable& t);
/// Evaluates a tuple at a point with coordinates in K.
std::vector<Fe> eval_tuple(const ExtensionField& K, const DescentTuple& t, const std::vector<Fe>& y);
/// Sum_i f_i u_i for a tuple value.
Fe tuple_value_in_K(const ExtensionField& K, const Basis& b, const std::vector<Fe>& vals);

Vec descend_point(const ExtensionField& K, const Basis& b, const std::vector<Fe>& alpha);
std::vector<Fe> ascend_point(const ExtensionField& K, const Basis& b, const Vec& y);
/// delta for descent coordinates over K: sum_j y_j u_j per variable block.
std::vector<Fe> delta_map(const ExtensionField& K, const Basis& b, const std::vector<Fe>& y);

/// rho on one variable block: (sum_j x_j sigma^i(u_j))_i, and its inverse.
std::vector<Fe> rho(const ExtensionField& K, const DescentTable& t, const std::vector<Fe>& x);
std::vector<Fe> rho_inv(const ExtensionField& K, const DescentTable& t, const std::vector<Fe>& v);
/// Component i = sigma^{-i}(rho(x)_i) = sum_j sigma^{-i}(x_j) u_j, and its inverse.
std::vector<Fe> twisted_components(const ExtensionField& K, const DescentTable& t, const std::vector<Fe>& x);
std::vector<Fe> from_twisted_components(const ExtensionField& K, const DescentTable& t,
                                        const std::vector<Fe>& comps);

/// Gamma_a: row i holds the coordinates of a * u_i.
Mat gamma_matrix(const ExtensionField& K, const Basis& b, const Fe& a);
/// out_j = sum_i M(j, i) t_i.
DescentTuple apply_matrix(const ExtensionField& K, const Mat& M, const DescentTuple& t);

/// Aggregated exponent of a y-monomial per K-variable.
Monomial block_key(const Monomial& ym, size_t d);
/// Restriction of a tuple to the monomials of one block.
DescentTuple restrict_to_block(const DescentTuple& t, const Monomial& key, size_t d);
std::vector<Monomial> block_keys(const DescentTuple& t, size_t d);

/// F with global_descent(F) = t, if one exists (untagged F).
std::optional<MultiPoly> is_global_descent(const ExtensionField& K, const DescentTuple& t, const DescentTable& tab);

struct BlockFinding
{
    Monomial key;
    std::optional<Fe> coeff;  // set when the block is a global descent
};
/// Per-key descent images reused across scans against one table.
struct BlockCache
{
    std::map<Monomial, std::vector<DescentTuple>> images;
};

/// Examines every nonconstant block.
std::vector<BlockFinding> scan_blocks(const ExtensionField& K, const DescentTuple& t, const DescentTable& tab,
                                      BlockCache* cache = nullptr);

struct Recovery
{
    bool ok = false;
    std::string failure;
    Basis basis;  // a scalar multiple of a Galois conjugate of the hidden basis
    MultiPoly F;  // global_descent(F, basis) reproduces the input
};
/// Uncovers a descent basis from the descent of a vital term. Throws
/// PreconditionError when no block of t is vital.
Recovery recover_basis_from_descent(const ExtensionField& K, const DescentTuple& t, uint64_t seed = 1);

struct MaskResult
{
    bool ok = false;
    std::string failure;
    DescentTuple tuple;
    size_t rounds = 0;
};
/// Adds Gamma * (descent of ideal elements) until no block is a global descent.
/// forced_gamma replaces the random Gamma (negative-control hook).
MaskResult mask_tuple(const ExtensionField& K, const DescentTuple& t, const std::vector<MultiPoly>& ideal_gens,
                      const DescentTable& tab, uint64_t seed, const Mat* forced_gamma = nullptr);

/// Small dense linear algebra over K.
std::optional<KMat> kmat_inverse(const ExtensionField& K, const KMat& m);
std::vector<Fe> kmat_vec(const ExtensionField& K, const KMat& m, const std::vector<Fe>& v);
}  // namespace tmap
