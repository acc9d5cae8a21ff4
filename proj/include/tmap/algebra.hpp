// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <tmap/zmod.hpp>
#include <tmap/common.hpp>

#include <map>
#include <optional>
#include <vector>

namespace tmap
{
/// Word in the generators z_0 .. z_{N1-1}; phi(w) applies the last letter first.
using Word = std::vector<uint16_t>;

/// Sparse element of the free algebra over F_ell.
struct AlgebraElement
{
    std::map<Word, uint32_t> terms;

    bool operator==(const AlgebraElement&) const = default;
};

AlgebraElement ae_scalar(const Zmod& z, uint32_t c);
AlgebraElement ae_word(const Word& w, uint32_t c = 1);
void ae_add_term(const Zmod& z, AlgebraElement& a, const Word& w, uint32_t c);
AlgebraElement ae_add(const Zmod& z, const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement ae_scale(const Zmod& z, const AlgebraElement& a, uint32_t c);
/// Concatenation product a * b.
AlgebraElement ae_mul(const Zmod& z, const AlgebraElement& a, const AlgebraElement& b);
size_t ae_degree(const AlgebraElement& a);
/// Linear form sum c_i z_i.
AlgebraElement ae_linear(const Zmod& z, const Vec& coeffs);

/// N1 matrices over F_ell, each row with exactly two unit entries whose offset
/// pattern is shared with another row.
struct EndoMatrixSet
{
    size_t d = 0;
    uint32_t ell = 0;
    std::vector<Mat> mats;
};

bool validate_matrix(const Mat& M);
/// Requires d >= 4.
Mat sample_matrix(size_t d, Rng& rng);
EndoMatrixSet sample_matrices(size_t d, size_t n1, uint32_t ell, uint64_t seed);

/// psi: z_i -> M_i.
Mat psi(const EndoMatrixSet& ms, const AlgebraElement& a);

/// M_i M_j = r M_j M_i + sum_k L[k] M_k.
struct Relation
{
    uint16_t i = 0, j = 0;
    uint32_t r = 1;
    Vec L;

    bool operator==(const Relation&) const = default;
};

std::optional<Relation> solve_relation(const EndoMatrixSet& ms, uint16_t i, uint16_t j, Rng& rng);
/// Relations for every solvable pair i < j.
std::vector<Relation> compute_relations(const EndoMatrixSet& ms, uint64_t seed);
bool check_relation(const EndoMatrixSet& ms, const Relation& rel);

/// Rewrites one occurrence of z_i z_j (or z_j z_i, using the inverse direction)
/// in a term of a. Returns false when no published relation applies.
bool apply_random_switch(const Zmod& z, AlgebraElement& a, const std::vector<Relation>& rels, Rng& rng);
}  // namespace tmap
