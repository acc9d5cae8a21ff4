// SPDX-License-Identifier: Apache-2.0
#include <tmap/algebra.hpp>

#include <algorithm>
#include <numeric>

namespace tmap
{
AlgebraElement ae_scalar(const Zmod& z, uint32_t c)
{
    AlgebraElement a;
    ae_add_term(z, a, {}, c);
    return a;
}

AlgebraElement ae_word(const Word& w, uint32_t c)
{
    AlgebraElement a;
    if (c)
        a.terms.emplace(w, c);
    return a;
}

void ae_add_term(const Zmod& z, AlgebraElement& a, const Word& w, uint32_t c)
{
    c %= z.m;
    if (c == 0)
        return;
    auto [it, inserted] = a.terms.emplace(w, c);
    if (!inserted)
    {
        it->second = z.add(it->second, c);
        if (it->second == 0)
            a.terms.erase(it);
    }
}

AlgebraElement ae_add(const Zmod& z, const AlgebraElement& a, const AlgebraElement& b)
{
    AlgebraElement r = a;
    for (const auto& [w, c] : b.terms)
        ae_add_term(z, r, w, c);
    return r;
}

AlgebraElement ae_scale(const Zmod& z, const AlgebraElement& a, uint32_t c)
{
    AlgebraElement r;
    for (const auto& [w, v] : a.terms)
        ae_add_term(z, r, w, z.mul(v, c));
    return r;
}

AlgebraElement ae_mul(const Zmod& z, const AlgebraElement& a, const AlgebraElement& b)
{
    AlgebraElement r;
    for (const auto& [wa, ca] : a.terms)
        for (const auto& [wb, cb] : b.terms)
        {
            Word w = wa;
            w.insert(w.end(), wb.begin(), wb.end());
            ae_add_term(z, r, w, z.mul(ca, cb));
        }
    return r;
}

size_t ae_degree(const AlgebraElement& a)
{
    size_t d = 0;
    for (const auto& [w, c] : a.terms)
        d = std::max(d, w.size());
    return d;
}

AlgebraElement ae_linear(const Zmod& z, const Vec& coeffs)
{
    AlgebraElement r;
    for (size_t i = 0; i < coeffs.size(); ++i)
        ae_add_term(z, r, {static_cast<uint16_t>(i)}, coeffs[i]);
    return r;
}

namespace
{
// Offsets (i - i1, i - i2) of the two entries of row i, larger offset first.
std::optional<std::pair<long, long>> row_offsets(const Mat& M, size_t i)
{
    std::vector<long> cols;
    for (size_t j = 0; j < M.cols; ++j)
        if (M(i, j))
            cols.push_back(static_cast<long>(j));
    if (cols.size() != 2)
        return std::nullopt;
    const long r = static_cast<long>(i);
    return std::make_pair(r - cols[0], r - cols[1]);
}
}  // namespace

bool validate_matrix(const Mat& M)
{
    if (M.rows != M.cols)
        return false;
    std::vector<std::pair<long, long>> offs;
    for (size_t i = 0; i < M.rows; ++i)
    {
        auto o = row_offsets(M, i);
        if (!o)
            return false;
        offs.push_back(*o);
    }
    for (size_t i = 0; i < M.rows; ++i)
    {
        bool partner = false;
        for (size_t j = 0; j < M.rows && !partner; ++j)
            partner = j != i && offs[j] == offs[i];
        if (!partner)
            return false;
    }
    return true;
}

Mat sample_matrix(size_t d, Rng& rng)
{
    require(d >= 4, "matrix sampling needs d >= 4");
    for (;;)
    {
        // random partition of the rows into groups of size 2 or 3 with span <= d - 2
        std::vector<size_t> perm(d);
        std::iota(perm.begin(), perm.end(), 0);
        for (size_t i = d; i > 1; --i)
            std::swap(perm[i - 1], perm[uniform(rng, i)]);
        std::vector<std::vector<size_t>> groups;
        size_t pos = 0;
        while (pos < d)
        {
            size_t left = d - pos;
            size_t take = left <= 3 ? left : (left == 4 ? 2 : 2 + uniform(rng, 2));
            groups.emplace_back(perm.begin() + pos, perm.begin() + pos + take);
            pos += take;
        }
        Mat M(d, d);
        bool ok = true;
        for (const auto& grp : groups)
        {
            const long lo = static_cast<long>(*std::min_element(grp.begin(), grp.end()));
            const long hi = static_cast<long>(*std::max_element(grp.begin(), grp.end()));
            if (hi - lo > static_cast<long>(d) - 2)
            {
                ok = false;
                break;
            }
            // offsets o with i - o in [0, d) for every row i of the group
            const long omin = hi - static_cast<long>(d) + 1, omax = lo;
            const long span = omax - omin + 1;
            const long o1 = omin + static_cast<long>(uniform(rng, span));
            long o2;
            do
                o2 = omin + static_cast<long>(uniform(rng, span));
            while (o2 == o1);
            for (size_t i : grp)
            {
                M(i, static_cast<size_t>(static_cast<long>(i) - o1)) = 1;
                M(i, static_cast<size_t>(static_cast<long>(i) - o2)) = 1;
            }
        }
        if (ok)
        {
            ensure(validate_matrix(M), "sampled matrix fails validation");
            return M;
        }
    }
}

EndoMatrixSet sample_matrices(size_t d, size_t n1, uint32_t ell, uint64_t seed)
{
    require(is_prime(ell), "ell must be prime");
    Rng rng(seed);
    EndoMatrixSet ms{d, ell, {}};
    for (size_t i = 0; i < n1; ++i)
        ms.mats.push_back(sample_matrix(d, rng));
    return ms;
}

Mat psi(const EndoMatrixSet& ms, const AlgebraElement& a)
{
    const Zmod z{ms.ell};
    Mat acc(ms.d, ms.d);
    for (const auto& [w, c] : a.terms)
    {
        Mat m = Mat::identity(ms.d);
        for (auto letter : w)
        {
            require(letter < ms.mats.size(), "word uses an unknown generator");
            m = mat_mul(z, m, ms.mats[letter]);
        }
        acc = mat_add(z, acc, mat_scale(z, m, c));
    }
    return acc;
}

std::optional<Relation> solve_relation(const EndoMatrixSet& ms, uint16_t i, uint16_t j, Rng& rng)
{
    const Zmod z{ms.ell};
    const size_t d = ms.d, n1 = ms.mats.size();
    const Mat ij = mat_mul(z, ms.mats[i], ms.mats[j]);
    const Mat ji = mat_mul(z, ms.mats[j], ms.mats[i]);
    if (ij == ji)
        return Relation{i, j, 1, Vec(n1, 0)};
    Mat A(d * d, n1);
    for (size_t k = 0; k < n1; ++k)
        for (size_t e = 0; e < d * d; ++e)
            A(e, k) = ms.mats[k].a[e];
    const auto kernel = nullspace(z, A);
    // try r values in random order
    std::vector<uint32_t> rs(ms.ell - 1);
    std::iota(rs.begin(), rs.end(), 1u);
    for (size_t t = rs.size(); t > 1; --t)
        std::swap(rs[t - 1], rs[uniform(rng, t)]);
    for (uint32_t r : rs)
    {
        Vec rhs(d * d);
        for (size_t e = 0; e < d * d; ++e)
            rhs[e] = z.sub(ij.a[e], z.mul(r, ji.a[e]));
        auto sol = solve(z, A, rhs);
        if (!sol)
            continue;
        Vec L = *sol;
        for (const auto& kv : kernel)
        {
            const uint32_t c = static_cast<uint32_t>(uniform(rng, ms.ell));
            for (size_t k = 0; k < n1; ++k)
                L[k] = z.add(L[k], z.mul(c, kv[k]));
        }
        return Relation{i, j, r, L};
    }
    return std::nullopt;
}

std::vector<Relation> compute_relations(const EndoMatrixSet& ms, uint64_t seed)
{
    Rng rng(seed);
    std::vector<Relation> out;
    for (uint16_t i = 0; i < ms.mats.size(); ++i)
        for (uint16_t j = i + 1; j < ms.mats.size(); ++j)
            if (auto rel = solve_relation(ms, i, j, rng))
                out.push_back(std::move(*rel));
    return out;
}

bool check_relation(const EndoMatrixSet& ms, const Relation& rel)
{
    const Zmod z{ms.ell};
    if (rel.i >= ms.mats.size() || rel.j >= ms.mats.size() || rel.L.size() != ms.mats.size())
        return false;
    Mat rhs = mat_scale(z, mat_mul(z, ms.mats[rel.j], ms.mats[rel.i]), rel.r);
    for (size_t k = 0; k < rel.L.size(); ++k)
        if (rel.L[k])
            rhs = mat_add(z, rhs, mat_scale(z, ms.mats[k], rel.L[k]));
    return mat_mul(z, ms.mats[rel.i], ms.mats[rel.j]) == rhs;
}

bool apply_random_switch(const Zmod& z, AlgebraElement& a, const std::vector<Relation>& rels, Rng& rng)
{
    struct Site
    {
        const Word* w;
        size_t pos;
        const Relation* rel;
        bool forward;
    };
    std::vector<Site> sites;
    for (const auto& [w, c] : a.terms)
        for (size_t pos = 0; pos + 1 < w.size(); ++pos)
            for (const auto& rel : rels)
            {
                if (rel.r == 0)
                    continue;
                if (w[pos] == rel.i && w[pos + 1] == rel.j)
                    sites.push_back({&w, pos, &rel, true});
                else if (w[pos] == rel.j && w[pos + 1] == rel.i)
                    sites.push_back({&w, pos, &rel, false});
            }
    if (sites.empty())
        return false;
    const Site s = sites[uniform(rng, sites.size())];
    const Word w = *s.w;
    const uint32_t c = a.terms.at(w);
    a.terms.erase(w);
    Word head(w.begin(), w.begin() + static_cast<long>(s.pos));
    Word tail(w.begin() + static_cast<long>(s.pos) + 2, w.end());
    auto with_middle = [&](const Word& mid) {
        Word r = head;
        r.insert(r.end(), mid.begin(), mid.end());
        r.insert(r.end(), tail.begin(), tail.end());
        return r;
    };
    const Relation& rel = *s.rel;
    if (s.forward)
    {
        // z_i z_j -> r z_j z_i + sum L_k z_k
        ae_add_term(z, a, with_middle({rel.j, rel.i}), z.mul(c, rel.r));
        for (size_t k = 0; k < rel.L.size(); ++k)
            ae_add_term(z, a, with_middle({static_cast<uint16_t>(k)}), z.mul(c, rel.L[k]));
    }
    else
    {
        // z_j z_i -> r^{-1} z_i z_j - r^{-1} sum L_k z_k
        const uint32_t rinv = z.inv(rel.r);
        ae_add_term(z, a, with_middle({rel.i, rel.j}), z.mul(c, rinv));
        for (size_t k = 0; k < rel.L.size(); ++k)
            ae_add_term(z, a, with_middle({static_cast<uint16_t>(k)}), z.neg(z.mul(c, z.mul(rinv, rel.L[k]))));
    }
    return true;
}
}  // namespace tmap
