// SPDX-License-Identifier: Apache-2.0
#include <tmap/descent.hpp>
#include <tmap/kpoly.hpp>

#include <algorithm>
#include <set>

namespace tmap
{
namespace
{
// Working representation for polynomials over k during descent.
using KP = std::map<std::vector<uint16_t>, uint32_t>;

void kp_add_to(const Zmod& z, KP& f, const std::vector<uint16_t>& m, uint32_t c)
{
    if (c == 0)
        return;
    auto [it, inserted] = f.emplace(m, c);
    if (!inserted)
    {
        it->second = z.add(it->second, c);
        if (it->second == 0)
            f.erase(it);
    }
}

MultiPoly to_multipoly(const ExtensionField& K, const KP& f, size_t nvars)
{
    MultiPoly r{nvars, {}};
    for (const auto& [e, c] : f)
    {
        Monomial m{e, std::vector<uint8_t>(nvars, 0)};
        r.terms.emplace_hint(r.terms.end(), std::move(m), K.scalar(c));
    }
    return r;
}

// Descent of one term c * prod sigma^{f_v}(x_v)^{e_v}.
void descend_term(const ExtensionField& K, const DescentTable& tab, const Monomial& m, const Fe& c,
                  std::vector<KP>& out)
{
    const Zmod& z = K.zp();
    const size_t d = tab.d;
    const size_t n = m.exps.size();
    std::vector<KP> P(d);
    const Vec cc = coordinates(K, tab.basis, c);
    const std::vector<uint16_t> one(n * d, 0);
    for (size_t s = 0; s < d; ++s)
        kp_add_to(z, P[s], one, cc[s]);
    for (size_t v = 0; v < n; ++v)
    {
        const auto& T = tab.frob_u[m.frob[v] % d];
        for (unsigned rep = 0; rep < m.exps[v]; ++rep)
        {
            std::vector<KP> Q(d);
            for (size_t j = 0; j < d; ++j)
                for (const auto& [mono, coef] : P[j])
                    for (size_t i = 0; i < d; ++i)
                    {
                        auto nm = mono;
                        nm[yvar(v, i, d)] += 1;
                        const Vec& prod = T[i * d + j];
                        for (size_t s = 0; s < d; ++s)
                            if (prod[s])
                                kp_add_to(z, Q[s], nm, z.mul(coef, prod[s]));
                    }
            P = std::move(Q);
        }
    }
    for (size_t s = 0; s < d; ++s)
        for (const auto& [mono, coef] : P[s])
            kp_add_to(z, out[s], mono, coef);
}

Mat random_gl(const Zmod& z, size_t d, Rng& rng)
{
    for (;;)
    {
        Mat g(d, d);
        for (auto& v : g.a)
            v = static_cast<uint32_t>(uniform(rng, z.m));
        if (inverse(z, g))
            return g;
    }
}

DescentTuple tuple_add(const ExtensionField& K, const DescentTuple& a, const DescentTuple& b)
{
    DescentTuple r = a;
    for (size_t i = 0; i < r.size(); ++i)
        r[i] = mp_add(K, r[i], b[i]);
    return r;
}

size_t tuple_nvars(const DescentTuple& t)
{
    require(!t.empty(), "empty descent tuple");
    return t[0].nvars;
}

// D[i] = Gamma_{u_i}^t applied to the descent of x^key.
std::vector<DescentTuple> block_images(const ExtensionField& K, const Monomial& key, size_t nv,
                                       const DescentTable& tab)
{
    const size_t d = tab.d;
    DescentTuple X(d, mp_zero(nv));
    std::vector<KP> out(d);
    descend_term(K, tab, key, K.one(), out);
    for (size_t s = 0; s < d; ++s)
        X[s] = to_multipoly(K, out[s], nv);
    std::vector<DescentTuple> D;
    for (size_t i = 0; i < d; ++i)
        D.push_back(apply_matrix(K, transpose(gamma_matrix(K, tab.basis, tab.basis.elements[i])), X));
    return D;
}

// Coefficient a with descent(a x^key) = block, if any.
std::optional<Fe> solve_block(const ExtensionField& K, const DescentTuple& blk, const std::vector<DescentTuple>& D,
                              const DescentTable& tab)
{
    const size_t d = tab.d;
    std::set<Monomial> monos;
    for (size_t s = 0; s < d; ++s)
    {
        for (const auto& [m, c] : blk[s].terms)
            monos.insert(m);
        for (const auto& Di : D)
            for (const auto& [m, c] : Di[s].terms)
                monos.insert(m);
    }
    Mat A(d * monos.size(), d);
    Vec rhs(d * monos.size(), 0);
    size_t row = 0;
    for (size_t s = 0; s < d; ++s)
        for (const auto& m : monos)
        {
            for (size_t i = 0; i < d; ++i)
            {
                auto it = D[i][s].terms.find(m);
                A(row, i) = it == D[i][s].terms.end() ? 0 : it->second.c[0];
            }
            auto it = blk[s].terms.find(m);
            rhs[row] = it == blk[s].terms.end() ? 0 : it->second.c[0];
            ++row;
        }
    auto sol = solve(K.zp(), A, rhs);
    if (!sol)
        return std::nullopt;
    return from_coordinates(K, tab.basis, *sol);
}

std::optional<Fe> solve_block(const ExtensionField& K, const DescentTuple& blk, const Monomial& key,
                              const DescentTable& tab)
{
    return solve_block(K, blk, block_images(K, key, tuple_nvars(blk), tab), tab);
}

// Splits a tuple into its blocks in one pass.
std::map<Monomial, DescentTuple> split_blocks(const DescentTuple& t, size_t d)
{
    std::map<Monomial, DescentTuple> out;
    const size_t nv = tuple_nvars(t);
    for (size_t s = 0; s < t.size(); ++s)
        for (const auto& [m, c] : t[s].terms)
        {
            auto [it, fresh] = out.try_emplace(block_key(m, d));
            if (fresh)
                it->second.assign(t.size(), mp_zero(nv));
            it->second[s].terms.emplace_hint(it->second[s].terms.end(), m, c);
        }
    return out;
}

Vec krylov_coords(const Zmod& z, const std::vector<Vec>& kry, const Vec& target)
{
    const size_t d = target.size();
    Mat A(d, kry.size());
    for (size_t m = 0; m < kry.size(); ++m)
        for (size_t i = 0; i < d; ++i)
            A(i, m) = kry[m][i];
    auto s = solve(z, A, target);
    ensure(s.has_value(), "vector outside the Krylov space");
    return *s;
}
}  // namespace

DescentTable build_descent_tables(const ExtensionField& K, const Basis& basis, size_t kmax)
{
    require(kmax >= 2, "descent tables start at order 2");
    DescentTable t;
    t.basis = basis;
    t.d = K.d();
    t.kmax = kmax;
    const size_t d = t.d;
    size_t count = d * d;
    for (size_t k = 2; k <= kmax; ++k, count *= d)
    {
        require(count <= (1u << 20), "descent table order too large");
        std::vector<Vec> tab(count);
        for (size_t flat = 0; flat < count; ++flat)
        {
            if (k == 2)
            {
                tab[flat] = coordinates(K, basis, K.mul(basis.elements[flat / d], basis.elements[flat % d]));
                continue;
            }
            // delta_{I,j,s} = sum_r delta_{I,r} delta_{r,j,s}, from the previous order
            const Vec& prev = t.orders[k - 3][flat / d];
            const size_t last = flat % d;
            Vec acc(d, 0);
            for (size_t r = 0; r < d; ++r)
            {
                if (!prev[r])
                    continue;
                const Vec& dr = t.orders[0][r * d + last];
                for (size_t s = 0; s < d; ++s)
                    acc[s] = K.zp().add(acc[s], K.zp().mul(prev[r], dr[s]));
            }
            tab[flat] = std::move(acc);
        }
        t.orders.push_back(std::move(tab));
    }
    t.frob_u.resize(d);
    for (size_t f = 0; f < d; ++f)
        for (size_t i = 0; i < d; ++i)
        {
            const Fe si = K.frobenius(basis.elements[i], static_cast<long>(f));
            for (size_t j = 0; j < d; ++j)
                t.frob_u[f].push_back(coordinates(K, basis, K.mul(si, basis.elements[j])));
        }
    t.R.assign(d, std::vector<Fe>(d));
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j)
            t.R[i][j] = K.frobenius(basis.elements[j], static_cast<long>(i));
    auto inv = kmat_inverse(K, t.R);
    ensure(inv.has_value(), "conjugation matrix of a basis is singular");
    t.Rinv = *inv;
    return t;
}

Vec delta_product(const ExtensionField& K, const DescentTable& t, const std::vector<size_t>& idx)
{
    require(!idx.empty(), "empty product");
    Vec acc = coordinates(K, t.basis, t.basis.elements[idx[0]]);
    for (size_t k = 1; k < idx.size(); ++k)
    {
        Vec nxt(t.d, 0);
        for (size_t r = 0; r < t.d; ++r)
        {
            if (!acc[r])
                continue;
            const Vec& dr = t.delta(r, idx[k]);
            for (size_t s = 0; s < t.d; ++s)
                nxt[s] = K.zp().add(nxt[s], K.zp().mul(acc[r], dr[s]));
        }
        acc = std::move(nxt);
    }
    return acc;
}

DescentTuple global_descent(const ExtensionField& K, const MultiPoly& F, const DescentTable& t)
{
    const size_t d = t.d;
    std::vector<KP> out(d);
    for (const auto& [m, c] : F.terms)
    {
        require(m.exps.size() == F.nvars, "monomial arity mismatch");
        descend_term(K, t, m, c, out);
    }
    DescentTuple r;
    for (size_t s = 0; s < d; ++s)
        r.push_back(to_multipoly(K, out[s], F.nvars * d));
    return r;
}

std::vector<MultiPoly> descend_variety(const ExtensionField& K, const std::vector<MultiPoly>& gens,
                                       const DescentTable& t)
{
    std::vector<MultiPoly> out;
    for (const auto& g : gens)
        for (auto& f : global_descent(K, g, t))
            out.push_back(std::move(f));
    return out;
}

std::vector<Fe> eval_tuple(const ExtensionField& K, const DescentTuple& t, const std::vector<Fe>& y)
{
    std::vector<Fe> r;
    for (const auto& f : t)
        r.push_back(mp_eval(K, f, y));
    return r;
}

Fe tuple_value_in_K(const ExtensionField& K, const Basis& b, const std::vector<Fe>& vals)
{
    Fe r;
    for (size_t i = 0; i < vals.size(); ++i)
        r = K.add(r, K.mul(vals[i], b.elements[i]));
    return r;
}

Vec descend_point(const ExtensionField& K, const Basis& b, const std::vector<Fe>& alpha)
{
    Vec y;
    for (const auto& a : alpha)
        for (auto c : coordinates(K, b, a))
            y.push_back(c);
    return y;
}

std::vector<Fe> ascend_point(const ExtensionField& K, const Basis& b, const Vec& y)
{
    const size_t d = K.d();
    require(y.size() % d == 0, "descent point length not a multiple of d");
    std::vector<Fe> out;
    for (size_t v = 0; v < y.size() / d; ++v)
        out.push_back(from_coordinates(K, b, Vec(y.begin() + v * d, y.begin() + (v + 1) * d)));
    return out;
}

std::vector<Fe> delta_map(const ExtensionField& K, const Basis& b, const std::vector<Fe>& y)
{
    const size_t d = K.d();
    require(y.size() % d == 0, "descent point length not a multiple of d");
    std::vector<Fe> out;
    for (size_t v = 0; v < y.size() / d; ++v)
        out.push_back(tuple_value_in_K(K, b, std::vector<Fe>(y.begin() + v * d, y.begin() + (v + 1) * d)));
    return out;
}

std::vector<Fe> rho(const ExtensionField& K, const DescentTable& t, const std::vector<Fe>& x)
{
    return kmat_vec(K, t.R, x);
}

std::vector<Fe> rho_inv(const ExtensionField& K, const DescentTable& t, const std::vector<Fe>& v)
{
    return kmat_vec(K, t.Rinv, v);
}

std::vector<Fe> twisted_components(const ExtensionField& K, const DescentTable& t, const std::vector<Fe>& x)
{
    auto v = rho(K, t, x);
    for (size_t i = 0; i < v.size(); ++i)
        v[i] = K.frobenius(v[i], -static_cast<long>(i));
    return v;
}

std::vector<Fe> from_twisted_components(const ExtensionField& K, const DescentTable& t,
                                        const std::vector<Fe>& comps)
{
    std::vector<Fe> v(comps.size());
    for (size_t i = 0; i < comps.size(); ++i)
        v[i] = K.frobenius(comps[i], static_cast<long>(i));
    return rho_inv(K, t, v);
}

Mat gamma_matrix(const ExtensionField& K, const Basis& b, const Fe& a)
{
    const size_t d = K.d();
    Mat g(d, d);
    for (size_t i = 0; i < d; ++i)
    {
        Vec row = coordinates(K, b, K.mul(a, b.elements[i]));
        for (size_t j = 0; j < d; ++j)
            g(i, j) = row[j];
    }
    return g;
}

DescentTuple apply_matrix(const ExtensionField& K, const Mat& M, const DescentTuple& t)
{
    require(M.cols == t.size(), "matrix does not match tuple length");
    const size_t nv = tuple_nvars(t);
    DescentTuple out(M.rows, mp_zero(nv));
    for (size_t j = 0; j < M.rows; ++j)
        for (size_t i = 0; i < M.cols; ++i)
            if (M(j, i))
                out[j] = mp_add(K, out[j], mp_scale(K, t[i], K.scalar(M(j, i))));
    return out;
}

Monomial block_key(const Monomial& ym, size_t d)
{
    const size_t n = ym.exps.size() / d;
    Monomial key = monomial_one(n);
    for (size_t v = 0; v < n; ++v)
        for (size_t j = 0; j < d; ++j)
            key.exps[v] = static_cast<uint16_t>(key.exps[v] + ym.exps[yvar(v, j, d)]);
    return key;
}

DescentTuple restrict_to_block(const DescentTuple& t, const Monomial& key, size_t d)
{
    DescentTuple r;
    for (const auto& f : t)
    {
        MultiPoly g{f.nvars, {}};
        for (const auto& [m, c] : f.terms)
            if (block_key(m, d) == key)
                g.terms.emplace_hint(g.terms.end(), m, c);
        r.push_back(std::move(g));
    }
    return r;
}

std::vector<Monomial> block_keys(const DescentTuple& t, size_t d)
{
    std::set<Monomial> keys;
    for (const auto& f : t)
        for (const auto& [m, c] : f.terms)
            keys.insert(block_key(m, d));
    return {keys.begin(), keys.end()};
}

std::optional<MultiPoly> is_global_descent(const ExtensionField& K, const DescentTuple& t, const DescentTable& tab)
{
    require(t.size() == tab.d, "tuple length differs from d");
    const size_t n = tuple_nvars(t) / tab.d;
    MultiPoly F = mp_zero(n);
    for (const auto& [key, blk] : split_blocks(t, tab.d))
    {
        auto a = solve_block(K, blk, key, tab);
        if (!a)
            return std::nullopt;
        mp_add_term(K, F, key, *a);
    }
    return F;
}

std::vector<BlockFinding> scan_blocks(const ExtensionField& K, const DescentTuple& t, const DescentTable& tab,
                                      BlockCache* cache)
{
    std::vector<BlockFinding> out;
    const size_t nv = tuple_nvars(t);
    for (const auto& [key, blk] : split_blocks(t, tab.d))
    {
        if (key.is_constant())
            continue;
        if (!cache)
        {
            out.push_back({key, solve_block(K, blk, key, tab)});
            continue;
        }
        auto it = cache->images.find(key);
        if (it == cache->images.end())
            it = cache->images.emplace(key, block_images(K, key, nv, tab)).first;
        out.push_back({key, solve_block(K, blk, it->second, tab)});
    }
    return out;
}

Recovery recover_basis_from_descent(const ExtensionField& K, const DescentTuple& t, uint64_t seed)
{
    const size_t d = K.d();
    const Zmod& z = K.zp();
    require(t.size() == d, "tuple length differs from d");
    const size_t nv = tuple_nvars(t);
    const size_t n = nv / d;
    auto keys = block_keys(t, d);
    std::stable_sort(keys.begin(), keys.end(),
                     [](const Monomial& a, const Monomial& b) { return a.degree() > b.degree(); });
    Rng rng(seed);
    bool any_vital = false;
    Recovery res;
    res.failure = "no vital block";
    for (const auto& key : keys)
    {
        if (key.is_constant())
            continue;
        size_t v1 = n;
        for (size_t v = 0; v < n; ++v)
            if (key.exps[v] % K.p() != 0)
            {
                v1 = v;
                break;
            }
        if (v1 == n)
            continue;
        const DescentTuple blk = restrict_to_block(t, key, d);
        // derivatives d t_i / d y_{v1, j}
        std::vector<std::vector<MultiPoly>> der(d);
        for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j)
                der[i].push_back(mp_derivative(K, blk[i], yvar(v1, j, d)));
        const bool linear = key.degree() == 1;
        for (int trial = 0; trial < 8; ++trial)
        {
            Vec P(nv, 0);
            if (trial == 0)
                for (size_t v = 0; v < n; ++v)
                    P[yvar(v, 0, d)] = 1;
            else
                for (auto& c : P)
                    c = static_cast<uint32_t>(uniform(rng, K.p()));
            // column j = coordinates of b * u_j
            Mat B(d, d);
            for (size_t i = 0; i < d; ++i)
                for (size_t j = 0; j < d; ++j)
                    B(i, j) = mp_eval_k(K, der[i][j], P);
            bool scalar = true;
            for (size_t i = 0; i < d; ++i)
                for (size_t j = 0; j < d; ++j)
                    if ((i != j && B(i, j)) || B(i, i) != B(0, 0))
                        scalar = false;
            if (linear && scalar)
                break;  // a * x with a in k: not vital
            any_vital = true;
            std::vector<Vec> kry;
            Vec e0(d, 0);
            e0[0] = 1;
            kry.push_back(e0);
            while (kry.size() < d)
            {
                Vec nxt = mat_vec(z, B, kry.back());
                std::vector<Vec> cand = kry;
                cand.push_back(nxt);
                Mat A(cand.size(), d);
                for (size_t r = 0; r < cand.size(); ++r)
                    for (size_t c = 0; c < d; ++c)
                        A(r, c) = cand[r][c];
                if (rank(z, A) < cand.size())
                    break;
                kry.push_back(nxt);
            }
            if (kry.size() < d)
            {
                res.failure = "derived element does not generate K";
                if (linear)
                    break;  // B does not depend on P
                continue;
            }
            // minimal polynomial x^d - sum c_m x^m
            Vec cm = krylov_coords(z, kry, mat_vec(z, B, kry.back()));
            KPoly mp(d + 1);
            for (size_t m = 0; m < d; ++m)
                mp[m] = K.scalar(z.neg(cm[m]));
            mp[d] = K.one();
            auto roots = kp_roots(K, mp, seed);
            ensure(!roots.empty(), "minimal polynomial has no root in K");
            const Fe beta = roots[0];
            std::vector<Fe> pw(d);
            pw[0] = K.one();
            for (size_t m = 1; m < d; ++m)
                pw[m] = K.mul(pw[m - 1], beta);
            std::vector<Fe> elems;
            for (size_t j = 0; j < d; ++j)
            {
                Vec ej(d, 0);
                ej[j] = 1;
                Vec c = krylov_coords(z, kry, ej);
                Fe u;
                for (size_t m = 0; m < d; ++m)
                    u = K.add(u, K.mul_scalar(pw[m], c[m]));
                elems.push_back(u);
            }
            Basis ub = basis_from_elements(K, elems);
            auto F = is_global_descent(K, t, build_descent_tables(K, ub));
            if (!F)
            {
                res.failure = "recovered basis does not reproduce the tuple";
                continue;
            }
            res.ok = true;
            res.failure.clear();
            res.basis = std::move(ub);
            res.F = std::move(*F);
            return res;
        }
    }
    if (!any_vital)
        throw PreconditionError("descent tuple has no vital term");
    return res;
}

MaskResult mask_tuple(const ExtensionField& K, const DescentTuple& t, const std::vector<MultiPoly>& ideal_gens,
                      const DescentTable& tab, uint64_t seed, const Mat* forced_gamma)
{
    const size_t d = tab.d;
    const size_t n = tuple_nvars(t) / d;
    for (const auto& g : ideal_gens)
        require(g.nvars == n, "ideal generator arity mismatch");
    Rng rng(seed);
    MaskResult res;
    res.tuple = t;
    const size_t max_rounds = forced_gamma ? 1 : 64;
    BlockCache cache;
    for (;;)
    {
        const BlockFinding* leak = nullptr;
        auto findings = scan_blocks(K, res.tuple, tab, &cache);
        for (const auto& f : findings)
            if (f.coeff)
            {
                leak = &f;
                break;
            }
        if (!leak)
        {
            res.ok = true;
            return res;
        }
        if (res.rounds >= max_rounds)
        {
            res.failure = "global descent persists after masking";
            return res;
        }
        // pick G and m' | key in supp(G), preferring m' = key
        const MultiPoly* G = nullptr;
        Monomial mprime;
        for (const auto& g : ideal_gens)
            if (g.terms.count(leak->key))
            {
                G = &g;
                mprime = leak->key;
                break;
            }
        if (!G)
            for (const auto& g : ideal_gens)
                for (const auto& [m, c] : g.terms)
                    if (monomial_divides(m, leak->key) && (!G || m.degree() > mprime.degree()))
                    {
                        G = &g;
                        mprime = m;
                    }
        if (!G)
        {
            res.failure = "no ideal element covers a leaking monomial";
            return res;
        }
        MultiPoly F = mp_scale(K, mp_mul(K, mp_term(n, monomial_div(leak->key, mprime), K.one()), *G),
                               K.random_nonzero(rng));
        const Mat gamma = forced_gamma ? *forced_gamma : random_gl(K.zp(), d, rng);
        res.tuple = tuple_add(K, res.tuple, apply_matrix(K, gamma, global_descent(K, F, tab)));
        ++res.rounds;
    }
}

std::optional<KMat> kmat_inverse(const ExtensionField& K, const KMat& m)
{
    const size_t n = m.size();
    KMat a = m;
    KMat inv(n, std::vector<Fe>(n));
    for (size_t i = 0; i < n; ++i)
        inv[i][i] = K.one();
    for (size_t col = 0; col < n; ++col)
    {
        size_t sel = col;
        while (sel < n && K.is_zero(a[sel][col]))
            ++sel;
        if (sel == n)
            return std::nullopt;
        std::swap(a[sel], a[col]);
        std::swap(inv[sel], inv[col]);
        const Fe iv = K.inv(a[col][col]);
        for (size_t j = 0; j < n; ++j)
        {
            a[col][j] = K.mul(a[col][j], iv);
            inv[col][j] = K.mul(inv[col][j], iv);
        }
        for (size_t i = 0; i < n; ++i)
        {
            if (i == col || K.is_zero(a[i][col]))
                continue;
            const Fe f = a[i][col];
            for (size_t j = 0; j < n; ++j)
            {
                a[i][j] = K.sub(a[i][j], K.mul(f, a[col][j]));
                inv[i][j] = K.sub(inv[i][j], K.mul(f, inv[col][j]));
            }
        }
    }
    return inv;
}

std::vector<Fe> kmat_vec(const ExtensionField& K, const KMat& m, const std::vector<Fe>& v)
{
    std::vector<Fe> r(m.size());
    for (size_t i = 0; i < m.size(); ++i)
    {
        require(m[i].size() == v.size(), "matrix/vector shape mismatch");
        for (size_t j = 0; j < v.size(); ++j)
            r[i] = K.add(r[i], K.mul(m[i][j], v[j]));
    }
    return r;
}
}  // namespace tmap
