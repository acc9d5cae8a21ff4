// SPDX-License-Identifier: Apache-2.0
#include <tmap/attacks.hpp>

#include <algorithm>
#include <functional>
#include <set>

namespace tmap
{
std::vector<DescentPoint> harvest(const PublicEvaluator& ev, const PublicParams& pp, size_t count, uint64_t seed,
                                  HarvestStats* stats)
{
    Rng rng(seed);
    HarvestStats st;
    st.requested = count;
    std::vector<DescentPoint> out;
    if (count == 0)
        return out;
    out.push_back(pp.D_beta);
    DescentPoint cur = pp.D_beta;
    while (out.size() < count)
    {
        ++st.steps;
        switch (uniform(rng, 4))
        {
        case 0:
            cur = ev.phi(uniform(rng, ev.generators()), cur);
            break;
        case 1:
            cur = ev.add(cur, pp.D_beta);
            break;
        case 2:
            cur = ev.add(cur, out[uniform(rng, out.size())]);
            break;
        default:
            cur = ev.neg(cur);
            break;
        }
        if (ev.is_zero(cur))
        {
            cur = ev.phi(uniform(rng, ev.generators()), pp.D_beta);
            continue;
        }
        out.push_back(cur);
    }
    std::set<std::vector<Fe>> distinct;
    for (const auto& P : out)
        distinct.insert(P.coords);
    st.distinct = distinct.size();
    for (const auto& P : out)
    {
        ++st.torsion_checked;
        st.torsion_ok += ev.is_torsion(P) ? 1 : 0;
        st.chart_points += leading_slot(ev.field().d(), P) == leading_slot(ev.field().d(), pp.D_beta) ? 1 : 0;
    }
    if (stats)
        *stats = st;
    return out;
}

SampleSet harvest_chart(const PublicEvaluator& ev, const PublicParams& pp, size_t count, uint64_t seed,
                        HarvestStats* stats)
{
    const size_t d = ev.field().d();
    const auto lead = leading_slot(d, pp.D_beta);
    SampleSet s;
    std::set<std::vector<Fe>> seen;
    size_t batch = count + 8, round = 0;
    HarvestStats total;
    while (s.points.size() < count && round < 16)
    {
        HarvestStats st;
        const auto pts = harvest(ev, pp, batch, derive_seed(seed, round++), &st);
        total.requested += st.requested;
        total.steps += st.steps;
        total.torsion_checked += st.torsion_checked;
        total.torsion_ok += st.torsion_ok;
        for (const auto& P : pts)
        {
            if (s.points.size() >= count)
                break;
            if (leading_slot(d, P) != lead)
                continue;
            ++total.chart_points;
            auto y = chart_descent_coords(d, P);
            if (!seen.insert(y).second)
                continue;
            s.points.push_back(std::move(y));
        }
        batch *= 2;
    }
    total.distinct = s.points.size();
    s.log.push_back("random walk over add/neg/phi_i from D_beta, " + std::to_string(total.steps) + " steps, " +
                    std::to_string(total.chart_points) + " chart hits, " + std::to_string(s.points.size()) +
                    " distinct kept");
    if (stats)
        *stats = total;
    return s;
}

namespace
{
// all exponent vectors of total degree e in d variables
void degree_monomials(size_t d, unsigned e, std::vector<uint16_t>& cur, size_t pos,
                      std::vector<std::vector<uint16_t>>& out)
{
    if (pos + 1 == d)
    {
        cur[pos] = static_cast<uint16_t>(e);
        out.push_back(cur);
        return;
    }
    for (unsigned k = 0; k <= e; ++k)
    {
        cur[pos] = static_cast<uint16_t>(k);
        degree_monomials(d, e - k, cur, pos + 1, out);
    }
}
}  // namespace

std::vector<Monomial> hat_support(const std::vector<Monomial>& S, size_t d)
{
    std::set<Monomial> out;
    for (const auto& m : S)
    {
        const size_t n = m.exps.size();
        std::vector<Monomial> acc{monomial_one(n * d)};
        for (size_t v = 0; v < n; ++v)
        {
            if (m.exps[v] == 0)
                continue;
            std::vector<std::vector<uint16_t>> parts;
            std::vector<uint16_t> cur(d);
            degree_monomials(d, m.exps[v], cur, 0, parts);
            std::vector<Monomial> next;
            for (const auto& a : acc)
                for (const auto& part : parts)
                {
                    Monomial b = a;
                    for (size_t j = 0; j < d; ++j)
                        b.exps[yvar(v, j, d)] = part[j];
                    next.push_back(std::move(b));
                }
            acc = std::move(next);
        }
        out.insert(acc.begin(), acc.end());
    }
    return {out.begin(), out.end()};
}

std::vector<Monomial> support_of(const std::vector<MultiPoly>& polys)
{
    std::set<Monomial> s;
    for (const auto& f : polys)
        for (const auto& [m, c] : f.terms)
            s.insert(m);
    return {s.begin(), s.end()};
}

LinearSpace build_L_hat(const ExtensionField& K, const std::vector<Monomial>& columns, const SampleSet& samples)
{
    const size_t d = K.d();
    const Zmod z{K.p()};
    LinearSpace L;
    L.columns = columns;
    L.overfit = samples.points.size() * d < columns.size();
    Mat A(samples.points.size() * d, columns.size());
    unsigned maxdeg = 0;
    for (const auto& m : columns)
        for (auto e : m.exps)
            maxdeg = std::max<unsigned>(maxdeg, e);
    for (size_t s = 0; s < samples.points.size(); ++s)
    {
        const auto& y = samples.points[s];
        std::vector<std::vector<Fe>> pw(y.size(), std::vector<Fe>(maxdeg + 1));
        for (size_t v = 0; v < y.size(); ++v)
        {
            pw[v][0] = K.one();
            for (unsigned e = 1; e <= maxdeg; ++e)
                pw[v][e] = K.mul(pw[v][e - 1], y[v]);
        }
        for (size_t c = 0; c < columns.size(); ++c)
        {
            const auto& m = columns[c];
            require(m.exps.size() == y.size(), "sample length does not match the monomial support");
            Fe val = K.one();
            for (size_t v = 0; v < y.size(); ++v)
                if (m.exps[v])
                    val = K.mul(val, pw[v][m.exps[v]]);
            for (size_t r = 0; r < d; ++r)
                A(s * d + r, c) = val.c[r];
        }
    }
    L.basis = nullspace(z, A);
    return L;
}

MultiPoly space_element(const LinearSpace& L, size_t i, size_t nvars)
{
    MultiPoly f = mp_zero(nvars);
    for (size_t c = 0; c < L.columns.size(); ++c)
        if (L.basis[i][c])
        {
            Fe v{};
            v.c[0] = L.basis[i][c];
            f.terms.emplace(L.columns[c], v);
        }
    return f;
}

bool matches_up_to_conjugate_scalar(const ExtensionField& K, const Basis& b, const Basis& planted)
{
    const size_t d = K.d();
    if (b.elements.size() != d || planted.elements.size() != d)
        return false;
    for (size_t s = 0; s < d; ++s)
    {
        const Fe c = K.div(b.elements[0], K.frobenius(planted.elements[0], static_cast<long>(s)));
        bool ok = true;
        for (size_t j = 1; j < d && ok; ++j)
            ok = b.elements[j] == K.mul(c, K.frobenius(planted.elements[j], static_cast<long>(s)));
        if (ok)
            return true;
    }
    return false;
}

AttackReport linear_term_attack(const ExtensionField& K, const SampleSet& samples,
                                const std::vector<Monomial>& S_prime, size_t target_var, size_t nvars,
                                uint64_t seed)
{
    const size_t d = K.d();
    const Zmod z{K.p()};
    AttackReport rep;
    rep.attack = "linear-term";
    require(target_var < nvars, "target variable out of range");
    Monomial target = monomial_one(nvars);
    target.exps[target_var] = 1;
    require(std::find(S_prime.begin(), S_prime.end(), target) != S_prime.end(),
            "the support must contain the linear target monomial");
    std::vector<Monomial> S_minus;
    for (const auto& m : S_prime)
        if (m != target)
            S_minus.push_back(m);

    const LinearSpace L = build_L_hat(K, hat_support(S_prime, d), samples);
    const LinearSpace L_minus = build_L_hat(K, hat_support(S_minus, d), samples);
    rep.dims["samples"] = samples.points.size();
    rep.dims["columns"] = L.columns.size();
    rep.dims["L_hat"] = L.basis.size();
    rep.dims["L_hat_without_target"] = L_minus.basis.size();
    if (L.overfit)
    {
        rep.details = "too few samples for the support: conditions cannot be measured";
        return rep;
    }
    if (L.basis.size() != d || !L_minus.basis.empty())
    {
        rep.details = "dimension conditions unmet: need dim L_hat = " + std::to_string(d) +
                      " and dim L_hat without target = 0";
        return rep;
    }
    rep.applicable = true;

    // row i: the element of L_hat whose target block is the unit vector e_i
    std::vector<size_t> tcol(d);
    for (size_t j = 0; j < d; ++j)
    {
        Monomial m = monomial_one(nvars * d);
        m.exps[yvar(target_var, j, d)] = 1;
        tcol[j] = static_cast<size_t>(std::lower_bound(L.columns.begin(), L.columns.end(), m) - L.columns.begin());
        ensure(tcol[j] < L.columns.size() && L.columns[tcol[j]] == m, "target block missing from the support");
    }
    Mat B(d, d);
    for (size_t j = 0; j < d; ++j)
        for (size_t k = 0; k < d; ++k)
            B(j, k) = L.basis[k][tcol[j]];
    const auto Binv = inverse(z, B);
    if (!Binv)
    {
        rep.details = "target block of L_hat is singular";
        return rep;
    }
    for (size_t i = 0; i < d; ++i)
    {
        MultiPoly row = mp_zero(nvars * d);
        for (size_t k = 0; k < d; ++k)
        {
            const uint32_t c = (*Binv)(k, i);
            if (!c)
                continue;
            MultiPoly e = space_element(L, k, nvars * d);
            row = mp_add(K, row, mp_scale(K, e, K.scalar(c)));
        }
        rep.tuple.push_back(std::move(row));
    }
    Recovery r;
    try
    {
        r = recover_basis_from_descent(K, rep.tuple, seed);
    }
    catch (const PreconditionError& e)
    {
        rep.details = std::string("extracted rows carry no vital term: ") + e.what();
        return rep;
    }
    if (!r.ok)
    {
        rep.details = "basis recovery failed: " + r.failure;
        return rep;
    }
    // the recovered basis must regenerate the extracted descent exactly
    const DescentTable tab = build_descent_tables(K, r.basis);
    if (global_descent(K, r.F, tab) != rep.tuple)
    {
        rep.details = "recovered basis does not regenerate the extracted rows";
        return rep;
    }
    rep.recovered = true;
    rep.basis = r.basis;
    rep.details = "basis recovered from the extracted descent rows";
    return rep;
}

namespace
{
Fe random_generator(const ExtensionField& K, Rng& rng)
{
    for (;;)
    {
        const Fe c = K.random(rng);
        if (minimal_polynomial(K, c).size() == K.d() + 1)
            return c;
    }
}

// d random K-points of V as twisted components give one K-point of the descent
SampleSet sample_descent(const ExtensionField& K, const DescentTable& tab, size_t nvars, size_t count,
                         const std::function<std::vector<Fe>(Rng&)>& point, Rng& rng)
{
    const size_t d = K.d();
    SampleSet s;
    for (size_t k = 0; k < count; ++k)
    {
        std::vector<std::vector<Fe>> comps;
        for (size_t i = 0; i < d; ++i)
            comps.push_back(point(rng));
        std::vector<Fe> y;
        for (size_t v = 0; v < nvars; ++v)
        {
            std::vector<Fe> c(d);
            for (size_t i = 0; i < d; ++i)
                c[i] = comps[i][v];
            auto x = from_twisted_components(K, tab, c);
            y.insert(y.end(), x.begin(), x.end());
        }
        s.points.push_back(std::move(y));
    }
    s.log.push_back(std::to_string(count) + " points from twisted components of random V(K) points");
    return s;
}

size_t sample_budget(const std::vector<Monomial>& S, size_t d)
{
    return 2 * (hat_support(S, d).size() / d) + 8;
}
}  // namespace

ToyInstance hyperplane_toy(const ExtensionField& K, uint64_t seed)
{
    Rng rng(seed);
    ToyInstance t;
    t.name = "hyperplane";
    t.planted = random_basis(K, rng());
    t.nvars = 3;
    t.target_var = 0;
    const Fe c2 = random_generator(K, rng);
    const Fe c3 = K.random(rng);
    MultiPoly F = mp_var(K, 3, 0);
    F = mp_add(K, F, mp_scale(K, mp_var(K, 3, 1), c2));
    F = mp_add(K, F, mp_scale(K, mp_var(K, 3, 2), c3));
    t.equations = {F};
    t.S_prime = support_of(t.equations);
    const DescentTable tab = build_descent_tables(K, t.planted);
    auto point = [&](Rng& r) {
        const Fe x2 = K.random(r), x3 = K.random(r);
        return std::vector<Fe>{K.neg(K.add(K.mul(c2, x2), K.mul(c3, x3))), x2, x3};
    };
    t.samples = sample_descent(K, tab, 3, sample_budget(t.S_prime, K.d()), point, rng);
    return t;
}

ToyInstance cubic_toy(const ExtensionField& K, uint64_t seed)
{
    Rng rng(seed);
    ToyInstance t;
    t.name = "cubic";
    t.planted = random_basis(K, rng());
    t.nvars = 2;
    t.target_var = 0;
    const Fe c = random_generator(K, rng);
    const Fe e = K.random(rng);
    // x^3 + c x + e - y^2 in variables (x, y), normalized to coefficient 1 on x
    const MultiPoly x = mp_var(K, 2, 0), y = mp_var(K, 2, 1);
    MultiPoly F = mp_add(K, mp_pow(K, x, 3), mp_scale(K, x, c));
    F = mp_add(K, F, mp_const(2, e));
    F = mp_sub(K, F, mp_mul(K, y, y));
    t.equations = {mp_scale(K, F, K.inv(c))};
    t.S_prime = support_of(t.equations);
    const DescentTable tab = build_descent_tables(K, t.planted);
    auto point = [&](Rng& r) {
        for (;;)
        {
            const Fe xv = K.random(r);
            const Fe rhs = K.add(K.add(K.mul(K.sqr(xv), xv), K.mul(c, xv)), e);
            if (auto s = K.sqrt(rhs))
                return std::vector<Fe>{xv, *s};
        }
    };
    t.samples = sample_descent(K, tab, 2, sample_budget(t.S_prime, K.d()), point, rng);
    return t;
}

ToyInstance genus2_instance(const PublicEvaluator& ev, const PublicParams& pp, const Basis& planted, uint64_t seed)
{
    const ExtensionField& K = ev.field();
    ToyInstance t;
    t.name = "genus2-chart";
    t.planted = planted;
    t.nvars = 4;
    t.target_var = 0;
    t.equations = chart_equations(K, pp.evaluators.f);
    t.S_prime = support_of(t.equations);
    t.samples = harvest_chart(ev, pp, sample_budget(t.S_prime, K.d()), seed);
    return t;
}

AttackReport run_toy(const ExtensionField& K, const ToyInstance& toy, uint64_t seed)
{
    AttackReport rep = linear_term_attack(K, toy.samples, toy.S_prime, toy.target_var, toy.nvars, seed);
    rep.details = toy.name + ": " + rep.details;
    if (rep.recovered && !matches_up_to_conjugate_scalar(K, *rep.basis, toy.planted))
    {
        rep.recovered = false;
        rep.details += "; recovered basis is not a conjugate multiple of the planted one";
    }
    return rep;
}

ScanReport global_descent_scan(const ExtensionField& K, const std::vector<DescentTuple>& space,
                               const DescentTable& tab, size_t combos, uint64_t seed)
{
    const size_t d = K.d();
    const Zmod z{K.p()};
    Rng rng(seed);
    ScanReport rep;
    BlockCache cache;
    auto check = [&](const DescentTuple& t, size_t index, const Mat& gamma) {
        for (const auto& f : scan_blocks(K, t, tab, &cache))
            if (f.coeff)
                rep.hits.push_back({rep.trials, index, gamma, f.key, *f.coeff});
        ++rep.trials;
    };
    for (size_t i = 0; i < space.size(); ++i)
        check(space[i], i, Mat::identity(d));
    if (space.empty())
        return rep;
    for (size_t k = 0; k < combos; ++k)
    {
        Mat G(d, d);
        do
            for (auto& v : G.a)
                v = static_cast<uint32_t>(uniform(rng, K.p()));
        while (rank(z, G) < d);
        const size_t pick = uniform(rng, space.size());
        DescentTuple t = space[pick];
        if (space.size() > 1)
            for (size_t j = 0; j < space.size(); ++j)
                if (j != pick)
                {
                    const uint32_t c = static_cast<uint32_t>(uniform(rng, K.p()));
                    if (!c)
                        continue;
                    for (size_t r = 0; r < d; ++r)
                        t[r] = mp_add(K, t[r], mp_scale(K, space[j][r], K.scalar(c)));
                }
        check(apply_matrix(K, G, t), pick, G);
    }
    return rep;
}

std::pair<size_t, size_t> descent_table_system_size(size_t d)
{
    // unknowns: the d^2 theta coordinates of the basis; equations: u_i u_j = sum_k Delta_ijk u_k
    return {d * d, d * d * d};
}
}  // namespace tmap
