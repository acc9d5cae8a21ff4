// SPDX-License-Identifier: Apache-2.0
#include <tmap/protocol.hpp>

#include <algorithm>

namespace tmap
{
ProtocolParams normalize_params(ProtocolParams pp)
{
    require(is_prime(pp.p) && pp.p >= 3 && pp.p <= 31, "p must be an odd prime <= 31");
    require(pp.d >= 4 && pp.d <= 8, "d must lie in [4, 8]");
    require(pp.g == 2, "only genus 2 is supported");
    require(is_prime(pp.ell) && pp.ell <= 31, "ell must be a prime <= 31");
    require(pp.ell != pp.p, "ell must differ from p");
    uint64_t q = 1;
    for (size_t i = 0; i < pp.d; ++i)
        q *= pp.p;
    require((q - 1) % pp.ell == 0, "ell must divide p^d - 1 (" + std::to_string(pp.p) + "^" +
                                       std::to_string(pp.d) + " - 1 = " + std::to_string(q - 1) + ")");
    if (pp.N == 0)
        pp.N = pp.d;
    if (pp.N1 == 0)
        pp.N1 = pp.d * pp.d;
    if (pp.t == 0)
        pp.t = pp.d * pp.d;
    if (pp.switches == 0)
        pp.switches = pp.d * pp.d;
    require(pp.N1 > 2 * pp.d, "N1 must exceed 2d");
    require(pp.N1 < 65536, "N1 too large");
    return pp;
}

std::vector<MultiPoly> chart_equations(const ExtensionField& K, const KPoly& f)
{
    require(kp_deg(f) == 5, "chart equations are written for genus 2");
    const size_t n = 4;
    const MultiPoly a1 = mp_var(K, n, 0), a0 = mp_var(K, n, 1), b1 = mp_var(K, n, 2), b0 = mp_var(K, n, 3);
    // f - b^2 as a polynomial in x with coefficients in K[a1, a0, b1, b0]
    std::vector<MultiPoly> c;
    for (const auto& fc : f)
        c.push_back(mp_const(n, fc));
    c[2] = mp_sub(K, c[2], mp_mul(K, b1, b1));
    c[1] = mp_sub(K, c[1], mp_scale(K, mp_mul(K, b1, b0), K.scalar(2)));
    c[0] = mp_sub(K, c[0], mp_mul(K, b0, b0));
    for (size_t k = c.size() - 1; k >= 2; --k)
    {
        c[k - 1] = mp_sub(K, c[k - 1], mp_mul(K, c[k], a1));
        c[k - 2] = mp_sub(K, c[k - 2], mp_mul(K, c[k], a0));
    }
    return {c[1], c[0]};
}

std::vector<Fe> chart_point(const Divisor& D)
{
    require(kp_deg(D.a) == 2, "chart points need deg a = 2");
    const Fe b1 = D.b.size() > 1 ? D.b[1] : Fe{};
    const Fe b0 = D.b.empty() ? Fe{} : D.b[0];
    return {D.a[1], D.a[0], b1, b0};
}

std::vector<Fe> chart_descent_coords(size_t d, const DescentPoint& P)
{
    require(P.coords.size() == 5 * d, "chart coordinates need a genus-2 descent point");
    // slots: a0 a1 a2 b0 b1 -> chart order a1 a0 b1 b0
    const size_t order[4] = {1, 0, 4, 3};
    std::vector<Fe> y;
    for (size_t s : order)
        y.insert(y.end(), P.coords.begin() + s * d, P.coords.begin() + (s + 1) * d);
    return y;
}

std::vector<Fe> leading_slot(size_t d, const DescentPoint& P)
{
    require(P.coords.size() == 5 * d, "expected a genus-2 descent point");
    return {P.coords.begin() + 2 * d, P.coords.begin() + 3 * d};
}

namespace
{
KPoly curve_model(const ExtensionField& K, const PolyP& f0, const Fe& lam, const Fe& shift)
{
    // f0(lam^2 x + shift) / lam^10
    const KPoly lin{shift, K.sqr(lam)};
    KPoly acc;
    for (size_t i = f0.size(); i-- > 0;)
        acc = kp_add(K, kp_mul(K, acc, lin), kp_const(K.scalar(f0[i])));
    return kp_scale(K, acc, K.inv(K.pow(lam, 10)));
}

std::vector<Divisor> combine(const ExtensionField& K, const Curve& C, const Divisor& a, const Divisor& b,
                             const Vec& x, const Vec& y)
{
    std::vector<Divisor> out;
    for (size_t i = 0; i < x.size(); ++i)
        out.push_back(div_add(K, C, scalar_mul(K, C, x[i], a), scalar_mul(K, C, y[i], b)));
    return out;
}

std::vector<MultiPoly> negation_map(const ExtensionField& K)
{
    const size_t n = 4;
    return {mp_var(K, n, 0), mp_var(K, n, 1), mp_scale(K, mp_var(K, n, 2), K.scalar(K.p() - 1)),
            mp_scale(K, mp_var(K, n, 3), K.scalar(K.p() - 1))};
}
}  // namespace

std::optional<Vec> find_mu(const EndoMatrixSet& ms, const Vec& v1, const Vec& v2, Rng& rng)
{
    const Zmod z{ms.ell};
    const size_t d = ms.d, n1 = ms.mats.size();
    Mat A(2 * d, n1);
    for (size_t k = 0; k < n1; ++k)
    {
        const Vec w1 = mat_vec(z, ms.mats[k], v1), w2 = mat_vec(z, ms.mats[k], v2);
        for (size_t i = 0; i < d; ++i)
        {
            A(i, k) = w1[i];
            A(d + i, k) = w2[i];
        }
    }
    const auto kernel = nullspace(z, A);
    if (kernel.empty())
        return std::nullopt;
    for (;;)
    {
        Vec c(n1, 0);
        for (const auto& kv : kernel)
        {
            const uint32_t s = static_cast<uint32_t>(uniform(rng, ms.ell));
            for (size_t k = 0; k < n1; ++k)
                c[k] = z.add(c[k], z.mul(s, kv[k]));
        }
        if (std::any_of(c.begin(), c.end(), [](uint32_t v) { return v != 0; }))
            return c;
    }
}

uint32_t lambda_exponent(const EndoMatrixSet& ms, const Vec& c, const Vec& v1, const Vec& v2)
{
    const Zmod z{ms.ell};
    Mat L(ms.d, ms.d);
    for (size_t k = 0; k < c.size(); ++k)
        L = mat_add(z, L, mat_scale(z, ms.mats[k], c[k]));
    const Vec w1 = mat_vec(z, L, v1), w2 = mat_vec(z, L, v2);
    // e(w1 a + w2 b, v1 a + v2 b) = e(a, b)^{w1 v2 - w2 v1}
    uint32_t k = 0;
    for (size_t i = 0; i < ms.d; ++i)
        k = z.add(k, z.sub(z.mul(w1[i], v2[i]), z.mul(w2[i], v1[i])));
    return k;
}

std::optional<Vec> find_lambda(const EndoMatrixSet& ms, const Vec& v1, const Vec& v2, Rng& rng)
{
    for (int attempt = 0; attempt < 64; ++attempt)
    {
        Vec c(ms.mats.size());
        for (auto& v : c)
            v = static_cast<uint32_t>(uniform(rng, ms.ell));
        if (lambda_exponent(ms, c, v1, v2) != 0)
            return c;
    }
    return std::nullopt;
}

Trapdoor setup(const ProtocolParams& params_in, uint64_t seed)
{
    const ProtocolParams params = normalize_params(params_in);
    Trapdoor td;
    td.params = params;
    td.seed = seed;
    const ExtensionField K = make_extension(params.p, params.d, derive_seed(seed, 1));
    td.modulus = K.modulus();
    const uint32_t ell = params.ell;
    Rng rng(derive_seed(seed, 2));

    bool found = false;
    size_t order_hits = 0;
    const size_t max_attempts = 4000;
    for (size_t attempt = 0; attempt < max_attempts && !found; ++attempt)
    {
        td.curve_attempts = attempt + 1;
        PolyP f0(6, 0);
        f0[5] = 1;
        for (size_t i = 0; i < 5; ++i)
            f0[i] = static_cast<uint32_t>(uniform(rng, params.p));
        KPoly fk;
        for (auto c : f0)
            fk.push_back(K.scalar(c));
        if (!kp_is_squarefree(K, fk))
            continue;
        const u128 order = jacobian_order_prime_model(params.p, f0, static_cast<unsigned>(params.d));
        if (order % (u128{ell} * ell) != 0)
            continue;
        ++order_hits;
        // a model over K isomorphic to the prime-field curve
        const Fe lam = K.random_nonzero(rng);
        const Fe shift = K.random(rng);
        const Curve C = make_curve(K, curve_model(K, f0, lam, shift));
        const CurveContext ctx = make_context(K, C, order, ell);
        const Divisor a = ell_torsion_point(K, ctx, rng());
        for (int tries = 0; tries < 8 && !found; ++tries)
        {
            const Divisor b = ell_torsion_point(K, ctx, rng());
            if (weil_pairing_retry(K, C, a, b, ell) != K.one())
            {
                td.f = C.f;
                td.order = order;
                td.a = a;
                td.b = b;
                found = true;
            }
        }
    }
    if (!found)
        throw PreconditionError("curve search exhausted after " + std::to_string(max_attempts) +
                                " attempts; curves with ell^2 | #J: " + std::to_string(order_hits));
    const Curve C = make_curve(K, td.f);

    td.basis_primary = random_basis(K, derive_seed(seed, 3)).to_theta;
    do
        td.basis_secondary = random_basis(K, rng()).to_theta;
    while (td.basis_secondary == td.basis_primary);

    const size_t d = params.d;
    for (int attempt = 0;; ++attempt)
    {
        require(attempt < 64, "matrix sampling keeps failing");
        td.mats = sample_matrices(d, params.N1, ell, rng());
        // V = (v1_i a + v2_i b)_i, not Galois-coherent, all components of degree 2
        for (;;)
        {
            td.v1.assign(d, 0);
            td.v2.assign(d, 0);
            bool coherent = true;
            for (size_t i = 0; i < d; ++i)
            {
                do
                {
                    td.v1[i] = static_cast<uint32_t>(uniform(rng, ell));
                    td.v2[i] = static_cast<uint32_t>(uniform(rng, ell));
                } while (td.v1[i] == 0 && td.v2[i] == 0);
                if (td.v1[i] != td.v1[0] || td.v2[i] != td.v2[0])
                    coherent = false;
            }
            if (coherent)
                continue;
            const auto V = combine(K, C, td.a, td.b, td.v1, td.v2);
            if (std::all_of(V.begin(), V.end(), [](const Divisor& D) { return kp_deg(D.a) == 2; }))
                break;
        }
        auto mu = find_mu(td.mats, td.v1, td.v2, rng);
        auto lam = find_lambda(td.mats, td.v1, td.v2, rng);
        if (mu && lam)
        {
            td.mu_coeffs = *mu;
            td.lambda_coeffs = *lam;
            break;
        }
    }
    return td;
}

PublicParams publish(const Trapdoor& td)
{
    const ProtocolParams params = normalize_params(td.params);
    const ExtensionField K(params.p, td.modulus);
    const Curve C = make_curve(K, td.f);
    const size_t d = params.d;
    const uint32_t ell = params.ell;
    const Zmod zl{ell};
    const DescentTable tab_u = build_descent_tables(K, basis_from_matrix(K, td.basis_primary));
    const DescentTable tab_up = build_descent_tables(K, basis_from_matrix(K, td.basis_secondary));

    PublicParams pp;
    pp.params = params;
    pp.modulus = td.modulus;
    const auto V = combine(K, C, td.a, td.b, td.v1, td.v2);
    Mat L(d, d);
    for (size_t k = 0; k < td.lambda_coeffs.size(); ++k)
        L = mat_add(zl, L, mat_scale(zl, td.mats.mats[k], td.lambda_coeffs[k]));
    const auto VA = combine(K, C, td.a, td.b, mat_vec(zl, L, td.v1), mat_vec(zl, L, td.v2));
    pp.D_beta = components_to_point(K, tab_u, C.g, V, BasisTag::primary);
    pp.D_alpha_prime = components_to_point(K, tab_up, C.g, VA, BasisTag::secondary);
    pp.f_lambda = ae_linear(zl, td.lambda_coeffs);
    pp.f_mu = ae_linear(zl, td.mu_coeffs);
    pp.relations = compute_relations(td.mats, derive_seed(td.seed, 7));
    pp.zeta = extended_pairing(K, C, ell, tab_up, tab_u, pp.D_alpha_prime, pp.D_beta);
    ensure(pp.zeta != K.one() && K.pow(pp.zeta, ell) == K.one(), "zeta is not a primitive ell-th root of unity");

    const auto gens = chart_equations(K, C.f);
    std::vector<std::pair<std::string, MultiPoly>> maps = {{"chart_x", gens[0]}, {"chart_1", gens[1]}};
    const auto neg = negation_map(K);
    const char* neg_names[4] = {"neg_a1", "neg_a0", "neg_b1", "neg_b0"};
    for (size_t i = 0; i < 4; ++i)
        maps.emplace_back(neg_names[i], neg[i]);
    uint64_t mseed = derive_seed(td.seed, 11);
    for (auto tag : {BasisTag::primary, BasisTag::secondary})
    {
        const DescentTable& tab = tag == BasisTag::primary ? tab_u : tab_up;
        for (const auto& [name, F] : maps)
        {
            MaskResult m = mask_tuple(K, global_descent(K, F, tab), gens, tab, ++mseed);
            ensure(m.ok, "masking failed for " + name + ": " + m.failure);
            pp.masked.push_back({name, tag, std::move(m.tuple)});
        }
    }
    pp.evaluators = {td.f, td.basis_primary, td.basis_secondary, td.mats.mats};
    return pp;
}

PublicEvaluator::PublicEvaluator(const PublicParams& pp)
    : K_(pp.params.p, pp.modulus),
      C_(make_curve(K_, pp.evaluators.f)),
      ell_(pp.params.ell),
      tab_u_(build_descent_tables(K_, basis_from_matrix(K_, pp.evaluators.basis_primary))),
      tab_up_(build_descent_tables(K_, basis_from_matrix(K_, pp.evaluators.basis_secondary))),
      mats_(pp.evaluators.phi)
{
}

const DescentTable& PublicEvaluator::table(BasisTag tag) const
{
    return tag == BasisTag::primary ? tab_u_ : tab_up_;
}

std::vector<Divisor> PublicEvaluator::comps(const DescentPoint& P) const
{
    return point_components(K_, table(P.tag), C_.g, P);
}

DescentPoint PublicEvaluator::point(const std::vector<Divisor>& c, BasisTag tag) const
{
    return components_to_point(K_, table(tag), C_.g, c, tag);
}

std::vector<Divisor> PublicEvaluator::apply_matrix_comps(const Mat& M, const std::vector<Divisor>& c) const
{
    std::vector<Divisor> out;
    for (size_t i = 0; i < M.rows; ++i)
    {
        Divisor acc = div_zero(K_);
        for (size_t j = 0; j < M.cols; ++j)
            if (M(i, j))
                acc = div_add(K_, C_, acc, M(i, j) == 1 ? c[j] : scalar_mul(K_, C_, M(i, j), c[j]));
        out.push_back(std::move(acc));
    }
    return out;
}

DescentPoint PublicEvaluator::add(const DescentPoint& P, const DescentPoint& Q) const
{
    require(P.tag == Q.tag, "cannot add points of different descent varieties");
    const auto cp = comps(P), cq = comps(Q);
    std::vector<Divisor> r;
    for (size_t i = 0; i < cp.size(); ++i)
        r.push_back(div_add(K_, C_, cp[i], cq[i]));
    return point(r, P.tag);
}

DescentPoint PublicEvaluator::neg(const DescentPoint& P) const
{
    auto c = comps(P);
    for (auto& D : c)
        D = div_neg(K_, D);
    return point(c, P.tag);
}

DescentPoint PublicEvaluator::scalar(uint64_t n, const DescentPoint& P) const
{
    auto c = comps(P);
    for (auto& D : c)
        D = scalar_mul(K_, C_, n, D);
    return point(c, P.tag);
}

DescentPoint PublicEvaluator::phi(size_t i, const DescentPoint& P) const
{
    require(i < mats_.size(), "unknown generator");
    require(P.tag == BasisTag::primary, "phi acts on the primary variety");
    return point(apply_matrix_comps(mats_[i], comps(P)), P.tag);
}

DescentPoint PublicEvaluator::apply(const AlgebraElement& gamma, const DescentPoint& P) const
{
    require(P.tag == BasisTag::primary, "phi acts on the primary variety");
    // trie over reversed words: the last letter acts first
    struct Node
    {
        std::map<uint16_t, size_t> child;
        uint32_t coeff = 0;
    };
    std::vector<Node> trie(1);
    for (const auto& [w, c] : gamma.terms)
    {
        size_t cur = 0;
        for (size_t k = w.size(); k-- > 0;)
        {
            require(w[k] < mats_.size(), "word uses an unknown generator");
            auto it = trie[cur].child.find(w[k]);
            if (it == trie[cur].child.end())
            {
                trie.emplace_back();
                it = trie[cur].child.emplace(w[k], trie.size() - 1).first;
            }
            cur = it->second;
        }
        trie[cur].coeff = c;
    }
    const size_t d = K_.d();
    std::vector<std::vector<Divisor>> bucket(ell_, std::vector<Divisor>(d, div_zero(K_)));
    std::vector<std::pair<size_t, std::vector<Divisor>>> stack{{0, comps(P)}};
    while (!stack.empty())
    {
        auto [node, val] = std::move(stack.back());
        stack.pop_back();
        if (trie[node].coeff)
            for (size_t i = 0; i < d; ++i)
                bucket[trie[node].coeff][i] = div_add(K_, C_, bucket[trie[node].coeff][i], val[i]);
        for (const auto& [letter, next] : trie[node].child)
            stack.emplace_back(next, apply_matrix_comps(mats_[letter], val));
    }
    std::vector<Divisor> out(d, div_zero(K_));
    for (uint32_t c = 1; c < ell_; ++c)
        for (size_t i = 0; i < d; ++i)
            out[i] = div_add(K_, C_, out[i], scalar_mul(K_, C_, c, bucket[c][i]));
    return point(out, P.tag);
}

Fe PublicEvaluator::pair(const DescentPoint& Pp, const DescentPoint& Q) const
{
    return extended_pairing(K_, C_, ell_, tab_up_, tab_u_, Pp, Q);
}

bool PublicEvaluator::is_torsion(const DescentPoint& P) const
{
    return is_zero(scalar(ell_, P));
}

bool PublicEvaluator::is_zero(const DescentPoint& P) const
{
    for (const auto& D : comps(P))
        if (!div_is_zero(D))
            return false;
    return true;
}

AlgebraElement random_u_element(const PublicParams& pp, Rng& rng)
{
    const Zmod zl{pp.params.ell};
    if (uniform(rng, pp.params.N + 1) == 0)
        return pp.f_lambda;
    Word w(uniform(rng, pp.params.N));
    for (auto& letter : w)
        letter = static_cast<uint16_t>(uniform(rng, pp.params.N1));
    return ae_mul(zl, ae_word(w), pp.f_mu);
}

AlgebraElement encode(const PublicParams& pp, uint32_t z, uint64_t seed)
{
    const Zmod zl{pp.params.ell};
    Rng rng(seed);
    AlgebraElement gamma = ae_scalar(zl, z);
    for (size_t k = 0; k < pp.params.t; ++k)
    {
        const uint32_t c = static_cast<uint32_t>(1 + uniform(rng, pp.params.ell - 1));
        gamma = ae_add(zl, gamma, ae_scale(zl, random_u_element(pp, rng), c));
    }
    for (size_t k = 0; k < pp.params.switches; ++k)
        apply_random_switch(zl, gamma, pp.relations, rng);
    return gamma;
}

Fe trilinear_eval(const PublicEvaluator& ev, const PublicParams& pp, uint32_t x, uint32_t y,
                  const AlgebraElement& gamma)
{
    require(ae_degree(gamma) <= pp.params.N, "encoding exceeds the degree bound");
    const DescentPoint Q = ev.scalar(y, pp.D_beta);
    const DescentPoint Pp = ev.scalar(x, pp.D_alpha_prime);
    return ev.pair(Pp, ev.apply(gamma, Q));
}

bool zero_test(const PublicEvaluator& ev, const PublicParams& pp, const AlgebraElement& gamma)
{
    return trilinear_eval(ev, pp, 1, 1, gamma) == ev.field().one();
}

uint32_t trapdoor_decode(const Trapdoor& td, const AlgebraElement& gamma)
{
    const Zmod zl{td.params.ell};
    const size_t d = td.params.d;
    const Mat P = psi(td.mats, gamma);
    Mat L(d, d);
    for (size_t k = 0; k < td.lambda_coeffs.size(); ++k)
        L = mat_add(zl, L, mat_scale(zl, td.mats.mats[k], td.lambda_coeffs[k]));
    const Vec lv1 = mat_vec(zl, L, td.v1), lv2 = mat_vec(zl, L, td.v2);
    const Vec w1 = mat_vec(zl, P, td.v1), w2 = mat_vec(zl, P, td.v2);
    // P V = z V + c Lambda V
    Mat A(2 * d, 2);
    Vec rhs(2 * d);
    for (size_t i = 0; i < d; ++i)
    {
        A(i, 0) = td.v1[i];
        A(i, 1) = lv1[i];
        A(d + i, 0) = td.v2[i];
        A(d + i, 1) = lv2[i];
        rhs[i] = w1[i];
        rhs[d + i] = w2[i];
    }
    require(rank(zl, A) == 2, "V and Lambda V are dependent");
    auto sol = solve(zl, A, rhs);
    require(sol.has_value(), "encoding does not act inside span(V, Lambda V)");
    return (*sol)[0];
}
}  // namespace tmap
