// SPDX-License-Identifier: Apache-2.0
#include <tmap/serialize.hpp>

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace tmap
{
using json = nlohmann::json;

namespace
{
[[noreturn]] void fail(const std::string& path, const std::string& what)
{
    throw SchemaError((path.empty() ? std::string("$") : path) + ": " + what);
}

// A json node plus its location, for error messages.
struct Node
{
    const json& j;
    std::string path;

    Node at(const char* key) const
    {
        if (!j.is_object())
            fail(path, "expected an object");
        auto it = j.find(key);
        if (it == j.end())
            fail(path + "." + key, "missing field");
        return {*it, path + "." + key};
    }
    bool has(const char* key) const { return j.is_object() && j.contains(key); }
    size_t size() const
    {
        if (!j.is_array())
            fail(path, "expected an array");
        return j.size();
    }
    Node operator[](size_t i) const
    {
        if (!j.is_array() || i >= j.size())
            fail(path, "index out of range");
        return {j[i], path + "[" + std::to_string(i) + "]"};
    }
    uint64_t uint(uint64_t bound) const
    {
        if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<int64_t>() >= 0))
            fail(path, "expected a non-negative integer");
        const uint64_t v = j.get<uint64_t>();
        if (v >= bound)
            fail(path, "value " + std::to_string(v) + " out of range (< " + std::to_string(bound) + ")");
        return v;
    }
    uint32_t u32(uint64_t bound) const { return static_cast<uint32_t>(uint(bound)); }
    std::string str() const
    {
        if (!j.is_string())
            fail(path, "expected a string");
        return j.get<std::string>();
    }
};

json parse(const std::string& text)
{
    try
    {
        return json::parse(text);
    }
    catch (const json::parse_error& e)
    {
        throw SchemaError(std::string("$: malformed JSON: ") + e.what());
    }
}

void check_version(const Node& n, const char* kind)
{
    if (n.at("kind").str() != kind)
        fail(n.path + ".kind", std::string("expected \"") + kind + "\"");
    if (n.at("v").uint(1u << 20) != static_cast<uint64_t>(schema_version))
        fail(n.path + ".v", "unsupported schema version");
}

// field elements: d coordinates in the theta power basis

json fe_to(const ExtensionField& K, const Fe& a)
{
    return std::vector<uint32_t>(a.c.begin(), a.c.begin() + static_cast<long>(K.d()));
}

Fe fe_from(const ExtensionField& K, const Node& n)
{
    if (n.size() != K.d())
        fail(n.path, "expected " + std::to_string(K.d()) + " coordinates");
    Fe a{};
    for (size_t i = 0; i < K.d(); ++i)
        a.c[i] = n[i].u32(K.p());
    return a;
}

json fes_to(const ExtensionField& K, const std::vector<Fe>& v)
{
    json a = json::array();
    for (const auto& x : v)
        a.push_back(fe_to(K, x));
    return a;
}

std::vector<Fe> fes_from(const ExtensionField& K, const Node& n)
{
    std::vector<Fe> v;
    for (size_t i = 0; i < n.size(); ++i)
        v.push_back(fe_from(K, n[i]));
    return v;
}

Vec vec_from(const Node& n, uint64_t bound)
{
    Vec v;
    for (size_t i = 0; i < n.size(); ++i)
        v.push_back(n[i].u32(bound));
    return v;
}

json mat_to(const Mat& m)
{
    json rows = json::array();
    for (size_t i = 0; i < m.rows; ++i)
        rows.push_back(std::vector<uint32_t>(m.a.begin() + static_cast<long>(i * m.cols),
                                             m.a.begin() + static_cast<long>((i + 1) * m.cols)));
    return rows;
}

Mat mat_from(const Node& n, size_t rows, size_t cols, uint64_t bound)
{
    if (n.size() != rows)
        fail(n.path, "expected " + std::to_string(rows) + " rows");
    Mat m(rows, cols);
    for (size_t i = 0; i < rows; ++i)
    {
        const Node r = n[i];
        if (r.size() != cols)
            fail(r.path, "expected " + std::to_string(cols) + " columns");
        for (size_t j = 0; j < cols; ++j)
            m(i, j) = r[j].u32(bound);
    }
    return m;
}

KPoly kpoly_from(const ExtensionField& K, const Node& n)
{
    KPoly f = fes_from(K, n);
    if (!f.empty() && K.is_zero(f.back()))
        fail(n.path, "polynomial has a zero leading coefficient");
    return f;
}

json divisor_to(const ExtensionField& K, const Divisor& D)
{
    return {{"a", fes_to(K, D.a)}, {"b", fes_to(K, D.b)}};
}

Divisor divisor_from(const ExtensionField& K, const Node& n)
{
    return {kpoly_from(K, n.at("a")), kpoly_from(K, n.at("b"))};
}

const char* tag_name(BasisTag t)
{
    return t == BasisTag::primary ? "primary" : "secondary";
}

BasisTag tag_from(const Node& n)
{
    const std::string s = n.str();
    if (s == "primary")
        return BasisTag::primary;
    if (s == "secondary")
        return BasisTag::secondary;
    fail(n.path, "unknown basis tag \"" + s + "\"");
}

json point_to(const ExtensionField& K, const DescentPoint& P)
{
    return {{"tag", tag_name(P.tag)}, {"coords", fes_to(K, P.coords)}};
}

DescentPoint point_from(const ExtensionField& K, const Node& n, unsigned g)
{
    DescentPoint P;
    P.tag = tag_from(n.at("tag"));
    P.coords = fes_from(K, n.at("coords"));
    if (P.coords.size() != (2 * g + 1) * K.d())
        fail(n.path + ".coords", "expected " + std::to_string((2 * g + 1) * K.d()) + " coordinates");
    return P;
}

// a polynomial is a list of {exps, frob, coeff} terms; arity comes from the tuple
json multipoly_to(const ExtensionField& K, const MultiPoly& f)
{
    json terms = json::array();
    for (const auto& [m, c] : f.terms)
        terms.push_back({{"exps", m.exps}, {"frob", m.frob}, {"coeff", fe_to(K, c)}});
    return terms;
}

MultiPoly multipoly_from(const ExtensionField& K, const Node& terms, size_t nvars)
{
    MultiPoly f = mp_zero(nvars);
    for (size_t i = 0; i < terms.size(); ++i)
    {
        const Node t = terms[i];
        Monomial m = monomial_one(nvars);
        const Node e = t.at("exps");
        const Node fr = t.at("frob");
        if (e.size() != nvars || fr.size() != nvars)
            fail(t.path, "exponent and tag vectors must have length " + std::to_string(nvars));
        for (size_t v = 0; v < nvars; ++v)
        {
            m.exps[v] = static_cast<uint16_t>(e[v].uint(1u << 16));
            m.frob[v] = static_cast<uint8_t>(fr[v].uint(K.d()));
            if (m.frob[v] && !m.exps[v])
                fail(fr[v].path, "tag on a variable with exponent zero");
        }
        const Fe c = fe_from(K, t.at("coeff"));
        if (K.is_zero(c))
            fail(t.path + ".coeff", "zero coefficient");
        if (!f.terms.emplace(m, c).second)
            fail(t.path, "duplicate monomial");
    }
    return f;
}

json tuple_to(const ExtensionField& K, const DescentTuple& t)
{
    json a = json::array();
    for (const auto& f : t)
        a.push_back(multipoly_to(K, f));
    return a;
}

DescentTuple tuple_from(const ExtensionField& K, const Node& n)
{
    size_t nvars = 0;
    for (size_t i = 0; i < n.size() && !nvars; ++i)
        if (n[i].size() > 0)
            nvars = n[i][0].at("exps").size();
    DescentTuple t;
    for (size_t i = 0; i < n.size(); ++i)
        t.push_back(multipoly_from(K, n[i], nvars));
    return t;
}

json pairing_value_to(const ExtensionField& K, const Fe& v, uint32_t ell)
{
    return {{"value", fe_to(K, v)}, {"order_divides", ell}};
}

Fe pairing_value_from(const ExtensionField& K, const Node& n, uint32_t ell)
{
    if (n.at("order_divides").uint(UINT32_MAX) != ell)
        fail(n.path + ".order_divides", "pairing value tagged with a different ell");
    const Fe v = fe_from(K, n.at("value"));
    if (K.pow(v, ell) != K.one())
        fail(n.path + ".value", "value is not an ell-th root of unity");
    return v;
}

json algebra_to(const AlgebraElement& a)
{
    json terms = json::array();
    for (const auto& [w, c] : a.terms)
        terms.push_back({{"c", c}, {"w", w}});
    return terms;
}

AlgebraElement algebra_from(const Node& n, uint32_t ell, size_t n1)
{
    AlgebraElement a;
    for (size_t i = 0; i < n.size(); ++i)
    {
        const Node t = n[i];
        const uint32_t c = t.at("c").u32(ell);
        if (c == 0)
            fail(t.path + ".c", "zero coefficient");
        const Node w = t.at("w");
        Word word;
        for (size_t k = 0; k < w.size(); ++k)
            word.push_back(static_cast<uint16_t>(w[k].uint(n1)));
        if (!a.terms.emplace(word, c).second)
            fail(t.path, "duplicate word");
    }
    return a;
}

json params_to(const ProtocolParams& p)
{
    return {{"p", p.p}, {"d", p.d}, {"g", p.g}, {"ell", p.ell}, {"N", p.N}, {"N1", p.N1}, {"t", p.t},
            {"switches", p.switches}};
}

ProtocolParams params_from(const Node& n)
{
    ProtocolParams p;
    p.p = n.at("p").u32(1u << 16);
    p.d = n.at("d").uint(64);
    p.g = static_cast<unsigned>(n.at("g").uint(64));
    p.ell = n.at("ell").u32(1u << 16);
    p.N = n.at("N").uint(1u << 16);
    p.N1 = n.at("N1").uint(1u << 16);
    p.t = n.at("t").uint(1u << 20);
    p.switches = n.at("switches").uint(1u << 20);
    try
    {
        return normalize_params(p);
    }
    catch (const PreconditionError& e)
    {
        fail(n.path, std::string("parameters outside the supported envelope: ") + e.what());
    }
}

ExtensionField field_from(const Node& n, uint32_t p, size_t d)
{
    PolyP m = vec_from(n, p);
    if (m.size() != d + 1 || m.back() != 1)
        fail(n.path, "modulus must be monic of degree d");
    if (!is_irreducible(Zmod{p}, m))
        fail(n.path, "modulus is reducible");
    return ExtensionField(p, m);
}

json relation_to(const Relation& r)
{
    return {{"i", r.i}, {"j", r.j}, {"r", r.r}, {"L", r.L}};
}

Relation relation_from(const Node& n, uint32_t ell, size_t n1)
{
    Relation r;
    r.i = static_cast<uint16_t>(n.at("i").uint(n1));
    r.j = static_cast<uint16_t>(n.at("j").uint(n1));
    r.r = n.at("r").u32(ell);
    r.L = vec_from(n.at("L"), ell);
    if (r.L.size() != n1)
        fail(n.path + ".L", "expected " + std::to_string(n1) + " coefficients");
    return r;
}

std::string dump(const json& j)
{
    return j.dump(1) + "\n";
}
}  // namespace

std::string dump_public_params(const PublicParams& pp)
{
    const ExtensionField K(pp.params.p, pp.modulus);
    json j;
    j["v"] = schema_version;
    j["kind"] = "public_params";
    j["params"] = params_to(pp.params);
    j["field"] = {{"p", pp.params.p}, {"d", pp.params.d}, {"modulus", pp.modulus}};
    j["theta_tag"] = "theta power basis";
    j["ell"] = pp.params.ell;
    j["N"] = pp.params.N;
    j["points"] = {{"D_alpha_prime", point_to(K, pp.D_alpha_prime)}, {"D_beta", point_to(K, pp.D_beta)}};
    j["f_lambda"] = algebra_to(pp.f_lambda);
    j["f_mu"] = algebra_to(pp.f_mu);
    json rels = json::array();
    for (const auto& r : pp.relations)
        rels.push_back(relation_to(r));
    j["relations"] = rels;
    j["zeta"] = pairing_value_to(K, pp.zeta, pp.params.ell);
    json masked = json::array();
    for (const auto& m : pp.masked)
        masked.push_back({{"name", m.name}, {"tag", tag_name(m.tag)}, {"tuple", tuple_to(K, m.tuple)}});
    j["masked"] = masked;
    json phi = json::array();
    for (const auto& M : pp.evaluators.phi)
        phi.push_back(mat_to(M));
    j["phi"] = phi;
    j["evaluators"] = {
        {"curve", {{"p", pp.params.p}, {"d", pp.params.d}, {"modulus", pp.modulus}, {"f", fes_to(K, pp.evaluators.f)}}},
        {"basis_primary", mat_to(pp.evaluators.basis_primary)},
        {"basis_secondary", mat_to(pp.evaluators.basis_secondary)}};
    return dump(j);
}

PublicParams load_public_params(const std::string& text)
{
    const json j = parse(text);
    const Node root{j, "$"};
    check_version(root, "public_params");
    PublicParams pp;
    pp.params = params_from(root.at("params"));
    const auto& P = pp.params;
    const Node field = root.at("field");
    if (field.at("p").uint(UINT32_MAX) != P.p || field.at("d").uint(UINT32_MAX) != P.d)
        fail(field.path, "field disagrees with params");
    if (root.at("ell").uint(UINT32_MAX) != P.ell)
        fail(root.path + ".ell", "ell disagrees with params");
    if (root.at("N").uint(UINT32_MAX) != P.N)
        fail(root.path + ".N", "N disagrees with params");
    const ExtensionField K = field_from(field.at("modulus"), P.p, P.d);
    pp.modulus = K.modulus();
    const Node pts = root.at("points");
    pp.D_alpha_prime = point_from(K, pts.at("D_alpha_prime"), P.g);
    pp.D_beta = point_from(K, pts.at("D_beta"), P.g);
    if (pp.D_alpha_prime.tag != BasisTag::secondary)
        fail(pts.path + ".D_alpha_prime.tag", "expected \"secondary\"");
    if (pp.D_beta.tag != BasisTag::primary)
        fail(pts.path + ".D_beta.tag", "expected \"primary\"");
    pp.f_lambda = algebra_from(root.at("f_lambda"), P.ell, P.N1);
    pp.f_mu = algebra_from(root.at("f_mu"), P.ell, P.N1);
    const Node rels = root.at("relations");
    for (size_t i = 0; i < rels.size(); ++i)
        pp.relations.push_back(relation_from(rels[i], P.ell, P.N1));
    pp.zeta = pairing_value_from(K, root.at("zeta"), P.ell);
    const Node masked = root.at("masked");
    for (size_t i = 0; i < masked.size(); ++i)
    {
        const Node m = masked[i];
        pp.masked.push_back({m.at("name").str(), tag_from(m.at("tag")), tuple_from(K, m.at("tuple"))});
    }
    const Node ev = root.at("evaluators");
    const Node curve = ev.at("curve");
    if (curve.at("p").uint(UINT32_MAX) != P.p || curve.at("d").uint(UINT32_MAX) != P.d ||
        vec_from(curve.at("modulus"), P.p) != pp.modulus)
        fail(curve.path, "curve is defined over a different field");
    pp.evaluators.f = kpoly_from(K, curve.at("f"));
    if (kp_deg(pp.evaluators.f) != static_cast<long>(2 * P.g + 1) || pp.evaluators.f.back() != K.one())
        fail(curve.path + ".f", "curve polynomial must be monic of degree 2g + 1");
    pp.evaluators.basis_primary = mat_from(ev.at("basis_primary"), P.d, P.d, P.p);
    pp.evaluators.basis_secondary = mat_from(ev.at("basis_secondary"), P.d, P.d, P.p);
    if (rank(K.zp(), pp.evaluators.basis_primary) < P.d)
        fail(ev.path + ".basis_primary", "basis matrix is singular");
    if (rank(K.zp(), pp.evaluators.basis_secondary) < P.d)
        fail(ev.path + ".basis_secondary", "basis matrix is singular");
    const Node phi = root.at("phi");
    if (phi.size() != P.N1)
        fail(phi.path, "expected " + std::to_string(P.N1) + " matrices");
    for (size_t i = 0; i < phi.size(); ++i)
        pp.evaluators.phi.push_back(mat_from(phi[i], P.d, P.d, P.ell));
    return pp;
}

std::string dump_trapdoor(const Trapdoor& td)
{
    const ExtensionField K(td.params.p, td.modulus);
    json j;
    j["v"] = schema_version;
    j["kind"] = "trapdoor";
    j["params"] = params_to(td.params);
    j["seed"] = td.seed;
    j["modulus"] = td.modulus;
    j["f"] = fes_to(K, td.f);
    j["order"] = to_string_u128(td.order);
    j["basis_primary"] = mat_to(td.basis_primary);
    j["basis_secondary"] = mat_to(td.basis_secondary);
    j["a"] = divisor_to(K, td.a);
    j["b"] = divisor_to(K, td.b);
    j["v1"] = td.v1;
    j["v2"] = td.v2;
    json mats = json::array();
    for (const auto& M : td.mats.mats)
        mats.push_back(mat_to(M));
    j["mats"] = mats;
    j["lambda"] = td.lambda_coeffs;
    j["mu"] = td.mu_coeffs;
    j["curve_attempts"] = td.curve_attempts;
    return dump(j);
}

Trapdoor load_trapdoor(const std::string& text)
{
    const json j = parse(text);
    const Node root{j, "$"};
    check_version(root, "trapdoor");
    Trapdoor td;
    td.params = params_from(root.at("params"));
    const auto& P = td.params;
    td.seed = root.at("seed").uint(UINT64_MAX);
    const ExtensionField K = field_from(root.at("modulus"), P.p, P.d);
    td.modulus = K.modulus();
    td.f = kpoly_from(K, root.at("f"));
    try
    {
        td.order = parse_u128(root.at("order").str());
    }
    catch (const SchemaError& e)
    {
        fail(root.path + ".order", e.what());
    }
    td.basis_primary = mat_from(root.at("basis_primary"), P.d, P.d, P.p);
    td.basis_secondary = mat_from(root.at("basis_secondary"), P.d, P.d, P.p);
    td.a = divisor_from(K, root.at("a"));
    td.b = divisor_from(K, root.at("b"));
    td.v1 = vec_from(root.at("v1"), P.ell);
    td.v2 = vec_from(root.at("v2"), P.ell);
    if (td.v1.size() != P.d || td.v2.size() != P.d)
        fail(root.path + ".v1", "coordinate vectors must have length d");
    td.mats = {P.d, P.ell, {}};
    const Node mats = root.at("mats");
    if (mats.size() != P.N1)
        fail(mats.path, "expected " + std::to_string(P.N1) + " matrices");
    for (size_t i = 0; i < mats.size(); ++i)
        td.mats.mats.push_back(mat_from(mats[i], P.d, P.d, P.ell));
    td.lambda_coeffs = vec_from(root.at("lambda"), P.ell);
    td.mu_coeffs = vec_from(root.at("mu"), P.ell);
    if (td.lambda_coeffs.size() != P.N1 || td.mu_coeffs.size() != P.N1)
        fail(root.path + ".lambda", "coefficient vectors must have length N1");
    td.curve_attempts = root.at("curve_attempts").uint(UINT64_MAX);
    return td;
}

std::string dump_encoding(const AlgebraElement& gamma, uint32_t ell)
{
    json j;
    j["v"] = schema_version;
    j["kind"] = "encoding";
    j["ell"] = ell;
    j["gamma"] = algebra_to(gamma);
    return dump(j);
}

AlgebraElement load_encoding(const std::string& text, uint32_t ell)
{
    const json j = parse(text);
    const Node root{j, "$"};
    check_version(root, "encoding");
    if (root.at("ell").uint(UINT32_MAX) != ell)
        fail(root.path + ".ell", "encoding was made for a different ell");
    return algebra_from(root.at("gamma"), ell, 1u << 16);
}

std::string dump_attack_report(const AttackReport& rep)
{
    json j;
    j["v"] = schema_version;
    j["attack"] = rep.attack;
    j["applicable"] = rep.applicable;
    j["dims"] = rep.dims;
    j["recovered"] = rep.recovered;
    j["details"] = rep.details;
    if (rep.basis)
        j["basis"] = mat_to(rep.basis->to_theta);
    return dump(j);
}

std::string dump_scan_report(const ScanReport& rep, size_t tuples)
{
    json j;
    j["v"] = schema_version;
    j["attack"] = "descent-scan";
    j["applicable"] = true;
    j["dims"] = {{"tuples", tuples}, {"trials", rep.trials}, {"hits", rep.hits.size()}};
    j["recovered"] = !rep.hits.empty();
    json hits = json::array();
    for (const auto& h : rep.hits)
        hits.push_back({{"trial", h.trial}, {"tuple", h.tuple}, {"gamma", mat_to(h.gamma)}, {"key", h.key.exps}});
    j["details"] = {{"hits", hits}};
    return dump(j);
}

std::string dump_harvest_stats(const HarvestStats& st)
{
    json j;
    j["v"] = schema_version;
    j["attack"] = "harvest-stats";
    j["applicable"] = true;
    j["dims"] = {{"requested", st.requested}, {"steps", st.steps},         {"distinct", st.distinct},
                 {"chart_points", st.chart_points}, {"torsion_checked", st.torsion_checked},
                 {"torsion_ok", st.torsion_ok}};
    j["recovered"] = false;
    j["details"] = "points harvested through the published group law and phi evaluators";
    return dump(j);
}

std::string dump_descent_point(const ExtensionField& K, const DescentPoint& P)
{
    return dump(point_to(K, P));
}

DescentPoint load_descent_point(const ExtensionField& K, const std::string& text)
{
    const json j = parse(text);
    const Node n{j, "$"};
    const size_t len = n.at("coords").size();
    if (len % K.d() != 0 || (len / K.d()) % 2 == 0)
        fail(n.path + ".coords", "coordinate count is not (2g + 1) d");
    return point_from(K, n, static_cast<unsigned>((len / K.d() - 1) / 2));
}

std::string dump_tuple(const ExtensionField& K, const DescentTuple& t)
{
    return dump(tuple_to(K, t));
}

DescentTuple load_tuple(const ExtensionField& K, const std::string& text)
{
    const json j = parse(text);
    return tuple_from(K, Node{j, "$"});
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw PreconditionError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw PreconditionError("cannot write " + path);
    out << text;
}
}  // namespace tmap
