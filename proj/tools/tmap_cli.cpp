// SPDX-License-Identifier: Apache-2.0
#include <tmap/attacks.hpp>
#include <tmap/serialize.hpp>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iostream>

using namespace tmap;

namespace
{
struct Options
{
    ProtocolParams params;
    std::optional<uint64_t> seed;
    std::string out;
    std::string pp_path;
    std::string trapdoor_path;
    std::string gamma_path;
    std::string toy;
    std::string attack;
    uint32_t x = 0, y = 0, z = 0;
    size_t count = 500;
    size_t combos = 100;
    size_t reps = 5;
};

void print_fe(const ExtensionField& K, const Fe& a)
{
    std::cout << "[";
    for (size_t i = 0; i < K.d(); ++i)
        std::cout << (i ? ", " : "") << a.c[i];
    std::cout << "]";
}

void emit(const Options& o, const std::string& text)
{
    if (o.out.empty())
        std::cout << text;
    else
        write_file(o.out, text);
}

uint64_t need_seed(const Options& o)
{
    if (!o.seed)
        throw PreconditionError("--seed is required");
    return *o.seed;
}

PublicParams need_pp(const Options& o)
{
    if (o.pp_path.empty())
        throw PreconditionError("--pp is required");
    return load_public_params(read_file(o.pp_path));
}

Trapdoor need_trapdoor(const Options& o)
{
    if (o.trapdoor_path.empty())
        throw PreconditionError("--trapdoor is required");
    return load_trapdoor(read_file(o.trapdoor_path));
}

AlgebraElement need_gamma(const Options& o, uint32_t ell)
{
    if (o.gamma_path.empty())
        throw PreconditionError("--gamma is required");
    return load_encoding(read_file(o.gamma_path), ell);
}

void write_pair(const std::string& dir, const Trapdoor& td, const PublicParams& pp)
{
    std::filesystem::create_directories(dir);
    write_file(dir + "/publicparams.json", dump_public_params(pp));
    write_file(dir + "/trapdoor.json", dump_trapdoor(td));
}

int cmd_setup(const Options& o)
{
    const uint64_t seed = need_seed(o);
    spdlog::info("setup p={} d={} g={} ell={} seed={}", o.params.p, o.params.d, o.params.g, o.params.ell, seed);
    const Trapdoor td = setup(o.params, seed);
    spdlog::info("curve found after {} attempts, #J = {}", td.curve_attempts, to_string_u128(td.order));
    const PublicParams pp = publish(td);
    const std::string dir = o.out.empty() ? "." : o.out;
    write_pair(dir, td, pp);
    const ExtensionField K(pp.params.p, pp.modulus);
    std::cout << "wrote " << dir << "/publicparams.json and " << dir << "/trapdoor.json\nzeta = ";
    print_fe(K, pp.zeta);
    std::cout << "\n";
    return 0;
}

int cmd_publish(const Options& o)
{
    const Trapdoor td = need_trapdoor(o);
    emit(o, dump_public_params(publish(td)));
    return 0;
}

int cmd_encode(const Options& o)
{
    const PublicParams pp = need_pp(o);
    const AlgebraElement gamma = encode(pp, o.z % pp.params.ell, need_seed(o));
    spdlog::info("encoding has {} terms, degree {}", gamma.terms.size(), ae_degree(gamma));
    emit(o, dump_encoding(gamma, pp.params.ell));
    return 0;
}

int cmd_eval(const Options& o)
{
    const PublicParams pp = need_pp(o);
    const PublicEvaluator ev(pp);
    const AlgebraElement gamma = need_gamma(o, pp.params.ell);
    const Fe v = trilinear_eval(ev, pp, o.x % pp.params.ell, o.y % pp.params.ell, gamma);
    std::cout << "value = ";
    print_fe(ev.field(), v);
    if (auto k = mu_dlog(ev.field(), pp.zeta, v, pp.params.ell))
        std::cout << "\nzeta^" << *k << "\n";
    else
        throw InvariantError("trilinear value is not a power of zeta");
    return 0;
}

int cmd_zero_test(const Options& o)
{
    const PublicParams pp = need_pp(o);
    const PublicEvaluator ev(pp);
    std::cout << (zero_test(ev, pp, need_gamma(o, pp.params.ell)) ? "true" : "false") << "\n";
    return 0;
}

int cmd_decode(const Options& o)
{
    const Trapdoor td = need_trapdoor(o);
    std::cout << trapdoor_decode(td, need_gamma(o, td.params.ell)) << "\n";
    return 0;
}

int cmd_attack(const Options& o)
{
    const uint64_t seed = o.seed.value_or(1);
    if (o.attack == "linear-term" && !o.toy.empty())
    {
        ProtocolParams P = o.params;
        PolyP modulus;
        if (!o.pp_path.empty())
        {
            const PublicParams pp = need_pp(o);
            P = pp.params;
            modulus = pp.modulus;
        }
        const ExtensionField K = modulus.empty() ? make_extension(P.p, P.d, derive_seed(seed, 1))
                                                 : ExtensionField(P.p, modulus);
        ToyInstance toy;
        if (o.toy == "hyperplane")
            toy = hyperplane_toy(K, seed);
        else if (o.toy == "cubic")
            toy = cubic_toy(K, seed);
        else
            throw PreconditionError("unknown toy \"" + o.toy + "\" (hyperplane, cubic)");
        emit(o, dump_attack_report(run_toy(K, toy, seed)));
        return 0;
    }
    const PublicParams pp = need_pp(o);
    const PublicEvaluator ev(pp);
    const ExtensionField& K = ev.field();
    if (o.attack == "linear-term")
    {
        const ToyInstance inst = genus2_instance(ev, pp, basis_from_matrix(K, pp.evaluators.basis_primary), seed);
        spdlog::info("{}", inst.samples.log.front());
        emit(o, dump_attack_report(run_toy(K, inst, seed)));
        return 0;
    }
    if (o.attack == "descent-scan")
    {
        // audit against the true tables: from the trapdoor when given
        Mat basis = pp.evaluators.basis_primary;
        Mat basis_secondary = pp.evaluators.basis_secondary;
        if (!o.trapdoor_path.empty())
        {
            const Trapdoor td = need_trapdoor(o);
            basis = td.basis_primary;
            basis_secondary = td.basis_secondary;
        }
        ScanReport total;
        size_t tuples = 0;
        for (auto tag : {BasisTag::primary, BasisTag::secondary})
        {
            std::vector<DescentTuple> space;
            for (const auto& m : pp.masked)
                if (m.tag == tag)
                    space.push_back(m.tuple);
            tuples += space.size();
            const DescentTable tab = build_descent_tables(
                K, basis_from_matrix(K, tag == BasisTag::primary ? basis : basis_secondary));
            const ScanReport r = global_descent_scan(K, space, tab, o.combos, derive_seed(seed, tuples));
            total.trials += r.trials;
            total.hits.insert(total.hits.end(), r.hits.begin(), r.hits.end());
        }
        emit(o, dump_scan_report(total, tuples));
        return 0;
    }
    if (o.attack == "harvest-stats")
    {
        HarvestStats st;
        harvest(ev, pp, o.count, seed, &st);
        emit(o, dump_harvest_stats(st));
        return 0;
    }
    throw PreconditionError("unknown attack \"" + o.attack + "\" (linear-term, descent-scan, harvest-stats)");
}

template <class F>
double median_ms(size_t reps, F&& f)
{
    std::vector<double> t;
    for (size_t i = 0; i < reps; ++i)
    {
        const auto t0 = std::chrono::steady_clock::now();
        f(i);
        t.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
    }
    std::sort(t.begin(), t.end());
    return t[t.size() / 2];
}

int cmd_bench(const Options& o)
{
    const PublicParams pp = need_pp(o);
    const PublicEvaluator ev(pp);
    const size_t reps = std::max<size_t>(1, o.reps);
    const uint64_t seed = o.seed.value_or(1);
    std::vector<AlgebraElement> enc(reps);
    const double t_pair = median_ms(reps, [&](size_t) { ev.pair(pp.D_alpha_prime, pp.D_beta); });
    const double t_add = median_ms(reps, [&](size_t) { ev.add(pp.D_beta, pp.D_beta); });
    const double t_enc =
        median_ms(reps, [&](size_t i) { enc[i] = encode(pp, static_cast<uint32_t>(i % pp.params.ell), seed + i); });
    const double t_eval = median_ms(reps, [&](size_t i) { trilinear_eval(ev, pp, 1, 1, enc[i]); });
    std::cout << "median over " << reps << " runs (ms)\n"
              << "pairing " << t_pair << "\nadd " << t_add << "\nencode " << t_enc << "\neval " << t_eval << "\n";
    return 0;
}

void add_params(CLI::App* c, Options& o)
{
    c->add_option("--p", o.params.p, "base prime");
    c->add_option("--d", o.params.d, "extension degree");
    c->add_option("--g", o.params.g, "genus");
    c->add_option("--ell", o.params.ell, "torsion prime");
    c->add_option("--N", o.params.N, "degree bound of encodings");
    c->add_option("--N1", o.params.N1, "number of generators");
    c->add_option("--t", o.params.t, "terms per encoding");
}

void init_logging()
{
    auto logger = spdlog::stderr_color_mt("tmap");
    spdlog::set_default_logger(logger);
    spdlog::set_level(spdlog::level::warn);
    if (const char* lvl = std::getenv("TRILINEAR_LOG"))
        spdlog::set_level(spdlog::level::from_str(lvl));
}
}  // namespace

int main(int argc, char** argv)
{
    init_logging();
    Options o;
    CLI::App app{"Trilinear map toolkit over Weil descents of genus-2 jacobians"};
    app.require_subcommand(1);

    auto* setup_cmd = app.add_subcommand("setup", "run setup and write publicparams.json + trapdoor.json");
    add_params(setup_cmd, o);
    setup_cmd->add_option("--seed", o.seed, "setup seed")->required();
    setup_cmd->add_option("--out", o.out, "output directory");

    auto* publish_cmd = app.add_subcommand("publish", "regenerate public parameters from a trapdoor");
    publish_cmd->add_option("--trapdoor", o.trapdoor_path)->required();
    publish_cmd->add_option("--out", o.out);

    auto* encode_cmd = app.add_subcommand("encode", "encode z in the third slot");
    encode_cmd->add_option("z", o.z)->required();
    encode_cmd->add_option("--pp", o.pp_path)->required();
    encode_cmd->add_option("--seed", o.seed)->required();
    encode_cmd->add_option("--out", o.out);

    auto* eval_cmd = app.add_subcommand("eval", "trilinear evaluation at (x, y, gamma)");
    eval_cmd->add_option("x", o.x)->required();
    eval_cmd->add_option("y", o.y)->required();
    eval_cmd->add_option("--gamma", o.gamma_path)->required();
    eval_cmd->add_option("--pp", o.pp_path)->required();

    auto* zero_cmd = app.add_subcommand("zero-test", "public zero test of an encoding");
    zero_cmd->add_option("--gamma", o.gamma_path)->required();
    zero_cmd->add_option("--pp", o.pp_path)->required();

    auto* decode_cmd = app.add_subcommand("decode", "trapdoor decoding of an encoding");
    decode_cmd->add_option("--gamma", o.gamma_path)->required();
    decode_cmd->add_option("--trapdoor", o.trapdoor_path)->required();

    auto* attack_cmd = app.add_subcommand("attack", "run an attack against published parameters");
    attack_cmd->add_option("name", o.attack, "linear-term | descent-scan | harvest-stats")->required();
    attack_cmd->add_option("--pp", o.pp_path);
    attack_cmd->add_option("--trapdoor", o.trapdoor_path);
    attack_cmd->add_option("--toy", o.toy, "hyperplane | cubic (linear-term only)");
    attack_cmd->add_option("--seed", o.seed);
    attack_cmd->add_option("--out", o.out);
    attack_cmd->add_option("--count", o.count, "harvest size");
    attack_cmd->add_option("--combos", o.combos, "random combinations per scan");
    add_params(attack_cmd, o);

    auto* bench_cmd = app.add_subcommand("bench", "median timings of the public operations");
    bench_cmd->add_option("--pp", o.pp_path)->required();
    bench_cmd->add_option("--reps", o.reps);
    bench_cmd->add_option("--seed", o.seed);

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e)
    {
        app.exit(e);
        return 2;
    }

    try
    {
        if (setup_cmd->parsed())
            return cmd_setup(o);
        if (publish_cmd->parsed())
            return cmd_publish(o);
        if (encode_cmd->parsed())
            return cmd_encode(o);
        if (eval_cmd->parsed())
            return cmd_eval(o);
        if (zero_cmd->parsed())
            return cmd_zero_test(o);
        if (decode_cmd->parsed())
            return cmd_decode(o);
        if (attack_cmd->parsed())
            return cmd_attack(o);
        if (bench_cmd->parsed())
            return cmd_bench(o);
    }
    catch (const PreconditionError& e)
    {
        spdlog::error("precondition: {}", e.what());
        return 2;
    }
    catch (const DegenerateSupport& e)
    {
        spdlog::error("degenerate support: {}", e.what());
        return 2;
    }
    catch (const SchemaError& e)
    {
        spdlog::error("schema: {}", e.what());
        return 3;
    }
    catch (const InvariantError& e)
    {
        spdlog::error("internal invariant breach: {}", e.what());
        return 4;
    }
    catch (const std::exception& e)
    {
        spdlog::error("internal error: {}", e.what());
        return 4;
    }
    return 0;
}
