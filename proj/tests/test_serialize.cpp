// SPDX-License-Identifier: Apache-2.0
#include "helpers.hpp"

#include <tmap/serialize.hpp>

#include <doctest.h>
#include <json.hpp>

#include <filesystem>

using namespace tmap;
using namespace tmap::test;
using json = nlohmann::json;

namespace
{
// Loads a mutated document and returns the SchemaError message, or "" when it loads.
template <class Load>
std::string schema_error(const json& doc, Load load)
{
    try
    {
        load(doc.dump());
    }
    catch (const SchemaError& e)
    {
        return e.what();
    }
    return "";
}

bool mentions(const std::string& msg, const std::string& path)
{
    return msg.find(path) != std::string::npos;
}
}  // namespace

TEST_CASE("public params round trip")
{
    const Instance& in = instance(1);
    const std::string text = dump_public_params(in.pp);
    const PublicParams back = load_public_params(text);
    CHECK(dump_public_params(back) == text);
    CHECK(back.params == in.pp.params);
    CHECK(back.zeta == in.pp.zeta);
    CHECK(back.D_beta == in.pp.D_beta);
    CHECK(back.relations == in.pp.relations);
    CHECK(back.f_mu == in.pp.f_mu);
    REQUIRE(back.masked.size() == in.pp.masked.size());
    CHECK(back.masked[3].tuple == in.pp.masked[3].tuple);

    // the reloaded evaluator computes the same values
    const PublicEvaluator ev(back);
    const AlgebraElement g = encode(back, 2, 5);
    CHECK(g == encode(in.pp, 2, 5));
    CHECK(trilinear_eval(ev, back, 1, 3, g) == trilinear_eval(*in.ev, in.pp, 1, 3, g));

    const json doc = json::parse(text);
    CHECK(doc["v"] == schema_version);
    CHECK(doc["kind"] == "public_params");
    CHECK(doc["zeta"]["order_divides"] == 5);
    for (const char* key : {"field", "theta_tag", "points", "phi", "f_lambda", "f_mu", "relations", "ell", "N"})
        CHECK(doc.contains(key));
    CHECK(doc["field"]["modulus"].size() == 5);
    CHECK(doc["evaluators"]["curve"].contains("f"));
}

TEST_CASE("trapdoor round trip regenerates the public params")
{
    const Instance& in = instance(1);
    const std::string text = dump_trapdoor(in.td);
    const Trapdoor back = load_trapdoor(text);
    CHECK(dump_trapdoor(back) == text);
    CHECK(back.order == in.td.order);
    CHECK(dump_public_params(publish(back)) == dump_public_params(in.pp));
    CHECK(trapdoor_decode(back, encode(in.pp, 4, 1)) == 4);
}

TEST_CASE("encoding, point and tuple round trips")
{
    const Instance& in = instance(1);
    const ExtensionField& K = in.ev->field();
    const AlgebraElement g = encode(in.pp, 3, 9);
    CHECK(load_encoding(dump_encoding(g, 5), 5) == g);
    CHECK(load_encoding(dump_encoding(AlgebraElement{}, 5), 5).terms.empty());
    CHECK(load_descent_point(K, dump_descent_point(K, in.pp.D_alpha_prime)) == in.pp.D_alpha_prime);
    CHECK(load_tuple(K, dump_tuple(K, in.pp.masked[0].tuple)) == in.pp.masked[0].tuple);

    json doc = json::parse(dump_encoding(g, 5));
    doc["gamma"][0]["c"] = 5;
    const std::string msg = schema_error(doc, [](const std::string& t) { return load_encoding(t, 5); });
    CHECK(mentions(msg, "$.gamma[0].c"));
    doc = json::parse(dump_encoding(g, 5));
    doc["ell"] = 7;
    CHECK_FALSE(schema_error(doc, [](const std::string& t) { return load_encoding(t, 5); }).empty());
}

TEST_CASE("schema errors name the offending path")
{
    const Instance& in = instance(1);
    const json good = json::parse(dump_public_params(in.pp));
    auto load = [](const std::string& t) { return load_public_params(t); };

    CHECK_THROWS_AS(load_public_params("{not json"), SchemaError);
    CHECK_THROWS_WITH_AS(load_public_params("[1, 2]"), doctest::Contains("$"), SchemaError);

    json doc = good;
    doc.erase("zeta");
    CHECK(mentions(schema_error(doc, load), "$.zeta"));

    doc = good;
    doc["kind"] = "trapdoor";
    CHECK(mentions(schema_error(doc, load), "$.kind"));

    doc = good;
    doc["v"] = 2;
    CHECK(mentions(schema_error(doc, load), "$.v"));

    doc = good;
    doc["points"]["D_beta"]["coords"][0][0] = 7;
    CHECK(mentions(schema_error(doc, load), "$.points.D_beta.coords[0][0]"));

    doc = good;
    doc["points"]["D_beta"]["tag"] = "secondary";
    CHECK(mentions(schema_error(doc, load), "$.points.D_beta.tag"));

    doc = good;
    doc["zeta"]["value"] = json::array({2, 0, 0, 0});
    CHECK(mentions(schema_error(doc, load), "$.zeta"));

    doc = good;
    doc["field"]["modulus"] = json::array({1, 0, 0, 0, 1});  // x^4 + 1 = (x^2 + 3x + 1)(x^2 + 4x + 1) mod 7
    CHECK(mentions(schema_error(doc, load), "$.field.modulus"));

    doc = good;
    doc["ell"] = 7;
    CHECK(mentions(schema_error(doc, load), "$.ell"));

    doc = good;
    doc["params"]["ell"] = 7;
    CHECK(mentions(schema_error(doc, load), "$.params"));

    doc = good;
    doc["evaluators"]["basis_primary"][1] = doc["evaluators"]["basis_primary"][0];
    CHECK(mentions(schema_error(doc, load), "$.evaluators.basis_primary"));

    doc = good;
    doc["relations"][0]["i"] = "zero";
    CHECK(mentions(schema_error(doc, load), "$.relations[0].i"));

    doc = good;
    doc["masked"][2]["tuple"][1][0]["coeff"] = json::array({1, 2});
    CHECK(mentions(schema_error(doc, load), "$.masked[2].tuple[1][0].coeff"));

    json td = json::parse(dump_trapdoor(in.td));
    td["order"] = "12x";
    CHECK(mentions(schema_error(td, [](const std::string& t) { return load_trapdoor(t); }), "$.order"));
}

TEST_CASE("reports")
{
    AttackReport r;
    r.attack = "linear-term";
    r.applicable = false;
    r.dims = {{"L_hat", 12}, {"L_hat_without_target", 8}};
    r.details = "dimension conditions unmet";
    const json doc = json::parse(dump_attack_report(r));
    CHECK(doc["attack"] == "linear-term");
    CHECK(doc["applicable"] == false);
    CHECK(doc["recovered"] == false);
    CHECK(doc["dims"]["L_hat"] == 12);
    CHECK(doc["details"] == "dimension conditions unmet");

    ScanReport s;
    s.trials = 7;
    const json sd = json::parse(dump_scan_report(s, 3));
    CHECK(sd["attack"] == "descent-scan");
    CHECK(sd["dims"]["trials"] == 7);
    CHECK(sd["dims"]["tuples"] == 3);
    CHECK(sd["details"]["hits"].empty());

    HarvestStats h;
    h.requested = 5;
    h.distinct = 4;
    CHECK(json::parse(dump_harvest_stats(h))["dims"]["distinct"] == 4);
}

TEST_CASE("file helpers")
{
    const auto dir = std::filesystem::temp_directory_path() / "tmap_serialize_test";
    std::filesystem::create_directories(dir);
    const std::string path = (dir / "x.json").string();
    write_file(path, "{\"a\": 1}");
    CHECK(read_file(path) == "{\"a\": 1}");
    CHECK_THROWS_AS(read_file((dir / "missing.json").string()), PreconditionError);
    std::filesystem::remove_all(dir);
}
