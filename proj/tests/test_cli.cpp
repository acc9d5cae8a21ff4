// SPDX-License-Identifier: Apache-2.0
#include <tmap/serialize.hpp>

#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>

using namespace tmap;
using json = nlohmann::json;

namespace
{
struct Run
{
    int code = -1;
    std::string out;  // stdout and stderr combined
};

Run cli(const std::string& args)
{
    const std::string cmd = std::string(TMAP_CLI_PATH) + " " + args + " 2>&1";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

const std::string dir = "cli_work";

void prepare()
{
    static bool done = false;
    if (done)
        return;
    std::filesystem::remove_all(dir);
    const Run r = cli("setup --seed 1 --out " + dir);
    REQUIRE(r.code == 0);
    done = true;
}

std::string pp_path()
{
    return dir + "/publicparams.json";
}

std::string td_path()
{
    return dir + "/trapdoor.json";
}
}  // namespace

TEST_CASE("setup writes deterministic, schema-valid files")
{
    prepare();
    const PublicParams pp = load_public_params(read_file(pp_path()));
    const ExtensionField K(pp.params.p, pp.modulus);
    CHECK(pp.zeta != K.one());
    CHECK(K.pow(pp.zeta, 5) == K.one());
    CHECK(json::parse(read_file(pp_path()))["zeta"]["order_divides"] == 5);

    const Run again = cli("setup --p 7 --d 4 --g 2 --ell 5 --seed 1 --out " + dir + "/again");
    CHECK(again.code == 0);
    CHECK(read_file(dir + "/again/publicparams.json") == read_file(pp_path()));
    CHECK(read_file(dir + "/again/trapdoor.json") == read_file(td_path()));

    const Run pub = cli("publish --trapdoor " + td_path() + " --out " + dir + "/republished.json");
    CHECK(pub.code == 0);
    CHECK(read_file(dir + "/republished.json") == read_file(pp_path()));
}

TEST_CASE("setup preconditions")
{
    const Run bad = cli("setup --d 5 --seed 1 --out " + dir + "/bad");
    CHECK(bad.code == 2);
    CHECK(bad.out.find("16806") != std::string::npos);
    CHECK(cli("setup --out " + dir + "/noseed").code == 2);
    CHECK(cli("setup --seed 1 --p 9 --out " + dir + "/bad").code == 2);
    CHECK(cli("frobnicate").code == 2);
}

TEST_CASE("encode, eval, zero-test, decode")
{
    prepare();
    const std::string g0 = dir + "/g0.json", g4 = dir + "/g4.json";
    REQUIRE(cli("encode 0 --pp " + pp_path() + " --seed 2 --out " + g0).code == 0);
    REQUIRE(cli("encode 4 --pp " + pp_path() + " --seed 3 --out " + g4).code == 0);

    const Run zt0 = cli("zero-test --gamma " + g0 + " --pp " + pp_path());
    CHECK(zt0.code == 0);
    CHECK(zt0.out == "true\n");
    CHECK(cli("zero-test --gamma " + g4 + " --pp " + pp_path()).out == "false\n");

    // 2 * 3 * 4 = 24 = 4 mod 5
    const Run ev = cli("eval 2 3 --gamma " + g4 + " --pp " + pp_path());
    CHECK(ev.code == 0);
    CHECK(ev.out.find("zeta^4\n") != std::string::npos);

    const Run dec = cli("decode --gamma " + g4 + " --trapdoor " + td_path());
    CHECK(dec.code == 0);
    CHECK(dec.out == "4\n");
    // decode agrees with the discrete log of eval(1, 1, gamma)
    const Run ev11 = cli("eval 1 1 --gamma " + g4 + " --pp " + pp_path());
    CHECK(ev11.out.find("zeta^4\n") != std::string::npos);
}

TEST_CASE("schema errors exit with 3")
{
    prepare();
    const std::string bad = dir + "/bad_gamma.json";
    write_file(bad, R"({"v": 1, "kind": "encoding", "ell": 5, "gamma": [{"c": 9, "w": []}]})");
    const Run r = cli("zero-test --gamma " + bad + " --pp " + pp_path());
    CHECK(r.code == 3);
    CHECK(r.out.find("$.gamma[0].c") != std::string::npos);
    write_file(bad, "{ nope");
    CHECK(cli("decode --gamma " + bad + " --trapdoor " + td_path()).code == 3);
    CHECK(cli("decode --gamma " + dir + "/missing.json --trapdoor " + td_path()).code == 2);
}

TEST_CASE("attacks")
{
    prepare();
    const Run lt = cli("attack linear-term --pp " + pp_path() + " --seed 1 --out " + dir + "/lt.json");
    REQUIRE(lt.code == 0);
    const json rep = json::parse(read_file(dir + "/lt.json"));
    CHECK(rep["attack"] == "linear-term");
    CHECK(rep["applicable"] == false);
    CHECK(rep["recovered"] == false);
    CHECK(rep["dims"]["L_hat"] == 12);

    const Run toy = cli("attack linear-term --toy hyperplane --seed 2");
    REQUIRE(toy.code == 0);
    const json trep = json::parse(toy.out);
    CHECK(trep["applicable"] == true);
    CHECK(trep["recovered"] == true);
    CHECK(json::parse(cli("attack linear-term --toy cubic --seed 2").out)["recovered"] == true);

    const Run scan = cli("attack descent-scan --pp " + pp_path() + " --combos 2");
    REQUIRE(scan.code == 0);
    CHECK(json::parse(scan.out)["dims"]["hits"] == 0);

    const Run hs = cli("attack harvest-stats --pp " + pp_path() + " --count 20");
    REQUIRE(hs.code == 0);
    CHECK(json::parse(hs.out)["dims"]["requested"] == 20);

    CHECK(cli("attack pollard --pp " + pp_path()).code == 2);
    CHECK(cli("attack linear-term --toy sphere").code == 2);
}

TEST_CASE("bench")
{
    prepare();
    const Run b = cli("bench --pp " + pp_path() + " --reps 1");
    CHECK(b.code == 0);
    for (const char* op : {"pairing", "add", "encode", "eval"})
        CHECK(b.out.find(op) != std::string::npos);
}
