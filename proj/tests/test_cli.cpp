#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "cli.hpp"

using weilkit::cli::run;
using json = weilkit::io::json;
namespace fs = std::filesystem;

namespace {

// Runs without the cache unless a test sets WEILKIT_CACHE_DIR itself.
struct NoCacheEnv {
    NoCacheEnv() { unsetenv("WEILKIT_CACHE_DIR"); }
};

json parse(const weilkit::cli::CommandResult& r) { return json::parse(r.output); }

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("weilkit_test_cli_" + std::to_string(getpid())) / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

}  // namespace

TEST_CASE("documents carry schema and command; exit codes") {
    NoCacheEnv env;
    auto ok = run({"validate", "--q", "9", "--poly", "9,0,1"});
    CHECK(ok.exit_code == 0);
    auto j = parse(ok);
    CHECK(j["schema"] == "weilkit/1");
    CHECK(j["command"] == "validate");
    CHECK(j["accepted"] == true);

    auto rej = run({"validate", "--q", "2", "--poly", "2,-5,1"});
    CHECK(rej.exit_code == 2);
    j = parse(rej);
    CHECK(j["accepted"] == false);
    CHECK(j["reason"] == "real-root-outside-bound");

    auto bad_q = run({"validate", "--q", "6", "--poly", "1,1"});
    CHECK(bad_q.exit_code == 1);
    CHECK(parse(bad_q).contains("error"));

    auto bad_poly = run({"validate", "--q", "2", "--poly", "2,x,1"});
    CHECK(bad_poly.exit_code == 1);

    auto usage = run({"validate", "--q", "4", "--p", "2", "--r", "2", "--poly", "4,0,1"});
    CHECK(usage.exit_code == 1);
    CHECK(parse(usage)["kind"] == "usage");

    auto missing = run({"frobnicate"});
    CHECK(missing.exit_code == 1);
    CHECK(run({"--help"}).exit_code == 0);
}

TEST_CASE("context from --p and --r matches --q") {
    NoCacheEnv env;
    auto a = parse(run({"invariants", "--q", "32", "--poly", "32,-2,1"}));
    auto b = parse(run({"invariants", "--p", "2", "--r", "5", "--poly", "32,-2,1"}));
    CHECK(a == b);
    CHECK(a["records"][0]["s"] == 5);
    CHECK(a["records"][0]["dim"] == 5);
    CHECK(a["records"][0]["invariant_sum"] == "1");
    CHECK(run({"invariants", "--p", "2", "--poly", "2,0,1"}).exit_code == 1);
    CHECK(run({"invariants", "--p", "4", "--r", "1", "--poly", "4,0,1"}).exit_code == 1);
}

TEST_CASE("output is deterministic") {
    NoCacheEnv env;
    const auto a = run({"enumerate", "--q", "3", "--degree", "2"});
    const auto b = run({"enumerate", "--q", "3", "--degree", "2"});
    CHECK(a.output == b.output);
    CHECK(parse(a)["count"] == parse(a)["classes"].size());
}

TEST_CASE("enumerate, order, components, gamma-witness") {
    NoCacheEnv env;
    auto e = parse(run({"enumerate", "--q", "2", "--degree", "2"}));
    CHECK(e["count"] == 6);

    auto o = run({"order", "--q", "9", "--poly", "9,0,1", "--poly", "3,1"});
    REQUIRE(o.exit_code == 0);
    auto oj = parse(o);
    CHECK(oj["relations_hold"] == true);
    CHECK(oj["rank"] == 3);

    auto rej = run({"order", "--q", "2", "--poly", "2,-5,1", "--poly", "2,0,1"});
    CHECK(rej.exit_code == 2);
    CHECK(parse(rej)["rejections"].size() == 1);

    auto c = parse(run({"components", "--q", "3", "--poly", "3,-1,1", "--poly", "3,1,1"}));
    CHECK(c["components"].size() >= 1);

    auto g = parse(run({"gamma-witness", "--q", "8"}));
    CHECK(g["witnesses"]["divisor"] == 12);
    CHECK(!g["witnesses"]["s_equals_r"].is_null());
}

TEST_CASE("dieudonne-center and example-sec9") {
    NoCacheEnv env;
    auto d = run({"dieudonne-center", "--q", "9", "--poly", "9,-1,1", "--precision", "4", "--export-algebra"});
    REQUIRE(d.exit_code == 0);
    auto dj = parse(d);
    CHECK(dj["center"]["passed"] == true);
    CHECK(dj["structure"]["ok"] == true);
    CHECK(dj["ordinary"]["verdict"] == "verified");
    CHECK(dj["export"]["k"] == 4);
    CHECK(run({"dieudonne-center", "--q", "9", "--poly", "9,0,1", "--precision", "1"}).exit_code == 1);
    CHECK(parse(run({"dieudonne-center", "--q", "9", "--poly", "9,0,1"}))["ordinary"].is_null());

    auto s = run({"example-sec9", "--p", "3"});
    REQUIRE(s.exit_code == 0);
    auto sj = parse(s);
    CHECK(sj["S_pi"]["center_is_Z[ip]"] == true);
    CHECK(sj["lattice_classes"] == 2);
    CHECK(run({"example-sec9", "--p", "5"}).exit_code == 2);
}

TEST_CASE("export/import round trips") {
    NoCacheEnv env;
    using namespace weilkit;
    const auto ctx = GlobalContext::from_q(Integer(9));
    const WeilSet w = io::weil_set_from_polys({parse_polynomial("9,0,1"), parse_polynomial("3,1")}, ctx);

    const json order = io::export_order(build_order(w));
    CHECK(io::export_order(io::import_order(order)) == order);
    json tampered = order;
    tampered["mult_table"][0][0][0] = 12345;
    CHECK_THROWS_AS(io::import_order(tampered), Error);

    const json alg = io::export_algebra(build_dieudonne(w, 3));
    CHECK(io::export_algebra(io::import_algebra(alg)) == alg);
    json alg_bad = alg;
    alg_bad["structure_constants"][1][1][0] = 7;
    CHECK_THROWS_AS(io::import_algebra(alg_bad), Error);

    const json pres = io::export_presentation(psi_verify(Integer(3)).order, Integer(3));
    const OrderPresentation back = io::import_presentation(pres);
    CHECK(io::export_presentation(back, Integer(3)) == pres);
    CHECK(back.contains({1, 0, 0, 0, 0, 0, 1, 0}));
    json pres_bad = pres;
    pres_bad["index"] = 80;
    CHECK_THROWS_AS(io::import_presentation(pres_bad), Error);

    // Exported documents survive a text round trip.
    CHECK(json::parse(order.dump()) == order);
}

TEST_CASE("cache hits, bypass and verification") {
    const fs::path dir = scratch("cache");
    setenv("WEILKIT_CACHE_DIR", dir.c_str(), 1);
    const std::vector<std::string> req{"invariants", "--q", "9", "--poly", "9,0,1"};

    const auto first = run(req);
    REQUIRE(first.exit_code == 0);
    std::vector<fs::path> entries(fs::directory_iterator(dir), fs::directory_iterator{});
    REQUIRE(entries.size() == 1);
    CHECK(run(req).output == first.output);

    // Poison the entry: a plain run serves it, --no-cache ignores it,
    // --verify-cache detects the mismatch.
    write(entries[0], json{{"exit_code", 0}, {"output", "stale\n"}}.dump());
    CHECK(run(req).output == "stale\n");
    auto bypass = req;
    bypass.push_back("--no-cache");
    CHECK(run(bypass).output == first.output);
    auto verify = req;
    verify.push_back("--verify-cache");
    auto v = run(verify);
    CHECK(v.exit_code == 1);
    CHECK(parse(v)["kind"] == "cache");

    // A genuine entry verifies.
    fs::remove(entries[0]);
    run(req);
    auto ok = run(verify);
    CHECK(ok.exit_code == 0);
    CHECK(ok.output == first.output);

    // Rejections are cached with their exit code; errors are not.
    const auto rejected = run({"validate", "--q", "2", "--poly", "2,-5,1"});
    CHECK(run({"validate", "--q", "2", "--poly", "2,-5,1"}).exit_code == 2);
    CHECK(rejected.exit_code == 2);
    const auto before = std::distance(fs::directory_iterator(dir), fs::directory_iterator{});
    run({"validate", "--q", "6", "--poly", "1,1"});
    CHECK(std::distance(fs::directory_iterator(dir), fs::directory_iterator{}) == before);

    // Different requests get different keys.
    CHECK(weilkit::cli::ResultCache::key("a", json{{"q", "9"}}) != weilkit::cli::ResultCache::key("a", json{{"q", "4"}}));
    CHECK(weilkit::cli::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    unsetenv("WEILKIT_CACHE_DIR");
}

TEST_CASE("--output writes the document to a file") {
    NoCacheEnv env;
    const fs::path out = scratch("output") / "doc.json";
    auto r = run({"gamma-witness", "--q", "4", "--output", out.string()});
    CHECK(r.wrote_file);
    std::ifstream in(out);
    const json j = json::parse(in);
    CHECK(j["command"] == "gamma-witness");
}

TEST_CASE("ingest reports rejections and enumeration diffs") {
    NoCacheEnv env;
    const fs::path dir = scratch("ingest");

    write(dir / "one.csv", "# q,c0,c1,...\n2,2,-5,1\n");
    auto r = parse(run({"ingest", "--file", (dir / "one.csv").string()}));
    CHECK(r["report"]["rejected"].size() == 1);
    CHECK(r["report"]["rejected"][0]["reason"] == "real-root-outside-bound");
    CHECK(r["report"]["rejected"][0]["line"] == 2);

    write(dir / "five.csv", "2,2,-2,1\n2,2,-1,1\n\n2,2,0,1\n2,2,1,1\n2,2,2,1\n");
    auto f = run({"ingest", "--q", "2", "--degree", "2", "--file", (dir / "five.csv").string()});
    CHECK(f.exit_code == 0);
    auto fj = parse(f)["report"];
    CHECK(fj["diffs"] == 0);
    CHECK(fj["accepted"] == 5);
    CHECK(fj["missing_from_enumeration"].empty());
    CHECK(fj["enumeration_only"]["2"] == 1);  // x^2 - 2

    write(dir / "mixed.json",
          R"([{"q": 2, "coefficients": [2, 0, 1]}, {"q": 3, "coefficients": "3,0,1"}, {"q": 2}, {"q": 2, "coefficients": [2, 0, 1]}])");
    auto m = parse(run({"ingest", "--q", "2", "--file", (dir / "mixed.json").string()}))["report"];
    CHECK(m["records"] == 3);
    CHECK(m["accepted"] == 1);
    CHECK(m["context_mismatch"].size() == 1);
    CHECK(m["malformed"].size() == 1);
    CHECK(m["malformed"][0]["line"] == 3);
    CHECK(m["duplicates"].size() == 1);

    write(dir / "bad.csv", "q,c0,c1\n2,2,0,1\n9,9,7,1\n4,4,0,1\n");
    auto b = parse(run({"ingest", "--degree", "1", "--file", (dir / "bad.csv").string()}))["report"];
    CHECK(b["malformed"].size() == 1);
    CHECK(b["rejected"].size() == 1);
    CHECK(b["beyond_degree_bound"].size() == 2);

    write(dir / "empty.csv", "");
    auto e = run({"ingest", "--file", (dir / "empty.csv").string()});
    CHECK(e.exit_code == 0);
    CHECK(parse(e)["report"]["records"] == 0);
    CHECK(parse(e)["report"]["diffs"] == 0);

    CHECK(run({"ingest", "--file", (dir / "nope.csv").string()}).exit_code == 1);
}
