#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "mlie/catalog.hpp"
#include "mlie/cli.hpp"
#include "mlie/cohomology.hpp"
#include "mlie/constructions.hpp"

#include <filesystem>
#include <fstream>

using namespace mlie;
using cli::execute;
using json = nlohmann::json;

namespace {

json lib_json(const Algebra& g)
{
    return json::parse(g.to_json().dump());
}

/// Report without the keys the command layer adds.
json stripped(json j)
{
    j.erase("command");
    j.erase("seed");
    return j;
}

std::string usage_text(const std::vector<std::string>& args)
{
    try {
        execute(args);
    } catch (const cli::UsageError& e) {
        return e.what();
    }
    return "";
}

std::string temp_file(const std::string& name, const std::string& content)
{
    auto p = std::filesystem::temp_directory_path() / name;
    std::ofstream(p) << content;
    return p.string();
}

}

TEST_CASE("build emits the algebra schema")
{
    cli::Outcome r = execute({"build", "jurman", "--g", "2", "--h", "1"});
    CHECK(r.code == cli::ok);
    CHECK(r.report["dim"] == 14);
    CHECK(r.report["seed"] == 0);
    CHECK(stripped(r.report) == lib_json(build_jurman(2, 1)));
    CHECK(stripped(execute({"build", "kap", "--family", "4A", "--m", "2", "--arf", "1"}).report) ==
          lib_json(build_kaplansky({KapFamily::K4A, 4, 1})));
    CHECK(stripped(execute({"build", "po", "--form", "pi", "--N", "2,2"}).report) ==
          lib_json(build_poisson(BilinearForm::Pi(2), {2, 2})));
    CHECK(execute({"build", "jurman", "--g", "2", "--h", "1", "--field", "gf4"}).report["field"] == "gf4");
    // round trip through the file format
    CHECK(Algebra::from_json(r.report).same_structure(build_jurman(2, 1)));
}

TEST_CASE("wrappers agree with the library")
{
    Algebra g = catalog_algebra("gh21");
    json h1 = execute({"h1", "--algebra", "catalog:gh21"}).report;
    H1Dims d = compute_h1_dim(g);
    CHECK(h1["z"] == d.z);
    CHECK(h1["h"] == d.h);

    // the (4,-2) block holds the Jurman cocycle
    json h2 = execute({"h2", "--algebra", "catalog:gh21", "--weight", "4,-2"}).report;
    REQUIRE(h2["dim_h"] == 1);
    Cochain2 rep = parse_cochain(g, h2["classes"][0]["cocycle"].get<std::string>());
    Cochain2 jur = jurman_cocycle(g, 2, 1);
    CHECK(is_coboundary(g, rep.plus(jur, g.field())));
}

TEST_CASE("byte-stable output")
{
    std::vector<std::string> args = {"h2", "--algebra", "catalog:gh21", "--mode", "z"};
    CHECK(execute(args).report.dump() == execute(args).report.dump());
    CHECK(execute({"simple", "--algebra", "catalog:gh21", "--seed", "5"}).report["seed"] == 5);
}

TEST_CASE("exit codes")
{
    std::string bad = temp_file("mlie_nonlie.json",
                                R"({"dim":3,"field":"gf2","labels":["a","b","c"],"sc":[[0,1,[[2,"1"]]],[0,2,[[0,"1"]]]]})");
    cli::Outcome v = execute({"validate", "--algebra", bad});
    CHECK(v.code == cli::check_failure);
    CHECK_FALSE(v.report["jacobi"].get<bool>());

    cli::Artifacts art{{"a", execute({"build", "abelian", "--dim", "3"}).report}};
    CHECK(execute({"simple", "--algebra", "@a"}, art).code == cli::check_failure);
    CHECK(execute({"simple", "--algebra", "catalog:gh21"}).code == cli::ok);
}

TEST_CASE("usage errors suggest the closest name")
{
    CHECK(usage_text({"build", "jurman", "--gg", "2"}).find("did you mean '--g'") != std::string::npos);
    CHECK(usage_text({"bulid", "jurman"}).find("did you mean 'build'") != std::string::npos);
    CHECK(usage_text({"build", "jurmann"}).find("did you mean 'jurman'") != std::string::npos);
    CHECK(usage_text({"validate"}).find("--algebra is required") != std::string::npos);
    CHECK(usage_text({"build", "po", "--field", "gf3"}).find("--field") != std::string::npos);
    CHECK(cli::suggest("wieght", {"weight", "mode"}) == "weight");
    CHECK(cli::suggest("xyz", {"weight", "mode"}).empty());
}

TEST_CASE("experiments")
{
    json e = json::parse(R"({
        "name": "j21",
        "steps": [{"id": "j", "command": ["build", "jurman", "--g", "2", "--h", "1"]},
                  {"id": "v", "command": "validate", "args": ["--algebra", "@j"]}],
        "expectations": [{"path": "j.dim", "equals": 14}, {"path": "v.ok", "equals": true},
                         {"path": "v.triples_checked", "approx": 364, "tol": 0.5}]})");
    cli::Outcome r = cli::run_experiment(e, 0, "gf2");
    CHECK(r.code == cli::ok);
    CHECK(r.report["pass"] == true);
    CHECK(r.report["warnings"].empty());

    e["expectations"][0]["equals"] = 15;
    r = cli::run_experiment(e, 0, "gf2");
    CHECK(r.code == cli::check_failure);
    REQUIRE(r.report["failures"].size() == 1);
    CHECK(r.report["failures"][0]["actual"] == 14);
    CHECK(r.report["failures"][0]["expected"] == 15);
    CHECK(r.report["failures"][0]["diff"] == "j.dim: expected 15, got 14");

    e["expectations"][0] = json{{"path", "j.no.such.key"}, {"equals", 1}};
    CHECK(cli::run_experiment(e, 0, "gf2").report["failures"][0]["actual"] == "<missing>");

    cli::Outcome empty = cli::run_experiment(json{{"name", "empty"}, {"steps", json::array()}}, 0, "gf2");
    CHECK(empty.code == cli::ok);
    CHECK(empty.report["pass"] == true);
    CHECK(empty.report["warnings"].size() == 1);

    json undeclared = json::parse(R"({"steps": [{"id": "v", "command": ["validate", "--algebra", "@x"]}]})");
    CHECK_THROWS_AS(cli::run_experiment(undeclared, 0, "gf2"), cli::UsageError);
    json unresolvable = json::parse(R"({"steps": [], "expectations": [{"path": "x.dim", "equals": 1}]})");
    CHECK_THROWS_AS(cli::run_experiment(unresolvable, 0, "gf2"), cli::UsageError);

    std::string path = temp_file("mlie_exp.json", e.dump());
    CHECK(execute({"experiment", path}).report["name"] == "j21");
}

TEST_CASE("deform and super wrappers")
{
    json j = execute({"deform", "jurman", "--g", "2", "--h", "1"}).report;
    CHECK(j["isomorphic"] == true);
    json d = execute({"deform", "--algebra", "catalog:gh21", "--cocycle", "catalog:gh21:c_{4,-2}"}).report;
    CHECK(d["verdict"] == "linear-global");
    CHECK(d["non_coboundary"] == true);

    cli::Outcome s = execute({"super", "--base", "kap2", "--m", "2", "--mode", "nonlinear", "--arf", "0"});
    CHECK(s.code == cli::ok);
    CHECK(s.report["parity"].size() == 19);
    CHECK(s.report["squaring"].size() == 9);
    CHECK(s.report["check"]["ok"] == true);
    CHECK(execute({"closure", "--family", "2", "--m", "2"}).report["restricted"] == true);
}
