#include "doctest.h"

#include <sstream>

#include "iterindex/cli.hpp"
#include "json.hpp"

using nlohmann::json;
namespace cli = iterindex::cli;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(TEST_DATA_DIR) + "/" + name; }

json run_json(std::vector<std::string> args, int expected_code = cli::kExitOk) {
    args.push_back("--format");
    args.push_back("json");
    const auto r = run(args);
    REQUIRE_MESSAGE(r.code == expected_code, r.err);
    return json::parse(r.out);
}

}  // namespace

TEST_CASE("seq integrality") {
    const auto j = run_json({"seq", "integrality", data("elliptic_index.json")});
    CHECK(j["integral"] == true);
    CHECK(j["mean"] == "-1/1");
    CHECK(j["coefficients"]["3"] == "-2/1");
    CHECK(j["header"]["tool"] == "iterindex");
    CHECK(j["header"]["command"] == "seq integrality");

    const auto bad = run_json({"seq", "integrality", data("delta2.json")}, cli::kExitMismatch);
    CHECK(bad["integral"] == false);
}

TEST_CASE("seq transform and fitted input") {
    const auto t = run_json({"seq", "transform", data("delta2.json")});
    CHECK(t.dump().find("1/2") != std::string::npos);
    const auto f = run_json({"seq", "mean", data("raw_period.json")});
    CHECK(f["fitted"] == true);
    CHECK(f.dump().find("\"0/1\"") != std::string::npos);
}

TEST_CASE("germ commands") {
    CHECK(run_json({"germ", "sigma", data("elliptic_1_3_2.json")})["sigma"] == "1/3");
    CHECK(run_json({"germ", "sigma", data("hyperbolic_odd.json")})["sigma"] == "1/2");
    const auto idx = run_json({"germ", "index", data("elliptic_1_3_2.json"), "--k", "3"});
    CHECK(idx.dump().find("-5") != std::string::npos);
}

TEST_CASE("verify") {
    const auto j = run_json({"verify", "--map", "circle:d=2", "--max-k", "6"});
    CHECK(j["all_equal"] == true);
    CHECK(j["rows"].size() == 6);
    CHECK(j["rows"][2]["lefschetz"] == -7);
    const auto t = run_json({"orbits", "verify", "--map", "torus:2,1,1,1", "--max-k", "4"});
    CHECK(t["all_equal"] == true);
    CHECK(t["rows"][1]["lefschetz"] == -5);
}

TEST_CASE("mec chi examples") {
    const auto s = run_json({"mec", "chi", "--example", "sphere"});
    CHECK(s["sphere"]["chi_plus"] == "1/2");
    CHECK(s["sphere"]["chi_minus"] == "0/1");
    CHECK(run_json({"mec", "chi", "--example", "ustilovsky", "--p", "7", "--n", "3"}).dump().find("5/6") !=
          std::string::npos);
    CHECK(run_json({"mec", "chi", "--example", "cotangent", "--n", "4"}).dump().find("2/3") !=
          std::string::npos);
    const auto o = run_json({"mec", "chi", "--orbits", data("ellipsoid_like.json")});
    CHECK(o.dump().find("1/2") != std::string::npos);
}

TEST_CASE("mec check, beta, experiment, exclusion") {
    const auto ok = run_json({"mec", "check", "--orbits", data("sdm_orbit.json"), "--profile",
                              data("sphere2.json")});
    CHECK(ok.dump().find("consistent") != std::string::npos);
    run_json({"mec", "check", "--orbits", data("hyperbolic_odd_orbit.json"), "--profile", data("sphere2.json")},
             cli::kExitMismatch);

    const auto b = run_json({"mec", "beta", "--profile", data("sphere2.json"), "--orbits", data("sdm_orbit.json")});
    CHECK(b["plus"]["pass"] == true);
    CHECK(b["plus"]["orbits"] == "1/2");
    run_json({"mec", "beta", "--profile", data("sphere2.json")}, cli::kExitMismatch);

    run_json({"mec", "experiment", "--orbits", data("sdm_orbit.json"), "--k", "6"});

    const auto e = run_json({"mec", "exclude-s3", "--qmax", "3", "--rmax", "2", "--mmax", "1", "--nmax", "20"});
    CHECK(e.dump().find("totally-degenerate") != std::string::npos);
}

TEST_CASE("table output starts with a header line") {
    const auto r = run({"mec", "chi", "--example", "sphere"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("# iterindex", 0) == 0);
}

TEST_CASE("exit codes for bad input") {
    CHECK(run({"seq", "mean", data("malformed.json")}).code == cli::kExitSchema);
    CHECK(run({"seq", "mean", data("does_not_exist.json")}).code == cli::kExitSchema);
    CHECK(run({"verify", "--map", "torus:1,1,0,1"}).code == cli::kExitSchema);
    CHECK(run({"verify", "--map", "sphere:3"}).code == cli::kExitSchema);
    CHECK(run({"mec", "chi", "--example", "ustilovsky", "--p", "3", "--n", "3"}).code == cli::kExitSchema);
    CHECK(run({"germ", "sigma"}).code == cli::kExitSchema);
    CHECK(run({"nonsense"}).code == cli::kExitSchema);
    CHECK(run({"--help"}).code == cli::kExitOk);
}
