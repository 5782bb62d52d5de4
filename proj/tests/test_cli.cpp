#include <doctest.h>

#include <sstream>

#include "afflab/json_io.hpp"
#include "cli.hpp"
#include "helpers.hpp"

using namespace afflab;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

Json run_json(std::vector<std::string> args, int expect_code = 0) {
    args.insert(args.begin(), "--json");
    const Run r = run(args);
    INFO(r.err);
    CHECK(r.code == expect_code);
    return Json::parse(r.out);
}

}  // namespace

TEST_CASE("point set JSON round-trips in both forms") {
    CounterRng rng(5, 5);
    for (int i = 0; i < 50; ++i) {
        const int q = i % 2 ? 3 : 2;
        const PointSet s = testing_helpers::random_set(rng, q, 1 + i % 4, 0.4);
        CHECK(point_set_from_json(to_json(s)) == s);
        CHECK(point_set_from_json(to_json(s, true)) == s);
    }
    // Bit i is point i, least significant first.
    const PointSet s = PointSet::from_indices(2, 3, std::vector<Index>{0, 1, 4});
    CHECK(bits_hex(s) == "13");
    CHECK_THROWS_AS(point_set_from_json(Json::parse(R"({"q":2,"n":1,"points":[2]})")), DomainError);
    CHECK_THROWS_AS(point_set_from_json(Json::parse(R"({"q":2,"n":2,"bits_hex":"10"})")), DomainError);
    CHECK_THROWS_AS(point_set_from_json(Json::parse(R"({"q":2})")), DomainError);
}

TEST_CASE("configuration JSON round-trips") {
    const auto c = make_circuit(3);
    const auto back = config_from_json(to_json(c));
    CHECK(back.points() == c.points());
    CHECK(back.rank_affine() == 5);
    CHECK_THROWS_AS(config_from_json(Json::parse(R"({"q":2,"m":2,"points":[[0,2]]})")), DomainError);
    CHECK(big_from_json(big_to_json(BigInt(1) << 100)) == BigInt(1) << 100);
    CHECK(big_to_json(BigInt(12)) == Json(12));
}

TEST_CASE("documented command examples") {
    CHECK(run_json({"bound", "eval", "--id", "nelson_nomoto", "--t", "2"})["value"] == 12);
    const Json ex = run_json({"exaff", "--q", "3", "--n", "2", "--family", "cube:3:1"});
    CHECK(ex["value"] == 4);
    CHECK(point_set_from_json(ex["witness"]).size() == 4);
    CHECK(run_json({"ramsey", "--q", "2", "--targets", "1,3"})["value"] == 3);
}

TEST_CASE("exit codes") {
    CHECK(run({}).code == cli::usage);
    CHECK(run({"nonsense"}).code == cli::usage);
    CHECK(run({"bound", "eval", "--id", "nope"}).code == cli::usage);
    CHECK(run({"sidorenko", "verify", "--config", "cube:3:1", "--c", "2", "--n", "1"}).code == cli::violation);
    CHECK(run({"sidorenko", "verify", "--config", "cube:2:1", "--c", "2", "--n", "2"}).code == cli::ok);
    CHECK(run({"exaff", "--q", "2", "--n", "4", "--family", "cube:2:2", "--budget", "5"}).code == cli::budget);
    CHECK(run({"--csv", "rank", "--config", "cube:2:1"}).code == cli::usage);
    CHECK(run({"--help"}).code == cli::ok);
}

TEST_CASE("manifests and digests") {
    const Json a = run_json({"--threads", "1", "--seed", "4", "rank", "--config", "circuit:3"});
    const Json b = run_json({"--threads", "1", "--seed", "4", "rank", "--config", "circuit:3"});
    CHECK(a["manifest"]["result_digest"] == b["manifest"]["result_digest"]);
    CHECK(a["manifest"]["seed"] == 4);
    CHECK(a["manifest"]["input_digests"]["config"] == cli::sha256_hex("circuit:3"));
    CHECK(cli::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    Json body = a;
    body.erase("manifest");
    CHECK(a["manifest"]["result_digest"] == cli::sha256_hex(body.dump()));
}

TEST_CASE("bound tables round-trip through CSV") {
    const Json table = run_json({"bound", "table", "--id", "offdiag_f2", "--range", "t=2..9"});
    CHECK(table["rows"].size() == 8);
    CHECK(cli::table_from_csv(table["id"], cli::table_to_csv(table)) == Json({{"id", table["id"]}, {"columns", table["columns"]}, {"rows", table["rows"]}}));
    // Cells with commas and quotes survive.
    Json odd;
    odd["id"] = "x";
    odd["columns"] = {"ts", "value"};
    odd["rows"] = Json::array({Json::array({"2,3", "say \"hi\""})});
    CHECK(cli::table_from_csv("x", cli::table_to_csv(odd)) == odd);
    const Run csv = run({"--csv", "bound", "table", "--id", "nelson_nomoto", "--range", "t=2..3"});
    CHECK(csv.out == "t,value,form\n2,12,exact\n3,32,exact\n");
}

TEST_CASE("resumed Ramsey runs through the CLI") {
    const std::vector<std::string> base{"ramsey", "--q", "2", "--targets", "2,3", "--nmax", "5", "--budget", "6"};
    Json r = run_json(base, cli::budget);
    REQUIRE(r["frontier"].is_object());
    int rounds = 0;
    while (r["status"] == "unknown" && rounds++ < 10000) {
        auto args = base;
        args.push_back("--resume");
        args.push_back(r["frontier"].dump());
        args.insert(args.begin(), "--json");
        const Run next = run(args);
        r = Json::parse(next.out);
    }
    const Json full = run_json({"ramsey", "--q", "2", "--targets", "2,3", "--nmax", "5"});
    CHECK(r["status"] == "complete");
    CHECK(r["value"] == full["value"]);
    CHECK(r["lower_witness"] == full["lower_witness"]);
}
