#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <matval/cli.hpp>

#include "test_matroids.hpp"

#include <fstream>
#include <sstream>

using namespace matval;
using namespace matval::testing;

namespace {

struct CliRun {
    int code;
    std::string out, err;
};

CliRun cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(std::move(args), out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("matroid spec parsing") {
    CHECK(parse_matroid_spec("uniform:2,4") == uniform(2, 4));
    CHECK(parse_matroid_spec("cuspidal:1,2,2,4") == cuspidal(1, 2, 2, 4));
    CHECK(parse_matroid_spec("minimal:3,6") == minimal_matroid(3, 6));
    CHECK(parse_matroid_spec("cab:3,4") == graphic_two_cycles(3, 4));
    CHECK(parse_matroid_spec("lpm:EEENNENN,NNEENENE") == make_fig4_lpm());
    CHECK(parse_matroid_spec("gs:3,7") == graham_sloane(3, 7));
    CHECK(parse_matroid_spec("gs:3,7,2") == graham_sloane(3, 7, 2));
    CHECK(parse_matroid_spec("sum:(uniform:1,2)+(uniform:1,2)") ==
          direct_sum(uniform(1, 2), uniform(1, 2)));
    CHECK(parse_matroid_spec("sum:(sum:(uniform:1,1)+(uniform:0,1))+(uniform:1,2)") ==
          direct_sum(direct_sum(uniform(1, 1), uniform(0, 1)), uniform(1, 2)));
    CHECK_THROWS_AS(parse_matroid_spec("uniform:2"), SpecParseError);
    CHECK_THROWS_AS(parse_matroid_spec("wat:1,2"), SpecParseError);
    CHECK_THROWS_AS(parse_matroid_spec("uniform:a,b"), SpecParseError);
}

TEST_CASE("invariant command") {
    CliRun r = cli({"invariant", "uniform:2,4", "--name", "tutte"});
    CHECK(r.code == 0);
    CHECK(r.out == "x^2 + y^2 + 2*x + 2*y\n");
    // Z of C_{4,6} is Z of U_{7,8}
    CliRun z1 = cli({"invariant", "cab:4,6", "--name", "kl_z"});
    CliRun z2 = cli({"invariant", "uniform:7,8", "--name", "kl_z"});
    CHECK(z1.code == 0);
    CHECK(z1.out == z2.out);
    // profile and oracle routes agree on a Graham--Sloane instance
    CliRun p = cli({"invariant", "gs:3,7", "--name", "ehrhart", "--route", "profile"});
    CliRun o = cli({"invariant", "gs:3,7", "--name", "ehrhart", "--route", "oracle"});
    CHECK(p.code == 0);
    CHECK(p.out == o.out);
    // json output round-trips to the same value
    CliRun j = cli({"invariant", "uniform:2,4", "--name", "spectrum", "--format", "json"});
    CHECK(j.code == 0);
    json parsed = json::parse(j.out);
    CHECK(parsed.at("route") == "profile");
    CHECK(value_equal(value_from_json(parsed.at("value")),
                      Value(spec_uniform(2, 4))));
    // deterministic monomial order: degree-lex, t before q
    CliRun sp = cli({"invariant", "minimal:2,4", "--name", "spectrum"});
    CHECK(sp.code == 0);
    CHECK(sp.out.find("q") != std::string::npos);
    // errors: parse failures exit 2, out-of-reach oracles exit 3
    CHECK(cli({"invariant", "uniform:2", "--name", "tutte"}).code == 2);
    CHECK(cli({"invariant", "uniform:2,4", "--name", "nope"}).code == 2);
    CHECK(cli({"invariant", "uniform:7,14", "--name", "tutte", "--route", "oracle"}).code == 3);
    // denham prints per-cyclic-flat coefficients
    CliRun d = cli({"invariant", "uniform:1,2", "--name", "denham"});
    CHECK(d.code == 0);
    CHECK(d.out.find("b_{") != std::string::npos);
}

TEST_CASE("classify command") {
    CliRun r = cli({"classify", "minimal:6,9"});
    CHECK(r.code == 0);
    CHECK(r.out.find("elementary split") == 0);
    CHECK(r.out.find("rank 1, size 3: 1") != std::string::npos);
    CHECK(cli({"classify", "uniform:3,6"}).out == "uniform U_{3,6}\n");
    // a json matroid file for the not-elementary-split example
    std::string path = "/tmp/matval_fig10_m1.json";
    {
        std::ofstream f(path);
        f << matroid_to_json(make_fig10_m1()).dump();
    }
    CliRun bad = cli({"classify", "file:" + path});
    CHECK(bad.code == 0);
    CHECK(bad.out.find("not elementary split") == 0);
    // 1-based files are rejected with a pointed message
    std::string path2 = "/tmp/matval_onebased.json";
    {
        std::ofstream f(path2);
        f << R"({"n":3,"bases":[[1,2],[1,3],[2,3]]})";
    }
    CliRun one = cli({"classify", "file:" + path2});
    CHECK(one.code == 2);
    CHECK(one.err.find("0-based") != std::string::npos);
}

TEST_CASE("check subdivision command") {
    CliRun r = cli({"check", "subdivision", "uniform:2,4", "--flat", "2,3"});
    CHECK(r.code == 0);
    CHECK(r.out.find("PASS") != std::string::npos);
    CHECK(r.out.find("pieces:") != std::string::npos);
    CliRun deep = cli({"check", "subdivision", "schubert-ish", "--flat", "1"});
    CHECK(deep.code == 2);
    CHECK(cli({"check", "subdivision", "uniform:2,4", "--flat", "9"}).code == 2);
    CHECK(cli({"check", "subdivision", "uniform:2,4", "--flat", "x"}).code == 2);
    // a relaxation of the minimal matroid, full dilation range
    CliRun t35 = cli({"check", "subdivision", "uniform:3,5", "--flat", "3,4", "--dilations", "4"});
    CHECK(t35.code == 0);
}

TEST_CASE("check sweep command") {
    CliRun r = cli({"check", "sweep", "--max-n", "5"});
    CHECK(r.code == 0);
    CHECK(r.out.find("PASS") != std::string::npos);
    CliRun rj = cli({"check", "sweep", "--max-n", "4", "--jsonl"});
    CHECK(rj.code == 0);
    CHECK(rj.out.find("\"status\":\"ok\"") != std::string::npos);
}
