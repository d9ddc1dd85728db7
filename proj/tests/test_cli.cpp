#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "zpbrace/cli.hpp"

using namespace zpbrace;

namespace {

struct CliResult {
    int code = 0;
    std::string out;
    json body;
};

CliResult invoke(const std::vector<std::string>& args, const std::string& input = "") {
    std::istringstream in(input);
    std::ostringstream out;
    CliResult r;
    r.code = cli::run(args, in, out);
    r.out = out.str();
    if (!r.out.empty() && r.out.front() == '{') r.body = json::parse(r.out);
    return r;
}

const std::string kI2P5 = R"({"p": 5, "N": 4, "entries": [[1, 0], [0, 1]]})";
const std::string kD12P5 = R"({"p": 5, "N": 4, "entries": [[1, 0], [0, 2]]})";

} // namespace

TEST_CASE("count") {
    CliResult r = invoke({"count", "2", "1"});
    CHECK(r.code == 0);
    CHECK(r.body["formula"] == 2);
    CHECK(r.out.back() == '\n');

    r = invoke({"count", "4", "2", "--enumerate", "--min-scale-zero"});
    CHECK(r.code == 0);
    CHECK(r.body["formula"] == 12);
    CHECK(r.body["enumerate"] == 12);
    // by hand: scale set {0} gives the even rank-4 block (2 discs); {0,1}
    // gives 2 + 4 + 2 over the compositions (1,3), (2,2), (3,1)
    CHECK(r.body["enumerate_min_scale_zero"] == 10);

    r = invoke({"--oracle", "count", "7", "3"});
    CHECK(r.code == 0);
    CHECK(r.body["cross_check"] == "ok");
}

TEST_CASE("count-unimodular") {
    CliResult r = invoke({"count-unimodular", "3", "1"});
    CHECK(r.code == 0);
    CHECK(r.body["classes"] == 2);
    r = invoke({"count-unimodular", "4", "1"});
    CHECK(r.body["classes"] == 1);
    r = invoke({"count-unimodular", "2", "2"});
    CHECK(r.code == 2);
}

TEST_CASE("jordan") {
    CliResult r = invoke({"jordan"}, R"({"p": 5, "N": 4, "entries": [[1,0,0],[0,1,0],[0,0,1]]})");
    CHECK(r.code == 0);
    REQUIRE(r.body["blocks"].size() == 1);
    CHECK(r.body["blocks"][0]["scale"] == 0);
    CHECK(r.body["blocks"][0]["rank"] == 3);
    CHECK(r.body["blocks"][0]["disc"] == "square");
    CHECK(r.body["radical_rank_at_precision"] == 0);
    CHECK(r.body["witness"]["epsilon"] == 1);

    r = invoke({"--oracle", "jordan"}, R"({"p": 3, "N": 3, "entries": [[0,1],[1,3]]})");
    CHECK(r.code == 0);
    CHECK(r.body["cross_check"] == "ok");
}

TEST_CASE("disc") {
    CliResult r = invoke({"--oracle", "disc"}, R"({"p": 5, "N": 3, "entries": [[5,0],[0,5]]})");
    CHECK(r.code == 0);
    CHECK(r.body["valuation"] == 2);
    CHECK(r.body["disc"] == "square");
    CHECK(r.body["at_precision"] == false);
    CHECK(r.body["det"]["residue"] == "25");
    CHECK(r.body["cross_check"] == "ok");
}

TEST_CASE("normal-form") {
    CliResult r = invoke({"normal-form"}, R"({"p": 7, "N": 3, "entries": [[0,1],[1,0]]})");
    CHECK(r.code == 0);
    CHECK(r.body["entries"] == json::parse("[[1,0],[0,3]]"));

    r = invoke({"normal-form"}, R"({"p": 7, "N": 3, "entries": [[7]]})");
    CHECK(r.code == 2);
    CHECK(r.body["error"]["code"] == "not_unimodular");
}

TEST_CASE("iso") {
    CliResult r = invoke({"iso"}, R"({"theta1": )" + kI2P5 + R"(, "theta2": )" + kD12P5 + "}");
    CHECK(r.code == 0);
    CHECK(r.body["epsilon"].is_null());
    CHECK(r.body["witness"].is_null());

    r = invoke({"iso"}, R"({"theta1": )" + kI2P5 + R"(, "theta2": )" + kI2P5 + "}");
    CHECK(r.code == 0);
    CHECK(r.body["epsilon"] == 1);
    CHECK(r.body["witness"]["transform"].is_array());

    // a radical direction at precision cannot be classified
    r = invoke({"iso"}, R"({"theta1": {"p": 5, "N": 2, "entries": [[0]]},
                            "theta2": {"p": 5, "N": 2, "entries": [[1]]}})");
    CHECK(r.code == 3);
    CHECK(r.body["error"]["code"] == "insufficient_precision");

    // tiny instances can be cross-checked exhaustively
    r = invoke({"--oracle", "iso"}, R"({"theta1": {"p": 3, "N": 1, "entries": [[1]]},
                                        "theta2": {"p": 3, "N": 1, "entries": [[2]]}})");
    CHECK(r.code == 0);
    CHECK(r.body["epsilon"] == 2);
    CHECK(r.body["cross_check"] == "ok");

    // out of the oracle budget: answer unchanged, check skipped
    r = invoke({"--oracle", "iso"}, R"({"theta1": )" + kI2P5 + R"(, "theta2": )" + kI2P5 + "}");
    CHECK(r.code == 0);
    CHECK(r.body["cross_check"] == "skipped");
}

TEST_CASE("verify") {
    CliResult r = invoke({"verify"}, R"({"p": 3, "mode": "torsion", "k": 1,
                                         "theta": [[1]],
                                         "scope": {"type": "exhaustive"}})");
    CHECK(r.code == 0);
    CHECK(r.body["all_pass"] == true);
    CHECK(r.body["triples_checked"] == 729);

    r = invoke({"--seed", "9", "verify"}, R"({"p": 5, "mode": "torsion_free", "N": 4,
                                              "theta": [[2, 1], [1, 5]]})");
    CHECK(r.code == 0);
    CHECK(r.body["all_pass"] == true);
    CHECK(r.body["seed"] == 9);

    r = invoke({"verify"}, R"({"p": 3, "mode": "torsion", "k": 2,
                               "theta": [[1,0,0],[0,1,0],[0,0,1]],
                               "scope": {"type": "exhaustive"}})");
    CHECK(r.code == 3);
    CHECK(r.body["error"]["code"] == "budget_exceeded");

    r = invoke({"verify"}, R"({"p": 3, "mode": "torsion_free", "N": 1,
                               "theta": [[3]]})");
    CHECK(r.code == 2);
    CHECK(r.body["error"]["code"] == "rank_deficient");
}

TEST_CASE("stem") {
    CliResult r = invoke({"stem"}, R"({"p": 3, "t": 2, "entries": [[3]]})");
    CHECK(r.code == 0);
    CHECK(r.body["quotient_rank"] == 1);
    CHECK(r.body["rank"] == 2);
    CHECK(r.body["surjective"] == false);
    CHECK(r.body["content_valuation"] == 1);
}

TEST_CASE("lift") {
    CliResult r = invoke({"--precision", "4", "lift"},
                         R"({"p": 5, "t": 1, "entries": [[0]], "strategy": "nondegenerate", "h": 1})");
    CHECK(r.code == 0);
    CHECK(r.body["gram_lift"]["entries"] == json::parse("[[620]]"));
    CHECK(r.body["blocks"][0]["scale"] == 1);

    r = invoke({"--precision", "1", "lift"}, R"({"p": 3, "t": 2, "entries": [[1]]})");
    CHECK(r.code == 2);
    CHECK(r.body["error"]["code"] == "precision_too_small");
}

TEST_CASE("invariant") {
    CliResult r = invoke({"invariant"}, R"({"p": 5, "t": 1, "entries": [[2]]})");
    CHECK(r.code == 0);
    CHECK(r.body["invariant"] == json::parse(R"([{"disc":"square","rank":1,"scale":0}])"));
}

TEST_CASE("isoclinic") {
    CliResult r = invoke({"isoclinic"}, R"({"form1": {"p": 5, "t": 1, "entries": [[1]]},
                                            "form2": {"p": 5, "t": 1, "entries": [[2]]}})");
    CHECK(r.code == 0);
    CHECK(r.body["isoclinic"] == true);

    r = invoke({"isoclinic"}, R"({"form1": {"p": 5, "t": 1, "entries": [[1,0],[0,1]]},
                                  "form2": {"p": 5, "t": 1, "entries": [[1,0],[0,2]]}})");
    CHECK(r.body["isoclinic"] == false);
}

TEST_CASE("identical requests give identical bytes") {
    std::string payload = R"({"p": 5, "N": 4, "entries": [[2,1],[1,10]]})";
    CliResult a = invoke({"jordan"}, payload);
    CliResult b = invoke({"jordan"}, payload);
    CHECK(a.out == b.out);

    a = invoke({"--seed", "4", "verify"},
               R"({"p": 3, "mode": "torsion", "k": 2, "theta": [[1]]})");
    b = invoke({"--seed", "4", "verify"},
               R"({"p": 3, "mode": "torsion", "k": 2, "theta": [[1]]})");
    CHECK(a.out == b.out);
}

TEST_CASE("validation failures") {
    CliResult r = invoke({"jordan"}, "{not json");
    CHECK(r.code == 2);
    CHECK(r.body["error"]["code"] == "schema");

    r = invoke({"jordan"}, R"({"N": 3, "entries": [[1]]})"); // p missing
    CHECK(r.code == 2);

    r = invoke({"jordan"}, R"({"p": 5, "N": 3, "entries": [[1, 2], [3, 1]]})");
    CHECK(r.code == 2);
    CHECK(r.body["error"]["code"] == "not_symmetric");

    r = invoke({"jordan"}, R"({"p": 4, "N": 3, "entries": [[1]]})");
    CHECK(r.code == 2);

    r = invoke({"frobnicate"});
    CHECK(r.code == 2);
    CHECK(r.body["error"]["code"] == "usage");

    r = invoke({});
    CHECK(r.code == 2);
}

TEST_CASE("help") {
    std::istringstream in;
    std::ostringstream out;
    CHECK(cli::run({"--help"}, in, out) == 0);
    CHECK(out.str().find("jordan") != std::string::npos);
}
