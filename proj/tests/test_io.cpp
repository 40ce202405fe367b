#include <catch_amalgamated.hpp>

#include <set>
#include <sstream>

#include "qherm/io.hpp"
#include "qherm/verify.hpp"

using namespace qherm;

TEST_CASE("quaternion and series JSON round trip", "[io]") {
    const Quaternion q{0.1, -2.5, 1e-300, 3.0};
    const Json j = q;
    CHECK(j.dump() == "[0.1,-2.5,1e-300,3.0]");
    CHECK(j.get<Quaternion>() == q);
    CHECK_THROWS_AS(Json::parse("[1,2,3]").get<Quaternion>(), DomainError);

    const QSeries s{CoeffSide::Right, {units::i, Quaternion{0.5}}};
    const Json js = s;
    CHECK(js["side"] == "right");
    const QSeries back = js.get<QSeries>();
    CHECK(back.side == CoeffSide::Right);
    CHECK(back.coeffs == s.coeffs);
    CHECK_THROWS_AS(Json::parse(R"({"side":"up","coeffs":[]})").get<QSeries>(), DomainError);
}

TEST_CASE("rule dump and load", "[io]") {
    const Rule1D r = gauss_hermite(12);
    const Rule1D back = load_rule(Json::parse(dump_rule(r).dump()));
    CHECK(back.nodes == r.nodes);
    CHECK(back.weights == r.weights);
    CHECK_THROWS_AS(load_rule(Json::parse(R"({"nodes":[1,2],"weights":[1]})")), DomainError);
}

TEST_CASE("CSV number format", "[io]") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(-2.5e-20) == "-2.4999999999999999e-20");
    std::ostringstream os;
    CsvWriter w(os);
    w.header({"a", "b", "c"});
    w.row(3, 0.5, "x");
    CHECK(os.str() == "a,b,c\n3,0.5,x\n");
}

TEST_CASE("every suite maps to criteria and all criteria are covered", "[io]") {
    std::set<unsigned> covered;
    for (const auto& s : suites()) {
        CHECK_FALSE(s.criteria.empty());
        covered.insert(s.criteria.begin(), s.criteria.end());
        CHECK(find_suite(s.name) == &s);
    }
    CHECK(covered.size() == 12);
    CHECK(*covered.begin() == 1);
    CHECK(*covered.rbegin() == 12);
    CHECK(find_suite("nope") == nullptr);
}

TEST_CASE("suite checks cite their criteria and tolerance overrides apply", "[io]") {
    VerifyConfig cfg;
    cfg.max_n = 3;
    const SuiteResult r = suite_landau(cfg);
    CHECK(r.passed());
    REQUIRE(r.checks.size() == 1);
    CHECK(r.checks[0].criterion == 4);
    CHECK(r.details["eigenvalues"].size() == 16);
    CHECK(r.details["eigenvalues"][5]["eigenvalue"] == "3/2");

    cfg.tolerances["K_s_closed_rel"] = 1e-300;
    const SuiteResult k = suite_kernels(cfg);
    CHECK_FALSE(k.passed());
    CHECK(Json(k).dump() == Json(suite_kernels(cfg)).dump());
}
