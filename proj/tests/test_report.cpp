#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>

#include "modhecke/eisenstein.hpp"
#include "modhecke/report.hpp"

using namespace modhecke;

TEST_CASE("parsing") {
    CHECK(parse_mat("1,0,0,2") == Mat{1, 0, 0, 2});
    CHECK(parse_mat("-3,1,2,-1") == Mat{-3, 1, 2, -1});
    CHECK_THROWS_AS(parse_mat("1,2,3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_mat("1,2,3,x"), std::invalid_argument);
    CHECK(parse_mono("d1^2 d3 X^2 Y").str() == "d1^2 d3 X^2 Y");
    CHECK(parse_mono("1").is_one());
    CHECK_THROWS_AS(parse_mono("X d1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_mono("Z"), std::invalid_argument);
    CHECK(parse_complex("0+2i") == Complex(0, 2));
    CHECK(parse_complex("0.5-1.25i") == Complex(0.5, -1.25));
    CHECK(parse_complex("2i") == Complex(0, 2));
    CHECK(parse_complex("i") == Complex(0, 1));
    CHECK(parse_complex("3") == Complex(3, 0));
    CHECK_THROWS_AS(parse_complex("abc"), std::invalid_argument);
    CHECK(parse_form("E4") == FormValue::base(BaseTag::E4));
    CHECK(parse_form("Delta|2,0,0,1") == FormValue::base(BaseTag::Delta, Mat{2, 0, 0, 1}));
}

TEST_CASE("JSON formats") {
    CHECK(to_json(rat(-1, 12)) == "-1/12");
    CHECK(to_json(Rational(3)) == "3/1");
    CHECK(to_json(Mat{1, 2, 0, 3}).dump() == "[[1,2],[0,3]]");
    json z = to_json(Cyclotomic::zeta(6, 1));
    CHECK(z["order"] == 6);
    json q = to_json(e4(3));
    CHECK(q["exp_den"] == 1);
    CHECK(q["trunc"] == "3/1");
    CHECK(q["weight"] == "4/1");
    CHECK(q["terms"][1][0] == 1);
    CHECK(q["terms"][1][1]["coeffs"][0] == "240/1");
    json F = to_json(hecke_T(2));
    CHECK(F["support"].size() == 3);
    CHECK(F["support"][0].contains("scalar"));
    CHECK(F["support"][0]["hnf"][1][0] == 0);
    json h = to_json(H1Elem::delta(2) - H1Elem::delta(1) * H1Elem::delta(1) * rat(1, 2));
    CHECK(h["d1^2"] == "-1/2");
    CHECK(h["d2"] == "1/1");
}

TEST_CASE("default order") {
    unsetenv("MODHECKE_ORDER");
    CHECK(default_order() == 60);
    setenv("MODHECKE_ORDER", "25", 1);
    CHECK(default_order() == 25);
    setenv("MODHECKE_ORDER", "abc", 1);
    CHECK_THROWS(default_order());
    unsetenv("MODHECKE_ORDER");
}

TEST_CASE("sampling stays in bounds") {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 200; ++i) {
        Mat g = sample_gl2(rng, 10);
        CHECK(g.det() > 0);
        CHECK(std::max({std::abs(g.a), std::abs(g.b), std::abs(g.c), std::abs(g.d)}) <= 10);
    }
}

TEST_CASE("reports") {
    Report r{"demo", {}};
    r.add("b", "", true);
    r.add("a", "", false, "why");
    r.checks.push_back({"c", "", "skipped", ""});
    CHECK_FALSE(r.ok());
    r.sort();
    CHECK(r.checks[0].id == "a");
    json j = r.to_json();
    CHECK(j["pass"] == false);
    CHECK(j["checks"][2]["status"] == "skipped");
    r.checks[0].status = "pass";
    CHECK(r.ok());
    CHECK_THROWS_AS(verify_suite("nope", {}), std::invalid_argument);
}

TEST_CASE("small suites pass") {
    VerifyConfig cfg;
    cfg.order = 20;
    cfg.triples = 30;
    cfg.samples = 5;
    cfg.pairs = 3;
    for (const char* s : {"hopf", "euler", "curve", "analytic"}) {
        Report r = verify_suite(s, cfg);
        INFO(r.to_text());
        CHECK(r.ok());
        CHECK(std::is_sorted(r.checks.begin(), r.checks.end(), [](auto& a, auto& b) { return a.id < b.id; }));
    }
}
