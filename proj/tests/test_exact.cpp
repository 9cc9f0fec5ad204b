#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "modhecke/exact.hpp"

using namespace modhecke;

TEST_CASE("bernoulli values") {
    CHECK(bernoulli_periodized(2, rat(0)) == rat(1, 6));
    CHECK(bernoulli_periodized(2, rat(1, 2)) == rat(-1, 12));
    CHECK(bernoulli_periodized(1, rat(1, 3)) == rat(-1, 6));
    CHECK(bernoulli_periodized(1, rat(0)) == 0);
    CHECK(bernoulli_periodized(1, rat(-5)) == 0);
    CHECK(bernoulli_periodized(2, rat(7, 2)) == rat(-1, 12));
    CHECK_THROWS(bernoulli_periodized(3, rat(0)));
}

TEST_CASE("Raabe multiplication for B2") {
    for (long n = 1; n <= 8; ++n)
        for (long den = 1; den <= 12; ++den)
            for (long num = 0; num < den; ++num) {
                Rational x = rat(num, den), s = 0;
                for (long j = 0; j < n; ++j) s += bernoulli_periodized(2, (x + j) / n);
                CHECK(s == bernoulli_periodized(2, x) / n);
            }
}

TEST_CASE("rational io") {
    CHECK(to_string(rat(3)) == "3/1");
    CHECK(to_string(rat(-2, 4)) == "-1/2");
    CHECK(parse_rational("6/-4") == rat(-3, 2));
    CHECK(parse_rational("7") == 7);
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("a/2"), std::invalid_argument);
    CHECK(frac(rat(-1, 3)) == rat(2, 3));
}

TEST_CASE("hnf cosets") {
    CHECK(hnf_cosets(1) == std::vector<Mat>{mat_identity()});
    std::vector<Mat> two{{2, 0, 0, 1}, {1, 0, 0, 2}, {1, 1, 0, 2}};
    CHECK(hnf_cosets(2) == two);
    CHECK(hnf_cosets(6).size() == 12);
    CHECK_THROWS(hnf_cosets(0));
}

// brute force: every integer matrix of determinant n with small entries lands in
// exactly one representative, and representatives are pairwise inequivalent
TEST_CASE("hnf cosets against brute force") {
    for (long n = 1; n <= 12; ++n) {
        auto reps = hnf_cosets(n);
        CHECK(Int(static_cast<long>(reps.size())) == sigma_k(n, 1));
        std::set<Mat> hit;
        for (long a = -6; a <= 6; ++a)
            for (long b = -6; b <= 6; ++b)
                for (long c = -6; c <= 6; ++c)
                    for (long d = -6; d <= 6; ++d) {
                        Mat m{a, b, c, d};
                        if (m.det() != n || m.content() != 1) continue;
                        auto [g0, beta] = hnf_reduce(GroupElem(m));
                        CHECK(g0.det() == 1);
                        CHECK(g0 * beta.mat == m);
                        CHECK(beta.scalar == 1);
                        hit.insert(beta.mat);
                    }
        for (auto& m : hit) CHECK(std::find(reps.begin(), reps.end(), m) != reps.end());
        for (size_t i = 0; i < reps.size(); ++i)
            for (size_t j = i + 1; j < reps.size(); ++j) {
                Mat q = reps[i] * reps[j].adjugate();  // n * reps[i] * reps[j]^-1
                bool integral = q.a % n == 0 && q.b % n == 0 && q.c % n == 0 && q.d % n == 0;
                CHECK_FALSE(integral);
            }
    }
}

TEST_CASE("hnf reduce examples") {
    auto [g0, beta] = hnf_reduce(GroupElem(mat_identity()));
    CHECK(g0.is_identity());
    CHECK(beta.mat.is_identity());
    Mat g{0, -1, 2, 0};
    auto [h0, b2] = hnf_reduce(GroupElem(g));
    CHECK(h0 * b2.mat == g);
    CHECK(b2.mat == Mat{2, 0, 0, 1});  // S*g = -diag(2,1)
    auto [u0, u] = hnf_reduce(GroupElem(rat(3), Mat{3, 7, 0, 5}));
    CHECK(u0 * u.mat == Mat{3, 7, 0, 5});
    CHECK(u.mat == Mat{3, 2, 0, 5});
    CHECK(u.scalar == 3);
}

TEST_CASE("group elements") {
    GroupElem g(rat(1), Mat{2, 0, 0, 4});
    CHECK(g.scalar == 2);
    CHECK(g.mat == Mat{1, 0, 0, 2});
    CHECK(g.det() == 8);
    CHECK(g * g.inverse() == GroupElem());
    CHECK_THROWS(GroupElem(Mat{0, 1, 1, 0}));
    Mat big{INT64_MAX, 0, 0, 1}, two{2, 0, 0, 1};
    CHECK_THROWS_AS(big * two, std::overflow_error);
}

namespace {
std::set<std::pair<Rational, Rational>> brute_kernel(const Mat& m) {
    std::set<std::pair<Rational, Rational>> out;
    long n = m.det();
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            Rational y1 = rat(i, n), y2 = rat(j, n);
            Rational z1 = y1 * m.a + y2 * m.c, z2 = y1 * m.b + y2 * m.d;
            if (z1.get_den() == 1 && z2.get_den() == 1) out.insert({y1, y2});
        }
    return out;
}
}  // namespace

TEST_CASE("kernel points") {
    auto k1 = kernel_points(mat_identity());
    REQUIRE(k1.size() == 1);
    CHECK(k1[0] == TorsionPoint(0, 0));
    auto k2 = kernel_points({1, 0, 0, 2});
    CHECK(k2 == std::vector<TorsionPoint>{{0, 0}, {0, rat(1, 2)}});
    auto k3 = kernel_points({2, 0, 0, 1});
    CHECK(k3 == std::vector<TorsionPoint>{{0, 0}, {rat(1, 2), 0}});
    CHECK_THROWS(kernel_points({1, 2, 2, 4}));
}

TEST_CASE("kernel size equals determinant, matches brute force") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> e(-9, 9);
    int tested = 0;
    while (tested < 300) {
        Mat m{e(rng), e(rng), e(rng), e(rng)};
        long det = m.det();
        if (det <= 0 || det > 60) continue;
        ++tested;
        auto k = kernel_points(m);
        CHECK(static_cast<long>(k.size()) == det);
        std::set<std::pair<Rational, Rational>> got;
        for (auto& p : k) got.insert({p.x1, p.x2});
        CHECK(got == brute_kernel(m));
    }
}

TEST_CASE("smith form") {
    for (Mat m : {Mat{2, 4, 6, 8}, Mat{0, 3, 5, 0}, Mat{4, 6, 6, 4}, Mat{1, 0, 0, 1}}) {
        SmithForm s = smith_form(m);
        CHECK(std::llabs(s.U.det()) == 1);
        CHECK(std::llabs(s.V.det()) == 1);
        CHECK(s.U * m * s.V == Mat{s.d1, 0, 0, s.d2});
        CHECK(s.d2 % s.d1 == 0);
        CHECK(s.d1 == m.content());
    }
}

TEST_CASE("cyclotomic basics") {
    Cyclotomic z3 = Cyclotomic::zeta(3, 1);
    CHECK(z3 * z3 * z3 == Cyclotomic(1));
    CHECK(z3 * z3 + z3 + Cyclotomic(1) == Cyclotomic(0));
    CHECK(Cyclotomic::zeta(2, 1) == Cyclotomic(-1));
    CHECK(Cyclotomic::zeta(6, 1) * Cyclotomic::zeta(6, 1) == z3);
    CHECK(Cyclotomic::zeta(12, 4) == z3);
    CHECK(Cyclotomic::root_of_unity(rat(-1, 4)) == Cyclotomic::zeta(4, 3));
    Cyclotomic a = Cyclotomic(2) + Cyclotomic::zeta(5, 2) * rat(3, 7);
    CHECK(a * a.inverse() == Cyclotomic(1));
    CHECK((a / a).is_rational());
    CHECK_THROWS(Cyclotomic(0).inverse());
}

TEST_CASE("cyclotomic order cap") {
    int old = cyclotomic_order_cap();
    set_cyclotomic_order_cap(30);
    CHECK_THROWS_AS(Cyclotomic::zeta(7, 1) * Cyclotomic::zeta(5, 1), std::domain_error);
    set_cyclotomic_order_cap(old);
    CHECK_NOTHROW(Cyclotomic::zeta(7, 1) * Cyclotomic::zeta(5, 1));
}

TEST_CASE("cyclotomic arithmetic agrees with complex embedding") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> ord(1, 120), num(-5, 5), cnt(1, 10);
    for (int trial = 0; trial < 60; ++trial) {
        int M = ord(rng);
        int n = cnt(rng);
        Cyclotomic x(1);
        std::complex<double> xc = 1;
        for (int i = 0; i < n; ++i) {
            Cyclotomic f = Cyclotomic(rat(num(rng), 3)) + Cyclotomic::zeta(M, num(rng)) * rat(num(rng), 2);
            if (f.is_zero()) continue;
            std::complex<double> fc = f.to_complex();
            if (i % 3 == 2) {
                x = x / f;
                xc /= fc;
            } else {
                x = x * f;
                xc *= fc;
            }
        }
        CHECK(std::abs(x.to_complex() - xc) < 1e-12 * std::max(1.0, std::abs(xc)));
    }
}

TEST_CASE("sigma") {
    CHECK(sigma_k(6, 1) == 12);
    CHECK(sigma_k(2, 3) == 9);
    CHECK(euler_phi(12) == 4);
}
