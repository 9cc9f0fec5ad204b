#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "modhecke/hopf.hpp"

using namespace modhecke;

namespace {

const H1Elem d1 = H1Elem::delta(1), d2 = H1Elem::delta(2), X = H1Elem::X(), Y = H1Elem::Y();

Cochain t2(const H1Elem& a, const H1Elem& b) { return Cochain::tensor({a, b}); }

Mono random_mono(std::mt19937_64& rng, int maxdeg, bool allow_one = true) {
    auto all = monomials_up_to(maxdeg);
    for (;;) {
        Mono m = all[rng() % all.size()];
        if (allow_one || !m.is_one()) return m;
    }
}

// random cochain whose factors are non-unit monomials, hence normalized
Cochain random_normalized(std::mt19937_64& rng, int degree, int terms) {
    Cochain c(degree);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (int t = 0; t < terms; ++t) {
        Cochain::Key k;
        for (int i = 0; i < degree; ++i) k.push_back(random_mono(rng, 2, false));
        c.add(k, coef(rng));
    }
    return c;
}

}  // namespace

TEST_CASE("PBW relations") {
    CHECK(X * d1 == d1 * X + d2);
    CHECK(Y * X == X * Y + X);
    CHECK(Y * d2 == d2 * Y + d2 * Rational(2));
    CHECK(d1 * d2 == d2 * d1);
    CHECK(H1Elem(1) * (X + d1) == X + d1);
    CHECK(commutator(X, H1Elem::delta(3)) == H1Elem::delta(4));
}

TEST_CASE("PBW product is associative") {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 200; ++i) {
        H1Elem a(random_mono(rng, 3)), b(random_mono(rng, 3)), c(random_mono(rng, 3));
        CHECK((a * b) * c == a * (b * c));
    }
}

TEST_CASE("coproduct on generators") {
    CHECK(coproduct(d1) == t2(d1, 1) + t2(1, d1));
    CHECK(coproduct(X) == t2(X, 1) + t2(1, X) + t2(d1, Y));
    CHECK(coproduct(d2) == t2(d2, 1) + t2(1, d2) + t2(d1, d1));
    CHECK(coproduct(Y) == t2(Y, 1) + t2(1, Y));
}

TEST_CASE("coproduct is multiplicative, coassociative, counital") {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 100; ++i) {
        H1Elem u(random_mono(rng, 3)), v(random_mono(rng, 3));
        CHECK(coproduct(u * v) == coproduct(u) * coproduct(v));
        Cochain du = coproduct(u);
        Cochain left(1), right(1);
        for (auto& [k, c] : du.terms()) {
            left.add({k[1]}, c * counit(k[0]));
            right.add({k[0]}, c * counit(k[1]));
        }
        CHECK(left.as_elem() == u);
        CHECK(right.as_elem() == u);
        // (Delta (x) id) Delta = (id (x) Delta) Delta
        Cochain a(3), b3(3);
        for (auto& [k, c] : du.terms()) {
            for (auto& [k2, c2] : coproduct(k[0]).terms()) a.add({k2[0], k2[1], k[1]}, c * c2);
            for (auto& [k2, c2] : coproduct(k[1]).terms()) b3.add({k[0], k2[0], k2[1]}, c * c2);
        }
        CHECK(a == b3);
    }
}

TEST_CASE("antipode") {
    CHECK(antipode(Y) == -Y);
    CHECK(antipode(X) == -X + d1 * Y);
    CHECK(antipode(d1) == -d1);
    CHECK(twisted_antipode(Y) == -Y + 1);
    CHECK(twisted_antipode(X) == -X + d1 * Y);
    CHECK(twisted_antipode(1) == H1Elem(1));
    CHECK(twisted_antipode(d1) == -d1);
    // m (S (x) id) Delta = eps = m (id (x) S) Delta on all low monomials
    for (auto& m : monomials_up_to(4)) {
        H1Elem l, r;
        for (auto& [k, c] : coproduct(m).terms()) {
            l += antipode(k[0]) * H1Elem(k[1], c);
            r += H1Elem(k[0], c) * antipode(k[1]);
        }
        CHECK(l == H1Elem(counit(m)));
        CHECK(r == H1Elem(counit(m)));
    }
}

TEST_CASE("twisted antipode is an involution") {
    auto ms = monomials_up_to(4);
    CHECK(ms.size() > 50);
    for (auto& m : ms) CHECK(twisted_antipode(twisted_antipode(H1Elem(m))) == H1Elem(m));
}

TEST_CASE("nu is a character") {
    std::mt19937_64 rng(6);
    for (int i = 0; i < 100; ++i) {
        H1Elem u(random_mono(rng, 3)), v(random_mono(rng, 3));
        CHECK(nu(u * v) == nu(u) * nu(v));
    }
}

TEST_CASE("Hochschild and cyclic examples") {
    auto d = distinguished();
    CHECK(b(d.delta1).is_zero());
    CHECK(tau(d.delta1) == d.delta1 * Rational(-1));
    CHECK(b(t2(d1, X)) == Cochain::tensor({d1, d1, Y}));
    CHECK(b(t2(d1 * d1, Y)) == Cochain::tensor({d1, d1, Y}) * Rational(-2));
    CHECK(b(d.c).is_zero());
    CHECK(B0(d.c).as_elem() == -(d1 * X) + d1 * d1 * Y * rat(1, 2));
    CHECK(B(d.c) == d.delta2p);
    CHECK(B(Cochain::from_elem(Y)) == Cochain::scalar(1));
    CHECK(b(d.F).is_zero());
    CHECK(tau(d.F) == d.F);
    CHECK(b(d.delta2p).is_zero());
    CHECK(b(Cochain::scalar(1)).is_zero());
}

TEST_CASE("tau has order n+1") {
    std::mt19937_64 rng(8);
    for (int n = 1; n <= 3; ++n) {
        Cochain c = random_normalized(rng, n, 3);
        Cochain t = c;
        for (int i = 0; i <= n; ++i) t = tau(t);
        CHECK(t == c);
    }
}

TEST_CASE("bicomplex identities") {
    std::mt19937_64 rng(10);
    for (int trial = 0; trial < 6; ++trial)
        for (int n = 1; n <= 3; ++n) {
            Cochain c = random_normalized(rng, n, 3);
            CHECK(b(b(c)).is_zero());
            if (n >= 2) {
                CHECK(B(B(c)).is_zero());
            }
        }
    for (int trial = 0; trial < 6; ++trial) {
        Cochain c = random_normalized(rng, 2, 3);
        CHECK((b(B(c)) + B(b(c))).is_zero());
    }
}

TEST_CASE("degree bounds and normalization") {
    Cochain c5(5);
    c5.add(Cochain::Key(5, Mono::X()), 1);
    CHECK_THROWS_AS(b(c5), std::out_of_range);
    CHECK_NOTHROW(tau(c5));
    Cochain u = Cochain::tensor({X + 1, Y});
    CHECK(normalize(u) == t2(X, Y));
    for (int i = 0; i <= 1; ++i) CHECK(degeneracy(i, normalize(u)).is_zero());
}

TEST_CASE("rendering") {
    CHECK(Mono{{2, 0, 1}, 2, 1}.str() == "d1^2 d3 X^2 Y");
    CHECK((X - d1 * Y * Rational(2)).str() == "X - 2 d1 Y");
}
