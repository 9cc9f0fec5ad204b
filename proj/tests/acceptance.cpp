// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "modhecke/analytic.hpp"
#include "modhecke/curve.hpp"
#include "modhecke/eisenstein.hpp"
#include "modhecke/hecke.hpp"
#include "modhecke/hopf.hpp"
#include "modhecke/qseries.hpp"

using namespace modhecke;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (!detail.empty()) detail += "; ";
            detail += what;
        }
    }
};

struct Criterion {
    int id;
    std::string name;
    double budget;  // seconds, 0 when none is stated
    std::function<Outcome()> run;
};

Mat uniform_mat(std::mt19937_64& rng, int max_entry) {
    std::uniform_int_distribution<int> u(-max_entry, max_entry);
    for (;;) {
        Mat m{u(rng), u(rng), u(rng), u(rng)};
        if (m.det() > 0) return m;
    }
}

std::vector<Mat> primitive_cosets_up_to(long n) {
    std::vector<Mat> r;
    for (long k = 2; k <= n; ++k)
        for (const Mat& m : hnf_cosets(k))
            if (m.content() == 1) r.push_back(m);
    return r;
}

Cochain random_cochain(std::mt19937_64& rng, int degree) {
    auto all = monomials_up_to(2);
    Cochain c(degree);
    for (int t = 0; t < 3; ++t) {
        Cochain::Key k;
        while (static_cast<int>(k.size()) < degree) {
            const Mono& m = all[rng() % all.size()];
            if (!m.is_one()) k.push_back(m);
        }
        c.add(k, Rational(static_cast<long>(rng() % 7) - 3));
    }
    return c;
}

Outcome omega4_identity() {
    Outcome o;
    QSeries g = g2_star(61);
    QSeries d = theta(g) - g * g * Cyclotomic(rat(1, 2)) + e4(61) * Cyclotomic(rat(1, 72));
    o.require(d.is_zero(), "residual " + d.str(3));
    o.require(d.trunc() && *d.trunc() > 60, "order below q^60");
    return o;
}

Outcome hopf_cyclic() {
    Outcome o;
    Distinguished d = distinguished();
    o.require(b(d.delta1).is_zero(), "b(delta1)");
    o.require(tau(d.delta1) == d.delta1 * Rational(-1), "tau1(delta1)");
    o.require(b(d.c).is_zero(), "b(c)");
    Cochain want = Cochain::from_elem(H1Elem::delta(2) - H1Elem::delta(1) * H1Elem::delta(1) * rat(1, 2));
    o.require(B(d.c) == want, "B(c)");
    o.require(b(d.F).is_zero(), "b(F)");
    o.require(tau(d.F) == d.F, "tau2(F)");
    for (const Mono& m : monomials_up_to(4))
        if (!(twisted_antipode(twisted_antipode(H1Elem(m))) == H1Elem(m))) o.require(false, "S~^2 at " + m.str());
    std::mt19937_64 rng(101);
    for (int t = 0; t < 10; ++t)
        for (int deg = 1; deg <= 3; ++deg) {
            Cochain c = random_cochain(rng, deg);
            o.require(b(b(c)).is_zero(), "b^2");
            if (deg >= 2) o.require(B(B(c)).is_zero(), "B^2");
            o.require((b(B(c)) + B(b(c))).is_zero(), "bB + Bb");
        }
    return o;
}

Outcome hopf_action() {
    Outcome o;
    std::mt19937_64 rng(23);
    const H1Elem Xh = H1Elem::X(), Yh = H1Elem::Y(), d1 = H1Elem::delta(1);
    int bad = 0;
    for (int t = 0; t < 50; ++t) {
        HeckeElem a = sample_fragment_elem(rng, 12), b = sample_fragment_elem(rng, 12);
        HeckeElem ab = a * b;
        bool ok = elems_equal(hopf_act(Yh, ab), hopf_act(Yh, a) * b + a * hopf_act(Yh, b), 40) &&
                  elems_equal(hopf_act(d1, ab), hopf_act(d1, a) * b + a * hopf_act(d1, b), 40) &&
                  elems_equal(hopf_act(Xh, ab),
                              hopf_act(Xh, a) * b + a * hopf_act(Xh, b) + hopf_act(d1, a) * hopf_act(Yh, b), 40);
        for (int n = 1; n <= 2; ++n) {
            HeckeElem lhs = hopf_act(H1Elem::delta(n + 1), a);
            HeckeElem rhs = hopf_act(Xh, hopf_act(H1Elem::delta(n), a)) - hopf_act(H1Elem::delta(n), hopf_act(Xh, a));
            ok = ok && elems_equal(lhs, rhs, 40);
        }
        if (!ok) ++bad;
    }
    o.require(bad == 0, std::to_string(bad) + " of 50 pairs fail");
    return o;
}

Outcome inner_schwarzian() {
    Outcome o;
    auto gs = primitive_cosets_up_to(12);
    int count = 0;
    for (size_t i = 0; i < gs.size() && count < 20; i += 3, ++count) {
        QSeries lhs = qexpand(schwarzian_sigma(GroupElem(gs[i])), 41);
        QSeries rhs = qexpand(slash(omega4(), gs[i]) - omega4(), 41);
        o.require(agree(lhs, rhs) && *common_order(lhs, rhs) > 40, "fails at " + gs[i].str());
    }
    o.require(count == 20, "fewer than 20 matrices");
    return o;
}

Outcome euler_cocycle() {
    Outcome o;
    std::mt19937_64 rng(7);
    int bad = 0;
    for (int i = 0; i < 200; ++i) {
        Mat a = uniform_mat(rng, 10), b = uniform_mat(rng, 10), c = uniform_mat(rng, 10);
        if (euler_coboundary(a, b, c) != 0) ++bad;
    }
    o.require(bad == 0, std::to_string(bad) + " of 200 triples fail");
    for (int i = 0; i < 50; ++i) {
        Mat g = sample_sl2(rng, 10), h = uniform_mat(rng, 10);
        o.require(euler_rho(g, h) == 0, "rho(gamma, .) != 0 at " + g.str());
    }
    o.require(euler_rho(Mat{1, 0, 0, 2}, Mat{1, 1, 0, 1}) == rat(-1, 12), "rho example");
    return o;
}

Outcome bridge() {
    Outcome o;
    std::mt19937_64 rng(19);
    for (int i = 0; i < 30; ++i) {
        long a = 1 + rng() % 24, d = 1 + rng() % (24 / a);
        Mat g{a, long(rng() % 11) - 5, 0, d};
        Rational sym = a0_class(mu_symbolic(GroupElem(g)));
        o.require(sym == mu_series(GroupElem(g), 2).coeff(0).rational_value(), "a0 mismatch at " + g.str());
    }
    const std::vector<std::pair<Mat, Mat>> pairs{
        {{1, 0, 0, 2}, {1, 1, 0, 1}}, {{2, 0, 0, 1}, {1, 1, 0, 2}}, {{1, 1, 0, 2}, {2, 1, 0, 1}},
        {{1, 0, 0, 3}, {1, 2, 0, 3}}, {{3, 1, 0, 1}, {1, 1, 0, 2}}, {{1, 1, 0, 3}, {1, 0, 0, 2}},
        {{2, 1, 0, 2}, {1, 3, 0, 2}}, {{1, 2, 0, 5}, {2, 1, 0, 1}}, {{1, 0, 0, 4}, {1, 1, 0, 1}},
        {{2, 0, 0, 3}, {3, 2, 0, 2}}};
    for (const auto& [a, b] : pairs) {
        double th = theta_numeric(a, b).real();
        o.require(std::abs(th - euler_rho(a, b).get_d()) < 1e-6, "theta vs rho at " + a.str() + " " + b.str());
    }
    return o;
}

Outcome period_lattice() {
    Outcome o;
    double l = two_L0();
    o.require(std::abs(l - 1.402182) < 1e-5, "2L0 = " + std::to_string(l));
    Complex r = period_L(Mat{2, 1, 1, 1}) / period_L(Mat{1, 1, 1, 2});
    o.require(std::abs(r - std::polar(1.0, kPi / 3)) < 1e-6, "lattice ratio");
    o.require(character_chi(mat_T()) == Cyclotomic::zeta(6, 1), "chi(T)");
    o.detail = o.ok ? "2L0 = " + std::to_string(l) : o.detail;
    return o;
}

Outcome theorem_m1() {
    Outcome o;
    Complex z0(0, 2);
    std::mt19937_64 rng(2024);
    double worst = 0;
    for (int i = 0; i < 10; ++i) {
        Mat a = sample_sl2(rng, 4), b = sample_sl2(rng, 4);
        worst = std::max(worst, std::abs(m1_residual(a, b, z0, -1)));
    }
    o.require(worst < 1e-6, "residual " + std::to_string(worst));
    for (int i = 0; i < 100; ++i) {
        Mat a = sample_sl2(rng, 10), b = sample_sl2(rng, 10);
        Complex v = c_cocycle_raw(a, b, z0);
        o.require(std::abs(v - std::round(v.real())) < 1e-6, "c not integral at " + a.str() + " " + b.str());
    }
    return o;
}

Outcome curve_suite() {
    Outcome o;
    CurveData c = curve_data(42);
    IdentityCheck w = check_weierstrass(c);
    o.require(w.ok && w.verified_below > 40, "y^2 = x^3 + 1");
    IdentityCheck m = check_mu_formula(c);
    o.require(m.ok, "mu formula: " + m.detail);
    IdentityCheck r = check_ratfrac(curve_data(36));
    o.require(r.ok && r.verified_below > 30, "cleared ratfrac below q^" + to_string(r.verified_below));
    return o;
}

Outcome hecke_suite() {
    Outcome o;
    FormValue E4 = FormValue::base(BaseTag::E4), Dl = FormValue::base(BaseTag::Delta);
    FormValue t2e4 = act_on_form(hecke_T(2), E4), t2d = act_on_form(hecke_T(2), Dl);
    o.require(values_equal(t2e4, FormValue(rat(9, 2)) * E4, 40), "T2 E4");
    o.require(values_equal(t2d, FormValue(rat(-3, 4)) * Dl, 40), "T2 Delta");
    // coefficient oracle: with the det^{k/2} slash, the q^1 coefficient of T2 f is 2^{1-k/2} a_f(2)
    o.require(qexpand(t2e4, 4).coeff(1) == Cyclotomic(rat(240 * 9, 2)), "T2 E4 coefficient");
    o.require(qexpand(t2d, 4).coeff(1) == Cyclotomic(rat(-24, 32)), "T2 Delta coefficient");
    for (auto [m, n] : {std::pair{2L, 3L}, {2L, 5L}, {3L, 4L}})
        o.require(elems_equal(hecke_T(m) * hecke_T(n), hecke_T(m * n), 40), "T" + std::to_string(m) + " T" + std::to_string(n));
    std::mt19937_64 rng(29);
    for (int i = 0; i < 10; ++i) {
        CosetFunction h = sample_coset_function(rng, 12);
        o.require(epsilon(j_embed(h)) == h, "epsilon o j");
    }
    return o;
}

Outcome perturbation() {
    Outcome o;
    FormValue m = FormValue::mu(Mat{2, 0, 0, 1});
    Perturbation p(FormValue(), 1, m);
    auto monos = monomials_up_to(3);
    for (const Mono& h : monos)
        for (const Mono& hp : monos) {
            if (h.grading() + hp.grading() + h.y + hp.y > 3) continue;
            FormValue lhs = p.u(pbw_mul(h, hp)), rhs, uhp = p.u(hp);
            for (const auto& [k, c] : coproduct(h).terms()) rhs += p.u(k[0]) * hopf_act(H1Elem(k[1]), uhp) * FormValue(c);
            o.require(values_equal(lhs, rhs, 12), "cocycle at " + h.str() + ", " + hp.str());
        }
    for (const Mono& h : monos) {
        FormValue s;
        for (const auto& [k, c] : coproduct(h).terms()) s += p.u(k[0]) * p.u_inv(k[1]) * FormValue(c);
        o.require(values_equal(s, FormValue(counit(h)), 12), "u * u^-1 at " + h.str());
    }
    H1Elem d2p = H1Elem::delta(2) - H1Elem::delta(1) * H1Elem::delta(1) * rat(1, 2);
    o.require(p.u(d2p) == X(m) + FormValue(rat(1, 2)) * m * m, "u(delta2')");
    std::mt19937_64 rng(12);
    for (int t = 0; t < 10; ++t) {
        HeckeElem a = sample_fragment_elem(rng, 6);
        o.require(elems_equal(p.act(H1Elem::X(), a), p.X_tilde(a)), "X~");
        o.require(elems_equal(p.act(H1Elem::delta(1), a), p.delta1_tilde(a)), "delta1~");
    }
    return o;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "omega4 identity through q^60", 1, omega4_identity},
        {2, "Hopf-cyclic suite", 5, hopf_cyclic},
        {3, "Hopf action: Leibniz rules and delta recursion", 60, hopf_action},
        {4, "inner Schwarzian through q^40", 0, inner_schwarzian},
        {5, "Euler cocycle", 30, euler_cocycle},
        {6, "symbolic/analytic bridge", 0, bridge},
        {7, "period lattice", 10, period_lattice},
        {8, "area cocycle and tau at z0 = 2i; integral c", 0, theorem_m1},
        {9, "curve suite", 30, curve_suite},
        {10, "Hecke suite", 0, hecke_suite},
        {11, "perturbation suite", 0, perturbation},
    };
    int failed = 0;
    for (const Criterion& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.budget > 0 && secs > c.budget) o.require(false, "over the " + std::to_string(int(c.budget)) + " s budget");
        if (!o.ok) ++failed;
        std::printf("%s %2d  %-50s %8.3f s%s%s\n", o.ok ? "PASS" : "FAIL", c.id, c.name.c_str(), secs,
                    o.detail.empty() ? "" : "  ", o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria pass\n", int(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
