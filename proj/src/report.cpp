#include "modhecke/report.hpp"

#include <algorithm>
#include <cstdlib>
#include <numbers>
#include <regex>
#include <sstream>

#include "modhecke/curve.hpp"
#include "modhecke/eisenstein.hpp"

namespace modhecke {

// ---------------------------------------------------------------- JSON

json to_json(const Rational& r) { return to_string(r); }

json to_json(const Cyclotomic& c) {
    json coeffs = json::array();
    for (const Rational& r : c.coeffs()) coeffs.push_back(to_string(r));
    return {{"order", c.order()}, {"coeffs", coeffs}};
}

json to_json(const Mat& m) { return json::array({json::array({m.a, m.b}), json::array({m.c, m.d})}); }

json to_json(const QSeries& f) {
    json terms = json::array();
    for (const auto& [num, c] : f.terms()) terms.push_back(json::array({num, to_json(c)}));
    json j{{"exp_den", f.exp_den()}, {"terms", terms}};
    j["trunc"] = f.trunc() ? json(to_string(*f.trunc())) : json(nullptr);
    j["weight"] = to_string(f.weight());
    return j;
}

json to_json(const H1Elem& h) {
    json j = json::object();
    for (const auto& [m, c] : h.terms()) j[m.str()] = to_string(c);
    return j;
}

json to_json(const Cochain& c) {
    json terms = json::array();
    for (const auto& [k, v] : c.terms()) {
        json f = json::array();
        for (const Mono& m : k) f.push_back(m.str());
        terms.push_back({{"factors", f}, {"coeff", to_string(v)}});
    }
    return {{"degree", c.degree()}, {"terms", terms}};
}

json to_json(const FormValue& v) {
    json terms = json::array();
    for (const auto& [mono, c] : v.terms()) {
        json atoms = json::array();
        for (const auto& [a, e] : mono) atoms.push_back({{"atom", a.str()}, {"exp", e}});
        terms.push_back({{"monomial", atoms}, {"coeff", to_json(c)}});
    }
    json j{{"terms", terms}};
    if (auto w = v.weight()) j["weight"] = *w;
    return j;
}

json to_json(const HeckeElem& F) {
    json support = json::array();
    for (const auto& [k, v] : F.terms())
        support.push_back({{"scalar", to_string(k.scalar)}, {"hnf", to_json(k.hnf)}, {"value", to_json(v)}});
    return {{"support", support}};
}

// ---------------------------------------------------------------- parsing

Mat parse_mat(const std::string& s) {
    std::vector<int64_t> v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        size_t pos = 0;
        long long x = std::stoll(item, &pos);
        if (pos != item.size()) throw std::invalid_argument("bad matrix entry '" + item + "'");
        v.push_back(x);
    }
    if (v.size() != 4) throw std::invalid_argument("matrix needs four entries a,b,c,d");
    return Mat{v[0], v[1], v[2], v[3]};
}

Mono parse_mono(const std::string& s) {
    Mono m;
    std::stringstream ss(s);
    std::string tok;
    static const std::regex re(R"((d(\d+)|X|Y)(\^(\d+))?)");
    while (ss >> tok) {
        if (tok == "1") continue;
        std::smatch mt;
        if (!std::regex_match(tok, mt, re)) throw std::invalid_argument("bad monomial factor '" + tok + "'");
        int p = mt[4].matched ? std::stoi(mt[4]) : 1;
        H1Elem f = tok[0] == 'X' ? H1Elem(Mono::X(p)) : tok[0] == 'Y' ? H1Elem(Mono::Y(p)) : H1Elem(Mono::delta(std::stoi(mt[2]), p));
        // factors must come in PBW order so that the product is a single monomial
        H1Elem prod = H1Elem(m) * f;
        if (prod.terms().size() != 1 || prod.terms().begin()->second != 1)
            throw std::invalid_argument("monomial factors must be in the order d1 d2 ... X Y");
        m = prod.terms().begin()->first;
    }
    return m;
}

Complex parse_complex(const std::string& s) {
    static const std::regex full(R"(\s*([+-]?[\d.]+(?:[eE][+-]?\d+)?)\s*([+-])\s*([\d.]+(?:[eE][+-]?\d+)?)?\s*i\s*)");
    static const std::regex im_only(R"(\s*([+-]?[\d.]+(?:[eE][+-]?\d+)?)?\s*i\s*)");
    static const std::regex re_only(R"(\s*([+-]?[\d.]+(?:[eE][+-]?\d+)?)\s*)");
    std::smatch m;
    if (std::regex_match(s, m, full)) {
        double b = m[3].matched ? std::stod(m[3]) : 1.0;
        return {std::stod(m[1]), m[2] == "-" ? -b : b};
    }
    if (std::regex_match(s, m, im_only)) {
        std::string c = m[1].matched ? m[1].str() : "1";
        if (c == "+" || c == "-") c += "1";
        return {0, std::stod(c)};
    }
    if (std::regex_match(s, m, re_only)) return {std::stod(m[1]), 0};
    throw std::invalid_argument("bad complex number '" + s + "'");
}

FormValue parse_form(const std::string& s) {
    auto bar = s.find('|');
    BaseTag tag = parse_base_tag(s.substr(0, bar));
    if (bar == std::string::npos) return FormValue::base(tag);
    return FormValue::base(tag, parse_mat(s.substr(bar + 1)));
}

long default_order() {
    if (const char* e = std::getenv("MODHECKE_ORDER")) {
        try {
            long n = std::stol(e);
            if (n > 0) return n;
        } catch (const std::exception&) {
        }
        throw std::invalid_argument("MODHECKE_ORDER must be a positive integer");
    }
    return 60;
}

// ---------------------------------------------------------------- reports

void Report::add(std::string id, std::string anchor, bool ok, std::string detail) {
    checks.push_back({std::move(id), std::move(anchor), ok ? "pass" : "fail", std::move(detail)});
}

bool Report::ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.status != "fail"; });
}

void Report::sort() {
    std::stable_sort(checks.begin(), checks.end(), [](const Check& a, const Check& b) { return a.id < b.id; });
}

json Report::to_json() const {
    json cs = json::array();
    for (const Check& c : checks)
        cs.push_back({{"id", c.id}, {"anchor", c.anchor}, {"status", c.status}, {"detail", c.detail}});
    return {{"suite", suite}, {"pass", ok()}, {"checks", cs}};
}

std::string Report::to_text() const {
    std::ostringstream os;
    for (const Check& c : checks) {
        os << (c.status == "pass" ? "PASS" : c.status == "fail" ? "FAIL" : "SKIP") << "  " << suite << "/" << c.id;
        if (!c.detail.empty()) os << "  (" << c.detail << ")";
        os << "\n";
    }
    os << suite << ": " << (ok() ? "ok" : "FAILED") << "\n";
    return os.str();
}

Mat sample_gl2(std::mt19937_64& rng, long max_entry) {
    static const Mat gens[] = {{1, 1, 0, 1}, {1, -1, 0, 1}, {0, -1, 1, 0}, {2, 0, 0, 1},
                               {1, 0, 0, 2}, {3, 0, 0, 1}, {1, 0, 0, 3}, {1, 0, 1, 1}};
    for (;;) {
        Mat g = mat_identity();
        int len = 1 + int(rng() % 5);
        bool ok = true;
        for (int i = 0; i < len && ok; ++i) {
            g = g * gens[rng() % std::size(gens)];
            ok = std::max({std::abs(g.a), std::abs(g.b), std::abs(g.c), std::abs(g.d)}) <= max_entry;
        }
        if (ok) return g;
    }
}

namespace {

std::string count_detail(int bad, int total) {
    return std::to_string(total - bad) + "/" + std::to_string(total) + " hold";
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

std::vector<Mat> primitive_cosets_up_to(long n) {
    std::vector<Mat> r;
    for (long k = 2; k <= n; ++k)
        for (const Mat& m : hnf_cosets(k))
            if (m.content() == 1) r.push_back(m);
    return r;
}

Report hopf_suite(const VerifyConfig& cfg) {
    Report r{"hopf", {}};
    Distinguished d = distinguished();
    r.add("b_delta1", "Hochschild cocycle delta1", b(d.delta1).is_zero());
    r.add("tau_delta1", "cyclic sign of delta1", tau(d.delta1) == d.delta1 * Rational(-1));
    r.add("b_c", "Hochschild cocycle c", b(d.c).is_zero());
    r.add("B_c", "B(c) = delta2'", B(d.c) == d.delta2p);
    r.add("b_F", "Hochschild cocycle F", b(d.F).is_zero());
    r.add("tau_F", "cyclic invariance of F", tau(d.F) == d.F);
    int bad = 0, total = 0;
    for (const Mono& m : monomials_up_to(4)) {
        ++total;
        if (!(twisted_antipode(twisted_antipode(H1Elem(m))) == H1Elem(m))) ++bad;
    }
    r.add("twisted_antipode_involution", "twisted antipode squares to the identity", bad == 0, count_detail(bad, total));
    std::mt19937_64 rng(cfg.seed);
    int bb = 0, BB = 0, bBBb = 0, n = std::max(1, cfg.samples / 5);
    for (int t = 0; t < n; ++t)
        for (int deg = 1; deg <= 3; ++deg) {
            Cochain c = random_cochain(rng, deg);
            if (!b(b(c)).is_zero()) ++bb;
            if (deg >= 2 && !B(B(c)).is_zero()) ++BB;
            if (!(b(B(c)) + B(b(c))).is_zero()) ++bBBb;
        }
    r.add("bb", "b^2 = 0", bb == 0, count_detail(bb, 3 * n));
    r.add("BB", "B^2 = 0", BB == 0, count_detail(BB, 2 * n));
    r.add("bB_Bb", "bB + Bb = 0", bBBb == 0, count_detail(bBBb, 3 * n));
    return r;
}

Report hecke_suite(const VerifyConfig& cfg) {
    Report r{"hecke", {}};
    long order = cfg.order;
    FormValue E4 = FormValue::base(BaseTag::E4), Dl = FormValue::base(BaseTag::Delta);
    r.add("T2_E4", "T2 E4 = 9/2 E4", values_equal(act_on_form(hecke_T(2), E4), FormValue(rat(9, 2)) * E4, order));
    r.add("T2_Delta", "T2 Delta = -3/4 Delta",
          values_equal(act_on_form(hecke_T(2), Dl), FormValue(rat(-3, 4)) * Dl, order));
    for (auto [m, n] : {std::pair{2L, 3L}, {2L, 5L}, {3L, 4L}})
        r.add("TmTn_" + std::to_string(m) + "_" + std::to_string(n), "T_m T_n = T_mn for coprime m, n",
              elems_equal(hecke_T(m) * hecke_T(n), hecke_T(m * n), order));
    std::mt19937_64 rng(cfg.seed);
    int bad = 0;
    for (int i = 0; i < 10; ++i) {
        CosetFunction h = sample_coset_function(rng, 12);
        if (epsilon(j_embed(h)) != h) ++bad;
    }
    r.add("eps_j", "epsilon o j = id on weight 0", bad == 0, count_detail(bad, 10));
    const H1Elem Xh = H1Elem::X(), Yh = H1Elem::Y(), d1 = H1Elem::delta(1);
    int lb = 0;
    for (int t = 0; t < cfg.samples; ++t) {
        HeckeElem a = sample_fragment_elem(rng, 12), b = sample_fragment_elem(rng, 12);
        HeckeElem ab = a * b;
        bool ok = elems_equal(hopf_act(Yh, ab), hopf_act(Yh, a) * b + a * hopf_act(Yh, b), order) &&
                  elems_equal(hopf_act(d1, ab), hopf_act(d1, a) * b + a * hopf_act(d1, b), order) &&
                  elems_equal(hopf_act(Xh, ab),
                              hopf_act(Xh, a) * b + a * hopf_act(Xh, b) + hopf_act(d1, a) * hopf_act(Yh, b), order);
        if (!ok) ++lb;
    }
    r.add("leibniz", "Leibniz rules for X, Y, delta1", lb == 0, count_detail(lb, cfg.samples));
    int rb = 0, rt = std::max(1, cfg.samples / 2);
    for (int t = 0; t < rt; ++t) {
        HeckeElem a = sample_fragment_elem(rng, 12);
        for (int n = 1; n <= 2; ++n) {
            HeckeElem lhs = hopf_act(H1Elem::delta(n + 1), a);
            HeckeElem rhs = hopf_act(Xh, hopf_act(H1Elem::delta(n), a)) - hopf_act(H1Elem::delta(n), hopf_act(Xh, a));
            if (!elems_equal(lhs, rhs, order)) ++rb;
        }
    }
    r.add("delta_recursion", "delta_{n+1} = [X, delta_n]", rb == 0, count_detail(rb, 2 * rt));
    auto gs = primitive_cosets_up_to(12);
    int sb = 0, st = 0;
    long so = std::min<long>(order, 40);
    for (size_t i = 0; i < gs.size() && st < 20; i += 3, ++st) {
        QSeries lhs = qexpand(schwarzian_sigma(GroupElem(gs[i])), so);
        QSeries rhs = qexpand(slash(omega4(), gs[i]) - omega4(), so);
        if (!agree(lhs, rhs)) ++sb;
    }
    r.add("inner_schwarzian", "X(mu_g) - mu_g^2/2 = omega4|g - omega4", sb == 0,
          count_detail(sb, st) + " through q^" + std::to_string(so));
    return r;
}

Report euler_suite(const VerifyConfig& cfg) {
    Report r{"euler", {}};
    std::mt19937_64 rng(cfg.seed);
    int bad = 0;
    for (int i = 0; i < cfg.triples; ++i) {
        Mat a = sample_gl2(rng, cfg.max_entry), b = sample_gl2(rng, cfg.max_entry), c = sample_gl2(rng, cfg.max_entry);
        if (euler_coboundary(a, b, c) != 0) ++bad;
    }
    r.add("cocycle", "delta rho = 0", bad == 0, count_detail(bad, cfg.triples));
    int sb = 0;
    for (int i = 0; i < 50; ++i) {
        Mat g = sample_sl2(rng, cfg.max_entry), h = sample_gl2(rng, cfg.max_entry);
        if (euler_rho(g, h) != 0) ++sb;
    }
    r.add("sl2_vanishing", "rho(gamma, g) = 0 for gamma in SL2(Z)", sb == 0, count_detail(sb, 50));
    Rational ex = euler_rho(Mat{1, 0, 0, 2}, Mat{1, 1, 0, 1});
    r.add("rho_example", "rho([[1,0],[0,2]], [[1,1],[0,1]]) = -1/12", ex == rat(-1, 12), to_string(ex));
    int yb = 0;
    for (int i = 0; i < 20; ++i) {
        Mat a = sample_gl2(rng, 6), b = sample_gl2(rng, 6);
        if (euler_rho_symbolic(a, b) != euler_rho(a, b)) ++yb;
    }
    r.add("symbolic_closed_form", "class-level rho equals the closed form", yb == 0, count_detail(yb, 20));
    int ab = 0, at = 30;
    for (int i = 0; i < at; ++i) {
        long a = 1 + rng() % 24, d = 1 + rng() % (24 / a);
        Mat g{a, long(rng() % 11) - 5, 0, d};
        if (a0_class(mu_symbolic(GroupElem(g))) != mu_series(GroupElem(g), 2).coeff(0).rational_value()) ++ab;
    }
    r.add("a0_bridge", "a0(mu_g) symbolic = q-series constant term", ab == 0, count_detail(ab, at));
    return r;
}

Report curve_suite(const VerifyConfig& cfg) {
    Report r{"curve", {}};
    long order = std::max<long>(cfg.order, 42);
    for (const IdentityCheck& c : verify_curve(order)) {
        std::string d = c.verified_below != 0 ? "verified below q^" + to_string(c.verified_below) : "exact";
        if (!c.detail.empty()) d += "; " + c.detail;
        r.add(c.name, c.name, c.ok, d);
    }
    return r;
}

Report analytic_suite(const VerifyConfig& cfg) {
    Report r{"analytic", {}};
    constexpr double pi = std::numbers::pi;
    const Mat g1{2, 1, 1, 1}, g2{1, 1, 1, 2};
    double l0 = two_L0();
    r.add("two_L0", "2 L0 = 1.402182", std::abs(l0 - 1.402182) < 1e-5, std::to_string(l0));
    Complex ratio = period_L(g1) / period_L(g2);
    r.add("lattice_ratio", "L(g1)/L(g2) = e^{2 pi i/6}", std::abs(ratio - std::polar(1.0, pi / 3)) < 1e-6);
    r.add("chi_T", "chi(T) = e^{2 pi i/6}", character_chi(mat_T()) == Cyclotomic::zeta(6, 1));
    r.add("chi_commutator", "chi(g1) = chi(g2) = 1", character_chi(g1) == Cyclotomic(1) && character_chi(g2) == Cyclotomic(1));
    std::mt19937_64 rng(cfg.seed);
    int bad = 0;
    for (int i = 0; i < 20; ++i) {
        Mat g = sample_sl2(rng, cfg.max_entry);
        if (character_chi(g) != eta4_character(g)) ++bad;
    }
    r.add("chi_exact", "numeric chi matches the exact character", bad == 0, count_detail(bad, 20));
    Complex z0(0, 2);
    int ab = 0;
    for (int i = 0; i < 50; ++i) {
        Mat a = sample_sl2(rng, 6), b = sample_sl2(rng, 6), c = sample_sl2(rng, 6);
        double d = area_cocycle(b, c, z0) - area_cocycle(a * b, c, z0) + area_cocycle(a, b * c, z0) - area_cocycle(a, b, z0);
        if (std::abs(d) > 1e-9) ++ab;
    }
    r.add("area_cocycle", "area is a 2-cocycle", ab == 0, count_detail(ab, 50));
    int cb = 0;
    for (int i = 0; i < 100; ++i) {
        Mat a = sample_sl2(rng, cfg.max_entry), b = sample_sl2(rng, cfg.max_entry);
        Complex v = c_cocycle_raw(a, b, z0);
        if (std::abs(v - std::round(v.real())) > 1e-6) ++cb;
    }
    r.add("c_integral", "c(g1, g2) is an integer", cb == 0, count_detail(cb, 100));
    int mb = 0;
    double worst = 0;
    for (int i = 0; i < cfg.pairs; ++i) {
        Mat a = sample_sl2(rng, 4), b = sample_sl2(rng, 4);
        double res = std::abs(m1_residual(a, b, z0, -1));
        worst = std::max(worst, res);
        if (res > 1e-6) ++mb;
    }
    r.add("m1", "Re tau + A = beta(g1 g2) - beta(g1) - beta(g2)", mb == 0,
          count_detail(mb, cfg.pairs) + ", max residual " + std::to_string(worst));
    int tb = 0;
    for (int i = 0; i < cfg.pairs; ++i) {
        long a1 = 1 + rng() % 3, d1 = 1 + rng() % 3, a2 = 1 + rng() % 3, d2 = 1 + rng() % 3;
        Mat a{a1, long(rng() % d1), 0, d1}, b{a2, long(rng() % d2), 0, d2};
        double th = theta_numeric(a, b, Complex(0, 1)).real();
        if (std::abs(th - euler_rho(a, b).get_d()) > 1e-6) ++tb;
    }
    r.add("theta_rho", "Re theta = rho on q-computable pairs", tb == 0, count_detail(tb, cfg.pairs));
    QSeries w4 = e4(60) * Cyclotomic(rat(-1, 72));
    int zb = 0;
    for (Complex z : {Complex(0, 1), Complex(0.25, 0.9), Complex(-0.4, 1.1), Complex(0.5, 0.8), Complex(0, 1.5)})
        if (std::abs(schwarzian_Z_numeric(z) - eval_q(w4, z)) > 1e-4) ++zb;
    r.add("schwarzian", "(2 pi i)^-2 {Z; z} = -E4/72", zb == 0, count_detail(zb, 5));
    return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> n{"analytic", "curve", "euler", "hecke", "hopf"};
    return n;
}

Report verify_suite(const std::string& name, const VerifyConfig& cfg) {
    Report r;
    if (name == "hopf") r = hopf_suite(cfg);
    else if (name == "hecke") r = hecke_suite(cfg);
    else if (name == "euler") r = euler_suite(cfg);
    else if (name == "curve") r = curve_suite(cfg);
    else if (name == "analytic") r = analytic_suite(cfg);
    else throw std::invalid_argument("unknown suite '" + name + "'");
    r.sort();
    return r;
}

}  // namespace modhecke
