#include <CLI11.hpp>

#include <iostream>
#include <numbers>
#include <optional>

#include "modhecke/curve.hpp"
#include "modhecke/eisenstein.hpp"
#include "modhecke/report.hpp"

using namespace modhecke;

namespace {

struct Options {
    std::optional<long> order;
    uint64_t seed = 1;
    long max_entry = 10;
    bool json_out = false;
    bool text_out = false;

    long effective_order() const { return order ? *order : default_order(); }
};

// exit 1 on a failed check
int emit(const Options& o, const json& j, const std::string& text, bool ok = true) {
    if (o.json_out) std::cout << j.dump(2) << "\n";
    else std::cout << text << (text.empty() || text.back() == '\n' ? "" : "\n");
    return ok ? 0 : 1;
}

QSeries named_series(const std::string& name, long order, const std::optional<std::string>& g) {
    if (name == "e4") return e4(order);
    if (name == "e6") return e6(order);
    if (name == "eta4") return eta4(order);
    if (name == "delta") return delta(order);
    if (name == "g2star") return g2_star(order);
    if (name == "omega4") return qexpand(omega4(), order);
    if (name == "mu") {
        if (!g) throw std::invalid_argument("--series mu needs --g");
        return mu_series(GroupElem(parse_mat(*g)), order);
    }
    if (name == "x") return solve_x(order);
    throw std::invalid_argument("unknown series '" + name + "'");
}

Rational parse_frac(const std::string& s) { return parse_rational(s); }

TorsionPoint parse_point(const std::string& s) {
    auto comma = s.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("point needs two coordinates x1,x2");
    return TorsionPoint(parse_rational(s.substr(0, comma)), parse_rational(s.substr(comma + 1)));
}

H1Elem parse_op(const std::string& s) { return H1Elem(parse_mono(s)); }

json check_json(const std::string& name, double value, double tol, bool pass) {
    return {{"check", name}, {"value", value}, {"tolerance", tol}, {"pass", pass}};
}

std::string check_text(const json& j) {
    std::ostringstream os;
    for (const auto& c : j) os << (c["pass"].get<bool>() ? "PASS" : "FAIL") << "  " << c["check"].get<std::string>() << "  value " << c["value"].dump() << "  tol " << c["tolerance"].dump() << "\n";
    return os.str();
}

bool all_pass(const json& j) {
    for (const auto& c : j)
        if (!c["pass"].get<bool>()) return false;
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computations in the modular Hecke algebra of level one"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_option("--order", o.order, "q-expansion truncation order (default 60, or MODHECKE_ORDER)")->check(CLI::PositiveNumber);
    app.add_option("--seed", o.seed, "seed for pseudorandom samples");
    app.add_option("--max-entry", o.max_entry, "entry bound for random matrices")->check(CLI::PositiveNumber);
    auto* jflag = app.add_flag("--json", o.json_out, "machine-readable output");
    app.add_flag("--text", o.text_out, "human-readable output (default)")->excludes(jflag);

    std::function<int()> run;

    // verify
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    std::string suite;
    int triples = 200, pairs = 10, samples = 50;
    verify->add_option("suite", suite, "all|hopf|hecke|euler|curve|analytic")->required();
    verify->add_option("--triples", triples, "triples for the Euler cocycle check");
    verify->add_option("--pairs", pairs, "pairs for the numeric checks");
    verify->add_option("--samples", samples, "random elements for the Hecke checks");
    verify->callback([&] {
        run = [&] {
            VerifyConfig cfg;
            cfg.order = o.effective_order();
            cfg.seed = o.seed;
            cfg.max_entry = o.max_entry;
            cfg.triples = triples;
            cfg.pairs = pairs;
            cfg.samples = samples;
            std::vector<std::string> names;
            if (suite == "all") names = suite_names();
            else names = {suite};
            json all = json::array();
            std::string text;
            bool ok = true;
            for (const auto& n : names) {
                Report r = verify_suite(n, cfg);
                ok = ok && r.ok();
                all.push_back(r.to_json());
                text += r.to_text();
            }
            return emit(o, names.size() == 1 ? all[0] : all, text, ok);
        };
    });

    // compute
    auto* compute = app.add_subcommand("compute", "compute a single object");
    std::string object, series = "e4";
    std::optional<std::string> g, g1, g2, x, frac, form, form2, mono, tg, mg;
    long n = 2;
    std::string lambda = "1";
    compute->add_option("object", object, "qexp|mu|rho|dedekind|T|rc1|perturb-u")->required();
    compute->add_option("--series", series, "e4|e6|eta4|delta|g2star|omega4|mu|x");
    compute->add_option("--g", g, "matrix a,b,c,d");
    compute->add_option("--g1", g1, "matrix a,b,c,d");
    compute->add_option("--g2", g2, "matrix a,b,c,d");
    compute->add_option("--x", x, "torsion point x1,x2");
    compute->add_option("--frac", frac, "rational m/n");
    compute->add_option("--n", n, "Hecke index")->check(CLI::PositiveNumber);
    compute->add_option("--form", form, "E4|E6|eta4|Delta, optionally |a,b,c,d");
    compute->add_option("--form2", form2, "second value for rc1");
    compute->add_option("--mono", mono, "monomial such as 'd1^2 X'");
    compute->add_option("--t-g", tg, "t = mu_g for the perturbation (default t = 0)");
    compute->add_option("--m-g", mg, "m = mu_g for the perturbation");
    compute->add_option("--lambda", lambda, "rational lambda");
    compute->callback([&] {
        run = [&]() -> int {
            long order = o.effective_order();
            if (object == "qexp") {
                QSeries f = named_series(series, order, g);
                return emit(o, to_json(f), f.str(20));
            }
            if (object == "mu") {
                if (!g) throw std::invalid_argument("mu needs --g");
                GroupElem ge(parse_mat(*g));
                QSeries f = mu_series(ge, order);
                Rational a0 = a0_class(mu_symbolic(ge));
                json j{{"a0", to_string(a0)}, {"class", mu_symbolic(ge).str()}, {"series", to_json(f)}};
                return emit(o, j, "a0 = " + to_string(a0) + "\n" + f.str(20));
            }
            if (object == "rho") {
                if (!g1 || !g2) throw std::invalid_argument("rho needs --g1 and --g2");
                Rational r = euler_rho(parse_mat(*g1), parse_mat(*g2));
                return emit(o, to_json(r), to_string(r));
            }
            if (object == "dedekind") {
                if (!x || !frac) throw std::invalid_argument("dedekind needs --x and --frac");
                Rational f = parse_frac(*frac);
                Rational s = dedekind_symbol(EisClass::point(parse_point(*x)), to_long(f.get_num()), to_long(f.get_den()));
                return emit(o, to_json(s), to_string(s));
            }
            if (object == "T") {
                HeckeElem T = hecke_T(n);
                if (!form) return emit(o, to_json(T), T.str());
                FormValue v = act_on_form(T, parse_form(*form));
                QSeries q = qexpand(v, order);
                return emit(o, {{"value", to_json(v)}, {"qexp", to_json(q)}}, v.str() + "\n" + q.str(20));
            }
            if (object == "rc1") {
                if (!g1 || !g2 || !form || !form2) throw std::invalid_argument("rc1 needs --g1 --form --g2 --form2");
                HeckeElem a = HeckeElem::at(parse_mat(*g1), parse_form(*form));
                HeckeElem b = HeckeElem::at(parse_mat(*g2), parse_form(*form2));
                HeckeElem r = rc1_bracket(a, b);
                return emit(o, to_json(r), r.str());
            }
            if (object == "perturb-u") {
                if (!mono || !mg) throw std::invalid_argument("perturb-u needs --mono and --m-g");
                FormValue t = tg ? FormValue::mu(parse_mat(*tg)) : FormValue();
                Perturbation p(t, parse_rational(lambda), FormValue::mu(parse_mat(*mg)));
                Mono h = parse_mono(*mono);
                FormValue u = p.u(h), ui = p.u_inv(h);
                return emit(o, {{"u", to_json(u)}, {"u_inv", to_json(ui)}}, "u = " + u.str() + "\nu^-1 = " + ui.str());
            }
            throw std::invalid_argument("unknown object '" + object + "'");
        };
    });

    // hecke
    auto* hecke = app.add_subcommand("hecke", "Hecke algebra operations on T_n and sampled elements");
    std::string hop;
    long n2 = 3;
    std::string op = "X";
    hecke->add_option("action", hop, "mul|act|hopf-act")->required();
    hecke->add_option("--n", n, "first Hecke index")->check(CLI::PositiveNumber);
    hecke->add_option("--n2", n2, "second Hecke index for mul")->check(CLI::PositiveNumber);
    hecke->add_option("--form", form, "form for act");
    hecke->add_option("--op", op, "Hopf monomial for hopf-act, e.g. X, Y, d1, d2, 'd1^2 X'");
    hecke->callback([&] {
        run = [&]() -> int {
            if (hop == "mul") {
                HeckeElem r = hecke_T(n) * hecke_T(n2);
                return emit(o, to_json(r), r.str());
            }
            if (hop == "act") {
                FormValue v = act_on_form(hecke_T(n), parse_form(form.value_or("E4")));
                return emit(o, to_json(v), v.str());
            }
            if (hop == "hopf-act") {
                std::mt19937_64 rng(o.seed);
                HeckeElem a = sample_fragment_elem(rng, 12);
                HeckeElem r = hopf_act(parse_op(op), a);
                return emit(o, {{"element", to_json(a)}, {"result", to_json(r)}}, "a = " + a.str() + "\n" + op + "(a) = " + r.str());
            }
            throw std::invalid_argument("unknown hecke operation '" + hop + "'");
        };
    });

    // euler
    auto* euler = app.add_subcommand("euler", "rational Euler cocycle");
    std::string eop;
    euler->add_option("op", eop, "rho|check")->required();
    euler->add_option("--g1", g1, "matrix a,b,c,d");
    euler->add_option("--g2", g2, "matrix a,b,c,d");
    euler->add_option("--triples", triples, "number of random triples");
    euler->callback([&] {
        run = [&]() -> int {
            if (eop == "rho") {
                if (!g1 || !g2) throw std::invalid_argument("rho needs --g1 and --g2");
                Rational r = euler_rho(parse_mat(*g1), parse_mat(*g2));
                return emit(o, to_json(r), to_string(r));
            }
            if (eop == "check") {
                std::mt19937_64 rng(o.seed);
                int bad = 0;
                for (int i = 0; i < triples; ++i) {
                    Mat a = sample_gl2(rng, o.max_entry), b = sample_gl2(rng, o.max_entry), c = sample_gl2(rng, o.max_entry);
                    if (euler_coboundary(a, b, c) != 0) ++bad;
                }
                json j{{"triples", triples}, {"pass", triples - bad}, {"fail", bad}};
                return emit(o, j, "pass " + std::to_string(triples - bad) + "  fail " + std::to_string(bad), bad == 0);
            }
            throw std::invalid_argument("unknown euler operation '" + eop + "'");
        };
    });

    // curve
    auto* curve = app.add_subcommand("curve", "the Fermat cubic and its parametrization");
    std::string cop;
    curve->add_option("op", cop, "verify")->required();
    curve->callback([&] {
        run = [&]() -> int {
            if (cop != "verify") throw std::invalid_argument("unknown curve operation '" + cop + "'");
            json j = json::array();
            std::string text;
            bool ok = true;
            for (const IdentityCheck& c : verify_curve(std::max<long>(o.effective_order(), 5))) {
                ok = ok && c.ok;
                j.push_back({{"identity", c.name}, {"pass", c.ok}, {"verified_below", to_string(c.verified_below)}, {"detail", c.detail}});
                text += std::string(c.ok ? "PASS" : "FAIL") + "  " + c.name + "  (below q^" + to_string(c.verified_below) + ")\n";
            }
            return emit(o, j, text, ok);
        };
    });

    // analytic
    auto* analytic = app.add_subcommand("analytic", "numeric checks on the upper half-plane");
    std::string aop, z0s = "0+2i";
    analytic->add_option("op", aop, "periods|euler-crosscheck|m1")->required();
    analytic->add_option("--pairs", pairs, "number of pairs");
    analytic->add_option("--triples", pairs, "number of pairs for m1");
    analytic->add_option("--z0", z0s, "base point a+bi");
    analytic->callback([&] {
        run = [&]() -> int {
            constexpr double pi = std::numbers::pi;
            json j = json::array();
            std::mt19937_64 rng(o.seed);
            if (aop == "periods") {
                double l = two_L0();
                j.push_back(check_json("2L0", l, 1e-5, std::abs(l - 1.402182) < 1e-5));
                Complex r = period_L(Mat{2, 1, 1, 1}) / period_L(Mat{1, 1, 1, 2});
                double dev = std::abs(r - std::polar(1.0, pi / 3));
                j.push_back(check_json("L(g1)/L(g2) - e^(2 pi i/6)", dev, 1e-6, dev < 1e-6));
                bool chi = character_chi(mat_T()) == Cyclotomic::zeta(6, 1);
                j.push_back(check_json("chi(T) = e^(2 pi i/6)", chi ? 1.0 : 0.0, 0.0, chi));
            } else if (aop == "euler-crosscheck") {
                for (int i = 0; i < pairs; ++i) {
                    long a1 = 1 + rng() % 3, d1 = 1 + rng() % 3, a2 = 1 + rng() % 3, d2 = 1 + rng() % 3;
                    Mat a{a1, long(rng() % d1), 0, d1}, b{a2, long(rng() % d2), 0, d2};
                    double th = theta_numeric(a, b).real(), rho = euler_rho(a, b).get_d();
                    j.push_back(check_json("Re theta - rho " + a.str() + " " + b.str(), th - rho, 1e-6, std::abs(th - rho) < 1e-6));
                }
            } else if (aop == "m1") {
                Complex z0 = parse_complex(z0s);
                if (!(z0.imag() > 0)) throw std::invalid_argument("--z0 must lie in the upper half-plane");
                for (int i = 0; i < pairs; ++i) {
                    Mat a = sample_sl2(rng, 4), b = sample_sl2(rng, 4);
                    double res = m1_residual(a, b, z0, -1);
                    j.push_back(check_json("Re tau + A - beta coboundary " + a.str() + " " + b.str(), res, 1e-6, std::abs(res) < 1e-6));
                }
            } else {
                throw std::invalid_argument("unknown analytic operation '" + aop + "'");
            }
            return emit(o, j, check_text(j), all_pass(j));
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    try {
        return run();
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
