#include "modhecke/analytic.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <mutex>
#include <numbers>
#include <string>
#include <vector>

namespace modhecke {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI(0.0, 1.0);
// terms are dropped once |q|^n falls below e^{-kTail}
constexpr double kTail = 41.5;
constexpr long kMaxTerms = 4'000'000;

void require_upper_half(Complex z, const char* what) {
    if (!(z.imag() > 0) || !std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw std::invalid_argument(std::string(what) + ": need Im z > 0");
}

long terms_for(double im, double scale = 1.0) {
    double n = std::ceil(kTail / (2 * kPi * im * scale)) + 2;
    if (n > kMaxTerms) throw NumericError("point too close to the real axis for series evaluation");
    return static_cast<long>(n);
}

Complex qpow(Complex z, double e) { return std::exp(2 * kPi * kI * e * z); }

// eta^4 / q^{1/6} = (prod (1-q^n)) (prod (1-q^n)^3), both sparse
std::vector<double> eta4_coeffs(long N) {
    static std::mutex mu;
    static std::vector<double> cache;
    std::lock_guard lock(mu);
    if (static_cast<long>(cache.size()) >= N) return {cache.begin(), cache.begin() + N};
    std::vector<std::pair<long, long>> pent{{0, 1}}, jac;
    for (long k = 1; k * (3 * k - 1) / 2 < N; ++k) {
        long sign = (k % 2 == 0) ? 1 : -1;
        pent.push_back({k * (3 * k - 1) / 2, sign});
        if (k * (3 * k + 1) / 2 < N) pent.push_back({k * (3 * k + 1) / 2, sign});
    }
    for (long k = 0;; ++k) {
        long e = k * (k + 1) / 2;
        if (e >= N) break;
        jac.push_back({e, (k % 2 == 0 ? 1 : -1) * (2 * k + 1)});
    }
    std::vector<long long> c(N, 0);
    for (auto [e1, c1] : pent)
        for (auto [e2, c2] : jac)
            if (e1 + e2 < N) c[e1 + e2] += static_cast<long long>(c1) * c2;
    cache.assign(c.begin(), c.end());
    return cache;
}

Complex log_j(const Mat& g, Complex z) { return std::log(double(g.c) * z + double(g.d)); }

// log psi_g(z) up to a constant in z
Complex log_psi(const Mat& g, Complex z) {
    return log_delta(mobius(g, z)) - 12.0 * log_j(g, z) - log_delta(z);
}

Mat positive_upper(const Mat& g) {
    if (g.c != 0) throw std::invalid_argument("theta_numeric: matrices must be upper triangular");
    if (g.det() <= 0) throw std::invalid_argument("theta_numeric: need positive determinant");
    return g.a < 0 ? -g : g;
}

}  // namespace

Complex mobius(const Mat& g, Complex z) {
    if (g.det() <= 0) throw std::invalid_argument("mobius: need positive determinant");
    return (double(g.a) * z + double(g.b)) / (double(g.c) * z + double(g.d));
}

Complex eval_q(const QSeries& f, Complex z, std::optional<Rational> order) {
    require_upper_half(z, "eval_q");
    Complex s = 0;
    double D = double(f.exp_den());
    for (const auto& [num, c] : f.terms()) {
        if (order && Rational(num, f.exp_den()) >= *order) break;
        s += c.to_complex() * qpow(z, double(num) / D);
    }
    return s;
}

Complex eval_q_primitive(const QSeries& f, Complex z, bool drop_constant) {
    require_upper_half(z, "eval_q_primitive");
    Complex s = 0;
    double D = double(f.exp_den());
    for (const auto& [num, c] : f.terms()) {
        if (num == 0) {
            if (!drop_constant) s += c.to_complex() * z;
            continue;
        }
        double e = double(num) / D;
        s += c.to_complex() * qpow(z, e) / (2 * kPi * kI * e);
    }
    return s;
}

Complex eta4_numeric(Complex z) {
    require_upper_half(z, "eta4_numeric");
    Complex s = 1.0;
    for (long k = 1;; ++k) {
        double sign = (k % 2 == 0) ? 1.0 : -1.0;
        double e1 = k * (3.0 * k - 1) / 2, e2 = k * (3.0 * k + 1) / 2;
        if (2 * kPi * z.imag() * e1 > kTail) break;
        if (k > kMaxTerms) throw NumericError("eta4_numeric: no convergence");
        s += sign * (qpow(z, e1) + qpow(z, e2));
    }
    Complex eta = qpow(z, 1.0 / 24) * s;
    return eta * eta * eta * eta;
}

Complex e2_numeric(Complex z) {
    require_upper_half(z, "e2_numeric");
    long N = terms_for(z.imag());
    Complex q = qpow(z, 1.0), qn = 1.0, s = 0;
    for (long n = 1; n < N; ++n) {
        qn *= q;
        s += double(n) * qn / (1.0 - qn);
    }
    return 1.0 - 24.0 * s;
}

Complex log_delta(Complex z) {
    require_upper_half(z, "log_delta");
    long N = terms_for(z.imag());
    Complex q = qpow(z, 1.0), qn = 1.0, s = 0;
    for (long n = 1; n < N; ++n) {
        qn *= q;
        s += std::log(1.0 - qn);
    }
    return 2 * kPi * kI * z + 24.0 * s;
}

Complex big_Z(Complex z) {
    require_upper_half(z, "big_Z");
    long N = terms_for(z.imag());
    std::vector<double> c = eta4_coeffs(N);
    Complex q = qpow(z, 1.0), qn = qpow(z, 1.0 / 6), s = 0;
    for (long n = 0; n < N; ++n) {
        if (c[n] != 0) s += c[n] * qn / double(6 * n + 1);
        qn *= q;
    }
    return s;
}

Complex period_L(const Mat& g, std::optional<Complex> z) {
    if (g.det() != 1) throw std::invalid_argument("period_L needs det 1");
    Complex base = z ? *z : (g.c == 0 ? kI : Complex(-double(g.d) / g.c, 1.0 / std::abs(double(g.c))));
    return big_Z(mobius(g, base)) - eta4_character(g).to_complex() * big_Z(base);
}

double two_L0() { return 2 * std::abs(period_L(Mat{2, 1, 1, 1})); }

Cyclotomic character_chi(const Mat& g) {
    if (g.det() != 1) throw std::invalid_argument("character_chi needs det 1");
    Complex z = g.c == 0 ? kI : Complex(-double(g.d) / g.c, 1.0 / std::abs(double(g.c)));
    Complex j = double(g.c) * z + double(g.d);
    Complex r = eta4_numeric(mobius(g, z)) / (j * j) / eta4_numeric(z);
    long k = std::lround(std::arg(r) * 12 / (2 * kPi));
    k = ((k % 12) + 12) % 12;
    if (std::abs(r - std::polar(1.0, 2 * kPi * k / 12)) > 1e-6)
        throw NumericError("character_chi: value is not a 12th root of unity");
    return Cyclotomic::zeta(12, k);
}

double signed_area(Complex z1, Complex z2, Complex z3) {
    require_upper_half(z1, "signed_area");
    require_upper_half(z2, "signed_area");
    require_upper_half(z3, "signed_area");
    // direction at p towards q, after moving p to 0 in the disk model
    auto dir = [](Complex p, Complex q) { return (q - p) / (q - std::conj(p)); };
    if (std::abs(dir(z1, z2)) < 1e-13 || std::abs(dir(z2, z3)) < 1e-13 || std::abs(dir(z3, z1)) < 1e-13) return 0;
    auto angle = [&](Complex p, Complex q, Complex r) { return std::arg(dir(p, r) / dir(p, q)); };
    double a1 = angle(z1, z2, z3), a2 = angle(z2, z3, z1), a3 = angle(z3, z1, z2);
    double area = kPi - std::abs(a1) - std::abs(a2) - std::abs(a3);
    if (area < 1e-14 || a1 == 0) return 0;
    return a1 > 0 ? area : -area;
}

double area_cocycle(const Mat& g1, const Mat& g2, Complex z0) {
    return signed_area(z0, mobius(g1, z0), mobius(g1 * g2, z0)) / (2 * kPi);
}

Complex tau_cocycle(const Mat& g1, const Mat& g2, Complex z0) {
    require_upper_half(z0, "tau_cocycle");
    if (g1.is_identity()) return 0;
    return (log_psi(g1, mobius(g2, z0)) - log_psi(g1, z0)) / (12 * kPi * kI);
}

Complex log_j2(const Mat& g, Complex z) {
    Complex j = double(g.c) * z + double(g.d);
    Complex w = j * j;
    double a = std::arg(w);
    if (a < 0) a += 2 * kPi;
    return Complex(std::log(std::abs(w)), a);
}

Complex c_cocycle_raw(const Mat& g1, const Mat& g2, Complex z0) {
    require_upper_half(z0, "c_cocycle");
    if (g1.det() != 1 || g2.det() != 1) throw std::invalid_argument("c_cocycle needs det 1");
    Complex v = log_j2(g1 * g2, z0) - log_j2(g1, mobius(g2, z0)) - log_j2(g2, z0);
    return v / (2 * kPi * kI);
}

long c_cocycle(const Mat& g1, const Mat& g2, Complex z0) {
    Complex v = c_cocycle_raw(g1, g2, z0);
    long c = std::lround(v.real());
    if (std::abs(v - double(c)) > 1e-6) throw NumericError("c_cocycle: non-integral value " + std::to_string(v.real()));
    return c;
}

Complex tau_from_c(const Mat& g1, const Mat& g2, Complex z0) {
    Mat g12 = g1 * g2;
    Complex v = log_delta(z0) + log_delta(mobius(g12, z0)) - log_delta(mobius(g1, z0)) - log_delta(mobius(g2, z0));
    v -= 6.0 * (log_j2(g12, z0) - log_j2(g2, z0) - log_j2(g1, z0));
    v += 12 * kPi * kI * double(c_cocycle(g1, g2, z0));
    return v;
}

double omega0_integral(Complex p, Complex q) {
    require_upper_half(p, "omega0_integral");
    require_upper_half(q, "omega0_integral");
    using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
    auto integrate = [](auto f, double a, double b) {
        if (a == b) return 0.0;
        double sgn = a < b ? 1.0 : -1.0;
        return sgn * GK::integrate(f, std::min(a, b), std::max(a, b), 20, 1e-11);
    };
    double scale = 1 + std::abs(p) + std::abs(q);
    if (std::abs(p.real() - q.real()) <= 1e-13 * scale) {
        // x fixed, y = e^s, dz = i y ds
        double x = p.real();
        auto f = [x](double s) {
            double y = std::exp(s);
            return -y * e2_numeric(Complex(x, y)).imag() / 6;
        };
        return integrate(f, std::log(p.imag()), std::log(q.imag()));
    }
    // arclength on the circle |z - c| = r: z = c + r tanh s + i r sech s
    double c = (std::norm(q) - std::norm(p)) / (2 * (q.real() - p.real()));
    double r = std::abs(p - c);
    auto f = [c, r](double s) {
        double th = std::tanh(s), sh = 1 / std::cosh(s);
        Complex z(c + r * th, r * sh);
        Complex dz(r * sh * sh, -r * sh * th);
        return (e2_numeric(z) / 6.0 * dz).real() - sh / (2 * kPi);
    };
    return integrate(f, std::atanh((p.real() - c) / r), std::atanh((q.real() - c) / r));
}

double beta_omega0(const Mat& g, Complex z0) { return omega0_integral(z0, mobius(g, z0)); }

double m1_residual(const Mat& g1, const Mat& g2, Complex z0, int sign) {
    double db = beta_omega0(g1, z0) - beta_omega0(g1 * g2, z0) + beta_omega0(g2, z0);
    return tau_cocycle(g1, g2, z0).real() + area_cocycle(g1, g2, z0) - double(sign) * db;
}

Complex theta_numeric(const Mat& g1_in, const Mat& g2_in, Complex z0) {
    require_upper_half(z0, "theta_numeric");
    Mat g1 = positive_upper(g1_in), g2 = positive_upper(g2_in);
    Complex w = mobius(g2, z0);
    double imin = std::min(z0.imag(), w.imag());
    long M = terms_for(imin);
    long N = std::max<long>(M, (M * g2.d + g2.a - 1) / g2.a + 2);
    QSeries mu = mu_series(GroupElem(g1), N);
    QSeries mug = slash_upper(mu, 2, GroupElem(g2));
    Complex a0 = mu.coeff(0).to_complex(), a0g = mug.coeff(0).to_complex();
    Complex first = eval_q_primitive(mu, w) - eval_q_primitive(mu, z0);
    Complex tail = eval_q_primitive(mug, z0, true) - eval_q_primitive(mu, z0, true);
    return first - z0 * (a0g - a0) - tail;
}

Complex schwarzian_Z_numeric(Complex z, double h) {
    Complex f[5];
    for (int k = -2; k <= 2; ++k) f[k + 2] = big_Z(z + double(k) * h);
    Complex d1 = (-f[4] + 8.0 * f[3] - 8.0 * f[1] + f[0]) / (12 * h);
    Complex d2 = (-f[4] + 16.0 * f[3] - 30.0 * f[2] + 16.0 * f[1] - f[0]) / (12 * h * h);
    Complex d3 = (f[4] - 2.0 * f[3] + 2.0 * f[1] - f[0]) / (2 * h * h * h);
    Complex s = d3 / d1 - 1.5 * (d2 / d1) * (d2 / d1);
    return s / ((2 * kPi * kI) * (2 * kPi * kI));
}

Mat sample_sl2(std::mt19937_64& rng, long max_entry) {
    for (;;) {
        Mat g = mat_identity();
        int len = 1 + int(rng() % 4);
        bool ok = true;
        for (int i = 0; i < len && ok; ++i) {
            if (rng() % 2) {
                g = g * mat_S();
            } else {
                static const int64_t ks[] = {-2, -1, 1, 2};
                g = g * Mat{1, ks[rng() % 4], 0, 1};
            }
            ok = std::max({std::abs(g.a), std::abs(g.b), std::abs(g.c), std::abs(g.d)}) <= max_entry;
        }
        if (ok && !g.is_identity()) return g;
    }
}

}  // namespace modhecke
