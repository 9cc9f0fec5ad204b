#include "modhecke/eisenstein.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace modhecke {

namespace {

Mat checked_adj(const Mat& m) { return m.adjugate(); }

Mat primitive(const Mat& m) {
    int64_t g = m.content();
    if (g == 0) throw std::invalid_argument("zero matrix");
    return {m.a / g, m.b / g, m.c / g, m.d / g};
}

Rational b1(const Rational& x) { return bernoulli_periodized(1, x); }
Rational b2(const Rational& x) { return bernoulli_periodized(2, x); }

/// Integer points u mod D (D = det g) with u/D in the kernel of adj(g), i.e. u in Z^2 g mod D.
std::vector<std::pair<int64_t, int64_t>> kernel_numerators(const Mat& g, int64_t D) {
    SmithForm s = smith_form(checked_adj(g));
    std::vector<std::pair<int64_t, int64_t>> out;
    out.reserve(static_cast<size_t>(s.d1 * s.d2));
    auto md = [D](__int128 v) {
        int64_t r = static_cast<int64_t>(v % D);
        return r < 0 ? r + D : r;
    };
    for (int64_t k = 0; k < s.d1; ++k)
        for (int64_t l = 0; l < s.d2; ++l) {
            __int128 z1 = static_cast<__int128>(k) * (D / s.d1);
            __int128 z2 = static_cast<__int128>(l) * (D / s.d2);
            out.emplace_back(md(z1 * s.U.a + z2 * s.U.c), md(z1 * s.U.b + z2 * s.U.d));
        }
    return out;
}

/// 4 M^2 B1(p/M)
__int128 b1_num(__int128 p, int64_t M) {
    int64_t r = static_cast<int64_t>(p % M);
    if (r < 0) r += M;
    if (r == 0) return 0;
    return 2 * static_cast<__int128>(r) - M;
}

/// sum over y in ker(adj g) of sum_{j<n} B1((y1+j)/n) B1(m(y1+j)/n + y2)
Rational kernel_dedekind(const Mat& g, long m, long n) {
    int64_t D = g.det();
    int64_t M = mul_checked(D, n);
    __int128 acc = 0;
    for (auto [u1, u2] : kernel_numerators(g, D)) {
        for (long j = 0; j < n; ++j) {
            __int128 p = static_cast<__int128>(u1) + static_cast<__int128>(j) * D;
            __int128 f = b1_num(p, M);
            if (f == 0) continue;
            __int128 s = b1_num(static_cast<__int128>(m) * p + static_cast<__int128>(n) * u2, M);
            acc += f * s;
        }
    }
    // each factor carries a denominator 2M
    Int num;
    {
        bool neg = acc < 0;
        unsigned __int128 v = neg ? -static_cast<unsigned __int128>(acc) : static_cast<unsigned __int128>(acc);
        Int hi = static_cast<unsigned long>(static_cast<uint64_t>(v >> 64));
        Int lo = static_cast<unsigned long>(static_cast<uint64_t>(v));
        num = (hi << 64) + lo;
        if (neg) num = -num;
    }
    Rational r(num, Int(4) * Int(static_cast<long>(M)) * Int(static_cast<long>(M)));
    r.canonicalize();
    return r;
}

std::vector<long> prime_factors(long n) {
    std::vector<long> ps;
    for (long p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    if (n > 1) ps.push_back(n);
    return ps;
}

/// Rewrites c by distribution relations without changing its class: a p-fiber
/// {z : p z = x} in which more than half of the points carry the same
/// coefficient v is replaced by v x plus the remainder. Each step shrinks the
/// support, so this terminates.
EisClass::Map coarsen(EisClass::Map c) {
    bool changed = true;
    while (changed && !c.empty()) {
        changed = false;
        long L = 1;
        for (const auto& [x, v] : c) L = lcm_l(L, x.level());
        for (long p : prime_factors(L)) {
            std::map<TorsionPoint, std::vector<std::pair<TorsionPoint, Rational>>> fibers;
            for (const auto& [z, v] : c) fibers[TorsionPoint(z.x1 * p, z.x2 * p)].emplace_back(z, v);
            const size_t need = static_cast<size_t>((p * p + 1) / 2) + 1;
            for (const auto& [x, pts] : fibers) {
                if (pts.size() < need) continue;
                std::map<Rational, size_t> count;
                for (const auto& pv : pts) ++count[pv.second];
                auto best = std::max_element(count.begin(), count.end(),
                                             [](const auto& a, const auto& b) { return a.second < b.second; });
                if (best->second < need) continue;
                Rational v = best->first;
                for (long i = 0; i < p; ++i)
                    for (long j = 0; j < p; ++j) {
                        TorsionPoint z((x.x1 + i) / p, (x.x2 + j) / p);
                        Rational& cz = c[z];
                        cz -= v;
                        if (cz == 0) c.erase(z);
                    }
                Rational& cx = c[x];
                cx += v;
                if (cx == 0) c.erase(x);
                changed = true;
            }
            if (changed) break;
        }
    }
    // phi_x = phi_{-x}
    EisClass::Map out;
    for (const auto& [x, v] : c) {
        TorsionPoint neg(-x.x1, -x.x2);
        out[neg < x ? neg : x] += v;
    }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

/// A class is zero iff it has no phi0-part and all of its constant terms at
/// the cusps of Gamma(N) vanish. For gamma with bottom row (c, d),
/// a0(phi_x | gamma) = B2(d x1 - c x2)/2.
bool is_zero_class(const EisClass& c_in) {
    EisClass c(coarsen(c_in.coeffs()));
    if (c.is_zero()) return true;
    if (c.coeff(TorsionPoint()) != 0) return false;
    const int64_t N = c.level();
    Int den = 1;
    for (const auto& [x, v] : c.coeffs()) den = lcm(den, Int(v.get_den()));
    struct Term {
        int64_t u1, u2;
        __int128 w;
    };
    std::vector<Term> terms;
    for (const auto& [x, v] : c.coeffs()) {
        Int w = v.get_num() * (den / v.get_den());
        if (!w.fits_slong_p()) throw std::overflow_error("class_equal: coefficient too large");
        Rational a = x.x1 * Rational(N), b = x.x2 * Rational(N);
        terms.push_back({to_long(a.get_num()), to_long(b.get_num()), static_cast<__int128>(w.get_si())});
    }
    // 6 N^2 B2(k/N) = 6k^2 - 6kN + N^2; (c,d) and (-c,-d) give the same value
    for (int64_t cc = 0; cc < N; ++cc)
        for (int64_t dd = 0; dd < N; ++dd) {
            if (std::gcd(std::gcd(cc, dd), N) != 1) continue;
            if (cc > N - cc || (cc == (N - cc) % N && dd > (N - dd) % N)) continue;
            __int128 s = 0;
            for (const auto& t : terms) {
                __int128 k = (static_cast<__int128>(dd) * t.u1 - static_cast<__int128>(cc) * t.u2) % N;
                if (k < 0) k += N;
                s += t.w * (6 * k * k - 6 * k * N + static_cast<__int128>(N) * N);
            }
            if (s != 0) return false;
        }
    return true;
}

}  // namespace

EisClass::EisClass(Map coeffs) {
    for (auto& [x, v] : coeffs)
        if (v != 0) c_.emplace(x, v);
    update_level();
}

EisClass EisClass::point(const TorsionPoint& x, const Rational& c) { return EisClass(Map{{x, c}}); }

Rational EisClass::coeff(const TorsionPoint& x) const {
    auto it = c_.find(x);
    return it == c_.end() ? Rational(0) : it->second;
}

void EisClass::add(const TorsionPoint& x, const Rational& c) {
    if (c == 0) return;
    auto [it, ins] = c_.emplace(x, c);
    if (!ins) {
        it->second += c;
        if (it->second == 0) c_.erase(it);
    }
}

void EisClass::update_level() {
    level_ = 1;
    for (const auto& [x, v] : c_) level_ = lcm_l(level_, x.level());
}

EisClass& EisClass::operator+=(const EisClass& o) {
    for (const auto& [x, v] : o.c_) add(x, v);
    update_level();
    return *this;
}

EisClass& EisClass::operator-=(const EisClass& o) {
    for (const auto& [x, v] : o.c_) add(x, -v);
    update_level();
    return *this;
}

EisClass& EisClass::operator*=(const Rational& r) {
    if (r == 0) {
        c_.clear();
        level_ = 1;
        return *this;
    }
    for (auto& [x, v] : c_) v *= r;
    return *this;
}

EisClass EisClass::operator-() const { return *this * Rational(-1); }

std::string EisClass::str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [x, v] : c_) {
        if (!first) os << (v < 0 ? " - " : " + ");
        else if (v < 0) os << "-";
        first = false;
        Rational a = abs(v);
        if (a != 1) os << to_string(a) << "*";
        os << "[" << x.x1.get_str() << "," << x.x2.get_str() << "]";
    }
    return os.str();
}

EisClass refine(const EisClass& c, long n) {
    if (n < 1) throw std::invalid_argument("refine: n must be positive");
    if (n == 1) return c;
    EisClass::Map out;
    for (const auto& [x, v] : c.coeffs())
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j)
                out[TorsionPoint((x.x1 + i) / n, (x.x2 + j) / n)] += v;
    return EisClass(std::move(out));
}

bool class_equal(const EisClass& c1, const EisClass& c2) {
    // refining to a common level is sound; fall back to cusp constant terms
    long L = lcm_l(c1.level(), c2.level());
    if (refine(c1, L / c1.level()) == refine(c2, L / c2.level())) return true;
    return is_zero_class(c1 - c2);
}

EisClass slash_class(const EisClass& c, const Mat& g) {
    if (g.det() <= 0) throw std::invalid_argument("slash_class: det must be positive");
    Mat m = primitive(g);
    if (m.is_identity()) return c;
    Mat chk = m.adjugate();
    // y chk = x: with U chk V = diag(d1,d2), w = y U^{-1} solves w_i d_i = (x V)_i
    SmithForm s = smith_form(chk);
    std::vector<TorsionPoint> ker = kernel_points(chk);
    auto R = [](int64_t v) { return Rational(static_cast<long>(v)); };
    EisClass::Map out;
    for (const auto& [x, v] : c.coeffs()) {
        Rational xv1 = x.x1 * R(s.V.a) + x.x2 * R(s.V.c);
        Rational xv2 = x.x1 * R(s.V.b) + x.x2 * R(s.V.d);
        Rational w1 = xv1 / R(s.d1), w2 = xv2 / R(s.d2);
        Rational y1 = w1 * R(s.U.a) + w2 * R(s.U.c);
        Rational y2 = w1 * R(s.U.b) + w2 * R(s.U.d);
        for (const auto& k : ker) out[TorsionPoint(y1 + k.x1, y2 + k.x2)] += v;
    }
    return EisClass(std::move(out));
}

EisClass slash_class(const EisClass& c, const GroupElem& g) { return slash_class(c, g.mat); }

Rational a0_class(const EisClass& c) {
    Rational s = 0;
    for (const auto& [x, v] : c.coeffs()) s += v * b2(x.x1);
    return s / 2;
}

EisClass mu_symbolic(const GroupElem& g) {
    return (slash_class(EisClass::phi0(), g) - EisClass::phi0()) * Rational(2);
}

EisClass transverse_E(const GroupElem& g) { return slash_class(mu_symbolic(g), g.inverse()); }

Rational dedekind_symbol(const EisClass& c, long m, long n) {
    if (n <= 0) throw std::invalid_argument("dedekind_symbol: n must be positive");
    if (std::gcd(m, n) != 1) throw std::invalid_argument("dedekind_symbol: m and n must be coprime");
    Rational s = 0;
    for (const auto& [x, v] : c.coeffs()) {
        Rational t = 0;
        for (long j = 0; j < n; ++j) {
            Rational u = (x.x1 + j) / n;
            t += b1(u) * b1(u * m + x.x2);
        }
        s += v * t;
    }
    return s;
}

Rational kernel_b2_sum(const Mat& g) {
    // ker adj(g) = Z^2 g / D; first coordinates form a cyclic group of order e,
    // each value hit D/e times, and sum_{j<e} B2(j/e) = 1/(6e)
    int64_t D = g.det();
    if (D <= 0) throw std::invalid_argument("kernel_b2_sum: det must be positive");
    int64_t e = D / std::gcd(std::gcd(std::abs(g.a), std::abs(g.c)), D);
    Rational r(Int(static_cast<long>(D)), Int(6) * Int(static_cast<long>(e)) * Int(static_cast<long>(e)));
    r.canonicalize();
    return r;
}

namespace {

Rational lowest(long p, long q) { return rat(p, q); }

void check_pos(const Mat& g, const char* what) {
    if (g.det() <= 0) throw std::invalid_argument(std::string(what) + ": det must be positive");
}

}  // namespace

Rational euler_rho(const Mat& g1_in, const Mat& g2_in) {
    check_pos(g1_in, "euler_rho");
    check_pos(g2_in, "euler_rho");
    // both arguments only matter up to scalars
    Mat g1 = primitive(g1_in), g2 = primitive(g2_in);
    if (g2.c < 0) g2 = -g2;
    Rational k1 = kernel_b2_sum(g1) - rat(1, 6);
    if (g2.c == 0) return lowest(static_cast<long>(g2.b), static_cast<long>(g2.d)) * k1;
    long c2 = static_cast<long>(g2.c);
    long g = std::gcd(static_cast<long>(g2.a), c2);
    long ap = static_cast<long>(g2.a) / g, cp = c2 / g;
    Rational r = lowest(static_cast<long>(g2.a), c2) * k1;
    r += lowest(static_cast<long>(g2.d), c2) * (kernel_b2_sum(g1 * g2) - kernel_b2_sum(g2));
    r -= 2 * kernel_dedekind(g1, ap, cp);
    r += 2 * kernel_dedekind(mat_identity(), ap, cp);
    return r;
}

Rational euler_rho_symbolic(const Mat& g1_in, const Mat& g2_in) {
    check_pos(g1_in, "euler_rho_symbolic");
    check_pos(g2_in, "euler_rho_symbolic");
    Mat g2 = g2_in.c < 0 ? -g2_in : g2_in;
    EisClass mu = mu_symbolic(GroupElem(g1_in));
    if (g2.c == 0) return rat(static_cast<long>(g2.b), static_cast<long>(g2.d)) * a0_class(mu);
    long c2 = static_cast<long>(g2.c);
    long g = std::gcd(static_cast<long>(g2.a), c2);
    Rational r = rat(static_cast<long>(g2.a), c2) * a0_class(mu);
    r += rat(static_cast<long>(g2.d), c2) * a0_class(slash_class(mu, g2));
    r -= dedekind_symbol(mu, static_cast<long>(g2.a) / g, c2 / g);
    return r;
}

Rational euler_coboundary(const Mat& g1, const Mat& g2, const Mat& g3) {
    return euler_rho(g2, g3) - euler_rho(g1 * g2, g3) + euler_rho(g1, g2 * g3) - euler_rho(g1, g2);
}

}  // namespace modhecke
