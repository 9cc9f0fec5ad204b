#include "modhecke/exact.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace modhecke {

Rational rat(long p, long q) {
    if (q == 0) throw std::domain_error("zero denominator");
    Rational r(p, q);
    r.canonicalize();
    return r;
}

Rational rat(const Int& p, const Int& q) {
    if (q == 0) throw std::domain_error("zero denominator");
    Rational r(p, q);
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& x) {
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rational parse_rational(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty rational");
    auto slash = s.find('/');
    auto check_int = [&](const std::string& t) {
        size_t i = (t.size() > 0 && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (i == t.size()) throw std::invalid_argument("bad rational: " + s);
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') throw std::invalid_argument("bad rational: " + s);
    };
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    check_int(num);
    check_int(den);
    if (num[0] == '+') num = num.substr(1);
    if (den[0] == '+') den = den.substr(1);
    Int p(num), q(den);
    if (q == 0) throw std::invalid_argument("zero denominator: " + s);
    return rat(p, q);
}

Int floor_q(const Rational& x) {
    Int r;
    mpz_fdiv_q(r.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return r;
}

Rational frac(const Rational& x) { return x - Rational(floor_q(x)); }

long to_long(const Int& x) {
    if (!x.fits_slong_p()) throw std::overflow_error("integer does not fit in long");
    return x.get_si();
}

Rational bernoulli_periodized(int k, const Rational& x) {
    Rational t = frac(x);
    if (k == 1) return t == 0 ? Rational(0) : t - rat(1, 2);
    if (k == 2) return t * t - t + rat(1, 6);
    throw std::invalid_argument("bernoulli_periodized: k must be 1 or 2");
}

long gcd_l(long a, long b) { return std::gcd(a, b); }

long lcm_l(long a, long b) {
    if (a == 0 || b == 0) return 0;
    long g = std::gcd(a, b);
    return static_cast<long>(mul_checked(a / g, b));
}

long euler_phi(long n) {
    long r = n;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            r -= r / p;
        }
    }
    if (n > 1) r -= r / n;
    return r;
}

int64_t mul_checked(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("int64 overflow in matrix arithmetic");
    return r;
}

int64_t add_checked(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("int64 overflow in matrix arithmetic");
    return r;
}

// ---------------------------------------------------------------- cyclotomic

namespace {

std::atomic<int> g_cap{720};

struct CycTable {
    int M = 1;
    int phi = 1;
    std::vector<long> Phi;                    // monic, low to high, size phi+1
    std::vector<std::vector<Rational>> pows;  // x^k mod Phi for 0 <= k < M
};

using Poly = std::vector<Int>;

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly r(a.size() + b.size() - 1, Int(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

// exact division by the monic polynomial x^d - 1
Poly poly_div_xd1(Poly a, long d) {
    size_t n = a.size() - 1;
    Poly q(n - d + 1, Int(0));
    for (long i = static_cast<long>(n); i >= d; --i) {
        Int t = a[i];
        q[i - d] = t;
        a[i] -= t;
        a[i - d] += t;
    }
    for (auto& v : a)
        if (v != 0) throw std::logic_error("cyclotomic polynomial division not exact");
    return q;
}

int moebius(long n) {
    int m = 1;
    for (long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            m = -m;
        }
    }
    if (n > 1) m = -m;
    return m;
}

std::unique_ptr<CycTable> build_table(int M) {
    auto t = std::make_unique<CycTable>();
    t->M = M;
    t->phi = static_cast<int>(euler_phi(M));
    // Phi_M = prod_{d | M} (x^d - 1)^{mu(M/d)}
    Poly num{Int(1)};
    std::vector<long> dens;
    for (long d = 1; d <= M; ++d) {
        if (M % d) continue;
        int mu = moebius(M / d);
        if (mu == 0) continue;
        if (mu == 1) {
            Poly f(d + 1, Int(0));
            f[0] = -1;
            f[d] = 1;
            num = poly_mul(num, f);
        } else {
            dens.push_back(d);
        }
    }
    for (long d : dens) num = poly_div_xd1(num, d);
    if (static_cast<int>(num.size()) != t->phi + 1) throw std::logic_error("cyclotomic degree mismatch");
    for (auto& v : num) t->Phi.push_back(to_long(v));
    // powers of x
    std::vector<Rational> cur(t->phi, Rational(0));
    cur[0] = 1;
    for (int k = 0; k < M; ++k) {
        t->pows.push_back(cur);
        // multiply by x
        std::vector<Rational> nxt(t->phi, Rational(0));
        Rational top = cur[t->phi - 1];
        for (int i = t->phi - 1; i >= 1; --i) nxt[i] = cur[i - 1];
        nxt[0] = 0;
        if (top != 0)
            for (int i = 0; i < t->phi; ++i) nxt[i] -= top * t->Phi[i];
        cur = std::move(nxt);
    }
    return t;
}

const CycTable& table(int M) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<CycTable>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(M);
    if (it != cache.end()) return *it->second;
    auto [pos, ok] = cache.emplace(M, build_table(M));
    return *pos->second;
}

int common_order(int a, int b) {
    if (a == b) return a;
    long L = lcm_l(a, b);
    if (L > g_cap.load()) throw std::domain_error("cyclotomic order " + std::to_string(L) + " exceeds cap");
    return static_cast<int>(L);
}

using RPoly = std::vector<Rational>;

void trim(RPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// a mod b over Q, b nonzero and trimmed
RPoly rpoly_divmod(RPoly a, const RPoly& b, RPoly* quot) {
    trim(a);
    RPoly q;
    if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, Rational(0));
    while (!a.empty() && a.size() >= b.size()) {
        size_t shift = a.size() - b.size();
        Rational c = a.back() / b.back();
        q[shift] = c;
        for (size_t i = 0; i < b.size(); ++i) a[i + shift] -= c * b[i];
        trim(a);
    }
    if (quot) *quot = q;
    return a;
}

RPoly rpoly_mul(const RPoly& a, const RPoly& b) {
    if (a.empty() || b.empty()) return {};
    RPoly r(a.size() + b.size() - 1, Rational(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

RPoly rpoly_sub(RPoly a, const RPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), Rational(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

}  // namespace

int cyclotomic_order_cap() { return g_cap.load(); }
void set_cyclotomic_order_cap(int cap) {
    if (cap < 1) throw std::invalid_argument("cap must be positive");
    g_cap.store(cap);
}

Cyclotomic::Cyclotomic() = default;

Cyclotomic::Cyclotomic(long v) {
    if (v != 0) c_.push_back(Rational(v));
}

Cyclotomic::Cyclotomic(const Rational& v) {
    if (v != 0) c_.push_back(v);
}

Cyclotomic::Cyclotomic(int order, std::vector<Rational> coeffs) : order_(order), c_(std::move(coeffs)) {
    if (order < 1) throw std::invalid_argument("cyclotomic order must be positive");
    if (order > g_cap.load()) throw std::domain_error("cyclotomic order exceeds cap");
    const auto& t = table(order);
    if (static_cast<int>(c_.size()) > t.phi) {
        // reduce modulo Phi
        for (int i = static_cast<int>(c_.size()) - 1; i >= t.phi; --i) {
            Rational top = c_[i];
            if (top == 0) continue;
            for (int j = 0; j <= t.phi; ++j) c_[i - t.phi + j] -= top * t.Phi[j];
        }
        c_.resize(t.phi);
    }
    normalize();
}

void Cyclotomic::normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
    if (c_.size() <= 1) order_ = 1;
}

Cyclotomic Cyclotomic::zeta(int M, long k) {
    if (M < 1) throw std::invalid_argument("zeta: order must be positive");
    if (M > g_cap.load()) throw std::domain_error("cyclotomic order exceeds cap");
    long kk = ((k % M) + M) % M;
    const auto& t = table(M);
    Cyclotomic r;
    r.order_ = M;
    r.c_ = t.pows[kk];
    r.normalize();
    return r;
}

Cyclotomic Cyclotomic::root_of_unity(const Rational& t) {
    Rational f = frac(t);
    return zeta(static_cast<int>(to_long(f.get_den())), to_long(f.get_num()));
}

Rational Cyclotomic::rational_value() const {
    if (!is_rational()) throw std::domain_error("cyclotomic value is not rational");
    return c_.empty() ? Rational(0) : c_[0];
}

Cyclotomic Cyclotomic::embed(int L) const {
    if (L == order_) return *this;
    if (L % order_ != 0) throw std::invalid_argument("embed: target order must be a multiple");
    if (L > g_cap.load()) throw std::domain_error("cyclotomic order exceeds cap");
    if (c_.size() <= 1) {
        Cyclotomic r = *this;
        return r;  // rationals are stored at order 1 regardless of L
    }
    const auto& t = table(L);
    long step = L / order_;
    std::vector<Rational> out(t.phi, Rational(0));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        const auto& p = t.pows[(i * step) % L];
        for (int j = 0; j < t.phi; ++j)
            if (p[j] != 0) out[j] += c_[i] * p[j];
    }
    Cyclotomic r;
    r.order_ = L;
    r.c_ = std::move(out);
    r.normalize();
    return r;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
    if (o.c_.empty()) return *this;
    if (c_.empty()) return *this = o;
    int L = (order_ == 1 || o.order_ == 1) ? std::max(order_, o.order_) : common_order(order_, o.order_);
    if (order_ != L) *this = embed(L);
    if (o.order_ == L || o.c_.size() <= 1) {
        if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), Rational(0));
        for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        order_ = L;
    } else {
        Cyclotomic e = o.embed(L);
        if (c_.size() < e.c_.size()) c_.resize(e.c_.size(), Rational(0));
        for (size_t i = 0; i < e.c_.size(); ++i) c_[i] += e.c_[i];
        order_ = L;
    }
    normalize();
    return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) { return *this += -o; }

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
}

Cyclotomic& Cyclotomic::operator*=(const Rational& r) {
    if (r == 0) {
        c_.clear();
        order_ = 1;
        return *this;
    }
    for (auto& v : c_) v *= r;
    return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) { return *this = *this * o; }

Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.c_.empty() || b.c_.empty()) return Cyclotomic();
    if (a.c_.size() == 1) {
        Cyclotomic r = b;
        r *= a.c_[0];
        return r;
    }
    if (b.c_.size() == 1) {
        Cyclotomic r = a;
        r *= b.c_[0];
        return r;
    }
    int L = common_order(a.order_, b.order_);
    Cyclotomic xe, ye;
    const Cyclotomic* px = &a;
    const Cyclotomic* py = &b;
    if (a.order_ != L) {
        xe = a.embed(L);
        px = &xe;
    }
    if (b.order_ != L) {
        ye = b.embed(L);
        py = &ye;
    }
    const auto& t = table(L);
    std::vector<Rational> prod(px->c_.size() + py->c_.size() - 1, Rational(0));
    for (size_t i = 0; i < px->c_.size(); ++i) {
        if (px->c_[i] == 0) continue;
        for (size_t j = 0; j < py->c_.size(); ++j) prod[i + j] += px->c_[i] * py->c_[j];
    }
    for (int i = static_cast<int>(prod.size()) - 1; i >= t.phi; --i) {
        Rational top = prod[i];
        if (top == 0) continue;
        for (int j = 0; j <= t.phi; ++j)
            if (t.Phi[j] != 0) prod[i - t.phi + j] -= top * t.Phi[j];
    }
    if (static_cast<int>(prod.size()) > t.phi) prod.resize(t.phi);
    Cyclotomic r;
    r.order_ = L;
    r.c_ = std::move(prod);
    r.normalize();
    return r;
}

Cyclotomic Cyclotomic::inverse() const {
    if (c_.empty()) throw std::domain_error("inverse of zero cyclotomic");
    if (c_.size() == 1) return Cyclotomic(Rational(1) / c_[0]);
    const auto& t = table(order_);
    // extended Euclid: s*a + u*Phi = 1
    RPoly phi;
    for (long v : t.Phi) phi.push_back(Rational(v));
    RPoly r0 = phi, r1 = c_;
    RPoly s0, s1{Rational(1)};
    trim(r1);
    while (!r1.empty() && r1.size() > 1) {
        RPoly q;
        RPoly r2 = rpoly_divmod(r0, r1, &q);
        RPoly s2 = rpoly_sub(s0, rpoly_mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r1.empty()) throw std::logic_error("cyclotomic inverse: not invertible");
    Rational c = r1[0];
    for (auto& v : s1) v /= c;
    return Cyclotomic(order_, s1);
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.order_ == b.order_) return a.c_ == b.c_;
    if (a.c_.size() <= 1 || b.c_.size() <= 1) return false;  // one rational, the other not
    int L = common_order(a.order_, b.order_);
    return a.embed(L).c_ == b.embed(L).c_;
}

std::complex<double> Cyclotomic::to_complex() const {
    std::complex<double> s = 0;
    for (size_t i = 0; i < c_.size(); ++i) {
        double ang = 2.0 * M_PI * static_cast<double>(i) / order_;
        s += c_[i].get_d() * std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return s;
}

std::string Cyclotomic::str() const {
    if (c_.empty()) return "0";
    if (c_.size() == 1) return c_[0].get_str();
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << c_[i].get_str() << ")";
        if (i > 0) os << "*z" << order_ << "^" << i;
    }
    return os.str();
}

// ---------------------------------------------------------------- matrices

int64_t Mat::det() const { return add_checked(mul_checked(a, d), -mul_checked(b, c)); }

int64_t Mat::content() const {
    return std::gcd(std::gcd(std::llabs(a), std::llabs(b)), std::gcd(std::llabs(c), std::llabs(d)));
}

Mat operator*(const Mat& x, const Mat& y) {
    return {add_checked(mul_checked(x.a, y.a), mul_checked(x.b, y.c)),
            add_checked(mul_checked(x.a, y.b), mul_checked(x.b, y.d)),
            add_checked(mul_checked(x.c, y.a), mul_checked(x.d, y.c)),
            add_checked(mul_checked(x.c, y.b), mul_checked(x.d, y.d))};
}

std::string Mat::str() const {
    std::ostringstream os;
    os << "[[" << a << "," << b << "],[" << c << "," << d << "]]";
    return os.str();
}

Mat mat_identity() { return {1, 0, 0, 1}; }
Mat mat_S() { return {0, -1, 1, 0}; }
Mat mat_T() { return {1, 1, 0, 1}; }

GroupElem::GroupElem(const Rational& s, const Mat& m) : scalar(s), mat(m) {
    if (s <= 0) throw std::invalid_argument("GroupElem: scalar must be positive");
    if (m.det() <= 0) throw std::invalid_argument("GroupElem: determinant must be positive: " + m.str());
    int64_t g = m.content();
    if (g != 1) {
        mat = {m.a / g, m.b / g, m.c / g, m.d / g};
        scalar *= Rational(static_cast<long>(g));
    }
}

GroupElem::GroupElem(const Mat& m) : GroupElem(Rational(1), m) {}

Rational GroupElem::det() const { return scalar * scalar * Rational(static_cast<long>(mat.det())); }

GroupElem GroupElem::inverse() const {
    Rational s = Rational(1) / (scalar * Rational(static_cast<long>(mat.det())));
    return GroupElem(s, mat.adjugate());
}

GroupElem operator*(const GroupElem& x, const GroupElem& y) { return GroupElem(x.scalar * y.scalar, x.mat * y.mat); }

bool GroupElem::operator<(const GroupElem& o) const {
    if (mat != o.mat) return mat < o.mat;
    return scalar < o.scalar;
}

std::string GroupElem::str() const {
    if (scalar == 1) return mat.str();
    return scalar.get_str() + "*" + mat.str();
}

TorsionPoint::TorsionPoint(const Rational& a, const Rational& b) : x1(frac(a)), x2(frac(b)) {}

bool TorsionPoint::operator<(const TorsionPoint& o) const {
    if (x1 != o.x1) return x1 < o.x1;
    return x2 < o.x2;
}

long TorsionPoint::level() const { return lcm_l(to_long(x1.get_den()), to_long(x2.get_den())); }

// ---------------------------------------------------------------- HNF / SNF

std::vector<Mat> hnf_cosets(long n) {
    if (n < 1) throw std::invalid_argument("hnf_cosets: n must be positive");
    std::vector<Mat> out;
    for (long d = 1; d <= n; ++d) {
        if (n % d) continue;
        long a = n / d;
        for (long b = 0; b < d; ++b) out.push_back({a, b, 0, d});
    }
    return out;
}

namespace {

// returns g = gcd(a,b) >= 0 and u, v with u*a + v*b = g
int64_t ext_gcd(int64_t a, int64_t b, int64_t& u, int64_t& v) {
    int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        int64_t q = old_r / r;
        int64_t tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
    }
    u = old_s;
    v = old_t;
    return old_r;
}

int64_t floor_div(int64_t a, int64_t b) {
    int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

std::pair<Mat, GroupElem> hnf_reduce(const GroupElem& g) {
    const Mat& m = g.mat;
    int64_t u, v;
    int64_t g0 = ext_gcd(m.a, m.c, u, v);
    // inv0 = [[u, v], [-c/g0, a/g0]] has determinant 1
    Mat inv0{u, v, -m.c / g0, m.a / g0};
    Mat beta = inv0 * m;
    if (beta.c != 0 || beta.a != g0) throw std::logic_error("hnf_reduce: column reduction failed");
    int64_t k = floor_div(beta.b, beta.d);
    Mat shift{1, -k, 0, 1};
    beta = shift * beta;
    Mat inv = shift * inv0;
    Mat gamma0 = inv.adjugate();  // det 1, so adjugate is the inverse
    return {gamma0, GroupElem(g.scalar, beta)};
}

SmithForm smith_form(const Mat& m) {
    int64_t M[2][2] = {{m.a, m.b}, {m.c, m.d}};
    Mat U = mat_identity(), V = mat_identity();
    auto rowop = [&](const Mat& E) {
        // M <- E*M, U <- E*U
        Mat cur{M[0][0], M[0][1], M[1][0], M[1][1]};
        cur = E * cur;
        M[0][0] = cur.a;
        M[0][1] = cur.b;
        M[1][0] = cur.c;
        M[1][1] = cur.d;
        U = E * U;
    };
    auto colop = [&](const Mat& E) {
        Mat cur{M[0][0], M[0][1], M[1][0], M[1][1]};
        cur = cur * E;
        M[0][0] = cur.a;
        M[0][1] = cur.b;
        M[1][0] = cur.c;
        M[1][1] = cur.d;
        V = V * E;
    };
    const Mat P{0, 1, 1, 0};
    for (int iter = 0; iter < 1000; ++iter) {
        // pivot: smallest nonzero absolute value
        int bi = -1, bj = -1;
        int64_t best = 0;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                if (M[i][j] != 0 && (bi < 0 || std::llabs(M[i][j]) < best)) {
                    best = std::llabs(M[i][j]);
                    bi = i;
                    bj = j;
                }
        if (bi < 0) break;
        if (bi == 1) rowop(P);
        if (bj == 1) colop(P);
        int64_t p = M[0][0];
        int64_t q1 = floor_div(M[1][0], p);
        if (q1 != 0) rowop({1, 0, -q1, 1});
        int64_t q2 = floor_div(M[0][1], p);
        if (q2 != 0) colop({1, -q2, 0, 1});
        if (M[1][0] != 0 || M[0][1] != 0) continue;
        if (M[1][1] % M[0][0] != 0) {
            rowop({1, 1, 0, 1});  // row0 += row1
            continue;
        }
        break;
    }
    if (M[0][0] < 0) rowop({-1, 0, 0, 1});
    if (M[1][1] < 0) rowop({1, 0, 0, -1});
    return {U, V, M[0][0], M[1][1]};
}

std::vector<TorsionPoint> kernel_points(const Mat& m) {
    if (m.det() == 0) throw std::invalid_argument("kernel_points: singular matrix");
    SmithForm s = smith_form(m);
    // m = U^-1 D V^-1; y*m in Z^2 iff z = y*U^-1 has z_i*d_i in Z; y = z*U
    std::vector<TorsionPoint> out;
    out.reserve(static_cast<size_t>(s.d1 * s.d2));
    for (int64_t k = 0; k < s.d1; ++k)
        for (int64_t l = 0; l < s.d2; ++l) {
            Rational z1 = rat(k, s.d1), z2 = rat(l, s.d2);
            Rational y1 = z1 * Rational(static_cast<long>(s.U.a)) + z2 * Rational(static_cast<long>(s.U.c));
            Rational y2 = z1 * Rational(static_cast<long>(s.U.b)) + z2 * Rational(static_cast<long>(s.U.d));
            out.emplace_back(y1, y2);
        }
    std::sort(out.begin(), out.end());
    return out;
}

Int sigma_k(long n, int k) {
    Int s = 0;
    for (long d = 1; d <= n; ++d)
        if (n % d == 0) {
            Int p;
            mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(k));
            s += p;
        }
    return s;
}

}  // namespace modhecke
