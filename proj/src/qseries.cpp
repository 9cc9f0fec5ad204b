#include "modhecke/qseries.hpp"

#include <atomic>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace modhecke {

namespace {

std::atomic<int> g_den_cap{144};

// smallest integer m with m >= t*L, so that key/L < t iff key < m
long key_limit(const Rational& t, long L) {
    Rational x = t * Rational(L);
    Int f = floor_q(x);
    if (Rational(f) != x) f += 1;
    return to_long(f);
}

long ceil_long(const Rational& x) {
    Int f = floor_q(x);
    if (Rational(f) != x) f += 1;
    return to_long(f);
}

Rational rpow(const Rational& x, long e) {
    Rational r = 1;
    for (long i = 0; i < std::labs(e); ++i) r *= x;
    return e < 0 ? Rational(1) / r : r;
}

std::optional<Rational> min_opt(const std::optional<Rational>& a, const std::optional<Rational>& b) {
    if (!a) return b;
    if (!b) return a;
    return std::min(*a, *b);
}

QSeries::Terms rescale(const QSeries::Terms& t, long factor) {
    if (factor == 1) return t;
    QSeries::Terms out;
    for (auto& [k, c] : t) out.emplace_hint(out.end(), k * factor, c);
    return out;
}

}  // namespace

int exp_den_cap() { return g_den_cap.load(); }
void set_exp_den_cap(int cap) {
    if (cap < 1) throw std::invalid_argument("cap must be positive");
    g_den_cap.store(cap);
}

QSeries::QSeries(long D, Terms terms, std::optional<Rational> trunc, Rational weight)
    : D_(D), terms_(std::move(terms)), trunc_(std::move(trunc)), weight_(std::move(weight)) {
    if (D < 1) throw std::invalid_argument("exponent denominator must be positive");
    normalize();
}

void QSeries::normalize() {
    long lim = 0;
    bool has_lim = trunc_.has_value();
    if (has_lim) lim = key_limit(*trunc_, D_);
    long g = D_;
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second.is_zero() || (has_lim && it->first >= lim)) {
            it = terms_.erase(it);
        } else {
            g = std::gcd(g, it->first);
            ++it;
        }
    }
    if (terms_.empty()) {
        D_ = 1;
        return;
    }
    if (g > 1) {
        Terms t;
        for (auto& [k, c] : terms_) t.emplace_hint(t.end(), k / g, std::move(c));
        terms_ = std::move(t);
        D_ /= g;
    }
    if (D_ > g_den_cap.load())
        throw std::domain_error("exponent denominator " + std::to_string(D_) + " exceeds cap");
}

QSeries QSeries::constant(const Cyclotomic& c, std::optional<Rational> trunc, Rational weight) {
    Terms t;
    t.emplace(0, c);
    return QSeries(1, std::move(t), std::move(trunc), std::move(weight));
}

QSeries QSeries::monomial(const Rational& e, const Cyclotomic& c, std::optional<Rational> trunc, Rational weight) {
    Terms t;
    t.emplace(to_long(e.get_num()), c);
    return QSeries(to_long(e.get_den()), std::move(t), std::move(trunc), std::move(weight));
}

QSeries QSeries::from_dense(const std::vector<Rational>& c, const Rational& shift, Rational weight) {
    long sd = to_long(shift.get_den());
    long sn = to_long(shift.get_num());
    Terms t;
    for (size_t i = 0; i < c.size(); ++i)
        if (c[i] != 0) t.emplace_hint(t.end(), static_cast<long>(i) * sd + sn, Cyclotomic(c[i]));
    return QSeries(sd, std::move(t), Rational(static_cast<long>(c.size())) + shift, std::move(weight));
}

QSeries QSeries::with_weight(const Rational& w) const {
    QSeries r = *this;
    r.weight_ = w;
    return r;
}

QSeries QSeries::with_tag(std::string tag) const {
    QSeries r = *this;
    r.tag_ = std::move(tag);
    return r;
}

Cyclotomic QSeries::coeff(const Rational& e) const {
    if (trunc_ && e >= *trunc_) throw std::out_of_range("coefficient beyond truncation order");
    Rational k = e * Rational(D_);
    if (k.get_den() != 1) return Cyclotomic();
    auto it = terms_.find(to_long(k.get_num()));
    return it == terms_.end() ? Cyclotomic() : it->second;
}

std::optional<Rational> QSeries::valuation() const {
    if (terms_.empty()) return std::nullopt;
    return rat(terms_.begin()->first, D_);
}

QSeries QSeries::truncated(const Rational& t) const {
    if (trunc_ && t > *trunc_) throw std::invalid_argument("cannot extend a truncated series");
    QSeries r = *this;
    r.trunc_ = t;
    r.normalize();
    return r;
}

QSeries QSeries::operator-() const {
    QSeries r = *this;
    for (auto& [k, c] : r.terms_) c = -c;
    return r;
}

QSeries& QSeries::operator+=(const QSeries& o) {
    if (terms_.empty()) weight_ = o.weight_;
    long L = lcm_l(D_, o.D_);
    Terms a = rescale(terms_, L / D_);
    Terms b = rescale(o.terms_, L / o.D_);
    for (auto& [k, c] : b) {
        auto it = a.find(k);
        if (it == a.end())
            a.emplace(k, c);
        else
            it->second += c;
    }
    terms_ = std::move(a);
    D_ = L;
    trunc_ = min_opt(trunc_, o.trunc_);
    normalize();
    return *this;
}

QSeries& QSeries::operator-=(const QSeries& o) { return *this += -o; }

QSeries& QSeries::operator*=(const Cyclotomic& c) {
    for (auto& [k, v] : terms_) v = v * c;
    normalize();
    return *this;
}

QSeries operator*(const QSeries& f, const QSeries& g) {
    // known part: f = F + O(q^tf), g = G + O(q^tg), so fg is known below
    // min(tf + v(g), tg + v(f)); a zero series counts with valuation = its order
    auto vf = f.valuation(), vg = g.valuation();
    std::optional<Rational> ef = vf ? vf : f.trunc_, eg = vg ? vg : g.trunc_;
    std::optional<Rational> t;
    if (f.trunc_ && eg) t = *f.trunc_ + *eg;
    if (g.trunc_ && ef) t = min_opt(t, *g.trunc_ + *ef);
    Rational w = f.weight_ + g.weight_;
    if (f.terms_.empty() || g.terms_.empty()) return QSeries(1, {}, t, w);
    long L = lcm_l(f.D_, g.D_);
    long sf = L / f.D_, sg = L / g.D_;
    bool has_lim = t.has_value();
    long lim = has_lim ? key_limit(*t, L) : 0;
    long g0 = g.terms_.begin()->first * sg;
    QSeries::Terms out;
    for (auto& [kf, cf] : f.terms_) {
        long a = kf * sf;
        if (has_lim && a + g0 >= lim) break;
        for (auto& [kg, cg] : g.terms_) {
            long k = a + kg * sg;
            if (has_lim && k >= lim) break;
            auto it = out.find(k);
            if (it == out.end())
                out.emplace(k, cf * cg);
            else
                it->second += cf * cg;
        }
    }
    return QSeries(L, std::move(out), t, w);
}

QSeries QSeries::inverse() const {
    if (terms_.empty()) throw std::domain_error("cannot invert a series with zero leading term");
    long k0 = terms_.begin()->first;
    Rational v = rat(k0, D_);
    Cyclotomic inv0 = terms_.begin()->second.inverse();
    if (terms_.size() == 1) {
        Terms t;
        t.emplace(-k0, inv0);
        std::optional<Rational> tr;
        if (trunc_) tr = *trunc_ - 2 * v;
        return QSeries(D_, std::move(t), tr, -weight_);
    }
    if (!trunc_) throw std::domain_error("inverse of an exact non-monomial series is not a finite series");
    long u = 0;
    for (auto& [k, c] : terms_) u = std::gcd(u, k - k0);
    // grid n*u/D for 0 <= n < K covers relative exponents below trunc - v
    long K = ceil_long((*trunc_ - v) * Rational(D_) / Rational(u));
    std::vector<std::pair<long, const Cyclotomic*>> a;
    for (auto& [k, c] : terms_)
        if (k != k0) {
            long n = (k - k0) / u;
            if (n < K) a.emplace_back(n, &c);
        }
    std::vector<Cyclotomic> inv(std::max<long>(K, 0));
    if (K > 0) inv[0] = inv0;
    for (long n = 1; n < K; ++n) {
        Cyclotomic s;
        for (auto& [m, c] : a) {
            if (m > n) break;
            if (!inv[n - m].is_zero()) s += *c * inv[n - m];
        }
        if (!s.is_zero()) inv[n] = -(s * inv0);
    }
    Terms t;
    for (long n = 0; n < K; ++n)
        if (!inv[n].is_zero()) t.emplace_hint(t.end(), -k0 + n * u, std::move(inv[n]));
    return QSeries(D_, std::move(t), *trunc_ - 2 * v, -weight_);
}

QSeries QSeries::pow(long n) const {
    if (n < 0) return inverse().pow(-n);
    QSeries result = QSeries::constant(Cyclotomic(1));
    QSeries base = *this;
    while (n > 0) {
        if (n & 1) result = result * base;
        n >>= 1;
        if (n) base = base * base;
    }
    return result;
}

std::string QSeries::str(int max_terms) const {
    std::ostringstream os;
    int shown = 0;
    for (auto& [k, c] : terms_) {
        if (shown == max_terms) {
            os << " + ...";
            break;
        }
        if (shown) os << " + ";
        Rational e = rat(k, D_);
        os << "(" << c.str() << ")";
        if (e != 0) os << "*q^(" << e.get_str() << ")";
        ++shown;
    }
    if (shown == 0) os << "0";
    if (trunc_) os << " + O(q^(" << trunc_->get_str() << "))";
    return os.str();
}

bool agree(const QSeries& a, const QSeries& b) { return (a - b).is_zero(); }

std::optional<Rational> common_order(const QSeries& a, const QSeries& b) { return min_opt(a.trunc(), b.trunc()); }

QSeries theta(const QSeries& f) {
    QSeries::Terms t;
    for (auto& [k, c] : f.terms()) {
        if (k == 0) continue;
        Cyclotomic v = c;
        v *= rat(k, f.exp_den());
        t.emplace_hint(t.end(), k, std::move(v));
    }
    return QSeries(f.exp_den(), std::move(t), f.trunc(), f.weight() + 2);
}

// ---------------------------------------------------------------- classical series

namespace {

using Dense = std::vector<Int>;

Dense dense_mul(const Dense& a, const Dense& b, size_t n) {
    Dense r(n, Int(0));
    for (size_t i = 0; i < n && i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; i + j < n && j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    return r;
}

// prod (1 - q^n) mod q^N via the pentagonal number theorem
Dense euler_product(long N) {
    Dense p(N, Int(0));
    for (long k = 0;; ++k) {
        long e1 = k * (3 * k - 1) / 2, e2 = k * (3 * k + 1) / 2;
        if (e1 >= N && e2 >= N) break;
        int s = (k % 2) ? -1 : 1;
        if (e1 < N) p[e1] = s;
        if (k > 0 && e2 < N) p[e2] = s;
    }
    return p;
}

Dense euler_power(long N, int e) {
    Dense base = euler_product(N);
    Dense r(N, Int(0));
    r[0] = 1;
    while (e > 0) {
        if (e & 1) r = dense_mul(r, base, N);
        e >>= 1;
        if (e) base = dense_mul(base, base, N);
    }
    return r;
}

QSeries from_ints(const Dense& d, const Rational& shift, const Rational& w) {
    std::vector<Rational> c(d.begin(), d.end());
    return QSeries::from_dense(c, shift, w);
}

template <class F>
QSeries memo(std::map<long, QSeries>& cache, std::mutex& mu, long N, F make) {
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(N);
        if (it != cache.end()) return it->second;
    }
    QSeries s = make();
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(N, s);
    return s;
}

QSeries eisenstein(long N, int k, long c) {
    std::vector<Rational> v(N);
    if (N > 0) v[0] = 1;
    for (long n = 1; n < N; ++n) v[n] = Rational(sigma_k(n, k - 1) * c);
    return QSeries::from_dense(v, 0, k);
}

}  // namespace

QSeries eta4(long N) {
    static std::map<long, QSeries> cache;
    static std::mutex mu;
    return memo(cache, mu, N, [&] { return from_ints(euler_power(N, 4), rat(1, 6), 2).with_tag("level 1"); });
}

QSeries delta(long N) {
    static std::map<long, QSeries> cache;
    static std::mutex mu;
    return memo(cache, mu, N, [&] { return from_ints(euler_power(N, 24), 1, 12).with_tag("level 1"); });
}

QSeries e4(long N) {
    static std::map<long, QSeries> cache;
    static std::mutex mu;
    return memo(cache, mu, N, [&] { return eisenstein(N, 4, 240).with_tag("level 1"); });
}

QSeries e6(long N) {
    static std::map<long, QSeries> cache;
    static std::mutex mu;
    return memo(cache, mu, N, [&] { return eisenstein(N, 6, -504).with_tag("level 1"); });
}

QSeries g2_star(long N) {
    static std::map<long, QSeries> cache;
    static std::mutex mu;
    return memo(cache, mu, N, [&] {
        QSeries e = eta4(N);
        return (theta(e) * e.inverse()).truncated(N).with_weight(2);
    });
}

QSeries slash_upper(const QSeries& f, long k, const GroupElem& g) {
    if (!g.mat.is_upper()) throw std::invalid_argument("slash_upper needs an upper-triangular matrix: " + g.mat.str());
    if (k % 2 != 0) throw std::invalid_argument("slash_upper supports even weights only");
    Mat m = g.mat;
    if (m.d < 0) m = -m;  // -I acts trivially in even weight
    long a = m.a, b = m.b, d = m.d;
    // det^{k/2} d^{-k}
    Rational factor = rpow(Rational(a * d), k / 2) * rpow(Rational(d), -k);
    long D = f.exp_den();
    QSeries::Terms t;
    for (auto& [n, c] : f.terms()) {
        Cyclotomic v = c * Cyclotomic::root_of_unity(rat(n * b, D * d));
        v *= factor;
        t.emplace_hint(t.end(), n * a, std::move(v));
    }
    std::optional<Rational> tr;
    if (f.trunc()) tr = *f.trunc() * rat(a, d);
    return QSeries(D * d, std::move(t), tr, k);
}

QSeries serre_x(const QSeries& f, const Rational& k) {
    QSeries th = theta(f);
    if (k == 0 || f.is_zero()) return th.with_weight(k + 2);
    if (!f.trunc()) throw std::invalid_argument("serre_x needs a truncated series in nonzero weight");
    long N = std::max<long>(1, ceil_long(*f.trunc() - *f.valuation()));
    QSeries corr = g2_star(N) * f;
    corr *= Cyclotomic(k / 2);
    return (th - corr).with_weight(k + 2);
}

namespace {

struct MuKey {
    Mat m;
    long N;
    bool operator<(const MuKey& o) const { return m != o.m ? m < o.m : N < o.N; }
};

}  // namespace

QSeries mu_series(const GroupElem& g, long N) {
    static std::map<MuKey, QSeries> cache;
    static std::mutex mu;
    GroupElem beta = hnf_reduce(g).second;
    MuKey key{beta.mat, N};
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    QSeries out;
    if (beta.mat.is_identity()) {
        out = QSeries(1, {}, Rational(N), 2);
    } else {
        // theta log(eta^4|beta) = (a/d) g2*((az+b)/d)
        long a = beta.mat.a, d = beta.mat.d;
        long M = ceil_long(Rational(N) * rat(d, a));
        QSeries s = slash_upper(g2_star(M), 0, GroupElem(beta.mat));
        s *= Cyclotomic(rat(a, d));
        out = (s - g2_star(N)).truncated(N).with_weight(2);
    }
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(key, out);
    return out;
}

QSeries mu_series_quotient(const GroupElem& g, long N) {
    GroupElem beta(hnf_reduce(g).second.mat);
    if (beta.mat.is_identity()) return QSeries(1, {}, Rational(N), 2);
    for (long M = N + 2;; M += 2) {
        QSeries e = eta4(M);
        QSeries psi = slash_upper(e, 2, beta) * e.inverse();
        QSeries mu = theta(psi) * psi.inverse();
        if (mu.trunc() && *mu.trunc() >= N) return mu.truncated(N).with_weight(2);
    }
}

Cyclotomic eta4_character(const Mat& gamma) {
    if (gamma.det() != 1) throw std::invalid_argument("eta4_character needs det 1");
    // gamma = T^k S gamma' with chi(T) = zeta_6, chi(S) = -1
    Mat g = gamma;
    long tpow = 0;
    int sign = 1;
    while (g.c != 0) {
        int64_t k = g.a / g.c;
        if ((g.a % g.c != 0) && ((g.a < 0) != (g.c < 0))) --k;
        Mat r{g.a - k * g.c, g.b - k * g.d, g.c, g.d};
        // S^{-1} r = [[c, d], [-a', -b']]
        g = {r.c, r.d, -r.a, -r.b};
        tpow += k;
        sign = -sign;
    }
    // g = +-T^{b d}
    tpow += g.b * g.d;
    Cyclotomic z = Cyclotomic::zeta(6, tpow);
    return sign < 0 ? -z : z;
}

long sturm_order(long k, long N) {
    if (N < 1) throw std::invalid_argument("level must be positive");
    Rational idx = N;
    long n = N;
    for (long p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            idx *= rat(p + 1, p);
            while (n % p == 0) n /= p;
        }
    if (n > 1) idx *= rat(n + 1, n);
    return ceil_long(idx * Rational(k) / 12);
}

}  // namespace modhecke
