#include "modhecke/hopf.hpp"

#include <functional>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace modhecke {

// ---------------------------------------------------------------- monomials

Mono Mono::delta(int n, int power) {
    if (n < 1) throw std::invalid_argument("delta index must be >= 1");
    Mono m;
    if (power > 0) {
        m.e.assign(n, 0);
        m.e[n - 1] = power;
    }
    return m;
}

Mono Mono::X(int power) {
    Mono m;
    m.x = power;
    return m;
}

Mono Mono::Y(int power) {
    Mono m;
    m.y = power;
    return m;
}

int Mono::delta_weight() const {
    int w = 0;
    for (size_t i = 0; i < e.size(); ++i) w += static_cast<int>(i + 1) * e[i];
    return w;
}

int Mono::grading() const { return delta_weight() + x; }

std::string Mono::str() const {
    std::ostringstream os;
    bool first = true;
    auto put = [&](const std::string& s, int p) {
        if (p == 0) return;
        if (!first) os << " ";
        first = false;
        os << s;
        if (p > 1) os << "^" << p;
    };
    for (size_t i = 0; i < e.size(); ++i) put("d" + std::to_string(i + 1), e[i]);
    put("X", x);
    put("Y", y);
    if (first) os << "1";
    return os.str();
}

// ---------------------------------------------------------------- elements

H1Elem::H1Elem(const Rational& c) {
    if (c != 0) t_.emplace(Mono{}, c);
}

H1Elem::H1Elem(const Mono& m, const Rational& c) {
    if (c != 0) t_.emplace(m, c);
}

Rational H1Elem::coeff(const Mono& m) const {
    auto it = t_.find(m);
    return it == t_.end() ? Rational(0) : it->second;
}

void H1Elem::add(const Mono& m, const Rational& c) {
    if (c == 0) return;
    auto [it, ins] = t_.emplace(m, c);
    if (!ins) {
        it->second += c;
        if (it->second == 0) t_.erase(it);
    }
}

H1Elem& H1Elem::operator+=(const H1Elem& o) {
    for (auto& [m, c] : o.t_) add(m, c);
    return *this;
}

H1Elem& H1Elem::operator-=(const H1Elem& o) {
    for (auto& [m, c] : o.t_) add(m, -c);
    return *this;
}

H1Elem& H1Elem::operator*=(const Rational& c) {
    if (c == 0) {
        t_.clear();
        return *this;
    }
    for (auto& [m, v] : t_) v *= c;
    return *this;
}

H1Elem H1Elem::operator-() const {
    H1Elem r = *this;
    for (auto& [m, v] : r.t_) v = -v;
    return r;
}

namespace {

using DeltaPoly = std::map<std::vector<int>, Int>;

void trim(std::vector<int>& e) {
    while (!e.empty() && e.back() == 0) e.pop_back();
}

// D(d_n) = d_{n+1}, extended as a derivation on the commutative delta part
DeltaPoly derive(const DeltaPoly& p) {
    DeltaPoly out;
    for (auto& [e, c] : p)
        for (size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            std::vector<int> f = e;
            f[i] -= 1;
            if (f.size() < i + 2) f.resize(i + 2, 0);
            f[i + 1] += 1;
            trim(f);
            out[f] += c * e[i];
        }
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

const DeltaPoly& derive_power(const std::vector<int>& e, int k) {
    static std::mutex mu;
    static std::map<std::pair<std::vector<int>, int>, DeltaPoly> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({e, k});
        if (it != cache.end()) return it->second;
    }
    DeltaPoly r;
    if (k == 0)
        r[e] = 1;
    else
        r = derive(derive_power(e, k - 1));
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(std::make_pair(e, k), std::move(r)).first->second;
}

Int binom(int n, int k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

std::vector<int> add_exps(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return r;
}

}  // namespace

H1Elem pbw_mul(const Mono& a, const Mono& b) {
    static std::mutex mu;
    static std::map<std::pair<Mono, Mono>, H1Elem> cache;
    if (a.is_one()) return H1Elem(b);
    if (b.is_one()) return H1Elem(a);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find({a, b});
        if (it != cache.end()) return it->second;
    }
    // d^e X^a Y^b . d^f X^c Y^d = sum_k C(a,k) d^e D^k(d^f) X^{a-k+c} (Y + w_f + c)^b Y^d
    H1Elem out;
    long s = b.delta_weight() + b.x;
    int kmax = b.e.empty() ? 0 : a.x;
    for (int k = 0; k <= kmax; ++k) {
        const DeltaPoly& p = derive_power(b.e, k);
        Int ck = binom(a.x, k);
        for (auto& [f, cf] : p) {
            Mono base;
            base.e = add_exps(a.e, f);
            base.x = a.x - k + b.x;
            for (int j = 0; j <= a.y; ++j) {
                Int sp;
                mpz_pow_ui(sp.get_mpz_t(), Int(s).get_mpz_t(), a.y - j);
                Mono m = base;
                m.y = j + b.y;
                H1Elem term(m, Rational(ck * cf * binom(a.y, j) * sp));
                out += term;
            }
        }
    }
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(std::make_pair(a, b), out);
    return out;
}

H1Elem operator*(const H1Elem& a, const H1Elem& b) {
    H1Elem out;
    for (auto& [ma, ca] : a.t_)
        for (auto& [mb, cb] : b.t_) {
            H1Elem p = pbw_mul(ma, mb);
            p *= ca * cb;
            out += p;
        }
    return out;
}

H1Elem commutator(const H1Elem& a, const H1Elem& b) { return a * b - b * a; }

std::string H1Elem::str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [m, c] : t_) {
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        first = false;
        Rational a = abs(c);
        if (m.is_one()) {
            os << a.get_str();
        } else {
            if (a != 1) os << a.get_str() << " ";
            os << m.str();
        }
    }
    return os.str();
}

// ---------------------------------------------------------------- cochains

Cochain Cochain::scalar(const Rational& c) {
    Cochain r(0);
    r.add({}, c);
    return r;
}

Cochain Cochain::tensor(const std::vector<H1Elem>& factors) {
    Cochain r(static_cast<int>(factors.size()));
    Map cur{{Key{}, Rational(1)}};
    for (auto& f : factors) {
        Map next;
        for (auto& [k, c] : cur)
            for (auto& [m, v] : f.terms()) {
                Key nk = k;
                nk.push_back(m);
                next[nk] += c * v;
            }
        cur = std::move(next);
    }
    for (auto& [k, c] : cur) r.add(k, c);
    return r;
}

H1Elem Cochain::as_elem() const {
    if (n_ != 1) throw std::invalid_argument("as_elem needs a degree-1 cochain");
    H1Elem h;
    for (auto& [k, c] : t_) h += H1Elem(k[0], c);
    return h;
}

void Cochain::add(const Key& k, const Rational& c) {
    if (c == 0) return;
    if (static_cast<int>(k.size()) != n_) throw std::logic_error("cochain degree mismatch");
    auto [it, ins] = t_.emplace(k, c);
    if (!ins) {
        it->second += c;
        if (it->second == 0) t_.erase(it);
    }
}

Cochain& Cochain::operator+=(const Cochain& o) {
    if (o.t_.empty()) return *this;
    if (o.n_ != n_) throw std::invalid_argument("adding cochains of different degrees");
    for (auto& [k, c] : o.t_) add(k, c);
    return *this;
}

Cochain& Cochain::operator-=(const Cochain& o) {
    if (o.t_.empty()) return *this;
    if (o.n_ != n_) throw std::invalid_argument("subtracting cochains of different degrees");
    for (auto& [k, c] : o.t_) add(k, -c);
    return *this;
}

Cochain& Cochain::operator*=(const Rational& c) {
    if (c == 0) {
        t_.clear();
        return *this;
    }
    for (auto& [k, v] : t_) v *= c;
    return *this;
}

Cochain operator*(const Cochain& a, const Cochain& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("factorwise product needs equal degrees");
    Cochain out(a.n_);
    for (auto& [ka, ca] : a.t_)
        for (auto& [kb, cb] : b.t_) {
            // expand prod_i (ka[i] * kb[i])
            std::vector<std::pair<Cochain::Key, Rational>> cur{{{}, ca * cb}};
            for (int i = 0; i < a.n_; ++i) {
                H1Elem p = pbw_mul(ka[i], kb[i]);
                std::vector<std::pair<Cochain::Key, Rational>> next;
                for (auto& [k, c] : cur)
                    for (auto& [m, v] : p.terms()) {
                        Cochain::Key nk = k;
                        nk.push_back(m);
                        next.emplace_back(std::move(nk), c * v);
                    }
                cur = std::move(next);
            }
            for (auto& [k, c] : cur) out.add(k, c);
        }
    return out;
}

std::string Cochain::str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [k, c] : t_) {
        if (!first) os << (c < 0 ? " - " : " + ");
        else if (c < 0) os << "-";
        first = false;
        Rational a = abs(c);
        if (a != 1 || k.empty()) os << a.get_str() << (k.empty() ? "" : " ");
        for (size_t i = 0; i < k.size(); ++i) os << (i ? " (x) " : "") << k[i].str();
    }
    return os.str();
}

// ---------------------------------------------------------------- structure maps

Rational counit(const Mono& m) { return m.is_one() ? Rational(1) : Rational(0); }

Rational counit(const H1Elem& h) { return h.coeff(Mono{}); }

Rational nu(const Mono& m) { return (m.e.empty() && m.x == 0) ? Rational(1) : Rational(0); }

Rational nu(const H1Elem& h) {
    Rational s = 0;
    for (auto& [m, c] : h.terms()) s += c * nu(m);
    return s;
}

namespace {

const Cochain& coproduct_delta(int n) {
    static std::mutex mu;
    static std::map<int, Cochain> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    Cochain r(2);
    if (n == 1) {
        r = Cochain::tensor({H1Elem::delta(1), H1Elem(1)}) + Cochain::tensor({H1Elem(1), H1Elem::delta(1)});
    } else {
        // Delta d_{n+1} = [Delta X, Delta d_n]
        Cochain dx = coproduct(Mono::X());
        const Cochain& prev = coproduct_delta(n - 1);
        r = dx * prev - prev * dx;
    }
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(n, std::move(r)).first->second;
}

const H1Elem& antipode_delta(int n) {
    static std::mutex mu;
    static std::map<int, H1Elem> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    H1Elem r;
    if (n == 1) {
        r = -H1Elem::delta(1);
    } else {
        // S(d_{n+1}) = S([X, d_n]) = S(d_n) S(X) - S(X) S(d_n)
        H1Elem sx = antipode(Mono::X());
        const H1Elem& prev = antipode_delta(n - 1);
        r = prev * sx - sx * prev;
    }
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(n, std::move(r)).first->second;
}

Cochain cochain_one(int n) {
    Cochain r(n);
    r.add(Cochain::Key(n, Mono{}), 1);
    return r;
}

}  // namespace

Cochain coproduct(const Mono& m) {
    static std::mutex mu;
    static std::map<Mono, Cochain> cache;
    if (m == Mono::X())
        return Cochain::tensor({H1Elem::X(), H1Elem(1)}) + Cochain::tensor({H1Elem(1), H1Elem::X()}) +
               Cochain::tensor({H1Elem::delta(1), H1Elem::Y()});
    if (m == Mono::Y()) return Cochain::tensor({H1Elem::Y(), H1Elem(1)}) + Cochain::tensor({H1Elem(1), H1Elem::Y()});
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(m);
        if (it != cache.end()) return it->second;
    }
    Cochain r = cochain_one(2);
    for (size_t i = 0; i < m.e.size(); ++i)
        for (int p = 0; p < m.e[i]; ++p) r = r * coproduct_delta(static_cast<int>(i + 1));
    if (m.x) {
        Cochain dx = coproduct(Mono::X());
        for (int p = 0; p < m.x; ++p) r = r * dx;
    }
    if (m.y) {
        Cochain dy = coproduct(Mono::Y());
        for (int p = 0; p < m.y; ++p) r = r * dy;
    }
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(m, r);
    return r;
}

Cochain coproduct(const H1Elem& h) {
    Cochain r(2);
    for (auto& [m, c] : h.terms()) r += coproduct(m) * c;
    return r;
}

Cochain iterated_coproduct(const H1Elem& h, int k) {
    if (k < 0) throw std::invalid_argument("iterated_coproduct: k >= 0");
    Cochain cur = Cochain::from_elem(h);
    for (int step = 0; step < k; ++step) {
        Cochain next(cur.degree() + 1);
        for (auto& [key, c] : cur.terms()) {
            Cochain d = coproduct(key[0]);
            for (auto& [dk, dc] : d.terms()) {
                Cochain::Key nk = dk;
                nk.insert(nk.end(), key.begin() + 1, key.end());
                next.add(nk, c * dc);
            }
        }
        cur = std::move(next);
    }
    return cur;
}

H1Elem antipode(const Mono& m) {
    static std::mutex mu;
    static std::map<Mono, H1Elem> cache;
    if (m.is_one()) return H1Elem(1);
    if (m == Mono::X()) return -H1Elem::X() + H1Elem(Mono{{1}, 0, 1});
    if (m == Mono::Y()) return -H1Elem::Y();
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(m);
        if (it != cache.end()) return it->second;
    }
    // S(d^e X^a Y^b) = S(Y)^b S(X)^a prod S(d_n)^{e_n}
    H1Elem r(1);
    for (int p = 0; p < m.y; ++p) r = r * antipode(Mono::Y());
    for (int p = 0; p < m.x; ++p) r = r * antipode(Mono::X());
    for (size_t i = 0; i < m.e.size(); ++i)
        for (int p = 0; p < m.e[i]; ++p) r = r * antipode_delta(static_cast<int>(i + 1));
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(m, r);
    return r;
}

H1Elem antipode(const H1Elem& h) {
    H1Elem r;
    for (auto& [m, c] : h.terms()) r += antipode(m) * c;
    return r;
}

H1Elem twisted_antipode(const H1Elem& h) {
    H1Elem r;
    for (auto& [key, c] : coproduct(h).terms()) {
        Rational v = nu(key[0]);
        if (v != 0) r += antipode(key[1]) * (c * v);
    }
    return r;
}

// ---------------------------------------------------------------- cyclic structure

namespace {

void check_degree(int n, const char* what) {
    if (n < 0 || n > kMaxCochainDegree)
        throw std::out_of_range(std::string(what) + ": cochain degree " + std::to_string(n) + " outside 0.." +
                                std::to_string(kMaxCochainDegree));
}

// (Delta^{n-1} S~(h1)) . (h2 (x) ... (x) hn (x) tail), shared by tau and B0
Cochain twisted_shift(const Cochain& c, bool append_one) {
    int n = c.degree();
    int out_deg = append_one ? n : n - 1;
    Cochain out(out_deg);
    for (auto& [key, coef] : c.terms()) {
        Cochain lead = iterated_coproduct(twisted_antipode(H1Elem(key[0])), out_deg - 1);
        Cochain::Key rest(key.begin() + 1, key.end());
        if (append_one) rest.push_back(Mono{});
        Cochain tail(out_deg);
        tail.add(rest, 1);
        out += (lead * tail) * coef;
    }
    return out;
}

}  // namespace

Cochain face(int i, const Cochain& c) {
    int n = c.degree() + 1;
    check_degree(n, "face");
    if (i < 0 || i > n) throw std::out_of_range("face index");
    Cochain out(n);
    for (auto& [key, coef] : c.terms()) {
        if (i == 0 || i == n) {
            Cochain::Key k = key;
            if (i == 0)
                k.insert(k.begin(), Mono{});
            else
                k.push_back(Mono{});
            out.add(k, coef);
        } else {
            Cochain d = coproduct(key[i - 1]);
            for (auto& [dk, dc] : d.terms()) {
                Cochain::Key k(key.begin(), key.begin() + (i - 1));
                k.insert(k.end(), dk.begin(), dk.end());
                k.insert(k.end(), key.begin() + i, key.end());
                out.add(k, coef * dc);
            }
        }
    }
    return out;
}

Cochain degeneracy(int i, const Cochain& c) {
    int n = c.degree() - 1;
    check_degree(c.degree(), "degeneracy");
    if (n < 0 || i < 0 || i > n) throw std::out_of_range("degeneracy index");
    Cochain out(n);
    for (auto& [key, coef] : c.terms()) {
        Rational e = counit(key[i]);
        if (e == 0) continue;
        Cochain::Key k = key;
        k.erase(k.begin() + i);
        out.add(k, coef * e);
    }
    return out;
}

Cochain tau(const Cochain& c) {
    check_degree(c.degree(), "tau");
    if (c.degree() == 0) return c;
    return twisted_shift(c, true);
}

Cochain b(const Cochain& c) {
    int n = c.degree() + 1;
    check_degree(n, "b");
    Cochain out(n);
    for (int i = 0; i <= n; ++i) {
        Cochain f = face(i, c);
        if (i % 2) out -= f;
        else out += f;
    }
    return out;
}

Cochain B0(const Cochain& c) {
    check_degree(c.degree(), "B0");
    if (c.degree() == 0) throw std::out_of_range("B0 is not defined on degree 0");
    if (c.degree() == 1) {
        Rational s = 0;
        for (auto& [key, coef] : c.terms()) s += coef * nu(key[0]);
        return Cochain::scalar(s);
    }
    return twisted_shift(c, false);
}

Cochain A(const Cochain& c) {
    int n = c.degree();
    check_degree(n, "A");
    Cochain out = c;
    Cochain cur = c;
    for (int i = 1; i <= n; ++i) {
        cur = tau(cur);
        if ((n * i) % 2) out -= cur;
        else out += cur;
    }
    return out;
}

Cochain B(const Cochain& c) { return A(B0(c)); }

Cochain normalize(const Cochain& c) {
    Cochain out(c.degree());
    for (auto& [key, coef] : c.terms()) {
        bool unit = false;
        for (auto& m : key) unit = unit || m.is_one();
        // (h - eps(h)) kills unit factors and leaves non-unit monomials alone
        if (!unit) out.add(key, coef);
    }
    return out;
}

Distinguished distinguished() {
    H1Elem d1 = H1Elem::delta(1), X = H1Elem::X(), Y = H1Elem::Y();
    Distinguished d;
    d.delta1 = Cochain::from_elem(d1);
    d.delta2p = Cochain::from_elem(H1Elem::delta(2) - d1 * d1 * rat(1, 2));
    d.c = Cochain::tensor({d1, X}) + Cochain::tensor({d1 * d1, Y}) * rat(1, 2);
    d.F = Cochain::tensor({X, Y}) - Cochain::tensor({Y, X}) - Cochain::tensor({d1 * Y, Y});
    return d;
}

std::vector<Mono> monomials_up_to(int d) {
    std::vector<Mono> out;
    std::function<void(std::vector<int>&, int, int)> rec = [&](std::vector<int>& e, int idx, int budget) {
        if (idx > d) {
            std::vector<int> t = e;
            trim(t);
            for (int x = 0; x <= budget; ++x)
                for (int y = 0; x + y <= budget; ++y) out.push_back(Mono{t, x, y});
            return;
        }
        for (int p = 0; p * idx <= budget; ++p) {
            e[idx - 1] = p;
            rec(e, idx + 1, budget - p * idx);
        }
        e[idx - 1] = 0;
    };
    std::vector<int> e(std::max(d, 0), 0);
    rec(e, 1, d);
    return out;
}

}  // namespace modhecke
