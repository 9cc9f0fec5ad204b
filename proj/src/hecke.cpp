#include "modhecke/hecke.hpp"

#include <mutex>
#include <sstream>
#include <tuple>

namespace modhecke {

namespace {

Rational rpow(const Rational& x, long z) {
    Rational base = z >= 0 ? x : Rational(1) / x;
    Rational r = 1;
    for (long i = 0; i < (z >= 0 ? z : -z); ++i) r *= base;
    return r;
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial r = a;
    for (const auto& [atom, e] : b) r[atom] += e;
    return r;
}

bool is_level_one(const FormValue& v) {
    for (const auto& [mono, c] : v.terms())
        for (const auto& [atom, e] : mono)
            if (atom.kind != Atom::Kind::base || !atom.m.is_identity()) return false;
    return true;
}

Mat primitive_of(const Mat& g) { return GroupElem(g).mat; }

FormValue slash_atom(const Atom& a, const Mat& g);
FormValue x_atom(const Atom& a);

FormValue slash_atom_uncached(const Atom& a, const Mat& g) {
    if (a.kind == Atom::Kind::base) {
        auto [gamma0, beta] = hnf_reduce(GroupElem(a.m * g));
        Cyclotomic c = a.tag == BaseTag::eta4 ? eta4_character(gamma0) : Cyclotomic(1);
        return FormValue::atom(Atom{Atom::Kind::base, a.tag, beta.mat, 0}, c);
    }
    if (a.j == 0) return FormValue::mu(a.m * g) - FormValue::mu(g);
    // X(F)|g = X(F|g) - (k/2) mu_g (F|g) with F = X^{j-1} mu_h of weight 2j
    FormValue prev = slash_atom(Atom{Atom::Kind::mu, a.tag, a.m, a.j - 1}, g);
    return X(prev) - FormValue(Rational(a.j)) * FormValue::mu(g) * prev;
}

FormValue slash_atom(const Atom& a, const Mat& g) {
    if (g.is_identity()) return FormValue::atom(a);
    static std::map<std::pair<Atom, Mat>, FormValue> cache;
    static std::mutex mtx;
    auto key = std::make_pair(a, g);
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    FormValue r = slash_atom_uncached(a, g);
    std::lock_guard<std::mutex> lock(mtx);
    cache.emplace(key, r);
    return r;
}

FormValue x_tag(BaseTag t) {
    switch (t) {
        case BaseTag::E4: return FormValue(rat(-1, 3)) * FormValue::base(BaseTag::E6);
        case BaseTag::E6: return FormValue(rat(-1, 2)) * pow(FormValue::base(BaseTag::E4), 2);
        default: return {};
    }
}

FormValue x_atom(const Atom& a) {
    if (a.kind == Atom::Kind::mu) return FormValue::atom(Atom{Atom::Kind::mu, a.tag, a.m, a.j + 1});
    FormValue r = slash(x_tag(a.tag), a.m);
    if (!a.m.is_identity())
        r += FormValue(rat(base_weight(a.tag), 2)) * FormValue::mu(a.m) * FormValue::atom(a);
    return r;
}

QSeries tag_series(BaseTag t, long N) {
    switch (t) {
        case BaseTag::eta4: return eta4(N);
        case BaseTag::E4: return e4(N);
        case BaseTag::E6: return e6(N);
        case BaseTag::Delta: return delta(N);
    }
    throw NotQComputable("unknown base tag");
}

QSeries atom_series(const Atom& a, long order) {
    static std::map<std::pair<Atom, long>, QSeries> cache;
    static std::mutex mtx;
    auto key = std::make_pair(a, order);
    {
        std::lock_guard<std::mutex> lock(mtx);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    if (a.m.c != 0 || a.m.a <= 0 || a.m.d <= 0 || a.j < 0)
        throw NotQComputable("atom outside the q-computable fragment: " + a.str());
    QSeries s;
    if (a.kind == Atom::Kind::base) {
        long k = base_weight(a.tag);
        if (a.m.is_identity()) {
            s = tag_series(a.tag, order).truncated(order);
        } else {
            long N = (order * a.m.d + a.m.a - 1) / a.m.a + 1;
            s = slash_upper(tag_series(a.tag, N), k, GroupElem(a.m)).truncated(order);
        }
        s = s.with_weight(k);
    } else {
        s = mu_series(GroupElem(a.m), order);
        for (int i = 0; i < a.j; ++i) s = serre_x(s, 2 + 2 * i);
    }
    std::lock_guard<std::mutex> lock(mtx);
    cache.emplace(key, s);
    return s;
}

}  // namespace

long base_weight(BaseTag t) {
    switch (t) {
        case BaseTag::eta4: return 2;
        case BaseTag::E4: return 4;
        case BaseTag::E6: return 6;
        case BaseTag::Delta: return 12;
    }
    return 0;
}

const char* base_name(BaseTag t) {
    switch (t) {
        case BaseTag::eta4: return "eta4";
        case BaseTag::E4: return "E4";
        case BaseTag::E6: return "E6";
        case BaseTag::Delta: return "Delta";
    }
    return "?";
}

BaseTag parse_base_tag(const std::string& s) {
    if (s == "eta4") return BaseTag::eta4;
    if (s == "E4") return BaseTag::E4;
    if (s == "E6") return BaseTag::E6;
    if (s == "Delta") return BaseTag::Delta;
    throw std::invalid_argument("unknown base tag: " + s);
}

std::string Atom::str() const {
    std::ostringstream os;
    if (kind == Kind::base) {
        os << base_name(tag);
        if (!m.is_identity()) os << "|" << m.str();
    } else {
        if (j > 0) os << "X^" << j << " ";
        os << "mu" << m.str();
    }
    return os.str();
}

long monomial_weight(const Monomial& m) {
    long w = 0;
    for (const auto& [a, e] : m) w += a.weight() * e;
    return w;
}

// FormValue

FormValue::FormValue(const Cyclotomic& c) {
    if (!c.is_zero()) t_.emplace(Monomial{}, c);
}

FormValue FormValue::atom(const Atom& a, const Cyclotomic& c) {
    FormValue v;
    v.add(Monomial{{a, 1}}, c);
    return v;
}

FormValue FormValue::base(BaseTag tag, const GroupElem& beta) {
    auto [gamma0, b] = hnf_reduce(beta);
    Cyclotomic c = tag == BaseTag::eta4 ? eta4_character(gamma0) : Cyclotomic(1);
    return atom(Atom{Atom::Kind::base, tag, b.mat, 0}, c);
}

FormValue FormValue::mu(const GroupElem& g, int j) {
    if (j < 0) throw std::invalid_argument("mu atom needs j >= 0");
    Mat b = hnf_reduce(g).second.mat;
    if (b.is_identity()) return {};
    return atom(Atom{Atom::Kind::mu, BaseTag::E4, b, j});
}

std::optional<long> FormValue::weight() const {
    std::optional<long> w;
    for (const auto& [m, c] : t_) {
        long k = monomial_weight(m);
        if (w && *w != k) return std::nullopt;
        w = k;
    }
    return w;
}

FormValue FormValue::weight_part(long k) const {
    FormValue r;
    for (const auto& [m, c] : t_)
        if (monomial_weight(m) == k) r.t_.emplace(m, c);
    return r;
}

Cyclotomic FormValue::constant_coeff() const {
    auto it = t_.find(Monomial{});
    return it == t_.end() ? Cyclotomic() : it->second;
}

void FormValue::add(const Monomial& m, const Cyclotomic& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = t_.emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) t_.erase(it);
    }
}

FormValue& FormValue::operator+=(const FormValue& o) {
    for (const auto& [m, c] : o.t_) add(m, c);
    return *this;
}

FormValue& FormValue::operator-=(const FormValue& o) {
    for (const auto& [m, c] : o.t_) add(m, -c);
    return *this;
}

FormValue& FormValue::operator*=(const Cyclotomic& c) {
    if (c.is_zero()) {
        t_.clear();
        return *this;
    }
    for (auto& [m, v] : t_) v *= c;
    return *this;
}

FormValue FormValue::operator-() const {
    FormValue r = *this;
    for (auto& [m, v] : r.t_) v = -v;
    return r;
}

FormValue operator*(const FormValue& a, const FormValue& b) {
    FormValue r;
    for (const auto& [ma, ca] : a.t_)
        for (const auto& [mb, cb] : b.t_) r.add(mono_mul(ma, mb), ca * cb);
    return r;
}

std::string FormValue::str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : t_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        for (const auto& [a, e] : m) {
            os << "*" << a.str();
            if (e != 1) os << "^" << e;
        }
    }
    return os.str();
}

FormValue pow(const FormValue& v, int n) {
    if (n < 0) throw std::invalid_argument("negative power of a form value");
    FormValue r = 1;
    for (int i = 0; i < n; ++i) r = r * v;
    return r;
}

FormValue slash(const FormValue& v, const Mat& g) {
    if (g.det() <= 0) throw std::invalid_argument("slash needs positive determinant");
    Mat p = primitive_of(g);
    if (p.is_identity()) return v;
    FormValue r;
    for (const auto& [m, c] : v.terms()) {
        FormValue term = c;
        for (const auto& [a, e] : m) term = term * pow(slash_atom(a, p), e);
        r += term;
    }
    return r;
}

FormValue slash(const FormValue& v, const GroupElem& g) { return slash(v, g.mat); }

FormValue X(const FormValue& v) {
    FormValue r;
    for (const auto& [m, c] : v.terms()) {
        for (const auto& [a, e] : m) {
            Monomial rest = m;
            if (--rest[a] == 0) rest.erase(a);
            FormValue rv;
            rv.add(rest, c * Cyclotomic(e));
            r += rv * x_atom(a);
        }
    }
    return r;
}

FormValue Y(const FormValue& v) {
    FormValue r;
    for (const auto& [m, c] : v.terms()) {
        Monomial mm = m;
        r.add(mm, c * Cyclotomic(rat(monomial_weight(m), 2)));
    }
    return r;
}

QSeries qexpand(const FormValue& v, long order) {
    QSeries r(1, {}, Rational(order), v.weight().value_or(0));
    for (const auto& [m, c] : v.terms()) {
        QSeries term = QSeries::constant(c, Rational(order), 0);
        for (const auto& [a, e] : m)
            for (int i = 0; i < e; ++i) term = (term * atom_series(a, order)).truncated(order);
        r += term;
    }
    return r;
}

bool values_equal(const FormValue& a, const FormValue& b, long order) {
    FormValue d = a - b;
    if (d.is_zero()) return true;
    return qexpand(d, order).is_zero();
}

// Keys and elements

bool Key::operator<(const Key& o) const {
    if (hnf != o.hnf) return hnf < o.hnf;
    return cmp(scalar, o.scalar) < 0;
}

std::string Key::str() const {
    std::ostringstream os;
    if (scalar != 1) os << to_string(scalar) << "*";
    os << hnf.str();
    return os.str();
}

Key canonical_key(const GroupElem& g) {
    GroupElem b = hnf_reduce(g).second;
    return Key{b.scalar, b.mat};
}

HeckeElem HeckeElem::at(const GroupElem& g, const FormValue& v) {
    HeckeElem r;
    r.add(canonical_key(g), v);
    return r;
}

FormValue HeckeElem::value(const Key& k) const {
    auto it = t_.find(k);
    return it == t_.end() ? FormValue() : it->second;
}

void HeckeElem::add(const Key& k, const FormValue& v) {
    if (v.is_zero()) return;
    auto [it, fresh] = t_.emplace(k, v);
    if (!fresh) {
        it->second += v;
        if (it->second.is_zero()) t_.erase(it);
    }
}

HeckeElem& HeckeElem::operator+=(const HeckeElem& o) {
    for (const auto& [k, v] : o.t_) add(k, v);
    return *this;
}

HeckeElem& HeckeElem::operator-=(const HeckeElem& o) {
    for (const auto& [k, v] : o.t_) add(k, -v);
    return *this;
}

HeckeElem& HeckeElem::operator*=(const Cyclotomic& c) {
    if (c.is_zero()) {
        t_.clear();
        return *this;
    }
    for (auto& [k, v] : t_) v *= c;
    return *this;
}

HeckeElem HeckeElem::operator-() const {
    HeckeElem r = *this;
    for (auto& [k, v] : r.t_) v = -v;
    return r;
}

HeckeElem operator*(const HeckeElem& a, const HeckeElem& b) {
    HeckeElem r;
    for (const auto& [k1, v1] : a.t_) {
        GroupElem g1 = k1.elem();
        for (const auto& [k2, v2] : b.t_) {
            r.add(canonical_key(k2.elem() * g1), v1 * slash(v2, k1.hnf));
        }
    }
    return r;
}

std::string HeckeElem::str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : t_) {
        if (!first) os << " + ";
        first = false;
        os << "[" << v.str() << "] U*" << k.str();
    }
    return os.str();
}

HeckeElem convolve(const HeckeElem& a, const HeckeElem& b) { return a * b; }

HeckeElem commutator(const HeckeElem& a, const HeckeElem& b) { return a * b - b * a; }

bool elems_equal(const HeckeElem& a, const HeckeElem& b, long order) {
    HeckeElem d = a - b;
    for (const auto& [k, v] : d.terms())
        if (!values_equal(v, FormValue(), order)) return false;
    return true;
}

FormValue act_on_form(const HeckeElem& F, const FormValue& f) {
    FormValue r;
    for (const auto& [k, v] : F.terms()) r += v * slash(f, k.hnf);
    return r;
}

HeckeElem hecke_T(long n) {
    if (n < 1) throw std::invalid_argument("hecke_T needs n >= 1");
    HeckeElem r;
    for (const Mat& m : hnf_cosets(n)) r.add(canonical_key(GroupElem(m)), 1);
    return r;
}

HeckeElem j_embed(const CosetFunction& h) {
    HeckeElem r;
    for (const auto& [k, c] : h) r.add(k, c);
    return r;
}

CosetFunction epsilon(const HeckeElem& F) {
    CosetFunction r;
    for (const auto& [k, v] : F.terms()) {
        Cyclotomic c = v.constant_coeff();
        if (c.is_zero()) continue;
        if (!c.is_rational()) throw std::domain_error("epsilon: irrational constant at " + k.str());
        r.emplace(k, c.rational_value());
    }
    return r;
}

HeckeElem from_double_coset(long n, const FormValue& f) {
    if (n < 1) throw std::invalid_argument("from_double_coset needs n >= 1");
    if (is_level_one(f)) {
        for (const Mat& g : {mat_T(), Mat{1, 0, n, 1}}) {
            if (!(slash(f, g) == f))
                throw std::invalid_argument("from_double_coset: value is not Gamma_0(" +
                                            std::to_string(n) + ")-invariant");
        }
    }
    const Mat beta{n, 0, 0, 1};
    const Mat P{0, 1, 1, 0};
    const Mat D{-1, 0, 0, 1};
    HeckeElem r;
    for (const Mat& h : hnf_cosets(n)) {
        if (h.content() != 1) continue;
        SmithForm s = smith_form(h);
        // h = U^{-1} P beta P V^{-1}
        Mat A = (s.U.det() == 1 ? s.U.adjugate() : -s.U.adjugate()) * P;
        Mat B = P * (s.V.det() == 1 ? s.V.adjugate() : -s.V.adjugate());
        if (A.det() == -1) {
            A = A * D;
            B = D * B;
        }
        if (A * beta * B != h) throw std::logic_error("from_double_coset: bad decomposition");
        r.add(canonical_key(GroupElem(h)), slash(f, B));
    }
    return r;
}

HeckeElem hopf_act(const Mono& m, const HeckeElem& F) {
    HeckeElem r;
    for (const auto& [k, v0] : F.terms()) {
        FormValue v = v0;
        for (int i = 0; i < m.y; ++i) v = Y(v);
        for (int i = 0; i < m.x; ++i) v = X(v);
        for (size_t i = 0; i < m.e.size(); ++i)
            if (m.e[i] > 0) v = v * pow(FormValue::mu(k.hnf, static_cast<int>(i)), m.e[i]);
        r.add(k, v);
    }
    return r;
}

HeckeElem hopf_act(const H1Elem& h, const HeckeElem& F) {
    HeckeElem r;
    for (const auto& [m, c] : h.terms()) r += hopf_act(m, F) * Cyclotomic(c);
    return r;
}

FormValue hopf_act(const H1Elem& h, const FormValue& v) {
    return hopf_act(h, HeckeElem::identity(v)).value(Key{});
}

FormValue schwarzian_sigma(const GroupElem& g) {
    FormValue mu = FormValue::mu(g);
    return FormValue::mu(g, 1) - FormValue(rat(1, 2)) * mu * mu;
}

FormValue omega4() { return FormValue(rat(-1, 72)) * FormValue::base(BaseTag::E4); }

HeckeElem rc1_bracket(const HeckeElem& a1, const HeckeElem& a2) {
    HeckeElem Ya1 = hopf_act(Mono::Y(), a1), Ya2 = hopf_act(Mono::Y(), a2);
    return hopf_act(Mono::X(), a1) * Ya2 - Ya1 * hopf_act(Mono::X(), a2) -
           hopf_act(Mono::delta(1), Ya1) * Ya2;
}

FormValue projection_P(const HeckeElem& a) { return a.value(Key{}).weight_part(2); }

FormValue gv_pair(const HeckeElem& a, const HeckeElem& b) {
    return projection_P(a * hopf_act(Mono::delta(1), b));
}

HeckeElem sigma_z(long z, const HeckeElem& F) {
    HeckeElem r;
    for (const auto& [k, v] : F.terms()) {
        FormValue w = v;
        w *= Cyclotomic(rpow(k.det(), z));
        r.add(k, w);
    }
    return r;
}

HeckeElem sample_fragment_elem(std::mt19937_64& rng, long max_det) {
    std::uniform_int_distribution<long> det(1, max_det), coef(-3, 3), kind(0, 5);
    HeckeElem r;
    int pieces = std::uniform_int_distribution<int>(1, 2)(rng);
    for (int p = 0; p < pieces; ++p) {
        long n = det(rng);
        Mat beta{n, 0, 0, 1};
        long c = coef(rng);
        if (c == 0) c = 1;
        FormValue f;
        switch (kind(rng)) {
            case 0: f = FormValue(rat(c, 2)); break;
            case 1: f = FormValue::base(BaseTag::E4); break;
            case 2: f = FormValue::base(BaseTag::E6); break;
            case 3: f = FormValue::base(BaseTag::E4, beta); break;
            case 4: f = n > 1 ? FormValue::mu(beta) : FormValue(1); break;
            default: f = FormValue(c) + FormValue::mu(beta) * FormValue::base(BaseTag::E4); break;
        }
        r += from_double_coset(n, f);
    }
    return r;
}

CosetFunction sample_coset_function(std::mt19937_64& rng, long max_det) {
    std::uniform_int_distribution<long> det(1, max_det), coef(-5, 5), count(1, 4), scal(1, 3);
    CosetFunction h;
    for (long i = count(rng); i > 0; --i) {
        auto cos = hnf_cosets(det(rng));
        const Mat& m = cos[std::uniform_int_distribution<size_t>(0, cos.size() - 1)(rng)];
        Key k = canonical_key(GroupElem(rat(1, scal(rng)), m));
        Rational c = coef(rng);
        if (c != 0) h[k] += c;
    }
    for (auto it = h.begin(); it != h.end();) it = it->second == 0 ? h.erase(it) : std::next(it);
    return h;
}

// Perturbation

Perturbation::Perturbation(FormValue t, Rational lambda, FormValue m, bool t1_is_m)
    : t_(std::move(t)), m_(std::move(m)), lambda_(std::move(lambda)), t1_is_m_(t1_is_m) {}

FormValue Perturbation::m_k(int k) const {
    if (k < 1) throw std::invalid_argument("m^(k) needs k >= 1");
    if (k == 1) return m_;
    auto it = mk_.find(k);
    if (it != mk_.end()) return it->second;
    FormValue prev = m_k(k - 1);
    FormValue r = X(prev) + m_ * Y(prev);
    mk_.emplace(k, r);
    return r;
}

FormValue Perturbation::t_k(int n) const {
    if (n < 0) throw std::invalid_argument("t^(n) needs n >= 0");
    if (n == 0) return 1;
    if (n == 1) return t1_is_m_ ? m_ : t_;
    auto it = tk_.find(n);
    if (it != tk_.end()) return it->second;
    FormValue prev = t_k(n - 1);
    FormValue r = X(prev) + m_ * Y(prev) + t_ * prev;
    tk_.emplace(n, r);
    return r;
}

FormValue Perturbation::s_k(int n) const {
    if (n < 0) throw std::invalid_argument("s^(n) needs n >= 0");
    FormValue s1 = -t_ + FormValue(lambda_) * m_;
    if (n == 0) return 1;
    if (n == 1) return s1;
    auto it = sk_.find(n);
    if (it != sk_.end()) return it->second;
    FormValue prev = s_k(n - 1);
    FormValue r = X(prev) + prev * s1;
    sk_.emplace(n, r);
    return r;
}

FormValue Perturbation::u(const Mono& h) const {
    FormValue r = rpow(lambda_, h.y);
    if (r.is_zero()) return r;
    for (size_t i = 0; i < h.e.size(); ++i)
        if (h.e[i] > 0) r = r * pow(m_k(static_cast<int>(i) + 1), h.e[i]);
    return r * t_k(h.x);
}

FormValue Perturbation::u(const H1Elem& h) const {
    FormValue r;
    for (const auto& [m, c] : h.terms()) r += u(m) * FormValue(c);
    return r;
}

FormValue Perturbation::u_inv(const Mono& h) const {
    FormValue r = rpow(-lambda_, h.y);
    if (r.is_zero()) return r;
    for (size_t i = 0; i < h.e.size(); ++i) {
        if (h.e[i] == 0) continue;
        FormValue n = m_;
        for (size_t j = 0; j < i; ++j) n = X(n);
        r = r * pow(-n, h.e[i]);
    }
    return r * s_k(h.x);
}

FormValue Perturbation::u_inv(const H1Elem& h) const {
    FormValue r;
    for (const auto& [m, c] : h.terms()) r += u_inv(m) * FormValue(c);
    return r;
}

FormValue Perturbation::u_inv_recursive(const Mono& h) const {
    if (h.is_one()) return 1;
    auto it = inv_memo_.find(h);
    if (it != inv_memo_.end()) return it->second;
    FormValue r;
    for (const auto& [k, c] : coproduct(h).terms()) {
        if (k[0].is_one()) continue;
        r -= u(k[0]) * u_inv_recursive(k[1]) * FormValue(c);
    }
    inv_memo_.emplace(h, r);
    return r;
}

HeckeElem Perturbation::act(const H1Elem& h, const HeckeElem& a) const {
    HeckeElem r;
    for (const auto& [k, c] : iterated_coproduct(h, 2).terms()) {
        FormValue left = u(k[0]);
        if (left.is_zero()) continue;
        FormValue right = u_inv(k[2]);
        if (right.is_zero()) continue;
        HeckeElem mid = hopf_act(k[1], a);
        if (mid.is_zero()) continue;
        r += HeckeElem::identity(left) * mid * HeckeElem::identity(right) * Cyclotomic(c);
    }
    return r;
}

HeckeElem Perturbation::X_tilde(const HeckeElem& a) const {
    HeckeElem w = HeckeElem::identity(t_ - FormValue(lambda_) * m_);
    HeckeElem r = hopf_act(Mono::X(), a) + commutator(w, a) -
                  hopf_act(Mono::delta(1), a) * Cyclotomic(lambda_) +
                  HeckeElem::identity(m_) * hopf_act(Mono::Y(), a);
    return r;
}

HeckeElem Perturbation::delta1_tilde(const HeckeElem& a) const {
    return hopf_act(Mono::delta(1), a) + commutator(HeckeElem::identity(m_), a);
}

}  // namespace modhecke
