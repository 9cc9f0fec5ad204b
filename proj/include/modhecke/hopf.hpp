#pragma once

#include <map>
#include <string>
#include <vector>

#include "modhecke/exact.hpp"

namespace modhecke {

/// PBW monomial d1^{e1} d2^{e2} ... X^x Y^y.
struct Mono {
    std::vector<int> e;  // e[i] is the exponent of delta_{i+1}; no trailing zeros
    int x = 0;
    int y = 0;

    static Mono delta(int n, int power = 1);
    static Mono X(int power = 1);
    static Mono Y(int power = 1);

    bool is_one() const { return e.empty() && x == 0 && y == 0; }
    bool has_delta() const { return !e.empty(); }
    /// grading with deg(d_n) = n, deg(X) = 1, deg(Y) = 0
    int grading() const;
    /// sum n*e_n, the Y-eigenvalue shift of the delta part
    int delta_weight() const;
    std::string str() const;
    friend auto operator<=>(const Mono&, const Mono&) = default;
};

class H1Elem {
public:
    using Map = std::map<Mono, Rational>;

    H1Elem() = default;
    H1Elem(const Rational& c);  // NOLINT: scalars are elements
    H1Elem(long c) : H1Elem(Rational(c)) {}  // NOLINT
    H1Elem(const Mono& m, const Rational& c = 1);  // NOLINT

    static H1Elem X() { return H1Elem(Mono::X()); }
    static H1Elem Y() { return H1Elem(Mono::Y()); }
    static H1Elem delta(int n) { return H1Elem(Mono::delta(n)); }

    const Map& terms() const& { return t_; }
    Map terms() && { return std::move(t_); }
    bool is_zero() const { return t_.empty(); }
    Rational coeff(const Mono& m) const;

    H1Elem& operator+=(const H1Elem& o);
    H1Elem& operator-=(const H1Elem& o);
    H1Elem& operator*=(const Rational& c);
    H1Elem operator-() const;
    friend H1Elem operator+(H1Elem a, const H1Elem& b) { return a += b; }
    friend H1Elem operator-(H1Elem a, const H1Elem& b) { return a -= b; }
    friend H1Elem operator*(H1Elem a, const Rational& c) { return a *= c; }
    friend H1Elem operator*(const Rational& c, H1Elem a) { return a *= c; }
    friend H1Elem operator*(const H1Elem& a, const H1Elem& b);
    friend bool operator==(const H1Elem& a, const H1Elem& b) { return a.t_ == b.t_; }

    std::string str() const;

private:
    Map t_;
    void add(const Mono& m, const Rational& c);
};

/// PBW product of two monomials.
H1Elem pbw_mul(const Mono& a, const Mono& b);
inline H1Elem pbw_mul(const H1Elem& a, const H1Elem& b) { return a * b; }

H1Elem commutator(const H1Elem& a, const H1Elem& b);

/// Elementary tensors of PBW monomials with rational coefficients. Degree 0 is a scalar.
class Cochain {
public:
    using Key = std::vector<Mono>;
    using Map = std::map<Key, Rational>;

    explicit Cochain(int degree = 0) : n_(degree) {}
    static Cochain scalar(const Rational& c);
    static Cochain tensor(const std::vector<H1Elem>& factors);
    static Cochain from_elem(const H1Elem& h) { return tensor({h}); }

    int degree() const { return n_; }
    const Map& terms() const& { return t_; }
    Map terms() && { return std::move(t_); }
    bool is_zero() const { return t_.empty(); }
    /// degree-1 cochain as an element of H1
    H1Elem as_elem() const;

    void add(const Key& k, const Rational& c);
    Cochain& operator+=(const Cochain& o);
    Cochain& operator-=(const Cochain& o);
    Cochain& operator*=(const Rational& c);
    friend Cochain operator+(Cochain a, const Cochain& b) { return a += b; }
    friend Cochain operator-(Cochain a, const Cochain& b) { return a -= b; }
    friend Cochain operator*(Cochain a, const Rational& c) { return a *= c; }
    friend Cochain operator*(const Rational& c, Cochain a) { return a *= c; }
    /// factorwise product in H^{(x)n}
    friend Cochain operator*(const Cochain& a, const Cochain& b);
    friend bool operator==(const Cochain& a, const Cochain& b) { return a.n_ == b.n_ && a.t_ == b.t_; }

    std::string str() const;

private:
    int n_;
    Map t_;
};

Rational counit(const Mono& m);
Rational counit(const H1Elem& h);
/// modular character: nu(Y) = 1, nu(X) = nu(d_n) = 0
Rational nu(const Mono& m);
Rational nu(const H1Elem& h);

Cochain coproduct(const Mono& m);
Cochain coproduct(const H1Elem& h);
/// iterated coproduct into k+1 factors (k = 0 is the identity)
Cochain iterated_coproduct(const H1Elem& h, int k);

H1Elem antipode(const Mono& m);
H1Elem antipode(const H1Elem& h);
H1Elem twisted_antipode(const H1Elem& h);

/// Largest cochain degree the cyclic operators accept.
constexpr int kMaxCochainDegree = 5;

Cochain face(int i, const Cochain& c);        // C^{n-1} -> C^n, 0 <= i <= n
Cochain degeneracy(int i, const Cochain& c);  // C^{n+1} -> C^n, 0 <= i <= n
Cochain tau(const Cochain& c);
Cochain b(const Cochain& c);
Cochain B0(const Cochain& c);
Cochain A(const Cochain& c);
Cochain B(const Cochain& c);
/// projects each tensor factor h to h - eps(h)
Cochain normalize(const Cochain& c);

struct Distinguished {
    Cochain delta1, delta2p, c, F;
};
Distinguished distinguished();

/// All monomials with sum n*e_n + x + y <= d.
std::vector<Mono> monomials_up_to(int d);

}  // namespace modhecke
