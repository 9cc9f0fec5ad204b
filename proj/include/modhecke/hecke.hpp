#pragma once

#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>

#include "modhecke/exact.hpp"
#include "modhecke/hopf.hpp"
#include "modhecke/qseries.hpp"

namespace modhecke {

/// Thrown when a value cannot be expanded at infinity.
class NotQComputable : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class BaseTag { eta4, E4, E6, Delta };

long base_weight(BaseTag t);
const char* base_name(BaseTag t);
BaseTag parse_base_tag(const std::string& s);

/// Either a level-1 generator slashed by a primitive HNF matrix, or X^j(mu_g)
/// for a primitive HNF matrix g other than the identity.
struct Atom {
    enum class Kind { base, mu };
    Kind kind = Kind::base;
    BaseTag tag = BaseTag::E4;
    Mat m{};
    int j = 0;

    long weight() const { return kind == Kind::base ? base_weight(tag) : 2 + 2L * j; }
    std::string str() const;
    friend auto operator<=>(const Atom&, const Atom&) = default;
};

/// Atom -> exponent; the empty monomial is the constant 1.
using Monomial = std::map<Atom, int>;

long monomial_weight(const Monomial& m);

class FormValue {
public:
    using Map = std::map<Monomial, Cyclotomic>;

    FormValue() = default;
    FormValue(const Cyclotomic& c);  // NOLINT: constants are values
    FormValue(long c) : FormValue(Cyclotomic(c)) {}  // NOLINT
    FormValue(const Rational& c) : FormValue(Cyclotomic(c)) {}  // NOLINT

    static FormValue atom(const Atom& a, const Cyclotomic& c = 1);
    /// tag | beta, with beta reduced to HNF (the SL2 part contributes its character)
    static FormValue base(BaseTag tag, const GroupElem& beta = GroupElem());
    static FormValue base(BaseTag tag, const Mat& beta) { return base(tag, GroupElem(beta)); }
    /// X^j(mu_g); zero when g is in the center times SL2(Z)
    static FormValue mu(const GroupElem& g, int j = 0);
    static FormValue mu(const Mat& g, int j = 0) { return mu(GroupElem(g), j); }

    const Map& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    /// common weight of all monomials; nullopt for zero or mixed values
    std::optional<long> weight() const;
    /// the part of weight k
    FormValue weight_part(long k) const;
    Cyclotomic constant_coeff() const;

    void add(const Monomial& m, const Cyclotomic& c);
    FormValue& operator+=(const FormValue& o);
    FormValue& operator-=(const FormValue& o);
    FormValue& operator*=(const Cyclotomic& c);
    FormValue operator-() const;
    friend FormValue operator+(FormValue a, const FormValue& b) { return a += b; }
    friend FormValue operator-(FormValue a, const FormValue& b) { return a -= b; }
    friend FormValue operator*(const FormValue& a, const FormValue& b);
    /// symbolic equality; see values_equal for equality as functions
    friend bool operator==(const FormValue& a, const FormValue& b) { return a.t_ == b.t_; }

    std::string str() const;

private:
    Map t_;
};

FormValue pow(const FormValue& v, int n);

/// f|g for g in GL2+(Q); the scalar part acts trivially.
FormValue slash(const FormValue& v, const GroupElem& g);
FormValue slash(const FormValue& v, const Mat& g);
/// Serre derivative X, a derivation on the fragment.
FormValue X(const FormValue& v);
/// multiplies each weight-k monomial by k/2
FormValue Y(const FormValue& v);

QSeries qexpand(const FormValue& v, long order);

/// Symbolic comparison first; otherwise the q-expansions of the difference
/// must vanish below the given order.
bool values_equal(const FormValue& a, const FormValue& b, long order = 40);

/// Coset key: positive scalar times a primitive HNF matrix.
struct Key {
    Rational scalar{1};
    Mat hnf{};

    GroupElem elem() const { return GroupElem(scalar, hnf); }
    Rational det() const { return scalar * scalar * hnf.det(); }
    bool operator<(const Key& o) const;
    bool operator==(const Key& o) const { return scalar == o.scalar && hnf == o.hnf; }
    std::string str() const;
};

/// Canonical key of the coset Gamma(1) g.
Key canonical_key(const GroupElem& g);

using CosetFunction = std::map<Key, Rational>;

class HeckeElem {
public:
    using Map = std::map<Key, FormValue>;

    HeckeElem() = default;
    /// value v at the coset of g
    static HeckeElem at(const GroupElem& g, const FormValue& v = 1);
    static HeckeElem at(const Mat& g, const FormValue& v = 1) { return at(GroupElem(g), v); }
    /// v U_1
    static HeckeElem identity(const FormValue& v = 1) { return at(GroupElem(), v); }

    const Map& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    /// value at a key, zero when absent
    FormValue value(const Key& k) const;
    /// only Gamma(1) is instantiated
    int level() const { return 1; }

    void add(const Key& k, const FormValue& v);
    HeckeElem& operator+=(const HeckeElem& o);
    HeckeElem& operator-=(const HeckeElem& o);
    HeckeElem& operator*=(const Cyclotomic& c);
    HeckeElem operator-() const;
    friend HeckeElem operator+(HeckeElem a, const HeckeElem& b) { return a += b; }
    friend HeckeElem operator-(HeckeElem a, const HeckeElem& b) { return a -= b; }
    friend HeckeElem operator*(HeckeElem a, const Cyclotomic& c) { return a *= c; }
    friend HeckeElem operator*(const Cyclotomic& c, HeckeElem a) { return a *= c; }
    /// convolution
    friend HeckeElem operator*(const HeckeElem& a, const HeckeElem& b);
    friend bool operator==(const HeckeElem& a, const HeckeElem& b) { return a.t_ == b.t_; }

    std::string str() const;

private:
    Map t_;
};

HeckeElem convolve(const HeckeElem& a, const HeckeElem& b);
/// ab - ba
HeckeElem commutator(const HeckeElem& a, const HeckeElem& b);
bool elems_equal(const HeckeElem& a, const HeckeElem& b, long order = 40);

/// sum over the support of F_alpha (f|alpha)
FormValue act_on_form(const HeckeElem& F, const FormValue& f);

HeckeElem hecke_T(long n);
HeckeElem j_embed(const CosetFunction& h);
/// weight-0 augmentation; throws if a constant is irrational
CosetFunction epsilon(const HeckeElem& F);

/// Element supported on Gamma beta_n Gamma with value f|gamma2 at gamma1 beta_n gamma2.
/// f must be invariant under Gamma_0(n); this is verified on generators only
/// when f is built from level-1 atoms.
HeckeElem from_double_coset(long n, const FormValue& f);

HeckeElem hopf_act(const Mono& m, const HeckeElem& F);
HeckeElem hopf_act(const H1Elem& h, const HeckeElem& F);
/// action on values placed at the identity coset, where every delta_n acts by 0
FormValue hopf_act(const H1Elem& h, const FormValue& v);

/// X(mu_g) - mu_g^2/2
FormValue schwarzian_sigma(const GroupElem& g);
/// -E4/72
FormValue omega4();

/// X(a1)Y(a2) - Y(a1)X(a2) - d1(Y(a1))Y(a2)
HeckeElem rc1_bracket(const HeckeElem& a1, const HeckeElem& a2);

/// weight-2 part of the value at the identity coset
FormValue projection_P(const HeckeElem& a);
/// P(a d1(b))
FormValue gv_pair(const HeckeElem& a, const HeckeElem& b);

/// multiplies the value at alpha by det(alpha)^z
HeckeElem sigma_z(long z, const HeckeElem& F);

/// Pseudorandom covariant element: one or two double-coset pieces with
/// determinant <= max_det and values among constants, E4, E6, E4|beta_n, mu_{beta_n}.
HeckeElem sample_fragment_elem(std::mt19937_64& rng, long max_det);
/// Pseudorandom weight-0 element (a coset function) on cosets of determinant <= max_det.
CosetFunction sample_coset_function(std::mt19937_64& rng, long max_det);

/// Convolution cocycle u built from (t, lambda, m) and the perturbed action.
class Perturbation {
public:
    /// t1_is_m selects the literal recursion start t^(1) = m instead of t^(1) = t.
    Perturbation(FormValue t, Rational lambda, FormValue m, bool t1_is_m = false);

    FormValue u(const Mono& h) const;
    FormValue u(const H1Elem& h) const;
    /// closed form for the convolution inverse
    FormValue u_inv(const Mono& h) const;
    FormValue u_inv(const H1Elem& h) const;
    /// convolution inverse from the recursion (u * v)(h) = eps(h)
    FormValue u_inv_recursive(const Mono& h) const;

    FormValue m_k(int k) const;  // m^(k), k >= 1
    FormValue t_k(int n) const;  // t^(n), t^(0) = 1
    FormValue s_k(int n) const;  // s^(n), s^(0) = 1

    /// sum u(h1) h2(a) u_inv(h3)
    HeckeElem act(const H1Elem& h, const HeckeElem& a) const;
    /// X(a) + [t - lambda m, a] - lambda d1(a) + m Y(a)
    HeckeElem X_tilde(const HeckeElem& a) const;
    /// d1(a) + [m, a]
    HeckeElem delta1_tilde(const HeckeElem& a) const;

    const FormValue& t() const { return t_; }
    const Rational& lambda() const { return lambda_; }
    const FormValue& m() const { return m_; }

private:
    FormValue t_, m_;
    Rational lambda_;
    bool t1_is_m_;
    mutable std::map<int, FormValue> mk_, tk_, sk_;
    mutable std::map<Mono, FormValue> inv_memo_;
};

}  // namespace modhecke
