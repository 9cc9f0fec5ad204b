#pragma once

#include <map>
#include <optional>
#include <string>

#include "modhecke/exact.hpp"

namespace modhecke {

/// Largest exponent denominator a series may carry.
int exp_den_cap();
void set_exp_den_cap(int cap);

/// Truncated q-expansion sum c_r q^r with r in (1/D)Z and c_r cyclotomic.
/// Exponents at or above trunc() are unknown; an empty trunc() means the
/// series is exact (a finite Laurent polynomial).
class QSeries {
public:
    using Terms = std::map<long, Cyclotomic>;  // numerator over exp_den()

    QSeries() = default;
    QSeries(long D, Terms terms, std::optional<Rational> trunc, Rational weight = 0);

    static QSeries constant(const Cyclotomic& c, std::optional<Rational> trunc = std::nullopt,
                            Rational weight = 0);
    static QSeries monomial(const Rational& exponent, const Cyclotomic& c,
                            std::optional<Rational> trunc = std::nullopt, Rational weight = 0);
    /// Integral-exponent series from dense rational coefficients c[0..n), trunc n + shift.
    static QSeries from_dense(const std::vector<Rational>& c, const Rational& shift, Rational weight);

    long exp_den() const { return D_; }
    const Terms& terms() const& { return terms_; }
    Terms terms() && { return std::move(terms_); }
    const std::optional<Rational>& trunc() const { return trunc_; }
    const Rational& weight() const { return weight_; }
    const std::string& level_tag() const { return tag_; }

    QSeries with_weight(const Rational& w) const;
    QSeries with_tag(std::string tag) const;

    bool is_zero() const { return terms_.empty(); }
    /// Coefficient of q^e; throws if e is at or beyond the truncation order.
    Cyclotomic coeff(const Rational& e) const;
    /// Smallest exponent with a nonzero coefficient.
    std::optional<Rational> valuation() const;
    /// Drop everything at or above t (t may not exceed the current order).
    QSeries truncated(const Rational& t) const;

    QSeries operator-() const;
    QSeries& operator+=(const QSeries& o);
    QSeries& operator-=(const QSeries& o);
    QSeries& operator*=(const Cyclotomic& c);
    friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
    friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
    friend QSeries operator*(const QSeries& a, const QSeries& b);
    friend QSeries operator*(QSeries a, const Cyclotomic& c) { return a *= c; }
    friend QSeries operator*(const Cyclotomic& c, QSeries a) { return a *= c; }

    /// Multiplicative inverse; the leading coefficient must be nonzero and the
    /// series must be truncated unless it is a single monomial.
    QSeries inverse() const;
    QSeries pow(long n) const;

    std::string str(int max_terms = 12) const;

private:
    long D_ = 1;
    Terms terms_;
    std::optional<Rational> trunc_;
    Rational weight_ = 0;
    std::string tag_;

    void normalize();
};

/// Coefficient-wise agreement up to the smaller truncation order.
bool agree(const QSeries& a, const QSeries& b);
/// min of the two truncation orders (nullopt when both are exact).
std::optional<Rational> common_order(const QSeries& a, const QSeries& b);

/// q d/dq, termwise.
QSeries theta(const QSeries& f);

/// eta^4 = q^{1/6} prod (1-q^n)^4, known below N + 1/6.
QSeries eta4(long N);
/// Delta = eta^24, known below N + 1.
QSeries delta(long N);
QSeries e4(long N);
QSeries e6(long N);
/// theta(eta4)/eta4 = 1/6 - 4 sum sigma_1(n) q^n.
QSeries g2_star(long N);

/// f|_k g for upper-triangular g, with det^{k/2} normalization. k must be even.
QSeries slash_upper(const QSeries& f, long k, const GroupElem& g);

/// X(f) = theta(f) - (k/2) g2* f
QSeries serre_x(const QSeries& f, const Rational& k);

/// mu_g = theta(psi)/psi with psi = (eta^4|g)/eta^4, known below N.
QSeries mu_series(const GroupElem& g, long N);
/// Same value computed literally as theta(psi) * psi^{-1}; slower, kept as a cross-check.
QSeries mu_series_quotient(const GroupElem& g, long N);

/// Character of SL2(Z) with eta^4|_2 gamma = chi(gamma) eta^4.
Cyclotomic eta4_character(const Mat& gamma);

long sturm_order(long k, long N);

}  // namespace modhecke
