#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace modhecke {

using Int = mpz_class;
using Rational = mpq_class;

Rational rat(long p, long q = 1);
Rational rat(const Int& p, const Int& q);

/// "p/q" with q > 0, always including the denominator.
std::string to_string(const Rational& x);
/// Accepts "p", "p/q", "-p/q". Throws std::invalid_argument.
Rational parse_rational(const std::string& s);

Int floor_q(const Rational& x);
/// x - floor(x), in [0,1)
Rational frac(const Rational& x);
long to_long(const Int& x);

/// Periodized Bernoulli function; B1 vanishes at integers (sawtooth).
Rational bernoulli_periodized(int k, const Rational& x);

long euler_phi(long n);
long gcd_l(long a, long b);
long lcm_l(long a, long b);
/// Throws std::overflow_error instead of wrapping.
int64_t mul_checked(int64_t a, int64_t b);
int64_t add_checked(int64_t a, int64_t b);

/// Upper bound on the order L of any cyclotomic field an operation may land in.
int cyclotomic_order_cap();
void set_cyclotomic_order_cap(int cap);

/// Element of Q(zeta_M), stored reduced modulo the M-th cyclotomic polynomial.
class Cyclotomic {
public:
    Cyclotomic();
    Cyclotomic(long v);  // NOLINT: implicit from integers is convenient in formulas
    Cyclotomic(const Rational& v);  // NOLINT
    Cyclotomic(int order, std::vector<Rational> coeffs);

    /// zeta_M^k
    static Cyclotomic zeta(int M, long k);
    /// exp(2 pi i * t) for rational t
    static Cyclotomic root_of_unity(const Rational& t);

    int order() const { return order_; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const { return c_.empty(); }
    bool is_rational() const { return c_.size() <= 1; }
    Rational rational_value() const;  // throws unless is_rational()

    Cyclotomic embed(int L) const;  // L must be a multiple of order()
    Cyclotomic inverse() const;
    std::complex<double> to_complex() const;

    Cyclotomic& operator+=(const Cyclotomic& o);
    Cyclotomic& operator-=(const Cyclotomic& o);
    Cyclotomic& operator*=(const Cyclotomic& o);
    Cyclotomic& operator*=(const Rational& r);
    Cyclotomic operator-() const;

    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b);
    friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inverse(); }
    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);
    friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

    std::string str() const;

private:
    int order_ = 1;
    std::vector<Rational> c_;  // trailing zeros trimmed
    void normalize();
};

/// Integer 2x2 matrix [[a,b],[c,d]].
struct Mat {
    int64_t a = 1, b = 0, c = 0, d = 1;

    int64_t det() const;
    int64_t content() const;  // gcd of entries, >= 0
    Mat adjugate() const { return {d, -b, -c, a}; }  // det * inverse
    bool is_upper() const { return c == 0; }
    bool is_identity() const { return a == 1 && b == 0 && c == 0 && d == 1; }
    Mat operator-() const { return {-a, -b, -c, -d}; }

    friend Mat operator*(const Mat& x, const Mat& y);
    friend auto operator<=>(const Mat&, const Mat&) = default;
    std::string str() const;
};

Mat mat_identity();
Mat mat_S();  // [[0,-1],[1,0]]
Mat mat_T();  // [[1,1],[0,1]]

/// scalar * mat with mat primitive; represents an element of GL2+(Q).
struct GroupElem {
    Rational scalar{1};
    Mat mat{};

    GroupElem() = default;
    GroupElem(const Rational& s, const Mat& m);  // normalizes content into the scalar
    explicit GroupElem(const Mat& m);

    Rational det() const;
    GroupElem inverse() const;
    friend GroupElem operator*(const GroupElem& x, const GroupElem& y);
    friend bool operator==(const GroupElem& x, const GroupElem& y) {
        return x.scalar == y.scalar && x.mat == y.mat;
    }
    bool operator<(const GroupElem& o) const;
    std::string str() const;
};

/// Point of (Q/Z)^2 with coordinates in [0,1).
struct TorsionPoint {
    Rational x1, x2;
    TorsionPoint() = default;
    TorsionPoint(const Rational& a, const Rational& b);
    bool operator<(const TorsionPoint& o) const;
    bool operator==(const TorsionPoint& o) const { return x1 == o.x1 && x2 == o.x2; }
    /// lcm of the two denominators
    long level() const;
};

/// Hermite representatives [[a,b],[0,d]], ad = n, 0 <= b < d.
std::vector<Mat> hnf_cosets(long n);

/// g = gamma0 * beta with gamma0 in SL2(Z), beta.mat = [[a,b],[0,d]], a,d > 0, 0 <= b < d.
std::pair<Mat, GroupElem> hnf_reduce(const GroupElem& g);

/// Smith form U*m*V = diag(d1,d2) with U,V unimodular, d1 | d2, d1,d2 >= 0.
struct SmithForm {
    Mat U, V;
    int64_t d1, d2;
};
SmithForm smith_form(const Mat& m);

/// All y in (Q/Z)^2 with y*m = 0 mod Z^2.
std::vector<TorsionPoint> kernel_points(const Mat& m);

/// Sum of k-th powers of divisors.
Int sigma_k(long n, int k);

}  // namespace modhecke
