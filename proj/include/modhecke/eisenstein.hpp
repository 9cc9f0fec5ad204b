#pragma once

#include <map>
#include <string>

#include "modhecke/exact.hpp"

namespace modhecke {

/// Finite rational combination of Eisenstein symbols x in (Q/Z)^2, standing for
/// sum c_x phi_x. The level is the lcm of the orders of the supported points.
class EisClass {
public:
    using Map = std::map<TorsionPoint, Rational>;

    EisClass() = default;
    explicit EisClass(Map coeffs);
    static EisClass point(const TorsionPoint& x, const Rational& c = 1);
    /// the symbol (0,0)
    static EisClass phi0() { return point(TorsionPoint()); }

    long level() const { return level_; }
    const Map& coeffs() const& { return c_; }
    Map coeffs() && { return std::move(c_); }
    bool is_zero() const { return c_.empty(); }
    Rational coeff(const TorsionPoint& x) const;

    EisClass& operator+=(const EisClass& o);
    EisClass& operator-=(const EisClass& o);
    EisClass& operator*=(const Rational& r);
    EisClass operator-() const;
    friend EisClass operator+(EisClass a, const EisClass& b) { return a += b; }
    friend EisClass operator-(EisClass a, const EisClass& b) { return a -= b; }
    friend EisClass operator*(EisClass a, const Rational& r) { return a *= r; }
    friend EisClass operator*(const Rational& r, EisClass a) { return a *= r; }
    /// literal equality of coefficient maps; use class_equal for equality of classes
    friend bool operator==(const EisClass& a, const EisClass& b) { return a.c_ == b.c_; }

    std::string str() const;

private:
    Map c_;
    long level_ = 1;
    void add(const TorsionPoint& x, const Rational& c);
    void update_level();
};

/// Replace every symbol x by sum_{n y = x} y.
EisClass refine(const EisClass& c, long n);

/// Equality modulo distribution relations.
bool class_equal(const EisClass& c1, const EisClass& c2);

/// x | g = sum_{y g^ = x} y with g^ = det(g) g^{-1}; g is replaced by its primitive matrix.
EisClass slash_class(const EisClass& c, const GroupElem& g);
EisClass slash_class(const EisClass& c, const Mat& g);

/// Constant term sum c_x B2(x1)/2.
Rational a0_class(const EisClass& c);

/// mu_g = 2 (phi0 | g - phi0)
EisClass mu_symbolic(const GroupElem& g);
/// E(g) = mu_g | g^{-1}
EisClass transverse_E(const GroupElem& g);

/// Linear extension of S_{phi_x}(m/n) = sum_j B1((x1+j)/n) B1(m(x1+j)/n + x2).
Rational dedekind_symbol(const EisClass& c, long m, long n);

/// sum_{y g^ = 0} B2(y1), in closed form.
Rational kernel_b2_sum(const Mat& g);

/// Rational Euler 2-cocycle. Inputs with c2 < 0 are replaced by -g2.
Rational euler_rho(const Mat& g1, const Mat& g2);
/// Same cocycle assembled from class operations (a0, slash, Dedekind symbols).
Rational euler_rho_symbolic(const Mat& g1, const Mat& g2);

/// Inhomogeneous coboundary rho(g2,g3) - rho(g1g2,g3) + rho(g1,g2g3) - rho(g1,g2).
Rational euler_coboundary(const Mat& g1, const Mat& g2, const Mat& g3);

}  // namespace modhecke
