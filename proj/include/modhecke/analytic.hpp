#pragma once

#include <complex>
#include <optional>
#include <random>
#include <stdexcept>

#include "modhecke/exact.hpp"
#include "modhecke/qseries.hpp"

namespace modhecke {

using Complex = std::complex<double>;

/// Raised when a numeric routine would leave its domain of convergence or
/// when a quantity that must be integral or a root of unity is not.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Mobius action of an integer matrix with positive determinant.
Complex mobius(const Mat& g, Complex z);

/// sum c e^{2 pi i e z} over the terms of f with exponent below order
/// (all stored terms when order is absent).
Complex eval_q(const QSeries& f, Complex z, std::optional<Rational> order = std::nullopt);

/// termwise antiderivative a0 z + sum_{e != 0} c q^e / (2 pi i e);
/// drop_constant omits the a0 z part.
Complex eval_q_primitive(const QSeries& f, Complex z, bool drop_constant = false);

/// eta(z)^4 from the pentagonal series
Complex eta4_numeric(Complex z);
/// E2(z) = 1 - 24 sum sigma_1(n) q^n
Complex e2_numeric(Complex z);
/// log Delta(z) = 2 pi i z + 24 sum log(1 - q^n), continuous on H
Complex log_delta(Complex z);

/// Z(z) = (2 pi i / 6) int_{i infty}^z eta^4 dz
Complex big_Z(Complex z);
/// L(g) = Z(g z) - chi(g) Z(z) at the given base point, or at one chosen so that
/// both z and g z lie well inside H.
Complex period_L(const Mat& g, std::optional<Complex> z = std::nullopt);
/// 2 L0 from |L([[2,1],[1,1]])|
double two_L0();

/// eta^4(g z) j(g,z)^{-2} / eta^4(z) rounded to a 12th root of unity
Cyclotomic character_chi(const Mat& g);

/// signed hyperbolic area of the geodesic triangle, counterclockwise positive
double signed_area(Complex z1, Complex z2, Complex z3);
/// Area(z0, g1 z0, g1 g2 z0) / (2 pi)
double area_cocycle(const Mat& g1, const Mat& g2, Complex z0);

/// (1/(12 pi i)) (log psi_{g1}(g2 z0) - log psi_{g1}(z0)), psi_g = (Delta|g)/Delta
Complex tau_cocycle(const Mat& g1, const Mat& g2, Complex z0);
/// log j(g,z)^2 with the branch cut on [0, infinity)
Complex log_j2(const Mat& g, Complex z);
/// (log j2(g1 g2, z0) - log j2(g1, g2 z0) - log j2(g2, z0)) / (2 pi i) before rounding
Complex c_cocycle_raw(const Mat& g1, const Mat& g2, Complex z0);
/// the integer c(g1, g2); throws NumericError if the raw value is not within 1e-6 of one
long c_cocycle(const Mat& g1, const Mat& g2, Complex z0);
/// 12 pi i tau rebuilt from log Delta, log j2 and c
Complex tau_from_c(const Mat& g1, const Mat& g2, Complex z0);

/// int omega0 along the geodesic segment [p, q], with
/// omega0 = Re(E2/6 dz) - dx / (2 pi y)
double omega0_integral(Complex p, Complex q);
/// beta(g) = int_{[z0, g z0]} omega0
double beta_omega0(const Mat& g, Complex z0);

/// Re tau + A - sign * (beta(g1) - beta(g1 g2) + beta(g2)) for sign = +1 or -1
double m1_residual(const Mat& g1, const Mat& g2, Complex z0, int sign);

/// three-term expression for theta(g1, g2); both matrices upper triangular
Complex theta_numeric(const Mat& g1, const Mat& g2, Complex z0 = Complex(0, 1));

/// (2 pi i)^{-2} {Z; z} from a 5-point stencil of big_Z
Complex schwarzian_Z_numeric(Complex z, double h = 1e-3);

/// random element of SL2(Z) with entries bounded by max_entry
Mat sample_sl2(std::mt19937_64& rng, long max_entry);

}  // namespace modhecke
