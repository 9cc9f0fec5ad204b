#pragma once

#include <string>
#include <vector>

#include "modhecke/exact.hpp"
#include "modhecke/qseries.hpp"

namespace modhecke {

/// a_0 = 1, a_1, ..., a_{n-1} with x = q^{-1/3} sum a_k q^k solving (dx/dZ)^2 = 4(x^3+1).
std::vector<Rational> solve_x_coeffs(long n);

/// x, known below order - 1/3.
QSeries solve_x(long order);

/// f -> (6/eta^4) theta(f), i.e. d/dZ with dZ = eta^4 dq/(6q).
QSeries dZ_op(const QSeries& f, long order);

struct CurveData {
    QSeries x;  // leading term q^{-1/3}
    QSeries y;  // (1/2) dZ(x)
};
CurveData curve_data(long order);

/// The listed coefficients of the weight-4 newform of level 6, q^1 .. q^7.
const std::vector<long>& s_new_coeffs();

/// Coefficients q^0 .. q^{n-1} of (1/5)(g4 - 4 g4|[2,0;0,1] - 9 g4|[3,0;0,1] + 36 g4|[6,0;0,1] - 36 S_new)
/// with g4 = E4/240 and det^{k/2} slash normalization; n <= 8.
std::vector<Rational> mu_formula_coeffs(long n);

struct IdentityCheck {
    std::string name;
    bool ok = false;
    /// exponents below this bound were compared (0 for polynomial identities)
    Rational verified_below{0};
    std::string detail;
};

/// y^2 = x^3 + 1, ratfrac, involution, mu formula, projective structure, Schwarzian chain.
std::vector<IdentityCheck> verify_curve(long order);

IdentityCheck check_weierstrass(const CurveData& c);
IdentityCheck check_ratfrac(const CurveData& c);
IdentityCheck check_involution(const CurveData& c);
IdentityCheck check_mu_formula(const CurveData& c);
IdentityCheck check_projective_structure();
IdentityCheck check_schwarzian_chain(long order);

}  // namespace modhecke
