#ifndef ROTW_WEINGARTEN_HPP
#define ROTW_WEINGARTEN_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>

#include "rotw/curvature.hpp"
#include "rotw/momentum.hpp"

namespace rotw {

// A relation between the principal curvatures of a rotational surface.  Each
// variant reduces, through k_m = K'(x) and k_p = K(x)/x, to a first-order ODE
// for the momentum.

struct LinearRelation {
    double p = 1;  // k_m = p * k_p + q, p != 0
    double q = 0;
};

struct SpecialLinearRelation {
    double a = 0;  // a * K_G + 2 b * H + c = 0, a^2 + b^2 != 0
    double b = 0;
    double c = 0;
};

struct CubicRelation {
    double mu = 1;  // k_m = mu * k_p^3, mu != 0
};

struct HyperbolaRelation {
    double mu = 1;  // k_m^2 - 2 k_p k_m + mu = 0, mu != 0
};

enum class PrincipalDirection { Meridian, Parallel };

struct ConstPrincipalRelation {
    PrincipalDirection which = PrincipalDirection::Meridian;
    double value = 0;
};

struct GenericRelation {
    std::function<double(double, double)> F;  // K' = F(x, K)
};

using WRelation = std::variant<LinearRelation, SpecialLinearRelation, CubicRelation,
                               HyperbolaRelation, ConstPrincipalRelation, GenericRelation>;

/// Signed residual of the defining relation at a curvature record; zero means
/// the record satisfies it.  Generic relations have no pointwise residual.
double residual(const WRelation& r, const CurvatureRecord& rec);

/// k_m = p k_p + q:  K(x) = q x/(1-p) + c x^p  (p != 1),
///                   K(x) = q x ln x + c x      (p == 1).
MomentumFn solve_linear(double p, double q, double c);

/// a K_G + 2 b H + c = 0 with integration constant d; the relation integrates
/// exactly to a K^2 + 2 b x K + c x^2 = d, solved for the chosen sign branch
///   K(x) = (-b x + sign * sqrt((b^2 - a c) x^2 + a d)) / a.
MomentumFn solve_special_linear(double a, double b, double c, double d, int sign);

/// k_m = mu k_p^3:  K(x) = x / sqrt(mu + c x^2)  (+ branch).
MomentumFn solve_cubic(double mu, double c);

enum class QuadricKind {
    Plane,
    Sphere,
    EllipsoidOfRevolution,
    TwoSheetsHyperboloid,
    ParaboloidOfRevolution,
    OneSheetHyperboloid,
};

struct QuadricClass {
    QuadricKind kind = QuadricKind::Sphere;
    std::map<std::string, double> params;
};

/// Identifies which quadric of revolution the cubic-relation momentum with
/// constants (mu, c) determines.
QuadricClass classify_cubic(double mu, double c);

std::string quadric_name(QuadricKind kind);

/// Catalog entry evaluating to the same momentum as solve_cubic(mu, c) when
/// the class came from classify_cubic(mu, c).
CatalogEntry to_catalog_entry(const QuadricClass& q);

/// k_m^2 - 2 k_p k_m + mu = 0, non-constant branch parametrized by the
/// integration constant a_coef > 0:  K(x) = a_coef x^2 + mu/(4 a_coef),
/// i.e. the elasticoid of modulus k = -mu/(4 a_coef).
MomentumFn solve_hyperbola(double mu, double a_coef);

/// Constant branch of the hyperbola relation (mu > 0): K(x) = sqrt(mu) x,
/// the sphere of radius 1/sqrt(mu).
MomentumFn hyperbola_sphere_branch(double mu);

/// Stand-in for the one rotational surface with constant x, which carries no
/// momentum function.
struct CylinderMarker {
    double radius = 1;  // 1 / k_p
};

struct ConstPrincipalResult {
    std::optional<MomentumFn> momentum;
    std::optional<CylinderMarker> cylinder;
};

/// Constant principal curvature.  Meridian: K(x) = value*x + c (sphere, torus,
/// cone or plane).  Parallel: K(x) = value*x, plus the cylinder marker for the
/// excluded x-constant solution.
ConstPrincipalResult solve_const_principal(PrincipalDirection which, double value, double c);

/// Numerical solve of K' = F(x, K) from (x0, K0), tabulated over x_span and
/// truncated where K^2 -> 1 or F blows up.  The returned derivative is
/// F(x, K(x)), exact on the solution.
MomentumFn solve_generic(std::function<double(double, double)> F, double x0, double K0,
                         const Interval& x_span, const Tolerance& tol = Tolerance());

// -- relation mini-language (CLI) --------------------------------------------

struct ParsedRelation {
    std::string family;  // linear | special | cubic | hyperbola | const
    std::map<std::string, double> params;
    WRelation relation() const;
};

/// Parses `linear:p=..,q=..`, `special:a=..,b=..,c=..,d=..`, `cubic:mu=..`,
/// `hyperbola:mu=..`, `const:meridian=..` / `const:parallel=..`.
ParsedRelation parse_relation_spec(const std::string& text);

}  // namespace rotw

#endif
