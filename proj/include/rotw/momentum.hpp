#ifndef ROTW_MOMENTUM_HPP
#define ROTW_MOMENTUM_HPP

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "rotw/numerics.hpp"

namespace rotw {

/// The momentum K(x) of a generatrix curve as a function of the distance x to
/// the axis, together with its derivative (the curve's curvature as a
/// function of x) and the maximal interval of x > 0 on which K^2 < 1.
/// Immutable after construction; this object alone determines the rotational
/// surface up to vertical translation.
struct MomentumFn {
    std::function<double(double)> eval;
    std::function<double(double)> deriv;
    Interval domain{0.0, 1.0};
    std::string label;
    std::map<std::string, double> params;
};

enum class SurfaceKind {
    HorizontalPlane,
    Cone,
    Sphere,
    Torus,
    Catenoid,
    Onducycloid,
    Pseudosphere,
    Antiparaboloid,
    Ellipsoid,
    OneSheetHyperboloid,
    TwoSheetsHyperboloid,
    Paraboloid,
    Elasticoid,
    Delaunay,
    Darboux,
};

struct CatalogEntry {
    SurfaceKind kind = SurfaceKind::Sphere;
    std::map<std::string, double> params;
    /// Flip the orientation: the sign of K is a convention.
    bool negate = false;
};

/// Closed-form momentum for a catalog surface, with analytic derivative and
/// analytically computed maximal domain.  Throws BadParams naming the violated
/// constraint.
MomentumFn catalog(const CatalogEntry& entry);

/// Momentum from a user-supplied expression.  The derivative falls back to
/// central differences and the domain is shrunk to the largest subinterval of
/// `domain_hint` containing its midpoint on which K^2 < 1.
MomentumFn from_expression(std::function<double(double)> eval, const Interval& domain_hint,
                           std::string label);

/// Homothety: K_lambda(x) = K(x / lambda), domain scaled by lambda.
MomentumFn scale(const MomentumFn& m, double lambda);

/// Largest subinterval of `hint` containing `seed` on which eval is finite
/// with eval^2 < 1.  Endpoints are located by root finding on 1 - K^2 (or by
/// bisection on finiteness where the formula itself dies).
Interval maximal_momentum_domain(const std::function<double(double)>& eval, double seed,
                                 const Interval& hint);

// -- catalog addressing (CLI surface) ---------------------------------------

std::string kind_name(SurfaceKind kind);

struct CatalogInfo {
    SurfaceKind kind;
    std::string name;
    std::vector<std::string> param_names;
    std::string description;
};

const std::vector<CatalogInfo>& catalog_listing();

/// Parses "name:key=val,key=val" (e.g. "ellipsoid:a=2,b=1"); "negate=1" flips
/// the orientation.
CatalogEntry parse_surface_spec(const std::string& text);

}  // namespace rotw

#endif
