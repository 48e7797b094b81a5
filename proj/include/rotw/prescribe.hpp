#ifndef ROTW_PRESCRIBE_HPP
#define ROTW_PRESCRIBE_HPP

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rotw/generatrix.hpp"
#include "rotw/momentum.hpp"

namespace rotw {

enum class PrescribedSource { MeanCurvature, GaussCurvature };

/// A momentum built from a prescribed curvature function; `constant` is the
/// quadrature constant that parametrizes the one-parameter family and
/// `base_x` the lower limit of the quadrature.
struct PrescribedBuild {
    MomentumFn momentum;
    double constant = 0;
    PrescribedSource source = PrescribedSource::MeanCurvature;
    double base_x = 0;
    /// Set when the domain was truncated at a K -> 0 point where the meridian
    /// curvature blows up.
    std::optional<std::string> truncation;
};

/// Momentum with mean curvature H(x):
///   K(x) = (2 * \int_{base_x}^x t H(t) dt + c) / x,
/// derivative taken from the exact identity K' = 2H(x) - K(x)/x.
PrescribedBuild from_mean_curvature(std::function<double(double)> Hfn, double c, double base_x,
                                    const Tolerance& tol = Tolerance());

/// Momentum with Gauss curvature K_G(x):
///   K(x) = sign * sqrt(2 * \int_{base_x}^x t K_G(t) dt + c),
/// derivative from the exact identity K' = x K_G(x) / K(x).  The domain stops
/// where the radicand reaches zero; if K_G is nonzero there the meridian
/// curvature blows up and the truncation is recorded.
PrescribedBuild from_gauss_curvature(std::function<double(double)> Kgfn, double c,
                                     double base_x, int sign,
                                     const Tolerance& tol = Tolerance());

/// Rolling-conic profile parameters: ellipse (eps = +1, a > b) or hyperbola
/// (eps = -1) with semi-axes a, b.
struct DelaunayParams {
    double a = 1;
    double b = 1;
    int eps = 1;
};

/// Sup over sample midpoints of |(dx/dz)^2 - (4a^2x^2 - (x^2+eps b^2)^2)/(x^2+eps b^2)^2|,
/// the defining ODE of the rolling-conic profiles.  Midpoints with |dz|
/// < 0.1 |ds| (near z-stationary points) are excluded from the test range.
double delaunay_residual(const GeneratrixCurve& curve, const DelaunayParams& p);

enum class DarbouxFamily { Positive, ConicalPoint, HyperboloidType, Pseudosphere };

/// Closed-form (r, z) profile samples of the constant-Gauss-curvature
/// surfaces with K_G = K0, scale a = 1/sqrt(|K0|):
///   Positive:        r = a k cos t,  z = a E(k, t)
///   ConicalPoint:    r = a k sinh t, z = a \int_0^t sqrt(1 - k^2 cosh^2 u) du
///   HyperboloidType: r = a k cosh t, z = a \int_0^t sqrt(1 - k^2 sinh^2 u) du
///   Pseudosphere:    tractrix of height a in Cartesian form.
/// Parameter ranges are clipped where the integrands become imaginary.
std::vector<std::pair<double, double>> darboux_profile(double K0, DarbouxFamily family,
                                                       double k, int n);

struct DarbouxReport {
    DarbouxFamily family = DarbouxFamily::Positive;
    double k = 0;
    double sup_distance = 0;
    int samples = 0;
};

/// Builds the constant-K0 momentum with quadrature constant c, picks the
/// closed-form family the constant selects (c = 1 - k^2, c = 1 + k^2 or
/// c = 1), and reports the sup distance between the two profiles after
/// aligning the free vertical translation and reflection.
DarbouxReport cross_validate_darboux(double K0, double c);

std::string darboux_family_name(DarbouxFamily family);

}  // namespace rotw

#endif
