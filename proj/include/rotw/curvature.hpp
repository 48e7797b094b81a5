#ifndef ROTW_CURVATURE_HPP
#define ROTW_CURVATURE_HPP

#include <iosfwd>
#include <utility>
#include <vector>

#include "rotw/generatrix.hpp"
#include "rotw/momentum.hpp"

namespace rotw {

/// Curvatures of the rotational surface at distance x from the axis:
/// meridian k_m = K'(x), parallel k_p = K(x)/x, with 2H = k_m + k_p and
/// K_G = k_m * k_p holding by construction.
struct CurvatureRecord {
    double x = 0;
    double k_m = 0;
    double k_p = 0;
    double H = 0;
    double K_G = 0;
};

CurvatureRecord curvatures(const MomentumFn& m, double x);

/// n records at Chebyshev-spaced abscissae over a compact window covering 99%
/// of the domain measure, shrunk where curvatures exceed 1e6 in magnitude.
std::vector<CurvatureRecord> wdiagram(const MomentumFn& m, int n);

/// The sampling window used by wdiagram (useful for matching sample sets).
Interval wdiagram_window(const MomentumFn& m);

/// Discrete curvature oracle: (x midpoint, delta(theta)/delta(s)) for each
/// consecutive sample pair of the curve.
std::vector<std::pair<double, double>> discrete_curvature(const GeneratrixCurve& c);

/// CSV rows `x,k_m,k_p,H,K_G` at 17 significant digits.
void write_curvature_csv(std::ostream& os, const std::vector<CurvatureRecord>& records);

}  // namespace rotw

#endif
