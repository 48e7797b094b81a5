#ifndef ROTW_GENERATRIX_HPP
#define ROTW_GENERATRIX_HPP

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rotw/momentum.hpp"
#include "rotw/numerics.hpp"

namespace rotw {

/// One point of an arc-length parametrized generatrix: position (x, z) and
/// tangent angle theta, with sin(theta) = K(x) as the first integral.
struct CurveState {
    double s = 0;
    double x = 0;
    double z = 0;
    double theta = 0;
};

/// Why a reconstruction stopped before exhausting its arc-length span.
struct CurveExit {
    std::string reason;
    double s = 0;
};

/// Arc-length sampled generatrix reconstructed from a momentum.  Samples are
/// the accepted integrator nodes; cubic Hermite interpolation provides states
/// in between.
class GeneratrixCurve {
  public:
    GeneratrixCurve(std::vector<CurveState> samples, std::vector<std::array<double, 3>> derivs,
                    MomentumFn momentum, std::vector<double> turning_points,
                    std::optional<CurveExit> exit);

    const std::vector<CurveState>& samples() const { return samples_; }
    const std::vector<std::array<double, 3>>& derivs() const { return derivs_; }
    const MomentumFn& momentum() const { return momentum_; }
    const std::vector<double>& turning_points() const { return turning_points_; }
    const std::optional<CurveExit>& exit() const { return exit_; }

    double s_min() const { return samples_.front().s; }
    double s_max() const { return samples_.back().s; }

    /// Interpolated state; `s` must lie within [s_min, s_max].
    CurveState state_at(double s) const;

  private:
    std::vector<CurveState> samples_;
    std::vector<std::array<double, 3>> derivs_;  // (x', z', theta') at samples
    MomentumFn momentum_;
    std::vector<double> turning_points_;
    std::optional<CurveExit> exit_;
};

/// Reconstructs the unit-speed generatrix determined by `m` through (x0, z0),
/// integrating the frame system x' = cos(theta), z' = sin(theta),
/// theta' = K'(x) with theta0 = asin(K(x0)) on the branch whose cos(theta0)
/// carries the requested sign.  Turning points (cos(theta) = 0) are recorded
/// and traversed; the curve is truncated (with the reason recorded on the
/// result) when it reaches the axis or a curvature singularity of the
/// momentum formula.
GeneratrixCurve reconstruct(const MomentumFn& m, double x0, double z0, int branch,
                            double s_span, const Tolerance& tol = Tolerance());

/// Graph form z(x) on a monotone branch:
///   z(x) = sign * integral_{x_lo}^{x} K(t) / sqrt(1 - K(t)^2) dt,
/// with z(x_lo) = 0.  Inverse-square-root behaviour at the span endpoints
/// (turning points) is admissible; a turning point strictly inside throws.
std::vector<std::pair<double, double>> graph_z_of_x(const MomentumFn& m, double x_lo,
                                                    double x_hi, int sign, int n);

/// n states equally spaced in arc length, interpolated from the dense output.
GeneratrixCurve resample(const GeneratrixCurve& c, int n);

/// CSV rows `s,x,z,theta` at 17 significant digits.
void write_curve_csv(std::ostream& os, const GeneratrixCurve& c);

}  // namespace rotw

#endif
