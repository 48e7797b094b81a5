#ifndef ROTW_NUMERICS_HPP
#define ROTW_NUMERICS_HPP

#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "rotw/errors.hpp"

namespace rotw {

/// Real interval with independently open/closed ends.  Infinite endpoints are
/// allowed only when the corresponding end is open.
struct Interval {
    double lo = 0.0;
    double hi = 1.0;
    bool lo_open = true;
    bool hi_open = true;

    Interval() = default;
    Interval(double lo_, double hi_, bool lo_open_ = true, bool hi_open_ = true);

    bool contains(double x) const;
    bool interior_contains(double x) const;
    double length() const { return hi - lo; }
    bool bounded() const;
    double midpoint() const;
};

/// Accuracy/budget knobs shared by the numerical kernels.
struct Tolerance {
    double abs = 1e-10;
    double rel = 1e-10;
    std::size_t max_steps = 1000000;

    Tolerance() = default;
    Tolerance(double abs_, double rel_, std::size_t max_steps_ = 1000000);
};

/// Adaptive quadrature of f over [a, b].  Inverse-square-root endpoint
/// singularities are admissible: both halves of the interval are integrated
/// under the substitution that maps x = a + u^2 (resp. x = b - v^2), which
/// turns (x-a)^(-1/2) behaviour into a bounded integrand.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          const Tolerance& tol = Tolerance());

/// Safeguarded Brent root search on a sign-changing bracket.
double find_root(const std::function<double(double)>& f, const Interval& bracket,
                 const Tolerance& tol = Tolerance());

/// Incomplete elliptic integral of the second kind,
///   E(k, phi) = \int_0^phi sqrt(1 - k^2 sin^2 u) du,
/// odd in phi by construction.  For k > 1 the amplitude must satisfy
/// |phi| <= asin(1/k) so the integrand stays real along the whole path.
double elliptic_e_inc(double k, double phi);

/// Central finite difference with step h = cbrt(eps) * max(1, |x|).
double fd_derivative(const std::function<double(double)>& f, double x);

// ---------------------------------------------------------------------------
// Initial value problems
// ---------------------------------------------------------------------------

using StateVec = std::vector<double>;
using OdeField = std::function<StateVec(double, const StateVec&)>;

struct IvpEvent {
    /// Scalar whose sign change across a step marks an event.
    std::function<double(double, const StateVec&)> fn;
    bool terminal = false;
    std::string name;
};

struct IvpEventHit {
    std::size_t event_index = 0;
    double s = 0.0;
    StateVec y;
};

struct IvpOptions {
    std::vector<IvpEvent> events;
    /// Applied to the state after every accepted step (e.g. manifold
    /// projection onto a first integral).
    std::function<void(double, StateVec&)> postprocess;
    double max_step = std::numeric_limits<double>::infinity();
};

/// Dense ODE solution: states and derivatives at the accepted steps, with
/// cubic Hermite interpolation in between.
class Trajectory {
  public:
    std::vector<double> s;
    std::vector<StateVec> y;
    std::vector<StateVec> dy;
    std::vector<IvpEventHit> events;
    bool terminated_by_event = false;
    std::size_t terminal_event = 0;  // index into options.events, if terminated

    std::size_t size() const { return s.size(); }
    double s_begin() const { return s.front(); }
    double s_end() const { return s.back(); }

    StateVec eval(double at) const;
    double eval_component(double at, std::size_t i) const;
};

/// Embedded Dormand-Prince 5(4) integration from s0 to s_end (either
/// direction).  Event zero crossings are localized to within tol.abs; a
/// terminal event truncates the trajectory at the crossing.
Trajectory solve_ivp(const OdeField& field, double s0, StateVec y0, double s_end,
                     const Tolerance& tol = Tolerance(), IvpOptions options = IvpOptions());

// ---------------------------------------------------------------------------
// Tabulated scalar functions (dense-output interpolation)
// ---------------------------------------------------------------------------

/// Piecewise cubic Hermite table (x ascending, values and derivatives at the
/// nodes).  Evaluation outside the table extends the boundary cubic.
class HermiteTable {
  public:
    HermiteTable() = default;
    HermiteTable(std::vector<double> xs, std::vector<double> ys, std::vector<double> dys);

    double operator()(double x) const;
    double x_min() const { return xs_.front(); }
    double x_max() const { return xs_.back(); }
    std::size_t size() const { return xs_.size(); }

  private:
    std::vector<double> xs_, ys_, dys_;
};

}  // namespace rotw

#endif
