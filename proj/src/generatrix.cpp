#include "rotw/generatrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace rotw {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kCurvatureCap = 1e6;

double hermite_scalar(double s0, double y0, double d0, double s1, double y1, double d1,
                      double at) {
    const double h = s1 - s0;
    const double t = (at - s0) / h;
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * h * d0 +
           (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * h * d1;
}

double hermite_scalar_deriv(double s0, double y0, double d0, double s1, double y1, double d1,
                            double at) {
    const double h = s1 - s0;
    const double t = (at - s0) / h;
    const double t2 = t * t;
    return ((6 * t2 - 6 * t) * y0 + (3 * t2 - 4 * t + 1) * h * d0 +
            (-6 * t2 + 6 * t) * y1 + (3 * t2 - 2 * t) * h * d1) /
           h;
}

}  // namespace

GeneratrixCurve::GeneratrixCurve(std::vector<CurveState> samples,
                                 std::vector<std::array<double, 3>> derivs, MomentumFn momentum,
                                 std::vector<double> turning_points,
                                 std::optional<CurveExit> exit)
    : samples_(std::move(samples)),
      derivs_(std::move(derivs)),
      momentum_(std::move(momentum)),
      turning_points_(std::move(turning_points)),
      exit_(std::move(exit)) {
    if (samples_.empty() || samples_.size() != derivs_.size())
        throw BadParams("generatrix: samples/derivs mismatch");
}

CurveState GeneratrixCurve::state_at(double s) const {
    if (samples_.size() == 1) return samples_.front();
    if (s < s_min() || s > s_max())
        throw BadParams("generatrix: state_at argument outside the sampled span");
    std::size_t lo = 0, hi = samples_.size() - 1;
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        if (s < samples_[mid].s)
            hi = mid;
        else
            lo = mid;
    }
    if (s == samples_[lo].s) return samples_[lo];
    if (s == samples_[hi].s) return samples_[hi];
    const CurveState& p = samples_[lo];
    const CurveState& q = samples_[hi];
    const auto& dp = derivs_[lo];
    const auto& dq = derivs_[hi];
    CurveState out;
    out.s = s;
    out.x = hermite_scalar(p.s, p.x, dp[0], q.s, q.x, dq[0], s);
    out.z = hermite_scalar(p.s, p.z, dp[1], q.s, q.z, dq[1], s);
    out.theta = hermite_scalar(p.s, p.theta, dp[2], q.s, q.theta, dq[2], s);
    return out;
}

GeneratrixCurve reconstruct(const MomentumFn& m, double x0, double z0, int branch,
                            double s_span, const Tolerance& tol) {
    if (!(s_span > 0)) throw BadParams("reconstruct: requires s_span > 0");
    if (branch != 1 && branch != -1) throw BadParams("reconstruct: branch must be +1 or -1");
    const double slack = 1e-9 * std::max(1.0, std::fabs(x0));
    if (!(x0 >= m.domain.lo - slack && x0 <= m.domain.hi + slack))
        throw OutOfDomain("reconstruct: x0 outside the momentum domain closure");

    double K0 = m.eval(x0);
    if (!std::isfinite(K0)) throw OutOfDomain("reconstruct: K(x0) is not finite");
    if (std::fabs(K0) > 1 + 1e-9)
        throw OutOfDomain("reconstruct: K(x0)^2 > 1");
    K0 = std::clamp(K0, -1.0, 1.0);
    const double theta0 = branch > 0 ? std::asin(K0) : kPi - std::asin(K0);

    auto eval = m.eval;
    auto deriv = m.deriv;
    OdeField field = [deriv](double, const StateVec& y) {
        return StateVec{std::cos(y[2]), std::sin(y[2]), deriv(y[0])};
    };

    IvpOptions opts;
    const double eps_axis = std::max(tol.abs, 1e-12);

    opts.events.push_back({[](double, const StateVec& y) { return std::cos(y[2]); }, false,
                           "turning"});
    opts.events.push_back(
        {[eps_axis](double, const StateVec& y) { return y[0] - eps_axis; }, true, "axis"});
    opts.events.push_back({[deriv](double, const StateVec& y) {
                               return kCurvatureCap - std::fabs(deriv(y[0]));
                           },
                           true, "curvature-singularity"});

    // Finite domain endpoints that are neither turning points nor curvature
    // singularities terminate the flow when crossed (e.g. the edge of a
    // tabulated momentum).
    for (int side = 0; side < 2; ++side) {
        const double e = side == 0 ? m.domain.lo : m.domain.hi;
        if (!std::isfinite(e) || e <= eps_axis) continue;
        const double delta = 1e-9 * std::max(1.0, std::fabs(e));
        const double probe = side == 0 ? e + delta : e - delta;
        const double k_at = m.eval(probe);
        if (std::isfinite(k_at) && std::fabs(k_at) >= 1 - 1e-6) continue;  // turning end
        const double kp_at = m.deriv(probe);
        if (!std::isfinite(kp_at) || std::fabs(kp_at) > 0.5 * kCurvatureCap) continue;
        opts.events.push_back({[e](double, const StateVec& y) { return y[0] - e; }, true,
                               side == 0 ? "domain-edge-lo" : "domain-edge-hi"});
    }

    // Keep the trajectory on the manifold sin(theta) = K(x): one Newton step
    // per accepted node, applied to whichever variable is well conditioned.
    opts.postprocess = [eval, deriv](double, StateVec& y) {
        const double k = eval(y[0]);
        if (!std::isfinite(k)) return;
        const double r = std::sin(y[2]) - k;
        if (!(std::fabs(r) < 1e-3)) return;
        const double ct = std::cos(y[2]);
        if (std::fabs(ct) >= 0.1) {
            y[2] -= r / ct;
            return;
        }
        const double kp = deriv(y[0]);
        if (std::isfinite(kp) && std::fabs(kp) >= 0.1) y[0] += r / kp;
    };

    std::vector<std::string> event_reasons;
    for (const auto& ev : opts.events) {
        if (ev.name == "axis")
            event_reasons.push_back("axis reached");
        else if (ev.name == "curvature-singularity")
            event_reasons.push_back("curvature singularity at the domain boundary");
        else if (ev.name == "turning")
            event_reasons.push_back("turning point");
        else
            event_reasons.push_back("domain edge reached");
    }

    Trajectory traj = solve_ivp(field, 0.0, {x0, 0.0, theta0}, s_span, tol, std::move(opts));

    std::vector<CurveState> samples(traj.size());
    std::vector<std::array<double, 3>> derivs(traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i) {
        samples[i] = {traj.s[i], traj.y[i][0], z0 + traj.y[i][1], traj.y[i][2]};
        derivs[i] = {traj.dy[i][0], traj.dy[i][1], traj.dy[i][2]};
    }

    std::vector<double> turning;
    if (std::fabs(std::cos(theta0)) < 1e-12) turning.push_back(0.0);
    for (const auto& hit : traj.events)
        if (hit.event_index == 0) turning.push_back(hit.s);

    std::optional<CurveExit> exit;
    if (traj.terminated_by_event)
        exit = CurveExit{event_reasons[traj.terminal_event], traj.s.back()};
    return GeneratrixCurve(std::move(samples), std::move(derivs), m, std::move(turning),
                           std::move(exit));
}

std::vector<std::pair<double, double>> graph_z_of_x(const MomentumFn& m, double x_lo,
                                                    double x_hi, int sign, int n) {
    if (n < 2) throw BadParams("graph_z_of_x: requires n >= 2");
    if (!(x_lo < x_hi)) throw BadParams("graph_z_of_x: requires x_lo < x_hi");
    if (sign != 1 && sign != -1) throw BadParams("graph_z_of_x: sign must be +1 or -1");
    const double slack = 1e-9 * std::max({1.0, std::fabs(x_lo), std::fabs(x_hi)});
    if (!(x_lo >= m.domain.lo - slack && x_hi <= m.domain.hi + slack))
        throw OutOfDomain("graph_z_of_x: span outside the momentum domain closure");

    auto eval = m.eval;
    for (int i = 1; i <= 1000; ++i) {
        const double x = x_lo + (x_hi - x_lo) * (static_cast<double>(i) / 1001.0);
        const double k = eval(x);
        if (std::isfinite(k) && 1 - k * k <= 0)
            throw TurningPointInside("graph_z_of_x: 1 - K^2 vanishes inside the span");
    }

    auto integrand = [eval](double x) {
        const double k = eval(x);
        const double g = 1 - k * k;
        if (g <= 0) return k > 0 ? std::numeric_limits<double>::infinity()
                                 : -std::numeric_limits<double>::infinity();
        return k / std::sqrt(g);
    };

    const Tolerance quad_tol(1e-12, 1e-12, 1000000);
    std::vector<std::pair<double, double>> out;
    out.reserve(n);
    out.emplace_back(x_lo, 0.0);
    double z = 0.0;
    for (int i = 1; i < n; ++i) {
        const double a = x_lo + (x_hi - x_lo) * (static_cast<double>(i - 1) / (n - 1));
        const double b =
            i == n - 1 ? x_hi : x_lo + (x_hi - x_lo) * (static_cast<double>(i) / (n - 1));
        try {
            z += integrate_adaptive(integrand, a, b, quad_tol);
        } catch (const NonFinite&) {
            throw TurningPointInside("graph_z_of_x: 1 - K^2 vanishes inside the span");
        }
        out.emplace_back(b, sign * z);
    }
    return out;
}

GeneratrixCurve resample(const GeneratrixCurve& c, int n) {
    if (n < 2) throw BadParams("resample: requires n >= 2");
    const auto& src = c.samples();
    const auto& sd = c.derivs();
    const double s0 = c.s_min();
    const double s1 = c.s_max();

    std::vector<CurveState> samples(n);
    std::vector<std::array<double, 3>> derivs(n);
    std::size_t seg = 0;
    for (int i = 0; i < n; ++i) {
        const double s =
            i == n - 1 ? s1 : s0 + (s1 - s0) * (static_cast<double>(i) / (n - 1));
        while (seg + 2 < src.size() && src[seg + 1].s <= s) ++seg;
        const CurveState& p = src[seg];
        const CurveState& q = src[seg + 1];
        if (s == p.s) {
            samples[i] = p;
            derivs[i] = sd[seg];
            continue;
        }
        if (s == q.s) {
            samples[i] = q;
            derivs[i] = sd[seg + 1];
            continue;
        }
        CurveState st;
        st.s = s;
        st.x = hermite_scalar(p.s, p.x, sd[seg][0], q.s, q.x, sd[seg + 1][0], s);
        st.z = hermite_scalar(p.s, p.z, sd[seg][1], q.s, q.z, sd[seg + 1][1], s);
        st.theta = hermite_scalar(p.s, p.theta, sd[seg][2], q.s, q.theta, sd[seg + 1][2], s);
        samples[i] = st;
        derivs[i] = {std::cos(st.theta), std::sin(st.theta),
                     hermite_scalar_deriv(p.s, p.theta, sd[seg][2], q.s, q.theta,
                                          sd[seg + 1][2], s)};
    }

    // Turning points within the resampled span are inherited.
    std::vector<double> turning;
    for (double t : c.turning_points())
        if (t >= s0 && t <= s1) turning.push_back(t);
    return GeneratrixCurve(std::move(samples), std::move(derivs), c.momentum(),
                           std::move(turning), c.exit());
}

void write_curve_csv(std::ostream& os, const GeneratrixCurve& c) {
    os << "s,x,z,theta\n";
    char buf[160];
    for (const auto& st : c.samples()) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g\n", st.s, st.x, st.z,
                      st.theta);
        os << buf;
    }
}

}  // namespace rotw
