#include "rotw/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace rotw {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = 3.14159265358979323846;
}  // namespace

// ---------------------------------------------------------------------------
// Interval / Tolerance
// ---------------------------------------------------------------------------

Interval::Interval(double lo_, double hi_, bool lo_open_, bool hi_open_)
    : lo(lo_), hi(hi_), lo_open(lo_open_), hi_open(hi_open_) {
    if (std::isnan(lo) || std::isnan(hi)) throw BadParams("interval: NaN endpoint");
    if (!(lo < hi)) throw BadParams("interval: requires lo < hi");
    if (std::isinf(lo) && !lo_open) throw BadParams("interval: infinite lo must be open");
    if (std::isinf(hi) && !hi_open) throw BadParams("interval: infinite hi must be open");
}

bool Interval::contains(double x) const {
    if (std::isnan(x)) return false;
    if (lo_open ? !(x > lo) : !(x >= lo)) return false;
    if (hi_open ? !(x < hi) : !(x <= hi)) return false;
    return true;
}

bool Interval::interior_contains(double x) const { return !std::isnan(x) && x > lo && x < hi; }

bool Interval::bounded() const { return std::isfinite(lo) && std::isfinite(hi); }

double Interval::midpoint() const {
    if (bounded()) return 0.5 * (lo + hi);
    if (std::isfinite(lo)) return lo + std::max(1.0, std::fabs(lo));
    if (std::isfinite(hi)) return hi - std::max(1.0, std::fabs(hi));
    return 0.0;
}

Tolerance::Tolerance(double abs_, double rel_, std::size_t max_steps_)
    : abs(abs_), rel(rel_), max_steps(max_steps_) {
    if (!(abs >= 4 * kEps)) throw BadParams("tolerance: abs must be >= 4*eps");
    if (!(rel >= 4 * kEps)) throw BadParams("tolerance: rel must be >= 4*eps");
    if (max_steps == 0) throw BadParams("tolerance: max_steps must be positive");
}

// ---------------------------------------------------------------------------
// Adaptive quadrature (Gauss-Kronrod 7-15, globally adaptive)
// ---------------------------------------------------------------------------

namespace {

// QUADPACK dqk15 nodes and weights.
constexpr double kXgk[8] = {
    0.99145537112081263921, 0.94910791234275852453, 0.86486442335976907279,
    0.74153118559939443986, 0.58608723546769113030, 0.40584515137739716691,
    0.20778495500789846760, 0.0};
constexpr double kWgk[8] = {
    0.02293532201052922496, 0.06309209262997855329, 0.10479001032225018384,
    0.14065325971552591875, 0.16900472663926790283, 0.19035057806478540991,
    0.20443294007529889241, 0.20948214108472782801};
constexpr double kWg[4] = {
    0.12948496616886969327, 0.27970539148927666790, 0.38183005050511894495,
    0.41795918367346938776};

struct GkResult {
    double integral;
    double error;
};

GkResult gk15(const std::function<double(double)>& g, double lo, double hi) {
    const double c = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    double fc = g(c);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double f1 = g(c - dx);
        const double f2 = g(c + dx);
        resk += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
    }
    GkResult r;
    r.integral = resk * half;
    r.error = std::fabs((resk - resg) * half);
    return r;
}

struct Panel {
    double lo, hi, integral, error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

// Globally adaptive refinement to an absolute error target.
double adaptive_abs(const std::function<double(double)>& g, double lo, double hi,
                    double eps_abs, std::size_t max_panels, std::size_t& panels_used) {
    std::priority_queue<Panel> queue;
    GkResult first = gk15(g, lo, hi);
    queue.push({lo, hi, first.integral, first.error});
    double total = first.integral;
    double err_total = first.error;
    ++panels_used;
    while (err_total > eps_abs) {
        Panel worst = queue.top();
        const double width = worst.hi - worst.lo;
        if (panels_used >= max_panels)
            throw NonConvergence("integrate_adaptive: panel budget exhausted");
        if (width <= 8 * kEps * (std::fabs(worst.lo) + std::fabs(worst.hi)) + 1e-300)
            throw NonConvergence("integrate_adaptive: interval no longer divisible");
        queue.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        GkResult a = gk15(g, worst.lo, mid);
        GkResult b = gk15(g, mid, worst.hi);
        total += a.integral + b.integral - worst.integral;
        err_total += a.error + b.error - worst.error;
        queue.push({worst.lo, mid, a.integral, a.error});
        queue.push({mid, worst.hi, b.integral, b.error});
        ++panels_used;
    }
    return total;
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          const Tolerance& tol) {
    if (std::isnan(a) || std::isnan(b) || !std::isfinite(a) || !std::isfinite(b))
        throw NonFinite("integrate_adaptive: endpoints must be finite");
    if (a > b) throw BadParams("integrate_adaptive: requires a <= b");
    if (a == b) return 0.0;

    const double mid = 0.5 * (a + b);
    // Values of f closer to an endpoint than a few ulps cannot be resolved;
    // a non-finite sample in that corner is the admissible endpoint
    // singularity itself, whose mass in the transformed variable is nil.
    const double corner_a = 64 * kEps * std::max(1.0, std::fabs(a));
    const double corner_b = 64 * kEps * std::max(1.0, std::fabs(b));

    auto left = [&f, a, corner_a](double u) {
        const double value = 2 * u * f(a + u * u);
        if (!std::isfinite(value)) {
            if (u * u <= corner_a) return 0.0;
            throw NonFinite("integrate_adaptive: integrand not finite in the interior");
        }
        return value;
    };
    auto right = [&f, b, corner_b](double v) {
        const double value = 2 * v * f(b - v * v);
        if (!std::isfinite(value)) {
            if (v * v <= corner_b) return 0.0;
            throw NonFinite("integrate_adaptive: integrand not finite in the interior");
        }
        return value;
    };

    const double len_left = std::sqrt(mid - a);
    const double len_right = std::sqrt(b - mid);

    // Rough whole-interval estimate fixes the relative-error target.
    const double rough =
        gk15(left, 0.0, len_left).integral + gk15(right, 0.0, len_right).integral;
    const double goal = std::max(tol.abs, tol.rel * std::fabs(rough));

    std::size_t panels = 0;
    const double i_left = adaptive_abs(left, 0.0, len_left, 0.5 * goal, tol.max_steps, panels);
    const double i_right = adaptive_abs(right, 0.0, len_right, 0.5 * goal, tol.max_steps, panels);
    return i_left + i_right;
}

// ---------------------------------------------------------------------------
// Root finding (Brent)
// ---------------------------------------------------------------------------

double find_root(const std::function<double(double)>& f, const Interval& bracket,
                 const Tolerance& tol) {
    double a = bracket.lo;
    double b = bracket.hi;
    double fa = f(a);
    double fb = f(b);
    if (!std::isfinite(fa) || !std::isfinite(fb))
        throw NonFinite("find_root: f not finite at bracket endpoints");
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0) == (fb > 0)) throw NoBracket("find_root: f has the same sign at both endpoints");

    double c = a, fc = fa;
    double d = b - a, e = d;
    for (std::size_t iter = 0; iter < tol.max_steps; ++iter) {
        if ((fb > 0) == (fc > 0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::fabs(fc) < std::fabs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol1 = 2 * kEps * std::fabs(b) + 0.5 * tol.abs;
        const double xm = 0.5 * (c - b);
        if (std::fabs(xm) <= tol1 || fb == 0.0 || std::fabs(fb) <= tol.abs) return b;
        if (std::fabs(e) >= tol1 && std::fabs(fa) > std::fabs(fb)) {
            // Inverse quadratic interpolation / secant, with bisection bounds.
            const double s = fb / fa;
            double p, q;
            if (a == c) {
                p = 2 * xm * s;
                q = 1 - s;
            } else {
                const double qq = fa / fc;
                const double r = fb / fc;
                p = s * (2 * xm * qq * (qq - r) - (b - a) * (r - 1));
                q = (qq - 1) * (r - 1) * (s - 1);
            }
            if (p > 0) q = -q;
            p = std::fabs(p);
            const double min1 = 3 * xm * q - std::fabs(tol1 * q);
            const double min2 = std::fabs(e * q);
            if (2 * p < std::min(min1, min2)) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        if (std::fabs(d) > tol1)
            b += d;
        else
            b += (xm > 0 ? tol1 : -tol1);
        fb = f(b);
        if (!std::isfinite(fb)) throw NonFinite("find_root: f not finite inside bracket");
    }
    throw NonConvergence("find_root: iteration budget exhausted");
}

// ---------------------------------------------------------------------------
// Incomplete elliptic integral of the second kind
// ---------------------------------------------------------------------------

double elliptic_e_inc(double k, double phi) {
    if (!(k >= 0)) throw DomainError("elliptic_e_inc: modulus must be >= 0");
    if (!std::isfinite(phi)) throw DomainError("elliptic_e_inc: amplitude must be finite");
    if (phi == 0.0) return phi;
    if (phi < 0.0) return -elliptic_e_inc(k, -phi);

    const Tolerance quad_tol(1e-13, 1e-13, 1000000);
    const double k2 = k * k;
    auto integrand = [k2](double u) {
        const double su = std::sin(u);
        return std::sqrt(std::max(1.0 - k2 * su * su, 0.0));
    };

    if (k > 1.0) {
        const double phi_max = std::asin(1.0 / k);
        if (phi > phi_max * (1 + 1e-12) + 1e-15)
            throw DomainError("elliptic_e_inc: integrand imaginary before the amplitude");
        return integrate_adaptive(integrand, 0.0, std::min(phi, phi_max), quad_tol);
    }

    if (phi > 0.5 * kPi) {
        // sin^2 has period pi: E(k, n*pi + r) = 2n E(k, pi/2) + E(k, r).
        const double n = std::nearbyint(phi / kPi);
        const double r = phi - n * kPi;
        const double complete = integrate_adaptive(integrand, 0.0, 0.5 * kPi, quad_tol);
        return 2 * n * complete + elliptic_e_inc(k, r);
    }
    return integrate_adaptive(integrand, 0.0, phi, quad_tol);
}

// ---------------------------------------------------------------------------
// Finite differences
// ---------------------------------------------------------------------------

double fd_derivative(const std::function<double(double)>& f, double x) {
    static const double kCbrtEps = std::cbrt(kEps);
    const double h = kCbrtEps * std::max(1.0, std::fabs(x));
    const double xp = x + h;
    const double xm = x - h;
    const double d = (f(xp) - f(xm)) / (xp - xm);
    if (!std::isfinite(d)) throw NonFinite("fd_derivative: non-finite difference quotient");
    return d;
}

// ---------------------------------------------------------------------------
// Dormand-Prince 5(4) with dense output and events
// ---------------------------------------------------------------------------

namespace {

constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561,
                 A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247,
                 A64 = 49.0 / 176, A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192, B5 = -2187.0 / 6784,
                 B6 = 11.0 / 84;
constexpr double E1 = 71.0 / 57600, E3 = -71.0 / 16695, E4 = 71.0 / 1920,
                 E5 = -17253.0 / 339200, E6 = 22.0 / 525, E7 = -1.0 / 40;

bool finite_vec(const StateVec& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

StateVec hermite(double s0, const StateVec& y0, const StateVec& d0, double s1,
                 const StateVec& y1, const StateVec& d1, double at) {
    const double h = s1 - s0;
    const double t = (at - s0) / h;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    StateVec out(y0.size());
    for (std::size_t i = 0; i < y0.size(); ++i)
        out[i] = h00 * y0[i] + h10 * h * d0[i] + h01 * y1[i] + h11 * h * d1[i];
    return out;
}

int sign_of(double v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

}  // namespace

StateVec Trajectory::eval(double at) const {
    if (s.size() == 1) return y.front();
    const bool ascending = s.back() >= s.front();
    std::size_t lo = 0, hi = s.size() - 1;
    // Exact node hits return the stored state by construction (t = 0 or 1).
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        const bool go_left = ascending ? (at < s[mid]) : (at > s[mid]);
        if (go_left)
            hi = mid;
        else
            lo = mid;
    }
    return hermite(s[lo], y[lo], dy[lo], s[hi], y[hi], dy[hi], at);
}

double Trajectory::eval_component(double at, std::size_t i) const { return eval(at)[i]; }

Trajectory solve_ivp(const OdeField& field, double s0, StateVec y0, double s_end,
                     const Tolerance& tol, IvpOptions options) {
    const std::size_t n = y0.size();
    Trajectory out;
    if (options.postprocess) options.postprocess(s0, y0);
    StateVec f0 = field(s0, y0);
    if (f0.size() != n) throw BadParams("solve_ivp: field dimension mismatch");
    if (!finite_vec(f0) || !finite_vec(y0))
        throw NonFinite("solve_ivp: field not finite at the initial state");

    out.s.push_back(s0);
    out.y.push_back(y0);
    out.dy.push_back(f0);
    if (s_end == s0) return out;

    const double dir = s_end > s0 ? 1.0 : -1.0;
    const double span = std::fabs(s_end - s0);

    // Starting step size, following the usual two-probe heuristic.
    double h;
    {
        double d0 = 0, d1 = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double sc = tol.abs + tol.rel * std::fabs(y0[i]);
            d0 += (y0[i] / sc) * (y0[i] / sc);
            d1 += (f0[i] / sc) * (f0[i] / sc);
        }
        d0 = std::sqrt(d0 / n);
        d1 = std::sqrt(d1 / n);
        double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
        h0 = std::min(h0, span);
        StateVec y1(n);
        for (std::size_t i = 0; i < n; ++i) y1[i] = y0[i] + dir * h0 * f0[i];
        StateVec f1 = field(s0 + dir * h0, y1);
        double d2 = 0;
        if (finite_vec(f1)) {
            for (std::size_t i = 0; i < n; ++i) {
                const double sc = tol.abs + tol.rel * std::fabs(y0[i]);
                d2 += ((f1[i] - f0[i]) / sc) * ((f1[i] - f0[i]) / sc);
            }
            d2 = std::sqrt(d2 / n) / h0;
        } else {
            d2 = 1e10;
        }
        double h1;
        if (std::max(d1, d2) <= 1e-15)
            h1 = std::max(1e-6, h0 * 1e-3);
        else
            h1 = std::pow(0.01 / std::max(d1, d2), 0.2);
        h = dir * std::min({100 * h0, h1, span, options.max_step});
    }

    const std::size_t n_events = options.events.size();
    std::vector<double> g_prev(n_events);
    std::vector<double> g_last_hit(n_events, std::numeric_limits<double>::quiet_NaN());
    for (std::size_t e = 0; e < n_events; ++e) g_prev[e] = options.events[e].fn(s0, y0);

    StateVec y = y0;
    StateVec k1 = f0;
    double s = s0;
    std::size_t steps = 0;

    StateVec k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n), yerr(n);

    while ((s_end - s) * dir > 0) {
        if (++steps > tol.max_steps) throw NonConvergence("solve_ivp: step budget exhausted");
        if (std::fabs(h) < 16 * kEps * std::max(std::fabs(s), 1.0))
            throw NonConvergence("solve_ivp: step size underflow");
        if ((s + h - s_end) * dir > 0) h = s_end - s;

        bool bad = false;
        auto stage = [&](StateVec& k, double frac, auto&&... terms) {
            for (std::size_t i = 0; i < n; ++i) {
                double acc = 0;
                ((acc += terms.first * terms.second[i]), ...);
                ytmp[i] = y[i] + h * acc;
            }
            k = field(s + frac * h, ytmp);
            if (!finite_vec(k)) bad = true;
        };
        using P = std::pair<double, const StateVec&>;
        stage(k2, 1.0 / 5, P{A21, k1});
        if (!bad) stage(k3, 3.0 / 10, P{A31, k1}, P{A32, k2});
        if (!bad) stage(k4, 4.0 / 5, P{A41, k1}, P{A42, k2}, P{A43, k3});
        if (!bad) stage(k5, 8.0 / 9, P{A51, k1}, P{A52, k2}, P{A53, k3}, P{A54, k4});
        if (!bad) stage(k6, 1.0, P{A61, k1}, P{A62, k2}, P{A63, k3}, P{A64, k4}, P{A65, k5});

        double err_norm = kInf;
        if (!bad) {
            for (std::size_t i = 0; i < n; ++i)
                ynew[i] = y[i] + h * (B1 * k1[i] + B3 * k3[i] + B4 * k4[i] + B5 * k5[i] +
                                      B6 * k6[i]);
            k7 = field(s + h, ynew);
            if (!finite_vec(ynew) || !finite_vec(k7)) {
                bad = true;
            } else {
                double acc = 0;
                for (std::size_t i = 0; i < n; ++i) {
                    const double e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] +
                                          E6 * k6[i] + E7 * k7[i]);
                    const double sc =
                        tol.abs + tol.rel * std::max(std::fabs(y[i]), std::fabs(ynew[i]));
                    acc += (e / sc) * (e / sc);
                }
                err_norm = std::sqrt(acc / n);
            }
        }

        if (bad || err_norm > 1.0) {
            const double shrink =
                bad ? 0.3 : std::max(0.2, 0.9 * std::pow(err_norm, -0.2));
            h *= shrink;
            continue;
        }

        double s_new = s + h;
        if (options.postprocess) {
            options.postprocess(s_new, ynew);
            k7 = field(s_new, ynew);
            if (!finite_vec(k7))
                throw NonFinite("solve_ivp: field not finite after postprocess");
        }

        // Event detection on the accepted step.
        bool truncated = false;
        double s_cut = 0;
        StateVec y_cut;
        std::size_t cut_event = 0;
        std::vector<IvpEventHit> hits;
        for (std::size_t e = 0; e < n_events; ++e) {
            const double ga = g_prev[e];
            double gb = options.events[e].fn(s_new, ynew);
            const int sa = sign_of(ga);
            int sb = std::isnan(gb) ? -sa : sign_of(gb);
            const bool crossing = sa != 0 && sb != sa;
            g_prev[e] = gb;
            if (!crossing) continue;

            // Bisect on the dense output for the crossing location.
            double lo = s, hi_s = s_new;
            StateVec y_hi = ynew;
            for (int it = 0; it < 200 && std::fabs(hi_s - lo) > tol.abs; ++it) {
                const double mid = 0.5 * (lo + hi_s);
                StateVec ym = hermite(s, y, k1, s_new, ynew, k7, mid);
                const double gm = options.events[e].fn(mid, ym);
                const int sm = std::isnan(gm) ? -sa : sign_of(gm);
                if (sm == sa) {
                    lo = mid;
                } else {
                    hi_s = mid;
                    y_hi = std::move(ym);
                }
            }
            const double s_star = hi_s;
            if (!std::isnan(g_last_hit[e]) && std::fabs(s_star - g_last_hit[e]) <= tol.abs)
                throw EventStall("solve_ivp: event '" + options.events[e].name +
                                 "' fired repeatedly within tol.abs");
            g_last_hit[e] = s_star;
            hits.push_back({e, s_star, y_hi});
            if (options.events[e].terminal &&
                (!truncated || (s_star - s_cut) * dir < 0)) {
                truncated = true;
                s_cut = s_star;
                y_cut = y_hi;
                cut_event = e;
            }
        }

        if (truncated) {
            for (auto& hit : hits)
                if ((hit.s - s_cut) * dir <= 0) out.events.push_back(hit);
            if (options.postprocess) options.postprocess(s_cut, y_cut);
            StateVec f_cut = field(s_cut, y_cut);
            if (!finite_vec(f_cut)) f_cut = k1;  // cut at a singular edge: reuse last slope
            out.s.push_back(s_cut);
            out.y.push_back(y_cut);
            out.dy.push_back(f_cut);
            out.terminated_by_event = true;
            out.terminal_event = cut_event;
            return out;
        }
        for (auto& hit : hits) out.events.push_back(std::move(hit));

        out.s.push_back(s_new);
        out.y.push_back(ynew);
        out.dy.push_back(k7);
        s = s_new;
        y = ynew;
        k1 = k7;  // FSAL

        const double grow = std::min(5.0, std::max(0.2, 0.9 * std::pow(err_norm, -0.2)));
        h *= grow;
        if (std::fabs(h) > options.max_step) h = dir * options.max_step;
    }
    return out;
}

// ---------------------------------------------------------------------------
// HermiteTable
// ---------------------------------------------------------------------------

HermiteTable::HermiteTable(std::vector<double> xs, std::vector<double> ys,
                           std::vector<double> dys)
    : xs_(std::move(xs)), ys_(std::move(ys)), dys_(std::move(dys)) {
    if (xs_.size() < 2 || xs_.size() != ys_.size() || xs_.size() != dys_.size())
        throw BadParams("hermite table: need >= 2 nodes with matching values/slopes");
    for (std::size_t i = 1; i < xs_.size(); ++i)
        if (!(xs_[i] > xs_[i - 1])) throw BadParams("hermite table: abscissae must increase");
}

double HermiteTable::operator()(double x) const {
    std::size_t lo = 0, hi = xs_.size() - 1;
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        if (x < xs_[mid])
            hi = mid;
        else
            lo = mid;
    }
    const double h = xs_[hi] - xs_[lo];
    const double t = (x - xs_[lo]) / h;
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * ys_[lo] + (t3 - 2 * t2 + t) * h * dys_[lo] +
           (-2 * t3 + 3 * t2) * ys_[hi] + (t3 - t2) * h * dys_[hi];
}

}  // namespace rotw
