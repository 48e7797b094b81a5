#include "rotw/prescribe.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace rotw {

namespace {

constexpr double kRadicandFloor = 1e-16;  // |K| < 1e-8 counts as K = 0

// Cumulative integral I(x) = \int_{base}^x t * f(t) dt over [lo_cap, hi_cap],
// tabulated once (independently of the family constant).
HermiteTable tabulate_moment_integral(const std::function<double(double)>& f, double base_x,
                                      double lo_cap, double hi_cap) {
    OdeField field = [&f](double t, const StateVec&) { return StateVec{t * f(t)}; };
    IvpOptions opts;
    opts.max_step = (hi_cap - lo_cap) / 64;
    const Tolerance tab_tol(1e-12, 1e-12, 1000000);

    std::vector<double> xs, ys, dys;
    auto append = [&](const Trajectory& t, bool reversed) {
        const std::size_t n = t.size();
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t j = reversed ? n - 1 - i : i;
            if (!xs.empty() && !(t.s[j] > xs.back())) continue;
            xs.push_back(t.s[j]);
            ys.push_back(t.y[j][0]);
            dys.push_back(t.dy[j][0]);
        }
    };
    if (base_x > lo_cap) append(solve_ivp(field, base_x, {0.0}, lo_cap, tab_tol, opts), true);
    if (base_x < hi_cap) append(solve_ivp(field, base_x, {0.0}, hi_cap, tab_tol, opts), false);
    if (xs.size() < 2) throw BadParams("prescribe: degenerate tabulation range");
    return HermiteTable(std::move(xs), std::move(ys), std::move(dys));
}

double refine_boundary(const std::function<bool(double)>& valid, double good, double bad) {
    for (int i = 0;
         i < 140 && std::fabs(bad - good) > 1e-15 * (1 + std::fabs(good) + std::fabs(bad));
         ++i) {
        const double mid = 0.5 * (good + bad);
        if (valid(mid))
            good = mid;
        else
            bad = mid;
    }
    return 0.5 * (good + bad);
}

// Maximal valid run nearest to base_x over a probe grid refined 32x between
// the tabulation nodes.
Interval scan_valid_interval(const std::function<bool(double)>& valid,
                             const std::vector<double>& probes, double base_x) {
    struct Run {
        double lo, hi;
        std::size_t first, last;  // probe indices
    };
    std::vector<Run> runs;
    bool in_run = false;
    for (std::size_t i = 0; i < probes.size(); ++i) {
        if (valid(probes[i])) {
            if (!in_run) {
                runs.push_back({probes[i], probes[i], i, i});
                in_run = true;
            } else {
                runs.back().hi = probes[i];
                runs.back().last = i;
            }
        } else {
            in_run = false;
        }
    }
    if (runs.empty()) throw EmptyDomain("prescribe: K^2 < 1 nowhere in the tabulated range");

    const Run* best = nullptr;
    double best_d = std::numeric_limits<double>::infinity();
    for (const auto& r : runs) {
        double d = 0;
        if (base_x < r.lo)
            d = r.lo - base_x;
        else if (base_x > r.hi)
            d = base_x - r.hi;
        if (d < best_d) {
            best_d = d;
            best = &r;
        }
    }

    double lo = best->lo;
    if (best->first > 0) lo = refine_boundary(valid, best->lo, probes[best->first - 1]);
    double hi = best->hi;
    if (best->last + 1 < probes.size())
        hi = refine_boundary(valid, best->hi, probes[best->last + 1]);
    if (!(lo < hi)) throw EmptyDomain("prescribe: valid region collapsed");
    return Interval(lo, hi);
}

// Uniform plus log-spaced probes, densified around base_x: valid regions can
// be orders of magnitude smaller than the tabulation span.
std::vector<double> domain_probes(double lo, double hi, double base_x) {
    std::vector<double> probes;
    probes.reserve(4096 + 2048 + 256);
    for (int i = 0; i <= 4096; ++i)
        probes.push_back(lo + (hi - lo) * (static_cast<double>(i) / 4096));
    const double log_lo = std::max(lo, hi * 1e-12);
    if (log_lo < hi) {
        const double ratio = std::log(hi / log_lo);
        for (int i = 0; i <= 2048; ++i)
            probes.push_back(log_lo * std::exp(ratio * (static_cast<double>(i) / 2048)));
    }
    if (base_x > lo && base_x < hi) {
        for (int i = -64; i <= 64; ++i)
            probes.push_back(base_x * (1 + 0.01 * i) + (hi - lo) * 1e-9 * i);
    }
    std::sort(probes.begin(), probes.end());
    probes.erase(std::unique(probes.begin(), probes.end()), probes.end());
    while (!probes.empty() && probes.front() < lo) probes.erase(probes.begin());
    while (!probes.empty() && probes.back() > hi) probes.pop_back();
    return probes;
}

double z_conical(double a, double k, double t) {
    const double k2 = k * k;
    auto integrand = [k2](double u) {
        const double c = std::cosh(u);
        return std::sqrt(std::max(1 - k2 * c * c, 0.0));
    };
    return a * integrate_adaptive(integrand, 0.0, t, Tolerance(1e-12, 1e-12));
}

double z_hyperboloid(double a, double k, double t) {
    const double k2 = k * k;
    auto integrand = [k2](double u) {
        const double s = std::sinh(u);
        return std::sqrt(std::max(1 - k2 * s * s, 0.0));
    };
    return a * integrate_adaptive(integrand, 0.0, t, Tolerance(1e-12, 1e-12));
}

double z_tractrix(double a, double r) {
    const double w = std::sqrt(a * a - r * r);
    return w - a * std::log((a + w) / r);
}

}  // namespace

PrescribedBuild from_mean_curvature(std::function<double(double)> Hfn, double c, double base_x,
                                    const Tolerance& tol) {
    if (!(base_x > 0)) throw BadParams("from_mean_curvature: requires base_x > 0");
    const double lo_cap = base_x * 1e-6;
    const double hi_cap = std::max(1e3, 1e3 * base_x);
    auto table = std::make_shared<HermiteTable>(
        tabulate_moment_integral(Hfn, base_x, lo_cap, hi_cap));

    auto eval = [table, c](double x) { return (2 * (*table)(x) + c) / x; };
    auto valid = [&eval](double x) {
        if (!(x > 0)) return false;
        const double k = eval(x);
        return std::isfinite(k) && k * k < 1;
    };
    const Interval domain =
        scan_valid_interval(valid, domain_probes(lo_cap, hi_cap, base_x), base_x);

    PrescribedBuild out;
    out.momentum.eval = eval;
    out.momentum.deriv = [Hfn = std::move(Hfn), eval](double x) {
        return 2 * Hfn(x) - eval(x) / x;
    };
    out.momentum.domain = domain;
    out.momentum.label = "prescribed-H";
    out.momentum.params = {{"c", c}, {"base_x", base_x}};
    out.constant = c;
    out.source = PrescribedSource::MeanCurvature;
    out.base_x = base_x;
    (void)tol;
    return out;
}

PrescribedBuild from_gauss_curvature(std::function<double(double)> Kgfn, double c,
                                     double base_x, int sign, const Tolerance& tol) {
    if (!(base_x >= 0)) throw BadParams("from_gauss_curvature: requires base_x >= 0");
    if (sign != 1 && sign != -1) throw BadParams("from_gauss_curvature: sign must be +1 or -1");
    const double lo_cap = base_x > 0 ? base_x * 1e-6 : 0.0;
    const double hi_cap = std::max(1e3, 1e3 * base_x);
    auto table = std::make_shared<HermiteTable>(
        tabulate_moment_integral(Kgfn, base_x, lo_cap, hi_cap));

    auto radicand = [table, c](double x) { return 2 * (*table)(x) + c; };
    auto eval = [radicand, sign](double x) {
        return sign * std::sqrt(radicand(x));
    };
    auto valid = [&radicand](double x) {
        if (!(x > 0)) return false;
        const double r = radicand(x);
        return std::isfinite(r) && r > kRadicandFloor && r < 1;
    };
    const Interval domain =
        scan_valid_interval(valid, domain_probes(lo_cap, hi_cap, base_x), base_x);

    PrescribedBuild out;
    out.momentum.eval = eval;
    auto Kg = std::make_shared<std::function<double(double)>>(std::move(Kgfn));
    out.momentum.deriv = [Kg, eval](double x) { return x * (*Kg)(x) / eval(x); };
    out.momentum.domain = domain;
    out.momentum.label = "prescribed-KG";
    out.momentum.params = {{"c", c}, {"base_x", base_x}, {"sign", double(sign)}};
    out.constant = c;
    out.source = PrescribedSource::GaussCurvature;
    out.base_x = base_x;

    // A boundary where the radicand bottomed out (rather than reaching 1) is
    // a K -> 0 truncation: k_m = x K_G / K is unbounded there.
    for (double b : {domain.lo, domain.hi}) {
        const double r = radicand(b);
        if (std::isfinite(r) && std::fabs(r) < 1e-10 && std::fabs((*Kg)(b)) > 1e-14) {
            out.truncation = "domain truncated where K -> 0 (meridian curvature blows up)";
            break;
        }
    }
    (void)tol;
    return out;
}

double delaunay_residual(const GeneratrixCurve& curve, const DelaunayParams& p) {
    const auto& s = curve.samples();
    if (s.size() < 2) throw DegenerateCurve("delaunay_residual: need at least 2 samples");
    const double eb2 = p.eps * p.b * p.b;
    double sup = 0;
    std::size_t used = 0;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        const double dz = s[i + 1].z - s[i].z;
        const double ds = s[i + 1].s - s[i].s;
        if (std::fabs(dz) < 0.1 * std::fabs(ds)) continue;  // z-stationary neighbourhood
        const double dx = s[i + 1].x - s[i].x;
        const double xm = 0.5 * (s[i].x + s[i + 1].x);
        const double denom = xm * xm + eb2;
        const double rhs = (4 * p.a * p.a * xm * xm - denom * denom) / (denom * denom);
        sup = std::max(sup, std::fabs((dx / dz) * (dx / dz) - rhs));
        ++used;
    }
    if (used == 0)
        throw DegenerateCurve("delaunay_residual: curve is z-stationary over the whole range");
    return sup;
}

std::vector<std::pair<double, double>> darboux_profile(double K0, DarbouxFamily family,
                                                       double k, int n) {
    if (K0 == 0) throw BadParams("darboux_profile: requires K0 != 0");
    if (n < 2) throw BadParams("darboux_profile: requires n >= 2");
    const double a = 1.0 / std::sqrt(std::fabs(K0));
    std::vector<std::pair<double, double>> out;
    out.reserve(n);

    switch (family) {
        case DarbouxFamily::Positive: {
            if (!(K0 > 0)) throw BadParams("darboux_profile: Positive family requires K0 > 0");
            if (!(k > 0)) throw BadParams("darboux_profile: Positive family requires k > 0");
            const double t_max = k > 1 ? std::asin(1 / k) : std::asin(1.0);
            for (int i = 0; i < n; ++i) {
                const double t = t_max * i / (n - 1);
                out.emplace_back(a * k * std::cos(t), a * elliptic_e_inc(k, t));
            }
            return out;
        }
        case DarbouxFamily::ConicalPoint: {
            if (!(K0 < 0))
                throw BadParams("darboux_profile: ConicalPoint family requires K0 < 0");
            if (!(k > 0 && k < 1))
                throw BadParams("darboux_profile: ConicalPoint family requires 0 < k < 1");
            const double t_max = std::acosh(1 / k);
            for (int i = 0; i < n; ++i) {
                const double t = t_max * i / (n - 1);
                out.emplace_back(a * k * std::sinh(t), z_conical(a, k, t));
            }
            return out;
        }
        case DarbouxFamily::HyperboloidType: {
            if (!(K0 < 0))
                throw BadParams("darboux_profile: HyperboloidType family requires K0 < 0");
            if (k == 0) throw BadParams("darboux_profile: HyperboloidType requires k != 0");
            const double ka = std::fabs(k);
            const double t_max = std::asinh(1 / ka);
            for (int i = 0; i < n; ++i) {
                const double t = -t_max + 2 * t_max * i / (n - 1);
                out.emplace_back(a * ka * std::cosh(t), z_hyperboloid(a, ka, t < 0 ? -t : t) *
                                                            (t < 0 ? -1.0 : 1.0));
            }
            return out;
        }
        case DarbouxFamily::Pseudosphere: {
            if (!(K0 < 0))
                throw BadParams("darboux_profile: Pseudosphere family requires K0 < 0");
            for (int i = 0; i < n; ++i) {
                const double r = a * (0.05 + 0.945 * i / (n - 1));
                out.emplace_back(r, z_tractrix(a, r));
            }
            return out;
        }
    }
    throw BadParams("darboux_profile: unknown family");
}

std::string darboux_family_name(DarbouxFamily family) {
    switch (family) {
        case DarbouxFamily::Positive: return "positive";
        case DarbouxFamily::ConicalPoint: return "conical-point";
        case DarbouxFamily::HyperboloidType: return "hyperboloid-type";
        case DarbouxFamily::Pseudosphere: return "pseudosphere";
    }
    return "?";
}

DarbouxReport cross_validate_darboux(double K0, double c) {
    if (K0 == 0) throw BadParams("cross_validate_darboux: requires K0 != 0");
    PrescribedBuild build =
        from_gauss_curvature([K0](double) { return K0; }, c, 0.0, +1);
    const MomentumFn& m = build.momentum;
    const double a = 1.0 / std::sqrt(std::fabs(K0));

    DarbouxReport report;
    if (K0 > 0) {
        report.family = DarbouxFamily::Positive;
        report.k = std::sqrt(1 - c);
    } else if (c < 1) {
        report.family = DarbouxFamily::ConicalPoint;
        report.k = std::sqrt(1 - c);
    } else if (c == 1) {
        report.family = DarbouxFamily::Pseudosphere;
        report.k = 0;
    } else {
        report.family = DarbouxFamily::HyperboloidType;
        report.k = std::sqrt(c - 1);
    }

    const int n = 400;
    report.samples = n;
    const double lo = m.domain.lo + 0.02 * (m.domain.hi - m.domain.lo);
    const double hi = m.domain.hi - 0.02 * (m.domain.hi - m.domain.lo);
    const auto graph = graph_z_of_x(m, lo, hi, +1, n);

    std::vector<double> z_prof(n);
    for (int i = 0; i < n; ++i) {
        const double r = graph[i].first;
        switch (report.family) {
            case DarbouxFamily::Positive: {
                const double t = std::acos(std::clamp(r / (a * report.k), -1.0, 1.0));
                z_prof[i] = a * elliptic_e_inc(report.k, t);
                break;
            }
            case DarbouxFamily::ConicalPoint:
                z_prof[i] = z_conical(a, report.k, std::asinh(r / (a * report.k)));
                break;
            case DarbouxFamily::HyperboloidType:
                z_prof[i] =
                    z_hyperboloid(a, report.k, std::acosh(std::max(r / (a * report.k), 1.0)));
                break;
            case DarbouxFamily::Pseudosphere: z_prof[i] = z_tractrix(a, r); break;
        }
    }

    double best = std::numeric_limits<double>::infinity();
    for (double sigma : {1.0, -1.0}) {
        double offset = 0;
        for (int i = 0; i < n; ++i) offset += z_prof[i] - sigma * graph[i].second;
        offset /= n;
        double sup = 0;
        for (int i = 0; i < n; ++i)
            sup = std::max(sup, std::fabs(sigma * graph[i].second + offset - z_prof[i]));
        best = std::min(best, sup);
    }
    report.sup_distance = best;
    return report;
}

}  // namespace rotw
