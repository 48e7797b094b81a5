#include "rotw/momentum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rotw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double require_param(const std::map<std::string, double>& params, const std::string& kind,
                     const std::string& name) {
    auto it = params.find(name);
    if (it == params.end()) throw BadParams(kind + ": missing parameter '" + name + "'");
    if (!std::isfinite(it->second)) throw BadParams(kind + ": parameter '" + name + "' not finite");
    return it->second;
}

void require(bool ok, const std::string& message) {
    if (!ok) throw BadParams(message);
}

MomentumFn make_momentum(std::string label, std::map<std::string, double> params,
                         std::function<double(double)> eval, std::function<double(double)> deriv,
                         Interval domain, bool negate) {
    MomentumFn m;
    if (negate) {
        m.eval = [eval](double x) { return -eval(x); };
        m.deriv = [deriv](double x) { return -deriv(x); };
        m.label = "-" + label;
    } else {
        m.eval = std::move(eval);
        m.deriv = std::move(deriv);
        m.label = std::move(label);
    }
    m.params = std::move(params);
    m.domain = domain;
    return m;
}

}  // namespace

MomentumFn catalog(const CatalogEntry& entry) {
    const auto& p = entry.params;
    switch (entry.kind) {
        case SurfaceKind::HorizontalPlane: {
            return make_momentum(
                "plane", {}, [](double) { return 0.0; }, [](double) { return 0.0; },
                Interval(0.0, kInf), entry.negate);
        }
        case SurfaceKind::Cone: {
            const double theta0 = require_param(p, "cone", "theta0");
            require(std::fabs(theta0) < 1.5707963267948966, "cone: requires |theta0| < pi/2");
            require(theta0 != 0.0, "cone: requires theta0 != 0 (theta0 = 0 is the plane)");
            const double s0 = std::sin(theta0);
            return make_momentum(
                "cone", {{"theta0", theta0}}, [s0](double) { return s0; },
                [](double) { return 0.0; }, Interval(0.0, kInf), entry.negate);
        }
        case SurfaceKind::Sphere: {
            const double R = require_param(p, "sphere", "R");
            require(R > 0, "sphere: requires R > 0");
            return make_momentum(
                "sphere", {{"R", R}}, [R](double x) { return x / R; },
                [R](double) { return 1.0 / R; }, Interval(0.0, R), entry.negate);
        }
        case SurfaceKind::Torus: {
            const double a = require_param(p, "torus", "a");
            const double R = require_param(p, "torus", "R");
            require(R > 0, "torus: requires R > 0");
            require(a != 0, "torus: requires a != 0");
            const double lo = std::max(0.0, a - R);
            const double hi = a + R;
            if (!(lo < hi)) throw EmptyDomain("torus: no x > 0 with |x - a| < R");
            return make_momentum(
                "torus", {{"a", a}, {"R", R}}, [a, R](double x) { return (x - a) / R; },
                [R](double) { return 1.0 / R; }, Interval(lo, hi), entry.negate);
        }
        case SurfaceKind::Catenoid: {
            const double a = require_param(p, "catenoid", "a");
            require(a > 0, "catenoid: requires a > 0");
            return make_momentum(
                "catenoid", {{"a", a}}, [a](double x) { return a / x; },
                [a](double x) { return -a / (x * x); }, Interval(a, kInf), entry.negate);
        }
        case SurfaceKind::Onducycloid: {
            const double R = require_param(p, "onducycloid", "R");
            require(R > 0, "onducycloid: requires R > 0");
            return make_momentum(
                "onducycloid", {{"R", R}},
                [R](double x) { return std::sqrt(x) / std::sqrt(2 * R); },
                [R](double x) { return 1.0 / (2 * std::sqrt(2 * R * x)); },
                Interval(0.0, 2 * R), entry.negate);
        }
        case SurfaceKind::Pseudosphere: {
            const double a = require_param(p, "pseudosphere", "a");
            require(a > 0, "pseudosphere: requires a > 0");
            return make_momentum(
                "pseudosphere", {{"a", a}},
                [a](double x) { return std::sqrt(1 - (x * x) / (a * a)); },
                [a](double x) { return -x / (a * a * std::sqrt(1 - (x * x) / (a * a))); },
                Interval(0.0, a), entry.negate);
        }
        case SurfaceKind::Antiparaboloid: {
            const double c = require_param(p, "antiparaboloid", "c");
            require(c > 0, "antiparaboloid: requires c > 0");
            return make_momentum(
                "antiparaboloid", {{"c", c}}, [c](double x) { return c / std::sqrt(x); },
                [c](double x) { return -c / (2 * x * std::sqrt(x)); },
                Interval(c * c, kInf), entry.negate);
        }
        case SurfaceKind::Ellipsoid: {
            const double a = require_param(p, "ellipsoid", "a");
            const double b = require_param(p, "ellipsoid", "b");
            require(a > 0 && b > 0, "ellipsoid: requires a > 0 and b > 0");
            const double a4 = a * a * a * a;
            const double d = a * a - b * b;
            return make_momentum(
                "ellipsoid", {{"a", a}, {"b", b}},
                [a4, b, d](double x) { return b * x / std::sqrt(a4 - d * x * x); },
                [a4, b, d](double x) {
                    const double rad = a4 - d * x * x;
                    return a4 * b / (rad * std::sqrt(rad));
                },
                Interval(0.0, a), entry.negate);
        }
        case SurfaceKind::OneSheetHyperboloid: {
            const double a = require_param(p, "one-sheet-hyperboloid", "a");
            const double b = require_param(p, "one-sheet-hyperboloid", "b");
            require(a > 0 && b > 0, "one-sheet-hyperboloid: requires a > 0 and b > 0");
            const double a4 = a * a * a * a;
            const double s = a * a + b * b;
            return make_momentum(
                "one-sheet-hyperboloid", {{"a", a}, {"b", b}},
                [a4, b, s](double x) { return b * x / std::sqrt(s * x * x - a4); },
                [a4, b, s](double x) {
                    const double rad = s * x * x - a4;
                    return -a4 * b / (rad * std::sqrt(rad));
                },
                Interval(a, kInf), entry.negate);
        }
        case SurfaceKind::TwoSheetsHyperboloid: {
            const double a = require_param(p, "two-sheets-hyperboloid", "a");
            const double b = require_param(p, "two-sheets-hyperboloid", "b");
            require(a > 0 && b > 0, "two-sheets-hyperboloid: requires a > 0 and b > 0");
            const double a4 = a * a * a * a;
            const double s = a * a + b * b;
            return make_momentum(
                "two-sheets-hyperboloid", {{"a", a}, {"b", b}},
                [a4, b, s](double x) { return b * x / std::sqrt(a4 + s * x * x); },
                [a4, b, s](double x) {
                    const double rad = a4 + s * x * x;
                    return a4 * b / (rad * std::sqrt(rad));
                },
                Interval(0.0, kInf), entry.negate);
        }
        case SurfaceKind::Paraboloid: {
            const double a = require_param(p, "paraboloid", "a");
            require(a > 0, "paraboloid: requires a > 0");
            return make_momentum(
                "paraboloid", {{"a", a}},
                [a](double x) { return x / std::sqrt(a * a + x * x); },
                [a](double x) {
                    const double rad = a * a + x * x;
                    return a * a / (rad * std::sqrt(rad));
                },
                Interval(0.0, kInf), entry.negate);
        }
        case SurfaceKind::Elasticoid: {
            const double a = require_param(p, "elasticoid", "a");
            const double k = require_param(p, "elasticoid", "k");
            require(a > 0, "elasticoid: requires a > 0");
            require(k > -1, "elasticoid: requires k > -1");
            const double lo = k > 1 ? std::sqrt((k - 1) / a) : 0.0;
            const double hi = std::sqrt((k + 1) / a);
            return make_momentum(
                "elasticoid", {{"a", a}, {"k", k}}, [a, k](double x) { return a * x * x - k; },
                [a](double x) { return 2 * a * x; }, Interval(lo, hi), entry.negate);
        }
        case SurfaceKind::Delaunay: {
            const double H0 = require_param(p, "delaunay", "H0");
            const double c = require_param(p, "delaunay", "c");
            require(H0 > 0, "delaunay: requires H0 > 0");
            double lo, hi;
            const double disc = 1 - 4 * c * H0;
            if (c > 0) {
                // K > 0 throughout; bounded by the two roots of H0 x^2 - x + c.
                if (!(disc > 0))
                    throw EmptyDomain("delaunay: requires c < 1/(4 H0) for K^2 < 1 somewhere");
                lo = (1 - std::sqrt(disc)) / (2 * H0);
                hi = (1 + std::sqrt(disc)) / (2 * H0);
            } else if (c == 0) {
                lo = 0.0;
                hi = 1.0 / H0;
            } else {
                // K increases from -inf to +inf; domain between the K = -1 and
                // K = +1 crossings.
                lo = (-1 + std::sqrt(disc)) / (2 * H0);
                hi = (1 + std::sqrt(disc)) / (2 * H0);
            }
            return make_momentum(
                "delaunay", {{"H0", H0}, {"c", c}},
                [H0, c](double x) { return H0 * x + c / x; },
                [H0, c](double x) { return H0 - c / (x * x); }, Interval(lo, hi), entry.negate);
        }
        case SurfaceKind::Darboux: {
            const double K0 = require_param(p, "darboux", "K0");
            const double c = require_param(p, "darboux", "c");
            require(K0 != 0, "darboux: requires K0 != 0");
            double lo, hi;
            if (K0 > 0) {
                if (!(c < 1)) throw EmptyDomain("darboux: K0 > 0 requires c < 1");
                lo = c < 0 ? std::sqrt(-c / K0) : 0.0;
                hi = std::sqrt((1 - c) / K0);
            } else {
                if (!(c > 0)) throw EmptyDomain("darboux: K0 < 0 requires c > 0");
                lo = c > 1 ? std::sqrt((c - 1) / (-K0)) : 0.0;
                hi = std::sqrt(c / (-K0));
            }
            return make_momentum(
                "darboux", {{"K0", K0}, {"c", c}},
                [K0, c](double x) { return std::sqrt(K0 * x * x + c); },
                [K0, c](double x) { return K0 * x / std::sqrt(K0 * x * x + c); },
                Interval(lo, hi), entry.negate);
        }
    }
    throw BadParams("catalog: unknown surface kind");
}

// ---------------------------------------------------------------------------
// Maximal-domain search
// ---------------------------------------------------------------------------

namespace {

bool momentum_valid(const std::function<double(double)>& eval, double x) {
    const double v = eval(x);
    return std::isfinite(v) && v * v < 1.0;
}

// Bisects the validity boundary between a valid and an invalid abscissa, then
// polishes with find_root on 1 - K^2 when the invalid side is finite.
double locate_boundary(const std::function<double(double)>& eval, double good, double bad) {
    for (int i = 0; i < 200 && std::fabs(bad - good) >
                                   4 * std::numeric_limits<double>::epsilon() *
                                       (std::fabs(good) + std::fabs(bad) + 1e-300);
         ++i) {
        const double mid = 0.5 * (good + bad);
        if (momentum_valid(eval, mid))
            good = mid;
        else
            bad = mid;
    }
    const double vbad = eval(bad);
    if (std::isfinite(vbad)) {
        auto gap = [&eval](double x) {
            const double k = eval(x);
            return 1.0 - k * k;
        };
        const Interval bracket(std::min(good, bad), std::max(good, bad), false, false);
        if (bracket.lo < bracket.hi) {
            try {
                return find_root(gap, bracket, Tolerance(1e-13, 1e-13));
            } catch (const Error&) {
                // fall through to the bisected boundary
            }
        }
    }
    return good;
}

}  // namespace

Interval maximal_momentum_domain(const std::function<double(double)>& eval, double seed,
                                 const Interval& hint) {
    if (!hint.contains(seed) && seed != hint.lo && seed != hint.hi)
        throw BadParams("maximal_momentum_domain: seed outside hint");
    if (!momentum_valid(eval, seed))
        throw EmptyDomain("maximal_momentum_domain: K^2 >= 1 at the seed point");

    auto expand = [&](int dir) -> double {
        const double limit = dir > 0 ? hint.hi : hint.lo;
        double prev = seed;
        if (std::isfinite(limit)) {
            const int n = 4096;
            for (int i = 1; i <= n; ++i) {
                const double t = seed + (limit - seed) * (static_cast<double>(i) / n);
                if (!momentum_valid(eval, t)) return locate_boundary(eval, prev, t);
                prev = t;
            }
            return limit;
        }
        double step = std::max(1e-9, 1e-6 * std::max(std::fabs(seed), 1.0));
        for (int i = 0; i < 1400; ++i) {
            const double t = seed + dir * step;
            if (dir < 0 && t <= hint.lo) break;
            if (!momentum_valid(eval, t)) return locate_boundary(eval, prev, t);
            prev = t;
            step *= 1.1;
            if (seed + dir * step > 1e30) break;
        }
        return dir > 0 ? kInf : hint.lo;
    };

    const double hi = expand(+1);
    const double lo = expand(-1);
    if (!(lo < hi)) throw EmptyDomain("maximal_momentum_domain: empty interval");
    return Interval(lo, hi);
}

MomentumFn from_expression(std::function<double(double)> eval, const Interval& domain_hint,
                           std::string label) {
    // Scan the hint for valid runs and keep the largest, breaking ties toward
    // the hint midpoint.
    const double lo = domain_hint.lo;
    const double hi = std::isfinite(domain_hint.hi)
                          ? domain_hint.hi
                          : std::max(lo + 1.0, std::fabs(lo)) * 1e6;
    const double mid_hint = 0.5 * (lo + hi);
    const int n = 4096;
    double best_seed = std::numeric_limits<double>::quiet_NaN();
    double best_len = -1, best_dist = kInf;
    double run_start = std::numeric_limits<double>::quiet_NaN();
    double prev = std::numeric_limits<double>::quiet_NaN();
    for (int i = 1; i <= n + 1; ++i) {
        const double x = lo + (hi - lo) * (static_cast<double>(i) / (n + 1));
        const bool valid = i <= n && momentum_valid(eval, x);
        if (valid && std::isnan(run_start)) run_start = x;
        if (!valid && !std::isnan(run_start)) {
            const double len = prev - run_start;
            const double center = 0.5 * (run_start + prev);
            const double dist = std::fabs(center - mid_hint);
            if (len > best_len + 1e-12 * (hi - lo) ||
                (len > best_len - 1e-12 * (hi - lo) && dist < best_dist)) {
                best_len = len;
                best_dist = dist;
                best_seed = center;
            }
            run_start = std::numeric_limits<double>::quiet_NaN();
        }
        prev = x;
    }
    if (std::isnan(best_seed))
        throw EmptyDomain("from_expression: K^2 >= 1 throughout the hint");
    MomentumFn m;
    m.domain = maximal_momentum_domain(eval, best_seed, domain_hint);
    m.deriv = [eval](double x) { return fd_derivative(eval, x); };
    m.eval = std::move(eval);
    m.label = std::move(label);
    return m;
}

MomentumFn scale(const MomentumFn& m, double lambda) {
    if (!(lambda > 0)) throw BadParams("scale: requires lambda > 0");
    MomentumFn out;
    auto eval = m.eval;
    auto deriv = m.deriv;
    out.eval = [eval, lambda](double x) { return eval(x / lambda); };
    out.deriv = [deriv, lambda](double x) { return deriv(x / lambda) / lambda; };
    out.domain = Interval(m.domain.lo * lambda, m.domain.hi * lambda, m.domain.lo_open,
                          m.domain.hi_open);
    out.label = m.label + "*" + std::to_string(lambda);
    out.params = m.params;
    out.params["lambda"] = lambda;
    return out;
}

// ---------------------------------------------------------------------------
// Catalog addressing
// ---------------------------------------------------------------------------

std::string kind_name(SurfaceKind kind) {
    switch (kind) {
        case SurfaceKind::HorizontalPlane: return "plane";
        case SurfaceKind::Cone: return "cone";
        case SurfaceKind::Sphere: return "sphere";
        case SurfaceKind::Torus: return "torus";
        case SurfaceKind::Catenoid: return "catenoid";
        case SurfaceKind::Onducycloid: return "onducycloid";
        case SurfaceKind::Pseudosphere: return "pseudosphere";
        case SurfaceKind::Antiparaboloid: return "antiparaboloid";
        case SurfaceKind::Ellipsoid: return "ellipsoid";
        case SurfaceKind::OneSheetHyperboloid: return "one-sheet-hyperboloid";
        case SurfaceKind::TwoSheetsHyperboloid: return "two-sheets-hyperboloid";
        case SurfaceKind::Paraboloid: return "paraboloid";
        case SurfaceKind::Elasticoid: return "elasticoid";
        case SurfaceKind::Delaunay: return "delaunay";
        case SurfaceKind::Darboux: return "darboux";
    }
    return "?";
}

const std::vector<CatalogInfo>& catalog_listing() {
    static const std::vector<CatalogInfo> listing = {
        {SurfaceKind::HorizontalPlane, "plane", {}, "horizontal plane, K = 0"},
        {SurfaceKind::Cone, "cone", {"theta0"}, "circular cone of opening theta0, K = sin(theta0)"},
        {SurfaceKind::Sphere, "sphere", {"R"}, "sphere of radius R, K = x/R"},
        {SurfaceKind::Torus, "torus", {"a", "R"}, "torus, major a, minor R, K = (x-a)/R"},
        {SurfaceKind::Catenoid, "catenoid", {"a"}, "catenoid of chord a, K = a/x"},
        {SurfaceKind::Onducycloid, "onducycloid", {"R"},
         "revolved cycloid of radius R, K = sqrt(x/(2R))"},
        {SurfaceKind::Pseudosphere, "pseudosphere", {"a"},
         "revolved tractrix of height a, K = sqrt(1-x^2/a^2)"},
        {SurfaceKind::Antiparaboloid, "antiparaboloid", {"c"},
         "parabola revolved about its directrix, K = c/sqrt(x)"},
        {SurfaceKind::Ellipsoid, "ellipsoid", {"a", "b"},
         "ellipsoid of revolution with semi-axes a (equatorial), b (polar)"},
        {SurfaceKind::OneSheetHyperboloid, "one-sheet-hyperboloid", {"a", "b"},
         "one-sheet hyperboloid of revolution"},
        {SurfaceKind::TwoSheetsHyperboloid, "two-sheets-hyperboloid", {"a", "b"},
         "two-sheets hyperboloid of revolution"},
        {SurfaceKind::Paraboloid, "paraboloid", {"a"},
         "paraboloid of revolution z = x^2/(2a)"},
        {SurfaceKind::Elasticoid, "elasticoid", {"a", "k"},
         "revolved elastic curve, K = a x^2 - k"},
        {SurfaceKind::Delaunay, "delaunay", {"H0", "c"},
         "constant mean curvature H0 family member, K = H0 x + c/x"},
        {SurfaceKind::Darboux, "darboux", {"K0", "c"},
         "constant Gauss curvature K0 family member, K^2 = K0 x^2 + c"},
    };
    return listing;
}

CatalogEntry parse_surface_spec(const std::string& text) {
    const auto colon = text.find(':');
    const std::string name = text.substr(0, colon);
    CatalogEntry entry;
    bool found = false;
    for (const auto& info : catalog_listing()) {
        if (info.name == name) {
            entry.kind = info.kind;
            found = true;
            break;
        }
    }
    if (!found) throw BadParams("unknown surface '" + name + "'");
    if (colon == std::string::npos) return entry;

    std::stringstream rest(text.substr(colon + 1));
    std::string item;
    while (std::getline(rest, item, ',')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw BadParams("surface parameter '" + item + "' is not key=value");
        const std::string key = item.substr(0, eq);
        const std::string value = item.substr(eq + 1);
        std::size_t used = 0;
        double parsed;
        try {
            parsed = std::stod(value, &used);
        } catch (const std::exception&) {
            throw BadParams("surface parameter '" + key + "': bad number '" + value + "'");
        }
        if (used != value.size())
            throw BadParams("surface parameter '" + key + "': bad number '" + value + "'");
        if (key == "negate")
            entry.negate = parsed != 0;
        else
            entry.params[key] = parsed;
    }
    return entry;
}

}  // namespace rotw
