#include "rotw/weingarten.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

namespace rotw {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Seed for the maximal-domain search: the finite log-grid point where |K| is
// smallest.
double argmin_abs(const std::function<double(double)>& eval) {
    double best_x = 0;
    double best = kInf;
    for (int i = 0; i <= 480; ++i) {
        const double x = std::pow(10.0, -8.0 + i / 30.0);  // 1e-8 .. 1e8
        const double v = eval(x);
        if (std::isfinite(v) && std::fabs(v) < best) {
            best = std::fabs(v);
            best_x = x;
        }
    }
    if (!(best < 1.0)) throw EmptyDomain("momentum: K^2 >= 1 on the whole half-line");
    return best_x;
}

}  // namespace

double residual(const WRelation& r, const CurvatureRecord& rec) {
    return std::visit(
        [&rec](const auto& rel) -> double {
            using T = std::decay_t<decltype(rel)>;
            if constexpr (std::is_same_v<T, LinearRelation>) {
                return rec.k_m - (rel.p * rec.k_p + rel.q);
            } else if constexpr (std::is_same_v<T, SpecialLinearRelation>) {
                return rel.a * rec.K_G + 2 * rel.b * rec.H + rel.c;
            } else if constexpr (std::is_same_v<T, CubicRelation>) {
                return rec.k_m - rel.mu * rec.k_p * rec.k_p * rec.k_p;
            } else if constexpr (std::is_same_v<T, HyperbolaRelation>) {
                return rec.k_m * rec.k_m - 2 * rec.k_p * rec.k_m + rel.mu;
            } else if constexpr (std::is_same_v<T, ConstPrincipalRelation>) {
                return (rel.which == PrincipalDirection::Meridian ? rec.k_m : rec.k_p) -
                       rel.value;
            } else {
                throw GenericNotPointwise(
                    "residual: generic relations are checked through the ODE, not pointwise");
            }
        },
        r);
}

MomentumFn solve_linear(double p, double q, double c) {
    if (p == 0) throw BadParams("solve_linear: requires p != 0");
    MomentumFn m;
    if (p == 1) {
        m.eval = [q, c](double x) { return q * x * std::log(x) + c * x; };
        m.deriv = [q, c](double x) { return q * (std::log(x) + 1) + c; };
    } else {
        m.eval = [p, q, c](double x) { return q * x / (1 - p) + c * std::pow(x, p); };
        m.deriv = [p, q, c](double x) { return q / (1 - p) + c * p * std::pow(x, p - 1); };
    }
    m.domain = maximal_momentum_domain(m.eval, argmin_abs(m.eval), Interval(0.0, kInf));
    m.label = "linear-weingarten";
    m.params = {{"p", p}, {"q", q}, {"c", c}};
    return m;
}

MomentumFn solve_special_linear(double a, double b, double c, double d, int sign) {
    if (a == 0)
        throw NeedsNonzeroA(
            "solve_special_linear: a = 0 degenerates to a constant principal curvature");
    if (sign != 1 && sign != -1) throw BadParams("solve_special_linear: sign must be +1 or -1");
    const double coef = b * b - a * c;
    MomentumFn m;
    m.eval = [a, b, d, coef, sign](double x) {
        return (-b * x + sign * std::sqrt(coef * x * x + a * d)) / a;
    };
    m.deriv = [a, b, d, coef, sign](double x) {
        return (-b + sign * coef * x / std::sqrt(coef * x * x + a * d)) / a;
    };
    m.domain = maximal_momentum_domain(m.eval, argmin_abs(m.eval), Interval(0.0, kInf));
    m.label = "special-linear-weingarten";
    m.params = {{"a", a}, {"b", b}, {"c", c}, {"d", d}, {"sign", double(sign)}};
    return m;
}

MomentumFn solve_cubic(double mu, double c) {
    if (mu == 0) throw BadParams("solve_cubic: requires mu != 0");
    Interval domain(0.0, kInf);
    if (mu > 0) {
        if (c < 1) domain = Interval(0.0, std::sqrt(mu / (1 - c)));
    } else {
        if (!(c > 1))
            throw EmptyDomain("solve_cubic: mu < 0 requires c > 1 for a real momentum");
        domain = Interval(std::sqrt(mu / (1 - c)), kInf);
    }
    MomentumFn m;
    m.eval = [mu, c](double x) { return x / std::sqrt(mu + c * x * x); };
    m.deriv = [mu, c](double x) {
        const double rad = mu + c * x * x;
        return mu / (rad * std::sqrt(rad));
    };
    m.domain = domain;
    m.label = "cubic-weingarten";
    m.params = {{"mu", mu}, {"c", c}};
    return m;
}

QuadricClass classify_cubic(double mu, double c) {
    if (mu == 0) throw BadParams("classify_cubic: requires mu != 0");
    QuadricClass out;
    if (mu > 0) {
        if (c == 0) {
            out.kind = QuadricKind::Sphere;
            out.params = {{"R", std::sqrt(mu)}};
        } else if (c < 1) {
            const double a = std::sqrt(mu / (1 - c));
            out.kind = QuadricKind::EllipsoidOfRevolution;
            out.params = {{"a", a}, {"b", a * a / std::sqrt(mu)}};
        } else if (c == 1) {
            out.kind = QuadricKind::ParaboloidOfRevolution;
            out.params = {{"a", std::sqrt(mu)}};
        } else {
            const double a = std::sqrt(mu / (c - 1));
            out.kind = QuadricKind::TwoSheetsHyperboloid;
            out.params = {{"a", a}, {"b", a * a / std::sqrt(mu)}};
        }
    } else {
        if (!(c > 1)) throw EmptyDomain("classify_cubic: mu < 0 requires c > 1");
        const double a = std::sqrt(mu / (1 - c));
        out.kind = QuadricKind::OneSheetHyperboloid;
        out.params = {{"a", a}, {"b", a * a / std::sqrt(-mu)}};
    }
    return out;
}

std::string quadric_name(QuadricKind kind) {
    switch (kind) {
        case QuadricKind::Plane: return "plane";
        case QuadricKind::Sphere: return "sphere";
        case QuadricKind::EllipsoidOfRevolution: return "ellipsoid";
        case QuadricKind::TwoSheetsHyperboloid: return "two-sheets-hyperboloid";
        case QuadricKind::ParaboloidOfRevolution: return "paraboloid";
        case QuadricKind::OneSheetHyperboloid: return "one-sheet-hyperboloid";
    }
    return "?";
}

CatalogEntry to_catalog_entry(const QuadricClass& q) {
    CatalogEntry entry;
    entry.params = q.params;
    switch (q.kind) {
        case QuadricKind::Plane: entry.kind = SurfaceKind::HorizontalPlane; break;
        case QuadricKind::Sphere: entry.kind = SurfaceKind::Sphere; break;
        case QuadricKind::EllipsoidOfRevolution: entry.kind = SurfaceKind::Ellipsoid; break;
        case QuadricKind::TwoSheetsHyperboloid:
            entry.kind = SurfaceKind::TwoSheetsHyperboloid;
            break;
        case QuadricKind::ParaboloidOfRevolution: entry.kind = SurfaceKind::Paraboloid; break;
        case QuadricKind::OneSheetHyperboloid:
            entry.kind = SurfaceKind::OneSheetHyperboloid;
            break;
    }
    return entry;
}

MomentumFn solve_hyperbola(double mu, double a_coef) {
    if (mu == 0) throw BadParams("solve_hyperbola: requires mu != 0");
    if (!(a_coef > 0)) throw BadParams("solve_hyperbola: requires a_coef > 0");
    const double k = -mu / (4 * a_coef);
    if (!(k > -1))
        throw EmptyDomain("solve_hyperbola: modulus k = -mu/(4a) <= -1 leaves K^2 >= 1");
    return catalog({SurfaceKind::Elasticoid, {{"a", a_coef}, {"k", k}}});
}

MomentumFn hyperbola_sphere_branch(double mu) {
    if (!(mu > 0)) throw EmptyDomain("hyperbola_sphere_branch: requires mu > 0");
    return catalog({SurfaceKind::Sphere, {{"R", 1.0 / std::sqrt(mu)}}});
}

ConstPrincipalResult solve_const_principal(PrincipalDirection which, double value, double c) {
    ConstPrincipalResult out;
    if (which == PrincipalDirection::Meridian) {
        if (value == 0) {
            if (!(std::fabs(c) < 1))
                throw EmptyDomain("solve_const_principal: |K| = |c| >= 1 admits no generatrix");
            MomentumFn m;
            m.eval = [c](double) { return c; };
            m.deriv = [](double) { return 0.0; };
            m.domain = Interval(0.0, kInf);
            m.label = c == 0 ? "plane" : "cone";
            m.params = {{"c", c}};
            out.momentum = std::move(m);
            return out;
        }
        const double xa = (-1 - c) / value;
        const double xb = (1 - c) / value;
        const double lo = std::max(0.0, std::min(xa, xb));
        const double hi = std::max(xa, xb);
        if (!(lo < hi) || hi <= 0)
            throw EmptyDomain("solve_const_principal: no x > 0 with |value*x + c| < 1");
        MomentumFn m;
        m.eval = [value, c](double x) { return value * x + c; };
        m.deriv = [value](double) { return value; };
        m.domain = Interval(lo, hi);
        m.label = c == 0 ? "sphere" : "torus";
        m.params = {{"value", value}, {"c", c}};
        out.momentum = std::move(m);
        return out;
    }
    // parallel
    if (value == 0) {
        MomentumFn m;
        m.eval = [](double) { return 0.0; };
        m.deriv = [](double) { return 0.0; };
        m.domain = Interval(0.0, kInf);
        m.label = "plane";
        out.momentum = std::move(m);
        return out;
    }
    MomentumFn m;
    m.eval = [value](double x) { return value * x; };
    m.deriv = [value](double) { return value; };
    m.domain = Interval(0.0, 1.0 / std::fabs(value));
    m.label = "sphere";
    m.params = {{"value", value}};
    out.momentum = std::move(m);
    out.cylinder = CylinderMarker{1.0 / value};
    return out;
}

MomentumFn solve_generic(std::function<double(double, double)> F, double x0, double K0,
                         const Interval& x_span, const Tolerance& tol) {
    if (!(std::fabs(K0) < 1)) throw ImmediateExit("solve_generic: requires |K0| < 1");
    if (K0 * K0 >= 1 - 1e-12)
        throw ImmediateExit("solve_generic: K0 is already at a turning value");
    if (!(x0 > x_span.lo && x0 < x_span.hi))
        throw BadParams("solve_generic: x0 must lie inside x_span");
    const double f0 = F(x0, K0);
    if (!std::isfinite(f0)) throw ImmediateExit("solve_generic: F not finite at (x0, K0)");

    OdeField field = [&F](double x, const StateVec& y) { return StateVec{F(x, y[0])}; };
    IvpOptions opts;
    opts.events.push_back(
        {[](double, const StateVec& y) { return (1 - 1e-12) - y[0] * y[0]; }, true, "turning"});
    opts.events.push_back({[&F](double x, const StateVec& y) {
                               return 1e8 - std::fabs(F(x, y[0]));
                           },
                           true, "blowup"});

    const double hi = std::isfinite(x_span.hi)
                          ? x_span.hi
                          : 1e6 * std::max(1.0, x0) + 1e6;
    const double lo = std::max(x_span.lo, 0.0);

    std::vector<double> xs, ks, fs;
    auto append = [&](const Trajectory& t, bool reversed) {
        const std::size_t n = t.size();
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t j = reversed ? n - 1 - i : i;
            if (!xs.empty() && !(t.s[j] > xs.back())) continue;
            xs.push_back(t.s[j]);
            ks.push_back(t.y[j][0]);
            fs.push_back(t.dy[j][0]);
        }
    };

    if (x0 > lo) {
        Trajectory back = solve_ivp(field, x0, {K0}, lo, tol, opts);
        append(back, true);
    } else {
        xs.push_back(x0);
        ks.push_back(K0);
        fs.push_back(f0);
    }
    if (x0 < hi) {
        Trajectory fwd = solve_ivp(field, x0, {K0}, hi, tol, opts);
        append(fwd, false);
    }
    if (xs.size() < 2)
        throw ImmediateExit("solve_generic: the solution leaves the valid region immediately");

    auto table = std::make_shared<HermiteTable>(std::move(xs), std::move(ks), std::move(fs));
    MomentumFn m;
    m.eval = [table](double x) { return (*table)(x); };
    m.deriv = [table, F = std::move(F)](double x) { return F(x, (*table)(x)); };
    m.domain = Interval(table->x_min(), table->x_max());
    m.label = "generic-weingarten";
    m.params = {{"x0", x0}, {"K0", K0}};
    return m;
}

// ---------------------------------------------------------------------------
// Relation mini-language
// ---------------------------------------------------------------------------

WRelation ParsedRelation::relation() const {
    auto get = [this](const std::string& key) {
        auto it = params.find(key);
        if (it == params.end())
            throw BadParams("relation '" + family + "': missing parameter '" + key + "'");
        return it->second;
    };
    if (family == "linear") {
        LinearRelation r{get("p"), params.count("q") ? params.at("q") : 0.0};
        if (r.p == 0) throw BadParams("relation 'linear': requires p != 0");
        return r;
    }
    if (family == "special") {
        SpecialLinearRelation r{get("a"), get("b"), params.count("c") ? params.at("c") : 0.0};
        if (r.a == 0 && r.b == 0) throw BadParams("relation 'special': requires a^2 + b^2 != 0");
        return r;
    }
    if (family == "cubic") {
        CubicRelation r{get("mu")};
        if (r.mu == 0) throw BadParams("relation 'cubic': requires mu != 0");
        return r;
    }
    if (family == "hyperbola") {
        HyperbolaRelation r{get("mu")};
        if (r.mu == 0) throw BadParams("relation 'hyperbola': requires mu != 0");
        return r;
    }
    if (family == "const") {
        if (params.count("meridian"))
            return ConstPrincipalRelation{PrincipalDirection::Meridian, params.at("meridian")};
        if (params.count("parallel"))
            return ConstPrincipalRelation{PrincipalDirection::Parallel, params.at("parallel")};
        throw BadParams("relation 'const': needs meridian=.. or parallel=..");
    }
    throw BadParams("unknown relation family '" + family + "'");
}

ParsedRelation parse_relation_spec(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw BadParams("relation '" + text + "' is not family:key=value,...");
    ParsedRelation parsed;
    parsed.family = text.substr(0, colon);
    std::stringstream rest(text.substr(colon + 1));
    std::string item;
    while (std::getline(rest, item, ',')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw BadParams("relation parameter '" + item + "' is not key=value");
        const std::string key = item.substr(0, eq);
        const std::string value = item.substr(eq + 1);
        try {
            parsed.params[key] = std::stod(value);
        } catch (const std::exception&) {
            throw BadParams("relation parameter '" + key + "': bad number '" + value + "'");
        }
    }
    parsed.relation();  // validate eagerly
    return parsed;
}

}  // namespace rotw
