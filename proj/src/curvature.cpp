#include "rotw/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace rotw {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kClip = 1e6;
}  // namespace

CurvatureRecord curvatures(const MomentumFn& m, double x) {
    if (!m.domain.interior_contains(x))
        throw OutOfDomain("curvatures: x outside the momentum domain interior");
    CurvatureRecord rec;
    rec.x = x;
    rec.k_m = m.deriv(x);
    rec.k_p = m.eval(x) / x;
    rec.H = (rec.k_m + rec.k_p) / 2;
    rec.K_G = rec.k_m * rec.k_p;
    return rec;
}

Interval wdiagram_window(const MomentumFn& m) {
    double lo = m.domain.lo;
    double hi = m.domain.hi;
    if (!std::isfinite(hi)) hi = std::max(lo + 10.0, 10.0 * std::max(lo, 1.0));
    double a = lo + 0.005 * (hi - lo);
    double b = hi - 0.005 * (hi - lo);

    auto clipped = [&m](double x) {
        const double km = m.deriv(x);
        const double kp = m.eval(x) / x;
        return !std::isfinite(km) || !std::isfinite(kp) || std::fabs(km) > kClip ||
               std::fabs(kp) > kClip;
    };
    for (int i = 0; i < 200 && a < b && clipped(a); ++i) a += 0.002 * (b - a);
    for (int i = 0; i < 200 && a < b && clipped(b); ++i) b -= 0.002 * (b - a);
    if (!(a < b)) throw EmptyDomain("wdiagram: window collapsed under curvature clipping");
    return Interval(a, b, false, false);
}

std::vector<CurvatureRecord> wdiagram(const MomentumFn& m, int n) {
    if (n < 2) throw BadParams("wdiagram: requires n >= 2");
    const Interval w = wdiagram_window(m);
    const double mid = 0.5 * (w.lo + w.hi);
    const double half = 0.5 * (w.hi - w.lo);
    std::vector<CurvatureRecord> out;
    out.reserve(n);
    for (int j = n - 1; j >= 0; --j)  // ascending in x
        out.push_back(curvatures(m, mid + half * std::cos((2 * j + 1) * kPi / (2 * n))));
    return out;
}

std::vector<std::pair<double, double>> discrete_curvature(const GeneratrixCurve& c) {
    const auto& s = c.samples();
    if (s.size() < 3) throw TooFewSamples("discrete_curvature: need at least 3 samples");
    std::vector<std::pair<double, double>> out;
    out.reserve(s.size() - 1);
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        const double ds = s[i + 1].s - s[i].s;
        out.emplace_back(0.5 * (s[i].x + s[i + 1].x), (s[i + 1].theta - s[i].theta) / ds);
    }
    return out;
}

void write_curvature_csv(std::ostream& os, const std::vector<CurvatureRecord>& records) {
    os << "x,k_m,k_p,H,K_G\n";
    char buf[200];
    for (const auto& r : records) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g\n", r.x, r.k_m, r.k_p,
                      r.H, r.K_G);
        os << buf;
    }
}

}  // namespace rotw
