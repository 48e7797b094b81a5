#include <doctest.h>

#include <cmath>
#include <random>

#include "rotw/curvature.hpp"
#include "rotw/prescribe.hpp"

using namespace rotw;

namespace {
constexpr double kPi = 3.14159265358979323846;

double window_sample(const Interval& d, double frac) {
    const double hi = std::isfinite(d.hi) ? d.hi : d.lo + 20;
    return d.lo + (hi - d.lo) * frac;
}
}  // namespace

TEST_SUITE("prescribe") {

TEST_CASE("minimal surfaces: H = 0") {
    const PrescribedBuild cat = from_mean_curvature([](double) { return 0.0; }, 1.0, 1.0);
    CHECK(cat.momentum.domain.lo == doctest::Approx(1.0).epsilon(1e-12));
    for (double x : {1.5, 3.0, 10.0})
        CHECK(cat.momentum.eval(x) == doctest::Approx(1.0 / x).epsilon(1e-14));

    const PrescribedBuild plane = from_mean_curvature([](double) { return 0.0; }, 0.0, 1.0);
    for (double x : {0.5, 2.0, 40.0}) CHECK(plane.momentum.eval(x) == 0.0);
}

TEST_CASE("constant mean curvature momenta") {
    const PrescribedBuild b =
        from_mean_curvature([](double) { return 0.5; }, 0.1, 1e-8);
    for (double x : {0.2, 0.5, 1.0, 1.5}) {
        CHECK(std::fabs(b.momentum.eval(x) - (0.5 * x + 0.1 / x)) < 1e-12);
    }
    // derivative from the exact identity
    for (double x : {0.3, 0.8}) {
        CHECK(std::fabs(b.momentum.deriv(x) - (0.5 + 0.1 / (x * x))) < 1e-11);
    }
}

TEST_CASE("polynomial mean curvature") {
    const PrescribedBuild b = from_mean_curvature([](double x) { return x; }, 0.0, 1e-8);
    for (double x : {0.2, 0.6, 1.0})
        CHECK(std::fabs(b.momentum.eval(x) - 2 * x * x / 3) < 1e-10);
}

TEST_CASE("prescribed mean curvature round trip") {
    std::mt19937 rng(31415);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int checked = 0;
    for (int trial = 0; trial < 12 && checked < 6; ++trial) {
        const double c0 = u(rng), c1 = u(rng), c2 = u(rng), c3 = u(rng);
        auto H = [=](double x) { return c0 + x * (c1 + x * (c2 + x * c3)); };
        PrescribedBuild b;
        try {
            b = from_mean_curvature(H, u(rng), 0.5);
        } catch (const EmptyDomain&) {
            continue;
        }
        const Interval d = b.momentum.domain;
        for (int i = 1; i < 100; ++i) {
            const double x = window_sample(d, 0.01 + 0.98 * i / 100.0);
            const CurvatureRecord rec = curvatures(b.momentum, x);
            CHECK(std::fabs(rec.H - H(x)) <= 1e-8 * (1 + std::fabs(H(x))));
        }
        ++checked;
    }
    CHECK(checked >= 6);
}

TEST_CASE("prescribed Gauss curvature round trip") {
    std::mt19937 rng(27182);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int checked = 0;
    for (int trial = 0; trial < 14 && checked < 6; ++trial) {
        const double c0 = u(rng), c1 = u(rng);
        auto Kg = [=](double x) { return c0 + c1 * x; };
        PrescribedBuild b;
        try {
            b = from_gauss_curvature(Kg, 0.25 + 0.5 * std::fabs(u(rng)), 0.1, +1);
        } catch (const EmptyDomain&) {
            continue;
        }
        const Interval d = b.momentum.domain;
        for (int i = 1; i < 100; ++i) {
            const double x = window_sample(d, 0.02 + 0.96 * i / 100.0);
            const CurvatureRecord rec = curvatures(b.momentum, x);
            CHECK(std::fabs(rec.K_G - Kg(x)) <= 1e-8 * (1 + std::fabs(Kg(x))));
        }
        ++checked;
    }
    CHECK(checked >= 6);
}

TEST_CASE("family structure: superposition in the constant") {
    auto H = [](double x) { return 0.4 + 0.1 * x; };
    const PrescribedBuild b1 = from_mean_curvature(H, 0.15, 0.5);
    const PrescribedBuild b2 = from_mean_curvature(H, -0.05, 0.5);
    for (double x : {0.4, 0.6, 0.9}) {
        const double diff = b1.momentum.eval(x) - b2.momentum.eval(x);
        CHECK(std::fabs(diff - 0.2 / x) < 5e-13);
    }
}

TEST_CASE("constant Gauss curvature momenta") {
    const PrescribedBuild pos = from_gauss_curvature([](double) { return 2.0; }, 0.3, 0.0, +1);
    for (double x : {0.1, 0.3, 0.5}) {
        CHECK(std::fabs(pos.momentum.eval(x) - std::sqrt(2 * x * x + 0.3)) < 1e-12);
    }

    const double s0 = std::sin(0.6);
    const PrescribedBuild cone =
        from_gauss_curvature([](double) { return 0.0; }, s0 * s0, 0.0, +1);
    for (double x : {0.5, 3.0}) CHECK(std::fabs(cone.momentum.eval(x) - s0) < 1e-13);

    const PrescribedBuild ps = from_gauss_curvature([](double) { return -1.0; }, 1.0, 0.0, +1);
    const MomentumFn tractrix = catalog({SurfaceKind::Pseudosphere, {{"a", 1.0}}});
    for (double x : {0.2, 0.5, 0.9})
        CHECK(std::fabs(ps.momentum.eval(x) - tractrix.eval(x)) < 1e-12);
    CHECK(ps.truncation.has_value());  // K -> 0 at the cusp edge
}

TEST_CASE("negative branch momentum") {
    const PrescribedBuild b = from_gauss_curvature([](double) { return 1.0; }, 0.0, 0.0, -1);
    for (double x : {0.2, 0.6}) CHECK(b.momentum.eval(x) == doctest::Approx(-x).epsilon(1e-12));
}

TEST_CASE("rolling-conic residuals for constant mean curvature") {
    auto H = [](double) { return 0.5; };
    // c > 0: elliptic roulette with a = 1/(2 H0), b^2 = c/H0
    {
        const PrescribedBuild b = from_mean_curvature(H, 0.1, 1e-8);
        const GeneratrixCurve curve =
            resample(reconstruct(b.momentum, std::sqrt(0.2), 0.0, 1, 10.0), 20001);
        CHECK(delaunay_residual(curve, {1.0, std::sqrt(0.2), +1}) < 1e-6);
    }
    // c < 0: hyperbolic roulette
    {
        const PrescribedBuild b = from_mean_curvature(H, -0.1, 1e-8);
        const GeneratrixCurve curve =
            resample(reconstruct(b.momentum, 1.0, 0.0, 1, 10.0), 20001);
        CHECK(delaunay_residual(curve, {1.0, std::sqrt(0.2), -1}) < 1e-6);
    }
    // c = 0 is the sphere, a limit case rather than a roulette
    {
        const PrescribedBuild b = from_mean_curvature(H, 0.0, 1e-8);
        const GeneratrixCurve curve =
            resample(reconstruct(b.momentum, 1.0, 0.0, 1, 3.0), 5001);
        CHECK(delaunay_residual(curve, {1.0, std::sqrt(0.2), +1}) > 0.1);
    }
}

TEST_CASE("catenary fit for the minimal family") {
    const PrescribedBuild b = from_mean_curvature([](double) { return 0.0; }, 1.0, 1.0);
    const GeneratrixCurve curve = resample(reconstruct(b.momentum, 1.0, 0.0, 1, 4.0), 2001);
    // fit the free z-translation of x = a cosh((z - z*)/a), a = 1
    double zstar = 0;
    for (const auto& st : curve.samples())
        zstar += st.z - std::acosh(std::max(st.x, 1.0));
    zstar /= static_cast<double>(curve.samples().size());
    double worst = 0;
    for (const auto& st : curve.samples())
        worst = std::max(worst, std::fabs(st.x - std::cosh(st.z - zstar)));
    CHECK(worst < 1e-6);
}

TEST_CASE("darboux profiles: sphere and pinned elliptic values") {
    const auto sphere = darboux_profile(1.0, DarbouxFamily::Positive, 1.0, 64);
    for (const auto& [r, z] : sphere) CHECK(std::fabs(r * r + z * z - 1.0) < 1e-12);

    const auto bulge = darboux_profile(1.0, DarbouxFamily::Positive, 0.5, 33);
    CHECK(bulge.back().first == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(std::fabs(bulge.back().second - 1.4674622093) < 1e-9);
}

TEST_CASE("darboux profile matches the tractrix graph") {
    const auto prof = darboux_profile(-1.0, DarbouxFamily::Pseudosphere, 0.0, 100);
    const MomentumFn m = catalog({SurfaceKind::Pseudosphere, {{"a", 1.0}}});
    const auto graph = graph_z_of_x(m, prof.front().first, prof.back().first, 1, 100);
    const double offset = prof.front().second - graph.front().second;
    for (std::size_t i = 0; i < prof.size(); ++i) {
        CHECK(std::fabs(prof[i].first - graph[i].first) < 1e-12);
        CHECK(std::fabs(prof[i].second - (graph[i].second + offset)) < 1e-8);
    }
}

TEST_CASE("darboux profile parameter validation") {
    CHECK_THROWS_AS(darboux_profile(1.0, DarbouxFamily::ConicalPoint, 0.5, 10), BadParams);
    CHECK_THROWS_AS(darboux_profile(-1.0, DarbouxFamily::ConicalPoint, 1.5, 10), BadParams);
    CHECK_THROWS_AS(darboux_profile(-1.0, DarbouxFamily::HyperboloidType, 0.0, 10), BadParams);
    CHECK_THROWS_AS(darboux_profile(1.0, DarbouxFamily::Positive, -0.5, 10), BadParams);
}

TEST_CASE("cross validation against the closed-form profiles") {
    const DarbouxReport sph = cross_validate_darboux(1.0, 0.0);
    CHECK(sph.family == DarbouxFamily::Positive);
    CHECK(sph.k == 1.0);
    CHECK(sph.sup_distance < 1e-8);

    const DarbouxReport pos = cross_validate_darboux(1.0, 0.75);
    CHECK(pos.family == DarbouxFamily::Positive);
    CHECK(pos.k == 0.5);
    CHECK(pos.sup_distance < 1e-7);

    const DarbouxReport con = cross_validate_darboux(-1.0, 0.75);
    CHECK(con.family == DarbouxFamily::ConicalPoint);
    CHECK(con.k == 0.5);
    CHECK(con.sup_distance < 1e-7);

    const DarbouxReport hyp = cross_validate_darboux(-1.0, 1.25);
    CHECK(hyp.family == DarbouxFamily::HyperboloidType);
    CHECK(hyp.k == 0.5);
    CHECK(hyp.sup_distance < 1e-7);

    const DarbouxReport ps = cross_validate_darboux(-1.0, 1.0);
    CHECK(ps.family == DarbouxFamily::Pseudosphere);
    CHECK(ps.sup_distance < 1e-7);

    CHECK_THROWS_AS(cross_validate_darboux(1.0, 1.5), EmptyDomain);
    CHECK_THROWS_AS(cross_validate_darboux(-1.0, -0.5), EmptyDomain);
}

TEST_CASE("preconditions") {
    CHECK_THROWS_AS(from_mean_curvature([](double) { return 0.0; }, 0.0, -1.0), BadParams);
    CHECK_THROWS_AS(from_gauss_curvature([](double) { return 1.0; }, 0.0, -1.0, 1), BadParams);
    CHECK_THROWS_AS(from_gauss_curvature([](double) { return 1.0; }, 0.0, 0.0, 2), BadParams);
    // K^2 = K0 x^2 + c with K0 > 0, c >= 1 is nowhere sub-unit
    CHECK_THROWS_AS(from_gauss_curvature([](double) { return 1.0; }, 1.5, 0.0, 1),
                    EmptyDomain);
    (void)kPi;
}

}  // TEST_SUITE
