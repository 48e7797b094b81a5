#include <doctest.h>

#include <cmath>

#include "rotw/curvature.hpp"

using namespace rotw;

TEST_SUITE("curvature") {

TEST_CASE("pinned records") {
    const CurvatureRecord s = curvatures(catalog({SurfaceKind::Sphere, {{"R", 2.0}}}), 1.0);
    CHECK(s.k_m == 0.5);
    CHECK(s.k_p == 0.5);
    CHECK(s.H == 0.5);
    CHECK(s.K_G == 0.25);

    const CurvatureRecord c = curvatures(catalog({SurfaceKind::Catenoid, {{"a", 1.0}}}), 2.0);
    CHECK(c.k_m == -0.25);
    CHECK(c.k_p == 0.25);
    CHECK(c.H == 0.0);
    CHECK(c.K_G == -0.0625);

    const MomentumFn plane = catalog({SurfaceKind::HorizontalPlane, {}});
    for (double x : {0.5, 3.0, 42.0}) {
        const CurvatureRecord r = curvatures(plane, x);
        CHECK(r.k_m == 0.0);
        CHECK(r.k_p == 0.0);
        CHECK(r.H == 0.0);
        CHECK(r.K_G == 0.0);
    }

    CHECK_THROWS_AS(curvatures(plane, -1.0), OutOfDomain);
    CHECK_THROWS_AS(curvatures(catalog({SurfaceKind::Sphere, {{"R", 1.0}}}), 1.5),
                    OutOfDomain);
}

TEST_CASE("identities hold bitwise") {
    for (const char* spec : {"sphere:R=2", "catenoid:a=1", "elasticoid:a=1,k=0.5",
                             "ellipsoid:a=2,b=1", "delaunay:H0=0.5,c=0.1"}) {
        const MomentumFn m = catalog(parse_surface_spec(spec));
        for (const auto& r : wdiagram(m, 100)) {
            CHECK(2 * r.H == r.k_m + r.k_p);
            CHECK(r.K_G == r.k_m * r.k_p);
        }
    }
}

TEST_CASE("wdiagram: elastic curve hyperbola") {
    const MomentumFn m = catalog({SurfaceKind::Elasticoid, {{"a", 1.0}, {"k", 0.5}}});
    for (const auto& r : wdiagram(m, 100)) {
        const double residual = r.k_m * r.k_m - 2 * r.k_p * r.k_m - 4 * 1.0 * 0.5;
        CHECK(std::fabs(residual) <= 1e-12);
    }
}

TEST_CASE("wdiagram: ellipsoid cubic") {
    const MomentumFn m = catalog({SurfaceKind::Ellipsoid, {{"a", 2.0}, {"b", 1.0}}});
    for (const auto& r : wdiagram(m, 100)) {
        const double rhs = 16.0 * r.k_p * r.k_p * r.k_p;
        CHECK(std::fabs(r.k_m - rhs) <= 1e-10 * (1 + std::fabs(r.k_m)));
    }
}

TEST_CASE("wdiagram: sphere is umbilical") {
    const MomentumFn m = catalog({SurfaceKind::Sphere, {{"R", 2.0}}});
    for (const auto& r : wdiagram(m, 50)) {
        CHECK(r.k_m == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(r.k_p == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(r.K_G == doctest::Approx(0.25).epsilon(1e-14));
    }
}

TEST_CASE("umbilical characterization") {
    auto umbilical = [](const MomentumFn& m) {
        for (const auto& r : wdiagram(m, 200))
            if (std::fabs(r.k_m - r.k_p) > 1e-10 * (1 + std::fabs(r.k_m))) return false;
        return true;
    };
    CHECK(umbilical(catalog({SurfaceKind::Sphere, {{"R", 1.5}}})));
    CHECK(umbilical(catalog({SurfaceKind::HorizontalPlane, {}})));
    CHECK(!umbilical(catalog({SurfaceKind::Catenoid, {{"a", 1.0}}})));
}

TEST_CASE("scaling covariance") {
    for (const char* spec : {"sphere:R=1", "elasticoid:a=1,k=0.5", "catenoid:a=1"}) {
        const MomentumFn m = catalog(parse_surface_spec(spec));
        const double lambda = 2.5;
        const MomentumFn ms = scale(m, lambda);
        const Interval w = wdiagram_window(m);
        for (int i = 1; i < 10; ++i) {
            const double x = w.lo + (w.hi - w.lo) * (i / 10.0);
            const CurvatureRecord r = curvatures(m, x);
            const CurvatureRecord rs = curvatures(ms, lambda * x);
            CHECK(rs.k_m == doctest::Approx(r.k_m / lambda).epsilon(1e-12));
            CHECK(rs.k_p == doctest::Approx(r.k_p / lambda).epsilon(1e-12));
            CHECK(rs.H == doctest::Approx(r.H / lambda).epsilon(1e-12));
            CHECK(rs.K_G == doctest::Approx(r.K_G / (lambda * lambda)).epsilon(1e-12));
        }
    }
}

TEST_CASE("discrete curvature: straight segment") {
    const MomentumFn plane = catalog({SurfaceKind::HorizontalPlane, {}});
    const GeneratrixCurve c = resample(reconstruct(plane, 1.0, 0.0, 1, 2.0), 50);
    for (const auto& [x, kappa] : discrete_curvature(c)) CHECK(std::fabs(kappa) < 1e-12);
}

TEST_CASE("discrete curvature: unit circle") {
    // generatrix of the torus (a=2, R=1) is the unit circle
    const MomentumFn m = catalog({SurfaceKind::Torus, {{"a", 2.0}, {"R", 1.0}}});
    const GeneratrixCurve c = resample(reconstruct(m, 2.0, 0.0, 1, 6.0), 20001);
    for (const auto& [x, kappa] : discrete_curvature(c))
        CHECK(std::fabs(kappa - 1.0) < 1e-6);
}

TEST_CASE("discrete curvature: catenary matches K'") {
    const MomentumFn m = catalog({SurfaceKind::Catenoid, {{"a", 1.0}}});
    const GeneratrixCurve c = resample(reconstruct(m, 1.0, 0.0, 1, 3.0), 20001);
    for (const auto& [xm, kappa] : discrete_curvature(c)) {
        const double expected = -1.0 / (xm * xm);
        CHECK(std::fabs(kappa - expected) <= 1e-4 * (1 + std::fabs(expected)));
    }
}

TEST_CASE("discrete curvature oracle across reconstructions") {
    for (const char* spec : {"elasticoid:a=1,k=0.5", "delaunay:H0=0.5,c=0.1"}) {
        const MomentumFn m = catalog(parse_surface_spec(spec));
        const Interval w = wdiagram_window(m);
        const GeneratrixCurve c =
            resample(reconstruct(m, 0.5 * (w.lo + w.hi), 0.0, 1, 4.0), 15000);
        for (const auto& [xm, kappa] : discrete_curvature(c)) {
            const double expected = m.deriv(xm);
            if (!std::isfinite(expected)) continue;
            CHECK(std::fabs(kappa - expected) <= 1e-4 * (1 + std::fabs(expected)));
        }
    }
}

TEST_CASE("discrete curvature: too few samples") {
    const MomentumFn plane = catalog({SurfaceKind::HorizontalPlane, {}});
    const GeneratrixCurve c = resample(reconstruct(plane, 1.0, 0.0, 1, 1.0), 2);
    CHECK_THROWS_AS(discrete_curvature(c), TooFewSamples);
}

}  // TEST_SUITE
