#include <doctest.h>

#include <cmath>
#include <random>

#include "rotw/numerics.hpp"

using namespace rotw;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Independent oracle: composite midpoint rule with a fixed panel count,
// Kahan-summed.  Used to pin the elliptic integral values.
double midpoint_oracle(const std::function<double(double)>& f, double a, double b,
                       std::size_t panels) {
    const double h = (b - a) / static_cast<double>(panels);
    double sum = 0, comp = 0;
    for (std::size_t i = 0; i < panels; ++i) {
        const double x = a + (static_cast<double>(i) + 0.5) * h;
        const double term = f(x) - comp;
        const double next = sum + term;
        comp = (next - sum) - term;
        sum = next;
    }
    return sum * h;
}

double second_kind_integrand(double k, double u) {
    const double su = std::sin(u);
    return std::sqrt(1 - k * k * su * su);
}

}  // namespace

TEST_SUITE("numerics") {

TEST_CASE("interval invariants") {
    CHECK_THROWS_AS(Interval(2.0, 1.0), BadParams);
    CHECK_THROWS_AS(Interval(std::nan(""), 1.0), BadParams);
    CHECK_THROWS_AS(Interval(-INFINITY, 1.0, false, true), BadParams);
    Interval open(0.0, INFINITY);
    CHECK(open.contains(5.0));
    CHECK(!open.contains(0.0));
    Interval closed(0.0, 1.0, false, false);
    CHECK(closed.contains(0.0));
    CHECK(!closed.interior_contains(0.0));
}

TEST_CASE("tolerance invariants") {
    CHECK_THROWS_AS(Tolerance(0.0, 1e-10), BadParams);
    CHECK_THROWS_AS(Tolerance(1e-10, 1e-17), BadParams);
    Tolerance def;
    CHECK(def.abs == 1e-10);
    CHECK(def.max_steps == 1000000);
}

TEST_CASE("quadrature: polynomial") {
    const double v = integrate_adaptive([](double x) { return x; }, 0.0, 1.0);
    CHECK(v == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("quadrature: arcsin endpoint singularity") {
    const double v =
        integrate_adaptive([](double x) { return 1.0 / std::sqrt(1 - x * x); }, 0.0, 1.0);
    CHECK(std::fabs(v - kPi / 2) < 1e-10);
}

TEST_CASE("quadrature: elliptic integrand against the midpoint oracle") {
    auto f = [](double u) { return second_kind_integrand(0.5, u); };
    const double oracle = midpoint_oracle(f, 0.0, kPi / 2, 1000000);
    const double quad = integrate_adaptive(f, 0.0, kPi / 2, Tolerance(1e-12, 1e-12));
    CHECK(std::fabs(oracle - 1.4674622093394272) < 1e-11);
    CHECK(std::fabs(quad - oracle) < 1e-10);
}

TEST_CASE("quadrature: linearity on random smooth functions") {
    std::mt19937 rng(20240811);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        const double a0 = coef(rng), a1 = coef(rng), a2 = coef(rng);
        const double b0 = coef(rng), b1 = coef(rng), b2 = coef(rng);
        auto f = [=](double x) { return a0 + a1 * std::sin(3 * x) + a2 * x * x; };
        auto g = [=](double x) { return b0 * std::exp(x) + b1 * x + b2 * std::cos(x); };
        const double alpha = coef(rng), beta = coef(rng);
        auto combo = [&](double x) { return alpha * f(x) + beta * g(x); };
        const double lhs = integrate_adaptive(combo, 0.0, 1.0);
        const double rhs = alpha * integrate_adaptive(f, 0.0, 1.0) +
                           beta * integrate_adaptive(g, 0.0, 1.0);
        CHECK(std::fabs(lhs - rhs) < 1e-9);
    }
}

TEST_CASE("quadrature: NaN in the interior") {
    auto f = [](double x) { return x < 0.5 ? 1.0 : std::nan(""); };
    CHECK_THROWS_AS(integrate_adaptive(f, 0.0, 1.0), NonFinite);
}

TEST_CASE("quadrature: panel budget") {
    auto f = [](double x) { return std::sin(1000 * x); };
    CHECK_THROWS_AS(integrate_adaptive(f, 0.0, 1.0, Tolerance(1e-13, 1e-13, 4)),
                    NonConvergence);
}

TEST_CASE("find_root: basics") {
    const double r1 = find_root([](double x) { return x * x - 2; }, Interval(1.0, 2.0));
    CHECK(std::fabs(r1 - std::sqrt(2.0)) < 1e-9);
    const double r2 = find_root([](double x) { return std::cos(x); }, Interval(1.0, 2.0));
    CHECK(std::fabs(r2 - kPi / 2) < 1e-9);
    // turning point of the catenoid momentum K = 1/x
    const double r3 =
        find_root([](double x) { return 1 - 1 / (x * x); }, Interval(0.5, 2.0));
    CHECK(std::fabs(r3 - 1.0) < 1e-8);
}

TEST_CASE("find_root: no bracket") {
    CHECK_THROWS_AS(find_root([](double x) { return x * x + 1; }, Interval(0.0, 1.0)),
                    NoBracket);
}

TEST_CASE("find_root: result stays inside the bracket") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        const double root = u(rng);
        const double shift = std::fabs(u(rng)) + 0.1;
        auto f = [root](double x) { return std::atan(x - root); };
        const Interval bracket(root - shift, root + 2 * shift);
        const double r = find_root(f, bracket);
        CHECK(r >= bracket.lo);
        CHECK(r <= bracket.hi);
        CHECK(std::fabs(r - root) < 1e-8);
    }
}

TEST_CASE("elliptic_e_inc: pinned values") {
    CHECK(std::fabs(elliptic_e_inc(0.0, 0.7) - 0.7) < 1e-12);
    CHECK(std::fabs(elliptic_e_inc(1.0, kPi / 2) - 1.0) < 1e-12);
    auto f = [](double u) { return second_kind_integrand(0.5, u); };
    const double oracle = midpoint_oracle(f, 0.0, kPi / 2, 1000000);
    CHECK(std::fabs(elliptic_e_inc(0.5, kPi / 2) - oracle) < 1e-11);
    CHECK(std::fabs(elliptic_e_inc(0.5, kPi / 2) - 1.4674622093) < 1e-9);
}

TEST_CASE("elliptic_e_inc: odd in phi, bitwise") {
    for (double k : {0.0, 0.3, 0.9, 1.0, 2.0}) {
        for (double phi : {0.1, 0.25, 0.4}) {
            CHECK(elliptic_e_inc(k, -phi) == -elliptic_e_inc(k, phi));
        }
    }
    CHECK(elliptic_e_inc(0.5, 0.0) == 0.0);
}

TEST_CASE("elliptic_e_inc: modulus above one") {
    const double phi_max = std::asin(0.5);
    CHECK(std::isfinite(elliptic_e_inc(2.0, phi_max - 1e-6)));
    CHECK(std::isfinite(elliptic_e_inc(2.0, phi_max)));
    CHECK_THROWS_AS(elliptic_e_inc(2.0, 0.6), DomainError);
    CHECK_THROWS_AS(elliptic_e_inc(-0.5, 0.3), DomainError);
}

TEST_CASE("elliptic_e_inc: amplitude beyond pi/2 reduces by periodicity") {
    auto f = [](double u) { return second_kind_integrand(0.3, u); };
    const double direct = midpoint_oracle(f, 0.0, 2.5, 1000000);
    CHECK(std::fabs(elliptic_e_inc(0.3, 2.5) - direct) < 1e-10);
}

TEST_CASE("fd_derivative") {
    CHECK(std::fabs(fd_derivative([](double x) { return x * x; }, 3.0) - 6.0) < 1e-8);
    // sphere of radius 2: K = x/2
    CHECK(std::fabs(fd_derivative([](double x) { return x / 2; }, 1.0) - 0.5) < 1e-9);
    // elastic momentum with a = 1, k = 0: K = x^2, so K'(0.3) = 0.6
    CHECK(std::fabs(fd_derivative([](double x) { return x * x; }, 0.3) - 0.6) < 1e-9);
    CHECK_THROWS_AS(fd_derivative([](double x) { return std::sqrt(x); }, 0.0), NonFinite);
}

TEST_CASE("solve_ivp: constant and exponential") {
    auto zero = [](double, const StateVec& y) { return StateVec{0.0 * y[0]}; };
    Trajectory t0 = solve_ivp(zero, 0.0, {1.0}, 5.0);
    CHECK(t0.s.back() == 5.0);
    CHECK(t0.y.back()[0] == 1.0);

    auto expf = [](double, const StateVec& y) { return StateVec{y[0]}; };
    Trajectory t1 = solve_ivp(expf, 0.0, {1.0}, 1.0);
    CHECK(std::fabs(t1.y.back()[0] - std::exp(1.0)) < 1e-9);
}

TEST_CASE("solve_ivp: unit-curvature frame flow") {
    auto frame = [](double, const StateVec& y) {
        return StateVec{std::cos(y[2]), std::sin(y[2]), 1.0};
    };
    Trajectory t = solve_ivp(frame, 0.0, {1.0, 0.0, 0.0}, kPi / 2);
    // closed form x = 1 + sin s, z = 1 - cos s, theta = s
    CHECK(std::fabs(t.y.back()[0] - 2.0) < 1e-9);
    CHECK(std::fabs(t.y.back()[1] - 1.0) < 1e-9);
    CHECK(std::fabs(t.y.back()[2] - kPi / 2) < 1e-12);
    const StateVec mid = t.eval(0.7);
    CHECK(std::fabs(mid[0] - (1 + std::sin(0.7))) < 1e-8);
    CHECK(std::fabs(mid[1] - (1 - std::cos(0.7))) < 1e-8);
}

TEST_CASE("solve_ivp: backward integration") {
    auto expf = [](double, const StateVec& y) { return StateVec{y[0]}; };
    Trajectory t = solve_ivp(expf, 0.0, {1.0}, -1.0);
    CHECK(std::fabs(t.y.back()[0] - std::exp(-1.0)) < 1e-9);
}

TEST_CASE("solve_ivp: event localization and terminal truncation") {
    auto one = [](double, const StateVec&) { return StateVec{1.0}; };
    IvpOptions opts;
    opts.events.push_back({[](double, const StateVec& y) { return y[0]; }, false, "zero"});
    Trajectory t = solve_ivp(one, 0.0, {-1.0}, 3.0, Tolerance(), opts);
    REQUIRE(t.events.size() == 1);
    CHECK(std::fabs(t.events[0].s - 1.0) <= 1e-9);
    CHECK(t.s.back() == 3.0);

    IvpOptions term;
    term.events.push_back({[](double, const StateVec& y) { return y[0]; }, true, "zero"});
    Trajectory t2 = solve_ivp(one, 0.0, {-1.0}, 3.0, Tolerance(), term);
    CHECK(t2.terminated_by_event);
    CHECK(std::fabs(t2.s.back() - 1.0) <= 1e-9);
    CHECK(std::fabs(t2.y.back()[0]) <= 1e-8);
}

TEST_CASE("solve_ivp: event stall") {
    auto still = [](double, const StateVec&) { return StateVec{0.0}; };
    IvpOptions opts;
    opts.max_step = 0.1;  // every crossing of the fast event falls inside a step
    opts.events.push_back(
        {[](double s, const StateVec&) { return std::cos(10 * s); }, false, "fast"});
    CHECK_THROWS_AS(solve_ivp(still, 0.0, {0.0}, 3.0, Tolerance(0.4, 1e-10), opts),
                    EventStall);
}

TEST_CASE("solve_ivp: trajectory includes both endpoints") {
    auto expf = [](double, const StateVec& y) { return StateVec{y[0]}; };
    Trajectory t = solve_ivp(expf, 0.25, {2.0}, 1.75);
    CHECK(t.s.front() == 0.25);
    CHECK(t.s.back() == 1.75);
}

TEST_CASE("hermite table") {
    std::vector<double> xs, ys, dys;
    for (int i = 0; i <= 20; ++i) {
        const double x = i * 0.15;
        xs.push_back(x);
        ys.push_back(std::sin(x));
        dys.push_back(std::cos(x));
    }
    HermiteTable table(xs, ys, dys);
    CHECK(table(xs[7]) == ys[7]);  // node-exact
    for (double x : {0.05, 0.4, 1.234, 2.9}) {
        CHECK(std::fabs(table(x) - std::sin(x)) < 1e-6);
    }
}

}  // TEST_SUITE
