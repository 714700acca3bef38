#include <doctest.h>

#include <cmath>

#include "idde/history.hpp"
#include "idde/model.hpp"

using namespace idde;

namespace {

// analytic scalar history with exact node derivatives
History sampled_scalar(double origin, double horizon, double step,
                       double (*f)(double), double (*df)(double)) {
    std::vector<double> times;
    std::vector<Vec> values, derivs;
    const double a = origin - horizon;
    const long n = std::lround(horizon / step);
    for (long i = 0; i <= n; ++i) {
        const double t = (i == n) ? origin : a + static_cast<double>(i) * step;
        times.push_back(t);
        values.push_back({f(t)});
        derivs.push_back({df(t)});
    }
    return History::from_samples(1, origin, horizon, times, values, derivs);
}

double ident(double t) { return t; }
double one(double) { return 1.0; }
double square(double t) { return t * t; }
double two_t(double t) { return 2.0 * t; }

} // namespace

TEST_CASE("constant history evaluates to the constant everywhere") {
    const Vec c = {2.5, -1.0};
    History h = History::constant(2, 0.0, 3.0, c);
    for (double t : {-3.0, -1.7, -0.0001, 0.0}) {
        CHECK(h.eval(t)[0] == doctest::Approx(2.5).epsilon(1e-15));
        CHECK(h.eval(t)[1] == doctest::Approx(-1.0).epsilon(1e-15));
    }
}

TEST_CASE("jump semantics: eval is right-continuous, left_limit keeps the pre value") {
    const double two = 2.0, one_v = 1.0, zero = 0.0;
    History h = History::constant(1, 0.0, 0.0, std::span<const double>(&two, 1));
    h.append_node(1.0, std::span<const double>(&two, 1), std::span<const double>(&zero, 1));
    h.apply_jump(1.0, std::span<const double>(&one_v, 1), std::span<const double>(&zero, 1));
    h.append_node(2.0, std::span<const double>(&one_v, 1), std::span<const double>(&zero, 1));

    CHECK(h.eval(1.0)[0] == 1.0);
    CHECK(h.left_limit(1.0)[0] == 2.0);
    CHECK(h.eval(0.5)[0] == 2.0);
    CHECK(h.left_limit(0.5)[0] == 2.0);
    CHECK(h.jumps().size() == 1);
}

TEST_CASE("linear segment interpolates exactly") {
    History h = sampled_scalar(0.0, 1.0, 0.25, ident, one);
    CHECK(h.eval(-0.5)[0] == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(h.eval(-0.33)[0] == doctest::Approx(-0.33).epsilon(1e-12));
}

TEST_CASE("left limit off the jump set equals eval") {
    History h = sampled_scalar(1.0, 1.0, 0.125, square, two_t);
    CHECK(h.left_limit(0.5)[0] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(h.left_limit(0.5)[0] == h.eval(0.5)[0]);
}

TEST_CASE("two consecutive halving jumps cascade") {
    const double zero = 0.0;
    double v = 4.0;
    History h = History::constant(1, 0.0, 0.0, std::span<const double>(&v, 1));
    for (double tk : {1.0, 2.0}) {
        h.append_node(tk, std::span<const double>(&v, 1), std::span<const double>(&zero, 1));
        v *= 0.5;
        h.apply_jump(tk, std::span<const double>(&v, 1), std::span<const double>(&zero, 1));
    }
    CHECK(h.left_limit(2.0)[0] == 2.0);
    CHECK(h.eval(2.0)[0] == 1.0);
}

TEST_CASE("out-of-range queries raise range errors naming the record") {
    History h = History::constant(1, 0.0, 1.0, std::vector<double>{1.0});
    CHECK_THROWS_AS((void)h.eval(-1.5), RangeError);
    CHECK_THROWS_AS((void)h.eval(0.5), RangeError);
    CHECK_THROWS_AS((void)h.left_limit(-1.0), RangeError);
}

TEST_CASE("sup_norm_window sees endpoints and pre-jump values") {
    SUBCASE("ramp attains its sup at the left endpoint") {
        History h = sampled_scalar(0.0, 1.0, 0.125, ident, one);
        CHECK(h.sup_norm_window(0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("constant") {
        History h = History::constant(1, 0.0, 2.0, std::vector<double>{3.0});
        CHECK(h.sup_norm_window(0.0, 2.0) == doctest::Approx(3.0).epsilon(1e-15));
    }
    SUBCASE("a pre-jump spike inside the window is seen") {
        const double zero = 0.0, five = 5.0, one_v = 1.0;
        History h = History::constant(1, 0.0, 0.0, std::vector<double>{0.5});
        h.append_node(1.0, std::span<const double>(&five, 1), std::span<const double>(&zero, 1));
        h.apply_jump(1.0, std::span<const double>(&one_v, 1), std::span<const double>(&zero, 1));
        h.append_node(2.0, std::span<const double>(&one_v, 1), std::span<const double>(&zero, 1));
        CHECK(h.sup_norm_window(2.0, 1.5) == doctest::Approx(5.0).epsilon(1e-12));
    }
}

TEST_CASE("window_integral: constants and ramps are exact") {
    SUBCASE("constant") {
        History h = History::constant(1, 0.0, 1.0, std::vector<double>{2.0});
        CHECK(h.window_integral(0.0, 1.0)[0] == doctest::Approx(2.0).epsilon(1e-14));
    }
    SUBCASE("ramp") {
        History h = sampled_scalar(0.0, 1.0, 0.125, ident, one);
        CHECK(h.window_integral(0.0, 1.0)[0] == doctest::Approx(-0.5).epsilon(1e-13));
    }
}

TEST_CASE("window_integral of sin over [0, pi] against a dense trapezoid oracle") {
    std::vector<double> times;
    std::vector<Vec> values, derivs;
    const int n = 256;
    for (int i = 0; i <= n; ++i) {
        const double t = M_PI * i / n;
        times.push_back(t);
        values.push_back({std::sin(t)});
        derivs.push_back({std::cos(t)});
    }
    History h = History::from_samples(1, M_PI, M_PI, times, values, derivs);

    // independent oracle: high-resolution trapezoid on the true integrand
    const long N = 1'000'000;
    double oracle = 0.0;
    for (long i = 0; i < N; ++i) {
        const double a = M_PI * static_cast<double>(i) / static_cast<double>(N);
        const double b = M_PI * static_cast<double>(i + 1) / static_cast<double>(N);
        oracle += 0.5 * (b - a) * (std::sin(a) + std::sin(b));
    }

    const double got = h.window_integral(M_PI, M_PI)[0];
    CHECK(got == doctest::Approx(oracle).epsilon(1e-8));
    CHECK(got == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("append/jump contracts") {
    History h = History::constant(1, 0.0, 1.0, std::vector<double>{1.0});
    const double v = 1.0, zero = 0.0;
    SUBCASE("append must move forward") {
        CHECK_THROWS_AS(
            h.append_node(-0.5, std::span<const double>(&v, 1), std::span<const double>(&zero, 1)),
            StructuralError);
    }
    SUBCASE("jump must land on now()") {
        CHECK_THROWS_AS(
            h.apply_jump(0.5, std::span<const double>(&v, 1), std::span<const double>(&zero, 1)),
            StructuralError);
    }
    SUBCASE("identity jump keeps eval == left_limit") {
        h.append_node(1.0, std::span<const double>(&v, 1), std::span<const double>(&zero, 1));
        h.apply_jump(1.0, std::span<const double>(&v, 1), std::span<const double>(&zero, 1));
        CHECK(h.eval(1.0)[0] == h.left_limit(1.0)[0]);
    }
}

TEST_CASE("property: eval equals left_limit off the jump set") {
    History h = sampled_scalar(0.0, 2.0, 0.25, square, two_t);
    SplitMix64 rng_like(42); // deterministic probe points
    for (int i = 0; i < 50; ++i) {
        const double t = -2.0 + 2.0 * rng_like.uniform01();
        if (t <= -2.0) continue;
        CHECK(h.eval(t)[0] == doctest::Approx(h.left_limit(t)[0]).epsilon(1e-15));
    }
}

TEST_CASE("property: window_integral is additive at interior split points") {
    History h = sampled_scalar(0.0, 2.0, 0.1, square, two_t);
    const double whole = h.window_integral(0.0, 2.0)[0];
    // split [-2, 0] at m: integral over [-2, m] plus integral over [m, 0]
    for (double m : {-1.5, -1.0, -0.77, -0.31}) {
        const double first = h.window_integral(m, m + 2.0)[0];
        const double second = h.window_integral(0.0, -m)[0];
        CHECK(whole == doctest::Approx(first + second).epsilon(1e-12));
    }
}

TEST_CASE("property: sup_norm_window is monotone in the window") {
    History h = sampled_scalar(0.0, 2.0, 0.125, square, two_t);
    double prev = 0.0;
    for (double r = 0.0; r <= 2.0 + 1e-12; r += 0.2) {
        const double s = h.sup_norm_window(0.0, std::min(r, 2.0));
        CHECK(s >= prev - 1e-15);
        prev = s;
    }
}

TEST_CASE("property: cubic polynomials are reproduced exactly") {
    auto f = [](double t) { return ((t + 0.3) * t - 1.2) * t + 0.5; };   // t^3 + .3t^2 - 1.2t + .5
    auto df = [](double t) { return (3.0 * t + 0.6) * t - 1.2; };
    std::vector<double> times;
    std::vector<Vec> values, derivs;
    for (int i = 0; i <= 8; ++i) {
        const double t = -1.0 + 0.25 * i;
        times.push_back(t);
        values.push_back({f(t)});
        derivs.push_back({df(t)});
    }
    History h = History::from_samples(1, 1.0, 2.0, times, values, derivs);
    for (int i = 0; i <= 40; ++i) {
        const double t = -1.0 + 0.05 * i;
        CHECK(h.eval(std::min(t, 1.0))[0] == doctest::Approx(f(t)).epsilon(1e-10));
    }
}

TEST_CASE("pruning keeps recent queries valid and drops old jumps") {
    const double zero = 0.0;
    double v = 1.0;
    History h = History::constant(1, 0.0, 0.5, std::vector<double>{1.0});
    for (int k = 1; k <= 10; ++k) {
        const double tk = 0.5 * k;
        h.append_node(tk, std::span<const double>(&v, 1), std::span<const double>(&zero, 1));
        v *= 0.9;
        h.apply_jump(tk, std::span<const double>(&v, 1), std::span<const double>(&zero, 1));
    }
    const double tail_value = h.eval(4.8)[0];
    h.prune_before(4.0);
    CHECK(h.start() <= 4.0);
    CHECK(h.eval(4.8)[0] == tail_value);
    CHECK(h.jumps().front().t >= h.start());
    CHECK_THROWS_AS((void)h.eval(1.0), RangeError);
}
