#include <doctest.h>

#include <cmath>

#include "idde/integrator.hpp"

using namespace idde;

namespace {

ImpulsiveSystem scalar_decay() {
    ImpulsiveSystem sys;
    sys.dimension = 1;
    sys.input_dimension = 1;
    sys.delay_bound = 0.0;
    sys.flow = [](double, const StateView& x, std::span<const double>, std::span<double> d) {
        d[0] = -x.at1(0.0);
    };
    return sys;
}

ImpulsiveSystem pure_jump(double factor) {
    ImpulsiveSystem sys;
    sys.dimension = 1;
    sys.input_dimension = 1;
    sys.delay_bound = 0.0;
    sys.flow = [](double, const StateView&, std::span<const double>, std::span<double> d) {
        d[0] = 0.0;
    };
    sys.jump = [factor](int, double, const StateView& x, std::span<const double>,
                        std::span<double> dx) { dx[0] = factor * x.at1(0.0); };
    return sys;
}

History point_history(double value) {
    return History::constant(1, 0.0, 0.0, std::span<const double>(&value, 1));
}

} // namespace

TEST_CASE("smooth scalar decay matches the analytic solution") {
    auto traj = simulate(scalar_decay(), point_history(1.0), InputSignal::zero(),
                         ImpulseSchedule{}, 1.0, 0.01);
    CHECK(std::abs(traj.history.eval(1.0)[0] - std::exp(-1.0)) < 1e-9);
}

TEST_CASE("pure jump cascade is exact in floating point") {
    auto sched = gen_periodic(0.0, 1.0, 5);
    auto traj = simulate(pure_jump(-0.5), point_history(1.0), InputSignal::zero(),
                         sched, 6.0, 0.1);
    REQUIRE(traj.events.size() == 5);
    // x = 2^-k on (k, k+1]
    CHECK(traj.history.eval(2.5)[0] == 0.25);
    CHECK(traj.history.eval(3.0)[0] == 0.125);
    CHECK(traj.history.left_limit(3.0)[0] == 0.25);
    CHECK(traj.history.eval(6.0)[0] == 0.03125); // bitwise 2^-5
    for (const auto& ev : traj.events) {
        CHECK(ev.post[0] == ev.pre[0] + ev.delta[0]);
        CHECK(ev.delta[0] == -0.5 * ev.pre[0]);
    }
}

TEST_CASE("delayed jump reads the constant history") {
    ImpulsiveSystem sys;
    sys.dimension = 1;
    sys.input_dimension = 1;
    sys.delay_bound = 0.01;
    sys.flow = [](double, const StateView&, std::span<const double>, std::span<double> d) {
        d[0] = 0.0;
    };
    sys.jump = [](int, double, const StateView& x, std::span<const double>,
                  std::span<double> dx) { dx[0] = -0.2 * x.at1(-0.01); };
    History phi = History::constant(1, 0.0, 0.01, std::vector<double>{1.0});
    ImpulseSchedule sched{{0.02}, ScheduleClass::All, 0.0};
    auto traj = simulate(sys, phi, InputSignal::zero(), sched, 0.04, 0.005);
    CHECK(traj.history.eval(0.02)[0] == doctest::Approx(0.8).epsilon(1e-14));
}

TEST_CASE("events are exactly the schedule times inside (t0, t_end]") {
    auto sched = gen_periodic(0.0, 0.5, 10); // 0.5 .. 5.0
    auto traj = simulate(pure_jump(-0.1), point_history(1.0), InputSignal::zero(),
                         sched, 2.0, 0.1);
    REQUIRE(traj.events.size() == 4); // 0.5, 1.0, 1.5, 2.0 (t_end included)
    CHECK(traj.events.back().t == 2.0);
    for (std::size_t i = 0; i < traj.events.size(); ++i) {
        CHECK(traj.events[i].k == static_cast<int>(i) + 1);
        CHECK(traj.events[i].t == sched.times[i]);
    }
}

TEST_CASE("determinism: identical inputs give bit-identical endpoints") {
    auto sched = gen_random_dwell(0.0, 0.2, 0.4, 10, 3);
    auto a = simulate(pure_jump(-0.3), point_history(1.0), InputSignal::sinusoid(1.0, 3.0),
                      sched, 3.0, 0.01);
    auto b = simulate(pure_jump(-0.3), point_history(1.0), InputSignal::sinusoid(1.0, 3.0),
                      sched, 3.0, 0.01);
    CHECK(a.history.eval(3.0)[0] == b.history.eval(3.0)[0]);
    CHECK(a.flow_evaluations == b.flow_evaluations);
}

TEST_CASE("zero initial data and zero input stay at the equilibrium") {
    ImpulsiveSystem sys;
    sys.dimension = 2;
    sys.input_dimension = 1;
    sys.delay_bound = 0.5;
    sys.min_discrete_delay = 0.5;
    sys.flow = [](double, const StateView& x, std::span<const double> w, std::span<double> d) {
        d[0] = -x.at(0.0)[0] + 0.5 * x.at(-0.5)[1] + w[0];
        d[1] = -x.at(0.0)[1] + w[0];
    };
    sys.jump = [](int, double, const StateView& x, std::span<const double>,
                  std::span<double> dx) {
        dx[0] = 0.25 * x.at(-0.5)[0];
        dx[1] = 0.0;
    };
    History phi = History::constant(2, 0.0, 0.5, std::vector<double>{0.0, 0.0});
    auto traj = simulate(sys, phi, InputSignal::zero(), gen_periodic(0.0, 1.0, 3), 3.5, 0.05);
    for (double t = 0.0; t <= 3.5; t += 0.25) {
        CHECK(traj.history.eval(t)[0] == 0.0);
        CHECK(traj.history.eval(t)[1] == 0.0);
    }
}

TEST_CASE("causality: a flow reaching beyond the lookback is refused") {
    ImpulsiveSystem sys;
    sys.dimension = 1;
    sys.input_dimension = 1;
    sys.delay_bound = 0.5;
    sys.flow = [](double, const StateView& x, std::span<const double>, std::span<double> d) {
        d[0] = x.at1(-1.0); // beyond the declared lookback 0.5
    };
    History phi = History::constant(1, 0.0, 0.5, std::vector<double>{1.0});
    CHECK_THROWS_AS((void)simulate(sys, phi, InputSignal::zero(), ImpulseSchedule{}, 1.0, 0.1),
                    DelayBoundError);
}

TEST_CASE("a step larger than the smallest discrete delay is rejected") {
    ImpulsiveSystem sys = scalar_decay();
    sys.delay_bound = 0.01;
    sys.min_discrete_delay = 0.01;
    History phi = History::constant(1, 0.0, 0.01, std::vector<double>{1.0});
    CHECK_THROWS_AS((void)simulate(sys, phi, InputSignal::zero(), ImpulseSchedule{}, 1.0, 0.02),
                    ParameterError);
}

TEST_CASE("divergence guard reports the time reached") {
    ImpulsiveSystem sys;
    sys.dimension = 1;
    sys.input_dimension = 1;
    sys.flow = [](double, const StateView& x, std::span<const double>, std::span<double> d) {
        d[0] = 3.0 * x.at1(0.0);
    };
    try {
        (void)simulate(sys, point_history(1.0), InputSignal::zero(), ImpulseSchedule{},
                       20.0, 0.01);
        FAIL("expected DivergenceError");
    } catch (const DivergenceError& e) {
        CHECK(e.time_reached > 0.0);
        CHECK(e.time_reached <= 20.0);
    }
}

TEST_CASE("refine_check: observed orders") {
    SUBCASE("smooth problem shows fourth order") {
        auto table = refine_check(scalar_decay(), point_history(1.0), InputSignal::zero(),
                                  ImpulseSchedule{}, 1.0, 0.02);
        CHECK(table.observed_order > 3.5);
        CHECK(table.observed_order < 4.5);
    }
    SUBCASE("pure jump cascade is step-size independent") {
        auto sched = gen_periodic(0.0, 1.0, 3);
        auto table = refine_check(pure_jump(-0.5), point_history(1.0), InputSignal::zero(),
                                  sched, 4.0, 0.1);
        CHECK(table.diff_coarse == 0.0);
        CHECK(table.diff_fine == 0.0);
        CHECK(std::isinf(table.observed_order));
    }
}

TEST_CASE("trajectory projection slices history, events and jumps") {
    ImpulsiveSystem sys;
    sys.dimension = 2;
    sys.input_dimension = 1;
    sys.flow = [](double, const StateView& x, std::span<const double>, std::span<double> d) {
        d[0] = -x.at(0.0)[0];
        d[1] = -2.0 * x.at(0.0)[1];
    };
    sys.jump = [](int, double, const StateView& x, std::span<const double>,
                  std::span<double> dx) {
        dx[0] = 0.0;
        dx[1] = -0.5 * x.at(0.0)[1];
    };
    History phi = History::constant(2, 0.0, 0.0, std::vector<double>{1.0, 2.0});
    auto traj = simulate(sys, phi, InputSignal::zero(), gen_periodic(0.0, 0.5, 2), 1.5, 0.05);
    auto part = traj.project(1, 1);
    CHECK(part.dimension() == 1);
    CHECK(part.history.eval(1.5)[0] == doctest::Approx(traj.history.eval(1.5)[1]).epsilon(1e-15));
    REQUIRE(part.events.size() == 2);
    CHECK(part.events[0].delta[0] == doctest::Approx(traj.events[0].delta[1]).epsilon(1e-15));
    CHECK(part.history.jumps().size() == 2);
}
