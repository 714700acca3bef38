#include <doctest.h>

#include <cmath>

#include "idde/scenarios.hpp"
#include "idde/verifier.hpp"

using namespace idde;

namespace {

ImpulsiveSystem scalar_decay_driven() {
    ImpulsiveSystem sys;
    sys.dimension = 1;
    sys.input_dimension = 1;
    sys.flow = [](double, const StateView& x, std::span<const double> w, std::span<double> d) {
        d[0] = -x.at1(0.0) + w[0];
    };
    return sys;
}

Trajectory run_decay(double x0, const InputSignal& w, double t_end = 10.0) {
    History phi = History::constant(1, 0.0, 0.0, std::span<const double>(&x0, 1));
    return simulate(scalar_decay_driven(), phi, w, ImpulseSchedule{}, t_end, 0.01);
}

} // namespace

TEST_CASE("envelope check on exact exponentials") {
    SUBCASE("zero trajectory passes any envelope") {
        auto traj = run_decay(0.0, InputSignal::zero());
        CHECK(check_envelope(traj, {1.0, 1.0, 0.0, 1.0}).pass);
        CHECK(check_envelope(traj, {5.0, 0.1, 2.0, 2.0}).pass);
    }
    SUBCASE("e^{-t} sits exactly on the M = 1, lambda = 1 envelope") {
        auto traj = run_decay(1.0, InputSignal::zero());
        auto rep = check_envelope(traj, {1.0, 1.0, 0.0, 1.0});
        CHECK(rep.pass);
        CHECK(std::abs(rep.max_excess) < 1e-8);
    }
    SUBCASE("driven by a unit step, gamma(s) = s absorbs the offset") {
        auto w = InputSignal::piecewise_constant({0.0}, {{1.0}});
        auto traj = run_decay(1.0, w);
        CHECK(check_envelope(traj, {1.0, 1.0, 1.0, 1.0}).pass);
    }
    SUBCASE("an undersized envelope is rejected with the worst point") {
        auto traj = run_decay(1.0, InputSignal::zero());
        auto rep = check_envelope(traj, {1.0, 2.0, 0.0, 1.0}); // claims decay rate 2
        CHECK_FALSE(rep.pass);
        CHECK(rep.max_excess > 0.0);
        CHECK(rep.max_relative_violation > 0.0);
    }
}

TEST_CASE("envelope monotonicity: enlarging the envelope never breaks a pass") {
    auto traj = run_decay(1.0, InputSignal::sinusoid(0.5, 3.0));
    SplitMix64 rng(41);
    for (int i = 0; i < 40; ++i) {
        EnvelopeSpec env{rng.uniform(1.0, 3.0), rng.uniform(0.2, 1.5),
                         rng.uniform(0.0, 2.0), rng.uniform(0.5, 2.0)};
        if (!check_envelope(traj, env).pass) continue;
        EnvelopeSpec bigger = env;
        bigger.M *= 1.0 + rng.uniform01();
        bigger.c += rng.uniform01();
        bigger.lambda *= 1.0 - 0.5 * rng.uniform01();
        CHECK(check_envelope(traj, bigger).pass);
    }
}

TEST_CASE("beta scales linearly in the size argument") {
    EnvelopeSpec env{2.0, 0.7, 0.0, 1.0};
    for (double s : {0.1, 1.0, 3.7})
        CHECK(env.beta(2.0 * s, 1.3) == doctest::Approx(2.0 * env.beta(s, 1.3)).epsilon(1e-15));
}

TEST_CASE("fit recovers the rate of a pure exponential") {
    std::vector<Trajectory> runs;
    runs.push_back(run_decay(1.0, InputSignal::zero()));
    auto fit = fit_envelope(runs);
    REQUIRE(fit.success);
    CHECK(fit.envelope.lambda == doctest::Approx(1.0).epsilon(0.1));
    CHECK(fit.envelope.M >= 1.0);
    CHECK(fit.envelope.M <= 1.1);
    CHECK(check_envelope(runs[0], fit.envelope).pass);
}

TEST_CASE("fit covers driven members and re-passes its training set") {
    std::vector<Trajectory> runs;
    runs.push_back(run_decay(1.0, InputSignal::zero()));
    runs.push_back(run_decay(0.5, InputSignal::zero()));
    runs.push_back(run_decay(1.0, InputSignal::piecewise_constant({0.0}, {{0.5}})));
    runs.push_back(run_decay(1.0, InputSignal::piecewise_constant({0.0}, {{2.0}})));
    auto fit = fit_envelope(runs);
    REQUIRE(fit.success);
    for (const auto& r : runs) CHECK(check_envelope(r, fit.envelope).pass);
}

TEST_CASE("non-decaying zero-input member defeats the fit") {
    std::vector<Trajectory> runs;
    runs.push_back(run_decay(1.0, InputSignal::zero()));
    // frozen state: final norm equals the initial norm, no decay witness
    ImpulsiveSystem frozen;
    frozen.dimension = 1;
    frozen.input_dimension = 1;
    frozen.flow = [](double, const StateView&, std::span<const double>, std::span<double> d) {
        d[0] = 0.0;
    };
    History phi = History::constant(1, 0.0, 0.0, std::vector<double>{2.0});
    runs.push_back(simulate(frozen, phi, InputSignal::zero(), ImpulseSchedule{}, 10.0, 0.01));
    auto fit = fit_envelope(runs);
    CHECK_FALSE(fit.success);
    CHECK(fit.failure_reason.find("decay") != std::string::npos);
}

TEST_CASE("zero-input convergence ratios") {
    SUBCASE("exponential") {
        std::vector<Trajectory> runs;
        runs.push_back(run_decay(1.0, InputSignal::zero(), 10.0));
        auto rep = zero_input_convergence(runs);
        REQUIRE(rep.ratios.size() == 1);
        CHECK(rep.ratios[0] == doctest::Approx(std::exp(-10.0)).epsilon(1e-6));
    }
    SUBCASE("halving cascade") {
        ImpulsiveSystem sys;
        sys.dimension = 1;
        sys.input_dimension = 1;
        sys.flow = [](double, const StateView&, std::span<const double>, std::span<double> d) {
            d[0] = 0.0;
        };
        sys.jump = [](int, double, const StateView& x, std::span<const double>,
                      std::span<double> dx) { dx[0] = -0.5 * x.at1(0.0); };
        History phi = History::constant(1, 0.0, 0.0, std::vector<double>{1.0});
        std::vector<Trajectory> runs;
        runs.push_back(simulate(sys, phi, InputSignal::zero(), gen_periodic(0.0, 1.0, 5), 6.0, 0.1));
        auto rep = zero_input_convergence(runs);
        CHECK(rep.max_ratio == doctest::Approx(std::pow(2.0, -5.0)).epsilon(1e-12));
    }
    SUBCASE("driven members are rejected") {
        std::vector<Trajectory> runs;
        runs.push_back(run_decay(1.0, InputSignal::sinusoid(1.0, 2.0)));
        CHECK_THROWS_AS((void)zero_input_convergence(runs), ParameterError);
    }
}

TEST_CASE("synchronization scenario: zero-input ensemble admits a witness") {
    auto p = Example2Params::chua();
    auto sys = example2_coupled_error(p);
    History phi = example2_nominal_history(p);
    auto sched = gen_periodic(0.0, 0.01, 500);
    std::vector<Trajectory> runs;
    runs.push_back(
        simulate(sys, phi, InputSignal::zero(), sched, 5.0, 0.002).project(3, 3));
    auto fit = fit_envelope(runs);
    REQUIRE(fit.success);
    CHECK(fit.envelope.lambda > 0.0);
    CHECK(check_envelope(runs[0], fit.envelope).pass);
}
