#include <doctest.h>

#include <cmath>

#include "idde/model.hpp"

using namespace idde;

TEST_CASE("validate_schedule: dwell classes") {
    SUBCASE("periodic 2.1 sequence satisfies inf_dwell(2.06)") {
        ImpulseSchedule s{{2.1, 4.2, 6.3}, ScheduleClass::InfDwell, 2.06};
        CHECK(validate_schedule(s, 0.0).ok);
    }
    SUBCASE("a short gap is reported with its index") {
        ImpulseSchedule s{{1.0, 1.5}, ScheduleClass::InfDwell, 2.0};
        auto v = validate_schedule(s, 0.0);
        CHECK_FALSE(v.ok);
        CHECK(v.violating_index == 2);
        CHECK(v.gap == doctest::Approx(0.5));
    }
    SUBCASE("empty schedule is vacuously fine") {
        ImpulseSchedule s{{}, ScheduleClass::All, 0.0};
        CHECK(validate_schedule(s, 0.0).ok);
    }
    SUBCASE("sup_dwell also constrains the opening gap") {
        ImpulseSchedule s{{1.5, 2.0}, ScheduleClass::SupDwell, 1.0};
        auto v = validate_schedule(s, 0.0);
        CHECK_FALSE(v.ok);
        CHECK(v.violating_index == 1);
    }
    SUBCASE("non-monotone times are a structural error") {
        ImpulseSchedule s{{1.0, 0.5}, ScheduleClass::All, 0.0};
        CHECK_THROWS_AS((void)validate_schedule(s, 0.0), StructuralError);
    }
}

TEST_CASE("gen_periodic") {
    SUBCASE("small delta") {
        auto s = gen_periodic(0.0, 0.01, 3);
        REQUIRE(s.times.size() == 3);
        CHECK(s.times[0] == doctest::Approx(0.01).epsilon(1e-15));
        CHECK(s.times[1] == doctest::Approx(0.02).epsilon(1e-15));
        CHECK(s.times[2] == doctest::Approx(0.03).epsilon(1e-15));
    }
    SUBCASE("offset origin") {
        auto s = gen_periodic(5.0, 2.0, 2);
        CHECK(s.times == std::vector<double>{7.0, 9.0});
    }
    SUBCASE("count zero") { CHECK(gen_periodic(0.0, 1.0, 0).times.empty()); }
    SUBCASE("bad delta") { CHECK_THROWS_AS(gen_periodic(0.0, 0.0, 1), ParameterError); }
    SUBCASE("validates as both dwell classes with its own delta") {
        auto s = gen_periodic(0.0, 0.7, 10);
        CHECK(validate_schedule(s, 0.0).ok);
        s.declared = ScheduleClass::SupDwell;
        s.delta = 0.7 * (1.0 + 1e-12);
        CHECK(validate_schedule(s, 0.0).ok);
    }
}

TEST_CASE("gen_random_dwell") {
    SUBCASE("degenerate interval gives a periodic schedule") {
        auto s = gen_random_dwell(0.0, 1.0, 1.0, 5, 7);
        for (std::size_t i = 0; i < s.times.size(); ++i)
            CHECK(s.times[i] == doctest::Approx(static_cast<double>(i + 1)).epsilon(1e-12));
    }
    SUBCASE("output revalidates in both declared classes") {
        auto s = gen_random_dwell(0.0, 0.5, 1.5, 40, 12345);
        CHECK(validate_schedule(s, 0.0).ok);          // inf_dwell(0.5)
        s.declared = ScheduleClass::SupDwell;
        s.delta = 1.5;
        CHECK(validate_schedule(s, 0.0).ok);
    }
    SUBCASE("same seed, same schedule") {
        auto a = gen_random_dwell(0.0, 0.2, 0.9, 20, 99);
        auto b = gen_random_dwell(0.0, 0.2, 0.9, 20, 99);
        CHECK(a.times == b.times);
    }
    SUBCASE("bad parameters") {
        CHECK_THROWS_AS(gen_random_dwell(0.0, 0.0, 1.0, 3, 1), ParameterError);
        CHECK_THROWS_AS(gen_random_dwell(0.0, 2.0, 1.0, 3, 1), ParameterError);
    }
}

TEST_CASE("zeta counts impulses inside the jump-delay window") {
    ImpulseSchedule s = gen_periodic(0.0, 0.01, 10);
    CHECK(zeta_from_schedule(s, 0.01) == 0);
    CHECK(zeta_from_schedule(s, 0.011) == 1);
    CHECK(zeta_from_schedule(s, 0.025) == 2);
}

TEST_CASE("input signals") {
    SUBCASE("continuous kinds have left limits equal to values") {
        auto w1 = InputSignal::exp_decay(5.0, 1.0);
        auto w2 = InputSignal::sinusoid(2.0, 14.0 * M_PI);
        for (double t : {0.0, 0.3, 1.7}) {
            CHECK(w1.left_limit(t)[0] == w1.value(t)[0]);
            CHECK(w2.left_limit(t)[0] == w2.value(t)[0]);
        }
        CHECK(w1.value(1.0)[0] == doctest::Approx(5.0 * std::exp(-1.0)));
    }
    SUBCASE("piecewise table is right-continuous with plateau left limits") {
        auto w = InputSignal::piecewise_constant({0.0, 1.0, 2.0}, {{0.5}, {1.5}, {-1.0}});
        CHECK(w.value(1.0)[0] == 1.5);
        CHECK(w.left_limit(1.0)[0] == 0.5);
        CHECK(w.value(0.999)[0] == 0.5);
        CHECK(w.value(5.0)[0] == -1.0);
        CHECK(w.left_limit(2.0)[0] == 1.5);
    }
    SUBCASE("window_sup is exact for the parametric kinds") {
        auto w = InputSignal::exp_decay(5.0, 1.0);
        CHECK(w.window_sup(0.0, 2.0) == doctest::Approx(5.0));
        CHECK(w.window_sup(1.0, 2.0) == doctest::Approx(5.0 * std::exp(-1.0)));
        auto s = InputSignal::sinusoid(2.0, M_PI); // period 2
        CHECK(s.window_sup(0.0, 1.0) == doctest::Approx(2.0));      // contains t = 1/2
        CHECK(s.window_sup(0.0, 0.25) == doctest::Approx(2.0 * std::sin(M_PI * 0.25)));
        auto z = InputSignal::zero(2);
        CHECK(z.window_sup(0.0, 10.0) == 0.0);
    }
}

TEST_CASE("state view guards the lookback") {
    History h = History::constant(1, 0.0, 1.0, std::vector<double>{1.0});
    StateView v(h, 0.0, 1.0);
    CHECK(v.at1(0.0) == 1.0);
    CHECK(v.at1(-1.0) == 1.0);
    CHECK_THROWS_AS((void)v.at1(-2.0), DelayBoundError);
    CHECK_THROWS_AS((void)v.at1(0.5), DelayBoundError);
    CHECK_THROWS_AS((void)v.sup_norm(3.0), DelayBoundError);
}

TEST_CASE("state view override supplies the stage value at offset zero") {
    History h = History::constant(1, 0.0, 1.0, std::vector<double>{1.0});
    const double stage = 4.0;
    StateView v(h, 0.25, 1.0, std::span<const double>(&stage, 1));
    CHECK(v.at1(0.0) == 4.0);
    CHECK(v.at1(-0.5) == 1.0); // history value
    // lookups strictly inside the unfinished step are refused
    CHECK_THROWS_AS((void)v.at1(-0.1), DelayBoundError);
}
