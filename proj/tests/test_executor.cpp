#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cube2/executor.hpp"
#include "cube2/solver.hpp"
#include "support/fixtures.hpp"

#include <cmath>

using namespace cube2;
using cube2::testing::shared_table;

namespace {

Planner oracle_planner() {
    return [](const CanonicalState& s) { return oracle_solve(s, shared_table()); };
}

int expected_actions(const GenMoveSeq& plan) {
    int n = 0;
    for (auto m : plan) n += is_prime(m) ? 2 : 4;
    return n;
}

// |observed - expected| in units of the binomial standard deviation.
double z_score(int successes, int trials, double p) {
    double sd = std::sqrt(trials * p * (1.0 - p));
    return std::abs(successes - trials * p) / sd;
}

}  // namespace

TEST_CASE("perfect actuators execute compiled plans exactly") {
    const auto perfect = ActuationModel::perfect();
    const ExecutorConfig config;
    Rng pick(41);
    for (int i = 0; i < 200; ++i) {
        auto scramble = testing::random_canonical(pick);
        if (is_solved(scramble)) continue;
        auto plan = oracle_solve(scramble, shared_table());
        for (auto mode : {ExecutionMode::Rollback, ExecutionMode::OpenLoop}) {
            auto rng = make_rng(7, i);
            auto r = execute_episode(scramble, mode, oracle_planner(), perfect, config, rng);
            REQUIRE(r.success);
            CHECK(r.all_actions_succeeded);
            CHECK(r.replans == 0);
            CHECK(r.initial_plan == plan);
            CHECK(r.atomic_actions == expected_actions(plan));

            // Intermediate states follow apply_seq move by move: a prime
            // move commits once, a clockwise one as three U' twists.
            auto s = scramble;
            std::size_t k = 0;
            for (std::size_t j = 0; j < plan.size(); ++j) {
                auto m = plan[j];
                auto rec = r.trace[k++];
                CHECK(rec.kind == ActionKind::Rotate);
                int twists = is_prime(m) ? 1 : 3;
                auto unit = is_prime(m) ? m : inverse(m);
                for (int t = 0; t < twists; ++t) {
                    rec = r.trace[k++];
                    s = apply(s, unit);
                    CHECK(rec.kind == ActionKind::Twist);
                    CHECK(rec.committed == unit);
                    CHECK(rec.rank == rank(s));
                }
                CHECK(s == apply_seq(scramble, std::span(plan).first(j + 1)));
            }
            CHECK(r.final_state == apply_seq(scramble, plan));
        }
    }
}

TEST_CASE("a solved scramble needs no actions") {
    auto rng = make_rng(1);
    for (auto mode : {ExecutionMode::Rollback, ExecutionMode::OpenLoop}) {
        auto r = execute_episode(CanonicalState::solved(), mode, oracle_planner(), ActuationModel{},
                                 ExecutorConfig{}, rng);
        CHECK(r.success);
        CHECK(r.atomic_actions == 0);
        CHECK(r.initial_plan.empty());
    }
}

TEST_CASE("a cube that can never be posed exhausts the budget") {
    ActuationModel model;
    model.p_rot = 0.0;
    ExecutorConfig config;
    auto scramble = apply(CanonicalState::solved(), GeneralizedMove::R);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto rng = make_rng(seed);
        auto r = execute_episode(scramble, ExecutionMode::Rollback, oracle_planner(), model, config, rng);
        CHECK_FALSE(r.success);
        CHECK(r.atomic_actions == config.action_budget);
        CHECK(r.final_state == scramble);
        for (const auto& rec : r.trace) CHECK(rec.kind != ActionKind::Twist);
    }
}

TEST_CASE("action budget caps every episode") {
    ExecutorConfig config;
    config.action_budget = 5;
    Rng pick(42);
    for (int i = 0; i < 100; ++i) {
        auto scramble = testing::random_canonical(pick);
        for (auto mode : {ExecutionMode::Rollback, ExecutionMode::OpenLoop}) {
            auto rng = make_rng(3, i);
            auto r = execute_episode(scramble, mode, oracle_planner(), ActuationModel{}, config, rng);
            CHECK(r.atomic_actions <= 5);
            CHECK(r.trace.size() == static_cast<std::size_t>(r.atomic_actions));
        }
    }
}

TEST_CASE("actuator success rates match their parameters") {
    const ActuationModel model;
    const ExecutorConfig config;
    const int n = 10000;
    auto rng = make_rng(99);
    const PoseGoal goal{{}, goal_orientation(GeneralizedMove::F)};

    int rot_ok = 0;
    for (int i = 0; i < n; ++i) {
        PhysicalCube cube = PhysicalCube::at_rest(CanonicalState::solved());
        auto out = attempt_rotate(cube, goal, model, config, rng);
        // The flag always agrees with the goal predicate.
        CHECK(out.success == pose_goal_reached(cube.pose, goal, 0.01, 0.1));
        rot_ok += out.success;
    }
    CHECK(z_score(rot_ok, n, model.p_rot) < 3.0);

    int twist_ok = 0;
    for (int i = 0; i < n; ++i) {
        PhysicalCube cube = PhysicalCube::at_rest(CanonicalState::solved());
        twist_ok += attempt_twist(cube, model, config, rng).success;
    }
    CHECK(z_score(twist_ok, n, model.p_op) < 3.0);
}

TEST_CASE("a jammed layer cannot be twisted") {
    auto rng = make_rng(5);
    auto perfect = ActuationModel::perfect();
    ExecutorConfig config;
    auto s = apply(CanonicalState::solved(), GeneralizedMove::F);
    PhysicalCube cube = PhysicalCube::at_rest(s);
    cube.misalignment = degrees(-10.0);
    cube.pending = GeneralizedMove::Up;
    for (int i = 0; i < 100; ++i) {
        auto out = attempt_twist(cube, perfect, config, rng);
        CHECK_FALSE(out.success);
        CHECK(std::isnan(out.error));
        CHECK_FALSE(out.committed);
        CHECK(cube.logical == s);
        CHECK(cube.misalignment == doctest::Approx(degrees(-10.0)));
    }

    // Within the chamfer slack the twist still goes through.
    cube.misalignment = degrees(-4.0);
    CHECK(attempt_twist(cube, perfect, config, rng).success);
}

TEST_CASE("twisting with the anchor half on top") {
    auto rng = make_rng(6);
    auto perfect = ActuationModel::perfect();
    ExecutorConfig config;
    auto s = apply(CanonicalState::solved(), GeneralizedMove::R);
    PhysicalCube cube = PhysicalCube::at_rest(s);
    cube.pose.orientation = Quaternion::from_axis_angle({1, 0, 0}, kPi);
    REQUIRE(face_up(cube.pose.orientation) == Face::D);

    auto out = attempt_twist(cube, perfect, config, rng);
    CHECK(out.success);
    CHECK(out.committed == reduce_move(Move::Dp));
    CHECK(cube.logical == apply(s, GeneralizedMove::Up));
    // The body turned with the bottom half, so the same face is still up.
    CHECK(face_up(cube.pose.orientation) == Face::D);
    CHECK(std::abs(cube.pose.orientation.norm() - 1.0) < 1e-12);
}

TEST_CASE("restoring a misaligned layer snaps to the nearer alignment") {
    auto rng = make_rng(8);
    ExecutorConfig config;
    auto s = apply(CanonicalState::solved(), GeneralizedMove::U);
    auto sure = ActuationModel::perfect();

    SUBCASE("barely turned layers fall back") {
        PhysicalCube cube = PhysicalCube::at_rest(s);
        cube.misalignment = degrees(-30.0);
        cube.pending = GeneralizedMove::Rp;
        auto out = restore_alignment(cube, sure, config, rng);
        CHECK(out.success);
        CHECK_FALSE(out.committed);
        CHECK(cube.aligned());
        CHECK_FALSE(cube.pending);
        CHECK(cube.logical == s);
    }
    SUBCASE("mostly turned layers complete the turn") {
        PhysicalCube cube = PhysicalCube::at_rest(s);
        cube.misalignment = degrees(-60.0);
        cube.pending = GeneralizedMove::Rp;
        auto out = restore_alignment(cube, sure, config, rng);
        CHECK(out.committed == GeneralizedMove::Rp);
        CHECK(cube.aligned());
        CHECK(cube.logical == apply(s, GeneralizedMove::Rp));
    }
    SUBCASE("a failed restore leaves the layer where it was") {
        ActuationModel never;
        never.p_restore = 0.0;
        PhysicalCube cube = PhysicalCube::at_rest(s);
        cube.misalignment = degrees(-50.0);
        cube.pending = GeneralizedMove::Rp;
        auto out = restore_alignment(cube, never, config, rng);
        CHECK_FALSE(out.success);
        CHECK(cube.misalignment == doctest::Approx(degrees(-50.0)));
        CHECK(cube.logical == s);
    }
}

TEST_CASE("logical state changes only through committed moves") {
    Rng pick(43);
    ActuationModel shaky{0.7, 0.6, 0.5};
    for (int i = 0; i < 300; ++i) {
        auto scramble = testing::random_canonical(pick);
        for (auto mode : {ExecutionMode::Rollback, ExecutionMode::OpenLoop}) {
            auto rng = make_rng(11, i);
            auto r = execute_episode(scramble, mode, oracle_planner(), shaky, ExecutorConfig{}, rng);
            auto s = scramble;
            for (const auto& rec : r.trace) {
                if (rec.committed) s = apply(s, *rec.committed);
                CHECK(rec.rank == rank(s));
                if (rec.kind == ActionKind::Rotate || rec.kind == ActionKind::RandomizePose)
                    CHECK_FALSE(rec.committed);
            }
            CHECK(s == r.final_state);
            CHECK(r.success == is_solved(r.final_state));
        }
    }
}

TEST_CASE("rollback recovers from failures") {
    Rng pick(44);
    int solved = 0, with_failures = 0;
    for (int i = 0; i < 200; ++i) {
        auto scramble = testing::random_canonical(pick);
        auto rng = make_rng(12, i);
        auto r = execute_episode(scramble, ExecutionMode::Rollback, oracle_planner(), ActuationModel{},
                                 ExecutorConfig{}, rng);
        solved += r.success;
        if (r.success && !r.all_actions_succeeded) ++with_failures;
    }
    CHECK(solved >= 190);
    CHECK(with_failures > 0);
}

TEST_CASE("open-loop flawless episodes follow the product of action rates") {
    const ActuationModel model;
    const auto& table = shared_table();
    Rng pick(45);
    const int n = 3000;
    double mean = 0.0, var = 0.0;
    int flawless = 0;
    for (int i = 0; i < n; ++i) {
        CanonicalState s = CanonicalState::solved();
        while (table.distance(s) != 4) s = testing::random_canonical(pick);
        auto plan = oracle_solve(s, table);
        double p = 1.0;
        for (auto m : plan) p *= model.p_rot * std::pow(model.p_op, is_prime(m) ? 1 : 3);
        mean += p;
        var += p * (1.0 - p);
        auto rng = make_rng(13, i);
        auto r = execute_episode(s, ExecutionMode::OpenLoop, oracle_planner(), model, ExecutorConfig{}, rng);
        flawless += r.all_actions_succeeded;
        if (r.all_actions_succeeded) CHECK(r.success);
    }
    CHECK(std::abs(flawless - mean) < 3.0 * std::sqrt(var));
}

TEST_CASE("episodes are reproducible from the seed") {
    Rng pick(46);
    for (int i = 0; i < 30; ++i) {
        auto scramble = testing::random_canonical(pick);
        for (auto mode : {ExecutionMode::Rollback, ExecutionMode::OpenLoop}) {
            auto a_rng = make_rng(17, i), b_rng = make_rng(17, i);
            auto a = execute_episode(scramble, mode, oracle_planner(), ActuationModel{}, ExecutorConfig{}, a_rng);
            auto b = execute_episode(scramble, mode, oracle_planner(), ActuationModel{}, ExecutorConfig{}, b_rng);
            REQUIRE(a.trace.size() == b.trace.size());
            for (std::size_t k = 0; k < a.trace.size(); ++k)
                CHECK(format_trace_line(a.trace[k]) == format_trace_line(b.trace[k]));
        }
    }
    CHECK(make_rng(1, 0)() != make_rng(1, 1)());
    CHECK(make_rng(1, 0)() != make_rng(2, 0)());
}

TEST_CASE("invalid parameters are rejected") {
    auto rng = make_rng(0);
    auto s = apply(CanonicalState::solved(), GeneralizedMove::U);
    ActuationModel bad;
    bad.p_op = 1.5;
    CHECK_THROWS_AS(execute_episode(s, ExecutionMode::Rollback, oracle_planner(), bad, ExecutorConfig{}, rng),
                    std::invalid_argument);
    ExecutorConfig cfg;
    cfg.thresholds.angle = 0.0;
    CHECK_THROWS_AS(execute_episode(s, ExecutionMode::OpenLoop, oracle_planner(), ActuationModel{}, cfg, rng),
                    std::invalid_argument);
}

TEST_CASE("trace line format") {
    ActionRecord rec{3, ActionKind::Twist, true, 0.01234567, 42, GeneralizedMove::Rp};
    CHECK(format_trace_line(rec) == "3\ttwist\tok\t0.0123\t42\tR'");
    ActionRecord restore{4, ActionKind::Restore, false, std::nan(""), 0, std::nullopt};
    CHECK(format_trace_line(restore) == "4\trestore\tfail\t-\t0\t-");
}
