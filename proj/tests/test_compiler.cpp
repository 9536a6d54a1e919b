#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cube2/compiler.hpp"
#include "support/fixtures.hpp"

using namespace cube2;

namespace {

constexpr double kH = 0.70710678118654752440;

bool near(const Quaternion& a, const Quaternion& b, double tol) {
    return std::abs(a.w - b.w) < tol && std::abs(a.x - b.x) < tol && std::abs(a.y - b.y) < tol &&
           std::abs(a.z - b.z) < tol;
}

}  // namespace

TEST_CASE("goal orientation table") {
    CHECK(near(goal_orientation(GeneralizedMove::Up), {1, 0, 0, 0}, 1e-12));
    CHECK(near(goal_orientation(GeneralizedMove::U), {1, 0, 0, 0}, 1e-12));
    CHECK(near(goal_orientation(GeneralizedMove::R), {0.7071068, 0, -0.7071068, 0}, 1e-6));
    CHECK(near(goal_orientation(GeneralizedMove::Rp), {0.7071068, 0, -0.7071068, 0}, 1e-6));
    CHECK(near(goal_orientation(GeneralizedMove::Fp), {0.7071068, 0.7071068, 0, 0}, 1e-6));
    CHECK(near(goal_orientation(GeneralizedMove::F), {0.7071068, 0.7071068, 0, 0}, 1e-6));
    for (auto m : kAllGeneralizedMoves) CHECK(std::abs(goal_orientation(m).norm() - 1.0) < 1e-9);

    // The rounded 0.707 entries miss unit squared norm by about 3e-4.
    Quaternion rounded{0.707, 0, -0.707, 0};
    CHECK(std::abs(rounded.norm() * rounded.norm() - 1.0) > 2.5e-4);
}

TEST_CASE("each goal pose brings the move's layer to the top") {
    for (auto m : kAllGeneralizedMoves) {
        Face up = face_up(goal_orientation(m));
        CHECK(up == face_of(to_move(m)));
    }
    CHECK(face_up(Quaternion::identity()) == Face::U);
}

TEST_CASE("orientation distance") {
    Rng rng(31);
    for (int i = 0; i < 200; ++i) {
        auto q = random_rotation(rng);
        CHECK(orientation_distance(q, q) < 1e-7);
        CHECK(orientation_distance(q, -q) < 1e-7);

        Vec3 axis = random_unit_vector(rng);
        auto quarter = Quaternion::from_axis_angle(axis, kPi / 2.0);
        CHECK(std::abs(orientation_distance(Quaternion::identity(), quarter) - kPi / 2.0) < 1e-9);

        // Symmetry and the triangle inequality.
        auto a = random_rotation(rng), b = random_rotation(rng), c = random_rotation(rng);
        CHECK(std::abs(orientation_distance(a, b) - orientation_distance(b, a)) < 1e-9);
        CHECK(orientation_distance(a, c) <= orientation_distance(a, b) + orientation_distance(b, c) + 1e-9);
        CHECK(orientation_distance(a, b) <= kPi + 1e-12);
    }
}

TEST_CASE("pose goal predicate") {
    PoseGoal goal{{0, 0, 0}, goal_orientation(GeneralizedMove::R)};
    CHECK(pose_goal_reached({goal.position, goal.orientation}, goal, 0.01, 0.1));

    auto tilt = Quaternion::from_axis_angle({0, 0, 1}, 0.05) * goal.orientation;
    CHECK(pose_goal_reached({{0.009, 0, 0}, tilt}, goal, 0.01, 0.1));
    CHECK_FALSE(pose_goal_reached({{0.011, 0, 0}, goal.orientation}, goal, 0.01, 0.1));

    auto big_tilt = Quaternion::from_axis_angle({1, 0, 0}, 0.11) * goal.orientation;
    CHECK_FALSE(pose_goal_reached({goal.position, big_tilt}, goal, 0.01, 0.1));
}

TEST_CASE("twist goal predicate") {
    const double target = degrees(-90.0);
    CHECK(twist_goal_reached(target, target, 0.1));
    CHECK(twist_goal_reached(target + 0.09, target, 0.1));
    CHECK_FALSE(twist_goal_reached(target + 0.11, target, 0.1));
    CHECK_FALSE(twist_goal_reached(target - 0.11, target, 0.1));
}

TEST_CASE("compile expands each move into a re-pose and U' twists") {
    CHECK(compile(GenMoveSeq{}).empty());

    auto up = compile(GenMoveSeq{GeneralizedMove::Up});
    REQUIRE(up.size() == 1);
    REQUIRE(up[0].actions.size() == 2);
    auto* rot = std::get_if<Rotate>(&up[0].actions[0]);
    REQUIRE(rot != nullptr);
    CHECK(near(rot->goal.orientation, {1, 0, 0, 0}, 1e-12));
    CHECK(std::holds_alternative<TwistUPrime>(up[0].actions[1]));

    auto r = compile(GenMoveSeq{GeneralizedMove::R});
    REQUIRE(r[0].actions.size() == 4);
    CHECK(near(std::get<Rotate>(r[0].actions[0]).goal.orientation, {kH, 0, -kH, 0}, 1e-12));
    for (int i = 1; i < 4; ++i) {
        CHECK(std::holds_alternative<TwistUPrime>(r[0].actions[i]));
        CHECK(std::get<TwistUPrime>(r[0].actions[i]).target == doctest::Approx(-kPi / 2));
    }

    Rng rng(32);
    for (int i = 0; i < 200; ++i) {
        auto seq = testing::random_generalized_moves(rng, i % 15);
        auto plan = compile(seq);
        std::size_t expected = 0;
        REQUIRE(plan.size() == seq.size());
        for (std::size_t k = 0; k < seq.size(); ++k) {
            CHECK(plan[k].move == seq[k]);
            expected += is_prime(seq[k]) ? 2 : 4;
        }
        CHECK(action_count(plan) == expected);
    }
}

TEST_CASE("target position is configurable") {
    auto plan = compile(GenMoveSeq{GeneralizedMove::F}, {0.01, 0.02, 0.03});
    CHECK(std::get<Rotate>(plan[0].actions[0]).goal.position == Vec3{0.01, 0.02, 0.03});
}
