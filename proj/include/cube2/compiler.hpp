#pragma once

// Compiles cube moves into the two atomic hand actions: re-pose the cube so
// the layer to turn is on top, then twist the top layer a quarter turn
// counter-clockwise (U'). A clockwise move is three such twists.
//
// Body frame: +x points through the L face, +y through B, +z through D, so
// the anchor cubelet DLB sits in the positive octant. Orientations are
// body-to-hand rotations and the hand's up axis is -z. The identity pose
// shows U on top; every goal pose below keeps the anchor half at the bottom.

#include "cube2/cube.hpp"
#include "cube2/geometry.hpp"

#include <variant>
#include <vector>

namespace cube2 {

inline const Vec3 kHandUp{0.0, 0.0, -1.0};

Vec3 body_normal(Face f);

/// Face whose outward normal is closest to the hand up axis. Ties go to the
/// earlier face in U, D, R, L, F, B order.
Face face_up(const Quaternion& orientation);

struct Pose {
    Vec3 position;
    Quaternion orientation;
};

struct PoseGoal {
    Vec3 position;
    Quaternion orientation;
};

struct GoalThresholds {
    double position = 0.01;    // metres
    double orientation = 0.1;  // radians
    double angle = 0.1;        // radians
};

inline constexpr double kTwistTarget = -kPi / 2.0;

struct Rotate {
    PoseGoal goal;
};
struct TwistUPrime {
    double target = kTwistTarget;
};
using AtomicAction = std::variant<Rotate, TwistUPrime>;

struct CompiledMove {
    GeneralizedMove move;
    std::vector<AtomicAction> actions;
};
using ExecutionPlan = std::vector<CompiledMove>;

Quaternion goal_orientation(GeneralizedMove m);

bool pose_goal_reached(const Pose& pose, const PoseGoal& goal, double max_position_error,
                       double max_orientation_error);
bool twist_goal_reached(double angle, double target, double max_angle_error);

/// Number of U' twists needed for `m`: 1 for a prime move, 3 otherwise.
constexpr int twists_for(GeneralizedMove m) { return is_prime(m) ? 1 : 3; }

ExecutionPlan compile(std::span<const GeneralizedMove> seq, Vec3 target_position = {});

std::size_t action_count(const ExecutionPlan& plan);

}  // namespace cube2
