#include "cube2/compiler.hpp"

namespace cube2 {

Vec3 body_normal(Face f) {
    switch (f) {
        case Face::U: return {0, 0, -1};
        case Face::D: return {0, 0, 1};
        case Face::R: return {-1, 0, 0};
        case Face::L: return {1, 0, 0};
        case Face::F: return {0, -1, 0};
        case Face::B: return {0, 1, 0};
    }
    return {};
}

Face face_up(const Quaternion& orientation) {
    Face best = Face::U;
    double best_dot = -2.0;
    for (int i = 0; i < kNumFaces; ++i) {
        auto f = static_cast<Face>(i);
        double d = dot(orientation.rotate(body_normal(f)), kHandUp);
        if (d > best_dot + 1e-12) {
            best = f;
            best_dot = d;
        }
    }
    return best;
}

Quaternion goal_orientation(GeneralizedMove m) {
    const double h = 1.0 / std::sqrt(2.0);
    switch (m) {
        case GeneralizedMove::U:
        case GeneralizedMove::Up: return {1.0, 0.0, 0.0, 0.0};
        case GeneralizedMove::R:
        case GeneralizedMove::Rp: return {h, 0.0, -h, 0.0};
        case GeneralizedMove::F:
        case GeneralizedMove::Fp: return {h, h, 0.0, 0.0};
    }
    return {};
}

bool pose_goal_reached(const Pose& pose, const PoseGoal& goal, double max_position_error,
                       double max_orientation_error) {
    return norm(pose.position - goal.position) < max_position_error &&
           orientation_distance(pose.orientation, goal.orientation) < max_orientation_error;
}

bool twist_goal_reached(double angle, double target, double max_angle_error) {
    return std::abs(angle - target) < max_angle_error;
}

ExecutionPlan compile(std::span<const GeneralizedMove> seq, Vec3 target_position) {
    ExecutionPlan plan;
    plan.reserve(seq.size());
    for (auto m : seq) {
        CompiledMove step{m, {}};
        step.actions.emplace_back(Rotate{{target_position, goal_orientation(m)}});
        for (int i = 0; i < twists_for(m); ++i) step.actions.emplace_back(TwistUPrime{});
        plan.push_back(std::move(step));
    }
    return plan;
}

std::size_t action_count(const ExecutionPlan& plan) {
    std::size_t n = 0;
    for (const auto& step : plan) n += step.actions.size();
    return n;
}

}  // namespace cube2
