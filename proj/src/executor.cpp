#include "cube2/executor.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace cube2 {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool in_unit_interval(double p) { return p >= 0.0 && p <= 1.0; }

bool anchor_half(Face f) { return f == Face::D || f == Face::L || f == Face::B; }

void commit(PhysicalCube& cube, GeneralizedMove m, bool anchor_on_top) {
    cube.logical = apply(cube.logical, m);
    cube.misalignment = 0.0;
    cube.pending.reset();
    // The body frame rides on the anchor half; if that half was the one
    // turned, the whole body turned a quarter about the up axis with it.
    if (anchor_on_top) {
        cube.pose.orientation =
            (Quaternion::from_axis_angle(kHandUp, kPi / 2.0) * cube.pose.orientation).normalized();
    }
}

}  // namespace

bool ActuationModel::valid() const {
    return in_unit_interval(p_rot) && in_unit_interval(p_op) && in_unit_interval(p_restore) &&
           failure_position_radius > 0.0;
}

bool ExecutorConfig::valid() const {
    return thresholds.position > 0.0 && thresholds.orientation > 0.0 && thresholds.angle > 0.0 &&
           chamfer_tolerance >= 0.0 && rotate_attempts >= 1 && restore_attempts >= 1 &&
           action_budget >= 0;
}

ActionOutcome attempt_rotate(PhysicalCube& cube, const PoseGoal& goal, const ActuationModel& model,
                             const ExecutorConfig& config, Rng& rng) {
    const auto& th = config.thresholds;
    std::bernoulli_distribution reach(model.p_rot);
    std::uniform_real_distribution<double> angle(0.0, th.orientation);
    Pose pose;
    bool success = reach(rng);
    if (success) {
        do {
            pose.position = random_point_in_ball(goal.position, th.position, rng);
            auto wobble = Quaternion::from_axis_angle(random_unit_vector(rng), angle(rng));
            pose.orientation = (wobble * goal.orientation).normalized();
        } while (!pose_goal_reached(pose, goal, th.position, th.orientation));
    } else {
        // Failure poses are drawn outside the goal region so the reported flag
        // and the goal predicate always agree.
        do {
            pose.position = random_point_in_ball(config.palm_point, model.failure_position_radius, rng);
            pose.orientation = random_rotation(rng);
        } while (pose_goal_reached(pose, goal, th.position, th.orientation));
    }
    cube.pose = pose;
    return {success, orientation_distance(pose.orientation, goal.orientation), std::nullopt};
}

ActionOutcome attempt_twist(PhysicalCube& cube, const ActuationModel& model,
                            const ExecutorConfig& config, Rng& rng) {
    // Layers jammed past the chamfer slack cannot turn.
    if (std::abs(cube.misalignment) > config.chamfer_tolerance) return {false, kNaN, std::nullopt};

    const double target = kTwistTarget;
    const double band = config.thresholds.angle;
    Face up = face_up(cube.pose.orientation);
    GeneralizedMove turned = reduce_move(make_move(up, true));
    bool anchor_on_top = anchor_half(up);

    std::bernoulli_distribution reach(model.p_op);
    if (reach(rng)) {
        std::uniform_real_distribution<double> residual(-band, band);
        double angle = target;
        do {
            angle = target + residual(rng);
        } while (!twist_goal_reached(angle, target, band));
        commit(cube, turned, anchor_on_top);
        return {true, std::abs(angle - target), turned};
    }

    // Failed turns stop somewhere between home and the target, outside the
    // goal band.
    double lo = std::min(target + band, 0.0);
    std::uniform_real_distribution<double> stop(lo, 0.0);
    double angle = stop(rng);
    ActionOutcome out{twist_goal_reached(angle, target, band), std::abs(angle - target), std::nullopt};
    if (std::abs(angle) <= config.chamfer_tolerance) {
        cube.misalignment = 0.0;
    } else if (std::abs(angle - target) <= config.chamfer_tolerance) {
        commit(cube, turned, anchor_on_top);
        out.committed = turned;
    } else {
        cube.misalignment = angle;
        cube.pending = turned;
        cube.pending_anchor_on_top = anchor_on_top;
    }
    return out;
}

ActionOutcome randomize_pose(PhysicalCube& cube, const ActuationModel& model,
                             const ExecutorConfig& config, Rng& rng) {
    cube.pose.position = random_point_in_ball(config.palm_point, model.failure_position_radius, rng);
    cube.pose.orientation = random_rotation(rng);
    return {true, kNaN, std::nullopt};
}

ActionOutcome restore_alignment(PhysicalCube& cube, const ActuationModel& model,
                                const ExecutorConfig& config, Rng& rng) {
    randomize_pose(cube, model, config, rng);
    if (cube.aligned()) return {true, kNaN, std::nullopt};

    std::bernoulli_distribution settle(model.p_restore);
    if (!settle(rng)) return {false, std::abs(cube.misalignment), std::nullopt};

    // Snap to whichever alignment is nearer.
    ActionOutcome out{true, 0.0, std::nullopt};
    if (cube.misalignment < kTwistTarget / 2.0 && cube.pending) {
        out.committed = *cube.pending;
        commit(cube, *cube.pending, cube.pending_anchor_on_top);
    }
    cube.misalignment = 0.0;
    cube.pending.reset();
    return out;
}

std::string_view action_name(ActionKind kind) {
    switch (kind) {
        case ActionKind::Rotate: return "rotate";
        case ActionKind::Twist: return "twist";
        case ActionKind::RandomizePose: return "randomize";
        case ActionKind::Restore: return "restore";
    }
    return "?";
}

std::string_view mode_name(ExecutionMode mode) {
    return mode == ExecutionMode::Rollback ? "rollback" : "open_loop";
}

ActionOutcome Executor::record(ActionKind kind, const PhysicalCube& cube, ActionOutcome outcome) {
    ++actions_;
    if (!outcome.success) all_succeeded_ = false;
    trace_.push_back({actions_, kind, outcome.success, outcome.error, rank(cube.logical),
                      outcome.committed});
    return outcome;
}

ActionOutcome Executor::rotate(PhysicalCube& cube, const PoseGoal& goal) {
    return record(ActionKind::Rotate, cube, attempt_rotate(cube, goal, model_, config_, rng_));
}

ActionOutcome Executor::twist(PhysicalCube& cube) {
    return record(ActionKind::Twist, cube, attempt_twist(cube, model_, config_, rng_));
}

ActionOutcome Executor::randomize(PhysicalCube& cube) {
    return record(ActionKind::RandomizePose, cube, randomize_pose(cube, model_, config_, rng_));
}

ActionOutcome Executor::restore(PhysicalCube& cube) {
    return record(ActionKind::Restore, cube, restore_alignment(cube, model_, config_, rng_));
}

MoveOutcome Executor::execute_move_rollback(PhysicalCube& cube, GeneralizedMove m) {
    const auto& th = config_.thresholds;
    const CanonicalState expected = apply(cube.logical, m);
    const PoseGoal goal{config_.palm_point, goal_orientation(m)};

    bool posed = false;
    for (int attempt = 0; attempt < config_.rotate_attempts; ++attempt) {
        if (!has_budget()) return MoveOutcome::BudgetExhausted;
        rotate(cube, goal);
        if (pose_goal_reached(cube.pose, goal, th.position, th.orientation)) {
            posed = true;
            break;
        }
        if (attempt + 1 == config_.rotate_attempts) break;
        if (!has_budget()) return MoveOutcome::BudgetExhausted;
        randomize(cube);
    }
    if (!posed) return MoveOutcome::NeedsReplan;

    for (int i = 0; i < twists_for(m); ++i) {
        if (!has_budget()) return MoveOutcome::BudgetExhausted;
        auto turned = twist(cube);
        if (!cube.aligned()) {
            for (int r = 0; r < config_.restore_attempts && !cube.aligned(); ++r) {
                if (!has_budget()) return MoveOutcome::BudgetExhausted;
                restore(cube);
            }
            break;
        }
        if (!turned.success) break;
    }
    return cube.logical == expected ? MoveOutcome::Completed : MoveOutcome::NeedsReplan;
}

EpisodeReport execute_episode(const CanonicalState& scramble, ExecutionMode mode,
                              const Planner& planner, const ActuationModel& model,
                              const ExecutorConfig& config, Rng& rng) {
    if (!model.valid()) throw std::invalid_argument("actuation probabilities must lie in [0, 1]");
    if (!config.valid()) throw std::invalid_argument("executor thresholds and retry caps must be positive");

    EpisodeReport report;
    PhysicalCube cube = PhysicalCube::at_rest(scramble, config.palm_point);
    Executor ex(model, config, rng);

    auto finish = [&](bool success) {
        report.success = success;
        report.atomic_actions = ex.actions();
        report.all_actions_succeeded = ex.all_succeeded();
        report.final_state = cube.logical;
        report.trace = ex.trace();
        return report;
    };

    if (is_solved(cube.logical)) return finish(true);
    GenMoveSeq plan = planner(cube.logical);
    report.initial_plan = plan;

    if (mode == ExecutionMode::OpenLoop) {
        for (const auto& step : compile(plan, config.palm_point)) {
            ++report.moves_attempted;
            for (const auto& action : step.actions) {
                if (!ex.has_budget()) return finish(false);
                if (const auto* r = std::get_if<Rotate>(&action)) ex.rotate(cube, r->goal);
                else ex.twist(cube);
            }
        }
        return finish(is_solved(cube.logical));
    }

    std::size_t next = 0;
    for (;;) {
        if (is_solved(cube.logical)) return finish(true);
        if (next == plan.size()) {
            ++report.replans;
            plan = planner(cube.logical);
            next = 0;
            continue;
        }
        ++report.moves_attempted;
        switch (ex.execute_move_rollback(cube, plan[next])) {
            case MoveOutcome::Completed:
                ++next;
                break;
            case MoveOutcome::NeedsReplan:
                if (is_solved(cube.logical)) return finish(true);
                ++report.replans;
                plan = planner(cube.logical);
                next = 0;
                break;
            case MoveOutcome::BudgetExhausted:
                return finish(false);
        }
    }
}

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return Rng(seq);
}

std::string format_trace_line(const ActionRecord& r) {
    std::ostringstream out;
    out << r.index << '\t' << action_name(r.kind) << '\t' << (r.success ? "ok" : "fail") << '\t';
    if (std::isnan(r.error)) out << '-';
    else out << std::fixed << std::setprecision(4) << r.error;
    out << '\t' << r.rank << '\t';
    if (r.committed) out << move_name(*r.committed);
    else out << '-';
    return out.str();
}

}  // namespace cube2
