#pragma once

// Stochastic stand-ins for the two learned hand skills, and the closed-loop
// (rollback) and open-loop ways of driving them through a plan.
//
// The actuators only model what was measured of the real skills: how often
// each one reaches its goal. What a failure looks like (a random pose, a
// partly turned layer) is a configurable guess.

#include "cube2/compiler.hpp"
#include "cube2/cube.hpp"
#include "cube2/geometry.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace cube2 {

struct ActuationModel {
    double p_rot = 0.952;
    double p_op = 0.923;
    double p_restore = 0.95;
    double failure_position_radius = 0.05;  // metres, around the palm point
    std::uint64_t seed = 0;

    static ActuationModel perfect() { return {1.0, 1.0, 1.0}; }
    bool valid() const;
};

struct ExecutorConfig {
    GoalThresholds thresholds;
    double chamfer_tolerance = degrees(5.0);
    int rotate_attempts = 10;  // Stage 1 attempts per move
    int restore_attempts = 10;  // restores per misalignment
    int action_budget = 200;
    Vec3 palm_point;

    bool valid() const;
};

struct PhysicalCube {
    CanonicalState logical = CanonicalState::solved();
    Pose pose;
    double misalignment = 0.0;  // radians between the twisted layer and the rest, 0 = aligned
    // Move that commits if a misaligned layer is pushed home to -90 degrees.
    std::optional<GeneralizedMove> pending;
    bool pending_anchor_on_top = false;

    static PhysicalCube at_rest(const CanonicalState& s, Vec3 palm = {}) {
        return {s, {palm, Quaternion::identity()}, 0.0, std::nullopt, false};
    }
    bool aligned() const { return misalignment == 0.0; }
};

struct ActionOutcome {
    bool success = false;
    double error = 0.0;  // orientation error (rotate) or angle error (twist); NaN if n/a
    std::optional<GeneralizedMove> committed;
};

// Single actuator attempts. They do no bookkeeping.
ActionOutcome attempt_rotate(PhysicalCube& cube, const PoseGoal& goal, const ActuationModel& model,
                             const ExecutorConfig& config, Rng& rng);
ActionOutcome attempt_twist(PhysicalCube& cube, const ActuationModel& model,
                            const ExecutorConfig& config, Rng& rng);
ActionOutcome randomize_pose(PhysicalCube& cube, const ActuationModel& model,
                             const ExecutorConfig& config, Rng& rng);
ActionOutcome restore_alignment(PhysicalCube& cube, const ActuationModel& model,
                                const ExecutorConfig& config, Rng& rng);

enum class ActionKind { Rotate, Twist, RandomizePose, Restore };
std::string_view action_name(ActionKind kind);

struct ActionRecord {
    int index = 0;
    ActionKind kind = ActionKind::Rotate;
    bool success = false;
    double error = 0.0;
    std::uint32_t rank = 0;  // logical state after the action
    std::optional<GeneralizedMove> committed;
};

enum class MoveOutcome { Completed, NeedsReplan, BudgetExhausted };

/// Drives the actuators while counting actions against the episode budget.
class Executor {
public:
    Executor(const ActuationModel& model, const ExecutorConfig& config, Rng& rng)
        : model_(model), config_(config), rng_(rng) {}

    ActionOutcome rotate(PhysicalCube& cube, const PoseGoal& goal);
    ActionOutcome twist(PhysicalCube& cube);
    ActionOutcome randomize(PhysicalCube& cube);
    ActionOutcome restore(PhysicalCube& cube);

    /// One move under the check-and-retry workflow: Stage 1 re-posing with
    /// randomized retries, Stage 2 twists with alignment restores, then a
    /// check that the logical state advanced by exactly `m`.
    MoveOutcome execute_move_rollback(PhysicalCube& cube, GeneralizedMove m);

    bool has_budget() const { return actions_ < config_.action_budget; }
    int actions() const { return actions_; }
    bool all_succeeded() const { return all_succeeded_; }
    const std::vector<ActionRecord>& trace() const { return trace_; }

private:
    ActionOutcome record(ActionKind kind, const PhysicalCube& cube, ActionOutcome outcome);

    const ActuationModel& model_;
    const ExecutorConfig& config_;
    Rng& rng_;
    int actions_ = 0;
    bool all_succeeded_ = true;
    std::vector<ActionRecord> trace_;
};

enum class ExecutionMode { Rollback, OpenLoop };
std::string_view mode_name(ExecutionMode mode);

using Planner = std::function<GenMoveSeq(const CanonicalState&)>;

struct EpisodeReport {
    bool success = false;
    int atomic_actions = 0;
    int moves_attempted = 0;
    int replans = 0;
    bool all_actions_succeeded = true;
    GenMoveSeq initial_plan;
    CanonicalState final_state = CanonicalState::solved();
    std::vector<ActionRecord> trace;
};

EpisodeReport execute_episode(const CanonicalState& scramble, ExecutionMode mode,
                              const Planner& planner, const ActuationModel& model,
                              const ExecutorConfig& config, Rng& rng);

/// Independent stream for episode `stream` under a master seed.
Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0);

/// One line per action: index, kind, ok|fail, error (or -), state rank,
/// committed move (or -), tab separated.
std::string format_trace_line(const ActionRecord& record);

}  // namespace cube2
