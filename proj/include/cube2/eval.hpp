#pragma once

#include "cube2/executor.hpp"
#include "cube2/tables.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace cube2 {

/// Canonical states grouped by exact distance to solved.
class DistanceBuckets {
public:
    explicit DistanceBuckets(const DistanceTable& table);

    const std::vector<std::uint32_t>& at(int distance) const { return buckets_.at(distance); }
    int max_distance() const { return static_cast<int>(buckets_.size()) - 1; }

private:
    std::vector<std::vector<std::uint32_t>> buckets_;
};

/// n states drawn uniformly with replacement from the states at distance d.
std::vector<CanonicalState> sample_at_distance(int d, std::size_t n, const DistanceBuckets& buckets,
                                               Rng& rng);

struct ExperimentConfig {
    std::vector<int> distances;  // subset of 1..14
    int trials_per_distance = 100;
    std::vector<ExecutionMode> modes = {ExecutionMode::Rollback, ExecutionMode::OpenLoop};
    ActuationModel model;
    ExecutorConfig executor;
    std::uint64_t seed = 0;
    int threads = 1;
    std::function<void(int distance, ExecutionMode mode)> progress;
};

struct CellResult {
    int distance = 0;
    ExecutionMode mode = ExecutionMode::Rollback;
    int trials = 0;
    int successes = 0;
    int flawless = 0;  // episodes in which no atomic action failed
    double sr = 0.0;
    double an_mean = 0.0;
    double an_std = 0.0;  // population standard deviation
};

struct ExperimentResult {
    std::vector<CellResult> cells;  // distance ascending, rollback first

    const CellResult* find(int distance, ExecutionMode mode) const;
    /// Mean of the per-distance success rates for one mode.
    double average_sr(ExecutionMode mode) const;
};

/// Per-episode details, for callers that want more than the aggregates.
struct TrialRecord {
    int distance = 0;
    ExecutionMode mode = ExecutionMode::Rollback;
    CanonicalState scramble = CanonicalState::solved();
    EpisodeReport report;
};

/// Episodes run on the oracle planner. Scrambles are drawn once per distance
/// and shared by all modes.
ExperimentResult run_experiment(const ExperimentConfig& config, const DistanceTable& table,
                                const DistanceBuckets& buckets,
                                std::vector<TrialRecord>* trials = nullptr);

/// Folds per-episode outcomes into per-cell aggregates. Independent of the
/// order in which episodes finished.
ExperimentResult aggregate(std::span<const TrialRecord> trials);

void export_csv(const ExperimentResult& result, const std::filesystem::path& path);
std::string to_csv(const ExperimentResult& result);
/// Parses what to_csv writes. Only the exported columns are recovered.
ExperimentResult parse_csv(std::string_view text);

ExecutionMode parse_mode(std::string_view name);

}  // namespace cube2
