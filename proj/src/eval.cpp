#include "cube2/eval.hpp"

#include "cube2/solver.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace cube2 {
namespace {

constexpr std::string_view kCsvHeader = "distance,mode,trials,sr,an_mean,an_std";

int mode_order(ExecutionMode m) { return m == ExecutionMode::Rollback ? 0 : 1; }

std::uint64_t episode_stream(int distance, ExecutionMode mode, int trial) {
    return (static_cast<std::uint64_t>(distance * 4 + mode_order(mode) + 1) << 32) |
           static_cast<std::uint32_t>(trial);
}

}  // namespace

DistanceBuckets::DistanceBuckets(const DistanceTable& table) {
    buckets_.resize(table.histogram().size());
    for (std::size_t d = 0; d < buckets_.size(); ++d) buckets_[d].reserve(table.histogram()[d]);
    auto entries = table.entries();
    for (std::uint32_t i = 0; i < entries.size(); ++i) buckets_[entries[i]].push_back(i);
}

std::vector<CanonicalState> sample_at_distance(int d, std::size_t n, const DistanceBuckets& buckets,
                                               Rng& rng) {
    if (d < 1 || d > kMaxDepth) throw std::out_of_range("distance must be within 1..14");
    if (d > buckets.max_distance() || buckets.at(d).empty())
        throw std::out_of_range("no states at distance " + std::to_string(d));
    const auto& bucket = buckets.at(d);
    std::uniform_int_distribution<std::size_t> pick(0, bucket.size() - 1);
    std::vector<CanonicalState> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(unrank(bucket[pick(rng)]));
    return out;
}

const CellResult* ExperimentResult::find(int distance, ExecutionMode mode) const {
    for (const auto& c : cells)
        if (c.distance == distance && c.mode == mode) return &c;
    return nullptr;
}

double ExperimentResult::average_sr(ExecutionMode mode) const {
    double sum = 0.0;
    int n = 0;
    for (const auto& c : cells) {
        if (c.mode != mode) continue;
        sum += c.sr;
        ++n;
    }
    return n ? sum / n : 0.0;
}

ExperimentResult aggregate(std::span<const TrialRecord> trials) {
    struct Acc {
        int trials = 0, successes = 0, flawless = 0;
        double an_sum = 0.0, an_sq = 0.0;
    };
    std::map<std::pair<int, int>, Acc> cells;
    for (const auto& t : trials) {
        auto& a = cells[{t.distance, mode_order(t.mode)}];
        ++a.trials;
        a.successes += t.report.success ? 1 : 0;
        a.flawless += t.report.all_actions_succeeded ? 1 : 0;
        double an = t.report.atomic_actions;
        a.an_sum += an;
        a.an_sq += an * an;
    }
    ExperimentResult result;
    for (const auto& [key, a] : cells) {
        CellResult c;
        c.distance = key.first;
        c.mode = key.second == 0 ? ExecutionMode::Rollback : ExecutionMode::OpenLoop;
        c.trials = a.trials;
        c.successes = a.successes;
        c.flawless = a.flawless;
        c.sr = static_cast<double>(a.successes) / a.trials;
        c.an_mean = a.an_sum / a.trials;
        c.an_std = std::sqrt(std::max(0.0, a.an_sq / a.trials - c.an_mean * c.an_mean));
        result.cells.push_back(c);
    }
    return result;
}

ExperimentResult run_experiment(const ExperimentConfig& config, const DistanceTable& table,
                                const DistanceBuckets& buckets, std::vector<TrialRecord>* out) {
    if (config.trials_per_distance < 1) throw std::invalid_argument("trials_per_distance must be >= 1");
    for (int d : config.distances)
        if (d < 1 || d > kMaxDepth) throw std::out_of_range("distance must be within 1..14");

    Planner planner = [&table](const CanonicalState& s) { return oracle_solve(s, table); };

    std::vector<TrialRecord> records;
    for (int d : config.distances) {
        Rng scramble_rng = make_rng(config.seed, static_cast<std::uint64_t>(d));
        auto scrambles = sample_at_distance(d, config.trials_per_distance, buckets, scramble_rng);
        for (auto mode : config.modes) {
            std::size_t first = records.size();
            for (const auto& s : scrambles) records.push_back({d, mode, s, {}});

            auto run_range = [&](std::size_t begin, std::size_t end) {
                for (std::size_t i = begin; i < end; ++i) {
                    auto& rec = records[first + i];
                    Rng rng = make_rng(config.seed, episode_stream(d, mode, static_cast<int>(i)));
                    rec.report = execute_episode(rec.scramble, mode, planner, config.model,
                                                 config.executor, rng);
                    rec.report.trace.clear();
                    rec.report.trace.shrink_to_fit();
                }
            };
            std::size_t n = scrambles.size();
            std::size_t workers = static_cast<std::size_t>(std::max(1, config.threads));
            if (workers == 1) {
                run_range(0, n);
            } else {
                std::vector<std::jthread> pool;
                std::size_t chunk = (n + workers - 1) / workers;
                for (std::size_t b = 0; b < n; b += chunk)
                    pool.emplace_back(run_range, b, std::min(n, b + chunk));
            }
            if (config.progress) config.progress(d, mode);
        }
    }
    auto result = aggregate(records);
    if (out) *out = std::move(records);
    return result;
}

std::string to_csv(const ExperimentResult& result) {
    std::ostringstream out;
    out << kCsvHeader << '\n';
    auto cells = result.cells;
    std::stable_sort(cells.begin(), cells.end(), [](const CellResult& a, const CellResult& b) {
        if (a.distance != b.distance) return a.distance < b.distance;
        return mode_order(a.mode) < mode_order(b.mode);
    });
    out << std::fixed << std::setprecision(4);
    for (const auto& c : cells) {
        out << c.distance << ',' << mode_name(c.mode) << ',' << c.trials << ',' << c.sr << ','
            << c.an_mean << ',' << c.an_std << '\n';
    }
    return out.str();
}

void export_csv(const ExperimentResult& result, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << to_csv(result);
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

ExecutionMode parse_mode(std::string_view name) {
    if (name == "rollback") return ExecutionMode::Rollback;
    if (name == "open_loop" || name == "open") return ExecutionMode::OpenLoop;
    throw std::invalid_argument("unknown mode '" + std::string(name) + "'");
}

ExperimentResult parse_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader) throw std::invalid_argument("missing CSV header");
    ExperimentResult result;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::istringstream row(line);
        std::string f;
        while (std::getline(row, f, ',')) fields.push_back(f);
        if (fields.size() != 6)
            throw std::invalid_argument("line " + std::to_string(lineno) + ": expected 6 fields");
        CellResult c;
        c.distance = std::stoi(fields[0]);
        c.mode = parse_mode(fields[1]);
        c.trials = std::stoi(fields[2]);
        c.sr = std::stod(fields[3]);
        c.an_mean = std::stod(fields[4]);
        c.an_std = std::stod(fields[5]);
        c.successes = static_cast<int>(std::lround(c.sr * c.trials));
        result.cells.push_back(c);
    }
    return result;
}

}  // namespace cube2
