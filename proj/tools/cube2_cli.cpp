// cube2: build tables, solve, sample scrambles, simulate the hand executor,
// run the distance-binned experiment, and self-check.

#include "cube2/eval.hpp"
#include "cube2/executor.hpp"
#include "cube2/solver.hpp"
#include "cube2/tables.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>

namespace fs = std::filesystem;
using namespace cube2;

namespace {

// Tables come from --tables DIR when the files are there, otherwise they are
// built in memory (a few seconds at most).
class TableSource {
public:
    explicit TableSource(std::string dir) : dir_(std::move(dir)) {}

    const DistanceTable& distance() {
        if (!distance_) {
            auto path = file(kDistanceFile);
            if (path) {
                distance_ = load_distance_table(*path);
            } else {
                note("distance table");
                distance_ = build_distance_table();
            }
        }
        return *distance_;
    }

    const PatternDB& pdb() {
        if (!pdb_) {
            auto ori = file(kOriPdbFile), perm = file(kPermPdbFile);
            if (ori && perm) {
                pdb_ = load_pattern_dbs(*ori, *perm);
            } else {
                note("pattern databases");
                pdb_ = build_pattern_dbs();
            }
        }
        return *pdb_;
    }

    const std::string& dir() const { return dir_; }

private:
    std::optional<fs::path> file(const char* name) const {
        if (dir_.empty()) return std::nullopt;
        fs::path p = fs::path(dir_) / name;
        if (!fs::exists(p)) return std::nullopt;
        return p;
    }
    void note(const char* what) const {
        std::cerr << "note: no " << what << " in '" << (dir_.empty() ? "." : dir_)
                  << "', building in memory\n";
    }

    std::string dir_;
    std::optional<DistanceTable> distance_;
    std::optional<PatternDB> pdb_;
};

CanonicalState state_from_inputs(const std::string& facelets, const std::string& scramble) {
    if (!facelets.empty()) return canonicalize(from_facelets(parse_facelet_string(facelets)));
    return canonicalize(apply_seq(CubeletState::solved(), parse_moves(scramble)));
}

std::string facelets_of(const CanonicalState& s) { return facelet_string(to_facelets(s.cubelets())); }

int cmd_build_tables(const std::string& out) {
    fs::create_directories(out);
    auto table = build_distance_table();
    auto pdb = build_pattern_dbs();
    save(table, fs::path(out) / kDistanceFile);
    save(pdb, fs::path(out) / kOriPdbFile, fs::path(out) / kPermPdbFile);

    std::uint64_t total = 0;
    std::cout << "depth\tstates\n";
    for (std::size_t d = 0; d < table.histogram().size(); ++d) {
        std::cout << d << '\t' << table.histogram()[d] << '\n';
        total += table.histogram()[d];
    }
    std::cout << "max depth: " << table.max_depth() << '\n' << "states: " << total << '\n';
    std::cout << "wrote " << (fs::path(out) / kDistanceFile).string() << ", " << kOriPdbFile << ", "
              << kPermPdbFile << '\n';
    return 0;
}

int cmd_solve(TableSource& tables, const std::string& facelets, const std::string& scramble,
              const std::string& planner) {
    auto s = state_from_inputs(facelets, scramble);
    GenMoveSeq sol;
    if (planner == "oracle") {
        sol = oracle_solve(s, tables.distance());
    } else {
        auto r = ida_star(s, tables.pdb());
        sol = r.solution;
        std::cerr << "nodes expanded: " << r.nodes_expanded << ", iterations: " << r.iterations << '\n';
    }
    std::cout << "solution:" << (sol.empty() ? "" : " " + format_moves(sol)) << '\n';
    std::cout << "length: " << sol.size() << '\n';
    return 0;
}

int cmd_scramble(TableSource& tables, int distance, int count, std::uint64_t seed) {
    DistanceBuckets buckets(tables.distance());
    auto rng = make_rng(seed);
    for (const auto& s : sample_at_distance(distance, static_cast<std::size_t>(count), buckets, rng))
        std::cout << facelets_of(s) << '\n';
    return 0;
}

struct SimOptions {
    std::string facelets, scramble, mode = "rollback";
    std::uint64_t seed = 0;
    bool trace = false;
};

int cmd_simulate(TableSource& tables, const SimOptions& o, const ActuationModel& model,
                 const ExecutorConfig& config) {
    auto s = state_from_inputs(o.facelets, o.scramble);
    auto mode = parse_mode(o.mode);
    const auto& table = tables.distance();
    Planner planner = [&table](const CanonicalState& c) { return oracle_solve(c, table); };
    auto rng = make_rng(o.seed);
    auto r = execute_episode(s, mode, planner, model, config, rng);

    if (o.trace) {
        std::cout << "# index\tkind\tresult\terror\trank\tcommitted\n";
        for (const auto& rec : r.trace) std::cout << format_trace_line(rec) << '\n';
    }
    std::cout << "state: " << facelets_of(s) << '\n'
              << "distance: " << table.distance(s) << '\n'
              << "mode: " << mode_name(mode) << '\n'
              << "plan: " << format_moves(r.initial_plan) << '\n'
              << "success: " << (r.success ? "yes" : "no") << '\n'
              << "atomic actions: " << r.atomic_actions << '\n'
              << "moves attempted: " << r.moves_attempted << '\n'
              << "replans: " << r.replans << '\n'
              << "all actions succeeded: " << (r.all_actions_succeeded ? "yes" : "no") << '\n'
              << "final state: " << facelets_of(r.final_state) << '\n';
    // The episode itself ran; a failed solve is a result, not an error.
    return 0;
}

struct EvalOptions {
    int trials = 100;
    std::string modes = "both";
    std::string out;
    std::vector<int> distances;
    std::uint64_t seed = 0;
    int threads = 1;
};

int cmd_eval(TableSource& tables, const EvalOptions& o, const ActuationModel& model,
             const ExecutorConfig& config) {
    ExperimentConfig cfg;
    cfg.distances = o.distances;
    if (cfg.distances.empty())
        for (int d = 1; d <= kMaxDepth; ++d) cfg.distances.push_back(d);
    cfg.trials_per_distance = o.trials;
    if (o.modes == "both") cfg.modes = {ExecutionMode::Rollback, ExecutionMode::OpenLoop};
    else cfg.modes = {parse_mode(o.modes)};
    cfg.model = model;
    cfg.executor = config;
    cfg.seed = o.seed;
    cfg.threads = o.threads;
    cfg.progress = [](int d, ExecutionMode m) {
        std::cerr << "distance " << d << " " << mode_name(m) << " done\n";
    };

    const auto& table = tables.distance();
    DistanceBuckets buckets(table);
    auto result = run_experiment(cfg, table, buckets);
    if (!o.out.empty()) export_csv(result, o.out);
    else std::cout << to_csv(result);

    std::cout << std::fixed << std::setprecision(4) << "overall average SR:";
    for (auto m : cfg.modes) std::cout << ' ' << mode_name(m) << '=' << result.average_sr(m);
    std::cout << '\n';
    return 0;
}

class CheckList {
public:
    void report(bool ok, const std::string& name, const std::string& detail = {}) {
        std::cout << (ok ? "PASS" : "FAIL") << "  " << name;
        if (!detail.empty()) std::cout << " (" << detail << ")";
        std::cout << '\n' << std::flush;
        failed_ |= !ok;
    }
    bool failed() const { return failed_; }

private:
    bool failed_ = false;
};

int cmd_verify(TableSource& tables, bool full) {
    CheckList checks;
    auto t0 = std::chrono::steady_clock::now();

    if (!tables.dir().empty()) {
        for (const char* name : {kDistanceFile, kOriPdbFile, kPermPdbFile}) {
            fs::path p = fs::path(tables.dir()) / name;
            try {
                read_table_file(p);
                checks.report(true, std::string("table file ") + name);
            } catch (const TableFormatError& e) {
                checks.report(false, std::string("table file ") + name, e.what());
            }
        }
        if (checks.failed()) return 1;
    }

    const auto& table = tables.distance();
    const auto& pdb = tables.pdb();
    std::uint64_t total = 0;
    for (auto n : table.histogram()) total += n;
    checks.report(total == kNumStates && table.entries().size() == kNumStates, "state count",
                  std::to_string(total));
    checks.report(table.max_depth() == kGodsNumberQtm, "diameter", std::to_string(table.max_depth()));

    {
        std::uint32_t step = full ? 1 : 101, bad = 0, n = 0;
        for (std::uint32_t i = 0; i < kNumStates; i += step, ++n)
            if (rank(unrank(i)) != i) ++bad;
        checks.report(bad == 0, full ? "rank round-trip (exhaustive)" : "rank round-trip (sampled)",
                      std::to_string(n) + " states");
    }
    {
        std::uint32_t bad = 0;
        for (std::uint32_t i = 0; i < kNumStates; ++i)
            if (pdb.heuristic(i) > table.at(i)) ++bad;
        checks.report(bad == 0, "pattern database admissibility", std::to_string(bad) + " violations");
    }
    {
        Rng rng(2);
        std::uniform_int_distribution<std::uint32_t> pick(0, kNumStates - 1);
        std::string pairs;
        bool ok = true;
        for (Move m : {Move::D, Move::Dp, Move::L, Move::Lp, Move::B, Move::Bp}) {
            auto g = reduce_move(m);
            pairs += std::string(pairs.empty() ? "" : ", ") + std::string(move_name(m)) + "=" +
                     std::string(move_name(g));
            for (int i = 0; i < 100; ++i) {
                auto s = unrank(pick(rng));
                ok &= canonicalize(apply(s.cubelets(), m)) == apply(s, g);
            }
        }
        checks.report(ok, "move equivalence", pairs);
    }
    if (full) {
        const auto& mt = move_tables();
        std::uint32_t bad = 0;
        for (std::uint32_t i = 0; i < kNumStates; ++i) {
            int best = 255;
            for (auto m : kAllGeneralizedMoves) best = std::min<int>(best, table.at(mt.next(i, m)));
            if (i == 0 ? table.at(i) != 0 : table.at(i) != best + 1) ++bad;
        }
        checks.report(bad == 0, "distance table consistency (exhaustive)", std::to_string(bad) + " violations");

        Rng rng(3);
        std::uniform_int_distribution<std::uint32_t> pick(0, kNumStates - 1);
        int wrong = 0;
        for (int i = 0; i < 1000; ++i) {
            auto s = unrank(pick(rng));
            auto sol = ida_star(s, pdb).solution;
            if (static_cast<int>(sol.size()) != table.distance(s) || !is_solved(apply_seq(s, sol))) ++wrong;
        }
        checks.report(wrong == 0, "solver optimality", "1000 random states");
    }

    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << std::fixed << std::setprecision(1) << (checks.failed() ? "verify failed" : "all checks passed")
              << " in " << secs << " s\n";
    return checks.failed() ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"2x2x2 cube solver and hand-executor simulator"};
    app.require_subcommand(1);

    std::string table_dir;
    app.add_option("--tables", table_dir, "Directory holding prebuilt table files")->envname("CUBE2_TABLES");

    ActuationModel model;
    ExecutorConfig config;
    auto add_actuation = [&](CLI::App* sub) {
        sub->add_option("--p-rot", model.p_rot, "Rotation success probability")->check(CLI::Range(0.0, 1.0));
        sub->add_option("--p-op", model.p_op, "Twist success probability")->check(CLI::Range(0.0, 1.0));
        sub->add_option("--p-restore", model.p_restore, "Alignment restore probability")
            ->check(CLI::Range(0.0, 1.0));
        sub->add_option("--dx", config.thresholds.position, "Position threshold (m)")
            ->check(CLI::PositiveNumber);
        sub->add_option("--dq", config.thresholds.orientation, "Orientation threshold (rad)")
            ->check(CLI::PositiveNumber);
        sub->add_option("--dtheta", config.thresholds.angle, "Twist angle threshold (rad)")
            ->check(CLI::PositiveNumber);
        sub->add_option("--budget", config.action_budget, "Atomic action budget per episode")
            ->check(CLI::NonNegativeNumber);
    };

    std::string out_dir;
    auto* build = app.add_subcommand("build-tables", "Build and save the distance table and pattern databases");
    build->add_option("--out", out_dir, "Output directory")->required();

    std::string facelets, scramble, planner = "ida";
    auto* solve = app.add_subcommand("solve", "Print an optimal solution");
    auto* state_opt = solve->add_option("--state", facelets, "24-letter facelet string (WYROGB)");
    solve->add_option("--scramble", scramble, "Move sequence applied to the solved cube")
        ->expected(0, 1)
        ->excludes(state_opt);
    solve->add_option("--planner", planner, "ida or oracle")->check(CLI::IsMember({"ida", "oracle"}));

    int distance = 1, count = 1;
    std::uint64_t seed = 0;
    auto* scr = app.add_subcommand("scramble", "Sample states at an exact distance");
    scr->add_option("--distance", distance, "Distance to solved")->required()->check(CLI::Range(1, kMaxDepth));
    scr->add_option("--count", count, "Number of states")->check(CLI::NonNegativeNumber);
    scr->add_option("--seed", seed, "RNG seed");

    SimOptions sim;
    auto* simulate = app.add_subcommand("simulate", "Run one execution episode");
    auto* sim_state = simulate->add_option("--state", sim.facelets, "24-letter facelet string");
    simulate->add_option("--scramble", sim.scramble, "Move sequence")->expected(0, 1)->excludes(sim_state);
    simulate->add_option("--mode", sim.mode, "rollback or open")
        ->check(CLI::IsMember({"rollback", "open", "open_loop"}));
    simulate->add_option("--seed", sim.seed, "RNG seed");
    simulate->add_flag("--trace", sim.trace, "Print one line per atomic action");
    add_actuation(simulate);

    EvalOptions ev;
    auto* eval = app.add_subcommand("eval", "Success rate and action count per distance");
    eval->add_option("--trials", ev.trials, "Episodes per distance and mode")->check(CLI::PositiveNumber);
    eval->add_option("--modes", ev.modes, "both, rollback or open")
        ->check(CLI::IsMember({"both", "rollback", "open", "open_loop"}));
    eval->add_option("--out", ev.out, "CSV output path (stdout if omitted)");
    eval->add_option("--distances", ev.distances, "Distances to run (default 1..14)")
        ->check(CLI::Range(1, kMaxDepth));
    eval->add_option("--seed", ev.seed, "Master seed");
    eval->add_option("--threads", ev.threads, "Worker threads")->check(CLI::PositiveNumber);
    add_actuation(eval);

    bool full = false;
    auto* verify = app.add_subcommand("verify", "Run self-checks on the tables and core invariants");
    verify->add_flag("--full", full, "Exhaustive checks");

    CLI11_PARSE(app, argc, argv);

    try {
        TableSource tables(table_dir);
        if (*build) return cmd_build_tables(out_dir);
        if (*solve) return cmd_solve(tables, facelets, scramble, planner);
        if (*scr) return cmd_scramble(tables, distance, count, seed);
        if (*simulate) return cmd_simulate(tables, sim, model, config);
        if (*eval) return cmd_eval(tables, ev, model, config);
        if (*verify) return cmd_verify(tables, full);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const FaceletError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
