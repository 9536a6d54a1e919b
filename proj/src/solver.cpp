#include "cube2/solver.hpp"

#include <limits>
#include <stdexcept>

namespace cube2 {
namespace {

constexpr int kFound = -1;
constexpr int kNoMove = -1;

class IdaSearch {
public:
    IdaSearch(const PatternDB& pdb, SolveResult& result)
        : pdb_(pdb), tables_(move_tables()), result_(result) {}

    // Returns kFound, or the smallest f-value that exceeded the bound.
    int search(std::uint32_t index, int g, int bound, int prev, int prev2) {
        int f = g + pdb_.heuristic(index);
        if (f > bound) return f;
        if (index == 0) return kFound;
        ++result_.nodes_expanded;

        int next_bound = std::numeric_limits<int>::max();
        for (int k = 0; k < kNumGeneralizedMoves; ++k) {
            // m followed by m^-1 cancels; m m m is m^-1 in one move.
            if (prev != kNoMove && k == (prev ^ 1)) continue;
            if (prev != kNoMove && k == prev && k == prev2) continue;

            auto m = static_cast<GeneralizedMove>(k);
            path_.push_back(m);
            int t = search(tables_.next(index, m), g + 1, bound, k, prev);
            if (t == kFound) return kFound;
            path_.pop_back();
            if (t < next_bound) next_bound = t;
        }
        return next_bound;
    }

    GenMoveSeq& path() { return path_; }

private:
    const PatternDB& pdb_;
    const MoveTables& tables_;
    SolveResult& result_;
    GenMoveSeq path_;
};

}  // namespace

SolveResult ida_star(const CanonicalState& state, const PatternDB& pdb) {
    SolveResult result;
    std::uint32_t root = rank(state);
    if (root == 0) return result;

    IdaSearch search(pdb, result);
    int bound = pdb.heuristic(root);
    while (bound <= kGodsNumberQtm) {
        ++result.iterations;
        result.bounds.push_back(bound);
        search.path().clear();
        int t = search.search(root, 0, bound, kNoMove, kNoMove);
        if (t == kFound) {
            result.solution = std::move(search.path());
            return result;
        }
        bound = t;
    }
    throw std::logic_error("no solution within 14 quarter turns");
}

GenMoveSeq oracle_solve(const CanonicalState& state, const DistanceTable& table) {
    const auto& mt = move_tables();
    GenMoveSeq out;
    std::uint32_t index = rank(state);
    while (table.at(index) != 0) {
        int d = table.at(index);
        bool stepped = false;
        for (auto m : kAllGeneralizedMoves) {
            auto n = mt.next(index, m);
            if (table.at(n) == d - 1) {
                out.push_back(m);
                index = n;
                stepped = true;
                break;
            }
        }
        if (!stepped) throw std::logic_error("distance table is not neighbour-consistent");
    }
    return out;
}

}  // namespace cube2
