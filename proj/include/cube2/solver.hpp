#pragma once

#include "cube2/cube.hpp"
#include "cube2/tables.hpp"

#include <cstdint>
#include <vector>

namespace cube2 {

struct SolveResult {
    GenMoveSeq solution;
    std::uint64_t nodes_expanded = 0;
    int iterations = 0;       // deepening rounds run
    std::vector<int> bounds;  // cost bound of each round, in order
};

/// Iterative-deepening A* with the pattern-database heuristic. Children are
/// tried in the order U, U', R, R', F, F' and the first solution found at the
/// optimal depth is returned.
SolveResult ida_star(const CanonicalState& state, const PatternDB& pdb);
inline SolveResult ida_star(const CubeletState& state, const PatternDB& pdb) {
    return ida_star(canonicalize(state), pdb);
}

/// Greedy descent through the exact distance table. Picks the first move (in
/// generalized order) that lowers the distance by one.
GenMoveSeq oracle_solve(const CanonicalState& state, const DistanceTable& table);

}  // namespace cube2
