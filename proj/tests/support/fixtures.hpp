#pragma once

#include "cube2/cube.hpp"
#include "cube2/geometry.hpp"
#include "cube2/tables.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace cube2::testing {

inline const DistanceTable& shared_table() {
    static const DistanceTable table = build_distance_table();
    return table;
}

inline const PatternDB& shared_pdb() {
    static const PatternDB pdb = build_pattern_dbs();
    return pdb;
}

/// Uniform over all legal raw states (8! * 3^7), rotations included.
inline CubeletState random_state(Rng& rng) {
    CubeletState s;
    std::iota(s.perm.begin(), s.perm.end(), 0);
    std::shuffle(s.perm.begin(), s.perm.end(), rng);
    std::uniform_int_distribution<int> twist(0, 2);
    int sum = 0;
    for (int i = 0; i < 7; ++i) {
        s.ori[i] = static_cast<std::uint8_t>(twist(rng));
        sum += s.ori[i];
    }
    s.ori[7] = static_cast<std::uint8_t>((3 - sum % 3) % 3);
    return s;
}

inline CanonicalState random_canonical(Rng& rng) {
    std::uniform_int_distribution<std::uint32_t> pick(0, kNumStates - 1);
    return unrank(pick(rng));
}

inline MoveSeq random_moves(Rng& rng, std::size_t n) {
    std::uniform_int_distribution<int> pick(0, kNumMoves - 1);
    MoveSeq seq;
    for (std::size_t i = 0; i < n; ++i) seq.push_back(static_cast<Move>(pick(rng)));
    return seq;
}

inline GenMoveSeq random_generalized_moves(Rng& rng, std::size_t n) {
    std::uniform_int_distribution<int> pick(0, kNumGeneralizedMoves - 1);
    GenMoveSeq seq;
    for (std::size_t i = 0; i < n; ++i) seq.push_back(static_cast<GeneralizedMove>(pick(rng)));
    return seq;
}

}  // namespace cube2::testing
