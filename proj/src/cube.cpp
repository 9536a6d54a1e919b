#include "cube2/cube.hpp"

#include <algorithm>
#include <sstream>

namespace cube2 {
namespace {

struct MoveTable {
    std::array<std::uint8_t, kNumCorners> from;   // slot i receives the cubelet from slot from[i]
    std::array<std::uint8_t, kNumCorners> twist;  // added to that cubelet's orientation
};

// Clockwise quarter turns, indexed by Face.
constexpr std::array<MoveTable, kNumFaces> kFaceTurns = {{
    {{3, 0, 1, 2, 4, 5, 6, 7}, {0, 0, 0, 0, 0, 0, 0, 0}},  // U
    {{0, 1, 2, 3, 5, 7, 4, 6}, {0, 0, 0, 0, 0, 0, 0, 0}},  // D
    {{4, 1, 2, 0, 6, 5, 3, 7}, {2, 0, 0, 1, 1, 0, 2, 0}},  // R
    {{0, 2, 7, 3, 4, 1, 6, 5}, {0, 1, 2, 0, 0, 2, 0, 1}},  // L
    {{1, 5, 2, 3, 0, 4, 6, 7}, {1, 2, 0, 0, 2, 1, 0, 0}},  // F
    {{0, 1, 3, 6, 4, 5, 7, 2}, {0, 0, 1, 2, 0, 0, 1, 2}},  // B
}};

// Facelet indices of each slot, U/D facelet first, then clockwise.
constexpr int kU = 0, kD = 4, kR = 8, kL = 12, kF = 16, kB = 20;
constexpr std::array<std::array<int, 3>, kNumCorners> kCornerFacelets = {{
    {kU + 3, kR + 0, kF + 1},  // URF
    {kU + 2, kF + 0, kL + 1},  // UFL
    {kU + 0, kL + 0, kB + 1},  // ULB
    {kU + 1, kB + 0, kR + 1},  // UBR
    {kD + 1, kF + 3, kR + 2},  // DFR
    {kD + 0, kL + 3, kF + 2},  // DLF
    {kD + 3, kR + 3, kB + 2},  // DRB
    {kD + 2, kB + 3, kL + 2},  // DLB
}};

Color facelet_home_color(int facelet) { return static_cast<Color>(facelet / 4); }

std::array<CubeletState, kNumMoves> build_move_states() {
    std::array<CubeletState, kNumMoves> out{};
    for (int f = 0; f < kNumFaces; ++f) {
        CubeletState cw;
        cw.perm = kFaceTurns[f].from;
        cw.ori = kFaceTurns[f].twist;
        CubeletState ccw = compose(compose(cw, cw), cw);
        out[f * 2] = cw;
        out[f * 2 + 1] = ccw;
    }
    return out;
}

const std::array<CubeletState, kNumMoves>& move_states() {
    static const auto table = build_move_states();
    return table;
}

// Rotation that brings a cubelet in `slot` with orientation `ori` back to the
// anchor position, indexed [slot][ori].
using AnchorTable = std::array<std::array<std::uint8_t, 3>, kNumCorners>;

AnchorTable build_anchor_table() {
    AnchorTable t{};
    const auto& rots = whole_cube_rotations();
    for (std::size_t r = 0; r < rots.size(); ++r) {
        int slot = rots[r].perm[kAnchor];
        int ori = (3 - rots[r].ori[kAnchor]) % 3;
        t[slot][ori] = static_cast<std::uint8_t>(r);
    }
    return t;
}

std::array<GeneralizedMove, kNumMoves> build_reduction() {
    const auto& rots = whole_cube_rotations();
    std::array<GeneralizedMove, kNumMoves> out{};
    for (Move m : kAllMoves) {
        bool found = false;
        for (GeneralizedMove g : kAllGeneralizedMoves) {
            // m = g * r for some rotation r  <=>  g^-1 * m is a rotation.
            CubeletState rest = apply(apply(CubeletState::solved(), inverse(to_move(g))), m);
            if (std::find(rots.begin(), rots.end(), rest) != rots.end()) {
                out[static_cast<int>(m)] = g;
                found = true;
                break;
            }
        }
        if (!found) throw std::logic_error("move table has no generalized equivalent");
    }
    return out;
}

constexpr std::array<std::uint32_t, 8> kFactorial = {1, 1, 2, 6, 24, 120, 720, 5040};

}  // namespace

char color_letter(Color c) {
    static constexpr char kLetters[] = "WYROGB";
    return kLetters[static_cast<int>(c)];
}

MoveSeq inverse_seq(std::span<const Move> seq) {
    MoveSeq out;
    out.reserve(seq.size());
    for (auto it = seq.rbegin(); it != seq.rend(); ++it) out.push_back(inverse(*it));
    return out;
}

GenMoveSeq inverse_seq(std::span<const GeneralizedMove> seq) {
    GenMoveSeq out;
    out.reserve(seq.size());
    for (auto it = seq.rbegin(); it != seq.rend(); ++it) out.push_back(inverse(*it));
    return out;
}

MoveSeq to_moves(std::span<const GeneralizedMove> seq) {
    MoveSeq out;
    out.reserve(seq.size());
    for (auto m : seq) out.push_back(to_move(m));
    return out;
}

bool CubeletState::valid() const {
    std::array<bool, kNumCorners> seen{};
    int twist = 0;
    for (int i = 0; i < kNumCorners; ++i) {
        if (perm[i] >= kNumCorners || seen[perm[i]] || ori[i] > 2) return false;
        seen[perm[i]] = true;
        twist += ori[i];
    }
    return twist % 3 == 0;
}

CubeletState compose(const CubeletState& a, const CubeletState& b) {
    CubeletState out;
    for (int i = 0; i < kNumCorners; ++i) {
        out.perm[i] = a.perm[b.perm[i]];
        out.ori[i] = static_cast<std::uint8_t>((a.ori[b.perm[i]] + b.ori[i]) % 3);
    }
    return out;
}

CubeletState apply(const CubeletState& state, Move m) {
    return compose(state, move_states()[static_cast<int>(m)]);
}

CanonicalState apply(const CanonicalState& state, GeneralizedMove m) {
    return CanonicalState(apply(state.state_, to_move(m)));
}

CubeletState apply_seq(CubeletState state, std::span<const Move> seq) {
    for (Move m : seq) state = apply(state, m);
    return state;
}

CanonicalState apply_seq(CanonicalState state, std::span<const GeneralizedMove> seq) {
    for (GeneralizedMove m : seq) state = apply(state, m);
    return state;
}

const std::array<CubeletState, 24>& whole_cube_rotations() {
    static const std::array<CubeletState, 24> rotations = [] {
        const auto solved = CubeletState::solved();
        // Turning opposite layers the same way in space rotates the whole cube.
        const std::array<CubeletState, 3> generators = {
            apply(apply(solved, Move::U), Move::Dp),
            apply(apply(solved, Move::R), Move::Lp),
            apply(apply(solved, Move::F), Move::Bp),
        };
        std::vector<CubeletState> group = {solved};
        for (std::size_t head = 0; head < group.size(); ++head) {
            for (const auto& g : generators) {
                auto next = compose(group[head], g);
                if (std::find(group.begin(), group.end(), next) == group.end())
                    group.push_back(next);
            }
        }
        if (group.size() != 24) throw std::logic_error("rotation group is not of order 24");
        std::array<CubeletState, 24> out;
        std::copy(group.begin(), group.end(), out.begin());
        return out;
    }();
    return rotations;
}

CanonicalState canonicalize(const CubeletState& state) {
    static const AnchorTable anchor = build_anchor_table();
    int slot = static_cast<int>(std::find(state.perm.begin(), state.perm.end(), kAnchor) -
                                state.perm.begin());
    const auto& r = whole_cube_rotations()[anchor[slot][state.ori[slot]]];
    return CanonicalState(compose(state, r));
}

GeneralizedMove reduce_move(Move m) {
    static const auto table = build_reduction();
    return table[static_cast<int>(m)];
}

bool is_solved(const CanonicalState& state) { return state == CanonicalState::solved(); }

bool is_solved(const CubeletState& state) { return is_solved(canonicalize(state)); }

std::uint32_t perm_coord(const CanonicalState& state) {
    const auto& p = state.cubelets().perm;
    std::uint32_t code = 0;
    for (int i = 0; i < kAnchor; ++i) {
        std::uint32_t smaller = 0;
        for (int j = i + 1; j < kAnchor; ++j)
            if (p[j] < p[i]) ++smaller;
        code += smaller * kFactorial[kAnchor - 1 - i];
    }
    return code;
}

std::uint32_t ori_coord(const CanonicalState& state) {
    const auto& o = state.cubelets().ori;
    std::uint32_t code = 0;
    for (int i = 5; i >= 0; --i) code = code * 3 + o[i];
    return code;
}

std::uint32_t rank(const CanonicalState& state) {
    return perm_coord(state) * kNumOriCoords + ori_coord(state);
}

CanonicalState unrank(std::uint32_t index) {
    if (index >= kNumStates) throw std::out_of_range("state index out of range");
    std::uint32_t pc = index / kNumOriCoords;
    std::uint32_t oc = index % kNumOriCoords;

    CubeletState s;
    std::vector<std::uint8_t> pool = {0, 1, 2, 3, 4, 5, 6};
    for (int i = 0; i < kAnchor; ++i) {
        std::uint32_t f = kFactorial[kAnchor - 1 - i];
        std::uint32_t digit = pc / f;
        pc %= f;
        s.perm[i] = pool[digit];
        pool.erase(pool.begin() + digit);
    }
    s.perm[kAnchor] = kAnchor;

    int twist = 0;
    for (int i = 0; i < 6; ++i) {
        s.ori[i] = static_cast<std::uint8_t>(oc % 3);
        twist += s.ori[i];
        oc /= 3;
    }
    s.ori[6] = static_cast<std::uint8_t>((3 - twist % 3) % 3);
    s.ori[kAnchor] = 0;
    return CanonicalState(s);
}

FaceletState to_facelets(const CubeletState& state) {
    FaceletState out{};
    for (int slot = 0; slot < kNumCorners; ++slot) {
        int cubelet = state.perm[slot];
        int twist = state.ori[slot];
        for (int k = 0; k < 3; ++k) {
            out[kCornerFacelets[slot][(k + twist) % 3]] =
                facelet_home_color(kCornerFacelets[cubelet][k]);
        }
    }
    return out;
}

CubeletState from_facelets(const FaceletState& f) {
    std::array<int, 6> counts{};
    for (Color c : f) {
        if (static_cast<int>(c) >= 6)
            throw FaceletError(FaceletError::Kind::IllegalColoring, "unknown colour");
        ++counts[static_cast<int>(c)];
    }
    for (int c = 0; c < 6; ++c) {
        if (counts[c] != 4) {
            throw FaceletError(FaceletError::Kind::IllegalColoring,
                               std::string("colour ") + color_letter(static_cast<Color>(c)) +
                                   " appears " + std::to_string(counts[c]) + " times");
        }
    }

    auto is_ud = [](Color c) { return c == Color::White || c == Color::Yellow; };

    CubeletState s;
    std::array<bool, kNumCorners> used{};
    int twist_sum = 0;
    for (int slot = 0; slot < kNumCorners; ++slot) {
        const auto& fl = kCornerFacelets[slot];
        int ori = -1;
        for (int k = 0; k < 3; ++k) {
            if (is_ud(f[fl[k]])) {
                if (ori >= 0) ori = 3;  // two U/D stickers on one corner
                else ori = k;
            }
        }
        if (ori < 0 || ori > 2) {
            throw FaceletError(FaceletError::Kind::IllegalCubelet,
                               "corner slot " + std::to_string(slot) +
                                   " does not carry exactly one U/D sticker");
        }
        int match = -1;
        for (int c = 0; c < kNumCorners; ++c) {
            const auto& home = kCornerFacelets[c];
            bool same = true;
            for (int k = 0; k < 3; ++k) {
                if (f[fl[(k + ori) % 3]] != facelet_home_color(home[k])) same = false;
            }
            if (same) {
                match = c;
                break;
            }
        }
        if (match < 0) {
            throw FaceletError(FaceletError::Kind::IllegalCubelet,
                               "corner slot " + std::to_string(slot) + " has no matching cubelet");
        }
        if (used[match]) {
            throw FaceletError(FaceletError::Kind::IllegalCubelet,
                               "cubelet " + std::to_string(match) + " appears twice");
        }
        used[match] = true;
        s.perm[slot] = static_cast<std::uint8_t>(match);
        s.ori[slot] = static_cast<std::uint8_t>(ori);
        twist_sum += ori;
    }
    if (twist_sum % 3 != 0)
        throw FaceletError(FaceletError::Kind::IllegalTwist, "corner twists do not sum to 0 mod 3");
    return s;
}

std::string facelet_string(const FaceletState& facelets) {
    std::string out;
    out.reserve(kNumFacelets);
    for (Color c : facelets) out.push_back(color_letter(c));
    return out;
}

FaceletState parse_facelet_string(std::string_view text) {
    if (text.size() != kNumFacelets) {
        throw FaceletError(FaceletError::Kind::MalformedString,
                           "facelet string must have 24 letters, got " +
                               std::to_string(text.size()));
    }
    static constexpr std::string_view kLetters = "WYROGB";
    FaceletState out{};
    for (std::size_t i = 0; i < text.size(); ++i) {
        auto pos = kLetters.find(text[i]);
        if (pos == std::string_view::npos) {
            throw FaceletError(FaceletError::Kind::MalformedString,
                               std::string("bad colour letter '") + text[i] + "' at position " +
                                   std::to_string(i + 1));
        }
        out[i] = static_cast<Color>(pos);
    }
    return out;
}

std::string_view move_name(Move m) {
    static constexpr std::array<std::string_view, kNumMoves> kNames = {
        "U", "U'", "D", "D'", "R", "R'", "L", "L'", "F", "F'", "B", "B'"};
    return kNames[static_cast<int>(m)];
}

std::string_view move_name(GeneralizedMove m) { return move_name(to_move(m)); }

MoveSeq parse_moves(std::string_view text) {
    MoveSeq out;
    std::istringstream in{std::string(text)};
    std::string token;
    std::size_t index = 0;
    while (in >> token) {
        ++index;
        auto it = std::find_if(kAllMoves.begin(), kAllMoves.end(),
                               [&](Move m) { return move_name(m) == token; });
        if (it == kAllMoves.end())
            throw ParseError(index, "unknown move '" + token + "' at token " + std::to_string(index));
        out.push_back(*it);
    }
    return out;
}

GenMoveSeq parse_generalized_moves(std::string_view text) {
    MoveSeq moves = parse_moves(text);
    GenMoveSeq out;
    out.reserve(moves.size());
    for (std::size_t i = 0; i < moves.size(); ++i) {
        auto it = std::find_if(kAllGeneralizedMoves.begin(), kAllGeneralizedMoves.end(),
                               [&](GeneralizedMove g) { return to_move(g) == moves[i]; });
        if (it == kAllGeneralizedMoves.end()) {
            throw ParseError(i + 1, "move '" + std::string(move_name(moves[i])) +
                                        "' at token " + std::to_string(i + 1) +
                                        " is outside U, U', R, R', F, F'");
        }
        out.push_back(*it);
    }
    return out;
}

std::string format_moves(std::span<const Move> seq) {
    std::string out;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (i) out.push_back(' ');
        out += move_name(seq[i]);
    }
    return out;
}

std::string format_moves(std::span<const GeneralizedMove> seq) {
    return format_moves(to_moves(seq));
}

}  // namespace cube2
