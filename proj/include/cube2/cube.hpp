#pragma once

// Exact model of the 2x2x2 cube.
//
// Corner slots and cubelets share one naming, by home corner:
//
//     0 URF   1 UFL   2 ULB   3 UBR   4 DFR   5 DLF   6 DRB   7 DLB
//
// Cubelet 7 (DLB) is the anchor used to quotient out whole-cube rotations.
//
// Facelets are numbered face-major in the order U, D, R, L, F, B, four per
// face, row-major from the upper-left corner of the usual unfolded net (U seen
// from above with B at the top, D seen from below with F at the top, the four
// side faces seen from outside with U at the top).
//
// Orientation of a cubelet in a slot counts how far its U/D-coloured sticker
// has been twisted from the slot's U/D facelet, stepping through the slot's
// facelets in clockwise order.

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cube2 {

inline constexpr int kNumCorners = 8;
inline constexpr int kNumFacelets = 24;
inline constexpr int kAnchor = 7;
inline constexpr std::uint32_t kNumPermCoords = 5040;  // 7!
inline constexpr std::uint32_t kNumOriCoords = 729;    // 3^6
inline constexpr std::uint32_t kNumStates = kNumPermCoords * kNumOriCoords;
inline constexpr int kGodsNumberQtm = 14;

enum class Face : std::uint8_t { U, D, R, L, F, B };
inline constexpr int kNumFaces = 6;

enum class Color : std::uint8_t { White, Yellow, Red, Orange, Green, Blue };

/// Home colour of a face: U white, D yellow, R red, L orange, F green, B blue.
constexpr Color home_color(Face f) { return static_cast<Color>(f); }

char color_letter(Color c);

// Quarter turns. A plain move is a clockwise turn seen from outside the face.
enum class Move : std::uint8_t { U, Up, D, Dp, R, Rp, L, Lp, F, Fp, B, Bp };
inline constexpr int kNumMoves = 12;

// The moves that leave the DLB anchor in place. Enumerator order is the
// solver's child order.
enum class GeneralizedMove : std::uint8_t { U, Up, R, Rp, F, Fp };
inline constexpr int kNumGeneralizedMoves = 6;

inline constexpr std::array<Move, kNumMoves> kAllMoves = {
    Move::U, Move::Up, Move::D, Move::Dp, Move::R, Move::Rp,
    Move::L, Move::Lp, Move::F, Move::Fp, Move::B, Move::Bp};
inline constexpr std::array<GeneralizedMove, kNumGeneralizedMoves> kAllGeneralizedMoves = {
    GeneralizedMove::U, GeneralizedMove::Up, GeneralizedMove::R,
    GeneralizedMove::Rp, GeneralizedMove::F, GeneralizedMove::Fp};

using MoveSeq = std::vector<Move>;
using GenMoveSeq = std::vector<GeneralizedMove>;

constexpr Face face_of(Move m) { return static_cast<Face>(static_cast<int>(m) / 2); }
constexpr bool is_prime(Move m) { return (static_cast<int>(m) & 1) != 0; }
constexpr Move inverse(Move m) { return static_cast<Move>(static_cast<int>(m) ^ 1); }
constexpr Move make_move(Face f, bool prime) {
    return static_cast<Move>(static_cast<int>(f) * 2 + (prime ? 1 : 0));
}

constexpr bool is_prime(GeneralizedMove m) { return (static_cast<int>(m) & 1) != 0; }
constexpr GeneralizedMove inverse(GeneralizedMove m) {
    return static_cast<GeneralizedMove>(static_cast<int>(m) ^ 1);
}
constexpr Move to_move(GeneralizedMove m) {
    constexpr std::array<Move, kNumGeneralizedMoves> table = {
        Move::U, Move::Up, Move::R, Move::Rp, Move::F, Move::Fp};
    return table[static_cast<int>(m)];
}

MoveSeq inverse_seq(std::span<const Move> seq);
GenMoveSeq inverse_seq(std::span<const GeneralizedMove> seq);
MoveSeq to_moves(std::span<const GeneralizedMove> seq);

struct CubeletState {
    std::array<std::uint8_t, kNumCorners> perm{};  // slot -> cubelet id
    std::array<std::uint8_t, kNumCorners> ori{};   // twist of the cubelet in that slot

    static constexpr CubeletState solved() {
        CubeletState s;
        for (int i = 0; i < kNumCorners; ++i) s.perm[i] = static_cast<std::uint8_t>(i);
        return s;
    }

    /// Bijective permutation, orientations in {0,1,2} summing to 0 mod 3.
    bool valid() const;

    friend bool operator==(const CubeletState&, const CubeletState&) = default;
};

/// A cube state modulo whole-cube rotation, represented with the anchor
/// cubelet home and untwisted.
class CanonicalState {
public:
    static CanonicalState solved() { return CanonicalState(CubeletState::solved()); }

    const CubeletState& cubelets() const { return state_; }

    friend bool operator==(const CanonicalState&, const CanonicalState&) = default;

private:
    explicit CanonicalState(const CubeletState& s) : state_(s) {}

    friend CanonicalState canonicalize(const CubeletState&);
    friend CanonicalState unrank(std::uint32_t);
    friend CanonicalState apply(const CanonicalState&, GeneralizedMove);

    CubeletState state_;
};

CubeletState apply(const CubeletState& state, Move m);
CanonicalState apply(const CanonicalState& state, GeneralizedMove m);
CubeletState apply_seq(CubeletState state, std::span<const Move> seq);
CanonicalState apply_seq(CanonicalState state, std::span<const GeneralizedMove> seq);

/// The 24 whole-cube rotations, each expressed as the cubelet state reached by
/// rotating the solved cube. Rotating a state s by r is compose(s, r).
const std::array<CubeletState, 24>& whole_cube_rotations();

/// State reached by applying the transformation `b` (given as a state) to `a`.
CubeletState compose(const CubeletState& a, const CubeletState& b);

CanonicalState canonicalize(const CubeletState& state);

/// The generalized move with the same effect as `m` once whole-cube rotation
/// is factored out. The pairing is derived from the move tables at first use.
GeneralizedMove reduce_move(Move m);

bool is_solved(const CubeletState& state);
bool is_solved(const CanonicalState& state);

// Index layout: perm_coord * 729 + ori_coord, where perm_coord is the Lehmer
// rank of slots 0..6 and ori_coord packs ori[0..5] as base-3 digits (digit i
// weighted 3^i).
std::uint32_t perm_coord(const CanonicalState& state);
std::uint32_t ori_coord(const CanonicalState& state);
std::uint32_t rank(const CanonicalState& state);
CanonicalState unrank(std::uint32_t index);  // throws std::out_of_range

using FaceletState = std::array<Color, kNumFacelets>;

class FaceletError : public std::runtime_error {
public:
    enum class Kind { MalformedString, IllegalColoring, IllegalCubelet, IllegalTwist };

    FaceletError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

FaceletState to_facelets(const CubeletState& state);
CubeletState from_facelets(const FaceletState& facelets);

/// 24 letters from "WYROGB" in facelet order.
std::string facelet_string(const FaceletState& facelets);
FaceletState parse_facelet_string(std::string_view text);

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t token, const std::string& what)
        : std::runtime_error(what), token_(token) {}
    /// 1-based position of the offending token.
    std::size_t token() const { return token_; }

private:
    std::size_t token_;
};

std::string_view move_name(Move m);
std::string_view move_name(GeneralizedMove m);
MoveSeq parse_moves(std::string_view text);
/// Like parse_moves but only accepts U, U', R, R', F, F'.
GenMoveSeq parse_generalized_moves(std::string_view text);
std::string format_moves(std::span<const Move> seq);
std::string format_moves(std::span<const GeneralizedMove> seq);

}  // namespace cube2
