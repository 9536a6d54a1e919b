#pragma once

// Reference model of face turns by rotating sticker positions in space.
// Shares nothing with the move tables in cube.cpp beyond the facelet
// numbering convention.
//
// Axes: +x toward R, +y toward U, +z toward F. Cubelet centres sit at +-1.

#include "cube2/cube.hpp"

#include <array>
#include <stdexcept>

namespace cube2::testing {

struct IVec {
    int x = 0, y = 0, z = 0;
    friend bool operator==(const IVec&, const IVec&) = default;
};

inline int idot(IVec a, IVec b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline IVec icross(IVec a, IVec b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

struct Sticker {
    IVec pos;
    IVec normal;
};

inline IVec face_normal(Face f) {
    switch (f) {
        case Face::U: return {0, 1, 0};
        case Face::D: return {0, -1, 0};
        case Face::R: return {1, 0, 0};
        case Face::L: return {-1, 0, 0};
        case Face::F: return {0, 0, 1};
        case Face::B: return {0, 0, -1};
    }
    return {};
}

// Position of facelet `index` as read off the unfolded net.
inline Sticker sticker_at(int index) {
    auto face = static_cast<Face>(index / 4);
    int row = (index % 4) / 2, col = index % 2;
    int top = row == 0 ? 1 : -1;
    Sticker s{{}, face_normal(face)};
    switch (face) {
        case Face::U: s.pos = {col ? 1 : -1, 1, row ? 1 : -1}; break;
        case Face::D: s.pos = {col ? 1 : -1, -1, row ? -1 : 1}; break;
        case Face::R: s.pos = {1, top, col ? -1 : 1}; break;
        case Face::L: s.pos = {-1, top, col ? 1 : -1}; break;
        case Face::F: s.pos = {col ? 1 : -1, top, 1}; break;
        case Face::B: s.pos = {col ? -1 : 1, top, -1}; break;
    }
    return s;
}

inline int facelet_index(const Sticker& s) {
    for (int i = 0; i < kNumFacelets; ++i) {
        auto t = sticker_at(i);
        if (t.pos == s.pos && t.normal == s.normal) return i;
    }
    throw std::logic_error("no facelet at that position");
}

// Quarter turn about axis n: clockwise seen from outside when `clockwise`.
inline IVec quarter_turn(IVec v, IVec n, bool clockwise) {
    IVec c = icross(n, v);
    int along = idot(n, v);
    int sign = clockwise ? -1 : 1;
    return {sign * c.x + n.x * along, sign * c.y + n.y * along, sign * c.z + n.z * along};
}

inline FaceletState turn_stickers(const FaceletState& f, Move m) {
    IVec n = face_normal(face_of(m));
    bool clockwise = !is_prime(m);
    FaceletState out = f;
    for (int i = 0; i < kNumFacelets; ++i) {
        auto s = sticker_at(i);
        if (idot(s.pos, n) <= 0) continue;
        Sticker moved{quarter_turn(s.pos, n, clockwise), quarter_turn(s.normal, n, clockwise)};
        out[facelet_index(moved)] = f[i];
    }
    return out;
}

}  // namespace cube2::testing
