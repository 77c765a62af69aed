#include "tgc/keys.hpp"

#include <algorithm>
#include <limits>

namespace tgc {

namespace {

constexpr int kShapeOfOrbit[13] = {
    shape::kEdge,           // 0
    shape::kPath3,          // 1
    shape::kTriangle,       // 2
    shape::kPath4,          // 3
    shape::kPath4,          // 4
    shape::kStar4,          // 5
    shape::kCycle4,         // 6
    shape::kTailedTriangle, // 7
    shape::kTailedTriangle, // 8
    shape::kTailedTriangle, // 9
    shape::kChordalCycle,   // 10
    shape::kChordalCycle,   // 11
    shape::kClique4,        // 12
};

constexpr int kShapeEdges[9] = {1, 2, 3, 3, 3, 4, 4, 5, 6};

using Tuple4 = std::array<int, 4>;

Tuple4 lexmin(const Tuple4& a, const Tuple4& b) { return std::min(a, b); }

void sort2(int& a, int& b) {
    if (b < a) std::swap(a, b);
}

/// Lexicographic minimum of a 4-cycle type sequence over rotations and
/// reflections (the dihedral group of the square).
Tuple4 cycle4_canonical(const Tuple4& c) {
    Tuple4 best = c;
    for (int rot = 0; rot < 4; ++rot) {
        Tuple4 fwd{c[rot], c[(rot + 1) % 4], c[(rot + 2) % 4], c[(rot + 3) % 4]};
        Tuple4 rev{c[rot], c[(rot + 3) % 4], c[(rot + 2) % 4], c[(rot + 1) % 4]};
        best = lexmin(best, lexmin(fwd, rev));
    }
    return best;
}

}  // namespace

int graphlet_size(int code) {
    if (code == 0) return 2;
    if (code <= 2) return 3;
    if (code <= orbit::kMax) return 4;
    throw DataError("unknown graphlet code " + std::to_string(code));
}

int shape_of_orbit(int orbit_code) {
    if (orbit_code < 0 || orbit_code > orbit::kMax)
        throw DataError("unknown orbit code " + std::to_string(orbit_code));
    return kShapeOfOrbit[orbit_code];
}

int shape_edge_count(int shape_code) {
    if (shape_code < 0 || shape_code > shape::kMax)
        throw DataError("unknown shape code " + std::to_string(shape_code));
    return kShapeEdges[shape_code];
}

Hash radix_for(int num_types) {
    if (num_types < 1) throw DataError("number of types must be >= 1");
    if (num_types <= 9) return 10;
    if (num_types <= 99) return 100;
    if (num_types <= 999) return 1000;
    if (num_types <= 9999) return 10000;
    throw DataError("more than 9999 node types are not supported by the hash encoding");
}

Hash encode(const GraphletKey& key, int num_types) {
    const Hash r = radix_for(num_types);
    if (key.code < 0 || key.code > orbit::kMax)
        throw DataError("unknown graphlet code " + std::to_string(key.code));
    for (int t : key.types) {
        if (t < 0 || static_cast<Hash>(t) >= r)
            throw DataError("type id " + std::to_string(t) + " out of hash radix " +
                            std::to_string(r));
    }
    Hash h = static_cast<Hash>(key.code);
    for (int t : key.types) h = h * r + static_cast<Hash>(t);
    return h;
}

GraphletKey decode(Hash hash, int num_types, Mode mode) {
    const Hash r = radix_for(num_types);
    GraphletKey key;
    key.mode = mode;
    Hash rest = hash;
    for (int slot = 3; slot >= 0; --slot) {
        key.types[slot] = static_cast<int>(rest % r);
        rest /= r;
    }
    if (rest > static_cast<Hash>(orbit::kMax))
        throw ParseError("hash " + std::to_string(hash) + ": unknown graphlet code " +
                         std::to_string(rest));
    key.code = static_cast<int>(rest);
    const int k = graphlet_size(key.code);
    for (int slot = 0; slot < 4; ++slot) {
        const int t = key.types[slot];
        if (slot < k) {
            if (t < 1 || t > num_types)
                throw ParseError("hash " + std::to_string(hash) + ": type slot " +
                                 std::to_string(slot + 1) + " holds invalid type " +
                                 std::to_string(t));
        } else if (t != 0) {
            throw ParseError("hash " + std::to_string(hash) + ": nonzero padding");
        }
    }
    return key;
}

GraphletKey canonicalize_typed(int code, std::span<const int> raw) {
    const int k = graphlet_size(code);
    if (static_cast<int>(raw.size()) != k)
        throw DataError("type tuple size does not match graphlet size");
    GraphletKey key;
    key.code = code;
    key.mode = Mode::Typed;
    std::copy(raw.begin(), raw.end(), key.types.begin());
    std::sort(key.types.begin(), key.types.begin() + k);
    return key;
}

GraphletKey canonicalize_position_aware(int orbit_code, std::span<const int> roles) {
    const int k = graphlet_size(orbit_code);
    if (static_cast<int>(roles.size()) != k)
        throw DataError("role tuple size does not match orbit size");
    GraphletKey key;
    key.code = orbit_code;
    key.mode = Mode::PositionAware;
    std::copy(roles.begin(), roles.end(), key.types.begin());
    auto& t = key.types;
    switch (orbit_code) {
        case orbit::kEdge:
            sort2(t[0], t[1]);
            break;
        case orbit::kWedge:  // (center, end, end)
            sort2(t[1], t[2]);
            break;
        case orbit::kTriangle:
            std::sort(t.begin(), t.begin() + 3);
            break;
        case orbit::kPathEdge:
        case orbit::kTailedTriEdge:
        case orbit::kChordalEdge:
            break;  // trivial stabilizer
        case orbit::kPathCenter:
        case orbit::kCycle: {
            // reflection fixing the anchored edge: i<->j together with k<->r
            Tuple4 img{t[1], t[0], t[3], t[2]};
            t = lexmin(t, img);
            break;
        }
        case orbit::kStar:        // (center, anchored leaf, leaf, leaf)
        case orbit::kTailedTail:  // (apex, pendant, tri, tri)
            sort2(t[2], t[3]);
            break;
        case orbit::kTailedCenter:  // (tri, tri, apex, pendant)
            sort2(t[0], t[1]);
            break;
        case orbit::kChordalCenter:
        case orbit::kClique:
            sort2(t[0], t[1]);
            sort2(t[2], t[3]);
            break;
        default:
            throw DataError("unknown orbit code " + std::to_string(orbit_code));
    }
    return key;
}

GraphletKey canonicalize_shape_position_aware(int shape_code, std::span<const int> roles) {
    const int k = graphlet_size(shape_code);
    if (static_cast<int>(roles.size()) != k)
        throw DataError("role tuple size does not match shape size");
    GraphletKey key;
    key.code = shape_code;
    key.mode = Mode::PositionAware;
    std::copy(roles.begin(), roles.end(), key.types.begin());
    auto& t = key.types;
    switch (shape_code) {
        case shape::kEdge:
            sort2(t[0], t[1]);
            break;
        case shape::kPath3:  // (center, end, end)
            sort2(t[1], t[2]);
            break;
        case shape::kTriangle:
            std::sort(t.begin(), t.begin() + 3);
            break;
        case shape::kPath4: {  // (end, mid, mid, end); path reversal
            Tuple4 img{t[3], t[2], t[1], t[0]};
            t = lexmin(t, img);
            break;
        }
        case shape::kStar4:  // (center, leaf, leaf, leaf)
            std::sort(t.begin() + 1, t.end());
            break;
        case shape::kCycle4:
            t = cycle4_canonical(t);
            break;
        case shape::kTailedTriangle:  // (apex, pendant, tri, tri)
            sort2(t[2], t[3]);
            break;
        case shape::kChordalCycle:  // (chord, chord, deg-2, deg-2)
            sort2(t[0], t[1]);
            sort2(t[2], t[3]);
            break;
        case shape::kClique4:
            std::sort(t.begin(), t.end());
            break;
        default:
            throw DataError("unknown shape code " + std::to_string(shape_code));
    }
    return key;
}

GraphletKey orbit_key_to_graphlet_key(const GraphletKey& key) {
    const int sh = shape_of_orbit(key.code);
    const int k = graphlet_size(key.code);
    const auto& t = key.types;
    if (key.mode == Mode::Typed) {
        GraphletKey out;
        out.code = sh;
        out.types = t;
        out.mode = Mode::Typed;
        return out;
    }
    // Rearrange the orbit's role order into the shape's role order, then
    // canonicalize under the shape's full automorphism group so that each
    // instance yields the same key regardless of which edge anchored it.
    Tuple4 r = t;
    switch (key.code) {
        case orbit::kEdge:
        case orbit::kWedge:
        case orbit::kTriangle:
            break;
        case orbit::kPathEdge:  // already (end, mid, mid, end)
            break;
        case orbit::kPathCenter:  // path order is k-j-i-r
            r = {t[2], t[1], t[0], t[3]};
            break;
        case orbit::kStar:
            break;  // (center, leaf, leaf, leaf)
        case orbit::kCycle:
            break;  // already in cycle order
        case orbit::kTailedTail:
            break;  // (apex, pendant, tri, tri)
        case orbit::kTailedCenter:  // (tri, tri, apex, pendant)
            r = {t[2], t[3], t[0], t[1]};
            break;
        case orbit::kTailedTriEdge:  // (apex, tri-on-anchor, third tri, pendant)
            r = {t[0], t[3], t[1], t[2]};
            break;
        case orbit::kChordalEdge:  // (deg-2 anchor, deg-3 anchor, deg-3, deg-2)
            r = {t[1], t[2], t[0], t[3]};
            break;
        case orbit::kChordalCenter:
            break;  // (chord, chord, deg-2, deg-2)
        case orbit::kClique:
            break;
        default:
            throw DataError("unknown orbit code " + std::to_string(key.code));
    }
    return canonicalize_shape_position_aware(sh, std::span<const int>(r.data(), k));
}

Count count_possible_typed(int k, int num_types) {
    if (k < 1 || num_types < 1) throw DataError("K and L must be >= 1");
    // C(L+K-1, K) with overflow-checked arithmetic.
    const std::int64_t n = static_cast<std::int64_t>(num_types) + k - 1;
    __int128 acc = 1;
    for (int i = 1; i <= k; ++i) {
        acc = acc * (n - k + i) / i;
        if (acc > std::numeric_limits<Count>::max())
            throw DataError("typed key-space size overflows 64 bits");
    }
    return static_cast<Count>(acc);
}

Count count_possible_position_aware(int k, int num_types) {
    if (k < 1 || num_types < 1) throw DataError("K and L must be >= 1");
    __int128 acc = 1;
    for (int i = 0; i < k; ++i) {
        acc *= num_types;
        if (acc > std::numeric_limits<Count>::max())
            throw DataError("position-aware key-space size overflows 64 bits");
    }
    return static_cast<Count>(acc);
}

KeyEncoder::KeyEncoder(int num_types, Mode mode)
    : num_types_(num_types), mode_(mode) {
    r1_ = radix_for(num_types);
    r2_ = r1_ * r1_;
    r3_ = r2_ * r1_;
    r4_ = r2_ * r2_;
    if (num_types <= 9) {
        // Precomputed sorted images of every packed 4-tuple of decimal digits.
        sorted_lut_.assign(10000, 0);
        for (int s = 0; s < 10000; ++s) {
            std::array<int, 4> d{s / 1000, (s / 100) % 10, (s / 10) % 10, s % 10};
            std::sort(d.begin(), d.end());
            sorted_lut_[s] =
                static_cast<std::uint16_t>(d[0] * 1000 + d[1] * 100 + d[2] * 10 + d[3]);
        }
    }
}

Hash KeyEncoder::sorted2_(int a, int b, int code) const {
    sort2(a, b);
    return pack2(code, a, b);
}

Hash KeyEncoder::sorted4_(int code, int a, int b, int c, int d) const {
    if (!sorted_lut_.empty()) {
        const int s = a * 1000 + b * 100 + c * 10 + d;
        const int canon = sorted_lut_[s];
        return static_cast<Hash>(code) * r4_ + static_cast<Hash>(canon / 1000) * r3_ +
               static_cast<Hash>((canon / 100) % 10) * r2_ +
               static_cast<Hash>((canon / 10) % 10) * r1_ + static_cast<Hash>(canon % 10);
    }
    std::array<int, 4> t{a, b, c, d};
    std::sort(t.begin(), t.end());
    return pack4(code, t[0], t[1], t[2], t[3]);
}

Hash KeyEncoder::edge_key(int a, int b) const { return sorted2_(a, b, orbit::kEdge); }

Hash KeyEncoder::wedge_key(int center, int end1, int end2) const {
    sort2(end1, end2);
    if (mode_ == Mode::Typed) {
        int a = center, b = end1, c = end2;
        sort2(a, b);
        sort2(b, c);
        sort2(a, b);
        return pack3(orbit::kWedge, a, b, c);
    }
    return pack3(orbit::kWedge, center, end1, end2);
}

Hash KeyEncoder::triangle_key(int a, int b, int c) const {
    sort2(a, b);
    sort2(b, c);
    sort2(a, b);
    return pack3(orbit::kTriangle, a, b, c);
}

Hash KeyEncoder::quad_key(int code, int r1, int r2, int r3, int r4) const {
    if (mode_ == Mode::Typed) return sorted4_(code, r1, r2, r3, r4);
    switch (code) {
        case orbit::kPathEdge:
        case orbit::kTailedTriEdge:
        case orbit::kChordalEdge:
            return pack4(code, r1, r2, r3, r4);
        case orbit::kPathCenter:
        case orbit::kCycle:
            return std::min(pack4(code, r1, r2, r3, r4), pack4(code, r2, r1, r4, r3));
        case orbit::kStar:
        case orbit::kTailedTail:
            sort2(r3, r4);
            return pack4(code, r1, r2, r3, r4);
        case orbit::kTailedCenter:
            sort2(r1, r2);
            return pack4(code, r1, r2, r3, r4);
        case orbit::kChordalCenter:
        case orbit::kClique:
            sort2(r1, r2);
            sort2(r3, r4);
            return pack4(code, r1, r2, r3, r4);
        default:
            throw DataError("quad_key: code " + std::to_string(code) +
                            " is not a 4-node orbit");
    }
}

}  // namespace tgc
