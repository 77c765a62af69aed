#pragma once

#include <array>
#include <span>
#include <vector>

#include "tgc/common.hpp"

namespace tgc {

// Edge-anchored orbit codes. An orbit identifies the position of the anchored
// edge inside a {2,3,4}-node connected shape.
namespace orbit {
constexpr int kEdge = 0;           // 2-node edge
constexpr int kWedge = 1;          // 3-path containing the edge
constexpr int kTriangle = 2;       // triangle
constexpr int kPathEdge = 3;       // 4-path, end edge
constexpr int kPathCenter = 4;     // 4-path, center edge
constexpr int kStar = 5;           // 4-star
constexpr int kCycle = 6;          // 4-cycle
constexpr int kTailedTail = 7;     // tailed-triangle, tail edge
constexpr int kTailedCenter = 8;   // tailed-triangle, triangle edge opposite the apex
constexpr int kTailedTriEdge = 9;  // tailed-triangle, triangle edge at the apex
constexpr int kChordalEdge = 10;   // chordal-cycle, cycle edge
constexpr int kChordalCenter = 11; // chordal-cycle, chord
constexpr int kClique = 12;        // 4-clique
constexpr int kMax = 12;
}  // namespace orbit

// Graphlet (shape) codes, used after merging orbits of the same shape.
namespace shape {
constexpr int kEdge = 0;
constexpr int kPath3 = 1;
constexpr int kTriangle = 2;
constexpr int kPath4 = 3;
constexpr int kStar4 = 4;
constexpr int kCycle4 = 5;
constexpr int kTailedTriangle = 6;
constexpr int kChordalCycle = 7;
constexpr int kClique4 = 8;
constexpr int kMax = 8;
}  // namespace shape

/// Canonical identity of a typed (or position-aware) graphlet orbit:
/// code + canonical type tuple. Unused trailing slots are 0.
struct GraphletKey {
    int code = 0;
    std::array<int, 4> types{0, 0, 0, 0};
    Mode mode = Mode::Typed;

    friend bool operator==(const GraphletKey&, const GraphletKey&) = default;
};

/// Number of nodes K spanned by an orbit or shape code (they agree on 0..8).
int graphlet_size(int code);

/// Shape a given orbit belongs to.
int shape_of_orbit(int orbit_code);

/// |E(H)| of a shape; used to de-duplicate per-edge sums into instance counts.
int shape_edge_count(int shape_code);

/// Positional radix of the hash: the smallest power of ten strictly greater
/// than the number of types. Throws DataError for L >= 10000 (the hash would
/// no longer fit 64 bits).
Hash radix_for(int num_types);

/// hash = code*R^4 + t1*R^3 + t2*R^2 + t3*R + t4.
Hash encode(const GraphletKey& key, int num_types);

/// Exact inverse of encode. Throws ParseError on an unknown code, a type
/// slot out of range, or nonzero padding.
GraphletKey decode(Hash hash, int num_types, Mode mode);

/// Sort the raw tuple into the multiset-canonical form.
GraphletKey canonicalize_typed(int code, std::span<const int> raw);

/// Canonicalize a role-ordered tuple under the orbit's symmetry group: the
/// stabilizer of the anchored edge inside the shape's automorphism group.
/// Role order per orbit:
///   1  (center, end, end)
///   3  (anchor-end, anchor-mid, far-mid, far-end)
///   4  (i, j, k, r) with k adjacent j, r adjacent i
///   5  (center, anchored leaf, leaf, leaf)
///   6  (i, j, k, r) in cycle order i-j-k-r-i
///   7  (apex, pendant, tri, tri)
///   8  (tri, tri, apex, pendant)
///   9  (apex, other tri vertex on anchor, third tri vertex, pendant)
///   10 (deg-2 anchor endpoint, deg-3 anchor endpoint, other deg-3, other deg-2)
///   11 (chord vertex, chord vertex, deg-2, deg-2)
///   12 (i, j, k, r)
GraphletKey canonicalize_position_aware(int orbit_code, std::span<const int> roles);

/// Map an orbit-level key to its graphlet-level key. In typed mode the type
/// multiset is kept; in position-aware mode the roles are rearranged into the
/// shape's role order and canonicalized under the full automorphism group.
GraphletKey orbit_key_to_graphlet_key(const GraphletKey& key);

/// Canonicalize a shape-level role tuple under the shape's automorphism group.
/// Role order per shape: path4 (end, mid, mid, end) in path order;
/// star4 (center, leaf, leaf, leaf); cycle4 in cycle order;
/// tailed-triangle (apex, pendant, tri, tri); chordal-cycle (chord, chord,
/// deg-2, deg-2); clique4 any.
GraphletKey canonicalize_shape_position_aware(int shape_code, std::span<const int> roles);

/// C(L+K-1, K): distinct typed graphlets of one K-node shape under L types.
Count count_possible_typed(int k, int num_types);

/// L^K: distinct position-aware typed graphlets of one K-node shape.
Count count_possible_position_aware(int k, int num_types);

/// Hash-domain primitives used by the hot counting loops. Values are packed
/// lexicographically, so the minimum over packed symmetry images equals the
/// packed lexicographic-minimum tuple.
class KeyEncoder {
public:
    KeyEncoder(int num_types, Mode mode);

    Mode mode() const { return mode_; }
    int num_types() const { return num_types_; }

    Hash pack2(int code, int a, int b) const {
        return static_cast<Hash>(code) * r4_ + static_cast<Hash>(a) * r3_ +
               static_cast<Hash>(b) * r2_;
    }
    Hash pack3(int code, int a, int b, int c) const {
        return pack2(code, a, b) + static_cast<Hash>(c) * r1_;
    }
    Hash pack4(int code, int a, int b, int c, int d) const {
        return pack3(code, a, b, c) + static_cast<Hash>(d);
    }

    /// orbit 0; both modes sort the pair.
    Hash edge_key(int a, int b) const;
    /// orbit 1; typed sorts, position-aware keeps the center first.
    Hash wedge_key(int center, int end1, int end2) const;
    /// orbit 2; both modes sort.
    Hash triangle_key(int a, int b, int c) const;
    /// 4-node orbit from a role-ordered tuple (see canonicalize_position_aware).
    Hash quad_key(int orbit_code, int r1, int r2, int r3, int r4) const;

private:
    Hash sorted2_(int a, int b, int code) const;
    Hash sorted4_(int code, int a, int b, int c, int d) const;

    int num_types_;
    Mode mode_;
    Hash r1_, r2_, r3_, r4_;
    // Multiset canonicalization table for all type 4-tuples, built when L <= 9:
    // maps t1*1000 + t2*100 + t3*10 + t4 to its sorted image.
    std::vector<std::uint16_t> sorted_lut_;
};

}  // namespace tgc
