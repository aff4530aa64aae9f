#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "treecochain/laurent.hpp"

namespace tc {

/// 2x2 matrix over F = F_q(T), acting on the tree through its image in
/// GL_2(F_inf).
struct GL2F {
    RatFunc a, b, c, d;

    static GL2F identity();
    static GL2F from_polys(const Poly& a, const Poly& b, const Poly& c, const Poly& d);
    bool operator==(const GL2F& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
};

namespace gl2 {

GL2F mul(const Field& F, const GL2F& x, const GL2F& y);
RatFunc det(const Field& F, const GL2F& g);
GL2F inverse(const Field& F, const GL2F& g);
GL2F scale(const Field& F, const GL2F& g, const RatFunc& s);
/// [[1, b], [0, 1]]
GL2F translation(const Poly& b);
/// [[m, 0], [0, 1]]
GL2F dilation(const Poly& m);
/// [[0, 1], [pi, 0]]; right multiplication by it reverses an edge.
GL2F flip();
/// [[0, 1], [1, 0]]
GL2F weyl();
/// All entries polynomial and det in F_q^x.
bool in_gl2a(const Field& F, const GL2F& g);
/// in_gl2a and n divides the lower-left entry.
bool in_gamma0(const Field& F, const GL2F& g, const Poly& n);
std::string str(const Field& F, const GL2F& g);

}  // namespace gl2

/// Edge of the Bruhat-Tits tree in normal form. A positive edge is the
/// class of [[pi^k, u], [0, 1]] with u carrying no terms pi^i, i >= k; a
/// negative edge is that matrix times flip(), i.e. the reverse of the
/// positive edge (k, u).
struct TreeEdge {
    int k = 0;
    LaurentPoly u;
    bool positive = true;

    bool operator==(const TreeEdge& o) const { return k == o.k && positive == o.positive && u == o.u; }
    bool operator!=(const TreeEdge& o) const { return !(*this == o); }
    bool operator<(const TreeEdge& o) const;
};

/// Vertex [[pi^k, u], [0, 1]] GL_2(O_inf), u reduced mod pi^k.
struct TreeVertex {
    int k = 0;
    LaurentPoly u;
    bool operator==(const TreeVertex& o) const { return k == o.k && u == o.u; }
};

namespace tree {

/// Coset representative of g Z(F_inf) I_inf. Throws on singular g.
TreeEdge normal_form(const Field& F, const GL2F& g);
TreeVertex vertex_normal_form(const Field& F, const GL2F& g);
GL2F edge_matrix(const Field& F, const TreeEdge& e);

TreeEdge make_edge(int k, const LaurentPoly& u, bool positive);
inline TreeEdge bar(const TreeEdge& e) { return {e.k, e.u, !e.positive}; }
TreeEdge act(const Field& F, const GL2F& g, const TreeEdge& e);

TreeVertex origin(const Field& F, const TreeEdge& e);
TreeVertex terminus(const Field& F, const TreeEdge& e);

/// The q edges e' != bar(e) with terminus o(e).
std::vector<TreeEdge> incoming_neighbors(const Field& F, const TreeEdge& e);

/// Half-line edge e_i = (-i, 0, +) or its reverse.
TreeEdge half_line_edge(int i, bool flipped);

struct HalfLinePos {
    int index = 0;
    bool flipped = false;
    GL2F gamma;  // in GL_2(A), act(gamma, e) = half_line_edge(index, flipped)
    int steps = 0;
};
HalfLinePos reduce_gl2a(const Field& F, const TreeEdge& e);

struct Positivized {
    GL2F gamma;  // in Gamma_0(n)
    TreeEdge edge;
    bool used_fallback = false;
};
/// Finds gamma in Gamma_0(n) with act(gamma, e) positive. The search
/// looks for the smallest-degree lower-left entry first, which keeps the
/// resulting k small; `search = false` forces the explicit construction.
/// Every result is certified before it is returned.
Positivized reduce_to_positive(const Field& F, const TreeEdge& e, const Poly& n, bool search = true);

/// "(3; T+pi; +)"
std::string str(const Field& F, const TreeEdge& e);
TreeEdge parse(const Field& F, const std::string& s);

/// k uniform in [kmin, kmax], u with iid coefficients at pi^lo_u .. pi^(k-1).
TreeEdge random_edge(const Field& F, std::mt19937_64& rng, int kmin, int kmax, bool positive, int lo_u = -3);

}  // namespace tree

}  // namespace tc
