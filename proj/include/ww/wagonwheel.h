#pragma once
// The wagon-wheel hypergraph of an involutory presentation, its labellings
// and toggle moves, the standard cycle family Phi, the explicit retractions
// onto hub and sector neighbourhoods, and the sun/stellar/constellation
// predicates those feed into.

#include <optional>
#include <string>
#include <vector>

#include "ww/hypergraph.h"
#include "ww/words.h"

namespace ww {

// One wheel per relation r_i = J^{a_i} s_{i,0} ... s_{i,n_i-1}: three vertex
// layers (i,j,k) per position j, rim edges a/b alternating around layers 1-2,
// spokes c from layer 2 to layer 3, a hub cycle of d edges on layer 3, and
// one shared edge per generator, incident to (i,j,1) wherever that generator
// occurs.  Wheel index i and position j are 0-based (positions mod n_i), the
// layer k is 1..3.  Ids are "v.<i>.<j>.<k>" and "<family>.<i>.<j>"; generator
// edges use the generator name itself.
struct WagonWheel {
    Hypergraph hypergraph;
    InvPresentation source;

    int wheels() const { return static_cast<int>(source.relations.size()); }
    int wheel_size(int i) const;   // n_i
    int wheel_parity(int i) const; // a_i
    const std::string& letter(int i, int j) const; // s_{i,j}, j mod n_i

    std::string vertex_id(int i, int j, int k) const;
    std::string edge_id(char family, int i, int j) const; // family in {a,b,c,d}

    // The closed subhypergraph W_i: the 3*n_i wheel vertices and the 4*n_i
    // wheel edges (generator edges excluded).
    Subhypergraph wheel(int i) const;
};

// Builds the wagon wheel: 3M vertices and 4M + |S| edges where M is the
// total relation length.  Generators absent from every relation end up as
// isolated edges.  Throws std::invalid_argument on an invalid presentation,
// an empty relation, or a generator id containing '.' (reserved for the
// wheel id scheme).
WagonWheel build_wagon_wheel(const InvPresentation& pres);

// A labelling of the wagon wheel assigns 0/1 to every vertex so that each
// wheel carries a number of 1s with the parity of its relation.  Keys must
// name vertices; missing vertices count as 0.
bool is_labelling(const WagonWheel& w, const VertexLabelling& b);

enum class LabellingMode { any, constellation };

// Deterministic labelling.  `any` puts the 1 of an odd wheel at (i,0,1).
// `constellation` also places at most one 1 per wheel, never on layers 2-3,
// at the smallest position whose letter has odd multiplicity in some
// relation — or at position 0 when every letter of the wheel has even
// multiplicity in every relation.  That shape is what makes the standard
// cycles a b-constellation.
VertexLabelling choose_labelling(const WagonWheel& w, LabellingMode mode);

// Flip b at every vertex v of e with A_ve odd.
VertexLabelling toggle(const Hypergraph& h, const VertexLabelling& b, const std::string& e);

// A sequence of wheel-edge toggles (a/b/c/d families only, never generator
// edges) carrying b0 to b1, found by a GF(2) solve per wheel; nullopt when
// b0 and b1 are not both labellings of w.
std::optional<std::vector<std::string>> labelling_path(const WagonWheel& w,
                                                       const VertexLabelling& b0,
                                                       const VertexLabelling& b1);

// The rim cycle A_i (edges a/b, layers 1-2), the hub cycle B_i (edges d,
// layer 3), and the sector pentagons C_ij (edges a_ij, b_ij, c_ij, d_ij,
// c_{i,j-1}).  phi lists all C_ij (wheel-major, position-minor) followed by
// all B_i; the rims are not part of phi.  Every entry is validated as a
// cycle; wheels of size 1 cannot form them and throw std::invalid_argument.
struct StandardCycles {
    std::vector<Subhypergraph> A;
    std::vector<Subhypergraph> B;
    std::vector<std::vector<Subhypergraph>> C;
    std::vector<Subhypergraph> phi;
};
StandardCycles standard_cycles(const WagonWheel& w);

// Retraction of the whole hypergraph onto N(B_i): wheel i collapses onto its
// hub (a/b/d edges land on d, layer 1 is erased, layers 2-3 drop to 3),
// every other wheel and every generator edge is erased.
GeneralizedMorphism retract_to_B(const WagonWheel& w, int i);

// Retraction onto N(C_ij), where s = s_{i,j}.  Each wheel containing s is
// folded onto a pentagon around one occurrence of s, alternating the fold
// direction between consecutive occurrences, and carried onto the target by
// the sun isomorphism matching the s pendants; wheels without s are erased.
// Requires every relation cyclically reduced and mult(s; r) even for every
// relation r; violations throw std::invalid_argument naming the offender.
GeneralizedMorphism retract_to_C(const WagonWheel& w, int i, int j);

// A sun of size n >= 3 found in h: vertices in cyclic order, cycle_edges[x]
// joining vertices[x] and vertices[x+1 mod n], pendant_edges[x] the size-1
// edge at vertices[x].  Canonical order: first declared vertex first, heading
// along its first declared cycle edge.
struct SunForm {
    std::vector<std::string> vertices;
    std::vector<std::string> cycle_edges;
    std::vector<std::string> pendant_edges;
};
std::optional<SunForm> is_sun(const Hypergraph& h);

// C is b-stellar in h when N(C) is a sun, N(C) is a retract of h, and b is 0
// on C's vertices.  A supplied witness must be a retraction onto
// materialize(N(C)) and is verified (std::invalid_argument otherwise, as for
// a C that is not a cycle).  Without one, disproofs that need no search are
// tried first and find_retraction decides the rest; std::runtime_error when
// its budget runs out before an answer (supply a witness in that case).
bool is_stellar(const Hypergraph& h, const VertexLabelling& b, const Subhypergraph& C,
                const std::optional<GeneralizedMorphism>& witness = std::nullopt,
                long long budget = 2'000'000);

struct ConstellationReport {
    bool ok = true;
    // "a", "b" or "c" for a failed condition; "indeterminate" when the
    // verdict hinges on a stellar status the search budget could not settle.
    std::string condition;
    std::string detail;
    int cycle0 = -1; // index into phi, when applicable
    int cycle1 = -1; // second index, for pairwise violations
};

// Checks, in order: every member of phi is a cycle; pairwise edge
// intersections have size <= 1 (first half of (c)); every member has a sun
// neighbourhood and either is b-stellar or, past two cyclically adjacent
// edges, runs along edges of b-stellar members (a); every member owns an
// edge private to it or shares an edge with a member that does (b); no two
// non-b-stellar members share an edge (second half of (c)).  Stellar
// statuses come from the parallel `witnesses` vector where present;
// otherwise cheap disproofs are tried first and retraction search runs only
// for cycles whose status the verdict actually needs.
ConstellationReport is_constellation(
    const Hypergraph& h, const VertexLabelling& b, const std::vector<Subhypergraph>& phi,
    const std::vector<std::optional<GeneralizedMorphism>>& witnesses = {},
    long long budget = 2'000'000);

// GraphViz rendering of the wheel topology: one cluster per wheel, vertices
// and a/b/c/d edges inside it, generator edges as box nodes joined to the
// layer-1 vertices where they occur.
std::string to_dot(const WagonWheel& w);

} // namespace ww
