#pragma once
// Hypergraphs with multiplicity incidence, the open/closed subhypergraph
// topology, generalized morphisms, and solution-group presentations.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ww/words.h"

namespace ww {

// Reserved id meaning "erased" in morphism maps and JSON files.
inline const std::string eps = "eps";

// A Z2 vertex labelling; vertices absent from the map are labelled 0.
using VertexLabelling = std::map<std::string, int>;

// A hypergraph (V, E, A) with non-negative integer incidence A_ve.  Vertices
// and edges keep their declaration order; `b` is the Z2 vertex labelling
// (absent vertex = 0).  Only strictly positive incidences are stored.
struct Hypergraph {
    std::vector<std::string> vertices;
    std::vector<std::string> edges;
    std::map<std::string, int> b;
    std::map<std::pair<std::string, std::string>, int> incidence;

    bool operator==(const Hypergraph&) const = default;

    bool has_vertex(const std::string& v) const;
    bool has_edge(const std::string& e) const;
    int inc(const std::string& v, const std::string& e) const;
    void set_inc(const std::string& v, const std::string& e, int a);
    int label(const std::string& v) const;

    int vertex_degree(const std::string& v) const; // |v| = sum_e A_ve
    int edge_size(const std::string& e) const;     // |e| = sum_v A_ve
    // Incident edges/vertices in declaration order (each listed once).
    std::vector<std::string> edges_at(const std::string& v) const;
    std::vector<std::string> vertices_of(const std::string& e) const;

    bool is_simple() const;          // all A_ve <= 1
    bool is_graph() const;           // all |e| == 2
    bool is_regular(int k) const;    // all |v| == k

    // Throws std::invalid_argument on duplicate/reserved ids, incidence or
    // labels naming undeclared ids, negative incidence, or labels not in Z2.
    void validate() const;
};

// Same (V, E, A), ignoring the vertex labelling.
bool same_structure(const Hypergraph& a, const Hypergraph& b);

// A subhypergraph is just a subset of V(H) ∪ E(H); incidence is inherited.
struct Subhypergraph {
    std::set<std::string> vertices;
    std::set<std::string> edges;

    bool operator==(const Subhypergraph&) const = default;
    bool contains_vertex(const std::string& v) const { return vertices.count(v) > 0; }
    bool contains_edge(const std::string& e) const { return edges.count(e) > 0; }
};

Subhypergraph whole(const Hypergraph& h);
// The subhypergraph as a standalone hypergraph, keeping h's declaration order
// and labels.  Incidence survives only between members of the subset.
Hypergraph materialize(const Hypergraph& h, const Subhypergraph& s);
void check_subhypergraph(const Hypergraph& h, const Subhypergraph& s); // throws

// N(S): same vertices, plus every edge of h incident to a vertex of S.
Subhypergraph neighbourhood(const Hypergraph& h, const Subhypergraph& s);
// S is open iff S = N(S); closed iff every vertex incident to an edge of S
// is in S.  closure(S) adds the missing endpoints.
bool is_open(const Hypergraph& h, const Subhypergraph& s);
bool is_closed(const Hypergraph& h, const Subhypergraph& s);
Subhypergraph closure(const Hypergraph& h, const Subhypergraph& s);

Subhypergraph sub_union(const Subhypergraph& a, const Subhypergraph& b);
Subhypergraph sub_intersection(const Subhypergraph& a, const Subhypergraph& b);

// A cycle is a closed subhypergraph that materializes to a simple connected
// 2-regular graph.  cycle_walk returns its vertices and edges in traversal
// order — edges[x] joins vertices[x] and vertices[(x+1) % n], starting at the
// first declared vertex and heading along its first declared edge — or
// nullopt when s is not a cycle.
struct CycleWalk {
    std::vector<std::string> vertices;
    std::vector<std::string> edges;
};
std::optional<CycleWalk> cycle_walk(const Hypergraph& h, const Subhypergraph& s);
bool is_cycle(const Hypergraph& h, const Subhypergraph& s);

// A generalized morphism: total maps V1 -> V2 ∪ {eps}, E1 -> E2 ∪ {eps}
// subject to (1) for surviving vertices, incidence sums are preserved
// fibrewise, and (2) an erased vertex has even surviving degree and all its
// surviving incident edges share one image.
struct GeneralizedMorphism {
    Hypergraph source;
    Hypergraph target;
    std::map<std::string, std::string> vmap;
    std::map<std::string, std::string> emap;

    const std::string& v_image(const std::string& v) const;
    const std::string& e_image(const std::string& e) const;
};

struct MorphismReport {
    bool ok = true;
    std::string detail;  // human-readable description of the first violation
    std::string vertex;  // witness vertex, when applicable
    std::string edge;    // witness target edge, when applicable
};

MorphismReport validate_morphism(const GeneralizedMorphism& m);

GeneralizedMorphism identity_morphism(const Hypergraph& h);
// Pointwise composition with eps absorbing; requires target(first) = source(second).
GeneralizedMorphism compose(const GeneralizedMorphism& second, const GeneralizedMorphism& first);

// h -> materialize(s): identity on s, eps elsewhere.  Requires s closed.
GeneralizedMorphism restriction_morphism(const Hypergraph& h, const Subhypergraph& s);
// materialize(s) -> h: identity.  Requires s open.
GeneralizedMorphism inclusion_morphism(const Hypergraph& h, const Subhypergraph& s);

// Unique common extension of morphisms defined on an open cover of h.  All
// pieces must target the same hypergraph, agree on overlaps, and cover h.
struct GluePiece {
    Subhypergraph domain;
    GeneralizedMorphism morphism; // source must be materialize(h, domain)
};
GeneralizedMorphism glue(const Hypergraph& h, const std::vector<GluePiece>& pieces);

// Backtracking search for a retraction h -> s (identity on s).  The budget
// bounds the number of search nodes.
struct RetractionResult {
    enum class Status { found, none, budget_exhausted } status;
    GeneralizedMorphism morphism; // meaningful only when status == found
};
RetractionResult find_retraction(const Hypergraph& h, const Subhypergraph& s,
                                 long long budget = 2'000'000);

// The solution group of (h, b): one involutive generator per edge, a linear
// relation per vertex, and commuting relations between co-incident edges.
struct LinearRelation {
    std::string vertex;
    InvWord word; // letters: incident edges with multiplicity, in declaration order; parity: b_v
};
struct SolutionGroupPresentation {
    std::vector<std::string> generators;                       // edge ids
    std::vector<LinearRelation> linear;                        // one per vertex
    std::vector<std::pair<std::string, std::string>> commuting; // deduplicated, declaration-ordered

    // Membership in the commuting-relation-free relation set: w is a defining
    // relation iff for some vertex v its letters are exactly the edges
    // incident to v with multiplicity (any order) and its parity is b_v.
    // Returns that vertex, if any.
    std::optional<std::string> defining_relation_vertex(const InvWord& w) const;
};
SolutionGroupPresentation solution_group_presentation(const Hypergraph& h,
                                                      const VertexLabelling& b);
SolutionGroupPresentation solution_group_presentation(const Hypergraph& h);

// The generator assignment x_e -> x_{m(e)} (eps meaning x_e -> 1) induced by a
// valid morphism; the group-level map is then well defined.
std::map<std::string, std::string> induced_generator_map(const GeneralizedMorphism& m);

} // namespace ww
