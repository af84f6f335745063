#pragma once
// Linear systems over Z2 read off labelled hypergraphs, the two-player
// consistency game they induce, exact classical analysis, numerical checks
// of operator solutions, and the built-in example systems.

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ww/gf2.h"
#include "ww/hypergraph.h"
#include "ww/words.h"

namespace ww {

// Ax = b over Z2.  Columns follow the edge declaration order, rows the
// vertex order.  Incidences of 2 or more are reduced mod 2 and the pairs
// that lost multiplicity are recorded — they no longer show in A but still
// force commutation between co-incident edges.
struct LinearSystem {
    std::vector<std::string> vars;
    std::vector<std::string> row_ids;
    GF2Matrix a;
    std::vector<std::uint8_t> b;
    std::vector<std::pair<std::string, std::string>> reduced; // (row, var), A_ve >= 2
};

// Vertices absent from b are labelled 0; values reduce mod 2.
LinearSystem to_linear_system(const Hypergraph& h, const VertexLabelling& b);
LinearSystem to_linear_system(const Hypergraph& h); // uses h.b

// Gaussian elimination outcome: one solution with free variables set to 0,
// or nullopt, plus the rank certificate (solvable iff rank_a == rank_ab).
struct ClassicalCertificate {
    std::optional<std::vector<std::uint8_t>> solution;
    std::size_t rank_a = 0;
    std::size_t rank_ab = 0;
};
ClassicalCertificate classical_perfect_strategy(const LinearSystem& ls);

// The consistency game of a linear system.  Alice is asked a row and answers
// an assignment to its support satisfying the row; Bob is asked a variable
// and answers one bit; they win when the answers agree on the shared
// variable.  Questions are the (row, support variable) pairs, uniformly
// distributed.  Rows with empty support are never asked; the odd ones among
// them are recorded — they make the row set unsatisfiable while invisible
// to the game, so the value convention below forces them to 0.
struct NonlocalGame {
    std::vector<std::string> vars;
    std::vector<std::string> row_ids;
    std::vector<std::uint8_t> b;
    std::vector<std::vector<int>> support; // per row: var indices with A = 1
    // per row: every satisfying assignment of its support, lexicographic
    // (earlier support position = higher bit), so 2^(k-1) entries each
    std::vector<std::vector<std::vector<std::uint8_t>>> answers;
    std::vector<std::pair<int, int>> questions; // (row, var index), row-major
    std::vector<std::string> degenerate_odd_rows;
};

// Throws std::invalid_argument when a row's support is too wide for an
// explicit answer table (past 20 variables); these tables are meant for
// desk-scale systems.
NonlocalGame to_game(const LinearSystem& ls);

struct Rational {
    long long num = 0;
    long long den = 1;
    bool operator==(const Rational&) const = default;
};

// Exact best win probability over deterministic strategy pairs, as a reduced
// fraction.  nullopt when the pair count — the product of Alice's answer
// table sizes times 2^vars — exceeds cap.  A game with a degenerate odd row
// has value 0 by convention, keeping "value 1 iff classically solvable"
// true; a game with no questions at all (and no such rows) has value 1.
//
// classical_value folds Bob's optimal reply into an OpenMP scan of Alice's
// strategies; classical_value_serial enumerates both sides literally and is
// kept as the reference the tests and the benchmark compare against.
std::optional<Rational> classical_value(const NonlocalGame& g, long long cap = 4'194'304);
std::optional<Rational> classical_value_serial(const NonlocalGame& g,
                                               long long cap = 4'194'304);

// A proposed operator solution: one d x d complex matrix per edge, row-major.
struct OperatorSolution {
    int d = 0;
    double tolerance = 1e-9;
    std::map<std::string, std::vector<std::complex<double>>> matrices;
};

// Numerical check of the solution-group relations at the given tolerance:
// every X_e self-adjoint and self-inverse, co-incident edges commute, and
// the product over each vertex (edges in declaration order, repeated per
// multiplicity) equals (-1)^{b_v} times the identity.  Residuals are max
// absolute entries of the defect, one per check; vertex_signs records the
// sign each product actually landed nearest.  Throws std::invalid_argument
// on a non-positive dimension, a wrong matrix size, a missing edge matrix,
// or a matrix for an edge the hypergraph does not have.
struct OperatorCheckReport {
    bool ok = true;
    std::string detail; // first violation, empty when ok
    double adjoint_residual = 0;
    double involution_residual = 0;
    double commutation_residual = 0;
    double product_residual = 0;
    std::map<std::string, int> vertex_signs; // vertex -> 0 (+1) or 1 (-1)
};
OperatorCheckReport verify_operator_solution(const Hypergraph& h, const VertexLabelling& b,
                                             const OperatorSolution& sol);

// Built-in examples, addressed by name; exactly one member is set.
// Throws std::invalid_argument on an unknown name.
struct Builtin {
    std::string name;
    std::optional<std::pair<Hypergraph, VertexLabelling>> system;
    std::optional<Presentation> presentation;
    std::optional<InvPresentation> inv_presentation;
};
Builtin builtin(const std::string& name);
const std::vector<std::string>& builtin_names();

} // namespace ww
