#include <stdexcept>

#include "ww/game.h"

namespace ww {

namespace {

// The 3x3 square of variables with one constraint per row and per column;
// every constraint sums to 0 except the last column, which sums to 1.
std::pair<Hypergraph, VertexLabelling> magic_square() {
    Hypergraph h;
    h.vertices = {"r1", "r2", "r3", "c1", "c2", "c3"};
    for (int i = 1; i <= 3; i++)
        for (int j = 1; j <= 3; j++)
            h.edges.push_back("x" + std::to_string(i) + std::to_string(j));
    for (int i = 1; i <= 3; i++)
        for (int j = 1; j <= 3; j++) {
            const std::string e = "x" + std::to_string(i) + std::to_string(j);
            h.set_inc("r" + std::to_string(i), e, 1);
            h.set_inc("c" + std::to_string(j), e, 1);
        }
    h.b = {{"c3", 1}};
    h.validate();
    return {h, h.b};
}

// The HNN extension over the four-generator group with b^2-conjugation
// relations in a cycle, with central involution J and a stable letter x
// whose commutator with a equals J.
Presentation hnn_presentation() {
    Presentation p;
    p.generators = {"a", "b", "c", "d", "J", "x"};
    auto conj_sq = [](const std::string& s, const std::string& t) {
        return FreeWord{{s, 1}, {t, 1}, {s, -1}, {t, -1}, {t, -1}};
    };
    auto comm = [](const std::string& s, const std::string& t) {
        return FreeWord{{s, 1}, {t, 1}, {s, -1}, {t, -1}};
    };
    p.relations = {conj_sq("a", "b"),
                   conj_sq("b", "c"),
                   conj_sq("c", "d"),
                   conj_sq("d", "a"),
                   {{"J", 1}, {"J", 1}},
                   comm("J", "a"),
                   comm("J", "b"),
                   comm("J", "c"),
                   comm("J", "d"),
                   comm("J", "x"),
                   {{"x", 1}, {"a", 1}, {"x", -1}, {"a", -1}, {"J", -1}}};
    p.j_word = {{"J", 1}};
    return p;
}

InvPresentation square_example() {
    return {{"x", "y", "z", "u", "v"},
            {{0, {"x", "y", "x", "z"}}, {0, {"x", "u", "v", "u"}}}};
}

} // namespace

const std::vector<std::string>& builtin_names() {
    static const std::vector<std::string> names = {
        "figure3_invpresentation", "higman_hnn_presentation", "magic_square"};
    return names;
}

Builtin builtin(const std::string& name) {
    Builtin b;
    b.name = name;
    if (name == "magic_square") {
        b.system = magic_square();
        return b;
    }
    if (name == "higman_hnn_presentation") {
        b.presentation = hnn_presentation();
        return b;
    }
    if (name == "figure3_invpresentation") {
        b.inv_presentation = square_example();
        return b;
    }
    throw std::invalid_argument("builtin: unknown name \"" + name + "\"");
}

} // namespace ww
