#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <fstream>
#include <random>

#include "ww/json_io.h"
#include "ww/wagonwheel.h"

using namespace ww;

namespace {

json load_fixture(const std::string& name) {
    std::ifstream in(std::string(FIXTURE_DIR) + "/" + name);
    REQUIRE(in.good());
    return json::parse(in);
}

// Two wheels sharing the letter x; x shows up once in the second relation,
// so its multiplicity there is odd.
InvPresentation two_wheels() {
    return {{"x", "y", "z", "u", "v"},
            {InvWord{0, {"x", "y", "x", "z"}}, InvWord{0, {"x", "u", "v", "u"}}}};
}

// One wheel with parity 1; s is even everywhere, t and u are odd.
InvPresentation one_odd_wheel() { return {{"s", "t", "u"}, {InvWord{1, {"s", "t", "s", "u"}}}}; }

Subhypergraph cyc(std::initializer_list<std::string> vs, std::initializer_list<std::string> es) {
    return Subhypergraph{std::set<std::string>(vs), std::set<std::string>(es)};
}

InvWord random_doubled_word(std::mt19937& rng, int half_len) {
    const std::vector<std::string> pool = {"p", "q", "r"};
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    InvWord w;
    while (static_cast<int>(w.letters.size()) < half_len) {
        const std::string& s = pool[pick(rng)];
        if (!w.letters.empty() && w.letters.back() == s) continue;
        if (static_cast<int>(w.letters.size()) == half_len - 1 && w.letters.front() == s) continue;
        w.letters.push_back(s);
    }
    // doubling keeps cyclic reducedness and makes every multiplicity even
    std::vector<std::string> half = w.letters;
    w.letters.insert(w.letters.end(), half.begin(), half.end());
    return w;
}

VertexLabelling random_labelling(const WagonWheel& w, std::mt19937& rng) {
    std::uniform_int_distribution<int> coin(0, 1);
    VertexLabelling b;
    for (int i = 0; i < w.wheels(); i++) {
        int ones = 0;
        for (int j = 0; j < w.wheel_size(i); j++)
            for (int k = 1; k <= 3; k++)
                if (coin(rng)) {
                    b[w.vertex_id(i, j, k)] = 1;
                    ones++;
                }
        if ((ones & 1) != w.wheel_parity(i)) {
            auto v = w.vertex_id(i, 0, 1);
            if (b.count(v))
                b.erase(v);
            else
                b[v] = 1;
        }
    }
    return b;
}

} // namespace

TEST_CASE("wheel structure of a two-relation presentation") {
    WagonWheel w = build_wagon_wheel(two_wheels());
    const Hypergraph& h = w.hypergraph;
    h.validate();
    CHECK(h.vertices.size() == 24); // 3 per letter
    CHECK(h.edges.size() == 37);    // 4 per letter plus one per generator
    CHECK(h.is_simple());
    CHECK(w.wheels() == 2);
    CHECK(w.wheel_size(0) == 4);
    CHECK(w.wheel_parity(1) == 0);
    CHECK(w.letter(0, 2) == "x");
    CHECK(w.letter(0, -1) == "z"); // positions wrap

    // generator edges meet layer 1 exactly where their letter occurs
    CHECK(h.vertices_of("x") ==
          std::vector<std::string>{"v.0.0.1", "v.0.2.1", "v.1.0.1"});
    CHECK(h.vertices_of("y") == std::vector<std::string>{"v.0.1.1"});
    CHECK(h.vertices_of("u") == std::vector<std::string>{"v.1.1.1", "v.1.3.1"});

    // a spans positions j-1 and j; d does the same one layer down
    CHECK(h.vertices_of("a.0.1") == std::vector<std::string>{"v.0.0.2", "v.0.1.1"});
    CHECK(h.vertices_of("d.0.0") == std::vector<std::string>{"v.0.0.3", "v.0.3.3"});
    CHECK(h.vertices_of("b.1.2") == std::vector<std::string>{"v.1.2.1", "v.1.2.2"});
    CHECK(h.vertices_of("c.1.3") == std::vector<std::string>{"v.1.3.2", "v.1.3.3"});

    // every vertex has degree 3 when all relations have length >= 2
    for (auto& v : h.vertices) CHECK(h.vertex_degree(v) == 3);

    // W_i is closed and carries 3n vertices and 4n edges
    auto w0 = w.wheel(0);
    CHECK(w0.vertices.size() == 12);
    CHECK(w0.edges.size() == 16);
    CHECK(is_closed(h, w0));

    CHECK_THROWS_AS(w.wheel_size(2), std::invalid_argument);
    CHECK_THROWS_AS(w.vertex_id(0, 0, 4), std::invalid_argument);
    CHECK_THROWS_AS(w.edge_id('e', 0, 0), std::invalid_argument);
}

TEST_CASE("vertex and edge counts on random presentations") {
    std::mt19937 rng(41);
    std::uniform_int_distribution<int> nrel(1, 4), len(1, 8);
    const std::vector<std::string> pool = {"p", "q", "r", "w"};
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::uniform_int_distribution<int> par(0, 1);
    for (int iter = 0; iter < 80; iter++) {
        InvPresentation pres;
        pres.generators = pool;
        int total = 0;
        int rels = nrel(rng);
        for (int r = 0; r < rels; r++) {
            InvWord word;
            word.parity = par(rng);
            int n = len(rng);
            total += n;
            for (int p = 0; p < n; p++) word.letters.push_back(pool[pick(rng)]);
            pres.relations.push_back(std::move(word));
        }
        WagonWheel w = build_wagon_wheel(pres);
        w.hypergraph.validate();
        CHECK(w.hypergraph.vertices.size() == 3u * total);
        CHECK(w.hypergraph.edges.size() == 4u * total + pool.size());
    }
}

TEST_CASE("bad presentations are rejected") {
    CHECK_THROWS_AS(build_wagon_wheel({{"s"}, {InvWord{0, {"s", "t"}}}}), std::invalid_argument);
    CHECK_THROWS_AS(build_wagon_wheel({{"s"}, {InvWord{0, {}}}}), std::invalid_argument);
    // a generator named exactly like a minted wheel id is a collision...
    CHECK_THROWS_AS(build_wagon_wheel({{"s", "a.0.0"}, {InvWord{0, {"s"}}}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(build_wagon_wheel({{"s", "v.0.0.2"}, {InvWord{0, {"s"}}}}),
                    std::invalid_argument);
    // ...but other dotted names (the embedding passes mint s.z1/s.z2/w.i) are fine
    WagonWheel dotted = build_wagon_wheel(
        {{"s.z1", "s.z2", "w.1"}, {InvWord{0, {"s.z1", "s.z2", "s.z1", "s.z2"}}}});
    CHECK(dotted.hypergraph.has_edge("s.z1"));
    CHECK(dotted.hypergraph.has_edge("w.1"));
}

TEST_CASE("labellings: parity per wheel") {
    WagonWheel w = build_wagon_wheel(two_wheels());
    CHECK(is_labelling(w, {}));
    CHECK(choose_labelling(w, LabellingMode::any).empty());
    CHECK(choose_labelling(w, LabellingMode::constellation).empty());

    // a pair of 1s on layers 2 and 3 keeps both parities even
    VertexLabelling pair{{"v.0.1.2", 1}, {"v.0.1.3", 1}};
    CHECK(is_labelling(w, pair));

    CHECK_FALSE(is_labelling(w, {{"v.0.0.1", 1}}));     // wheel 0 flips to odd
    CHECK_FALSE(is_labelling(w, {{"nowhere", 1}}));     // unknown vertex
    CHECK_FALSE(is_labelling(w, {{"v.0.0.1", 2}}));     // not a 0/1 value

    WagonWheel odd = build_wagon_wheel(one_odd_wheel());
    auto any = choose_labelling(odd, LabellingMode::any);
    CHECK(any == VertexLabelling{{"v.0.0.1", 1}});
    // t is the first letter with odd multiplicity somewhere
    auto con = choose_labelling(odd, LabellingMode::constellation);
    CHECK(con == VertexLabelling{{"v.0.1.1", 1}});
    CHECK(is_labelling(odd, con));
}

TEST_CASE("choose_labelling is a labelling on random presentations") {
    std::mt19937 rng(42);
    std::uniform_int_distribution<int> nrel(1, 3), len(2, 6), par(0, 1);
    const std::vector<std::string> pool = {"p", "q", "r"};
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (int iter = 0; iter < 60; iter++) {
        InvPresentation pres;
        pres.generators = pool;
        int rels = nrel(rng);
        for (int r = 0; r < rels; r++) {
            InvWord word;
            word.parity = par(rng);
            int n = len(rng);
            for (int p = 0; p < n; p++) word.letters.push_back(pool[pick(rng)]);
            pres.relations.push_back(std::move(word));
        }
        WagonWheel w = build_wagon_wheel(pres);
        for (auto mode : {LabellingMode::any, LabellingMode::constellation}) {
            auto b = choose_labelling(w, mode);
            CHECK(is_labelling(w, b));
            // at most one 1 per wheel, always on layer 1
            CHECK(b.size() <= pres.relations.size());
            for (auto& [v, val] : b) {
                CHECK(val == 1);
                CHECK(v.substr(v.size() - 2) == ".1");
            }
        }
    }
}

TEST_CASE("toggle flips exactly the odd-incidence endpoints") {
    WagonWheel w = build_wagon_wheel(two_wheels());
    const Hypergraph& h = w.hypergraph;
    VertexLabelling b;
    auto t1 = toggle(h, b, "a.0.1");
    CHECK(t1 == VertexLabelling{{"v.0.0.2", 1}, {"v.0.1.1", 1}});
    CHECK(toggle(h, t1, "a.0.1") == b); // involution

    // toggling a generator edge with occurrences in both wheels breaks the
    // parity of the wheel where it occurs an odd number of times
    CHECK(is_labelling(w, b));
    auto tx = toggle(h, b, "x");
    CHECK(tx == VertexLabelling{{"v.0.0.1", 1}, {"v.0.2.1", 1}, {"v.1.0.1", 1}});
    CHECK_FALSE(is_labelling(w, tx));

    CHECK_THROWS_AS(toggle(h, b, "zz"), std::invalid_argument);

    // even incidence leaves the vertex alone
    Hypergraph dbl;
    dbl.vertices = {"v"};
    dbl.edges = {"loop"};
    dbl.set_inc("v", "loop", 2);
    CHECK(toggle(dbl, {{"v", 1}}, "loop") == VertexLabelling{{"v", 1}});
}

TEST_CASE("labelling_path connects labellings within wheel edges") {
    std::mt19937 rng(43);
    for (auto pres : {two_wheels(), one_odd_wheel()}) {
        WagonWheel w = build_wagon_wheel(pres);
        for (int iter = 0; iter < 20; iter++) {
            auto b0 = random_labelling(w, rng);
            auto b1 = random_labelling(w, rng);
            REQUIRE(is_labelling(w, b0));
            REQUIRE(is_labelling(w, b1));
            auto path = labelling_path(w, b0, b1);
            REQUIRE(path.has_value());
            VertexLabelling at = b0;
            for (auto& e : *path) {
                CHECK(e.find('.') != std::string::npos); // never a generator edge
                at = toggle(w.hypergraph, at, e);
            }
            CHECK(at == b1);
        }
        auto b = choose_labelling(w, LabellingMode::any);
        auto self = labelling_path(w, b, b);
        REQUIRE(self.has_value());
        CHECK(self->empty());

        // flipping a single vertex breaks the parity, so there is no path
        VertexLabelling broken = b;
        broken["v.0.0.2"] = 1;
        CHECK_FALSE(is_labelling(w, broken));
        CHECK_FALSE(labelling_path(w, b, broken).has_value());
    }

    // the two builtin choices are connected too
    WagonWheel odd = build_wagon_wheel(one_odd_wheel());
    auto p = labelling_path(odd, choose_labelling(odd, LabellingMode::any),
                            choose_labelling(odd, LabellingMode::constellation));
    REQUIRE(p.has_value());
    CHECK_FALSE(p->empty());
}

TEST_CASE("standard cycles: rims, hubs, pentagons") {
    WagonWheel w = build_wagon_wheel(two_wheels());
    auto sc = standard_cycles(w);
    REQUIRE(sc.A.size() == 2);
    REQUIRE(sc.B.size() == 2);
    REQUIRE(sc.C.size() == 2);
    CHECK(sc.phi.size() == 10); // 4 + 4 pentagons, then 2 hubs

    for (int i = 0; i < 2; i++) {
        CHECK(sc.A[i].vertices.size() == 8);
        CHECK(sc.A[i].edges.size() == 8);
        CHECK(sc.B[i].vertices.size() == 4);
        CHECK(sc.B[i].edges.size() == 4);
        CHECK(is_cycle(w.hypergraph, sc.A[i]));
        CHECK(is_cycle(w.hypergraph, sc.B[i]));
        REQUIRE(sc.C[i].size() == 4);
        for (auto& C : sc.C[i]) {
            CHECK(C.vertices.size() == 5);
            CHECK(C.edges.size() == 5);
            CHECK(is_cycle(w.hypergraph, C));
        }
    }
    CHECK(sc.C[0][1].vertices ==
          std::set<std::string>{"v.0.0.2", "v.0.1.1", "v.0.1.2", "v.0.1.3", "v.0.0.3"});
    CHECK(sc.C[0][1].edges ==
          std::set<std::string>{"a.0.1", "b.0.1", "c.0.1", "d.0.1", "c.0.0"});

    // no edge lies on more than two members of phi, and the wheel edges all
    // lie on at least one
    for (auto& e : w.hypergraph.edges) {
        int on = 0;
        for (auto& C : sc.phi) on += C.contains_edge(e);
        CHECK(on <= 2);
        if (e.find('.') != std::string::npos) CHECK(on >= 1);
    }

    // a length-1 relation has no hub cycle
    CHECK_THROWS_AS(standard_cycles(build_wagon_wheel({{"s"}, {InvWord{0, {"s"}}}})),
                    std::invalid_argument);
}

TEST_CASE("wheel neighbourhoods of hubs and pentagons are suns") {
    WagonWheel w = build_wagon_wheel(two_wheels());
    auto sc = standard_cycles(w);
    for (int i = 0; i < 2; i++) {
        auto hub = is_sun(materialize(w.hypergraph, neighbourhood(w.hypergraph, sc.B[i])));
        REQUIRE(hub.has_value());
        CHECK(hub->vertices.size() == 4); // n_i
        for (int j = 0; j < 4; j++) {
            auto pent = is_sun(
                materialize(w.hypergraph, neighbourhood(w.hypergraph, sc.C[i][j])));
            REQUIRE(pent.has_value());
            CHECK(pent->vertices.size() == 5);
        }
    }
    // the pendants of N(C_{0,1}) are the letter edge plus the four neighbours
    auto pent = is_sun(materialize(w.hypergraph, neighbourhood(w.hypergraph, sc.C[0][1])));
    REQUIRE(pent.has_value());
    std::set<std::string> pend(pent->pendant_edges.begin(), pent->pendant_edges.end());
    CHECK(pend == std::set<std::string>{"y", "b.0.0", "a.0.2", "d.0.2", "d.0.0"});
}

TEST_CASE("is_sun rejects near-suns") {
    Hypergraph cube = hypergraph_from_json(load_fixture("cube.json"));
    CHECK_FALSE(is_sun(cube).has_value()); // no pendants at all

    auto bottom = materialize(cube, neighbourhood(cube, Subhypergraph{{"1", "2", "3", "4"}, {}}));
    auto sun = is_sun(bottom);
    REQUIRE(sun.has_value());
    CHECK(sun->vertices == std::vector<std::string>{"1", "2", "3", "4"});
    CHECK(sun->cycle_edges == std::vector<std::string>{"12", "23", "34", "14"});
    CHECK(sun->pendant_edges == std::vector<std::string>{"15", "26", "37", "48"});

    // chop one pendant: counts no longer match
    Hypergraph chopped = bottom;
    chopped.edges.erase(std::find(chopped.edges.begin(), chopped.edges.end(), "48"));
    chopped.incidence.erase({"4", "48"});
    CHECK_FALSE(is_sun(chopped).has_value());

    // two pendants on one vertex, none on another
    Hypergraph lop = bottom;
    lop.incidence.erase({"4", "48"});
    lop.set_inc("3", "48", 1);
    CHECK_FALSE(is_sun(lop).has_value());

    // an extra chord breaks the 2n edge count
    Hypergraph chord = bottom;
    chord.edges.push_back("13");
    chord.set_inc("1", "13", 1);
    chord.set_inc("3", "13", 1);
    CHECK_FALSE(is_sun(chord).has_value());
}

TEST_CASE("hub retraction folds the wheel onto its hub") {
    WagonWheel w = build_wagon_wheel(two_wheels());
    auto m = retract_to_B(w, 0);
    CHECK(validate_morphism(m).ok);
    CHECK(same_structure(m.target,
                         materialize(w.hypergraph,
                                     neighbourhood(w.hypergraph, standard_cycles(w).B[0]))));
    // inside the wheel: layer 1 vanishes, layers 2 and 3 drop onto the hub
    CHECK(m.v_image("v.0.1.1") == eps);
    CHECK(m.v_image("v.0.1.2") == "v.0.1.3");
    CHECK(m.v_image("v.0.1.3") == "v.0.1.3");
    CHECK(m.e_image("a.0.2") == "d.0.2");
    CHECK(m.e_image("b.0.3") == "d.0.3");
    CHECK(m.e_image("c.0.1") == "c.0.1");
    CHECK(m.e_image("d.0.1") == "d.0.1");
    // everything else vanishes
    CHECK(m.v_image("v.1.0.3") == eps);
    CHECK(m.e_image("x") == eps);
    CHECK(m.e_image("d.1.2") == eps);

    CHECK_THROWS_AS(retract_to_B(w, 5), std::invalid_argument);
    CHECK_THROWS_AS(retract_to_B(build_wagon_wheel({{"s"}, {InvWord{0, {"s"}}}}), 0),
                    std::invalid_argument);
}

TEST_CASE("hub retractions validate on random presentations") {
    std::mt19937 rng(44);
    std::uniform_int_distribution<int> nrel(1, 3), len(2, 7), par(0, 1);
    const std::vector<std::string> pool = {"p", "q", "r"};
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (int iter = 0; iter < 30; iter++) {
        InvPresentation pres;
        pres.generators = pool;
        int rels = nrel(rng);
        for (int r = 0; r < rels; r++) {
            InvWord word;
            word.parity = par(rng);
            int n = len(rng);
            for (int p = 0; p < n; p++) word.letters.push_back(pool[pick(rng)]);
            pres.relations.push_back(std::move(word));
        }
        WagonWheel w = build_wagon_wheel(pres);
        for (int i = 0; i < w.wheels(); i++) {
            auto m = retract_to_B(w, i); // construction-validated
            CHECK(validate_morphism(m).ok);
        }
    }
}

TEST_CASE("pentagon retraction: the even-multiplicity fold") {
    WagonWheel w = build_wagon_wheel(two_wheels());
    // x occurs once in the second relation, so its pentagons are off limits
    try {
        retract_to_C(w, 0, 0);
        FAIL("expected an odd-multiplicity complaint");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("mult(x") != std::string::npos);
    }

    // u is even in its own relation and absent from the other
    auto m = retract_to_C(w, 1, 1);
    CHECK(validate_morphism(m).ok);
    auto sc = standard_cycles(w);
    CHECK(same_structure(
        m.target, materialize(w.hypergraph, neighbourhood(w.hypergraph, sc.C[1][1]))));

    // wheel 0 is erased wholesale
    CHECK(m.v_image("v.0.0.1") == eps);
    CHECK(m.e_image("a.0.2") == eps);
    CHECK(m.e_image("x") == eps);
    CHECK(m.e_image("u") == "u");

    // within wheel 1: the far occurrence of u lands on the pentagon's
    CHECK(m.v_image("v.1.3.1") == "v.1.1.1");
    CHECK(m.v_image("v.1.0.1") == eps);
    CHECK(m.v_image("v.1.2.1") == eps);
    CHECK(m.v_image("v.1.3.2") == "v.1.0.2"); // far side of the fold
    CHECK(m.v_image("v.1.2.2") == "v.1.1.2");
    CHECK(m.v_image("v.1.0.2") == "v.1.0.2");
    CHECK(m.v_image("v.1.0.3") == "v.1.0.3");

    CHECK(m.e_image("a.1.1") == "a.1.1");
    CHECK(m.e_image("a.1.3") == "b.1.1");
    CHECK(m.e_image("b.1.3") == "a.1.1");
    CHECK(m.e_image("a.1.2") == "a.1.2"); // pendant beyond the fold
    CHECK(m.e_image("a.1.0") == "b.1.0"); // flat stretch behind it
    CHECK(m.e_image("d.1.0") == "d.1.0");
    CHECK(m.e_image("d.1.2") == "d.1.2");
    CHECK(m.e_image("d.1.3") == "d.1.1");
    CHECK(m.e_image("c.1.0") == "c.1.0");
    CHECK(m.e_image("c.1.1") == "c.1.1");
    CHECK(m.e_image("c.1.3") == "c.1.0");
    CHECK(m.e_image("c.1.2") == "c.1.1");
}

TEST_CASE("pentagon retraction folds other wheels through the shared letter") {
    InvPresentation pres{{"s", "t"},
                         {InvWord{0, {"s", "t", "s", "t"}}, InvWord{0, {"t", "s", "t", "s"}}}};
    WagonWheel w = build_wagon_wheel(pres);
    auto m = retract_to_C(w, 0, 0); // s-pentagon; wheel 1 folds in via s
    CHECK(validate_morphism(m).ok);
    // wheel 1's anchor is its first s, position 1
    CHECK(m.v_image("v.1.1.1") == "v.0.0.1");
    CHECK(m.v_image("v.1.3.1") == "v.0.0.1");
    CHECK(m.v_image("v.1.0.1") == eps);
    CHECK(m.e_image("a.1.1") == "a.0.0");
    CHECK(m.e_image("a.1.3") == "b.0.0");
    CHECK(m.e_image("a.1.2") == "a.0.1");
    CHECK(m.e_image("a.1.0") == "b.0.3");
    CHECK(m.e_image("t") == eps);
    CHECK(m.e_image("s") == "s");
}

TEST_CASE("pentagon retraction with two folds") {
    InvPresentation pres{{"s", "t", "u"}, {InvWord{0, {"s", "t", "s", "u", "s", "t", "s", "u"}}}};
    WagonWheel w = build_wagon_wheel(pres);
    auto m = retract_to_C(w, 0, 0);
    CHECK(validate_morphism(m).ok);
    // occurrences of s alternate sides as the wheel concertinas
    CHECK(m.v_image("v.0.2.1") == "v.0.0.1");
    CHECK(m.v_image("v.0.4.1") == "v.0.0.1");
    CHECK(m.v_image("v.0.6.1") == "v.0.0.1");
    CHECK(m.e_image("a.0.2") == "b.0.0");
    CHECK(m.e_image("a.0.4") == "a.0.0");
    CHECK(m.e_image("a.0.6") == "b.0.0");
    CHECK(m.e_image("d.0.1") == "d.0.1");
    CHECK(m.e_image("d.0.3") == "d.0.7");
    CHECK(m.e_image("d.0.5") == "d.0.1");
}

TEST_CASE("pentagon retractions validate on random doubled relations") {
    std::mt19937 rng(45);
    std::uniform_int_distribution<int> half(2, 4), wheels(1, 2);
    for (int iter = 0; iter < 25; iter++) {
        InvPresentation pres;
        pres.generators = {"p", "q", "r"};
        int rels = wheels(rng);
        for (int r = 0; r < rels; r++) pres.relations.push_back(random_doubled_word(rng, half(rng)));
        WagonWheel w = build_wagon_wheel(pres);
        for (int i = 0; i < w.wheels(); i++)
            for (int j = 0; j < w.wheel_size(i); j++) {
                auto m = retract_to_C(w, i, j); // construction-validated
                CHECK(validate_morphism(m).ok);
                CHECK(m.e_image(w.letter(i, j)) == w.letter(i, j));
            }
    }
}

TEST_CASE("pentagon retraction refuses non-reduced relations") {
    // t t cancels cyclically; s is even everywhere, but the fold's gap
    // structure needs cyclic reducedness
    InvPresentation pres{{"s", "t"}, {InvWord{0, {"s", "t", "t", "s"}}}};
    WagonWheel w = build_wagon_wheel(pres);
    try {
        retract_to_C(w, 0, 0);
        FAIL("expected a cyclic-reducedness complaint");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("reduced") != std::string::npos);
    }
}

TEST_CASE("stellar cycles on the tailed cube") {
    Hypergraph h = hypergraph_from_json(load_fixture("cube_tail.json"));
    CHECK(h.label("9") == 1);
    auto C1 = cyc({"1", "2", "5", "6"}, {"12", "26", "56", "15"});
    auto C4 = cyc({"1", "2", "3", "4", "9"}, {"12", "29", "39", "34", "14"});
    auto D = cyc({"2", "3", "6", "7", "9"}, {"26", "67", "37", "39", "29"});

    CHECK(is_stellar(h, h.b, C1));
    CHECK_FALSE(is_stellar(h, h.b, C4, std::nullopt, 1)); // b is 1 on 9: no search needed
    CHECK_FALSE(is_stellar(h, h.b, D, std::nullopt, 1));

    CHECK_THROWS_AS(is_stellar(h, h.b, cyc({"1", "2"}, {"12"}), std::nullopt),
                    std::invalid_argument);
    CHECK_THROWS_AS(is_stellar(h, h.b, C1, std::nullopt, 3), std::runtime_error);

    // witnesses: the found retraction passes; corrupted ones are named junk
    auto res = find_retraction(h, neighbourhood(h, C1));
    REQUIRE(res.status == RetractionResult::Status::found);
    CHECK(is_stellar(h, h.b, C1, res.morphism, 1));
    auto bad = res.morphism;
    bad.emap["78"] = eps;
    bad.emap["37"] = eps; // degree at 7 stays even but breaks a sum
    CHECK_THROWS_AS(is_stellar(h, h.b, C1, bad), std::invalid_argument);
    auto shifted = res.morphism;
    shifted.target = materialize(h, neighbourhood(h, C4));
    CHECK_THROWS_AS(is_stellar(h, h.b, C1, shifted), std::invalid_argument);

    // a 1 anywhere on the cycle defeats it even with a perfect witness
    CHECK_FALSE(is_stellar(h, VertexLabelling{{"1", 1}, {"2", 1}}, C1, res.morphism, 1));
}

TEST_CASE("constellations on the tailed cube") {
    Hypergraph h = hypergraph_from_json(load_fixture("cube_tail.json"));
    auto C1 = cyc({"1", "2", "5", "6"}, {"12", "26", "56", "15"});
    auto C2 = cyc({"1", "4", "5", "8"}, {"14", "48", "58", "15"});
    auto C3 = cyc({"3", "4", "7", "8"}, {"34", "48", "78", "37"});
    auto C4 = cyc({"1", "2", "3", "4", "9"}, {"12", "29", "39", "34", "14"});
    auto top = cyc({"5", "6", "7", "8"}, {"56", "67", "78", "58"});
    auto D = cyc({"2", "3", "6", "7", "9"}, {"26", "67", "37", "39", "29"});

    // C4 is not b-stellar, but only its tail 29, 39 runs off the others
    auto rep = is_constellation(h, h.b, {C1, C2, C3, C4});
    CHECK(rep.ok);
    CHECK(rep.condition.empty());

    // the top face is addable
    CHECK(is_constellation(h, h.b, {C1, C2, C3, C4, top}).ok);

    // D shares two edges with C4
    auto bad = is_constellation(h, h.b, {C1, C2, C3, C4, D});
    CHECK_FALSE(bad.ok);
    CHECK(bad.condition == "c");
    CHECK(bad.cycle0 == 3);
    CHECK(bad.cycle1 == 4);

    // C4 alone has nothing to lean on
    auto lone = is_constellation(h, h.b, {C4});
    CHECK_FALSE(lone.ok);
    CHECK(lone.condition == "a");
    CHECK(lone.cycle0 == 0);

    // an exhausted budget is reported as indeterminate, not as a verdict
    auto tight = is_constellation(h, h.b, {C1, C2, C3, C4}, {}, 1);
    CHECK_FALSE(tight.ok);
    CHECK(tight.condition == "indeterminate");

    // witnesses for the stellar members let a tiny budget through
    auto r1 = find_retraction(h, neighbourhood(h, C1));
    auto r2 = find_retraction(h, neighbourhood(h, C2));
    auto r3 = find_retraction(h, neighbourhood(h, C3));
    REQUIRE(r1.status == RetractionResult::Status::found);
    REQUIRE(r2.status == RetractionResult::Status::found);
    REQUIRE(r3.status == RetractionResult::Status::found);
    std::vector<std::optional<GeneralizedMorphism>> wit(4);
    wit[0] = r1.morphism;
    wit[1] = r2.morphism;
    wit[2] = r3.morphism;
    auto cheap = is_constellation(h, h.b, {C1, C2, C3, C4}, wit, 1);
    CHECK(cheap.ok);

    CHECK_THROWS_AS(is_constellation(h, h.b, {C1, C2}, wit, 1), std::invalid_argument);

    // a non-cycle member fails condition (a) by name
    auto notcyc = is_constellation(h, h.b, {C1, cyc({"1", "2"}, {"12"})});
    CHECK_FALSE(notcyc.ok);
    CHECK(notcyc.condition == "a");
    CHECK(notcyc.cycle0 == 1);
}

TEST_CASE("standard cycles of a wheel form a constellation") {
    WagonWheel w = build_wagon_wheel(one_odd_wheel());
    auto sc = standard_cycles(w);
    auto b = choose_labelling(w, LabellingMode::constellation);

    // phi = C_{0,0..3}, B_0; s-pentagons and the hub carry witnesses, the
    // t-pentagon holds the 1, and the u-pentagon leans on its neighbours
    std::vector<std::optional<GeneralizedMorphism>> wit(5);
    wit[0] = retract_to_C(w, 0, 0);
    wit[2] = retract_to_C(w, 0, 2);
    wit[4] = retract_to_B(w, 0);
    auto rep = is_constellation(w.hypergraph, b, sc.phi, wit, 1);
    CHECK(rep.ok);

    // and without witnesses the search settles the same statuses
    CHECK(is_constellation(w.hypergraph, b, sc.phi).ok);

    // the trivial labelling is not a constellation labelling here: the wheel
    // parity is 1, so it is not even a labelling
    CHECK_FALSE(is_labelling(w, {}));
}

TEST_CASE("ones on layers 2 and 3 defeat stellarity cheaply") {
    WagonWheel w = build_wagon_wheel(two_wheels());
    auto sc = standard_cycles(w);
    VertexLabelling pair{{"v.0.1.2", 1}, {"v.0.1.3", 1}};
    REQUIRE(is_labelling(w, pair));
    // budget 1: the b-test must decide without any search
    CHECK_FALSE(is_stellar(w.hypergraph, pair, sc.C[0][1], std::nullopt, 1));
    CHECK_FALSE(is_stellar(w.hypergraph, pair, sc.C[0][2], std::nullopt, 1));
}

TEST_CASE("wagon wheel JSON round trip is byte-stable") {
    WagonWheel w = build_wagon_wheel(two_wheels());
    std::string once = pretty(to_json(w));
    WagonWheel again = wagon_wheel_from_json(json::parse(once));
    CHECK(again.hypergraph == w.hypergraph);
    CHECK(again.source.generators == w.source.generators);
    CHECK(again.source.relations == w.source.relations);
    CHECK(pretty(to_json(again)) == once);

    json j = to_json(w);
    j.erase("index");
    CHECK_THROWS_AS(wagon_wheel_from_json(j), std::runtime_error);

    json tampered = to_json(w);
    tampered["index"]["wheels"][0]["letters"][1] = "z"; // hypergraph no longer matches
    CHECK_THROWS_AS(wagon_wheel_from_json(tampered), std::runtime_error);

    json renamed = to_json(w);
    renamed["index"]["wheels"][0]["a"][0] = "a.9.9"; // breaks the id scheme
    CHECK_THROWS_AS(wagon_wheel_from_json(renamed), std::runtime_error);
}

TEST_CASE("dot rendering names wheels and generator boxes") {
    WagonWheel w = build_wagon_wheel(two_wheels());
    std::string dot = to_dot(w);
    CHECK(dot.find("graph wagonwheel {") == 0);
    CHECK(dot.find("subgraph cluster_wheel0") != std::string::npos);
    CHECK(dot.find("subgraph cluster_wheel1") != std::string::npos);
    CHECK(dot.find("\"x\" [shape=box];") != std::string::npos);
    CHECK(dot.find("\"v.0.0.2\" -- \"v.0.1.1\" [label=\"a.0.1\"];") != std::string::npos);
    CHECK(dot.find("\"x\" -- \"v.1.0.1\";") != std::string::npos);
    CHECK(dot == to_dot(w)); // deterministic
}
