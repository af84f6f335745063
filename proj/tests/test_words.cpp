#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "ww/parse.h"
#include "ww/words.h"

using namespace ww;

namespace {

InvWord iw(int parity, std::vector<std::string> ls) { return InvWord{parity, std::move(ls)}; }

InvWord random_word(std::mt19937& rng, const std::vector<std::string>& gens, int maxlen) {
    std::uniform_int_distribution<int> len(0, maxlen), pick(0, (int)gens.size() - 1), par(0, 1);
    InvWord w{par(rng), {}};
    int n = len(rng);
    for (int i = 0; i < n; i++) w.letters.push_back(gens[pick(rng)]);
    return w;
}

const std::vector<std::string> GENS = {"x", "y", "z", "u", "v"};

} // namespace

TEST_CASE("reduce cancels adjacent involution pairs") {
    CHECK(reduce(iw(0, {"a", "a"})) == iw(0, {}));
    CHECK(reduce(iw(1, {"x", "x", "y"})) == iw(1, {"y"}));
    CHECK(reduce(iw(0, {"x", "y", "x"})) == iw(0, {"x", "y", "x"}));
    // nested cancellation
    CHECK(reduce(iw(0, {"a", "b", "b", "a", "c"})) == iw(0, {"c"}));
}

TEST_CASE("reduce is idempotent and length-non-increasing") {
    std::mt19937 rng(7);
    for (int i = 0; i < 500; i++) {
        InvWord w = random_word(rng, GENS, 12);
        InvWord r = reduce(w);
        CHECK(is_reduced(r));
        CHECK(r.letters.size() <= w.letters.size());
        CHECK(reduce(r) == r);
        CHECK(r.parity == w.parity);
    }
}

TEST_CASE("cyclically_reduce peels conjugating letters") {
    CHECK(cyclically_reduce(iw(0, {"x", "y", "x"})) == iw(0, {"y"}));
    CHECK(cyclically_reduce(iw(0, {"x", "y", "x", "z"})) == iw(0, {"x", "y", "x", "z"}));
    CHECK(cyclically_reduce(iw(0, {"a", "b", "a", "b"})) == iw(0, {"a", "b", "a", "b"}));
    std::mt19937 rng(8);
    for (int i = 0; i < 500; i++) {
        InvWord w = random_word(rng, GENS, 12);
        CHECK(is_cyclically_reduced(cyclically_reduce(w)));
    }
}

TEST_CASE("free word reduction") {
    FreeWord w = {{"a", 1}, {"a", -1}, {"b", 1}};
    CHECK(reduce(w) == FreeWord{{"b", 1}});
    FreeWord v = {{"a", 1}, {"b", 1}, {"a", -1}};
    CHECK(reduce(v) == v);
    CHECK(cyclically_reduce(v) == FreeWord{{"b", 1}});
    // s t s with equal signs is cyclically reduced in the free sense
    FreeWord sts = {{"s", 1}, {"t", 1}, {"s", 1}};
    CHECK(is_cyclically_reduced(sts));
    CHECK(reduce(inverse(v)) == inverse(v));
}

TEST_CASE("symmetrize yields rotations and reversed rotations") {
    auto sym = symmetrize({iw(0, {"x", "y", "z"})});
    CHECK(sym.size() == 6); // all orderings of a 3-cycle
    for (auto& r : sym) CHECK(r.parity == 0);

    auto sym2 = symmetrize({iw(1, {"a", "b"})});
    CHECK(sym2 == std::vector<InvWord>{iw(1, {"a", "b"}), iw(1, {"b", "a"})});

    // idempotence and preservation of cyclic reducedness
    std::mt19937 rng(9);
    for (int i = 0; i < 200; i++) {
        InvWord w = cyclically_reduce(random_word(rng, GENS, 8));
        auto s1 = symmetrize({w});
        CHECK(symmetrize(s1) == s1);
        for (auto& r : s1) CHECK(is_cyclically_reduced(r));
    }
}

TEST_CASE("multiplicity counts occurrences") {
    InvWord xyxz = iw(0, {"x", "y", "x", "z"});
    InvWord xuvu = iw(0, {"x", "u", "v", "u"});
    CHECK(multiplicity("x", xyxz) == 2);
    CHECK(multiplicity("x", xuvu) == 1);
    CHECK(multiplicity("q", xyxz) == 0);

    // invariant under rotation/reflection
    std::mt19937 rng(10);
    for (int i = 0; i < 200; i++) {
        InvWord w = reduce(random_word(rng, GENS, 10));
        for (auto& r : symmetrize({w}))
            for (auto& g : GENS) CHECK(multiplicity(g, r) == multiplicity(g, w));
    }
}

TEST_CASE("adjacency pairs including wraparound") {
    auto p1 = adjacency_pairs(iw(0, {"x", "u", "v", "u"}));
    CHECK(p1 == std::set<std::pair<std::string, std::string>>{{"u", "v"}, {"u", "x"}});
    auto p2 = adjacency_pairs(iw(0, {"x", "y", "x", "z"}));
    CHECK(p2 == std::set<std::pair<std::string, std::string>>{{"x", "y"}, {"x", "z"}});
    CHECK(adjacency_pairs(iw(0, {"x"})).empty());
}

TEST_CASE("is_collegial rejects odd-adjacent-odd with a valid witness") {
    InvPresentation fig{{"x", "y", "z", "u", "v"},
                        {iw(0, {"x", "y", "x", "z"}), iw(0, {"x", "u", "v", "u"})}};
    auto rep = is_collegial(fig);
    REQUIRE_FALSE(rep.ok);
    CHECK(rep.condition == "c");
    // The witness must actually witness the violation.
    CHECK(multiplicity(rep.s, rep.r0) % 2 == 1);
    bool adjacent = false;
    for (auto& [a, b] : adjacency_pairs(rep.r1))
        if ((a == rep.s && b == rep.t) || (a == rep.t && b == rep.s)) adjacent = true;
    CHECK(adjacent);
    CHECK(multiplicity(rep.t, rep.r_bad) % 2 == 1);
}

TEST_CASE("is_collegial accepts even presentations") {
    InvPresentation p{{"x", "y"}, {iw(0, {"x", "y", "x", "y"})}};
    CHECK(is_collegial(p).ok);
    InvPresentation q{{"x", "y"}, {iw(1, {"x", "y", "x", "y"})}};
    CHECK(is_collegial(q).ok);
}

TEST_CASE("is_collegial rejects short relations") {
    // length 0 and 1, both parities: condition (b)
    for (auto r : {iw(0, {}), iw(1, {}), iw(0, {"x"}), iw(1, {"x"})}) {
        InvPresentation p{{"x"}, {r}};
        auto rep = is_collegial(p);
        CHECK_FALSE(rep.ok);
        CHECK(rep.condition == "b");
    }
    // length 2 and 3 die on condition (c); non-cyclically-reduced ones on (a)
    InvPresentation p2{{"x", "y"}, {iw(0, {"x", "y"})}};
    CHECK(is_collegial(p2).condition == "c");
    InvPresentation p3{{"x", "y", "z"}, {iw(0, {"x", "y", "z"})}};
    CHECK(is_collegial(p3).condition == "c");
    InvPresentation p4{{"x", "y"}, {iw(0, {"x", "y", "x"})}};
    CHECK(is_collegial(p4).condition == "a");
}

TEST_CASE("is_collegial is invariant under generator renaming") {
    InvPresentation fig{{"x", "y", "z", "u", "v"},
                        {iw(0, {"x", "y", "x", "z"}), iw(0, {"x", "u", "v", "u"})}};
    InvPresentation renamed{{"g1", "g2", "g3", "g4", "g5"},
                            {iw(0, {"g1", "g2", "g1", "g3"}), iw(0, {"g1", "g4", "g5", "g4"})}};
    CHECK(is_collegial(fig).ok == is_collegial(renamed).ok);
    InvPresentation even{{"x", "y"}, {iw(0, {"x", "y", "x", "y"})}};
    InvPresentation even2{{"q", "w"}, {iw(0, {"q", "w", "q", "w"})}};
    CHECK(is_collegial(even).ok == is_collegial(even2).ok);
}

TEST_CASE("even_part zeroes parities and is idempotent") {
    InvPresentation p{{"a", "b"}, {iw(1, {"a", "b", "a", "b"})}};
    auto e = even_part(p);
    CHECK(e.relations[0] == iw(0, {"a", "b", "a", "b"}));
    CHECK(even_part(e).relations == e.relations);
    CHECK(e.generators == p.generators);
}

TEST_CASE("parse involutive presentation") {
    std::string text = "# small example\ninvpresentation\ngens: x y z u v\nrel: x y x z\nrel: x u v u\n";
    auto any = parse_presentation(text);
    auto* p = std::get_if<InvPresentation>(&any);
    REQUIRE(p);
    CHECK(p->generators.size() == 5);
    REQUIRE(p->relations.size() == 2);
    CHECK(p->relations[0] == iw(0, {"x", "y", "x", "z"}));
    CHECK(p->relations[1] == iw(0, {"x", "u", "v", "u"}));
}

TEST_CASE("parse free presentation with J word and J relation tokens") {
    std::string text = "presentation\ngens: J a\nJ: J\nrel: J J\nrel: a b^-\n";
    // b undeclared: expect an error pointing at line 5
    CHECK_THROWS_AS(parse_presentation(text), parse_error);
    try {
        parse_presentation(text);
    } catch (const parse_error& e) {
        CHECK(e.line == 5);
        CHECK(e.msg.find("undeclared") != std::string::npos);
    }

    std::string ok = "presentation\ngens: J a\nJ: J\nrel: J J\n";
    auto any = parse_presentation(ok);
    auto* p = std::get_if<Presentation>(&any);
    REQUIRE(p);
    CHECK(p->j_word == FreeWord{{"J", 1}});
    REQUIRE(p->relations.size() == 1);
    CHECK(p->relations[0] == FreeWord{{"J", 1}, {"J", 1}});
}

TEST_CASE("parse rejects bad input with positions") {
    try {
        parse_presentation("invpresentation\ngens: a a\n");
        FAIL("expected error");
    } catch (const parse_error& e) {
        CHECK(e.line == 2);
        CHECK(e.msg.find("duplicate generator") != std::string::npos);
    }
    try {
        parse_presentation("invpresentation\ngens: a J\n");
        FAIL("expected error");
    } catch (const parse_error& e) {
        CHECK(e.msg.find("reserved token J") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_presentation("nonsense\n"), parse_error);
    CHECK_THROWS_AS(parse_presentation(""), parse_error);
    CHECK_THROWS_AS(parse_presentation("presentation\ngens: a\nrel: a\n"), parse_error); // missing J:
}

TEST_CASE("empty relation list parses (free involutive group)") {
    auto any = parse_presentation("invpresentation\ngens: a b\n");
    auto* p = std::get_if<InvPresentation>(&any);
    REQUIRE(p);
    CHECK(p->relations.empty());
}

TEST_CASE("parse then serialize is the identity on serialized forms") {
    InvPresentation p{{"x", "y", "z", "u", "v"},
                      {iw(0, {"x", "y", "x", "z"}), iw(1, {"x", "u", "v", "u"})}};
    std::string s = serialize(p);
    auto back = parse_presentation(s);
    auto* q = std::get_if<InvPresentation>(&back);
    REQUIRE(q);
    CHECK(q->generators == p.generators);
    CHECK(q->relations == p.relations);
    CHECK(serialize(*q) == s);

    Presentation f{{"a", "b", "J"},
                   {{{"a", 1}, {"b", -1}, {"a", -1}, {"b", 1}}, {{"J", 1}, {"J", 1}}},
                   {{"J", 1}}};
    std::string fs = serialize(f);
    auto fback = parse_presentation(fs);
    auto* g = std::get_if<Presentation>(&fback);
    REQUIRE(g);
    CHECK(g->generators == f.generators);
    CHECK(g->relations == f.relations);
    CHECK(g->j_word == f.j_word);
    CHECK(serialize(*g) == fs);
}
