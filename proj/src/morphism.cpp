#include <algorithm>
#include <stdexcept>

#include "ww/hypergraph.h"

namespace ww {

const std::string& GeneralizedMorphism::v_image(const std::string& v) const {
    auto it = vmap.find(v);
    if (it == vmap.end()) throw std::invalid_argument("morphism undefined on vertex " + v);
    return it->second;
}

const std::string& GeneralizedMorphism::e_image(const std::string& e) const {
    auto it = emap.find(e);
    if (it == emap.end()) throw std::invalid_argument("morphism undefined on edge " + e);
    return it->second;
}

MorphismReport validate_morphism(const GeneralizedMorphism& m) {
    auto fail = [](std::string detail, std::string v = "", std::string e = "") {
        return MorphismReport{false, std::move(detail), std::move(v), std::move(e)};
    };

    for (auto& v : m.source.vertices) {
        auto it = m.vmap.find(v);
        if (it == m.vmap.end()) return fail("vmap is not total: vertex " + v + " unmapped", v);
        if (it->second != eps && !m.target.has_vertex(it->second))
            return fail("vertex " + v + " maps to undeclared vertex " + it->second, v);
    }
    for (auto& e : m.source.edges) {
        auto it = m.emap.find(e);
        if (it == m.emap.end()) return fail("emap is not total: edge " + e + " unmapped", "", e);
        if (it->second != eps && !m.target.has_edge(it->second))
            return fail("edge " + e + " maps to undeclared edge " + it->second, "", e);
    }

    for (auto& v : m.source.vertices) {
        const std::string& w = m.vmap.at(v);
        if (w != eps) {
            // condition (1): fibrewise incidence sums match the target row of w
            std::map<std::string, int> sums;
            for (auto& e : m.source.edges_at(v)) {
                const std::string& f = m.emap.at(e);
                if (f != eps) sums[f] += m.source.inc(v, e);
            }
            for (auto& f : m.target.edges) {
                int got = sums.count(f) ? sums[f] : 0;
                int want = m.target.inc(w, f);
                if (got != want)
                    return fail("vertex " + v + " -> " + w + ": incidence sum over preimages of " +
                                    f + " is " + std::to_string(got) + ", target has " +
                                    std::to_string(want),
                                v, f);
            }
        } else {
            // condition (2): even surviving degree, one surviving image edge
            int surviving = 0;
            std::string image;
            for (auto& e : m.source.edges_at(v)) {
                const std::string& f = m.emap.at(e);
                if (f == eps) continue;
                surviving += m.source.inc(v, e);
                if (image.empty())
                    image = f;
                else if (image != f)
                    return fail("erased vertex " + v + " has surviving edges with distinct images " +
                                    image + " and " + f,
                                v, f);
            }
            if (surviving % 2 != 0)
                return fail("erased vertex " + v + " has odd surviving degree " +
                                std::to_string(surviving),
                            v);
        }
    }
    return {};
}

GeneralizedMorphism identity_morphism(const Hypergraph& h) {
    GeneralizedMorphism m{h, h, {}, {}};
    for (auto& v : h.vertices) m.vmap[v] = v;
    for (auto& e : h.edges) m.emap[e] = e;
    return m;
}

GeneralizedMorphism compose(const GeneralizedMorphism& second, const GeneralizedMorphism& first) {
    if (!same_structure(first.target, second.source))
        throw std::invalid_argument("compose: target of first differs from source of second");
    GeneralizedMorphism m{first.source, second.target, {}, {}};
    for (auto& [v, w] : first.vmap) m.vmap[v] = (w == eps) ? eps : second.v_image(w);
    for (auto& [e, f] : first.emap) m.emap[e] = (f == eps) ? eps : second.e_image(f);
    return m;
}

GeneralizedMorphism restriction_morphism(const Hypergraph& h, const Subhypergraph& s) {
    if (!is_closed(h, s))
        throw std::invalid_argument("restriction requires a closed subhypergraph");
    GeneralizedMorphism m{h, materialize(h, s), {}, {}};
    for (auto& v : h.vertices) m.vmap[v] = s.contains_vertex(v) ? v : eps;
    for (auto& e : h.edges) m.emap[e] = s.contains_edge(e) ? e : eps;
    return m;
}

GeneralizedMorphism inclusion_morphism(const Hypergraph& h, const Subhypergraph& s) {
    if (!is_open(h, s))
        throw std::invalid_argument("inclusion requires an open subhypergraph");
    GeneralizedMorphism m{materialize(h, s), h, {}, {}};
    for (auto& v : s.vertices) m.vmap[v] = v;
    for (auto& e : s.edges) m.emap[e] = e;
    return m;
}

GeneralizedMorphism glue(const Hypergraph& h, const std::vector<GluePiece>& pieces) {
    if (pieces.empty()) throw std::invalid_argument("glue: no pieces");
    for (size_t i = 0; i < pieces.size(); i++) {
        if (!is_open(h, pieces[i].domain))
            throw std::invalid_argument("glue: piece " + std::to_string(i) + " is not open");
        if (!same_structure(pieces[i].morphism.source, materialize(h, pieces[i].domain)))
            throw std::invalid_argument("glue: piece " + std::to_string(i) +
                                        " morphism source is not the piece itself");
        if (!same_structure(pieces[i].morphism.target, pieces[0].morphism.target))
            throw std::invalid_argument("glue: pieces target different hypergraphs");
    }

    GeneralizedMorphism m{h, pieces[0].morphism.target, {}, {}};
    auto place = [](std::map<std::string, std::string>& into, const std::string& x,
                    const std::string& image, const char* kind) {
        auto [it, fresh] = into.emplace(x, image);
        if (!fresh && it->second != image)
            throw std::invalid_argument(std::string("glue: pieces disagree on ") + kind + " " + x +
                                        " (" + it->second + " vs " + image + ")");
    };
    for (auto& p : pieces) {
        for (auto& v : p.domain.vertices) place(m.vmap, v, p.morphism.v_image(v), "vertex");
        for (auto& e : p.domain.edges) place(m.emap, e, p.morphism.e_image(e), "edge");
    }
    for (auto& v : h.vertices)
        if (!m.vmap.count(v)) throw std::invalid_argument("glue: cover misses vertex " + v);
    for (auto& e : h.edges)
        if (!m.emap.count(e)) throw std::invalid_argument("glue: cover misses edge " + e);
    return m;
}

namespace {

// Backtracking state for find_retraction.  Vertices outside the target
// subhypergraph are assigned first (in decreasing degree), and after each
// vertex its not-yet-assigned incident edges; leftover edges follow.  eps is
// always the last candidate tried.
struct RetractSearch {
    const Hypergraph& h;
    const Hypergraph target; // materialized s
    const Subhypergraph& s;
    long long budget;
    long long nodes = 0;
    std::map<std::string, std::string> vmap, emap;
    std::vector<std::string> order; // interleaved vertex/edge ids, prefixed v:/e:

    RetractSearch(const Hypergraph& h_, const Subhypergraph& s_, long long budget_)
        : h(h_), target(materialize(h_, s_)), s(s_), budget(budget_) {
        for (auto& v : s.vertices) vmap[v] = v;
        for (auto& e : s.edges) emap[e] = e;

        std::vector<std::string> outside;
        for (auto& v : h.vertices)
            if (!s.contains_vertex(v)) outside.push_back(v);
        std::stable_sort(outside.begin(), outside.end(), [&](const auto& a, const auto& b) {
            return h.vertex_degree(a) > h.vertex_degree(b);
        });
        std::set<std::string> queued;
        for (auto& v : outside) {
            order.push_back("v:" + v);
            for (auto& e : h.edges_at(v))
                if (!s.contains_edge(e) && queued.insert(e).second) order.push_back("e:" + e);
        }
        for (auto& e : h.edges)
            if (!s.contains_edge(e) && queued.insert(e).second) order.push_back("e:" + e);
    }

    // Partial consistency around vertex v given the assignments made so far.
    bool vertex_ok(const std::string& v) const {
        auto vit = vmap.find(v);
        if (vit == vmap.end()) return true; // not yet assigned; checked later
        bool complete = true;
        std::map<std::string, int> sums;
        int surviving = 0;
        std::string image;
        for (auto& e : h.edges_at(v)) {
            auto eit = emap.find(e);
            if (eit == emap.end()) {
                complete = false;
                continue;
            }
            if (eit->second == eps) continue;
            sums[eit->second] += h.inc(v, e);
            surviving += h.inc(v, e);
            if (image.empty())
                image = eit->second;
            else if (image != eit->second && vit->second == eps)
                return false;
        }
        if (vit->second == eps) return !complete || surviving % 2 == 0;
        for (auto& [f, sum] : sums)
            if (sum > target.inc(vit->second, f)) return false;
        if (complete)
            for (auto& f : target.edges)
                if ((sums.count(f) ? sums.at(f) : 0) != target.inc(vit->second, f)) return false;
        return true;
    }

    bool edge_ok(const std::string& e) const {
        for (auto& v : h.vertices_of(e))
            if (!vertex_ok(v)) return false;
        return true;
    }

    // returns found / none-with-certainty / budget blown
    RetractionResult::Status run(size_t depth) {
        if (++nodes > budget) return RetractionResult::Status::budget_exhausted;
        if (depth == order.size()) return RetractionResult::Status::found;
        const std::string& item = order[depth];
        bool is_vertex = item[0] == 'v';
        std::string x = item.substr(2);

        std::vector<std::string> candidates;
        if (is_vertex) candidates = target.vertices;
        else candidates = target.edges;
        candidates.push_back(eps);

        for (auto& c : candidates) {
            if (is_vertex) {
                vmap[x] = c;
                if (vertex_ok(x)) {
                    auto st = run(depth + 1);
                    if (st != RetractionResult::Status::none) return st;
                }
                vmap.erase(x);
            } else {
                emap[x] = c;
                if (edge_ok(x)) {
                    auto st = run(depth + 1);
                    if (st != RetractionResult::Status::none) return st;
                }
                emap.erase(x);
            }
        }
        return RetractionResult::Status::none;
    }
};

} // namespace

RetractionResult find_retraction(const Hypergraph& h, const Subhypergraph& s, long long budget) {
    check_subhypergraph(h, s);
    RetractSearch search(h, s, budget);
    auto status = search.run(0);
    RetractionResult out{status, {}};
    if (status == RetractionResult::Status::found) {
        out.morphism = GeneralizedMorphism{h, search.target, search.vmap, search.emap};
        auto rep = validate_morphism(out.morphism);
        if (!rep.ok)
            throw std::logic_error("find_retraction produced an invalid morphism: " + rep.detail);
    }
    return out;
}

std::map<std::string, std::string> induced_generator_map(const GeneralizedMorphism& m) {
    auto rep = validate_morphism(m);
    if (!rep.ok) throw std::invalid_argument("induced_generator_map: invalid morphism: " + rep.detail);
    std::map<std::string, std::string> out;
    for (auto& e : m.source.edges) out[e] = m.e_image(e); // eps means x_e -> 1
    return out;
}

} // namespace ww
