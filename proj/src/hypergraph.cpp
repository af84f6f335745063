#include "ww/hypergraph.h"

#include <algorithm>
#include <stdexcept>

namespace ww {

bool Hypergraph::has_vertex(const std::string& v) const {
    return std::find(vertices.begin(), vertices.end(), v) != vertices.end();
}

bool Hypergraph::has_edge(const std::string& e) const {
    return std::find(edges.begin(), edges.end(), e) != edges.end();
}

int Hypergraph::inc(const std::string& v, const std::string& e) const {
    auto it = incidence.find({v, e});
    return it == incidence.end() ? 0 : it->second;
}

void Hypergraph::set_inc(const std::string& v, const std::string& e, int a) {
    if (a < 0) throw std::invalid_argument("negative incidence for (" + v + ", " + e + ")");
    if (a == 0)
        incidence.erase({v, e});
    else
        incidence[{v, e}] = a;
}

int Hypergraph::label(const std::string& v) const {
    auto it = b.find(v);
    return it == b.end() ? 0 : it->second;
}

int Hypergraph::vertex_degree(const std::string& v) const {
    int d = 0;
    for (auto& e : edges) d += inc(v, e);
    return d;
}

int Hypergraph::edge_size(const std::string& e) const {
    int s = 0;
    for (auto& v : vertices) s += inc(v, e);
    return s;
}

std::vector<std::string> Hypergraph::edges_at(const std::string& v) const {
    std::vector<std::string> out;
    for (auto& e : edges)
        if (inc(v, e) > 0) out.push_back(e);
    return out;
}

std::vector<std::string> Hypergraph::vertices_of(const std::string& e) const {
    std::vector<std::string> out;
    for (auto& v : vertices)
        if (inc(v, e) > 0) out.push_back(v);
    return out;
}

bool Hypergraph::is_simple() const {
    for (auto& [ve, a] : incidence)
        if (a > 1) return false;
    return true;
}

bool Hypergraph::is_graph() const {
    for (auto& e : edges)
        if (edge_size(e) != 2) return false;
    return true;
}

bool Hypergraph::is_regular(int k) const {
    for (auto& v : vertices)
        if (vertex_degree(v) != k) return false;
    return true;
}

void Hypergraph::validate() const {
    auto check_ids = [](const std::vector<std::string>& ids, const char* kind) {
        std::set<std::string> seen;
        for (auto& id : ids) {
            if (id.empty()) throw std::invalid_argument(std::string("empty ") + kind + " id");
            if (id == eps)
                throw std::invalid_argument(std::string(kind) + " id \"" + eps + "\" is reserved");
            if (!seen.insert(id).second)
                throw std::invalid_argument(std::string("duplicate ") + kind + " id " + id);
        }
    };
    check_ids(vertices, "vertex");
    check_ids(edges, "edge");
    for (auto& [ve, a] : incidence) {
        if (!has_vertex(ve.first))
            throw std::invalid_argument("incidence names undeclared vertex " + ve.first);
        if (!has_edge(ve.second))
            throw std::invalid_argument("incidence names undeclared edge " + ve.second);
        if (a <= 0)
            throw std::invalid_argument("non-positive incidence stored for (" + ve.first + ", " +
                                         ve.second + ")");
    }
    for (auto& [v, bv] : b) {
        if (!has_vertex(v)) throw std::invalid_argument("label names undeclared vertex " + v);
        if (bv != 0 && bv != 1)
            throw std::invalid_argument("label of " + v + " must be 0 or 1");
    }
}

bool same_structure(const Hypergraph& a, const Hypergraph& b) {
    return a.vertices == b.vertices && a.edges == b.edges && a.incidence == b.incidence;
}

Subhypergraph whole(const Hypergraph& h) {
    return {{h.vertices.begin(), h.vertices.end()}, {h.edges.begin(), h.edges.end()}};
}

void check_subhypergraph(const Hypergraph& h, const Subhypergraph& s) {
    for (auto& v : s.vertices)
        if (!h.has_vertex(v)) throw std::invalid_argument("subhypergraph names undeclared vertex " + v);
    for (auto& e : s.edges)
        if (!h.has_edge(e)) throw std::invalid_argument("subhypergraph names undeclared edge " + e);
}

Hypergraph materialize(const Hypergraph& h, const Subhypergraph& s) {
    check_subhypergraph(h, s);
    Hypergraph out;
    for (auto& v : h.vertices)
        if (s.contains_vertex(v)) {
            out.vertices.push_back(v);
            if (h.label(v)) out.b[v] = 1;
        }
    for (auto& e : h.edges)
        if (s.contains_edge(e)) out.edges.push_back(e);
    for (auto& [ve, a] : h.incidence)
        if (s.contains_vertex(ve.first) && s.contains_edge(ve.second)) out.incidence[ve] = a;
    return out;
}

Subhypergraph neighbourhood(const Hypergraph& h, const Subhypergraph& s) {
    check_subhypergraph(h, s);
    Subhypergraph n = s;
    for (auto& [ve, a] : h.incidence)
        if (s.contains_vertex(ve.first)) n.edges.insert(ve.second);
    return n;
}

bool is_open(const Hypergraph& h, const Subhypergraph& s) {
    return neighbourhood(h, s) == s;
}

bool is_closed(const Hypergraph& h, const Subhypergraph& s) {
    check_subhypergraph(h, s);
    for (auto& [ve, a] : h.incidence)
        if (s.contains_edge(ve.second) && !s.contains_vertex(ve.first)) return false;
    return true;
}

Subhypergraph closure(const Hypergraph& h, const Subhypergraph& s) {
    check_subhypergraph(h, s);
    Subhypergraph c = s;
    for (auto& [ve, a] : h.incidence)
        if (s.contains_edge(ve.second)) c.vertices.insert(ve.first);
    return c;
}

Subhypergraph sub_union(const Subhypergraph& a, const Subhypergraph& b) {
    Subhypergraph u = a;
    u.vertices.insert(b.vertices.begin(), b.vertices.end());
    u.edges.insert(b.edges.begin(), b.edges.end());
    return u;
}

Subhypergraph sub_intersection(const Subhypergraph& a, const Subhypergraph& b) {
    Subhypergraph i;
    for (auto& v : a.vertices)
        if (b.contains_vertex(v)) i.vertices.insert(v);
    for (auto& e : a.edges)
        if (b.contains_edge(e)) i.edges.insert(e);
    return i;
}

std::optional<CycleWalk> cycle_walk(const Hypergraph& h, const Subhypergraph& s) {
    check_subhypergraph(h, s);
    if (s.vertices.empty() || !is_closed(h, s)) return std::nullopt;
    Hypergraph g = materialize(h, s);
    if (!g.is_simple() || !g.is_graph() || !g.is_regular(2)) return std::nullopt;
    CycleWalk walk;
    const std::string start = g.vertices.front();
    std::string at = start;
    std::string via = g.edges_at(start).front();
    for (std::size_t step = 0; step < g.vertices.size(); step++) {
        walk.vertices.push_back(at);
        walk.edges.push_back(via);
        auto ends = g.vertices_of(via);
        at = ends[0] == at ? ends[1] : ends[0];
        auto out = g.edges_at(at);
        via = out[0] == via ? out[1] : out[0];
    }
    // A 2-regular simple graph is a disjoint union of cycles; the walk closes
    // up without repeats exactly when there is a single one.
    if (at != start) return std::nullopt;
    std::set<std::string> seen(walk.vertices.begin(), walk.vertices.end());
    if (seen.size() != g.vertices.size()) return std::nullopt;
    return walk;
}

bool is_cycle(const Hypergraph& h, const Subhypergraph& s) {
    return cycle_walk(h, s).has_value();
}

SolutionGroupPresentation solution_group_presentation(const Hypergraph& h,
                                                      const VertexLabelling& b) {
    SolutionGroupPresentation out;
    out.generators = h.edges;
    for (auto& v : h.vertices) {
        InvWord w;
        auto it = b.find(v);
        w.parity = (it == b.end() ? 0 : it->second) & 1;
        for (auto& e : h.edges)
            for (int k = 0; k < h.inc(v, e); k++) w.letters.push_back(e);
        out.linear.push_back({v, std::move(w)});
    }
    std::set<std::pair<std::string, std::string>> pairs;
    for (auto& v : h.vertices) {
        auto around = h.edges_at(v);
        for (size_t i = 0; i < around.size(); i++)
            for (size_t j = i + 1; j < around.size(); j++) pairs.insert({around[i], around[j]});
    }
    // report pairs ordered by edge declaration order, not lexicographically
    std::map<std::string, size_t> pos;
    for (size_t i = 0; i < h.edges.size(); i++) pos[h.edges[i]] = i;
    out.commuting.assign(pairs.begin(), pairs.end());
    for (auto& p : out.commuting)
        if (pos[p.first] > pos[p.second]) std::swap(p.first, p.second);
    std::sort(out.commuting.begin(), out.commuting.end(),
              [&](const auto& a, const auto& b) {
                  return std::pair(pos[a.first], pos[a.second]) <
                         std::pair(pos[b.first], pos[b.second]);
              });
    out.commuting.erase(std::unique(out.commuting.begin(), out.commuting.end()),
                        out.commuting.end());
    return out;
}

SolutionGroupPresentation solution_group_presentation(const Hypergraph& h) {
    VertexLabelling b(h.b.begin(), h.b.end());
    return solution_group_presentation(h, b);
}

std::optional<std::string> SolutionGroupPresentation::defining_relation_vertex(
    const InvWord& w) const {
    std::map<std::string, int> counts;
    for (auto& s : w.letters) counts[s]++;
    for (auto& rel : linear) {
        if (rel.word.parity != w.parity) continue;
        if (rel.word.letters.size() != w.letters.size()) continue;
        std::map<std::string, int> want;
        for (auto& s : rel.word.letters) want[s]++;
        if (want == counts) return rel.vertex;
    }
    return std::nullopt;
}

} // namespace ww
