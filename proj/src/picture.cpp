#include "ww/picture.h"

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace ww {

namespace {

// ---------------------------------------------------------------------------
// Working form.  A Chart unpacks a Picture into dart lookup tables: alpha
// swaps the two darts of an edge, sigma steps counter-clockwise around the
// dart's owner, and faces are the orbits of phi = sigma . alpha.  The disc
// boundary acts as a pseudo-vertex whose rotation is the boundary cycle
// reversed, which makes the face tracing treat open and closed pictures
// uniformly (an open picture is its closure with the outer face cut open).

constexpr int kBoundaryOwner = -1;

struct Chart {
    struct V {
        std::string id;
        std::vector<Dart> rot;
        bool alive = true;
        int pos_tok = -1; // region token for a vertex stranded without darts
    };
    struct E {
        std::string id;
        std::string label;
        Dart a = 0, b = 0;
        bool alive = true;
    };

    std::vector<V> verts;
    std::vector<E> edges;
    std::vector<Dart> boundary;
    std::map<Dart, int> owner;   // vertex index, or kBoundaryOwner
    std::map<Dart, int> edge_at; // index of the edge owning the dart

    Dart alpha(Dart d) const {
        const E& e = edges[edge_at.at(d)];
        return e.a == d ? e.b : e.a;
    }

    Dart sigma(Dart d) const {
        int o = owner.at(d);
        if (o == kBoundaryOwner) {
            // reversed rotation: the successor is the predecessor in the list
            auto it = std::find(boundary.begin(), boundary.end(), d);
            return it == boundary.begin() ? boundary.back() : *(it - 1);
        }
        const auto& r = verts[o].rot;
        auto it = std::find(r.begin(), r.end(), d);
        auto nx = it + 1;
        return nx == r.end() ? r.front() : *nx;
    }

    Dart phi(Dart d) const { return sigma(alpha(d)); }

    // phi-orbits; each starts at its least dart and the list is sorted by it
    std::vector<std::vector<Dart>> faces() const {
        std::vector<std::vector<Dart>> out;
        std::set<Dart> seen;
        for (auto& [d, o] : owner) {
            if (seen.count(d)) continue;
            std::vector<Dart> orbit;
            Dart x = d;
            do {
                orbit.push_back(x);
                seen.insert(x);
                x = phi(x);
            } while (x != d);
            out.push_back(std::move(orbit));
        }
        return out;
    }
};

Chart chart_of(const Picture& p, const std::map<std::string, std::string>* edge_labels) {
    Chart c;
    c.boundary = p.boundary;
    for (auto& v : p.vertices) c.verts.push_back({v.id, v.rot, true, -1});
    for (int i = 0; i < (int)c.verts.size(); i++)
        for (Dart d : c.verts[i].rot) c.owner[d] = i;
    for (Dart d : c.boundary) c.owner[d] = kBoundaryOwner;
    for (auto& e : p.edges) {
        std::string lbl;
        if (edge_labels)
            if (auto it = edge_labels->find(e.id); it != edge_labels->end()) lbl = it->second;
        c.edges.push_back({e.id, lbl, e.darts[0], e.darts[1], true});
    }
    for (int i = 0; i < (int)c.edges.size(); i++) {
        c.edge_at[c.edges[i].a] = i;
        c.edge_at[c.edges[i].b] = i;
    }
    return c;
}

// Dart components of a chart: vertices joined by edges, with the boundary
// pseudo-vertex as one more node.  Free loops are not dart components.
struct CompInfo {
    std::string rep; // "boundary", or the least vertex id
    bool has_pseudo = false;
    std::vector<int> vidx;
    std::vector<int> eidx;
    std::vector<std::vector<Dart>> faces; // sorted by least dart
};

std::vector<CompInfo> dart_components(const Chart& c) {
    const int n = (int)c.verts.size();
    std::vector<int> par(n + 1);
    for (int i = 0; i <= n; i++) par[i] = i;
    auto find = [&](int a) {
        while (par[a] != a) a = par[a] = par[par[a]];
        return a;
    };
    auto node = [&](int o) { return o == kBoundaryOwner ? n : o; };
    for (auto& e : c.edges)
        if (e.alive) par[find(node(c.owner.at(e.a)))] = find(node(c.owner.at(e.b)));

    std::map<int, CompInfo> groups;
    for (int i = 0; i < n; i++)
        if (c.verts[i].alive) groups[find(i)].vidx.push_back(i);
    if (!c.boundary.empty()) groups[find(n)].has_pseudo = true;
    for (int i = 0; i < (int)c.edges.size(); i++)
        if (c.edges[i].alive) groups[find(node(c.owner.at(c.edges[i].a)))].eidx.push_back(i);
    for (auto& orbit : c.faces())
        groups[find(node(c.owner.at(orbit.front())))].faces.push_back(orbit);

    std::vector<CompInfo> out;
    for (auto& [root, ci] : groups) {
        if (ci.has_pseudo)
            ci.rep = "boundary";
        else {
            std::string best;
            for (int vi : ci.vidx)
                if (best.empty() || c.verts[vi].id < best) best = c.verts[vi].id;
            ci.rep = best;
        }
        out.push_back(std::move(ci));
    }
    std::sort(out.begin(), out.end(), [](const CompInfo& a, const CompInfo& b) {
        if (a.has_pseudo != b.has_pseudo) return a.has_pseudo;
        return a.rep < b.rep;
    });
    return out;
}

// Face keys of a component: the least dart of each orbit; a lone vertex has
// the single conventional key 0 (the region it sits in).
std::set<int> comp_keys(const CompInfo& ci) {
    std::set<int> ks;
    for (auto& orbit : ci.faces) ks.insert(orbit.front());
    if (ks.empty() && !ci.has_pseudo) ks.insert(0);
    return ks;
}

int mod2(int x) { return ((x % 2) + 2) % 2; }

bool cyclic_equal(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    if (a.size() != b.size()) return false;
    if (a.empty()) return true;
    std::vector<std::string> twice = a;
    twice.insert(twice.end(), a.begin(), a.end());
    return std::search(twice.begin(), twice.end(), b.begin(), b.end()) != twice.end();
}

std::string word_text(const std::vector<std::string>& w) {
    std::string s;
    for (auto& t : w) {
        if (!s.empty()) s += ' ';
        s += t;
    }
    return s.empty() ? "(empty)" : s;
}

// Decimal relation index, no signs, no leading zeros.
std::optional<int> relation_index(const std::string& s, int count) {
    if (s.empty() || s.size() > 9) return std::nullopt;
    for (char ch : s)
        if (!std::isdigit((unsigned char)ch)) return std::nullopt;
    if (s.size() > 1 && s[0] == '0') return std::nullopt;
    int v = std::stoi(s);
    if (v >= count) return std::nullopt;
    return v;
}

struct UnionFind {
    std::vector<int> par;
    int make() {
        par.push_back((int)par.size());
        return (int)par.size() - 1;
    }
    int find(int a) {
        while (par[a] != a) a = par[a] = par[par[a]];
        return a;
    }
    void unite(int a, int b) { par[find(a)] = find(b); }
};

} // namespace

// ---------------------------------------------------------------------------
// Validation

PictureReport validate(const Picture& p) {
    if (p.closed && !p.boundary.empty()) return {false, "closed picture lists boundary darts"};
    if (!p.closed && p.boundary.empty()) return {false, "open picture lists no boundary darts"};

    std::set<std::string> vids;
    for (auto& v : p.vertices) {
        if (v.id.empty()) return {false, "vertex with an empty id"};
        if (v.id == "boundary") return {false, "vertex id \"boundary\" is reserved for the disc boundary"};
        if (!vids.insert(v.id).second) return {false, "duplicate vertex id " + v.id};
    }
    std::set<std::string> eids;
    for (auto& e : p.edges) {
        if (e.id.empty()) return {false, "edge with an empty id"};
        if (e.id == "boundary") return {false, "edge id \"boundary\" is reserved for the disc boundary"};
        if (!eids.insert(e.id).second) return {false, "duplicate edge id " + e.id};
    }
    for (auto& l : p.free_loops) {
        if (l.id.empty()) return {false, "free loop with an empty id"};
        if (l.id == "boundary") return {false, "loop id \"boundary\" is reserved for the disc boundary"};
        if (!eids.insert(l.id).second) return {false, "free loop id " + l.id + " collides with another edge or loop"};
    }

    // every dart sits in exactly one rotation and belongs to exactly one edge
    std::map<Dart, std::string> placed;
    auto place = [&](Dart d, const std::string& where) -> std::optional<std::string> {
        if (d <= 0) return "dart " + std::to_string(d) + " (" + where + ") is not positive";
        auto [it, fresh] = placed.emplace(d, where);
        if (!fresh)
            return "dart " + std::to_string(d) + " appears both at " + it->second + " and " + where;
        return std::nullopt;
    };
    for (auto& v : p.vertices)
        for (Dart d : v.rot)
            if (auto err = place(d, "vertex " + v.id)) return {false, *err};
    for (Dart d : p.boundary)
        if (auto err = place(d, "the boundary")) return {false, *err};

    std::map<Dart, std::string> claimed;
    for (auto& e : p.edges) {
        if (e.darts[0] == e.darts[1]) return {false, "edge " + e.id + " lists the same dart twice"};
        for (Dart d : e.darts) {
            if (d <= 0) return {false, "edge " + e.id + " lists a non-positive dart"};
            if (!placed.count(d))
                return {false, "edge " + e.id + " owns dart " + std::to_string(d) +
                                   " which appears at no vertex or boundary"};
            auto [it, fresh] = claimed.emplace(d, e.id);
            if (!fresh)
                return {false, "dart " + std::to_string(d) + " is claimed by edges " + it->second +
                                   " and " + e.id};
        }
    }
    for (auto& [d, where] : placed)
        if (!claimed.count(d))
            return {false, "dart " + std::to_string(d) + " (at " + where + ") belongs to no edge"};

    // sphere count per component
    Chart c = chart_of(p, nullptr);
    auto comps = dart_components(c);
    for (auto& ci : comps) {
        long V = (long)ci.vidx.size() + (ci.has_pseudo ? 1 : 0);
        long E = (long)ci.eidx.size();
        long F = (long)ci.faces.size();
        if (F == 0 && E == 0 && !ci.has_pseudo) F = 1; // a lone vertex sits in one region
        if (V - E + F != 2)
            return {false, "component " + ci.rep + " fails the sphere count: V=" + std::to_string(V) +
                               " E=" + std::to_string(E) + " F=" + std::to_string(F)};
    }

    // nesting forest
    std::map<std::string, const CompInfo*> by_rep;
    for (auto& ci : comps) by_rep[ci.rep] = &ci;
    std::map<std::string, const FreeLoop*> by_loop;
    for (auto& l : p.free_loops) by_loop[l.id] = &l;

    std::map<std::string, const NestingEntry*> entry_of;
    for (auto& en : p.nesting) {
        if (by_loop.count(en.component))
            return {false, "free loop " + en.component + " is placed by its face field, not a nesting entry"};
        auto it = by_rep.find(en.component);
        if (it == by_rep.end())
            return {false, "nesting entry names unknown component " + en.component};
        if (it->second->has_pseudo) return {false, "the boundary component is always outermost"};
        if (!entry_of.emplace(en.component, &en).second)
            return {false, "component " + en.component + " has two nesting entries"};
        if (!comp_keys(*it->second).count(en.outer))
            return {false, "component " + en.component + " has no face " + std::to_string(en.outer)};
    }

    if (!p.closed) {
        for (auto& ci : comps)
            if (!ci.has_pseudo && !entry_of.count(ci.rep))
                return {false, "component " + ci.rep + " has no nesting entry"};
        for (auto& l : p.free_loops)
            if (!l.face) return {false, "free loop " + l.id + " has no host face"};
    } else {
        int roots = 0;
        for (auto& ci : comps)
            if (!entry_of.count(ci.rep)) roots++;
        for (auto& l : p.free_loops)
            if (!l.face) roots++;
        if ((!comps.empty() || !p.free_loops.empty()) && roots != 1)
            return {false, "a closed picture needs exactly one outermost piece, found " +
                               std::to_string(roots)};
    }

    auto check_ref = [&](const FaceRef& r) -> std::optional<std::string> {
        if (auto it = by_loop.find(r.component); it != by_loop.end()) {
            if (r.face == 0) return std::nullopt; // the loop's inside
            if (r.face == 1 && !it->second->face) return std::nullopt; // outside of the outermost loop
            return "free loop " + r.component + " has no face " + std::to_string(r.face);
        }
        auto it = by_rep.find(r.component);
        if (it == by_rep.end()) return "host names unknown component " + r.component;
        if (!comp_keys(*it->second).count(r.face))
            return "component " + r.component + " has no face " + std::to_string(r.face);
        // a non-root component does not own its outer face; hosting there
        // really means hosting next to it
        if (auto en = entry_of.find(r.component); en != entry_of.end() && en->second->outer == r.face)
            return "face " + std::to_string(r.face) + " is the outer face of component " +
                   r.component + ", which cannot host";
        return std::nullopt;
    };
    for (auto& en : p.nesting)
        if (auto err = check_ref(en.host)) return {false, *err};
    for (auto& l : p.free_loops)
        if (l.face)
            if (auto err = check_ref(*l.face)) return {false, *err};

    // the host relation must reach an outermost piece without cycling
    std::map<std::string, std::string> parent;
    for (auto& en : p.nesting) parent[en.component] = en.host.component;
    for (auto& l : p.free_loops)
        if (l.face) parent[l.id] = l.face->component;
    size_t total = parent.size() + 2;
    for (auto& [start, first] : parent) {
        std::string cur = first;
        size_t steps = 0;
        while (parent.count(cur)) {
            cur = parent[cur];
            if (++steps > total)
                return {false, "nesting references form a cycle at component " + start};
        }
    }
    return {true, ""};
}

std::vector<ComponentFaces> face_structure(const Picture& p) {
    Chart c = chart_of(p, nullptr);
    std::vector<ComponentFaces> out;
    for (auto& ci : dart_components(c)) {
        ComponentFaces cf;
        cf.rep = ci.rep;
        cf.has_pseudo = ci.has_pseudo;
        for (int vi : ci.vidx) cf.vertices.push_back(c.verts[vi].id);
        for (int ei : ci.eidx) cf.edges.push_back(c.edges[ei].id);
        std::sort(cf.vertices.begin(), cf.vertices.end());
        std::sort(cf.edges.begin(), cf.edges.end());
        cf.faces = ci.faces;
        out.push_back(std::move(cf));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Labelled pictures

namespace {

// Checks shared by both labelled flavours: every element labelled, no labels
// for elements that do not exist, labels drawn from the allowed sets.
PictureReport check_label_cover(const Picture& p,
                                const std::map<std::string, std::string>& vlab,
                                const std::map<std::string, std::string>& elab,
                                const std::set<std::string>& vertex_range,
                                const char* vertex_range_name,
                                const std::set<std::string>& edge_range,
                                const char* edge_range_name) {
    std::set<std::string> vseen, eseen;
    for (auto& v : p.vertices) {
        vseen.insert(v.id);
        auto it = vlab.find(v.id);
        if (it == vlab.end()) return {false, "vertex " + v.id + " has no label"};
        if (!vertex_range.count(it->second))
            return {false, "vertex " + v.id + " is labelled \"" + it->second + "\" which is not " +
                               vertex_range_name};
    }
    auto check_edge = [&](const std::string& id, const char* kind) -> std::optional<std::string> {
        eseen.insert(id);
        auto it = elab.find(id);
        if (it == elab.end()) return std::string(kind) + " " + id + " has no label";
        if (!edge_range.count(it->second))
            return std::string(kind) + " " + id + " is labelled \"" + it->second +
                   "\" which is not " + edge_range_name;
        return std::nullopt;
    };
    for (auto& e : p.edges)
        if (auto err = check_edge(e.id, "edge")) return {false, *err};
    for (auto& l : p.free_loops)
        if (auto err = check_edge(l.id, "free loop")) return {false, *err};
    for (auto& [id, lbl] : vlab)
        if (!vseen.count(id)) return {false, "label for unknown vertex " + id};
    for (auto& [id, lbl] : elab)
        if (!eseen.count(id)) return {false, "label for unknown edge " + id};
    return {true, ""};
}

} // namespace

PictureReport validate_g_labels(const GPicture& p) {
    if (auto r = validate(p.picture); !r.ok) return r;
    if (auto err = validate(p.context); !err.empty()) return {false, "context: " + err};

    std::set<std::string> gens(p.context.generators.begin(), p.context.generators.end());
    std::set<std::string> rel_names;
    for (int i = 0; i < (int)p.context.relations.size(); i++) rel_names.insert(std::to_string(i));
    if (auto r = check_label_cover(p.picture, p.vertex_labels, p.edge_labels, rel_names,
                                   "a relation index", gens, "a generator");
        !r.ok)
        return r;

    Chart c = chart_of(p.picture, &p.edge_labels);
    for (auto& v : p.picture.vertices) {
        int idx = *relation_index(p.vertex_labels.at(v.id), (int)p.context.relations.size());
        const auto& rel = p.context.relations[idx].letters;
        std::vector<std::string> reading;
        for (Dart d : v.rot) reading.push_back(c.edges[c.edge_at.at(d)].label);
        std::vector<std::string> rev(rel.rbegin(), rel.rend());
        if (!cyclic_equal(rel, reading) && !cyclic_equal(rev, reading))
            return {false, "vertex " + v.id + " reads " + word_text(reading) +
                               ", which is not relation " + std::to_string(idx) +
                               " in either direction"};
    }
    return {true, ""};
}

PictureReport validate_h_labels(const HPicture& p) {
    if (auto r = validate(p.picture); !r.ok) return r;
    try {
        p.context.validate();
    } catch (const std::exception& e) {
        return {false, std::string("context: ") + e.what()};
    }

    std::set<std::string> hv(p.context.vertices.begin(), p.context.vertices.end());
    std::set<std::string> he(p.context.edges.begin(), p.context.edges.end());
    if (auto r = check_label_cover(p.picture, p.vertex_labels, p.edge_labels, hv,
                                   "a vertex of the context", he, "an edge of the context");
        !r.ok)
        return r;

    Chart c = chart_of(p.picture, &p.edge_labels);
    for (auto& v : p.picture.vertices) {
        const std::string& hvert = p.vertex_labels.at(v.id);
        std::map<std::string, int> cnt;
        for (Dart d : v.rot) cnt[c.edges[c.edge_at.at(d)].label]++;
        for (auto& e : p.context.edges) {
            int want = p.context.inc(hvert, e);
            int got = cnt.count(e) ? cnt[e] : 0;
            if (want != got)
                return {false, "vertex " + v.id + " (labelled " + hvert + ") carries " +
                                   std::to_string(got) + " darts labelled " + e +
                                   " but the incidence count is " + std::to_string(want)};
        }
    }
    return {true, ""};
}

namespace {

std::vector<std::string> boundary_labels(const Picture& p,
                                         const std::map<std::string, std::string>& elab) {
    std::map<Dart, std::string> at;
    for (auto& e : p.edges) {
        auto it = elab.find(e.id);
        if (it == elab.end()) throw std::logic_error("edge " + e.id + " has no label");
        at[e.darts[0]] = it->second;
        at[e.darts[1]] = it->second;
    }
    std::vector<std::string> w;
    for (Dart d : p.boundary) {
        auto it = at.find(d);
        if (it == at.end()) throw std::logic_error("boundary dart belongs to no edge");
        w.push_back(it->second);
    }
    return w;
}

} // namespace

std::vector<std::string> boundary_word(const GPicture& p) {
    return boundary_labels(p.picture, p.edge_labels);
}

std::vector<std::string> boundary_word(const HPicture& p) {
    return boundary_labels(p.picture, p.edge_labels);
}

int sign(const GPicture& p) {
    int s = 0;
    for (auto& v : p.picture.vertices) {
        auto idx = relation_index(p.vertex_labels.at(v.id), (int)p.context.relations.size());
        if (!idx) throw std::invalid_argument("vertex " + v.id + " is not labelled by a relation index");
        s ^= mod2(p.context.relations[*idx].parity);
    }
    return s;
}

CharacterVector character(const HPicture& p) {
    CharacterVector ch;
    for (auto& v : p.context.vertices) ch[v] = 0;
    for (auto& v : p.picture.vertices) {
        auto it = ch.find(p.vertex_labels.at(v.id));
        if (it == ch.end())
            throw std::invalid_argument("vertex " + v.id + " is labelled outside the context");
        it->second ^= 1;
    }
    return ch;
}

bool certifies(const GPicture& p, const InvWord& w) {
    if (auto r = validate_g_labels(p); !r.ok)
        throw std::invalid_argument("picture: " + r.detail);
    std::set<std::string> gens(p.context.generators.begin(), p.context.generators.end());
    for (auto& t : w.letters)
        if (!gens.count(t))
            throw std::invalid_argument("word letter " + t + " is not a generator of the context");
    return cyclic_equal(boundary_word(p), w.letters) && sign(p) == mod2(w.parity);
}

bool certifies(const HPicture& p, const InvWord& w, const VertexLabelling& b) {
    if (auto r = validate_h_labels(p); !r.ok)
        throw std::invalid_argument("picture: " + r.detail);
    std::set<std::string> he(p.context.edges.begin(), p.context.edges.end());
    for (auto& t : w.letters)
        if (!he.count(t))
            throw std::invalid_argument("word letter " + t + " is not an edge of the context");
    std::set<std::string> hv(p.context.vertices.begin(), p.context.vertices.end());
    for (auto& [v, val] : b)
        if (!hv.count(v))
            throw std::invalid_argument("labelling names unknown vertex " + v);
    int dot = 0;
    for (auto& [v, cv] : character(p)) {
        auto it = b.find(v);
        if (it != b.end()) dot ^= (cv & it->second & 1);
    }
    return cyclic_equal(boundary_word(p), w.letters) && dot == mod2(w.parity);
}

// ---------------------------------------------------------------------------
// Free-loop deletion.  Purely a nesting-forest rewrite: references into a
// deleted loop's inside move to the loop's own position, and when the
// outermost loop goes, the least piece it sheltered is promoted to outermost.

Picture delete_free_loops(const Picture& p) {
    if (auto r = validate(p); !r.ok) throw std::invalid_argument("picture: " + r.detail);
    Picture q = p;
    while (!q.free_loops.empty()) {
        FreeLoop L = q.free_loops.front();
        q.free_loops.erase(q.free_loops.begin());
        auto repoint = [&](const FaceRef& target) {
            for (auto& en : q.nesting)
                if (en.host.component == L.id) en.host = target;
            for (auto& l2 : q.free_loops)
                if (l2.face && l2.face->component == L.id) l2.face = target;
        };
        if (L.face) {
            repoint(*L.face);
            continue;
        }
        // outermost loop: promote the least hosted piece
        std::string best;
        bool best_is_loop = false;
        for (auto& en : q.nesting)
            if (en.host.component == L.id && (best.empty() || en.component < best)) {
                best = en.component;
                best_is_loop = false;
            }
        for (auto& l2 : q.free_loops)
            if (l2.face && l2.face->component == L.id && (best.empty() || l2.id < best)) {
                best = l2.id;
                best_is_loop = true;
            }
        if (best.empty()) continue; // nothing was inside or outside
        FaceRef target;
        if (best_is_loop) {
            for (auto& l2 : q.free_loops)
                if (l2.id == best) l2.face = std::nullopt;
            target = {best, 1};
        } else {
            int outer = 0;
            for (auto it = q.nesting.begin(); it != q.nesting.end(); ++it)
                if (it->component == best) {
                    outer = it->outer;
                    q.nesting.erase(it);
                    break;
                }
            target = {best, outer};
        }
        repoint(target);
    }
    if (auto r = validate(q); !r.ok)
        throw std::logic_error("loop deletion broke the picture: " + r.detail);
    return q;
}

HPicture delete_free_loops(const HPicture& p) {
    HPicture out;
    out.picture = delete_free_loops(p.picture);
    out.vertex_labels = p.vertex_labels;
    out.edge_labels = p.edge_labels;
    for (auto& l : p.picture.free_loops) out.edge_labels.erase(l.id);
    out.context = p.context;
    return out;
}

// ---------------------------------------------------------------------------
// Surgery engine behind apply_morphism.
//
// Regions — the connected pieces of the surface minus the picture — are
// tracked by tokens in a union-find.  Every input face gets a token, every
// free-loop side gets a token, and the input nesting forest unites the tokens
// that name the same region (a component's outer face and its host face).
// Each structural operation unites the tokens of the faces it merges; when a
// face orbit survives a change in pieces, re-tracing unites the survivors.
// After all deletions the find-classes are exactly the regions of the result,
// so the output forest is rebuilt by walking region adjacency outward from
// the outermost piece.

namespace {

struct Surgeon {
    Chart c;
    UnionFind uf;
    std::map<Dart, int> tok; // alive dart -> token of the face traced from it

    struct Loop {
        std::string id, label;
        bool alive = true;
        bool fixed = false; // input loop: side_in really is the inside
        int side_in = -1;   // inside (fixed) or the pinched wedge (minted)
        int side_pos = -1;  // position (fixed) or the far side (minted)
    };
    std::vector<Loop> loops;
    int n_input_loops = 0;

    // outermost piece of a closed input, for root succession
    std::set<std::string> root_vertex_ids;
    int root_loop = -1;

    Surgeon(const Picture& p, const std::map<std::string, std::string>& edge_labels)
        : c(chart_of(p, &edge_labels)) {
        for (auto& orbit : c.faces()) {
            int t = uf.make();
            for (Dart d : orbit) tok[d] = t;
        }
        auto comps = dart_components(c);
        std::map<std::string, std::map<int, int>> face_tok; // rep -> key -> token
        for (auto& ci : comps) {
            auto& m = face_tok[ci.rep];
            for (auto& orbit : ci.faces) m[orbit.front()] = tok.at(orbit.front());
            if (ci.faces.empty() && !ci.has_pseudo) {
                m[0] = uf.make(); // a lone vertex's surroundings
                for (int vi : ci.vidx) c.verts[vi].pos_tok = m[0];
            }
        }
        std::map<std::string, int> loop_idx;
        for (auto& l : p.free_loops) {
            loop_idx[l.id] = (int)loops.size();
            std::string lbl;
            if (auto it = edge_labels.find(l.id); it != edge_labels.end()) lbl = it->second;
            loops.push_back({l.id, lbl, true, true, uf.make(), -1});
        }
        n_input_loops = (int)loops.size();
        for (int i = 0; i < n_input_loops; i++)
            if (!p.free_loops[i].face) loops[i].side_pos = uf.make(); // outermost loop's far side
        auto ref_tok = [&](const FaceRef& r) -> int {
            if (auto it = loop_idx.find(r.component); it != loop_idx.end())
                return r.face == 0 ? loops[it->second].side_in : loops[it->second].side_pos;
            return face_tok.at(r.component).at(r.face);
        };
        for (int i = 0; i < n_input_loops; i++)
            if (p.free_loops[i].face) loops[i].side_pos = ref_tok(*p.free_loops[i].face);
        for (auto& en : p.nesting)
            uf.unite(face_tok.at(en.component).at(en.outer), ref_tok(en.host));
        if (p.boundary.empty()) {
            std::set<std::string> entried;
            for (auto& en : p.nesting) entried.insert(en.component);
            for (auto& ci : comps)
                if (!entried.count(ci.rep))
                    for (int vi : ci.vidx) root_vertex_ids.insert(c.verts[vi].id);
            for (int i = 0; i < n_input_loops; i++)
                if (!p.free_loops[i].face) root_loop = i;
        }
    }

    void remove_dart(Dart d) {
        int o = c.owner.at(d);
        if (o == kBoundaryOwner)
            c.boundary.erase(std::find(c.boundary.begin(), c.boundary.end(), d));
        else {
            auto& r = c.verts[o].rot;
            r.erase(std::find(r.begin(), r.end(), d));
        }
        c.owner.erase(d);
        c.edge_at.erase(d);
        tok.erase(d);
    }

    // Re-trace all faces; each new orbit inherits the union of its surviving
    // darts' tokens.  Orbits never gain darts, so a fresh token here would
    // mean a bookkeeping hole — it cannot happen, but minting keeps it sane.
    void refresh() {
        auto old = std::move(tok);
        tok.clear();
        for (auto& orbit : c.faces()) {
            int t = -1;
            for (Dart d : orbit)
                if (auto it = old.find(d); it != old.end()) {
                    if (t < 0)
                        t = uf.find(it->second);
                    else {
                        uf.unite(t, it->second);
                        t = uf.find(t);
                    }
                }
            if (t < 0) t = uf.make();
            for (Dart d : orbit) tok[d] = t;
        }
    }

    void delete_edge(int ei) {
        auto& E = c.edges[ei];
        uf.unite(tok.at(E.a), tok.at(E.b)); // its two flanks become one region
        int merged = uf.find(tok.at(E.a));
        int oa = c.owner.at(E.a), ob = c.owner.at(E.b);
        remove_dart(E.a);
        remove_dart(E.b);
        E.alive = false;
        for (int o : {oa, ob})
            if (o != kBoundaryOwner && c.verts[o].alive && c.verts[o].rot.empty())
                c.verts[o].pos_tok = merged; // stranded endpoint sits in the merged region
        refresh();
    }

    void delete_loop(int li) {
        uf.unite(loops[li].side_in, loops[li].side_pos);
        loops[li].alive = false;
    }

    // Remove darts x, y (adjacent in vi's rotation, y = sigma(x)) and sew the
    // two strands together.  If both darts belong to one edge the strand
    // closes into a free loop, pinching off the face between them; otherwise
    // the two edges fuse into one.
    void splice(int vi, Dart x, Dart y) {
        if (c.sigma(x) != y) throw std::logic_error("splice darts are not adjacent");
        int ex = c.edge_at.at(x), ey = c.edge_at.at(y);
        if (ex == ey) {
            if (c.phi(y) != y) throw std::logic_error("pinched face is not a wedge");
            Loop L;
            L.id = c.edges[ex].id;
            L.label = c.edges[ex].label;
            L.fixed = false;
            L.side_in = tok.at(y);  // the pinched wedge
            L.side_pos = tok.at(x); // the far side
            loops.push_back(L);
            c.edges[ex].alive = false;
            remove_dart(x);
            remove_dart(y);
            refresh();
            return;
        }
        if (c.phi(y) == y) throw std::logic_error("unexpected face collapse at a splice");
        // if e_x is a loop hugging x, its lens face dies into the strand's face
        bool lens = (c.phi(x) == x);
        int lens_tok = lens ? tok.at(x) : -1;
        Dart xp = c.alpha(x), yp = c.alpha(y);
        auto& Ex = c.edges[ex];
        auto& Ey = c.edges[ey];
        if (Ex.label != Ey.label) throw std::logic_error("fused edges carry different labels");
        int keep = std::min(ex, ey), drop = ex + ey - keep;
        std::string nid = std::min(Ex.id, Ey.id);
        std::string nlabel = Ex.label;
        remove_dart(x);
        remove_dart(y);
        c.edges[keep] = {nid, nlabel, xp, yp, true};
        c.edges[drop].alive = false;
        c.edge_at[xp] = keep;
        c.edge_at[yp] = keep;
        refresh();
        if (lens) uf.unite(lens_tok, tok.at(xp));
    }

    // Deterministic non-crossing reconnection: list the rotation starting
    // after the least dart and splice consecutive pairs.
    void delete_vertex(int vi) {
        auto rot = c.verts[vi].rot;
        if (rot.size() % 2) throw std::logic_error("deleted vertex has odd degree");
        if (!rot.empty()) {
            auto mn = std::min_element(rot.begin(), rot.end());
            std::rotate(rot.begin(), std::next(mn), rot.end()); // least dart last
            for (size_t k = 0; k + 1 < rot.size(); k += 2) splice(vi, rot[k], rot[k + 1]);
        }
        c.verts[vi].alive = false;
    }

    Picture finish(std::map<std::string, std::string>* edge_labels_out) {
        Picture out;
        out.closed = c.boundary.empty();
        for (auto& v : c.verts)
            if (v.alive) out.vertices.push_back({v.id, v.rot});
        for (auto& e : c.edges)
            if (e.alive) out.edges.push_back({e.id, {e.a, e.b}});
        out.boundary = c.boundary;
        std::map<std::string, int> out_loop_at; // loop id -> index in out.free_loops
        for (auto& l : loops)
            if (l.alive) {
                out_loop_at[l.id] = (int)out.free_loops.size();
                out.free_loops.push_back({l.id, std::nullopt});
            }
        if (edge_labels_out) {
            edge_labels_out->clear();
            for (auto& e : c.edges)
                if (e.alive) (*edge_labels_out)[e.id] = e.label;
            for (auto& l : loops)
                if (l.alive) (*edge_labels_out)[l.id] = l.label;
        }

        // --- rebuild the nesting forest from region classes ---
        auto comps = dart_components(c);
        if (comps.empty() && out.free_loops.empty()) return out;

        struct Slot {
            bool is_loop;
            std::string id; // component rep, or loop id
            int key;        // face key; for loops: 0 = side_in, 1 = side_pos
            int loop_idx;
        };
        std::map<int, std::vector<Slot>> region;
        std::map<std::string, std::vector<std::pair<int, int>>> comp_slots; // rep -> (key, class)
        for (auto& ci : comps) {
            std::set<int> seen_cls;
            if (ci.faces.empty() && !ci.has_pseudo) {
                int pt = c.verts[ci.vidx[0]].pos_tok;
                if (pt < 0) throw std::logic_error("lone vertex lost its region");
                int cls = uf.find(pt);
                region[cls].push_back({false, ci.rep, 0, -1});
                comp_slots[ci.rep].push_back({0, cls});
                continue;
            }
            for (auto& orbit : ci.faces) {
                int cls = uf.find(tok.at(orbit.front()));
                if (!seen_cls.insert(cls).second)
                    throw std::logic_error("two faces of one component share a region");
                region[cls].push_back({false, ci.rep, orbit.front(), -1});
                comp_slots[ci.rep].push_back({orbit.front(), cls});
            }
        }
        for (int i = 0; i < (int)loops.size(); i++) {
            if (!loops[i].alive) continue;
            int cin = uf.find(loops[i].side_in), cpos = uf.find(loops[i].side_pos);
            if (cin == cpos) throw std::logic_error("free loop " + loops[i].id + " with one side");
            region[cin].push_back({true, loops[i].id, 0, i});
            region[cpos].push_back({true, loops[i].id, 1, i});
        }

        // the outermost entity: the boundary if present, else the surviving
        // piece of the input's outermost, else the least piece
        bool root_is_loop = false;
        std::string root_id;
        int root_li = -1;
        if (!out.closed) {
            root_id = "boundary";
        } else if (root_loop >= 0 && loops[root_loop].alive) {
            root_is_loop = true;
            root_li = root_loop;
            root_id = loops[root_loop].id;
        } else {
            for (auto& ci : comps) {
                bool from_root = false;
                for (int vi : ci.vidx) from_root |= root_vertex_ids.count(c.verts[vi].id) > 0;
                if (from_root && root_id.empty()) root_id = ci.rep;
            }
            if (root_id.empty() && !comps.empty()) root_id = comps.front().rep;
            if (root_id.empty())
                for (auto& l : loops)
                    if (l.alive && (root_id.empty() || l.id < root_id)) {
                        root_is_loop = true;
                        root_id = l.id;
                    }
            if (root_is_loop)
                for (int i = 0; i < (int)loops.size(); i++)
                    if (loops[i].alive && loops[i].id == root_id) root_li = i;
        }

        std::map<int, FaceRef> owner_ref;
        std::deque<int> queue;
        auto own = [&](int cls, const FaceRef& ref) {
            if (!owner_ref.emplace(cls, ref).second)
                throw std::logic_error("region owned twice");
            queue.push_back(cls);
        };
        std::set<std::string> visited_comps;
        std::set<int> visited_loops;
        std::vector<NestingEntry> entries;

        if (root_is_loop) {
            visited_loops.insert(root_li);
            // sides keep their names: 0 stays the inside, 1 faces out
            own(uf.find(loops[root_li].side_pos), {root_id, 1});
            own(uf.find(loops[root_li].side_in), {root_id, 0});
        } else {
            visited_comps.insert(root_id);
            for (auto& [key, cls] : comp_slots[root_id]) own(cls, FaceRef{root_id, key});
        }

        while (!queue.empty()) {
            int cls = queue.front();
            queue.pop_front();
            const FaceRef& host = owner_ref.at(cls);
            for (auto& s : region[cls]) {
                if (!s.is_loop) {
                    if (visited_comps.count(s.id)) {
                        if (host.component == s.id) continue; // the owning face itself
                        throw std::logic_error("region structure is not a tree");
                    }
                    visited_comps.insert(s.id);
                    entries.push_back({s.id, host, s.key});
                    for (auto& [key, cls2] : comp_slots[s.id])
                        if (cls2 != cls) own(cls2, FaceRef{s.id, key});
                } else {
                    if (visited_loops.count(s.loop_idx)) {
                        if (host.component == s.id) continue;
                        throw std::logic_error("region structure is not a tree");
                    }
                    auto& L = loops[s.loop_idx];
                    if (L.fixed && s.key == 0)
                        throw std::logic_error("entered free loop " + L.id + " from its inside");
                    visited_loops.insert(s.loop_idx);
                    out.free_loops[out_loop_at.at(L.id)].face = host;
                    int inside = uf.find(s.key == 0 ? L.side_pos : L.side_in);
                    own(inside, FaceRef{L.id, 0});
                }
            }
        }

        size_t alive_loops = 0;
        for (auto& l : loops) alive_loops += l.alive;
        if (visited_comps.size() != comps.size() || visited_loops.size() != alive_loops)
            throw std::logic_error("region walk missed part of the picture");

        std::sort(entries.begin(), entries.end(),
                  [](const NestingEntry& a, const NestingEntry& b) { return a.component < b.component; });
        out.nesting = std::move(entries);
        return out;
    }
};

} // namespace

HPicture apply_morphism(const GeneralizedMorphism& m, const HPicture& p) {
    if (auto r = validate_morphism(m); !r.ok)
        throw std::invalid_argument("morphism: " + r.detail);
    if (!same_structure(p.context, m.source))
        throw std::invalid_argument("picture context does not match the morphism source");
    if (auto r = validate_h_labels(p); !r.ok)
        throw std::invalid_argument("picture: " + r.detail);

    std::vector<std::string> expect_bd;
    for (auto& t : boundary_word(p))
        if (const std::string& im = m.e_image(t); im != eps) expect_bd.push_back(im);
    const int in_size = p.picture.size();

    Surgeon s(p.picture, p.edge_labels);
    // (1) erased edges and loops go first, in declaration order
    for (int i = 0; i < (int)s.c.edges.size(); i++)
        if (m.e_image(s.c.edges[i].label) == eps) s.delete_edge(i);
    for (int i = 0; i < s.n_input_loops; i++)
        if (m.e_image(s.loops[i].label) == eps) s.delete_loop(i);
    // (2) surviving edges and loops take their image labels
    for (auto& e : s.c.edges)
        if (e.alive) e.label = m.e_image(e.label);
    for (auto& l : s.loops)
        if (l.alive) l.label = m.e_image(l.label);
    // (3) erased vertices, in declaration order, with non-crossing reconnection
    for (int vi = 0; vi < (int)s.c.verts.size(); vi++)
        if (m.v_image(p.vertex_labels.at(s.c.verts[vi].id)) == eps) s.delete_vertex(vi);
    // (4) surviving vertices take their image labels
    HPicture out;
    out.picture = s.finish(&out.edge_labels);
    for (auto& v : out.picture.vertices)
        out.vertex_labels[v.id] = m.v_image(p.vertex_labels.at(v.id));
    out.context = m.target;

    if (auto r = validate_h_labels(out); !r.ok)
        throw std::logic_error("morphism application produced an invalid picture: " + r.detail);
    if (out.picture.size() > in_size)
        throw std::logic_error("morphism application grew the picture");
    if (boundary_word(out) != expect_bd)
        throw std::logic_error("morphism application changed the boundary word unexpectedly");
    return out;
}

HPicture restrict_to_closed(const HPicture& p, const Subhypergraph& sub) {
    check_subhypergraph(p.context, sub);
    if (!is_closed(p.context, sub))
        throw std::invalid_argument("subhypergraph is not closed in the context");
    HPicture out = apply_morphism(restriction_morphism(p.context, sub), p);
    if (is_cycle(p.context, sub)) {
        std::set<std::string> ce(sub.edges.begin(), sub.edges.end());
        bool avoids = true;
        for (auto& t : boundary_word(p)) avoids &= !ce.count(t);
        if (avoids) {
            for (auto& cc : classify_cycles(out, whole(out.context)))
                if (!cc.simple_cycle)
                    throw std::logic_error("restriction left a component that is not a cycle");
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Cycle classification

std::vector<CycleClassification> classify_cycles(const HPicture& p, const Subhypergraph& C) {
    if (auto r = validate_h_labels(p); !r.ok)
        throw std::invalid_argument("picture: " + r.detail);
    if (!is_cycle(p.context, C)) throw std::invalid_argument("subhypergraph is not a cycle");
    std::set<std::string> ce(C.edges.begin(), C.edges.end());
    std::set<std::string> cv(C.vertices.begin(), C.vertices.end());

    Chart c = chart_of(p.picture, &p.edge_labels);

    // faces of the ambient picture that host nothing may bound cycles
    std::set<std::pair<std::string, int>> hosted;
    for (auto& en : p.picture.nesting) hosted.insert({en.host.component, en.host.face});
    for (auto& l : p.picture.free_loops)
        if (l.face) hosted.insert({l.face->component, l.face->face});
    auto ambient = dart_components(c);
    std::map<Dart, std::pair<std::string, int>> face_name; // least dart -> (comp, key)
    std::vector<const std::vector<Dart>*> all_faces;
    for (auto& ci : ambient)
        for (auto& orbit : ci.faces) {
            face_name[orbit.front()] = {ci.rep, orbit.front()};
            all_faces.push_back(&orbit);
        }

    // components of the subpicture spanned by edges labelled in E(C)
    const int n = (int)c.verts.size();
    std::vector<int> par(n + 1);
    for (int i = 0; i <= n; i++) par[i] = i;
    auto find = [&](int a) {
        while (par[a] != a) a = par[a] = par[par[a]];
        return a;
    };
    auto node = [&](int o) { return o == kBoundaryOwner ? n : o; };
    std::vector<int> sub_edges;
    for (int i = 0; i < (int)c.edges.size(); i++)
        if (ce.count(c.edges[i].label)) {
            sub_edges.push_back(i);
            par[find(node(c.owner.at(c.edges[i].a)))] = find(node(c.owner.at(c.edges[i].b)));
        }
    struct Group {
        std::set<int> vidx;
        std::vector<int> eidx;
        bool pseudo = false;
    };
    std::map<int, Group> groups;
    for (int ei : sub_edges) {
        auto& g = groups[find(node(c.owner.at(c.edges[ei].a)))];
        g.eidx.push_back(ei);
        for (Dart d : {c.edges[ei].a, c.edges[ei].b}) {
            int o = c.owner.at(d);
            if (o == kBoundaryOwner)
                g.pseudo = true;
            else
                g.vidx.insert(o);
        }
    }

    struct Keyed {
        std::string key;
        CycleClassification cc;
    };
    std::vector<Keyed> rows;

    for (auto& [root, g] : groups) {
        CycleClassification cc;
        for (int vi : g.vidx) cc.vertices.push_back(c.verts[vi].id);
        for (int ei : g.eidx) cc.edges.push_back(c.edges[ei].id);
        std::sort(cc.vertices.begin(), cc.vertices.end());
        std::sort(cc.edges.begin(), cc.edges.end());

        std::set<Dart> darts;
        std::map<int, int> deg;
        for (int ei : g.eidx) {
            darts.insert(c.edges[ei].a);
            darts.insert(c.edges[ei].b);
            for (Dart d : {c.edges[ei].a, c.edges[ei].b})
                if (c.owner.at(d) != kBoundaryOwner) deg[c.owner.at(d)]++;
        }
        bool all_two = !g.pseudo;
        for (int vi : g.vidx) all_two &= deg[vi] == 2;
        cc.simple_cycle = all_two && g.eidx.size() == g.vidx.size();

        if (cc.simple_cycle) {
            // a side of the cycle that is a face with nothing hosted in it
            for (auto* f : all_faces) {
                if (f->size() != g.eidx.size()) continue;
                std::set<int> hit;
                bool inside = true;
                for (Dart d : *f) {
                    inside &= darts.count(d) > 0;
                    if (inside) hit.insert(c.edge_at.at(d));
                }
                if (!inside || hit.size() != g.eidx.size()) continue;
                if (!hosted.count(face_name.at(f->front()))) {
                    cc.facial = true;
                    break;
                }
            }
            cc.cover = true;
            for (int ei : g.eidx)
                cc.cover &= c.owner.at(c.edges[ei].a) != c.owner.at(c.edges[ei].b);
            if (cc.cover) {
                std::set<std::string> vl, el;
                for (int vi : g.vidx) vl.insert(p.vertex_labels.at(c.verts[vi].id));
                for (int ei : g.eidx) el.insert(c.edges[ei].label);
                cc.copy = vl.size() == g.vidx.size() && g.vidx.size() == cv.size() &&
                          el.size() == g.eidx.size() && g.eidx.size() == ce.size();
            }
        }
        rows.push_back({cc.edges.front(), std::move(cc)});
    }

    for (auto& l : p.picture.free_loops) {
        auto it = p.edge_labels.find(l.id);
        if (it == p.edge_labels.end() || !ce.count(it->second)) continue;
        CycleClassification cc;
        cc.edges = {l.id};
        cc.free_loop = true;
        cc.simple_cycle = true;
        cc.facial = !hosted.count({l.id, 0}) || (!l.face && !hosted.count({l.id, 1}));
        rows.push_back({l.id, std::move(cc)});
    }

    std::sort(rows.begin(), rows.end(), [](const Keyed& a, const Keyed& b) { return a.key < b.key; });
    std::vector<CycleClassification> out;
    for (auto& r : rows) out.push_back(std::move(r.cc));
    return out;
}

// ---------------------------------------------------------------------------
// The wagon relation picture: one picture-vertex per wheel vertex, edges for
// every wheel incidence, and a boundary dart per letter of the relation.
// Position j contributes darts 10j+1..10j+10:
//   spoke  s_j = {10j+1 at the boundary, 10j+2 at v1_j}
//   a_j        = {10j+3 at v2_{j-1},     10j+4 at v1_j}
//   b_j        = {10j+5 at v1_j,         10j+6 at v2_j}
//   c_j        = {10j+7 at v2_j,         10j+8 at v3_j}
//   d_j        = {10j+9 at v3_{j-1},     10j+10 at v3_j}
// with counter-clockwise rotations v1_j: (s b a), v2_j: (b a_{j+1} c),
// v3_j: (c d_{j+1} d) and the boundary running s_0 ... s_{n-1}.

HPicture wagon_relation_picture(const WagonWheel& w, const VertexLabelling& b, int i) {
    if (i < 0 || i >= w.wheels()) throw std::invalid_argument("wheel index out of range");
    if (!is_labelling(w, b)) throw std::invalid_argument("b is not a labelling of the wheel");
    const int n = w.wheel_size(i);

    HPicture out;
    out.context = w.hypergraph;
    Picture& pic = out.picture;
    pic.closed = false;
    auto at = [&](int j, int off) { return 10 * ((j + n) % n) + off; };
    for (int j = 0; j < n; j++) {
        pic.vertices.push_back({w.vertex_id(i, j, 1), {at(j, 2), at(j, 5), at(j, 4)}});
        pic.vertices.push_back({w.vertex_id(i, j, 2), {at(j, 6), at(j + 1, 3), at(j, 7)}});
        pic.vertices.push_back({w.vertex_id(i, j, 3), {at(j, 8), at(j + 1, 9), at(j, 10)}});
        for (int k = 1; k <= 3; k++)
            out.vertex_labels[w.vertex_id(i, j, k)] = w.vertex_id(i, j, k);
    }
    for (int j = 0; j < n; j++) {
        std::string sp = "sp." + std::to_string(j);
        pic.edges.push_back({sp, {at(j, 1), at(j, 2)}});
        out.edge_labels[sp] = w.letter(i, j);
        for (auto& [fam, lo, hi] : {std::tuple<char, int, int>{'a', 3, 4},
                                    {'b', 5, 6},
                                    {'c', 7, 8},
                                    {'d', 9, 10}}) {
            std::string id = w.edge_id(fam, i, j);
            pic.edges.push_back({id, {at(j, lo), at(j, hi)}});
            out.edge_labels[id] = id;
        }
        pic.boundary.push_back(at(j, 1));
    }

    if (auto r = validate_h_labels(out); !r.ok)
        throw std::logic_error("wheel picture is invalid: " + r.detail);
    if (!certifies(out, w.source.relations[i], b))
        throw std::logic_error("wheel picture fails to certify its relation");
    return out;
}

// ---------------------------------------------------------------------------
// Collapse of wheel components.  After checking that every hub and sector
// cycle appearing in the picture is a facial copy, each component of the
// subpicture spanned by wheel edges must be one full copy of a wheel; it is
// contracted to a single vertex labelled by the wheel's relation index, with
// the generator darts in contour order as the new rotation.

GPicture collapse_facial_components(const HPicture& p, const InvPresentation& pres,
                                    const VertexLabelling& b) {
    WagonWheel w = build_wagon_wheel(pres);
    if (!same_structure(p.context, w.hypergraph))
        throw std::invalid_argument("picture is not over this presentation's wagon wheel");
    if (auto r = validate_h_labels(p); !r.ok)
        throw std::invalid_argument("picture: " + r.detail);
    if (!is_labelling(w, b)) throw std::invalid_argument("b is not a labelling of the wheel");

    std::set<std::string> gens(pres.generators.begin(), pres.generators.end());
    for (auto& t : boundary_word(p))
        if (!gens.count(t))
            throw std::invalid_argument("boundary edge labelled " + t + " is not a generator edge");

    auto cyc = standard_cycles(w);
    auto demand_facial_copies = [&](const Subhypergraph& C, const std::string& name) {
        for (auto& cc : classify_cycles(p, C))
            if (!cc.copy || !cc.facial)
                throw std::invalid_argument("cycle " + name + " has a piece (at " + cc.edges.front() +
                                            ") that is not a facial copy");
    };
    for (int i = 0; i < w.wheels(); i++) {
        for (int j = 0; j < w.wheel_size(i); j++)
            demand_facial_copies(cyc.C[i][j],
                                 "sector (" + std::to_string(i) + "," + std::to_string(j) + ")");
        demand_facial_copies(cyc.B[i], "hub " + std::to_string(i));
    }

    // wheel-vertex id -> (wheel, position, layer)
    std::map<std::string, std::array<int, 3>> wheel_vertex;
    for (int i = 0; i < w.wheels(); i++)
        for (int j = 0; j < w.wheel_size(i); j++)
            for (int k = 1; k <= 3; k++) wheel_vertex[w.vertex_id(i, j, k)] = {i, j, k};

    Chart c = chart_of(p.picture, &p.edge_labels);

    // components of the subpicture spanned by wheel (non-generator) edges
    const int nv = (int)c.verts.size();
    std::vector<int> par(nv);
    for (int i = 0; i < nv; i++) par[i] = i;
    auto find = [&](int a) {
        while (par[a] != a) a = par[a] = par[par[a]];
        return a;
    };
    for (auto& e : c.edges)
        if (!gens.count(e.label)) {
            int oa = c.owner.at(e.a), ob = c.owner.at(e.b);
            if (oa == kBoundaryOwner || ob == kBoundaryOwner)
                throw std::invalid_argument("wheel edge " + e.id + " touches the boundary");
            par[find(oa)] = find(ob);
        }
    std::map<int, std::vector<int>> blobs; // root -> vertex indices
    for (int vi = 0; vi < nv; vi++) blobs[find(vi)].push_back(vi);

    struct Blob {
        std::string id;        // least original vertex id
        int wheel = -1;
        std::vector<Dart> rot; // generator darts in contour order
    };
    std::vector<Blob> collapsed;
    std::map<int, int> blob_of_vertex; // vertex index -> collapsed index

    for (auto& [root, vidx] : blobs) {
        // one picture-vertex per wheel vertex of a single wheel
        std::map<std::string, int> seen;
        int wheel = -1;
        std::string least = c.verts[vidx.front()].id;
        for (int vi : vidx) {
            least = std::min(least, c.verts[vi].id);
            const std::string& hv = p.vertex_labels.at(c.verts[vi].id);
            auto it = wheel_vertex.find(hv);
            if (it == wheel_vertex.end())
                throw std::invalid_argument("vertex " + c.verts[vi].id +
                                            " is labelled by a generator vertex");
            if (wheel < 0) wheel = it->second[0];
            if (wheel != it->second[0])
                throw std::invalid_argument("component at " + least + " mixes wheels");
            if (++seen[hv] > 1)
                throw std::invalid_argument("component at " + least + " is not one wheel copy: " +
                                            hv + " appears twice");
        }
        const int n = w.wheel_size(wheel);
        if ((int)vidx.size() != 3 * n)
            throw std::invalid_argument("component at " + least + " is not one wheel copy");

        // the spoke dart at each layer-1 vertex
        std::map<int, Dart> spoke_at; // position -> dart
        std::map<Dart, int> spoke_pos;
        for (int vi : vidx) {
            auto [wi, j, k] = wheel_vertex.at(p.vertex_labels.at(c.verts[vi].id));
            if (k != 1) continue;
            for (Dart d : c.verts[vi].rot)
                if (gens.count(c.edges[c.edge_at.at(d)].label)) {
                    spoke_at[j] = d;
                    spoke_pos[d] = j;
                }
        }
        if ((int)spoke_at.size() != n)
            throw std::invalid_argument("component at " + least + " is not one wheel copy");

        // contour: from a generator dart, hop along wheel edges to the next one
        auto next_out = [&](Dart x) {
            Dart z = c.sigma(x);
            for (int guard = 0; guard < 12 * n + 4; guard++) {
                if (spoke_pos.count(z)) return z;
                z = c.sigma(c.alpha(z));
            }
            throw std::invalid_argument("component at " + least + " is not arranged as a wheel");
        };
        Blob blob;
        blob.id = least;
        blob.wheel = wheel;
        Dart start = spoke_at.at(0);
        Dart cur = start;
        do {
            blob.rot.push_back(cur);
            cur = next_out(cur);
        } while (cur != start && (int)blob.rot.size() <= n);
        if (cur != start || (int)blob.rot.size() != n)
            throw std::invalid_argument("component at " + least + " is not arranged as a wheel");
        // positions must run around the wheel in order, either way round
        std::vector<std::string> ord, want;
        for (Dart d : blob.rot) ord.push_back(std::to_string(spoke_pos.at(d)));
        for (int j = 0; j < n; j++) want.push_back(std::to_string(j));
        std::vector<std::string> rev(want.rbegin(), want.rend());
        if (!cyclic_equal(want, ord) && !cyclic_equal(rev, ord))
            throw std::invalid_argument("component at " + least + " is not arranged as a wheel");

        int ci = (int)collapsed.size();
        collapsed.push_back(std::move(blob));
        for (int vi : vidx) blob_of_vertex[vi] = ci;
    }

    // assemble the collapsed picture
    GPicture out;
    out.context = pres;
    Picture& q = out.picture;
    q.closed = p.picture.closed;
    q.boundary = p.picture.boundary;
    std::vector<int> order(collapsed.size());
    for (int i = 0; i < (int)order.size(); i++) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int bx) { return collapsed[a].id < collapsed[bx].id; });
    for (int ci : order) {
        q.vertices.push_back({collapsed[ci].id, collapsed[ci].rot});
        out.vertex_labels[collapsed[ci].id] = std::to_string(collapsed[ci].wheel);
    }
    for (auto& e : p.picture.edges)
        if (gens.count(p.edge_labels.at(e.id))) {
            q.edges.push_back(e);
            out.edge_labels[e.id] = p.edge_labels.at(e.id);
        }
    for (auto& l : p.picture.free_loops) {
        q.free_loops.push_back(l);
        out.edge_labels[l.id] = p.edge_labels.at(l.id);
    }

    // carry the nesting forest over: surviving darts name the new faces, and
    // each old component maps to the component of any of its survivors
    Chart cq = chart_of(q, nullptr);
    auto new_comps = dart_components(cq);
    std::map<Dart, std::pair<std::string, int>> new_face_of_dart;
    std::map<Dart, std::string> new_comp_of_dart;
    for (auto& ci : new_comps)
        for (auto& orbit : ci.faces)
            for (Dart d : orbit) {
                new_face_of_dart[d] = {ci.rep, orbit.front()};
                new_comp_of_dart[d] = ci.rep;
            }
    std::set<std::string> loop_ids;
    for (auto& l : q.free_loops) loop_ids.insert(l.id);
    auto remap_ref = [&](const FaceRef& r) -> FaceRef {
        if (loop_ids.count(r.component)) return r;
        auto old = dart_components(c);
        for (auto& ci : old) {
            if (ci.rep != r.component) continue;
            for (auto& orbit : ci.faces) {
                if (orbit.front() != r.face) continue;
                for (Dart d : orbit)
                    if (auto it = new_face_of_dart.find(d); it != new_face_of_dart.end())
                        return {it->second.first, it->second.second};
                throw std::logic_error("a hosting face vanished in the collapse");
            }
        }
        throw std::logic_error("host face " + r.component + "/" + std::to_string(r.face) +
                               " not found");
    };
    auto remap_comp = [&](const std::string& rep) -> std::string {
        auto old = dart_components(c);
        for (auto& ci : old) {
            if (ci.rep != rep) continue;
            if (ci.has_pseudo) return "boundary";
            for (auto& orbit : ci.faces)
                for (Dart d : orbit)
                    if (auto it = new_comp_of_dart.find(d); it != new_comp_of_dart.end())
                        return it->second;
        }
        throw std::logic_error("component " + rep + " left no trace after the collapse");
    };
    for (auto& en : p.picture.nesting)
        q.nesting.push_back({remap_comp(en.component), remap_ref(en.host),
                             remap_ref({en.component, en.outer}).second});
    for (size_t i = 0; i < q.free_loops.size(); i++)
        if (q.free_loops[i].face) q.free_loops[i].face = remap_ref(*q.free_loops[i].face);
    std::sort(q.nesting.begin(), q.nesting.end(),
              [](const NestingEntry& a, const NestingEntry& bx) { return a.component < bx.component; });

    if (auto r = validate_g_labels(out); !r.ok)
        throw std::logic_error("collapse produced an invalid picture: " + r.detail);
    if (boundary_word(out) != boundary_word(p))
        throw std::logic_error("collapse changed the boundary word");
    int dot = 0;
    for (auto& [v, cv] : character(p)) {
        auto it = b.find(v);
        if (it != b.end()) dot ^= (cv & it->second & 1);
    }
    if (sign(out) != dot) throw std::logic_error("collapse changed the certified parity");
    return out;
}

// ---------------------------------------------------------------------------

std::string to_dot(const Picture& p, const std::map<std::string, std::string>& vertex_labels,
                   const std::map<std::string, std::string>& edge_labels) {
    std::ostringstream os;
    os << "graph picture {\n";
    if (!p.closed) os << "  \"boundary\" [shape=box];\n";
    auto tag = [](const std::string& id, const std::map<std::string, std::string>& m) {
        auto it = m.find(id);
        return it == m.end() ? id : id + " : " + it->second;
    };
    for (auto& v : p.vertices)
        os << "  \"" << v.id << "\" [label=\"" << tag(v.id, vertex_labels) << "\"];\n";
    for (auto& l : p.free_loops)
        os << "  \"" << l.id << "\" [shape=doublecircle, label=\"" << tag(l.id, edge_labels)
           << "\"];\n";
    std::map<Dart, std::string> at;
    for (auto& v : p.vertices)
        for (Dart d : v.rot) at[d] = v.id;
    for (Dart d : p.boundary) at[d] = "boundary";
    for (auto& e : p.edges)
        os << "  \"" << at[e.darts[0]] << "\" -- \"" << at[e.darts[1]] << "\" [label=\""
           << tag(e.id, edge_labels) << "\"];\n";
    os << "}\n";
    return os.str();
}

} // namespace ww
