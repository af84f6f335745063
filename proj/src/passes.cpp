#include "ww/passes.h"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

#include "ww/wagonwheel.h"
#include "ww/words.h"

namespace ww {

namespace {

// z-pair names for a source generator
std::string z1(const std::string& s) { return s + ".z1"; }
std::string z2(const std::string& s) { return s + ".z2"; }

}  // namespace

InvWord map_word(const GeneratorMap& m, const FreeWord& w) {
    InvWord out;
    for (const auto& l : w) {
        auto it = m.images.find(l.gen);
        if (it == m.images.end())
            throw std::invalid_argument("map_word: no image for generator " + l.gen);
        InvWord img = it->second;
        if (l.sign < 0) std::reverse(img.letters.begin(), img.letters.end());
        out.parity ^= img.parity;
        out.letters.insert(out.letters.end(), img.letters.begin(), img.letters.end());
    }
    return reduce(out);
}

std::pair<InvPresentation, GeneratorMap> involution_embed(const Presentation& p,
                                                          const std::map<std::string, int>& k) {
    if (auto msg = validate(p); !msg.empty()) throw std::invalid_argument("involution_embed: " + msg);
    std::set<std::string> declared(p.generators.begin(), p.generators.end());
    for (const auto& [g, kg] : k) {
        if (!declared.count(g))
            throw std::invalid_argument("involution_embed: repeat count for undeclared generator " +
                                        g);
        if (kg < 1)
            throw std::invalid_argument("involution_embed: repeat count for " + g +
                                        " must be at least 1, got " + std::to_string(kg));
    }
    for (std::size_t i = 0; i < p.relations.size(); i++)
        if (!is_cyclically_reduced(p.relations[i]))
            throw std::invalid_argument("involution_embed: relation " + std::to_string(i) +
                                        " is not cyclically reduced");
    if (!is_cyclically_reduced(p.j_word))
        throw std::invalid_argument("involution_embed: the J word is not cyclically reduced");

    InvPresentation out;
    GeneratorMap gm;
    for (const auto& s : p.generators) {
        out.generators.push_back(z1(s));
        out.generators.push_back(z2(s));
        int reps = k.count(s) ? k.at(s) : 2;
        InvWord img;
        for (int t = 0; t < reps; t++) {
            img.letters.push_back(z1(s));
            img.letters.push_back(z2(s));
        }
        gm.images[s] = img;
    }
    for (const auto& r : p.relations) out.relations.push_back(map_word(gm, r));
    gm.j_image = map_word(gm, p.j_word);
    InvWord jrel = gm.j_image;
    jrel.parity = 1;
    out.relations.push_back(jrel);

    // Images of cyclically reduced words are cyclically reduced (the z1/z2
    // alternation can only break at a letter next to its own inverse).
    // Downstream leans on this, so check rather than assume.
    for (const auto& r : out.relations)
        if (!is_cyclically_reduced(r))
            throw std::logic_error("involution_embed: produced a non-cyclically-reduced relation " +
                                   to_string(r));
    if (auto msg = validate(out); !msg.empty()) throw std::logic_error("involution_embed: " + msg);
    return {out, gm};
}

MakeCollegialResult make_collegial(const Presentation& p,
                                   const std::vector<FreeWord>& involutions) {
    if (auto msg = validate(p); !msg.empty()) throw std::invalid_argument("make_collegial: " + msg);

    MakeCollegialResult res;
    Presentation& norm = res.normalized;
    norm.generators = p.generators;
    for (const auto& r : p.relations) {
        FreeWord w = cyclically_reduce(reduce(r));
        if (!w.empty()) norm.relations.push_back(w);
    }
    norm.j_word = reduce(p.j_word);
    if (norm.j_word.empty()) {
        // The central element is the identity; mint a generator z with
        // relation z and use that as its representative.
        std::string z = "z";
        std::set<std::string> taken(norm.generators.begin(), norm.generators.end());
        for (int t = 0; taken.count(z); t++) z = "z." + std::to_string(t);
        norm.generators.push_back(z);
        norm.relations.push_back({{z, 1}});
        norm.j_word = {{z, 1}};
    } else {
        // cyclic reduction conjugates, and conjugates of a central element
        // are that element
        norm.j_word = cyclically_reduce(norm.j_word);
    }

    std::set<std::string> declared(norm.generators.begin(), norm.generators.end());
    std::vector<FreeWord> reps;
    for (std::size_t i = 0; i < involutions.size(); i++) {
        FreeWord w = reduce(involutions[i]);
        if (w.empty())
            throw std::invalid_argument("make_collegial: involution " + std::to_string(i + 1) +
                                        " reduces to the identity");
        for (const auto& l : w)
            if (!declared.count(l.gen))
                throw std::invalid_argument("make_collegial: involution " + std::to_string(i + 1) +
                                            " uses undeclared letter " + l.gen);
        reps.push_back(w);
    }

    auto [embedded, gm] = involution_embed(norm);
    res.embedded = embedded;
    res.pres = embedded;
    res.map = gm;
    for (std::size_t i = 0; i < reps.size(); i++) {
        std::string wi = "w." + std::to_string(i + 1);
        res.pres.generators.push_back(wi);
        InvWord rel;
        rel.letters.push_back(wi);
        InvWord img = map_word(gm, reps[i]);
        rel.letters.insert(rel.letters.end(), img.letters.begin(), img.letters.end());
        res.pres.relations.push_back(rel);
        res.involution_ids.push_back(wi);
    }

    // validate() rejects duplicate generator ids, so this doubles as the
    // fresh-name collision check
    if (auto msg = validate(res.pres); !msg.empty())
        throw std::logic_error("make_collegial: " + msg);
    CollegialReport rep = is_collegial(res.pres);
    if (!rep.ok)
        throw std::logic_error("make_collegial: output fails the collegial check (condition " +
                               rep.condition + ": " + rep.detail + ")");
    return res;
}

namespace {

void finish(CompilationResult& r, LabellingMode mode) {
    r.labelling = choose_labelling(r.wheel, mode);
    const InvPresentation& fin = r.stages.back();
    r.M = 0;
    for (const auto& rel : fin.relations) r.M += static_cast<int>(rel.length());
    r.s_count = static_cast<int>(fin.generators.size());
    r.vertex_count = static_cast<int>(r.wheel.hypergraph.vertices.size());
    r.edge_count = static_cast<int>(r.wheel.hypergraph.edges.size());
    if (r.vertex_count != 3 * r.M || r.edge_count != 4 * r.M + r.s_count)
        throw std::logic_error("compile: wheel size disagrees with the 3M / 4M+|S| counts");
}

}  // namespace

CompilationResult compile(const Presentation& p, const std::vector<FreeWord>& involutions,
                          const CompileOptions& opts) {
    MakeCollegialResult mc = make_collegial(p, involutions);
    CompilationResult out;
    out.normalized = mc.normalized;
    out.stages = {mc.embedded, mc.pres};
    out.trace = mc.map;
    out.involution_ids = mc.involution_ids;
    out.wheel = build_wagon_wheel(mc.pres);
    finish(out, opts.labelling);
    return out;
}

CompilationResult compile(const InvPresentation& p, const CompileOptions& opts) {
    if (!opts.skip_collegial_check) {
        CollegialReport rep = is_collegial(p);
        if (!rep.ok)
            throw std::invalid_argument("compile: presentation is not collegial (condition " +
                                        rep.condition + ": " + rep.detail +
                                        "); skip the collegial check to build the wheel anyway");
    }
    CompilationResult out;
    out.stages = {p};
    for (const auto& g : p.generators) out.trace.images[g] = InvWord{0, {g}};
    out.trace.j_image = InvWord{1, {}};
    out.wheel = build_wagon_wheel(p);
    finish(out, opts.labelling);
    return out;
}

}  // namespace ww
