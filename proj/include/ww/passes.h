#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ww/wagonwheel.h"
#include "ww/words.h"

// Embedding passes: from a free presentation over Z2 down to the wagon
// wheel.  involution_embed replaces every generator s by a pair of
// involutions via s -> (s.z1 s.z2)^k_s; with k_s even, every generator of
// the image has even multiplicity in every relation.  make_collegial
// normalizes the input, embeds with all k_s = 2, and names each designated
// involution as a fresh generator w.i.  compile chains make_collegial with
// build_wagon_wheel and choose_labelling, keeping every intermediate
// presentation for audit.

namespace ww {

// One pass's substitution: source generator -> reduced word over the target
// generators, plus where the source's designated central word went.
struct GeneratorMap {
    std::map<std::string, InvWord> images;
    InvWord j_image;
};

// Image of a free word under the map; sign -1 reverses the image block
// (all target generators are involutions).  Result is reduced.
InvWord map_word(const GeneratorMap& m, const FreeWord& w);

// First pass.  k maps generator ids to repeat counts k_s >= 1; missing
// entries default to 2.  Relations and the J word must arrive cyclically
// reduced (make_collegial normalizes before calling this).  The output
// relations are the images of the input ones, in order, followed by the
// odd relation J phi(J') pinning the central element.
std::pair<InvPresentation, GeneratorMap> involution_embed(
    const Presentation& p, const std::map<std::string, int>& k = {});

struct MakeCollegialResult {
    Presentation normalized;   // what the embedding actually consumed
    InvPresentation embedded;  // after involution_embed
    InvPresentation pres;      // final: embedded plus the named involutions
    GeneratorMap map;          // input generators -> words over pres
    std::vector<std::string> involution_ids;  // w.1, w.2, ... in input order
};

// Second pass.  Cyclically reduces the relations, drops any that vanish,
// and reduces the J word (cyclic reduction only conjugates it, which is
// harmless for a central element).  An identity J word is replaced by a
// fresh generator z with relation z.  Then involution_embed runs with all
// k_s = 2, and each involution w_i gets a fresh generator w.i and relation
// w.i phi(w_i).  The result is checked collegial before returning.
// Involution words must not reduce to the identity.
MakeCollegialResult make_collegial(const Presentation& p,
                                   const std::vector<FreeWord>& involutions);

struct CompileOptions {
    LabellingMode labelling = LabellingMode::constellation;
    // Involutive inputs are rejected when not collegial, since everything
    // downstream is designed around that; opt out to build the wheel anyway.
    bool skip_collegial_check = false;
};

struct CompilationResult {
    std::optional<Presentation> normalized;  // free-input route only
    std::vector<InvPresentation> stages;     // audit trail, final stage last
    GeneratorMap trace;                      // input generators -> wheel edges
    std::vector<std::string> involution_ids;
    WagonWheel wheel;
    VertexLabelling labelling;
    // M is the summed relation length of the final stage, s_count its
    // generator count; the wheel is rechecked against 3M and 4M + |S|.
    int M = 0;
    int s_count = 0;
    int vertex_count = 0;
    int edge_count = 0;
};

CompilationResult compile(const Presentation& p, const std::vector<FreeWord>& involutions,
                          const CompileOptions& opts = {});
// Already-involutive route: no embedding, the wheel is built directly.
CompilationResult compile(const InvPresentation& p, const CompileOptions& opts = {});

}  // namespace ww
