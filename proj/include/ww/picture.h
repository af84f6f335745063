#pragma once
// Planar pictures as labelled combinatorial maps.  A picture is a rotation
// system: every edge owns two darts, every dart sits in exactly one vertex
// rotation (counter-clockwise) or on the disc boundary, and faces are the
// orbits of dart -> successor-of-partner.  The disc boundary acts as one
// extra vertex whose rotation is the reversed boundary order; closed
// pictures have no boundary and are checked as sphere maps.  Disconnected
// pictures carry an explicit nesting forest saying which face of which
// component hosts each of the others.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ww/hypergraph.h"
#include "ww/wagonwheel.h"
#include "ww/words.h"

namespace ww {

using Dart = int; // strictly positive; 0 never names a dart

struct PictureVertex {
    std::string id;
    std::vector<Dart> rot; // incident darts, counter-clockwise
    bool operator==(const PictureVertex&) const = default;
};

struct PictureEdge {
    std::string id;
    std::array<Dart, 2> darts;
    bool operator==(const PictureEdge&) const = default;
};

// Names one face of one component.  `component` is a component
// representative: the reserved id "boundary" for the component holding the
// disc boundary, the smallest vertex id otherwise, or a free loop's id.
// `face` is the smallest dart on the face's orbit; 0 means the inside of a
// free loop (or the lone face of an isolated vertex, which can host
// nothing), 1 the outside of a free loop that is the root of a closed
// picture.
struct FaceRef {
    std::string component;
    int face = 0;
    bool operator==(const FaceRef&) const = default;
    auto operator<=>(const FaceRef&) const = default;
};

// An edge with no darts: a closed curve meeting nothing.  `face` says which
// face it floats in; only the root loop of a closed picture has none.
struct FreeLoop {
    std::string id;
    std::optional<FaceRef> face;
    bool operator==(const FreeLoop&) const = default;
};

// Hosting record for one non-root component: it floats in `host`, and its
// own face toward the host is `outer` (same key scheme as FaceRef::face).
struct NestingEntry {
    std::string component;
    FaceRef host;
    int outer = 0;
    bool operator==(const NestingEntry&) const = default;
};

struct Picture {
    bool closed = true;
    std::vector<PictureVertex> vertices;
    std::vector<PictureEdge> edges;
    std::vector<Dart> boundary; // counter-clockwise; empty iff closed
    std::vector<FreeLoop> free_loops;
    std::vector<NestingEntry> nesting;

    bool operator==(const Picture&) const = default;
    int size() const { return static_cast<int>(vertices.size()); } // vertex count
};

struct PictureReport {
    bool ok = true;
    std::string detail;
};

// Dart bookkeeping, Euler characteristic 2 per component (boundary
// pseudo-vertex included), and nesting forest consistency: exactly one root,
// host faces exist and are owned by their component (never its outer face),
// no hosting cycles, nothing hosted at an isolated vertex.
PictureReport validate(const Picture& p);

// The face structure of a valid picture, one entry per dart-bearing
// component plus one per isolated vertex.  faces[k] lists a face orbit;
// the face key of faces[k] is its smallest dart.  Components are ordered
// boundary first, then by representative.
struct ComponentFaces {
    std::string rep;
    bool has_pseudo = false;            // holds the disc boundary
    std::vector<std::string> vertices;  // declaration order
    std::vector<std::string> edges;     // declaration order
    std::vector<std::vector<Dart>> faces;
};
std::vector<ComponentFaces> face_structure(const Picture& p);

// Labelled pictures.  Vertex labels name relations by decimal index into
// context.relations (G) or hypergraph vertices (H); edge and free-loop
// labels name generators (G) or hypergraph edges (H).
struct GPicture {
    Picture picture;
    std::map<std::string, std::string> vertex_labels;
    std::map<std::string, std::string> edge_labels;
    InvPresentation context;
};
struct HPicture {
    Picture picture;
    std::map<std::string, std::string> vertex_labels;
    std::map<std::string, std::string> edge_labels;
    Hypergraph context;
};

// Structure plus label conditions.  G: each vertex's incident edge labels,
// read counter-clockwise, form a rotation of its relation's letters or of
// their reversal.  H: at each picture-vertex the number of incident darts
// labelled e equals the incidence A_{h(v)e} for every hypergraph edge e.
PictureReport validate_g_labels(const GPicture& p);
PictureReport validate_h_labels(const HPicture& p);

// Boundary edge labels, counter-clockwise; empty for closed pictures.
std::vector<std::string> boundary_word(const GPicture& p);
std::vector<std::string> boundary_word(const HPicture& p);

// Parity of the number of vertices labelled by an odd relation.
int sign(const GPicture& p);

// ch(P): hypergraph vertex -> number of picture-vertices labelled by it,
// mod 2.  Every vertex of the context appears as a key.
using CharacterVector = std::map<std::string, int>;
CharacterVector character(const HPicture& p);

// Whether the picture proves w: the boundary word equals w's letters as a
// cyclic word (rotations only) and the parity matches — sign(P) for
// G-pictures, ch(P)·b for H-pictures.  Letters outside the context throw
// std::invalid_argument.
bool certifies(const GPicture& p, const InvWord& w);
bool certifies(const HPicture& p, const InvWord& w, const VertexLabelling& b);

// Applies a generalized morphism to a picture over its source: erased
// edges are deleted, edges relabelled, erased vertices removed with their
// darts re-joined pairwise ((1,2),(3,4),... in rotation order starting
// after the lowest dart — the canonical non-crossing choice), vertices
// relabelled.  The result is a picture over the target with size at most
// size(p) and boundary word the letterwise image with erasures dropped.
HPicture apply_morphism(const GeneralizedMorphism& m, const HPicture& p);

// Removes every free loop; boundary, character and size are untouched.
// Components hosted inside a deleted loop move to the loop's own face.
Picture delete_free_loops(const Picture& p);
HPicture delete_free_loops(const HPicture& p);

// P[sub]: apply the restriction morphism of a closed subhypergraph.  When
// sub is a cycle and no boundary edge of p is labelled in it, every
// component of the result is checked to be a cycle of the same labels.
HPicture restrict_to_closed(const HPicture& p, const Subhypergraph& sub);

// One component of the subpicture carrying C's labels.  A free loop
// labelled in E(C) forms its own entry.  simple_cycle: the component is a
// single closed curve.  facial: it bounds a face of the ambient picture
// with nothing hosted inside.  cover: every edge joins two vertices with
// distinct labels (free loops never qualify).  copy: the labelling is a
// bijection onto C.
struct CycleClassification {
    std::vector<std::string> vertices; // cyclic order when simple_cycle
    std::vector<std::string> edges;
    bool free_loop = false;
    bool simple_cycle = false;
    bool facial = false;
    bool cover = false;
    bool copy = false;
};
std::vector<CycleClassification> classify_cycles(const HPicture& p, const Subhypergraph& C);

// The standard picture of wheel i: one picture-vertex per wheel vertex,
// edges realizing every wheel incidence, and one boundary spoke per
// position, so bd = s_{i,0} ... s_{i,n-1} and ch(P)·b = a_i for any
// labelling b of w.
HPicture wagon_relation_picture(const WagonWheel& w, const VertexLabelling& b, int i);

// Collapses a picture over the wagon wheel of `pres` to a picture over the
// presentation itself.  Requires every boundary edge to be a generator edge
// and every hub/sector cycle of the wheel to appear only as facial copies;
// each component of the non-generator part is then verified to be a whole
// wheel, one vertex per wheel position, and contracts to a single vertex
// labelled by its relation.  Boundary is unchanged and the result's sign is
// ch(p)·b.  Violations throw std::invalid_argument naming the offender.
GPicture collapse_facial_components(const HPicture& p, const InvPresentation& pres,
                                    const VertexLabelling& b);

// GraphViz rendering; labelled vertices/edges show "id:label".
std::string to_dot(const Picture& p, const std::map<std::string, std::string>& vertex_labels = {},
                   const std::map<std::string, std::string>& edge_labels = {});

} // namespace ww
