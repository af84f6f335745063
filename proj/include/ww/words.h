#pragma once

#include <compare>
#include <set>
#include <string>
#include <utility>
#include <vector>

// Words and presentations. Two word flavours:
//  - FreeWord: word in a free group, letters carry a sign.
//  - InvWord: word in F2(S) x Z2, i.e. every generator is an involution and
//    there is a central J generating the Z2 factor. The J-exponent is kept
//    as a separate parity bit, letters are bare generator names.

namespace ww {

struct FreeLetter {
    std::string gen;
    int sign = 1; // +1 or -1
    auto operator<=>(const FreeLetter&) const = default;
};

using FreeWord = std::vector<FreeLetter>;

struct InvWord {
    int parity = 0; // exponent of J, mod 2
    std::vector<std::string> letters;
    auto operator<=>(const InvWord&) const = default;
    size_t length() const { return letters.size(); }
};

// Free presentation <S : R> with a designated word representing the central
// element J_G (may be empty = identity).
struct Presentation {
    std::vector<std::string> generators; // declaration order
    std::vector<FreeWord> relations;
    FreeWord j_word;
};

// Presentation by involutions Inv<S : R>. "J" is a reserved token, never a
// generator id here.
struct InvPresentation {
    std::vector<std::string> generators;
    std::vector<InvWord> relations;
};

std::string to_string(const FreeWord& w);
std::string to_string(const InvWord& w);

// Cancel adjacent equal letters (s s = 1); parity untouched.
InvWord reduce(InvWord w);
// Peel matching first/last letters off the reduced word until first != last.
InvWord cyclically_reduce(InvWord w);
bool is_reduced(const InvWord& w);
bool is_cyclically_reduced(const InvWord& w);

// Free-group versions (cancel s s^-1 / s^-1 s; cyclic peel of inverse pairs).
FreeWord reduce(FreeWord w);
FreeWord cyclically_reduce(FreeWord w);
bool is_reduced(const FreeWord& w);
bool is_cyclically_reduced(const FreeWord& w);
FreeWord inverse(const FreeWord& w);

// All rotations plus all reversed rotations of each relation, parities kept.
// Result is duplicate-free, sorted (set semantics with a stable order).
std::vector<InvWord> symmetrize(const std::vector<InvWord>& rels);

// Occurrence count of s among r's letters (r assumed reduced).
int multiplicity(const std::string& s, const InvWord& r);

// Unordered pairs {s_i, s_{i+1}} plus the wraparound pair {s_1, s_n},
// distinct letters only.
std::set<std::pair<std::string, std::string>> adjacency_pairs(const InvWord& r);

struct CollegialReport {
    bool ok = true;
    // One of "a", "b", "c" when not ok.
    std::string condition;
    std::string detail;
    // Witnesses for a condition (c) violation: mult(s;r0) odd, t adjacent to
    // s in r1, mult(t;r_bad) odd.
    std::string s, t;
    InvWord r0, r1, r_bad;
};

// Conditions: (a) finite and cyclically reduced, (b) no relation of length
// 0 or 1 (either parity), (c) generators of odd multiplicity are never
// adjacent to generators of odd multiplicity.
CollegialReport is_collegial(const InvPresentation& p);

// Same generators, every relation's parity forced to 0.
InvPresentation even_part(const InvPresentation& p);

// Structural sanity: letters declared, generator ids unique, J reserved.
// Returns empty string when fine, else a message.
std::string validate(const InvPresentation& p);
std::string validate(const Presentation& p);

} // namespace ww
