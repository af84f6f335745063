#pragma once

#include <stdexcept>
#include <string>
#include <variant>

#include "ww/words.h"

// Line-oriented text format for presentations. '#' starts a comment, blank
// lines are skipped. First significant line picks the mode:
//
//   presentation            | invpresentation
//   gens: a b c d J x       | gens: x y z u v
//   J: J                    | rel: x y x z
//   rel: a b a^- b^- b^-    | rel: J x y
//
// Free mode uses tokens g / g^- and requires one J: line (possibly empty).
// Involutive mode uses bare generator tokens with an optional leading literal
// J per relation; the token J is reserved and cannot be a generator there.

namespace ww {

struct parse_error : std::runtime_error {
    int line, col;
    std::string msg;
    parse_error(int line_, int col_, const std::string& m)
        : std::runtime_error("line " + std::to_string(line_) + ", col " + std::to_string(col_) +
                             ": " + m),
          line(line_), col(col_), msg(m) {}
};

using AnyPresentation = std::variant<Presentation, InvPresentation>;

AnyPresentation parse_presentation(const std::string& text);

std::string serialize(const Presentation& p);
std::string serialize(const InvPresentation& p);
std::string serialize(const AnyPresentation& p);

} // namespace ww
