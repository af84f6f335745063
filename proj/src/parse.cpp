#include "ww/parse.h"

#include <set>
#include <sstream>

namespace ww {

namespace {

struct Tok {
    std::string text;
    int col; // 1-based start column
};

// Strip comment, split on whitespace, remember columns.
std::vector<Tok> lex_line(const std::string& raw) {
    std::string line = raw;
    if (auto h = line.find('#'); h != std::string::npos) line = line.substr(0, h);
    std::vector<Tok> toks;
    size_t i = 0;
    while (i < line.size()) {
        if (isspace((unsigned char)line[i])) {
            i++;
            continue;
        }
        size_t j = i;
        while (j < line.size() && !isspace((unsigned char)line[j])) j++;
        toks.push_back({line.substr(i, j - i), (int)i + 1});
        i = j;
    }
    return toks;
}

void check_name(const Tok& t, int line) {
    for (char c : t.text)
        if (c == '^' || c == ':')
            throw parse_error(line, t.col, "bad character '" + std::string(1, c) +
                                               "' in name: " + t.text);
}

} // namespace

AnyPresentation parse_presentation(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;

    bool involutive = false, have_mode = false;
    bool have_gens = false, have_j = false;
    std::vector<std::string> generators;
    std::set<std::string> gen_set;
    std::vector<FreeWord> free_rels;
    std::vector<InvWord> inv_rels;
    FreeWord j_word;

    while (std::getline(in, raw)) {
        lineno++;
        auto toks = lex_line(raw);
        if (toks.empty()) continue;

        if (!have_mode) {
            if (toks.size() != 1 || (toks[0].text != "presentation" && toks[0].text != "invpresentation"))
                throw parse_error(lineno, toks[0].col,
                                  "expected 'presentation' or 'invpresentation'");
            involutive = toks[0].text == "invpresentation";
            have_mode = true;
            continue;
        }

        const std::string& key = toks[0].text;
        if (key == "gens:") {
            if (have_gens) throw parse_error(lineno, toks[0].col, "duplicate gens: line");
            have_gens = true;
            for (size_t i = 1; i < toks.size(); i++) {
                check_name(toks[i], lineno);
                if (involutive && toks[i].text == "J")
                    throw parse_error(lineno, toks[i].col,
                                      "reserved token J declared as generator");
                if (!gen_set.insert(toks[i].text).second)
                    throw parse_error(lineno, toks[i].col, "duplicate generator: " + toks[i].text);
                generators.push_back(toks[i].text);
            }
        } else if (key == "J:") {
            if (involutive) throw parse_error(lineno, toks[0].col, "J: line in involutive mode");
            if (!have_gens) throw parse_error(lineno, toks[0].col, "J: line before gens:");
            if (have_j) throw parse_error(lineno, toks[0].col, "duplicate J: line");
            have_j = true;
            for (size_t i = 1; i < toks.size(); i++) {
                std::string t = toks[i].text;
                int sign = 1;
                if (t.size() > 2 && t.substr(t.size() - 2) == "^-") {
                    sign = -1;
                    t = t.substr(0, t.size() - 2);
                }
                if (!gen_set.count(t))
                    throw parse_error(lineno, toks[i].col, "undeclared letter: " + t);
                j_word.push_back({t, sign});
            }
        } else if (key == "rel:") {
            if (!have_gens) throw parse_error(lineno, toks[0].col, "rel: line before gens:");
            if (involutive) {
                InvWord r;
                size_t i = 1;
                if (i < toks.size() && toks[i].text == "J") {
                    r.parity = 1;
                    i++;
                }
                for (; i < toks.size(); i++) {
                    if (toks[i].text == "J")
                        throw parse_error(lineno, toks[i].col,
                                          "J may only appear as the leading token of a relation");
                    if (!gen_set.count(toks[i].text))
                        throw parse_error(lineno, toks[i].col,
                                          "undeclared letter: " + toks[i].text);
                    r.letters.push_back(toks[i].text);
                }
                inv_rels.push_back(std::move(r));
            } else {
                FreeWord r;
                for (size_t i = 1; i < toks.size(); i++) {
                    std::string t = toks[i].text;
                    int sign = 1;
                    if (t.size() > 2 && t.substr(t.size() - 2) == "^-") {
                        sign = -1;
                        t = t.substr(0, t.size() - 2);
                    }
                    if (!gen_set.count(t))
                        throw parse_error(lineno, toks[i].col, "undeclared letter: " + t);
                    r.push_back({t, sign});
                }
                free_rels.push_back(std::move(r));
            }
        } else {
            throw parse_error(lineno, toks[0].col, "unknown directive: " + key);
        }
    }

    if (!have_mode) throw parse_error(lineno ? lineno : 1, 1, "empty input");
    if (!have_gens) throw parse_error(lineno, 1, "missing gens: line");
    if (!involutive && !have_j) throw parse_error(lineno, 1, "missing J: line");

    if (involutive) return InvPresentation{std::move(generators), std::move(inv_rels)};
    return Presentation{std::move(generators), std::move(free_rels), std::move(j_word)};
}

namespace {

void emit_tokens(std::ostringstream& os, const FreeWord& w) {
    for (const auto& l : w) {
        os << ' ' << l.gen;
        if (l.sign < 0) os << "^-";
    }
}

} // namespace

std::string serialize(const Presentation& p) {
    std::ostringstream os;
    os << "presentation\ngens:";
    for (const auto& g : p.generators) os << ' ' << g;
    os << "\nJ:";
    emit_tokens(os, p.j_word);
    os << '\n';
    for (const auto& r : p.relations) {
        os << "rel:";
        emit_tokens(os, r);
        os << '\n';
    }
    return os.str();
}

std::string serialize(const InvPresentation& p) {
    std::ostringstream os;
    os << "invpresentation\ngens:";
    for (const auto& g : p.generators) os << ' ' << g;
    os << '\n';
    for (const auto& r : p.relations) {
        os << "rel:";
        if (r.parity) os << " J";
        for (const auto& l : r.letters) os << ' ' << l;
        os << '\n';
    }
    return os.str();
}

std::string serialize(const AnyPresentation& p) {
    return std::visit([](const auto& q) { return serialize(q); }, p);
}

} // namespace ww
