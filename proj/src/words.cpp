#include "ww/words.h"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>

namespace ww {

std::string to_string(const FreeWord& w) {
    if (w.empty()) return "1";
    std::ostringstream os;
    for (size_t i = 0; i < w.size(); i++) {
        if (i) os << ' ';
        os << w[i].gen;
        if (w[i].sign < 0) os << "^-";
    }
    return os.str();
}

std::string to_string(const InvWord& w) {
    std::ostringstream os;
    if (w.parity) os << 'J';
    for (size_t i = 0; i < w.letters.size(); i++) {
        if (w.parity || i) os << ' ';
        os << w.letters[i];
    }
    if (!w.parity && w.letters.empty()) os << '1';
    return os.str();
}

InvWord reduce(InvWord w) {
    std::vector<std::string> out;
    for (auto& s : w.letters) {
        if (!out.empty() && out.back() == s)
            out.pop_back();
        else
            out.push_back(std::move(s));
    }
    w.letters = std::move(out);
    return w;
}

InvWord cyclically_reduce(InvWord w) {
    w = reduce(std::move(w));
    // A contiguous subword of a reduced word stays reduced, so peeling is all
    // that is left to do.
    size_t lo = 0, hi = w.letters.size();
    while (hi - lo >= 2 && w.letters[lo] == w.letters[hi - 1]) {
        lo++;
        hi--;
    }
    w.letters = std::vector<std::string>(w.letters.begin() + lo, w.letters.begin() + hi);
    return w;
}

bool is_reduced(const InvWord& w) {
    for (size_t i = 0; i + 1 < w.letters.size(); i++)
        if (w.letters[i] == w.letters[i + 1]) return false;
    return true;
}

bool is_cyclically_reduced(const InvWord& w) {
    if (!is_reduced(w)) return false;
    return w.letters.size() < 2 || w.letters.front() != w.letters.back();
}

FreeWord reduce(FreeWord w) {
    FreeWord out;
    for (auto& l : w) {
        if (!out.empty() && out.back().gen == l.gen && out.back().sign == -l.sign)
            out.pop_back();
        else
            out.push_back(std::move(l));
    }
    return out;
}

FreeWord cyclically_reduce(FreeWord w) {
    w = reduce(std::move(w));
    size_t lo = 0, hi = w.size();
    while (hi - lo >= 2 && w[lo].gen == w[hi - 1].gen && w[lo].sign == -w[hi - 1].sign) {
        lo++;
        hi--;
    }
    return FreeWord(w.begin() + lo, w.begin() + hi);
}

bool is_reduced(const FreeWord& w) {
    for (size_t i = 0; i + 1 < w.size(); i++)
        if (w[i].gen == w[i + 1].gen && w[i].sign == -w[i + 1].sign) return false;
    return true;
}

bool is_cyclically_reduced(const FreeWord& w) {
    if (!is_reduced(w)) return false;
    if (w.size() < 2) return true;
    return !(w.front().gen == w.back().gen && w.front().sign == -w.back().sign);
}

FreeWord inverse(const FreeWord& w) {
    FreeWord out(w.rbegin(), w.rend());
    for (auto& l : out) l.sign = -l.sign;
    return out;
}

std::vector<InvWord> symmetrize(const std::vector<InvWord>& rels) {
    std::vector<InvWord> out;
    for (const auto& r : rels) {
        size_t n = r.letters.size();
        if (n == 0) {
            out.push_back(r);
            continue;
        }
        for (size_t i = 0; i < n; i++) {
            InvWord rot{r.parity, {}};
            InvWord rev{r.parity, {}};
            for (size_t k = 0; k < n; k++) {
                rot.letters.push_back(r.letters[(i + k) % n]);
                rev.letters.push_back(r.letters[(i + n - k) % n]);
            }
            out.push_back(std::move(rot));
            out.push_back(std::move(rev));
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

int multiplicity(const std::string& s, const InvWord& r) {
    return (int)std::count(r.letters.begin(), r.letters.end(), s);
}

std::set<std::pair<std::string, std::string>> adjacency_pairs(const InvWord& r) {
    std::set<std::pair<std::string, std::string>> out;
    size_t n = r.letters.size();
    if (n < 2) return out;
    auto add = [&](const std::string& a, const std::string& b) {
        if (a == b) return;
        out.insert(a < b ? std::make_pair(a, b) : std::make_pair(b, a));
    };
    for (size_t i = 0; i + 1 < n; i++) add(r.letters[i], r.letters[i + 1]);
    add(r.letters.front(), r.letters.back());
    return out;
}

CollegialReport is_collegial(const InvPresentation& p) {
    CollegialReport rep;
    for (const auto& r : p.relations) {
        if (!is_cyclically_reduced(r)) {
            rep.ok = false;
            rep.condition = "a";
            rep.detail = "relation not cyclically reduced: " + to_string(r);
            rep.r0 = r;
            return rep;
        }
    }
    for (const auto& r : p.relations) {
        if (r.letters.size() <= 1) {
            rep.ok = false;
            rep.condition = "b";
            rep.detail = "relation of length " + std::to_string(r.letters.size()) +
                         " not allowed: " + to_string(r);
            rep.r0 = r;
            return rep;
        }
    }
    // Condition (c). Precompute odd-multiplicity witnesses per generator.
    std::map<std::string, const InvWord*> odd_in; // generator -> some r with odd mult
    for (const auto& g : p.generators) {
        for (const auto& r : p.relations) {
            if (multiplicity(g, r) % 2 == 1) {
                odd_in[g] = &r;
                break;
            }
        }
    }
    for (const auto& g : p.generators) {
        auto it = odd_in.find(g);
        if (it == odd_in.end()) continue;
        for (const auto& r1 : p.relations) {
            for (const auto& [a, b] : adjacency_pairs(r1)) {
                if (a != g && b != g) continue;
                const std::string& t = (a == g) ? b : a;
                auto bad = odd_in.find(t);
                if (bad != odd_in.end()) {
                    rep.ok = false;
                    rep.condition = "c";
                    rep.s = g;
                    rep.t = t;
                    rep.r0 = *it->second;
                    rep.r1 = r1;
                    rep.r_bad = *bad->second;
                    rep.detail = "mult(" + g + ";" + to_string(rep.r0) + ") is odd, " + t +
                                 " is adjacent to " + g + " in " + to_string(r1) + ", and mult(" +
                                 t + ";" + to_string(rep.r_bad) + ") is odd";
                    return rep;
                }
            }
        }
    }
    return rep;
}

InvPresentation even_part(const InvPresentation& p) {
    InvPresentation out = p;
    for (auto& r : out.relations) r.parity = 0;
    return out;
}

std::string validate(const InvPresentation& p) {
    std::set<std::string> gens;
    for (const auto& g : p.generators) {
        if (g == "J") return "reserved token J declared as generator";
        if (!gens.insert(g).second) return "duplicate generator: " + g;
    }
    for (const auto& r : p.relations)
        for (const auto& l : r.letters)
            if (!gens.count(l)) return "undeclared letter: " + l;
    return "";
}

std::string validate(const Presentation& p) {
    std::set<std::string> gens;
    for (const auto& g : p.generators)
        if (!gens.insert(g).second) return "duplicate generator: " + g;
    for (const auto& r : p.relations)
        for (const auto& l : r)
            if (!gens.count(l.gen)) return "undeclared letter: " + l.gen;
    for (const auto& l : p.j_word)
        if (!gens.count(l.gen)) return "undeclared letter in J word: " + l.gen;
    return "";
}

} // namespace ww
