#include "ww/json_io.h"

#include <algorithm>
#include <stdexcept>

namespace ww {

std::string pretty(const json& j) { return j.dump(2) + "\n"; }

json to_json(const Hypergraph& h) {
    json j;
    j["vertices"] = json::array();
    for (auto& v : h.vertices) j["vertices"].push_back({{"id", v}, {"b", h.label(v)}});
    j["edges"] = h.edges;
    j["incidence"] = json::array();
    for (auto& v : h.vertices)
        for (auto& e : h.edges)
            if (int a = h.inc(v, e); a > 0) j["incidence"].push_back({v, e, a});
    return j;
}

Hypergraph hypergraph_from_json(const json& j) {
    if (!j.is_object()) throw std::runtime_error("hypergraph: expected a JSON object");
    Hypergraph h;
    if (!j.contains("vertices") || !j["vertices"].is_array())
        throw std::runtime_error("hypergraph: missing \"vertices\" array");
    for (auto& jv : j["vertices"]) {
        if (jv.is_string()) {
            h.vertices.push_back(jv.get<std::string>());
            continue;
        }
        if (!jv.is_object() || !jv.contains("id") || !jv["id"].is_string())
            throw std::runtime_error("hypergraph: vertex entries need an \"id\" string");
        std::string id = jv["id"].get<std::string>();
        h.vertices.push_back(id);
        if (jv.contains("b")) {
            if (!jv["b"].is_number_integer())
                throw std::runtime_error("hypergraph: vertex " + id + ": \"b\" must be 0 or 1");
            int bv = jv["b"].get<int>();
            if (bv != 0 && bv != 1)
                throw std::runtime_error("hypergraph: vertex " + id + ": \"b\" must be 0 or 1");
            if (bv) h.b[id] = 1;
        }
    }
    if (!j.contains("edges") || !j["edges"].is_array())
        throw std::runtime_error("hypergraph: missing \"edges\" array");
    for (auto& je : j["edges"]) {
        if (!je.is_string()) throw std::runtime_error("hypergraph: edge ids must be strings");
        h.edges.push_back(je.get<std::string>());
    }
    if (j.contains("incidence")) {
        if (!j["incidence"].is_array())
            throw std::runtime_error("hypergraph: \"incidence\" must be an array");
        for (auto& row : j["incidence"]) {
            if (!row.is_array() || row.size() != 3 || !row[0].is_string() || !row[1].is_string() ||
                !row[2].is_number_integer())
                throw std::runtime_error(
                    "hypergraph: incidence entries must be [vertex, edge, multiplicity]");
            std::string v = row[0].get<std::string>(), e = row[1].get<std::string>();
            int a = row[2].get<int>();
            if (a < 0) throw std::runtime_error("hypergraph: negative incidence for (" + v + ", " + e + ")");
            if (a > 0) h.incidence[{v, e}] += a;
        }
    }
    h.validate();
    return h;
}

json to_json(const WagonWheel& w) {
    json j = to_json(w.hypergraph);
    json idx;
    idx["generators"] = w.source.generators;
    idx["wheels"] = json::array();
    for (int i = 0; i < w.wheels(); i++) {
        const int n = w.wheel_size(i);
        json jw;
        jw["parity"] = w.wheel_parity(i);
        jw["letters"] = json::array();
        for (int p = 0; p < n; p++) jw["letters"].push_back(w.letter(i, p));
        jw["vertices"] = json::array();
        for (int p = 0; p < n; p++)
            jw["vertices"].push_back(
                {w.vertex_id(i, p, 1), w.vertex_id(i, p, 2), w.vertex_id(i, p, 3)});
        for (char fam : {'a', 'b', 'c', 'd'}) {
            json ids = json::array();
            for (int p = 0; p < n; p++) ids.push_back(w.edge_id(fam, i, p));
            jw[std::string(1, fam)] = ids;
        }
        idx["wheels"].push_back(jw);
    }
    j["index"] = idx;
    return j;
}

WagonWheel wagon_wheel_from_json(const json& j) {
    if (!j.is_object() || !j.contains("index") || !j["index"].is_object())
        throw std::runtime_error("wagon wheel: missing \"index\" block");
    const json& idx = j["index"];
    InvPresentation pres;
    if (!idx.contains("generators") || !idx["generators"].is_array())
        throw std::runtime_error("wagon wheel: index needs a \"generators\" array");
    for (auto& jg : idx["generators"]) {
        if (!jg.is_string())
            throw std::runtime_error("wagon wheel: generator ids must be strings");
        pres.generators.push_back(jg.get<std::string>());
    }
    if (!idx.contains("wheels") || !idx["wheels"].is_array())
        throw std::runtime_error("wagon wheel: index needs a \"wheels\" array");
    for (auto& jw : idx["wheels"]) {
        if (!jw.is_object() || !jw.contains("parity") || !jw["parity"].is_number_integer() ||
            !jw.contains("letters") || !jw["letters"].is_array())
            throw std::runtime_error("wagon wheel: wheel entries need \"parity\" and \"letters\"");
        InvWord r;
        r.parity = jw["parity"].get<int>() & 1;
        for (auto& jl : jw["letters"]) {
            if (!jl.is_string()) throw std::runtime_error("wagon wheel: letters must be strings");
            r.letters.push_back(jl.get<std::string>());
        }
        pres.relations.push_back(std::move(r));
    }
    Hypergraph parsed = hypergraph_from_json(j);
    WagonWheel w = build_wagon_wheel(pres);
    if (!(parsed == w.hypergraph))
        throw std::runtime_error(
            "wagon wheel: hypergraph does not match the wheel built from its index");
    if (j["index"] != to_json(w)["index"])
        throw std::runtime_error("wagon wheel: index block does not follow the id scheme");
    return w;
}

json to_json(const GeneralizedMorphism& m) {
    json j;
    j["vmap"] = json::object();
    for (auto& v : m.source.vertices) j["vmap"][v] = m.v_image(v);
    j["emap"] = json::object();
    for (auto& e : m.source.edges) j["emap"][e] = m.e_image(e);
    return j;
}

json to_json(const LinearSystem& ls) {
    json j;
    j["vars"] = ls.vars;
    j["rows"] = json::array();
    for (std::size_t r = 0; r < ls.row_ids.size(); r++) {
        json row;
        row["v"] = ls.row_ids[r];
        row["support"] = json::array();
        for (std::size_t c = 0; c < ls.vars.size(); c++)
            if (ls.a.at(r, c)) row["support"].push_back(ls.vars[c]);
        row["b"] = (int)ls.b[r];
        j["rows"].push_back(row);
    }
    return j;
}

LinearSystem linear_system_from_json(const json& j) {
    if (!j.is_object() || !j.contains("vars") || !j["vars"].is_array() || !j.contains("rows") ||
        !j["rows"].is_array())
        throw std::runtime_error("linear system: expected an object with \"vars\" and \"rows\"");
    LinearSystem ls;
    std::map<std::string, std::size_t> pos;
    for (auto& jv : j["vars"]) {
        if (!jv.is_string()) throw std::runtime_error("linear system: var ids must be strings");
        std::string id = jv.get<std::string>();
        if (pos.count(id)) throw std::runtime_error("linear system: duplicate var " + id);
        pos[id] = ls.vars.size();
        ls.vars.push_back(id);
    }
    std::set<std::string> seen_rows;
    std::vector<std::vector<std::size_t>> supports;
    for (auto& jr : j["rows"]) {
        if (!jr.is_object() || !jr.contains("v") || !jr["v"].is_string() ||
            !jr.contains("support") || !jr["support"].is_array() || !jr.contains("b") ||
            !jr["b"].is_number_integer())
            throw std::runtime_error("linear system: row entries need \"v\", \"support\", \"b\"");
        std::string v = jr["v"].get<std::string>();
        if (!seen_rows.insert(v).second)
            throw std::runtime_error("linear system: duplicate row " + v);
        int bv = jr["b"].get<int>();
        if (bv != 0 && bv != 1)
            throw std::runtime_error("linear system: row " + v + ": \"b\" must be 0 or 1");
        std::vector<std::size_t> sup;
        for (auto& je : jr["support"]) {
            if (!je.is_string())
                throw std::runtime_error("linear system: support ids must be strings");
            std::string e = je.get<std::string>();
            auto it = pos.find(e);
            if (it == pos.end())
                throw std::runtime_error("linear system: row " + v + " uses undeclared var " + e);
            if (std::find(sup.begin(), sup.end(), it->second) != sup.end())
                throw std::runtime_error("linear system: row " + v + " repeats var " + e);
            sup.push_back(it->second);
        }
        ls.row_ids.push_back(v);
        ls.b.push_back((std::uint8_t)bv);
        supports.push_back(std::move(sup));
    }
    ls.a = GF2Matrix(ls.row_ids.size(), ls.vars.size());
    for (std::size_t r = 0; r < supports.size(); r++)
        for (std::size_t c : supports[r]) ls.a.at(r, c) = 1;
    return ls;
}

json to_json(const NonlocalGame& g) {
    json j;
    j["vars"] = g.vars;
    j["rows"] = json::array();
    for (std::size_t r = 0; r < g.row_ids.size(); r++) {
        json row;
        row["v"] = g.row_ids[r];
        row["b"] = (int)g.b[r];
        row["support"] = json::array();
        for (int c : g.support[r]) row["support"].push_back(g.vars[c]);
        row["answers"] = json::array();
        for (auto& bits : g.answers[r]) {
            json ja = json::array();
            for (auto bit : bits) ja.push_back((int)bit);
            row["answers"].push_back(ja);
        }
        j["rows"].push_back(row);
    }
    j["questions"] = json::array();
    for (auto [r, c] : g.questions)
        j["questions"].push_back({{"v", g.row_ids[r]}, {"e", g.vars[c]}});
    j["bob_answers"] = {0, 1};
    j["win"] = "answers agree on the shared variable";
    j["degenerate_odd_rows"] = g.degenerate_odd_rows;
    return j;
}

json to_json(const OperatorSolution& sol) {
    json j;
    j["d"] = sol.d;
    j["tolerance"] = sol.tolerance;
    j["matrices"] = json::object();
    for (auto& [e, m] : sol.matrices) {
        json jm = json::array();
        for (auto& z : m) jm.push_back({z.real(), z.imag()});
        j["matrices"][e] = jm;
    }
    return j;
}

OperatorSolution operator_solution_from_json(const json& j) {
    if (!j.is_object() || !j.contains("d") || !j["d"].is_number_integer() ||
        !j.contains("matrices") || !j["matrices"].is_object())
        throw std::runtime_error(
            "operator solution: expected an object with \"d\" and \"matrices\"");
    OperatorSolution sol;
    sol.d = j["d"].get<int>();
    if (sol.d <= 0) throw std::runtime_error("operator solution: \"d\" must be positive");
    if (j.contains("tolerance")) {
        if (!j["tolerance"].is_number())
            throw std::runtime_error("operator solution: \"tolerance\" must be a number");
        sol.tolerance = j["tolerance"].get<double>();
    }
    for (auto& [e, jm] : j["matrices"].items()) {
        if (!jm.is_array() || jm.size() != (std::size_t)sol.d * sol.d)
            throw std::runtime_error("operator solution: matrix for " + e + " must list " +
                                     std::to_string(sol.d * sol.d) + " row-major [re, im] pairs");
        std::vector<std::complex<double>> m;
        for (auto& jz : jm) {
            if (!jz.is_array() || jz.size() != 2 || !jz[0].is_number() || !jz[1].is_number())
                throw std::runtime_error("operator solution: entries must be [re, im] pairs");
            m.push_back({jz[0].get<double>(), jz[1].get<double>()});
        }
        sol.matrices[e] = std::move(m);
    }
    return sol;
}

GeneralizedMorphism morphism_from_json(const json& j, const Hypergraph& source,
                                       const Hypergraph& target) {
    if (!j.is_object() || !j.contains("vmap") || !j.contains("emap") || !j["vmap"].is_object() ||
        !j["emap"].is_object())
        throw std::runtime_error("morphism: expected an object with \"vmap\" and \"emap\"");
    GeneralizedMorphism m{source, target, {}, {}};
    for (auto& [v, jw] : j["vmap"].items()) {
        if (!jw.is_string()) throw std::runtime_error("morphism: vmap values must be strings");
        if (!source.has_vertex(v)) throw std::runtime_error("morphism: vmap names undeclared vertex " + v);
        m.vmap[v] = jw.get<std::string>();
    }
    for (auto& [e, jf] : j["emap"].items()) {
        if (!jf.is_string()) throw std::runtime_error("morphism: emap values must be strings");
        if (!source.has_edge(e)) throw std::runtime_error("morphism: emap names undeclared edge " + e);
        m.emap[e] = jf.get<std::string>();
    }
    for (auto& v : source.vertices)
        if (!m.vmap.count(v)) throw std::runtime_error("morphism: vmap misses vertex " + v);
    for (auto& e : source.edges)
        if (!m.emap.count(e)) throw std::runtime_error("morphism: emap misses edge " + e);
    return m;
}

} // namespace ww
