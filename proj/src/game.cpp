#include "ww/game.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>

namespace ww {

namespace {

int label_of(const VertexLabelling& b, const std::string& v) {
    auto it = b.find(v);
    return it == b.end() ? 0 : (it->second & 1);
}

} // namespace

LinearSystem to_linear_system(const Hypergraph& h, const VertexLabelling& b) {
    LinearSystem ls;
    ls.vars = h.edges;
    ls.row_ids = h.vertices;
    ls.a = GF2Matrix(h.vertices.size(), h.edges.size());
    for (std::size_t r = 0; r < ls.row_ids.size(); r++) {
        for (std::size_t c = 0; c < ls.vars.size(); c++) {
            int m = h.inc(ls.row_ids[r], ls.vars[c]);
            ls.a.at(r, c) = m & 1;
            if (m >= 2) ls.reduced.push_back({ls.row_ids[r], ls.vars[c]});
        }
        ls.b.push_back(label_of(b, ls.row_ids[r]));
    }
    return ls;
}

LinearSystem to_linear_system(const Hypergraph& h) { return to_linear_system(h, h.b); }

ClassicalCertificate classical_perfect_strategy(const LinearSystem& ls) {
    ClassicalCertificate cert;
    cert.rank_a = gf2_rank(ls.a);
    GF2Matrix ab(ls.a.rows, ls.a.cols + 1);
    for (std::size_t r = 0; r < ls.a.rows; r++) {
        for (std::size_t c = 0; c < ls.a.cols; c++) ab.at(r, c) = ls.a.at(r, c);
        ab.at(r, ls.a.cols) = ls.b[r];
    }
    cert.rank_ab = gf2_rank(ab);
    cert.solution = gf2_solve(ls.a, ls.b);
    if (cert.solution.has_value() != (cert.rank_a == cert.rank_ab))
        throw std::logic_error("classical_perfect_strategy: solver and rank certificate disagree");
    return cert;
}

NonlocalGame to_game(const LinearSystem& ls) {
    NonlocalGame g;
    g.vars = ls.vars;
    g.row_ids = ls.row_ids;
    g.b = ls.b;
    for (std::size_t r = 0; r < ls.row_ids.size(); r++) {
        std::vector<int> sup;
        for (std::size_t c = 0; c < ls.vars.size(); c++)
            if (ls.a.at(r, c)) sup.push_back((int)c);
        const std::size_t k = sup.size();
        if (k > 20)
            throw std::invalid_argument("to_game: row " + ls.row_ids[r] + " has " +
                                        std::to_string(k) +
                                        " variables; explicit answer tables stop at 20");
        std::vector<std::vector<std::uint8_t>> table;
        for (unsigned long mask = 0; mask < (1ul << k); mask++) {
            std::vector<std::uint8_t> bits(k);
            int parity = 0;
            for (std::size_t j = 0; j < k; j++) {
                bits[j] = (mask >> (k - 1 - j)) & 1;
                parity ^= bits[j];
            }
            if (parity == ls.b[r]) table.push_back(std::move(bits));
        }
        // for k >= 1 exactly half the masks survive; only an odd empty row
        // is left with no answer at all
        if (table.empty()) g.degenerate_odd_rows.push_back(ls.row_ids[r]);
        for (int c : sup) g.questions.push_back({(int)r, c});
        g.support.push_back(std::move(sup));
        g.answers.push_back(std::move(table));
    }
    return g;
}

namespace {

// Shared setup for the two classical_value implementations: early verdicts,
// the cap test on the deterministic pair count, and the per-question decode
// tables for scanning Alice's strategies in mixed radix.
struct ValueScan {
    std::optional<Rational> early;
    bool capped = false;
    long long n_alice = 1;
    std::vector<long long> stride;
    std::vector<int> q_row, q_var, q_pos;
};

ValueScan prepare_scan(const NonlocalGame& g, long long cap) {
    ValueScan s;
    for (auto& table : g.answers)
        if (table.empty()) {
            s.early = Rational{0, 1}; // unanswerable row: value 0 by convention
            return s;
        }
    if (cap < 1) {
        s.capped = true;
        return s;
    }
    unsigned __int128 pairs = 1;
    for (auto& table : g.answers) {
        pairs *= table.size();
        if (pairs > (unsigned __int128)cap) {
            s.capped = true;
            return s;
        }
    }
    for (std::size_t i = 0; i < g.vars.size(); i++) {
        pairs *= 2;
        if (pairs > (unsigned __int128)cap) {
            s.capped = true;
            return s;
        }
    }
    if (g.questions.empty()) {
        s.early = Rational{1, 1};
        return s;
    }
    s.stride.assign(g.answers.size(), 1);
    for (std::size_t i = g.answers.size(); i-- > 0;) {
        s.stride[i] = s.n_alice;
        s.n_alice *= (long long)g.answers[i].size();
    }
    for (auto [r, c] : g.questions) {
        s.q_row.push_back(r);
        s.q_var.push_back(c);
        auto& sup = g.support[r];
        s.q_pos.push_back((int)(std::find(sup.begin(), sup.end(), c) - sup.begin()));
    }
    return s;
}

Rational reduced_fraction(long long num, long long den) {
    long long d = std::gcd(num, den);
    return {num / d, den / d};
}

} // namespace

std::optional<Rational> classical_value(const NonlocalGame& g, long long cap) {
    ValueScan s = prepare_scan(g, cap);
    if (s.early) return s.early;
    if (s.capped) return std::nullopt;
    const int nv = (int)g.vars.size();
    const int nq = (int)g.questions.size();
    long long best = 0;
    // Bob's best reply is the per-variable majority over Alice's announced
    // bits, so each Alice strategy scores independently of the others.
#pragma omp parallel for reduction(max : best) schedule(static)
    for (long long a = 0; a < s.n_alice; a++) {
        std::vector<int> ones(nv, 0), asked(nv, 0);
        for (int q = 0; q < nq; q++) {
            int r = s.q_row[q];
            long long digit = (a / s.stride[r]) % (long long)g.answers[r].size();
            ones[s.q_var[q]] += g.answers[r][digit][s.q_pos[q]];
            asked[s.q_var[q]]++;
        }
        long long wins = 0;
        for (int v = 0; v < nv; v++) wins += std::max(ones[v], asked[v] - ones[v]);
        best = std::max(best, wins);
    }
    return reduced_fraction(best, nq);
}

std::optional<Rational> classical_value_serial(const NonlocalGame& g, long long cap) {
    ValueScan s = prepare_scan(g, cap);
    if (s.early) return s.early;
    if (s.capped) return std::nullopt;
    const int nq = (int)g.questions.size();
    long long best = 0;
    std::vector<std::uint8_t> abits(nq);
    for (long long a = 0; a < s.n_alice; a++) {
        for (int q = 0; q < nq; q++) {
            int r = s.q_row[q];
            long long digit = (a / s.stride[r]) % (long long)g.answers[r].size();
            abits[q] = g.answers[r][digit][s.q_pos[q]];
        }
        for (unsigned long long bob = 0; bob < (1ull << g.vars.size()); bob++) {
            long long wins = 0;
            for (int q = 0; q < nq; q++)
                wins += (abits[q] == ((bob >> s.q_var[q]) & 1));
            best = std::max(best, wins);
        }
    }
    return reduced_fraction(best, nq);
}

namespace {

using CVec = std::vector<std::complex<double>>;

CVec mat_mul(int d, const CVec& x, const CVec& y) {
    CVec z((std::size_t)d * d, 0.0);
    for (int i = 0; i < d; i++)
        for (int k = 0; k < d; k++) {
            std::complex<double> f = x[(std::size_t)i * d + k];
            if (f == 0.0) continue;
            for (int j = 0; j < d; j++) z[(std::size_t)i * d + j] += f * y[(std::size_t)k * d + j];
        }
    return z;
}

double max_abs_diff(const CVec& x, const CVec& y) {
    double m = 0;
    for (std::size_t i = 0; i < x.size(); i++) m = std::max(m, std::abs(x[i] - y[i]));
    return m;
}

CVec identity_mat(int d, double sign) {
    CVec z((std::size_t)d * d, 0.0);
    for (int i = 0; i < d; i++) z[(std::size_t)i * d + i] = sign;
    return z;
}

} // namespace

OperatorCheckReport verify_operator_solution(const Hypergraph& h, const VertexLabelling& b,
                                             const OperatorSolution& sol) {
    const int d = sol.d;
    if (d <= 0)
        throw std::invalid_argument("verify_operator_solution: dimension must be positive");
    for (auto& [e, m] : sol.matrices) {
        if (!h.has_edge(e))
            throw std::invalid_argument("verify_operator_solution: matrix for undeclared edge " +
                                        e);
        if (m.size() != (std::size_t)d * d)
            throw std::invalid_argument("verify_operator_solution: matrix for edge " + e +
                                        " is not " + std::to_string(d) + "x" + std::to_string(d));
    }
    for (auto& e : h.edges)
        if (!sol.matrices.count(e))
            throw std::invalid_argument("verify_operator_solution: no matrix for edge " + e);

    OperatorCheckReport rep;
    const CVec eye = identity_mat(d, 1.0);
    const CVec minus_eye = identity_mat(d, -1.0);
    std::string adjoint_w, involution_w, commutation_w, product_w;

    for (auto& e : h.edges) {
        const CVec& x = sol.matrices.at(e);
        CVec xdag((std::size_t)d * d);
        for (int i = 0; i < d; i++)
            for (int j = 0; j < d; j++)
                xdag[(std::size_t)i * d + j] = std::conj(x[(std::size_t)j * d + i]);
        if (double r = max_abs_diff(x, xdag); r > rep.adjoint_residual) {
            rep.adjoint_residual = r;
            adjoint_w = e;
        }
        if (double r = max_abs_diff(mat_mul(d, x, x), eye); r > rep.involution_residual) {
            rep.involution_residual = r;
            involution_w = e;
        }
    }

    // distinct co-incident pairs, each checked once, in declaration order
    std::map<std::string, std::size_t> epos;
    for (std::size_t i = 0; i < h.edges.size(); i++) epos[h.edges[i]] = i;
    std::set<std::pair<std::size_t, std::size_t>> pairs;
    for (auto& v : h.vertices) {
        auto around = h.edges_at(v);
        for (std::size_t i = 0; i < around.size(); i++)
            for (std::size_t j = i + 1; j < around.size(); j++)
                pairs.insert({epos[around[i]], epos[around[j]]});
    }
    for (auto [pi, pj] : pairs) {
        const CVec& x = sol.matrices.at(h.edges[pi]);
        const CVec& y = sol.matrices.at(h.edges[pj]);
        if (double r = max_abs_diff(mat_mul(d, x, y), mat_mul(d, y, x));
            r > rep.commutation_residual) {
            rep.commutation_residual = r;
            commutation_w = h.edges[pi] + ", " + h.edges[pj];
        }
    }

    for (auto& v : h.vertices) {
        CVec p = eye;
        for (auto& e : h.edges_at(v))
            for (int t = 0; t < h.inc(v, e); t++) p = mat_mul(d, p, sol.matrices.at(e));
        double rplus = max_abs_diff(p, eye);
        double rminus = max_abs_diff(p, minus_eye);
        rep.vertex_signs[v] = rminus < rplus ? 1 : 0;
        if (double r = label_of(b, v) ? rminus : rplus; r > rep.product_residual) {
            rep.product_residual = r;
            product_w = v;
        }
    }

    auto fail = [&](double residual, const std::string& what) {
        if (residual <= sol.tolerance) return;
        rep.ok = false;
        if (rep.detail.empty())
            rep.detail = what + " (residual " + std::to_string(residual) + ")";
    };
    fail(rep.adjoint_residual, "edge " + adjoint_w + ": not self-adjoint");
    fail(rep.involution_residual, "edge " + involution_w + ": square is not the identity");
    fail(rep.commutation_residual,
         "edges " + commutation_w + " share a vertex but do not commute");
    fail(rep.product_residual, "vertex " + product_w + ": product misses (-1)^b");
    return rep;
}

} // namespace ww
