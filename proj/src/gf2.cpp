#include "ww/gf2.h"

#include <stdexcept>

namespace ww {

namespace {

// Row-reduce m (and rhs, if given) in place; returns the pivot column of each
// pivot row, in order.
std::vector<std::size_t> eliminate(GF2Matrix& m, std::vector<std::uint8_t>* rhs) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
        std::size_t pivot = row;
        while (pivot < m.rows && m.at(pivot, col) == 0)
            ++pivot;
        if (pivot == m.rows)
            continue;
        if (pivot != row) {
            for (std::size_t c = col; c < m.cols; ++c)
                std::swap(m.at(row, c), m.at(pivot, c));
            if (rhs)
                std::swap((*rhs)[row], (*rhs)[pivot]);
        }
        for (std::size_t r = 0; r < m.rows; ++r) {
            if (r == row || m.at(r, col) == 0)
                continue;
            for (std::size_t c = col; c < m.cols; ++c)
                m.at(r, c) ^= m.at(row, c);
            if (rhs)
                (*rhs)[r] ^= (*rhs)[row];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

} // namespace

std::size_t gf2_rank(GF2Matrix m) {
    return eliminate(m, nullptr).size();
}

std::optional<std::vector<std::uint8_t>> gf2_solve(GF2Matrix m,
                                                   std::vector<std::uint8_t> rhs) {
    if (rhs.size() != m.rows)
        throw std::invalid_argument("gf2_solve: rhs size does not match row count");
    auto pivots = eliminate(m, &rhs);
    for (std::size_t r = pivots.size(); r < m.rows; ++r)
        if (rhs[r])
            return std::nullopt;
    std::vector<std::uint8_t> x(m.cols, 0);
    for (std::size_t r = 0; r < pivots.size(); ++r)
        x[pivots[r]] = rhs[r];
    return x;
}

std::vector<std::vector<std::uint8_t>> gf2_nullspace(GF2Matrix m) {
    GF2Matrix reduced = m;
    auto pivots = eliminate(reduced, nullptr);
    std::vector<bool> is_pivot(m.cols, false);
    for (auto c : pivots)
        is_pivot[c] = true;
    std::vector<std::vector<std::uint8_t>> basis;
    for (std::size_t free = 0; free < m.cols; ++free) {
        if (is_pivot[free])
            continue;
        std::vector<std::uint8_t> x(m.cols, 0);
        x[free] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            x[pivots[r]] = reduced.at(r, free);
        basis.push_back(std::move(x));
    }
    return basis;
}

} // namespace ww
