#pragma once
// Dense GF(2) linear algebra, sized for the systems this project produces
// (hundreds of rows/columns at most).  Entries are 0/1 in uint8_t.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace ww {

struct GF2Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::uint8_t> a; // row-major, rows*cols entries

    GF2Matrix() = default;
    GF2Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0) {}

    std::uint8_t& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
    std::uint8_t at(std::size_t r, std::size_t c) const { return a[r * cols + c]; }
};

std::size_t gf2_rank(GF2Matrix m);

// One solution x of m x = rhs, or nullopt when the system is inconsistent.
// Free variables are set to 0, so the result is deterministic.
std::optional<std::vector<std::uint8_t>> gf2_solve(GF2Matrix m,
                                                   std::vector<std::uint8_t> rhs);

// A basis of {x : m x = 0}, one vector per free column.
std::vector<std::vector<std::uint8_t>> gf2_nullspace(GF2Matrix m);

} // namespace ww
