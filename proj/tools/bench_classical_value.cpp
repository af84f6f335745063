// Times the literal strategy enumeration against the majority-reply scan on
// the built-in square system, and checks they agree.
#include <chrono>
#include <cstdio>

#include "ww/game.h"

using namespace ww;
using clk = std::chrono::steady_clock;

static double ms_since(clk::time_point t0) {
    return std::chrono::duration<double, std::milli>(clk::now() - t0).count();
}

int main() {
    auto [h, b] = *builtin("magic_square").system;
    NonlocalGame g = to_game(to_linear_system(h, b));

    auto t0 = clk::now();
    auto serial = classical_value_serial(g);
    double serial_ms = ms_since(t0);

    t0 = clk::now();
    auto parallel = classical_value(g);
    double parallel_ms = ms_since(t0);

    if (!serial || !parallel) {
        std::fprintf(stderr, "strategy cap exceeded unexpectedly\n");
        return 1;
    }
    std::printf("serial   %lld/%lld  %.2f ms\n", serial->num, serial->den, serial_ms);
    std::printf("parallel %lld/%lld  %.2f ms\n", parallel->num, parallel->den, parallel_ms);
    std::printf("speedup  %.1fx\n", serial_ms / parallel_ms);
    if (!(*serial == *parallel)) {
        std::fprintf(stderr, "implementations disagree\n");
        return 1;
    }
    return 0;
}
