#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "liecurv/parallel.hpp"
#include "liecurv/types.hpp"

using namespace liecurv;

namespace {

// Deterministic per-index payload with enough floating-point work that a
// nondeterministic reduction would show up as a bit difference.
double payload(int i) {
    double x = 0.5 + 0.01 * i;
    for (int k = 0; k < 50; ++k) x = std::sin(x) + 1.0 / (1.0 + x * x);
    return x;
}

} // namespace

TEST_CASE("parallel map matches the serial reference bit for bit") {
    for (int count : {0, 1, 7, 256}) {
        std::vector<double> s = serial_map<double>(count, payload);
        std::vector<double> p = parallel_map<double>(count, payload);
        REQUIRE(s.size() == static_cast<std::size_t>(count));
        REQUIRE(p.size() == s.size());
        for (int i = 0; i < count; ++i) CHECK(s[i] == p[i]);
    }
}

TEST_CASE("repeated parallel runs are identical") {
    std::vector<double> a = parallel_map<double>(128, payload);
    std::vector<double> b = parallel_map<double>(128, payload);
    CHECK(a == b);
}

TEST_CASE("exceptions surface with serial semantics") {
    auto throwing = [](int i) -> double {
        if (i >= 3) fail(ErrorCode::NumericalCheck, "slot " + std::to_string(i));
        return payload(i);
    };

    // Both maps throw, and the parallel one reports the lowest failing index
    // just like the serial loop would.
    CHECK_THROWS_AS(serial_map<double>(8, throwing), Error);
    try {
        parallel_map<double>(8, throwing);
        FAIL("parallel_map must rethrow");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NumericalCheck);
        CHECK(std::string(e.what()).find("slot 3") != std::string::npos);
    }
}
