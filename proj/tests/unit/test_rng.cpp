#include <doctest.h>

#include "srlink/rng.hpp"

using namespace srlink;

TEST_CASE("identical seeds give identical streams") {
    Rng a(123), b(123);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("derive_seed separates streams and is order-sensitive") {
    CHECK(derive_seed(1, 2, 3) != derive_seed(1, 3, 2));
    CHECK(derive_seed(1, 2) != derive_seed(2, 2));
    CHECK(derive_seed(5, 7, 0, 1) != derive_seed(5, 7, 1, 0));
}

TEST_CASE("gaussian moments are sane") {
    Rng rng(99);
    const int n = 200000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double g = rng.gaussian();
        sum += g;
        sum2 += g * g;
    }
    CHECK(std::abs(sum / n) < 0.01);
    CHECK(sum2 / n == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("complex gaussian has the requested total variance") {
    Rng rng(100);
    const double var = 0.37;
    double acc = 0.0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) acc += std::norm(rng.cgaussian(var));
    CHECK(acc / n == doctest::Approx(var).epsilon(0.03));
}

TEST_CASE("uniform_int stays in range and covers values") {
    Rng rng(101);
    bool seen[9] = {};
    for (int i = 0; i < 2000; ++i) {
        const int v = rng.uniform_int(9);
        REQUIRE(v >= 0);
        REQUIRE(v < 9);
        seen[v] = true;
    }
    for (bool s : seen) CHECK(s);
}
