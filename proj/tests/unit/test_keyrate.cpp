#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "repeater/keyrate.hpp"

using namespace qrep;

TEST_SUITE("keyrate") {

TEST_CASE("binary entropy")
{
    CHECK(binary_entropy(0.0) == 0.0);
    CHECK(binary_entropy(1.0) == 0.0);
    CHECK(binary_entropy(0.5) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(binary_entropy(0.11) == doctest::Approx(oracle::entropy(0.11)).epsilon(1e-14));
    CHECK(binary_entropy(0.11) == doctest::Approx(0.499916).epsilon(2e-6));
    for (double q = 0.0; q <= 1.0; q += 0.013) {
        CHECK(binary_entropy(q) == doctest::Approx(binary_entropy(1.0 - q)).epsilon(1e-12));
        CHECK(binary_entropy(q) == doctest::Approx(oracle::entropy(q)).epsilon(1e-13));
    }
}

TEST_CASE("secure fraction")
{
    CHECK(secure_fraction(0.0) == 1.0);
    CHECK(secure_fraction(0.5) == 0.0);
    CHECK(secure_fraction(0.110028) == doctest::Approx(0.0).epsilon(1e-5));
    CHECK(secure_fraction(0.12) == 0.0);
    CHECK(secure_fraction(0.8) == 0.0);
    double last = 1.0;
    for (double q = 0.0; q <= 0.5; q += 0.001) {
        const double r = secure_fraction(q);
        CHECK(r <= last);
        last = r;
    }
}

TEST_CASE("threshold located by bisection")
{
    const double root = secure_fraction_threshold();
    CHECK(std::abs(root - oracle::key_threshold()) < 1e-12);
    CHECK(std::abs(root - 0.110028) < 1e-6);
    CHECK(secure_fraction(root - 1e-9) > 0.0);
    CHECK(secure_fraction(root + 1e-9) == 0.0);
}

}
