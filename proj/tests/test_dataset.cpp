#include <sstream>

#include "doctest.h"
#include "imb/dataset.hpp"

using namespace imb;

TEST_CASE("Rational normalizes and evaluates") {
    const Rational r(2, 40);
    CHECK(r.num == 1);
    CHECK(r.den == 20);
    CHECK(r.value() == doctest::Approx(0.05));
    CHECK(Rational(5, 5).is_one());
    CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("Rational::times_integral demands exactness") {
    CHECK(Rational(1, 20).times_integral(1000) == 50);
    CHECK(Rational(3, 4).times_integral(8) == 6);
    CHECK_THROWS(Rational(1, 20).times_integral(1001));
}

TEST_CASE("Rational::from_string accepts fractions and decimals") {
    CHECK(Rational::from_string("1/20").value() == doctest::Approx(0.05));
    CHECK(Rational::from_string("0.05").value() == doctest::Approx(0.05));
    CHECK(Rational::from_string("0.05").den == 20);
    CHECK_THROWS(Rational::from_string("abc"));
}

TEST_CASE("dataset CSV round-trip is lossless") {
    Dataset d;
    d.dim = 2;
    d.n_major = 2;
    d.beta = Rational(1, 2);
    d.xs = {0.1234567890123456789, -1e-17, 3.0, 4.0, 1.0 / 3.0, -7.25};
    d.ys = {1, 1, -1};

    std::stringstream ss;
    write_csv(d, ss);
    const Dataset back = read_csv(ss);

    REQUIRE(back.size() == 3);
    CHECK(back.dim == 2);
    for (std::size_t i = 0; i < d.xs.size(); ++i) CHECK(back.xs[i] == d.xs[i]);
    for (std::size_t i = 0; i < d.ys.size(); ++i) CHECK(back.ys[i] == d.ys[i]);
}

TEST_CASE("point() spans the right row") {
    Dataset d;
    d.dim = 3;
    d.xs = {1, 2, 3, 4, 5, 6};
    d.ys = {1, -1};
    const auto p = d.point(1);
    REQUIRE(p.size() == 3);
    CHECK(p[0] == 4.0);
    CHECK(p[2] == 6.0);
    CHECK(d.minority_count() == d.size() - d.n_major);
}
