#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "subtile/golden.hpp"
#include "subtile/rng.hpp"

#include <cmath>

using namespace subtile;

TEST_CASE("defining relation and powers") {
    Golden t = Golden::tau();
    CHECK(t * t == t + Golden(1));
    CHECK(tau_pow(3) == Golden(2) * t + Golden(1));
    CHECK(tau_pow(0) == Golden(1));
    CHECK(tau_pow(-1) == t - Golden(1));
    for (long long k = -12; k <= 12; ++k)
        CHECK(tau_pow(k) * tau_pow(-k) == Golden(1));
    CHECK(tau_pow(7) == tau_pow(6) + tau_pow(5));
}

TEST_CASE("inverse and division") {
    Golden t = Golden::tau();
    CHECK(t.inverse() == t - Golden(1));
    CHECK((t / t) == Golden(1));
    Rng rng(7);
    for (int i = 0; i < 50; ++i) {
        long long u = static_cast<long long>(rng.below(2001)) - 1000;
        long long v = static_cast<long long>(rng.below(2001)) - 1000;
        if (u == 0 && v == 0) continue;
        Golden g{BigRat(u), BigRat(v)};
        CHECK(g * g.inverse() == Golden(1));
    }
    CHECK_THROWS_AS(Golden(0).inverse(), std::domain_error);
}

TEST_CASE("exact ordering embeds into the reals") {
    Golden t = Golden::tau();
    CHECK(t > Golden(1));
    CHECK(t < Golden(2));
    CHECK(Golden(BigRat(1618, 1000)) < t);
    CHECK(t < Golden(BigRat(1619, 1000)));
    // 1/tau is positive but tiny powers stay ordered
    CHECK(tau_pow(-40) > Golden(0));
    CHECK(tau_pow(-40) < tau_pow(-39));
    CHECK((-t).sign() == -1);
    CHECK(Golden(0).sign() == 0);
    // sign with opposite rational parts: 3 - tau > 0, 1 - tau < 0
    CHECK((Golden(3) - t).sign() == 1);
    CHECK((Golden(1) - t).sign() == -1);
}

TEST_CASE("two tile lists with equal level sums") {
    Golden t = Golden::tau();
    Golden lhs = Golden(1) + t * Golden(1);      // 1 + tau * 1
    Golden rhs = t + t * (t - Golden(1));        // tau + tau * (tau - 1)
    CHECK(lhs == rhs);
}

TEST_CASE("double conversion avoids cancellation") {
    Golden t = Golden::tau();
    CHECK(std::abs(t.to_double() - 1.6180339887498949) < 1e-15);
    double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    // tau^-40 has huge integer parts of opposite sign; direct evaluation
    // in doubles would lose everything
    double tiny = tau_pow(-40).to_double();
    CHECK(tiny == doctest::Approx(std::pow(phi, -40)).epsilon(1e-12));
    CHECK(tiny > 0);
}

TEST_CASE("floor") {
    Golden t = Golden::tau();
    CHECK(golden_floor(t) == 1);
    CHECK(golden_floor(-t) == -2);
    CHECK(golden_floor(tau_pow(3)) == 4);
    CHECK(golden_floor(Golden(2)) == 2);
    CHECK(golden_floor(Golden(BigRat(-1, 2))) == -1);
}

TEST_CASE("serialization round trips") {
    Golden g(BigRat(3, 4), BigRat(-7, 2));
    CHECK(g.str() == "(3/4,-7/2)");
    CHECK(Golden::parse(g.str()) == g);
    CHECK(Golden::parse("( 1 , 0 )") == Golden(1));
    CHECK(rat_str(rat_parse("3/6")) == "1/2");
    CHECK(rat_str(rat_parse("-8/4")) == "-2");
    CHECK_THROWS(rat_parse("1/0"));
    CHECK_THROWS(rat_parse("x"));
    CHECK_THROWS(Golden::parse("1,2"));
}
