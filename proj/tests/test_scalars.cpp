#include <catch2/catch_amalgamated.hpp>

#include "kron/quaternion.hpp"
#include "kron/rational.hpp"
#include "kron/rng.hpp"
#include "test_util.hpp"

using namespace kron;
using kron::testutil::gq;

TEST_CASE("gaussian rational arithmetic and conjugation") {
    GaussianRational z(Rational(1, 2), Rational(-3, 4));
    GaussianRational w = gq(2, 5);
    CHECK(z.conj().conj() == z);
    CHECK((z * w).conj() == z.conj() * w.conj());
    CHECK((z + w) - w == z);
    CHECK(z * z.inverse() == GaussianRational(1));
    CHECK(z.norm() == Rational(1, 4) + Rational(9, 16));
    CHECK(GaussianRational::i() * GaussianRational::i() == GaussianRational(-1));
}

TEST_CASE("conjugation is a ring automorphism on random samples") {
    Rng rng(2024);
    for (int i = 0; i < 50; ++i) {
        GaussianRational a = rng.gaussian_integer(-20, 20), b = rng.gaussian_integer(-20, 20);
        CHECK((a * b).conj() == a.conj() * b.conj());
        CHECK((a + b).conj() == a.conj() + b.conj());
    }
}

TEST_CASE("scalar text encoding") {
    auto roundtrip = [](const GaussianRational& z) {
        auto parsed = scalar_from_string(scalar_to_string(z));
        REQUIRE(parsed.has_value());
        CHECK(*parsed == z);
    };
    roundtrip(GaussianRational(0));
    roundtrip(gq(5));
    roundtrip(gq(-7));
    roundtrip(GaussianRational(Rational(22, 7)));
    roundtrip(GaussianRational::i());
    roundtrip(-GaussianRational::i());
    roundtrip(GaussianRational(Rational(0), Rational(3, 4)));
    roundtrip(GaussianRational(Rational(-1, 2), Rational(-3)));

    CHECK(*scalar_from_string("1/2-3i") == GaussianRational(Rational(1, 2), Rational(-3)));
    CHECK(*scalar_from_string("i") == GaussianRational::i());
    CHECK(*scalar_from_string("+i") == GaussianRational::i());
    CHECK(*scalar_from_string("-3/4i") == GaussianRational(Rational(0), Rational(-3, 4)));
    CHECK(*scalar_from_string("7") == gq(7));
    CHECK_FALSE(scalar_from_string("").has_value());
    CHECK_FALSE(scalar_from_string("1+2").has_value());   // two real terms
    CHECK_FALSE(scalar_from_string("i+i").has_value());   // two imaginary terms
    CHECK_FALSE(scalar_from_string("1/").has_value());
    CHECK_FALSE(scalar_from_string("x").has_value());

    Rng rng(77);
    for (int i = 0; i < 100; ++i) {
        GaussianRational z{Rational(rng.uniform(-99, 99), rng.uniform(1, 40)),
                           Rational(rng.uniform(-99, 99), rng.uniform(1, 40))};
        z.re.canonicalize();
        z.im.canonicalize();
        roundtrip(z);
    }
}

TEST_CASE("quaternion units") {
    const Quaternion i = Quaternion::unit_i(), j = Quaternion::unit_j(), k = Quaternion::unit_k();
    CHECK(i * j == k);
    CHECK(j * i == -k);
    CHECK(i * i == Quaternion(-1));
    CHECK(j * j == Quaternion(-1));
    CHECK(k * k == Quaternion(-1));
    CHECK(i * j * k == Quaternion(-1));
}

TEST_CASE("quaternion norm is multiplicative") {
    Quaternion p{gq(1), gq(1)};
    Quaternion q{gq(0), gq(2)};
    CHECK(p.norm() * q.norm() == (p * q).norm());
    CHECK((p * q).norm() == 8);
    Rng rng(5);
    for (int t = 0; t < 40; ++t) {
        Quaternion a{rng.gaussian_integer(-9, 9), rng.gaussian_integer(-9, 9)};
        Quaternion b{rng.gaussian_integer(-9, 9), rng.gaussian_integer(-9, 9)};
        CHECK((a * b).norm() == a.norm() * b.norm());
        CHECK((a * b).conj() == b.conj() * a.conj());
        if (!a.is_zero()) CHECK(a * a.inverse() == Quaternion(1));
    }
}

TEST_CASE("quaternion multiplication is associative on samples") {
    Rng rng(8);
    for (int t = 0; t < 40; ++t) {
        Quaternion a{rng.gaussian_integer(-5, 5), rng.gaussian_integer(-5, 5)};
        Quaternion b{rng.gaussian_integer(-5, 5), rng.gaussian_integer(-5, 5)};
        Quaternion c{rng.gaussian_integer(-5, 5), rng.gaussian_integer(-5, 5)};
        CHECK((a * b) * c == a * (b * c));
    }
}

TEST_CASE("quaternion component accessors") {
    // q = 1 + 2i + 3j + 4k
    Quaternion q{gq(1, 2), gq(3, 4)};
    CHECK(q.re() == 1);
    CHECK(q.i_part() == 2);
    CHECK(q.j_part() == 3);
    CHECK(q.k_part() == 4);
    CHECK(q.pure_part() + Quaternion(1) == q);
    CHECK_FALSE(q.is_real());
    CHECK(Quaternion(5).is_real());
}
