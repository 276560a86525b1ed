#include <catch2/catch_amalgamated.hpp>

#include "kron/matrix.hpp"
#include "kron/rng.hpp"
#include "test_util.hpp"

using namespace kron;
using kron::testutil::gq;
using kron::testutil::random_matrix;

TEST_CASE("rank basics") {
    CHECK(rank(Matrix::identity(2)) == 2);
    CHECK(rank(Matrix(3, 3)) == 0);
    Matrix m(2, 2);
    m.at(0, 0) = gq(1);
    m.at(0, 1) = GaussianRational::i();
    m.at(1, 0) = GaussianRational::i();
    m.at(1, 1) = gq(-1);
    CHECK(rank(m) == 1);  // second row is i times the first
}

TEST_CASE("kernel basis in reduced canonical form") {
    Matrix m(1, 2);
    m.at(0, 0) = gq(1);
    auto k = kernel_basis(m);
    REQUIRE(k.size() == 1);
    CHECK(k[0][0] == gq(0));
    CHECK(k[0][1] == gq(1));

    CHECK(kernel_basis(Matrix::identity(3)).empty());

    Matrix m2 = Matrix::from_rows({{gq(1), gq(1)}, {gq(2), gq(2)}});
    auto k2 = kernel_basis(m2);
    REQUIRE(k2.size() == 1);
    // canonical scaling puts 1 in the free slot: (-1, 1), proportional to (1, -1)
    CHECK(k2[0][0] == gq(-1));
    CHECK(k2[0][1] == gq(1));
}

TEST_CASE("rank plus kernel dimension equals column count") {
    Rng rng(31);
    for (int t = 0; t < 40; ++t) {
        std::size_t r = 1 + rng.uniform(0, 5), c = 1 + rng.uniform(0, 5);
        Matrix m = random_matrix(rng, r, c);
        CHECK(rank(m) + kernel_basis(m).size() == c);
        // kernel vectors actually kill the matrix
        for (const auto& v : kernel_basis(m)) {
            auto img = m.apply(v);
            for (const auto& x : img) CHECK(x.is_zero());
        }
    }
}

TEST_CASE("solve recovers exact solutions") {
    Rng rng(17);
    for (int t = 0; t < 25; ++t) {
        Matrix a = random_matrix(rng, 4, 3);
        Matrix x = random_matrix(rng, 3, 2);
        auto sol = solve(a, a * x);
        REQUIRE(sol.has_value());
        CHECK(a * *sol == a * x);
    }
    // inconsistent system
    Matrix a = Matrix::from_rows({{gq(1), gq(0)}, {gq(1), gq(0)}});
    Matrix b = Matrix::from_rows({{gq(1)}, {gq(2)}});
    CHECK_FALSE(solve(a, b).has_value());
}

TEST_CASE("determinant") {
    CHECK(determinant(Matrix::identity(4)) == gq(1));
    Matrix m = Matrix::from_rows({{gq(2), gq(1)}, {gq(7), gq(4)}});
    CHECK(determinant(m) == gq(1));
    Rng rng(3);
    for (int t = 0; t < 20; ++t) {
        Matrix a = random_matrix(rng, 3, 3), b = random_matrix(rng, 3, 3);
        CHECK(determinant(a * b) == determinant(a) * determinant(b));
    }
}

TEST_CASE("signature basics") {
    Matrix d = Matrix(2, 2);
    d.at(0, 0) = gq(1);
    d.at(1, 1) = gq(-1);
    auto s = signature(d);
    CHECK(s.positives == 1);
    CHECK(s.negatives == 1);
    CHECK(s.nullity == 0);

    auto id3 = signature(Matrix::identity(3));
    CHECK(id3.positives == 3);
    CHECK(id3.negatives == 0);

    // zero diagonal forces the off-diagonal fold
    Matrix hyp = Matrix::from_rows({{gq(0), gq(1)}, {gq(1), gq(0)}});
    auto sh = signature(hyp);
    CHECK(sh.positives == 1);
    CHECK(sh.negatives == 1);

    Matrix degenerate = Matrix::from_rows({{gq(1), gq(1)}, {gq(1), gq(1)}});
    auto sd = signature(degenerate);
    CHECK(sd.positives == 1);
    CHECK(sd.negatives == 0);
    CHECK(sd.nullity == 1);

    CHECK_THROWS_AS(signature(Matrix::from_rows({{gq(0), gq(1)}, {gq(2), gq(0)}})),
                    std::invalid_argument);
    Matrix complex_entry(1, 1);
    complex_entry.at(0, 0) = GaussianRational::i();
    CHECK_THROWS_AS(signature(complex_entry), std::invalid_argument);
}

TEST_CASE("signature is a congruence invariant") {
    Rng rng(23);
    for (int t = 0; t < 15; ++t) {
        // random real symmetric S
        Matrix s(4, 4);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = i; j < 4; ++j) {
                GaussianRational v{Rational(rng.uniform(-6, 6))};
                s.at(i, j) = v;
                s.at(j, i) = v;
            }
        // random invertible integer A
        Matrix a(4, 4);
        do {
            for (std::size_t i = 0; i < 4; ++i)
                for (std::size_t j = 0; j < 4; ++j) a.at(i, j) = GaussianRational(Rational(rng.uniform(-3, 3)));
        } while (determinant(a).is_zero());
        Matrix congruent = a.transpose() * s * a;
        auto s1 = signature(s), s2 = signature(congruent);
        CHECK(s1.positives == s2.positives);
        CHECK(s1.negatives == s2.negatives);
        CHECK(s1.nullity == s2.nullity);
    }
}
