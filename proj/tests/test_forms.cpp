#include <catch2/catch_amalgamated.hpp>

#include "kron/binary_form.hpp"
#include "kron/rng.hpp"
#include "test_util.hpp"

using namespace kron;
using kron::testutil::gq;
using kron::testutil::mono;
using kron::testutil::random_form;

namespace {

// independent univariate division used as the oracle for division fixtures
struct UniDiv {
    std::vector<GaussianRational> q, r;
};
UniDiv uni_divmod(std::vector<GaussianRational> f, const std::vector<GaussianRational>& g) {
    auto deg = [](const std::vector<GaussianRational>& p) {
        for (std::size_t i = p.size(); i-- > 0;)
            if (!p[i].is_zero()) return static_cast<long>(i);
        return -1L;
    };
    long dg = deg(g);
    REQUIRE(dg >= 0);
    UniDiv out;
    long df = deg(f);
    if (df < dg) {
        out.r = f;
        return out;
    }
    out.q.assign(static_cast<std::size_t>(df - dg + 1), GaussianRational(0));
    while (df >= dg) {
        GaussianRational c = f[static_cast<std::size_t>(df)] / g[static_cast<std::size_t>(dg)];
        out.q[static_cast<std::size_t>(df - dg)] = c;
        for (long i = 0; i <= dg; ++i)
            f[static_cast<std::size_t>(df - dg + i)] -= c * g[static_cast<std::size_t>(i)];
        df = deg(f);
    }
    out.r = f;
    return out;
}

}  // namespace

TEST_CASE("graded arithmetic") {
    BinaryForm x0 = BinaryForm::x0(), x1 = BinaryForm::x1();
    BinaryForm prod = x0 * x1;
    CHECK(prod.degree() == 1 + 1);
    CHECK(prod == mono(2, 1));

    BinaryForm cube = mono(3, 0);  // x0^3
    BinaryForm d = cube.derivative(0);
    CHECK(d == mono(2, 0, 3));  // 3 x0^2
    CHECK(cube.derivative(1).is_zero());

    BinaryForm f = mono(3, 1);  // x0^2 x1
    CHECK(f.evaluate(gq(1), gq(2)) == gq(2));

    Rng rng(6);
    for (int t = 0; t < 25; ++t) {
        BinaryForm a = random_form(rng, 3), b = random_form(rng, 2);
        CHECK((a * b).degree() == 5);
        GaussianRational p0 = rng.gaussian_integer(-4, 4), p1 = rng.gaussian_integer(-4, 4);
        CHECK((a * b).evaluate(p0, p1) == a.evaluate(p0, p1) * b.evaluate(p0, p1));
    }
}

TEST_CASE("zero form keeps its declared degree") {
    BinaryForm z = BinaryForm::zero(4);
    CHECK(z.is_zero());
    CHECK(z.degree() == 4);
    CHECK((z + mono(4, 2)) == mono(4, 2));
}

TEST_CASE("gcd fixtures") {
    CHECK(form_gcd(mono(2, 0), mono(2, 1)) == mono(1, 0));  // gcd(x0^2, x0 x1) = x0
    BinaryForm diff_sq(2, {gq(1), gq(0), gq(-1)});          // x0^2 - x1^2
    BinaryForm diff(1, {gq(1), gq(-1)});                    // x0 - x1
    CHECK(form_gcd(diff_sq, diff) == diff);
    CHECK(form_gcd(mono(3, 0), mono(3, 3)).is_nonzero_constant());  // coprime
    CHECK_THROWS_AS(form_gcd(BinaryForm::zero(2), BinaryForm::zero(3)), std::domain_error);
    CHECK(form_gcd(BinaryForm::zero(5), mono(2, 1, 7)) == mono(2, 1));  // monic output
}

TEST_CASE("gcd divides both inputs and catches planted factors") {
    Rng rng(9);
    for (int t = 0; t < 30; ++t) {
        BinaryForm c = random_form(rng, 1 + rng.uniform(0, 1));
        if (c.is_zero()) continue;
        BinaryForm f = c * random_form(rng, 2), g = c * random_form(rng, 3);
        if (f.is_zero() || g.is_zero()) continue;
        BinaryForm d = form_gcd(f, g);
        CHECK(form_divides(d, f));
        CHECK(form_divides(d, g));
        CHECK(form_divides(c, d));  // the planted common factor divides the gcd
    }
}

TEST_CASE("division fixtures against the univariate oracle") {
    // f = x0 x1^3, g = x1^3: exact multiple up to the chart variable
    {
        auto d = form_divrem(mono(4, 3), mono(3, 3));
        CHECK(d.remainder.is_zero());
    }
    // f = 2 x0 x1^3 + x0^2 x1^2, g = x1^3: affine (2u^3 + u^2) mod u^3
    {
        BinaryForm f = mono(4, 3, 2) + mono(4, 2);
        auto d = form_divrem(f, mono(3, 3));
        auto oracle = uni_divmod(f.to_affine(), mono(3, 3).to_affine());
        CHECK(d.remainder == BinaryForm::from_affine(oracle.r, 3));
        CHECK(d.remainder == mono(3, 2));  // x0 x1^2 at degree 3
    }
    // f = x0^4, g = x0^2 - x1^2: remainder from the same chart as the oracle
    {
        BinaryForm f = mono(4, 0);
        BinaryForm g(2, {gq(1), gq(0), gq(-1)});
        auto d = form_divrem(f, g);
        auto oracle = uni_divmod(f.to_affine(), g.to_affine());
        CHECK(d.remainder == BinaryForm::from_affine(oracle.r, 2));
    }
    CHECK_THROWS_AS(form_divrem(mono(2, 0), BinaryForm::zero(1)), std::domain_error);
    CHECK_THROWS_AS(form_divrem(mono(1, 0), mono(2, 0)), std::domain_error);
}

TEST_CASE("division identity f = q g + pi^delta r, exactly and at sample points") {
    Rng rng(12);
    int checked = 0;
    while (checked < 50) {
        long dg = 1 + rng.uniform(0, 3);
        long df = dg + rng.uniform(0, 3);
        BinaryForm f = random_form(rng, df), g = random_form(rng, dg);
        if (g.is_zero()) continue;
        auto d = form_divrem(f, g);
        BinaryForm pi = d.chart_variable();
        BinaryForm pie = BinaryForm::constant(gq(1));
        for (long i = 0; i < df - dg; ++i) pie = pie * pi;
        CHECK(f == d.quotient * g + pie * d.remainder);
        GaussianRational p0 = rng.gaussian_integer(-5, 5), p1 = rng.gaussian_integer(-5, 5);
        CHECK(f.evaluate(p0, p1) ==
              d.quotient.evaluate(p0, p1) * g.evaluate(p0, p1) +
                  pie.evaluate(p0, p1) * d.remainder.evaluate(p0, p1));
        ++checked;
    }
}

TEST_CASE("sheared chart is chosen exactly when the divisor vanishes at [0:1]") {
    auto d = form_divrem(mono(5, 1), mono(3, 0));  // divide by x0^3
    CHECK(d.chart_shift > 0);
    BinaryForm pi = d.chart_variable();
    CHECK(mono(5, 1) == d.quotient * mono(3, 0) + (pi * pi) * d.remainder);
    auto easy = form_divrem(mono(5, 4), mono(3, 3));
    CHECK(easy.chart_shift == 0);
}

TEST_CASE("linear substitution and coefficient conjugation") {
    BinaryForm f = mono(2, 1);  // x0 x1
    BinaryForm sub = f.substitute(gq(0), gq(-1), gq(1), gq(0));  // (x0,x1) -> (-x1, x0)
    CHECK(sub == mono(2, 1, -1));
    BinaryForm g(1, {GaussianRational::i(), gq(2)});
    CHECK(g.conj_coeffs() == BinaryForm(1, {-GaussianRational::i(), gq(2)}));
    // substitution composes with evaluation
    Rng rng(14);
    for (int t = 0; t < 20; ++t) {
        BinaryForm h = random_form(rng, 3);
        GaussianRational a = rng.gaussian_integer(-3, 3), b = rng.gaussian_integer(-3, 3);
        GaussianRational c = rng.gaussian_integer(-3, 3), d2 = rng.gaussian_integer(-3, 3);
        GaussianRational p0 = rng.gaussian_integer(-3, 3), p1 = rng.gaussian_integer(-3, 3);
        CHECK(h.substitute(a, b, c, d2).evaluate(p0, p1) ==
              h.evaluate(a * p0 + b * p1, c * p0 + d2 * p1));
    }
}

TEST_CASE("form matrix determinant matches evaluation") {
    Rng rng(44);
    for (int t = 0; t < 15; ++t) {
        std::vector<std::vector<BinaryForm>> m(3, std::vector<BinaryForm>());
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) m[static_cast<std::size_t>(i)].push_back(random_form(rng, 2));
        BinaryForm det = form_det(m);
        GaussianRational p0 = rng.gaussian_integer(-4, 4), p1 = rng.gaussian_integer(-4, 4);
        Matrix num(3, 3);
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) num.at(i, j) = m[i][j].evaluate(p0, p1);
        CHECK(det.evaluate(p0, p1) == determinant(num));
    }
}
