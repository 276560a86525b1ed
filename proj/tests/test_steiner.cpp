#include <catch2/catch_amalgamated.hpp>

#include "cech_oracle.hpp"
#include "kron/steiner.hpp"
#include "test_util.hpp"

using namespace kron;
using kron::testutil::gq;
using kron::testutil::mono;

namespace {

SteinerResolution twisted_cubic_jacobian() {
    std::vector<std::vector<BinaryForm>> m = {{mono(2, 0, 3), BinaryForm::zero(2)},
                                              {mono(2, 1, 2), mono(2, 0)},
                                              {mono(2, 2), mono(2, 1, 2)},
                                              {BinaryForm::zero(2), mono(2, 2, 3)}};
    return SteinerResolution({1, 1}, {3, 3, 3, 3}, m);
}

}  // namespace

TEST_CASE("validation fixtures") {
    auto d = validate_resolution(twisted_cubic_jacobian());
    CHECK(d.generically_injective);
    CHECK(d.cokernel_locally_free);
    CHECK(d.witness.is_nonzero_constant());

    SteinerResolution col({0}, {1, 1}, {{mono(1, 0)}, {mono(1, 1)}});
    auto dc = validate_resolution(col);
    CHECK(dc.generically_injective);
    CHECK(dc.cokernel_locally_free);

    SteinerResolution shared({0}, {2, 2}, {{mono(2, 0)}, {mono(2, 1)}});
    auto ds = validate_resolution(shared);
    CHECK(ds.generically_injective);
    CHECK_FALSE(ds.cokernel_locally_free);
    CHECK(ds.witness == mono(1, 0));  // the common factor x0

    CHECK_THROWS_AS(SteinerResolution({0}, {1, 1}, {{mono(2, 0)}, {mono(1, 1)}}),
                    std::invalid_argument);  // degree-inconsistent entry
    CHECK_THROWS_AS(SteinerResolution({0, 0}, {1}, {{mono(1, 0), mono(1, 1)}}),
                    std::invalid_argument);  // needs more targets than sources
}

TEST_CASE("twist cohomology of the twisted cubic resolution") {
    SteinerResolution res = twisted_cubic_jacobian();
    CHECK(h0_twist(res, -3) == 6);
    CHECK(h0_twist(res, 0) == 12);
    CHECK(h0_twist(res, -6) == 0);
    CHECK(h1_twist(res, -3) == 0);
}

TEST_CASE("independent chart-gluing oracle agrees at the frozen twists") {
    SteinerResolution res = twisted_cubic_jacobian();
    CHECK(testutil::cech_h0(res, -3, 8, 14, 11) == 6);
    CHECK(testutil::cech_h0(res, -6, 11, 20, 14) == 0);
    SteinerResolution col({0}, {1, 1}, {{mono(1, 0)}, {mono(1, 1)}});
    CHECK(testutil::cech_h0_stable(col, 0) == 3);  // sections of O(2)
    CHECK(testutil::cech_h0_stable(col, -2) == 1);

    // quartic Jacobian: vanishing at twist -8 pins the [7, 7] splitting
    // together with the total degree
    std::vector<std::vector<BinaryForm>> m = {{mono(3, 0, 4), BinaryForm::zero(3)},
                                              {BinaryForm::zero(3), mono(3, 3, 4)},
                                              {mono(3, 1, 3), mono(3, 0)},
                                              {mono(3, 3), mono(3, 2, 3)}};
    SteinerResolution quartic({1, 1}, {4, 4, 4, 4}, m);
    CHECK(testutil::cech_h0(quartic, -8, 13, 23, 16) == 0);
}

TEST_CASE("euler characteristic holds across the default window") {
    SteinerResolution res = twisted_cubic_jacobian();
    CohomologyTable t = cohomology_table(res);
    for (long k = t.k_min; k <= t.k_max; ++k) {
        long chi = 0;
        for (long f : res.target_twists()) chi += f + k + 1;
        for (long e : res.source_twists()) chi -= e + k + 1;
        auto [h0, h1] = t.at(k);
        CHECK(h0 - h1 == chi);
    }
    // monotone counting
    for (long k = t.k_min + 1; k <= t.k_max; ++k) {
        long jump = t.at(k).first - t.at(k - 1).first;
        CHECK(jump >= 0);
        CHECK(jump <= res.cokernel_rank());
        if (k > t.k_min + 1) CHECK(jump >= t.at(k - 1).first - t.at(k - 2).first);
    }
}

TEST_CASE("splitting fixtures") {
    CHECK(splitting_type(twisted_cubic_jacobian()) == std::vector<long>{5, 5});
    SteinerResolution col({0}, {1, 1}, {{mono(1, 0)}, {mono(1, 1)}});
    CHECK(splitting_type(col) == std::vector<long>{2});

    // quartic with splitting [7, 7]: Jacobian of (x0^4, x1^4, x0^3 x1, x0 x1^3)
    std::vector<std::vector<BinaryForm>> m = {
        {mono(3, 0, 4), BinaryForm::zero(3)},
        {BinaryForm::zero(3), mono(3, 3, 4)},
        {mono(3, 1, 3), mono(3, 0)},
        {mono(3, 3), mono(3, 2, 3)}};
    SteinerResolution quartic({1, 1}, {4, 4, 4, 4}, m);
    CHECK(splitting_type(quartic) == std::vector<long>{7, 7});
}

TEST_CASE("splitting reproduces the twist table and respects direct sums") {
    SteinerResolution res = twisted_cubic_jacobian();
    auto degrees = splitting_type(res);
    long total = 0;
    for (long d : degrees) total += d;
    CHECK(total == res.total_degree());
    CohomologyTable t = cohomology_table(res);
    for (long k = t.k_min; k <= t.k_max; ++k) {
        long predicted = 0;
        for (long d : degrees) predicted += std::max(d + k + 1, 0L);
        CHECK(predicted == t.at(k).first);
    }

    // block-diagonal direct sum of two single-column presentations
    SteinerResolution block({0, -1}, {1, 1, 2, 2},
                            {{mono(1, 0), BinaryForm::zero(0)},
                             {mono(1, 1), BinaryForm::zero(0)},
                             {BinaryForm::zero(3), mono(3, 0)},
                             {BinaryForm::zero(3), mono(3, 3)}});
    SteinerResolution first({0}, {1, 1}, {{mono(1, 0)}, {mono(1, 1)}});
    SteinerResolution second({-1}, {2, 2}, {{mono(3, 0)}, {mono(3, 3)}});
    auto sum = splitting_type(block);
    auto a = splitting_type(first), b = splitting_type(second);
    std::vector<long> merged = a;
    merged.insert(merged.end(), b.begin(), b.end());
    std::sort(merged.begin(), merged.end());
    CHECK(sum == merged);
}

TEST_CASE("generic section splitting recursion") {
    auto m41 = generic_section_splitting({16, 8, 2}, 8);
    REQUIRE(m41.size() == 3);
    CHECK(m41.at(0) == 2);
    CHECK(m41.at(1) == 4);
    CHECK(m41.at(2) == 2);

    auto cubic = generic_section_splitting({12, 6}, 6);
    REQUIRE(cubic.size() == 1);
    CHECK(cubic.at(1) == 6);

    CHECK(generic_section_splitting({}, 0).empty());

    // the uncorrected weight overshoots the degree-0 multiplicity
    auto raw = splitting_recursion_raw({16, 8, 2}, RecursionVariant::printed);
    CHECK(raw[0] == 10);
    CHECK_THROWS_AS(generic_section_splitting({16, 8, 2}, 8, RecursionVariant::printed),
                    std::domain_error);

    // inconsistent lists fail loudly
    CHECK_THROWS_AS(generic_section_splitting({16, 8, 2}, 9), std::domain_error);
    CHECK_THROWS_AS(generic_section_splitting({3, 8, 2}, 8), std::domain_error);
}

TEST_CASE("recursion inverts evaluation on random multisets") {
    Rng rng(21);
    for (int t = 0; t < 60; ++t) {
        std::map<long, long> mult;
        long top = rng.uniform(0, 4);
        long rank_total = 0;
        for (long i = 0; i <= top; ++i) {
            long r = rng.uniform(0, 3);
            if (i == top && r == 0) r = 1;
            if (r > 0) mult[i] = r;
            rank_total += r;
        }
        std::vector<long> h0(static_cast<std::size_t>(top + 1), 0);
        for (long i = 0; i <= top; ++i)
            for (auto [j, r] : mult)
                if (j >= i) h0[static_cast<std::size_t>(i)] += (j - i + 1) * r;
        auto back = generic_section_splitting(h0, rank_total);
        CHECK(back == mult);
    }
}

TEST_CASE("cohomology requires a locally free cokernel") {
    SteinerResolution shared({0}, {2, 2}, {{mono(2, 0)}, {mono(2, 1)}});
    CHECK_THROWS_AS(h0_twist(shared, 0), std::invalid_argument);
    CHECK_THROWS_AS(splitting_type(shared), std::invalid_argument);
}
