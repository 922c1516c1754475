#include "support.hpp"

#include "hitting/errors.hpp"
#include "hitting/hitting.hpp"
#include "hitting/oracle.hpp"

#include <doctest.h>

#include <cmath>
#include <map>
#include <random>

using namespace hitting;
using hitting::test::poly;
using hitting::test::q;

namespace {

DiscreteChain tc1() { return validate_discrete({{q(1, 3), q(2, 3)}, {q(0), q(1)}}); }

DiscreteChain ladder() {
    return validate_discrete({{q(0), q(1), q(0)}, {q(0), q(0), q(1)}, {q(0), q(0), q(1)}});
}

// Birth-death: r0 = 1/2, p01 = 1/2; q10 = 1/4, r1 = 1/4, p12 = 1/2.
DiscreteChain tc3() {
    return validate_discrete({{q(1, 2), q(1, 2), q(0)}, {q(1, 4), q(1, 4), q(1, 2)}, {q(0), q(0), q(1)}});
}

DiscreteChain tc4() {
    return validate_discrete({{q(0), q(1, 2), q(1, 2)}, {q(1, 2), q(0), q(1, 2)}, {q(0), q(0), q(1)}});
}

ContinuousChain exp2() { return validate_continuous({{q(-2), q(2)}, {q(0), q(0)}}); }

ContinuousChain ladder12() {
    return validate_continuous({{q(-1), q(1), q(0)}, {q(0), q(-2), q(2)}, {q(0), q(0), q(0)}});
}

} // namespace

TEST_CASE("build_submatrix") {
    const PolyMatrix a2 = build_submatrix(tc1(), 2);
    REQUIRE(a2.rows() == 1);
    CHECK(a2(0, 0) == poly({q(1), q(-1, 3)}));
    CHECK(build_submatrix(tc1(), 1)(0, 0) == poly({q(0), q(-2, 3)}));
    CHECK(build_submatrix(exp2(), 2)(0, 0) == poly({q(2), q(1)}));
    CHECK_THROWS_AS(build_submatrix(tc1(), 0), IndexError);
    CHECK_THROWS_AS(build_submatrix(tc1(), 3), IndexError);
}

TEST_CASE("discrete transforms of the named fixtures") {
    const auto f = hitting_gf_discrete(tc1(), 0);
    CHECK(f.func == RationalFunction(poly({q(0), q(2, 3)}), poly({q(1), q(-1, 3)})));
    CHECK(f.absorption_probability == q(1));

    CHECK(hitting_gf_discrete(ladder(), 0).func == RationalFunction(poly({q(0), q(0), q(1)})));
    CHECK(hitting_gf_discrete(ladder(), 1).func == RationalFunction(poly({q(0), q(1)})));

    // First-step system by hand: f0 = s(f1/2 + 1/2), f1 = s(f0/2 + 1/2)
    // => f0 (1 - s^2/4) = (s/2)(1 + s/2) => f0 = s/(2 - s).
    const auto g = hitting_gf_discrete(tc4(), 0);
    CHECK(g.func == RationalFunction(poly({q(0), q(1)}), poly({q(2), q(-1)})));
    const auto series = pmf(g, 12);
    const auto oracle = pmf_matrix_power(tc4(), 0, 12);
    CHECK(series.exact == oracle.exact);
    for (std::size_t n = 1; n <= 12; ++n)
        CHECK(series.exact[n] == pow(q(1, 2), static_cast<unsigned>(n)));

    CHECK_THROWS_AS(hitting_gf_discrete(tc1(), 1), IndexError);
}

TEST_CASE("continuous transforms of the named fixtures") {
    const auto e = hitting_lt_continuous(exp2(), 0);
    CHECK(e.func == RationalFunction(Polynomial(q(2)), poly({q(2), q(1)})));
    CHECK(e.absorption_probability == q(1));
    const auto l0 = hitting_lt_continuous(ladder12(), 0);
    CHECK(l0.func == RationalFunction(Polynomial(q(2)), poly({q(1), q(1)}) * poly({q(2), q(1)})));
    CHECK(hitting_lt_continuous(ladder12(), 1).func == RationalFunction(Polynomial(q(2)), poly({q(2), q(1)})));
}

TEST_CASE("first_step_residual") {
    const DiscreteChain c = tc3();
    auto transforms = all_transforms(c);
    for (const auto &r : first_step_residual(c, transforms))
        CHECK(r.is_zero());

    transforms[0].func += RationalFunction(Polynomial::variable());
    const auto corrupted = first_step_residual(c, transforms);
    CHECK_FALSE(corrupted[0].is_zero());

    const ContinuousChain e = exp2();
    const auto te = all_transforms(e);
    const auto res = first_step_residual(e, te);
    REQUIRE(res.size() == 1);
    CHECK(res[0].is_zero());

    CHECK_THROWS_AS(first_step_residual(e, all_transforms(tc1())), KindMismatch);
    CHECK_THROWS_AS(first_step_residual(c, std::span(transforms).first(1)), KindMismatch);
}

TEST_CASE("pmf") {
    CHECK(pmf(hitting_gf_discrete(tc1(), 0), 3).exact == std::vector<BigRational>{q(0), q(2, 3), q(2, 9), q(2, 27)});
    CHECK(pmf(hitting_gf_discrete(ladder(), 0), 3).exact == std::vector<BigRational>{q(0), q(0), q(1), q(0)});
    // Path enumeration: 0->0->1->2 (1/2*1/2*1/2) ... gives [0, 0, 1/4, 3/16].
    const auto paths = test::pmf_by_paths(tc3(), 0, 3);
    CHECK(paths == std::vector<BigRational>{q(0), q(0), q(1, 4), q(3, 16)});
    CHECK(pmf(hitting_gf_discrete(tc3(), 0), 3).exact == paths);
    CHECK_THROWS_AS(pmf(hitting_lt_continuous(exp2(), 0), 3), KindMismatch);
}

TEST_CASE("moments") {
    const auto g = hitting_gf_discrete(tc4(), 0);
    CHECK(mean(g) == q(2));
    CHECK(variance(g) == q(2));
    const auto l = hitting_gf_discrete(ladder(), 0);
    CHECK(mean(l) == q(2));
    CHECK(variance(l) == q(0));
    const auto c = hitting_lt_continuous(ladder12(), 0);
    CHECK(mean(c) == q(3, 2));
    // Var = 1 + 1/4 for independent Exp(1) + Exp(2).
    CHECK(variance(c) == q(5, 4));
    // Exp(2): E[tau^k] = k!/2^k.
    const auto e = hitting_lt_continuous(exp2(), 0);
    CHECK(moment(e, 3) == q(6, 8));
    CHECK(moment(e, 4) == q(24, 16));
    // Geometric(2/3): factorial moments k! (1-p)^{k-1}/p^k
    CHECK(moment(hitting_gf_discrete(tc1(), 0), 2) == q(2) * q(1, 3) / (q(2, 3) * q(2, 3)));
    CHECK_THROWS_AS(moment(g, 5), std::invalid_argument);

    const DiscreteChain reducible =
        validate_discrete({{q(1, 2), q(1, 4), q(1, 4)}, {q(0), q(1), q(0)}, {q(0), q(0), q(1)}});
    const auto defective = hitting_gf_discrete(reducible, 0);
    CHECK(defective.absorption_probability == q(1, 2));
    CHECK_THROWS_AS(mean(defective), DefectiveDistribution);
    CHECK(pmf(defective, 3).exact == std::vector<BigRational>{q(0), q(1, 4), q(1, 8), q(1, 16)});
}

TEST_CASE("density_partial_fractions") {
    // Cover-up rule on 2/((s+1)(s+2)): residues 2 at -1 and -2 at -2.
    const auto terms = density_partial_fractions(hitting_lt_continuous(ladder12(), 0));
    REQUIRE(terms.size() == 2);
    std::map<BigRational, BigRational> by_rate;
    for (const auto &t : terms) {
        REQUIRE(t.exact_rate);
        by_rate[*t.exact_rate] = *t.exact_weight;
    }
    CHECK(by_rate.at(q(1)) == q(2));
    CHECK(by_rate.at(q(2)) == q(-2));
    CHECK(recombine(terms) == hitting_lt_continuous(ladder12(), 0).func);
    CHECK(density_at(terms, 0.7) == doctest::Approx(2 * std::exp(-0.7) - 2 * std::exp(-1.4)).epsilon(1e-14));
    CHECK(cdf_at(terms, 1.0) == doctest::Approx(1 - 2 * std::exp(-1.0) + std::exp(-2.0)).epsilon(1e-14));

    const auto single = density_partial_fractions(hitting_lt_continuous(exp2(), 0));
    REQUIRE(single.size() == 1);
    CHECK(*single[0].exact_rate == q(2));
    CHECK(*single[0].exact_weight == q(2));

    HittingTimeTransform complex_pair;
    complex_pair.kind = TransformKind::laplace_transform;
    complex_pair.func = RationalFunction(Polynomial(q(1)), poly({q(1), q(1), q(1)}));
    CHECK_THROWS_AS(density_partial_fractions(complex_pair), ComplexPole);

    HittingTimeTransform repeated;
    repeated.kind = TransformKind::laplace_transform;
    repeated.func = RationalFunction(Polynomial(q(1)), poly({q(1), q(1)}) * poly({q(1), q(1)}));
    CHECK_THROWS_AS(density_partial_fractions(repeated), RepeatedPole);

    HittingTimeTransform improper = repeated;
    improper.func = RationalFunction(poly({q(1), q(1)}), poly({q(2), q(1)}));
    CHECK_THROWS_AS(density_partial_fractions(improper), ImproperTransform);

    CHECK_THROWS_AS(density_partial_fractions(hitting_gf_discrete(tc1(), 0)), KindMismatch);
}

TEST_CASE("property: series PMF equals the matrix-power oracle exactly") {
    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t d = 1 + trial % 6;
        const DiscreteChain c = test::random_discrete(rng, d, 6, 0.6);
        const auto transforms = all_transforms(c);
        for (const auto &t : transforms) {
            CHECK(pmf(t, 30).exact == pmf_matrix_power(c, t.start, 30).exact);
            CHECK(t.func(q(0)).is_zero());
            CHECK((t.absorption_probability == q(1)) == test::certain_absorption(c, t.start));
            CHECK(t.absorption_probability.is_zero() == !c.reaches_absorbing()[t.start]);
        }
        for (const auto &r : first_step_residual(c, transforms))
            CHECK(r.is_zero());
        if (d <= 3) {
            for (const auto &t : transforms)
                CHECK(pmf(t, 6).exact == test::pmf_by_paths(c, t.start, 6));
        }
    }
}

TEST_CASE("property: continuous transforms are positive and decreasing on the grid") {
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 40; ++trial) {
        const ContinuousChain c = test::random_continuous(rng, 1 + trial % 5);
        const auto transforms = all_transforms(c);
        for (const auto &r : first_step_residual(c, transforms))
            CHECK(r.is_zero());
        for (const auto &t : transforms) {
            CHECK((t.absorption_probability == q(1)) == test::certain_absorption(c, t.start));
            if (!t.is_certain())
                continue;
            BigRational prev = q(2);
            for (const auto &s : {q(0), q(1, 2), q(1), q(2), q(4)}) {
                const BigRational v = t.func(s);
                CHECK(v.sign() > 0);
                CHECK(v <= q(1));
                CHECK(v < prev);
                prev = v;
            }
        }
    }
}

TEST_CASE("property: partial fractions recombine to the birth-death transform") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 30; ++trial) {
        const ContinuousChain c = test::random_birth_death(rng, 1 + trial % 5);
        for (const auto &t : all_transforms(c)) {
            const auto terms = density_partial_fractions(t);
            if (terms.front().exact_rate) {
                CHECK(recombine(terms) == t.func);
            } else {
                for (double s : {0.0, 0.5, 1.0, 2.0}) {
                    double acc = 0.0;
                    for (const auto &term : terms)
                        acc += term.weight / (s + term.rate);
                    CHECK(acc == doctest::Approx(t.func.evaluate(s)).epsilon(1e-10));
                }
            }
        }
    }
}
