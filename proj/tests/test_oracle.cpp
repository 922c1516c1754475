#include "support.hpp"

#include "hitting/errors.hpp"
#include "hitting/hitting.hpp"
#include "hitting/oracle.hpp"
#include "hitting/random.hpp"

#include <doctest.h>

#include <cmath>

using namespace hitting;
using hitting::test::q;

namespace {

DiscreteChain ladder() {
    return validate_discrete({{q(0), q(1), q(0)}, {q(0), q(0), q(1)}, {q(0), q(0), q(1)}});
}

ContinuousChain exp2() { return validate_continuous({{q(-2), q(2)}, {q(0), q(0)}}); }

ContinuousChain ladder12() {
    return validate_continuous({{q(-1), q(1), q(0)}, {q(0), q(-2), q(2)}, {q(0), q(0), q(0)}});
}

} // namespace

TEST_CASE("philox4x32_10 known answers") {
    using A = std::array<std::uint32_t, 4>;
    CHECK(philox4x32_10({0, 0, 0, 0}, {0, 0}) == A{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
          A{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
}

TEST_CASE("CounterStream") {
    CounterStream a(1, 0), b(1, 0), c(1, 1), d(2, 0);
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    CHECK(x != c.next_u64());
    CHECK(x != d.next_u64());
    // First block of stream 0, seed 0 is philox({0,0,0,0},{0,0}).
    CounterStream z(0, 0);
    CHECK(z.next_u64() == ((std::uint64_t{0xe169c58d} << 32) | 0x6627e8d5));
    CHECK(z.next_u64() == ((std::uint64_t{0x9b00dbd8} << 32) | 0xbc57ac4c));
    for (int i = 0; i < 1000; ++i) {
        const double u = z.next_unit();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        const double v = z.next_unit_open_low();
        CHECK(v > 0.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("pmf_matrix_power") {
    const auto t = pmf_matrix_power(validate_discrete({{q(1, 3), q(2, 3)}, {q(0), q(1)}}), 0, 3);
    CHECK(t.source == TableSource::matrix_power);
    CHECK(t.exact == std::vector<BigRational>{q(0), q(2, 3), q(2, 9), q(2, 27)});
    CHECK(pmf_matrix_power(ladder(), 0, 3).exact == std::vector<BigRational>{q(0), q(0), q(1), q(0)});
    const DiscreteChain isolated =
        validate_discrete({{q(1), q(0), q(0)}, {q(0), q(1, 2), q(1, 2)}, {q(0), q(0), q(1)}});
    for (const auto &p : pmf_matrix_power(isolated, 0, 5).exact)
        CHECK(p.is_zero());
}

TEST_CASE("simulate_discrete") {
    McConfig cfg;
    cfg.samples = 200000;
    cfg.seed = 99;
    const auto geo = simulate_discrete(validate_discrete({{q(1, 2), q(1, 2)}, {q(0), q(1)}}), 0, cfg);
    CHECK(geo.censored == 0);
    CHECK(std::abs(geo.mean - 2.0) < 4.0 * std::sqrt(2.0 / cfg.samples));
    CHECK(geo.counts.size() >= 2);
    CHECK(geo.counts[0] == 0);

    const auto det = simulate_discrete(ladder(), 0, cfg);
    CHECK(det.mean == 2.0);
    CHECK(det.variance == 0.0);
    CHECK(det.counts[2] == cfg.samples);

    McConfig small = cfg;
    small.samples = 1000;
    small.max_steps = 50;
    const DiscreteChain isolated =
        validate_discrete({{q(1), q(0), q(0)}, {q(0), q(1, 2), q(1, 2)}, {q(0), q(0), q(1)}});
    const auto trapped = simulate_discrete(isolated, 0, small);
    CHECK(trapped.censored == small.samples);
    CHECK(trapped.censored_fraction() == 1.0);
}

TEST_CASE("simulate_continuous") {
    McConfig cfg;
    cfg.samples = 200000;
    cfg.seed = 5;
    const auto e = simulate_continuous(exp2(), 0, cfg);
    CHECK(e.censored == 0);
    CHECK(std::abs(e.mean - 0.5) < 4.0 * 0.5 / std::sqrt(double(cfg.samples)));
    CHECK(e.variance == doctest::Approx(0.25).epsilon(0.02));
    const auto l = simulate_continuous(ladder12(), 0, cfg);
    CHECK(std::abs(l.mean - 1.5) < 4.0 * std::sqrt(1.25 / cfg.samples));

    const ContinuousChain trap = validate_continuous({{q(-1), q(1), q(0)}, {q(0), q(0), q(0)}, {q(0), q(0), q(0)}});
    cfg.samples = 500;
    CHECK(simulate_continuous(trap, 0, cfg).censored == 500);
}

TEST_CASE("simulation is bit-identical across worker counts") {
    const DiscreteChain c = validate_discrete({{q(0), q(1, 2), q(1, 2)}, {q(1, 2), q(0), q(1, 2)}, {q(0), q(0), q(1)}});
    McConfig cfg;
    cfg.samples = 50000;
    cfg.seed = 2024;
    cfg.workers = 1;
    const auto one = simulate_discrete(c, 0, cfg);
    cfg.workers = 3;
    const auto three = simulate_discrete(c, 0, cfg);
    CHECK(one.mean == three.mean);
    CHECK(one.variance == three.variance);
    CHECK(one.counts == three.counts);

    cfg.workers = 1;
    const auto a = simulate_continuous(ladder12(), 0, cfg);
    cfg.workers = 4;
    const auto b = simulate_continuous(ladder12(), 0, cfg);
    CHECK(a.mean == b.mean);
    CHECK(a.variance == b.variance);
}

TEST_CASE("uniformization") {
    const DiscreteChain u = uniformized_chain(ladder12());
    CHECK(u.P()(0, 0) == q(1, 2));
    CHECK(u.P()(0, 1) == q(1, 2));
    CHECK(u.P()(1, 2) == q(1));
    CHECK_THROWS_AS(uniformized_chain(validate_continuous({{q(0), q(0)}, {q(0), q(0)}})), AllRatesZero);

    CHECK(poisson_truncation(0.0, 1e-10) == 0);
    CHECK(poisson_truncation(10.0, 1e-10) > 10);

    const auto e = cdf_uniformization(exp2(), 0, {0.0, 0.5, 1.0, 3.0});
    CHECK(e.kind == TableKind::cdf);
    CHECK(e.values[0] == 0.0);
    for (std::size_t i = 1; i < e.support.size(); ++i)
        CHECK(std::abs(e.values[i] - (1 - std::exp(-2 * e.support[i]))) < 1e-9);
    const auto l = cdf_uniformization(ladder12(), 0, {1.0, 2.0});
    CHECK(std::abs(l.values[0] - (1 - 2 * std::exp(-1.0) + std::exp(-2.0))) < 1e-9);
    CHECK_THROWS_AS(cdf_uniformization(exp2(), 0, {-1.0}), InputError);

    for (double s : {0.0, 0.5, 1.0, 2.0, 4.0}) {
        CHECK(std::abs(laplace_uniformization(exp2(), 0, s) - 2.0 / (s + 2.0)) < 1e-10);
        CHECK(std::abs(laplace_uniformization(ladder12(), 0, s) - 2.0 / ((s + 1) * (s + 2))) < 1e-10);
    }
}

TEST_CASE("property: uniformization agrees with partial fractions on birth-death chains") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 15; ++trial) {
        const ContinuousChain c = test::random_birth_death(rng, 1 + trial % 4);
        const auto terms = density_partial_fractions(hitting_lt_continuous(c, 0));
        const auto table = cdf_uniformization(c, 0, {0.5, 1.0, 2.0});
        for (std::size_t i = 0; i < table.support.size(); ++i)
            CHECK(std::abs(table.values[i] - cdf_at(terms, table.support[i])) < 1e-8);
    }
}
