#include "support.hpp"

#include "hitting/errors.hpp"

#include <doctest.h>

#include <random>

using namespace hitting;
using hitting::test::q;

TEST_CASE("validate_discrete") {
    const DiscreteChain smallest = validate_discrete({{q(1, 3), q(2, 3)}, {q(0), q(1)}});
    CHECK(smallest.d() == 1);
    CHECK(smallest.all_reach_absorbing());

    CHECK_THROWS_AS(validate_discrete({{q(1, 2), q(1, 2)}, {q(1, 2), q(1, 2)}}), AbsorbingRowError);
    CHECK_THROWS_AS(validate_discrete({{q(1, 3), q(1, 3)}, {q(0), q(1)}}), RowSumError);
    CHECK_THROWS_AS(validate_discrete({{q(-1, 3), q(4, 3)}, {q(0), q(1)}}), NegativeEntryError);
    CHECK_THROWS_AS(validate_discrete({{q(1)}}), ShapeError);
    CHECK_THROWS_AS(validate_discrete({{q(1), q(0), q(0)}, {q(0), q(1), q(0)}}), ShapeError);

    const DiscreteChain reducible =
        validate_discrete({{q(1), q(0), q(0)}, {q(0), q(1, 2), q(1, 2)}, {q(0), q(0), q(1)}});
    CHECK_FALSE(reducible.all_reach_absorbing());
    CHECK(reducible.reaches_absorbing() == std::vector<bool>{false, true, true});
}

TEST_CASE("validate_continuous") {
    const ContinuousChain exp2 = validate_continuous({{q(-2), q(2)}, {q(0), q(0)}});
    CHECK(exp2.exit_rate(0) == q(2));
    CHECK(exp2.Q()(0, 1) == q(2));
    CHECK_THROWS_AS(validate_continuous({{q(-1), q(2)}, {q(0), q(0)}}), RowSumError);
    CHECK_NOTHROW(validate_continuous({{q(-3), q(1), q(2)}, {q(0), q(-2), q(2)}, {q(0), q(0), q(0)}}));
    CHECK_THROWS_AS(validate_continuous({{q(1), q(-1)}, {q(0), q(0)}}), NegativeEntryError);
    CHECK_THROWS_AS(validate_continuous({{q(-1), q(1)}, {q(1), q(-1)}}), AbsorbingRowError);
    // A trap state (zero exit rate) is legal but cannot reach d.
    const ContinuousChain trap = validate_continuous({{q(0), q(0)}, {q(0), q(0)}});
    CHECK_FALSE(trap.all_reach_absorbing());
}

TEST_CASE("parse_chain") {
    const Chain c = parse_chain(R"({"kind": "discrete", "matrix": [["1/3", "2/3"], ["0", "1"]]})");
    REQUIRE(std::holds_alternative<DiscreteChain>(c));
    CHECK(std::get<DiscreteChain>(c).d() == 1);

    CHECK_THROWS_AS(parse_chain(R"({"kind": "continuous", "matrix": [[-1, 1, 0], [0, 0, 0]]})"), ShapeError);
    CHECK_THROWS_AS(parse_chain(R"({"kind": "continuous", "matrix": [[-1, 1], [0]]})"), ShapeError);

    const Chain dec = parse_chain(R"({"kind": "discrete", "matrix": [["0.1", "0.9"], [0, 1]]})");
    CHECK(std::get<DiscreteChain>(dec).P()(0, 0) == q(1, 10));

    CHECK_THROWS_AS(parse_chain(R"({"kind": "discrete", "matrix": [[0.5, 0.5], [0, 1]]})"), SyntaxError);
    CHECK_THROWS_AS(parse_chain("{not json"), SyntaxError);
    CHECK_THROWS_AS(parse_chain(R"({"kind": "weird", "matrix": [[1]]})"), SyntaxError);
    CHECK_THROWS_AS(parse_chain(R"({"matrix": [[1]]})"), SyntaxError);
    CHECK_THROWS_AS(parse_chain(R"({"kind": "discrete", "matrix": [["1/0", 1], [0, 1]]})"), SyntaxError);
    CHECK_THROWS_AS(parse_chain(R"({"kind": "discrete", "matrix": [[true, 1], [0, 1]]})"), SyntaxError);
    CHECK_THROWS_AS(parse_chain(R"({"kind": "discrete", "matrix": [["0.3", "0.3"], [0, 1]]})"), RowSumError);
}

TEST_CASE("serializer emits lowest-terms fractions in a fixed key order") {
    const Chain c = parse_chain(R"({"matrix": [["2/6", "4/6"], [0, 1]], "kind": "discrete"})");
    CHECK(serialize_chain(c) == "{\"kind\":\"discrete\",\"matrix\":[[\"1/3\",\"2/3\"],[\"0\",\"1\"]]}\n");
    CHECK(chain_digest(c).size() == 64);
    CHECK(chain_digest(c) == chain_digest(parse_chain(serialize_chain(c))));
}

TEST_CASE("parse(serialize(chain)) is the identity on random chains") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t d = 1 + trial % 5;
        const DiscreteChain dc = test::random_discrete(rng, d);
        const Chain back = parse_chain(serialize_chain(Chain(dc)));
        CHECK(std::get<DiscreteChain>(back).P() == dc.P());
        const ContinuousChain cc = test::random_continuous(rng, d);
        const Chain back_c = parse_chain(serialize_chain(Chain(cc)));
        CHECK(std::get<ContinuousChain>(back_c).Q() == cc.Q());
    }
}
