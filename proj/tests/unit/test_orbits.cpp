#include "doctest.h"

#include "eggbeater/errors.hpp"
#include "eggbeater/orbits.hpp"
#include "eggbeater/rng.hpp"
#include "eggbeater/twist.hpp"

#include <cmath>

using namespace eggbeater;

namespace {

HomotopyClassSpec simple_class(std::int64_t a, std::int64_t b) {
    HomotopyClassSpec cls;
    cls.m = 1;
    cls.alpha = {a};
    cls.beta = {b};
    return cls;
}

double block_distance(const Vec& p, const Vec& q) { return (p - q).lpNorm<Eigen::Infinity>(); }

}  // namespace

TEST_CASE("step exponents follow the last-syllable-first order") {
    auto se = step_exponents(parse_even_word("a^2 b^-3 a^1 b^5"));
    REQUIRE(se.ka.size() == 2);
    CHECK(se.kb[0] == 5);
    CHECK(se.ka[0] == 1);
    CHECK(se.kb[1] == -3);
    CHECK(se.ka[1] == 2);
    CHECK(se.max_abs == 5);
}

TEST_CASE("class lengths per rule") {
    std::vector<std::int64_t> expected = {1, 3, 5, 10, 20};
    std::vector<std::int64_t> Ns = {500, 1000, 2000, 4000, 8000};
    for (std::size_t i = 0; i < Ns.size(); ++i) {
        auto params = make_params(1, 0.01, Ns[i]);
        CHECK(class_length(ClassRule::Kind::Quarter, params) == expected[i]);
        double len = static_cast<double>(class_length(ClassRule::Kind::Quarter, params));
        CHECK(len <= Ns[i] * 0.01 / 3);
    }
    auto params = make_params(1, 0.01, 2400);
    CHECK(class_length(ClassRule::Kind::Midrange, params) == 7);
}

TEST_CASE("make_class breaks cyclic symmetry on request") {
    auto params = make_params(1, 0.01, 2000);
    auto sym = make_class(ClassRule::quarter(false), 3, params);
    CHECK_FALSE(sym.symmetry_free());
    auto broken = make_class(ClassRule::quarter(true), 3, params);
    CHECK(broken.symmetry_free());
    CHECK(broken.beta.back() == -broken.beta.front());
    CHECK(make_class(ClassRule::quarter(true), 1, params).symmetry_free());
}

TEST_CASE("sign pattern indexing") {
    auto s = SignPattern::from_index(0b0110, 2);
    CHECK(s.sigma == std::vector<int>{-1, 1});
    CHECK(s.xi == std::vector<int>{1, -1});
    CHECK(s.index() == 0b0110);
    CHECK(s.to_string() == "-+/+-");
    for (std::uint64_t i = 0; i < 16; ++i) CHECK(SignPattern::from_index(i, 2).index() == i);
}

TEST_CASE("box geometry for the basic class") {
    auto params = make_params(1, 0.01, 1000);
    auto word = parse_even_word("a^1 b^1");
    auto boxes = build_boxes(simple_class(3, 3), SignPattern::uniform(1, -1), word, params);
    REQUIRE(boxes.size() == 2);
    CHECK(boxes[0].kind == BoxSpec::Kind::X);
    CHECK(boxes[0].c == doctest::Approx(-0.003));
    CHECK(boxes[0].center[0] == doctest::Approx(-0.003).epsilon(1e-9));
    CHECK(boxes[0].radius == doctest::Approx(0.001));
    CHECK(boxes[1].kind == BoxSpec::Kind::V);
    CHECK(boxes[1].c == doctest::Approx(0.003));
    CHECK(boxes[1].center[0] == doctest::Approx(0.003).epsilon(1e-9));
}

TEST_CASE("boxes of distinct patterns are disjoint above the threshold") {
    auto params = make_params(2, 0.01, 2000);
    auto word = parse_even_word("a^1 b^1 a^1 b^-1");
    REQUIRE(theory_supported(word, params));
    auto cls = make_class(ClassRule::quarter(), 2, params);
    std::vector<std::vector<BoxSpec>> all;
    for (std::uint64_t i = 0; i < 16; ++i) all.push_back(build_boxes(cls, SignPattern::from_index(i, 2), word, params));
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            bool separated = false;
            for (std::size_t b = 0; b < all[i].size(); ++b) {
                double gap = (all[i][b].center - all[j][b].center).norm();
                if (gap > all[i][b].radius + all[j][b].radius) separated = true;
            }
            CHECK(separated);
        }
}

TEST_CASE("inadmissible classes without roots are rejected") {
    auto params = make_params(1, 0.01, 1000);
    auto word = parse_even_word("a^1 b^1");
    try {
        build_boxes(simple_class(6, 3), SignPattern::uniform(1, -1), word, params);
        FAIL("expected rejection");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Rejected);
    }
    CHECK_FALSE(simple_class(6, 3).admissible(params));
    CHECK(simple_class(3, 3).admissible(params));
}

TEST_CASE("theory threshold") {
    auto word = parse_even_word("a^2 b^1");
    CHECK(theory_threshold(word, make_params(1, 0.01, 1000)) == doctest::Approx(2000.0));
    CHECK_FALSE(theory_supported(word, make_params(1, 0.01, 2000)));
    CHECK(theory_supported(word, make_params(1, 0.01, 2001)));
}

TEST_CASE("solve the basic fixed point") {
    auto params = make_params(1, 0.01, 1000);
    auto word = parse_even_word("a^1 b^1");
    auto fp = solve_fixed_point(word, params, simple_class(3, 3), SignPattern::uniform(1, -1));
    CHECK(std::fabs(fp.x[0][0] + 0.003) < 1e-3);
    CHECK(fp.residual < 1e-12);
    CHECK(record_residual(fp) == doctest::Approx(fp.residual).epsilon(1e-6).scale(1e-15));
    CHECK(fp.box_margin > 0.0);
}

TEST_CASE("random in-box starts converge to the same point") {
    auto params = make_params(2, 0.01, 2000);
    auto word = parse_even_word("a^1 b^-1");
    auto cls = make_class(ClassRule::quarter(), 1, params);
    for (std::uint64_t pat = 0; pat < 4; ++pat) {
        auto signs = SignPattern::from_index(pat, 1);
        auto ref = solve_fixed_point(word, params, cls, signs);
        auto boxes = build_boxes(cls, signs, word, params);
        auto rng = make_rng(11, {pat});
        for (int trial = 0; trial < 10; ++trial) {
            SolverOptions opt;
            opt.start = sample_in_boxes(boxes, rng);
            auto fp = solve_fixed_point(word, params, cls, signs, opt);
            CHECK(block_distance(fp.unknowns(), ref.unknowns()) < 1e-8);
        }
    }
}

TEST_CASE("below the threshold the solver never returns a point outside its boxes") {
    auto params = make_params(1, 0.01, 300);
    auto word = parse_even_word("a^2 b^2");
    auto cls = make_class(ClassRule::quarter(), 1, params);
    for (std::uint64_t pat = 0; pat < 4; ++pat) {
        try {
            auto fp = solve_fixed_point(word, params, cls, SignPattern::from_index(pat, 1));
            CHECK(fp.box_margin > 0.0);
            CHECK_FALSE(fp.theory_supported);
        } catch (const Error& e) {
            CHECK(e.numerical());
        }
    }
}

TEST_CASE("census sizes and containment") {
    auto word1 = parse_even_word("a^1 b^1");
    auto params = make_params(1, 0.01, 2000);
    auto recs = census(word1, params, make_class(ClassRule::quarter(), 1, params));
    REQUIRE(recs.size() == 4);
    for (std::size_t i = 0; i < recs.size(); ++i) {
        CHECK(recs[i].signs.index() == i);
        CHECK(recs[i].residual <= 1e-10);
        CHECK(recs[i].box_margin > 0.0);
    }
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j) CHECK(block_distance(recs[i].unknowns(), recs[j].unknowns()) > 1e-4);

    auto word2 = parse_even_word("a^1 b^1 a^1 b^1");
    auto recs2 = census(word2, params, make_class(ClassRule::quarter(), 2, params), 2);
    CHECK(recs2.size() == 16);
}

TEST_CASE("census is independent of the worker count") {
    auto word = parse_even_word("a^1 b^-1 a^-1 b^1");
    auto params = make_params(2, 0.01, 2000);
    auto cls = make_class(ClassRule::quarter(), 2, params);
    auto one = census(word, params, cls, 1);
    auto three = census(word, params, cls, 3);
    REQUIRE(one.size() == three.size());
    for (std::size_t i = 0; i < one.size(); ++i) CHECK((one[i].unknowns() - three[i].unknowns()).norm() == 0.0);
}

TEST_CASE("fixed points are fixed by the word action") {
    for (const char* ws : {"a^1 b^1", "a^-1 b^1", "a^2 b^-1"}) {
        CAPTURE(ws);
        auto word = parse_even_word(ws);
        auto params = make_params(2, 0.01, 2000);
        auto recs = census(word, params, make_class(ClassRule::quarter(), word.m(), params));
        for (const auto& fp : recs) {
            auto out = apply_word(make_chart_point(fp.v[0], fp.x[0]), word.word(), params);
            REQUIRE_FALSE(out.escaped);
            REQUIRE(out.point.chart == 1);
            CHECK((out.point.v - fp.v[0]).lpNorm<Eigen::Infinity>() <= 1e-10);
            CHECK((out.point.x() - fp.x[0]).lpNorm<Eigen::Infinity>() <= 1e-10);
        }
    }
}

// Forward substitution through m > 1 steps amplifies rounding by about N per syllable, so
// longer words are checked one step at a time: step j maps state j onto state j + 1.
TEST_CASE("each step of a longer word maps a state onto the next one") {
    for (const char* ws : {"a^1 b^-1 a^1 b^1", "a^1 b^1 a^1 b^1 a^-1 b^1"}) {
        CAPTURE(ws);
        auto word = parse_even_word(ws);
        auto params = make_params(2, 0.01, 2000);
        auto ks = step_exponents(word);
        auto recs = census(word, params, make_class(ClassRule::quarter(), word.m(), params));
        for (const auto& fp : recs) {
            const int m = fp.m();
            for (int j = 0; j < m; ++j) {
                Word step = reduce_word({{Generator::A, static_cast<long>(ks.ka[j])},
                                         {Generator::B, static_cast<long>(ks.kb[j])}});
                auto out = apply_word(make_chart_point(fp.v[j], fp.x[j]), step, params);
                REQUIRE_FALSE(out.escaped);
                int next = (j + 1) % m;
                CHECK((out.point.v - fp.v[next]).lpNorm<Eigen::Infinity>() <= 1e-10);
                CHECK((out.point.x() - fp.x[next]).lpNorm<Eigen::Infinity>() <= 1e-10);
            }
        }
    }
}

TEST_CASE("cyclic shifts map solutions to solutions") {
    auto params = make_params(1, 0.01, 2000);
    auto word = parse_even_word("a^1 b^1 a^1 b^1 a^1 b^1");
    auto cls = make_class(ClassRule::quarter(true), 3, params);
    REQUIRE(cls.symmetry_free());
    for (std::uint64_t pat : {0ull, 5ull, 22ull, 63ull}) {
        auto signs = SignPattern::from_index(pat, 3);
        auto fp = solve_fixed_point(word, params, cls, signs);
        for (int s = 1; s < 3; ++s) {
            auto moved = solve_fixed_point(word, params, cls.shifted(s), signs.shifted(s));
            for (int j = 0; j < 3; ++j) {
                CHECK((moved.v[j] - fp.v[(j + s) % 3]).norm() < 1e-12);
                CHECK((moved.x[j] - fp.x[(j + s) % 3]).norm() < 1e-12);
            }
        }
    }
}

TEST_CASE("expansion bound above the threshold") {
    auto params = make_params(1, 0.01, 2000);
    auto word = parse_even_word("a^1 b^1");
    auto cls = make_class(ClassRule::quarter(), 1, params);
    for (std::uint64_t pat = 0; pat < 4; ++pat) {
        auto rep = verify_expansion(word, params, cls, SignPattern::from_index(pat, 1), 1000, 3);
        CHECK(rep.bound == doctest::Approx(399.0));
        CHECK(rep.pairs + rep.skipped == 1000);
        CHECK(rep.holds());
    }
    auto rep = verify_expansion(word, make_params(1, 0.01, 1000), simple_class(3, 3), SignPattern::uniform(1, -1), 1000, 3);
    CHECK(rep.bound == doctest::Approx(199.0));
    CHECK(rep.min_ratio >= 199.0);
}

TEST_CASE("density experiment") {
    const double eps = 0.01;
    DensityTarget target;
    target.center = Vec(2);
    target.center << eps / 3.5, -eps / 3.5;
    target.radius = eps / 10;
    auto res = density_experiment(1, eps, DeltaRule{}, target, 5000);
    CHECK(res.nu > 0);
    Vec state(2);
    state << res.witness_v, res.witness_x;
    CHECK((state - target.center).lpNorm<Eigen::Infinity>() <= target.radius);
    CHECK(in_density_region(res.witness_v, res.witness_x, eps));
    CHECK(res.record.residual <= 1e-10);

    DensityTarget outside = target;
    outside.center << eps / 2, eps / 3.5;
    try {
        density_experiment(1, eps, DeltaRule{}, outside, 100);
        FAIL("expected rejection");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Rejected);
    }
    CHECK_THROWS_AS(density_experiment(1, eps, DeltaRule{}, target, 10), Error);
}

TEST_CASE("growth counts for small periods") {
    auto params = make_params(1, 0.01, 2000);
    auto base = parse_even_word("a^1 b^1");
    CHECK(growth_count(base, params, 1).count == 4);
    auto g2 = growth_count(base, params, 2);
    CHECK(g2.count == 16);
    CHECK(g2.expected == 16);
    CHECK(g2.failures.empty());
}
