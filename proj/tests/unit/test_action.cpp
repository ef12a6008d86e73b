#include "doctest.h"

#include "eggbeater/action.hpp"
#include "eggbeater/errors.hpp"
#include "eggbeater/symplectic.hpp"

#include <cmath>

using namespace eggbeater;

namespace {

// Per-unit-N gap h(r+) - h(r-) - c (r+ - r-) at c = eps/4, eps = 0.01, from the piecewise
// profile; evaluated independently with adaptive quadrature.
constexpr double kGapPerN = 9.017556509887894e-06;

std::vector<FixedPointRecord> basic_census(std::int64_t N, int n = 1, const char* w = "a^1 b^1") {
    auto word = parse_even_word(w);
    auto params = make_params(n, 0.01, N);
    return census(word, params, make_class(ClassRule::quarter(), word.m(), params));
}

}  // namespace

TEST_CASE("segment values sum to the total") {
    for (const auto& fp : basic_census(2000, 2, "a^1 b^-1 a^2 b^1")) {
        for (const auto& br : {action_exact(fp), action_closed(fp)}) {
            REQUIRE(br.segment_values.size() == 4);
            double sum = 0.0;
            for (double s : br.segment_values) sum += s;
            CHECK(sum == br.total);
        }
    }
}

TEST_CASE("closed form matches the plugged-in radii") {
    auto recs = basic_census(4000);
    Profile profile(recs[0].params);
    for (const auto& fp : recs) {
        auto br = action_closed(fp);
        CHECK(br.method == ActionBreakdown::Method::ClosedForm);
        const double N = 4000.0;
        Vec beta = fp.cls.beta_vector(0, 1);
        Vec alpha = fp.cls.alpha_vector(0, 1);
        const Vec& X = fp.x[0];
        Vec V = fp.v[0];
        double expected = N * profile.h(X.norm()) + X.dot(beta) + N * profile.h(V.norm()) - V.dot(alpha);
        CHECK(br.total == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("exact and closed actions stay close and the discrepancy does not grow") {
    double previous = std::numeric_limits<double>::infinity();
    for (std::int64_t N : {1000, 2000, 4000, 8000}) {
        double worst = 0.0;
        auto recs = basic_census(N);
        for (const auto& fp : recs) {
            double ex = action_exact(fp).total, cl = action_closed(fp).total;
            worst = std::max(worst, std::fabs(ex - cl));
        }
        CHECK(worst < 1e-6);
        CHECK(worst <= previous);
        previous = worst;
    }
}

TEST_CASE("for m = 2 the closed form misses exactly the step coupling") {
    for (const char* w : {"a^1 b^-1 a^1 b^1", "a^1 b^1 a^1 b^1"}) {
        double raw = 0.0;
        for (const auto& fp : basic_census(4000, 1, w)) {
            double ex = action_exact(fp).total, cl = action_closed(fp).total;
            raw = std::max(raw, std::fabs(ex - cl));
            CHECK(std::fabs(ex - cl - action_coupling(fp)) < 1e-9);
        }
        CHECK(raw > 1e-5);
    }
    for (const auto& fp : basic_census(2000)) CHECK(action_coupling(fp) == 0.0);
}

TEST_CASE("action differences do not depend on where the chart transition happens") {
    auto recs = basic_census(2000, 2, "a^1 b^1 a^-1 b^1");
    std::vector<double> base, moved;
    for (const auto& fp : recs) {
        base.push_back(action_exact(fp).total);
        ActionOptions opt;
        opt.transition_shift = 0.01;
        moved.push_back(action_exact(fp, opt).total);
    }
    for (std::size_t i = 1; i < recs.size(); ++i)
        CHECK((moved[i] - moved[0]) == doctest::Approx(base[i] - base[0]).epsilon(1e-9).scale(1e-9));
    ActionOptions far;
    far.transition_shift = 0.4;
    CHECK_THROWS_AS(action_exact(recs[0], far), Error);
}

TEST_CASE("index-adjacent action gap") {
    auto recs = basic_census(8000);
    std::vector<IndexValue> idx;
    std::vector<double> A;
    for (const auto& fp : recs) {
        idx.push_back(cz_index_pipeline(fp));
        A.push_back(action_exact(fp).total);
    }
    auto gap = action_gap(recs, idx, A);
    CHECK(gap.extremal_pattern == extremal_pattern(recs[0].word).index());
    CHECK(gap.extremal_unique);
    CHECK(gap.extremal_is_max);
    CHECK(gap.extremal_index == IndexValue::integer(2));
    REQUIRE(gap.witnesses.size() == 2);
    CHECK(gap.witnesses[0].difference == doctest::Approx(gap.witnesses[1].difference).epsilon(1e-9));
    CHECK(gap.D / 8000.0 == doctest::Approx(kGapPerN).epsilon(1e-3));
}

TEST_CASE("extremal pattern for mixed signs") {
    auto pat = extremal_pattern(parse_even_word("a^1 b^-2 a^-1 b^3"));
    // step 0 uses (ka, kb) = (-1, 3), step 1 uses (1, -2)
    CHECK(pat.sigma == std::vector<int>{-1, 1});
    CHECK(pat.xi == std::vector<int>{1, -1});
}

TEST_CASE("gap input validation") {
    auto recs = basic_census(2000);
    std::vector<IndexValue> idx(3);
    std::vector<double> A(4);
    CHECK_THROWS(action_gap(recs, idx, A));
}
