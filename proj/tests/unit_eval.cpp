#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "cvssi/error.hpp"
#include "cvssi/eval.hpp"
#include "oracles.hpp"
#include "test_images.hpp"

using namespace cvssi;

namespace {

// tie-free random vector: a shuffled permutation with distinct jitter
std::vector<double> random_tiefree(std::size_t n, std::uint64_t& state) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = static_cast<double>(i) + 0.25 * testimg::unit(state);
    for (std::size_t i = n; i > 1; --i) {
        const std::size_t j = testimg::splitmix64(state) % i;
        std::swap(v[i - 1], v[j]);
    }
    return v;
}

} // namespace

TEST_CASE("srocc hand values") {
    CHECK(srocc(ScorePairs({1, 2, 3, 4}, {10, 20, 30, 40})) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(srocc(ScorePairs({1, 2, 3}, {3, 1, 2})) == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(srocc(ScorePairs({1, 2, 3, 4}, {9, 7, 5, 3})) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK_THROWS_AS(srocc(ScorePairs({2, 2, 2}, {1, 2, 3})), UndefinedCorrelationError);
    CHECK_THROWS_AS(srocc(ScorePairs({1}, {1})), ShapeError);
}

TEST_CASE("srocc handles ties with average ranks") {
    // ranks of x: 1, 2.5, 2.5, 4 -> pearson vs 1..4 is 3/sqrt(10)
    CHECK(srocc(ScorePairs({1, 2, 2, 3}, {1, 2, 3, 4})) ==
          doctest::Approx(3.0 / std::sqrt(10.0)).epsilon(1e-14));
}

TEST_CASE("krocc hand values") {
    CHECK(krocc(ScorePairs({1, 2, 3}, {4, 5, 6})) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(krocc(ScorePairs({1, 2, 3}, {3, 1, 2})) == doctest::Approx(-1.0 / 3.0).epsilon(1e-14));
    CHECK(krocc(ScorePairs({1, 2, 3}, {6, 5, 4})) == doctest::Approx(-1.0).epsilon(1e-14));
    // tied pair counts toward neither side: nc=2, nd=0 over denominator 3
    CHECK(krocc(ScorePairs({1, 1, 2}, {1, 2, 3})) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
    CHECK_THROWS_AS(krocc(ScorePairs({5, 5}, {1, 2})), UndefinedCorrelationError);
}

TEST_CASE("rank correlations match brute-force oracles on random tie-free data") {
    std::uint64_t state = 20240601;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 4 + testimg::splitmix64(state) % 61; // [4, 64]
        const std::vector<double> x = random_tiefree(n, state);
        const std::vector<double> s = random_tiefree(n, state);
        const ScorePairs pairs(x, s);
        CHECK(std::fabs(srocc(pairs) - oracle::srocc_tiefree(x, s)) <= 1e-12);
        CHECK(std::fabs(krocc(pairs) - oracle::krocc_pairs(x, s)) <= 1e-12);
    }
}

TEST_CASE("rank correlations are invariant under monotone transforms") {
    std::uint64_t state = 7;
    const std::vector<double> x = random_tiefree(24, state);
    const std::vector<double> s = random_tiefree(24, state);
    std::vector<double> warped(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        warped[i] = std::exp(x[i] / 10.0);
    CHECK(srocc(ScorePairs(x, s)) == srocc(ScorePairs(warped, s)));
    CHECK(krocc(ScorePairs(x, s)) == krocc(ScorePairs(warped, s)));
}

TEST_CASE("plcc hand values and affine invariance") {
    CHECK(plcc(ScorePairs({1, 2, 3, 5}, {1, 2, 3, 5}), false) ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(plcc(ScorePairs({1, 2, 3, 5}, {-1, -2, -3, -5}), false) ==
          doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(plcc(ScorePairs({1, 2, 3, 4}, {1, 2, 3, 5}), false) ==
          doctest::Approx(6.5 / std::sqrt(43.75)).epsilon(1e-14));

    std::uint64_t state = 99;
    const std::vector<double> x = random_tiefree(16, state);
    const std::vector<double> s = random_tiefree(16, state);
    std::vector<double> affine(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        affine[i] = 3.5 * x[i] + 11.0;
    CHECK(std::fabs(plcc(ScorePairs(x, s), false) - plcc(ScorePairs(affine, s), false)) <= 1e-12);

    CHECK_THROWS_AS(plcc(ScorePairs({1, 1, 1}, {1, 2, 3}), false), UndefinedCorrelationError);
}

TEST_CASE("rmse hand values") {
    CHECK(rmse(ScorePairs({1, 2, 3}, {1, 2, 3}), false) == 0.0);
    CHECK(rmse(ScorePairs({1, 2, 3}, {2, 3, 4}), false) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(rmse(ScorePairs({0, 0}, {3, 4}), false) ==
          doctest::Approx(std::sqrt(12.5)).epsilon(1e-14));
}

TEST_CASE("fit_logistic reproduces exact linear relations") {
    std::vector<double> x, s_id, s_line;
    for (int i = 0; i < 30; ++i) {
        x.push_back(0.3 * i - 2.0);
        s_id.push_back(x.back());
        s_line.push_back(2.0 * x.back() + 3.0);
    }
    CHECK(rmse(ScorePairs(x, s_id), true) < 1e-8);
    CHECK(rmse(ScorePairs(x, s_line), true) < 1e-8);
    CHECK(plcc(ScorePairs(x, s_line), true) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fit_logistic beats the linear fit on saturating data") {
    std::vector<double> x, s;
    for (int i = 0; i < 50; ++i) {
        const double xi = -6.0 + 12.0 * i / 49.0;
        x.push_back(xi);
        s.push_back(1.0 / (1.0 + std::exp(-xi)));
    }
    const double mapped = rmse(ScorePairs(x, s), true);
    const double linear = oracle::linear_fit_rmse(x, s);
    CHECK(mapped < linear);
}

TEST_CASE("fit_logistic never loses to the linear fit") {
    std::uint64_t state = 31337;
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 8 + testimg::splitmix64(state) % 40;
        std::vector<double> x = random_tiefree(n, state);
        std::vector<double> s(n);
        for (std::size_t i = 0; i < n; ++i)
            s[i] = 2.0 * x[i] + 5.0 * testimg::unit(state);
        const ScorePairs pairs(x, s);
        CHECK(rmse(pairs, true) <= oracle::linear_fit_rmse(x, s) + 1e-12);
    }
}

TEST_CASE("fit_logistic is deterministic") {
    std::vector<double> x, s;
    std::uint64_t state = 5;
    for (int i = 0; i < 40; ++i) {
        x.push_back(0.05 * i);
        s.push_back(3.0 / (1.0 + std::exp(-4.0 * (0.05 * i - 1.0))) + 0.2 * testimg::unit(state));
    }
    const ScorePairs pairs(x, s);
    const LogisticParams a = fit_logistic(pairs);
    const LogisticParams b = fit_logistic(pairs);
    CHECK(a.a1 == b.a1);
    CHECK(a.a2 == b.a2);
    CHECK(a.a3 == b.a3);
    CHECK(a.a4 == b.a4);
    CHECK(a.a5 == b.a5);
    CHECK(a.converged == b.converged);
}

TEST_CASE("evaluate produces a coherent report") {
    std::vector<double> x, s;
    for (int i = 0; i < 25; ++i) {
        x.push_back(i);
        s.push_back(i);
    }
    const CorrelationReport rep = evaluate(ScorePairs(x, s));
    CHECK(rep.n == 25);
    CHECK(rep.srocc == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.krocc == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.plcc == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.rmse < 1e-8);
}

TEST_CASE("overall_weighted aggregates by dataset size") {
    CorrelationReport a;
    a.srocc = 0.8;
    a.krocc = 0.6;
    a.plcc = 0.7;
    a.rmse = 1.0;
    CorrelationReport b = a;
    b.srocc = 1.0;

    const CorrelationReport single = overall_weighted({{a, 100}});
    CHECK(single.srocc == doctest::Approx(0.8).epsilon(1e-14));

    const CorrelationReport even = overall_weighted({{a, 100}, {b, 100}});
    CHECK(even.srocc == doctest::Approx(0.9).epsilon(1e-14));
    CHECK(even.n == 200);

    CorrelationReport t1, t2, t3;
    t1.srocc = 0.9001;
    t2.srocc = 0.9580;
    t3.srocc = 0.9672;
    const CorrelationReport overall = overall_weighted({{t1, 1700}, {t2, 866}, {t3, 779}});
    CHECK(std::fabs(overall.srocc - 0.9307) <= 0.0005);

    CHECK_THROWS_AS(overall_weighted({}), ShapeError);
}
