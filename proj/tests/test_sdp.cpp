#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "ptune/error.hpp"
#include "ptune/rng.hpp"

using namespace ptune;

TEST_CASE("cut value and assignment value agree on binary vectors") {
    const MaxQPInstance g = random_maxcut(8, 0.7, 2);
    SplitMix64 rng(1);
    for (int s = 0; s < 50; ++s) {
        std::vector<int> x(8);
        std::vector<double> xd(8);
        for (int i = 0; i < 8; ++i) xd[i] = x[i] = rng.next() % 2 ? 1 : -1;
        CHECK(assignment_value(g, xd) == doctest::Approx(cut_value(g, x)));
    }
}

TEST_CASE("Burer-Monteiro embedding") {
    for (int s = 0; s < 4; ++s) {
        const MaxQPInstance g = random_maxcut(10, 0.5, 30 + s);
        BmOptions opt;
        opt.seed = 5;
        const BmResult r = embed_bm(g, opt);
        CHECK(max_norm_error(r.embedding) < 1e-12);
        CHECK(r.embedding.dim == static_cast<int>(std::ceil(std::sqrt(20.0))));
        CHECK(r.objective == doctest::Approx(sdp_objective(g, r.embedding)));
        for (std::size_t i = 1; i < r.history.size(); ++i) CHECK(r.history[i] >= r.history[i - 1] - 1e-15);
        // The relaxation bounds the best cut from above.
        CHECK(r.objective >= oracle::brute_force_maxcut(g) - 1e-6);
    }
}

TEST_CASE("K4 embedding attains the closed-form relaxation value") {
    const K4Fixture f = gen_k4_shatter(8, 1);
    const BmResult r = embed_bm(f.instance);
    CHECK(r.objective == doctest::Approx(sdp_objective(f.instance, f.embedding)).epsilon(1e-6));
}

TEST_CASE("s-linear rounding limits") {
    const K4Fixture f = gen_k4_shatter(8, 1);
    const std::vector<double> z = sample_z(4, 0, 8);
    const std::vector<double> y = projections(f.embedding, z);
    double ymin = kInf;
    for (double v : y) ymin = std::min(ymin, std::abs(v));
    std::vector<int> hyper(8);
    for (int i = 0; i < 8; ++i) hyper[i] = sign_of(y[i]);
    CHECK(slin_value(f.instance, f.embedding, z, 0.5 * ymin) == doctest::Approx(cut_value(f.instance, hyper)));
    CHECK(slin_value(f.instance, f.embedding, z, 1e9) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(slin_phi(3.0, 2.0) == 1.0);
    CHECK(slin_phi(-1.0, 2.0) == -0.5);
    CHECK_THROWS_AS(slin_value(f.instance, f.embedding, z, 0.0), Error);
}

TEST_CASE("s-linear ERM against a dense grid on random graphs") {
    const MaxQPInstance g = random_maxcut(9, 0.6, 71);
    const BmResult e = embed_bm(g);
    std::vector<RoundingSample> ss;
    for (std::uint64_t d = 0; d < 4; ++d) ss.push_back({&g, &e.embedding, sample_z(3, d, e.embedding.dim), {}});
    const RoundingErmResult r = slin_erm(ss);
    double grid = -kInf;
    for (int i = 0; i < 20000; ++i) {
        const double s = 1e-3 * std::pow(1e7, i / 19999.0);
        double v = 0.0;
        for (const auto& x : ss) v += slin_value(g, e.embedding, x.z, s);
        grid = std::max(grid, v / 4.0);
    }
    CHECK(r.best_value >= grid - 1e-12);
    CHECK(r.best_value - grid < 1e-5);
}

TEST_CASE("outward rotation at zero is hyperplane rounding") {
    const K4Fixture f = gen_k4_shatter(4, 1);
    const std::vector<double> z = sample_z(8, 1, 8);
    const std::vector<double> y = projections(f.embedding, z);
    const std::vector<int> x = owr_assign(f.embedding, z, 0.0);
    for (int i = 0; i < 4; ++i) CHECK(x[i] == sign_of(y[i]));
    const std::vector<int> last = owr_assign(f.embedding, z, M_PI / 2);
    for (int i = 0; i < 4; ++i) CHECK(last[i] == sign_of(z[4 + i]));
    CHECK_THROWS_AS(owr_assign(f.embedding, sample_z(8, 1, 4), 0.3), Error);
}

TEST_CASE("RPRT expectation") {
    const K4Fixture f = gen_k4_shatter(8, 1);
    const std::vector<double> z = sample_z(9, 2, 8);
    for (Baseline b : {Baseline::linear, Baseline::tanh})
        for (double s : {0.1, 1.0, 10.0})
            CHECK(rprt_expect(f.instance, f.embedding, z, b, s) == rpr2_value(f.instance, f.embedding, z, b, s));
    MaxQPInstance bad = f.instance;
    bad.matrix[0] = 0.25;
    try {
        rprt_expect(bad, f.embedding, z, Baseline::linear, 1.0);
        FAIL("expected NonNullDiagonal");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::non_null_diagonal);
    }
    CHECK(baseline_quantile(Baseline::linear, 0.75) == doctest::Approx(0.5));
    CHECK(baseline_f(Baseline::tanh, baseline_quantile(Baseline::tanh, 0.9)) == doctest::Approx(0.8));
    CHECK(parse_baseline(baseline_name(Baseline::tanh)) == Baseline::tanh);
    CHECK_THROWS_AS(parse_baseline("cubic"), Error);
}

TEST_CASE("RPRT ERM is constant between thresholds") {
    const K4Fixture f = gen_k4_shatter(8, 1);
    std::vector<RoundingSample> ss(3);
    for (std::uint64_t d = 0; d < 3; ++d) {
        ss[d].instance = &f.instance;
        ss[d].embedding = &f.embedding;
        sample_zq(21, d, 8, 8, Baseline::linear, ss[d].z, ss[d].q);
    }
    const RoundingErmResult r = rprt_erm(ss);
    for (std::size_t i = 0; i < r.values.size(); ++i) {
        double v = 0.0;
        for (const auto& s : ss) v += cut_value(f.instance, rprt_assign(f.embedding, s.z, s.q, r.argmax[i]));
        CHECK(r.values[i] == doctest::Approx(v / 3.0));
    }
    CHECK(r.best_value == *std::max_element(r.values.begin(), r.values.end()));
}

TEST_CASE("discretized grid geometry") {
    const DiscretizedGrid g(0.5);
    CHECK(g.steps == static_cast<long long>(std::floor(std::sqrt(2.0 * std::log(2.0)) / 0.25)) + 1);
    CHECK(g.B == doctest::Approx(g.steps * 0.25));
    CHECK(g.half_values == 1);
    CHECK(g.interval_of(-g.B) == -1);
    CHECK(g.interval_of(g.B) == -2);
    CHECK(g.interval_of(0.0) == -3);
    for (int i = 0; i < g.finite_intervals(); ++i) {
        const auto b = g.interval_bounds(i);
        CHECK(b.first < b.second);
        CHECK(g.interval_of(b.first + 0.25 * (b.second - b.first)) == i);
    }
    CHECK_THROWS_AS(DiscretizedEnumerator(0.1), Error);
}

TEST_CASE("discretized best spec is the maximum over the enumeration") {
    const K4Fixture f = gen_k4_shatter(4, 1);
    std::vector<RoundingSample> ss;
    for (std::uint64_t d = 0; d < 3; ++d) ss.push_back({&f.instance, &f.embedding, sample_z(5, d, 4), {}});
    const DiscBest best = disc_best(ss, 0.7);
    CHECK(best.evaluated == 27);
    DiscretizedEnumerator en(0.7);
    DiscretizedSpec spec;
    while (en.next(spec)) {
        double v = 0.0;
        for (const auto& s : ss) v += disc_value(f.instance, f.embedding, s.z, en.grid(), spec);
        CHECK(v / 3.0 <= best.value + 1e-12);
    }
}
