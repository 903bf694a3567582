#include "semcomm/bottleneck.hpp"

#include <cmath>

#include "doctest.h"
#include "semcomm/measures.hpp"
#include "semcomm/rng.hpp"
#include "support/oracles.hpp"

using namespace semcomm;

namespace {

// Four iid Bernoulli(theta) draws, theta in {0.2, 0.8} with equal
// prior: the classic sufficiency playground. Joint built cell by cell
// from first principles.
Matrix bernoulli4_joint() {
    const double thetas[2] = {0.2, 0.8};
    Matrix joint(16, 2);
    for (int x = 0; x < 16; ++x) {
        const int k = ((x >> 0) & 1) + ((x >> 1) & 1) + ((x >> 2) & 1) + ((x >> 3) & 1);
        for (int t = 0; t < 2; ++t)
            joint(static_cast<std::size_t>(x), static_cast<std::size_t>(t)) =
                0.5 * std::pow(thetas[t], k) * std::pow(1.0 - thetas[t], 4 - k);
    }
    return joint;
}

std::vector<int> sum_statistic() {
    std::vector<int> t(16);
    for (int x = 0; x < 16; ++x)
        t[static_cast<std::size_t>(x)] =
            ((x >> 0) & 1) + ((x >> 1) & 1) + ((x >> 2) & 1) + ((x >> 3) & 1);
    return t;
}

std::vector<int> first_bit_statistic() {
    std::vector<int> t(16);
    for (int x = 0; x < 16; ++x) t[static_cast<std::size_t>(x)] = x & 1;
    return t;
}

ib::RelevanceProblem random_problem(Rng& rng) {
    const std::size_t nx = 3 + rng.next_below(8);
    const std::size_t nt = 2 + rng.next_below(4);
    ib::RelevanceProblem p;
    p.joint = Matrix(nx, nt);
    const auto cells = rng.dirichlet(nx * nt);
    for (std::size_t x = 0; x < nx; ++x)
        for (std::size_t t = 0; t < nt; ++t) p.joint(x, t) = cells[x * nt + t];
    p.z_cardinality = 2 + static_cast<int>(rng.next_below(4));
    p.beta = 5.0 * rng.next_double();
    return p;
}

}  // namespace

TEST_CASE("ib solve: beta zero compresses everything away") {
    Rng rng(1);
    ib::RelevanceProblem p = random_problem(rng);
    p.beta = 0.0;
    ib::Options opt;
    opt.restarts = 3;
    const auto sol = ib::solve(p, opt);
    CHECK(sol.compression <= 1e-9);
    CHECK(sol.converged);
}

TEST_CASE("ib solve: single cluster carries nothing") {
    Rng rng(2);
    ib::RelevanceProblem p = random_problem(rng);
    p.z_cardinality = 1;
    p.beta = 3.0;
    const auto sol = ib::solve(p, {});
    CHECK(sol.compression == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(sol.relevance == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("ib solve: deterministic relevance at large beta recovers the partition") {
    // Theta = x mod 3 over eight uniform observations; the partition of
    // X by g attains I(Z;Theta) = H(Theta), the exact-partition optimum.
    Matrix joint(8, 3);
    for (int x = 0; x < 8; ++x)
        joint(static_cast<std::size_t>(x), static_cast<std::size_t>(x % 3)) = 1.0 / 8.0;

    oracle::Joint oj;
    for (int x = 0; x < 8; ++x) oj.add(static_cast<std::size_t>(x),
                                       static_cast<std::size_t>(x % 3), 1.0 / 8.0);
    const double h_theta = oj.h_col();
    CHECK(oj.mutual() == doctest::Approx(h_theta).epsilon(1e-12));  // I(X;Theta) = H(Theta)

    ib::RelevanceProblem p;
    p.joint = joint;
    p.z_cardinality = 3;
    p.beta = 100.0;
    ib::Options opt;
    opt.restarts = 10;
    opt.seed = 7;
    const auto sol = ib::solve(p, opt);
    CHECK(sol.relevance >= 0.99 * h_theta);
}

TEST_CASE("ib solve: objective trace is nonincreasing and tables are valid") {
    Rng rng(42);
    for (int i = 0; i < 100; ++i) {
        const ib::RelevanceProblem p = random_problem(rng);
        ib::Options opt;
        opt.restarts = 2;
        opt.max_iter = 200;
        opt.seed = 1000 + static_cast<std::uint64_t>(i);
        const auto sol = ib::solve(p, opt);

        REQUIRE(sol.objective_trace.size() >= 2);
        for (std::size_t t = 1; t < sol.objective_trace.size(); ++t)
            CHECK(sol.objective_trace[t] <= sol.objective_trace[t - 1] + 1e-9);

        for (std::size_t x = 0; x < sol.encoder.rows(); ++x)
            CHECK(sol.encoder.row_sum(x) == doctest::Approx(1.0).epsilon(1e-9));
        double zsum = 0.0;
        for (double v : sol.marginal) zsum += v;
        CHECK(zsum == doctest::Approx(1.0).epsilon(1e-9));
        for (std::size_t z = 0; z < sol.decoder.rows(); ++z)
            CHECK(sol.decoder.row_sum(z) == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("information plane: degenerate grid and data-processing bounds") {
    Rng rng(5);
    const ib::RelevanceProblem base = random_problem(rng);
    const double i_x_theta = mutual_information_bits(base.joint);

    ib::Options opt;
    opt.restarts = 3;
    const auto zero = ib::information_plane(base, {0.0}, opt);
    REQUIRE(zero.size() == 1);
    CHECK(zero[0].compression <= 1e-9);
    CHECK(zero[0].relevance <= 1e-9);

    const auto pts = ib::information_plane(base, {0.0, 0.5, 1.0, 2.0, 4.0, 8.0}, opt);
    for (const auto& pt : pts) {
        CHECK(pt.relevance <= i_x_theta + 1e-9);
        CHECK(pt.compression <= std::log2(static_cast<double>(base.z_cardinality)) + 1e-9);
        CHECK(pt.relevance <= pt.compression + 1e-9);  // Z is a function of X alone
    }

    CHECK_THROWS_AS(ib::information_plane(base, {1.0, 0.5}, opt), config_error);
}

TEST_CASE("sufficiency: bernoulli sum is sufficient, first draw is not") {
    const Matrix joint = bernoulli4_joint();

    // Oracle values by direct enumeration over all 16 sequences.
    oracle::Joint ox, osum, ofirst;
    const auto tsum = sum_statistic();
    const auto tfirst = first_bit_statistic();
    for (int x = 0; x < 16; ++x)
        for (int t = 0; t < 2; ++t) {
            const double p = joint(static_cast<std::size_t>(x), static_cast<std::size_t>(t));
            ox.add(static_cast<std::size_t>(x), static_cast<std::size_t>(t), p);
            osum.add(static_cast<std::size_t>(tsum[static_cast<std::size_t>(x)]),
                     static_cast<std::size_t>(t), p);
            ofirst.add(static_cast<std::size_t>(tfirst[static_cast<std::size_t>(x)]),
                       static_cast<std::size_t>(t), p);
        }
    CHECK(ox.mutual() - osum.mutual() <= 1e-12);          // sum loses nothing
    CHECK(ox.mutual() - ofirst.mutual() > 0.01);          // one draw loses plenty

    const auto rep_sum = ib::sufficiency_check(joint, tsum, 1e-10);
    CHECK(rep_sum.gap <= 1e-12);
    CHECK(rep_sum.is_sufficient);
    CHECK(rep_sum.information_x == doctest::Approx(ox.mutual()).epsilon(1e-9));
    CHECK(rep_sum.information_t == doctest::Approx(osum.mutual()).epsilon(1e-9));

    const auto rep_first = ib::sufficiency_check(joint, tfirst, 1e-10);
    CHECK(rep_first.gap > 0.01);
    CHECK_FALSE(rep_first.is_sufficient);
    CHECK(rep_first.information_t == doctest::Approx(ofirst.mutual()).epsilon(1e-9));
}

TEST_CASE("sufficiency: identity statistic has exactly zero gap") {
    const Matrix joint = bernoulli4_joint();
    std::vector<int> identity(16);
    for (int x = 0; x < 16; ++x) identity[static_cast<std::size_t>(x)] = x;
    const auto rep = ib::sufficiency_check(joint, identity);
    CHECK(rep.gap == 0.0);
    CHECK(rep.is_sufficient);
}

TEST_CASE("factorization: bernoulli statistics") {
    const Matrix joint = bernoulli4_joint();
    CHECK(ib::factorization_check(joint, sum_statistic()));
    CHECK_FALSE(ib::factorization_check(joint, first_bit_statistic()));
}

TEST_CASE("factorization: single-parameter models accept any statistic") {
    Rng rng(9);
    Matrix joint(6, 1);
    const auto mass = rng.dirichlet(6);
    for (std::size_t x = 0; x < 6; ++x) joint(x, 0) = mass[x];
    std::vector<int> t{0, 1, 0, 2, 1, 0};
    CHECK(ib::factorization_check(joint, t));
    CHECK(ib::sufficiency_check(joint, t).gap <= 1e-12);
}

TEST_CASE("factorization agrees with the sufficiency gap on random positive joints") {
    Rng rng(31337);
    int sufficient_seen = 0, insufficient_seen = 0;
    for (int i = 0; i < 200; ++i) {
        const std::size_t nt = 2 + rng.next_below(3);
        const std::size_t classes = 2 + rng.next_below(3);
        const std::size_t nx = classes + rng.next_below(6);

        std::vector<int> statistic(nx);
        for (std::size_t x = 0; x < nx; ++x)
            statistic[x] = static_cast<int>(x < classes ? x : rng.next_below(classes));

        Matrix joint(nx, nt);
        if (i % 2 == 0) {
            // Factorized by construction: p(x,theta) = g(t(x),theta) h(x).
            Matrix g(classes, nt);
            for (std::size_t c = 0; c < classes; ++c)
                for (std::size_t t = 0; t < nt; ++t) g(c, t) = 0.05 + rng.next_double();
            std::vector<double> h(nx);
            for (auto& v : h) v = 0.05 + rng.next_double();
            double total = 0.0;
            for (std::size_t x = 0; x < nx; ++x)
                for (std::size_t t = 0; t < nt; ++t) {
                    joint(x, t) = g(static_cast<std::size_t>(statistic[x]), t) * h[x];
                    total += joint(x, t);
                }
            for (std::size_t x = 0; x < nx; ++x)
                for (std::size_t t = 0; t < nt; ++t) joint(x, t) /= total;
        } else {
            const auto cells = rng.dirichlet(nx * nt);
            for (std::size_t x = 0; x < nx; ++x)
                for (std::size_t t = 0; t < nt; ++t) joint(x, t) = 0.8 * cells[x * nt + t] +
                                                                   0.2 / static_cast<double>(nx * nt);
        }

        const bool factorized = ib::factorization_check(joint, statistic, 1e-8);
        const bool sufficient = ib::sufficiency_check(joint, statistic, 1e-10).is_sufficient;
        CHECK(factorized == sufficient);
        (sufficient ? sufficient_seen : insufficient_seen)++;
    }
    // The instance generator must exercise both outcomes.
    CHECK(sufficient_seen > 50);
    CHECK(insufficient_seen > 50);
}

TEST_CASE("relevance problem validation") {
    ib::RelevanceProblem p;
    p.joint = Matrix{{0.5, 0.4}};  // sums to 0.9
    CHECK_THROWS_AS(ib::check_valid(p), config_error);
    p.joint = Matrix{{0.5, 0.5}};
    p.z_cardinality = 0;
    CHECK_THROWS_AS(ib::check_valid(p), config_error);
    p.z_cardinality = 2;
    p.beta = -1.0;
    CHECK_THROWS_AS(ib::check_valid(p), config_error);
}
