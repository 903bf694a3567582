#pragma once

#include <cstdint>
#include <vector>

#include "semcomm/matrix.hpp"

namespace semcomm::ib {

/// Goal-oriented compression instance: joint pmf over observation X
/// (rows) and relevance variable Theta (columns), target codebook size,
/// and the compression/relevance trade-off weight.
struct RelevanceProblem {
    Matrix joint;           // p(x, theta)
    int z_cardinality = 1;  // |Z|
    double beta = 1.0;      // weight on I(Z; Theta)
};

void check_valid(const RelevanceProblem& problem);

struct Options {
    int restarts = 10;
    double tol = 1e-8;     // max-norm encoder change
    int max_iter = 500;
    std::uint64_t seed = 1;
};

/// Converged (or iteration-capped) solution of one problem. The
/// objective trace records I(X;Z) - beta I(Z;Theta) after every full
/// update round; it is nonincreasing up to floating-point slack.
struct Solution {
    Matrix encoder;                       // p(z|x), |X| x |Z|
    std::vector<double> marginal;         // p(z)
    Matrix decoder;                       // p(theta|z), |Z| x |Theta|
    std::vector<double> objective_trace;
    bool converged = false;
    int iterations = 0;
    double compression = 0.0;             // I(X;Z)
    double relevance = 0.0;               // I(Z;Theta)
    double objective = 0.0;
};

/// Self-consistent iteration for min I(X;Z) - beta I(Z;Theta):
/// p(z|x) <- p(z) exp(-beta KL(p(theta|x) || p(theta|z))) / Z(x),
/// then refresh p(z) and p(theta|z). Log-domain with max-subtraction;
/// best of `restarts` Dirichlet(1) initializations wins.
Solution solve(const RelevanceProblem& problem, const Options& options = {});

struct PlanePoint {
    double beta;
    double compression;  // I(X;Z)
    double relevance;    // I(Z;Theta)
    double objective;
    int iterations;
    bool converged;
};

/// One solve per beta on a sorted grid; the standard information-plane
/// diagnostic. Restart seeds are derived per grid point.
std::vector<PlanePoint> information_plane(const RelevanceProblem& base,
                                          const std::vector<double>& beta_grid,
                                          const Options& options = {});

/// Exact mutual-information audit of a statistic T = t(X): the data
/// processing gap I(X;Theta) - I(T;Theta) vanishes exactly when T is
/// sufficient for Theta.
struct SufficiencyReport {
    double information_x;  // I(X;Theta)
    double information_t;  // I(T;Theta)
    double gap;
    bool is_sufficient;
};

SufficiencyReport sufficiency_check(const Matrix& joint, const std::vector<int>& statistic,
                                    double tol = 1e-10);

/// Testable factorization criterion: within every level set of the
/// statistic, the ratio p(x,theta)/p(x',theta) must not depend on
/// theta. Cell pairs that are both zero are skipped; a single zero in a
/// compared pair fails the check.
bool factorization_check(const Matrix& joint, const std::vector<int>& statistic,
                         double rel_tol = 1e-10);

}  // namespace semcomm::ib
