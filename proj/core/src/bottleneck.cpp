#include "semcomm/bottleneck.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "semcomm/measures.hpp"
#include "semcomm/rng.hpp"

namespace semcomm::ib {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Workspace {
    std::vector<double> px;          // row marginal of the (reduced) joint
    Matrix rel;                      // p(theta|x) rows, only for px > 0
    std::vector<int> theta_keep;     // surviving theta columns
    Matrix joint;                    // reduced joint
};

Workspace reduce(const Matrix& joint) {
    Workspace w;
    // Zero-probability theta columns carry no relevance mass; drop them.
    for (std::size_t c = 0; c < joint.cols(); ++c)
        if (joint.col_sum(c) > 0.0) w.theta_keep.push_back(static_cast<int>(c));
    w.joint = Matrix(joint.rows(), w.theta_keep.size());
    for (std::size_t r = 0; r < joint.rows(); ++r)
        for (std::size_t c = 0; c < w.theta_keep.size(); ++c)
            w.joint(r, c) = joint(r, static_cast<std::size_t>(w.theta_keep[c]));
    w.px = w.joint.row_sums();
    w.rel = Matrix(joint.rows(), w.theta_keep.size());
    for (std::size_t r = 0; r < joint.rows(); ++r) {
        if (w.px[r] <= 0.0) continue;
        for (std::size_t c = 0; c < w.theta_keep.size(); ++c)
            w.rel(r, c) = w.joint(r, c) / w.px[r];
    }
    return w;
}

/// KL(p || q) in nats; +inf when p puts mass where q does not.
double kl_nats(std::span<const double> p, std::span<const double> q) {
    double kl = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] <= 0.0) continue;
        if (q[i] <= 0.0) return kInf;
        kl += p[i] * std::log(p[i] / q[i]);
    }
    return kl;
}

void refresh(const Workspace& w, const Matrix& encoder, std::vector<double>& marginal,
             Matrix& decoder) {
    const std::size_t nx = encoder.rows(), nz = encoder.cols(), nt = w.rel.cols();
    marginal.assign(nz, 0.0);
    for (std::size_t x = 0; x < nx; ++x)
        for (std::size_t z = 0; z < nz; ++z) marginal[z] += w.px[x] * encoder(x, z);
    decoder = Matrix(nz, nt);
    for (std::size_t z = 0; z < nz; ++z) {
        if (marginal[z] > 0.0) {
            for (std::size_t x = 0; x < nx; ++x) {
                const double wxz = encoder(x, z);
                if (wxz <= 0.0) continue;
                for (std::size_t t = 0; t < nt; ++t) decoder(z, t) += w.joint(x, t) * wxz;
            }
            for (std::size_t t = 0; t < nt; ++t) decoder(z, t) /= marginal[z];
        } else {
            for (std::size_t t = 0; t < nt; ++t)
                decoder(z, t) = 1.0 / static_cast<double>(nt);  // dead cluster, unused
        }
    }
}

double objective_bits(const Workspace& w, const Matrix& encoder,
                      const std::vector<double>& marginal, const Matrix& decoder, double beta,
                      double* compression, double* relevance) {
    const std::size_t nx = encoder.rows(), nz = encoder.cols(), nt = decoder.cols();
    Matrix joint_xz(nx, nz);
    for (std::size_t x = 0; x < nx; ++x)
        for (std::size_t z = 0; z < nz; ++z) joint_xz(x, z) = w.px[x] * encoder(x, z);
    Matrix joint_zt(nz, nt);
    for (std::size_t z = 0; z < nz; ++z)
        for (std::size_t t = 0; t < nt; ++t) joint_zt(z, t) = marginal[z] * decoder(z, t);
    const double ixz = mutual_information_bits(joint_xz);
    const double izt = mutual_information_bits(joint_zt);
    if (compression) *compression = ixz;
    if (relevance) *relevance = izt;
    return ixz - beta * izt;
}

Solution solve_once(const Workspace& w, int z_card, double beta, const Options& options,
                    std::uint64_t seed) {
    const std::size_t nx = w.px.size(), nz = static_cast<std::size_t>(z_card);
    Rng rng(seed);

    Matrix encoder(nx, nz, 1.0 / static_cast<double>(nz));
    for (std::size_t x = 0; x < nx; ++x) {
        if (w.px[x] <= 0.0) continue;  // never observed; row choice is moot
        const auto row = rng.dirichlet(nz);
        for (std::size_t z = 0; z < nz; ++z) encoder(x, z) = row[z];
    }

    Solution sol;
    std::vector<double> marginal;
    Matrix decoder;
    refresh(w, encoder, marginal, decoder);
    sol.objective_trace.push_back(
        objective_bits(w, encoder, marginal, decoder, beta, nullptr, nullptr));

    std::vector<double> weight(nz);
    while (sol.iterations < options.max_iter) {
        double delta = 0.0;
        Matrix next = encoder;
        for (std::size_t x = 0; x < nx; ++x) {
            if (w.px[x] <= 0.0) continue;
            double wmax = -kInf;
            for (std::size_t z = 0; z < nz; ++z) {
                const double lp = marginal[z] > 0.0 ? std::log(marginal[z]) : -kInf;
                const double kl = kl_nats(w.rel.row(x), decoder.row(z));
                weight[z] = lp - beta * kl;
                wmax = std::max(wmax, weight[z]);
            }
            if (!std::isfinite(wmax))
                throw numeric_error("ib::solve: encoder update collapsed to zero weight");
            double norm = 0.0;
            for (std::size_t z = 0; z < nz; ++z) {
                weight[z] = std::exp(weight[z] - wmax);
                norm += weight[z];
            }
            for (std::size_t z = 0; z < nz; ++z) {
                const double v = weight[z] / norm;
                delta = std::max(delta, std::abs(v - encoder(x, z)));
                next(x, z) = v;
            }
        }
        encoder = std::move(next);
        ++sol.iterations;
        refresh(w, encoder, marginal, decoder);
        sol.objective_trace.push_back(
            objective_bits(w, encoder, marginal, decoder, beta, nullptr, nullptr));
        if (delta < options.tol) {
            sol.converged = true;
            break;
        }
    }

    sol.objective =
        objective_bits(w, encoder, marginal, decoder, beta, &sol.compression, &sol.relevance);
    sol.encoder = std::move(encoder);
    sol.marginal = std::move(marginal);
    sol.decoder = std::move(decoder);
    return sol;
}

}  // namespace

void check_valid(const RelevanceProblem& problem) {
    if (problem.joint.empty()) throw config_error("RelevanceProblem: empty joint");
    check_joint(problem.joint, "RelevanceProblem.joint");
    if (problem.z_cardinality < 1)
        throw config_error("RelevanceProblem: z_cardinality must be >= 1");
    if (!(problem.beta >= 0.0)) throw config_error("RelevanceProblem: beta must be >= 0");
}

Solution solve(const RelevanceProblem& problem, const Options& options) {
    check_valid(problem);
    if (options.restarts < 1) throw config_error("ib::solve: restarts must be >= 1");
    const Workspace w = reduce(problem.joint);
    if (w.theta_keep.empty()) throw config_error("RelevanceProblem: relevance variable has no mass");

    Solution best;
    bool have = false;
    for (int r = 0; r < options.restarts; ++r) {
        Solution sol = solve_once(w, problem.z_cardinality, problem.beta, options,
                                  derive_seed(options.seed, static_cast<std::uint64_t>(r)));
        if (!have || sol.objective < best.objective) {
            best = std::move(sol);
            have = true;
        }
    }

    // Re-expand the decoder over the original theta columns.
    if (w.theta_keep.size() != problem.joint.cols()) {
        Matrix full(best.decoder.rows(), problem.joint.cols());
        for (std::size_t z = 0; z < best.decoder.rows(); ++z)
            for (std::size_t c = 0; c < w.theta_keep.size(); ++c)
                full(z, static_cast<std::size_t>(w.theta_keep[c])) = best.decoder(z, c);
        best.decoder = std::move(full);
    }
    return best;
}

std::vector<PlanePoint> information_plane(const RelevanceProblem& base,
                                          const std::vector<double>& beta_grid,
                                          const Options& options) {
    if (!std::is_sorted(beta_grid.begin(), beta_grid.end()))
        throw config_error("information_plane: beta grid must be sorted ascending");
    std::vector<PlanePoint> points;
    points.reserve(beta_grid.size());
    for (std::size_t i = 0; i < beta_grid.size(); ++i) {
        RelevanceProblem p = base;
        p.beta = beta_grid[i];
        Options o = options;
        o.seed = derive_seed(options.seed, 0x706c616e65ULL + i);
        const Solution s = solve(p, o);
        points.push_back(
            {p.beta, s.compression, s.relevance, s.objective, s.iterations, s.converged});
    }
    return points;
}

SufficiencyReport sufficiency_check(const Matrix& joint, const std::vector<int>& statistic,
                                    double tol) {
    check_joint(joint, "sufficiency_check.joint");
    if (statistic.size() != joint.rows())
        throw config_error("sufficiency_check: statistic size does not match |X|");

    int tmax = -1;
    for (int t : statistic) {
        if (t < 0) throw config_error("sufficiency_check: statistic values must be >= 0");
        tmax = std::max(tmax, t);
    }
    Matrix tjoint(static_cast<std::size_t>(tmax) + 1, joint.cols());
    for (std::size_t x = 0; x < joint.rows(); ++x)
        for (std::size_t c = 0; c < joint.cols(); ++c)
            tjoint(static_cast<std::size_t>(statistic[x]), c) += joint(x, c);

    SufficiencyReport rep;
    rep.information_x = mutual_information_bits(joint);
    rep.information_t = mutual_information_bits(tjoint);
    rep.gap = rep.information_x - rep.information_t;
    rep.is_sufficient = rep.gap <= tol;
    return rep;
}

bool factorization_check(const Matrix& joint, const std::vector<int>& statistic,
                         double rel_tol) {
    check_joint(joint, "factorization_check.joint");
    if (statistic.size() != joint.rows())
        throw config_error("factorization_check: statistic size does not match |X|");

    // Group rows by statistic value, then compare every pair in a group.
    std::vector<std::vector<std::size_t>> groups;
    {
        std::vector<int> seen;
        for (std::size_t x = 0; x < joint.rows(); ++x) {
            const int t = statistic[x];
            std::size_t g = 0;
            for (; g < seen.size(); ++g)
                if (seen[g] == t) break;
            if (g == seen.size()) {
                seen.push_back(t);
                groups.emplace_back();
            }
            groups[g].push_back(x);
        }
    }

    for (const auto& group : groups) {
        for (std::size_t i = 0; i < group.size(); ++i) {
            for (std::size_t j = i + 1; j < group.size(); ++j) {
                const std::size_t x = group[i], xp = group[j];
                double ref = -1.0;
                for (std::size_t c = 0; c < joint.cols(); ++c) {
                    const double a = joint(x, c), b = joint(xp, c);
                    if (a == 0.0 && b == 0.0) continue;
                    if (a == 0.0 || b == 0.0) return false;
                    const double ratio = a / b;
                    if (ref < 0.0) {
                        ref = ratio;
                    } else if (std::abs(ratio - ref) > rel_tol * std::max(ratio, ref)) {
                        return false;
                    }
                }
            }
        }
    }
    return true;
}

}  // namespace semcomm::ib
