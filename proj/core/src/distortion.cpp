#include "wreathlab/distortion.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace wreathlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Eigen::MatrixXd squared_distances(const FiniteMetricSpace& space) {
    const auto n = static_cast<Eigen::Index>(space.size());
    Eigen::MatrixXd d2(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            const double d = space.dist(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
            d2(i, j) = d * d;
        }
    return d2;
}

/// Classical scaling: Gram matrix -1/2 J D2 J and its top eigenspace.
Eigen::MatrixXd mds_coordinates(const FiniteMetricSpace& space, Eigen::Index dim) {
    const auto n = static_cast<Eigen::Index>(space.size());
    const Eigen::MatrixXd d2 = squared_distances(space);
    const Eigen::MatrixXd j =
        Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / double(n));
    const Eigen::MatrixXd gram = -0.5 * j * d2 * j;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
    Eigen::MatrixXd coords = Eigen::MatrixXd::Zero(n, dim);
    for (Eigen::Index k = 0; k < dim && k < n; ++k) {
        const Eigen::Index idx = n - 1 - k; // eigenvalues ascend
        const double lambda = eig.eigenvalues()(idx);
        if (lambda <= 0) continue;
        coords.col(k) = eig.eigenvectors().col(idx) * std::sqrt(lambda);
    }
    return coords;
}

MapQuality quality_of_coords(const FiniteMetricSpace& src, const Eigen::MatrixXd& coords) {
    MapQuality q;
    double sup_ratio = 0, sup_inverse = 0, inf_ratio = kInf;
    for (Eigen::Index i = 0; i < coords.rows(); ++i)
        for (Eigen::Index j = i + 1; j < coords.rows(); ++j) {
            const double s = src.dist(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
            if (s == 0) continue;
            const double t = (coords.row(i) - coords.row(j)).norm();
            if (t == 0) {
                q.injective = false;
                q.distortion = kInf;
                q.expansion_ratio = 0;
                return q;
            }
            sup_ratio = std::max(sup_ratio, t / s);
            sup_inverse = std::max(sup_inverse, s / t);
            inf_ratio = std::min(inf_ratio, t / s);
        }
    q.distortion = sup_ratio * sup_inverse;
    q.expansion_ratio = inf_ratio == kInf ? 1 : inf_ratio;
    return q;
}

std::vector<std::vector<double>> to_rows(const Eigen::MatrixXd& coords) {
    std::vector<std::vector<double>> rows(static_cast<std::size_t>(coords.rows()));
    for (Eigen::Index i = 0; i < coords.rows(); ++i) {
        rows[static_cast<std::size_t>(i)].assign(coords.row(i).begin(), coords.row(i).end());
    }
    return rows;
}

struct FeasibilityOutcome {
    bool feasible = false;
    double residual = kInf;
    std::uint64_t iterations = 0;
    Eigen::MatrixXd gram;
};

/// Alternating projections between the psd cone (eigenvalue clipping)
/// and the per-pair slabs d_ij^2 <= Q_ii+Q_jj-2Q_ij <= c^2 d_ij^2.
FeasibilityOutcome project_feasible(const Eigen::MatrixXd& d2, double c2, Eigen::MatrixXd q,
                                    const SolverOptions& options) {
    const Eigen::Index n = d2.rows();
    FeasibilityOutcome out;
    double stall_best = kInf;
    std::uint64_t stall_since = 0;

    for (std::uint64_t iter = 0; iter < options.max_iterations; ++iter) {
        ++out.iterations;

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(q);
        Eigen::VectorXd vals = eig.eigenvalues();
        const double min_eig = vals.minCoeff();
        for (Eigen::Index k = 0; k < n; ++k) vals(k) = std::max(vals(k), 0.0);
        q = eig.eigenvectors() * vals.asDiagonal() * eig.eigenvectors().transpose();
        q = 0.5 * (q + q.transpose());

        double slab_violation = 0;
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = i + 1; j < n; ++j) {
                if (d2(i, j) == 0) continue;
                const double s = q(i, i) + q(j, j) - 2 * q(i, j);
                const double lo = d2(i, j), hi = c2 * d2(i, j);
                double target = s;
                if (s < lo)
                    target = lo;
                else if (s > hi)
                    target = hi;
                if (target != s) {
                    slab_violation = std::max(slab_violation, std::fabs(target - s));
                    const double t = (target - s) / 4.0; // Frobenius-minimal correction
                    q(i, i) += t;
                    q(j, j) += t;
                    q(i, j) -= t;
                    q(j, i) -= t;
                }
            }

        const double residual = std::max(slab_violation, std::max(0.0, -min_eig));
        out.residual = residual;
        out.gram = q;
        if (residual < options.residual_threshold) {
            out.feasible = true;
            return out;
        }
        if (residual < stall_best * 0.99995) {
            stall_best = residual;
            stall_since = iter;
        } else if (iter - stall_since > 600) {
            return out; // plateaued: treat as infeasible at this scale
        }
    }
    return out;
}

} // namespace

MapQuality measure_embedding(const FiniteMetricSpace& src,
                             const std::vector<std::vector<double>>& coords) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(coords.size()),
                      coords.empty() ? 0 : static_cast<Eigen::Index>(coords[0].size()));
    for (std::size_t i = 0; i < coords.size(); ++i)
        for (std::size_t j = 0; j < coords[i].size(); ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = coords[i][j];
    return quality_of_coords(src, m);
}

DistortionReport exact_c2(const FiniteMetricSpace& space, const SolverOptions& options) {
    const std::size_t n = space.size();
    if (n > options.point_budget)
        throw CapacityError("exact_c2: " + std::to_string(n) + " points exceed solver budget " +
                            std::to_string(options.point_budget));
    DistortionReport report;
    if (n <= 2) {
        Eigen::MatrixXd coords = mds_coordinates(space, 1);
        report.witness = to_rows(coords);
        const auto q = quality_of_coords(space, coords);
        report.expansion_ratio = q.expansion_ratio;
        return report; // any two points embed isometrically
    }

    const Eigen::MatrixXd d2 = squared_distances(space);
    const Eigen::Index dim = static_cast<Eigen::Index>(n);

    // classical-scaling witness seeds both the bracket and the start matrix
    Eigen::MatrixXd mds = mds_coordinates(space, dim);
    MapQuality mds_quality = quality_of_coords(space, mds);
    Eigen::MatrixXd best_coords = mds;
    double upper = mds_quality.distortion;

    double lo = 1.0;
    double hi = std::min(upper, space.diameter() / space.min_positive_distance());
    if (!(hi >= lo)) hi = lo;

    Eigen::MatrixXd warm = mds * mds.transpose();
    std::uint64_t iterations = 0;
    double last_residual = 0;

    // scale-normalized feasibility: expansion is free, so test the
    // interval [d^2, c^2 d^2] with the witness rescaled to unit expansion
    const auto try_scale = [&](double c) -> bool {
        auto outcome = project_feasible(d2, c * c, warm, options);
        iterations += outcome.iterations;
        last_residual = outcome.residual;
        if (!outcome.feasible) return false;
        warm = outcome.gram;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(outcome.gram);
        Eigen::MatrixXd coords(static_cast<Eigen::Index>(n), dim);
        for (Eigen::Index k = 0; k < dim; ++k) {
            const double lambda = std::max(eig.eigenvalues()(k), 0.0);
            coords.col(k) = eig.eigenvectors().col(k) * std::sqrt(lambda);
        }
        const auto q = quality_of_coords(space, coords);
        if (q.injective && q.distortion < upper) {
            upper = q.distortion;
            best_coords = coords;
        }
        return true;
    };

    if (try_scale(1.0)) {
        hi = 1.0;
    } else {
        while (hi - lo > options.tol) {
            const double mid = 0.5 * (lo + hi);
            if (try_scale(mid))
                hi = mid;
            else
                lo = mid;
        }
    }

    report.lower_bound = std::min(lo, upper);
    report.upper_bound = upper;
    report.witness = to_rows(best_coords);
    report.expansion_ratio = quality_of_coords(space, best_coords).expansion_ratio;
    report.solver_residual = last_residual;
    report.iterations = iterations;
    report.conclusive = (report.upper_bound - report.lower_bound) <=
                        10 * options.tol * report.upper_bound + 1e-9;
    return report;
}

DistortionReport embedding_upper_bound(const FiniteMetricSpace& space, std::size_t target_dim,
                                       std::size_t restarts, std::uint64_t seed) {
    const auto n = static_cast<Eigen::Index>(space.size());
    const auto dim = static_cast<Eigen::Index>(std::max<std::size_t>(target_dim, 1));
    DistortionReport report;
    report.lower_bound = 1;

    Eigen::MatrixXd best;
    double best_distortion = kInf;

    for (std::size_t restart = 0; restart < std::max<std::size_t>(restarts, 1); ++restart) {
        std::mt19937_64 rng(seed + restart);
        std::normal_distribution<double> noise(0.0, 0.05 * (restart > 0));
        Eigen::MatrixXd coords = mds_coordinates(space, dim);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index k = 0; k < dim; ++k) coords(i, k) += noise(rng);

        double current = quality_of_coords(space, coords).distortion;
        double step = 0.15;
        for (int iter = 0; iter < 400 && current > 1 + 1e-9; ++iter) {
            // pull the most-contracted pair together in ratio terms,
            // push the most-expanded pair apart
            Eigen::Index pi = 0, pj = 1, qi = 0, qj = 1;
            double worst_hi = 0, worst_lo = kInf;
            for (Eigen::Index i = 0; i < n; ++i)
                for (Eigen::Index j = i + 1; j < n; ++j) {
                    const double s =
                        space.dist(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
                    if (s == 0) continue;
                    const double r = (coords.row(i) - coords.row(j)).norm() / s;
                    if (r > worst_hi) {
                        worst_hi = r;
                        pi = i;
                        pj = j;
                    }
                    if (r < worst_lo) {
                        worst_lo = r;
                        qi = i;
                        qj = j;
                    }
                }
            Eigen::MatrixXd trial = coords;
            const Eigen::RowVectorXd contract = trial.row(pi) - trial.row(pj);
            trial.row(pi) -= 0.5 * step * contract;
            trial.row(pj) += 0.5 * step * contract;
            Eigen::RowVectorXd expand = trial.row(qi) - trial.row(qj);
            if (expand.norm() < 1e-12) expand.setOnes();
            trial.row(qi) += 0.5 * step * expand;
            trial.row(qj) -= 0.5 * step * expand;
            const double trial_distortion = quality_of_coords(space, trial).distortion;
            ++report.iterations;
            if (trial_distortion < current) {
                coords = trial;
                current = trial_distortion;
            } else {
                step *= 0.7;
                if (step < 1e-6) break;
            }
        }
        if (current < best_distortion) {
            best_distortion = current;
            best = coords;
        }
    }

    report.upper_bound = best_distortion;
    report.witness = to_rows(best);
    report.expansion_ratio = quality_of_coords(space, best).expansion_ratio;
    return report;
}

MapQuality measure_map(const FiniteMetricSpace& src, const FiniteMetricSpace& dst,
                       const std::vector<std::size_t>& map) {
    if (map.size() != src.size())
        throw std::invalid_argument("measure_map: map size does not match source");
    MapQuality q;
    double sup_ratio = 0, sup_inverse = 0, inf_ratio = kInf;
    for (std::size_t i = 0; i < src.size(); ++i)
        for (std::size_t j = i + 1; j < src.size(); ++j) {
            const double s = src.dist(i, j);
            if (s == 0) continue;
            const double t = dst.dist(map[i], map[j]);
            if (t == 0) {
                q.injective = false;
                q.distortion = kInf;
                q.expansion_ratio = 0;
                return q;
            }
            sup_ratio = std::max(sup_ratio, t / s);
            sup_inverse = std::max(sup_inverse, s / t);
            inf_ratio = std::min(inf_ratio, t / s);
        }
    q.distortion = sup_ratio * sup_inverse;
    q.expansion_ratio = inf_ratio == kInf ? 1 : inf_ratio;
    return q;
}

QuotientProfile quotient_distortion_profile(const std::vector<Code>& family,
                                            const SolverOptions& options) {
    QuotientProfile profile;
    double prev_upper = 0;
    for (const auto& code : family) {
        const auto space = cube_quotient_space(code);
        const auto report = exact_c2(space, options);
        QuotientProfileRow row;
        row.d = code.d;
        row.points = space.size();
        row.lower = report.lower_bound;
        row.upper = report.upper_bound;
        if (!profile.rows.empty() && row.upper < prev_upper - 1e-6) profile.nondecreasing = false;
        prev_upper = row.upper;
        profile.rows.push_back(row);
    }
    return profile;
}

} // namespace wreathlab
