#pragma once

#include <cstdint>
#include <vector>

#include "wreathlab/codes.hpp"
#include "wreathlab/metric.hpp"

namespace wreathlab {

/// Result of a Euclidean-distortion computation.  The witness realizes
/// upper_bound; lower_bound is the largest scale proven infeasible.
struct DistortionReport {
    double lower_bound = 1;
    double upper_bound = 1;
    std::vector<std::vector<double>> witness; // one coordinate row per point
    double expansion_ratio = 1;               // inf pair ratio of the witness
    double solver_residual = 0;
    std::uint64_t iterations = 0;
    bool conclusive = true;

    double value() const { return upper_bound; }
};

struct SolverOptions {
    double tol = 1e-4;               // bisection interval width on c
    double residual_threshold = 1e-8;
    std::uint64_t max_iterations = 40000; // per feasibility run
    std::size_t point_budget = Budgets{}.sdp_points;
};

/// Exact Euclidean distortion by bisection over the scale c: feasibility
/// of {Q psd; d_ij^2 <= Q_ii+Q_jj-2Q_ij <= c^2 d_ij^2} is decided by
/// alternating projections between the psd cone and the pair slabs.
/// The bracket starts at [1, diameter/d_min].
DistortionReport exact_c2(const FiniteMetricSpace& space, const SolverOptions& options = {});

/// Local-search upper bound: classical-scaling start plus seeded
/// pull/push refinement over the point coordinates; best of `restarts`.
DistortionReport embedding_upper_bound(const FiniteMetricSpace& space, std::size_t target_dim,
                                       std::size_t restarts, std::uint64_t seed);

struct MapQuality {
    double distortion = 1;      // +inf when the map is not injective
    double expansion_ratio = 1; // inf pair ratio
    bool injective = true;
};

/// Distortion and expansion ratio of an explicit map src[i] -> dst[map[i]].
MapQuality measure_map(const FiniteMetricSpace& src, const FiniteMetricSpace& dst,
                       const std::vector<std::size_t>& map);

/// Measured distortion of explicit coordinates against a source metric.
MapQuality measure_embedding(const FiniteMetricSpace& src,
                             const std::vector<std::vector<double>>& coords);

struct QuotientProfileRow {
    std::size_t d = 0;
    std::size_t points = 0;
    double lower = 1;
    double upper = 1;
};

struct QuotientProfile {
    std::vector<QuotientProfileRow> rows;
    bool nondecreasing = true;
};

/// Distortion table of the quotient cubes of a code family, with a flag
/// recording whether the measured values are nondecreasing in d.
QuotientProfile quotient_distortion_profile(const std::vector<Code>& family,
                                            const SolverOptions& options = {});

} // namespace wreathlab
