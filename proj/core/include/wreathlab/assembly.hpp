#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "wreathlab/codes.hpp"
#include "wreathlab/group.hpp"
#include "wreathlab/tsmetric.hpp"
#include "wreathlab/z6.hpp"

namespace wreathlab {

/// Indicator of {0,1,3,4} in Z6.  It equals its own shift by 3, has
/// exactly three distinct translates, and no GF(2) combination of those
/// translates is the constant-one function; that last property is what
/// keeps the staged spans from swallowing constants.
struct MarkerFunction {
    static bool value(int z) {
        z = ((z % kZ6) + kZ6) % kZ6;
        return z == 0 || z == 1 || z == 3 || z == 4;
    }
    static constexpr int distinct_translates = 3;
};

struct MarkerPropertyReport {
    bool holds = true;
    std::vector<std::string> table; // one row per GF(2) combination
};

/// Enumerates all 8 combinations of the three distinct translates and
/// confirms none equals the constant-one function on Z6.
MarkerPropertyReport check_A_property();

struct ScheduleStage {
    std::vector<GroupElem> I;
    GroupElem y;
    double r = 0;
};

struct ScheduleOptions {
    double growth_factor = 4.0;
    // slack added for within-window tours; negative = derive from the
    // stage data (3 per coordinate plus the doubled reach of the window)
    double tour_slack = -1.0;
    std::uint64_t bfs_budget = Budgets{}.bfs_elements;
};

/// Staged scale data over a base group: disjoint point sets I_n, marker
/// points y_n and radii r_n with r_1 < d(y_1,e) < r_2 < d(y_2,e) < ...
/// Construction validates the distance windows, the interleaving and the
/// growth condition r_{n+1} >= growth_factor*(2 M_n r_n + d(y_n,e) + slack).
class ScaleSchedule {
  public:
    ScaleSchedule(const Group& base, std::vector<ScheduleStage> stages,
                  ScheduleOptions options = {});

    const Group& base() const { return *base_; }
    const std::vector<ScheduleStage>& stages() const { return stages_; }
    std::size_t stage_count() const { return stages_.size(); }
    double stage_r(std::size_t n) const { return stages_[n].r; }
    /// Measured stage constant: max(1, furthest window distance / 2 r_n).
    double stage_M(std::size_t n) const { return m_[n]; }

    /// All stage coordinates in declaration order: I_1, y_1, I_2, y_2, ...
    std::vector<GroupElem> window() const;

    std::int64_t base_distance(const GroupElem& a, const GroupElem& b) const;
    std::int64_t base_distance_to_identity(const GroupElem& a) const;

  private:
    const Group* base_;
    std::vector<ScheduleStage> stages_;
    std::vector<double> m_;
    ScheduleOptions options_;
    WordBall ball_; // populated only when no closed form is available
    bool have_ball_ = false;
};

/// Text format: "base=<name>" then one "stage I=<k,...> y=<k> r=<v>" per
/// stage; element encodings are the group's canonical keys.
void save_schedule(std::ostream& out, const ScaleSchedule& schedule);
std::vector<ScheduleStage> load_schedule_stages(std::istream& in, const Group& base,
                                                std::string* base_name = nullptr);

/// Dense model of functions on Z6^J for a window J of group coordinates.
/// Hard-capped at |J| <= 4 so rank computations stay inside 6^4 = 1296
/// coordinates.
class TruncatedFunctionSpace {
  public:
    TruncatedFunctionSpace(const ScaleSchedule& schedule);

    const std::vector<GroupElem>& window() const { return window_; }
    const UniversePtr& window_universe() const { return window_universe_; }
    /// Universe with one label per point of Z6^J (lexicographic keys).
    const UniversePtr& point_universe() const { return point_universe_; }
    std::size_t points() const { return point_universe_->size(); }
    const std::string& domain() const { return domain_; }

    std::size_t index_of_point(const std::string& key) const;
    const std::string& point_key(std::size_t index) const;

    GF2Vec densify(const CubeFn& f) const;
    CubeFn sparsify(const GF2Vec& v) const;

    /// Word metric between zero-section configurations over the window:
    /// cyclic lamp weights plus an exact closed base tour covering the
    /// differing coordinates.
    PinnedSpace zero_section_space() const;
    /// The same point metric uniformly scaled; tour lengths scale with it.
    PinnedSpace zero_section_space_scaled(double factor) const;

  private:
    std::vector<GroupElem> window_;
    UniversePtr window_universe_;
    UniversePtr point_universe_;
    std::string domain_;
    std::vector<double> pos_from_e_;
    std::vector<std::vector<double>> pos_dist_;
};

/// Value of the stage-n cylinder function at the window point w:
/// [w agrees with u off the stage coordinates] * W(w|_{I_n}) * A(w_{y_n}-u0).
int eval_stage_function(const ScaleSchedule& schedule, const TruncatedFunctionSpace& tfs,
                        std::size_t n, const Z6Vec& u_complement, const CubeFn& w_stage,
                        int u_scalar, const Z6Vec& w_window);

/// Span of the truncated stage-n cylinder functions with the complement
/// block pinned to zero.  plus_variant spans over all of Z2^{Z6^{I_n}};
/// otherwise over the annihilator of the lifted code functionals.
GF2Subspace build_truncated_stage_span(const ScaleSchedule& schedule,
                                       const TruncatedFunctionSpace& tfs, std::size_t n,
                                       const CodeLift& lift, bool plus_variant);

struct LinIndepReport {
    std::vector<std::size_t> dims;
    std::size_t sum_dim = 0;
    bool independent = false;
    bool all_ones_excluded = false;
};

/// dim of the sum vs the sum of dims, and exclusion of the constant-one
/// function on the pinned cylinder.
LinIndepReport verify_lin_indep(const TruncatedFunctionSpace& tfs,
                                const std::vector<GF2Subspace>& spans);

struct StagePairReport {
    std::string a, b;
    double rhs = 0;       // quotient tour distance of the lifted cube pair
    double lhs_lower = 0; // certified relaxation minimum
    double lhs_upper = 0; // best explicit representative tour
    bool pass = false;
    bool inconclusive = false;
    bool fail = false;
};

struct StageEmbeddingReport {
    double r = 0;
    double M = 0;
    std::vector<StagePairReport> pairs;
    bool all_pass = true;
    bool any_inconclusive = false;
};

/// Sandwich check r_n * rhs <= lhs <= 4 M r_n * rhs for every coset pair
/// of the stage code, in the truncated window.  lhs is bracketed by an
/// exact relaxation lower bound (shortest class-constrained walk that
/// touches each committed fiber) and explicit representative tours; a
/// bracket too wide to decide is flagged inconclusive, never passed.
/// The relaxation is sound for single-stage windows; with further stages
/// in the window every pair is reported inconclusive.
StageEmbeddingReport stage_embedding_check(const ScaleSchedule& schedule,
                                           const TruncatedFunctionSpace& tfs, std::size_t n,
                                           const CodeLift& lift);

struct CompressionBoundInput {
    std::vector<double> diam;
    std::vector<double> r;
    double eta = 0;  // distortion exponent of the obstruction family
    double L = 1;    // bi-Lipschitz constant of the embeddings
};

struct CompressionBound {
    double eps_hat = 0; // fitted expansion exponent (tail estimate)
    double bound = 1;   // upper bound on the compression exponent
};

/// Pure arithmetic on a finite stage table: eps_hat is the smallest
/// tail slope of log r against log diam (clamped at 0); the bound is
/// 1 - eta when eps_hat is below `eps_tol`, else 1 - eta/(1 + eps_hat).
CompressionBound compression_upper_bound(const CompressionBoundInput& input,
                                         double eps_tol = 0.05);

struct ComposedStageRow {
    std::size_t stage = 0;
    std::size_t d = 0;
    double r = 0;
    double M = 0;
    bool kappa_pass = false;
    bool sandwich_pass = false;
    bool inconclusive = false;
    double distortion_upper = 0;    // (sup lhs_ub/dq) * (sup dq/lhs_lb)
    double expansion_over_r_lo = 0; // inf lhs_lb/dq, divided by r
    double expansion_over_r_hi = 0; // inf lhs_ub/dq, divided by r
};

/// Composes the cube lift with the stage embedding check, one row per
/// stage, with measured distortion and expansion-ratio estimates.
std::vector<ComposedStageRow> composed_embedding_report(const ScaleSchedule& schedule,
                                                        const std::vector<Code>& codes);

} // namespace wreathlab
