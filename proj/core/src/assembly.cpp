#include "wreathlab/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <queue>
#include <set>
#include <sstream>

namespace wreathlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string marker_bits(int mask) {
    // GF(2) combination of the translates A(.-0), A(.-1), A(.-2)
    std::string bits(kZ6, '0');
    for (int z = 0; z < kZ6; ++z) {
        int v = 0;
        for (int j = 0; j < MarkerFunction::distinct_translates; ++j)
            if (mask & (1 << j)) v ^= MarkerFunction::value(z - j) ? 1 : 0;
        bits[static_cast<std::size_t>(z)] = static_cast<char>('0' + v);
    }
    return bits;
}

} // namespace

MarkerPropertyReport check_A_property() {
    MarkerPropertyReport report;
    const std::string ones(kZ6, '1');
    for (int mask = 0; mask < 8; ++mask) {
        const std::string bits = marker_bits(mask);
        std::string name;
        for (int j = 0; j < 3; ++j)
            if (mask & (1 << j)) name += (name.empty() ? "A" : "+A") + std::to_string(j);
        if (name.empty()) name = "0";
        const bool distinct = bits != ones;
        report.holds = report.holds && distinct;
        report.table.push_back(name + " -> " + bits + (distinct ? " != " : " == ") + ones);
    }
    return report;
}

ScaleSchedule::ScaleSchedule(const Group& base, std::vector<ScheduleStage> stages,
                             ScheduleOptions options)
    : base_(&base), stages_(std::move(stages)), options_(options) {
    if (stages_.empty()) throw std::invalid_argument("schedule: at least one stage required");

    // closed forms cover our bases; finite groups fall back to a full ball
    const auto need_ball = [&]() {
        for (const auto& st : stages_) {
            if (!base_->closed_form_distance(st.y)) return true;
            for (const auto& x : st.I)
                if (!base_->closed_form_distance(x)) return true;
        }
        return false;
    };
    if (need_ball()) {
        ball_ = word_ball(*base_, std::numeric_limits<std::int64_t>::max() / 4,
                          options_.bfs_budget);
        have_ball_ = true;
    }

    std::set<std::string> seen;
    for (const auto& st : stages_) {
        for (const auto& x : st.I)
            if (!seen.insert(x.key).second)
                throw std::invalid_argument("schedule: stage point sets must be disjoint");
    }
    for (const auto& st : stages_)
        if (seen.count(st.y.key))
            throw std::invalid_argument("schedule: marker " + st.y.key +
                                        " lies inside a stage point set");

    double prev_level = 0;
    std::vector<double> slack_prefix;
    double slack_acc = 0;
    for (std::size_t n = 0; n < stages_.size(); ++n) {
        const auto& st = stages_[n];
        if (st.r <= 0) throw std::invalid_argument("schedule: radii must be positive");
        if (st.I.empty()) throw std::invalid_argument("schedule: empty stage point set");

        double furthest = 0;
        for (const auto& x : st.I) {
            const double de = static_cast<double>(base_distance_to_identity(x));
            if (de < st.r)
                throw std::invalid_argument("schedule: point " + x.key +
                                            " closer to the identity than r");
            furthest = std::max(furthest, de);
        }
        for (std::size_t i = 0; i < st.I.size(); ++i)
            for (std::size_t j = i + 1; j < st.I.size(); ++j) {
                const double d = static_cast<double>(base_distance(st.I[i], st.I[j]));
                if (d < st.r)
                    throw std::invalid_argument("schedule: points " + st.I[i].key + "," +
                                                st.I[j].key + " closer than r");
                furthest = std::max(furthest, d);
            }
        m_.push_back(std::max(1.0, furthest / (2 * st.r)));

        const double dy = static_cast<double>(base_distance_to_identity(st.y));
        if (!(prev_level < st.r && st.r < dy))
            throw std::invalid_argument("schedule: interleaving r_n < d(y_n,e) < r_{n+1} broken "
                                        "at stage " + std::to_string(n + 1));
        prev_level = dy;

        if (n > 0) {
            const double gate = options_.growth_factor *
                                (2 * m_[n - 1] * stages_[n - 1].r +
                                 static_cast<double>(base_distance_to_identity(stages_[n - 1].y)) +
                                 (options_.tour_slack >= 0 ? options_.tour_slack
                                                           : slack_prefix[n - 1]));
            if (st.r < gate)
                throw std::invalid_argument("schedule: growth check failed at stage " +
                                            std::to_string(n + 1) + ": r=" +
                                            std::to_string(st.r) + " < required " +
                                            std::to_string(gate));
        }

        // any single zero-section hop inside the stage-<=n window is at
        // most 3 per coordinate plus a doubled covering tour
        double reach = static_cast<double>(base_distance_to_identity(st.y));
        for (const auto& x : st.I) reach += static_cast<double>(base_distance_to_identity(x));
        slack_acc += 3.0 * static_cast<double>(st.I.size() + 1) + 2.0 * reach;
        slack_prefix.push_back(slack_acc);
    }
}

std::int64_t ScaleSchedule::base_distance(const GroupElem& a, const GroupElem& b) const {
    const GroupElem rel = base_->multiply(base_->inverse(a), b);
    return base_distance_to_identity(rel);
}

std::int64_t ScaleSchedule::base_distance_to_identity(const GroupElem& a) const {
    if (const auto cf = base_->closed_form_distance(a)) return *cf;
    if (have_ball_) {
        if (const auto d = ball_.distance(a)) return *d;
    }
    throw CapacityError("schedule: no distance available for element " + a.key);
}

std::vector<GroupElem> ScaleSchedule::window() const {
    std::vector<GroupElem> w;
    for (const auto& st : stages_) {
        for (const auto& x : st.I) w.push_back(x);
        w.push_back(st.y);
    }
    return w;
}

void save_schedule(std::ostream& out, const ScaleSchedule& schedule) {
    out << "base=" << schedule.base().name() << "\n";
    for (const auto& st : schedule.stages()) {
        out << "stage I=";
        for (std::size_t i = 0; i < st.I.size(); ++i) out << (i ? "," : "") << st.I[i].key;
        out << " y=" << st.y.key << " r=" << st.r << "\n";
    }
}

std::vector<ScheduleStage> load_schedule_stages(std::istream& in, const Group& base,
                                                std::string* base_name) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("base=", 0) != 0)
        throw std::invalid_argument("schedule file: expected 'base=<name>' header (line 1)");
    if (base_name) *base_name = line.substr(5);
    std::vector<ScheduleStage> stages;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tag, itok, ytok, rtok;
        ls >> tag >> itok >> ytok >> rtok;
        if (tag != "stage" || itok.rfind("I=", 0) != 0 || ytok.rfind("y=", 0) != 0 ||
            rtok.rfind("r=", 0) != 0)
            throw std::invalid_argument("schedule file: malformed stage (line " +
                                        std::to_string(lineno) + ")");
        ScheduleStage st;
        std::istringstream is(itok.substr(2));
        std::string key;
        while (std::getline(is, key, ',')) st.I.push_back({&base, key});
        st.y = {&base, ytok.substr(2)};
        st.r = std::stod(rtok.substr(2));
        stages.push_back(std::move(st));
    }
    return stages;
}

TruncatedFunctionSpace::TruncatedFunctionSpace(const ScaleSchedule& schedule)
    : window_(schedule.window()) {
    if (window_.size() > 4)
        throw CapacityError("truncated function space: window of " +
                            std::to_string(window_.size()) + " coordinates exceeds the cap of 4");
    std::vector<std::string> labels;
    for (const auto& g : window_) labels.push_back(g.key);
    window_universe_ = std::make_shared<Universe>(labels);
    point_universe_ = std::make_shared<Universe>(
        enumerate_z6_points(window_universe_, 6ull * 6 * 6 * 6));
    domain_ = "Z6^J{";
    for (std::size_t i = 0; i < window_.size(); ++i) {
        if (i) domain_ += ",";
        domain_ += window_[i].key;
    }
    domain_ += "}";

    pos_from_e_.resize(window_.size());
    pos_dist_.assign(window_.size(), std::vector<double>(window_.size(), 0));
    for (std::size_t i = 0; i < window_.size(); ++i) {
        pos_from_e_[i] = static_cast<double>(schedule.base_distance_to_identity(window_[i]));
        for (std::size_t j = i + 1; j < window_.size(); ++j)
            pos_dist_[i][j] = pos_dist_[j][i] =
                static_cast<double>(schedule.base_distance(window_[i], window_[j]));
    }
}

std::size_t TruncatedFunctionSpace::index_of_point(const std::string& key) const {
    std::size_t idx = 0;
    for (char c : key) idx = idx * kZ6 + static_cast<std::size_t>(c - '0');
    return idx;
}

const std::string& TruncatedFunctionSpace::point_key(std::size_t index) const {
    return point_universe_->label(index);
}

GF2Vec TruncatedFunctionSpace::densify(const CubeFn& f) const {
    if (f.domain != domain_)
        throw DimensionMismatch("densify: function over domain '" + f.domain +
                                "', expected '" + domain_ + "'");
    GF2Vec v(point_universe_);
    for (const auto& key : f.support) v.set(index_of_point(key), true);
    return v;
}

CubeFn TruncatedFunctionSpace::sparsify(const GF2Vec& v) const {
    CubeFn f(domain_);
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v.get(i)) f.support.insert(point_universe_->label(i));
    return f;
}

PinnedSpace TruncatedFunctionSpace::zero_section_space_scaled(double factor) const {
    PinnedSpace ps;
    ps.domain = domain_;
    ps.pin = std::string(window_.size(), '0');
    const auto from_e = pos_from_e_;
    const auto dist = pos_dist_;
    const std::size_t n = window_.size();
    ps.dist = [from_e, dist, n, factor](const std::string& a, const std::string& b) {
        double weight = 0;
        std::vector<std::size_t> diff;
        for (std::size_t i = 0; i < n; ++i) {
            const int delta = (b[i] - '0') - (a[i] - '0');
            if (delta) {
                weight += z6_weight(delta);
                diff.push_back(i);
            }
        }
        if (diff.empty()) return 0.0;
        // exact closed base tour from e covering the differing coordinates
        double best = kInf;
        std::sort(diff.begin(), diff.end());
        do {
            double len = from_e[diff.front()] + from_e[diff.back()];
            for (std::size_t k = 0; k + 1 < diff.size(); ++k)
                len += dist[diff[k]][diff[k + 1]];
            best = std::min(best, len);
        } while (std::next_permutation(diff.begin(), diff.end()));
        return factor * (weight + best);
    };
    return ps;
}

PinnedSpace TruncatedFunctionSpace::zero_section_space() const {
    return zero_section_space_scaled(1.0);
}

namespace {

/// Window indices of the stage coordinates (I_1..I_n, y_1..y_n) and the
/// positions of I_n and y_n themselves.
struct StageLayout {
    std::vector<std::size_t> in_positions; // window indices of I_n, in order
    std::size_t y_position = 0;
    std::vector<std::size_t> complement;   // window indices past stage n
};

StageLayout stage_layout(const ScaleSchedule& schedule, const TruncatedFunctionSpace& tfs,
                         std::size_t n) {
    if (n >= schedule.stage_count())
        throw std::invalid_argument("stage index out of range");
    StageLayout layout;
    std::size_t pos = 0;
    for (std::size_t k = 0; k < schedule.stage_count(); ++k) {
        const auto& st = schedule.stages()[k];
        for (std::size_t i = 0; i < st.I.size(); ++i, ++pos) {
            if (k == n) layout.in_positions.push_back(pos);
            if (k > n) layout.complement.push_back(pos);
        }
        if (k == n) layout.y_position = pos;
        if (k > n) layout.complement.push_back(pos);
        ++pos;
    }
    (void)tfs;
    return layout;
}

std::string restrict_key(const std::string& window_key, const std::vector<std::size_t>& positions) {
    std::string out(positions.size(), '0');
    for (std::size_t i = 0; i < positions.size(); ++i) out[i] = window_key[positions[i]];
    return out;
}

} // namespace

int eval_stage_function(const ScaleSchedule& schedule, const TruncatedFunctionSpace& tfs,
                        std::size_t n, const Z6Vec& u_complement, const CubeFn& w_stage,
                        int u_scalar, const Z6Vec& w_window) {
    const auto layout = stage_layout(schedule, tfs, n);
    if (!w_window.universe()->same_as(*tfs.window_universe()))
        throw DimensionMismatch("eval_stage_function: point not over the window universe");
    if (u_complement.size() != layout.complement.size())
        throw DimensionMismatch("eval_stage_function: complement block has wrong length");
    const std::string key = w_window.key();
    for (std::size_t i = 0; i < layout.complement.size(); ++i)
        if (key[layout.complement[i]] - '0' != u_complement.get(i)) return 0;
    if (!w_stage.contains(restrict_key(key, layout.in_positions))) return 0;
    return MarkerFunction::value((key[layout.y_position] - '0') - u_scalar) ? 1 : 0;
}

GF2Subspace build_truncated_stage_span(const ScaleSchedule& schedule,
                                       const TruncatedFunctionSpace& tfs, std::size_t n,
                                       const CodeLift& lift, bool plus_variant) {
    const auto layout = stage_layout(schedule, tfs, n);
    std::vector<CubeFn> stage_fns;
    if (plus_variant) {
        for (const auto& key : enumerate_z6_points(lift.index_set(), 1u << 20)) {
            CubeFn f(lift.domain());
            f.support.insert(key);
            stage_fns.push_back(std::move(f));
        }
    } else {
        const auto dual = lift.dual_space();
        for (const auto& row : dual.basis()) {
            CubeFn f(lift.domain());
            for (std::size_t i = 0; i < row.size(); ++i)
                if (row.get(i)) f.support.insert(row.universe()->label(i));
            stage_fns.push_back(std::move(f));
        }
    }

    std::vector<GF2Vec> gens;
    for (const auto& w : stage_fns) {
        for (int u = 0; u < MarkerFunction::distinct_translates; ++u) {
            GF2Vec dense(tfs.point_universe());
            for (std::size_t p = 0; p < tfs.points(); ++p) {
                const std::string& key = tfs.point_key(p);
                bool complement_zero = true;
                for (auto c : layout.complement)
                    if (key[c] != '0') {
                        complement_zero = false;
                        break;
                    }
                if (!complement_zero) continue;
                if (!w.contains(restrict_key(key, layout.in_positions))) continue;
                if (MarkerFunction::value((key[layout.y_position] - '0') - u)) dense.set(p, true);
            }
            gens.push_back(std::move(dense));
        }
    }
    return GF2Subspace::rref(tfs.point_universe(), gens);
}

LinIndepReport verify_lin_indep(const TruncatedFunctionSpace& tfs,
                                const std::vector<GF2Subspace>& spans) {
    LinIndepReport report;
    std::vector<GF2Vec> all;
    std::size_t total = 0;
    for (const auto& s : spans) {
        report.dims.push_back(s.dim());
        total += s.dim();
        for (const auto& row : s.basis()) all.push_back(row);
    }
    const GF2Subspace sum = GF2Subspace::rref(tfs.point_universe(), all);
    report.sum_dim = sum.dim();
    report.independent = sum.dim() == total;
    report.all_ones_excluded = !sum.contains(GF2Vec::all_ones(tfs.point_universe()));
    return report;
}

namespace {

/// Shortest class-constrained walk for the stage relaxation: states are
/// (window point, parity accumulator pair); committing a fiber type at a
/// point is free and feasible only when the marker admits that type at
/// the point's y-digit.
struct RelaxedSearch {
    std::vector<double> dist_to_state;
    std::size_t points = 0;
    std::uint32_t nclasses = 0;

    double lower_for(std::uint32_t target) const {
        // walk must return to the pin (point 0) with a1 == 0, a2 == target
        return dist_to_state[(0u * nclasses + 0u) * nclasses + target];
    }
};

RelaxedSearch run_relaxed_search(const TruncatedFunctionSpace& tfs, const StageLayout& layout,
                                 const Mod2ClassMap& classes) {
    RelaxedSearch out;
    const std::size_t P = tfs.points();
    const std::uint32_t K = 1u << classes.bits;
    out.points = P;
    out.nclasses = K;

    const auto ps = tfs.zero_section_space();
    std::vector<std::vector<double>> d(P, std::vector<double>(P, 0));
    for (std::size_t i = 0; i < P; ++i)
        for (std::size_t j = i + 1; j < P; ++j)
            d[i][j] = d[j][i] = ps.dist(tfs.point_key(i), tfs.point_key(j));

    std::vector<std::uint32_t> column_class(P);
    std::vector<int> y_digit(P);
    std::vector<bool> complement_zero(P, true);
    for (std::size_t p = 0; p < P; ++p) {
        const std::string& key = tfs.point_key(p);
        column_class[p] = classes.point_class(restrict_key(key, layout.in_positions));
        y_digit[p] = key[layout.y_position] - '0';
        for (auto c : layout.complement)
            if (key[c] != '0') complement_zero[p] = false;
    }

    const std::size_t pin = tfs.index_of_point(std::string(tfs.window().size(), '0'));
    const auto state = [K](std::size_t p, std::uint32_t a1, std::uint32_t a2) {
        return (p * K + a1) * K + a2;
    };
    // reindex so the pin is point 0 for lower_for()
    std::vector<std::size_t> order(P);
    for (std::size_t i = 0; i < P; ++i) order[i] = i;
    std::swap(order[0], order[pin]);

    const std::size_t nstates = P * K * K;
    out.dist_to_state.assign(nstates, kInf);
    using QE = std::pair<double, std::size_t>;
    std::priority_queue<QE, std::vector<QE>, std::greater<>> queue;
    out.dist_to_state[state(0, 0, 0)] = 0;
    queue.push({0.0, state(0, 0, 0)});
    while (!queue.empty()) {
        auto [cur, s] = queue.top();
        queue.pop();
        if (cur > out.dist_to_state[s]) continue;
        const std::uint32_t a2 = static_cast<std::uint32_t>(s % K);
        const std::uint32_t a1 = static_cast<std::uint32_t>((s / K) % K);
        const std::size_t p = s / (K * K);
        const std::size_t preal = order[p];

        const auto relax = [&](std::size_t t, double val) {
            if (val < out.dist_to_state[t]) {
                out.dist_to_state[t] = val;
                queue.push({val, t});
            }
        };
        // fiber-type commits: type j touches the point only when the
        // marker translate A(.-j) is lit at the point's y-digit, and the
        // committed support must sit inside the pinned cylinder
        if (complement_zero[preal]) {
            const std::uint32_t c = column_class[preal];
            for (int j = 0; j < MarkerFunction::distinct_translates; ++j) {
                if (!MarkerFunction::value(y_digit[preal] - j)) continue;
                std::uint32_t b1 = a1, b2 = a2;
                if (j == 0) b2 ^= c;
                if (j == 1) {
                    b1 ^= c;
                    b2 ^= c;
                }
                if (j == 2) b1 ^= c;
                relax(state(p, b1, b2), cur);
            }
        }
        for (std::size_t q = 0; q < P; ++q) {
            if (q == p) continue;
            relax(state(q, a1, a2), cur + d[order[p]][order[q]]);
        }
    }
    return out;
}

} // namespace

StageEmbeddingReport stage_embedding_check(const ScaleSchedule& schedule,
                                           const TruncatedFunctionSpace& tfs, std::size_t n,
                                           const CodeLift& lift) {
    const auto layout = stage_layout(schedule, tfs, n);
    StageEmbeddingReport report;
    report.r = schedule.stage_r(n);
    report.M = schedule.stage_M(n);
    const bool single_stage_window = layout.complement.empty() && n == 0;

    const auto classes = lift.class_map();
    const auto reps = coset_reps(lift.code());
    const auto zs = tfs.zero_section_space();

    RelaxedSearch relaxed;
    if (single_stage_window) relaxed = run_relaxed_search(tfs, layout, classes);

    const auto cperp_elements = lift.code().Cperp.elements(1u << 12);

    for (std::size_t i = 0; i < reps.size(); ++i) {
        for (std::size_t j = i + 1; j < reps.size(); ++j) {
            StagePairReport pair;
            pair.a = reps[i].bits();
            pair.b = reps[j].bits();

            const auto rhs_result = lift.lifted_quotient_distance(reps[i], reps[j]);
            pair.rhs = rhs_result.value;

            // explicit representative tours give the upper bound
            const CubeFn base_diff = lift.lift(reps[i]) + lift.lift(reps[j]);
            double upper = kInf;
            for (const auto& c : cperp_elements) {
                const CubeFn rep = base_diff + lift.lift(c);
                CubeFn image(tfs.domain());
                for (const auto& col : rep.support) {
                    for (int y = 0; y < kZ6; ++y) {
                        if (!MarkerFunction::value(y)) continue;
                        std::string key(tfs.window().size(), '0');
                        for (std::size_t t = 0; t < layout.in_positions.size(); ++t)
                            key[layout.in_positions[t]] = col[t];
                        key[layout.y_position] = static_cast<char>('0' + y);
                        image.support.insert(std::move(key));
                    }
                }
                try {
                    upper = std::min(upper, ts_pinned(zs, CubeFn(tfs.domain()), image));
                } catch (const CapacityError&) {
                    // representative too large for the exact tour budget
                }
            }
            pair.lhs_upper = upper;

            if (single_stage_window) {
                const std::uint32_t target = classes.class_of(base_diff);
                const double walk = relaxed.lower_for(target);
                pair.lhs_lower = walk == kInf ? kInf : walk + 1.0;
            } else {
                pair.lhs_lower = 0; // no sound relaxation with further stages present
            }

            const double floor = report.r * pair.rhs;
            const double ceiling = 4 * report.M * report.r * pair.rhs;
            const bool lower_ok = rhs_result.certified_global && pair.lhs_lower >= floor;
            const bool upper_ok = pair.lhs_upper <= ceiling;
            pair.fail = (pair.lhs_upper < floor) || (pair.lhs_lower > ceiling);
            pair.pass = lower_ok && upper_ok && !pair.fail;
            pair.inconclusive = !pair.pass && !pair.fail;

            report.all_pass = report.all_pass && pair.pass;
            report.any_inconclusive = report.any_inconclusive || pair.inconclusive;
            report.pairs.push_back(std::move(pair));
        }
    }
    return report;
}

CompressionBound compression_upper_bound(const CompressionBoundInput& input, double eps_tol) {
    const std::size_t n = input.diam.size();
    if (n < 2 || input.r.size() != n)
        throw std::invalid_argument("compression bound: need at least two stages");
    if (input.eta < 0 || input.eta > 1)
        throw std::invalid_argument("compression bound: eta must lie in [0,1]");
    if (input.L < 1) throw std::invalid_argument("compression bound: L must be at least 1");
    for (std::size_t i = 0; i < n; ++i) {
        if (input.r[i] < 1) throw std::invalid_argument("compression bound: r_n must be >= 1");
        if (i && input.diam[i] <= input.diam[i - 1])
            throw std::invalid_argument("compression bound: diameters must increase");
    }

    // tail estimate of the limiting exponent: smallest discrete slope of
    // log r against log diam over the later half of the table
    const std::size_t tail_start = n / 2;
    double eps_hat = kInf;
    for (std::size_t i = std::max<std::size_t>(tail_start, 1); i < n; ++i) {
        const double slope = (std::log(input.r[i]) - std::log(input.r[i - 1])) /
                             (std::log(input.diam[i]) - std::log(input.diam[i - 1]));
        eps_hat = std::min(eps_hat, slope);
    }
    eps_hat = std::max(0.0, eps_hat);

    CompressionBound out;
    out.eps_hat = eps_hat;
    out.bound = eps_hat <= eps_tol ? 1.0 - input.eta : 1.0 - input.eta / (1.0 + eps_hat);
    return out;
}

std::vector<ComposedStageRow> composed_embedding_report(const ScaleSchedule& schedule,
                                                        const std::vector<Code>& codes) {
    if (codes.size() != schedule.stage_count())
        throw std::invalid_argument("composed report: one code per stage required");
    std::vector<ComposedStageRow> rows;
    TruncatedFunctionSpace tfs(schedule);
    for (std::size_t n = 0; n < schedule.stage_count(); ++n) {
        const auto& st = schedule.stages()[n];
        if (codes[n].d != st.I.size())
            throw std::invalid_argument("composed report: code dimension must match |I_n|");
        std::vector<std::string> labels;
        for (const auto& x : st.I) labels.push_back(x.key);
        CodeLift lift(std::make_shared<Universe>(labels), codes[n]);

        ComposedStageRow row;
        row.stage = n + 1;
        row.d = codes[n].d;
        row.r = schedule.stage_r(n);
        row.M = schedule.stage_M(n);
        row.kappa_pass = kappa_identity_report(lift).all_pass;

        const auto stage_report = stage_embedding_check(schedule, tfs, n, lift);
        row.sandwich_pass = stage_report.all_pass;
        row.inconclusive = stage_report.any_inconclusive;

        double sup_up = 0, sup_inv = 0, inf_lo = kInf, inf_up = kInf;
        for (const auto& pair : stage_report.pairs) {
            const double dq = (pair.rhs - 1) / 2; // quotient Hamming distance
            if (dq <= 0) continue;
            sup_up = std::max(sup_up, pair.lhs_upper / dq);
            if (pair.lhs_lower > 0) sup_inv = std::max(sup_inv, dq / pair.lhs_lower);
            inf_lo = std::min(inf_lo, pair.lhs_lower / dq);
            inf_up = std::min(inf_up, pair.lhs_upper / dq);
        }
        row.distortion_upper = sup_up * sup_inv;
        row.expansion_over_r_lo = inf_lo == kInf ? 0 : inf_lo / row.r;
        row.expansion_over_r_hi = inf_up == kInf ? 0 : inf_up / row.r;
        rows.push_back(row);
    }
    return rows;
}

} // namespace wreathlab
