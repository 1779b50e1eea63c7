#include "wreathlab/suites.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "wreathlab/assembly.hpp"
#include "wreathlab/codes.hpp"
#include "wreathlab/distortion.hpp"
#include "wreathlab/group.hpp"
#include "wreathlab/metric.hpp"
#include "wreathlab/tsmetric.hpp"

namespace wreathlab {

namespace {

const char* verdict(bool pass) { return pass ? "pass" : "FAIL"; }

SuiteResult suite_a_property(const SuiteOptions& options) {
    SuiteResult result;
    result.report.title = "a-property";
    add_config_meta(result.report, options.budgets, options.seed);
    result.report.columns = {"combination", "verdict"};
    const auto prop = check_A_property();
    for (const auto& line : prop.table) result.report.add_row({line, verdict(prop.holds)});
    result.pass = prop.holds;
    return result;
}

SuiteResult suite_ts_closed_form(const SuiteOptions& options) {
    SuiteResult result;
    result.report.title = "ts-closed-form";
    add_config_meta(result.report, options.budgets, options.seed);
    result.report.columns = {"support", "ts", "expected", "verdict"};

    const auto universe = Universe::integers(4);
    const auto ps = z6_hamming_space(universe);
    bool all = true;
    for (unsigned mask = 1; mask < 16; ++mask) {
        CubeFn u(ps.domain);
        for (std::size_t x = 0; x < 4; ++x)
            if (mask & (1u << x)) u.support.insert(Z6Vec::unit(universe, x).key());
        const double ts = ts_pinned(ps, CubeFn(ps.domain), u, options.budgets.tsp_support);
        const double expected = 2.0 * static_cast<double>(u.support_size()) + 1.0;
        const bool ok = ts == expected;
        all = all && ok;
        result.report.add_row(
            {std::to_string(u.support_size()), fmt(ts), fmt(expected), verdict(ok)});
    }
    result.pass = all;
    return result;
}

SuiteResult suite_ts_sandwich(const SuiteOptions& options) {
    SuiteResult result;
    result.report.title = "ts-sandwich";
    add_config_meta(result.report, options.budgets, options.seed);
    result.report.columns = {"subspace", "pairs", "min-ratio", "max-ratio", "verdict"};

    auto base = std::make_shared<CyclicGroup>(4);
    std::vector<GroupElem> elements;
    for (int k = 0; k < 4; ++k) elements.push_back(base->make(k));
    std::vector<std::string> labels;
    for (const auto& e : elements) labels.push_back(e.key);
    auto universe = std::make_shared<Universe>(labels);

    PinnedSpace ps;
    ps.domain = "Z4";
    ps.pin = "0";
    ps.dist = [](const std::string& a, const std::string& b) {
        const int d = std::abs(std::stoi(a) - std::stoi(b));
        return static_cast<double>(std::min(d, 4 - d));
    };

    bool all = true;
    for (int variant = 0; variant < 2; ++variant) {
        GF2Subspace v = variant == 0
                            ? GF2Subspace::zero(universe)
                            : GF2Subspace::rref(universe, {GF2Vec::all_ones(universe)});
        LampQuotientGroup group(base, elements, v);
        const auto ball =
            word_ball(group, std::numeric_limits<std::int64_t>::max() / 4,
                      options.budgets.bfs_elements);

        std::vector<CubeFn> shifts;
        for (const auto& s : v.elements(options.budgets.coset_elements)) {
            CubeFn f(ps.domain);
            for (std::size_t i = 0; i < s.size(); ++i)
                if (s.get(i)) f.support.insert(labels[i]);
            shifts.push_back(std::move(f));
        }

        // canonical representatives of the lamp cosets
        std::vector<GF2Vec> reps;
        for (unsigned mask = 0; mask < 16; ++mask) {
            GF2Vec w(universe);
            for (std::size_t i = 0; i < 4; ++i) w.set(i, (mask >> i) & 1u);
            const GF2Vec rep = coset_min_rep(v, w);
            if (std::find(reps.begin(), reps.end(), rep) == reps.end()) reps.push_back(rep);
        }
        std::sort(reps.begin(), reps.end());

        std::size_t pairs = 0;
        double min_ratio = std::numeric_limits<double>::infinity(), max_ratio = 0;
        bool ok = true;
        for (std::size_t i = 0; i < reps.size(); ++i) {
            for (std::size_t j = 0; j < reps.size(); ++j) {
                if (i == j) continue;
                CubeFn a(ps.domain), b(ps.domain);
                for (std::size_t t = 0; t < 4; ++t) {
                    if (reps[i].get(t)) a.support.insert(labels[t]);
                    if (reps[j].get(t)) b.support.insert(labels[t]);
                }
                const double tsq =
                    ts_quotient_enumerate(ps, shifts, a, b, options.budgets.tsp_support).value;
                const auto word = static_cast<double>(ball.distance_between(
                    group.make(reps[i], base->identity()), group.make(reps[j], base->identity())));
                ++pairs;
                ok = ok && tsq <= word && word <= 2 * tsq;
                min_ratio = std::min(min_ratio, word / tsq);
                max_ratio = std::max(max_ratio, word / tsq);
            }
        }
        all = all && ok;
        result.report.add_row({variant == 0 ? "zero" : "all-ones", std::to_string(pairs),
                               fmt(min_ratio), fmt(max_ratio), verdict(ok)});
    }
    result.pass = all;
    return result;
}

SuiteResult suite_kappa_identity(const SuiteOptions& options) {
    SuiteResult result;
    result.report.title = "kappa-identity";
    add_config_meta(result.report, options.budgets, options.seed);
    result.report.add_meta("d", std::to_string(options.d));
    result.report.add_meta("dimc", std::to_string(options.dimc));
    result.report.columns = {"seed", "a", "b", "lhs", "rhs", "pass"};

    bool all = true;
    for (std::uint64_t s = options.seed; s < options.seed + 3; ++s) {
        const Code code = make_code(options.d, options.dimc, s, 2);
        const CodeLift lift(Universe::integers(options.d), code);
        const auto report = kappa_identity_report(lift);
        for (const auto& line : report.pairs) {
            result.report.add_row({std::to_string(s), line.a, line.b, fmt(line.lhs),
                                   fmt(line.rhs), verdict(line.pass)});
            all = all && line.pass;
        }
    }
    result.pass = all;
    return result;
}

SuiteResult suite_r_map(const SuiteOptions& options) {
    SuiteResult result;
    result.report.title = "r-map";
    add_config_meta(result.report, options.budgets, options.seed);
    result.report.columns = {"samples", "pairing-failures", "tour-failures", "verdict"};

    const auto universe = Universe::integers(2);
    const Code code = make_code(2, 1, options.seed, 2);
    const CodeLift lift(universe, code);
    const auto ps = lift.hamming_space();
    const auto points = enumerate_z6_points(universe, 1u << 10);

    // direct pairing sum, independent of the parity-profile shortcut
    const auto pairing = [&](const CubeFn& w, const GF2Vec& a) {
        int acc = 0;
        for (const auto& key : w.support) acc ^= functional_L(a, Z6Vec::from_key(universe, key));
        return acc;
    };

    std::mt19937_64 rng(options.seed);
    std::size_t pairing_failures = 0, tour_failures = 0;
    const std::size_t samples = 200;
    for (std::size_t s = 0; s < samples; ++s) {
        CubeFn w(lift.domain());
        const std::size_t count = rng() % 5;
        while (w.support_size() < count) w.support.insert(points[rng() % points.size()]);
        const CubeFn reduced = lift.reduce_to_basis(w);
        for (unsigned mask = 0; mask < 4; ++mask) {
            GF2Vec a(universe);
            for (std::size_t i = 0; i < 2; ++i) a.set(i, (mask >> i) & 1u);
            if (pairing(w, a) != pairing(reduced, a)) ++pairing_failures;
        }
        const double ts_w = ts_pinned(ps, lift.zero_fn(), w, options.budgets.tsp_support);
        const double ts_r = ts_pinned(ps, lift.zero_fn(), reduced, options.budgets.tsp_support);
        if (ts_w < ts_r) ++tour_failures;
    }
    result.pass = pairing_failures == 0 && tour_failures == 0;
    result.report.add_row({std::to_string(samples), std::to_string(pairing_failures),
                           std::to_string(tour_failures), verdict(result.pass)});
    return result;
}

ScaleSchedule two_stage_schedule(const IntegerGroup& z) {
    std::vector<ScheduleStage> stages;
    stages.push_back({{z.make(1)}, z.make(2), 1.0});
    stages.push_back({{z.make(64)}, z.make(65), 64.0});
    return ScaleSchedule(z, std::move(stages));
}

SuiteResult suite_lin_indep(const SuiteOptions& options) {
    SuiteResult result;
    result.report.title = "lin-indep";
    add_config_meta(result.report, options.budgets, options.seed);
    result.report.columns = {"check", "value", "verdict"};

    static const IntegerGroup z;
    const auto schedule = two_stage_schedule(z);
    const TruncatedFunctionSpace tfs(schedule);

    std::vector<GF2Subspace> spans;
    for (std::size_t n = 0; n < 2; ++n) {
        std::vector<std::string> labels;
        for (const auto& x : schedule.stages()[n].I) labels.push_back(x.key);
        const CodeLift lift(std::make_shared<Universe>(labels),
                            make_code(1, 1, options.seed, 1));
        spans.push_back(build_truncated_stage_span(schedule, tfs, n, lift, true));
    }
    const auto rep = verify_lin_indep(tfs, spans);
    result.report.add_row({"dim-stage-1", std::to_string(rep.dims[0]), "-"});
    result.report.add_row({"dim-stage-2", std::to_string(rep.dims[1]), "-"});
    result.report.add_row({"dim-sum", std::to_string(rep.sum_dim), verdict(rep.independent)});
    result.report.add_row({"all-ones-excluded", rep.all_ones_excluded ? "yes" : "no",
                           verdict(rep.all_ones_excluded)});

    // duplicating a span must break independence
    auto doubled = spans;
    doubled.push_back(spans[0]);
    const auto sanity = verify_lin_indep(tfs, doubled);
    result.report.add_row(
        {"duplicate-control", sanity.independent ? "independent" : "dependent",
         verdict(!sanity.independent)});

    result.pass = rep.independent && rep.all_ones_excluded && !sanity.independent;
    return result;
}

ScaleSchedule lambda_schedule(const IntegerGroup& z, const SuiteOptions& options) {
    if (!options.schedule_file.empty()) {
        std::ifstream in(options.schedule_file);
        if (!in) throw std::invalid_argument("cannot open schedule file: " +
                                             options.schedule_file);
        return ScaleSchedule(z, load_schedule_stages(in, z));
    }
    std::vector<ScheduleStage> stages;
    stages.push_back({{z.make(5), z.make(-15)}, z.make(6), 5.0});
    return ScaleSchedule(z, std::move(stages));
}

SuiteResult suite_lambda_sandwich(const SuiteOptions& options) {
    SuiteResult result;
    result.report.title = "lambda-sandwich";
    add_config_meta(result.report, options.budgets, options.seed);
    result.report.columns = {"dimc", "a",        "b",    "rhs",     "lhs-lo",
                             "lhs-hi", "floor", "ceiling", "verdict"};

    static const IntegerGroup z;
    const auto schedule = lambda_schedule(z, options);
    const TruncatedFunctionSpace tfs(schedule);
    const auto& stage = schedule.stages()[0];
    std::vector<std::string> labels;
    for (const auto& x : stage.I) labels.push_back(x.key);
    auto index_universe = std::make_shared<Universe>(labels);

    bool all = true, any_inconclusive = false;
    for (std::size_t dimc : {std::size_t{1}, std::size_t{2}}) {
        if (dimc > stage.I.size()) continue;
        const Code code = make_code(stage.I.size(), dimc, options.seed, dimc == 1 ? 2 : 1);
        const CodeLift lift(index_universe, code);
        const auto report = stage_embedding_check(schedule, tfs, 0, lift);
        for (const auto& pair : report.pairs) {
            const double floor = report.r * pair.rhs;
            const double ceiling = 4 * report.M * report.r * pair.rhs;
            result.report.add_row({std::to_string(dimc), pair.a, pair.b, fmt(pair.rhs),
                                   fmt(pair.lhs_lower), fmt(pair.lhs_upper), fmt(floor),
                                   fmt(ceiling),
                                   pair.pass ? "pass"
                                             : (pair.inconclusive ? "inconclusive" : "FAIL")});
        }
        all = all && report.all_pass;
        any_inconclusive = any_inconclusive || report.any_inconclusive;
    }
    result.pass = all;
    result.inconclusive = any_inconclusive;
    return result;
}

SuiteResult suite_equidist(const SuiteOptions& options) {
    SuiteResult result;
    result.report.title = "equidist";
    add_config_meta(result.report, options.budgets, options.seed);
    result.report.columns = {"check", "value", "verdict"};

    const auto z = std::make_shared<IntegerGroup>();
    const WreathGroup group(2, z);
    const std::int64_t r = 2, m = 3;

    WordBall ball;
    bool from_cache = false;
    if (!options.cache_dir.empty()) {
        const auto path =
            std::filesystem::path(options.cache_dir) / ball_cache_filename(group, 2 * m * r);
        if (std::ifstream in(path); in) {
            if (auto cached = load_ball(in, group, 2 * m * r)) {
                ball = std::move(*cached);
                from_cache = true;
            }
        }
        if (!from_cache) {
            ball = word_ball(group, 2 * m * r, options.budgets.bfs_elements);
            std::filesystem::create_directories(options.cache_dir);
            std::ofstream out(path);
            save_ball(out, ball);
        }
    } else {
        ball = word_ball(group, 2 * m * r, options.budgets.bfs_elements);
    }
    result.report.add_meta("ball-source", from_cache ? "cache" : "bfs");

    const auto set = equidistant_set(group, r, m, 16, options.budgets.bfs_elements, &ball);
    const bool count_ok = set.points.size() >= 8;
    result.report.add_row({"points-found", std::to_string(set.points.size()),
                           verdict(count_ok)});

    // exhaustive window check, identity included
    bool window_ok = true;
    for (std::size_t i = 0; i < set.points.size() && window_ok; ++i) {
        const auto de = ball.dist.at(set.points[i].key);
        window_ok = de >= r && de <= 2 * m * r;
        for (std::size_t j = i + 1; j < set.points.size() && window_ok; ++j) {
            const auto d = ball.distance_between(set.points[i], set.points[j]);
            window_ok = d >= r && d <= 2 * m * r;
        }
    }
    result.report.add_row({"pairwise-window", window_ok ? "in-range" : "violated",
                           verdict(window_ok)});

    const auto profile = annulus_packing_profile(group, r, m, options.budgets.bfs_elements, &ball);
    result.report.add_row({"annulus-size", std::to_string(profile.annulus_size), "-"});
    result.report.add_row({"packing-size", std::to_string(profile.packing_size), "-"});
    const bool growth_ok = profile.growth_constant > 1.0;
    result.report.add_row({"growth-constant", fmt(profile.growth_constant), verdict(growth_ok)});
    const bool covering_ok =
        profile.packing_size * profile.ball_r_size >= profile.annulus_size;
    result.report.add_row({"covering-bound", covering_ok ? "holds" : "violated",
                           verdict(covering_ok)});

    result.pass = count_ok && window_ok && growth_ok && covering_ok;
    return result;
}

SuiteResult suite_quotient_realizability(const SuiteOptions& options) {
    SuiteResult result;
    result.report.title = "quotient-realizability";
    add_config_meta(result.report, options.budgets, options.seed);
    result.report.columns = {"case", "outcome", "verdict"};
    bool all = true;

    // singleton partition is an isometric copy
    {
        FiniteMetricSpace space({"a", "b", "c"},
                                {{0, 1, 2}, {1, 0, 1.5}, {2, 1.5, 0}});
        std::vector<std::vector<std::size_t>> partition = {{0}, {1}, {2}};
        const auto q = quotient_metric(space, partition);
        bool ok = q.size() == 3;
        for (std::size_t i = 0; i < 3 && ok; ++i)
            for (std::size_t j = 0; j < 3 && ok; ++j) ok = q.dist(i, j) == space.dist(i, j);
        all = all && ok;
        result.report.add_row({"singletons", "isometric", verdict(ok)});
    }

    // group coset partitions of vertex-transitive cubes always qualify
    std::mt19937_64 rng(options.seed);
    for (std::size_t d = 2; d <= 4; ++d) {
        const auto universe = Universe::integers(d);
        std::vector<GF2Vec> gens;
        for (int t = 0; t < 2; ++t) {
            GF2Vec g(universe);
            for (std::size_t i = 0; i < d; ++i) g.set(i, rng() & 1u);
            gens.push_back(std::move(g));
        }
        const GF2Subspace v = GF2Subspace::rref(universe, gens);

        std::vector<std::string> labels;
        std::vector<GF2Vec> points;
        for (std::uint64_t x = 0; x < (1ull << d); ++x) {
            GF2Vec p(universe);
            for (std::size_t i = 0; i < d; ++i) p.set(i, (x >> i) & 1u);
            labels.push_back(p.bits());
            points.push_back(std::move(p));
        }
        std::vector<std::vector<double>> dist(labels.size(),
                                              std::vector<double>(labels.size(), 0));
        for (std::size_t i = 0; i < points.size(); ++i)
            for (std::size_t j = i + 1; j < points.size(); ++j)
                dist[i][j] = dist[j][i] =
                    static_cast<double>((points[i] + points[j]).weight());
        const FiniteMetricSpace cube(labels, dist, 1.0);

        std::vector<std::vector<std::size_t>> partition;
        std::vector<bool> used(points.size(), false);
        for (std::size_t i = 0; i < points.size(); ++i) {
            if (used[i]) continue;
            std::vector<std::size_t> block;
            for (std::size_t j = i; j < points.size(); ++j)
                if (!used[j] && v.contains(points[i] + points[j])) {
                    block.push_back(j);
                    used[j] = true;
                }
            partition.push_back(std::move(block));
        }
        bool ok = true;
        std::string outcome = "realizable";
        try {
            const auto q = quotient_metric(cube, partition);
            ok = q.size() == (1ull << (d - v.dim()));
        } catch (const std::invalid_argument& e) {
            ok = false;
            outcome = e.what();
        }
        all = all && ok;
        result.report.add_row({"cube-cosets-d" + std::to_string(d), outcome, verdict(ok)});
    }

    // a partition that is not metric-compatible must be rejected by name
    {
        FiniteMetricSpace space({"a", "b", "c"}, {{0, 1, 2}, {1, 0, 1}, {2, 1, 0}});
        std::vector<std::vector<std::size_t>> partition = {{1, 2}, {0}};
        bool rejected = false;
        std::string message;
        try {
            quotient_metric(space, partition);
        } catch (const std::invalid_argument& e) {
            rejected = true;
            message = e.what();
        }
        const bool ok = rejected && message.find("not realized from point c") != std::string::npos;
        all = all && ok;
        result.report.add_row({"violation-detection", rejected ? "rejected" : "accepted",
                               verdict(ok)});
    }

    result.pass = all;
    return result;
}

} // namespace

const std::vector<std::string>& known_suites() {
    static const std::vector<std::string> names = {
        "a-property",      "ts-closed-form", "ts-sandwich",
        "kappa-identity",  "r-map",          "lin-indep",
        "lambda-sandwich", "equidist",       "quotient-realizability"};
    return names;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& options) {
    if (name == "a-property") return suite_a_property(options);
    if (name == "ts-closed-form") return suite_ts_closed_form(options);
    if (name == "ts-sandwich") return suite_ts_sandwich(options);
    if (name == "kappa-identity") return suite_kappa_identity(options);
    if (name == "r-map") return suite_r_map(options);
    if (name == "lin-indep") return suite_lin_indep(options);
    if (name == "lambda-sandwich") return suite_lambda_sandwich(options);
    if (name == "equidist") return suite_equidist(options);
    if (name == "quotient-realizability") return suite_quotient_realizability(options);
    throw std::invalid_argument("unknown verification suite: " + name);
}

} // namespace wreathlab
