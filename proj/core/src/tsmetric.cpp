#include "wreathlab/tsmetric.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace wreathlab {

namespace {

void require_same_domain(const CubeFn& a, const CubeFn& b, const char* what) {
    if (a.domain != b.domain)
        throw DimensionMismatch(std::string(what) + ": functions over different domains ('" +
                                a.domain + "' vs '" + b.domain + "')");
}

constexpr double kInf = std::numeric_limits<double>::infinity();

} // namespace

CubeFn CubeFn::operator+(const CubeFn& other) const {
    require_same_domain(*this, other, "CubeFn::operator+");
    CubeFn r(domain);
    std::set_symmetric_difference(support.begin(), support.end(), other.support.begin(),
                                  other.support.end(),
                                  std::inserter(r.support, r.support.begin()));
    return r;
}

PinnedSpace z6_hamming_space(const UniversePtr& universe) {
    PinnedSpace ps;
    ps.domain = "Z6^{";
    for (std::size_t i = 0; i < universe->size(); ++i) {
        if (i) ps.domain += ",";
        ps.domain += universe->label(i);
    }
    ps.domain += "}";
    ps.pin = std::string(universe->size(), '0');
    ps.dist = [](const std::string& a, const std::string& b) {
        return static_cast<double>(z6_hamming(a, b));
    };
    return ps;
}

namespace {

/// Held-Karp over the symmetric-difference support; returns the minimal
/// closed-tour length from the pin (without the +1 metric offset).
double tour_length(const PinnedSpace& ps, const std::vector<std::string>& pts,
                   std::vector<int>* tour_out) {
    const std::size_t n = pts.size();
    if (n == 0) return 0;
    std::vector<double> from_pin(n);
    std::vector<std::vector<double>> d(n, std::vector<double>(n, 0));
    for (std::size_t i = 0; i < n; ++i) {
        from_pin[i] = ps.dist(ps.pin, pts[i]);
        for (std::size_t j = i + 1; j < n; ++j) d[i][j] = d[j][i] = ps.dist(pts[i], pts[j]);
    }

    const std::size_t full = (std::size_t{1} << n) - 1;
    std::vector<std::vector<double>> dp(full + 1, std::vector<double>(n, kInf));
    std::vector<std::vector<int>> prev;
    if (tour_out) prev.assign(full + 1, std::vector<int>(n, -1));
    for (std::size_t i = 0; i < n; ++i) dp[std::size_t{1} << i][i] = from_pin[i];
    for (std::size_t mask = 1; mask <= full; ++mask) {
        for (std::size_t last = 0; last < n; ++last) {
            const double cur = dp[mask][last];
            if (cur == kInf || !(mask & (std::size_t{1} << last))) continue;
            for (std::size_t nxt = 0; nxt < n; ++nxt) {
                if (mask & (std::size_t{1} << nxt)) continue;
                const std::size_t nmask = mask | (std::size_t{1} << nxt);
                const double cand = cur + d[last][nxt];
                if (cand < dp[nmask][nxt]) {
                    dp[nmask][nxt] = cand;
                    if (tour_out) prev[nmask][nxt] = static_cast<int>(last);
                }
            }
        }
    }
    double best = kInf;
    std::size_t best_last = 0;
    for (std::size_t last = 0; last < n; ++last) {
        const double cand = dp[full][last] + from_pin[last];
        if (cand < best) {
            best = cand;
            best_last = last;
        }
    }
    if (tour_out) {
        tour_out->clear();
        std::size_t mask = full;
        int last = static_cast<int>(best_last);
        while (last != -1) {
            tour_out->push_back(last);
            const int p = prev[mask][static_cast<std::size_t>(last)];
            mask &= ~(std::size_t{1} << last);
            last = p;
        }
        std::reverse(tour_out->begin(), tour_out->end());
    }
    return best;
}

std::vector<std::string> support_points(const PinnedSpace& ps, const CubeFn& a, const CubeFn& b,
                                        std::size_t support_cap) {
    require_same_domain(a, b, "ts_pinned");
    const CubeFn diff = a + b;
    if (diff.support_size() > support_cap)
        throw CapacityError("ts_pinned: symmetric-difference support " +
                            std::to_string(diff.support_size()) + " exceeds tour budget " +
                            std::to_string(support_cap));
    // std::set iterates in lexicographic order, which fixes tie-breaking.
    return {diff.support.begin(), diff.support.end()};
}

} // namespace

double ts_pinned(const PinnedSpace& ps, const CubeFn& a, const CubeFn& b,
                 std::size_t support_cap) {
    const auto pts = support_points(ps, a, b, support_cap);
    if (pts.empty()) return 0;
    return tour_length(ps, pts, nullptr) + 1.0;
}

std::vector<std::string> ts_pinned_tour(const PinnedSpace& ps, const CubeFn& a, const CubeFn& b,
                                        std::size_t support_cap) {
    const auto pts = support_points(ps, a, b, support_cap);
    std::vector<int> order;
    if (!pts.empty()) tour_length(ps, pts, &order);
    std::vector<std::string> out;
    out.reserve(order.size());
    for (int i : order) out.push_back(pts[static_cast<std::size_t>(i)]);
    return out;
}

TsPropertyReport ts_check_addition_invariance(const PinnedSpace& ps,
                                              const std::vector<std::array<CubeFn, 3>>& triples,
                                              std::size_t support_cap) {
    TsPropertyReport report;
    for (const auto& [v, w, c] : triples) {
        ++report.checked;
        const double base = ts_pinned(ps, v, w, support_cap);
        const double shifted = ts_pinned(ps, v + c, w + c, support_cap);
        if (base != shifted) {
            report.passed = false;
            report.counterexample = "addition invariance broken: ts(v,w)=" +
                                    std::to_string(base) + " ts(v+c,w+c)=" +
                                    std::to_string(shifted);
            return report;
        }
        // enlarge spt(v+w) by spt(c): ts must not decrease
        CubeFn enlarged(v.domain);
        const CubeFn vw = v + w;
        enlarged.support = vw.support;
        for (const auto& p : c.support) enlarged.support.insert(p);
        const double grown = ts_pinned(ps, v, v + CubeFn(v.domain, enlarged.support), support_cap);
        if (grown < base) {
            report.passed = false;
            report.counterexample = "support monotonicity broken: grown=" + std::to_string(grown) +
                                    " base=" + std::to_string(base);
            return report;
        }
    }
    return report;
}

TsQuotientResult ts_quotient_enumerate(const PinnedSpace& ps, const std::vector<CubeFn>& shifts,
                                       const CubeFn& a, const CubeFn& b,
                                       std::size_t support_cap) {
    TsQuotientResult res;
    res.max_support = support_cap;
    res.certified_global = true; // the subspace is enumerated in full
    double best = kInf;
    for (const auto& w : shifts) {
        best = std::min(best, ts_pinned(ps, a, b + w, support_cap));
        ++res.states_explored;
    }
    if (shifts.empty()) best = ts_pinned(ps, a, b, support_cap);
    res.value = best;
    return res;
}

TsQuotientResult ts_quotient_bruteforce(const PinnedSpace& ps,
                                        const std::function<bool(const CubeFn&)>& membership,
                                        const CubeFn& a, const CubeFn& b,
                                        const std::vector<std::string>& region_points,
                                        double region_radius, std::size_t max_support,
                                        std::size_t support_cap) {
    TsQuotientResult res;
    res.region_radius = region_radius;
    res.max_support = max_support;

    const std::size_t n = region_points.size();
    if (max_support > 24 || n > 40)
        throw CapacityError("ts_quotient_bruteforce: region of " + std::to_string(n) +
                            " points with support cap " + std::to_string(max_support) +
                            " is past the literal-enumeration budget");

    double best = kInf;
    std::vector<std::size_t> idx;
    // enumerate subsets by size, lexicographic within each size
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t left) {
        {
            CubeFn w(a.domain);
            for (auto i : idx) w.support.insert(region_points[i]);
            ++res.states_explored;
            if (membership(w)) {
                const double v = ts_pinned(ps, a, b + w, support_cap);
                best = std::min(best, v);
            }
        }
        if (left == 0) return;
        for (std::size_t i = start; i < n; ++i) {
            idx.push_back(i);
            rec(i + 1, left - 1);
            idx.pop_back();
        }
    };
    rec(0, max_support);
    res.value = best;
    res.certified_global = false; // exact only within the declared region
    return res;
}

TsQuotientResult ts_quotient_classes(const PinnedSpace& ps, const Mod2ClassMap& classes,
                                     const CubeFn& a, const CubeFn& b,
                                     const std::vector<std::string>& region_points,
                                     double region_radius, double outside_lower_bound) {
    require_same_domain(a, b, "ts_quotient_classes");
    TsQuotientResult res;
    res.region_radius = region_radius;

    const std::uint32_t target = classes.class_of(a + b);
    if (target == 0) {
        res.value = 0;
        res.certified_global = true;
        return res;
    }

    // points: pin first, then the region in its given (deterministic) order
    std::vector<std::string> pts;
    pts.push_back(ps.pin);
    for (const auto& p : region_points)
        if (p != ps.pin) pts.push_back(p);
    const std::size_t n = pts.size();
    const std::uint32_t nclasses = 1u << classes.bits;

    std::vector<std::uint32_t> pclass(n);
    for (std::size_t i = 0; i < n; ++i) pclass[i] = classes.point_class(pts[i]);

    std::vector<std::vector<double>> d(n, std::vector<double>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) d[i][j] = d[j][i] = ps.dist(pts[i], pts[j]);

    // Dijkstra over (point, accumulated class of the toggled support set).
    // Moving costs the point distance; toggling the current point into the
    // support set is free and flips the class.
    const std::size_t nstates = n * nclasses;
    std::vector<double> dist(nstates, kInf);
    using QE = std::pair<double, std::size_t>;
    std::priority_queue<QE, std::vector<QE>, std::greater<>> queue;
    const auto state = [&](std::size_t point, std::uint32_t cls) { return point * nclasses + cls; };
    dist[state(0, 0)] = 0;
    queue.push({0.0, state(0, 0)});
    const std::size_t goal = state(0, target);
    while (!queue.empty()) {
        auto [cur, s] = queue.top();
        queue.pop();
        if (cur > dist[s]) continue;
        ++res.states_explored;
        if (s == goal) break;
        const std::size_t p = s / nclasses;
        const std::uint32_t cls = static_cast<std::uint32_t>(s % nclasses);
        const std::size_t toggled = state(p, cls ^ pclass[p]);
        if (cur < dist[toggled]) {
            dist[toggled] = cur;
            queue.push({cur, toggled});
        }
        for (std::size_t q = 0; q < n; ++q) {
            if (q == p) continue;
            const std::size_t t = state(q, cls);
            const double cand = cur + d[p][q];
            if (cand < dist[t]) {
                dist[t] = cand;
                queue.push({cand, t});
            }
        }
    }

    const double walk = dist[goal];
    if (walk == kInf) {
        res.value = kInf;
        return res;
    }
    res.value = walk + 1.0;
    // any tour visiting a point outside the region pays at least the round
    // trip there, so the in-region optimum is global whenever it is cheaper
    res.certified_global = res.value <= 2.0 * outside_lower_bound + 1.0;
    return res;
}

} // namespace wreathlab
