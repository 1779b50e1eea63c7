#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "wreathlab/common.hpp"
#include "wreathlab/z6.hpp"

namespace wreathlab {

/// Finitely supported function X -> Z2, stored as its support set.
/// Points are canonical string keys; addition is symmetric difference.
struct CubeFn {
    std::string domain;
    std::set<std::string> support;

    CubeFn() = default;
    explicit CubeFn(std::string domain_id) : domain(std::move(domain_id)) {}
    CubeFn(std::string domain_id, std::set<std::string> spt)
        : domain(std::move(domain_id)), support(std::move(spt)) {}

    bool is_zero() const { return support.empty(); }
    std::size_t support_size() const { return support.size(); }
    bool contains(const std::string& p) const { return support.count(p) > 0; }

    CubeFn operator+(const CubeFn& other) const;
    bool operator==(const CubeFn& other) const {
        return domain == other.domain && support == other.support;
    }
};

/// Point metric with a distinguished pin.  Distances come through a
/// callback so the same tour code serves Hamming cubes, word metrics and
/// zero-section metrics alike.
struct PinnedSpace {
    std::string domain;
    std::string pin;
    std::function<double(const std::string&, const std::string&)> dist;
};

/// Hamming metric on Z6^universe pinned at the origin.
PinnedSpace z6_hamming_space(const UniversePtr& universe);

/// Pinned traveling-salesman distance: 0 when a == b, otherwise the
/// minimal closed-tour length from the pin covering spt(a+b), plus one.
/// Exact subset dynamic programming; support beyond `support_cap` is a
/// capacity error.
double ts_pinned(const PinnedSpace& ps, const CubeFn& a, const CubeFn& b,
                 std::size_t support_cap = Budgets{}.tsp_support);

/// Optimal tour behind ts_pinned, pin excluded; ties broken toward the
/// lexicographically smallest point sequence.
std::vector<std::string> ts_pinned_tour(const PinnedSpace& ps, const CubeFn& a, const CubeFn& b,
                                        std::size_t support_cap = Budgets{}.tsp_support);

struct TsPropertyReport {
    bool passed = true;
    std::size_t checked = 0;
    std::string counterexample; // empty when passed
};

/// Checks addition invariance ts(v+c, w+c) = ts(v,w) on each triple and a
/// derived support-monotonicity instance built from the triple.
TsPropertyReport ts_check_addition_invariance(const PinnedSpace& ps,
                                              const std::vector<std::array<CubeFn, 3>>& triples,
                                              std::size_t support_cap = Budgets{}.tsp_support);

struct TsQuotientResult {
    double value = 0;
    double region_radius = 0;       // declared search region around the pin
    std::size_t max_support = 0;    // support cap searched (0 = unbounded)
    bool certified_global = false;  // tours leaving the region provably lose
    std::uint64_t states_explored = 0;
};

/// Quotient distance min_W ts(a, b+W) with W running over an explicitly
/// enumerated list of subspace elements (small subspaces only).
TsQuotientResult ts_quotient_enumerate(const PinnedSpace& ps, const std::vector<CubeFn>& shifts,
                                       const CubeFn& a, const CubeFn& b,
                                       std::size_t support_cap = Budgets{}.tsp_support);

/// Literal bounded-region search: every W with support inside
/// `region_points`, |spt W| <= max_support and membership(W) true.
/// Cost grows as C(|region|, max_support); tiny regions only.
TsQuotientResult ts_quotient_bruteforce(const PinnedSpace& ps,
                                        const std::function<bool(const CubeFn&)>& membership,
                                        const CubeFn& a, const CubeFn& b,
                                        const std::vector<std::string>& region_points,
                                        double region_radius, std::size_t max_support,
                                        std::size_t support_cap = Budgets{}.tsp_support);

/// Linear membership data: subspace = kernel of a point-additive class
/// map into Z2^bits, class(W) = sum over spt W of point_class.
struct Mod2ClassMap {
    std::size_t bits = 0;
    std::function<std::uint32_t(const std::string&)> point_class;

    std::uint32_t class_of(const CubeFn& w) const {
        std::uint32_t c = 0;
        for (const auto& p : w.support) c ^= point_class(p);
        return c;
    }
};

/// Exact quotient distance over the kernel of `classes`, searched as a
/// shortest closed walk from the pin through `region_points` that toggles
/// a support set of the required class.  Exhaustive over the declared
/// region; globally certified when the found value is at most
/// 2*outside_lower_bound + 1.
TsQuotientResult ts_quotient_classes(const PinnedSpace& ps, const Mod2ClassMap& classes,
                                     const CubeFn& a, const CubeFn& b,
                                     const std::vector<std::string>& region_points,
                                     double region_radius, double outside_lower_bound);

} // namespace wreathlab
