#include "wreathlab/codes.hpp"

#include <algorithm>
#include <random>

namespace wreathlab {

Code make_code(std::size_t d, std::size_t dimC, std::uint64_t seed, std::size_t min_dist_floor,
               std::size_t attempt_budget) {
    if (dimC < 1 || dimC > d)
        throw std::invalid_argument("make_code: need 1 <= dimC <= d");
    auto universe = Universe::integers(d);
    std::mt19937_64 rng(seed);
    std::size_t best_distance = 0;

    for (std::size_t attempt = 0; attempt < attempt_budget; ++attempt) {
        std::vector<GF2Vec> gens;
        gens.push_back(GF2Vec::all_ones(universe));
        GF2Subspace C = GF2Subspace::rref(universe, gens);
        for (int tries = 0; C.dim() < dimC && tries < 64; ++tries) {
            GF2Vec v(universe);
            for (std::size_t i = 0; i < d; ++i) v.set(i, rng() & 1u);
            gens.push_back(std::move(v));
            C = GF2Subspace::rref(universe, gens);
        }
        if (C.dim() != dimC) continue;

        std::size_t min_w = d + 1;
        for (const auto& v : C.elements(1u << 20))
            if (!v.is_zero()) min_w = std::min(min_w, v.weight());
        best_distance = std::max(best_distance, min_w);
        if (min_w >= min_dist_floor) {
            Code code;
            code.d = d;
            code.Cperp = C.dual();
            code.C = std::move(C);
            code.min_distance = min_w;
            return code;
        }
    }
    throw CapacityError("make_code: attempt budget " + std::to_string(attempt_budget) +
                        " exhausted; best minimum distance found was " +
                        std::to_string(best_distance));
}

std::vector<GF2Vec> coset_reps(const Code& code, std::uint64_t point_budget) {
    if (code.dim() >= 63 || (1ull << code.dim()) > point_budget)
        throw CapacityError("coset_reps: 2^" + std::to_string(code.dim()) +
                            " cosets exceed budget " + std::to_string(point_budget));
    if (code.d >= 26)
        throw CapacityError("coset_reps: cube dimension " + std::to_string(code.d) +
                            " too large to enumerate");
    const auto universe = code.C.universe();
    // cosets of Cperp are indexed by syndromes against a basis of C
    const auto& basis = code.C.basis();
    std::vector<std::optional<GF2Vec>> best(1ull << code.dim());
    for (std::uint64_t x = 0; x < (1ull << code.d); ++x) {
        GF2Vec v(universe);
        for (std::size_t i = 0; i < code.d; ++i) v.set(i, (x >> i) & 1u);
        std::uint64_t syndrome = 0;
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (v.dot(basis[i])) syndrome |= (1ull << i);
        auto& slot = best[syndrome];
        if (!slot || v.weight() < slot->weight() ||
            (v.weight() == slot->weight() && v < *slot))
            slot = v;
    }
    std::vector<GF2Vec> reps;
    reps.reserve(best.size());
    for (auto& slot : best) reps.push_back(std::move(*slot));
    std::sort(reps.begin(), reps.end());
    return reps;
}

std::size_t quotient_hamming(const Code& code, const GF2Vec& a, const GF2Vec& b) {
    return coset_min_weight(code.Cperp, a + b);
}

FiniteMetricSpace cube_quotient_space(const Code& code, std::uint64_t point_budget) {
    const auto reps = coset_reps(code, point_budget);
    const std::size_t n = reps.size();
    std::vector<std::string> labels;
    labels.reserve(n);
    for (const auto& r : reps) labels.push_back(r.bits());
    std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            dist[i][j] = dist[j][i] =
                static_cast<double>(quotient_hamming(code, reps[i], reps[j]));
    return FiniteMetricSpace(std::move(labels), std::move(dist), 1.0);
}

int functional_L(const GF2Vec& a, const Z6Vec& v) {
    require_same_universe(*a.universe(), *v.universe(), "functional_L");
    return v.mod2().dot(a) ? 1 : 0;
}

CodeLift::CodeLift(UniversePtr index_set, Code code)
    : index_set_(std::move(index_set)), code_(std::move(code)) {
    if (index_set_->size() != code_.d)
        throw DimensionMismatch("CodeLift: index set size must equal the code dimension d");
    if (!code_.C.universe()->same_as(*index_set_)) {
        // re-express the code over the lift's index set
        std::vector<GF2Vec> c_rows, p_rows;
        for (const auto& row : code_.C.basis())
            c_rows.push_back(GF2Vec::from_bits(index_set_, row.bits()));
        for (const auto& row : code_.Cperp.basis())
            p_rows.push_back(GF2Vec::from_bits(index_set_, row.bits()));
        code_.C = GF2Subspace::rref(index_set_, c_rows);
        code_.Cperp = GF2Subspace::rref(index_set_, p_rows);
    }
    domain_ = "Z6^{";
    for (std::size_t i = 0; i < index_set_->size(); ++i) {
        if (i) domain_ += ",";
        domain_ += index_set_->label(i);
    }
    domain_ += "}";
}

CubeFn CodeLift::delta(const Z6Vec& point) const {
    CubeFn f(domain_);
    f.support.insert(point.key());
    return f;
}

std::string CodeLift::basis_point(std::size_t x) const {
    return Z6Vec::unit(index_set_, x).key();
}

GF2Vec CodeLift::sigma(const CubeFn& w) const {
    GF2Vec acc(index_set_);
    for (const auto& key : w.support) acc += Z6Vec::from_key(index_set_, key).mod2();
    return acc;
}

bool CodeLift::member_dual(const CubeFn& w) const {
    if (w.support_size() % 2 != 0) return false; // constant-one functional
    const GF2Vec profile = sigma(w);
    for (const auto& a : code_.C.basis())
        if (profile.dot(a)) return false;
    return true;
}

CubeFn CodeLift::reduce_to_basis(const CubeFn& w) const {
    const GF2Vec profile = sigma(w);
    CubeFn out(domain_);
    for (std::size_t x = 0; x < index_set_->size(); ++x)
        if (profile.get(x)) out.support.insert(basis_point(x));
    return out;
}

CubeFn CodeLift::lift(const GF2Vec& a) const {
    require_same_universe(*index_set_, *a.universe(), "CodeLift::lift");
    CubeFn out(domain_);
    for (std::size_t x = 0; x < index_set_->size(); ++x)
        if (a.get(x)) out.support.insert(basis_point(x));
    return out;
}

CubeFn CodeLift::translate(const CubeFn& w, const Z6Vec& u) const {
    CubeFn out(domain_);
    for (const auto& key : w.support)
        out.support.insert((Z6Vec::from_key(index_set_, key) + u).key());
    return out;
}

Mod2ClassMap CodeLift::class_map() const {
    Mod2ClassMap map;
    map.bits = 1 + code_.dim();
    const auto universe = index_set_;
    const auto basis = code_.C.basis();
    map.point_class = [universe, basis](const std::string& key) {
        const GF2Vec parity = Z6Vec::from_key(universe, key).mod2();
        std::uint32_t c = 1; // every point flips the support parity
        for (std::size_t i = 0; i < basis.size(); ++i)
            if (parity.dot(basis[i])) c |= (1u << (i + 1));
        return c;
    };
    return map;
}

TsQuotientResult CodeLift::lifted_quotient_distance(const GF2Vec& a, const GF2Vec& b) const {
    const int radius = static_cast<int>(2 * index_set_->size() + 1);
    const auto region = z6_hamming_ball(index_set_, radius, 1u << 20);
    return ts_quotient_classes(hamming_space(), class_map(), lift(a), lift(b), region,
                               static_cast<double>(radius), static_cast<double>(radius + 1));
}

GF2Subspace CodeLift::dual_space(std::uint64_t point_budget) const {
    const auto points = enumerate_z6_points(index_set_, point_budget);
    auto point_universe = std::make_shared<Universe>(points);
    std::vector<GF2Vec> rows;
    rows.push_back(GF2Vec::all_ones(point_universe)); // the constant-one functional
    for (const auto& a : code_.C.basis()) {
        GF2Vec row(point_universe);
        for (std::size_t p = 0; p < points.size(); ++p)
            if (Z6Vec::from_key(index_set_, points[p]).mod2().dot(a)) row.set(p, true);
        rows.push_back(std::move(row));
    }
    return GF2Subspace::rref(point_universe, rows).dual();
}

KappaReport kappa_identity_report(const CodeLift& lift) {
    KappaReport report;
    report.d = lift.code().d;
    const auto reps = coset_reps(lift.code());
    for (std::size_t i = 0; i < reps.size(); ++i) {
        for (std::size_t j = i + 1; j < reps.size(); ++j) {
            KappaPairLine line;
            line.a = reps[i].bits();
            line.b = reps[j].bits();
            const auto res = lift.lifted_quotient_distance(reps[i], reps[j]);
            line.lhs = res.value;
            line.rhs = static_cast<double>(quotient_hamming(lift.code(), reps[i], reps[j]));
            line.certified = res.certified_global;
            line.pass = line.certified && line.lhs == 2 * line.rhs + 1;
            report.all_pass = report.all_pass && line.pass;
            report.pairs.push_back(line);
        }
    }
    return report;
}

} // namespace wreathlab
