#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wreathlab/gf2.hpp"
#include "wreathlab/metric.hpp"
#include "wreathlab/tsmetric.hpp"
#include "wreathlab/z6.hpp"

namespace wreathlab {

/// GF(2) code with the all-ones vector as a member, its cached dual and
/// its brute-force minimum distance.
struct Code {
    std::size_t d = 0;
    GF2Subspace C = GF2Subspace::zero(Universe::integers(0));
    GF2Subspace Cperp = GF2Subspace::zero(Universe::integers(0));
    std::size_t min_distance = 0;

    std::size_t dim() const { return C.dim(); }
};

/// Seeded rejection sampling: spans of random vectors together with the
/// all-ones vector, resampled until the minimum distance reaches the
/// floor.  Deterministic for a fixed seed.
Code make_code(std::size_t d, std::size_t dimC, std::uint64_t seed, std::size_t min_dist_floor,
               std::size_t attempt_budget = 4096);

/// The quotient cube Z2^d / Cperp with the quotient Hamming metric; one
/// point per coset, labeled by the canonical minimum-weight representative.
FiniteMetricSpace cube_quotient_space(const Code& code, std::uint64_t point_budget = 4096);

/// Canonical minimum-weight representatives of the cosets of Cperp, in
/// lexicographic order of their bit strings.
std::vector<GF2Vec> coset_reps(const Code& code, std::uint64_t point_budget = 4096);

/// Quotient Hamming distance between two cube vectors.
std::size_t quotient_hamming(const Code& code, const GF2Vec& a, const GF2Vec& b);

/// Linear functional value <reduce_mod2(v), a> over a shared index set.
int functional_L(const GF2Vec& a, const Z6Vec& v);

/// Lift of a code over the index set I to the function space on Z6^I.
/// Carries the span of {constant-one} + {L_a : a in C}: a translation-
/// invariant collection whose annihilator contains exactly the functions
/// with even support whose coordinatewise parity profile lies in Cperp.
class CodeLift {
  public:
    CodeLift(UniversePtr index_set, Code code);

    const UniversePtr& index_set() const { return index_set_; }
    const Code& code() const { return code_; }
    const std::string& domain() const { return domain_; }

    CubeFn zero_fn() const { return CubeFn(domain_); }
    CubeFn delta(const Z6Vec& point) const;
    /// Basis-vector indicator e_x for the x-th index.
    std::string basis_point(std::size_t x) const;

    /// Membership of W in the annihilator of the lifted functionals.
    bool member_dual(const CubeFn& w) const;

    /// Parity profile sum over the support: sum of reduce_mod2(w).
    GF2Vec sigma(const CubeFn& w) const;

    /// Basis-supported reduction: the indicator of those basis vectors
    /// whose coordinate appears with odd parity in an odd number of
    /// support points.  Preserves all pairings with the lifted
    /// functionals and never increases the pinned tour distance.
    CubeFn reduce_to_basis(const CubeFn& w) const;

    /// Basis-supported lift of a cube vector: the indicator of
    /// {e_x : a_x = 1}.  Composed with the quotient by the annihilator it
    /// reproduces the cube quotient, doubled plus one.
    CubeFn lift(const GF2Vec& a) const;

    /// Translate the support of W by u (acts on points of Z6^I).
    CubeFn translate(const CubeFn& w, const Z6Vec& u) const;

    /// Point-additive class map whose kernel is exactly the annihilator:
    /// bit 0 is the support parity, bit 1+i pairs the parity profile with
    /// the i-th basis vector of C.
    Mod2ClassMap class_map() const;

    /// Hamming metric on Z6^I pinned at the origin.
    PinnedSpace hamming_space() const { return z6_hamming_space(index_set_); }

    /// Quotient tour distance between the lifts of a and b, searched over
    /// the Hamming ball of radius 2|I|+1 (support caps derived from the
    /// basis-supported tour bound 2|I|+1).
    TsQuotientResult lifted_quotient_distance(const GF2Vec& a, const GF2Vec& b) const;

    /// Full annihilator of the lifted functionals as a dense subspace of
    /// GF(2)^{Z6^I}; feasible for |I| <= 2.
    GF2Subspace dual_space(std::uint64_t point_budget = 4096) const;

    Z6Vec point(const std::string& key) const { return Z6Vec::from_key(index_set_, key); }

  private:
    UniversePtr index_set_;
    Code code_;
    std::string domain_;
};

struct KappaPairLine {
    std::string a, b;
    double lhs = 0; // quotient tour distance between the lifts
    double rhs = 0; // quotient Hamming distance
    bool pass = false;
    bool certified = false;
};

struct KappaReport {
    std::size_t d = 0;
    std::uint64_t seed = 0;
    std::vector<KappaPairLine> pairs;
    bool all_pass = true;
};

/// Checks lhs == 2*rhs + 1 for every distinct coset pair of the code,
/// with lhs found by the bounded-region quotient search.
KappaReport kappa_identity_report(const CodeLift& lift);

} // namespace wreathlab
