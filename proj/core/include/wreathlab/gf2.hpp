#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wreathlab/common.hpp"

namespace wreathlab {

/// Ordered list of coordinate labels.  The same vector code serves plain
/// cubes (labels "0".."d-1"), function spaces indexed by points of
/// Z6^I (labels are digit strings) and truncated group windows, so the
/// universe is explicit rather than an implied 0..d-1 range.
class Universe {
  public:
    explicit Universe(std::vector<std::string> labels);

    static std::shared_ptr<const Universe> integers(std::size_t d);

    std::size_t size() const { return labels_.size(); }
    const std::string& label(std::size_t i) const { return labels_[i]; }
    const std::vector<std::string>& labels() const { return labels_; }
    std::optional<std::size_t> index_of(const std::string& label) const;

    bool same_as(const Universe& other) const;

  private:
    std::vector<std::string> labels_;
    std::uint64_t hash_ = 0;
};

using UniversePtr = std::shared_ptr<const Universe>;

void require_same_universe(const Universe& a, const Universe& b, const char* what);

/// Packed vector over GF(2) indexed by a Universe.
class GF2Vec {
  public:
    explicit GF2Vec(UniversePtr universe);
    static GF2Vec from_bits(UniversePtr universe, const std::string& bits01);
    static GF2Vec all_ones(UniversePtr universe);
    static GF2Vec unit(UniversePtr universe, std::size_t i);

    const UniversePtr& universe() const { return universe_; }
    std::size_t size() const { return size_; }

    bool get(std::size_t i) const;
    void set(std::size_t i, bool value);
    void flip(std::size_t i);

    std::size_t weight() const;
    bool is_zero() const;

    GF2Vec operator+(const GF2Vec& other) const; // coordinatewise XOR
    GF2Vec& operator+=(const GF2Vec& other);
    bool dot(const GF2Vec& other) const; // sum a_i b_i mod 2

    std::string bits() const;

    bool operator==(const GF2Vec& other) const;
    /// Lexicographic order on the bit string, universe order fixed.
    bool operator<(const GF2Vec& other) const;

  private:
    UniversePtr universe_;
    std::size_t size_;
    std::vector<std::uint64_t> words_;
};

/// Subspace of GF(2)^universe held as a reduced row-echelon basis.
class GF2Subspace {
  public:
    static GF2Subspace zero(UniversePtr universe);
    /// Row reduction; idempotent, mixed universes rejected.
    static GF2Subspace rref(UniversePtr universe, const std::vector<GF2Vec>& generators);

    const UniversePtr& universe() const { return universe_; }
    const std::vector<GF2Vec>& basis() const { return basis_; }
    std::size_t dim() const { return basis_.size(); }
    std::size_t ambient_dim() const { return universe_->size(); }

    bool contains(const GF2Vec& v) const;
    /// Canonical residue after eliminating all pivots (zero iff member).
    GF2Vec reduce(GF2Vec v) const;

    /// Orthogonal complement under the mod-2 inner product.
    GF2Subspace dual() const;

    /// All 2^dim elements in Gray-code order; throws CapacityError past `cap`.
    std::vector<GF2Vec> elements(std::uint64_t cap) const;

    bool operator==(const GF2Subspace& other) const;

  private:
    GF2Subspace(UniversePtr universe, std::vector<GF2Vec> basis, std::vector<std::size_t> pivots);

    UniversePtr universe_;
    std::vector<GF2Vec> basis_;   // echelon rows, pivot columns increasing
    std::vector<std::size_t> pivots_;
};

/// Minimum Hamming weight over the coset v + space, by full enumeration.
std::size_t coset_min_weight(const GF2Subspace& space, const GF2Vec& v,
                             std::uint64_t budget = Budgets{}.coset_elements);

/// Minimum-weight coset representative, ties broken by lexicographically
/// smallest bit string in universe order.
GF2Vec coset_min_rep(const GF2Subspace& space, const GF2Vec& v,
                     std::uint64_t budget = Budgets{}.coset_elements);

/// Text format: first line "d=<n>", one 0/1 basis row per line.
void save_subspace(std::ostream& out, const GF2Subspace& space);
GF2Subspace load_subspace(std::istream& in);

} // namespace wreathlab
