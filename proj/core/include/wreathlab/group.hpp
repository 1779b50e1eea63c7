#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "wreathlab/common.hpp"
#include "wreathlab/gf2.hpp"

namespace wreathlab {

class Group;

/// Element of a registered presentation; the key is a canonical encoding,
/// unique per group element, so elements hash and compare directly.
struct GroupElem {
    const Group* group = nullptr;
    std::string key;

    bool operator==(const GroupElem& other) const {
        return group == other.group && key == other.key;
    }
    bool operator<(const GroupElem& other) const { return key < other.key; }
};

/// Finitely generated group with a fixed symmetric generating set.
class Group {
  public:
    explicit Group(std::string name) : name_(std::move(name)) {}
    virtual ~Group() = default;

    const std::string& name() const { return name_; }
    GroupElem identity() const { return {this, identity_key()}; }
    const std::vector<GroupElem>& generators() const;

    GroupElem multiply(const GroupElem& a, const GroupElem& b) const;
    GroupElem inverse(const GroupElem& a) const;

    /// Exact word-metric distance from the identity when a closed form is
    /// known for this presentation.
    virtual std::optional<std::int64_t> closed_form_distance(const GroupElem&) const {
        return std::nullopt;
    }

  protected:
    virtual std::string identity_key() const = 0;
    virtual std::vector<std::string> generator_keys() const = 0;
    virtual std::string multiply_keys(const std::string& a, const std::string& b) const = 0;
    virtual std::string inverse_key(const std::string& a) const = 0;

  private:
    std::string name_;
    mutable std::vector<GroupElem> generators_cache_;
};

/// Z with generators {+1,-1}; keys are decimal integers.
class IntegerGroup : public Group {
  public:
    IntegerGroup() : Group("Z") {}
    GroupElem make(std::int64_t k) const { return {this, std::to_string(k)}; }
    static std::int64_t value(const GroupElem& g) { return std::stoll(g.key); }
    std::optional<std::int64_t> closed_form_distance(const GroupElem& g) const override;

  protected:
    std::string identity_key() const override { return "0"; }
    std::vector<std::string> generator_keys() const override { return {"1", "-1"}; }
    std::string multiply_keys(const std::string& a, const std::string& b) const override;
    std::string inverse_key(const std::string& a) const override;
};

/// Z_k with generators {+1,-1}; keys "0".."k-1".
class CyclicGroup : public Group {
  public:
    explicit CyclicGroup(int modulus);
    int modulus() const { return modulus_; }
    GroupElem make(int k) const;
    static int value(const GroupElem& g) { return std::stoi(g.key); }
    std::optional<std::int64_t> closed_form_distance(const GroupElem& g) const override;

  protected:
    std::string identity_key() const override { return "0"; }
    std::vector<std::string> generator_keys() const override;
    std::string multiply_keys(const std::string& a, const std::string& b) const override;
    std::string inverse_key(const std::string& a) const override;

  private:
    int modulus_;
};

/// Wreath product Z_m wr B: finitely supported lamp configurations over
/// the base, base acting by coordinate translation.  Generators are the
/// lamp moves {+1,-1} at the base identity plus the lifted base
/// generators.  Closed-form distances are available over base Z.
class WreathGroup : public Group {
  public:
    WreathGroup(int lamp_modulus, std::shared_ptr<const Group> base);

    int lamp_modulus() const { return lamp_modulus_; }
    const Group& base() const { return *base_; }

    GroupElem make(const std::map<std::string, int>& lamps, const GroupElem& cursor) const;
    std::map<std::string, int> lamps(const GroupElem& g) const;
    GroupElem cursor(const GroupElem& g) const;

    std::optional<std::int64_t> closed_form_distance(const GroupElem& g) const override;

  protected:
    std::string identity_key() const override;
    std::vector<std::string> generator_keys() const override;
    std::string multiply_keys(const std::string& a, const std::string& b) const override;
    std::string inverse_key(const std::string& a) const override;

  private:
    std::string encode(const std::map<std::string, int>& lamps, const std::string& cursor) const;
    void decode(const std::string& key, std::map<std::string, int>& lamps,
                std::string& cursor) const;

    int lamp_modulus_;
    std::shared_ptr<const Group> base_;
};

/// Semidirect product (Z2^H / V) x H for a finite base H and a
/// translation-invariant subspace V.  Lamp parts are canonical coset
/// representatives: minimum weight, ties to the lexicographically
/// smallest bit string in universe order.
class LampQuotientGroup : public Group {
  public:
    LampQuotientGroup(std::shared_ptr<const Group> base, std::vector<GroupElem> base_elements,
                      GF2Subspace v);

    const Group& base() const { return *base_; }
    const GF2Subspace& subspace() const { return v_; }
    const UniversePtr& lamp_universe() const { return universe_; }

    GroupElem make(const GF2Vec& lamps, const GroupElem& cursor) const;
    GF2Vec lamps(const GroupElem& g) const;
    GroupElem cursor(const GroupElem& g) const;

  protected:
    std::string identity_key() const override;
    std::vector<std::string> generator_keys() const override;
    std::string multiply_keys(const std::string& a, const std::string& b) const override;
    std::string inverse_key(const std::string& a) const override;

  private:
    GF2Vec canonical(const GF2Vec& lamps) const;
    std::size_t index_of(const std::string& base_key) const;

    std::shared_ptr<const Group> base_;
    std::vector<GroupElem> base_elements_;
    UniversePtr universe_;
    GF2Subspace v_;
    std::unordered_map<std::string, std::size_t> index_;
    // translate_[h] maps coordinate index i to the index of x_i * h^{-1}
    std::unordered_map<std::string, std::vector<std::size_t>> translate_;
};

/// Exact ball of the word metric, breadth-first from the identity with a
/// deterministic enumeration order.
struct WordBall {
    const Group* group = nullptr;
    std::int64_t radius = 0;            // radius actually reached
    bool complete = false;              // true when the whole group was enumerated
    std::vector<std::string> order;     // BFS enumeration order
    std::unordered_map<std::string, std::int64_t> dist;

    std::optional<std::int64_t> distance(const GroupElem& g) const;
    std::int64_t distance_between(const GroupElem& a, const GroupElem& b) const;
    std::size_t size() const { return order.size(); }
};

WordBall word_ball(const Group& g, std::int64_t radius,
                   std::uint64_t element_budget = Budgets{}.bfs_elements);

/// Word distance in K wr Z from the identity to (lamps, cursor): the sum
/// of the per-coordinate cyclic lamp weights plus the shorter of the
/// left-first / right-first traversals of the spanned interval.
std::int64_t lamplighter_distance(const std::map<std::int64_t, int>& lamp_weights,
                                  std::int64_t target_cursor);

/// Exact word distance between two zero-section elements (lamp configs at
/// cursor e).  Uses the closed form when available, else a ball lookup.
std::int64_t zero_section_distance(const Group& g, const GroupElem& v, const GroupElem& w,
                                   const WordBall* ball = nullptr,
                                   std::uint64_t element_budget = Budgets{}.bfs_elements);

struct EquidistantSet {
    std::vector<GroupElem> points;
    bool complete = false; // found the requested number of points
    std::int64_t r = 0;
    std::int64_t M = 0;
};

/// Greedy packing of the annulus {x : r <= d(x,e) <= M r} in BFS order:
/// accepted points are pairwise >= r apart, so all pairwise distances and
/// distances to the identity land in [r, 2Mr].
EquidistantSet equidistant_set(const Group& g, std::int64_t r, std::int64_t M, std::size_t want,
                               std::uint64_t element_budget = Budgets{}.bfs_elements,
                               const WordBall* cached = nullptr);

struct PackingProfile {
    std::uint64_t annulus_size = 0;
    std::uint64_t packing_size = 0;
    std::uint64_t ball_r_size = 0;
    double growth_constant = 0; // packing_size^(1/r)
};

PackingProfile annulus_packing_profile(const Group& g, std::int64_t r, std::int64_t M,
                                       std::uint64_t element_budget = Budgets{}.bfs_elements,
                                       const WordBall* cached = nullptr);

/// Ball cache: text map from element encoding to distance, keyed by the
/// presentation name, a hash of the generator set and the radius.  Files
/// from other tool versions are ignored.
void save_ball(std::ostream& out, const WordBall& ball);
std::optional<WordBall> load_ball(std::istream& in, const Group& g, std::int64_t radius);
std::string ball_cache_filename(const Group& g, std::int64_t radius);

} // namespace wreathlab
