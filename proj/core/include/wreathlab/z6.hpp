#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "wreathlab/gf2.hpp"

namespace wreathlab {

inline constexpr int kZ6 = 6;

/// Word length of k in the cycle Z6 with generators {+1,-1}.
inline int z6_weight(int k) {
    k = ((k % kZ6) + kZ6) % kZ6;
    return k <= kZ6 - k ? k : kZ6 - k;
}

/// Vector over Z6 indexed by a Universe; componentwise addition mod 6.
class Z6Vec {
  public:
    explicit Z6Vec(UniversePtr universe);
    static Z6Vec unit(UniversePtr universe, std::size_t i); // entry 1 at i
    /// Decode a digit string such as "031" (one digit 0..5 per coordinate).
    static Z6Vec from_key(UniversePtr universe, const std::string& key);

    const UniversePtr& universe() const { return universe_; }
    std::size_t size() const { return entries_.size(); }
    int get(std::size_t i) const { return entries_[i]; }
    void set(std::size_t i, int value);

    Z6Vec operator+(const Z6Vec& other) const;
    Z6Vec operator-() const;
    Z6Vec operator-(const Z6Vec& other) const;
    bool operator==(const Z6Vec& other) const;

    /// Sum of per-coordinate cyclic word lengths min(k, 6-k).
    int weight() const;
    bool is_zero() const;

    /// Coordinatewise parity Z6 ->> Z2; an additive homomorphism.
    GF2Vec mod2() const;

    std::string key() const; // digit string in universe order

  private:
    UniversePtr universe_;
    std::vector<std::uint8_t> entries_;
};

inline GF2Vec z6_reduce_mod2(const Z6Vec& w) { return w.mod2(); }

/// All points of Z6^universe as digit-string keys, lexicographic order.
/// Throws CapacityError when 6^|universe| exceeds `cap`.
std::vector<std::string> enumerate_z6_points(const UniversePtr& universe, std::uint64_t cap);

/// Hamming distance between two digit-string keys: sum of cyclic
/// word lengths of the coordinate differences.
int z6_hamming(const std::string& a, const std::string& b);

/// Keys within Hamming distance `radius` of the origin, lexicographic order.
std::vector<std::string> z6_hamming_ball(const UniversePtr& universe, int radius,
                                         std::uint64_t cap);

} // namespace wreathlab
