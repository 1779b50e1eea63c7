#include "wreathlab/z6.hpp"

#include <stdexcept>

namespace wreathlab {

Z6Vec::Z6Vec(UniversePtr universe)
    : universe_(std::move(universe)), entries_(universe_->size(), 0) {}

Z6Vec Z6Vec::unit(UniversePtr universe, std::size_t i) {
    Z6Vec v(std::move(universe));
    v.set(i, 1);
    return v;
}

Z6Vec Z6Vec::from_key(UniversePtr universe, const std::string& key) {
    Z6Vec v(std::move(universe));
    if (key.size() != v.size())
        throw DimensionMismatch("Z6Vec::from_key: key length does not match universe");
    for (std::size_t i = 0; i < key.size(); ++i) {
        if (key[i] < '0' || key[i] > '5')
            throw std::invalid_argument("Z6Vec::from_key: digits must be 0..5");
        v.entries_[i] = static_cast<std::uint8_t>(key[i] - '0');
    }
    return v;
}

void Z6Vec::set(std::size_t i, int value) {
    entries_[i] = static_cast<std::uint8_t>(((value % kZ6) + kZ6) % kZ6);
}

Z6Vec Z6Vec::operator+(const Z6Vec& other) const {
    require_same_universe(*universe_, *other.universe_, "Z6Vec::operator+");
    Z6Vec r(universe_);
    for (std::size_t i = 0; i < entries_.size(); ++i)
        r.entries_[i] = static_cast<std::uint8_t>((entries_[i] + other.entries_[i]) % kZ6);
    return r;
}

Z6Vec Z6Vec::operator-() const {
    Z6Vec r(universe_);
    for (std::size_t i = 0; i < entries_.size(); ++i)
        r.entries_[i] = static_cast<std::uint8_t>((kZ6 - entries_[i]) % kZ6);
    return r;
}

Z6Vec Z6Vec::operator-(const Z6Vec& other) const { return *this + (-other); }

bool Z6Vec::operator==(const Z6Vec& other) const {
    return universe_->same_as(*other.universe_) && entries_ == other.entries_;
}

int Z6Vec::weight() const {
    int w = 0;
    for (auto e : entries_) w += z6_weight(e);
    return w;
}

bool Z6Vec::is_zero() const {
    for (auto e : entries_)
        if (e) return false;
    return true;
}

GF2Vec Z6Vec::mod2() const {
    GF2Vec v(universe_);
    for (std::size_t i = 0; i < entries_.size(); ++i)
        if (entries_[i] & 1) v.set(i, true);
    return v;
}

std::string Z6Vec::key() const {
    std::string s(entries_.size(), '0');
    for (std::size_t i = 0; i < entries_.size(); ++i)
        s[i] = static_cast<char>('0' + entries_[i]);
    return s;
}

std::vector<std::string> enumerate_z6_points(const UniversePtr& universe, std::uint64_t cap) {
    const std::size_t n = universe->size();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) {
        total *= kZ6;
        if (total > cap)
            throw CapacityError("Z6 point enumeration: 6^" + std::to_string(n) +
                                " exceeds budget " + std::to_string(cap));
    }
    std::vector<std::string> out;
    out.reserve(total);
    std::string cur(n, '0');
    for (std::uint64_t v = 0; v < total; ++v) {
        out.push_back(cur);
        for (std::size_t i = n; i-- > 0;) {
            if (cur[i] < '5') {
                ++cur[i];
                break;
            }
            cur[i] = '0';
        }
    }
    return out;
}

int z6_hamming(const std::string& a, const std::string& b) {
    if (a.size() != b.size())
        throw DimensionMismatch("z6_hamming: keys of different length");
    int d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += z6_weight((a[i] - '0') - (b[i] - '0'));
    return d;
}

std::vector<std::string> z6_hamming_ball(const UniversePtr& universe, int radius,
                                         std::uint64_t cap) {
    auto all = enumerate_z6_points(universe, cap);
    const std::string origin(universe->size(), '0');
    std::vector<std::string> out;
    for (auto& p : all)
        if (z6_hamming(p, origin) <= radius) out.push_back(std::move(p));
    return out;
}

} // namespace wreathlab
