#include "wreathlab/gf2.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <ostream>
#include <sstream>

namespace wreathlab {

namespace {

std::uint64_t fnv1a(const std::vector<std::string>& labels) {
    std::uint64_t h = 1469598103934665603ull;
    for (const auto& s : labels) {
        for (char c : s) {
            h ^= static_cast<unsigned char>(c);
            h *= 1099511628211ull;
        }
        h ^= 0xff;
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace

Universe::Universe(std::vector<std::string> labels) : labels_(std::move(labels)) {
    hash_ = fnv1a(labels_);
}

std::shared_ptr<const Universe> Universe::integers(std::size_t d) {
    std::vector<std::string> labels;
    labels.reserve(d);
    for (std::size_t i = 0; i < d; ++i) labels.push_back(std::to_string(i));
    return std::make_shared<Universe>(std::move(labels));
}

std::optional<std::size_t> Universe::index_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i] == label) return i;
    return std::nullopt;
}

bool Universe::same_as(const Universe& other) const {
    if (this == &other) return true;
    return hash_ == other.hash_ && labels_ == other.labels_;
}

void require_same_universe(const Universe& a, const Universe& b, const char* what) {
    if (!a.same_as(b))
        throw DimensionMismatch(std::string(what) + ": operands indexed by different universes");
}

GF2Vec::GF2Vec(UniversePtr universe)
    : universe_(std::move(universe)), size_(universe_->size()), words_((size_ + 63) / 64, 0) {}

GF2Vec GF2Vec::from_bits(UniversePtr universe, const std::string& bits01) {
    GF2Vec v(std::move(universe));
    if (bits01.size() != v.size_)
        throw DimensionMismatch("from_bits: bit string length " + std::to_string(bits01.size()) +
                                " does not match universe size " + std::to_string(v.size_));
    for (std::size_t i = 0; i < bits01.size(); ++i) {
        if (bits01[i] == '1')
            v.set(i, true);
        else if (bits01[i] != '0')
            throw std::invalid_argument("from_bits: expected 0/1 string");
    }
    return v;
}

GF2Vec GF2Vec::all_ones(UniversePtr universe) {
    GF2Vec v(std::move(universe));
    for (std::size_t i = 0; i < v.size_; ++i) v.set(i, true);
    return v;
}

GF2Vec GF2Vec::unit(UniversePtr universe, std::size_t i) {
    GF2Vec v(std::move(universe));
    v.set(i, true);
    return v;
}

bool GF2Vec::get(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }

void GF2Vec::set(std::size_t i, bool value) {
    if (value)
        words_[i / 64] |= (1ull << (i % 64));
    else
        words_[i / 64] &= ~(1ull << (i % 64));
}

void GF2Vec::flip(std::size_t i) { words_[i / 64] ^= (1ull << (i % 64)); }

std::size_t GF2Vec::weight() const {
    std::size_t w = 0;
    for (auto word : words_) w += static_cast<std::size_t>(std::popcount(word));
    return w;
}

bool GF2Vec::is_zero() const {
    for (auto word : words_)
        if (word) return false;
    return true;
}

GF2Vec GF2Vec::operator+(const GF2Vec& other) const {
    GF2Vec r = *this;
    r += other;
    return r;
}

GF2Vec& GF2Vec::operator+=(const GF2Vec& other) {
    require_same_universe(*universe_, *other.universe_, "GF2Vec::operator+");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
    return *this;
}

bool GF2Vec::dot(const GF2Vec& other) const {
    require_same_universe(*universe_, *other.universe_, "GF2Vec::dot");
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) acc ^= (words_[i] & other.words_[i]);
    return std::popcount(acc) & 1u;
}

std::string GF2Vec::bits() const {
    std::string s(size_, '0');
    for (std::size_t i = 0; i < size_; ++i)
        if (get(i)) s[i] = '1';
    return s;
}

bool GF2Vec::operator==(const GF2Vec& other) const {
    return universe_->same_as(*other.universe_) && words_ == other.words_;
}

bool GF2Vec::operator<(const GF2Vec& other) const {
    for (std::size_t i = 0; i < std::min(size_, other.size_); ++i) {
        bool a = get(i), b = other.get(i);
        if (a != b) return !a; // '0' < '1'
    }
    return size_ < other.size_;
}

GF2Subspace::GF2Subspace(UniversePtr universe, std::vector<GF2Vec> basis,
                         std::vector<std::size_t> pivots)
    : universe_(std::move(universe)), basis_(std::move(basis)), pivots_(std::move(pivots)) {}

GF2Subspace GF2Subspace::zero(UniversePtr universe) {
    return GF2Subspace(std::move(universe), {}, {});
}

GF2Subspace GF2Subspace::rref(UniversePtr universe, const std::vector<GF2Vec>& generators) {
    for (const auto& g : generators)
        require_same_universe(*universe, *g.universe(), "GF2Subspace::rref");

    std::vector<GF2Vec> rows;
    std::vector<std::size_t> pivots;
    for (const auto& g : generators) {
        GF2Vec v = g;
        for (std::size_t k = 0; k < rows.size(); ++k)
            if (v.get(pivots[k])) v += rows[k];
        if (v.is_zero()) continue;
        std::size_t p = 0;
        while (!v.get(p)) ++p;
        // back-eliminate the new pivot from existing rows
        for (std::size_t k = 0; k < rows.size(); ++k)
            if (rows[k].get(p)) rows[k] += v;
        std::size_t pos = 0;
        while (pos < pivots.size() && pivots[pos] < p) ++pos;
        rows.insert(rows.begin() + static_cast<std::ptrdiff_t>(pos), v);
        pivots.insert(pivots.begin() + static_cast<std::ptrdiff_t>(pos), p);
    }
    return GF2Subspace(universe, std::move(rows), std::move(pivots));
}

bool GF2Subspace::contains(const GF2Vec& v) const { return reduce(v).is_zero(); }

GF2Vec GF2Subspace::reduce(GF2Vec v) const {
    require_same_universe(*universe_, *v.universe(), "GF2Subspace::reduce");
    for (std::size_t k = 0; k < basis_.size(); ++k)
        if (v.get(pivots_[k])) v += basis_[k];
    return v;
}

GF2Subspace GF2Subspace::dual() const {
    const std::size_t n = universe_->size();
    std::vector<bool> is_pivot(n, false);
    for (auto p : pivots_) is_pivot[p] = true;

    std::vector<GF2Vec> gens;
    for (std::size_t j = 0; j < n; ++j) {
        if (is_pivot[j]) continue;
        GF2Vec w(universe_);
        w.set(j, true);
        for (std::size_t k = 0; k < basis_.size(); ++k)
            if (basis_[k].get(j)) w.set(pivots_[k], true);
        gens.push_back(std::move(w));
    }
    return rref(universe_, gens);
}

std::vector<GF2Vec> GF2Subspace::elements(std::uint64_t cap) const {
    if (dim() >= 63 || (1ull << dim()) > cap)
        throw CapacityError("subspace enumeration: 2^" + std::to_string(dim()) +
                            " elements exceed budget " + std::to_string(cap));
    std::vector<GF2Vec> out;
    out.reserve(1ull << dim());
    GF2Vec cur(universe_);
    out.push_back(cur);
    const std::uint64_t total = 1ull << dim();
    for (std::uint64_t g = 1; g < total; ++g) {
        const int bit = std::countr_zero(g); // Gray code step
        cur += basis_[static_cast<std::size_t>(bit)];
        out.push_back(cur);
    }
    return out;
}

bool GF2Subspace::operator==(const GF2Subspace& other) const {
    return universe_->same_as(*other.universe_) && basis_ == other.basis_;
}

std::size_t coset_min_weight(const GF2Subspace& space, const GF2Vec& v, std::uint64_t budget) {
    require_same_universe(*space.universe(), *v.universe(), "coset_min_weight");
    if (space.dim() >= 63 || (1ull << space.dim()) > budget)
        throw CapacityError("coset enumeration: 2^" + std::to_string(space.dim()) +
                            " elements exceed budget " + std::to_string(budget));
    GF2Vec cur = v;
    std::size_t best = cur.weight();
    const std::uint64_t total = 1ull << space.dim();
    for (std::uint64_t g = 1; g < total; ++g) {
        const int bit = std::countr_zero(g);
        cur += space.basis()[static_cast<std::size_t>(bit)];
        best = std::min(best, cur.weight());
    }
    return best;
}

GF2Vec coset_min_rep(const GF2Subspace& space, const GF2Vec& v, std::uint64_t budget) {
    require_same_universe(*space.universe(), *v.universe(), "coset_min_rep");
    if (space.dim() >= 63 || (1ull << space.dim()) > budget)
        throw CapacityError("coset enumeration: 2^" + std::to_string(space.dim()) +
                            " elements exceed budget " + std::to_string(budget));
    GF2Vec cur = v;
    GF2Vec best = cur;
    std::size_t best_w = best.weight();
    const std::uint64_t total = 1ull << space.dim();
    for (std::uint64_t g = 1; g < total; ++g) {
        const int bit = std::countr_zero(g);
        cur += space.basis()[static_cast<std::size_t>(bit)];
        const std::size_t w = cur.weight();
        if (w < best_w || (w == best_w && cur < best)) {
            best = cur;
            best_w = w;
        }
    }
    return best;
}

void save_subspace(std::ostream& out, const GF2Subspace& space) {
    out << "d=" << space.ambient_dim() << "\n";
    for (const auto& row : space.basis()) out << row.bits() << "\n";
}

GF2Subspace load_subspace(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("d=", 0) != 0)
        throw std::invalid_argument("subspace file: expected header line d=<n>");
    std::size_t d = 0;
    {
        std::istringstream hs(line.substr(2));
        if (!(hs >> d)) throw std::invalid_argument("subspace file: bad dimension in header");
    }
    auto universe = Universe::integers(d);
    std::vector<GF2Vec> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        rows.push_back(GF2Vec::from_bits(universe, line));
    }
    return GF2Subspace::rref(universe, rows);
}

} // namespace wreathlab
