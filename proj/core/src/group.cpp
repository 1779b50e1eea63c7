#include "wreathlab/group.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace wreathlab {

namespace {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t generator_hash(const Group& g) {
    std::string joined;
    for (const auto& s : g.generators()) {
        joined += s.key;
        joined += '\n';
    }
    return fnv1a(joined);
}

} // namespace

const std::vector<GroupElem>& Group::generators() const {
    if (generators_cache_.empty()) {
        for (const auto& k : generator_keys()) generators_cache_.push_back({this, k});
    }
    return generators_cache_;
}

GroupElem Group::multiply(const GroupElem& a, const GroupElem& b) const {
    if (a.group != this || b.group != this)
        throw DimensionMismatch("multiply: elements of a different presentation passed to '" +
                                name_ + "'");
    return {this, multiply_keys(a.key, b.key)};
}

GroupElem Group::inverse(const GroupElem& a) const {
    if (a.group != this)
        throw DimensionMismatch("inverse: element of a different presentation passed to '" +
                                name_ + "'");
    return {this, inverse_key(a.key)};
}

std::optional<std::int64_t> IntegerGroup::closed_form_distance(const GroupElem& g) const {
    return std::llabs(std::stoll(g.key));
}

std::string IntegerGroup::multiply_keys(const std::string& a, const std::string& b) const {
    return std::to_string(std::stoll(a) + std::stoll(b));
}

std::string IntegerGroup::inverse_key(const std::string& a) const {
    return std::to_string(-std::stoll(a));
}

CyclicGroup::CyclicGroup(int modulus) : Group("Z" + std::to_string(modulus)), modulus_(modulus) {
    if (modulus < 2) throw std::invalid_argument("CyclicGroup: modulus must be at least 2");
}

GroupElem CyclicGroup::make(int k) const {
    return {this, std::to_string(((k % modulus_) + modulus_) % modulus_)};
}

std::optional<std::int64_t> CyclicGroup::closed_form_distance(const GroupElem& g) const {
    const int v = std::stoi(g.key);
    return std::min(v, modulus_ - v);
}

std::vector<std::string> CyclicGroup::generator_keys() const {
    if (modulus_ == 2) return {"1"};
    return {"1", std::to_string(modulus_ - 1)};
}

std::string CyclicGroup::multiply_keys(const std::string& a, const std::string& b) const {
    return std::to_string((std::stoi(a) + std::stoi(b)) % modulus_);
}

std::string CyclicGroup::inverse_key(const std::string& a) const {
    return std::to_string((modulus_ - std::stoi(a)) % modulus_);
}

WreathGroup::WreathGroup(int lamp_modulus, std::shared_ptr<const Group> base)
    : Group("Z" + std::to_string(lamp_modulus) + "wr" + base->name()),
      lamp_modulus_(lamp_modulus),
      base_(std::move(base)) {
    if (lamp_modulus_ < 2 || lamp_modulus_ > 6)
        throw std::invalid_argument("WreathGroup: lamp modulus must be in 2..6");
}

std::string WreathGroup::encode(const std::map<std::string, int>& lamps,
                                const std::string& cursor) const {
    std::string key = cursor + "|";
    bool first = true;
    for (const auto& [pos, val] : lamps) {
        if (val % lamp_modulus_ == 0) continue;
        if (!first) key += ",";
        first = false;
        key += pos + ":" + std::to_string(((val % lamp_modulus_) + lamp_modulus_) % lamp_modulus_);
    }
    return key;
}

void WreathGroup::decode(const std::string& key, std::map<std::string, int>& lamps,
                         std::string& cursor) const {
    const auto bar = key.find('|');
    cursor = key.substr(0, bar);
    lamps.clear();
    std::size_t i = bar + 1;
    while (i < key.size()) {
        auto comma = key.find(',', i);
        if (comma == std::string::npos) comma = key.size();
        const auto colon = key.rfind(':', comma);
        lamps[key.substr(i, colon - i)] = std::stoi(key.substr(colon + 1, comma - colon - 1));
        i = comma + 1;
    }
}

GroupElem WreathGroup::make(const std::map<std::string, int>& lamps,
                            const GroupElem& cursor) const {
    std::map<std::string, int> normalized;
    for (const auto& [pos, val] : lamps) {
        const int v = ((val % lamp_modulus_) + lamp_modulus_) % lamp_modulus_;
        if (v) normalized[pos] = v;
    }
    return {this, encode(normalized, cursor.key)};
}

std::map<std::string, int> WreathGroup::lamps(const GroupElem& g) const {
    std::map<std::string, int> l;
    std::string c;
    decode(g.key, l, c);
    return l;
}

GroupElem WreathGroup::cursor(const GroupElem& g) const {
    std::map<std::string, int> l;
    std::string c;
    decode(g.key, l, c);
    return {base_.get(), c};
}

std::optional<std::int64_t> WreathGroup::closed_form_distance(const GroupElem& g) const {
    if (base_->name() != "Z") return std::nullopt;
    std::map<std::string, int> l;
    std::string c;
    decode(g.key, l, c);
    std::map<std::int64_t, int> weights;
    for (const auto& [pos, val] : l)
        weights[std::stoll(pos)] = std::min(val, lamp_modulus_ - val);
    return lamplighter_distance(weights, std::stoll(c));
}

std::string WreathGroup::identity_key() const { return encode({}, base_->identity().key); }

std::vector<std::string> WreathGroup::generator_keys() const {
    const std::string e = base_->identity().key;
    std::vector<std::string> keys;
    keys.push_back(encode({{e, 1}}, e));
    if (lamp_modulus_ > 2) keys.push_back(encode({{e, lamp_modulus_ - 1}}, e));
    for (const auto& s : base_->generators()) keys.push_back(encode({}, s.key));
    return keys;
}

std::string WreathGroup::multiply_keys(const std::string& a, const std::string& b) const {
    std::map<std::string, int> f1, f2;
    std::string h1, h2;
    decode(a, f1, h1);
    decode(b, f2, h2);
    // (f1,h1)(f2,h2) = (x -> f1(x h2^-1) + f2(x), h1 h2): the f1 entry at
    // position p lands at p*h2.
    std::map<std::string, int> result;
    for (const auto& [pos, val] : f1) {
        const std::string shifted =
            base_->multiply({base_.get(), pos}, {base_.get(), h2}).key;
        result[shifted] = (result[shifted] + val) % lamp_modulus_;
    }
    for (const auto& [pos, val] : f2) result[pos] = (result[pos] + val) % lamp_modulus_;
    const std::string cursor =
        base_->multiply({base_.get(), h1}, {base_.get(), h2}).key;
    return encode(result, cursor);
}

std::string WreathGroup::inverse_key(const std::string& a) const {
    std::map<std::string, int> f;
    std::string h;
    decode(a, f, h);
    // (f,h)^-1 = (x -> -f(x h), h^-1)
    const std::string hinv = base_->inverse({base_.get(), h}).key;
    std::map<std::string, int> result;
    for (const auto& [pos, val] : f) {
        const std::string shifted =
            base_->multiply({base_.get(), pos}, {base_.get(), hinv}).key;
        result[shifted] = (lamp_modulus_ - val) % lamp_modulus_;
    }
    return encode(result, hinv);
}

LampQuotientGroup::LampQuotientGroup(std::shared_ptr<const Group> base,
                                     std::vector<GroupElem> base_elements, GF2Subspace v)
    : Group("(Z2^" + base->name() + "/V" + std::to_string(v.dim()) + ")x" + base->name()),
      base_(std::move(base)),
      base_elements_(std::move(base_elements)),
      v_(std::move(v)) {
    std::vector<std::string> labels;
    labels.reserve(base_elements_.size());
    for (std::size_t i = 0; i < base_elements_.size(); ++i) {
        labels.push_back(base_elements_[i].key);
        index_[base_elements_[i].key] = i;
    }
    universe_ = std::make_shared<Universe>(labels);
    if (!v_.universe()->same_as(*universe_))
        throw DimensionMismatch("LampQuotientGroup: subspace universe must list the base elements");

    for (const auto& h : base_elements_) {
        const GroupElem hinv = base_->inverse(h);
        std::vector<std::size_t> perm(base_elements_.size());
        for (std::size_t i = 0; i < base_elements_.size(); ++i)
            perm[i] = index_of(base_->multiply(base_elements_[i], hinv).key);
        translate_[h.key] = std::move(perm);
    }
    // the quotient action is defined only for translation-invariant V
    for (const auto& h : base_elements_) {
        const auto& perm = translate_.at(h.key);
        for (const auto& row : v_.basis()) {
            GF2Vec shifted(universe_);
            for (std::size_t i = 0; i < perm.size(); ++i) shifted.set(i, row.get(perm[i]));
            if (!v_.contains(shifted))
                throw std::invalid_argument(
                    "LampQuotientGroup: subspace is not translation-invariant (shift by " +
                    h.key + ")");
        }
    }
}

std::size_t LampQuotientGroup::index_of(const std::string& base_key) const {
    const auto it = index_.find(base_key);
    if (it == index_.end())
        throw std::invalid_argument("LampQuotientGroup: base element '" + base_key +
                                    "' missing from the element list");
    return it->second;
}

GF2Vec LampQuotientGroup::canonical(const GF2Vec& lamps) const {
    return coset_min_rep(v_, lamps);
}

GroupElem LampQuotientGroup::make(const GF2Vec& lamps, const GroupElem& cursor) const {
    return {this, canonical(lamps).bits() + "|" + cursor.key};
}

GF2Vec LampQuotientGroup::lamps(const GroupElem& g) const {
    const auto bar = g.key.find('|');
    return GF2Vec::from_bits(universe_, g.key.substr(0, bar));
}

GroupElem LampQuotientGroup::cursor(const GroupElem& g) const {
    const auto bar = g.key.find('|');
    return {base_.get(), g.key.substr(bar + 1)};
}

std::string LampQuotientGroup::identity_key() const {
    return GF2Vec(universe_).bits() + "|" + base_->identity().key;
}

std::vector<std::string> LampQuotientGroup::generator_keys() const {
    std::vector<std::string> keys;
    GF2Vec delta(universe_);
    delta.set(index_of(base_->identity().key), true);
    keys.push_back(canonical(delta).bits() + "|" + base_->identity().key);
    for (const auto& s : base_->generators())
        keys.push_back(GF2Vec(universe_).bits() + "|" + s.key);
    return keys;
}

std::string LampQuotientGroup::multiply_keys(const std::string& a, const std::string& b) const {
    const auto bar_a = a.find('|'), bar_b = b.find('|');
    const GF2Vec f1 = GF2Vec::from_bits(universe_, a.substr(0, bar_a));
    const GF2Vec f2 = GF2Vec::from_bits(universe_, b.substr(0, bar_b));
    const std::string h1 = a.substr(bar_a + 1), h2 = b.substr(bar_b + 1);
    const auto& perm = translate_.at(h2);
    GF2Vec shifted(universe_);
    for (std::size_t i = 0; i < perm.size(); ++i) shifted.set(i, f1.get(perm[i]));
    shifted += f2;
    const std::string cursor =
        base_->multiply({base_.get(), h1}, {base_.get(), h2}).key;
    return canonical(shifted).bits() + "|" + cursor;
}

std::string LampQuotientGroup::inverse_key(const std::string& a) const {
    const auto bar = a.find('|');
    const GF2Vec f = GF2Vec::from_bits(universe_, a.substr(0, bar));
    const std::string h = a.substr(bar + 1);
    const std::string hinv = base_->inverse({base_.get(), h}).key;
    const auto& perm = translate_.at(hinv);
    GF2Vec shifted(universe_);
    for (std::size_t i = 0; i < perm.size(); ++i) shifted.set(i, f.get(perm[i]));
    return canonical(shifted).bits() + "|" + hinv;
}

std::optional<std::int64_t> WordBall::distance(const GroupElem& g) const {
    const auto it = dist.find(g.key);
    if (it == dist.end()) return std::nullopt;
    return it->second;
}

std::int64_t WordBall::distance_between(const GroupElem& a, const GroupElem& b) const {
    const GroupElem rel = group->multiply(group->inverse(a), b);
    const auto d = distance(rel);
    if (!d)
        throw CapacityError("word ball of radius " + std::to_string(radius) +
                            " does not cover the requested pair");
    return *d;
}

WordBall word_ball(const Group& g, std::int64_t radius, std::uint64_t element_budget) {
    WordBall ball;
    ball.group = &g;
    const auto& gens = g.generators();
    const std::string e = g.identity().key;
    ball.dist[e] = 0;
    ball.order.push_back(e);
    std::size_t head = 0;
    std::int64_t reached = 0;
    bool truncated_by_radius = false;
    while (head < ball.order.size()) {
        const std::string x = ball.order[head++];
        const std::int64_t d = ball.dist[x];
        reached = std::max(reached, d);
        if (d == radius) {
            truncated_by_radius = true;
            continue;
        }
        const GroupElem xe{&g, x};
        for (const auto& s : gens) {
            const GroupElem y = g.multiply(s, xe); // left-multiplication walk
            if (ball.dist.count(y.key)) continue;
            if (ball.order.size() + 1 > element_budget)
                throw CapacityError("word ball: element budget " +
                                    std::to_string(element_budget) +
                                    " exceeded; completed radius " + std::to_string(reached));
            ball.dist[y.key] = d + 1;
            ball.order.push_back(y.key);
        }
    }
    ball.radius = radius;
    ball.complete = !truncated_by_radius;
    return ball;
}

std::int64_t lamplighter_distance(const std::map<std::int64_t, int>& lamp_weights,
                                  std::int64_t target_cursor) {
    std::int64_t total = 0;
    std::int64_t lo = std::min<std::int64_t>(0, target_cursor);
    std::int64_t hi = std::max<std::int64_t>(0, target_cursor);
    for (const auto& [pos, w] : lamp_weights) {
        if (w < 0) throw std::invalid_argument("lamplighter_distance: negative lamp weight");
        if (w == 0) continue;
        total += w;
        lo = std::min(lo, pos);
        hi = std::max(hi, pos);
    }
    const std::int64_t left_first = (0 - lo) + (hi - target_cursor);
    const std::int64_t right_first = (hi - 0) + (target_cursor - lo);
    return total + (hi - lo) + std::min(left_first, right_first);
}

std::int64_t zero_section_distance(const Group& g, const GroupElem& v, const GroupElem& w,
                                   const WordBall* ball, std::uint64_t element_budget) {
    const GroupElem rel = g.multiply(g.inverse(v), w);
    if (const auto cf = g.closed_form_distance(rel)) return *cf;
    if (ball) {
        if (const auto d = ball->distance(rel)) return *d;
    }
    // incremental BFS until the element is found
    const auto& gens = g.generators();
    std::unordered_map<std::string, std::int64_t> dist;
    std::vector<std::string> order;
    dist[g.identity().key] = 0;
    order.push_back(g.identity().key);
    if (rel.key == g.identity().key) return 0;
    std::size_t head = 0;
    while (head < order.size()) {
        const std::string x = order[head++];
        const std::int64_t d = dist[x];
        const GroupElem xe{&g, x};
        for (const auto& s : gens) {
            const GroupElem y = g.multiply(s, xe);
            if (dist.count(y.key)) continue;
            if (y.key == rel.key) return d + 1;
            if (order.size() + 1 > element_budget)
                throw CapacityError("zero_section_distance: BFS budget " +
                                    std::to_string(element_budget) +
                                    " exceeded without closed form");
            dist[y.key] = d + 1;
            order.push_back(y.key);
        }
    }
    throw CapacityError("zero_section_distance: element unreachable (incomplete generating set?)");
}

EquidistantSet equidistant_set(const Group& g, std::int64_t r, std::int64_t M, std::size_t want,
                               std::uint64_t element_budget, const WordBall* cached) {
    if (r <= 0 || M <= 0 || want == 0)
        throw std::invalid_argument("equidistant_set: r, M, want must be positive");
    WordBall local;
    const WordBall* ball = cached;
    if (!ball || ball->radius < 2 * M * r) {
        local = word_ball(g, 2 * M * r, element_budget);
        ball = &local;
    }
    EquidistantSet out;
    out.r = r;
    out.M = M;
    for (const auto& key : ball->order) {
        const std::int64_t d = ball->dist.at(key);
        if (d < r || d > M * r) continue;
        const GroupElem candidate{&g, key};
        bool ok = true;
        for (const auto& p : out.points) {
            if (ball->distance_between(p, candidate) < r) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        out.points.push_back(candidate);
        if (out.points.size() == want) break;
    }
    out.complete = out.points.size() == want;
    return out;
}

PackingProfile annulus_packing_profile(const Group& g, std::int64_t r, std::int64_t M,
                                       std::uint64_t element_budget, const WordBall* cached) {
    WordBall local;
    const WordBall* ball = cached;
    if (!ball || ball->radius < 2 * M * r) {
        local = word_ball(g, 2 * M * r, element_budget);
        ball = &local;
    }
    PackingProfile profile;
    for (const auto& key : ball->order) {
        const std::int64_t d = ball->dist.at(key);
        if (d >= r && d <= M * r) ++profile.annulus_size;
        if (d <= r) ++profile.ball_r_size;
    }
    const auto packing =
        equidistant_set(g, r, M, std::numeric_limits<std::size_t>::max(), element_budget, ball);
    profile.packing_size = packing.points.size();
    profile.growth_constant = std::pow(static_cast<double>(profile.packing_size),
                                       1.0 / static_cast<double>(r));
    return profile;
}

void save_ball(std::ostream& out, const WordBall& ball) {
    out << "wreathlab-ball v=" << kVersion << " name=" << ball.group->name()
        << " gen=" << std::hex << generator_hash(*ball.group) << std::dec
        << " radius=" << ball.radius << " complete=" << (ball.complete ? 1 : 0)
        << " count=" << ball.order.size() << "\n";
    for (const auto& key : ball.order) out << key << " " << ball.dist.at(key) << "\n";
}

std::optional<WordBall> load_ball(std::istream& in, const Group& g, std::int64_t radius) {
    std::string header;
    if (!std::getline(in, header)) return std::nullopt;
    std::ostringstream want;
    want << "wreathlab-ball v=" << kVersion << " name=" << g.name() << " gen=" << std::hex
         << generator_hash(g) << std::dec << " radius=" << radius;
    if (header.rfind(want.str(), 0) != 0) return std::nullopt; // stale or foreign cache
    WordBall ball;
    ball.group = &g;
    ball.radius = radius;
    ball.complete = header.find("complete=1") != std::string::npos;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto space = line.rfind(' ');
        const std::string key = line.substr(0, space);
        ball.dist[key] = std::stoll(line.substr(space + 1));
        ball.order.push_back(key);
    }
    return ball;
}

std::string ball_cache_filename(const Group& g, std::int64_t radius) {
    std::string name;
    for (char c : g.name()) name += (std::isalnum(static_cast<unsigned char>(c)) ? c : '_');
    std::ostringstream s;
    s << name << "_g" << std::hex << generator_hash(g) << std::dec << "_r" << radius << ".ball";
    return s.str();
}

} // namespace wreathlab
