#include "wreathlab/metric.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace wreathlab {

namespace {
constexpr double kMetricTol = 1e-9;
}

FiniteMetricSpace::FiniteMetricSpace(std::vector<std::string> labels,
                                     std::vector<std::vector<double>> dist,
                                     std::optional<double> d_min)
    : labels_(std::move(labels)), dist_(std::move(dist)), d_min_(d_min) {
    const std::size_t n = labels_.size();
    if (dist_.size() != n)
        throw std::invalid_argument("metric space: matrix size does not match label count");
    for (std::size_t i = 0; i < n; ++i) {
        if (dist_[i].size() != n) throw std::invalid_argument("metric space: matrix not square");
        if (std::fabs(dist_[i][i]) > kMetricTol)
            throw std::invalid_argument("metric space: nonzero diagonal at " + labels_[i]);
        dist_[i][i] = 0.0;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::fabs(dist_[i][j] - dist_[j][i]) > kMetricTol)
                throw std::invalid_argument("metric space: asymmetry between " + labels_[i] +
                                            " and " + labels_[j]);
            if (dist_[i][j] < 0)
                throw std::invalid_argument("metric space: negative distance");
            if (d_min_ && dist_[i][j] < *d_min_ - kMetricTol)
                throw std::invalid_argument("metric space: distance below d_min between " +
                                            labels_[i] + " and " + labels_[j]);
        }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                if (dist_[i][j] > dist_[i][k] + dist_[k][j] + kMetricTol)
                    throw std::invalid_argument("metric space: triangle inequality fails at (" +
                                                labels_[i] + "," + labels_[j] + "," + labels_[k] +
                                                ")");
}

double FiniteMetricSpace::diameter() const {
    double d = 0;
    for (const auto& row : dist_)
        for (double v : row) d = std::max(d, v);
    return d;
}

double FiniteMetricSpace::min_positive_distance() const {
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = i + 1; j < size(); ++j)
            if (dist_[i][j] > 0) d = std::min(d, dist_[i][j]);
    return d;
}

FiniteMetricSpace FiniteMetricSpace::rescaled(double factor) const {
    auto m = dist_;
    for (auto& row : m)
        for (double& v : row) v *= factor;
    std::optional<double> dm;
    if (d_min_) dm = *d_min_ * factor;
    return FiniteMetricSpace(labels_, std::move(m), dm);
}

FiniteMetricSpace quotient_metric(const FiniteMetricSpace& space,
                                  const std::vector<std::vector<std::size_t>>& partition) {
    const std::size_t n = space.size();
    std::vector<int> block_of(n, -1);
    for (std::size_t b = 0; b < partition.size(); ++b) {
        if (partition[b].empty()) throw std::invalid_argument("quotient_metric: empty block");
        for (auto i : partition[b]) {
            if (i >= n || block_of[i] != -1)
                throw std::invalid_argument("quotient_metric: partition is not a partition");
            block_of[i] = static_cast<int>(b);
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        if (block_of[i] == -1)
            throw std::invalid_argument("quotient_metric: point " + space.label(i) +
                                        " not covered");

    const std::size_t m = partition.size();
    std::vector<std::vector<double>> q(m, std::vector<double>(m, 0.0));
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) {
            if (a == b) continue;
            double blockmin = std::numeric_limits<double>::infinity();
            for (auto x : partition[a])
                for (auto y : partition[b]) blockmin = std::min(blockmin, space.dist(x, y));
            // realizability: the block minimum is attained from every start
            for (auto x : partition[a]) {
                double from_x = std::numeric_limits<double>::infinity();
                for (auto y : partition[b]) from_x = std::min(from_x, space.dist(x, y));
                if (from_x > blockmin + 1e-9)
                    throw std::invalid_argument(
                        "quotient_metric: partition not metric-compatible: block pair (" +
                        std::to_string(a) + "," + std::to_string(b) + ") not realized from point " +
                        space.label(x));
            }
            q[a][b] = blockmin;
        }
    }

    std::vector<std::string> labels;
    labels.reserve(m);
    for (std::size_t b = 0; b < m; ++b) {
        std::string name = "[" + space.label(partition[b][0]);
        if (partition[b].size() > 1) name += "+" + std::to_string(partition[b].size() - 1);
        name += "]";
        labels.push_back(std::move(name));
    }
    return FiniteMetricSpace(std::move(labels), std::move(q));
}

void save_metric_space(std::ostream& out, const FiniteMetricSpace& space) {
    out << "n=" << space.size() << "\n";
    for (std::size_t i = 0; i < space.size(); ++i) {
        out << space.label(i);
        for (std::size_t j = 0; j < space.size(); ++j) out << " " << space.dist(i, j);
        out << "\n";
    }
}

FiniteMetricSpace load_metric_space(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("n=", 0) != 0)
        throw std::invalid_argument("metric file: expected header line n=<points> (line 1)");
    std::size_t n = 0;
    {
        std::istringstream hs(line.substr(2));
        if (!(hs >> n)) throw std::invalid_argument("metric file: bad point count (line 1)");
    }
    std::vector<std::string> labels;
    std::vector<std::vector<double>> rows;
    std::size_t lineno = 1;
    while (rows.size() < n && std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string label;
        ls >> label;
        std::vector<double> row;
        double v;
        while (ls >> v) row.push_back(v);
        if (row.size() != n)
            throw std::invalid_argument("metric file: row with " + std::to_string(row.size()) +
                                        " entries, expected " + std::to_string(n) + " (line " +
                                        std::to_string(lineno) + ")");
        labels.push_back(label);
        rows.push_back(std::move(row));
    }
    if (rows.size() != n)
        throw std::invalid_argument("metric file: expected " + std::to_string(n) + " rows, got " +
                                    std::to_string(rows.size()));
    return FiniteMetricSpace(std::move(labels), std::move(rows));
}

} // namespace wreathlab
