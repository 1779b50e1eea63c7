#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wreathlab/common.hpp"

namespace wreathlab {

/// Labeled point list with a symmetric distance matrix.  Construction
/// checks zero diagonal, symmetry, the triangle inequality and, when a
/// discreteness floor is supplied, that off-diagonal entries respect it.
class FiniteMetricSpace {
  public:
    FiniteMetricSpace(std::vector<std::string> labels, std::vector<std::vector<double>> dist,
                      std::optional<double> d_min = std::nullopt);

    std::size_t size() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(std::size_t i) const { return labels_[i]; }
    double dist(std::size_t i, std::size_t j) const { return dist_[i][j]; }
    const std::vector<std::vector<double>>& matrix() const { return dist_; }
    std::optional<double> d_min() const { return d_min_; }

    double diameter() const;
    double min_positive_distance() const;

    FiniteMetricSpace rescaled(double factor) const;

  private:
    std::vector<std::string> labels_;
    std::vector<std::vector<double>> dist_;
    std::optional<double> d_min_;
};

/// Quotient by a partition.  Requires the realizability condition: for
/// all blocks P,Q and every x in P, min_{y in Q} d(x,y) equals the
/// block-to-block minimum.  Violations name the offending (P,Q,x).
FiniteMetricSpace quotient_metric(const FiniteMetricSpace& space,
                                  const std::vector<std::vector<std::size_t>>& partition);

/// Text format: first line "n=<points>", then one label + row per point.
void save_metric_space(std::ostream& out, const FiniteMetricSpace& space);
FiniteMetricSpace load_metric_space(std::istream& in);

} // namespace wreathlab
