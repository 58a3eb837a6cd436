#include "wmdim/metric_space.hpp"

#include <algorithm>
#include <stdexcept>

namespace wmdim {

Eigen::Index MetricSpace::index_of(const std::string& label) const {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end())
    throw std::invalid_argument("point '" + label + "' is not in the space");
  return static_cast<Eigen::Index>(it - labels.begin());
}

MetricSpace make_metric_space(std::vector<std::string> labels, RMat dist) {
  const auto n = static_cast<Eigen::Index>(labels.size());
  if (dist.rows() != n || dist.cols() != n)
    throw std::invalid_argument("distance table shape does not match point count");
  Rational diameter(0);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (dist(i, i) != 0)
      throw std::invalid_argument("nonzero self-distance at '" + labels[i] + "'");
    for (Eigen::Index j = 0; j < n; ++j) {
      if (dist(i, j) < 0)
        throw std::invalid_argument("negative distance between '" + labels[i] +
                                    "' and '" + labels[j] + "'");
      if (dist(i, j) != dist(j, i))
        throw std::invalid_argument("asymmetric distance between '" + labels[i] +
                                    "' and '" + labels[j] + "'");
      diameter = std::max(diameter, dist(i, j));
    }
  }
  return MetricSpace{std::move(labels), std::move(dist), diameter};
}

void check_triangle_inequality(const MetricSpace& space) {
  const auto n = space.size();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index k = 0; k < n; ++k)
        if (space.dist(i, j) > space.dist(i, k) + space.dist(k, j))
          throw std::logic_error("triangle inequality fails for (" +
                                 space.labels[i] + ", " + space.labels[j] +
                                 ", " + space.labels[k] + ")");
}

}  // namespace wmdim
