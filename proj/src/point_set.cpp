#include "discrepancy/point_set.hpp"

#include <cmath>
#include <string>

#include "discrepancy/error.hpp"

namespace disc {

PointSet::PointSet(std::size_t dim, std::vector<double> coords) : dim_(dim), coords_(std::move(coords)) {
  if (dim_ == 0) throw InvalidArgument("point set dimension must be positive");
  if (coords_.empty()) throw InvalidArgument("point set must contain at least one point");
  if (coords_.size() % dim_ != 0) throw InvalidArgument("coordinate count is not a multiple of the dimension");
  for (std::size_t k = 0; k < coords_.size(); ++k) {
    const double c = coords_[k];
    if (!(c >= 0.0 && c < 1.0)) {
      throw InvalidArgument("coordinate " + std::to_string(k % dim_) + " of point " + std::to_string(k / dim_) +
                            " is outside [0,1)");
    }
  }
}

PointSet PointSet::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw InvalidArgument("point set must contain at least one point");
  const std::size_t d = rows.front().size();
  std::vector<double> coords;
  coords.reserve(rows.size() * d);
  for (const auto& row : rows) {
    if (row.size() != d) throw DimensionMismatch(d, row.size());
    coords.insert(coords.end(), row.begin(), row.end());
  }
  return PointSet(d, std::move(coords));
}

PointSet PointSet::project(std::span<const std::size_t> dims) const {
  std::vector<double> out;
  out.reserve(size() * dims.size());
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j : dims) {
      if (j >= dim_) throw InvalidArgument("projection coordinate out of range");
      out.push_back((*this)(i, j));
    }
  }
  return PointSet(dims.size(), std::move(out));
}

PointSet PointSet::prefix(std::size_t count) const {
  if (count == 0 || count > size()) throw InvalidArgument("prefix length out of range");
  return PointSet(dim_, std::vector<double>(coords_.begin(), coords_.begin() + static_cast<std::ptrdiff_t>(count * dim_)));
}

WeightedPointSet::WeightedPointSet(std::size_t dim, std::vector<double> coords, std::vector<double> weights)
    : dim_(dim), coords_(std::move(coords)), weights_(std::move(weights)) {
  if (dim_ == 0) throw InvalidArgument("point set dimension must be positive");
  if (coords_.size() != weights_.size() * dim_) throw InvalidArgument("weights and coordinates disagree in length");
  for (double c : coords_) {
    if (!(c >= 0.0 && c < 1.0)) throw InvalidArgument("weighted point coordinate outside [0,1)");
  }
  for (double w : weights_) {
    if (!std::isfinite(w)) throw InvalidArgument("weights must be finite");
  }
}

WeightedPointSet WeightedPointSet::uniform(const PointSet& points) {
  const std::size_t n = points.size();
  return WeightedPointSet(points.dim(), std::vector<double>(points.coords().begin(), points.coords().end()),
                          std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Corner::Corner(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw InvalidArgument("corner must have positive dimension");
  for (double v : values_) {
    if (!(v >= 0.0 && v <= 1.0)) throw InvalidArgument("corner coordinate outside [0,1]");
  }
}

const char* to_string(BoxKind kind) { return kind == BoxKind::open ? "open" : "closed"; }

}  // namespace disc
