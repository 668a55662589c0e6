#include "mmdual/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mmdual {

Grid Grid::make(int dim, std::vector<std::size_t> shape,
                std::vector<double> spacing, std::vector<std::size_t> omega_lo,
                std::vector<std::size_t> omega_hi, double extension_factor) {
  if (dim < 1 || dim > 3)
    throw std::invalid_argument("grid: dim must be 1, 2 or 3");
  const auto d = static_cast<std::size_t>(dim);
  if (shape.size() != d || spacing.size() != d || omega_lo.size() != d ||
      omega_hi.size() != d)
    throw std::invalid_argument("grid: per-axis lists must have dim entries");
  if (!(extension_factor >= 1.0))
    throw std::invalid_argument("grid: extension_factor must be >= 1");

  Grid g;
  g.dim_ = dim;
  g.extension_factor_ = extension_factor;
  for (std::size_t a = 0; a < d; ++a) {
    if (shape[a] == 0)
      throw std::invalid_argument("grid: axis " + std::to_string(a) +
                                  " has no cells");
    if (!(spacing[a] > 0.0) || !std::isfinite(spacing[a]))
      throw std::invalid_argument("grid: spacing must be positive and finite");
    if (omega_lo[a] >= omega_hi[a])
      throw std::invalid_argument("grid: empty Omega along axis " +
                                  std::to_string(a));
    if (omega_hi[a] > shape[a])
      throw std::invalid_argument("grid: Omega exceeds the box along axis " +
                                  std::to_string(a));
    g.shape_[a] = shape[a];
    g.spacing_[a] = spacing[a];
    g.omega_lo_[a] = omega_lo[a];
    g.omega_hi_[a] = omega_hi[a];
  }
  g.finalize();
  return g;
}

Grid Grid::centered(int dim, std::vector<std::size_t> omega_shape,
                    std::vector<double> spacing, double extension_factor) {
  if (!(extension_factor >= 1.0))
    throw std::invalid_argument("grid: extension_factor must be >= 1");
  std::vector<std::size_t> shape, lo, hi;
  for (std::size_t n : omega_shape) {
    if (n == 0) throw std::invalid_argument("grid: empty Omega");
    const auto ext = static_cast<std::size_t>(
        std::ceil(extension_factor * static_cast<double>(n) - 1e-12));
    const std::size_t box = std::max(n, ext);
    const std::size_t off = (box - n) / 2;
    shape.push_back(box);
    lo.push_back(off);
    hi.push_back(off + n);
  }
  return make(dim, shape, std::move(spacing), lo, hi, extension_factor);
}

void Grid::finalize() {
  box_cells_ = shape_[0] * shape_[1] * shape_[2];
  box_stride_ = {shape_[1] * shape_[2], shape_[2], 1};
  const Index3 os = omega_shape();
  omega_stride_ = {os[1] * os[2], os[2], 1};
  volume_ = 1.0;
  for (int a = 0; a < dim_; ++a) volume_ *= spacing_[a];

  box_to_omega_.assign(box_cells_, -1);
  mask_.assign(box_cells_, 0);
  omega_to_box_.clear();
  for (std::size_t i = omega_lo_[0]; i < omega_hi_[0]; ++i)
    for (std::size_t j = omega_lo_[1]; j < omega_hi_[1]; ++j)
      for (std::size_t k = omega_lo_[2]; k < omega_hi_[2]; ++k) {
        const std::size_t b = box_index({i, j, k});
        box_to_omega_[b] = static_cast<std::int64_t>(omega_to_box_.size());
        mask_[b] = 1;
        omega_to_box_.push_back(b);
      }

  faces_.clear();
  for (std::size_t o = 0; o < omega_to_box_.size(); ++o)
    for (int a = 0; a < dim_; ++a) {
      const std::size_t c = omega_coord(o, a);
      if (c == 0) faces_.push_back({o, a, -1});
      if (c + 1 == os[a]) faces_.push_back({o, a, +1});
    }
}

Index3 Grid::omega_shape() const {
  return {omega_hi_[0] - omega_lo_[0], omega_hi_[1] - omega_lo_[1],
          omega_hi_[2] - omega_lo_[2]};
}

Index3 Grid::box_coords(std::size_t idx) const {
  return {box_coord(idx, 0), box_coord(idx, 1), box_coord(idx, 2)};
}

std::array<double, 3> Grid::cell_center(std::size_t box_idx) const {
  const Index3 c = box_coords(box_idx);
  std::array<double, 3> x{0.0, 0.0, 0.0};
  for (int a = 0; a < dim_; ++a)
    x[a] = (static_cast<double>(c[a]) + 0.5) * spacing_[a];
  return x;
}

bool Grid::operator==(const Grid& o) const {
  return dim_ == o.dim_ && shape_ == o.shape_ && spacing_ == o.spacing_ &&
         omega_lo_ == o.omega_lo_ && omega_hi_ == o.omega_hi_;
}

}  // namespace mmdual
