#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace mmdual {

using Index3 = std::array<std::size_t, 3>;

/// One face of the body's boundary: the cell it belongs to (body-local
/// index), the axis it is normal to, and the sign of the outward normal.
struct BoundaryFace {
  std::size_t omega_cell;
  int axis;
  int side;  // -1 or +1
};

/// Rectangular lattice covering the computational box, with the body Omega
/// as a sub-box. Cells are ordered row-major with axis 0 slowest. Axes past
/// `dim` have one cell and play no role in the difference stencils.
class Grid {
 public:
  /// shape: box cells per axis; omega_lo/omega_hi: half-open cell range of
  /// the body along each axis. Throws std::invalid_argument on bad input.
  static Grid make(int dim, std::vector<std::size_t> shape,
                   std::vector<double> spacing,
                   std::vector<std::size_t> omega_lo,
                   std::vector<std::size_t> omega_hi,
                   double extension_factor = 2.0);

  /// Body of `omega_shape` cells centred in a box of
  /// max(omega, ceil(extension_factor * omega)) cells per axis.
  static Grid centered(int dim, std::vector<std::size_t> omega_shape,
                       std::vector<double> spacing,
                       double extension_factor = 2.0);

  int dim() const { return dim_; }
  const Index3& shape() const { return shape_; }
  const std::array<double, 3>& spacing() const { return spacing_; }
  const Index3& omega_lo() const { return omega_lo_; }
  const Index3& omega_hi() const { return omega_hi_; }
  Index3 omega_shape() const;
  double extension_factor() const { return extension_factor_; }
  double cell_volume() const { return volume_; }

  std::size_t box_cells() const { return box_cells_; }
  std::size_t omega_cells() const { return omega_to_box_.size(); }

  std::size_t box_index(const Index3& ijk) const {
    return (ijk[0] * shape_[1] + ijk[1]) * shape_[2] + ijk[2];
  }
  Index3 box_coords(std::size_t idx) const;
  std::array<double, 3> cell_center(std::size_t box_idx) const;

  /// Stride of one step along `axis` in box ordering.
  std::size_t box_stride(int axis) const { return box_stride_[axis]; }
  std::size_t omega_stride(int axis) const { return omega_stride_[axis]; }

  std::size_t omega_to_box(std::size_t o) const { return omega_to_box_[o]; }
  /// -1 when the box cell lies outside Omega.
  std::int64_t box_to_omega(std::size_t b) const { return box_to_omega_[b]; }
  bool in_omega(std::size_t b) const { return box_to_omega_[b] >= 0; }
  const std::vector<std::uint8_t>& omega_mask() const { return mask_; }

  /// Coordinate of a box cell along an axis.
  std::size_t box_coord(std::size_t b, int axis) const {
    return (b / box_stride_[axis]) % shape_[axis];
  }
  /// Coordinate of a body cell along an axis, relative to omega_lo.
  std::size_t omega_coord(std::size_t o, int axis) const {
    return (o / omega_stride_[axis]) % (omega_hi_[axis] - omega_lo_[axis]);
  }

  const std::vector<BoundaryFace>& boundary_faces() const { return faces_; }

  bool operator==(const Grid& other) const;

 private:
  Grid() = default;
  void finalize();

  int dim_ = 1;
  Index3 shape_{1, 1, 1};
  std::array<double, 3> spacing_{1.0, 1.0, 1.0};
  Index3 omega_lo_{0, 0, 0};
  Index3 omega_hi_{1, 1, 1};
  double extension_factor_ = 1.0;
  double volume_ = 1.0;
  std::size_t box_cells_ = 1;
  Index3 box_stride_{1, 1, 1};
  Index3 omega_stride_{1, 1, 1};
  std::vector<std::size_t> omega_to_box_;
  std::vector<std::int64_t> box_to_omega_;
  std::vector<std::uint8_t> mask_;
  std::vector<BoundaryFace> faces_;
};

}  // namespace mmdual
