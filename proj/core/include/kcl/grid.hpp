#pragma once

#include <cassert>
#include <cstddef>
#include <string_view>
#include <vector>

namespace kcl {

enum class Axis { Xi1 = 0, Xi2 = 1 };

enum class BoundaryKind { Periodic, Extrapolation };

std::string_view to_string(BoundaryKind kind);
BoundaryKind boundary_from_string(std::string_view text);

/// Uniform lattice in ray coordinates (xi1, xi2). Cell (i, j) has its centre
/// at (xi1_min + (i + 1/2) h1, xi2_min + (j + 1/2) h2); staggered node (I, J)
/// sits at (xi1_min + I h1, xi2_min + J h2), so node (i + 1, j + 1) is the
/// upper-right corner of cell (i, j).
struct GridSpec {
  int n1 = 64;
  int n2 = 64;
  double xi1_min = 0.0;
  double xi1_max = 1.0;
  double xi2_min = 0.0;
  double xi2_max = 1.0;
  BoundaryKind bc_xi1 = BoundaryKind::Extrapolation;
  BoundaryKind bc_xi2 = BoundaryKind::Extrapolation;
  int ghost = 2;

  double h1() const { return (xi1_max - xi1_min) / n1; }
  double h2() const { return (xi2_max - xi2_min) / n2; }
  double spacing(Axis a) const { return a == Axis::Xi1 ? h1() : h2(); }
  int cells(Axis a) const { return a == Axis::Xi1 ? n1 : n2; }
  BoundaryKind boundary(Axis a) const { return a == Axis::Xi1 ? bc_xi1 : bc_xi2; }

  double xi1_center(int i) const { return xi1_min + (i + 0.5) * h1(); }
  double xi2_center(int j) const { return xi2_min + (j + 0.5) * h2(); }
  double xi1_node(int i) const { return xi1_min + i * h1(); }
  double xi2_node(int j) const { return xi2_min + j * h2(); }

  /// Throws SolverError(BadParameter) when the lattice is unusable.
  void validate() const;
};

/// Cell-centred array over the interior plus `ghost` layers on every side.
/// Indices run over [-ghost, n + ghost) in each direction, xi1 fastest.
template <typename T>
class CellArray {
 public:
  CellArray() = default;
  CellArray(int n1, int n2, int ghost, const T& init = T{})
      : n1_(n1), n2_(n2), g_(ghost), stride_(n1 + 2 * ghost),
        data_(static_cast<std::size_t>((n1 + 2 * ghost) * (n2 + 2 * ghost)), init) {}
  explicit CellArray(const GridSpec& grid, const T& init = T{})
      : CellArray(grid.n1, grid.n2, grid.ghost, init) {}

  T& operator()(int i, int j) { return data_[index(i, j)]; }
  const T& operator()(int i, int j) const { return data_[index(i, j)]; }

  int n1() const { return n1_; }
  int n2() const { return n2_; }
  int ghost() const { return g_; }

  std::vector<T>& raw() { return data_; }
  const std::vector<T>& raw() const { return data_; }

 private:
  std::size_t index(int i, int j) const {
    assert(i >= -g_ && i < n1_ + g_ && j >= -g_ && j < n2_ + g_);
    return static_cast<std::size_t>((j + g_) * stride_ + (i + g_));
  }

  int n1_ = 0;
  int n2_ = 0;
  int g_ = 0;
  int stride_ = 0;
  std::vector<T> data_;
};

/// Array on staggered nodes (I, J), I in [0, n1], J in [0, n2].
template <typename T>
class NodeArray {
 public:
  NodeArray() = default;
  NodeArray(int n1, int n2, const T& init = T{})
      : n1_(n1), n2_(n2), data_(static_cast<std::size_t>((n1 + 1) * (n2 + 1)), init) {}
  explicit NodeArray(const GridSpec& grid, const T& init = T{}) : NodeArray(grid.n1, grid.n2, init) {}

  T& operator()(int i, int j) { return data_[index(i, j)]; }
  const T& operator()(int i, int j) const { return data_[index(i, j)]; }

  int n1() const { return n1_; }
  int n2() const { return n2_; }

  std::vector<T>& raw() { return data_; }
  const std::vector<T>& raw() const { return data_; }

 private:
  std::size_t index(int i, int j) const {
    assert(i >= 0 && i <= n1_ && j >= 0 && j <= n2_);
    return static_cast<std::size_t>(j * (n1_ + 1) + i);
  }

  int n1_ = 0;
  int n2_ = 0;
  std::vector<T> data_;
};

}  // namespace kcl
