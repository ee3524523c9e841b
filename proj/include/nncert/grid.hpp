#ifndef NNCERT_GRID_HPP
#define NNCERT_GRID_HPP

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <vector>

#include "nncert/tensor.hpp"

namespace nncert {

using Vec3 = std::array<double, 3>;

enum class BoundaryKind { Periodic, NoSlip };

/// Uniform structured grid of cell-centered values, dim in {1,2,3}.
struct Grid {
  int dim = 1;
  std::array<int, 3> n{4, 1, 1};
  std::array<double, 3> h{0.25, 1.0, 1.0};
  BoundaryKind bc = BoundaryKind::Periodic;

  static Grid unit(int dim, int cells_per_axis, BoundaryKind bc = BoundaryKind::Periodic);

  std::size_t cells() const {
    std::size_t c = 1;
    for (int d = 0; d < dim; ++d) c *= static_cast<std::size_t>(n[d]);
    return c;
  }
  double cell_measure() const {
    double m = 1.0;
    for (int d = 0; d < dim; ++d) m *= h[d];
    return m;
  }
  double measure() const { return cell_measure() * static_cast<double>(cells()); }

  std::array<int, 3> unflatten(std::size_t c) const;
  std::size_t flatten(const std::array<int, 3>& idx) const;
  Vec3 center(std::size_t c) const;

  bool operator==(const Grid&) const = default;
};

struct ScalarField {
  Grid grid;
  std::vector<double> v;

  static ScalarField zeros(const Grid& g) { return {g, std::vector<double>(g.cells(), 0.0)}; }
  static ScalarField constant(const Grid& g, double c) { return {g, std::vector<double>(g.cells(), c)}; }
};

struct VectorField {
  Grid grid;
  std::array<std::vector<double>, 3> comp;  // comp[d] valid for d < grid.dim

  static VectorField zeros(const Grid& g);
};

struct TensorField {
  Grid grid;
  std::array<std::array<std::vector<double>, 3>, 3> comp;  // comp[i][j], i,j < grid.dim
  bool symmetric = false;

  static TensorField zeros(const Grid& g);
  Tensor3 at(std::size_t c) const;
};

using ScalarFn = std::function<double(const Vec3&, double)>;
using VectorFn = std::function<Vec3(const Vec3&, double)>;

ScalarField discretize(const ScalarFn& f, const Grid& g, double t = 0.0);
VectorField discretize(const VectorFn& f, const Grid& g, double t = 0.0);

VectorField grad_scalar(const ScalarField& rho);
ScalarField div_vector(const VectorField& u);
VectorField div_tensor(const TensorField& s);

/// Full gradient, (i,j) entry = d u_i / d x_j.
TensorField grad_vector(const VectorField& u);
TensorField sym_grad(const VectorField& u);

double integrate(const ScalarField& f);
double inner(const TensorField& a, const TensorField& b);

/// Max over random smooth trial pairs of the normalized defect of the discrete
/// integration-by-parts identity between sym_grad and div_tensor.
double sbp_residual(const Grid& g, int trials, std::uint64_t seed);

/// Random band-limited trial fields used by sbp_residual and the test suites.
/// For no-slip grids the field is damped to zero on the two cell layers next
/// to each wall.
VectorField random_smooth_vector(const Grid& g, std::uint64_t seed, int modes = 3);
ScalarField random_smooth_scalar(const Grid& g, std::uint64_t seed, int modes = 3);

void write_field_csv(const std::filesystem::path& path, const ScalarField& f);
ScalarField read_field_csv(const std::filesystem::path& path, const Grid& g);

}  // namespace nncert

#endif
