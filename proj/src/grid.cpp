#include "nncert/grid.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace nncert {

Grid Grid::unit(int dim, int cells_per_axis, BoundaryKind bc) {
  if (dim < 1 || dim > 3) throw std::invalid_argument("grid dim must be 1, 2 or 3");
  if (cells_per_axis < 4) throw std::invalid_argument("grid needs at least 4 cells per axis");
  Grid g;
  g.dim = dim;
  g.bc = bc;
  for (int d = 0; d < 3; ++d) {
    g.n[d] = d < dim ? cells_per_axis : 1;
    g.h[d] = d < dim ? 1.0 / cells_per_axis : 1.0;
  }
  return g;
}

std::array<int, 3> Grid::unflatten(std::size_t c) const {
  std::array<int, 3> idx{0, 0, 0};
  auto rem = c;
  idx[0] = static_cast<int>(rem % static_cast<std::size_t>(n[0]));
  rem /= static_cast<std::size_t>(n[0]);
  idx[1] = static_cast<int>(rem % static_cast<std::size_t>(n[1]));
  rem /= static_cast<std::size_t>(n[1]);
  idx[2] = static_cast<int>(rem);
  return idx;
}

std::size_t Grid::flatten(const std::array<int, 3>& idx) const {
  return (static_cast<std::size_t>(idx[2]) * n[1] + idx[1]) * n[0] + idx[0];
}

Vec3 Grid::center(std::size_t c) const {
  auto idx = unflatten(c);
  Vec3 x{0.0, 0.0, 0.0};
  for (int d = 0; d < dim; ++d) x[d] = (idx[d] + 0.5) * h[d];
  return x;
}

VectorField VectorField::zeros(const Grid& g) {
  VectorField f;
  f.grid = g;
  for (int d = 0; d < g.dim; ++d) f.comp[d].assign(g.cells(), 0.0);
  return f;
}

TensorField TensorField::zeros(const Grid& g) {
  TensorField f;
  f.grid = g;
  for (int i = 0; i < g.dim; ++i)
    for (int j = 0; j < g.dim; ++j) f.comp[i][j].assign(g.cells(), 0.0);
  return f;
}

Tensor3 TensorField::at(std::size_t c) const {
  Tensor3 t;
  for (int i = 0; i < grid.dim; ++i)
    for (int j = 0; j < grid.dim; ++j) t(i, j) = comp[i][j][c];
  t.symmetric = symmetric;
  return t;
}

ScalarField discretize(const ScalarFn& f, const Grid& g, double t) {
  ScalarField out = ScalarField::zeros(g);
  for (std::size_t c = 0; c < g.cells(); ++c) out.v[c] = f(g.center(c), t);
  return out;
}

VectorField discretize(const VectorFn& f, const Grid& g, double t) {
  VectorField out = VectorField::zeros(g);
  for (std::size_t c = 0; c < g.cells(); ++c) {
    Vec3 val = f(g.center(c), t);
    for (int d = 0; d < g.dim; ++d) out.comp[d][c] = val[d];
  }
  return out;
}

namespace {

enum class GhostRule { OddReflect, OneSided };

// Central difference along one axis; periodic wrap, or the chosen wall closure
// on no-slip grids.
std::vector<double> deriv_axis(const Grid& g, const std::vector<double>& f, int axis, GhostRule rule) {
  std::vector<double> out(g.cells(), 0.0);
  const int na = g.n[axis];
  const double inv2h = 1.0 / (2.0 * g.h[axis]);
  const double invh = 1.0 / g.h[axis];
  for (std::size_t c = 0; c < g.cells(); ++c) {
    auto idx = g.unflatten(c);
    const int i = idx[axis];
    if (g.bc == BoundaryKind::Periodic) {
      auto ip = idx;
      auto im = idx;
      ip[axis] = (i + 1) % na;
      im[axis] = (i - 1 + na) % na;
      out[c] = (f[g.flatten(ip)] - f[g.flatten(im)]) * inv2h;
    } else if (i > 0 && i < na - 1) {
      auto ip = idx;
      auto im = idx;
      ip[axis] = i + 1;
      im[axis] = i - 1;
      out[c] = (f[g.flatten(ip)] - f[g.flatten(im)]) * inv2h;
    } else if (rule == GhostRule::OddReflect) {
      // Ghost value is the negated mirror, enforcing a zero at the wall face.
      auto ip = idx;
      auto im = idx;
      ip[axis] = std::min(i + 1, na - 1);
      im[axis] = std::max(i - 1, 0);
      const double right = i == na - 1 ? -f[c] : f[g.flatten(ip)];
      const double left = i == 0 ? -f[c] : f[g.flatten(im)];
      out[c] = (right - left) * inv2h;
    } else {
      auto inb = idx;
      inb[axis] = i == 0 ? 1 : na - 2;
      const double nb = f[g.flatten(inb)];
      out[c] = i == 0 ? (nb - f[c]) * invh : (f[c] - nb) * invh;
    }
  }
  return out;
}

}  // namespace

VectorField grad_scalar(const ScalarField& rho) {
  VectorField out = VectorField::zeros(rho.grid);
  for (int d = 0; d < rho.grid.dim; ++d) out.comp[d] = deriv_axis(rho.grid, rho.v, d, GhostRule::OneSided);
  return out;
}

ScalarField div_vector(const VectorField& u) {
  ScalarField out = ScalarField::zeros(u.grid);
  for (int d = 0; d < u.grid.dim; ++d) {
    auto dd = deriv_axis(u.grid, u.comp[d], d, GhostRule::OddReflect);
    for (std::size_t c = 0; c < out.v.size(); ++c) out.v[c] += dd[c];
  }
  return out;
}

VectorField div_tensor(const TensorField& s) {
  VectorField out = VectorField::zeros(s.grid);
  for (int i = 0; i < s.grid.dim; ++i)
    for (int j = 0; j < s.grid.dim; ++j) {
      auto dd = deriv_axis(s.grid, s.comp[i][j], j, GhostRule::OneSided);
      for (std::size_t c = 0; c < dd.size(); ++c) out.comp[i][c] += dd[c];
    }
  return out;
}

TensorField grad_vector(const VectorField& u) {
  TensorField out = TensorField::zeros(u.grid);
  for (int i = 0; i < u.grid.dim; ++i)
    for (int j = 0; j < u.grid.dim; ++j) out.comp[i][j] = deriv_axis(u.grid, u.comp[i], j, GhostRule::OddReflect);
  return out;
}

TensorField sym_grad(const VectorField& u) {
  TensorField g = grad_vector(u);
  TensorField out = TensorField::zeros(u.grid);
  out.symmetric = true;
  for (int i = 0; i < u.grid.dim; ++i)
    for (int j = 0; j < u.grid.dim; ++j)
      for (std::size_t c = 0; c < g.comp[i][j].size(); ++c)
        out.comp[i][j][c] = 0.5 * (g.comp[i][j][c] + g.comp[j][i][c]);
  return out;
}

double integrate(const ScalarField& f) {
  double s = 0.0;
  for (double x : f.v) s += x;
  return s * f.grid.cell_measure();
}

double inner(const TensorField& a, const TensorField& b) {
  if (!(a.grid == b.grid)) throw std::invalid_argument("inner: grid mismatch");
  double s = 0.0;
  for (int i = 0; i < a.grid.dim; ++i)
    for (int j = 0; j < a.grid.dim; ++j)
      for (std::size_t c = 0; c < a.comp[i][j].size(); ++c) s += a.comp[i][j][c] * b.comp[i][j][c];
  return s * a.grid.cell_measure();
}

ScalarField random_smooth_scalar(const Grid& g, std::uint64_t seed, int modes) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> amp(-1.0, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  struct Mode {
    std::array<int, 3> k;
    double a, p;
  };
  std::vector<Mode> ms;
  for (int m = 0; m < modes; ++m) {
    Mode mo;
    for (int d = 0; d < 3; ++d) mo.k[d] = d < g.dim ? 1 + static_cast<int>(rng() % 3) : 0;
    mo.a = amp(rng);
    mo.p = phase(rng);
    ms.push_back(mo);
  }
  ScalarField out = ScalarField::zeros(g);
  for (std::size_t c = 0; c < g.cells(); ++c) {
    Vec3 x = g.center(c);
    double val = 0.0;
    for (const auto& mo : ms) {
      double arg = mo.p;
      for (int d = 0; d < g.dim; ++d) arg += 2.0 * std::numbers::pi * mo.k[d] * x[d] / (g.n[d] * g.h[d]);
      val += mo.a * std::sin(arg);
    }
    out.v[c] = val;
  }
  if (g.bc == BoundaryKind::NoSlip) {
    // Zero out two cell layers at each wall so discrete identities see a
    // compactly supported field.
    for (std::size_t c = 0; c < g.cells(); ++c) {
      auto idx = g.unflatten(c);
      for (int d = 0; d < g.dim; ++d)
        if (idx[d] < 2 || idx[d] > g.n[d] - 3) out.v[c] = 0.0;
    }
  }
  return out;
}

VectorField random_smooth_vector(const Grid& g, std::uint64_t seed, int modes) {
  VectorField out = VectorField::zeros(g);
  for (int d = 0; d < g.dim; ++d) out.comp[d] = random_smooth_scalar(g, seed + 0x9e3779b97f4a7c15ull * (d + 1), modes).v;
  return out;
}

double sbp_residual(const Grid& g, int trials, std::uint64_t seed) {
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    VectorField v = random_smooth_vector(g, seed + 2 * t);
    VectorField w = random_smooth_vector(g, seed + 2 * t + 1);
    TensorField dv = sym_grad(v);
    TensorField dw = sym_grad(w);
    double lhs = inner(dv, dw);
    VectorField div_dv = div_tensor(dv);
    double rhs = 0.0, mag = 0.0;
    for (int d = 0; d < g.dim; ++d)
      for (std::size_t c = 0; c < g.cells(); ++c) {
        const double term = div_dv.comp[d][c] * w.comp[d][c];
        rhs += term;
        mag += std::abs(term);
      }
    rhs *= g.cell_measure();
    mag *= g.cell_measure();
    const double scale = std::max({1.0, std::abs(lhs), mag});
    worst = std::max(worst, std::abs(lhs + rhs) / scale);
  }
  return worst;
}

void write_field_csv(const std::filesystem::path& path, const ScalarField& f) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  const Grid& g = f.grid;
  out << (g.dim == 1 ? "i,value" : g.dim == 2 ? "i,j,value" : "i,j,k,value") << "\n";
  char buf[64];
  for (std::size_t c = 0; c < g.cells(); ++c) {
    auto idx = g.unflatten(c);
    for (int d = 0; d < g.dim; ++d) out << idx[d] << ',';
    std::snprintf(buf, sizeof buf, "%.17g", f.v[c]);
    out << buf << "\n";
  }
}

ScalarField read_field_csv(const std::filesystem::path& path, const Grid& g) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  std::getline(in, line);  // header
  ScalarField f = ScalarField::zeros(g);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::array<int, 3> idx{0, 0, 0};
    char comma;
    for (int d = 0; d < g.dim; ++d) ss >> idx[d] >> comma;
    double val;
    ss >> val;
    if (!ss) throw std::runtime_error("malformed field row: " + line);
    f.v[g.flatten(idx)] = val;
  }
  return f;
}

}  // namespace nncert
