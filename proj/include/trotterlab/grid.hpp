#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace trotterlab {

enum class GridKind { radial_1d, cartesian_3d, tensor_3n };
enum class Rep { position, momentum };

inline constexpr std::size_t default_point_budget = std::size_t{1} << 24;

struct GridSpec {
  GridKind kind = GridKind::radial_1d;
  std::vector<int> dims;
  std::vector<double> extents;
  std::vector<double> offsets;  // per-axis sample-offset fraction
  int particles = 1;

  int naxes() const { return static_cast<int>(dims.size()); }
  std::size_t total() const;
  double spacing(int axis) const;
  double position(int axis, long i) const;
  double momentum(int axis, long m) const;  // radial: sqrt of the kinetic eigenvalue
  double radial_lambda(long m) const;
  double measure_position() const;
  double measure_momentum() const;
  bool offset_on() const;
};

GridSpec make_grid(GridKind kind, std::vector<int> dims, std::vector<double> extents,
                   bool offset, int particles = 1,
                   std::size_t budget = default_point_budget);

struct Wavefunction {
  GridSpec grid;
  Rep rep = Rep::position;
  std::vector<std::complex<double>> values;
};

Wavefunction make_wavefunction(const GridSpec& grid, Rep rep = Rep::position);

double norm(const Wavefunction& psi);
std::complex<double> inner(const Wavefunction& a, const Wavefunction& b);
void normalize(Wavefunction& psi);
double diff_norm(const Wavefunction& a, const Wavefunction& b);

Wavefunction transform(const Wavefunction& psi, Rep target);

double h2_norm(const Wavefunction& psi);

struct FourierMultiplier {
  std::function<std::complex<double>(const double* p, int naxes)> symbol;
  bool has_dc_policy = false;
  std::complex<double> dc_value{0.0, 0.0};
};

Wavefunction apply_multiplier(const FourierMultiplier& m, const Wavefunction& psi);

FourierMultiplier inverse_momentum_multiplier();

// momentum lattice walker: fn(flat_index, momentum_components, is_dc)
void for_each_momentum(const GridSpec& grid,
                       const std::function<void(std::size_t, const double*, bool)>& fn);

// position lattice walker: fn(flat_index, position_components)
void for_each_position(const GridSpec& grid,
                       const std::function<void(std::size_t, const double*)>& fn);

// symbol values sampled over the momentum lattice, dc policy applied
std::vector<std::complex<double>> sample_symbol(const FourierMultiplier& m,
                                                const GridSpec& grid);

void apply_sampled_momentum(const std::vector<std::complex<double>>& factors,
                            Wavefunction& psi_momentum);

void project_dc_free(Wavefunction& psi);

}  // namespace trotterlab
