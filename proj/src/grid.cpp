#include "trotterlab/grid.hpp"

#include <fftw3.h>

#include <cmath>
#include <stdexcept>

#include "fftw_engine.hpp"
#include "trotterlab/numerics.hpp"

namespace trotterlab {

std::size_t GridSpec::total() const {
  std::size_t t = 1;
  for (int d : dims) t *= static_cast<std::size_t>(d);
  return t;
}

double GridSpec::spacing(int axis) const {
  if (kind == GridKind::radial_1d) return extents[0] / (dims[0] + 1);
  return 2.0 * extents[axis] / dims[axis];
}

double GridSpec::position(int axis, long i) const {
  if (kind == GridKind::radial_1d) return (i + 1) * spacing(0);
  return -extents[axis] + (i + offsets[axis]) * spacing(axis);
}

double GridSpec::radial_lambda(long m) const {
  double dr = spacing(0);
  return (2.0 - 2.0 * std::cos(M_PI * (m + 1) / (dims[0] + 1))) / (dr * dr);
}

double GridSpec::momentum(int axis, long m) const {
  if (kind == GridKind::radial_1d) return std::sqrt(radial_lambda(m));
  int n = dims[axis];
  long s = (m < n / 2) ? m : m - n;  // signed fftfreq ordering
  return 2.0 * M_PI * s / (n * spacing(axis));
}

double GridSpec::measure_position() const {
  double mu = 1.0;
  for (int a = 0; a < naxes(); ++a) mu *= spacing(a);
  return mu;
}

double GridSpec::measure_momentum() const {
  if (kind == GridKind::radial_1d) return 1.0;  // unitary DST coefficients carry it
  double mu = 1.0;
  for (int a = 0; a < naxes(); ++a) mu *= 2.0 * M_PI / (dims[a] * spacing(a));
  return mu;
}

bool GridSpec::offset_on() const {
  if (kind == GridKind::radial_1d) return true;
  for (double o : offsets)
    if (o == 0.0) return false;
  return true;
}

GridSpec make_grid(GridKind kind, std::vector<int> dims, std::vector<double> extents,
                   bool offset, int particles, std::size_t budget) {
  int naxes = 0;
  switch (kind) {
    case GridKind::radial_1d:
      naxes = 1;
      break;
    case GridKind::cartesian_3d:
      naxes = 3;
      break;
    case GridKind::tensor_3n:
      if (particles < 2) throw std::invalid_argument("make_grid: tensor-3N needs particles >= 2");
      naxes = 3 * particles;
      break;
  }
  if (dims.size() == 1 && naxes > 1) dims.assign(naxes, dims[0]);
  if (extents.size() == 1 && naxes > 1) extents.assign(naxes, extents[0]);
  if (static_cast<int>(dims.size()) != naxes || static_cast<int>(extents.size()) != naxes)
    throw std::invalid_argument("make_grid: dims/extents length must match the grid kind");
  int min_dim = (kind == GridKind::tensor_3n) ? 4 : 8;
  for (int d : dims) {
    if (!is_power_of_two(static_cast<std::size_t>(d)))
      throw std::invalid_argument("make_grid: per-axis point counts must be powers of two");
    if (d < min_dim) throw std::invalid_argument("make_grid: per-axis point count too small");
  }
  for (double e : extents)
    if (e <= 0) throw std::invalid_argument("make_grid: extents must be positive");

  GridSpec g;
  g.kind = kind;
  g.dims = std::move(dims);
  g.extents = std::move(extents);
  g.particles = (kind == GridKind::tensor_3n) ? particles : 1;
  g.offsets.assign(naxes, 0.0);
  if (offset) {
    if (kind == GridKind::cartesian_3d) {
      g.offsets.assign(naxes, 0.5);
    } else if (kind == GridKind::tensor_3n) {
      // distinct per-particle fractions keep every pair difference away from zero
      for (int j = 0; j < particles; ++j) {
        double frac = (2.0 * j + 1.0) / (2.0 * particles);
        for (int a = 0; a < 3; ++a) g.offsets[3 * j + a] = frac;
      }
    }
  }
  if (kind == GridKind::radial_1d) g.offsets.assign(1, 1.0);
  std::size_t t = 1;
  for (int d : g.dims) {
    // overflow-safe product against the budget
    if (t > budget / static_cast<std::size_t>(d))
      throw std::invalid_argument("make_grid: grid exceeds the point budget");
    t *= static_cast<std::size_t>(d);
  }
  return g;
}

Wavefunction make_wavefunction(const GridSpec& grid, Rep rep) {
  Wavefunction psi;
  psi.grid = grid;
  psi.rep = rep;
  psi.values.assign(grid.total(), {0.0, 0.0});
  return psi;
}

namespace {

double rep_measure(const Wavefunction& psi) {
  return psi.rep == Rep::position ? psi.grid.measure_position()
                                  : psi.grid.measure_momentum();
}

}  // namespace

double norm(const Wavefunction& psi) {
  long double s = 0.0L;
  for (const auto& v : psi.values) s += std::norm(v);
  return std::sqrt(static_cast<double>(s) * rep_measure(psi));
}

std::complex<double> inner(const Wavefunction& a, const Wavefunction& b) {
  if (a.values.size() != b.values.size() || a.rep != b.rep)
    throw std::invalid_argument("inner: representation/layout mismatch");
  std::complex<long double> s{0.0L, 0.0L};
  for (std::size_t i = 0; i < a.values.size(); ++i)
    s += std::conj(std::complex<long double>(a.values[i])) *
         std::complex<long double>(b.values[i]);
  return static_cast<std::complex<double>>(s) * rep_measure(a);
}

void normalize(Wavefunction& psi) {
  double n = norm(psi);
  if (n == 0) throw std::invalid_argument("normalize: zero state");
  for (auto& v : psi.values) v /= n;
}

double diff_norm(const Wavefunction& a, const Wavefunction& b) {
  if (a.values.size() != b.values.size() || a.rep != b.rep)
    throw std::invalid_argument("diff_norm: representation/layout mismatch");
  long double s = 0.0L;
  for (std::size_t i = 0; i < a.values.size(); ++i) s += std::norm(a.values[i] - b.values[i]);
  return std::sqrt(static_cast<double>(s) * rep_measure(a));
}

namespace {

void radial_dst(const std::complex<double>* in, std::complex<double>* out, int n,
                double scale) {
  std::vector<double> re(n), im(n);
  for (int i = 0; i < n; ++i) {
    re[i] = in[i].real();
    im[i] = in[i].imag();
  }
  dst1(re.data(), n);
  dst1(im.data(), n);
  for (int i = 0; i < n; ++i) out[i] = std::complex<double>(re[i], im[i]) * scale;
}

// per-axis forward factors e^{-i p x0} dx / sqrt(2 pi)
std::vector<std::vector<std::complex<double>>> axis_phases(const GridSpec& g, bool forward) {
  std::vector<std::vector<std::complex<double>>> ph(g.naxes());
  for (int a = 0; a < g.naxes(); ++a) {
    int n = g.dims[a];
    double dx = g.spacing(a);
    double x0 = g.position(a, 0);
    ph[a].resize(n);
    for (int m = 0; m < n; ++m) {
      double p = g.momentum(a, m);
      std::complex<double> f =
          std::exp(std::complex<double>(0.0, -p * x0)) * (dx / std::sqrt(2.0 * M_PI));
      ph[a][m] = forward ? f : 1.0 / (f * static_cast<double>(n));
    }
  }
  return ph;
}

void scale_by_axis_factors(std::vector<std::complex<double>>& v, const GridSpec& g,
                           const std::vector<std::vector<std::complex<double>>>& ph) {
  int na = g.naxes();
  std::vector<int> idx(na, 0);
  for (std::size_t flat = 0; flat < v.size(); ++flat) {
    std::complex<double> f = 1.0;
    for (int a = 0; a < na; ++a) f *= ph[a][idx[a]];
    v[flat] *= f;
    for (int a = na - 1; a >= 0; --a) {
      if (++idx[a] < g.dims[a]) break;
      idx[a] = 0;
    }
  }
}

}  // namespace

Wavefunction transform(const Wavefunction& psi, Rep target) {
  if (psi.rep == target) return psi;
  Wavefunction out = psi;
  out.rep = target;
  const GridSpec& g = psi.grid;
  if (g.kind == GridKind::radial_1d) {
    int n = g.dims[0];
    double dr = g.spacing(0);
    double scale = (target == Rep::momentum) ? std::sqrt(dr / (2.0 * (n + 1)))
                                             : std::sqrt(1.0 / (2.0 * (n + 1) * dr));
    radial_dst(psi.values.data(), out.values.data(), n, scale);
    return out;
  }
  if (target == Rep::momentum) {
    fft_nd(out.values.data(), g.dims, FFTW_FORWARD);
    scale_by_axis_factors(out.values, g, axis_phases(g, true));
  } else {
    scale_by_axis_factors(out.values, g, axis_phases(g, false));
    fft_nd(out.values.data(), g.dims, FFTW_BACKWARD);
  }
  return out;
}

void for_each_momentum(const GridSpec& grid,
                       const std::function<void(std::size_t, const double*, bool)>& fn) {
  int na = grid.naxes();
  std::vector<std::vector<double>> table(na);
  for (int a = 0; a < na; ++a) {
    table[a].resize(grid.dims[a]);
    for (int m = 0; m < grid.dims[a]; ++m) table[a][m] = grid.momentum(a, m);
  }
  std::vector<int> idx(na, 0);
  std::vector<double> p(na, 0.0);
  std::size_t total = grid.total();
  for (std::size_t flat = 0; flat < total; ++flat) {
    bool dc = true;
    for (int a = 0; a < na; ++a) {
      p[a] = table[a][idx[a]];
      if (grid.kind == GridKind::radial_1d || idx[a] != 0) dc = false;
    }
    fn(flat, p.data(), dc);
    for (int a = na - 1; a >= 0; --a) {
      if (++idx[a] < grid.dims[a]) break;
      idx[a] = 0;
    }
  }
}

void for_each_position(const GridSpec& grid,
                       const std::function<void(std::size_t, const double*)>& fn) {
  int na = grid.naxes();
  std::vector<std::vector<double>> table(na);
  for (int a = 0; a < na; ++a) {
    table[a].resize(grid.dims[a]);
    for (int i = 0; i < grid.dims[a]; ++i) table[a][i] = grid.position(a, i);
  }
  std::vector<int> idx(na, 0);
  std::vector<double> x(na, 0.0);
  std::size_t total = grid.total();
  for (std::size_t flat = 0; flat < total; ++flat) {
    for (int a = 0; a < na; ++a) x[a] = table[a][idx[a]];
    fn(flat, x.data());
    for (int a = na - 1; a >= 0; --a) {
      if (++idx[a] < grid.dims[a]) break;
      idx[a] = 0;
    }
  }
}

double h2_norm(const Wavefunction& psi) {
  Wavefunction mom = transform(psi, Rep::momentum);
  double mu = mom.grid.measure_momentum();
  long double s = 0.0L;
  int na = mom.grid.naxes();
  for_each_momentum(mom.grid, [&](std::size_t flat, const double* p, bool) {
    double p2 = 0.0;
    for (int a = 0; a < na; ++a) p2 += p[a] * p[a];
    s += (p2 * p2 + 1.0) * std::norm(mom.values[flat]);
  });
  return std::sqrt(static_cast<double>(s) * mu);
}

std::vector<std::complex<double>> sample_symbol(const FourierMultiplier& m,
                                                const GridSpec& grid) {
  std::vector<std::complex<double>> factors(grid.total());
  int na = grid.naxes();
  for_each_momentum(grid, [&](std::size_t flat, const double* p, bool dc) {
    std::complex<double> v;
    if (dc && m.has_dc_policy) {
      v = m.dc_value;
    } else {
      v = m.symbol(p, na);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw std::domain_error("sample_symbol: non-finite symbol value off the DC mode");
    }
    factors[flat] = v;
  });
  return factors;
}

void apply_sampled_momentum(const std::vector<std::complex<double>>& factors,
                            Wavefunction& psi_momentum) {
  if (psi_momentum.rep != Rep::momentum)
    throw std::invalid_argument("apply_sampled_momentum: momentum rep required");
  for (std::size_t i = 0; i < factors.size(); ++i) psi_momentum.values[i] *= factors[i];
}

Wavefunction apply_multiplier(const FourierMultiplier& m, const Wavefunction& psi) {
  Rep original = psi.rep;
  Wavefunction mom = transform(psi, Rep::momentum);
  auto factors = sample_symbol(m, mom.grid);
  apply_sampled_momentum(factors, mom);
  return transform(mom, original);
}

FourierMultiplier inverse_momentum_multiplier() {
  FourierMultiplier m;
  m.symbol = [](const double* p, int na) {
    double p2 = 0.0;
    for (int a = 0; a < na; ++a) p2 += p[a] * p[a];
    return std::complex<double>(1.0 / std::sqrt(p2), 0.0);
  };
  m.has_dc_policy = true;
  m.dc_value = {0.0, 0.0};
  return m;
}

void project_dc_free(Wavefunction& psi) {
  if (psi.grid.kind == GridKind::radial_1d) return;  // no zero mode in the DST basis
  Rep original = psi.rep;
  Wavefunction mom = transform(psi, Rep::momentum);
  mom.values[0] = {0.0, 0.0};
  psi = transform(mom, original);
}

}  // namespace trotterlab
