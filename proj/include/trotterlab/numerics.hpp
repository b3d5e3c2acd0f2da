#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace trotterlab {

// mt19937_64 stream with explicit bit-to-double mapping so outputs are
// identical across standard library implementations
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() { return std::ldexp(static_cast<double>(gen_() >> 11), -53); }

  std::pair<double, double> normal_pair() {
    double u1 = 1.0 - uniform();  // (0,1]
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    return {r * std::cos(2.0 * M_PI * u2), r * std::sin(2.0 * M_PI * u2)};
  }

  std::complex<double> complex_normal() {
    auto [a, b] = normal_pair();
    return {a, b};
  }

 private:
  std::mt19937_64 gen_;
};

struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Gauss-Legendre rule on [-1,1]
Quadrature gauss_legendre(int n);
// same rule mapped to [a,b]
Quadrature gauss_legendre(int n, double a, double b);

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double rel_tol, int max_depth = 40);

struct LinFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

LinFit linear_fit(const std::vector<double>& x, const std::vector<double>& y);

// golden-section maximizer for smooth unimodal-near-peak scans
std::pair<double, double> maximize_scalar(const std::function<double(double)>& f,
                                          double a, double b, double tol = 1e-12);

std::uint64_t fnv1a64(std::string_view data);

// shortest round-trip decimal formatting used by every CSV writer
std::string fmt17(double v);

bool is_power_of_two(std::size_t n);

}  // namespace trotterlab
