#include "trotterlab/numerics.hpp"

#include <cstdio>
#include <stdexcept>

namespace trotterlab {

Quadrature gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  Quadrature q;
  q.nodes.resize(n);
  q.weights.resize(n);
  // Newton iteration on P_n from the Chebyshev initial guess
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    q.nodes[i] = -x;
    q.nodes[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    q.weights[i] = w;
    q.weights[n - 1 - i] = w;
  }
  return q;
}

Quadrature gauss_legendre(int n, double a, double b) {
  Quadrature q = gauss_legendre(n);
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    q.nodes[i] = mid + half * q.nodes[i];
    q.weights[i] *= half;
  }
  return q;
}

namespace {

long double simpson(long double a, long double fa, long double b, long double fb,
                    long double fm) {
  return (b - a) / 6.0L * (fa + 4.0L * fm + fb);
}

long double adaptive_step(const std::function<double(double)>& f, long double a, long double fa,
                          long double b, long double fb, long double fm, long double whole,
                          long double tol, int depth) {
  long double m = 0.5L * (a + b);
  long double lm = 0.5L * (a + m), rm = 0.5L * (m + b);
  long double flm = f(static_cast<double>(lm)), frm = f(static_cast<double>(rm));
  long double left = simpson(a, fa, m, fm, flm);
  long double right = simpson(m, fm, b, fb, frm);
  long double delta = left + right - whole;
  if (depth <= 0 || std::abs(static_cast<double>(delta)) <= 15.0L * tol)
    return left + right + delta / 15.0L;
  return adaptive_step(f, a, fa, m, fm, flm, left, 0.5L * tol, depth - 1) +
         adaptive_step(f, m, fm, b, fb, frm, right, 0.5L * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double rel_tol, int max_depth) {
  long double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  long double whole = simpson(a, fa, b, fb, fm);
  long double scale = std::max(std::abs(static_cast<double>(whole)), 1e-300);
  long double result =
      adaptive_step(f, a, fa, b, fb, fm, whole, rel_tol * scale, max_depth);
  // one refinement pass so the tolerance is relative to the converged value
  long double scale2 = std::max(std::abs(static_cast<double>(result)), 1e-300);
  if (scale2 < 0.1L * scale) {
    result = adaptive_step(f, a, fa, b, fb, fm, whole, rel_tol * scale2, max_depth);
  }
  return static_cast<double>(result);
}

LinFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("linear_fit: need >= 2 points of equal count");
  std::size_t n = x.size();
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
  }
  double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0) throw std::invalid_argument("linear_fit: degenerate abscissae");
  LinFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = (syy == 0) ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

std::pair<double, double> maximize_scalar(const std::function<double(double)>& f,
                                          double a, double b, double tol) {
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - gr * (b - a), d = a + gr * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - gr * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + gr * (b - a);
      fd = f(d);
    }
  }
  double x = 0.5 * (a + b);
  return {x, f(x)};
}

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace trotterlab
