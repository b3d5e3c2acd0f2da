#include "fftw_engine.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace trotterlab {

namespace {

std::mutex plan_mutex;

fftw_plan cached_cplx_plan(const std::vector<int>& dims, int sign) {
  static std::map<std::pair<std::vector<int>, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto key = std::make_pair(dims, sign);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  std::size_t total = 1;
  for (int d : dims) total *= static_cast<std::size_t>(d);
  std::vector<std::complex<double>> scratch(total);
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  fftw_plan p = fftw_plan_dft(static_cast<int>(dims.size()), dims.data(), buf, buf, sign,
                              FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache[key] = p;
  return p;
}

fftw_plan cached_dst_plan(int n) {
  static std::map<int, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<double> scratch(n);
  fftw_plan p = fftw_plan_r2r_1d(n, scratch.data(), scratch.data(), FFTW_RODFT00,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache[n] = p;
  return p;
}

}  // namespace

void fft_nd(std::complex<double>* data, const std::vector<int>& dims, int sign) {
  fftw_plan p = cached_cplx_plan(dims, sign);
  auto* buf = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(p, buf, buf);
}

void dst1(double* data, int n) {
  fftw_plan p = cached_dst_plan(n);
  fftw_execute_r2r(p, data, data);
}

}  // namespace trotterlab
