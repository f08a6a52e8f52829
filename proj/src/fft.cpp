#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace gqg::detail {
namespace {

struct PlanCache {
  std::mutex mu;
  std::map<std::pair<int, int>, fftw_plan> plans;

  fftw_plan get(int n, int sign) {
    std::lock_guard<std::mutex> lock(mu);
    auto it = plans.find({n, sign});
    if (it != plans.end()) return it->second;
    std::vector<cplx> a(static_cast<std::size_t>(n) * n * n), b(a.size());
    // FFTW_ESTIMATE keeps the plan, and therefore the rounding, identical run to run.
    fftw_plan p = fftw_plan_dft_3d(n, n, n, reinterpret_cast<fftw_complex*>(a.data()),
                                   reinterpret_cast<fftw_complex*>(b.data()), sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!p) throw std::runtime_error("fftw plan creation failed");
    plans.emplace(std::make_pair(n, sign), p);
    return p;
  }
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

}  // namespace

void fft3(const cplx* in, cplx* out, int n, Direction dir) {
  const int sign = dir == Direction::forward ? FFTW_FORWARD : FFTW_BACKWARD;
  fftw_plan p = cache().get(n, sign);
  const std::size_t N = static_cast<std::size_t>(n) * n * n;
  if (in == out) {
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
    return;
  }
  std::vector<cplx> tmp(in, in + N);
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(tmp.data()), reinterpret_cast<fftw_complex*>(out));
}

void inverse_pair(const Field& a, const Field& b, Field& out_a, Field& out_b) {
  const std::size_t N = a.size();
  const cplx I(0.0, 1.0);
  std::vector<cplx> h(N);
  for (std::size_t k = 0; k < N; ++k) h[k] = a[k] + I * b[k];
  fft3(h.data(), h.data(), a.grid().n(), Direction::inverse);
  out_a = Field(a.grid(), Rep::physical);
  out_b = Field(a.grid(), Rep::physical);
  for (std::size_t k = 0; k < N; ++k) {
    out_a[k] = h[k].real();
    out_b[k] = h[k].imag();
  }
}

void forward_pair(const Field& a, const Field& b, Field& out_a, Field& out_b) {
  const Grid3& g = a.grid();
  const std::size_t N = a.size();
  const cplx I(0.0, 1.0);
  std::vector<cplx> h(N);
  for (std::size_t k = 0; k < N; ++k) h[k] = cplx(a[k].real(), b[k].real());
  fft3(h.data(), h.data(), g.n(), Direction::forward);
  const double s = 1.0 / static_cast<double>(N);
  Field ra(g, Rep::spectral), rb(g, Rep::spectral);
  for (std::size_t k = 0; k < N; ++k) {
    const cplx hk = h[k];
    const cplx hm = std::conj(h[g.conjugate_index(k)]);
    ra[k] = 0.5 * s * (hk + hm);
    rb[k] = -0.5 * s * I * (hk - hm);
  }
  out_a = std::move(ra);
  out_b = std::move(rb);
}

}  // namespace gqg::detail
