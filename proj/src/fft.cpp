#include "bor/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace bor::fft {

namespace {

std::mutex g_plan_mutex;

fftw_plan get_plan(int n, int sign) {
  static std::map<std::pair<int, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(g_plan_mutex);
  auto key = std::make_pair(n, sign);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  fftw_complex* buf = fftw_alloc_complex(static_cast<size_t>(n));
  fftw_plan p = fftw_plan_dft_1d(n, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(buf);
  cache.emplace(key, p);
  return p;
}

void run(cplx* data, int n, int sign) {
  if (n <= 1) return;
  fftw_plan p = get_plan(n, sign);
  auto* d = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(p, d, d);
}

}  // namespace

void forward(cplx* data, int n) { run(data, n, FFTW_FORWARD); }
void backward(cplx* data, int n) { run(data, n, FFTW_BACKWARD); }

int next_pow2(long n) {
  int p = 1;
  while (p < n) p <<= 1;
  return p;
}

}  // namespace bor::fft
