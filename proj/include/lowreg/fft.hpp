#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <mutex>
#include <span>
#include <vector>

#include <fftw3.h>

namespace lowreg::detail {

/// Process-wide cache of FFTW plans keyed by (shape, direction). Planning is
/// serialized; executing a plan on caller-owned arrays is thread safe.
class FftPlanCache {
public:
  static FftPlanCache& instance() {
    static FftPlanCache cache;
    return cache;
  }

  FftPlanCache(const FftPlanCache&) = delete;
  FftPlanCache& operator=(const FftPlanCache&) = delete;

  fftw_plan get(const std::vector<std::size_t>& shape, int sign) {
    std::lock_guard lock(mutex_);
    Key key{shape, sign};
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;

    std::size_t total = 1;
    std::vector<int> n;
    for (auto s : shape) {
      total *= s;
      n.push_back(static_cast<int>(s));
    }
    auto* in = fftw_alloc_complex(total);
    auto* out = fftw_alloc_complex(total);
    fftw_plan plan = fftw_plan_dft(static_cast<int>(n.size()), n.data(), in, out, sign,
                                   FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(in);
    fftw_free(out);
    plans_.emplace(std::move(key), plan);
    return plan;
  }

private:
  struct Key {
    std::vector<std::size_t> shape;
    int sign;
    bool operator<(const Key& o) const {
      return shape != o.shape ? shape < o.shape : sign < o.sign;
    }
  };

  FftPlanCache() = default;
  ~FftPlanCache() {
    for (auto& [k, p] : plans_) fftw_destroy_plan(p);
  }

  std::mutex mutex_;
  std::map<Key, fftw_plan> plans_;
};

/// Unnormalized DFT: sign = FFTW_FORWARD computes sum_j x_j e^{-2 pi i jk/N}.
inline void dft(const std::vector<std::size_t>& shape, int sign,
                std::span<const std::complex<double>> in, std::span<std::complex<double>> out) {
  fftw_plan plan = FftPlanCache::instance().get(shape, sign);
  // fftw_execute_dft never writes to `in` for out-of-place plans.
  auto* src = reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in.data()));
  auto* dst = reinterpret_cast<fftw_complex*>(out.data());
  if (src == dst) {
    std::vector<std::complex<double>> tmp(in.begin(), in.end());
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(tmp.data()), dst);
  } else {
    fftw_execute_dft(plan, src, dst);
  }
}

} // namespace lowreg::detail
