// Copyright 2026 The gnse Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "gnse/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace gnse {

namespace detail {
void* fftw_aligned_alloc(std::size_t bytes) {
  void* p = fftw_malloc(bytes == 0 ? 1 : bytes);
  if (!p) throw std::bad_alloc();
  return p;
}
void fftw_aligned_free(void* p) noexcept { fftw_free(p); }
}  // namespace detail

namespace {

using ComplexArray = std::vector<Complex, FftwAllocator<Complex>>;

struct PlanPair {
  fftw_plan r2c = nullptr;
  fftw_plan c2r = nullptr;
};

// Plans are created once per size under a lock and only executed afterwards.
// FFTW_ESTIMATE keeps the chosen algorithm, and hence the output bits,
// identical from run to run.
class PlanRegistry {
 public:
  ~PlanRegistry() {
    for (auto& [m, p] : plans_) {
      fftw_destroy_plan(p.r2c);
      fftw_destroy_plan(p.c2r);
    }
  }
  const PlanPair& get(int m) {
    std::lock_guard lock(mutex_);
    auto it = plans_.find(m);
    if (it != plans_.end()) return it->second;
    RealArray real(std::size_t(m) * m * m);
    ComplexArray spec(std::size_t(m) * m * (m / 2 + 1));
    auto* cp = reinterpret_cast<fftw_complex*>(spec.data());
    PlanPair p;
    p.r2c = fftw_plan_dft_r2c_3d(m, m, m, real.data(), cp, FFTW_ESTIMATE);
    p.c2r = fftw_plan_dft_c2r_3d(m, m, m, cp, real.data(), FFTW_ESTIMATE);
    return plans_.emplace(m, p).first->second;
  }

 private:
  std::mutex mutex_;
  std::map<int, PlanPair> plans_;
};

PlanRegistry& registry() {
  static PlanRegistry r;
  return r;
}

inline int wrap(int k, int m) { return k < 0 ? k + m : k; }

}  // namespace

RealArray to_physical(const TorusGrid& g, std::span<const Complex> coeffs) {
  const int m = g.physical_side();
  const int mh = m / 2 + 1;
  const int h = g.half();
  ComplexArray spec(std::size_t(m) * m * mh, Complex(0.0, 0.0));
  for (int k0 = -h; k0 <= h; ++k0)
    for (int k1 = -h; k1 <= h; ++k1)
      for (int k2 = 0; k2 <= h; ++k2) {
        const std::size_t dst =
            (std::size_t(wrap(k0, m)) * m + std::size_t(wrap(k1, m))) * mh + std::size_t(k2);
        spec[dst] = coeffs[g.index({k0, k1, k2})];
      }
  RealArray out(g.physical_count());
  const auto& plans = registry().get(m);
  fftw_execute_dft_c2r(plans.c2r, reinterpret_cast<fftw_complex*>(spec.data()),
                       out.data());
  return out;
}

void from_physical(const TorusGrid& g, const RealArray& values,
                   std::span<Complex> out, bool dealias) {
  const int m = g.physical_side();
  const int mh = m / 2 + 1;
  const int h = g.half();
  ComplexArray spec(std::size_t(m) * m * mh);
  const auto& plans = registry().get(m);
  // Out-of-place r2c leaves its input untouched.
  fftw_execute_dft_r2c(plans.r2c, const_cast<double*>(values.data()),
                       reinterpret_cast<fftw_complex*>(spec.data()));
  const double scale = 1.0 / double(g.physical_count());
  for (int k0 = -h; k0 <= h; ++k0)
    for (int k1 = -h; k1 <= h; ++k1)
      for (int k2 = -h; k2 <= h; ++k2) {
        const Wavevector k{k0, k1, k2};
        Complex v(0.0, 0.0);
        if (!dealias || g.in_dealiased_band(k)) {
          if (k2 >= 0) {
            v = spec[(std::size_t(wrap(k0, m)) * m + std::size_t(wrap(k1, m))) * mh +
                     std::size_t(k2)];
          } else {
            v = std::conj(spec[(std::size_t(wrap(-k0, m)) * m + std::size_t(wrap(-k1, m))) * mh +
                               std::size_t(-k2)]);
          }
          v *= scale;
        }
        out[g.index(k)] = v;
      }
}

SpectralField scalar_from_physical(const TorusGrid& g, const RealArray& values,
                                   bool dealias) {
  SpectralField f(g, Rank::scalar);
  from_physical(g, values, f.component(0), dealias);
  return f;
}

}  // namespace gnse
