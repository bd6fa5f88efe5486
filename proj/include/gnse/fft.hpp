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

#pragma once

#include <cstddef>
#include <new>
#include <span>
#include <vector>

#include "gnse/field.hpp"

namespace gnse {

namespace detail {
void* fftw_aligned_alloc(std::size_t bytes);
void fftw_aligned_free(void* p) noexcept;
}  // namespace detail

/// std::allocator replacement returning FFTW-aligned storage, so buffers can
/// be handed to plans created on other buffers (new-array execute).
template <class T>
struct FftwAllocator {
  using value_type = T;
  FftwAllocator() noexcept = default;
  template <class U>
  FftwAllocator(const FftwAllocator<U>&) noexcept {}
  T* allocate(std::size_t n) {
    return static_cast<T*>(detail::fftw_aligned_alloc(n * sizeof(T)));
  }
  void deallocate(T* p, std::size_t) noexcept { detail::fftw_aligned_free(p); }
  template <class U>
  bool operator==(const FftwAllocator<U>&) const noexcept { return true; }
};

/// Samples of a real field on the padded (2n)^3 physical grid, x = idx / 2n.
using RealArray = std::vector<double, FftwAllocator<double>>;

RealArray to_physical(const TorusGrid& g, std::span<const Complex> coeffs);
inline RealArray to_physical(const SpectralField& f, int component = 0) {
  return to_physical(f.grid(), f.component(component));
}

/// Coefficients of the sampled field on the resolved cube. With
/// `dealias` set, modes outside the grid's dealiased band are zeroed.
void from_physical(const TorusGrid& g, const RealArray& values,
                   std::span<Complex> out, bool dealias);
SpectralField scalar_from_physical(const TorusGrid& g, const RealArray& values,
                                   bool dealias);

}  // namespace gnse
