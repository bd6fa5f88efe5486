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

#include "gnse/paraproduct.hpp"

#include <optional>

#include "gnse/errors.hpp"
#include "gnse/fft.hpp"

namespace gnse {

namespace {

// Physical samples of Δ_j f_c, filled on first use. Blocks with no populated
// mode are flagged and never transformed.
class BlockCache {
 public:
  BlockCache(const SpectralField& f, const DyadicPartition& p)
      : f_(f), part_(p), blocks_(std::size_t(f.components()) * nblocks()) {}

  int nblocks() const { return part_.j_max() + 2; }

  // nullptr for an identically zero block.
  const RealArray* block(int c, int j) {
    auto& slot = blocks_[std::size_t(c) * nblocks() + std::size_t(j + 1)];
    if (!slot) {
      const auto w = part_.weights(j);
      const auto src = f_.component(c);
      std::vector<Complex> coeffs(src.size());
      bool any = false;
      for (std::size_t i = 0; i < src.size(); ++i) {
        coeffs[i] = w[i] * src[i];
        any = any || coeffs[i] != Complex(0.0, 0.0);
      }
      slot.emplace();
      if (any) *slot = to_physical(f_.grid(), coeffs);
    }
    return slot->empty() ? nullptr : &*slot;
  }

 private:
  const SpectralField& f_;
  const DyadicPartition& part_;
  std::vector<std::optional<RealArray>> blocks_;
};

void axpy_product(RealArray& acc, double w, const RealArray& x, const RealArray& y) {
  for (std::size_t p = 0; p < acc.size(); ++p) acc[p] += w * x[p] * y[p];
}

void add_to(RealArray& acc, const RealArray& x) {
  for (std::size_t p = 0; p < acc.size(); ++p) acc[p] += x[p];
}

// acc += w Σ_i S_{i−1}a Δ_i b
void accumulate_lt(RealArray& acc, double w, BlockCache& a, int ca, BlockCache& b, int cb) {
  const int jmax = a.nblocks() - 2;
  RealArray low;  // Σ_{j ≤ i−2} Δ_j a
  for (int i = -1; i <= jmax; ++i) {
    if (!low.empty()) {
      if (const auto* bi = b.block(cb, i)) axpy_product(acc, w, low, *bi);
    }
    if (i - 1 >= -1) {
      if (const auto* aj = a.block(ca, i - 1)) {
        if (low.empty()) low.assign(acc.size(), 0.0);
        add_to(low, *aj);
      }
    }
  }
}

// acc += w Σ_{|i−j|≤1} Δ_i a Δ_j b
void accumulate_res(RealArray& acc, double w, BlockCache& a, int ca, BlockCache& b, int cb) {
  const int jmax = a.nblocks() - 2;
  for (int i = -1; i <= jmax; ++i) {
    const auto* ai = a.block(ca, i);
    if (!ai) continue;
    for (int j = std::max(-1, i - 1); j <= std::min(jmax, i + 1); ++j)
      if (const auto* bj = b.block(cb, j)) axpy_product(acc, w, *ai, *bj);
  }
}

}  // namespace

SpectralField para(const SpectralField& f, const SpectralField& g, ParaMode mode,
                   const DyadicPartition& part) {
  require_compatible(f, g, false);
  if (!(f.grid() == part.grid())) throw InvalidArgument("para: partition built for another grid");
  const auto layout = bilinear_layout(f.rank(), g.rank(), mode.tensor);
  const auto& grid = f.grid();
  BlockCache fb(f, part), gb(g, part);
  std::vector<RealArray> acc(component_count(layout.out_rank));
  for (const auto& t : layout.terms) {
    auto& a = acc[t.out];
    if (a.empty()) a.assign(grid.physical_count(), 0.0);
    switch (mode.kind) {
      case ParaKind::lt: accumulate_lt(a, t.weight, fb, t.lhs, gb, t.rhs); break;
      case ParaKind::gt: accumulate_lt(a, t.weight, gb, t.rhs, fb, t.lhs); break;
      case ParaKind::res: accumulate_res(a, t.weight, fb, t.lhs, gb, t.rhs); break;
    }
  }
  SpectralField out(grid, layout.out_rank);
  for (int c = 0; c < out.components(); ++c)
    if (!acc[c].empty()) from_physical(grid, acc[c], out.component(c), true);
  return out;
}

namespace {

SpectralField product_for(const SpectralField& f, const SpectralField& g,
                          CommutatorProduct product, const DyadicPartition& part) {
  const bool both_vectors = f.rank() == Rank::vector && g.rank() == Rank::vector;
  const TensorKind tk = both_vectors ? TensorKind::symmetric : TensorKind::plain;
  if (product == CommutatorProduct::full) return multiply(f, g, tk);
  return para(f, g, {ParaKind::lt, tk}, part);
}

}  // namespace

SpectralField lambda_commutator(const SpectralField& f, const SpectralField& g,
                                double gamma, CommutatorProduct product,
                                const DyadicPartition& part) {
  if (!(gamma > 0.0)) throw InvalidArgument("lambda_commutator: gamma must be > 0");
  const auto lam = MultiplierSpec::fractional_laplacian(gamma);
  SpectralField out = apply_multiplier(product_for(f, g, product, part), lam);
  out -= product_for(apply_multiplier(f, lam), g, product, part);
  out -= product_for(f, apply_multiplier(g, lam), product, part);
  return out;
}

SpectralField heat_commutator(const SpectralField& dtw_plus_diss, const SpectralField& w,
                              const SpectralField& q, double nu,
                              const DyadicPartition& part) {
  require_compatible(dtw_plus_diss, w);
  require_compatible(w, q);
  SpectralField out = product_for(dtw_plus_diss, q, CommutatorProduct::para_lt_sym, part);
  SpectralField comm = lambda_commutator(w, q, 2.5, CommutatorProduct::para_lt_sym, part);
  comm *= nu;
  out += comm;
  return out;
}

SpectralField trilinear_R(const SpectralField& f, const SpectralField& g,
                          const SpectralField& h, const DyadicPartition& part) {
  require_rank(f, Rank::scalar, "trilinear_R");
  require_rank(g, Rank::scalar, "trilinear_R");
  require_rank(h, Rank::scalar, "trilinear_R");
  SpectralField out = para(para(f, g, {ParaKind::lt}, part), h, {ParaKind::res}, part);
  out -= multiply(f, para(g, h, {ParaKind::res}, part));
  return out;
}

SpectralField sigma_commutator(const SpectralField& f, const SpectralField& g,
                               const MultiplierSpec& m, const DyadicPartition& part) {
  using K = MultiplierSpec::Kind;
  if (m.kind != K::sigma && m.kind != K::sigma_a && m.kind != K::sigma_tilde_a &&
      m.kind != K::shifted_inverse)
    throw InvalidArgument("sigma_commutator: multiplier must be a smoothing symbol");
  SpectralField out = apply_multiplier(para(f, g, {ParaKind::lt}, part), m);
  out -= para(f, apply_multiplier(g, m), {ParaKind::lt}, part);
  return out;
}

}  // namespace gnse
