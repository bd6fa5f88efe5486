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

#include "gnse/field_io.hpp"

#include <array>
#include <cstring>

#include <json.hpp>

namespace gnse {

namespace io {

void write_string(std::ostream& os, const std::string& s) {
  write_pod<std::uint64_t>(os, s.size());
  os.write(s.data(), std::streamsize(s.size()));
}

std::string read_string(std::istream& is) {
  const auto n = read_pod<std::uint64_t>(is);
  if (n > (1u << 30)) throw InvalidArgument("string length out of range");
  std::string s(n, '\0');
  is.read(s.data(), std::streamsize(n));
  if (!is) throw InvalidArgument("unexpected end of binary stream");
  return s;
}

}  // namespace io

namespace {
constexpr std::array<char, 8> kMagic{'G', 'N', 'S', 'E', 'F', 'L', 'D', '1'};
constexpr std::uint32_t kEndianTag = 0x01020304u;
}  // namespace

void write_field(std::ostream& os, const SpectralField& f) {
  os.write(kMagic.data(), kMagic.size());
  io::write_pod(os, kEndianTag);
  const auto& g = f.grid();
  io::write_pod<std::int32_t>(os, g.n_per_dim());
  io::write_pod<std::int32_t>(os, static_cast<std::int32_t>(f.rank()));
  io::write_pod<std::int32_t>(os, g.convention() == Convention::lattice ? 0 : 1);
  io::write_pod<std::int32_t>(os, g.dealias_rule() == DealiasRule::two_thirds ? 0 : 1);
  for (const auto& c : f.coeffs()) {
    io::write_pod(os, c.real());
    io::write_pod(os, c.imag());
  }
}

SpectralField read_field(std::istream& is) {
  std::array<char, 8> magic{};
  is.read(magic.data(), magic.size());
  if (!is || magic != kMagic) throw InvalidArgument("read_field: bad magic");
  const auto tag = io::read_pod<std::uint32_t>(is);
  if (tag != kEndianTag) throw InvalidArgument("read_field: endianness mismatch");
  const int n = io::read_pod<std::int32_t>(is);
  const int rank = io::read_pod<std::int32_t>(is);
  const int conv = io::read_pod<std::int32_t>(is);
  const int rule = io::read_pod<std::int32_t>(is);
  if (rank < 0 || rank > 2 || conv < 0 || conv > 1 || rule < 0 || rule > 1)
    throw InvalidArgument("read_field: corrupt header");
  const auto g = make_grid(n, rule == 0 ? DealiasRule::two_thirds : DealiasRule::none,
                           conv == 0 ? Convention::lattice : Convention::angular);
  SpectralField f(g, static_cast<Rank>(rank));
  for (auto& c : f.coeffs()) {
    const double re = io::read_pod<double>(is);
    const double im = io::read_pod<double>(is);
    c = Complex(re, im);
  }
  return f;
}

void write_mode_magnitudes_ndjson(std::ostream& os, const SpectralField& f,
                                  double threshold) {
  const auto& g = f.grid();
  for (int c = 0; c < f.components(); ++c) {
    auto comp = f.component(c);
    for (std::size_t i = 0; i < g.mode_count(); ++i) {
      const double a = std::abs(comp[i]);
      if (a <= threshold) continue;
      const auto k = g.wavevector(i);
      nlohmann::json j{{"c", c}, {"k", {k[0], k[1], k[2]}}, {"abs", a}};
      os << j.dump() << '\n';
    }
  }
}

}  // namespace gnse
