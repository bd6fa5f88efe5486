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

#include <cstdint>
#include <iosfwd>
#include <istream>
#include <ostream>
#include <string>

#include "gnse/errors.hpp"
#include "gnse/field.hpp"

namespace gnse {

namespace io {

template <class T>
void write_pod(std::ostream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T read_pod(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw InvalidArgument("unexpected end of binary stream");
  return v;
}

void write_string(std::ostream& os, const std::string& s);
std::string read_string(std::istream& is);

}  // namespace io

/// Binary field container:
///   8 bytes  magic "GNSEFLD1"
///   u32      endianness tag 0x01020304 (written natively)
///   i32 × 4  n_per_dim, rank (0 scalar, 1 vector, 2 matrix), convention
///            (0 lattice, 1 angular), dealias rule (0 two_thirds, 1 none)
///   f64 × 2  (re, im) per coefficient, row-major over
///            (component, k0, k1, k2) with k_j ascending from −n/2 to n/2.
void write_field(std::ostream& os, const SpectralField& f);
SpectralField read_field(std::istream& is);

/// One JSON object per line: {"c":component,"k":[k0,k1,k2],"abs":|f̂|}.
/// Modes with |f̂| ≤ threshold are skipped.
void write_mode_magnitudes_ndjson(std::ostream& os, const SpectralField& f,
                                  double threshold = 0.0);

}  // namespace gnse
