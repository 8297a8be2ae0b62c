// Copyright 2026 The k0forge Authors
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

// JSON encodings. Integers that fit in 64 bits are JSON numbers, larger ones
// decimal strings.

#pragma once

#include <optional>

#include "json.hpp"
#include "k0forge/filterprod.hpp"
#include "k0forge/fusion_ring.hpp"
#include "k0forge/modrep.hpp"
#include "k0forge/numtheory.hpp"
#include "k0forge/presentation.hpp"
#include "k0forge/tilting.hpp"

namespace k0forge::io {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

json encode(const BigInt& n);
BigInt decode_bigint(const json& j);

json encode(const IntPoly& f);  // ascending coefficients
json encode(const FpPoly& f);

/// {"labels", "unit", "N" (N[i][j][k]), "dual", "dims"}; "dims" holds field
/// elements as coefficient lists, with the field in "dims_modulus".
json encode(const fusion::FusionRing& f);
fusion::FusionRing decode_fusion(const json& j);
json encode(const fusion::FusionValidation& v);

json encode(const modrep::JordanModule& m);  // {"p", "blocks"}
modrep::JordanModule decode_jordan(const json& j);

json encode(const fusion::K0IsomorphismCertificate& c);
json encode(const modrep::ModPCrossCheck& c);

/// {"p", "q", "n", "ell", "ord", "witness_poly", ...}; witness_poly is the
/// residue factor of the containment witness when one is given.
json encode(const numtheory::EllCertificate& c, const std::optional<numtheory::ContainmentResult>& containment);

/// {"base", "gens", "rels", "mode"}: base is "Z" or a fusion ring object,
/// each relation a list of terms, each term a list of factors (integers or
/// symbol strings).
json encode(const presentation::RingPresentation& p);
presentation::RingPresentation decode_presentation(const json& j);

json encode(const filterprod::DensityReport& r);  // summary, without rows

}  // namespace k0forge::io
