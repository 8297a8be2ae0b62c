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

#include "k0forge/serialize.hpp"

#include <cctype>

#include "k0forge/factor.hpp"

namespace k0forge::io {

json encode(const BigInt& n) {
  if (n.fits_slong_p()) return n.get_si();
  return n.get_str();
}

BigInt decode_bigint(const json& j) {
  if (j.is_number_integer()) return BigInt(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) {
    BigInt n;
    if (n.set_str(j.get<std::string>(), 10) != 0) throw PreconditionError("not an integer: " + j.dump());
    return n;
  }
  throw PreconditionError("not an integer: " + j.dump());
}

json encode(const IntPoly& f) {
  json a = json::array();
  for (const auto& c : f.coeffs()) a.push_back(encode(c));
  return a;
}

json encode(const FpPoly& f) { return json(f.coeffs()); }

json encode(const fusion::FusionRing& f) {
  const auto r = f.rank();
  json N = json::array();
  for (std::size_t i = 0; i < r; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < r; ++j) {
      json col = json::array();
      for (std::size_t k = 0; k < r; ++k) col.push_back(f.N(i, j, k));
      row.push_back(col);
    }
    N.push_back(row);
  }
  json j = {{"labels", f.labels()}, {"unit", f.unit()}, {"N", N}, {"dual", f.dual()}};
  if (const auto& d = f.dimension_character()) {
    j["dims"] = d->values;
    j["dims_modulus"] = encode(d->field.modulus());
    j["dims_p"] = d->field.characteristic();
  } else {
    j["dims"] = json::array();
  }
  return j;
}

fusion::FusionRing decode_fusion(const json& j) {
  try {
    const auto labels = j.at("labels").get<std::vector<std::string>>();
    const auto r = labels.size();
    const auto& N = j.at("N");
    std::vector<std::int64_t> structure(r * r * r);
    if (N.size() != r) throw PreconditionError("N must be rank x rank x rank");
    for (std::size_t a = 0; a < r; ++a) {
      if (N[a].size() != r) throw PreconditionError("N must be rank x rank x rank");
      for (std::size_t b = 0; b < r; ++b) {
        if (N[a][b].size() != r) throw PreconditionError("N must be rank x rank x rank");
        for (std::size_t c = 0; c < r; ++c) structure[(a * r + b) * r + c] = N[a][b][c].get<std::int64_t>();
      }
    }
    std::optional<fusion::DimensionCharacter> dims;
    if (j.contains("dims_modulus") && j.contains("dims") && !j.at("dims").empty()) {
      const PrimeField F(j.at("dims_p").get<std::uint64_t>());
      const FpPoly modulus = fp_poly(F, j.at("dims_modulus").get<std::vector<std::int64_t>>());
      if (modulus.degree() < 1 || modulus.lead() != 1 || !is_irreducible(modulus))
        throw PreconditionError("dims_modulus must be monic irreducible");
      fusion::DimensionCharacter d{ExtensionField(modulus), {}};
      for (const auto& v : j.at("dims")) d.values.push_back(d.field.from_poly(fp_poly(F, v.get<std::vector<std::int64_t>>())));
      dims = std::move(d);
    }
    return fusion::FusionRing(labels, j.at("unit").get<std::size_t>(), std::move(structure),
                              j.at("dual").get<std::vector<std::size_t>>(), std::move(dims));
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("malformed fusion ring: ") + e.what());
  }
}

json encode(const fusion::FusionValidation& v) {
  json j = {{"associative", v.associative}, {"commutative", v.commutative}, {"unit_law", v.unit_law},
            {"dual_involution", v.dual_involution}, {"nonnegative", v.nonnegative}};
  j["dimension_homomorphism"] = v.dimension_homomorphism ? json(*v.dimension_homomorphism) : json(nullptr);
  j["ok"] = v.ok();
  return j;
}

json encode(const modrep::JordanModule& m) { return {{"p", m.p()}, {"blocks", m.blocks()}}; }

modrep::JordanModule decode_jordan(const json& j) {
  try {
    return modrep::JordanModule(j.at("p").get<std::uint64_t>(), j.at("blocks").get<std::vector<int>>());
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("malformed module: ") + e.what());
  }
}

json encode(const fusion::K0IsomorphismCertificate& c) {
  json images = json::array();
  for (const auto& x : c.images) images.push_back(encode(IntPoly(x.coeffs())));
  json m = json::array();
  for (std::size_t i = 0; i < c.change_of_basis.rows; ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < c.change_of_basis.cols; ++k) row.push_back(encode(c.change_of_basis(i, k)));
    m.push_back(row);
  }
  return {{"ell", c.ell},
          {"labels", c.labels},
          {"images", images},
          {"change_of_basis", m},
          {"determinant", encode(c.determinant)},
          {"homomorphism", c.homomorphism},
          {"independent", c.independent},
          {"generates", c.generates},
          {"generator_minimal_polynomial", encode(c.generator_minimal_polynomial)},
          {"ok", c.ok()}};
}

json encode(const modrep::ModPCrossCheck& c) {
  const auto& r = c.reduction;
  json factors = json::array();
  for (const auto& f : r.factors) factors.push_back({{"factor", encode(f.factor)}, {"multiplicity", f.multiplicity}});
  json filtration = json::array();
  for (const auto& f : r.filtration)
    filtration.push_back({{"basis_index", f.basis_index}, {"layers", f.layer_dimensions}, {"ok", f.ok()}});
  return {{"p", c.p},
          {"ell", c.ell},
          {"labels", r.labels},
          {"description", r.description},
          {"monogenic", r.monogenic},
          {"generator", r.generator},
          {"generator_minimal_polynomial", encode(r.generator_minimal_polynomial)},
          {"factors", factors},
          {"filtration", filtration},
          {"products_agree", c.products_agree},
          {"images_independent", c.images_independent},
          {"residue_degrees_agree", c.residue_degrees_agree},
          {"ok", c.ok()}};
}

json encode(const numtheory::EllCertificate& c, const std::optional<numtheory::ContainmentResult>& containment) {
  json j = {{"p", c.target.p},   {"q", c.target.q},     {"n", c.target.n},
            {"n_used", c.n_used}, {"ell", encode(c.ell)}, {"ord", encode(c.ord)}};
  j["witness_poly"] = containment && containment->witness ? encode(containment->witness->residue_factor) : json::array();
  if (containment && containment->witness) {
    j["target_poly"] = encode(containment->witness->target_polynomial);
    j["root"] = encode(containment->witness->root);
  }
  j["smallest"] = c.smallest;
  j["splitting_agrees"] = c.splitting_agrees ? json(*c.splitting_agrees) : json(nullptr);
  j["contained"] = containment ? json(containment->contained) : json(nullptr);
  j["valid"] = c.valid();
  return j;
}

json encode(const presentation::RingPresentation& p) {
  using presentation::Mode;
  json rels = json::array();
  for (const auto& r : p.relations) {
    json terms = json::array();
    for (const auto& t : r.terms) {
      json factors = json::array();
      for (const auto& f : t) factors.push_back(f.is_constant() ? encode(f.as_constant()) : json(f.as_symbol()));
      terms.push_back(factors);
    }
    rels.push_back(terms);
  }
  return {{"schema", kSchemaVersion},
          {"base", p.base.fusion ? encode(*p.base.fusion) : json("Z")},
          {"gens", p.generators},
          {"rels", rels},
          {"mode", p.mode == Mode::commutative ? "commutative" : "associative"}};
}

presentation::RingPresentation decode_presentation(const json& j) {
  using namespace presentation;
  try {
    BaseRing base;
    const auto& b = j.at("base");
    if (b.is_string()) {
      if (b.get<std::string>() != "Z") throw PreconditionError("base must be \"Z\" or a fusion ring");
    } else {
      base = BaseRing::k0(decode_fusion(b));
    }
    const std::string mode = j.value("mode", std::string("commutative"));
    if (mode != "commutative" && mode != "associative") throw PreconditionError("mode must be commutative or associative");
    std::vector<FormalExpression> rels;
    for (const auto& r : j.at("rels")) {
      if (r.is_string()) {
        rels.push_back(parse_expression(r.get<std::string>()));
        continue;
      }
      FormalExpression e;
      for (const auto& t : r) {
        Term term;
        for (const auto& f : t) {
          if (f.is_number_integer()) {
            term.push_back(Factor::constant(decode_bigint(f)));
          } else {
            const auto s = f.get<std::string>();
            if (!s.empty() && (std::isdigit(static_cast<unsigned char>(s[0])) || s[0] == '-'))
              term.push_back(Factor::constant(decode_bigint(f)));
            else
              term.push_back(Factor::symbol(s));
          }
        }
        e.terms.push_back(std::move(term));
      }
      rels.push_back(std::move(e));
    }
    return present(std::move(base), j.at("gens").get<std::vector<std::string>>(), std::move(rels),
                   mode == "commutative" ? Mode::commutative : Mode::associative);
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("malformed presentation: ") + e.what());
  }
}

json encode(const filterprod::DensityReport& r) {
  json j = {{"polynomial", encode(r.polynomial)},
            {"sample_size", r.sample_size},
            {"largest_prime", r.largest_prime},
            {"hits", r.hits},
            {"empirical", r.empirical}};
  j["predicted"] = r.predicted ? json(*r.predicted) : json(nullptr);
  j["galois_group"] = r.galois_group ? json(*r.galois_group) : json(nullptr);
  return j;
}

}  // namespace k0forge::io
