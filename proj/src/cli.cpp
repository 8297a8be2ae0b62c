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

#include "k0forge/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "k0forge/parallel.hpp"
#include "k0forge/primes.hpp"
#include "k0forge/serialize.hpp"

namespace k0forge::cli {
namespace {

using io::json;

/// A certificate that did not verify; `what()` is the detail.
class CertificateFailure : public std::runtime_error {
 public:
  CertificateFailure(std::string name, const std::string& detail)
      : std::runtime_error(detail), name_(std::move(name)) {}
  const std::string& name() const { return name_; }

 private:
  std::string name_;
};

json header(const std::string& command) { return {{"schema", io::kSchemaVersion}, {"command", command}}; }

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

std::string label(const std::string& kind, std::uint64_t p, unsigned ell) {
  return kind + "(p=" + std::to_string(p) + ", ell=" + std::to_string(ell) + ")";
}

// ---- fusion / k0iso / modp ----

int cmd_fusion(std::uint64_t p, unsigned ell, bool even, std::ostream& out) {
  auto f = fusion::build_semisimple_fusion(p, ell);
  if (even) f = fusion::even_subring(f);
  const auto v = f.validate();
  json j = header("fusion");
  j["p"] = p;
  j["ell"] = ell;
  j["even"] = even;
  j["ring"] = io::encode(f);
  j["validation"] = io::encode(v);
  emit(out, j);
  if (!v.ok()) throw CertificateFailure(label("fusion", p, ell), "fusion ring axioms do not hold");
  return kExitOk;
}

int cmd_k0iso(std::uint64_t p, unsigned ell, std::ostream& out) {
  const auto even = fusion::even_subring(fusion::build_semisimple_fusion(p, ell));
  fusion::K0IsomorphismCertificate c;
  try {
    c = fusion::k0_isomorphism_certificate(even);
  } catch (const VerificationError& e) {
    throw CertificateFailure(label("k0iso", p, ell), e.what());
  }
  json j = header("k0iso");
  j["p"] = p;
  j["certificate"] = io::encode(c);
  emit(out, j);
  if (!c.ok()) throw CertificateFailure(label("k0iso", p, ell), "certificate checks failed");
  return kExitOk;
}

int cmd_modp(std::uint64_t p, unsigned ell, std::ostream& out) {
  const auto c = modrep::mod_p_cross_check(p, ell);
  json j = header("modp");
  j["certificate"] = io::encode(c);
  emit(out, j);
  if (!c.ok()) {
    std::string what = !c.reduction.verified()      ? "reduction or filtration check failed"
                       : !c.products_agree          ? "products disagree with the residue fields"
                       : !c.images_independent      ? "images are dependent"
                                                    : "residue degrees disagree";
    throw CertificateFailure(label("modp", p, ell), what);
  }
  return kExitOk;
}

// ---- findell ----

int cmd_findell(std::uint64_t p, std::uint64_t q, unsigned n, std::ostream& out) {
  const numtheory::FieldTarget target{p, q, n};
  const auto res = numtheory::find_ell(target);
  const std::string name = "findell(p=" + std::to_string(p) + ", q=" + std::to_string(q) + ", n=" + std::to_string(n) + ")";
  json j = header("findell");
  if (res.inconclusive()) {
    j["inconclusive"] = true;
    j["note"] = res.note;
    emit(out, j);
    throw CertificateFailure(name, "inconclusive: " + res.note);
  }
  const auto& cert = *res.certificate;
  std::optional<numtheory::ContainmentResult> contained;
  try {
    contained = numtheory::containment_check(cert, target);
  } catch (const VerificationError& e) {
    throw CertificateFailure(name, e.what());
  }
  j.update(io::encode(cert, contained));
  if (!res.note.empty()) j["note"] = res.note;
  emit(out, j);
  if (!cert.valid()) throw CertificateFailure(name, "certificate does not verify");
  if (!contained->contained) throw CertificateFailure(name, "containment failed: " + contained->reason);
  return kExitOk;
}

// ---- gcdlemma ----

struct GcdRow {
  std::uint64_t p, q;
  unsigned n;
  BigInt lhs, rhs;
  bool holds;
};

int cmd_gcdlemma(std::uint64_t max_p, std::uint64_t max_q, unsigned max_n, const std::string& format, std::ostream& out) {
  if (max_n < 1) throw PreconditionError("--max-n must be at least 1");
  std::vector<GcdRow> rows;
  for (auto p : primes_up_to(max_p))
    for (auto q : primes_up_to(max_q))
      for (unsigned n = 1; n <= max_n; ++n) rows.push_back({p, q, n, 0, 0, false});
  parallel_for(rows.size(), [&](std::size_t i) {
    auto& r = rows[i];
    try {
      const auto g = numtheory::gcd_lemma_check(r.p, r.q, r.n);
      r.lhs = g.lhs;
      r.rhs = g.rhs;
      r.holds = g.holds();
    } catch (const VerificationError&) {
      r.holds = false;
    }
  });

  if (format == "json") {
    json j = header("gcdlemma");
    json arr = json::array();
    for (const auto& r : rows)
      arr.push_back({{"p", r.p}, {"q", r.q}, {"n", r.n}, {"lhs", io::encode(r.lhs)}, {"rhs", io::encode(r.rhs)}, {"holds", r.holds}});
    j["rows"] = arr;
    emit(out, j);
  } else if (format == "csv") {
    out << "p,q,n,lhs,rhs,holds\n";
    for (const auto& r : rows) out << r.p << ',' << r.q << ',' << r.n << ',' << r.lhs << ',' << r.rhs << ',' << r.holds << '\n';
  } else {
    out << std::setw(4) << "p" << std::setw(4) << "q" << std::setw(3) << "n" << std::setw(8) << "lhs" << std::setw(8) << "rhs"
        << "  holds\n";
    for (const auto& r : rows)
      out << std::setw(4) << r.p << std::setw(4) << r.q << std::setw(3) << r.n << std::setw(8) << r.lhs << std::setw(8) << r.rhs
          << "  " << (r.holds ? "yes" : "NO") << '\n';
  }
  for (const auto& r : rows)
    if (!r.holds)
      throw CertificateFailure("gcdlemma(p=" + std::to_string(r.p) + ", q=" + std::to_string(r.q) + ", n=" + std::to_string(r.n) + ")",
                               "gcd identity fails");
  return kExitOk;
}

// ---- density ----

IntPoly parse_univariate(const std::string& text) {
  const auto e = presentation::parse_expression(text);
  std::vector<BigInt> c;
  for (const auto& t : e.terms) {
    BigInt k = 1;
    std::size_t d = 0;
    for (const auto& f : t) {
      if (f.is_constant())
        k *= f.as_constant();
      else if (f.as_symbol() == "x")
        ++d;
      else
        throw PreconditionError("--poly must be a polynomial in x, found '" + f.as_symbol() + "'");
    }
    if (c.size() <= d) c.resize(d + 1, 0);
    c[d] += k;
  }
  return IntPoly(std::move(c));
}

int cmd_density(const std::string& poly, std::size_t primes, const std::string& format, std::ostream& out) {
  const auto r = filterprod::root_density(parse_univariate(poly), primes);
  if (format == "csv") {
    out << filterprod::density_csv(r);
  } else {
    json j = header("density");
    j.update(io::encode(r));
    emit(out, j);
  }
  return kExitOk;
}

// ---- present ----

presentation::TargetValue parse_value(const presentation::Target& t, const json& v) {
  using K = presentation::Target::Kind;
  switch (t.kind) {
    case K::rationals: {
      Rational r;
      if (v.is_number_integer()) return Rational(io::decode_bigint(v));
      if (!v.is_string() || r.set_str(v.get<std::string>(), 10) != 0)
        throw PreconditionError("rational image must be an integer or \"a/b\": " + v.dump());
      if (r.get_den() == 0) throw PreconditionError("zero denominator: " + v.dump());
      r.canonicalize();
      return r;
    }
    case K::integers_mod:
      return io::decode_bigint(v);
    case K::cyclotomic: {
      std::vector<BigInt> c;
      for (const auto& x : v) c.push_back(io::decode_bigint(x));
      return cyclo::CyclotomicElement(t.level, std::move(c));
    }
    case K::fusion_k0: {
      std::vector<BigInt> c;
      for (const auto& x : v) c.push_back(io::decode_bigint(x));
      if (c.size() != t.fusion->rank()) throw PreconditionError("fusion image needs one coordinate per basis element");
      return c;
    }
    case K::presented:
      return presentation::parse_expression(v.get<std::string>());
  }
  throw PreconditionError("unknown target");
}

presentation::Target parse_target(const json& t) {
  const auto kind = t.at("kind").get<std::string>();
  if (kind == "rationals") return presentation::Target::rationals();
  if (kind == "integers_mod") return presentation::Target::integers_mod(io::decode_bigint(t.at("modulus")));
  if (kind == "cyclotomic") return presentation::Target::cyclotomic(t.at("ell").get<unsigned>());
  if (kind == "fusion_k0") {
    if (t.contains("ring")) return presentation::Target::fusion_k0(io::decode_fusion(t.at("ring")));
    auto f = fusion::build_semisimple_fusion(t.at("p").get<std::uint64_t>(), t.at("ell").get<unsigned>());
    if (t.value("even", false)) f = fusion::even_subring(f);
    return presentation::Target::fusion_k0(std::move(f));
  }
  if (kind == "presented") return presentation::Target::presented(io::decode_presentation(t.at("presentation")));
  throw PreconditionError("unknown target kind '" + kind + "'");
}

std::string verdict_name(presentation::Verdict v) {
  switch (v) {
    case presentation::Verdict::equal: return "equal";
    case presentation::Verdict::different: return "different";
    case presentation::Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

std::string state_name(presentation::WitnessState s) {
  switch (s) {
    case presentation::WitnessState::allocated: return "allocated";
    case presentation::WitnessState::derived: return "derived";
    case presentation::WitnessState::discharged: return "discharged";
  }
  return "?";
}

json encode_witnesses(const std::vector<presentation::HellerWitness>& ws) {
  json arr = json::array();
  for (const auto& w : ws)
    arr.push_back({{"relation", w.relation_index}, {"O", w.O}, {"Y", w.Y}, {"Z", w.Z}, {"J", w.J},
                   {"state", state_name(w.state)}, {"checks", w.check()}});
  return arr;
}

int cmd_present(const std::string& path, unsigned depth, std::ostream& out) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot read " + path);
  json file;
  try {
    file = json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(path + ": " + e.what());
  }
  if (file.contains("schema") && file.at("schema") != io::kSchemaVersion)
    throw PreconditionError("unsupported schema " + file.at("schema").dump());
  const auto pres = io::decode_presentation(file);
  presentation::EqualityOptions opts;
  opts.depth = depth;

  json j = header("present");
  j["presentation"] = io::encode(pres);
  j["family"] = presentation::family_name(presentation::classify(pres));
  j["witnesses"] = encode_witnesses(pres.witnesses);

  std::optional<std::string> failure;
  json checks = json::array();
  if (file.contains("checks")) {
    for (const auto& c : file.at("checks")) {
      const auto lhs = c.at("lhs").get<std::string>();
      const auto rhs = c.at("rhs").get<std::string>();
      const auto expect = c.value("expect", std::string("equal"));
      if (expect != "equal" && expect != "different") throw PreconditionError("expect must be equal or different");
      const auto r = presentation::equal(pres, presentation::parse_expression(lhs), presentation::parse_expression(rhs), opts);
      const bool ok = verdict_name(r.verdict) == expect;
      json row = {{"lhs", lhs}, {"rhs", rhs}, {"expect", expect}, {"verdict", verdict_name(r.verdict)}, {"ok", ok}};
      if (r.separating_map) row["separating_map"] = r.separating_map->description;
      if (!r.note.empty()) row["note"] = r.note;
      checks.push_back(row);
      if (!ok && !failure) failure = "check " + lhs + " vs " + rhs + ": expected " + expect + ", got " + verdict_name(r.verdict);
    }
  }
  j["checks"] = checks;

  if (file.contains("target")) {
    const auto target = parse_target(file.at("target"));
    presentation::VersalMap map;
    map.generator_images.resize(pres.generators.size());
    if (file.contains("images")) {
      for (const auto& [g, v] : file.at("images").items()) {
        const auto idx = pres.generator_index(g);
        if (!idx) throw PreconditionError("image for unknown generator '" + g + "'");
        map.generator_images[*idx] = parse_value(target, v);
      }
    }
    if (file.contains("base_images")) {
      std::vector<presentation::TargetValue> b;
      for (const auto& v : file.at("base_images")) b.push_back(parse_value(target, v));
      map.base_images = std::move(b);
    }
    try {
      const auto cert = presentation::verify_versal_factorization(pres, target, map);
      j["versal"] = {{"target", cert.target},
                     {"generator_images", cert.generator_images},
                     {"solved", cert.solved},
                     {"relation_images", cert.relation_images},
                     {"witnesses", encode_witnesses(cert.witnesses)},
                     {"ok", cert.ok()}};
      if (!cert.ok() && !failure) failure = "versal factorization into " + cert.target;
    } catch (const VerificationError& e) {
      j["versal"] = {{"target", target.name()}, {"ok", false}, {"error", e.what()}};
      if (!failure) failure = std::string("versal factorization: ") + e.what();
    }
  }
  const bool witnesses_ok = std::all_of(pres.witnesses.begin(), pres.witnesses.end(),
                                        [](const presentation::HellerWitness& w) { return w.check(); });
  if (!witnesses_ok && !failure) failure = "Heller witnesses";
  j["ok"] = !failure;
  emit(out, j);
  if (failure) throw CertificateFailure("present(" + path + ")", *failure);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"k0forge: exact K0-level certificates"};
  app.require_subcommand(1);

  std::uint64_t p = 0, q = 0;
  unsigned ell = 0, n = 1, depth = 10;
  bool even = false;
  std::string format = "json", file, poly;
  std::size_t primes = 10000;
  std::uint64_t max_p = 13, max_q = 13;
  unsigned max_n = 4;

  auto* fusion_cmd = app.add_subcommand("fusion", "build and validate the semisimplified fusion ring");
  fusion_cmd->add_option("--p", p, "characteristic")->required();
  fusion_cmd->add_option("--ell", ell, "odd prime level")->required();
  fusion_cmd->add_flag("--even", even, "restrict to the even part");

  auto* k0_cmd = app.add_subcommand("k0iso", "certificate identifying the even ring with Z[zeta + zeta^-1]");
  k0_cmd->add_option("--p", p)->required();
  k0_cmd->add_option("--ell", ell)->required();

  auto* findell_cmd = app.add_subcommand("findell", "find ell with ord_ell(p) = q^n and check containment");
  findell_cmd->add_option("--p", p)->required();
  findell_cmd->add_option("--q", q)->required();
  findell_cmd->add_option("--n", n)->required();

  auto* gcd_cmd = app.add_subcommand("gcdlemma", "verify the gcd identity over a grid of (p, q, n)");
  gcd_cmd->add_option("--max-p", max_p)->capture_default_str();
  gcd_cmd->add_option("--max-q", max_q)->capture_default_str();
  gcd_cmd->add_option("--max-n", max_n)->capture_default_str();
  gcd_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "csv", "table"}))->capture_default_str();

  auto* present_cmd = app.add_subcommand("present", "load a presentation file and verify its checks");
  present_cmd->add_option("--file", file)->required();
  present_cmd->add_option("--depth", depth, "rewriting passes for generic presentations")->capture_default_str();

  auto* density_cmd = app.add_subcommand("density", "fraction of the first N primes where a polynomial has a root");
  density_cmd->add_option("--poly", poly, "polynomial in x, e.g. \"x^2 + 1\"")->required();
  density_cmd->add_option("--primes", primes, "N")->capture_default_str();
  density_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

  auto* modp_cmd = app.add_subcommand("modp", "cross-check K0 of the even ring modulo p");
  modp_cmd->add_option("--p", p)->required();
  modp_cmd->add_option("--ell", ell)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*fusion_cmd) return cmd_fusion(p, ell, even, out);
    if (*k0_cmd) return cmd_k0iso(p, ell, out);
    if (*findell_cmd) return cmd_findell(p, q, n, out);
    if (*gcd_cmd) return cmd_gcdlemma(max_p, max_q, max_n, format, out);
    if (*present_cmd) return cmd_present(file, depth, out);
    if (*density_cmd) return cmd_density(poly, primes, format, out);
    if (*modp_cmd) return cmd_modp(p, ell, out);
  } catch (const CertificateFailure& e) {
    err << "verification failed: " << e.name() << ": " << e.what() << '\n';
    return kExitVerification;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const VerificationError& e) {
    err << "verification failed: " << e.what() << '\n';
    return kExitVerification;
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed input: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace k0forge::cli
