#pragma once

// The subcommands behind the poissym executable. Each returns the report
// document and the process exit code:
//   0 every requested certificate passed, 1 a certificate failed,
//   2 input error, 3 resource cap.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "poissym/derham.hpp"
#include "poissym/errors.hpp"
#include "poissym/gbengine.hpp"
#include "poissym/parallel.hpp"
#include "poissym/poisson.hpp"
#include "poissym/problem_file.hpp"
#include "poissym/quotient.hpp"
#include "poissym/report.hpp"
#include "poissym/tangent.hpp"

namespace poissym {

namespace exit_code {
inline constexpr int pass = 0;
inline constexpr int certificate_failed = 1;
inline constexpr int input_error = 2;
inline constexpr int resource_cap = 3;
}  // namespace exit_code

struct CliOptions {
  std::optional<MonomialOrder> order;
  std::optional<unsigned> degree_bound;
  bool timings = true;
  unsigned threads = configured_threads();
};

struct CommandResult {
  Json report;
  int exit_code = exit_code::pass;
};

namespace detail {

inline Json report_head(const std::string& command, const VarRing& ring) {
  return Json{{"schema", report_schema}, {"command", command},   {"status", "pass"},
              {"exit_code", 0},          {"ring", to_json(ring)}, {"input", Json::object()},
              {"results", Json::object()}, {"certificates", Json::array()}};
}

/// Appends certificates in order and remembers the first failure.
class CertificateChain {
 public:
  explicit CertificateChain(Json& doc) : doc_(doc) {}

  bool add(const Certificate& c) {
    doc_["certificates"].push_back(to_json(c));
    if (!c.passed && !failed_) {
      failed_ = true;
      doc_["stopped_after"] = c.kind;
    }
    return c.passed;
  }

  bool failed() const noexcept { return failed_; }

 private:
  Json& doc_;
  bool failed_ = false;
};

inline CommandResult finish(Json doc, bool failed, const StageTimer& timer, const CliOptions& opts) {
  const int code = failed ? exit_code::certificate_failed : exit_code::pass;
  doc["status"] = failed ? "fail" : "pass";
  doc["exit_code"] = code;
  if (opts.timings) doc["timings"] = timer.to_json();
  return {std::move(doc), code};
}

inline const std::vector<Poly>& require_ideal(const ProblemFile& pf, const std::string& command) {
  if (!pf.ideal) throw InputError(command + " needs an [ideal] section");
  if (pf.ideal->empty()) throw InputError(command + ": the [ideal] section lists no generators");
  return *pf.ideal;
}

inline Json poisson_json(const PoissonStructure& pi) {
  Json out = Json::object();
  const auto& R = pi.ring();
  for (std::size_t i = 0; i < pi.nvars(); ++i)
    for (std::size_t j = i + 1; j < pi.nvars(); ++j)
      out["{" + R.name(i) + ", " + R.name(j) + "}"] = canonical_string(pi.entry(i, j), R);
  return out;
}

inline Json presentation_json(const DerPresentation& pres) {
  const auto& R = pres.ring();
  Json gens = Json::array();
  Json extras = Json::array();
  for (std::size_t k = 0; k < pres.size(); ++k) {
    const bool ham = pres.labels[k].is_hamiltonian();
    gens.push_back({{"name", pres.names[k]}, {"kind", ham ? "hamiltonian" : "extra"},
                    {"field", to_json(pres.generators[k], R)}});
    if (!ham) extras.push_back(pres.names[k]);
  }
  Json rels = Json::array();
  for (const auto& r : pres.relations.generators()) rels.push_back(to_json(r, R));
  return Json{{"generators", std::move(gens)}, {"extras", std::move(extras)}, {"relations", std::move(rels)}};
}

/// {x^i, f_mu} must lie in I for every variable and generator.
inline Certificate poisson_ideal_certificate(const Ideal& I, const PoissonStructure& pi) {
  Certificate cert = make_certificate("poisson_ideal", I);
  const auto& R = I.ring();
  const auto& gens = I.generators();
  for (std::size_t i = 0; i < R.size(); ++i)
    for (std::size_t mu = 0; mu < gens.size(); ++mu)
      cert.evidence.push_back({"{" + R.name(i) + ", " + canonical_string(gens[mu], R) + "}",
                               {i, mu},
                               bracket(R.var(i), gens[mu], pi)});
  settle(cert, I);
  return cert;
}

/// descent, closedness, delta_ham, nondegeneracy, stopping at the first
/// failure. `hamiltonian` is the presentation used for delta_ham.
inline void symplectic_chain(CertificateChain& chain, StageTimer& timer, const GramForm& w,
                             const DerPresentation& hamiltonian, const CliOptions& opts) {
  if (!chain.add(timer.run("descent", [&] { return check_descends(w); }))) return;
  if (!chain.add(timer.run("closedness", [&] { return closedness_check(w, opts.threads); }))) return;
  if (!chain.add(timer.run("delta_ham", [&] { return delta_ham_check(hamiltonian); }))) return;
  chain.add(timer.run("nondegeneracy", [&] { return nondegeneracy_check(w); }));
}

inline Json form_json(const GramForm& w) {
  const auto& R = w.presentation.ring();
  Json kernel = Json::array();
  for (const auto& k : form_kernel(w).generators()) kernel.push_back(to_json(k, R));
  Json out{{"gram", to_json(w.gram, R)}, {"determinant", determinant_json(w)}, {"kernel", std::move(kernel)}};
  if (w.isotropic_heuristic) out["isotropic_heuristic"] = true;
  if (!w.notes.empty()) out["notes"] = w.notes;
  return out;
}

}  // namespace detail

/// Reduced Gröbner basis of the [ideal] section.
inline CommandResult cmd_gb(const ProblemFile& pf, const CliOptions& opts = {}) {
  const auto& gens = detail::require_ideal(pf, "gb");
  const MonomialOrder ord = opts.order ? *opts.order : pf.options.order.value_or(MonomialOrder::grevlex());
  if (ord.kind() == MonomialOrder::Kind::elimination && ord.block() > pf.ring.size())
    throw InputError("elimination block larger than the number of variables");
  StageTimer timer;
  Json doc = detail::report_head("gb", pf.ring);
  doc["input"] = Json{{"ideal", to_json(gens, pf.ring)}, {"order", ord.name()}};
  const Ideal I(pf.ring, gens);
  const auto gb = timer.run("groebner_basis", [&] { return I.groebner_basis(ord); });
  Json basis = Json::array();
  for (const auto& g : gb) basis.push_back(canonical_string(g, pf.ring, ord));
  doc["results"]["groebner_basis"] = std::move(basis);
  if (ord.kind() == MonomialOrder::Kind::elimination) {
    Json elim = Json::array();
    for (const auto& g : gb) {
      bool free = true;
      for (std::size_t v = 0; v < ord.block() && free; ++v) free = g.is_free_of(v);
      if (free) elim.push_back(canonical_string(g, pf.ring, ord));
    }
    doc["results"]["elimination_ideal"] = std::move(elim);
  }
  return detail::finish(std::move(doc), false, timer, opts);
}

/// Generators of Der(A) (Hamiltonian ones first when a Poisson structure
/// is given) and their relation module.
inline CommandResult cmd_derivations(const ProblemFile& pf, const CliOptions& opts = {}) {
  const auto& gens = detail::require_ideal(pf, "derivations");
  StageTimer timer;
  Json doc = detail::report_head("derivations", pf.ring);
  doc["input"]["ideal"] = to_json(gens, pf.ring);
  if (pf.poisson) doc["input"]["poisson"] = detail::poisson_json(*pf.poisson);
  const Ideal I(pf.ring, gens);
  const auto pres = timer.run("der_presentation", [&] { return der_presentation(I, pf.poisson); });
  doc["results"] = detail::presentation_json(pres);
  return detail::finish(std::move(doc), false, timer, opts);
}

/// The symplectic pipeline on P/I: poisson_ideal, presentation, ω^Ham (or
/// the [gram] section), then descent, closedness, delta_ham and
/// nondegeneracy.
inline CommandResult cmd_symplectic(const ProblemFile& pf, const CliOptions& opts = {}) {
  const auto& gens = detail::require_ideal(pf, "symplectic");
  if (!pf.poisson) throw InputError("symplectic needs a [poisson] section");
  StageTimer timer;
  Json doc = detail::report_head("symplectic", pf.ring);
  doc["input"]["ideal"] = to_json(gens, pf.ring);
  doc["input"]["poisson"] = detail::poisson_json(*pf.poisson);
  const Ideal I(pf.ring, gens);
  detail::CertificateChain chain(doc);

  if (!chain.add(timer.run("poisson_ideal", [&] { return detail::poisson_ideal_certificate(I, *pf.poisson); })))
    return detail::finish(std::move(doc), true, timer, opts);

  const auto pres = timer.run("der_presentation", [&] { return der_presentation(I, pf.poisson); });
  doc["results"] = detail::presentation_json(pres);
  const GramForm w = pf.gram ? gram_form(pres, *pf.gram) : omega_ham(pres);
  if (pf.gram) doc["input"]["gram"] = to_json(*pf.gram, pf.ring);
  const Json form = detail::form_json(w);
  for (const auto& [k, v] : form.items()) doc["results"][k] = v;

  detail::symplectic_chain(chain, timer, w, pres, opts);
  return detail::finish(std::move(doc), chain.failed(), timer, opts);
}

/// The quotient pipeline for a finite group acting on a symplectic vector
/// space: invariants, relations, invariant fields and their push-forward,
/// the pushed Gram matrix, then the certificate chain on the quotient and
/// the optional base change.
inline CommandResult cmd_quotient(const ProblemFile& pf, const CliOptions& opts = {}) {
  if (!pf.group) throw InputError("quotient needs a [group] section");
  if (!pf.poisson) throw InputError("quotient needs a [poisson] section for the ambient symplectic structure");
  const auto bound = opts.degree_bound ? opts.degree_bound : pf.options.degree_bound;
  const VarRing& R = pf.ring;
  StageTimer timer;
  Json doc = detail::report_head("quotient", R);
  doc["input"]["poisson"] = detail::poisson_json(*pf.poisson);

  const FiniteGroupRep G(R, pf.group->generators);
  Json mats = Json::array();
  for (const auto& A : pf.group->generators) {
    Json m = Json::array();
    for (const auto& row : A) {
      Json r = Json::array();
      for (const auto& x : row) r.push_back(x.get_str());
      m.push_back(std::move(r));
    }
    mats.push_back(std::move(m));
  }
  doc["input"]["group_generators"] = std::move(mats);

  std::vector<Poly> invariants;
  if (pf.group->invariants) {
    invariants = *pf.group->invariants;
    timer.run("invariants", [&] { validate_invariants(G, invariants, bound); });
  } else {
    invariants = timer.run("invariants", [&] { return fundamental_invariants(G, bound); });
  }
  const HilbertData H = timer.run("relations", [&] { return hilbert_data(R, invariants, pf.group->target); });
  const VarRing& T = H.target;
  const PoissonStructure pi = induced_poisson(H, *pf.poisson);
  const auto upstairs = timer.run("invariant_fields", [&] { return invariant_derivations(G, bound); });

  // results are assembled locally: ordered_json keeps keys in a vector, so
  // references into doc do not survive later insertions
  Json res = Json::object();
  auto done = [&](bool failed) {
    doc["results"] = std::move(res);
    return detail::finish(std::move(doc), failed, timer, opts);
  };
  res["group_order"] = G.order();
  res["invariants"] = to_json(invariants, R);
  res["target_ring"] = to_json(T);
  res["relations"] = to_json(H.relations.generators(), T);
  res["induced_poisson"] = detail::poisson_json(pi);
  Json fields = Json::array();
  detail::CertificateChain chain(doc);

  if (!chain.add(timer.run("poisson_ideal", [&] { return detail::poisson_ideal_certificate(H.relations, pi); })))
    return done(true);

  const GramForm w = timer.run("pushed_symplectic", [&] { return pushed_symplectic(H, *pf.poisson, upstairs); });
  for (std::size_t k = 0; k < upstairs.size(); ++k)
    fields.push_back({{"name", w.presentation.names[k]},
                      {"upstairs", to_json(upstairs[k], R)},
                      {"pushed", to_json(w.presentation.generators[k], T)}});
  res["fields"] = std::move(fields);
  Json rels = Json::array();
  for (const auto& r : w.presentation.relations.generators()) rels.push_back(to_json(r, T));
  res["field_relations"] = std::move(rels);
  const Json form = detail::form_json(w);
  for (const auto& [k, v] : form.items()) res[k] = v;

  const DerPresentation hamiltonian =
      timer.run("der_presentation", [&] { return der_presentation(H.relations, pi); });
  detail::symplectic_chain(chain, timer, w, hamiltonian, opts);
  if (chain.failed()) return done(true);
  if (!chain.add(timer.run("injectivity", [&] { return injectivity_check(H, upstairs, w.presentation); })))
    return done(true);
  if (!chain.add(timer.run("surjectivity", [&] { return surjectivity_check(w.presentation); })))
    return done(true);

  if (pf.base_change) {
    const GramForm target = omega_ham(hamiltonian);
    Json B = Json::array();
    for (const auto& row : *pf.base_change) {
      Json r = Json::array();
      for (const auto& x : row) r.push_back(x.get_str());
      B.push_back(std::move(r));
    }
    doc["input"]["base_change"] = std::move(B);
    res["target_generators"] = detail::presentation_json(hamiltonian)["generators"];
    res["target_gram"] = to_json(target.gram, T);
    const auto bc =
        timer.run("base_change", [&] { return verify_base_change(H, upstairs, w, *pf.base_change, target); });
    if (chain.add(bc.downstairs)) chain.add(bc.upstairs);
  }
  return done(chain.failed());
}

}  // namespace poissym
