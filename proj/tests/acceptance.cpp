// Acceptance run: one PASS/FAIL line per criterion, exit status 0 only when
// every criterion passes.

#include <algorithm>
#include <cstdio>
#include <exception>
#include <functional>
#include <string>
#include <vector>

#include "poissym/cli.hpp"
#include "support.hpp"

using namespace poissym;
using poissym::testing::P;
using poissym::testing::RandomPolys;
using poissym::testing::V;

namespace {

const VarRing R3 = VarRing::indexed("x", 3);
const VarRing QP({"q", "p"});
const VarRing XY({"x", "y"});

Poly f() { return P(R3, "x1*x2 - x3^2"); }
Ideal cone() { return Ideal(R3, {f()}); }
PoissonStructure cone_pi() { return PoissonStructure::from_upper(R3, {P(R3, "4*x3"), P(R3, "2*x1"), P(R3, "-2*x2")}); }

PolyMatrix matrix(const VarRing& r, std::vector<std::vector<const char*>> rows) {
  std::vector<std::vector<Poly>> out;
  for (const auto& row : rows) {
    out.emplace_back();
    for (const char* s : row) out.back().push_back(P(r, s));
  }
  return PolyMatrix::from_rows(out, r.size());
}

PolyMatrix expected_gram() {
  return matrix(R3, {{"0", "-4*x3", "-2*x1", "2*x1"},
                     {"4*x3", "0", "2*x2", "0"},
                     {"2*x1", "-2*x2", "0", "x3"},
                     {"-2*x1", "0", "-x3", "0"}});
}

PolyMatrix expected_relations() {
  return matrix(R3, {{"x2", "0", "0", "-x3"},
                     {"0", "x1", "x3", "0"},
                     {"-2*x3", "0", "0", "2*x1"},
                     {"-2*x3", "2*x3", "2*x2", "2*x1"}});
}

std::vector<ModVec> hamiltonian_fields_and_euler() {
  return {V(R3, {"0", "4*x3", "2*x1"}), V(R3, {"-4*x3", "0", "-2*x2"}), V(R3, {"-2*x1", "2*x2", "0"}),
          V(R3, {"2*x1", "0", "x3"})};
}

bool all_in(const PolyMatrix& M, const Ideal& I) {
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j)
      if (!I.contains(M.at(i, j))) return false;
  return true;
}

/// X(g) ∈ I for every generator g.
bool tangent(const ModVec& X, const Ideal& I) {
  for (const auto& g : I.generators())
    if (!I.contains(apply_field(X, g))) return false;
  return true;
}

struct Outcome {
  bool passed;
  std::string detail;
};

Outcome check(bool ok, std::string detail) { return {ok, std::move(detail)}; }

Outcome bracket_table() {
  const auto pi = cone_pi();
  const std::vector<std::vector<const char*>> table{
      {"0", "4*x3", "2*x1"}, {"-4*x3", "0", "-2*x2"}, {"-2*x1", "2*x2", "0"}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      if (bracket(R3.var(i), R3.var(j), pi) != P(R3, table[i][j]))
        return check(false, "entry {x" + std::to_string(i + 1) + ", x" + std::to_string(j + 1) + "} differs");
  return check(jacobi_check(pi).holds, "9 entries match; Jacobi identity");
}

Outcome poissoffel_symbols() {
  const auto r = poisson_ideal_check(cone(), cone_pi());
  if (!r.is_poisson) return check(false, "ideal is not Poisson");
  for (std::size_t i = 0; i < 3; ++i)
    if (!bracket(R3.var(i), f(), cone_pi()).is_zero()) return check(false, "f is not a Casimir");
  return check(r.witness.all_zero(), "f is a Casimir; all Poissoffel symbols are 0");
}

Outcome derivation_module() {
  const auto T = tangent_derivations(cone());
  for (const auto& X : T)
    if (!tangent(X, cone())) return check(false, "a returned field is not tangent");
  const bool equal = module_equal(SubModule(3, 3, T), SubModule(3, 3, hamiltonian_fields_and_euler()), cone());
  const auto pres = der_presentation(cone(), cone_pi());
  return check(equal && pres.extra_count() == 1,
               "module-equal to the Hamiltonian fields plus X4; extras = " + std::to_string(pres.extra_count()));
}

Outcome jacobian_intersection() {
  const Ideal jac = jacobian_ideal(f(), R3);
  const Ideal meet = ideal_intersection(jac, cone());
  if (meet.groebner_basis() != cone().groebner_basis()) return check(false, "intersection differs from (f)");
  const Poly two_f = Rational(2) * f();
  const auto m = ideal_membership(two_f, jac);
  if (!m.member || !m.witness) return check(false, "2f not found in the Jacobian ideal");
  const auto& gens = jac.generators();
  Poly sum = R3.zero();
  for (std::size_t j = 0; j < gens.size(); ++j) sum += (*m.witness)[j] * gens[j];
  if (sum != two_f) return check(false, "membership witness does not recombine to 2f");
  // the Euler lift (2x1, 0, x3) and the computed one differ by a syzygy
  const std::vector<Poly> euler{P(R3, "2*x1"), P(R3, "0"), P(R3, "x3")};
  Poly diff = R3.zero();
  for (std::size_t j = 0; j < 3; ++j) diff += (euler[j] - (*m.witness)[j]) * gens[j];
  return check(diff.is_zero(), "(Jac f) ∩ (f) = (f); 2f = 2*x1*df/dx1 + x3*df/dx3 re-checked");
}

Outcome gram_and_determinant() {
  const GramForm w = omega_ham(der_presentation(cone(), cone_pi()));
  if (w.gram != expected_gram()) return check(false, "Gram matrix differs");
  const Poly det = determinant(expected_gram());
  const auto d = gram_determinant(w);
  const bool ok = d.raw == det && det == Rational(16) * f() * f() && d.reduced.is_zero() && cone().contains(det);
  return check(ok, "gram matches entrywise; det = " + canonical_string(d.raw, R3));
}

Outcome descent_and_kernel() {
  const GramForm w = omega_ham(der_presentation(cone(), cone_pi()));
  const bool zero_product = all_in(w.gram * expected_relations(), cone());
  const bool kernel = module_equal(form_kernel(w), SubModule(4, 3, expected_relations().columns()), cone());
  return check(zero_product && kernel && check_descends(w).passed,
               "gram * relations ≡ 0 mod (f); ker ω = column span of the relations");
}

Outcome closedness() {
  const GramForm w = omega_ham(der_presentation(cone(), cone_pi()));
  const Certificate c = closedness_check(w);
  const std::vector<std::vector<std::size_t>> wanted{{0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
  std::size_t found = 0;
  for (const auto& e : c.evidence)
    if (std::find(wanted.begin(), wanted.end(), e.tuple) != wanted.end()) {
      if (!normal_form(e.residual, cone()).is_zero()) return check(false, e.label + " does not vanish");
      ++found;
    }
  return check(c.passed && found == 3, "3 displayed triples vanish mod (f)");
}

Outcome z2_quotient() {
  const RationalMatrix minus_one{{Rational(-1), Rational(0)}, {Rational(0), Rational(-1)}};
  const FiniteGroupRep G(QP, {minus_one});
  const auto invs = fundamental_invariants(G);
  const std::vector<Poly> reference{P(QP, "q^2"), P(QP, "p^2"), P(QP, "q*p")};
  const HilbertData mine = hilbert_data(QP, invs);
  const HilbertData H = hilbert_data(QP, reference);
  for (const auto& u : reference)
    if (!mine.rewrite(u)) return check(false, "a reference invariant is outside the computed subalgebra");
  for (const auto& u : invs)
    if (!H.rewrite(u)) return check(false, "a computed invariant is outside k[q^2, p^2, qp]");
  if (H.relations.groebner_basis() != Ideal(R3, {P(R3, "x3^2 - x1*x2")}).groebner_basis())
    return check(false, "relation ideal differs");

  const std::vector<std::pair<ModVec, ModVec>> table{
      {V(QP, {"q", "0"}), V(R3, {"2*x1", "0", "x3"})},
      {V(QP, {"0", "q"}), V(R3, {"0", "2*x3", "x1"})},
      {V(QP, {"p", "0"}), V(R3, {"2*x3", "0", "x2"})},
      {V(QP, {"0", "p"}), V(R3, {"0", "2*x2", "x3"})}};
  for (const auto& [up, down] : table)
    if (push_derivation(up, H) != down) return check(false, "pushed field differs from the substitution table");

  const auto ambient = PoissonStructure::canonical(QP);
  const auto Y = invariant_derivations(G);
  const GramForm w = pushed_symplectic(H, ambient, Y);
  const auto hamiltonian = der_presentation(H.relations, induced_poisson(H, ambient));
  const bool four = check_descends(w).passed && closedness_check(w).passed && delta_ham_check(hamiltonian).passed &&
                    nondegeneracy_check(w).passed;
  if (!four) return check(false, "a pushed_symplectic certificate failed");
  const RationalMatrix B{{Rational(0), Rational(0), Rational(-1), Rational(1)},
                         {Rational(2), Rational(0), Rational(0), Rational(0)},
                         {Rational(0), Rational(-2), Rational(0), Rational(0)},
                         {Rational(0), Rational(0), Rational(1), Rational(0)}};
  const auto bc = verify_base_change(H, Y, w, B, omega_ham(hamiltonian));
  return check(bc.downstairs.passed && bc.upstairs.passed,
               "invariants, relation, field table, 4 certificates and both base-change identities");
}

Outcome property_suites() {
  RandomPolys gen(2024);
  // reduced Gröbner bases do not depend on generator order
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Poly> gens;
    for (int i = 0; i < 1 + trial % 3; ++i) gens.push_back(gen.nonzero(3, 3, 3));
    const auto reference = buchberger(gens);
    auto less = [](const Poly& a, const Poly& b) { return structural_compare(a, b) < 0; };
    std::sort(gens.begin(), gens.end(), less);
    do {
      if (buchberger(gens) != reference) return check(false, "GB depends on generator order");
    } while (std::next_permutation(gens.begin(), gens.end(), less));
  }
  // syzygies really are relations
  for (int trial = 0; trial < 15; ++trial) {
    std::vector<ModVec> vs;
    for (int i = 0; i < 3; ++i) vs.push_back(ModVec({gen.poly(3, 2, 3), gen.poly(3, 2, 3)}));
    for (const auto& s : syzygies(vs, 3).generators()) {
      ModVec sum(2, 3);
      for (std::size_t i = 0; i < vs.size(); ++i) sum += s[i] * vs[i];
      if (!sum.is_zero()) return check(false, "a syzygy does not vanish");
    }
  }
  // bracket axioms
  const auto pi = cone_pi();
  for (int trial = 0; trial < 40; ++trial) {
    const Poly a = gen.poly(3, 3, 3), b = gen.poly(3, 3, 3), c = gen.poly(3, 3, 3);
    const bool ok = bracket(a, b, pi) == -bracket(b, a, pi) &&
                    bracket(a, b * c, pi) == bracket(a, b, pi) * c + b * bracket(a, c, pi) &&
                    (bracket(a, bracket(b, c, pi), pi) + bracket(b, bracket(c, a, pi), pi) +
                     bracket(c, bracket(a, b, pi), pi))
                        .is_zero();
    if (!ok) return check(false, "bracket axiom violated");
  }
  // d∘d = 0 on functions; cup graded commutativity
  const auto pres = der_presentation(cone(), pi);
  for (int trial = 0; trial < 5; ++trial) {
    const Cochain dd = d_naive(d_naive(Cochain::function(gen.poly(3, 3, 4), 4), pres), pres);
    if (!dd.values().empty()) return check(false, "d∘d is not zero");
  }
  auto random_cochain = [&](std::size_t arity) {
    Cochain c(arity, 4, 3);
    for (const auto& t : Cochain::increasing_tuples(4, arity)) c.set(t, gen.poly(3, 2, 2));
    return c;
  };
  for (std::size_t p = 0; p <= 2; ++p)
    for (std::size_t q = 0; q <= 2; ++q) {
      const Cochain a = random_cochain(p), b = random_cochain(q);
      const Cochain ab = cup_product(a, b, pres), ba = cup_product(b, a, pres);
      for (const auto& t : Cochain::increasing_tuples(4, p + q))
        if (ab.value(t) != ((p * q) % 2 ? -ba.value(t) : ba.value(t)))
          return check(false, "cup product is not graded commutative");
    }
  // cusp: tangency by membership, and the two expected fields generate
  const Ideal cusp(XY, {P(XY, "y^2 - x^3")});
  const auto T = tangent_derivations(cusp);
  for (const auto& X : T)
    if (!tangent(X, cusp)) return check(false, "cusp field not tangent");
  const std::vector<ModVec> expected{V(XY, {"2*x", "3*y"}), V(XY, {"2*y", "3*x^2"})};
  return check(module_equal(SubModule(2, 2, T), SubModule(2, 2, expected), cusp),
               "GB permutations (50 ideals), syzygies, bracket axioms, d∘d, cup, cusp");
}

Outcome negative_controls() {
  CliOptions opts;
  opts.timings = false;
  struct Control {
    const char* file;
    std::function<CommandResult(const ProblemFile&, const CliOptions&)> run;
    const char* stage;
  };
  const std::vector<Control> controls{
      {"double_cone_bad_gram.problem", cmd_symplectic, "descent"},
      {"double_cone_bad_bracket.problem", cmd_symplectic, "poisson_ideal"},
      {"z2_bad_basechange.problem", cmd_quotient, "base_change"}};
  for (const auto& c : controls) {
    const auto r = c.run(load_problem(std::string(POISSYM_PROBLEMS_DIR) + "/" + c.file), opts);
    if (r.exit_code == 0 || r.report.value("stopped_after", std::string()) != c.stage)
      return check(false, std::string(c.file) + " did not fail at " + c.stage);
  }
  return check(true, "gram sign -> descent, bracket -> poisson_ideal, base change -> base_change; exit 1");
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, Outcome (*)()>> criteria{
      {"double-cone bracket table", bracket_table},
      {"Casimir and Poissoffel symbols", poissoffel_symbols},
      {"derivation module", derivation_module},
      {"Jacobian intersection", jacobian_intersection},
      {"Gram matrix and determinant", gram_and_determinant},
      {"descent and kernel", descent_and_kernel},
      {"closedness", closedness},
      {"Z2 quotient end to end", z2_quotient},
      {"property suites", property_suites},
      {"negative controls", negative_controls}};
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    Outcome o{false, ""};
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.passed) ++failures;
    std::printf("%s %2zu %s: %s\n", o.passed ? "PASS" : "FAIL", k + 1, criteria[k].first, o.detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}
