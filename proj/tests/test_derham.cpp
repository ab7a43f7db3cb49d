#include <catch_amalgamated.hpp>

#include "poissym/derham.hpp"
#include "support.hpp"

using namespace poissym;
using poissym::testing::P;
using poissym::testing::RandomPolys;

namespace {

const VarRing R3 = VarRing::indexed("x", 3);
const VarRing QP({"q", "p"});

PoissonStructure cone_pi() { return PoissonStructure::from_upper(R3, {P(R3, "4*x3"), P(R3, "2*x1"), P(R3, "-2*x2")}); }
Ideal cone() { return Ideal(R3, {P(R3, "x1*x2 - x3^2")}); }

const DerPresentation& cone_pres() {
  static const DerPresentation pres = der_presentation(cone(), cone_pi());
  return pres;
}

PolyMatrix expected_gram() {
  return PolyMatrix::from_rows({{P(R3, "0"), P(R3, "-4*x3"), P(R3, "-2*x1"), P(R3, "2*x1")},
                                {P(R3, "4*x3"), P(R3, "0"), P(R3, "2*x2"), P(R3, "0")},
                                {P(R3, "2*x1"), P(R3, "-2*x2"), P(R3, "0"), P(R3, "x3")},
                                {P(R3, "-2*x1"), P(R3, "0"), P(R3, "-x3"), P(R3, "0")}},
                               3);
}

PolyMatrix expected_relations() {
  return PolyMatrix::from_rows({{P(R3, "x2"), P(R3, "0"), P(R3, "0"), P(R3, "-x3")},
                                {P(R3, "0"), P(R3, "x1"), P(R3, "x3"), P(R3, "0")},
                                {P(R3, "-2*x3"), P(R3, "0"), P(R3, "0"), P(R3, "2*x1")},
                                {P(R3, "-2*x3"), P(R3, "2*x3"), P(R3, "2*x2"), P(R3, "2*x1")}},
                               3);
}

bool all_in(const PolyMatrix& M, const Ideal& I) {
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j)
      if (!I.contains(M.at(i, j))) return false;
  return true;
}

PolyMatrix random_antisymmetric(RandomPolys& gen, std::size_t g) {
  PolyMatrix M(g, g, 3);
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = i + 1; j < g; ++j) {
      M.at(i, j) = gen.poly(3, 2, 2);
      M.at(j, i) = -M.at(i, j);
    }
  return M;
}

Cochain random_cochain(RandomPolys& gen, std::size_t arity, std::size_t g) {
  Cochain c(arity, g, 3);
  for (const auto& t : Cochain::increasing_tuples(g, arity)) c.set(t, gen.poly(3, 2, 2));
  return c;
}

}  // namespace

TEST_CASE("omega_ham reproduces the double-cone Gram matrix", "[derham][gram]") {
  const GramForm w = omega_ham(cone_pres());
  CHECK(w.gram == expected_gram());
  CHECK_FALSE(w.isotropic_heuristic);
  for (std::size_t i = 0; i < 4; ++i) CHECK(w.gram.at(i, i).is_zero());
}

TEST_CASE("omega_ham on the free symplectic plane", "[derham][gram]") {
  const auto pres = der_presentation(Ideal::zero(QP), PoissonStructure::canonical(QP));
  const GramForm w = omega_ham(pres);
  // generators (H_q, H_p); ω(H_q, H_p) = H_p(q) = {p, q} = -1
  CHECK(w.gram == PolyMatrix::from_rows({{P(QP, "0"), P(QP, "-1")}, {P(QP, "1"), P(QP, "0")}}, 2));
}

TEST_CASE("omega_ham needs Hamiltonian generators", "[derham][gram]") {
  CHECK_THROWS_AS(omega_ham(der_presentation(cone())), InputError);
}

TEST_CASE("Gram forms are antisymmetric and Hamiltonian-compatible", "[derham][gram][property]") {
  const GramForm w = omega_ham(cone_pres());
  const auto& pres = w.presentation;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      CHECK(cone().contains(w.gram.at(i, j) + w.gram.at(j, i)));
      if (pres.labels[i].is_hamiltonian())
        CHECK(cone().contains(w.gram.at(i, j) - apply_field(pres.generators[j], *pres.labels[i].function)));
    }
}

TEST_CASE("descent", "[derham][descent]") {
  const GramForm w = omega_ham(cone_pres());
  CHECK(all_in(w.gram * expected_relations(), cone()));
  CHECK(all_in(w.gram.transpose() * expected_relations(), cone()));

  const Certificate c = check_descends(w);
  CHECK(c.kind == "descent");
  CHECK(c.passed);
  for (const auto& e : c.evidence) CHECK(normal_form(e.residual, cone()).is_zero());

  const auto free = der_presentation(Ideal::zero(QP), PoissonStructure::canonical(QP));
  const Certificate cf = check_descends(omega_ham(free));
  CHECK(cf.passed);

  PolyMatrix flipped = w.gram;
  flipped.at(0, 1) = -flipped.at(0, 1);
  const Certificate bad = check_descends(gram_form(cone_pres(), flipped));
  CHECK_FALSE(bad.passed);
  CHECK(std::any_of(bad.evidence.begin(), bad.evidence.end(),
                    [](const Evidence& e) { return !normal_form(e.residual, cone()).is_zero(); }));
}

TEST_CASE("form_kernel", "[derham][kernel]") {
  const GramForm w = omega_ham(cone_pres());
  CHECK(module_equal(form_kernel(w), SubModule(4, 3, expected_relations().columns()), cone()));

  const auto free = der_presentation(Ideal::zero(QP), PoissonStructure::canonical(QP));
  CHECK(form_kernel(omega_ham(free)).is_zero());

  const GramForm zero = gram_form(cone_pres(), PolyMatrix(4, 4, 3));
  std::vector<ModVec> units;
  for (std::size_t j = 0; j < 4; ++j) units.push_back(ModVec::unit(4, 3, j));
  CHECK(module_equal(form_kernel(zero), SubModule(4, 3, units), cone()));
}

TEST_CASE("nondegeneracy_check", "[derham][kernel]") {
  CHECK(nondegeneracy_check(omega_ham(cone_pres())).passed);

  const auto free = der_presentation(Ideal::zero(QP), PoissonStructure::canonical(QP));
  CHECK(nondegeneracy_check(omega_ham(free)).passed);

  const Certificate bad = nondegeneracy_check(gram_form(cone_pres(), PolyMatrix(4, 4, 3)));
  CHECK_FALSE(bad.passed);
  CHECK(bad.nonzero_residuals() > 0);
}

TEST_CASE("d_naive on functions", "[derham][koszul]") {
  const auto& pres = cone_pres();
  const Poly a = P(R3, "x1^2 + 3*x2*x3");
  const Cochain da = d_naive(Cochain::function(a, 4), pres);
  REQUIRE(da.arity() == 1);
  for (std::size_t i = 0; i < 4; ++i)
    CHECK(da.value({i}) == normal_form(apply_field(pres.generators[i], a), cone()));
}

TEST_CASE("d_naive of the double-cone form", "[derham][koszul]") {
  const auto& pres = cone_pres();
  const Cochain dw = d_naive(Cochain::from_gram(omega_ham(pres)), pres);
  CHECK(dw.values().empty());
  CHECK(dw.value({0, 1, 3}).is_zero());
}

TEST_CASE("d_naive output is alternating", "[derham][koszul][property]") {
  const auto& pres = cone_pres();
  RandomPolys gen(5);
  const Cochain c = random_cochain(gen, 1, 4);
  const Cochain dc = d_naive(c, pres);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(dc.value({i, j}) == -dc.value({j, i}));
  CHECK(dc.value({2, 2}).is_zero());
}

TEST_CASE("d∘d vanishes on functions over the double cone", "[derham][koszul][property]") {
  const auto& pres = cone_pres();
  const auto& X = pres.generators;
  RandomPolys gen(21);
  for (int trial = 0; trial < 8; ++trial) {
    const Poly a = gen.poly(3, 3, 4);
    const Cochain dd = d_naive(d_naive(Cochain::function(a, 4), pres), pres);
    CHECK(dd.values().empty());
    // oracle: X_i(X_j a) - X_j(X_i a) - Σ_k c_k X_k(a) with [X_i, X_j] = Σ c_k X_k
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j) {
        auto c = pres.expander().express(lie_bracket(X[i], X[j]));
        REQUIRE(c);
        Poly v = apply_field(X[i], apply_field(X[j], a)) - apply_field(X[j], apply_field(X[i], a));
        for (std::size_t k = 0; k < 4; ++k) v -= (*c)[k] * apply_field(X[k], a);
        CHECK(cone().contains(v));
      }
  }
}

TEST_CASE("closedness_check", "[derham][closedness]") {
  const GramForm w = omega_ham(cone_pres());
  const Certificate c = closedness_check(w);
  CHECK(c.kind == "closedness");
  CHECK(c.passed);
  REQUIRE(c.evidence.size() == 4);
  const std::vector<std::vector<std::size_t>> triples{{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(c.evidence[k].tuple == triples[k]);
    CHECK(normal_form(c.evidence[k].residual, cone()).is_zero());
  }
  CHECK(c.evidence[1].label == "d omega(H[x1], H[x2], X4)");

  const Certificate threaded = closedness_check(w, 3);
  REQUIRE(threaded.evidence.size() == c.evidence.size());
  for (std::size_t k = 0; k < c.evidence.size(); ++k) CHECK(threaded.evidence[k].residual == c.evidence[k].residual);

  const auto free = der_presentation(Ideal::zero(QP), PoissonStructure::canonical(QP));
  CHECK(closedness_check(omega_ham(free)).passed);

  PolyMatrix tampered = w.gram;
  tampered.at(0, 3) = P(R3, "x1");
  tampered.at(3, 0) = P(R3, "-x1");
  CHECK_FALSE(closedness_check(gram_form(cone_pres(), tampered)).passed);
}

TEST_CASE("delta_ham_check", "[derham][closedness]") {
  CHECK(delta_ham_check(cone_pres()).passed);
  CHECK(delta_ham_check(der_presentation(Ideal::zero(QP), PoissonStructure::canonical(QP))).passed);

  const auto bad_pi = PoissonStructure::from_upper(R3, {P(R3, "x1"), P(R3, "x2"), P(R3, "0")});
  const Certificate refused = delta_ham_check(der_presentation(Ideal::zero(R3), bad_pi));
  CHECK_FALSE(refused.passed);
  REQUIRE_FALSE(refused.notes.empty());
  CHECK_THAT(refused.notes.front(), Catch::Matchers::ContainsSubstring("Jacobi"));
}

TEST_CASE("cup_product", "[derham][cup]") {
  const auto& pres = cone_pres();
  RandomPolys gen(8);
  const Poly a = gen.nonzero(3, 2, 2);
  const Cochain eta = random_cochain(gen, 2, 4);
  const Cochain scaled = cup_product(Cochain::function(a, 4), eta, pres);
  for (const auto& t : Cochain::increasing_tuples(4, 2))
    CHECK(scaled.value(t) == normal_form(a * eta.value(t), cone()));

  const Cochain alpha = random_cochain(gen, 1, 4);
  CHECK(cup_product(alpha, alpha, pres).values().empty());

  // (α ∪ β)(X_i, X_j) = α_i β_j - α_j β_i
  const Cochain beta = random_cochain(gen, 1, 4);
  const Cochain ab = cup_product(alpha, beta, pres);
  CHECK(ab.value({1, 3}) == normal_form(alpha.value({1}) * beta.value({3}) - alpha.value({3}) * beta.value({1}), cone()));
}

TEST_CASE("cup product is graded commutative", "[derham][cup][property]") {
  const auto& pres = cone_pres();
  RandomPolys gen(9);
  for (int trial = 0; trial < 6; ++trial)
    for (std::size_t p = 0; p <= 2; ++p)
      for (std::size_t q = 0; q <= 2; ++q) {
        const Cochain w = random_cochain(gen, p, 4), h = random_cochain(gen, q, 4);
        const Cochain wh = cup_product(w, h, pres), hw = cup_product(h, w, pres);
        for (const auto& t : Cochain::increasing_tuples(4, p + q)) {
          const Poly lhs = wh.value(t), rhs = hw.value(t);
          REQUIRE(lhs == ((p * q) % 2 ? -rhs : rhs));
        }
      }
}

TEST_CASE("gram_determinant", "[derham][determinant]") {
  const auto det = gram_determinant(omega_ham(cone_pres()));
  CHECK(det.raw == P(R3, "16*(x1*x2 - x3^2)^2"));
  CHECK(det.reduced.is_zero());
  REQUIRE(det.power_form);
  CHECK(det.power_form->first == 16);
  CHECK(det.power_form->second == 2);

  const auto free = der_presentation(Ideal::zero(QP), PoissonStructure::canonical(QP));
  CHECK(gram_determinant(omega_ham(free)).raw == P(QP, "1"));

  RandomPolys gen(3);
  for (int trial = 0; trial < 10; ++trial) CHECK(determinant(random_antisymmetric(gen, 3)).is_zero());
}

TEST_CASE("determinant equals the squared Pfaffian", "[derham][determinant][property]") {
  RandomPolys gen(4);
  for (int trial = 0; trial < 20; ++trial) {
    const PolyMatrix A = random_antisymmetric(gen, 2);
    CHECK(determinant(A) == A.at(0, 1) * A.at(0, 1));
    const PolyMatrix B = random_antisymmetric(gen, 4);
    const Poly pf = B.at(0, 1) * B.at(2, 3) - B.at(0, 2) * B.at(1, 3) + B.at(0, 3) * B.at(1, 2);
    CHECK(determinant(B) == pf * pf);
  }
  // a non-antisymmetric 3x3 with a hand-expanded determinant
  const PolyMatrix M = PolyMatrix::from_rows({{P(R3, "x1"), P(R3, "1"), P(R3, "0")},
                                              {P(R3, "0"), P(R3, "x2"), P(R3, "2")},
                                              {P(R3, "3"), P(R3, "0"), P(R3, "x3")}},
                                             3);
  CHECK(determinant(M) == P(R3, "x1*x2*x3 + 6"));
}

TEST_CASE("Cochain storage rules", "[derham]") {
  Cochain c(2, 3, 3);
  c.set({0, 2}, P(R3, "x1"));
  CHECK(c.value({2, 0}) == P(R3, "-x1"));
  CHECK(c.value({1, 1}).is_zero());
  CHECK_THROWS_AS(c.set({2, 0}, P(R3, "1")), InputError);
  CHECK_THROWS_AS(c.set({0, 3}, P(R3, "1")), InputError);
  CHECK(Cochain::increasing_tuples(4, 3).size() == 4);
  CHECK(Cochain::increasing_tuples(4, 0).size() == 1);
  CHECK(Cochain::increasing_tuples(2, 3).empty());
}
