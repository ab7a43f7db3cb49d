#include <catch_amalgamated.hpp>

#include "poissym/quotient.hpp"
#include "support.hpp"

using namespace poissym;
using poissym::testing::P;
using poissym::testing::RandomPolys;
using poissym::testing::V;

namespace {

const VarRing QP({"q", "p"});
const VarRing R3 = VarRing::indexed("x", 3);

RationalMatrix mat(std::initializer_list<std::initializer_list<long>> rows) {
  RationalMatrix out;
  for (const auto& r : rows) {
    out.emplace_back();
    for (long v : r) out.back().push_back(Rational(v));
  }
  return out;
}

FiniteGroupRep z2() { return FiniteGroupRep(QP, {mat({{-1, 0}, {0, -1}})}); }
FiniteGroupRep z3() { return FiniteGroupRep(QP, {mat({{0, -1}, {1, -1}})}); }

HilbertData z2_data() { return hilbert_data(QP, {P(QP, "q^2"), P(QP, "p^2"), P(QP, "q*p")}); }

Ideal cone() { return Ideal(R3, {P(R3, "x1*x2 - x3^2")}); }
PoissonStructure cone_pi() { return PoissonStructure::from_upper(R3, {P(R3, "4*x3"), P(R3, "2*x1"), P(R3, "-2*x2")}); }

/// The base change taking (q dq, q dp, p dq, p dp) to (H[x1], H[x2], H[x3], X4).
RationalMatrix z2_base_change() { return mat({{0, 0, -1, 1}, {2, 0, 0, 0}, {0, -2, 0, 0}, {0, 0, 1, 0}}); }

/// ℚ-rank of a list of polynomials, by elimination on coefficient vectors.
std::size_t rank(const std::vector<Poly>& fs) {
  std::vector<std::map<Monomial, Rational>> rows;
  for (const auto& f : fs) {
    std::map<Monomial, Rational> row;
    for (const auto& t : f.terms()) row[t.mono] = t.coeff;
    for (const auto& r : rows) {
      const auto& [pivot, pc] = *r.begin();
      auto it = row.find(pivot);
      if (it == row.end()) continue;
      const Rational s = it->second / pc;
      for (const auto& [m, c] : r) {
        row[m] -= s * c;
        if (row[m] == 0) row.erase(m);
      }
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  return rows.size();
}

}  // namespace

TEST_CASE("group closure", "[quotient][group]") {
  CHECK(z2().order() == 2);
  CHECK(z3().order() == 3);
  CHECK(FiniteGroupRep::trivial(QP).order() == 1);
  CHECK(FiniteGroupRep(QP, {mat({{0, -1}, {1, 0}}), mat({{-1, 0}, {0, -1}})}).order() == 4);
  CHECK_THROWS_AS(FiniteGroupRep(QP, {mat({{1, 0}, {0, 0}})}), InputError);
  CHECK_THROWS_AS(FiniteGroupRep(QP, {mat({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})}), InputError);
  CHECK_THROWS_AS(FiniteGroupRep(QP, {mat({{1, 1}, {0, 1}})}, 50), ResourceError);
}

TEST_CASE("reynolds operator", "[quotient][reynolds]") {
  CHECK(reynolds(P(QP, "q"), z2()).is_zero());
  CHECK(reynolds(P(QP, "q^2 + 3*q*p^2"), z2()) == P(QP, "q^2"));
  // q -> -p, p -> q - p: the orbit of q^2 is q^2, p^2, (q - p)^2
  CHECK(reynolds(P(QP, "q^2"), z3()) == P(QP, "2/3*q^2 - 2/3*q*p + 2/3*p^2"));

  RandomPolys gen(31);
  for (const auto& G : {z2(), z3()})
    for (int trial = 0; trial < 30; ++trial) {
      const Poly f = gen.poly(2, 4, 4), h = gen.poly(2, 4, 4);
      const Poly r = reynolds(f, G);
      REQUIRE(G.is_invariant(r));
      REQUIRE(reynolds(r, G) == r);
      REQUIRE(reynolds(r * h, G) == r * reynolds(h, G));
    }
}

TEST_CASE("fundamental invariants of Z2", "[quotient][invariants]") {
  const auto invs = fundamental_invariants(z2());
  REQUIRE(invs.size() == 3);
  for (const auto& u : invs) {
    CHECK(u.total_degree() == 2);
    CHECK(u.is_homogeneous());
  }
  std::vector<Poly> both = invs;
  for (const char* s : {"q^2", "p^2", "q*p"}) both.push_back(P(QP, s));
  CHECK(rank(invs) == 3);
  CHECK(rank(both) == 3);
  CHECK_NOTHROW(validate_invariants(z2(), {P(QP, "q^2"), P(QP, "p^2"), P(QP, "q*p")}));
  CHECK_THROWS_AS(validate_invariants(z2(), {P(QP, "q^2"), P(QP, "p^2")}), InputError);
  CHECK_THROWS_AS(validate_invariants(z2(), {P(QP, "q"), P(QP, "p^2"), P(QP, "q*p")}), InputError);
}

TEST_CASE("trivial group invariants are the coordinates", "[quotient][invariants]") {
  CHECK(fundamental_invariants(FiniteGroupRep::trivial(QP)) == std::vector<Poly>{P(QP, "q"), P(QP, "p")});
}

TEST_CASE("relations of the Z2 invariants", "[quotient][relations]") {
  const HilbertData H = z2_data();
  const Poly rel = P(R3, "x1*x2 - x3^2");
  CHECK(H.relations.contains(rel));
  for (const auto& g : H.relations.generators()) {
    CHECK(H.pull_back(g).is_zero());
    CHECK(cone().contains(g));
  }
  CHECK(*H.rewrite(P(QP, "q^3*p + 2*p^2")) == P(R3, "x1*x3 + 2*x2"));
  CHECK_FALSE(H.rewrite(P(QP, "q")));
}

TEST_CASE("Z3 invariants and relation", "[quotient][invariants][relations]") {
  const auto G = z3();
  const auto invs = fundamental_invariants(G);
  REQUIRE(invs.size() == 3);
  CHECK(invs[0].total_degree() == 2);
  CHECK(invs[1].total_degree() == 3);
  CHECK(invs[2].total_degree() == 3);
  for (const auto& u : invs) CHECK(G.is_invariant(u));
  const HilbertData H = hilbert_data(QP, invs);
  const auto gens = H.relations.nonzero_generators();
  REQUIRE(gens.size() == 1);
  // a cubic in the x's, of degree 6 upstairs in every term
  CHECK(gens[0].total_degree() == 3);
  for (const auto& t : gens[0].terms()) CHECK(H.pull_back(Poly::monomial(t.mono, t.coeff)).total_degree() == 6);
  CHECK(H.pull_back(gens[0]).is_zero());
}

TEST_CASE("invariant derivations of Z2", "[quotient][fields]") {
  const auto Y = invariant_derivations(z2());
  CHECK(Y == std::vector<ModVec>{V(QP, {"q", "0"}), V(QP, {"0", "q"}), V(QP, {"p", "0"}), V(QP, {"0", "p"})});
  // z -> -z: a linear field X satisfies X(-z) = -X(z)
  for (const auto& X : Y) {
    std::vector<Poly> neg{P(QP, "-q"), P(QP, "-p")};
    for (std::size_t i = 0; i < 2; ++i) CHECK(X[i].substitute(neg) == -X[i]);
  }
}

TEST_CASE("invariant derivations of Z3", "[quotient][fields]") {
  const auto G = z3();
  const auto Y = invariant_derivations(G);
  REQUIRE(Y.size() == 4);
  for (const auto& X : Y) {
    CHECK(G.is_invariant(X));
    CHECK(X.degree() <= 2);
  }
}

TEST_CASE("push_derivation reproduces the Z2 field table", "[quotient][fields]") {
  const HilbertData H = z2_data();
  CHECK(push_derivation(V(QP, {"q", "0"}), H) == V(R3, {"2*x1", "0", "x3"}));
  CHECK(push_derivation(V(QP, {"0", "q"}), H) == V(R3, {"0", "2*x3", "x1"}));
  CHECK(push_derivation(V(QP, {"p", "0"}), H) == V(R3, {"2*x3", "0", "x2"}));
  CHECK(push_derivation(V(QP, {"0", "p"}), H) == V(R3, {"0", "2*x2", "x3"}));
  CHECK_THROWS_AS(push_derivation(V(QP, {"1", "0"}), H), InputError);
}

TEST_CASE("induced Poisson structure on the Z2 quotient", "[quotient][poisson]") {
  const auto pi = induced_poisson(z2_data(), PoissonStructure::canonical(QP));
  CHECK(pi.matrix() == cone_pi().matrix());
}

TEST_CASE("pushed symplectic form on the Z2 quotient", "[quotient][symplectic]") {
  const HilbertData H = z2_data();
  const auto Y = invariant_derivations(z2());
  const GramForm w = pushed_symplectic(H, PoissonStructure::canonical(QP), Y);
  // omega0(X, Y) = X^p Y^q - X^q Y^p, e.g. omega0(q dq, q dp) = -q^2
  CHECK(w.gram.at(0, 1) == P(R3, "-x1"));
  CHECK(w.gram.at(0, 3) == P(R3, "-x3"));
  CHECK(w.gram.at(2, 3) == P(R3, "-x2"));

  CHECK(check_descends(w).passed);
  CHECK(closedness_check(w).passed);
  CHECK(nondegeneracy_check(w).passed);
  CHECK(delta_ham_check(der_presentation(H.relations, induced_poisson(H, PoissonStructure::canonical(QP)))).passed);
  CHECK(injectivity_check(H, Y, w.presentation).passed);
  CHECK(surjectivity_check(w.presentation).passed);

  // after the base change, the Gram matrix is the Hamiltonian form on the cone
  const auto B = z2_base_change();
  const PolyMatrix omega = PolyMatrix::from_rows({{P(R3, "0"), P(R3, "-4*x3"), P(R3, "-2*x1"), P(R3, "2*x1")},
                                                  {P(R3, "4*x3"), P(R3, "0"), P(R3, "2*x2"), P(R3, "0")},
                                                  {P(R3, "2*x1"), P(R3, "-2*x2"), P(R3, "0"), P(R3, "x3")},
                                                  {P(R3, "-2*x1"), P(R3, "0"), P(R3, "-x3"), P(R3, "0")}},
                                                 3);
  PolyMatrix Bp(4, 4, 3);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) Bp.at(i, j) = Poly::constant(3, B[i][j]);
  const PolyMatrix moved = Bp.transpose() * w.gram * Bp;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(cone().contains(moved.at(i, j) - omega.at(i, j)));
}

TEST_CASE("verify_base_change on the Z2 quotient", "[quotient][basechange]") {
  const HilbertData H = z2_data();
  const auto Y = invariant_derivations(z2());
  const GramForm pushed = pushed_symplectic(H, PoissonStructure::canonical(QP), Y);
  const GramForm target = omega_ham(der_presentation(cone(), cone_pi()));

  const auto ok = verify_base_change(H, Y, pushed, z2_base_change(), target);
  CHECK(ok.downstairs.passed);
  CHECK(ok.upstairs.passed);
  CHECK(ok.passed());
  CHECK_FALSE(ok.upstairs.evidence.empty());

  // the relation 2 p^2 q dp - 2 q p p dp lifts to zero
  const ModVec lifted = detail::lift_combination(H, Y, V(R3, {"0", "2*x2", "0", "-2*x3"}));
  CHECK(lifted.is_zero());

  auto bad = z2_base_change();
  bad[0][2] = -2;
  const auto fail = verify_base_change(H, Y, pushed, bad, target);
  CHECK_FALSE(fail.passed());
  CHECK_FALSE(fail.downstairs.passed);

  CHECK_THROWS_AS(verify_base_change(H, Y, pushed, mat({{1, 0}, {0, 1}}), target), InputError);
}

TEST_CASE("Z3 quotient carries a closed nondegenerate form", "[quotient][symplectic]") {
  const auto G = z3();
  const HilbertData H = hilbert_data(QP, fundamental_invariants(G));
  const auto Y = invariant_derivations(G);
  const GramForm w = pushed_symplectic(H, PoissonStructure::canonical(QP), Y);
  CHECK(check_descends(w).passed);
  CHECK(closedness_check(w).passed);
  CHECK(nondegeneracy_check(w).passed);
  CHECK(injectivity_check(H, Y, w.presentation).passed);
  CHECK(surjectivity_check(w.presentation).passed);
}

TEST_CASE("trivial group gives the constant symplectic plane", "[quotient][symplectic]") {
  const auto G = FiniteGroupRep::trivial(QP);
  const HilbertData H = hilbert_data(QP, fundamental_invariants(G));
  const auto Y = invariant_derivations(G);
  CHECK(Y == std::vector<ModVec>{V(QP, {"1", "0"}), V(QP, {"0", "1"})});
  const GramForm w = pushed_symplectic(H, PoissonStructure::canonical(QP), Y);
  const VarRing X2 = VarRing::indexed("x", 2);
  CHECK(w.gram == PolyMatrix::from_rows({{P(X2, "0"), P(X2, "-1")}, {P(X2, "1"), P(X2, "0")}}, 2));
  CHECK(closedness_check(w).passed);
  CHECK(nondegeneracy_check(w).passed);
  const auto same = verify_base_change(H, Y, w, mat({{1, 0}, {0, 1}}), w);
  CHECK(same.passed());
  CHECK(same.upstairs.evidence.empty());
}

TEST_CASE("surjectivity fails when a generator is missing", "[quotient][negative]") {
  const HilbertData H = z2_data();
  auto Y = invariant_derivations(z2());
  Y.pop_back();
  const GramForm w = pushed_symplectic(H, PoissonStructure::canonical(QP), Y);
  CHECK_FALSE(surjectivity_check(w.presentation).passed);
}

TEST_CASE("pushed_symplectic needs a constant nondegenerate ambient form", "[quotient][negative]") {
  const HilbertData H = z2_data();
  const auto Y = invariant_derivations(z2());
  CHECK_THROWS_AS(pushed_symplectic(H, PoissonStructure::from_upper(QP, {P(QP, "q")}), Y), InputError);
  CHECK_THROWS_AS(pushed_symplectic(H, PoissonStructure::from_upper(QP, {P(QP, "0")}), Y), InputError);
}

TEST_CASE("small univariate and monomial examples", "[quotient][invariants][relations]") {
  const VarRing Q({"q"});
  const FiniteGroupRep flip(Q, {mat({{-1}})});
  CHECK(fundamental_invariants(flip) == std::vector<Poly>{P(Q, "q^2")});
  CHECK(reynolds(P(QP, "q^3*p"), z2()) == P(QP, "q^3*p"));

  const VarRing X2 = VarRing::indexed("x", 2);
  const HilbertData H = hilbert_data(Q, {P(Q, "q^2"), P(Q, "q^3")});
  const auto gens = H.relations.nonzero_generators();
  REQUIRE(gens.size() == 1);
  CHECK((gens[0] == P(X2, "x2^2 - x1^3") || gens[0] == P(X2, "x1^3 - x2^2")));

  const HilbertData coords = hilbert_data(QP, fundamental_invariants(FiniteGroupRep::trivial(QP)));
  CHECK(coords.relations.is_zero());
  CHECK(push_derivation(ModVec(2, 2), coords).is_zero());
}
