#include "cpipe/appendix.hpp"
#include "cpipe/errors.hpp"
#include "cpipe/polar.hpp"

#include <doctest.h>

#include <random>

using namespace cpipe;
using Q = Rational;
using P = DiscPoly<Q>;

namespace {

const TableEntry& entry(const std::vector<TableEntry>& t, const std::string& name) {
  for (const auto& e : t) {
    if (e.name() == name) return e;
  }
  FAIL("no table entry " << name);
  return t.front();
}

Q coeff(const TableEntry& e, FCoeff f) { return e.form[static_cast<std::size_t>(f)]; }

VecPoly<Q> forcing(const std::array<Q, kNumF>& f) {
  VecPoly<Q> F;
  F.x.add_term(0, 0, f[0]);
  F.x.add_term(2, 0, f[1]);
  F.x.add_term(0, 2, f[2]);
  F.x.add_term(2, 2, f[3]);
  F.x.add_term(4, 0, f[4]);
  F.x.add_term(0, 4, f[5]);
  F.y.add_term(0, 0, f[6]);
  F.y.add_term(1, 1, f[7]);
  F.y.add_term(2, 0, f[8]);
  F.y.add_term(0, 2, f[9]);
  return F;
}

}  // namespace

TEST_SUITE("appendix") {
  TEST_CASE("printed spot values") {
    const auto& t = printed_tables();
    CHECK(t.size() == 50);
    const auto& w204 = entry(t, "w2^04");
    CHECK(coeff(w204, FCoeff::f2_04) == make_rational(7, 240));
    CHECK(coeff(w204, FCoeff::f2_22) == make_rational(-7, 2880));
    const auto& q50 = entry(t, "q^50");
    CHECK(coeff(q50, FCoeff::f2_22) == make_rational(11, 480));
    CHECK(coeff(q50, FCoeff::f2_04) == make_rational(-1, 80));
    CHECK(coeff(q50, FCoeff::f2_40) == make_rational(-1, 5));
    CHECK(coeff(entry(t, "w2^11"), FCoeff::f3_20) == make_rational(-1, 24));
  }

  TEST_CASE("brute-force solve reproduces the tables") {
    const auto rep = verify_appendix_tables();
    CHECK(rep.unique);
    CHECK(rep.rank == rep.unknowns);
    CHECK(rep.rows.size() == 50);
    CHECK(rep.mismatches_corrected == 0);
    CHECK(rep.mismatches_printed == 1);
    REQUIRE(rep.errata.size() == 1);
    CHECK(rep.errata.front().coefficient == "w2^02");
    for (const auto& row : rep.rows) {
      if (!row.matches_printed) CHECK(row.name == "w2^02");
    }
  }

  TEST_CASE("single forcing coefficient") {
    std::array<Q, kNumF> f;
    f.fill(Q(0));
    f[static_cast<std::size_t>(FCoeff::f3_20)] = Q(24);
    const auto s = apply_tables(forcing(f));
    const P bubble = P::rho2() - P::constant(Q(1));
    P w2, w3;
    w2.add_term(1, 1, Q(-1));
    w3.add_term(0, 0, make_rational(-1, 4));
    w3.add_term(0, 2, make_rational(1, 4));
    w3.add_term(2, 0, make_rational(5, 4));
    CHECK(s.W.x == w2 * bubble);
    CHECK(s.W.y == w3 * bubble);
    P q;
    q.add_term(2, 1, Q(-6));
    q.add_term(0, 3, Q(2));
    q.add_term(0, 1, Q(-4));
    CHECK(s.q == q);
  }

  TEST_CASE("Stokes residual for random forcing") {
    std::mt19937 gen(17);
    std::uniform_int_distribution<int> num(-30, 30), den(1, 12);
    for (int trial = 0; trial < 10; ++trial) {
      std::array<Q, kNumF> f;
      for (auto& v : f) v = make_rational(num(gen), den(gen));
      const auto F = forcing(f);
      const auto s = apply_tables(F);
      CHECK((laplacian(s.W) - gradient(s.q) - F).is_zero());
      CHECK(divergence(s.W).is_zero());
      CHECK(restrict_to_boundary(s.W.x).is_zero());
      CHECK(restrict_to_boundary(s.W.y).is_zero());
      CHECK(extract_f(F) == f);
    }
  }

  TEST_CASE("forcing outside the ansatz") {
    VecPoly<Q> F;
    F.x = P::z2();
    CHECK_THROWS_AS(extract_f(F), ModelError);
  }
}
