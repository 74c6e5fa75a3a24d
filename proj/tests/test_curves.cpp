#include <doctest.h>

#include <cmath>

#include "frobmu/curves.hpp"
#include "oracles.hpp"

using namespace frobmu;

namespace {

CurveSpec f5_curve() {
  auto f5 = Field::make(5, 1);
  return CurveSpec::elliptic(f5, f5->one(), f5->zero());  // y^2 = x^3 + x
}

}  // namespace

TEST_CASE("validate: discriminant and genus") {
  auto f5 = Field::make(5, 1);
  CurveSpec e = CurveSpec::elliptic(f5, f5->one(), f5->zero());
  CHECK(e.genus() == 1);
  // oracle: 4*1^3 + 27*0^2 = 4 != 0 mod 5
  CHECK((4 * 1 + 27 * 0) % 5 != 0);

  CHECK_THROWS_WITH_AS(CurveSpec::elliptic(f5, f5->zero(), f5->zero()),
                       doctest::Contains("SingularCurve"), Error);

  std::vector<FieldElement> quintic{f5->one(), f5->one(), f5->zero(), f5->zero(), f5->zero(),
                                    f5->one()};  // x^5 + x + 1
  CHECK(CurveSpec::hyperelliptic(f5, quintic).genus() == 2);

  std::vector<FieldElement> quadratic{f5->one(), f5->zero(), f5->one()};
  CHECK_THROWS_WITH_AS(CurveSpec::hyperelliptic(f5, quadratic), doctest::Contains("GenusZero"),
                       Error);

  std::vector<FieldElement> notsf{f5->zero(), f5->zero(), f5->zero(), f5->one()};  // x^3
  CHECK_THROWS_WITH_AS(CurveSpec::hyperelliptic(f5, notsf), doctest::Contains("SingularCurve"),
                       Error);

  auto f4 = Field::make(2, 2);
  CHECK_THROWS_WITH_AS(CurveSpec::elliptic(f4, f4->one(), f4->one()),
                       doctest::Contains("EvenCharacteristic"), Error);
}

TEST_CASE("count_points: y^2 = x^3 + x over F_5 and F_3") {
  CurveSpec c5 = f5_curve();
  CountRecord r = count_points(c5, 1);
  CHECK(r.count == 4);
  CHECK(r.trace == 2);
  // independent oracle on raw residues
  oracles::MiniField g5{5, 1, {0, 1}};
  CHECK(oracles::count_points_naive(g5, {{0}, {1}, {0}, {1}}) == 4);

  auto f3 = Field::make(3, 1);
  CurveSpec c3 = CurveSpec::elliptic(f3, f3->one(), f3->zero());
  CountRecord r3 = count_points(c3, 1);
  CHECK(r3.count == 4);
  CHECK(r3.trace == 0);
  oracles::MiniField g3{3, 1, {0, 1}};
  CHECK(oracles::count_points_naive(g3, {{0}, {1}, {0}, {1}}) == 4);
}

TEST_CASE("count_points: F_25 count matches a standalone oracle") {
  CurveSpec c5 = f5_curve();
  CountRecord r = count_points(c5, 2);
  CHECK(r.count == 32);
  CHECK(r.trace == -6);
  oracles::MiniField g25{5, 2, {2, 0, 1}};  // any irreducible modulus gives the same count
  CHECK(oracles::count_points_naive(g25, {{0, 0}, {1, 0}, {0, 0}, {1, 0}}) == 32);
}

TEST_CASE("count_points: powering path agrees with the squares table") {
  CurveSpec c5 = f5_curve();
  for (unsigned n = 1; n <= 3; ++n) {
    CountOptions a, b;
    b.force_powering = true;
    CHECK(count_points(c5, n, a).count == count_points(c5, n, b).count);
  }
}

TEST_CASE("count_points: worker count does not change the result") {
  CurveSpec c5 = f5_curve();
  CountOptions w1, w4;
  w1.workers = 1;
  w4.workers = 4;
  for (unsigned n = 1; n <= 4; ++n) CHECK(count_points(c5, n, w1).count == count_points(c5, n, w4).count);
}

TEST_CASE("count_points: independent of the extension modulus") {
  CurveSpec c5 = f5_curve();
  auto f5 = c5.base();
  std::vector<FieldElement> alt{f5->element({1}), f5->element({1}), f5->one()};  // u^2+u+1
  CountOptions opts;
  opts.ext_seed = &alt;
  CHECK(count_points(c5, 2, opts).count == count_points(c5, 2).count);
}

TEST_CASE("count_points: Weil interval for every valid elliptic curve over F_5") {
  auto f5 = Field::make(5, 1);
  for (std::uint64_t ai = 0; ai < 5; ++ai)
    for (std::uint64_t bi = 0; bi < 5; ++bi) {
      if ((4 * ai * ai * ai + 27 * bi * bi) % 5 == 0) continue;
      CurveSpec c = CurveSpec::elliptic(f5, f5->element({ai}), f5->element({bi}));
      for (unsigned n = 1; n <= 2; ++n) {
        CountRecord r = count_points(c, n);
        double bound = 2.0 * std::sqrt(std::pow(5.0, n));
        CHECK(std::abs(static_cast<double>(r.trace)) <= bound);
        CHECK(normalised_trace(r, 5, 1, 128).to_double() <= 1.0);
        CHECK(normalised_trace(r, 5, 1, 128).to_double() >= -1.0);
      }
    }
}

TEST_CASE("count_points: degree-6 model counts points at infinity by chi(lc)") {
  auto f5 = Field::make(5, 1);
  // lc = 1 (square): two points at infinity over F_5; lc = 2 (non-square): none
  std::vector<FieldElement> sq{f5->one(),  f5->one(),  f5->zero(),
                               f5->zero(), f5->zero(), f5->zero(), f5->one()};  // x^6 + x + 1
  std::vector<FieldElement> nsq{f5->one(),  f5->one(),  f5->zero(),
                                f5->zero(), f5->zero(), f5->zero(), f5->element({2})};
  CurveSpec csq = CurveSpec::hyperelliptic(f5, sq);
  CurveSpec cnsq = CurveSpec::hyperelliptic(f5, nsq);
  CHECK(csq.genus() == 2);
  oracles::MiniField g5{5, 1, {0, 1}};
  CHECK(count_points(csq, 1).count ==
        oracles::count_points_naive(g5, {{1}, {1}, {0}, {0}, {0}, {0}, {1}}));
  CHECK(count_points(cnsq, 1).count ==
        oracles::count_points_naive(g5, {{1}, {1}, {0}, {0}, {0}, {0}, {2}}));
  // over F_{25} every base unit is a square, so the non-square model gains both points
  oracles::MiniField g25{5, 2, {2, 0, 1}};
  CHECK(count_points(cnsq, 2).count ==
        oracles::count_points_naive(
            g25, {{1, 0}, {1, 0}, {0, 0}, {0, 0}, {0, 0}, {0, 0}, {2, 0}}));
}

TEST_CASE("trace_sequence: prefix, cross-check, empty") {
  CurveSpec c5 = f5_curve();
  std::vector<CountRecord> recs = trace_sequence(c5, 2);
  REQUIRE(recs.size() == 2);
  CHECK(recs[0].trace == 2);
  CHECK(recs[1].trace == -6);
  // A_C(2) = A_C(1)^2 - 2q for genus 1
  CHECK(recs[1].trace == recs[0].trace * recs[0].trace - 2 * 5);
  CHECK(trace_sequence(c5, 0).empty());
  // determinism across calls
  std::vector<CountRecord> again = trace_sequence(c5, 2);
  for (size_t i = 0; i < recs.size(); ++i) CHECK(recs[i].count == again[i].count);
}

TEST_CASE("subfield containment: F_q points embed into F_{q^2} points") {
  CurveSpec c5 = f5_curve();
  auto f5 = c5.base();
  auto e1 = ExtField::make(f5, 1);
  auto e2 = ExtField::make(f5, 2);
  // every affine F_5 point of y^2 = x^3 + x satisfies the equation in F_25
  unsigned embedded = 0;
  for (std::uint64_t xi = 0; xi < 5; ++xi)
    for (std::uint64_t yi = 0; yi < 5; ++yi) {
      FieldElement x = f5->from_index(xi), y = f5->from_index(yi);
      FieldElement rhs = poly_eval(*f5, c5.rhs(), x);
      if (!(f5->mul(y, y) == rhs)) continue;
      ++embedded;
      ExtElement X = e2->embed(x), Y = e2->embed(y);
      CHECK(e2->mul(Y, Y) == poly_eval_ext(*e2, c5.rhs(), X));
    }
  CHECK(embedded == count_points(c5, 1).count - 1);  // affine part
  CHECK(count_points(c5, 2).count >= embedded);
  (void)e1;
}
