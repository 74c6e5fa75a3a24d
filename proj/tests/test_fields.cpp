#include <doctest.h>

#include <set>

#include "frobmu/fields.hpp"
#include "oracles.hpp"

using namespace frobmu;

namespace {

bool has_root_mod_p(std::uint64_t c0, std::uint64_t c1, std::uint64_t p) {
  for (std::uint64_t x = 0; x < p; ++x)
    if ((x * x + c1 * x + c0) % p == 0) return true;
  return false;
}

}  // namespace

TEST_CASE("make_field: prime field gets the trivial modulus x") {
  auto f5 = Field::make(5, 1);
  CHECK(f5->q() == 5);
  CHECK(f5->modulus() == std::vector<std::uint64_t>{0, 1});
  CHECK(f5->spec_string() == "5^1/[0,1]");
}

TEST_CASE("make_field: F_9 modulus is the first irreducible quadratic in counting order") {
  // oracle: a monic quadratic over F_3 is irreducible iff it has no root
  std::uint64_t expect_c0 = 0, expect_c1 = 0;
  bool found = false;
  for (std::uint64_t code = 0; code < 9 && !found; ++code) {
    std::uint64_t c0 = code % 3, c1 = code / 3;
    if (!has_root_mod_p(c0, c1, 3)) {
      expect_c0 = c0;
      expect_c1 = c1;
      found = true;
    }
  }
  REQUIRE(found);
  auto f9 = Field::make(3, 2);
  CHECK(f9->modulus() == std::vector<std::uint64_t>{expect_c0, expect_c1, 1});
  CHECK(f9->modulus() == std::vector<std::uint64_t>{1, 0, 1});  // t^2 + 1
}

TEST_CASE("make_field: composite characteristic is rejected") {
  CHECK_THROWS_WITH_AS(Field::make(4, 1), doctest::Contains("NonPrimeP"), Error);
}

TEST_CASE("make_field: reducible seed polynomial is rejected") {
  std::vector<std::uint64_t> seed{0, 0, 1};  // x^2
  CHECK_THROWS_AS(Field::make(3, 2, &seed), Error);
  std::vector<std::uint64_t> good{1, 0, 1};
  CHECK(Field::make(3, 2, &good)->q() == 9);
}

TEST_CASE("arith: 2*3 = 1 in F_5 and t*t = 2 in F_9") {
  auto f5 = Field::make(5, 1);
  CHECK(f5->mul(f5->element({2}), f5->element({3})) == f5->one());

  auto f9 = Field::make(3, 2);
  FieldElement t = f9->element({0, 1});
  CHECK(f9->mul(t, t) == f9->element({2}));  // t^2 = -1 = 2 mod (t^2+1)
}

TEST_CASE("arith: x/x = 1 for every nonzero x") {
  auto f9 = Field::make(3, 2);
  for (std::uint64_t i = 1; i < 9; ++i) {
    FieldElement x = f9->from_index(i);
    CHECK(f9->div(x, x) == f9->one());
  }
}

TEST_CASE("arith: owner mismatch and division by zero are rejected") {
  auto a = Field::make(5, 1);
  auto b = Field::make(5, 1);
  CHECK_THROWS_WITH_AS(a->add(a->one(), b->one()), doctest::Contains("OwnerMismatch"), Error);
  CHECK_THROWS_WITH_AS(a->div(a->one(), a->zero()), doctest::Contains("DivisionByZero"), Error);
}

TEST_CASE("trace: degree-1 trace is the identity") {
  auto f7 = Field::make(7, 1);
  for (std::uint64_t i = 0; i < 7; ++i) CHECK(f7->trace_to_prime(f7->from_index(i)) == i);
}

TEST_CASE("trace: Tr_{F_4/F_2}(w) = w + w^2 = 1") {
  // oracle: conjugate sum by repeated squaring in a standalone GF(4)
  oracles::MiniField g4{2, 2, {1, 1, 1}};
  std::vector<std::uint64_t> w{0, 1};
  auto w2 = g4.mul(w, w);
  auto sum = g4.add(w, w2);
  REQUIRE(sum == std::vector<std::uint64_t>{1, 0});

  auto f4 = Field::make(2, 2);
  REQUIRE(f4->modulus() == std::vector<std::uint64_t>{1, 1, 1});
  CHECK(f4->trace_to_prime(f4->element({0, 1})) == 1);
}

TEST_CASE("trace: additivity over samples") {
  auto f = Field::make(7, 3);
  for (std::uint64_t i = 0; i < 40; ++i) {
    FieldElement x = f->from_index((i * 73 + 11) % f->q());
    FieldElement y = f->from_index((i * 131 + 5) % f->q());
    std::uint64_t lhs = f->trace_to_prime(f->add(x, y));
    std::uint64_t rhs = (f->trace_to_prime(x) + f->trace_to_prime(y)) % 7;
    CHECK(lhs == rhs);
  }
}

TEST_CASE("quadratic character: zero, non-square, extension square") {
  auto f5 = Field::make(5, 1);
  CHECK(f5->quadratic_character(f5->zero()) == 0);
  // oracle: squares mod 5 are {1,4}
  std::set<std::uint64_t> squares;
  for (std::uint64_t x = 1; x < 5; ++x) squares.insert(x * x % 5);
  REQUIRE(squares == std::set<std::uint64_t>{1, 4});
  CHECK(f5->quadratic_character(f5->element({2})) == -1);
  CHECK(f5->quadratic_character(f5->element({4})) == 1);

  auto f9 = Field::make(3, 2);
  // oracle: t^4 = (t^2)^2 = (-1)^2 = 1, so t is a square
  oracles::MiniField g9{3, 2, {1, 0, 1}};
  auto t4 = g9.mul(g9.mul(std::vector<std::uint64_t>{0, 1}, {0, 1}),
                   g9.mul(std::vector<std::uint64_t>{0, 1}, {0, 1}));
  REQUIRE(t4 == std::vector<std::uint64_t>{1, 0});
  CHECK(f9->quadratic_character(f9->element({0, 1})) == 1);
}

TEST_CASE("quadratic character: multiplicative, and half the units are squares") {
  for (auto [p, m] : std::vector<std::pair<std::uint64_t, unsigned>>{{5, 1}, {3, 2}, {7, 2}, {3, 4}}) {
    auto f = Field::make(p, m);
    std::uint64_t plus = 0;
    for (std::uint64_t i = 1; i < f->q(); ++i)
      if (f->quadratic_character(f->from_index(i)) == 1) ++plus;
    CHECK(plus == (f->q() - 1) / 2);
    for (std::uint64_t i = 1; i < std::min<std::uint64_t>(f->q(), 25); ++i)
      for (std::uint64_t j = 1; j < std::min<std::uint64_t>(f->q(), 25); ++j) {
        FieldElement x = f->from_index(i), y = f->from_index(j);
        CHECK(f->quadratic_character(f->mul(x, y)) ==
              f->quadratic_character(x) * f->quadratic_character(y));
      }
  }
}

TEST_CASE("quadratic character: characteristic 2 is rejected") {
  auto f4 = Field::make(2, 2);
  CHECK_THROWS_WITH_AS(f4->quadratic_character(f4->one()), doctest::Contains("EvenCharacteristic"),
                       Error);
}

TEST_CASE("enumerate: order, cardinality, budget") {
  auto f5 = Field::make(5, 1);
  std::vector<std::uint64_t> seen;
  f5->for_each(100, [&](const FieldElement& e) { seen.push_back(e.c[0]); });
  CHECK(seen == std::vector<std::uint64_t>{0, 1, 2, 3, 4});

  auto f9 = Field::make(3, 2);
  std::set<std::uint64_t> idx;
  f9->for_each(100, [&](const FieldElement& e) { idx.insert(f9->index(e)); });
  CHECK(idx.size() == 9);

  auto f3 = Field::make(3, 1);
  auto big = ExtField::make(f3, 20);  // 3^20 > 10^8
  CHECK_THROWS_WITH_AS(big->order_u64(100'000'000), doctest::Contains("BudgetExceeded"), Error);
}

TEST_CASE("extension tower: arithmetic, Frobenius, trace") {
  auto f3 = Field::make(3, 1);
  auto e = ExtField::make(f3, 2);  // F_9 as a tower
  std::uint64_t q = f3->q();

  // Frobenius is additive and multiplicative; its n-fold iterate is identity
  for (std::uint64_t i = 0; i < 9; ++i)
    for (std::uint64_t j = 0; j < 9; ++j) {
      ExtElement x = e->from_index(i), y = e->from_index(j);
      CHECK(e->frobenius(e->add(x, y)) == e->add(e->frobenius(x), e->frobenius(y)));
      CHECK(e->frobenius(e->mul(x, y)) == e->mul(e->frobenius(x), e->frobenius(y)));
    }
  for (std::uint64_t i = 0; i < 9; ++i) {
    ExtElement x = e->from_index(i);
    ExtElement fx = x;
    for (unsigned r = 0; r < e->n(); ++r) fx = e->frobenius(fx);
    CHECK(fx == x);
  }

  // Tr(x) is Frobenius-fixed in the base field
  auto f9 = Field::make(3, 2);
  auto e2 = ExtField::make(f9, 2);  // F_81 over F_9
  for (std::uint64_t i = 0; i < 81; i += 7) {
    FieldElement tr = e2->trace_to_base(e2->from_index(i));
    CHECK(f9->pow_ui(tr, f9->q()) == tr);
  }

  // trace to prime = trace through the tower
  for (std::uint64_t i = 0; i < 81; i += 5) {
    ExtElement x = e2->from_index(i);
    std::uint64_t via_tower = e2->trace_to_prime(x);
    // direct sum of x^(p^i) over the full degree 4
    ExtElement acc = x, t = x;
    for (unsigned r = 1; r < 4; ++r) {
      t = e2->pow_ui(t, 3);
      acc = e2->add(acc, t);
    }
    CHECK(acc == e2->embed(f9->element({via_tower})));
  }
  (void)q;
}

TEST_CASE("extension: two moduli represent the same field size") {
  auto f5 = Field::make(5, 1);
  auto e_default = ExtField::make(f5, 2);
  std::vector<FieldElement> alt{f5->element({1}), f5->element({1}), f5->one()};  // u^2+u+1
  auto e_alt = ExtField::make(f5, 2, &alt);
  CHECK(e_default->order() == e_alt->order());
  CHECK(e_default->modulus() != e_alt->modulus());
}

TEST_CASE("extension: reducible seed is rejected") {
  auto f5 = Field::make(5, 1);
  std::vector<FieldElement> bad{f5->element({4}), f5->zero(), f5->one()};  // u^2+4 = (u-1)(u+1)
  CHECK_THROWS_WITH_AS(ExtField::make(f5, 2, &bad), doctest::Contains("ReduciblePoly"), Error);
}
