#include <algorithm>
#include <set>

#include <gtest/gtest.h>

#include "bokstedt/field.hpp"

using namespace bok;

TEST(Field, PrimeFieldHasPElements) {
  const Field f = make_field(5, 1);
  EXPECT_EQ(f.size(), 5u);
  EXPECT_EQ(f.characteristic(), 5u);
  EXPECT_TRUE(f.is_prime_field());
}

TEST(Field, RejectsEvenAndComposite) {
  auto kind_of = [](std::int64_t p, std::int64_t m) {
    try {
      make_field(p, m);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::parse_error;  // no throw
  };
  EXPECT_EQ(kind_of(2, 1), ErrorKind::even_characteristic);
  EXPECT_EQ(kind_of(4, 1), ErrorKind::not_prime);
  EXPECT_EQ(kind_of(9, 1), ErrorKind::not_prime);
  EXPECT_EQ(kind_of(5, 0), ErrorKind::degree_zero);
}

// monic quadratics over F_3 without a root, constant term varying fastest
TEST(Field, F9ModulusIsLeastIrreducibleQuadratic) {
  std::vector<std::uint32_t> want;
  for (std::uint32_t c1 = 0; c1 < 3 && want.empty(); ++c1)
    for (std::uint32_t c0 = 0; c0 < 3 && want.empty(); ++c0) {
      bool root = false;
      for (std::uint32_t x = 0; x < 3; ++x) root = root || (x * x + c1 * x + c0) % 3 == 0;
      if (!root) want = {c0, c1, 1};
    }
  const Field f = make_field(3, 2);
  EXPECT_EQ(f.modulus(), want);
  EXPECT_EQ(f.modulus(), (std::vector<std::uint32_t>{1, 0, 1}));
  EXPECT_EQ(f.size(), 9u);
}

TEST(Field, Inverses) {
  const Field f5 = make_field(5), f7 = make_field(7);
  EXPECT_EQ(f5.inv({2}).value, 3u);
  EXPECT_EQ(f5.inv({1}).value, 1u);
  EXPECT_EQ(f7.inv({3}).value, 5u);
  EXPECT_THROW(f7.inv({0}), Error);
}

TEST(Field, Elements) {
  auto values = [](const Field& f) {
    std::vector<std::uint32_t> v;
    for (auto x : f.elements()) v.push_back(x.value);
    return v;
  };
  EXPECT_EQ(values(make_field(3)), (std::vector<std::uint32_t>{0, 1, 2}));
  EXPECT_EQ(values(make_field(5)), (std::vector<std::uint32_t>{0, 1, 2, 3, 4}));
  auto nine = values(make_field(3, 2));
  std::ranges::sort(nine);
  EXPECT_EQ(nine.size(), 9u);
  EXPECT_EQ(std::ranges::adjacent_find(nine), nine.end());
}

TEST(Field, ExtensionAxiomsExhaustive) {
  for (auto [p, m] : {std::pair{3, 2}, {5, 2}, {7, 2}, {3, 3}}) {
    const Field f = make_field(p, m);
    const auto els = f.elements();
    for (auto a : els) {
      EXPECT_EQ(f.add(a, f.neg(a)), f.zero());
      if (a != f.zero()) {
        EXPECT_EQ(f.mul(a, f.inv(a)), f.one());
      }
      for (auto b : els) {
        EXPECT_EQ(f.mul(a, b), f.mul(b, a));
        EXPECT_EQ(f.sub(f.add(a, b), b), a);
      }
    }
    // multiplicative group is cyclic of order q - 1: a^(q-1) = 1
    for (auto a : els)
      if (a != f.zero()) {
        EXPECT_EQ(f.pow(a, f.size() - 1), f.one());
      }
  }
}

TEST(Field, Distributivity) {
  const Field f = make_field(5, 2);
  const auto els = f.elements();
  for (auto a : els)
    for (auto b : els)
      for (auto c : {FieldElem{3}, FieldElem{7}, FieldElem{24}})
        EXPECT_EQ(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
}

TEST(Field, CoeffsRoundTrip) {
  const Field f = make_field(7, 2);
  for (auto a : f.elements()) EXPECT_EQ(f.from_coeffs(f.coeffs(a)), a);
}

TEST(Field, FromIntNegative) {
  const Field f = make_field(7);
  EXPECT_EQ(f.from_int(-1).value, 6u);
  EXPECT_EQ(f.from_int(-4).value, 3u);
  EXPECT_EQ(f.from_int(15).value, 1u);
}
