#include <gtest/gtest.h>

#include "bokstedt/necklace.hpp"

using namespace bok;

TEST(Necklace, CanonicalRotation) {
  auto c = canonical_rotation(Word{2, 1, 3}, 3);
  EXPECT_EQ(c.necklace.rep, (Word{1, 3, 2}));
  EXPECT_EQ(c.shift, 1u);
  c = canonical_rotation(Word{2, 2, 2}, 3);
  EXPECT_EQ(c.necklace.rep, (Word{2, 2, 2}));
  EXPECT_EQ(c.shift, 0u);
  EXPECT_EQ(c.necklace.orbit_size, 1u);
  c = canonical_rotation(Word{3, 1, 2, 1, 1}, 3);
  EXPECT_EQ(c.necklace.rep, (Word{1, 1, 3, 1, 2}));
  EXPECT_EQ(c.shift, 3u);
  EXPECT_EQ(c.necklace.orbit_size, 5u);
}

TEST(Necklace, LeastRotationMatchesBrute) {
  for (std::uint32_t code = 0; code < 4 * 4 * 4 * 4 * 4 * 4; ++code) {
    Word w;
    for (std::uint32_t c = code, k = 0; k < 6; ++k, c /= 4) w.push_back(static_cast<Letter>(1 + c % 4));
    const std::size_t s = least_rotation(w);
    EXPECT_EQ(rotate(w, s), rotate(w, least_rotation_brute(w)));
  }
}

TEST(Necklace, Counts) {
  EXPECT_EQ(enumerate_necklaces(3, 3).size(), 11u);
  EXPECT_EQ(enumerate_necklaces(3, 5).size(), 51u);
  EXPECT_EQ(enumerate_necklaces(4, 5).size(), 208u);
  EXPECT_EQ(prime_length_necklace_count(3, 3), 11u);
  EXPECT_EQ(prime_length_necklace_count(4, 5), 208u);
  EXPECT_EQ(prime_length_necklace_count(3, 11), (177147u - 3u) / 11u + 3u);
}

TEST(Necklace, FkmEqualsBrute) {
  for (std::uint32_t a : {1u, 2u, 3u, 4u})
    for (std::size_t q : {1u, 2u, 3u, 4u, 5u, 6u, 7u}) {
      if (a == 4 && q > 6) continue;
      EXPECT_EQ(enumerate_necklaces_fkm(a, q), enumerate_necklaces_brute(a, q)) << a << " " << q;
    }
}

TEST(Necklace, RepsAreLeastAndDistinct) {
  const auto ns = enumerate_necklaces(3, 5);
  for (std::size_t i = 0; i < ns.size(); ++i) {
    for (std::size_t k = 0; k < 5; ++k) EXPECT_LE(ns[i].rep, rotate(ns[i].rep, k));
    if (i) {
      EXPECT_LT(ns[i - 1].rep, ns[i].rep);
    }
  }
}

TEST(Necklace, Classify) {
  EXPECT_EQ(classify(Word{1, 2, 2, 2, 4}, 4), OccupancyClass::one_one);
  EXPECT_EQ(classify(Word{1, 1, 4, 2, 2}, 4), OccupancyClass::plus_one);
  EXPECT_EQ(classify(Word{1, 4, 4, 2, 2}, 4), OccupancyClass::one_plus);
  EXPECT_EQ(classify(Word{1, 4, 1, 4, 2}, 4), OccupancyClass::plus_plus);
  EXPECT_EQ(classify(Word{2, 2, 3, 3, 3}, 4), OccupancyClass::other);
}

TEST(Necklace, GammaStats) {
  const Field f = make_field(5);
  const GammaStats g = gamma_stats(Word{1, 4, 2, 2, 2}, f);
  EXPECT_EQ(g.delta.value, 4u);
  // rotations of the same necklace give the same statistics
  for (std::size_t k = 0; k < 5; ++k) {
    const GammaStats r = gamma_stats(rotate(Word{1, 4, 2, 2, 2}, k), f);
    EXPECT_EQ(r.gamma1, g.gamma1);
    EXPECT_EQ(r.gamma4, g.gamma4);
    EXPECT_EQ(r.delta, g.delta);
  }
}

// single 1 and single 4: delta is minus the clockwise distance from the 1 to the 4
TEST(Necklace, DeltaIsMinusDistance) {
  for (std::uint32_t p : {5u, 7u}) {
    const Field f = make_field(p);
    for (std::size_t i = 0; i < p; ++i)
      for (std::size_t j = 0; j < p; ++j) {
        if (i == j) continue;
        Word w(p, 2);
        for (std::size_t k = 0; k < p; ++k)
          if ((k * 7 + i) % 3 == 0) w[k] = 3;
        w[i] = 1;
        w[j] = 4;
        const std::size_t dist = (j + p - i) % p;
        EXPECT_EQ(gamma_stats(w, f).delta, f.from_int(-static_cast<std::int64_t>(dist)));
      }
  }
}

TEST(Necklace, GammaNeedsBothBeads) {
  const Field f = make_field(5);
  EXPECT_THROW(gamma_stats(Word{2, 2, 3, 3, 4}, f), Error);
}
