#pragma once

// Cyclic words over the ordered alphabet {1, ..., a}.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bokstedt/error.hpp"
#include "bokstedt/field.hpp"

namespace bok {

using Letter = std::uint8_t;
using Word = std::vector<Letter>;

struct Necklace {
  Word rep;                 // lexicographically least rotation
  std::uint32_t alphabet = 0;
  std::uint32_t orbit_size = 0;  // number of distinct rotations

  /// Digits without separators, e.g. "12224".
  std::string to_string() const {
    std::string s;
    for (Letter l : rep) s += std::to_string(static_cast<int>(l));
    return s;
  }

  friend bool operator==(const Necklace&, const Necklace&) = default;
};

struct CanonicalRotation {
  Necklace necklace;
  std::size_t shift = 0;  // rep[k] = w[(k + shift) mod q]
};

inline Word word_from_string(std::string_view digits) {
  Word w;
  for (char ch : digits) {
    if (ch < '1' || ch > '9') throw Error(ErrorKind::malformed_word, std::string("bad letter in ") + std::string(digits));
    w.push_back(static_cast<Letter>(ch - '0'));
  }
  return w;
}

inline Word rotate(std::span<const Letter> w, std::size_t shift) {
  Word out(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) out[k] = w[(k + shift) % w.size()];
  return out;
}

/// Smallest period d (a divisor of |w|) with w invariant under rotation by d.
inline std::size_t period(std::span<const Letter> w) {
  const std::size_t n = w.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (std::size_t k = 0; k + d < n && ok; ++k) ok = w[k] == w[k + d];
    if (ok) return d;
  }
  return n;
}

/// Booth's least-rotation algorithm, O(n).  Returns the smallest shift.
inline std::size_t least_rotation(std::span<const Letter> s) {
  const std::size_t n = s.size();
  if (n == 0) return 0;
  std::vector<std::ptrdiff_t> f(2 * n, -1);
  std::size_t k = 0;
  for (std::size_t j = 1; j < 2 * n; ++j) {
    const Letter sj = s[j % n];
    std::ptrdiff_t i = f[j - k - 1];
    while (i != -1 && sj != s[(k + static_cast<std::size_t>(i) + 1) % n]) {
      if (sj < s[(k + static_cast<std::size_t>(i) + 1) % n]) k = j - static_cast<std::size_t>(i) - 1;
      i = f[static_cast<std::size_t>(i)];
    }
    if (sj != s[(k + static_cast<std::size_t>(i) + 1) % n]) {  // i == -1
      if (sj < s[k % n]) k = j;
      f[j - k] = -1;
    } else {
      f[j - k] = i + 1;
    }
  }
  return (k % n) % period(s);
}

/// Reference implementation: compare all rotations.
inline std::size_t least_rotation_brute(std::span<const Letter> s) {
  std::size_t best = 0;
  for (std::size_t r = 1; r < s.size(); ++r)
    if (rotate(s, r) < rotate(s, best)) best = r;
  return best;
}

inline CanonicalRotation canonical_rotation(std::span<const Letter> w, std::uint32_t alphabet) {
  for (Letter l : w)
    if (l < 1 || l > alphabet) throw Error(ErrorKind::malformed_word, "letter outside alphabet");
  const std::size_t shift = least_rotation(w);
  CanonicalRotation out;
  out.shift = shift;
  out.necklace.rep = rotate(w, shift);
  out.necklace.alphabet = alphabet;
  out.necklace.orbit_size = static_cast<std::uint32_t>(period(w));
  return out;
}

namespace detail {

inline Necklace make_necklace(Word rep, std::uint32_t alphabet) {
  Necklace n;
  n.orbit_size = static_cast<std::uint32_t>(period(rep));
  n.rep = std::move(rep);
  n.alphabet = alphabet;
  return n;
}

}  // namespace detail

/// Enumerates all words and keeps the canonical ones.
inline std::vector<Necklace> enumerate_necklaces_brute(std::uint32_t a, std::size_t q) {
  std::vector<Necklace> out;
  Word w(q, 1);
  while (true) {
    if (least_rotation(w) == 0) out.push_back(detail::make_necklace(w, a));
    std::size_t k = q;
    while (k > 0 && w[k - 1] == a) w[--k] = 1;
    if (k == 0) break;
    ++w[k - 1];
  }
  return out;
}

/// Fredricksen-Kessler-Maiorana generation (Duval's iteration over Lyndon
/// prefixes).  Calls fn(rep) for every necklace in lexicographic order.
template <class Fn>
void for_each_necklace_fkm(std::uint32_t a, std::size_t q, Fn&& fn) {
  if (a == 0 || q == 0) return;
  std::vector<std::uint32_t> w{1};
  Word rep(q);
  while (true) {
    const std::size_t m = w.size();
    if (q % m == 0) {
      for (std::size_t k = 0; k < q; ++k) rep[k] = static_cast<Letter>(w[k % m]);
      fn(std::span<const Letter>(rep));
    }
    while (w.size() < q) w.push_back(w[w.size() - m]);
    while (!w.empty() && w.back() == a) w.pop_back();
    if (w.empty()) break;
    ++w.back();
  }
}

inline std::vector<Necklace> enumerate_necklaces_fkm(std::uint32_t a, std::size_t q) {
  std::vector<Necklace> out;
  for_each_necklace_fkm(a, q, [&](std::span<const Letter> rep) {
    out.push_back(detail::make_necklace(Word(rep.begin(), rep.end()), a));
  });
  return out;
}

/// Necklaces of length q over {1..a}, sorted by representative.
inline std::vector<Necklace> enumerate_necklaces(std::uint32_t a, std::size_t q) {
  if (q == 0) throw Error(ErrorKind::precondition_violated, "necklace length must be positive");
  if (a == 0) return {};
  return q <= 7 ? enumerate_necklaces_brute(a, q) : enumerate_necklaces_fkm(a, q);
}

/// (a^q - a)/q + a, valid for prime q.
inline std::uint64_t prime_length_necklace_count(std::uint64_t a, std::uint64_t q) {
  std::uint64_t power = 1;
  for (std::uint64_t i = 0; i < q; ++i) power *= a;
  return (power - a) / q + a;
}

enum class OccupancyClass { one_one, plus_one, one_plus, plus_plus, other };

inline std::string_view to_string(OccupancyClass c) {
  switch (c) {
    case OccupancyClass::one_one: return "11";
    case OccupancyClass::plus_one: return "plus1";
    case OccupancyClass::one_plus: return "1plus";
    case OccupancyClass::plus_plus: return "plusplus";
    case OccupancyClass::other: return "other";
  }
  return "?";
}

/// Occupancy of the first letter 1 and the last letter a: "plus1" means more
/// than one 1 and exactly one a.
inline OccupancyClass classify(std::span<const Letter> w, std::uint32_t alphabet) {
  const auto ones = std::ranges::count(w, Letter{1});
  const auto tops = std::ranges::count(w, static_cast<Letter>(alphabet));
  if (ones == 0 || tops == 0) return OccupancyClass::other;
  if (ones == 1) return tops == 1 ? OccupancyClass::one_one : OccupancyClass::one_plus;
  return tops == 1 ? OccupancyClass::plus_one : OccupancyClass::plus_plus;
}

inline OccupancyClass classify(const Necklace& n) { return classify(n.rep, n.alphabet); }

/// Image of a word under a letter map; letter_map[l] is the image of letter l
/// (index 0 unused), 0 meaning the word maps to zero.
inline std::optional<Word> map_letters(std::span<const Letter> w, std::span<const Letter> letter_map) {
  Word out(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) {
    const Letter l = letter_map[w[k]];
    if (l == 0) return std::nullopt;
    out[k] = l;
  }
  return out;
}

struct GammaStats {
  FieldElem gamma1;
  FieldElem gamma4;
  FieldElem delta;  // gamma1 - gamma4
};

/// Binary projection 1,2 -> 0 and 3,4 -> 1 of a word over {1,2,3,4}
/// (not called p, which already names the characteristic).
inline Word binproj(std::span<const Letter> w) {
  Word out(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) out[k] = w[k] >= 3 ? 1 : 0;
  return out;
}

/// Mean 1-based position of the 1-beads (resp. 4-beads) minus the rotation
/// index i that makes the binary projection least, computed in F_p.  The
/// values depend only on the necklace.
inline GammaStats gamma_stats(std::span<const Letter> w, const Field& field) {
  if (w.size() != field.characteristic())
    throw Error(ErrorKind::precondition_violated, "word length must equal the characteristic");
  std::int64_t sum1 = 0, count1 = 0, sum4 = 0, count4 = 0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (w[k] == 1) {
      sum1 += static_cast<std::int64_t>(k + 1);
      ++count1;
    } else if (w[k] == 4) {
      sum4 += static_cast<std::int64_t>(k + 1);
      ++count4;
    }
  }
  if (count1 == 0 || count4 == 0) throw Error(ErrorKind::missing_letter, "word lacks letter 1 or letter 4");
  const Word proj = binproj(w);
  const auto i = static_cast<std::int64_t>(least_rotation(proj));
  const FieldElem shift = field.from_int(i);
  GammaStats g;
  g.gamma1 = field.sub(field.div(field.from_int(sum1), field.from_int(count1)), shift);
  g.gamma4 = field.sub(field.div(field.from_int(sum4), field.from_int(count4)), shift);
  g.delta = field.sub(g.gamma1, g.gamma4);
  return g;
}

inline GammaStats gamma_stats(const Necklace& n, const Field& field) { return gamma_stats(n.rep, field); }

}  // namespace bok
