#pragma once

// Exact arithmetic in F_p and F_{p^m}.
//
// An element is stored as the integer sum_i c_i p^i of its coefficient
// vector (little-endian in the extension generator), so every element has a
// single fully reduced representation and equality is bitwise.  Prime fields
// use plain modular arithmetic; extensions multiply through discrete
// log / exp tables built once per context.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bokstedt/error.hpp"

namespace bok {

struct FieldElem {
  std::uint32_t value = 0;

  friend constexpr auto operator<=>(FieldElem, FieldElem) = default;
};

namespace poly {

// Dense polynomials over F_p, coefficients low -> high, trimmed.
using Poly = std::vector<std::uint32_t>;

inline void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, new_t = 1, r = p, new_r = a % p;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) throw Error(ErrorKind::division_by_zero, "element is not invertible mod " + std::to_string(p));
  return static_cast<std::uint32_t>(t < 0 ? t + p : t);
}

inline Poly mod(Poly a, const Poly& m, std::uint32_t p) {
  trim(a);
  const std::uint32_t lead_inv = inv_mod(m.back(), p);
  while (a.size() >= m.size()) {
    const std::uint64_t c = std::uint64_t{a.back()} * lead_inv % p;
    const std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i) {
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + (p - c) * m[i] % p) % p);
    }
    trim(a);
  }
  return a;
}

inline Poly mul_mod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t{a[i]} * b[j]) % p);
  return mod(std::move(r), m, p);
}

inline Poly sub(Poly a, const Poly& b, std::uint32_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

inline Poly gcd(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    a = mod(std::move(a), b, p);
    std::swap(a, b);
  }
  return a;
}

/// Ben-Or test: f of degree m is irreducible iff gcd(f, x^{p^i} - x) = 1 for
/// every 1 <= i <= m/2.
inline bool is_irreducible(const Poly& f, std::uint32_t p) {
  const std::size_t m = f.size() - 1;
  if (m == 0) return false;
  if (m == 1) return true;
  Poly x = mod({0, 1}, f, p);
  Poly power = x;
  for (std::size_t i = 1; i <= m / 2; ++i) {
    // power <- power^p mod f
    Poly base = power, acc{1};
    for (std::uint32_t e = p; e > 0; e >>= 1) {
      if (e & 1U) acc = mul_mod(acc, base, f, p);
      base = mul_mod(base, base, f, p);
    }
    power = acc;
    Poly g = gcd(f, sub(power, x, p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

}  // namespace poly

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

class Field {
 public:
  /// Builds F_{p^m}.  For m > 1 the modulus is the lexicographically least
  /// monic irreducible of degree m, comparing the non-leading coefficients
  /// from x^{m-1} down to x^0.
  static Field make(std::int64_t p, std::int64_t m = 1) {
    if (m < 1) throw Error(ErrorKind::degree_zero, "extension degree must be at least 1");
    if (p == 2)
      throw Error(ErrorKind::even_characteristic,
                  "characteristic 2 is excluded; the construction needs an odd prime");
    if (!is_prime(p)) throw Error(ErrorKind::not_prime, std::to_string(p) + " is not prime");
    if (p > 65521) throw Error(ErrorKind::precondition_violated, "characteristic too large");
    std::uint64_t q = 1;
    for (std::int64_t i = 0; i < m; ++i) {
      q *= static_cast<std::uint64_t>(p);
      if (q > (1U << 22))
        throw Error(ErrorKind::budget_exceeded, "field too large for table arithmetic");
    }
    Field field;
    field.p_ = static_cast<std::uint32_t>(p);
    field.m_ = static_cast<std::uint32_t>(m);
    field.q_ = static_cast<std::uint32_t>(q);
    if (m == 1) {
      field.modulus_ = {0, 1};
      return field;
    }
    field.modulus_ = lex_least_irreducible(field.p_, field.m_);
    field.tables_ = build_tables(field);
    return field;
  }

  std::uint32_t characteristic() const noexcept { return p_; }
  std::uint32_t degree() const noexcept { return m_; }
  std::uint32_t size() const noexcept { return q_; }
  bool is_prime_field() const noexcept { return m_ == 1; }
  /// Monic modulus, coefficients low -> high (x for the prime field).
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }

  FieldElem zero() const noexcept { return {0}; }
  FieldElem one() const noexcept { return {1}; }

  FieldElem from_int(std::int64_t v) const noexcept {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return {static_cast<std::uint32_t>(r)};
  }

  FieldElem from_coeffs(std::span<const std::uint32_t> coeffs) const {
    if (coeffs.size() > m_) throw Error(ErrorKind::dimension_mismatch, "too many coefficients");
    std::uint32_t v = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) v = v * p_ + coeffs[i] % p_;
    return {v};
  }

  std::vector<std::uint32_t> coeffs(FieldElem a) const {
    std::vector<std::uint32_t> c(m_);
    for (std::uint32_t i = 0; i < m_; ++i) {
      c[i] = a.value % p_;
      a.value /= p_;
    }
    return c;
  }

  FieldElem add(FieldElem a, FieldElem b) const noexcept {
    if (m_ == 1) {
      std::uint32_t s = a.value + b.value;
      return {s >= p_ ? s - p_ : s};
    }
    return digitwise(a, b, false);
  }

  FieldElem sub(FieldElem a, FieldElem b) const noexcept {
    if (m_ == 1) return {a.value >= b.value ? a.value - b.value : a.value + p_ - b.value};
    return digitwise(a, b, true);
  }

  FieldElem neg(FieldElem a) const noexcept { return sub(zero(), a); }

  FieldElem mul(FieldElem a, FieldElem b) const noexcept {
    if (m_ == 1) return {static_cast<std::uint32_t>(std::uint64_t{a.value} * b.value % p_)};
    if (a.value == 0 || b.value == 0) return {0};
    const auto& t = *tables_;
    std::uint32_t e = t.log[a.value] + t.log[b.value];
    if (e >= q_ - 1) e -= q_ - 1;
    return {t.exp[e]};
  }

  /// a + b * c
  FieldElem mul_add(FieldElem a, FieldElem b, FieldElem c) const noexcept {
    if (m_ == 1)
      return {static_cast<std::uint32_t>((a.value + std::uint64_t{b.value} * c.value) % p_)};
    return add(a, mul(b, c));
  }

  FieldElem inv(FieldElem a) const {
    if (a.value == 0) throw Error(ErrorKind::division_by_zero, "inverse of zero");
    if (m_ == 1) return {poly::inv_mod(a.value, p_)};
    const auto& t = *tables_;
    std::uint32_t l = t.log[a.value];
    return {t.exp[l == 0 ? 0 : q_ - 1 - l]};
  }

  FieldElem div(FieldElem a, FieldElem b) const { return mul(a, inv(b)); }

  FieldElem pow(FieldElem a, std::uint64_t e) const noexcept {
    FieldElem r = one();
    while (e > 0) {
      if (e & 1U) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  /// Every element exactly once: 0, 1, then increasing integer encoding.
  std::vector<FieldElem> elements() const {
    std::vector<FieldElem> out(q_);
    for (std::uint32_t i = 0; i < q_; ++i) out[i] = {i};
    return out;
  }

  /// "F_5" or "F_49 = F_7[x]/(x^2+...)".
  std::string describe() const {
    std::string s = "F_" + std::to_string(q_);
    if (m_ > 1) s += " = F_" + std::to_string(p_) + "[x]/(" + modulus_string() + ")";
    return s;
  }

  std::string modulus_string() const {
    std::string s;
    for (std::size_t i = modulus_.size(); i-- > 0;) {
      if (modulus_[i] == 0) continue;
      if (!s.empty()) s += "+";
      if (modulus_[i] != 1 || i == 0) s += std::to_string(modulus_[i]);
      if (i >= 1) s += "x";
      if (i >= 2) s += "^" + std::to_string(i);
    }
    return s;
  }

  friend bool operator==(const Field& a, const Field& b) noexcept {
    return a.p_ == b.p_ && a.m_ == b.m_ && a.modulus_ == b.modulus_;
  }

 private:
  struct Tables {
    std::vector<std::uint32_t> exp;  // exp[k] = g^k, k < q-1
    std::vector<std::uint32_t> log;  // log[g^k] = k, log[0] unused
  };

  Field() = default;

  FieldElem digitwise(FieldElem a, FieldElem b, bool subtract) const noexcept {
    std::uint32_t out = 0, scale = 1;
    std::uint32_t x = a.value, y = b.value;
    for (std::uint32_t i = 0; i < m_; ++i) {
      std::uint32_t dx = x % p_, dy = y % p_;
      std::uint32_t d = subtract ? (dx + p_ - dy) % p_ : (dx + dy) % p_;
      out += d * scale;
      scale *= p_;
      x /= p_;
      y /= p_;
    }
    return {out};
  }

  static std::vector<std::uint32_t> lex_least_irreducible(std::uint32_t p, std::uint32_t m) {
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < m; ++i) count *= p;
    for (std::uint64_t code = 0; code < count; ++code) {
      // digits of code from the most significant position give c_{m-1}..c_0
      poly::Poly f(m + 1, 0);
      f[m] = 1;
      std::uint64_t c = code;
      for (std::uint32_t i = 0; i < m; ++i) {
        f[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      if (f[0] == 0) continue;  // divisible by x
      if (poly::is_irreducible(f, p)) return f;
    }
    throw Error(ErrorKind::precondition_violated, "no irreducible polynomial found");
  }

  static std::shared_ptr<const Tables> build_tables(const Field& field) {
    const std::uint32_t q = field.q_, p = field.p_;
    auto to_poly = [&](std::uint32_t v) {
      poly::Poly f(field.m_, 0);
      for (std::uint32_t i = 0; i < field.m_; ++i) {
        f[i] = v % p;
        v /= p;
      }
      poly::trim(f);
      return f;
    };
    auto from_poly = [&](const poly::Poly& f) {
      std::uint32_t v = 0;
      for (std::size_t i = f.size(); i-- > 0;) v = v * p + f[i];
      return v;
    };
    std::vector<std::uint32_t> prime_factors;
    {
      std::uint32_t n = q - 1;
      for (std::uint32_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
          prime_factors.push_back(d);
          while (n % d == 0) n /= d;
        }
      }
      if (n > 1) prime_factors.push_back(n);
    }
    auto power = [&](const poly::Poly& g, std::uint64_t e) {
      poly::Poly acc{1}, base = g;
      while (e > 0) {
        if (e & 1U) acc = poly::mul_mod(acc, base, field.modulus_, p);
        base = poly::mul_mod(base, base, field.modulus_, p);
        e >>= 1;
      }
      return acc;
    };
    for (std::uint32_t cand = 2; cand < q; ++cand) {
      poly::Poly g = to_poly(cand);
      bool primitive = std::ranges::all_of(prime_factors, [&](std::uint32_t r) {
        poly::Poly h = power(g, (q - 1) / r);
        return !(h.size() == 1 && h[0] == 1);
      });
      if (!primitive) continue;
      auto tables = std::make_shared<Tables>();
      tables->exp.resize(q - 1);
      tables->log.assign(q, 0);
      poly::Poly cur{1};
      for (std::uint32_t k = 0; k + 1 < q; ++k) {
        std::uint32_t v = from_poly(cur);
        tables->exp[k] = v;
        tables->log[v] = k;
        cur = poly::mul_mod(cur, g, field.modulus_, p);
      }
      return tables;
    }
    throw Error(ErrorKind::precondition_violated, "no primitive element found");
  }

  std::uint32_t p_ = 3;
  std::uint32_t m_ = 1;
  std::uint32_t q_ = 3;
  std::vector<std::uint32_t> modulus_;
  std::shared_ptr<const Tables> tables_;
};

/// make_field(p, m)
inline Field make_field(std::int64_t p, std::int64_t m = 1) { return Field::make(p, m); }

}  // namespace bok
