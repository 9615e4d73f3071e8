#pragma once

// Traces of words in 2x2 matrices: the element t in C(g*) for g = sl_2 with
// basis e, h, f, and the one-parameter family t_lambda over X_3.
//
// In tr(a^q) for a = sum_j M_j (x) x_j the monomial x_{w_1} ... x_{w_q}
// (first tensor slot first) carries tr(M_{w_q} ... M_{w_1}): the first slot
// is the first matrix applied.

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bokstedt/cyclic_power.hpp"
#include "bokstedt/error.hpp"
#include "bokstedt/field.hpp"
#include "bokstedt/matrix.hpp"
#include "bokstedt/necklace.hpp"

namespace bok {

struct SL2Basis {
  DenseMatrix e, h, f;
  bool h_negated = false;

  /// x -> e, y -> h, z -> f
  std::array<DenseMatrix, 3> letters() const { return {e, h, f}; }
};

/// e = [[0,1],[0,0]], h = [[1,0],[0,-1]], f = [[0,0],[1,0]]; with negate_h
/// the sign of h is flipped.
inline SL2Basis make_sl2_basis(const Field& field, bool negate_h = false) {
  const std::int64_t s = negate_h ? -1 : 1;
  SL2Basis b;
  b.e = DenseMatrix::from_rows(field, {{0, 1}, {0, 0}});
  b.h = DenseMatrix::from_rows(field, {{s, 0}, {0, -s}});
  b.f = DenseMatrix::from_rows(field, {{0, 0}, {1, 0}});
  b.h_negated = negate_h;
  return b;
}

inline FieldElem trace(const Field& field, const DenseMatrix& m) {
  FieldElem t{};
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i) t = field.add(t, m(i, i));
  return t;
}

inline DenseMatrix kronecker(const Field& field, const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c) k(i * b.rows() + r, j * b.cols() + c) = field.mul(a(i, j), b(r, c));
  return k;
}

/// tr(M_{w_1} M_{w_2} ... M_{w_q}), letters 1-based into mats.
inline FieldElem word_trace(const Field& field, std::span<const DenseMatrix> mats, std::span<const Letter> word) {
  if (word.empty()) throw Error(ErrorKind::malformed_word, "empty word");
  for (Letter l : word)
    if (l < 1 || l > mats.size()) throw Error(ErrorKind::malformed_word, "letter outside alphabet");
  DenseMatrix acc = mats[word[0] - 1u];
  for (std::size_t k = 1; k < word.size(); ++k) acc = multiply(field, acc, mats[word[k] - 1u]);
  return trace(field, acc);
}

/// Words over {x, y, z}, e.g. "xhy" is rejected; "xyz" means e h f.
inline Word xyz_word(std::string_view s) {
  Word w;
  for (char ch : s) {
    if (ch < 'x' || ch > 'z') throw Error(ErrorKind::malformed_word, std::string("bad letter in ") + std::string(s));
    w.push_back(static_cast<Letter>(ch - 'x' + 1));
  }
  return w;
}

inline FieldElem word_trace(const Field& field, const SL2Basis& b, std::string_view xyz) {
  const auto mats = b.letters();
  return word_trace(field, mats, xyz_word(xyz));
}

/// Coefficient of the monomial w in tr(a^q): the trace of the product taken
/// in composition order.
inline FieldElem monomial_trace(const Field& field, std::span<const DenseMatrix> mats, std::span<const Letter> w) {
  Word r(w.rbegin(), w.rend());
  return word_trace(field, mats, r);
}

/// tr(a^q) in C(M) for a = sum_j mats[j] (x) x_j, one product per necklace.
inline CycVector trace_power(const Field& field, std::span<const DenseMatrix> mats, std::size_t q) {
  auto space = make_cyc_space(static_cast<std::uint32_t>(mats.size()), q);
  CycVector out(space);
  for (std::size_t i = 0; i < space->dim(); ++i) out.add_to(field, i, monomial_trace(field, mats, space->word(i)));
  return out;
}

enum class TMethod { brute, structural };

/// True when the letters x and z alternate around the cyclic word (y's
/// ignored) and at least one of them occurs.
inline bool alternating_pattern(std::span<const Letter> w) {
  Letter last = 0;
  Letter first = 0;
  for (Letter l : w) {
    if (l == 2) continue;
    if (first == 0) first = l;
    if (l == last) return false;
    last = l;
  }
  return first != 0 && first != last;
}

/// t = tr(a^p) in C(g*), with x, y, z the coordinates dual to e, h, f.
/// brute: evaluate every one of the 3^p monomials, insisting the values are
/// constant on rotation orbits, then read one value per necklace.
/// structural: evaluate only necklaces whose x's and z's alternate.
inline CycVector element_t(const Field& field, TMethod method, const SL2Basis& basis) {
  const std::size_t p = field.characteristic();
  const auto mats = basis.letters();
  auto space = make_cyc_space(3, p);
  CycVector out(space);
  if (method == TMethod::structural) {
    for (std::size_t i = 0; i < space->dim(); ++i) {
      const Word w = space->word(i);
      if (alternating_pattern(w)) out.add_to(field, i, monomial_trace(field, mats, w));
    }
    return out;
  }
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < p; ++k) total *= 3;
  if (total > 3'000'000) throw Error(ErrorKind::budget_exceeded, "brute force over all words is too large");
  Vector value(space->dim());
  std::vector<char> seen(space->dim(), 0);
  Word w(p, 1);
  for (std::uint64_t n = 0; n < total; ++n) {
    const FieldElem c = monomial_trace(field, mats, w);
    const std::size_t i = space->index_of(w);
    if (!seen[i]) {
      seen[i] = 1;
      value[i] = c;
    } else if (value[i] != c) {
      throw Error(ErrorKind::precondition_violated, "trace not constant on a rotation orbit");
    }
    std::size_t k = p;
    while (k > 0 && w[k - 1] == 3) w[--k] = 1;
    if (k > 0) ++w[k - 1];
  }
  return CycVector::from_dense(space, value);
}

inline CycVector element_t(const Field& field, TMethod method = TMethod::structural) {
  return element_t(field, method, make_sl2_basis(field));
}

/// Polynomial in lambda, coefficients low degree first, no trailing zeros.
class LambdaPoly {
 public:
  LambdaPoly() = default;
  explicit LambdaPoly(std::vector<FieldElem> c) : c_(std::move(c)) { trim(); }

  static LambdaPoly constant(FieldElem a) { return LambdaPoly({a}); }
  static LambdaPoly linear(FieldElem a0, FieldElem a1) { return LambdaPoly({a0, a1}); }

  const std::vector<FieldElem>& coefficients() const noexcept { return c_; }
  FieldElem coefficient(std::size_t k) const { return k < c_.size() ? c_[k] : FieldElem{}; }
  bool is_zero() const noexcept { return c_.empty(); }
  /// -1 for the zero polynomial
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }

  FieldElem evaluate(const Field& field, FieldElem x) const {
    FieldElem acc{};
    for (std::size_t k = c_.size(); k-- > 0;) acc = field.mul_add(c_[k], acc, x);
    return acc;
  }

  static LambdaPoly add(const Field& field, const LambdaPoly& a, const LambdaPoly& b) {
    std::vector<FieldElem> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = field.add(a.coefficient(k), b.coefficient(k));
    return LambdaPoly(std::move(c));
  }

  static LambdaPoly mul(const Field& field, const LambdaPoly& a, const LambdaPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<FieldElem> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] = field.mul_add(c[i + j], a.c_[i], b.c_[j]);
    return LambdaPoly(std::move(c));
  }

  friend bool operator==(const LambdaPoly&, const LambdaPoly&) = default;

 private:
  void trim() {
    while (!c_.empty() && c_.back().value == 0) c_.pop_back();
  }
  std::vector<FieldElem> c_;
};

using PolyMatrix = std::array<std::array<LambdaPoly, 2>, 2>;

inline PolyMatrix poly_matmul(const Field& field, const PolyMatrix& a, const PolyMatrix& b) {
  PolyMatrix c;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      c[i][j] = LambdaPoly::add(field, LambdaPoly::mul(field, a[i][0], b[0][j]), LambdaPoly::mul(field, a[i][1], b[1][j]));
  return c;
}

inline DenseMatrix evaluate(const Field& field, const PolyMatrix& m, FieldElem lambda) {
  DenseMatrix out(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out(i, j) = m[i][j].evaluate(field, lambda);
  return out;
}

/// a = e (x) x + h (x) y + f (x) z after x -> -2 v1, y -> lambda v1 +
/// (1 - lambda) v2 + lambda v3, z -> 2 lambda v3, collected by v_j:
/// A1 = -2e + lambda h, A2 = (1 - lambda) h, A3 = lambda h + 2 lambda f.
struct SubstitutionFamily {
  std::array<PolyMatrix, 3> a;

  std::array<DenseMatrix, 3> at(const Field& field, FieldElem lambda) const {
    return {evaluate(field, a[0], lambda), evaluate(field, a[1], lambda), evaluate(field, a[2], lambda)};
  }
};

inline SubstitutionFamily substitution_family(const Field& field, const SL2Basis& b) {
  // entrywise: M = c0 * B0 + lambda * c1 * B1 ...
  auto combo = [&](std::initializer_list<std::tuple<std::int64_t, std::int64_t, const DenseMatrix*>> terms) {
    PolyMatrix m;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        LambdaPoly entry;
        for (const auto& [c0, c1, mat] : terms) {
          const FieldElem x = (*mat)(i, j);
          entry = LambdaPoly::add(field, entry,
                                  LambdaPoly::linear(field.mul(field.from_int(c0), x), field.mul(field.from_int(c1), x)));
        }
        m[i][j] = entry;
      }
    return m;
  };
  SubstitutionFamily s;
  s.a[0] = combo({{-2, 0, &b.e}, {0, 1, &b.h}});
  s.a[1] = combo({{1, -1, &b.h}});
  s.a[2] = combo({{0, 1, &b.h}, {0, 2, &b.f}});
  return s;
}

inline SubstitutionFamily substitution_family(const Field& field) {
  return substitution_family(field, make_sl2_basis(field));
}

/// tau_lambda as a map g* -> X_3 (columns x, y, z; rows v1, v2, v3).
inline DenseMatrix tau_matrix(const Field& field, FieldElem lambda) {
  DenseMatrix t(3, 3);
  t(0, 0) = field.from_int(-2);
  t(0, 1) = lambda;
  t(1, 1) = field.sub(field.one(), lambda);
  t(2, 1) = lambda;
  t(2, 2) = field.mul(field.from_int(2), lambda);
  return t;
}

/// t_lambda in C(X_3), one numeric product per necklace.
inline CycVector t_lambda(const Field& field, FieldElem lambda, const SL2Basis& b) {
  const auto mats = substitution_family(field, b).at(field, lambda);
  return trace_power(field, mats, field.characteristic());
}

inline CycVector t_lambda(const Field& field, FieldElem lambda) {
  return t_lambda(field, lambda, make_sl2_basis(field));
}

/// t_lambda with coefficients in k[lambda].
struct TPoly {
  CycSpacePtr space;
  std::map<std::uint32_t, LambdaPoly> coeffs;  // zero polynomials omitted

  CycVector evaluate(const Field& field, FieldElem lambda) const {
    CycVector out(space);
    for (const auto& [i, poly] : coeffs) out.add_to(field, i, poly.evaluate(field, lambda));
    return out;
  }

  CycVector degree_part(const Field& field, std::size_t k) const {
    CycVector out(space);
    for (const auto& [i, poly] : coeffs) out.add_to(field, i, poly.coefficient(k));
    return out;
  }

  int max_degree() const {
    int d = -1;
    for (const auto& [i, poly] : coeffs) d = std::max(d, poly.degree());
    return d;
  }
};

inline TPoly t_poly(const Field& field, const SL2Basis& b) {
  const std::size_t p = field.characteristic();
  const SubstitutionFamily fam = substitution_family(field, b);
  TPoly out{make_cyc_space(3, p), {}};
  for (std::size_t i = 0; i < out.space->dim(); ++i) {
    const Word w = out.space->word(i);
    PolyMatrix acc = fam.a[w[p - 1] - 1u];
    for (std::size_t k = p - 1; k-- > 0;) acc = poly_matmul(field, acc, fam.a[w[k] - 1u]);
    LambdaPoly tr = LambdaPoly::add(field, acc[0][0], acc[1][1]);
    if (!tr.is_zero()) out.coeffs.emplace(static_cast<std::uint32_t>(i), std::move(tr));
  }
  return out;
}

inline TPoly t_poly(const Field& field) { return t_poly(field, make_sl2_basis(field)); }

/// v = sum_{a=0}^{p-2} (-1)^a v1 v2^{p-2-a} v3 v2^a in C(X_3).
inline CycVector v_element(const Field& field) {
  const std::size_t p = field.characteristic();
  auto space = make_cyc_space(3, p);
  CycVector out(space);
  for (std::size_t a = 0; a + 2 <= p; ++a) {
    Word w{1};
    w.insert(w.end(), p - 2 - a, 2);
    w.push_back(3);
    w.insert(w.end(), a, 2);
    out.add_to(field, space->index_of(w), a % 2 == 0 ? field.one() : field.neg(field.one()));
  }
  return out;
}

/// The closed form -4 v of the lambda-derivative of t_lambda at 0.
inline CycVector t_prime_zero(const Field& field) { return scale(field, field.from_int(-4), v_element(field)); }

}  // namespace bok
