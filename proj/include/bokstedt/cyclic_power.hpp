#pragma once

// C(M): rotation invariants of M^{(x)q} in the necklace basis.
//
// The basis vector of an aperiodic necklace is the sum of its q rotations;
// the basis vector of a constant necklace is the single monomial.  For prime
// q these are the only orbit types.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bokstedt/error.hpp"
#include "bokstedt/field.hpp"
#include "bokstedt/matrix.hpp"
#include "bokstedt/necklace.hpp"

namespace bok {

class CycSpace {
 public:
  CycSpace(std::uint32_t base_dim, std::size_t length) : base_dim_(base_dim), length_(length) {
    if (base_dim == 0) throw Error(ErrorKind::precondition_violated, "base dimension must be positive");
    if (length == 0 || length > 64) throw Error(ErrorKind::precondition_violated, "bad word length");
    // codes must fit in 64 bits
    long double total = 1;
    for (std::size_t i = 0; i < length; ++i) total *= base_dim;
    if (total > 1.8e19L) throw Error(ErrorKind::budget_exceeded, "tensor power too large to index");
    for_each_necklace_fkm(base_dim, length, [&](std::span<const Letter> rep) { codes_.push_back(encode(rep)); });
  }

  std::uint32_t base_dim() const noexcept { return base_dim_; }
  std::size_t length() const noexcept { return length_; }
  std::size_t dim() const noexcept { return codes_.size(); }

  /// Base-a digits, first letter most significant, so numeric order is
  /// lexicographic order.
  std::uint64_t encode(std::span<const Letter> w) const {
    std::uint64_t c = 0;
    for (Letter l : w) c = c * base_dim_ + (l - 1u);
    return c;
  }

  Word decode(std::uint64_t code) const {
    Word w(length_);
    for (std::size_t k = length_; k-- > 0;) {
      w[k] = static_cast<Letter>(code % base_dim_ + 1);
      code /= base_dim_;
    }
    return w;
  }

  Word word(std::size_t index) const { return decode(codes_.at(index)); }

  Necklace necklace(std::size_t index) const { return detail::make_necklace(word(index), base_dim_); }

  std::string label(std::size_t index) const { return necklace(index).to_string(); }

  bool is_constant(std::size_t index) const {
    const std::uint64_t c = codes_.at(index);
    return c == (c % base_dim_) * all_ones_;
  }

  /// Index of a canonical representative, or dim() when absent.
  std::size_t find_rep(std::span<const Letter> rep) const {
    const std::uint64_t c = encode(rep);
    auto it = std::lower_bound(codes_.begin(), codes_.end(), c);
    if (it == codes_.end() || *it != c) return dim();
    return static_cast<std::size_t>(it - codes_.begin());
  }

  /// Index of the necklace of an arbitrary word.
  std::size_t index_of(std::span<const Letter> w) const {
    if (w.size() != length_) throw Error(ErrorKind::dimension_mismatch, "word length");
    for (Letter l : w)
      if (l < 1 || l > base_dim_) throw Error(ErrorKind::malformed_word, "letter outside alphabet");
    const Word rep = rotate(w, least_rotation(w));
    return find_rep(rep);
  }

  std::size_t index_of(std::string_view digits) const { return index_of(word_from_string(digits)); }

  const std::vector<std::uint64_t>& codes() const noexcept { return codes_; }

  friend bool operator==(const CycSpace& a, const CycSpace& b) {
    return a.base_dim_ == b.base_dim_ && a.length_ == b.length_;
  }

 private:
  std::uint32_t base_dim_;
  std::size_t length_;
  std::uint64_t all_ones_ = compute_all_ones();
  std::vector<std::uint64_t> codes_;

  std::uint64_t compute_all_ones() const {
    std::uint64_t c = 0;
    for (std::size_t k = 0; k < length_; ++k) c = c * base_dim_ + 1;
    return c;
  }
};

using CycSpacePtr = std::shared_ptr<const CycSpace>;

inline CycSpacePtr make_cyc_space(std::uint32_t base_dim, std::size_t length) {
  return std::make_shared<const CycSpace>(base_dim, length);
}

inline CycSpacePtr make_cyc_space(std::uint32_t base_dim, const Field& field) {
  return make_cyc_space(base_dim, field.characteristic());
}

/// Sparse vector of C(M); never stores a zero coefficient.
class CycVector {
 public:
  CycVector() = default;
  explicit CycVector(CycSpacePtr space) : space_(std::move(space)) {}

  static CycVector from_dense(CycSpacePtr space, const Vector& v) {
    if (v.size() != space->dim()) throw Error(ErrorKind::dimension_mismatch, "dense vector length");
    CycVector out(std::move(space));
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i].value != 0) out.coeffs_.emplace(static_cast<std::uint32_t>(i), v[i]);
    return out;
  }

  const CycSpace& space() const { return *space_; }
  const CycSpacePtr& space_ptr() const noexcept { return space_; }

  FieldElem coefficient(std::size_t index) const {
    auto it = coeffs_.find(static_cast<std::uint32_t>(index));
    return it == coeffs_.end() ? FieldElem{} : it->second;
  }

  FieldElem coefficient(std::string_view digits) const { return coefficient(space_->index_of(digits)); }

  void add_to(const Field& field, std::size_t index, FieldElem value) {
    if (index >= space_->dim()) throw Error(ErrorKind::dimension_mismatch, "necklace index");
    if (value.value == 0) return;
    auto [it, inserted] = coeffs_.emplace(static_cast<std::uint32_t>(index), value);
    if (!inserted) {
      it->second = field.add(it->second, value);
      if (it->second.value == 0) coeffs_.erase(it);
    }
  }

  void add_to(const Field& field, std::string_view digits, FieldElem value) {
    add_to(field, space_->index_of(digits), value);
  }

  const std::map<std::uint32_t, FieldElem>& entries() const noexcept { return coeffs_; }
  std::size_t support_size() const noexcept { return coeffs_.size(); }
  bool is_zero() const noexcept { return coeffs_.empty(); }

  Vector to_dense() const {
    Vector v(space_->dim());
    for (const auto& [i, c] : coeffs_) v[i] = c;
    return v;
  }

  friend bool operator==(const CycVector& a, const CycVector& b) {
    return *a.space_ == *b.space_ && a.coeffs_ == b.coeffs_;
  }

 private:
  CycSpacePtr space_;
  std::map<std::uint32_t, FieldElem> coeffs_;
};

inline CycVector add(const Field& field, const CycVector& a, const CycVector& b) {
  if (!(a.space() == b.space())) throw Error(ErrorKind::dimension_mismatch, "different cyclic spaces");
  CycVector out = a;
  for (const auto& [i, c] : b.entries()) out.add_to(field, i, c);
  return out;
}

inline CycVector scale(const Field& field, FieldElem s, const CycVector& a) {
  CycVector out(a.space_ptr());
  for (const auto& [i, c] : a.entries()) out.add_to(field, i, field.mul(s, c));
  return out;
}

inline CycVector apply(const Field& field, const SparseMatrix& m, const CycVector& v, CycSpacePtr dst) {
  if (m.cols() != v.space().dim() || m.rows() != dst->dim())
    throw Error(ErrorKind::dimension_mismatch, "induced map does not match the spaces");
  return CycVector::from_dense(std::move(dst), multiply(field, m, v.to_dense()));
}

namespace detail {

// With composite lengths there are orbits of intermediate size, which the
// basis convention does not cover.
inline void require_prime_length(const CycSpace& s) {
  if (!is_prime(static_cast<std::int64_t>(s.length())))
    throw Error(ErrorKind::precondition_violated, "word length must be prime");
}

/// Image of the basis vector of source necklace `rep` under f^{(x)q}, written
/// in the destination necklace basis.  Each image word u with coefficient F[u]
/// is read off through its canonical rotation: for a constant source only
/// the representative of each target counts; for an aperiodic source every
/// word of an aperiodic target counts (the rotated source words contribute
/// the remaining rotations), and constant targets collect q copies (zero
/// when q is the characteristic).
template <class Emit>
void expand_induced(const Field& field, const DenseMatrix& f, std::span<const Letter> rep, bool source_constant,
                    const CycSpace& dst, Emit&& emit) {
  const std::size_t q = rep.size();
  const FieldElem q_copies = field.from_int(static_cast<std::int64_t>(q));
  std::vector<std::vector<std::pair<Letter, FieldElem>>> options(q);
  for (std::size_t k = 0; k < q; ++k) {
    for (std::size_t t = 0; t < f.rows(); ++t) {
      const FieldElem c = f(t, rep[k] - 1u);
      if (c.value != 0) options[k].emplace_back(static_cast<Letter>(t + 1), c);
    }
    if (options[k].empty()) return;
  }
  Word u(q);
  std::vector<FieldElem> prefix(q + 1);
  prefix[0] = field.one();
  std::vector<std::size_t> choice(q, 0);
  std::size_t depth = 0;
  // iterative product over all choices
  while (true) {
    if (depth == q) {
      const std::size_t shift = least_rotation(u);
      if (!source_constant || shift == 0) {
        const bool target_constant = period(u) == 1;
        const FieldElem c = !source_constant && target_constant ? field.mul(q_copies, prefix[q]) : prefix[q];
        emit(dst.find_rep(rotate(u, shift)), c);
      }
      --depth;
      ++choice[depth];
      continue;
    }
    if (choice[depth] == options[depth].size()) {
      if (depth == 0) break;
      choice[depth] = 0;
      --depth;
      ++choice[depth];
      continue;
    }
    const auto& [letter, c] = options[depth][choice[depth]];
    u[depth] = letter;
    prefix[depth + 1] = field.mul(prefix[depth], c);
    ++depth;
  }
}

}  // namespace detail

/// Matrix of C(f): C(M) -> C(W) for f: M -> W given as a dim W x dim M matrix.
inline SparseMatrix induced_map(const Field& field, const DenseMatrix& f, const CycSpace& src, const CycSpace& dst) {
  detail::require_prime_length(src);
  if (f.cols() != src.base_dim() || f.rows() != dst.base_dim() || src.length() != dst.length())
    throw Error(ErrorKind::dimension_mismatch, "linear map does not match the cyclic spaces");
  std::vector<SparseEntry> triples;
  for (std::size_t j = 0; j < src.dim(); ++j) {
    const Word rep = src.word(j);
    detail::expand_induced(field, f, rep, period(rep) == 1, dst, [&](std::size_t i, FieldElem c) {
      triples.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), c});
    });
  }
  return SparseMatrix::from_triples(field, dst.dim(), src.dim(), std::move(triples));
}

/// C(f) applied to one vector, touching only its support.
inline CycVector apply_induced(const Field& field, const DenseMatrix& f, const CycVector& v, CycSpacePtr dst) {
  const CycSpace& src = v.space();
  detail::require_prime_length(src);
  if (f.cols() != src.base_dim() || f.rows() != dst->base_dim() || src.length() != dst->length())
    throw Error(ErrorKind::dimension_mismatch, "linear map does not match the cyclic spaces");
  CycVector out(dst);
  for (const auto& [j, c] : v.entries()) {
    const Word rep = src.word(j);
    detail::expand_induced(field, f, rep, period(rep) == 1, *dst,
                           [&](std::size_t i, FieldElem x) { out.add_to(field, i, field.mul(c, x)); });
  }
  return out;
}

/// Letter-to-letter map: letter_map[l] is the image of letter l (index 0
/// unused); 0 sends the letter to zero.
inline DenseMatrix letter_map_matrix(std::span<const Letter> letter_map, std::uint32_t target_dim) {
  DenseMatrix f(target_dim, letter_map.size() - 1);
  for (std::size_t l = 1; l < letter_map.size(); ++l)
    if (letter_map[l] != 0) f(letter_map[l] - 1u, l - 1) = FieldElem{1};
  return f;
}

/// Fast path for letter maps: each basis necklace goes to a multiple of one
/// necklace or to zero.
inline SparseMatrix induced_letter_map(const Field& field, std::span<const Letter> letter_map, const CycSpace& src,
                                       const CycSpace& dst) {
  detail::require_prime_length(src);
  if (letter_map.size() != src.base_dim() + 1u || src.length() != dst.length())
    throw Error(ErrorKind::dimension_mismatch, "letter map does not match the cyclic spaces");
  std::vector<SparseEntry> triples;
  triples.reserve(src.dim());
  for (std::size_t j = 0; j < src.dim(); ++j) {
    const Word rep = src.word(j);
    auto image = map_letters(rep, letter_map);
    if (!image) continue;
    const FieldElem c = period(*image) == 1 && period(rep) != 1
                            ? field.from_int(static_cast<std::int64_t>(rep.size()))
                            : field.one();
    triples.push_back({static_cast<std::uint32_t>(dst.index_of(*image)), static_cast<std::uint32_t>(j), c});
  }
  return SparseMatrix::from_triples(field, dst.dim(), src.dim(), std::move(triples));
}

/// Expansion into the full tensor basis M^{(x)q}, indexed by word codes.
/// Oracle only.
inline Vector expand_full(const CycVector& v, std::size_t max_dim = 243) {
  const CycSpace& s = v.space();
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < s.length(); ++k) total *= s.base_dim();
  if (total > max_dim) throw Error(ErrorKind::budget_exceeded, "full tensor expansion too large");
  Vector out(total);
  for (const auto& [i, c] : v.entries()) {
    const Word rep = s.word(i);
    for (std::size_t r = 0; r < rep.size(); ++r) out[s.encode(rotate(rep, r))] = c;
  }
  return out;
}

/// Cyclic rotation on the full tensor basis: (sigma x)[w] = x[rotate(w, 1)].
inline Vector rotate_full(const Vector& x, std::uint32_t base_dim, std::size_t length) {
  Vector out(x.size());
  for (std::uint64_t code = 0; code < x.size(); ++code) {
    // rotate the base-a digits left by one
    std::uint64_t top = 1;
    for (std::size_t k = 1; k < length; ++k) top *= base_dim;
    const std::uint64_t lead = code / top;
    const std::uint64_t rotated = (code % top) * base_dim + lead;
    out[code] = x[rotated];
  }
  return out;
}

/// The full matrix of f^{(x)q} on words; oracle only.
inline DenseMatrix tensor_power_full(const Field& field, const DenseMatrix& f, std::size_t q) {
  DenseMatrix out = DenseMatrix::identity(1);
  for (std::size_t k = 0; k < q; ++k) {
    DenseMatrix next(out.rows() * f.rows(), out.cols() * f.cols());
    for (std::size_t r = 0; r < out.rows(); ++r)
      for (std::size_t c = 0; c < out.cols(); ++c) {
        if (out(r, c).value == 0) continue;
        for (std::size_t a = 0; a < f.rows(); ++a)
          for (std::size_t b = 0; b < f.cols(); ++b)
            next(r * f.rows() + a, c * f.cols() + b) = field.mul(out(r, c), f(a, b));
      }
    out = std::move(next);
  }
  return out;
}

/// Shuffle (M^{(x)q}) (x) (M'^{(x)q}) -> (M (x) M')^{(x)q}.  The product
/// alphabet pairs (x, y) as letter (x - 1) * dim M' + y.
inline CycVector interleave(const Field& field, const CycVector& a, const CycVector& b) {
  const CycSpace& sa = a.space();
  const CycSpace& sb = b.space();
  if (sa.length() != sb.length()) throw Error(ErrorKind::dimension_mismatch, "interleave needs equal lengths");
  const std::size_t q = sa.length();
  auto dst = make_cyc_space(sa.base_dim() * sb.base_dim(), q);
  CycVector out(dst);
  Word w(q);
  for (const auto& [i, ca] : a.entries()) {
    const Word ra = sa.word(i);
    const bool const_a = period(ra) == 1;
    for (const auto& [j, cb] : b.entries()) {
      const Word rb = sb.word(j);
      // one representative per diagonal orbit of the pair of orbits
      const std::size_t shifts = (const_a || period(rb) == 1) ? 1 : q;
      for (std::size_t s = 0; s < shifts; ++s) {
        for (std::size_t k = 0; k < q; ++k)
          w[k] = static_cast<Letter>((ra[k] - 1u) * sb.base_dim() + rb[(k + s) % q]);
        out.add_to(field, dst->index_of(w), field.mul(ca, cb));
      }
    }
  }
  return out;
}

}  // namespace bok
