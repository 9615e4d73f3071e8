#pragma once

// Checks on t_lambda inside the normalized complex of C(X), X the simplicial
// module with X_m spanned by the surjections [m] -> [1].

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cstdint>
#include <exception>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "bokstedt/cyclic_power.hpp"
#include "bokstedt/error.hpp"
#include "bokstedt/field.hpp"
#include "bokstedt/linalg.hpp"
#include "bokstedt/matrix.hpp"
#include "bokstedt/necklace.hpp"
#include "bokstedt/simplicial.hpp"
#include "bokstedt/sl2.hpp"
#include "bokstedt/sparse_eliminator.hpp"

namespace bok {

/// Runs fn(i) for i in [0, n) on up to `threads` workers.  Callers write
/// results into slot i, so the outcome does not depend on scheduling.
inline void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n && !failed;) {
        try {
          fn(i);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

/// C(X_2), C(X_3), C(X_4) and the induced faces between them.
struct CXComplex {
  Field field;
  SphereModule x{1, 4};
  CycSpacePtr c2{}, c3{}, c4{};
  std::array<std::vector<Letter>, 4> letters3{};  // faces X_3 -> X_2 as letter maps
  std::array<std::vector<Letter>, 5> letters4{};  // faces X_4 -> X_3
  std::array<SparseMatrix, 4> d3{};               // C(X_3) -> C(X_2)
  std::array<SparseMatrix, 5> d4{};               // C(X_4) -> C(X_3)
};

inline CXComplex build_cx(const Field& field) {
  CXComplex cx{field};
  const std::size_t p = field.characteristic();
  cx.c2 = make_cyc_space(2, p);
  cx.c3 = make_cyc_space(3, p);
  cx.c4 = make_cyc_space(4, p);
  for (std::size_t i = 0; i < 4; ++i) {
    cx.letters3[i] = cx.x.face(3, i).letter_map();
    cx.d3[i] = induced_letter_map(field, cx.letters3[i], *cx.c3, *cx.c2);
  }
  for (std::size_t i = 0; i < 5; ++i) {
    cx.letters4[i] = cx.x.face(4, i).letter_map();
    cx.d4[i] = induced_letter_map(field, cx.letters4[i], *cx.c4, *cx.c3);
  }
  return cx;
}

inline bool check_face_vanishing(const CXComplex& cx, const CycVector& t) {
  const Vector x = t.to_dense();
  return std::ranges::all_of(cx.d3, [&](const SparseMatrix& d) { return is_zero(multiply(cx.field, d, x)); });
}

struct QuadricCheck {
  std::array<Vector, 4> kernel_lines;  // coordinates (x, y, z)
  std::array<bool, 4> nilpotent{};
  bool lines_distinct = false;

  bool passed() const { return lines_distinct && std::ranges::all_of(nilpotent, [](bool b) { return b; }); }
};

/// For each face d_i : X_3 -> X_2 the kernel of d_i o tau_lambda is a line in
/// g*; under x <-> f, y <-> h/2, z <-> e it must be a nilpotent matrix.
inline QuadricCheck check_borel_quadric(const Field& field, FieldElem lambda) {
  if (lambda == field.zero() || lambda == field.one())
    throw Error(ErrorKind::degenerate_parameter, "lambda must avoid 0 and 1");
  const SphereModule x(1, 3);
  const DenseMatrix tau = tau_matrix(field, lambda);
  const SL2Basis b = make_sl2_basis(field);
  const FieldElem half = field.inv(field.from_int(2));
  QuadricCheck out;
  for (std::size_t i = 0; i < 4; ++i) {
    const DenseMatrix d = x.face(3, i).matrix(field).to_dense();
    const auto ker = kernel_basis(field, multiply(field, d, tau));
    if (ker.size() != 1) throw Error(ErrorKind::precondition_violated, "kernel of a face is not a line");
    const Vector& k = ker.front();
    out.kernel_lines[i] = k;
    DenseMatrix m(2, 2);
    for (std::size_t r = 0; r < 2; ++r)
      for (std::size_t c = 0; c < 2; ++c)
        m(r, c) = field.add(field.add(field.mul(k[0], b.f(r, c)), field.mul(field.mul(k[1], half), b.h(r, c))),
                            field.mul(k[2], b.e(r, c)));
    const DenseMatrix sq = multiply(field, m, m);
    out.nilpotent[i] = sq == DenseMatrix(2, 2);
  }
  out.lines_distinct = true;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) {
      DenseMatrix pair(2, 3);
      for (std::size_t c = 0; c < 3; ++c) {
        pair(0, c) = out.kernel_lines[i][c];
        pair(1, c) = out.kernel_lines[j][c];
      }
      if (rank(field, pair) != 2) out.lines_distinct = false;
    }
  return out;
}

/// The functional c on C(X_3) with c(n) = k(S_2) - k(S_1) for necklaces using
/// all three letters, where S_j is the set of positions carrying a letter
/// above j and k(S) is the rotation taking S to the least rotation of its
/// indicator word.  It satisfies sum_i (-1)^i c o d_i = 0 on C(X_4), which
/// build_winding_cocycle checks before returning it.
inline Vector winding_functional(const Field& field, const CycSpace& c3) {
  Vector c(c3.dim());
  for (std::size_t i = 0; i < c3.dim(); ++i) {
    const Word w = c3.word(i);
    const bool all = std::ranges::count(w, Letter{1}) && std::ranges::count(w, Letter{2}) &&
                     std::ranges::count(w, Letter{3});
    if (!all) continue;
    Word s1(w.size()), s2(w.size());
    for (std::size_t k = 0; k < w.size(); ++k) {
      s1[k] = w[k] > 1;
      s2[k] = w[k] > 2;
    }
    c[i] = field.sub(field.from_int(static_cast<std::int64_t>(least_rotation(s2))),
                     field.from_int(static_cast<std::int64_t>(least_rotation(s1))));
  }
  return c;
}

inline std::optional<Vector> build_winding_cocycle(const CXComplex& cx) {
  const Field& field = cx.field;
  Vector c = winding_functional(field, *cx.c3);
  Vector total(cx.c4->dim());
  for (std::size_t i = 0; i < 5; ++i) {
    const Vector part = left_multiply(field, c, cx.d4[i]);
    for (std::size_t k = 0; k < total.size(); ++k)
      total[k] = i % 2 == 0 ? field.add(total[k], part[k]) : field.sub(total[k], part[k]);
  }
  if (!is_zero(total)) return std::nullopt;
  return c;
}

enum class CertificateKind { none, preimage, left_null, cocycle, transposed_solve };

inline std::string_view to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::none: return "none";
    case CertificateKind::preimage: return "preimage";
    case CertificateKind::left_null: return "left-null";
    case CertificateKind::cocycle: return "cocycle";
    case CertificateKind::transposed_solve: return "transposed-solve";
  }
  return "?";
}

/// Outcome of asking whether b = d_0(u) for some u with d_1 u = ... = d_4 u = 0.
struct BoundaryResult {
  bool is_boundary = false;
  CertificateKind kind = CertificateKind::none;
  /// u in C(X_4) when b is a boundary.
  std::optional<Vector> preimage;
  /// When b is not a boundary: functionals y_0..y_4 on C(X_3) with
  /// sum_i y_i o d_i = 0 on C(X_4) and y_0(b) != 0 (sparse route), or just
  /// y_0 vanishing on d_0 of the common kernel (dense route, y_1..y_4 empty).
  std::array<Vector, 5> certificate;
};

struct BoundaryOptions {
  Backend backend = Backend::automatic;
  std::size_t nnz_budget = 0;  // 0: unlimited
  bool use_cocycle = true;
};

/// Decides membership of many targets in d_0(Ker d_1 n ... n Ker d_4).  The
/// dense route builds a kernel basis and factors d_0 on it; the sparse route
/// eliminates the stacked system [d_1; d_2; d_3; d_4; d_0] u = [0; 0; 0; 0; b]
/// for all targets at once.
class BoundaryTester {
 public:
  BoundaryTester(const CXComplex& cx, BoundaryOptions options = {}) : cx_(cx), options_(options) {
    backend_ = options.backend;
    if (backend_ == Backend::automatic)
      backend_ = cx.c4->dim() <= 3000 ? Backend::dense : Backend::sparse;
  }

  Backend backend() const noexcept { return backend_; }

  std::vector<BoundaryResult> test(std::span<const CycVector> targets) const {
    for (const auto& t : targets) {
      if (!(t.space() == *cx_.c3)) throw Error(ErrorKind::dimension_mismatch, "target must live in C(X_3)");
      if (!check_face_vanishing(cx_, t))
        throw Error(ErrorKind::precondition_violated, "target has a nonzero face");
    }
    return backend_ == Backend::dense ? test_dense(targets) : test_sparse(targets);
  }

  BoundaryResult test(const CycVector& target) const { return test(std::span<const CycVector>(&target, 1)).front(); }

  /// Independent re-check of a result against its target.
  bool reverify(const BoundaryResult& r, const CycVector& target) const {
    const Field& field = cx_.field;
    const Vector b = target.to_dense();
    if (r.is_boundary) {
      if (!r.preimage) return false;
      const Vector& u = *r.preimage;
      for (std::size_t i = 1; i < 5; ++i)
        if (!is_zero(multiply(field, cx_.d4[i], u))) return false;
      return multiply(field, cx_.d4[0], u) == b;
    }
    if (r.certificate[0].empty() || dot(r.certificate[0], b).value == 0) return false;
    if (r.kind == CertificateKind::left_null) {
      const auto k = common_kernel();
      for (const auto& v : k)
        if (dot(r.certificate[0], multiply(field, cx_.d4[0], v)).value != 0) return false;
      return true;
    }
    Vector total(cx_.c4->dim());
    for (std::size_t i = 0; i < 5; ++i) {
      if (r.certificate[i].size() != cx_.c3->dim()) return false;
      const Vector part = left_multiply(field, r.certificate[i], cx_.d4[i]);
      for (std::size_t k = 0; k < total.size(); ++k) total[k] = field.add(total[k], part[k]);
    }
    return is_zero(total);
  }

 private:
  FieldElem dot(const Vector& a, const Vector& b) const {
    FieldElem s{};
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i].value != 0 && b[i].value != 0) s = cx_.field.mul_add(s, a[i], b[i]);
    return s;
  }

  std::vector<Vector> common_kernel() const {
    std::vector<SparseMatrix> rest(cx_.d4.begin() + 1, cx_.d4.end());
    return intersect_kernels(cx_.field, rest, Backend::dense);
  }

  std::vector<BoundaryResult> test_dense(std::span<const CycVector> targets) const {
    const Field& field = cx_.field;
    const auto k = common_kernel();
    const DenseMatrix image = image_of_basis(field, cx_.d4[0], k);
    const DenseColumnSpace space(field, image);
    std::vector<BoundaryResult> out;
    for (const auto& t : targets) {
      const Vector b = t.to_dense();
      Membership m = space.solve(b);
      BoundaryResult r;
      if (m.coefficients) {
        r.is_boundary = true;
        r.kind = CertificateKind::preimage;
        r.preimage = combine(field, k, *m.coefficients, cx_.c4->dim());
      } else {
        r.kind = CertificateKind::left_null;
        r.certificate[0] = std::move(*m.certificate);
      }
      if (!reverify(r, t)) throw Error(ErrorKind::precondition_violated, "dense boundary certificate failed");
      out.push_back(std::move(r));
    }
    return out;
  }

  SparseMatrix stacked() const {
    std::array<SparseMatrix, 5> order{cx_.d4[1], cx_.d4[2], cx_.d4[3], cx_.d4[4], cx_.d4[0]};
    return vstack(cx_.field, order);
  }

  std::vector<BoundaryResult> test_sparse(std::span<const CycVector> targets) const {
    const Field& field = cx_.field;
    const std::size_t n3 = cx_.c3->dim();
    const SparseMatrix s = stacked();
    std::vector<Vector> rhs;
    for (const auto& t : targets) {
      Vector r(s.rows());
      const Vector b = t.to_dense();
      std::copy(b.begin(), b.end(), r.begin() + static_cast<std::ptrdiff_t>(4 * n3));
      rhs.push_back(std::move(r));
    }
    SparseEliminator::Options eo;
    eo.nnz_budget = options_.nnz_budget;
    const SparseEliminator elim(field, s, rhs, eo);
    std::optional<Vector> cocycle;
    bool cocycle_tried = false;
    std::vector<BoundaryResult> out;
    for (std::size_t k = 0; k < targets.size(); ++k) {
      BoundaryResult r;
      if (auto u = elim.solution(k)) {
        r.is_boundary = true;
        r.kind = CertificateKind::preimage;
        r.preimage = std::move(*u);
      } else {
        const Vector b = targets[k].to_dense();
        if (options_.use_cocycle && !cocycle_tried) {
          cocycle = build_winding_cocycle(cx_);
          cocycle_tried = true;
        }
        if (cocycle && dot(*cocycle, b).value != 0) {
          r.kind = CertificateKind::cocycle;
          for (std::size_t i = 0; i < 5; ++i)
            r.certificate[i] = i % 2 == 0 ? *cocycle : scale_vec(field.neg(field.one()), *cocycle);
        } else {
          r.kind = CertificateKind::transposed_solve;
          r.certificate = transposed_certificate(s, rhs[k]);
        }
      }
      if (!reverify(r, targets[k])) throw Error(ErrorKind::precondition_violated, "sparse boundary certificate failed");
      out.push_back(std::move(r));
    }
    return out;
  }

  Vector scale_vec(FieldElem s, const Vector& v) const {
    Vector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = cx_.field.mul(s, v[i]);
    return out;
  }

  /// y with y^T S = 0 and y^T rhs = 1, found by eliminating [S^T; rhs^T].
  std::array<Vector, 5> transposed_certificate(const SparseMatrix& s, const Vector& rhs) const {
    const Field& field = cx_.field;
    std::vector<SparseEntry> e = s.transpose().entries();
    for (std::uint32_t r = 0; r < rhs.size(); ++r)
      if (rhs[r].value != 0) e.push_back({static_cast<std::uint32_t>(s.cols()), r, rhs[r]});
    const SparseMatrix a = SparseMatrix::from_triples(field, s.cols() + 1, s.rows(), std::move(e));
    Vector unit(a.rows());
    unit.back() = field.one();
    const std::vector<Vector> rhs_list{unit};
    SparseEliminator::Options eo;
    eo.nnz_budget = options_.nnz_budget;
    const SparseEliminator elim(field, a, rhs_list, eo);
    auto y = elim.solution(0);
    if (!y) throw Error(ErrorKind::precondition_violated, "no left-null certificate for an inconsistent system");
    const std::size_t n3 = cx_.c3->dim();
    std::array<Vector, 5> cert;
    // stacked order is d_1, d_2, d_3, d_4, d_0
    for (std::size_t block = 0; block < 5; ++block) {
      const std::size_t face = block == 4 ? 0 : block + 1;
      cert[face].assign(y->begin() + static_cast<std::ptrdiff_t>(block * n3),
                        y->begin() + static_cast<std::ptrdiff_t>((block + 1) * n3));
    }
    return cert;
  }

  const CXComplex& cx_;
  BoundaryOptions options_;
  Backend backend_;
};

/// u' = sum_a (-1)^a u2 u3^{p-2-a} u4 u3^a - sum_a (-1)^a u1 u3^{p-2-a} u4 u3^a.
inline CycVector u_prime(const CXComplex& cx) {
  const Field& field = cx.field;
  const std::size_t p = field.characteristic();
  CycVector out(cx.c4);
  for (std::size_t a = 0; a + 2 <= p; ++a) {
    const FieldElem sign = a % 2 == 0 ? field.one() : field.neg(field.one());
    for (Letter lead : {Letter{2}, Letter{1}}) {
      Word w{lead};
      w.insert(w.end(), p - 2 - a, 3);
      w.push_back(4);
      w.insert(w.end(), a, 3);
      out.add_to(field, cx.c4->index_of(w), lead == 2 ? sign : field.neg(sign));
    }
  }
  return out;
}

struct UPrimeCheck {
  std::array<bool, 5> face_ok{};  // d0 = v, d1 = 0, d2 = -v, d3 = 0, d4 = 0

  bool passed() const { return std::ranges::all_of(face_ok, [](bool b) { return b; }); }
};

inline UPrimeCheck check_uprime(const CXComplex& cx) {
  const Field& field = cx.field;
  const Vector u = u_prime(cx).to_dense();
  const Vector v = v_element(field).to_dense();
  Vector minus_v(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) minus_v[i] = field.neg(v[i]);
  const Vector zero(v.size());
  const std::array<const Vector*, 5> expected{&v, &zero, &minus_v, &zero, &zero};
  UPrimeCheck out;
  for (std::size_t i = 0; i < 5; ++i) out.face_ok[i] = multiply(field, cx.d4[i], u) == *expected[i];
  return out;
}

/// Sum over alternating subsequences s of even length of tr g_1 ... g_q with
/// g_i = h off s, e on s where w_i = 0, f on s where w_i = 1.  Returns the
/// sum and the number of subsequences.
inline std::pair<FieldElem, std::size_t> t01_word_sum(const Field& field, std::span<const std::uint8_t> w) {
  const std::size_t q = w.size();
  if (q < 3 || q % 2 == 0) throw Error(ErrorKind::malformed_word, "binary word must have odd length > 1");
  if (q > 20) throw Error(ErrorKind::budget_exceeded, "binary word too long");
  bool has0 = false, has1 = false;
  for (auto b : w) {
    if (b > 1) throw Error(ErrorKind::malformed_word, "binary word has a letter other than 0 and 1");
    (b ? has1 : has0) = true;
  }
  if (!has0 || !has1) throw Error(ErrorKind::malformed_word, "binary word must contain both letters");
  const SL2Basis b = make_sl2_basis(field);
  FieldElem sum{};
  std::size_t count = 0;
  for (std::uint32_t mask = 1; mask < (1u << q); ++mask) {
    if (std::popcount(mask) % 2 != 0) continue;
    int last = -1;
    bool alternating = true;
    for (std::size_t i = 0; i < q && alternating; ++i) {
      if (!(mask >> i & 1u)) continue;
      if (last == w[i]) alternating = false;
      last = w[i];
    }
    if (!alternating) continue;
    DenseMatrix acc = DenseMatrix::identity(2);
    for (std::size_t i = 0; i < q; ++i) {
      const DenseMatrix& g = !(mask >> i & 1u) ? b.h : (w[i] == 0 ? b.e : b.f);
      acc = multiply(field, acc, g);
    }
    sum = field.add(sum, trace(field, acc));
    ++count;
  }
  return {sum, count};
}

inline bool check_t01_word_identity(const Field& field, std::span<const std::uint8_t> w) {
  return t01_word_sum(field, w).first.value == 0;
}

/// All words 0^{a_1} 1^{b_1} ... 0^{a_k} 1^{b_k} of length q, blocks nonempty.
inline std::vector<std::vector<std::uint8_t>> block_words(std::size_t q) {
  std::vector<std::vector<std::uint8_t>> out;
  for (std::uint32_t mask = 0; mask < (1u << q); ++mask) {
    std::vector<std::uint8_t> w(q);
    for (std::size_t i = 0; i < q; ++i) w[i] = mask >> (q - 1 - i) & 1u;
    if (w.front() == 0 && w.back() == 1) out.push_back(std::move(w));
  }
  return out;
}

/// Containments of the occupancy classes under the letter maps d_1, d_2, d_3
/// from 4 to 3 letters.
inline bool check_filtration(const CXComplex& cx) {
  using OC = OccupancyClass;
  const std::size_t p = cx.field.characteristic();
  bool ok = true;
  for_each_necklace_fkm(4, p, [&](std::span<const Letter> rep) {
    const OC c4 = classify(rep, 4);
    if (c4 == OC::other) return;
    auto image = [&](std::size_t i) { return classify(*map_letters(rep, cx.letters4[i]), 3); };
    const OC i1 = image(1), i2 = image(2), i3 = image(3);
    if (i2 != c4) ok = false;
    if (c4 == OC::one_one && i1 != OC::one_one && i1 != OC::plus_one) ok = false;
    if (c4 == OC::plus_one && i1 != OC::plus_one) ok = false;
    if (c4 == OC::one_one && i3 != OC::one_one && i3 != OC::one_plus) ok = false;
    if (c4 == OC::one_plus && i3 != OC::one_plus) ok = false;
  });
  return ok;
}

struct NuCertificate {
  bool mu_vanishes = false;           // on U n Ker d_1 n Ker d_3
  bool mu_decomposes = false;         // mu = d_3^*(gamma_1 o s_3) - d_1^*(gamma_4 o s_1)
  bool mu_equals_d2_pullback = false;  // mu = d_2^* nu, for both lifts
  bool kernel_checked_literally = false;
  FieldElem nu_of_v;
  bool nu_of_v_matches = false;  // nu(v) = (1 - p)/2
};

/// mu(u_w) = Delta(w) on the necklaces of C(X_4) using letters 1 and 4;
/// nu(v_w) = Delta(s_2(w)) with s_2 the lift 1, 2, 3 -> 1, 2, 4.
inline NuCertificate nu_certificate(const CXComplex& cx, std::size_t literal_limit = 3000) {
  const Field& field = cx.field;
  const std::size_t p = field.characteristic();
  NuCertificate out;
  const std::vector<Letter> s1{0, 1, 3, 4}, s2{0, 1, 2, 4}, s2_alt{0, 1, 3, 4}, s3{0, 1, 2, 4};
  auto has_1_and_4 = [](std::span<const Letter> w) {
    return std::ranges::count(w, Letter{1}) > 0 && std::ranges::count(w, Letter{4}) > 0;
  };
  out.mu_decomposes = true;
  out.mu_equals_d2_pullback = true;
  std::vector<std::uint32_t> u_columns;
  Vector mu(cx.c4->dim());
  for (std::size_t j = 0; j < cx.c4->dim(); ++j) {
    const Word w = cx.c4->word(j);
    if (!has_1_and_4(w)) continue;
    u_columns.push_back(static_cast<std::uint32_t>(j));
    const GammaStats g = gamma_stats(w, field);
    mu[j] = g.delta;
    const Word w3 = *map_letters(w, cx.letters4[3]);
    const Word w1 = *map_letters(w, cx.letters4[1]);
    const Word w2 = *map_letters(w, cx.letters4[2]);
    const FieldElem decomposed =
        field.sub(gamma_stats(*map_letters(w3, s3), field).gamma1, gamma_stats(*map_letters(w1, s1), field).gamma4);
    if (decomposed != g.delta) out.mu_decomposes = false;
    if (gamma_stats(*map_letters(w2, s2), field).delta != g.delta ||
        gamma_stats(*map_letters(w2, s2_alt), field).delta != g.delta)
      out.mu_equals_d2_pullback = false;
  }
  if (u_columns.size() <= literal_limit) {
    // restrict [d_1; d_3] to the U columns and evaluate mu on its kernel
    std::vector<std::uint32_t> position(cx.c4->dim(), UINT32_MAX);
    for (std::size_t k = 0; k < u_columns.size(); ++k) position[u_columns[k]] = static_cast<std::uint32_t>(k);
    std::vector<SparseEntry> e;
    const std::size_t n3 = cx.c3->dim();
    for (std::size_t block = 0; block < 2; ++block)
      for (const auto& x : cx.d4[block == 0 ? 1 : 3].entries())
        if (position[x.col] != UINT32_MAX)
          e.push_back({static_cast<std::uint32_t>(x.row + block * n3), position[x.col], x.value});
    const SparseMatrix restricted = SparseMatrix::from_triples(field, 2 * n3, u_columns.size(), std::move(e));
    out.mu_vanishes = true;
    for (const auto& k : kernel_basis(field, restricted, Backend::automatic)) {
      FieldElem s{};
      for (std::size_t c = 0; c < k.size(); ++c) s = field.mul_add(s, mu[u_columns[c]], k[c]);
      if (s.value != 0) out.mu_vanishes = false;
    }
    out.kernel_checked_literally = true;
  } else {
    // mu lies in the span of d_1^* and d_3^* on U, so it vanishes on the kernel
    out.mu_vanishes = out.mu_decomposes;
  }
  const CycVector v = v_element(field);
  FieldElem nu_v{};
  for (const auto& [i, c] : v.entries())
    nu_v = field.mul_add(nu_v, c, gamma_stats(*map_letters(cx.c3->word(i), s2), field).delta);
  out.nu_of_v = nu_v;
  out.nu_of_v_matches = nu_v == field.div(field.from_int(1 - static_cast<std::int64_t>(p)), field.from_int(2));
  return out;
}

struct LambdaVerdict {
  FieldElem lambda;
  bool t_is_zero = false;
  bool faces_vanish = false;
  bool is_boundary = false;
  bool nontrivial = false;
  CertificateKind certificate = CertificateKind::none;
  bool certificate_verified = false;
};

struct SearchOptions {
  BoundaryOptions boundary;
  unsigned threads = 1;
  bool negate_h = false;
};

struct SearchResult {
  std::vector<LambdaVerdict> verdicts;
  std::vector<BoundaryResult> extra;  // one per extra target
  Backend backend = Backend::automatic;
};

/// One verdict per lambda outside {0, 1}, in field-element order.  Extra
/// targets ride along in the same factorization.
inline SearchResult lambda_search_with(const CXComplex& cx, const SearchOptions& options,
                                       std::span<const CycVector> extra) {
  const Field& field = cx.field;
  std::vector<FieldElem> lambdas;
  for (FieldElem x : field.elements())
    if (x != field.zero() && x != field.one()) lambdas.push_back(x);
  const SL2Basis basis = make_sl2_basis(field, options.negate_h);
  std::vector<CycVector> ts(lambdas.size());
  SearchResult out;
  out.verdicts.resize(lambdas.size());
  parallel_for(lambdas.size(), options.threads, [&](std::size_t i) {
    ts[i] = t_lambda(field, lambdas[i], basis);
    out.verdicts[i].lambda = lambdas[i];
    out.verdicts[i].t_is_zero = ts[i].is_zero();
    out.verdicts[i].faces_vanish = check_face_vanishing(cx, ts[i]);
  });
  std::vector<CycVector> targets(extra.begin(), extra.end());
  std::vector<std::size_t> slot;
  for (std::size_t i = 0; i < lambdas.size(); ++i)
    if (out.verdicts[i].faces_vanish && !out.verdicts[i].t_is_zero) {
      targets.push_back(ts[i]);
      slot.push_back(i);
    }
  const BoundaryTester tester(cx, options.boundary);
  out.backend = tester.backend();
  if (targets.empty()) return out;
  auto results = tester.test(targets);
  std::vector<char> verified(targets.size(), 0);
  parallel_for(targets.size(), options.threads,
               [&](std::size_t k) { verified[k] = tester.reverify(results[k], targets[k]) ? 1 : 0; });
  for (std::size_t k = 0; k < slot.size(); ++k) {
    const std::size_t r = extra.size() + k;
    LambdaVerdict& v = out.verdicts[slot[k]];
    v.is_boundary = results[r].is_boundary;
    v.certificate = results[r].kind;
    v.certificate_verified = verified[r] != 0;
    v.nontrivial = !v.t_is_zero && v.faces_vanish && !v.is_boundary && v.certificate_verified;
  }
  for (std::size_t k = 0; k < extra.size(); ++k) {
    if (!verified[k]) throw Error(ErrorKind::precondition_violated, "boundary certificate failed to re-verify");
    out.extra.push_back(std::move(results[k]));
  }
  return out;
}

inline std::vector<LambdaVerdict> lambda_search(const CXComplex& cx, const SearchOptions& options = {}) {
  return lambda_search_with(cx, options, {}).verdicts;
}

inline std::vector<FieldElem> witnesses(const std::vector<LambdaVerdict>& verdicts) {
  std::vector<FieldElem> out;
  for (const auto& v : verdicts)
    if (v.nontrivial) out.push_back(v.lambda);
  return out;
}

}  // namespace bok
