#pragma once

// Simplicial modules given levelwise by bases and face maps: the reduced
// linearization of the simplicial n-sphere, its p-fold tensor power with the
// cyclic action, Moore complexes and the homological checks run on them.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bokstedt/error.hpp"
#include "bokstedt/field.hpp"
#include "bokstedt/linalg.hpp"
#include "bokstedt/matrix.hpp"
#include "bokstedt/necklace.hpp"

namespace bok {

/// A map between based modules sending each basis vector to a basis vector
/// or to zero.  image[j] is the 1-based target of basis vector j + 1, 0 for
/// zero.
struct PartialMap {
  std::vector<Letter> image;
  std::size_t target_dim = 0;

  /// Same data with a dummy slot in front, as map_letters expects.
  std::vector<Letter> letter_map() const {
    std::vector<Letter> m{0};
    m.insert(m.end(), image.begin(), image.end());
    return m;
  }

  SparseMatrix matrix(const Field& field) const {
    std::vector<SparseEntry> e;
    for (std::size_t j = 0; j < image.size(); ++j)
      if (image[j] != 0) e.push_back({image[j] - 1u, static_cast<std::uint32_t>(j), field.one()});
    return SparseMatrix::from_triples(field, target_dim, image.size(), std::move(e));
  }
};

/// Reduced linearization of Delta[n]/boundary: level m has a basis of the
/// monotone surjections [m] -> [n], each stored by its jump positions
/// 1 <= j_1 < ... < j_n <= m (f(x) = #{k : j_k <= x}) and ordered
/// lexicographically by them.
class SphereModule {
 public:
  SphereModule(std::size_t n, std::size_t max_level) : n_(n), max_level_(max_level) {
    if (n == 0) throw Error(ErrorKind::precondition_violated, "sphere dimension must be positive");
    if (max_level < n) throw Error(ErrorKind::precondition_violated, "max level below sphere dimension");
    bases_.resize(max_level + 2);
    for (std::size_t m = 0; m <= max_level + 1; ++m) {
      std::vector<std::uint32_t> jumps(n);
      enumerate(m, 0, 1, jumps, bases_[m]);
    }
    index_.resize(bases_.size());
    for (std::size_t m = 0; m < bases_.size(); ++m)
      for (std::size_t k = 0; k < bases_[m].size(); ++k) index_[m][bases_[m][k]] = k;
  }

  std::size_t sphere_dim() const noexcept { return n_; }
  std::size_t max_level() const noexcept { return max_level_; }
  std::size_t dim(std::size_t m) const { return m < bases_.size() ? bases_[m].size() : 0; }
  const std::vector<std::uint32_t>& jumps(std::size_t m, std::size_t k) const { return bases_.at(m).at(k); }

  /// d_i : X_m -> X_{m-1}, precomposition with the coface skipping i.
  PartialMap face(std::size_t m, std::size_t i) const {
    check_level(m);
    if (m == 0 || i > m) throw Error(ErrorKind::precondition_violated, "face index out of range");
    return transport(m, m - 1, [i](std::size_t x) { return x < i ? x : x + 1; });
  }

  /// s_i : X_m -> X_{m+1}, precomposition with the codegeneracy hitting i twice.
  PartialMap degeneracy(std::size_t m, std::size_t i) const {
    check_level(m);
    if (i > m || m + 1 > max_level_ + 1) throw Error(ErrorKind::precondition_violated, "degeneracy out of range");
    return transport(m, m + 1, [i](std::size_t x) { return x <= i ? x : x - 1; });
  }

 private:
  void check_level(std::size_t m) const {
    if (m > max_level_) throw Error(ErrorKind::precondition_violated, "level above max level");
  }

  void enumerate(std::size_t m, std::size_t k, std::uint32_t from, std::vector<std::uint32_t>& jumps,
                 std::vector<std::vector<std::uint32_t>>& out) {
    if (k == n_) {
      out.push_back(jumps);
      return;
    }
    for (std::uint32_t j = from; j <= m; ++j) {
      jumps[k] = j;
      enumerate(m, k + 1, j + 1, jumps, out);
    }
  }

  template <class Coface>
  PartialMap transport(std::size_t from, std::size_t to, Coface theta) const {
    PartialMap out;
    out.target_dim = dim(to);
    for (const auto& jumps : bases_[from]) {
      auto value = [&](std::size_t x) {
        std::uint32_t v = 0;
        for (auto j : jumps) v += j <= x ? 1u : 0u;
        return v;
      };
      // g = f o theta on [to]; keep it if it is still surjective
      std::vector<std::uint32_t> g(to + 1);
      for (std::size_t x = 0; x <= to; ++x) g[x] = value(theta(x));
      bool surjective = g[0] == 0 && g[to] == n_;
      for (std::size_t x = 1; x <= to && surjective; ++x) surjective = g[x] - g[x - 1] <= 1;
      if (!surjective) {
        out.image.push_back(0);
        continue;
      }
      std::vector<std::uint32_t> gj;
      for (std::size_t x = 1; x <= to; ++x)
        if (g[x] != g[x - 1]) gj.push_back(static_cast<std::uint32_t>(x));
      out.image.push_back(static_cast<Letter>(index_[to].at(gj) + 1));
    }
    return out;
  }

  std::size_t n_, max_level_;
  std::vector<std::vector<std::vector<std::uint32_t>>> bases_;
  std::vector<std::map<std::vector<std::uint32_t>, std::size_t>> index_;
};

inline SphereModule sphere_module(std::size_t n, std::size_t max_level) { return SphereModule(n, max_level); }

/// Levelwise data of a simplicial module up to some level: dims, faces
/// (faces[m][i] : level m -> level m-1) and optionally a levelwise operator
/// sigma commuting with the faces.
struct SimplicialLevels {
  std::vector<std::size_t> dims;
  std::vector<std::vector<SparseMatrix>> faces;
  std::vector<SparseMatrix> sigma;  // empty when there is no action
};

inline std::uint64_t checked_power(std::uint64_t base, std::size_t e, std::uint64_t limit) {
  std::uint64_t r = 1;
  for (std::size_t k = 0; k < e; ++k) {
    r *= base;
    if (r > limit) throw Error(ErrorKind::budget_exceeded, "tensor power exceeds the size budget");
  }
  return r;
}

namespace detail {

inline std::vector<std::uint32_t> digits(std::uint64_t code, std::uint64_t base, std::size_t len) {
  std::vector<std::uint32_t> d(len);
  for (std::size_t k = len; k-- > 0;) {
    d[k] = static_cast<std::uint32_t>(code % base);
    code /= base;
  }
  return d;
}

}  // namespace detail

/// (X)^{(x)p} on full word bases, levels 0..max_level, with sigma the cyclic
/// shift of tensor factors: (sigma x)[w] = x[rotate(w, 1)].
inline SimplicialLevels tensor_power_cyclic(const Field& field, const SphereModule& x, std::size_t p,
                                            std::size_t max_level, std::uint64_t size_limit = 2'000'000) {
  if (max_level > x.max_level()) throw Error(ErrorKind::precondition_violated, "max level beyond the module");
  SimplicialLevels out;
  for (std::size_t m = 0; m <= max_level; ++m) {
    const std::uint64_t d = x.dim(m);
    const std::uint64_t total = checked_power(d, p, size_limit);
    out.dims.push_back(total);
    std::vector<SparseMatrix> faces;
    if (m > 0) {
      const std::uint64_t dt = x.dim(m - 1);
      const std::uint64_t total_t = checked_power(dt, p, size_limit);
      for (std::size_t i = 0; i <= m; ++i) {
        const PartialMap f = x.face(m, i);
        std::vector<SparseEntry> e;
        for (std::uint64_t code = 0; code < total; ++code) {
          const auto w = detail::digits(code, d, p);
          std::uint64_t target = 0;
          bool zero = false;
          for (auto letter : w) {
            const Letter img = f.image[letter];
            if (img == 0) {
              zero = true;
              break;
            }
            target = target * dt + (img - 1u);
          }
          if (!zero) e.push_back({static_cast<std::uint32_t>(target), static_cast<std::uint32_t>(code), field.one()});
        }
        faces.push_back(SparseMatrix::from_triples(field, total_t, total, std::move(e)));
      }
    }
    out.faces.push_back(std::move(faces));
    std::vector<SparseEntry> s;
    std::uint64_t top = 1;
    for (std::size_t k = 1; k < p; ++k) top *= d;
    for (std::uint64_t code = 0; code < total; ++code) {
      const std::uint64_t rotated = d == 0 ? 0 : (code % top) * d + code / top;
      s.push_back({static_cast<std::uint32_t>(code), static_cast<std::uint32_t>(rotated), field.one()});
    }
    out.sigma.push_back(SparseMatrix::from_triples(field, total, total, std::move(s)));
  }
  return out;
}

/// Levels of X itself (no action).
inline SimplicialLevels levels_of(const Field& field, const SphereModule& x, std::size_t max_level) {
  SimplicialLevels out;
  for (std::size_t m = 0; m <= max_level; ++m) {
    out.dims.push_back(x.dim(m));
    std::vector<SparseMatrix> faces;
    if (m > 0)
      for (std::size_t i = 0; i <= m; ++i) faces.push_back(x.face(m, i).matrix(field));
    out.faces.push_back(std::move(faces));
  }
  return out;
}

/// Chain complex with terms N_m, differentials d[m] : N_m -> N_{m-1}
/// (d[0] is 0 x dim N_0) and an optional operator sigma[m] on each term, all
/// in the coordinates of the kernel bases.
struct EquivariantComplex {
  std::vector<std::size_t> dims;
  std::vector<DenseMatrix> differential;
  std::vector<DenseMatrix> sigma;
  std::vector<Kernel> terms;
};

/// Moore complex: N_m = intersection of Ker d_i for i = 1..m, with d_0.
inline EquivariantComplex moore_complex(const Field& field, const SimplicialLevels& x,
                                        Backend backend = Backend::automatic) {
  EquivariantComplex out;
  const std::size_t top = x.dims.size();
  for (std::size_t m = 0; m < top; ++m) {
    Kernel k;
    if (m == 0) {
      for (std::uint32_t c = 0; c < x.dims[0]; ++c) {
        Vector v(x.dims[0]);
        v[c] = field.one();
        k.basis.push_back(std::move(v));
        k.free_columns.push_back(c);
      }
    } else {
      std::vector<SparseMatrix> rest(x.faces[m].begin() + 1, x.faces[m].end());
      k = kernel(field, vstack(field, rest), backend);
    }
    out.dims.push_back(k.basis.size());
    out.terms.push_back(std::move(k));
  }
  for (std::size_t m = 0; m < top; ++m) {
    const Kernel& km = out.terms[m];
    if (m == 0) {
      out.differential.emplace_back(0, out.dims[0]);
    } else {
      const Kernel& below = out.terms[m - 1];
      DenseMatrix d(out.dims[m - 1], out.dims[m]);
      for (std::size_t j = 0; j < km.basis.size(); ++j) {
        const Vector c = below.coordinates(multiply(field, x.faces[m][0], km.basis[j]));
        for (std::size_t i = 0; i < c.size(); ++i) d(i, j) = c[i];
      }
      out.differential.push_back(std::move(d));
    }
    if (!x.sigma.empty()) {
      DenseMatrix s(out.dims[m], out.dims[m]);
      for (std::size_t j = 0; j < km.basis.size(); ++j) {
        const Vector c = km.coordinates(multiply(field, x.sigma[m], km.basis[j]));
        for (std::size_t i = 0; i < c.size(); ++i) s(i, j) = c[i];
      }
      out.sigma.push_back(std::move(s));
    }
  }
  return out;
}

/// dim H_m for m = 0..top-1.  The top degree has no incoming differential
/// in the truncated complex, so callers truncate one level above the range
/// they read.
inline std::vector<std::size_t> homology_dims(const Field& field, const EquivariantComplex& c) {
  std::vector<std::size_t> ranks(c.dims.size() + 1, 0);
  for (std::size_t m = 1; m < c.dims.size(); ++m) ranks[m] = rank(field, c.differential[m]);
  std::vector<std::size_t> h;
  for (std::size_t m = 0; m < c.dims.size(); ++m) h.push_back(c.dims[m] - ranks[m] - ranks[m + 1]);
  return h;
}

/// True iff d o d = 0 in every degree.
inline bool is_complex(const Field& field, const EquivariantComplex& c) {
  for (std::size_t m = 2; m < c.dims.size(); ++m) {
    const DenseMatrix dd = multiply(field, c.differential[m - 1], c.differential[m]);
    for (std::size_t i = 0; i < dd.rows(); ++i)
      for (std::size_t j = 0; j < dd.cols(); ++j)
        if (dd(i, j).value != 0) return false;
  }
  return true;
}

inline DenseMatrix minus_identity(const Field& field, DenseMatrix s) {
  for (std::size_t i = 0; i < s.rows(); ++i) s(i, i) = field.sub(s(i, i), field.one());
  return s;
}

/// Free over k[Z/p] iff rank((sigma - 1)^{p-1}) = dim / p.
inline bool projectivity_check(const Field& field, const DenseMatrix& sigma) {
  const std::size_t d = sigma.rows();
  const std::size_t p = field.characteristic();
  if (d % p != 0) return false;
  const DenseMatrix x = minus_identity(field, sigma);
  DenseMatrix power = x;
  for (std::size_t k = 1; k + 1 < p; ++k) power = multiply(field, power, x);
  return rank(field, power) == d / p;
}

struct TateDims {
  std::size_t h0 = 0;        // Fix(sigma) / Image(Norm)
  std::size_t h_minus1 = 0;  // Ker(Norm) / Image(sigma - 1)

  friend bool operator==(const TateDims&, const TateDims&) = default;
};

inline TateDims tate_dims(const Field& field, const DenseMatrix& sigma) {
  const std::size_t d = sigma.rows();
  const std::size_t p = field.characteristic();
  const DenseMatrix x = minus_identity(field, sigma);
  DenseMatrix norm(d, d), power = DenseMatrix::identity(d);
  for (std::size_t k = 0; k < p; ++k) {
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) norm(i, j) = field.add(norm(i, j), power(i, j));
    power = multiply(field, power, sigma);
  }
  const std::size_t rank_x = rank(field, x), rank_n = rank(field, norm);
  return {(d - rank_x) - rank_n, (d - rank_n) - rank_x};
}

/// The rotation on M^{(x)q} for dim M = base_dim, full word basis.
inline DenseMatrix rotation_operator(std::uint32_t base_dim, std::size_t q) {
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < q; ++k) total *= base_dim;
  std::uint64_t top = total / base_dim;
  DenseMatrix s(total, total);
  for (std::uint64_t code = 0; code < total; ++code) s(code, (code % top) * base_dim + code / top) = FieldElem{1};
  return s;
}

}  // namespace bok
