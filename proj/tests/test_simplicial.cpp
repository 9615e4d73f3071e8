#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "bokstedt/report.hpp"
#include "bokstedt/simplicial.hpp"

using namespace bok;

namespace {

bool same(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (a(r, c) != b(r, c)) return false;
  return true;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

DenseMatrix cyclic_shift(std::size_t p) {
  DenseMatrix s(p, p);
  for (std::size_t i = 0; i < p; ++i) s((i + 1) % p, i) = {1};
  return s;
}

}  // namespace

TEST(Simplicial, ExpectedFaces) {
  const Field f = make_field(3);
  const SphereModule x = sphere_module(1, 4);
  EXPECT_TRUE(same(x.face(3, 0).matrix(f).to_dense(), DenseMatrix::from_rows(f, {{0, 1, 0}, {0, 0, 1}})));
  EXPECT_TRUE(same(x.face(4, 2).matrix(f).to_dense(),
                   DenseMatrix::from_rows(f, {{1, 0, 0, 0}, {0, 1, 1, 0}, {0, 0, 0, 1}})));
  EXPECT_TRUE(faces_match_expected(x));
}

TEST(Simplicial, FacesMatchGoldenFile) {
  EXPECT_EQ(face_matrices_text(SphereModule(1, 4)), slurp(std::string(BOK_GOLDEN_DIR) + "/face_matrices.txt"));
}

TEST(Simplicial, LevelDimensions) {
  // monotone surjections [m] -> [n]: binomial(m, n)
  const SphereModule x1(1, 6), x2(2, 6);
  for (std::size_t m = 0; m <= 6; ++m) {
    EXPECT_EQ(x1.dim(m), m);
    EXPECT_EQ(x2.dim(m), m * (m - 1) / 2);
  }
}

TEST(Simplicial, SimplicialIdentities) {
  const Field f = make_field(5);
  for (std::size_t n : {1u, 2u}) {
    const SphereModule x(n, 6);
    for (std::size_t m = 2; m <= 6; ++m)
      for (std::size_t j = 1; j <= m; ++j)
        for (std::size_t i = 0; i < j; ++i) {
          // d_i d_j = d_{j-1} d_i
          const auto l = multiply(f, x.face(m - 1, i).matrix(f), x.face(m, j).matrix(f)).to_dense();
          const auto r = multiply(f, x.face(m - 1, j - 1).matrix(f), x.face(m, i).matrix(f)).to_dense();
          EXPECT_TRUE(same(l, r)) << n << " " << m << " " << i << " " << j;
        }
    for (std::size_t m = 1; m < 6; ++m)
      for (std::size_t i = 0; i <= m; ++i) {
        // d_i s_i = d_{i+1} s_i = id
        const auto s = x.degeneracy(m, i).matrix(f);
        const auto id = DenseMatrix::identity(x.dim(m));
        EXPECT_TRUE(same(multiply(f, x.face(m + 1, i).matrix(f), s).to_dense(), id));
        EXPECT_TRUE(same(multiply(f, x.face(m + 1, i + 1).matrix(f), s).to_dense(), id));
      }
  }
}

TEST(Simplicial, BeyondMaxLevelThrows) {
  const SphereModule x(1, 4);
  EXPECT_THROW(x.face(5, 0), Error);
}

TEST(Simplicial, TensorPowerLevels) {
  const Field f = make_field(3);
  const SphereModule x(1, 4);
  const SimplicialLevels lv = tensor_power_cyclic(f, x, 3, 4);
  EXPECT_EQ(lv.dims[2], 8u);
  for (std::size_t m = 0; m <= 4; ++m) {
    EXPECT_EQ(lv.dims[m], m * m * m);
    if (lv.dims[m] == 0) continue;
    // sigma^p = 1
    SparseMatrix s3 = multiply(f, lv.sigma[m], multiply(f, lv.sigma[m], lv.sigma[m]));
    EXPECT_TRUE(same(s3.to_dense(), DenseMatrix::identity(lv.dims[m])));
    if (m == 0 || lv.dims[m - 1] == 0) continue;
    for (std::size_t i = 0; i <= m; ++i) {
      const auto l = multiply(f, lv.faces[m][i], lv.sigma[m]).to_dense();
      const auto r = multiply(f, lv.sigma[m - 1], lv.faces[m][i]).to_dense();
      EXPECT_TRUE(same(l, r));
    }
  }
}

TEST(Simplicial, TensorPowerSizeGuard) {
  const Field f = make_field(7);
  const SphereModule x(1, 8);
  EXPECT_THROW(tensor_power_cyclic(f, x, 7, 8, 1000), Error);
}

// normalized chains of the circle: one nondegenerate simplex, in degree 1
TEST(Simplicial, MooreOfCircle) {
  const Field f = make_field(3);
  const SphereModule x(1, 6);
  const EquivariantComplex c = moore_complex(f, levels_of(f, x, 6));
  EXPECT_EQ(c.dims, (std::vector<std::size_t>{0, 1, 0, 0, 0, 0, 0}));
  EXPECT_EQ(homology_dims(f, c), (std::vector<std::size_t>{0, 1, 0, 0, 0, 0, 0}));
  EXPECT_TRUE(is_complex(f, c));
}

TEST(Simplicial, MooreOfTwoSphere) {
  const Field f = make_field(5);
  const SphereModule x(2, 5);
  const auto h = homology_dims(f, moore_complex(f, levels_of(f, x, 5)));
  EXPECT_EQ(h, (std::vector<std::size_t>{0, 0, 1, 0, 0, 0}));
}

TEST(Simplicial, PowerOfCircleP3) {
  const Field f = make_field(3);
  const SphereModule x(1, 4);
  const EquivariantComplex c = moore_complex(f, tensor_power_cyclic(f, x, 3, 4));
  EXPECT_TRUE(is_complex(f, c));
  const auto h = homology_dims(f, c);
  for (std::size_t m = 0; m < 4; ++m) EXPECT_EQ(h[m], m == 3 ? 1u : 0u) << m;
  EXPECT_FALSE(projectivity_check(f, c.sigma[1]));
  for (std::size_t m = 2; m <= 3; ++m) EXPECT_TRUE(projectivity_check(f, c.sigma[m])) << m;
}

TEST(Simplicial, PowerOfCircleP5) {
  const Field f = make_field(5);
  const SphereModule x(1, 6);
  const EquivariantComplex c = moore_complex(f, tensor_power_cyclic(f, x, 5, 6), Backend::sparse);
  EXPECT_TRUE(is_complex(f, c));
  const auto h = homology_dims(f, c);
  for (std::size_t m = 0; m < 6; ++m) EXPECT_EQ(h[m], m == 5 ? 1u : 0u) << m;
  EXPECT_FALSE(projectivity_check(f, c.sigma[1]));
  for (std::size_t m = 2; m <= 5; ++m) EXPECT_TRUE(projectivity_check(f, c.sigma[m])) << m;
}

TEST(Simplicial, Projectivity) {
  for (std::size_t p : {3u, 5u}) {
    const Field f = make_field(p);
    EXPECT_TRUE(projectivity_check(f, cyclic_shift(p)));
    EXPECT_FALSE(projectivity_check(f, DenseMatrix::identity(1)));
  }
}

TEST(Simplicial, TateDims) {
  const Field f = make_field(3);
  EXPECT_EQ(tate_dims(f, DenseMatrix::identity(1)), (TateDims{1, 1}));
  EXPECT_EQ(tate_dims(f, cyclic_shift(3)), (TateDims{0, 0}));
  for (std::uint32_t d : {1u, 2u, 3u}) EXPECT_EQ(tate_dims(f, rotation_operator(d, 3)), (TateDims{d, d}));
}
