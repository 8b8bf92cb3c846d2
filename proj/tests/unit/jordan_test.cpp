#include <gtest/gtest.h>

#include "ctkit/cohomology.hpp"
#include "ctkit/errors.hpp"
#include "ctkit/jordan.hpp"

using namespace ctkit;

namespace {

std::vector<int> parts(const JordanType& t) { return t.parts; }

}  // namespace

TEST(Jordan, Anchors) {
  EXPECT_EQ(parts(jordan_type(jordan_block(3), 3, 1)), std::vector<int>{3});
  EXPECT_EQ(parts(jordan_type(ModMatrix::identity(4), 5, 1)), (std::vector<int>{1, 1, 1, 1}));
  EXPECT_EQ(parts(tensor_decompose(2, 2, 3, 1)), (std::vector<int>{3, 1}));
  EXPECT_EQ(parts(tensor_decompose(1, 4, 5, 1)), std::vector<int>{4});
  EXPECT_EQ(parts(tensor_decompose(3, 2, 3, 1)), (std::vector<int>{3, 3}));
  EXPECT_EQ(parts(tensor_decompose(2, 2, 2, 1)), (std::vector<int>{2, 2}));
  EXPECT_EQ(parts(hom_decompose({3, 1, {1}})), std::vector<int>{1});
  EXPECT_EQ(parts(hom_decompose({3, 1, {3}})), (std::vector<int>{3, 3, 3}));
  EXPECT_EQ(parts(hom_decompose({3, 1, {2}})), (std::vector<int>{3, 1}));
}

TEST(Jordan, AugmentationIdealModP) {
  for (int p : {2, 3, 5}) {
    const auto g = cyclic_group(p, 1);
    const auto i = augmentation_ideal(g, PadicContext(p, 4));
    EXPECT_EQ(parts(jordan_type(i.action()[0], p, 1)), std::vector<int>{p - 1});
  }
}

TEST(Jordan, NotNilpotent) {
  ModMatrix m(2, 2);
  m(0, 1) = 1;
  m(1, 0) = 1;
  EXPECT_THROW(jordan_type(m, 3, 1), NotNilpotent);
  EXPECT_THROW(jordan_type(jordan_block(3), 2, 1), NotNilpotent);
}

TEST(Jordan, TensorProperties) {
  for (int p : {2, 3, 5})
    for (int n : {1, 2}) {
      if (p == 5 && n == 2) continue;
      const int top = n == 1 ? p : p * p;
      for (int r = 1; r <= top; ++r)
        for (int s = 1; s <= top; ++s) {
          const auto t = tensor_decompose(r, s, p, n);
          EXPECT_EQ(t.dim(), r * s);
          EXPECT_EQ(t, tensor_decompose(s, r, p, n));
          if (r + s - 1 <= p) EXPECT_EQ(static_cast<int>(t.parts.size()), std::min(r, s));
          if (r == top) EXPECT_TRUE(t.is_free());
        }
    }
}

TEST(Jordan, SelfDuality) {
  for (int p : {2, 3})
    for (int d = 1; d <= 6; ++d)
      for (const auto& ps : partitions(d, p)) {
        const JordanType v{p, 1, ps};
        EXPECT_EQ(dual_type(v), v);
      }
}

TEST(Jordan, HomFreenessSweep) {
  for (int p : {2, 3})
    for (int d = 1; d <= 9; ++d)
      for (const auto& ps : partitions(d, p)) EXPECT_TRUE(verify_lemma44({p, 1, ps}).holds()) << p << ' ' << d;
}

TEST(Jordan, FreenessAgreesWithCohomology) {
  for (int p : {2, 3}) {
    const auto g = cyclic_group(p, 1);
    const PadicContext ctx(p, 6);
    for (int d = 1; d <= 5; ++d)
      for (const auto& ps : partitions(d, p)) {
        const ModMatrix m = jordan_matrix(ps);
        std::vector<int> tors(m.rows(), 1);
        const FgModule v(ctx, g, tors, 0, {m});
        EXPECT_EQ(is_free_fpG(v), (JordanType{p, 1, ps}.is_free()));
      }
  }
}

TEST(Jordan, CsvLayout) {
  const auto csv = tensor_table_csv(2, 1);
  EXPECT_EQ(csv, "p,n,r,s,parts\n2,1,1,1,1\n2,1,1,2,2\n2,1,2,1,2\n2,1,2,2,2+2\n");
}
