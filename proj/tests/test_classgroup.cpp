#include <gtest/gtest.h>

#include "ceresa/classgroup.hpp"
#include "ceresa/primes.hpp"

using namespace ceresa;

TEST(ClassNumber, SmallDiscriminants) {
  EXPECT_EQ(class_number(-3), 1);
  EXPECT_EQ(class_number(-4), 1);
  EXPECT_EQ(class_number(-23), 3);
  EXPECT_EQ(class_number(-47), 5);
  EXPECT_EQ(class_number(-163), 1);
  EXPECT_EQ(class_number(-292), 4);
  EXPECT_EQ(class_number(-44), 3);
  EXPECT_EQ(class_number(-332), 9);
  EXPECT_EQ(class_number(-83), 3);
}

TEST(ClassNumber, ReducedFormsOfMinus23) {
  auto forms = reduced_forms(-23);
  ASSERT_EQ(forms.size(), 3u);
  for (const auto& f : forms) EXPECT_EQ(f.b * f.b - 4 * f.a * f.c, -23);
}

TEST(ClassNumber, RejectsNonDiscriminants) {
  EXPECT_THROW(class_number(-5), Error);
  EXPECT_THROW(class_number(4), Error);
  EXPECT_FALSE(is_discriminant(-1));
  EXPECT_TRUE(is_discriminant(-7));
  EXPECT_TRUE(is_discriminant(-8));
}

TEST(ClassNumber, HeegnerNumbersAreExactlyTheClassNumberOneFundamentals) {
  std::vector<i64> got;
  for (i64 n = 3; n <= 2000; ++n)
    if (is_discriminant(-n) && class_number(-n) == 1) got.push_back(n);
  EXPECT_EQ(got, (std::vector<i64>{3, 4, 7, 8, 11, 12, 16, 19, 27, 28, 43, 67, 163}));
}

TEST(ClassNumber, TableAgreesWithEnumeration) {
  ClassNumberTable t(5000);
  for (i64 n = 3; n <= 5000; ++n)
    if (is_discriminant(-n)) ASSERT_EQ(t(-n), class_number(-n)) << n;
  EXPECT_EQ(t(-100003 * 4), class_number(-100003 * 4));
}

TEST(ClassNumberBound, SmallDiscriminantEdge) {
  // The bound is not meant for tiny |D|: it is below h(-3) = 1.
  EXPECT_NEAR(class_number_bound(-3), 0.634, 1e-3);
  EXPECT_LT(class_number_bound(-3), 1.0);
  EXPECT_GE(class_number_bound(-8), 1.0);
}

TEST(Genus, PrimeLevels) {
  EXPECT_EQ(genus_x0(11).g, 1);
  EXPECT_EQ(genus_x0(37).g, 2);
  EXPECT_EQ(genus_x0(43).g, 3);
  EXPECT_EQ(genus_x0(73).g_plus, 2);
  EXPECT_EQ(genus_x0(67).g_plus, 2);
  EXPECT_EQ(genus_x0(83).g_plus, 1);
  EXPECT_EQ(genus_x0(103).g, 8);
}

TEST(Genus, GeneralLevelsMatchPrimeFormula) {
  for (u64 p : sieve_primes(2000))
    if (p >= 5) EXPECT_EQ(genus_x0_level(p), genus_x0(static_cast<i64>(p)).g) << p;
  EXPECT_EQ(genus_x0_level(22), 2);
  EXPECT_EQ(genus_x0_level(64), 3);
}

TEST(Genus, SquareLevel) {
  // X_0(23^2): index 552, no elliptic points, 24 cusps.
  EXPECT_EQ(genus_x0_level(529), 1 + 552 / 12 - 24 / 2);
}

TEST(CmDegree, SplitRamifiedInert) {
  EXPECT_EQ(cm_component_degree(3, 103, 1), 2);
  EXPECT_EQ(cm_component_degree(7, 23, 2), 2);
  EXPECT_EQ(cm_component_degree(103, 103, 1), class_number(-103));
  EXPECT_EQ(cm_component_degree(4, 103, 1), 0);
  EXPECT_EQ(cm_component_degree(3, 23, 2), 0);
}
