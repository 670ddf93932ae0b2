#include <gtest/gtest.h>

#include "bdtk/scalar.hpp"

using namespace bdtk;

TEST(Scalar, ExactArithmeticStaysExact) {
  Scalar a = Scalar::rational(1, 3);
  Scalar b = Scalar::gaussian(1, 2, -1, 4);
  Scalar c = a * b + a - b / Scalar(2);
  EXPECT_TRUE(c.is_exact());
  EXPECT_EQ(c, Scalar(mpq_class(1, 4), mpq_class(1, 24)));
}

TEST(Scalar, FloatContaminates) {
  Scalar a = Scalar::rational(1, 2);
  Scalar f = Scalar::from_double(0.25);
  EXPECT_TRUE((a + f).is_float());
  EXPECT_EQ(a + f, Scalar::rational(3, 4));
  EXPECT_NE(a + f, Scalar::rational(3, 4) + Scalar::from_double(1e-9));
}

TEST(Scalar, ConjugateAndModulus) {
  Scalar z = Scalar::gaussian(3, 1, 4, 1);
  EXPECT_EQ(z * z.conj(), Scalar(25));
  EXPECT_DOUBLE_EQ(z.abs(), 5.0);
  EXPECT_EQ(pow(Scalar::i(), 4), Scalar(1));
  EXPECT_EQ(pow(Scalar(2), -2), Scalar::rational(1, 4));
}
