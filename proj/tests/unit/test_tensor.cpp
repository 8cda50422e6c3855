#include <doctest.h>

#include <cmath>
#include <limits>

#include "ogs/tensor.hpp"

using namespace ogs;

TEST_SUITE("tensor") {
  TEST_CASE("group shapes parse from K and K1xK2") {
    CHECK(GroupShape::parse("5") == GroupShape::vec(5));
    CHECK(GroupShape::parse("8x2") == GroupShape::mat(8, 2));
    CHECK(GroupShape::parse("3X3") == GroupShape::mat(3, 3));
    CHECK(GroupShape::parse("8x2").cardinality() == 16);
    CHECK(GroupShape::vec(4).str() == "4");
    CHECK(GroupShape::vec(4).str2d() == "1x4");
    for (const char* bad : {"", "0", "x3", "3x", "3x0", "-2", "2.5", "abc", "3x3x3"})
      CHECK_THROWS_AS(GroupShape::parse(bad), ValidationError);
  }

  TEST_CASE("group must fit the array dimensionality") {
    CHECK_NOTHROW(GroupShape::vec(3).validate_for(Shape::vec(10)));
    CHECK_NOTHROW(GroupShape::mat(1, 3).validate_for(Shape::vec(10)));
    CHECK_THROWS_AS(GroupShape::mat(2, 3).validate_for(Shape::vec(10)), ValidationError);
    CHECK_THROWS_AS(GroupShape::vec(3).validate_for(Shape::mat(4, 4)), ValidationError);
    CHECK_THROWS_AS(GroupShape::vec(3).validate_for(Shape::vec(0)), ValidationError);
  }

  TEST_CASE("tensor data length must match shape") {
    CHECK_THROWS_AS(RealTensor(Shape::mat(2, 3), std::vector<double>(5)), ValidationError);
    RealTensor t(Shape::mat(2, 3), {1, 2, 3, 4, 5, 6});
    CHECK(t(1, 0) == 4.0);
    CHECK(t.field() == Field::Real);
    CHECK(ComplexTensor::field() == Field::Complex);
  }

  TEST_CASE("non-finite samples are rejected") {
    RealTensor t = RealTensor::vec({1.0, std::numeric_limits<double>::quiet_NaN()});
    CHECK_THROWS_AS(t.validate_finite(), ValidationError);
    ComplexTensor c = ComplexTensor::vec({Complex(0, INFINITY)});
    CHECK_THROWS_AS(c.validate_finite(), ValidationError);
  }

  TEST_CASE("field names round trip") {
    CHECK(parse_field(to_string(Field::Real)) == Field::Real);
    CHECK(parse_field(to_string(Field::Complex)) == Field::Complex);
    CHECK_THROWS_AS(parse_field("quaternion"), ValidationError);
  }
}
