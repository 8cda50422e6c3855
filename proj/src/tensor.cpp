#include "ogs/tensor.hpp"

#include <charconv>

namespace ogs {

std::string to_string(Field field) {
  return field == Field::Real ? "real" : "complex";
}

Field parse_field(const std::string& text) {
  if (text == "real") return Field::Real;
  if (text == "complex") return Field::Complex;
  throw ValidationError("unknown field '" + text + "' (expected real|complex)");
}

std::string Shape::str() const {
  if (ndim == 1) return std::to_string(cols);
  return std::to_string(rows) + "x" + std::to_string(cols);
}

namespace {

std::size_t parse_extent(std::string_view text, const std::string& whole) {
  std::size_t v = 0;
  const auto* end = text.data() + text.size();
  auto [p, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || p != end || v == 0)
    throw ValidationError("invalid group '" + whole +
                          "' (expected K or K1xK2 with positive integers)");
  return v;
}

}  // namespace

GroupShape GroupShape::parse(const std::string& text) {
  const auto x = text.find_first_of("xX");
  if (x == std::string::npos)
    return vec(parse_extent(text, text));
  const std::string_view sv(text);
  return mat(parse_extent(sv.substr(0, x), text),
             parse_extent(sv.substr(x + 1), text));
}

std::string GroupShape::str() const {
  if (ndim == 1) return std::to_string(cols);
  return str2d();
}

std::string GroupShape::str2d() const {
  return std::to_string(rows) + "x" + std::to_string(cols);
}

void GroupShape::validate() const {
  if (rows < 1 || cols < 1)
    throw ValidationError("group extents must be >= 1, got " + str2d());
  if (ndim == 1 && rows != 1)
    throw ValidationError("1D group must have a single row");
}

void GroupShape::validate_for(const Shape& shape) const {
  validate();
  if (shape.size() == 0) throw ValidationError("empty signal");
  if (shape.ndim == 1 && rows != 1)
    throw ValidationError("group " + str2d() +
                          " cannot be applied to a 1D signal");
  if (shape.ndim == 2 && ndim == 1)
    throw ValidationError("1D group " + str() +
                          " given for a 2D array; use K1xK2");
}

}  // namespace ogs
