#pragma once

#include <filesystem>
#include <iosfwd>
#include <variant>

#include "ogs/tensor.hpp"

namespace ogs {

using AnyTensor = std::variant<RealTensor, ComplexTensor>;

/// Numeric CSV arrays. Real data: one or more comma separated values per
/// line, read row-major. Complex data: one `re,im` pair per line. 2D arrays
/// carry a `# shape=N1xN2` header line; other `#` lines are comments.
AnyTensor read_csv_tensor(std::istream& in, Field field, int dim);
AnyTensor read_csv_tensor(const std::filesystem::path& path, Field field, int dim);

/// Writes one sample per line with 17 significant digits.
template <class T>
void write_csv_tensor(std::ostream& out, const Tensor<T>& x);
template <class T>
void write_csv_tensor(const std::filesystem::path& path, const Tensor<T>& x);

}  // namespace ogs
