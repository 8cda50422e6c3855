#include "ogs/csv_io.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace ogs {

namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  const auto e = s.find_last_not_of(" \t\r");
  return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
}

std::vector<double> split_numbers(const std::string& line, std::size_t line_no) {
  std::vector<double> out;
  std::istringstream in(line);
  std::string cell;
  while (std::getline(in, cell, ',')) {
    cell = trim(cell);
    double v = 0.0;
    const char* end = cell.data() + cell.size();
    const auto [ptr, ec] = std::from_chars(cell.data(), end, v);
    if (cell.empty() || ec != std::errc{} || ptr != end)
      throw IoError("line " + std::to_string(line_no) + ": cannot parse '" +
                    cell + "' as a number");
    out.push_back(v);
  }
  return out;
}

}  // namespace

AnyTensor read_csv_tensor(std::istream& in, Field field, int dim) {
  if (dim != 1 && dim != 2) throw ValidationError("dim must be 1 or 2");
  std::vector<double> re, im;
  std::optional<Shape> shape;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto at = line.find("shape=");
      if (at != std::string::npos) {
        const auto g = GroupShape::parse(trim(line.substr(at + 6)));
        shape = g.ndim == 1 ? Shape::vec(g.rows * g.cols) : Shape::mat(g.rows, g.cols);
      }
      continue;
    }
    const auto values = split_numbers(line, line_no);
    if (field == Field::Complex) {
      if (values.size() != 2)
        throw IoError("line " + std::to_string(line_no) +
                      ": complex data needs exactly two columns re,im");
      re.push_back(values[0]);
      im.push_back(values[1]);
    } else {
      re.insert(re.end(), values.begin(), values.end());
    }
  }
  const std::size_t n = re.size();
  if (n == 0) throw IoError("no samples found");
  Shape s = Shape::vec(n);
  if (dim == 2) {
    if (!shape || shape->ndim != 2)
      throw IoError("2D input needs a '# shape=N1xN2' header");
    s = *shape;
  } else if (shape && shape->ndim == 2 && shape->rows != 1) {
    throw IoError("file holds a 2D array; pass --dim 2");
  }
  if (s.size() != n)
    throw IoError("shape header " + s.str() + " does not match " +
                  std::to_string(n) + " samples");
  if (field == Field::Real) {
    RealTensor t(s, std::move(re));
    t.validate_finite("input");
    return t;
  }
  ComplexTensor t(s);
  for (std::size_t i = 0; i < n; ++i) t[i] = Complex(re[i], im[i]);
  t.validate_finite("input");
  return t;
}

AnyTensor read_csv_tensor(const std::filesystem::path& path, Field field, int dim) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return read_csv_tensor(in, field, dim);
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

template <class T>
void write_csv_tensor(std::ostream& out, const Tensor<T>& x) {
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  if (x.shape().ndim == 2) out << "# shape=" << x.rows() << 'x' << x.cols() << '\n';
  for (std::size_t i = 0; i < x.size(); ++i) {
    if constexpr (std::is_same_v<T, Complex>)
      out << x[i].real() << ',' << x[i].imag() << '\n';
    else
      out << x[i] << '\n';
  }
  if (!out) throw IoError("failed writing CSV");
}

template <class T>
void write_csv_tensor(const std::filesystem::path& path, const Tensor<T>& x) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_csv_tensor(out, x);
}

template void write_csv_tensor(std::ostream&, const Tensor<double>&);
template void write_csv_tensor(std::ostream&, const Tensor<Complex>&);
template void write_csv_tensor(const std::filesystem::path&, const Tensor<double>&);
template void write_csv_tensor(const std::filesystem::path&, const Tensor<Complex>&);

}  // namespace ogs
