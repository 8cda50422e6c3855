#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>

#include "ogs/calibration.hpp"

#ifndef OGS_DEFAULT_TABLE_DIR
#define OGS_DEFAULT_TABLE_DIR "data/tables"
#endif

namespace ogs {

void write_table(std::ostream& out, const CalibrationTable& table) {
  table.validate();
  out << "# group=" << table.group.str2d() << " field=" << to_string(table.field)
      << " iters=" << table.iters << " samples=" << table.sample_count
      << " seed=" << table.seed << " rng=" << table.rng << "\n";
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (const auto& p : table.points) out << p.lambda << ',' << p.sigma_x << '\n';
  if (!out) throw IoError("failed writing calibration table");
}

void write_table(const std::filesystem::path& path,
                 const CalibrationTable& table) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_table(out, table);
}

namespace {

std::map<std::string, std::string> parse_header(const std::string& line) {
  std::map<std::string, std::string> kv;
  std::istringstream in(line.substr(1));
  std::string tok;
  while (in >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) continue;
    kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return kv;
}

template <class N>
N parse_number(const std::map<std::string, std::string>& kv,
               const std::string& key) {
  const auto it = kv.find(key);
  if (it == kv.end()) throw IoError("calibration header lacks '" + key + "'");
  std::istringstream in(it->second);
  N v{};
  if (!(in >> v) || !in.eof())
    throw IoError("bad value for '" + key + "' in calibration header");
  return v;
}

}  // namespace

CalibrationTable read_table(std::istream& in) {
  CalibrationTable table;
  std::string line;
  bool header = false;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (header) continue;
      const auto kv = parse_header(line);
      if (!kv.count("group")) continue;
      table.group = GroupShape::parse(kv.at("group"));
      table.group = GroupShape::mat(table.group.rows, table.group.cols);
      table.field = parse_field(kv.count("field") ? kv.at("field") : "");
      table.iters = parse_number<int>(kv, "iters");
      table.sample_count = parse_number<std::size_t>(kv, "samples");
      table.seed = parse_number<std::uint64_t>(kv, "seed");
      table.rng = kv.count("rng") ? kv.at("rng") : "";
      header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw IoError("calibration row " + std::to_string(line_no) +
                    " is not 'lambda,sigma_x'");
    CalibrationPoint p;
    try {
      std::size_t used = 0;
      p.lambda = std::stod(line.substr(0, comma), &used);
      p.sigma_x = std::stod(line.substr(comma + 1), &used);
    } catch (const std::exception&) {
      throw IoError("unparsable calibration row " + std::to_string(line_no));
    }
    table.points.push_back(p);
  }
  if (!header) throw IoError("calibration table lacks a '# group=...' header");
  try {
    table.validate();
  } catch (const ValidationError& e) {
    throw IoError(std::string("invalid calibration table: ") + e.what());
  }
  return table;
}

CalibrationTable read_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open calibration table " + path.string());
  return read_table(in);
}

TableStore TableStore::from_environment() {
  if (const char* dir = std::getenv("OGS_TABLE_DIR"); dir && *dir)
    return TableStore(dir);
  return TableStore(OGS_DEFAULT_TABLE_DIR);
}

std::string TableStore::file_name(const GroupShape& group, Field field,
                                  int iters) {
  return "lambda_" + to_string(field) + "_" + group.str2d() + "_it" +
         std::to_string(iters) + ".csv";
}

std::optional<CalibrationTable> TableStore::find(const GroupShape& group,
                                                 Field field, int iters) const {
  const GroupShape flipped = GroupShape::mat(group.cols, group.rows);
  for (const auto& g : {GroupShape::mat(group.rows, group.cols), flipped}) {
    const auto path = dir_ / file_name(g, field, iters);
    if (std::filesystem::exists(path)) {
      auto table = read_table(path);
      if (table.field != field || table.iters != iters)
        throw IoError(path.string() + " header does not match its file name");
      return table;
    }
  }
  return std::nullopt;
}

CalibrationTable TableStore::require(const GroupShape& group, Field field,
                                     int iters) const {
  if (auto table = find(group, field, iters)) return *table;
  const auto name = file_name(GroupShape::mat(group.rows, group.cols), field, iters);
  throw MissingTableError(
      "no calibration table for group " + group.str2d() + ", field " +
      to_string(field) + ", " + std::to_string(iters) + " iterations in " +
      dir_.string() + "; create it with: ogs calibrate --group " +
      group.str2d() + " --field " + to_string(field) + " --iters " +
      std::to_string(iters) + " --output " + (dir_ / name).string());
}

}  // namespace ogs
