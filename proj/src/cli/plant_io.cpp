#include "nistab/plant_io.hpp"

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "nistab/error.hpp"

namespace nistab {
namespace {

using Json = nlohmann::json;

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::ParseError, where + ": " + what);
}

std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

RealMatrix matrix_field(const Json& doc, const char* key) {
  const std::string name(key);
  auto it = doc.find(key);
  if (it == doc.end()) parse_fail("field '" + name + "'", "missing");
  if (!it->is_array() || it->empty()) parse_fail("field '" + name + "'", "expected a non-empty array of rows");
  const auto rows = static_cast<Index>(it->size());
  Index cols = -1;
  RealMatrix m;
  for (Index i = 0; i < rows; ++i) {
    const Json& row = (*it)[static_cast<std::size_t>(i)];
    const std::string where = name + "[" + std::to_string(i) + "]";
    if (!row.is_array() || row.empty()) parse_fail(where, "expected a non-empty array of numbers");
    if (cols < 0) {
      cols = static_cast<Index>(row.size());
      m.resize(rows, cols);
    } else if (static_cast<Index>(row.size()) != cols) {
      parse_fail(where, "row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(cols));
    }
    for (Index j = 0; j < cols; ++j) {
      const Json& v = row[static_cast<std::size_t>(j)];
      if (!v.is_number()) parse_fail(where + "[" + std::to_string(j) + "]", "expected a number");
      m(i, j) = v.get<double>();
    }
  }
  return m;
}

PlantFile make_plant(RealMatrix a, RealMatrix b1, RealMatrix b2, RealMatrix c1, std::string label) {
  try {
    return PlantFile{Plant(std::move(a), std::move(b1), std::move(b2), std::move(c1)), std::move(label)};
  } catch (const Error& e) {
    parse_fail("plant", e.what());
  }
}

void append_bytes(std::uint64_t& h, const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
}

void append_matrix(std::uint64_t& h, const RealMatrix& m) {
  const std::int64_t dims[2] = {m.rows(), m.cols()};
  append_bytes(h, dims, sizeof dims);
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      // +0.0 and -0.0 hash alike
      const double v = m(i, j) == 0.0 ? 0.0 : m(i, j);
      std::uint64_t bits;
      std::memcpy(&bits, &v, sizeof bits);
      append_bytes(h, &bits, sizeof bits);
    }
  }
}

Json matrix_json(const RealMatrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

void plain_matrix(std::ostringstream& out, const RealMatrix& m) {
  char buf[32];
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
      out << (j ? " " : "") << buf;
    }
    out << '\n';
  }
}

}  // namespace

PlantFile parse_plant_json(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    const auto [line, col] = line_col(text, e.byte == 0 ? 0 : e.byte - 1);
    parse_fail("line " + std::to_string(line) + ", column " + std::to_string(col), "malformed JSON");
  }
  if (!doc.is_object()) parse_fail("line 1, column 1", "expected a JSON object");
  std::string label;
  if (auto it = doc.find("label"); it != doc.end()) {
    if (!it->is_string()) parse_fail("field 'label'", "expected a string");
    label = it->get<std::string>();
  }
  RealMatrix a = matrix_field(doc, "A");
  RealMatrix b1 = matrix_field(doc, "B1");
  RealMatrix b2 = matrix_field(doc, "B2");
  RealMatrix c1 = matrix_field(doc, "C1");
  return make_plant(std::move(a), std::move(b1), std::move(b2), std::move(c1), std::move(label));
}

PlantFile parse_plant_plain(std::string_view text) {
  std::vector<RealMatrix> blocks;
  std::vector<std::vector<double>> rows;
  std::size_t block_line = 0;
  static const char* names[] = {"A", "B1", "B2", "C1"};

  auto flush = [&]() {
    if (rows.empty()) return;
    if (blocks.size() == 4) {
      parse_fail("line " + std::to_string(block_line), "more than four matrices");
    }
    RealMatrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows[0].size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      for (std::size_t j = 0; j < rows[i].size(); ++j) m(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
    }
    blocks.push_back(std::move(m));
    rows.clear();
  };

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;

    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
      flush();
      if (end == text.size()) break;
      continue;
    }
    if (line[first] == '#') continue;
    if (rows.empty()) block_line = line_no;

    std::vector<double> row;
    std::size_t i = first;
    while (i < line.size()) {
      if (line[i] == ' ' || line[i] == '\t' || line[i] == '\r') {
        ++i;
        continue;
      }
      std::size_t j = line.find_first_of(" \t\r", i);
      if (j == std::string_view::npos) j = line.size();
      double v = 0.0;
      const char* b = line.data() + i;
      const char* e = line.data() + j;
      if (*b == '+' && e - b > 1 && b[1] != '+' && b[1] != '-') ++b;
      auto [ptr, ec] = std::from_chars(b, e, v);
      if (ec != std::errc() || ptr != e) {
        const std::string matrix = blocks.size() < 4 ? names[blocks.size()] : "?";
        parse_fail("line " + std::to_string(line_no) + ", column " + std::to_string(i + 1) + " (" + matrix + ")",
                   "invalid number '" + std::string(line.substr(i, j - i)) + "'");
      }
      row.push_back(v);
      i = j;
    }
    if (!rows.empty() && row.size() != rows[0].size()) {
      parse_fail("line " + std::to_string(line_no),
                 "row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(rows[0].size()));
    }
    rows.push_back(std::move(row));
    if (end == text.size()) break;
  }
  flush();
  if (blocks.size() != 4) {
    parse_fail("line " + std::to_string(line_no),
               "expected 4 matrices (A, B1, B2, C1), found " + std::to_string(blocks.size()));
  }
  return make_plant(blocks[0], blocks[1], blocks[2], blocks[3], "");
}

PlantFile parse_plant(std::string_view text, PlantFormat format) {
  return format == PlantFormat::Json ? parse_plant_json(text) : parse_plant_plain(text);
}

PlantFile load_plant(const std::string& path, PlantFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::IoError, "read failed for '" + path + "'");
  return parse_plant(buf.str(), format);
}

std::string write_plant(const PlantFile& file, PlantFormat format) {
  const Plant& p = file.plant;
  if (format == PlantFormat::Json) {
    nlohmann::ordered_json doc;
    if (!file.label.empty()) doc["label"] = file.label;
    doc["A"] = matrix_json(p.a());
    doc["B1"] = matrix_json(p.b1());
    doc["B2"] = matrix_json(p.b2());
    doc["C1"] = matrix_json(p.c1());
    return doc.dump(2) + "\n";
  }
  std::ostringstream out;
  plain_matrix(out, p.a());
  out << '\n';
  plain_matrix(out, p.b1());
  out << '\n';
  plain_matrix(out, p.b2());
  out << '\n';
  plain_matrix(out, p.c1());
  return out.str();
}

std::string input_digest(const Plant& plant) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  append_matrix(h, plant.a());
  append_matrix(h, plant.b1());
  append_matrix(h, plant.b2());
  append_matrix(h, plant.c1());
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace nistab
