#pragma once

#include <string>
#include <string_view>

#include "nistab/plant.hpp"

namespace nistab {

enum class PlantFormat { Json, Plain };

struct PlantFile {
  Plant plant;
  std::string label;
};

/// {"A": [[..]], "B1": [[..]], "B2": [[..]], "C1": [[..]], "label": ".."}
/// Errors carry ErrorCode::ParseError with a line/column or field locus.
PlantFile parse_plant_json(std::string_view text);

/// Four whitespace matrices separated by blank lines, in the order A, B1, B2,
/// C1. Lines starting with '#' are ignored.
PlantFile parse_plant_plain(std::string_view text);

PlantFile parse_plant(std::string_view text, PlantFormat format);

/// Reads and parses a file; unreadable files raise ErrorCode::IoError.
PlantFile load_plant(const std::string& path, PlantFormat format);

/// Writes the plant in the given format. JSON output uses shortest
/// round-trip number formatting so re-parsing is bit exact.
std::string write_plant(const PlantFile& file, PlantFormat format);

/// FNV-1a 64-bit hash over dimensions and IEEE bit patterns of A, B1, B2, C1.
std::string input_digest(const Plant& plant);

}  // namespace nistab
