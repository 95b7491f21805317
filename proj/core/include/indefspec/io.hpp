#pragma once

#include <string>
#include <vector>

#include "indefspec/critical.hpp"
#include "indefspec/eigen.hpp"
#include "indefspec/infzone.hpp"
#include "indefspec/measure.hpp"
#include "indefspec/sturm.hpp"
#include "indefspec/weyl.hpp"

namespace indefspec::io {

// Input specs.  Files ending in .toml are parsed as a TOML subset (tables,
// arrays of tables, inline tables, arrays, strings, numbers, booleans);
// everything else is parsed as JSON.  Both formats share one schema per
// object kind.  Parse and shape problems throw InvalidSpec.

SpectralMeasure load_measure(const std::string& path);
WeylCoefficient load_weyl(const std::string& path);
ZoneSpec load_zone(const std::string& path);
PotentialSpec load_potential(const std::string& path);
WeightFunction load_weight(const std::string& path);

// Text-level entry points behind the loaders, exposed for tests and for
// callers that assemble specs in memory.
SpectralMeasure parse_measure(const std::string& text, bool toml = false);
WeylCoefficient parse_weyl(const std::string& text, bool toml = false);
ZoneSpec parse_zone(const std::string& text, bool toml = false);
PotentialSpec parse_potential(const std::string& text, bool toml = false);
WeightFunction parse_weight(const std::string& text, bool toml = false);

// Report serialization: stable field order, two-space indentation, one
// trailing newline.  Identical inputs produce identical bytes.
std::string to_json(const EigenReport& r);
std::string to_json(const SpectrumReport& r);
std::string to_json(const CriticalVerdict& v);
std::string validation_json(const std::vector<std::string>& violations);

// CSV with a header row, rows formatted with format_number.
std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows);

// %.12g with negative zero normalized; infinities print as inf / -inf.
std::string format_number(double v);

std::string read_file(const std::string& path);

// path "-" (or empty) writes to stdout.
void write_output(const std::string& path, const std::string& content);

}  // namespace indefspec::io
