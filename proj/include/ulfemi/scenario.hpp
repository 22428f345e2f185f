#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ulfemi/coupling.hpp"
#include "ulfemi/geometry.hpp"
#include "ulfemi/types.hpp"

namespace ulfemi {

enum class ParseErrorKind {
  UnknownSection,
  UnknownKey,
  DuplicateKey,
  MissingKey,
  BadNumber,
  MissingSection,
  NegativeValue,
};

const char* to_string(ParseErrorKind kind);

struct ParseError {
  int line = 0;    // 1-based
  int column = 0;  // 1-based
  ParseErrorKind kind = ParseErrorKind::BadNumber;
  std::string message;
};

struct ScenarioEntry {
  std::string key;
  double value = 0.0;
  int line = 0;
  int column = 0;
};

struct ScenarioSection {
  std::string name;
  int line = 0;  // header line
  std::vector<ScenarioEntry> entries;
};

/// Parsed scenario file. Section and key order follow the input; values are
/// raw SI scalars (complex quantities appear as _re/_im pairs).
struct ScenarioDocument {
  std::vector<ScenarioSection> sections;
  std::string source_text;

  bool has_section(std::string_view name) const;
  const ScenarioEntry* find(std::string_view section, std::string_view key) const;
  double get(std::string_view section, std::string_view key) const;
  double get_or(std::string_view section, std::string_view key, double fallback) const;

  /// Assigns through "section.key" addressing, creating the entry (and an
  /// optional section) when absent. Enforces the same schema and sign rules
  /// as the parser; throws SimError(InvalidArgument) on violations.
  void set(std::string_view dotted_key, double value);

  /// Value-level equality: same section set with the same key/value pairs,
  /// independent of ordering.
  bool same_values(const ScenarioDocument& other) const;
};

struct ParseResult {
  bool ok = false;
  ScenarioDocument document;
  ParseError error;
};

/// Line-oriented parser. Grammar: '#' comments to end of line, blank lines
/// ignored, '[name]' opens a section, 'key = number' assigns. All values SI
/// base units, no unit suffixes. First error wins.
ParseResult parse_scenario(std::string_view text);

/// Canonical rendering: sections in schema order, keys sorted, 17 significant
/// digits (bit-exact reparse).
std::string serialize_scenario(const ScenarioDocument& doc);

/// Builds solver parameters from a complete document.
ScenarioParameters to_parameters(const ScenarioDocument& doc);

bool has_geometry(const ScenarioDocument& doc);

/// Extracts the head/coil geometry; requires the geometry section.
std::pair<HeadModel, CoilBands> to_geometry(const ScenarioDocument& doc);

}  // namespace ulfemi
