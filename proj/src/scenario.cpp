#include "ulfemi/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace ulfemi {

namespace {

// Sign constraints a key must satisfy.
enum class Sign { Any, NonNegative, Positive, AtLeastOne };

struct KeySpec {
  const char* name;
  bool required;
  Sign sign;
};

struct SectionSpec {
  const char* name;
  bool required;
  std::vector<KeySpec> keys;
};

const std::vector<SectionSpec>& schema() {
  static const std::vector<SectionSpec> s = {
      {"source",
       true,
       {{"f_hz", true, Sign::Positive},
        {"v_e_re", true, Sign::Any},
        {"v_e_im", true, Sign::Any}}},
      {"body",
       true,
       {{"c_eh", true, Sign::NonNegative},
        {"c_hg", true, Sign::NonNegative},
        {"c_hn", true, Sign::NonNegative},
        {"c_ng", true, Sign::NonNegative}}},
      {"coil",
       true,
       {{"r_coil_ohm", true, Sign::NonNegative},
        {"l_coil", true, Sign::NonNegative},
        {"c_t", true, Sign::NonNegative}}},
      {"terminals",
       true,
       {{"c_ha", true, Sign::NonNegative},
        {"c_hb", true, Sign::NonNegative},
        {"c_ag", true, Sign::NonNegative},
        {"c_bg", true, Sign::NonNegative}}},
      {"matching",
       true,
       {{"c_m", true, Sign::NonNegative},
        {"z_l_re", true, Sign::Any},
        {"z_l_im", true, Sign::Any}}},
      {"geometry",
       false,
       {{"r_head", true, Sign::Positive},
        {"l_cyl", true, Sign::NonNegative},
        {"r_coil_m", true, Sign::Positive},
        {"band_a_start", true, Sign::Any},
        {"band_a_end", true, Sign::Any},
        {"band_b_start", true, Sign::Any},
        {"band_b_end", true, Sign::Any},
        {"eps_r", false, Sign::AtLeastOne}}},
      {"suppression", false, {{"c_blanket", true, Sign::NonNegative}}},
  };
  return s;
}

const SectionSpec* find_section_spec(std::string_view name) {
  for (const SectionSpec& s : schema()) {
    if (name == s.name) return &s;
  }
  return nullptr;
}

const KeySpec* find_key_spec(const SectionSpec& section, std::string_view key) {
  for (const KeySpec& k : section.keys) {
    if (key == k.name) return &k;
  }
  return nullptr;
}

bool sign_ok(Sign sign, double v) {
  switch (sign) {
    case Sign::Any: return true;
    case Sign::NonNegative: return v >= 0.0;
    case Sign::Positive: return v > 0.0;
    case Sign::AtLeastOne: return v >= 1.0;
  }
  return false;
}

const char* sign_requirement(Sign sign) {
  switch (sign) {
    case Sign::Any: return "";
    case Sign::NonNegative: return "must be >= 0";
    case Sign::Positive: return "must be > 0";
    case Sign::AtLeastOne: return "must be >= 1";
  }
  return "";
}

std::string_view trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

// from_chars rejects an explicit leading plus; the grammar allows it
bool parse_number(std::string_view text, double& out) {
  if (!text.empty() && text.front() == '+') {
    if (text.size() < 2 || !(std::isdigit(static_cast<unsigned char>(text[1])) || text[1] == '.')) {
      return false;
    }
    text.remove_prefix(1);
  }
  const char* b = text.data();
  const char* e = b + text.size();
  auto [end, ec] = std::from_chars(b, e, out);
  return !text.empty() && ec == std::errc{} && end == e && std::isfinite(out);
}

struct Parser {
  std::string_view text;
  ParseError error;
  bool failed = false;
  int line_count = 0;

  bool fail(int line, int column, ParseErrorKind kind, std::string message) {
    if (!failed) {
      failed = true;
      error = {line, column, kind, std::move(message)};
    }
    return false;
  }
};

// Runs the post-parse completeness and range checks shared with set().
bool validate_document(const ScenarioDocument& doc, Parser& p) {
  auto entry_line = [&](std::string_view sec, std::string_view key) {
    const ScenarioEntry* e = doc.find(sec, key);
    return e ? std::pair{e->line, e->column} : std::pair{std::max(p.line_count, 1), 1};
  };

  for (const SectionSpec& spec : schema()) {
    const bool present = doc.has_section(spec.name);
    if (!present) {
      if (spec.required) {
        return p.fail(std::max(p.line_count, 1), 1, ParseErrorKind::MissingSection,
                      std::string("required section [") + spec.name + "] is missing");
      }
      continue;
    }
    int header_line = 1;
    for (const ScenarioSection& s : doc.sections) {
      if (s.name == spec.name) header_line = s.line;
    }
    for (const KeySpec& k : spec.keys) {
      if (k.required && doc.find(spec.name, k.name) == nullptr) {
        return p.fail(header_line, 1, ParseErrorKind::MissingKey,
                      std::string("section [") + spec.name + "] is missing key '" + k.name + "'");
      }
    }
  }

  // cross-key constraints, reported at the offending assignment
  if (doc.get("coil", "r_coil_ohm") == 0.0 && doc.get("coil", "l_coil") == 0.0) {
    auto [ln, col] = entry_line("coil", "r_coil_ohm");
    return p.fail(ln, col, ParseErrorKind::NegativeValue,
                  "r_coil_ohm and l_coil cannot both be zero");
  }
  if (doc.get("matching", "z_l_re") == 0.0 && doc.get("matching", "z_l_im") == 0.0) {
    auto [ln, col] = entry_line("matching", "z_l_re");
    return p.fail(ln, col, ParseErrorKind::NegativeValue,
                  "preamplifier impedance magnitude must be > 0");
  }
  if (doc.has_section("geometry")) {
    if (doc.get("geometry", "r_coil_m") <= doc.get("geometry", "r_head")) {
      auto [ln, col] = entry_line("geometry", "r_coil_m");
      return p.fail(ln, col, ParseErrorKind::NegativeValue,
                    "coil radius must exceed the head radius");
    }
    if (doc.get("geometry", "band_a_end") <= doc.get("geometry", "band_a_start")) {
      auto [ln, col] = entry_line("geometry", "band_a_end");
      return p.fail(ln, col, ParseErrorKind::NegativeValue, "band_a_end must exceed band_a_start");
    }
    if (doc.get("geometry", "band_b_end") <= doc.get("geometry", "band_b_start")) {
      auto [ln, col] = entry_line("geometry", "band_b_end");
      return p.fail(ln, col, ParseErrorKind::NegativeValue, "band_b_end must exceed band_b_start");
    }
    const bool disjoint = doc.get("geometry", "band_a_end") <= doc.get("geometry", "band_b_start") ||
                          doc.get("geometry", "band_b_end") <= doc.get("geometry", "band_a_start");
    if (!disjoint) {
      auto [ln, col] = entry_line("geometry", "band_b_start");
      return p.fail(ln, col, ParseErrorKind::NegativeValue, "coil bands overlap");
    }
  }
  return true;
}

}  // namespace

const char* to_string(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::UnknownSection: return "UnknownSection";
    case ParseErrorKind::UnknownKey: return "UnknownKey";
    case ParseErrorKind::DuplicateKey: return "DuplicateKey";
    case ParseErrorKind::MissingKey: return "MissingKey";
    case ParseErrorKind::BadNumber: return "BadNumber";
    case ParseErrorKind::MissingSection: return "MissingSection";
    case ParseErrorKind::NegativeValue: return "NegativeValue";
  }
  return "UnknownParseError";
}

bool ScenarioDocument::has_section(std::string_view name) const {
  for (const ScenarioSection& s : sections) {
    if (s.name == name) return true;
  }
  return false;
}

const ScenarioEntry* ScenarioDocument::find(std::string_view section, std::string_view key) const {
  for (const ScenarioSection& s : sections) {
    if (s.name != section) continue;
    for (const ScenarioEntry& e : s.entries) {
      if (e.key == key) return &e;
    }
  }
  return nullptr;
}

double ScenarioDocument::get(std::string_view section, std::string_view key) const {
  const ScenarioEntry* e = find(section, key);
  if (!e) {
    throw SimError(ErrorCode::InvalidArgument,
                   "scenario key " + std::string(section) + "." + std::string(key) + " not set");
  }
  return e->value;
}

double ScenarioDocument::get_or(std::string_view section, std::string_view key,
                                double fallback) const {
  const ScenarioEntry* e = find(section, key);
  return e ? e->value : fallback;
}

void ScenarioDocument::set(std::string_view dotted_key, double value) {
  const size_t dot = dotted_key.find('.');
  if (dot == std::string_view::npos) {
    throw SimError(ErrorCode::InvalidArgument,
                   "parameter path must look like section.key, got '" +
                       std::string(dotted_key) + "'");
  }
  const std::string_view section = dotted_key.substr(0, dot);
  const std::string_view key = dotted_key.substr(dot + 1);
  const SectionSpec* sec_spec = find_section_spec(section);
  if (!sec_spec) {
    throw SimError(ErrorCode::InvalidArgument,
                   "unknown scenario section '" + std::string(section) + "'");
  }
  const KeySpec* key_spec = find_key_spec(*sec_spec, key);
  if (!key_spec) {
    throw SimError(ErrorCode::InvalidArgument, "unknown scenario key '" + std::string(dotted_key) +
                                                   "'");
  }
  if (!std::isfinite(value)) {
    throw SimError(ErrorCode::InvalidArgument, "value for '" + std::string(dotted_key) +
                                                   "' must be finite");
  }
  if (!sign_ok(key_spec->sign, value)) {
    throw SimError(ErrorCode::InvalidArgument, "value for '" + std::string(dotted_key) + "' " +
                                                   sign_requirement(key_spec->sign));
  }
  for (ScenarioSection& s : sections) {
    if (s.name != section) continue;
    for (ScenarioEntry& e : s.entries) {
      if (e.key == key) {
        e.value = value;
        return;
      }
    }
    s.entries.push_back({std::string(key), value, 0, 0});
    return;
  }
  sections.push_back({std::string(section), 0, {{std::string(key), value, 0, 0}}});
}

bool ScenarioDocument::same_values(const ScenarioDocument& other) const {
  auto count_entries = [](const ScenarioDocument& d) {
    size_t n = 0;
    for (const ScenarioSection& s : d.sections) n += s.entries.size();
    return n;
  };
  if (count_entries(*this) != count_entries(other)) return false;
  for (const ScenarioSection& s : sections) {
    for (const ScenarioEntry& e : s.entries) {
      const ScenarioEntry* o = other.find(s.name, e.key);
      if (!o || o->value != e.value) return false;
    }
  }
  return true;
}

ParseResult parse_scenario(std::string_view text) {
  ParseResult result;
  result.document.source_text = std::string(text);
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);  // UTF-8 BOM

  Parser p;
  p.text = text;
  ScenarioDocument& doc = result.document;
  ScenarioSection* current = nullptr;

  size_t pos = 0;
  int line_no = 0;
  while (pos <= text.size() && !p.failed) {
    if (pos == text.size() && line_no > 0) break;
    size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view raw = text.substr(pos, eol - pos);
    ++line_no;
    p.line_count = line_no;

    std::string_view line = raw;
    if (const size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    const std::string_view body = trim(line);
    if (body.empty()) {
      pos = eol + 1;
      if (eol == text.size()) break;
      continue;
    }
    const int body_col = static_cast<int>(body.data() - raw.data()) + 1;

    if (body.front() == '[') {
      const size_t close = body.find(']');
      if (close == std::string_view::npos || trim(body.substr(close + 1)).size() != 0) {
        p.fail(line_no, body_col, ParseErrorKind::UnknownSection, "malformed section header");
        break;
      }
      const std::string_view name = trim(body.substr(1, close - 1));
      const SectionSpec* spec = find_section_spec(name);
      if (!spec) {
        p.fail(line_no, body_col + 1, ParseErrorKind::UnknownSection,
               "unknown section '" + std::string(name) + "'");
        break;
      }
      current = nullptr;
      for (ScenarioSection& s : doc.sections) {
        if (s.name == name) current = &s;  // reopening continues the section
      }
      if (!current) {
        doc.sections.push_back({std::string(name), line_no, {}});
        current = &doc.sections.back();
      }
    } else {
      const size_t eq = body.find('=');
      if (eq == std::string_view::npos) {
        p.fail(line_no, body_col, ParseErrorKind::UnknownKey, "expected 'key = value'");
        break;
      }
      const std::string_view key = trim(body.substr(0, eq));
      const std::string_view value_text = trim(body.substr(eq + 1));
      const int key_col = key.empty() ? body_col : static_cast<int>(key.data() - raw.data()) + 1;
      const int value_col = value_text.empty()
                                ? body_col + static_cast<int>(eq) + 1
                                : static_cast<int>(value_text.data() - raw.data()) + 1;
      if (!current) {
        p.fail(line_no, key_col, ParseErrorKind::UnknownSection,
               "assignment before any [section] header");
        break;
      }
      if (key.empty()) {
        p.fail(line_no, key_col, ParseErrorKind::UnknownKey, "empty key");
        break;
      }
      const SectionSpec* sec_spec = find_section_spec(current->name);
      const KeySpec* key_spec = find_key_spec(*sec_spec, key);
      if (!key_spec) {
        p.fail(line_no, key_col, ParseErrorKind::UnknownKey,
               "unknown key '" + std::string(key) + "' in section [" + current->name + "]");
        break;
      }
      bool duplicate = false;
      for (const ScenarioEntry& e : current->entries) duplicate |= e.key == key;
      if (duplicate) {
        p.fail(line_no, key_col, ParseErrorKind::DuplicateKey,
               "duplicate key '" + std::string(key) + "' in section [" + current->name + "]");
        break;
      }
      double value = 0.0;
      if (!parse_number(value_text, value)) {
        p.fail(line_no, value_col, ParseErrorKind::BadNumber,
               "expected a finite number (SI base units, no unit suffix)");
        break;
      }
      if (!sign_ok(key_spec->sign, value)) {
        p.fail(line_no, value_col, ParseErrorKind::NegativeValue,
               std::string(key) + " " + sign_requirement(key_spec->sign));
        break;
      }
      current->entries.push_back({std::string(key), value, line_no, value_col});
    }
    pos = eol + 1;
    if (eol == text.size()) break;
  }

  if (!p.failed) validate_document(doc, p);
  result.ok = !p.failed;
  result.error = p.error;
  return result;
}

std::string serialize_scenario(const ScenarioDocument& doc) {
  std::string out;
  bool first = true;
  for (const SectionSpec& spec : schema()) {
    const ScenarioSection* sec = nullptr;
    for (const ScenarioSection& s : doc.sections) {
      if (s.name == spec.name) sec = &s;
    }
    if (!sec || sec->entries.empty()) continue;
    if (!first) out += "\n";
    first = false;
    out += "[";
    out += spec.name;
    out += "]\n";
    std::vector<const ScenarioEntry*> entries;
    entries.reserve(sec->entries.size());
    for (const ScenarioEntry& e : sec->entries) entries.push_back(&e);
    std::sort(entries.begin(), entries.end(),
              [](const ScenarioEntry* a, const ScenarioEntry* b) { return a->key < b->key; });
    for (const ScenarioEntry* e : entries) {
      char buf[48];
      std::snprintf(buf, sizeof buf, "%.17g", e->value);
      out += e->key;
      out += " = ";
      out += buf;
      out += "\n";
    }
  }
  return out;
}

ScenarioParameters to_parameters(const ScenarioDocument& doc) {
  ScenarioParameters p;
  p.frequency = doc.get("source", "f_hz");
  p.v_e = Complex{doc.get("source", "v_e_re"), doc.get("source", "v_e_im")};
  p.c_eh = doc.get("body", "c_eh");
  p.c_hg_direct = doc.get("body", "c_hg");
  p.c_hn = doc.get("body", "c_hn");
  p.c_ng = doc.get("body", "c_ng");
  p.c_ha = doc.get("terminals", "c_ha");
  p.c_hb = doc.get("terminals", "c_hb");
  p.c_ag = doc.get("terminals", "c_ag");
  p.c_bg = doc.get("terminals", "c_bg");
  p.r_coil = doc.get("coil", "r_coil_ohm");
  p.l_coil = doc.get("coil", "l_coil");
  p.c_t = doc.get("coil", "c_t");
  p.c_m = doc.get("matching", "c_m");
  p.z_l = Complex{doc.get("matching", "z_l_re"), doc.get("matching", "z_l_im")};
  p.c_blanket = doc.get_or("suppression", "c_blanket", 0.0);
  p.validate();
  return p;
}

bool has_geometry(const ScenarioDocument& doc) { return doc.has_section("geometry"); }

std::pair<HeadModel, CoilBands> to_geometry(const ScenarioDocument& doc) {
  if (!has_geometry(doc)) {
    throw SimError(ErrorCode::InvalidArgument, "scenario has no [geometry] section");
  }
  HeadModel head;
  head.r_head = doc.get("geometry", "r_head");
  head.l_cyl = doc.get("geometry", "l_cyl");
  head.eps_r = doc.get_or("geometry", "eps_r", 1.0);
  CoilBands coil;
  coil.r_coil = doc.get("geometry", "r_coil_m");
  coil.band_a = {doc.get("geometry", "band_a_start"), doc.get("geometry", "band_a_end")};
  coil.band_b = {doc.get("geometry", "band_b_start"), doc.get("geometry", "band_b_end")};
  head.validate();
  coil.validate(head);
  return {head, coil};
}

}  // namespace ulfemi
