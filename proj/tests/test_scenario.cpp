#include <random>
#include <string>

#include "doctest.h"
#include "helpers.hpp"
#include "ulfemi/scenario.hpp"

using namespace ulfemi;
using testutil::close;

namespace {

const char* kMinimal = R"([source]
f_hz = 2.23e6
v_e_re = 1.0
v_e_im = 0.0

[body]
c_eh = 2e-12
c_hg = 30e-12
c_hn = 200e-12
c_ng = 100e-12

[coil]
r_coil_ohm = 0.5
l_coil = 10e-6
c_t = 5.0936668564790048e-10

[terminals]
c_ha = 1.5e-12
c_hb = 0.75e-12
c_ag = 150e-12
c_bg = 150e-12

[matching]
c_m = 220e-12
z_l_re = 50.0
z_l_im = 0.0
)";

std::string with_line_replaced(const std::string& text, const std::string& from,
                               const std::string& to) {
  std::string out = text;
  const size_t at = out.find(from);
  REQUIRE(at != std::string::npos);
  out.replace(at, from.size(), to);
  return out;
}

ParseError expect_error(const std::string& text, ParseErrorKind kind) {
  const ParseResult r = parse_scenario(text);
  REQUIRE_FALSE(r.ok);
  CHECK(r.error.kind == kind);
  CHECK(r.error.line >= 1);
  CHECK(r.error.column >= 1);
  return r.error;
}

ScenarioDocument random_document(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> cap(1e-13, 1e-9);
  std::uniform_real_distribution<double> ohm(0.1, 100.0);
  ScenarioDocument doc;
  doc.set("source.f_hz", 1e6 * ohm(rng));
  doc.set("source.v_e_re", ohm(rng));
  doc.set("source.v_e_im", ohm(rng) - 50.0);
  doc.set("body.c_eh", cap(rng));
  doc.set("body.c_hg", cap(rng));
  doc.set("body.c_hn", cap(rng));
  doc.set("body.c_ng", cap(rng));
  doc.set("coil.r_coil_ohm", ohm(rng));
  doc.set("coil.l_coil", 1e-6 * ohm(rng));
  doc.set("coil.c_t", cap(rng));
  doc.set("terminals.c_ha", cap(rng));
  doc.set("terminals.c_hb", cap(rng));
  doc.set("terminals.c_ag", cap(rng));
  doc.set("terminals.c_bg", cap(rng));
  doc.set("matching.c_m", cap(rng));
  doc.set("matching.z_l_re", ohm(rng));
  doc.set("matching.z_l_im", ohm(rng) - 50.0);
  if (rng() % 2) doc.set("suppression.c_blanket", cap(rng));
  return doc;
}

}  // namespace

TEST_SUITE_BEGIN("scenario");

TEST_CASE("minimal document parses into five sections") {
  const ParseResult r = parse_scenario(kMinimal);
  REQUIRE(r.ok);
  CHECK(r.document.sections.size() == 5);
  CHECK(r.document.get("body", "c_eh") == 2e-12);
  CHECK(r.document.get("matching", "z_l_re") == 50.0);
  CHECK_FALSE(has_geometry(r.document));

  const ScenarioParameters p = to_parameters(r.document);
  CHECK(p.frequency == 2.23e6);
  CHECK(p.v_e == Complex{1.0, 0.0});
  CHECK(p.c_blanket == 0.0);
}

TEST_CASE("comments, blank lines, and spacing are tolerated") {
  std::string text = kMinimal;
  text += "\n# trailing comment\n\n[suppression]\n   c_blanket   =  1e-12   # inline\n";
  const ParseResult r = parse_scenario(text);
  REQUIRE(r.ok);
  CHECK(r.document.get("suppression", "c_blanket") == 1e-12);
}

TEST_CASE("CRLF endings, UTF-8 BOM, and explicit plus signs parse") {
  std::string text(kMinimal);
  std::string crlf;
  for (const char c : text) {
    if (c == '\n') crlf += "\r\n";
    else crlf += c;
  }
  const ParseResult a = parse_scenario("\xEF\xBB\xBF" + crlf);
  REQUIRE(a.ok);
  CHECK(a.document.get("body", "c_eh") == 2e-12);

  const ParseResult b =
      parse_scenario(with_line_replaced(kMinimal, "c_eh = 2e-12", "c_eh = +2e-12"));
  REQUIRE(b.ok);
  CHECK(b.document.get("body", "c_eh") == 2e-12);

  expect_error(with_line_replaced(kMinimal, "c_eh = 2e-12", "c_eh = +-2e-12"),
               ParseErrorKind::BadNumber);
  expect_error(with_line_replaced(kMinimal, "c_eh = 2e-12", "c_eh = inf"),
               ParseErrorKind::BadNumber);
}

TEST_CASE("reopening a section continues it") {
  std::string text(kMinimal);
  text += "\n[body]\n";  // no new keys: still complete, no duplicates
  const ParseResult r = parse_scenario(text);
  REQUIRE(r.ok);

  std::string dup = std::string(kMinimal) + "\n[body]\nc_eh = 3e-12\n";
  const ParseError e = expect_error(dup, ParseErrorKind::DuplicateKey);
  CHECK(e.message.find("c_eh") != std::string::npos);
}

TEST_CASE("first offending token is reported") {
  SUBCASE("unknown section") {
    const ParseError e = expect_error(std::string("[bogus]\nx = 1\n") + kMinimal,
                                      ParseErrorKind::UnknownSection);
    CHECK(e.line == 1);
  }
  SUBCASE("unknown key") {
    const ParseError e = expect_error(with_line_replaced(kMinimal, "c_eh = 2e-12", "c_oops = 1"),
                                      ParseErrorKind::UnknownKey);
    CHECK(e.line == 7);
  }
  SUBCASE("duplicate key carries the right line") {
    const ParseError e =
        expect_error(with_line_replaced(kMinimal, "c_hb = 0.75e-12", "c_ha = 1e-12"),
                     ParseErrorKind::DuplicateKey);
    CHECK(e.line == 19);
    CHECK(e.message.find("c_ha") != std::string::npos);
  }
  SUBCASE("missing key points at the section header") {
    const ParseError e = expect_error(with_line_replaced(kMinimal, "c_ng = 100e-12\n", ""),
                                      ParseErrorKind::MissingKey);
    CHECK(e.message.find("c_ng") != std::string::npos);
  }
  SUBCASE("bad numbers") {
    expect_error(with_line_replaced(kMinimal, "c_eh = 2e-12", "c_eh = 2e-12 F"),
                 ParseErrorKind::BadNumber);
    expect_error(with_line_replaced(kMinimal, "c_eh = 2e-12", "c_eh = pico"),
                 ParseErrorKind::BadNumber);
    expect_error(with_line_replaced(kMinimal, "c_eh = 2e-12", "c_eh ="),
                 ParseErrorKind::BadNumber);
  }
  SUBCASE("missing section") {
    const std::string text(kMinimal);
    expect_error(text.substr(0, text.find("[matching]")), ParseErrorKind::MissingSection);
  }
  SUBCASE("negative capacitance with position") {
    const ParseError e = expect_error(with_line_replaced(kMinimal, "c_eh = 2e-12", "c_eh = -1e-12"),
                                      ParseErrorKind::NegativeValue);
    CHECK(e.line == 7);
    CHECK(e.column == 8);
  }
  SUBCASE("zero frequency is rejected") {
    expect_error(with_line_replaced(kMinimal, "f_hz = 2.23e6", "f_hz = 0"),
                 ParseErrorKind::NegativeValue);
  }
  SUBCASE("dead coil branch is rejected") {
    std::string text = with_line_replaced(kMinimal, "r_coil_ohm = 0.5", "r_coil_ohm = 0");
    text = with_line_replaced(text, "l_coil = 10e-6", "l_coil = 0");
    expect_error(text, ParseErrorKind::NegativeValue);
  }
  SUBCASE("zero preamplifier impedance is rejected") {
    expect_error(with_line_replaced(kMinimal, "z_l_re = 50.0", "z_l_re = 0"),
                 ParseErrorKind::NegativeValue);
  }
  SUBCASE("assignment before any section") {
    expect_error(std::string("c_eh = 1e-12\n") + kMinimal, ParseErrorKind::UnknownSection);
  }
  SUBCASE("malformed section header") {
    expect_error(std::string("[source\n") + kMinimal, ParseErrorKind::UnknownSection);
  }
  SUBCASE("line without an equals sign") {
    expect_error(with_line_replaced(kMinimal, "c_eh = 2e-12", "just words"),
                 ParseErrorKind::UnknownKey);
  }
  SUBCASE("first error wins over later ones") {
    std::string text = with_line_replaced(kMinimal, "c_eh = 2e-12", "c_eh = bad");
    text = with_line_replaced(text, "c_ng = 100e-12", "c_ng = -1");
    const ParseError e = expect_error(text, ParseErrorKind::BadNumber);
    CHECK(e.line == 7);
  }
}

TEST_CASE("geometry section validation") {
  std::string geo = kMinimal;
  geo +=
      "\n[geometry]\nr_head = 0.09\nl_cyl = 0.12\nr_coil_m = 0.10\n"
      "band_a_start = -0.07\nband_a_end = -0.01\nband_b_start = 0.01\nband_b_end = 0.07\n";
  SUBCASE("valid geometry round-trips into the model types") {
    const ParseResult r = parse_scenario(geo);
    REQUIRE(r.ok);
    REQUIRE(has_geometry(r.document));
    const auto [head, coil] = to_geometry(r.document);
    CHECK(head.r_head == 0.09);
    CHECK(head.eps_r == 1.0);  // optional key default
    CHECK(coil.band_b.end == 0.07);
  }
  SUBCASE("coil radius must clear the head") {
    expect_error(with_line_replaced(geo, "r_coil_m = 0.10", "r_coil_m = 0.08"),
                 ParseErrorKind::NegativeValue);
  }
  SUBCASE("band ordering and overlap") {
    expect_error(with_line_replaced(geo, "band_a_end = -0.01", "band_a_end = -0.08"),
                 ParseErrorKind::NegativeValue);
    expect_error(with_line_replaced(geo, "band_b_start = 0.01", "band_b_start = -0.05"),
                 ParseErrorKind::NegativeValue);
  }
  SUBCASE("geometry needs all coordinates") {
    expect_error(with_line_replaced(geo, "band_b_end = 0.07\n", ""), ParseErrorKind::MissingKey);
  }
  SUBCASE("to_geometry without the section") {
    const ParseResult r = parse_scenario(kMinimal);
    REQUIRE(r.ok);
    CHECK_THROWS_AS(static_cast<void>(to_geometry(r.document)), SimError);
  }
}

TEST_CASE("serialize round trips") {
  SUBCASE("parse-serialize-parse is identity on values") {
    const ParseResult first = parse_scenario(kMinimal);
    REQUIRE(first.ok);
    const std::string canon = serialize_scenario(first.document);
    const ParseResult second = parse_scenario(canon);
    REQUIRE(second.ok);
    CHECK(first.document.same_values(second.document));
    // canonical form is a fixed point
    CHECK(serialize_scenario(second.document) == canon);
  }
  SUBCASE("17-digit rendering preserves every bit") {
    ScenarioDocument doc = parse_scenario(kMinimal).document;
    doc.set("body.c_eh", 1.2345678901234567e-12);
    doc.set("source.v_e_im", -0.1);
    const ParseResult r = parse_scenario(serialize_scenario(doc));
    REQUIRE(r.ok);
    CHECK(r.document.get("body", "c_eh") == 1.2345678901234567e-12);
    CHECK(r.document.get("source", "v_e_im") == -0.1);
  }
  SUBCASE("absent optional sections stay absent") {
    const std::string canon = serialize_scenario(parse_scenario(kMinimal).document);
    CHECK(canon.find("suppression") == std::string::npos);
    CHECK(canon.find("geometry") == std::string::npos);
  }
  SUBCASE("random documents round trip") {
    std::mt19937_64 rng(77);
    for (int i = 0; i < 25; ++i) {
      const ScenarioDocument doc = random_document(rng);
      const ParseResult r = parse_scenario(serialize_scenario(doc));
      REQUIRE(r.ok);
      CHECK(doc.same_values(r.document));
    }
  }
}

TEST_CASE("set enforces the schema") {
  ScenarioDocument doc = parse_scenario(kMinimal).document;
  doc.set("body.c_eh", 5e-12);
  CHECK(doc.get("body", "c_eh") == 5e-12);
  doc.set("suppression.c_blanket", 2e-10);  // creates the optional section
  CHECK(doc.get("suppression", "c_blanket") == 2e-10);

  CHECK_THROWS_AS(doc.set("body.nope", 1.0), SimError);
  CHECK_THROWS_AS(doc.set("nope.c_eh", 1.0), SimError);
  CHECK_THROWS_AS(doc.set("body.c_eh", -1e-12), SimError);
  CHECK_THROWS_AS(doc.set("source.f_hz", 0.0), SimError);
  CHECK_THROWS_AS(doc.set("flat", 1.0), SimError);
}

TEST_SUITE_END();
