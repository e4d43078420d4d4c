#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "shift2d/atlas.hpp"
#include "shift2d/errors.hpp"

using namespace shift2d;

namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

AtlasParams small() {
  AtlasParams p;
  p.nx = 23;
  p.ny = 17;
  return p;
}

}  // namespace

TEST_SUITE("atlas") {
  TEST_CASE("corners only") {
    AtlasParams p;
    p.nx = 2;
    p.ny = 2;
    const auto rows = run_atlas(p);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].x == 0.45);
    CHECK(rows[0].y == 0.95);
    CHECK(rows[1].x == 0.45);
    CHECK(rows[1].y == 1.0);
    CHECK(rows[2].x == 0.66);
    CHECK(rows[3].y == 1.0);
    CHECK(rows[1].label == Label::Out);
    CHECK(atlas_csv(rows) == atlas_csv(run_atlas(p)));
  }

  TEST_CASE("csv schema") {
    const auto rows = run_atlas(small());
    const auto ls = lines(atlas_csv(rows));
    REQUIRE(ls.size() == rows.size() + 1);
    CHECK(ls[0] == kAtlasHeader);
    for (size_t i = 1; i < ls.size(); ++i) {
      size_t commas = 0;
      for (char c : ls[i]) commas += c == ',';
      REQUIRE(commas == 9);
    }
    bool saw_out = false;
    for (size_t i = 0; i < rows.size(); ++i)
      if (rows[i].label == Label::Out) {
        saw_out = true;
        CHECK(ls[i + 1].find(",OUT,nan,nan,nan,nan,0,closed-form") != std::string::npos);
      }
    CHECK(saw_out);
    CHECK(ls[1].rfind("0.5,0.45000000000000001,0.94999999999999996,", 0) == 0);
  }

  TEST_CASE("deterministic across thread counts") {
    AtlasParams p = small();
    p.threads = 1;
    const std::string one = atlas_csv(run_atlas(p));
    p.threads = 4;
    const std::string four = atlas_csv(run_atlas(p));
    CHECK(one == four);
    p.method = Method::Direct;
    p.nx = p.ny = 9;
    p.threads = 1;
    const std::string d1 = atlas_csv(run_atlas(p));
    p.threads = 3;
    CHECK(d1 == atlas_csv(run_atlas(p)));
  }

  TEST_CASE("direct and closed form differ only on boundary rows") {
    AtlasParams p;
    p.nx = p.ny = 30;
    const auto cf = run_atlas(p);
    p.method = Method::Direct;
    const auto dm = run_atlas(p);
    REQUIRE(cf.size() == dm.size());
    for (size_t i = 0; i < cf.size(); ++i)
      if (cf[i].label != dm[i].label) REQUIRE((cf[i].boundary || dm[i].boundary));
  }

  TEST_CASE("parameter validation") {
    AtlasParams p;
    p.nx = 1;
    CHECK_THROWS_AS(run_atlas(p), Error);
    p = AtlasParams{};
    p.a = 1.0;
    CHECK_THROWS_AS(run_atlas(p), Error);
    p = AtlasParams{};
    p.xmin = 0.7;
    p.xmax = 0.6;
    CHECK_THROWS_AS(run_atlas(p), Error);
    p = AtlasParams{};
    p.ymax = 1.2;
    CHECK_THROWS_AS(run_atlas(p), Error);
  }

  TEST_CASE("svg") {
    const AtlasParams p = small();
    const auto rows = run_atlas(p);
    const std::string svg = atlas_svg(p, rows);
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    auto polylines = [](const std::string& text) {
      size_t n = 0;
      for (size_t pos = text.find("<polyline"); pos != std::string::npos; pos = text.find("<polyline", pos + 1)) ++n;
      return n;
    };
    // At a = 1/2 the weak-hypo curve lies above y = 1; at a = 0.3 it crosses the window
    // and the subnormal curve drops below it.
    const std::string wh = "<polyline fill=\"none\" stroke=\"#8b0000\"";
    CHECK(polylines(svg) == 3);
    CHECK(svg.find(wh) == std::string::npos);
    AtlasParams q = p;
    q.a = 0.3;
    const std::string low = atlas_svg(q, run_atlas(q));
    CHECK(polylines(low) == 3);
    CHECK(low.find(wh) != std::string::npos);
    CHECK(svg.find("SUBNORMAL") != std::string::npos);
    CHECK(svg.find(">OUT<") == std::string::npos);
    CHECK(svg == atlas_svg(p, run_atlas(p)));
  }

  TEST_CASE("file output") {
    const auto path = (std::filesystem::temp_directory_path() / "s2d_atlas_test.csv").string();
    write_text_file(path, "x\n");
    std::ifstream in(path);
    std::string s;
    std::getline(in, s);
    CHECK(s == "x");
    std::filesystem::remove(path);
    try {
      write_text_file("/nonexistent-dir/atlas.csv", "x");
      FAIL("expected IoError");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::IoError);
    }
  }
}
