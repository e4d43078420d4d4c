#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>

#include "../support/generators.hpp"
#include "../support/oracles.hpp"
#include "shift2d/errors.hpp"
#include "shift2d/shift_model.hpp"

using namespace shift2d;

namespace {

std::string fixture(const char* name) { return std::string(S2D_FIXTURES) + "/" + name; }

ErrorCode code_of(const auto& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Internal;
}

}  // namespace

TEST_SUITE("shift_model") {
  TEST_CASE("validate examples") {
    CHECK(validate(build_helton_howe()).ok);
    const WeightDiagram w = build_axy(0.5, 0.5, 0.5);
    CHECK(validate(w).ok);
    CHECK(w.beta(1, 0) == doctest::Approx(0.5));

    const WeightDiagram bad("bad", 2, 2, {1, 1, 1, 1}, {2, 1, 1, 1});
    const ValidationReport r = validate(bad);
    CHECK_FALSE(r.ok);
    REQUIRE_FALSE(r.violations.empty());
    CHECK(r.violations.front().k1 == 0);
    CHECK(r.violations.front().k2 == 0);
    CHECK(code_of([&] { require_valid(bad); }) == ErrorCode::NonCommuting);
  }

  TEST_CASE("weights must be positive and finite") {
    CHECK(code_of([] { WeightDiagram("z", 1, 1, {0.0}, {1.0}); }) == ErrorCode::NonPositiveWeight);
    CHECK(code_of([] { WeightDiagram("n", 1, 1, {1.0}, {NAN}); }) == ErrorCode::NonPositiveWeight);
    CHECK(code_of([] { WeightDiagram("s", 2, 1, {1.0}, {1.0}); }) == ErrorCode::InvalidArgument);
  }

  TEST_CASE("moments") {
    const double a = 0.4, x = 0.7, y = 0.9;
    const MomentTable g = moments(build_axy(a, x, y), 3, 3);
    CHECK(g(0, 0) == 1.0);
    CHECK(g(1, 0) == doctest::Approx(x * x));
    CHECK(g(0, 1) == doctest::Approx(y * y));
    CHECK(g(1, 1) == doctest::Approx(a * a * y * y));
    const MomentTable hh = moments(build_helton_howe(), 4, 4);
    for (int i = 0; i <= 4; ++i)
      for (int j = 0; j <= 4; ++j) CHECK(hh(i, j) == 1.0);
    CHECK(moments(build_drury_arveson(4), 1, 1)(1, 1) == doctest::Approx(0.5));
    const WeightDiagram huge("huge", 1, 1, {1e200}, {1.0});
    CHECK(code_of([&] { moments(huge, 4, 0); }) == ErrorCode::Overflow);
  }

  TEST_CASE("axy builder") {
    const WeightDiagram w = build_axy(0.5, 0.6, 0.7);
    CHECK(w.alpha(0, 0) == 0.6);
    CHECK(w.alpha(0, 1) == 0.5);
    CHECK(w.alpha(0, 7) == 0.5);
    CHECK(w.alpha(1, 0) == 1.0);
    CHECK(w.alpha(5, 5) == 1.0);
    CHECK(w.beta(0, 0) == 0.7);
    CHECK(w.beta(1, 0) == doctest::Approx(0.5 * 0.7 / 0.6));
    CHECK(w.beta(6, 0) == doctest::Approx(0.5 * 0.7 / 0.6));
    CHECK(w.beta(0, 1) == 1.0);
    CHECK(code_of([] { build_axy(0.9, 0.5, 0.9); }) == ErrorCode::OutOfClass);
    CHECK(code_of([] { build_axy(1.0, 0.5, 0.3); }) == ErrorCode::OutOfClass);
    CHECK(code_of([] { build_axy(0.5, 0.0, 0.3); }) == ErrorCode::OutOfClass);
  }

  TEST_CASE("Drury-Arveson builder") {
    const WeightDiagram d = build_drury_arveson(6);
    CHECK(d.alpha(0, 1) == doctest::Approx(std::sqrt(0.5)));
    CHECK(d.beta(1, 0) == doctest::Approx(std::sqrt(0.5)));
    CHECK(d.alpha(1, 1) == doctest::Approx(std::sqrt(2.0 / 3.0)));
    CHECK(d.alpha(2, 1) == doctest::Approx(std::sqrt(0.75)));
    CHECK(d.beta(0, 2) == doctest::Approx(1.0));
    CHECK(d.alpha(40, 3) == doctest::Approx(std::sqrt(41.0 / 44.0)));
    CHECK(d.tail() == TailKind::Formula);
    CHECK(validate(d).ok);
    CHECK(code_of([] { build_drury_arveson(1); }) == ErrorCode::InvalidArgument);
  }

  TEST_CASE("worked examples") {
    const WeightDiagram e = build_ex215(0.5, 0.8);
    CHECK(e.alpha(0, 1) == doctest::Approx(0.4));
    CHECK(e.alpha(0, 0) == doctest::Approx(0.25));
    CHECK(e.beta(1, 0) == doctest::Approx(0.4));
    CHECK(validate(e).ok);
    CHECK(code_of([] { build_ex215(0.8, 0.5); }) == ErrorCode::InvalidArgument);

    const WeightDiagram f = build_ex216(1.05, 1.05);
    CHECK(validate(f).ok);
    CHECK(f.alpha(0, 0) == 1.05);
    CHECK(f.beta(0, 1) == doctest::Approx(2.1));
    CHECK(f.beta(1, 0) == doctest::Approx(1.0));
    CHECK(code_of([] { build_ex216(0.5, 1.0); }) == ErrorCode::InvalidArgument);
  }

  TEST_CASE("embedding of constant sequences is Helton-Howe") {
    const WeightDiagram e = build_embedding({{1.0, 1.0}, {1.0, 1.0}});
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) {
        CHECK(e.alpha(i, j) == 1.0);
        CHECK(e.beta(i, j) == 1.0);
      }
    CHECK(code_of([] { build_embedding({{1.0, 2.0}, {1.0, 3.0}}); }) == ErrorCode::NonCommuting);
  }

  TEST_CASE("complete_by_commutativity fills missing beta") {
    std::vector<double> alpha = {0.5, 0.7, 0.9, 0.9};
    std::vector<double> beta = {0.6, 0.8, NAN, NAN};
    const int filled = complete_by_commutativity(2, 2, alpha, beta);
    // (1,1) is tied to alpha(0,2), which lies outside the core.
    CHECK(filled == 1);
    CHECK(beta[2] == doctest::Approx(0.7 * 0.6 / 0.5));
    CHECK(std::isnan(beta[3]));
  }

  TEST_CASE("weight file round trip") {
    const auto dir = std::filesystem::temp_directory_path();
    for (const WeightDiagram& d : {build_axy(0.5, 0.5, 0.5), build_drury_arveson(3), build_ex215(0.3, 0.7)}) {
      const std::string path = (dir / "s2d_roundtrip.json").string();
      save_weights(d, path);
      CHECK(load_weights(path) == d);
      CHECK(parse_weights(serialize_weights(d)) == d);
      std::remove(path.c_str());
    }
  }

  TEST_CASE("weight file errors") {
    CHECK(code_of([] { load_weights(fixture("malformed.json")); }) == ErrorCode::SchemaError);
    CHECK(code_of([] { load_weights(fixture("ragged.json")); }) == ErrorCode::SchemaError);
    CHECK(code_of([] { load_weights(fixture("unknown_tail.json")); }) == ErrorCode::SchemaError);
    CHECK(code_of([] { load_weights(fixture("noncommuting.json")); }) == ErrorCode::NonCommuting);
    CHECK(code_of([] { load_weights(fixture("nonpositive.json")); }) == ErrorCode::NonPositiveWeight);
    CHECK(code_of([] { load_weights(fixture("does_not_exist.json")); }) == ErrorCode::IoError);
    CHECK(code_of([] { parse_weights("[1, 2]"); }) == ErrorCode::SchemaError);
    CHECK(code_of([] { parse_weights(R"({"alpha": [[1]], "beta": [["x"]]})"); }) == ErrorCode::SchemaError);
    CHECK(load_weights(fixture("helton_howe.json")) == WeightDiagram("flat", 1, 1, {1.0}, {1.0}));
  }

  TEST_CASE("property: builders validate and moments are path independent") {
    gen::Rng rng(21);
    for (int i = 0; i < 400; ++i) {
      const auto item = gen::mixed(rng);
      const WeightDiagram& d = item.diagram;
      INFO(item.kind);
      REQUIRE(validate(d).ok);
      const MomentTable g = moments(d, 6, 6);
      REQUIRE(moment_path_deviation(d, g, 100, static_cast<std::uint64_t>(i)) <= 1e-12);
      for (int k1 = 0; k1 <= 6; ++k1)
        for (int k2 = 0; k2 <= 6; ++k2) {
          const double o = static_cast<double>(oracle::moment(d, k1, k2));
          REQUIRE(std::abs(g(k1, k2) - o) <= 1e-12 * o);
        }
    }
  }

  TEST_CASE("property: moment ratios are squared weights") {
    gen::Rng rng(22);
    for (int i = 0; i < 200; ++i) {
      const WeightDiagram d = gen::random_core(rng);
      const MomentTable g = moments(d, 5, 5);
      for (int k1 = 0; k1 < 5; ++k1)
        for (int k2 = 0; k2 < 5; ++k2) {
          REQUIRE(g(k1 + 1, k2) / g(k1, k2) == doctest::Approx(d.alpha(k1, k2) * d.alpha(k1, k2)).epsilon(1e-12));
          REQUIRE(g(k1, k2 + 1) / g(k1, k2) == doctest::Approx(d.beta(k1, k2) * d.beta(k1, k2)).epsilon(1e-12));
        }
    }
  }

  TEST_CASE("property: embeddings depend on k1 + k2 only") {
    gen::Rng rng(23);
    for (int i = 0; i < 200; ++i) {
      const EmbeddingSpec e = gen::embedding(rng);
      const WeightDiagram d = build_embedding(e);
      for (int s = 0; s < 8; ++s)
        for (int k1 = 0; k1 <= s; ++k1) {
          REQUIRE(d.alpha(k1, s - k1) == e.omega_at(s));
          REQUIRE(d.beta(k1, s - k1) == e.eta_at(s));
        }
    }
  }

  TEST_CASE("property: family beta on the first row stays below one") {
    gen::Rng rng(24);
    for (int i = 0; i < 2000; ++i) {
      const gen::Axy p = gen::axy(rng);
      const WeightDiagram d = build_axy(p.a, p.x, p.y);
      REQUIRE(validate(d).ok);
      REQUIRE(d.beta(1, 0) < 1.0);
      REQUIRE(d.beta(3, 0) < 1.0);
    }
  }
}
