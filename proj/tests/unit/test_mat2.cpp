#include <doctest.h>

#include <cmath>

#include "../support/generators.hpp"
#include "../support/oracles.hpp"
#include "shift2d/errors.hpp"
#include "shift2d/mat2.hpp"

using namespace shift2d;

namespace {

double dist(const Sym2& a, const Sym2& b) { return (a - b).frobenius(); }

}  // namespace

TEST_SUITE("mat2") {
  TEST_CASE("identity and zero") {
    CHECK(sqrt_psd(Sym2::identity()) == Sym2::identity());
    CHECK(sqrt_psd(Sym2{}) == Sym2{});
    CHECK(sqrt_psd({4.0, 0.0, 9.0}) == Sym2{2.0, 0.0, 3.0});
  }

  TEST_CASE("rank-one ones matrix") {
    const double h = std::sqrt(0.5);
    CHECK(dist(sqrt_psd({1.0, 1.0, 1.0}), {h, h, h}) < 1e-15);
    const double x = 0.5, y = 0.75;  // exact squares and product
    const Sym2 g{x * x, x * y, y * y};
    const Sym2 s = sqrt_psd(g);
    CHECK(dist(s, (1.0 / std::sqrt(x * x + y * y)) * g) < 1e-15);
  }

  TEST_CASE("closed form for [[1,1/2],[1/2,1]]") {
    const double k = 1.0 / std::sqrt(2.0 + std::sqrt(3.0));
    const Sym2 want{k * (1.0 + std::sqrt(3.0) / 2.0), k * 0.5, k * (1.0 + std::sqrt(3.0) / 2.0)};
    CHECK(dist(sqrt_psd({1.0, 0.5, 1.0}), want) < 1e-15);
  }

  TEST_CASE("indefinite input raises NotPsd") {
    try {
      sqrt_psd({1.0, 2.0, 1.0});
      FAIL("expected NotPsd");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NotPsd);
    }
    CHECK_THROWS_AS(sqrt_psd({-1.0, 0.0, 1.0}), Error);
  }

  TEST_CASE("slightly negative determinant is clamped") {
    const Sym2 m{1.0, 1.0 + 1e-13, 1.0};
    CHECK(is_psd(m).psd);
    const Sym2 s = sqrt_psd(m);
    CHECK(s.finite());
    CHECK(dist(square(s), m) < 1e-11);
  }

  TEST_CASE("is_psd examples") {
    const PsdCheck ones = is_psd({1.0, 1.0, 1.0});
    CHECK(ones.psd);
    CHECK(std::abs(ones.lambda_min) <= 1e-15);
    const double a = 0.5, x = 0.5, y = 0.5, c = a * a * y / x;
    const PsdCheck fam = is_psd({1.0, c, 1.0});
    CHECK(fam.psd);
    CHECK(fam.lambda_min == doctest::Approx(1.0 - c));
    CHECK_FALSE(is_psd({1.0, 2.0, 1.0}).psd);
    CHECK(is_psd({1.0, 2.0, 1.0}).lambda_min == doctest::Approx(-1.0));
  }

  TEST_CASE("tolerance band") {
    PsdTolerance tol;
    CHECK(is_psd({-0.5e-10, 0.0, 0.0}, tol).psd);
    CHECK_FALSE(is_psd({-2e-10, 0.0, 0.0}, tol).psd);
    tol.rel = 1e-6;
    CHECK(is_psd({-5e-7, 0.0, 0.0}, tol).psd);
  }

  TEST_CASE("sqrt_diff_psd examples") {
    const SqrtDiff same = sqrt_diff_psd({2.0, 0.3, 1.0}, {2.0, 0.3, 1.0});
    CHECK(same.psd);
    CHECK(same.diff.frobenius() < 1e-15);

    const SqrtDiff da = sqrt_diff_psd({1.0, 0.5, 1.0}, {1.0, 1.0, 1.0});
    CHECK_FALSE(da.psd);
    CHECK(da.det == doctest::Approx(-0.133975).epsilon(1e-5));
    // (1 + sqrt3/2)/sqrt(2+sqrt3) - 1/sqrt2 on the diagonal, 1/(2 sqrt(2+sqrt3)) - 1/sqrt2 off it.
    const double k = 1.0 / std::sqrt(2.0 + std::sqrt(3.0)), h = std::sqrt(0.5);
    const double p = k * (1.0 + std::sqrt(3.0) / 2.0) - h, q = k * 0.5 - h;
    CHECK(da.det == doctest::Approx(p * p - q * q).epsilon(1e-14));
    CHECK(da.trace == doctest::Approx(2.0 * p).epsilon(1e-14));

    const double a = 0.5, x = 0.5, y = 0.6, c = a * a * y / x;
    CHECK(sqrt_diff_psd({1.0, c, 1.0}, {x * x, x * y, y * y}).psd);
  }

  TEST_CASE("flat extension examples") {
    const FlatExtension ones = flat_extension_check({1.0, 1.0, 1.0});
    CHECK(ones.flat);
    CHECK(ones.w == doctest::Approx(1.0));
    const double x = 0.35, y = 0.9;
    const FlatExtension g = flat_extension_check({x * x, x * y, y * y});
    CHECK(g.flat);
    CHECK(g.w == doctest::Approx(y / x));
    CHECK_FALSE(flat_extension_check({2.0, 1.0, 1.0}).flat);
    CHECK_THROWS_AS(flat_extension_check({0.0, 0.0, 1.0}), Error);
  }

  TEST_CASE("property: square root squares back and matches the spectral oracle") {
    gen::Rng rng(11);
    for (int i = 0; i < 20000; ++i) {
      const Sym2 m = gen::psd_sym2(rng);
      const Sym2 s = sqrt_psd(m);
      const double scale = 1.0 + m.frobenius();
      REQUIRE(dist(square(s), m) <= 1e-12 * scale);
      const auto o = oracle::sqrt2(m.a11, m.a12, m.a22);
      const double os = std::sqrt(scale);
      REQUIRE(std::abs(s.a11 - static_cast<double>(o[0])) <= 1e-10 * os);
      REQUIRE(std::abs(s.a12 - static_cast<double>(o[1])) <= 1e-10 * os);
      REQUIRE(std::abs(s.a22 - static_cast<double>(o[2])) <= 1e-10 * os);
      REQUIRE(is_psd(s).psd);
    }
  }

  TEST_CASE("property: lambda_min matches the characteristic polynomial") {
    gen::Rng rng(12);
    for (int i = 0; i < 20000; ++i) {
      const Sym2 m = gen::any_sym2(rng);
      const auto e = oracle::eig2(m.a11, m.a12, m.a22);
      REQUIRE(lambda_min(m) == doctest::Approx(static_cast<double>(e.lo)).scale(1.0).epsilon(1e-12));
      REQUIRE(lambda_max(m) == doctest::Approx(static_cast<double>(e.hi)).scale(1.0).epsilon(1e-12));
      REQUIRE(is_psd(m).psd == (e.lo >= -1e-10L * (1.0L + m.frobenius())));
    }
  }

  TEST_CASE("property: operator monotonicity of the square root") {
    gen::Rng rng(13);
    for (int i = 0; i < 20000; ++i) {
      const Sym2 r = gen::psd_sym2(rng);
      const Sym2 extra = gen::psd_sym2(rng);
      const Sym2 l = r + extra;
      REQUIRE(sqrt_diff_psd(l, r).psd);
    }
  }

  TEST_CASE("property: m and -m both PSD only for zero") {
    gen::Rng rng(14);
    for (int i = 0; i < 20000; ++i) {
      const Sym2 m = gen::any_sym2(rng);
      if (is_psd(m).psd && is_psd(-1.0 * m).psd) REQUIRE(m.frobenius() <= 1e-9);
    }
    CHECK(is_psd(Sym2{}).psd);
    CHECK(is_psd(-1.0 * Sym2{}).psd);
  }

  TEST_CASE("property: flat implies PSD") {
    gen::Rng rng(15);
    for (int i = 0; i < 20000; ++i) {
      Sym2 m = gen::any_sym2(rng);
      m.a11 = std::abs(m.a11) + 1e-3;
      if (i % 2 == 0) m.a22 = m.a12 * m.a12 / m.a11;
      if (flat_extension_check(m).flat) REQUIRE(is_psd(m).psd);
    }
  }
}
