#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "../support/generators.hpp"
#include "../support/oracles.hpp"
#include "shift2d/blockdecomp.hpp"
#include "shift2d/errors.hpp"
#include "shift2d/mat2.hpp"

using namespace shift2d;

namespace {

double gap(const Sym2& a, const Sym2& b) { return (a - b).frobenius(); }

std::vector<long double> block_spectrum(const BlockPair& b, bool left) {
  std::vector<long double> ev;
  if (left) {
    ev.push_back(b.l_head);
    ev.push_back(b.l_tail);
  } else {
    ev.push_back(0.0L);
    ev.push_back(0.0L);
  }
  for (const Sym2& m : left ? b.l_mid : b.r_mid) {
    const auto e = oracle::eig2(m.a11, m.a12, m.a22);
    ev.push_back(e.lo);
    ev.push_back(e.hi);
  }
  std::sort(ev.begin(), ev.end());
  return ev;
}

}  // namespace

TEST_SUITE("blockdecomp") {
  TEST_CASE("level zero") {
    const WeightDiagram d = build_axy(0.5, 0.6, 0.7);
    const BlockPair b = blocks(d, 0);
    CHECK(b.l_head == doctest::Approx(0.36));
    CHECK(b.l_tail == doctest::Approx(0.49));
    CHECK(b.l_mid.empty());
    CHECK(b.r_mid.empty());
  }

  TEST_CASE("Drury-Arveson level one") {
    const BlockPair b = blocks(build_drury_arveson(4), 1);
    REQUIRE(b.l_mid.size() == 1);
    CHECK(gap(b.l_mid[0], {1.0, 0.5, 1.0}) < 1e-15);
    CHECK(gap(b.r_mid[0], {1.0, 1.0, 1.0}) < 1e-15);
  }

  TEST_CASE("family level one") {
    const double a = 0.45, x = 0.6, y = 0.8;
    const BlockPair b = blocks(build_axy(a, x, y), 1);
    REQUIRE(b.l_mid.size() == 1);
    CHECK(gap(b.l_mid[0], {1.0, a * a * y / x, 1.0}) < 1e-15);
    CHECK(gap(b.r_mid[0], {x * x, x * y, y * y}) < 1e-15);
  }

  TEST_CASE("family commutators on K(1)") {
    const double a = 0.45, x = 0.6, y = 0.8;
    const CommutatorBlocks c = commutator_blocks(build_axy(a, x, y), 1);
    // basis e_(0,1), e_(1,0)
    CHECK(c.A(0, 0) == doctest::Approx(a * a));
    CHECK(c.A(1, 1) == doctest::Approx(1.0 - x * x));
    CHECK(c.D(0, 0) == doctest::Approx(1.0 - y * y));
    CHECK(c.D(1, 1) == doctest::Approx(a * a * y * y / (x * x)));
    CHECK(c.B(0, 1) == doctest::Approx(a * a * y / x - x * y));
    CHECK(c.A(0, 1) == 0.0);
    CHECK(c.D(0, 1) == 0.0);
    CHECK(c.B(1, 0) == 0.0);
  }

  TEST_CASE("Helton-Howe commutators vanish off the axes") {
    const WeightDiagram hh = build_helton_howe();
    for (int n = 0; n <= 5; ++n) {
      const CommutatorBlocks c = commutator_blocks(hh, n);
      CHECK(c.B.cwiseAbs().maxCoeff() == 0.0);
      for (int j = 0; j <= n; ++j) {
        CHECK(c.A(j, j) == (j == 0 ? 1.0 : 0.0));
        CHECK(c.D(j, j) == (j == n ? 1.0 : 0.0));
      }
    }
  }

  TEST_CASE("stabilization level") {
    CHECK(stabilization_level(build_axy(0.5, 0.5, 0.5)) == 6);
    CHECK(stabilization_level(build_helton_howe()) == 2);
    try {
      stabilization_level(build_drury_arveson(4));
      FAIL("expected NoStabilization");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::NoStabilization);
    }
  }

  TEST_CASE("level range") {
    CHECK_THROWS_AS(blocks(build_helton_howe(), -1), Error);
    CHECK_THROWS_AS(blocks(build_helton_howe(), 100000), Error);
    CHECK_THROWS_AS(commutator_blocks(build_helton_howe(), -1), Error);
  }

  TEST_CASE("property: blocks reproduce the spectrum of the assembled operators") {
    gen::Rng rng(31);
    for (int i = 0; i < 150; ++i) {
      const auto item = gen::mixed(rng);
      INFO(item.kind);
      for (int n = 0; n <= 6; ++n) {
        const BlockPair b = blocks(item.diagram, n);
        REQUIRE(b.l_mid.size() == static_cast<size_t>(n));
        REQUIRE(b.r_mid.size() == static_cast<size_t>(n));
        for (int side = 0; side < 2; ++side) {
          const oracle::Matrix m = side == 0 ? oracle::level_L(item.diagram, n) : oracle::level_R(item.diagram, n);
          const auto dense = oracle::jacobi(m).values;
          const auto mine = block_spectrum(b, side == 0);
          REQUIRE(dense.size() == mine.size());
          long double scale = 1.0L;
          for (auto v : dense) scale = std::max(scale, std::fabs(v));
          for (size_t k = 0; k < dense.size(); ++k) REQUIRE(std::fabs(dense[k] - mine[k]) <= 1e-10L * scale);
        }
        for (const Sym2& r : b.r_mid) REQUIRE(std::abs(r.det()) <= 1e-14 * (1.0 + r.frobenius() * r.frobenius()));
      }
    }
  }

  TEST_CASE("property: block square roots agree with the full-matrix square root") {
    gen::Rng rng(32);
    int compared = 0;
    for (int i = 0; i < 150; ++i) {
      const auto item = gen::mixed(rng);
      INFO(item.kind);
      for (int n = 0; n <= 4; ++n) {
        const oracle::Matrix L = oracle::level_L(item.diagram, n);
        if (oracle::min_eigenvalue(L) < -1e-12L) continue;
        const oracle::Matrix diff =
            oracle::subtract(oracle::sqrt_psd(L), oracle::sqrt_psd(oracle::level_R(item.diagram, n)));
        const bool dense_psd = oracle::min_eigenvalue(diff) >= -1e-9L;
        const BlockPair b = blocks(item.diagram, n);
        bool block_psd = true;
        for (int k = 0; k < n; ++k)
          block_psd = block_psd && sqrt_diff_psd(b.l_mid[k], b.l_det[k], b.r_mid[k], b.r_det[k], {1e-9}).psd;
        REQUIRE(dense_psd == block_psd);
        ++compared;
      }
    }
    CHECK(compared > 300);
  }

  TEST_CASE("property: commutator blocks match the assembled commutators") {
    gen::Rng rng(33);
    for (int i = 0; i < 150; ++i) {
      const auto item = gen::mixed(rng);
      for (int n = 0; n <= 6; ++n) {
        const CommutatorBlocks c = commutator_blocks(item.diagram, n);
        const oracle::Commutators o = oracle::level_commutators(item.diagram, n);
        for (int p = 0; p <= n; ++p)
          for (int q = 0; q <= n; ++q) {
            REQUIRE(std::fabs(c.A(p, q) - o.A[p][q]) <= 1e-12L * (1 + std::fabs(o.A[p][q])));
            REQUIRE(std::fabs(c.D(p, q) - o.D[p][q]) <= 1e-12L * (1 + std::fabs(o.D[p][q])));
            REQUIRE(std::fabs(c.B(p, q) - o.B[p][q]) <= 1e-12L * (1 + std::fabs(o.B[p][q])));
          }
      }
    }
  }
}
