#include <doctest.h>

#include <bit>

#include "ogt/hypercube.hpp"

using namespace ogt;

TEST_CASE("cube_of") {
  CubeRange c = cube_of(10, 3, 11);
  CHECK(c.lo() == 8);
  CHECK(c.hi() == 10);  // last cube truncated

  c = cube_of(5, 0, 11);
  CHECK(c.lo() == 5);
  CHECK(c.hi() == 5);

  c = cube_of(2, 2, 16);
  CHECK(c.lo() == 0);
  CHECK(c.hi() == 3);

  CHECK_THROWS_AS(cube_of(11, 0, 11), Error);
  CHECK_THROWS_AS(cube_of(0, 5, 11), Error);  // d > ceil(log2 p)
}

TEST_CASE("fixed_root_of") {
  CHECK(fixed_root_of(cube_of(4, 2, 16)) == 7);
  CHECK(fixed_root_of(cube_of(8, 2, 11)) == 10);  // truncated cube
  CHECK(fixed_root_of(cube_of(0, 0, 1)) == 0);
}

TEST_CASE("partner_fixed_root: non-power-of-two special cases") {
  CHECK(partner_fixed_root(7, 3, 11) == 10);   // 7^8 = 15 >= 11 -> p-1
  CHECK(partner_fixed_root(10, 2, 11) == std::nullopt);  // substitute = self -> idle
  CHECK(partner_fixed_root(10, 1, 11) == 9);   // bit 1 of 10 set -> adjacent lower fixed root
  CHECK(partner_fixed_root(10, 0, 11) == std::nullopt);  // bit 0 clear -> no role
  CHECK_THROWS_AS(partner_fixed_root(8, 1, 11), Error);  // 8 is not a fixed root at d=1
}

TEST_CASE("partner_fixed_root is symmetric for all p <= 1024") {
  for (std::uint32_t p = 1; p <= 1024; ++p) {
    std::uint32_t rounds = ceil_log2(p);
    for (std::uint32_t d = 0; d < rounds; ++d) {
      for (std::uint64_t lo = 0; lo < p; lo += 1ull << d) {
        Rank f = fixed_root_of(cube_of(static_cast<Rank>(lo), d, p));
        auto partner = partner_fixed_root(f, d, p);
        if (!partner) continue;
        REQUIRE(*partner != f);
        auto back = partner_fixed_root(*partner, d, p);
        REQUIRE(back.has_value());
        CHECK(*back == f);
      }
    }
  }
}

TEST_CASE("cubes of a fixed dimension partition the ranks") {
  for (std::uint32_t p : {1u, 2u, 3u, 7u, 11u, 16u, 64u, 100u, 255u, 256u}) {
    for (std::uint32_t d = 0; d <= ceil_log2(p); ++d) {
      std::uint32_t covered = 0;
      for (std::uint64_t lo = 0; lo < p; lo += 1ull << d) {
        CubeRange c = cube_of(static_cast<Rank>(lo), d, p);
        CHECK(c.lo() == lo);
        covered += c.count();
        // every member maps back to the same cube
        for (Rank i = c.lo(); i <= c.hi(); ++i) {
          CubeRange back = cube_of(i, d, p);
          CHECK(back.lo() == c.lo());
          CHECK(back.hi() == c.hi());
        }
      }
      CHECK(covered == p);
    }
  }
}

TEST_CASE("power-of-two cubes always have a partner") {
  for (std::uint32_t p : {2u, 4u, 8u, 16u, 32u, 64u, 128u, 256u}) {
    for (std::uint32_t d = 0; d < ceil_log2(p); ++d) {
      for (std::uint64_t lo = 0; lo < p; lo += 1ull << d) {
        Rank f = fixed_root_of(cube_of(static_cast<Rank>(lo), d, p));
        CHECK(partner_fixed_root(f, d, p).has_value());
      }
    }
  }
}
