#include <doctest.h>

#include <cmath>
#include <vector>

#include "sqzlink/rng.hpp"

using namespace sqzlink;

TEST_SUITE("rng") {
  TEST_CASE("philox4x32-10 known-answer vectors") {
    CHECK(philox4x32_10({0, 0, 0, 0}, {0, 0}) ==
          PhiloxCounter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
          PhiloxCounter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
          PhiloxCounter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
  }

  TEST_CASE("streams are reproducible and distinct") {
    NormalStream a({42, 7});
    NormalStream b({42, 7});
    NormalStream c({42, 8});
    NormalStream d({43, 7});
    int same_c = 0;
    int same_d = 0;
    for (int i = 0; i < 1000; ++i) {
      const double x = a.next();
      CHECK(x == b.next());
      same_c += x == c.next() ? 1 : 0;
      same_d += x == d.next() ? 1 : 0;
    }
    CHECK(same_c == 0);
    CHECK(same_d == 0);
  }

  TEST_CASE("uniforms stay inside the open unit interval") {
    NormalStream s({1, 0});
    for (int i = 0; i < 100000; ++i) {
      const double u = s.next_uniform();
      REQUIRE(u > 0.0);
      REQUIRE(u < 1.0);
    }
  }

  TEST_CASE("normal moments") {
    NormalStream s({2026, 3});
    const int n = 1'000'000;
    double m1 = 0, m2 = 0, m4 = 0;
    for (int i = 0; i < n; ++i) {
      const double z = s.next();
      m1 += z;
      m2 += z * z;
      m4 += z * z * z * z;
    }
    m1 /= n;
    m2 /= n;
    m4 /= n;
    CHECK(std::abs(m1) < 5.0 / std::sqrt(n));
    CHECK(std::abs(m2 - 1.0) < 5.0 * std::sqrt(2.0 / n));
    CHECK(std::abs(m4 - 3.0) < 5.0 * std::sqrt(96.0 / n));
  }

  TEST_CASE("successive normals are uncorrelated") {
    NormalStream s({5, 5});
    const int n = 500'000;
    double prev = s.next();
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
      const double z = s.next();
      acc += prev * z;
      prev = z;
    }
    CHECK(std::abs(acc / n) < 5.0 / std::sqrt(n));
  }
}
