#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>

#include "exch/rng.hpp"

using namespace exch;

TEST_CASE("SplitMix64 reference stream") {
  SplitMix64 g(1234567);
  const std::array<std::uint64_t, 5> expected{6457827717110365317ULL, 3203168211198807973ULL,
                                              9817491932198370423ULL, 4593380528125082431ULL,
                                              16408922859458223821ULL};
  for (auto e : expected) CHECK(g.next() == e);
}

TEST_CASE("purpose tags are 64-bit FNV-1a") {
  CHECK(purpose_tag("") == 0xcbf29ce484222325ULL);
  CHECK(purpose_tag("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(purpose_tag("figure1") != purpose_tag("figure2"));
}

TEST_CASE("seeded streams replay and separate") {
  const Seed s{42, 3, purpose_tag("x")};
  auto a = s.stream();
  auto b = s.stream();
  for (int i = 0; i < 10; ++i) CHECK(a.next() == b.next());
  auto c = s.with_trial(4).stream();
  auto d = s.with_purpose("y").stream();
  auto a2 = s.stream();
  const auto v = a2.next();
  CHECK(c.next() != v);
  CHECK(d.next() != v);
}

TEST_CASE("uniform draws stay in range") {
  SplitMix64 g(9);
  for (int i = 0; i < 10000; ++i) {
    const double u = g.uniform01();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    CHECK(g.uniform_int(7) < 7);
  }
  CHECK(g.uniform_int(1) == 0);
}

TEST_CASE("normal moments") {
  SplitMix64 g(77);
  const int n = 200000;
  double s = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = g.normal();
    s += z;
    s2 += z * z;
  }
  CHECK(std::fabs(s / n) < 0.01);
  CHECK(std::fabs(s2 / n - 1.0) < 0.02);
}

TEST_CASE("permutations are uniform on S_3") {
  SplitMix64 g(3);
  std::map<std::vector<std::size_t>, int> counts;
  const int n = 60000;
  for (int i = 0; i < n; ++i) ++counts[random_permutation(3, g)];
  CHECK(counts.size() == 6);
  for (const auto& [p, c] : counts) CHECK(std::fabs(c / double(n) - 1.0 / 6.0) < 0.01);
}

TEST_CASE("random subsets are sorted, distinct and of the right size") {
  SplitMix64 g(8);
  std::vector<int> hits(10, 0);
  for (int i = 0; i < 20000; ++i) {
    const auto s = random_subset(10, 4, g);
    REQUIRE(s.size() == 4);
    CHECK(std::is_sorted(s.begin(), s.end()));
    CHECK(std::set<std::size_t>(s.begin(), s.end()).size() == 4);
    for (auto v : s) ++hits[v];
  }
  for (int h : hits) CHECK(std::fabs(h / 20000.0 - 0.4) < 0.02);
  CHECK(random_subset(5, 5, g) == std::vector<std::size_t>{0, 1, 2, 3, 4});
  CHECK(random_subset(5, 0, g).empty());
}
