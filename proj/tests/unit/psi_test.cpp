#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <thread>

#include "moduli/errors.hpp"
#include "moduli/psi/correlators.hpp"

using namespace moduli;
using namespace moduli::psi;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("moduli_psi_test_" + name);
}

// Every composition of `total` into `parts` non-negative pieces.
void compositions(int total, int parts, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (parts == 0) {
    if (total == 0) out.push_back(cur);
    return;
  }
  for (int v = 0; v <= total; ++v) {
    cur.push_back(v);
    compositions(total - v, parts - 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

TEST_CASE("base values and small correlators") {
  CHECK(wk_correlator(0, {0, 0, 0}) == Rational(1));
  CHECK(wk_correlator(1, {1}) == Rational(1, 24));
  CHECK(wk_correlator(2, {4}) == Rational(1, 1152));
  CHECK(wk_correlator(1, {0, 0, 2, 2}) == Rational(1, 6));
  CHECK(wk_correlator(1, {0, 0, 3}) == Rational(1, 24));
  CHECK(wk_correlator(1, {0, 1, 2}) == Rational(1, 12));
  CHECK(wk_correlator(0, {0, 0, 0, 1}) == Rational(1));
  CHECK(wk_correlator(2, {2, 3}) == Rational(29, 5760));
  CHECK(wk_correlator(3, {7}) == Rational(1, 82944));
}

TEST_CASE("dimension gate and unstable input") {
  CHECK(wk_correlator(1, {0, 2}) == Rational(1, 24));
  CHECK(wk_correlator(1, {2}) == Rational(0));
  CHECK(wk_correlator(0, {1, 1, 1}) == Rational(0));
  CHECK_THROWS_AS(wk_correlator(0, {0, 0}), DomainError);
  CHECK_THROWS_AS(wk_correlator(1, std::initializer_list<int>{}), DomainError);
  CHECK_THROWS_AS(wk_correlator(1, {-1, 3}), DomainError);
}

TEST_CASE("one-point values match 1/(24^g g!)") {
  for (int g = 1; g <= 6; ++g)
    CHECK(wk_correlator(g, {3 * g - 2}) == (Rational(24).pow(g) * Rational::factorial(g)).inverse());
}

TEST_CASE("genus zero values match the multinomial formula") {
  for (int n = 3; n <= 7; ++n) {
    std::vector<std::vector<int>> comps;
    std::vector<int> cur;
    compositions(n - 3, n, cur, comps);
    for (auto& ks : comps) {
      Rational expected = Rational::factorial(n - 3);
      for (int k : ks) expected /= Rational::factorial(k);
      CHECK(wk_correlator(0, ks) == expected);
    }
  }
}

TEST_CASE("permutation symmetry") {
  std::mt19937 rng(5);
  for (int g = 0; g <= 3; ++g)
    for (int n = 1; n <= 4; ++n) {
      if (2 * g - 2 + n <= 0) continue;
      std::vector<std::vector<int>> comps;
      std::vector<int> cur;
      compositions(3 * g - 3 + n, n, cur, comps);
      for (auto ks : comps) {
        Rational v = wk_correlator(g, ks);
        std::shuffle(ks.begin(), ks.end(), rng);
        CHECK(wk_correlator(g, ks) == v);
      }
    }
}

TEST_CASE("string and dilaton reductions") {
  auto s = string_reduce(CorrelatorKey(1, {0, 2}));
  REQUIRE(s.size() == 1);
  CHECK(s[0].first == CorrelatorKey(1, {1}));
  CHECK(s[0].second == Rational(1));
  auto d = dilaton_reduce(CorrelatorKey(1, {1, 1}));
  CHECK(d.first == CorrelatorKey(1, {1}));
  CHECK(d.second == Rational(1));
  CHECK_THROWS_AS(string_reduce(CorrelatorKey(1, {1})), DomainError);
  CHECK_THROWS_AS(dilaton_reduce(CorrelatorKey(0, {0, 0, 0})), DomainError);

  // consistency over every memoized key
  for (int g = 1; g <= 3; ++g) wk_correlator(g, {0, 1, 1, 3 * g - 1});
  for (auto& [key, value] : shared_table().entries()) {
    if (key.exponents.front() == 0 && !(key.genus == 0 && key.points() == 3)) {
      Rational sum;
      for (auto& [sub, c] : string_reduce(key))
        if (sub.stable()) sum += c * shared_table().correlator(sub);
      CHECK(sum == value);
    }
    if (key.exponents.front() == 1 && key.points() > 1) {
      auto [sub, c] = dilaton_reduce(key);
      CHECK(c * shared_table().correlator(sub) == value);
    }
  }
}

TEST_CASE("concurrent evaluation agrees with sequential") {
  CorrelatorTable shared;
  std::vector<std::thread> threads;
  std::vector<Rational> results(8);
  for (int t = 0; t < 8; ++t)
    threads.emplace_back([&, t] { results[t] = shared.correlator(3, std::vector<int>{2, 2, 3, 3 + 0}); });
  for (auto& th : threads) th.join();
  for (auto& r : results) CHECK(r == wk_correlator(3, {2, 2, 3, 3}));
}

TEST_CASE("cache round trip and load errors") {
  CorrelatorTable a;
  a.correlator(2, std::vector<int>{1, 2, 3, 1});
  auto path = temp_file("roundtrip");
  a.save(path);
  CorrelatorTable b;
  b.load(path);
  CHECK(b.entries() == a.entries());
  b.load(path);  // idempotent
  CHECK(b.size() == a.size());

  auto write = [](const std::filesystem::path& p, const std::string& text) {
    std::ofstream(p) << text;
  };
  auto bad = temp_file("bad");
  write(bad, "wkcache v2\n");
  CHECK_THROWS_AS(b.load(bad), LoadError);
  write(bad, "wkcache v1\n1;x;1/24\n");
  CHECK_THROWS_AS(b.load(bad), LoadError);
  write(bad, "wkcache v1\n0;0,0;1/1\n");
  CHECK_THROWS_AS(b.load(bad), LoadError);
  write(bad, "wkcache v1\n1;1;1/12\n1;1;1/24\n");
  CorrelatorTable c;
  CHECK_THROWS_AS(c.load(bad), LoadError);
  CHECK_THROWS_AS(c.load(temp_file("missing_file")), LoadError);
  std::filesystem::remove(path);
  std::filesystem::remove(bad);
}
