#include "doctest.h"
#include "rotlab/sequences.hpp"
#include "rotlab/torus.hpp"

#include <cmath>
#include <vector>

using namespace rotlab;

namespace {

// independent sieve oracle
std::vector<uint64_t> sieve_oracle(uint64_t limit) {
  std::vector<bool> comp(limit + 1, false);
  std::vector<uint64_t> out;
  for (uint64_t p = 2; p <= limit; ++p) {
    if (comp[p]) continue;
    out.push_back(p);
    for (uint64_t m = p * p; m <= limit; m += p) comp[m] = true;
  }
  return out;
}

}  // namespace

TEST_CASE("base set counting functions") {
  CHECK(make_kth_powers(2).count_upto(100) == 10);
  CHECK(make_primes().count_upto(100) == 25);
  CHECK(make_naturals().count_upto(1000) == 1000);
}

TEST_CASE("primes match the sieve oracle up to 1e5") {
  auto expect = sieve_oracle(100'000);
  auto got = make_primes().elements_upto(100'000);
  REQUIRE(got.size() == expect.size());
  CHECK(got == expect);
}

TEST_CASE("n2logn starts at floor(4 log 2) = 2") {
  auto first = make_n2logn().elements_upto(100);
  REQUIRE(!first.empty());
  CHECK(first[0] == 2);                      // floor(4 * 0.6931) = 2
  CHECK(first[1] == 9);                      // floor(9 * log 3) = 9
  for (size_t i = 1; i < first.size(); ++i) CHECK(first[i] > first[i - 1]);
}

TEST_CASE("progression counting formula is exact") {
  for (uint64_t q : {2ull, 3ull, 7ull}) {
    for (uint64_t jp = 0; jp < q; ++jp) {
      IndexSet P = make_progression(q, jp);
      uint64_t first = (jp == 0) ? q : jp;
      for (uint64_t N : {10ull, 97ull, 1000ull}) {
        uint64_t expect = N >= first ? (N - first) / q + 1 : 0;
        CHECK(P.count_upto(N) == expect);
      }
    }
  }
}

TEST_CASE("invalid parameters rejected") {
  CHECK_THROWS(make_kth_powers(0));
  CHECK_THROWS(make_progression(0, 0));
  CHECK_THROWS(make_progression(3, 4));
  CHECK_THROWS(make_explicit({3, 3, 5}));
  CHECK_THROWS(make_explicit({0}));
}

TEST_CASE("generator restart determinism") {
  IndexSet P = make_primes();
  CHECK(P.elements_upto(10'000) == P.elements_upto(10'000));
}

TEST_CASE("streamed count equals bitset popcount") {
  IndexSet sq = make_kth_powers(2);
  auto bits = sq.prefix_bitset(1'000'000);
  uint64_t pop = 0;
  for (uint64_t w : bits) pop += static_cast<uint64_t>(__builtin_popcountll(w));
  CHECK(pop == sq.count_upto(1'000'000));
}

TEST_CASE("sublacunarity report") {
  auto natural = sublacunarity_report(make_naturals(), {1'000'000});
  CHECK(natural.ratios[0] == doctest::Approx(std::log(1e6) / 1e6).epsilon(1e-12));

  auto squares = sublacunarity_report(make_kth_powers(2), {1'000'000});
  CHECK(squares.counts[0] == 1000);
  CHECK(squares.ratios[0] == doctest::Approx(std::log(1e6) / 1000.0).epsilon(1e-12));

  // explicit lacunary {2^n}: non-vanishing ratio
  std::vector<uint64_t> pows;
  for (int i = 0; i < 21; ++i) pows.push_back(1ull << i);
  auto lac = sublacunarity_report(make_explicit(pows, "pow2"), {1ull << 20});
  CHECK(lac.counts[0] == 21);
  CHECK(lac.ratios[0] == doctest::Approx(std::log(std::ldexp(1.0, 20)) / 21.0).epsilon(1e-12));
  CHECK(lac.ratios[0] > 0.5);
}

TEST_CASE("relative mean trace") {
  IndexSet naturals = make_naturals();
  SUBCASE("S = R gives all ones") {
    auto t = relative_mean_trace(naturals, naturals, {10, 100, 1000});
    for (double v : t) CHECK(v == 1.0);
  }
  SUBCASE("even naturals in naturals: exact count") {
    IndexSet evens = make_progression(2, 2);
    for (uint64_t N : {10ull, 999ull, 12345ull}) {
      auto t = relative_mean_trace(evens, naturals, {N});
      CHECK(t[0] == static_cast<double>(N / 2) / static_cast<double>(N));
    }
  }
  SUBCASE("element outside R is named") {
    IndexSet odd = make_progression(2, 1);
    IndexSet evens = make_progression(2, 2);
    CHECK_THROWS_WITH_AS(relative_mean_trace(evens, odd, {100}),
                         doctest::Contains("element 2"), std::runtime_error);
  }
}

TEST_CASE("visit-set trace in squares at golden alpha") {
  // brute-force membership scan as the oracle for the relative density
  IndexSet squares = make_kth_powers(2);
  IndexSet S = filter_set(squares, "sq-visits", [](uint64_t r) {
    return orbit_point(r, kGolden).frac < (1ull << 63);
  });
  uint64_t oracle_count = 0, total = 0;
  for (uint64_t n = 1; n * n <= 1'000'000; ++n) {
    ++total;
    if (orbit_point(n * n, kGolden).frac < (1ull << 63)) ++oracle_count;
  }
  auto t = relative_mean_trace(S, squares, {1'000'000});
  CHECK(t[0] == static_cast<double>(oracle_count) / static_cast<double>(total));
  CHECK(std::abs(t[0] - 0.5) < 5e-3);
}
