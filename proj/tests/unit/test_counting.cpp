#include <gtest/gtest.h>

#include <functional>

#include "fiberprod/counting.hpp"
#include "fiberprod/error.hpp"
#include "fiberprod/fibercore.hpp"

namespace fiberprod {
namespace {

// Set partitions of {0..n-1} into exactly k blocks, by restricted growth
// strings.
std::uint64_t partitions(unsigned n, unsigned k) {
  std::uint64_t count = 0;
  std::vector<unsigned> rgs(n, 0);
  std::function<void(unsigned, unsigned)> go = [&](unsigned i, unsigned used) {
    if (i == n) {
      count += used == k ? 1 : 0;
      return;
    }
    for (unsigned b = 0; b <= used && b < k; ++b) {
      rgs[i] = b;
      go(i + 1, std::max(used, b + 1));
    }
  };
  go(0, 0);
  return count;
}

BigInt factorial(unsigned i) {
  BigInt f = 1;
  for (unsigned j = 2; j <= i; ++j) f *= j;
  return f;
}

TEST(Stirling, Examples) {
  EXPECT_EQ(stirling2(3, 2), 3);
  EXPECT_EQ(stirling2(4, 2), 7);
  for (unsigned n = 0; n <= 10; ++n) EXPECT_EQ(stirling2(n, n), 1);
  EXPECT_EQ(stirling2(0, 0), 1);
  EXPECT_EQ(stirling2(3, 0), 0);
  EXPECT_EQ(stirling2(2, 3), 0);
}

TEST(Stirling, MatchesSetPartitions) {
  for (unsigned n = 0; n <= 9; ++n) {
    for (unsigned k = 0; k <= n; ++k) EXPECT_EQ(stirling2(n, k), partitions(n, k)) << n << "," << k;
  }
}

TEST(Counting, Anchors) {
  EXPECT_EQ(count_subdirect(1, 1), 1);
  EXPECT_EQ(count_subdirect(2, 2), 7);
  EXPECT_EQ(count_subdirect(2, 3), 25);
  EXPECT_EQ(count_subdirect(3, 3), 265);
  EXPECT_EQ(count_fiber(1, 1), 1);
  EXPECT_EQ(count_fiber(2, 2), 3);
  EXPECT_EQ(count_fiber(3, 3), 25);
  EXPECT_THROW(count_subdirect(0, 2), PreconditionError);
  EXPECT_THROW(count_fiber(2, 0), PreconditionError);
}

TEST(Counting, BeyondSixtyFourBits) {
  const BigInt s = count_subdirect(9, 9);
  EXPECT_GT(s, BigInt(std::numeric_limits<std::uint64_t>::max()));
  EXPECT_LT(s, BigInt(1) << 81);
  const BigInt f = count_fiber(20, 20);
  EXPECT_GT(f, 0);
}

TEST(Census, Examples) {
  const auto c22 = census(2, 2);
  EXPECT_EQ(c22.subdirect_count, 7);
  EXPECT_EQ(c22.fiber_count, 3);
  EXPECT_EQ(c22.formula_subdirect, 7);
  EXPECT_EQ(c22.formula_fiber, 3);
  EXPECT_EQ(c22.fiber_over_subdirect, BigRational(3, 7));
  EXPECT_EQ(c22.subdirect_over_all, BigRational(7, 16));
  const auto c33 = census(3, 3);
  EXPECT_EQ(c33.subdirect_count, 265);
  EXPECT_EQ(c33.fiber_count, 25);
  for (unsigned n = 1; n <= 4; ++n) {
    const auto c = census(1, n);
    EXPECT_EQ(c.subdirect_count, 1);
    EXPECT_EQ(c.fiber_count, 1);
  }
  EXPECT_THROW(census(5, 5), GuardExceeded);
  EXPECT_NO_THROW(census(1, 21, 21));
}

// Independent census: subdirect when no zero row or column; fiber when each
// row's support is either disjoint from or equal to every other row's.
std::pair<std::uint64_t, std::uint64_t> brute_census(unsigned m, unsigned n) {
  std::uint64_t sub = 0, fib = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (m * n)); ++mask) {
    std::vector<std::uint64_t> rows(m);
    std::uint64_t cols = 0;
    for (unsigned i = 0; i < m; ++i) {
      rows[i] = (mask >> (i * n)) & ((std::uint64_t{1} << n) - 1);
      cols |= rows[i];
    }
    bool subdirect = cols == (std::uint64_t{1} << n) - 1;
    for (auto r : rows) subdirect = subdirect && r != 0;
    if (!subdirect) continue;
    ++sub;
    bool fiber = true;
    for (unsigned i = 0; i < m; ++i) {
      for (unsigned j = 0; j < m; ++j) {
        if ((rows[i] & rows[j]) != 0 && rows[i] != rows[j]) fiber = false;
      }
    }
    fib += fiber ? 1 : 0;
  }
  return {sub, fib};
}

TEST(CensusProperty, MatchesFormulasAndIndependentCount) {
  for (unsigned m = 1; m <= 4; ++m) {
    for (unsigned n = 1; n <= 4; ++n) {
      const auto c = census(m, n);
      EXPECT_EQ(c.subdirect_count, c.formula_subdirect) << m << "x" << n;
      EXPECT_EQ(c.fiber_count, c.formula_fiber) << m << "x" << n;
      EXPECT_EQ(c.test_disagreements, 0U) << m << "x" << n;
      const auto [sub, fib] = brute_census(m, n);
      EXPECT_EQ(c.subdirect_count, sub) << m << "x" << n;
      EXPECT_EQ(c.fiber_count, fib) << m << "x" << n;
      BigInt total = 0;
      for (const auto& [blocks, count] : c.blocks) {
        EXPECT_EQ(count, factorial(blocks) * stirling2(m, blocks) * stirling2(n, blocks));
        total += count;
      }
      EXPECT_EQ(total, c.fiber_count);
    }
  }
}

TEST(CountingProperty, OrderingAndSymmetry) {
  for (unsigned m = 1; m <= 12; ++m) {
    for (unsigned n = 1; n <= 12; ++n) {
      EXPECT_EQ(count_fiber(m, n), count_fiber(n, m));
      EXPECT_EQ(count_subdirect(m, n), count_subdirect(n, m));
      EXPECT_LE(count_fiber(m, n), count_subdirect(m, n));
      EXPECT_LE(count_subdirect(m, n), BigInt(1) << (m * n));
    }
  }
}

}  // namespace
}  // namespace fiberprod
