#include "fiberprod/counting.hpp"

#include <algorithm>
#include <future>
#include <thread>
#include <vector>

#include "fiberprod/error.hpp"
#include "fiberprod/fibercore.hpp"

namespace fiberprod {

BigInt stirling2(unsigned n, unsigned k) {
  if (k > n) return 0;
  std::vector<BigInt> row(k + 1, 0);
  row[0] = 1;  // S(0, 0)
  for (unsigned i = 1; i <= n; ++i) {
    for (unsigned j = std::min(i, k); j >= 1; --j) row[j] = j * row[j] + row[j - 1];
    row[0] = 0;
  }
  return row[k];
}

namespace {

BigInt binomial(unsigned n, unsigned k) {
  BigInt out = 1;
  for (unsigned i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

BigInt factorial(unsigned n) {
  BigInt out = 1;
  for (unsigned i = 2; i <= n; ++i) out *= i;
  return out;
}

}  // namespace

BigInt count_subdirect(unsigned m, unsigned n) {
  if (m == 0 || n == 0) throw PreconditionError("alphabet sizes must be positive");
  BigInt total = 0;
  for (unsigned i = 0; i <= m; ++i) {
    BigInt term = binomial(m, i) * boost::multiprecision::pow((BigInt(1) << (m - i)) - 1, n);
    if (i % 2 == 0) {
      total += term;
    } else {
      total -= term;
    }
  }
  return total;
}

BigInt count_fiber(unsigned m, unsigned n) {
  if (m == 0 || n == 0) throw PreconditionError("alphabet sizes must be positive");
  BigInt total = 0;
  for (unsigned i = 1; i <= std::min(m, n); ++i) {
    total += factorial(i) * stirling2(m, i) * stirling2(n, i);
  }
  return total;
}

CensusResult census(unsigned m, unsigned n, unsigned max_cells) {
  if (m == 0 || n == 0) throw PreconditionError("alphabet sizes must be positive");
  if (m * n > max_cells) {
    throw GuardExceeded("census over " + std::to_string(m) + "x" + std::to_string(n) +
                        " matrices exceeds the limit of " + std::to_string(max_cells) + " cells");
  }
  struct Partial {
    std::uint64_t subdirect = 0;
    std::uint64_t fiber = 0;
    std::uint64_t disagreements = 0;
    std::map<unsigned, std::uint64_t> blocks;
  };
  const std::uint64_t total = std::uint64_t{1} << (m * n);
  auto work = [m, n](std::uint64_t from, std::uint64_t to) {
    Partial part;
    for (std::uint64_t mask = from; mask < to; ++mask) {
      const auto x = LetterSet::from_mask(m, n, mask);
      if (!is_subdirect_letterset(x)) continue;
      ++part.subdirect;
      const bool by_patterns = is_fiber_letterset(x);
      const bool by_kernels = is_fiber_letterset_by_kernels(x);
      if (by_patterns != by_kernels) ++part.disagreements;
      if (by_patterns) {
        ++part.fiber;
        ++part.blocks[static_cast<unsigned>(letterset_blocks(x))];
      }
    }
    return part;
  };
  const unsigned threads = std::max(1U, std::min(8U, std::thread::hardware_concurrency()));
  const std::uint64_t chunk = (total + threads - 1) / threads;
  std::vector<std::future<Partial>> jobs;
  for (std::uint64_t from = 0; from < total; from += chunk) {
    jobs.push_back(std::async(std::launch::async, work, from, std::min(total, from + chunk)));
  }
  CensusResult r;
  r.m = m;
  r.n = n;
  for (auto& job : jobs) {
    const auto part = job.get();
    r.subdirect_count += part.subdirect;
    r.fiber_count += part.fiber;
    r.test_disagreements += part.disagreements;
    for (const auto& [k, c] : part.blocks) r.blocks[k] += c;
  }
  r.formula_subdirect = count_subdirect(m, n);
  r.formula_fiber = count_fiber(m, n);
  r.fiber_over_subdirect = BigRational(r.fiber_count, r.subdirect_count);
  r.subdirect_over_all = BigRational(r.subdirect_count, BigInt(1) << (m * n));
  return r;
}

}  // namespace fiberprod
