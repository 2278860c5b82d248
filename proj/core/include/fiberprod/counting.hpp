#pragma once

#include <cstdint>
#include <map>

#include <boost/multiprecision/cpp_int.hpp>

namespace fiberprod {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Partitions of an n-set into k non-empty blocks.
BigInt stirling2(unsigned n, unsigned k);

/// Letter-generated subdirect products of A⁺ × B⁺ with |A| = m, |B| = n.
BigInt count_subdirect(unsigned m, unsigned n);
/// Letter-generated fiber products, Σᵢ i!·S(m,i)·S(n,i).
BigInt count_fiber(unsigned m, unsigned n);

struct CensusResult {
  unsigned m = 0;
  unsigned n = 0;
  BigInt subdirect_count;
  BigInt fiber_count;
  BigInt formula_subdirect;
  BigInt formula_fiber;
  /// Fiber matrices accepted by the forbidden-submatrix test but rejected by
  /// the kernel test, or the other way round.
  std::uint64_t test_disagreements = 0;
  /// Number of fiber matrices by number of blocks.
  std::map<unsigned, BigInt> blocks;
  BigRational fiber_over_subdirect;
  BigRational subdirect_over_all;
};

inline constexpr unsigned kMaxCensusCells = 20;

/// Exhaustive count over all m×n binary matrices. Throws GuardExceeded when
/// m·n exceeds max_cells.
CensusResult census(unsigned m, unsigned n, unsigned max_cells = kMaxCensusCells);

}  // namespace fiberprod
