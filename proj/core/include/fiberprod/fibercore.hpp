#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fiberprod/homspec.hpp"

namespace fiberprod {

/// An element (u, v) of A* × B*.
struct PairWord {
  Word left;
  Word right;

  bool is_identity() const noexcept { return left.empty() && right.empty(); }
  std::string display() const { return "(" + left.display() + "," + right.display() + ")"; }

  friend bool operator==(const PairWord&, const PairWord&) = default;
  friend std::strong_ordering operator<=>(const PairWord& lhs, const PairWord& rhs) noexcept {
    if (auto c = lhs.left <=> rhs.left; c != 0) return c;
    return lhs.right <=> rhs.right;
  }
};

/// Componentwise concatenation.
PairWord operator*(const PairWord& p, const PairWord& q);

/// The fiber product Π(φ, ψ) = {(s, t) : φ(s) = ψ(t)} of two epimorphisms
/// onto a common quotient.
class FiberInstance {
 public:
  /// Throws ValidationError unless both maps share mode and quotient and,
  /// when require_surjective is set, are surjective.
  FiberInstance(HomSpec phi, HomSpec psi, bool require_surjective = true);

  const HomSpec& phi() const noexcept { return phi_; }
  const HomSpec& psi() const noexcept { return psi_; }
  Mode mode() const noexcept { return phi_.mode(); }
  const Quotient& quotient() const noexcept { return phi_.target(); }
  const AlphabetPtr& left_alphabet() const noexcept { return phi_.source(); }
  const AlphabetPtr& right_alphabet() const noexcept { return psi_.source(); }

  /// Same maps, read in the other mode (free quotients only need non-empty
  /// images for semigroup mode).
  FiberInstance with_mode(Mode mode) const;

  /// Parses both components against the instance alphabets.
  PairWord pair(std::string_view left, std::string_view right) const;
  PairWord make_pair(LetterString left, LetterString right) const;

  bool member(const PairWord& p) const;

  /// False when the instance was admitted without the surjectivity check.
  bool surjectivity_checked() const noexcept { return surjectivity_checked_; }

 private:
  HomSpec phi_;
  HomSpec psi_;
  bool surjectivity_checked_ = true;
};

struct EnumerationOptions {
  static constexpr std::uint64_t kDefaultMaxCandidates = 10'000'000;
  /// Guard on |A|^max_left · |B|^max_right.
  std::uint64_t max_candidates = kDefaultMaxCandidates;
};

/// All members with |left| ≤ max_left and |right| ≤ max_right (non-empty
/// components in semigroup mode), in lexicographic order.
std::vector<PairWord> enumerate(const FiberInstance& inst, std::size_t max_left,
                                std::size_t max_right, const EnumerationOptions& opts = {});

/// Members within the bounds admitting no factorisation into two members
/// (both different from (ε, ε) in monoid mode).
std::vector<PairWord> indecomposables_upto(const FiberInstance& inst, std::size_t max_left,
                                           std::size_t max_right,
                                           const EnumerationOptions& opts = {});

std::uint64_t count_indecomposables_upto(const FiberInstance& inst, std::size_t max_left,
                                         std::size_t max_right,
                                         const EnumerationOptions& opts = {});

/// Direct split search for a single pair: the first factorisation p = x·y
/// into members (non-identity in monoid mode), scanning prefix pairs in
/// order. nullopt for non-members and indecomposables.
std::optional<std::pair<PairWord, PairWord>> find_split(const FiberInstance& inst,
                                                        const PairWord& p);
bool is_indecomposable(const FiberInstance& inst, const PairWord& p);

/// Splits a member recursively into indecomposable factors.
std::vector<PairWord> factor_into_indecomposables(const FiberInstance& inst, const PairWord& p);

/// X ⊆ A × B as a binary |A|×|B| matrix.
class LetterSet {
 public:
  LetterSet(std::size_t rows, std::size_t cols);
  explicit LetterSet(const std::vector<std::vector<int>>& matrix);
  /// Row-major bit i*cols+j of mask gives entry (i, j).
  static LetterSet from_mask(std::size_t rows, std::size_t cols, std::uint64_t mask);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool at(std::size_t i, std::size_t j) const { return bits_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, bool value = true) { bits_[i * cols_ + j] = value; }
  std::vector<std::pair<std::size_t, std::size_t>> pairs() const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<bool> bits_;
};

/// No zero row and no zero column.
bool is_subdirect_letterset(const LetterSet& x);
/// No 2×2 submatrix with exactly one zero. Requires a subdirect X.
bool is_fiber_letterset(const LetterSet& x);
/// ker π_A ∘ ker π_B = ker π_B ∘ ker π_A as relations on X. Requires a
/// subdirect X.
bool is_fiber_letterset_by_kernels(const LetterSet& x);
/// Connected components of the bipartite row/column graph of X.
std::size_t letterset_blocks(const LetterSet& x);

}  // namespace fiberprod
