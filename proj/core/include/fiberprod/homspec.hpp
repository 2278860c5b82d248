#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fiberprod/finalg.hpp"
#include "fiberprod/words.hpp"

namespace fiberprod {

enum class Mode { Semigroup, Monoid };

std::string to_string(Mode mode);

enum class QuotientKind { Free, FiniteTable, FreeCommutative };

struct TableElement {
  Element index = 0;
  friend auto operator<=>(const TableElement&, const TableElement&) = default;
};

using CommVector = std::vector<std::uint64_t>;

/// An element of a fiber quotient: a word over C, an element of a finite
/// table, or an exponent vector of a free commutative semigroup.
using QuotientElement = std::variant<Word, TableElement, CommVector>;

/// The common codomain of φ and ψ.
class Quotient {
 public:
  static Quotient free(AlphabetPtr alphabet);
  static Quotient finite(std::shared_ptr<const FiniteAlgebra> table);
  static Quotient free_commutative(std::size_t rank);

  QuotientKind kind() const noexcept { return kind_; }
  const AlphabetPtr& alphabet() const;
  const FiniteAlgebra& table() const;
  const std::shared_ptr<const FiniteAlgebra>& table_ptr() const noexcept { return table_; }
  std::size_t rank() const;

  /// The identity element, when the quotient has one (free: ε, commutative:
  /// the zero vector, table: its identity if any).
  std::optional<QuotientElement> identity() const;
  QuotientElement multiply(const QuotientElement& x, const QuotientElement& y) const;
  /// Throws ValidationError unless x is an element of this quotient.
  void check(const QuotientElement& x) const;
  /// Both-sided cancellation holds (free and free commutative quotients).
  bool cancellative() const noexcept { return kind_ != QuotientKind::FiniteTable; }

  std::string display(const QuotientElement& x) const;

  friend bool operator==(const Quotient& lhs, const Quotient& rhs);

 private:
  QuotientKind kind_ = QuotientKind::Free;
  AlphabetPtr alphabet_;
  std::shared_ptr<const FiniteAlgebra> table_;
  std::size_t rank_ = 0;
};

struct Surjectivity {
  bool surjective = false;
  std::string reason;
};

/// A homomorphism out of A⁺ or A* given by letter images.
class HomSpec {
 public:
  HomSpec(AlphabetPtr source, Mode mode, Quotient target,
          std::vector<QuotientElement> images);

  const AlphabetPtr& source() const noexcept { return source_; }
  Mode mode() const noexcept { return mode_; }
  const Quotient& target() const noexcept { return target_; }
  const QuotientElement& image(Letter letter) const { return images_.at(letter); }
  const std::vector<QuotientElement>& images() const noexcept { return images_; }

  QuotientElement apply(const Word& w) const;
  QuotientElement apply(std::span<const Letter> w) const;

  /// Letter images as raw letter strings; only for free quotients.
  const LetterString& free_image(Letter letter) const { return free_images_.at(letter); }
  LetterString apply_free(std::span<const Letter> w) const;

  Surjectivity is_surjective() const;
  /// {h(a) : a ∈ A}, deduplicated and sorted.
  std::vector<QuotientElement> image_set() const;

 private:
  AlphabetPtr source_;
  Mode mode_;
  Quotient target_;
  std::vector<QuotientElement> images_;
  std::vector<LetterString> free_images_;
};

}  // namespace fiberprod
