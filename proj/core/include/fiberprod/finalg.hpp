#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fiberprod/error.hpp"

namespace fiberprod {

using Element = std::size_t;

/// Raised by FiniteAlgebra::validate when (x·y)·z ≠ x·(y·z).
class NonAssociativeError : public ValidationError {
 public:
  NonAssociativeError(std::array<Element, 3> triple, const std::string& message)
      : ValidationError(message), triple_(triple) {}
  const std::array<Element, 3>& triple() const noexcept { return triple_; }

 private:
  std::array<Element, 3> triple_;
};

struct JTriviality {
  bool trivial = true;
  // A pair of distinct J-related elements when not trivial.
  std::optional<std::pair<Element, Element>> witness;
};

/// A finite semigroup given by its multiplication table. Elements are
/// 0..size()-1; the identity is located during validation if one exists.
class FiniteAlgebra {
 public:
  static constexpr std::size_t kDefaultMaxSize = 64;

  /// Checks the table is square, in range and associative (exhaustive triple
  /// check), then locates the identity.
  static FiniteAlgebra validate(const std::vector<std::vector<Element>>& table,
                                std::vector<std::string> names = {},
                                std::size_t max_size = kDefaultMaxSize);

  std::size_t size() const noexcept { return n_; }
  Element multiply(Element x, Element y) const { return table_[x * n_ + y]; }
  std::optional<Element> identity() const noexcept { return identity_; }
  const std::string& name(Element x) const { return names_.at(x); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<Element> find(const std::string& name) const;
  std::vector<std::vector<Element>> rows() const;

  std::vector<Element> idempotents() const;
  bool is_group() const;
  /// Smallest-index element whose powers exhaust the algebra, if it is a
  /// cyclic group.
  std::optional<Element> cyclic_generator() const;
  bool is_cyclic_group() const { return cyclic_generator().has_value(); }
  /// Order of x in a group (least k ≥ 1 with x^k = identity).
  std::size_t order(Element x) const;
  Element power(Element x, std::size_t k) const;
  std::optional<Element> inverse(Element x) const;

  /// J computed through S¹ double cosets: s J t iff s = x·t·y and t = x'·s·y'.
  std::vector<std::vector<bool>> j_relation() const;
  /// J computed through principal two-sided ideals: S¹sS¹ = S¹tS¹.
  std::vector<std::vector<bool>> j_relation_by_ideals() const;
  JTriviality is_j_trivial() const;

  /// The subsemigroup generated by gens (plus the identity when with_identity).
  std::vector<bool> closure(const std::vector<Element>& gens, bool with_identity) const;

  friend bool operator==(const FiniteAlgebra& lhs, const FiniteAlgebra& rhs) {
    return lhs.n_ == rhs.n_ && lhs.table_ == rhs.table_;
  }

 private:
  FiniteAlgebra() = default;

  std::size_t n_ = 0;
  std::vector<Element> table_;
  std::vector<std::string> names_;
  std::optional<Element> identity_;
};

}  // namespace fiberprod
