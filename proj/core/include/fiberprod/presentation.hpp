#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "fiberprod/decide.hpp"

namespace fiberprod {

/// γ(u, v) with p|u| ≡ q|v| (mod n), |u|,|v| ≤ n, excluding |u| = |v| = n
/// and |u| = |v| = 0.
struct GammaSymbol {
  Word u;
  Word v;

  /// 0 < |u|, |v| < n.
  bool phi_type() const noexcept { return !u.empty() && !v.empty(); }
  std::string display() const { return "γ(" + u.display() + "," + v.display() + ")"; }
};

/// A word over Γ as symbol indices.
using GammaWord = std::vector<std::size_t>;

enum class RelationFamily { R1, R2, R3, R4 };
std::string to_string(RelationFamily family);

struct Relation {
  GammaWord lhs;
  GammaWord rhs;
  RelationFamily family = RelationFamily::R1;
};

class Presentation {
 public:
  static constexpr std::size_t kMaxSymbols = 5000;

  /// Throws PreconditionError unless gcd(p,n) = gcd(q,n) = 1 and GuardExceeded
  /// beyond max_symbols symbols. Every relation is checked by evaluation.
  static Presentation build(AlphabetPtr a, AlphabetPtr b, std::size_t n, std::size_t p,
                            std::size_t q, std::size_t max_symbols = kMaxSymbols);
  /// For a monoid-mode instance over a cyclic group with singleton images.
  static Presentation build(const FiberInstance& inst, std::size_t max_symbols = kMaxSymbols);

  std::size_t n() const noexcept { return n_; }
  std::size_t p() const noexcept { return p_; }
  std::size_t q() const noexcept { return q_; }
  const AlphabetPtr& left_alphabet() const noexcept { return a_; }
  const AlphabetPtr& right_alphabet() const noexcept { return b_; }
  /// Sorted by (u, v).
  const std::vector<GammaSymbol>& symbols() const noexcept { return symbols_; }
  const std::vector<Relation>& relations() const noexcept { return relations_; }
  std::optional<std::size_t> find(const Word& u, const Word& v) const;

  PairWord eval_pi(const GammaWord& w) const;
  /// w₁w₂w₃: at most one φ-type symbol, then (u,ε) symbols, then (ε,v)
  /// symbols.
  GammaWord normal_form(const GammaWord& w) const;
  bool equal(const GammaWord& w, const GammaWord& w2) const;

  /// "γ(a,b)γ(aa,ε)"; "ε" for the empty word.
  std::string render(const GammaWord& w) const;
  /// Accepts "(u,v)" groups with optional "γ" prefixes; "" and "ε" are the
  /// empty word.
  GammaWord parse(std::string_view text) const;
  /// "Mon⟨ generators | relations ⟩".
  std::string to_text() const;

 private:
  Presentation() = default;
  void check(const GammaWord& w) const;
  std::size_t symbol(const LetterString& u, const LetterString& v) const;
  GammaWord rewrite(const GammaWord& lhs) const;

  AlphabetPtr a_;
  AlphabetPtr b_;
  std::size_t n_ = 1;
  std::size_t p_ = 1;
  std::size_t q_ = 1;
  std::vector<GammaSymbol> symbols_;
  std::map<std::pair<LetterString, LetterString>, std::size_t> index_;
  std::vector<Relation> relations_;
  std::map<GammaWord, std::size_t> by_lhs_;
};

}  // namespace fiberprod
