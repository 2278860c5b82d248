#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fiberprod/fibercore.hpp"
#include "fiberprod_cli/instance_io.hpp"

namespace fiberprod::testing {

inline std::string corpus_path(const std::string& name) {
  return std::string(FIBERPROD_DATA_DIR) + "/instances/" + name + ".json";
}

inline FiberInstance corpus(const std::string& name) {
  return cli::load_instance(corpus_path(name)).instance;
}

inline std::vector<std::string> corpus_names() {
  return {"chain_semilattice", "cyclic_automaton",     "cyclic_z1",
          "cyclic_z2",         "cyclic_z3",            "cyclic_z3_two_images",
          "cyclic_z4",         "cyclic_z6",            "diagonal",
          "first_example",     "free_commutative_rank2", "idempotent_monoid",
          "klein_four",        "left_zero",            "naturals_both_large",
          "naturals_singleton", "second_example"};
}

/// Free quotient instance from letter-image strings, e.g.
/// free_instance({"x","y"}, {"a","b"}, {"x","y"}, {"a","b"}, {"x","y"}).
inline FiberInstance free_instance(const std::vector<std::string>& c,
                                   const std::vector<std::string>& a,
                                   const std::vector<std::string>& phi,
                                   const std::vector<std::string>& b,
                                   const std::vector<std::string>& psi,
                                   Mode mode = Mode::Monoid, bool require_surjective = true) {
  const auto q = Quotient::free(Alphabet::make("C", c));
  const auto aa = Alphabet::make("A", a);
  const auto bb = Alphabet::make("B", b);
  std::vector<QuotientElement> fi, gi;
  for (const auto& s : phi) fi.push_back(Word::parse(q.alphabet(), s));
  for (const auto& s : psi) gi.push_back(Word::parse(q.alphabet(), s));
  return FiberInstance(HomSpec(aa, mode, q, fi), HomSpec(bb, mode, q, gi), require_surjective);
}

inline std::shared_ptr<const FiniteAlgebra> cyclic_table(std::size_t n) {
  std::vector<std::vector<Element>> t(n, std::vector<Element>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[i][j] = (i + j) % n;
  }
  return std::make_shared<const FiniteAlgebra>(FiniteAlgebra::validate(t));
}

inline FiberInstance table_instance(std::shared_ptr<const FiniteAlgebra> table,
                                    const std::vector<std::string>& a,
                                    const std::vector<Element>& phi,
                                    const std::vector<std::string>& b,
                                    const std::vector<Element>& psi, Mode mode = Mode::Monoid) {
  const auto q = Quotient::finite(std::move(table));
  std::vector<QuotientElement> fi, gi;
  for (auto e : phi) fi.push_back(TableElement{e});
  for (auto e : psi) gi.push_back(TableElement{e});
  return FiberInstance(HomSpec(Alphabet::make("A", a), mode, q, fi),
                       HomSpec(Alphabet::make("B", b), mode, q, gi));
}

inline FiberInstance rank1_instance(const std::vector<std::string>& a,
                                    const std::vector<std::uint64_t>& phi,
                                    const std::vector<std::string>& b,
                                    const std::vector<std::uint64_t>& psi) {
  const auto q = Quotient::free_commutative(1);
  std::vector<QuotientElement> fi, gi;
  for (auto e : phi) fi.push_back(CommVector{e});
  for (auto e : psi) gi.push_back(CommVector{e});
  return FiberInstance(HomSpec(Alphabet::make("A", a), Mode::Semigroup, q, fi),
                       HomSpec(Alphabet::make("B", b), Mode::Semigroup, q, gi));
}

/// All words of length ≤ max (length ≥ 1 when non_empty).
inline std::vector<LetterString> words_upto(std::size_t alphabet, std::size_t max,
                                            bool non_empty = false) {
  std::vector<LetterString> out;
  std::vector<LetterString> layer{LetterString{}};
  for (std::size_t len = 0; len <= max; ++len) {
    if (len > 0 || !non_empty) out.insert(out.end(), layer.begin(), layer.end());
    std::vector<LetterString> next;
    for (const auto& w : layer) {
      for (Letter x = 0; x < alphabet; ++x) {
        next.push_back(w);
        next.back().push_back(x);
      }
    }
    layer = std::move(next);
  }
  return out;
}

/// Brute-force members: every pair within bounds, tested with member().
inline std::vector<PairWord> brute_members(const FiberInstance& inst, std::size_t max_left,
                                           std::size_t max_right) {
  const bool semi = inst.mode() == Mode::Semigroup;
  std::vector<PairWord> out;
  for (const auto& u : words_upto(inst.left_alphabet()->size(), max_left, semi)) {
    for (const auto& v : words_upto(inst.right_alphabet()->size(), max_right, semi)) {
      auto p = inst.make_pair(u, v);
      if (inst.member(p)) out.push_back(std::move(p));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Direct check of one pair: a member, not the identity, and no split point
/// (i, j) whose two sides are members (neither the identity in monoid mode,
/// both components non-empty in semigroup mode). Evaluates the maps on every
/// split.
inline bool brute_is_indecomposable(const FiberInstance& inst, const PairWord& p) {
  const bool semi = inst.mode() == Mode::Semigroup;
  if (!inst.member(p) || p.is_identity()) return false;
  const auto& u = p.left.letters();
  const auto& v = p.right.letters();
  for (std::size_t i = 0; i <= u.size(); ++i) {
    for (std::size_t j = 0; j <= v.size(); ++j) {
      if (semi && (i == 0 || j == 0 || i == u.size() || j == v.size())) continue;
      if (!semi && ((i == 0 && j == 0) || (i == u.size() && j == v.size()))) continue;
      const auto left = inst.make_pair(LetterString(u.begin(), u.begin() + i),
                                       LetterString(v.begin(), v.begin() + j));
      const auto right = inst.make_pair(LetterString(u.begin() + i, u.end()),
                                        LetterString(v.begin() + j, v.end()));
      if (inst.phi().apply(left.left) == inst.psi().apply(left.right) &&
          inst.phi().apply(right.left) == inst.psi().apply(right.right)) {
        return false;
      }
    }
  }
  return true;
}

/// Brute-force indecomposables: every member within bounds passing
/// brute_is_indecomposable.
inline std::vector<PairWord> brute_indecomposables(const FiberInstance& inst,
                                                   std::size_t max_left,
                                                   std::size_t max_right) {
  std::vector<PairWord> out;
  for (auto& p : brute_members(inst, max_left, max_right)) {
    if (brute_is_indecomposable(inst, p)) out.push_back(std::move(p));
  }
  return out;
}

inline std::vector<std::pair<std::string, std::string>> as_strings(
    const std::vector<PairWord>& ps) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& p : ps) out.emplace_back(p.left.str(), p.right.str());
  return out;
}

}  // namespace fiberprod::testing
