#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fiberprod/fibercore.hpp"

namespace fiberprod {

/// A state of the two-tape automaton: the initial state, an unmatched
/// residue on one side, or the final state (ε, ε).
struct State {
  enum class Kind { Iota, LeftResidue, RightResidue, Done };
  Kind kind = Kind::Iota;
  /// Word over the quotient alphabet; empty for Iota and Done.
  LetterString residue;

  static State iota() { return {Kind::Iota, {}}; }
  static State done() { return {Kind::Done, {}}; }
  /// LeftResidue(u) for non-empty u, Done otherwise.
  static State left(LetterString u);
  static State right(LetterString v);

  /// "ι", "(u,ε)", "(ε,v)" or "(ε,ε)".
  std::string display(const Alphabet& quotient_alphabet) const;

  friend auto operator<=>(const State&, const State&) = default;
};

/// (σ₁, σ₂) with each side a letter or ε; never both ε.
struct Label {
  std::optional<Letter> left;
  std::optional<Letter> right;

  std::string display(const Alphabet& a, const Alphabet& b) const;
  friend auto operator<=>(const Label&, const Label&) = default;
};

struct Transition {
  std::size_t from = 0;
  Label label;
  std::size_t to = 0;
  /// Bit i-1 set when the triple belongs to Δi.
  std::uint8_t provenance = 0;

  std::string families() const;
};

class TwoTapeAutomaton {
 public:
  /// Monoid-mode instance over a free quotient.
  static TwoTapeAutomaton build(const FiberInstance& inst);
  /// Semigroup-mode instance over a free quotient; the maps are read as
  /// monoid maps on A*, B*.
  static TwoTapeAutomaton build_semigroup(const FiberInstance& inst);

  const FiberInstance& instance() const noexcept { return inst_; }
  /// Sorted: ι, left residues, right residues, (ε,ε).
  const std::vector<State>& states() const noexcept { return states_; }
  /// Sorted by (from, label, to).
  const std::vector<Transition>& transitions() const noexcept { return transitions_; }
  std::size_t iota() const noexcept { return 0; }
  std::size_t done() const noexcept { return states_.size() - 1; }
  std::optional<std::size_t> find(const State& s) const;
  /// Indices into transitions() leaving state s.
  const std::vector<std::size_t>& out(std::size_t s) const { return out_.at(s); }

  std::string state_name(std::size_t s) const;
  std::string label_name(const Label& l) const;

 private:
  explicit TwoTapeAutomaton(FiberInstance inst) : inst_(std::move(inst)) {}
  void construct();

  FiberInstance inst_;
  std::vector<State> states_;
  std::vector<Transition> transitions_;
  std::vector<std::vector<std::size_t>> out_;
};

/// A closed walk given as transition indices; transitions[i].to equals
/// transitions[i+1].from, cyclically.
struct Cycle {
  std::vector<std::size_t> transitions;
};

/// A shortest directed cycle anywhere in the transition graph.
std::optional<Cycle> has_cycle(const TwoTapeAutomaton& aut);

/// Labels of every ι → (ε,ε) path, sorted. Throws PreconditionError when the
/// automaton has a cycle and GuardExceeded past max_paths.
std::vector<PairWord> language(const TwoTapeAutomaton& aut, std::size_t max_paths = 1'000'000);

struct RunStep {
  std::size_t state = 0;
  /// Transition taken to reach state; absent for the starting ι.
  std::optional<std::size_t> transition;
  std::size_t consumed_left = 0;
  std::size_t consumed_right = 0;
};

struct RunResult {
  bool accepted = false;
  std::vector<RunStep> path;
  /// Failed invariant checks; empty on a sound automaton.
  std::vector<std::string> violations;
};

/// Deterministic run of the automaton on p, checking the label identity
/// φ(α)v = ψ(β)u and the residue closed form at every step.
RunResult run(const TwoTapeAutomaton& aut, const PairWord& p);

/// Label of entry · cycleⁿ · exit for the base state of the cycle.
PairWord pump_witness(const TwoTapeAutomaton& aut, const Cycle& cycle, std::size_t n);

/// Label of the cycle read once.
PairWord cycle_label(const TwoTapeAutomaton& aut, const Cycle& cycle);

std::string to_dot(const TwoTapeAutomaton& aut);

struct InvariantReport {
  std::size_t paths_checked = 0;
  std::vector<std::string> violations;
};

/// Walks every path from ι of at most depth transitions, checking the label
/// identity and closed form at each prefix; also checks that out-edges are
/// uniquely keyed by the letter each state kind consumes.
InvariantReport verify_invariants(const TwoTapeAutomaton& aut, std::size_t depth);

}  // namespace fiberprod
