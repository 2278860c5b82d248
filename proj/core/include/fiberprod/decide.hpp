#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fiberprod/fibercore.hpp"

namespace fiberprod {

enum class Reason {
  SemigroupFiniteQuotient,
  NotGroup,
  NotCyclic,
  ImageNotSingleton,
  CyclicSingletonImages,
  AutomatonAcyclic,
  AutomatonCycle,
  NSingletonImage,
  NBothImagesLarge,
  FreeCommRankGe2,
};

/// Upper-case code, e.g. "AUTOMATON_ACYCLIC".
std::string to_string(Reason reason);

/// An infinite family of indecomposable members, given symbolically plus
/// its first few concrete instances.
struct WitnessFamily {
  std::string description;
  std::vector<PairWord> instances;
};

struct Decision {
  bool finitely_generated = false;
  Reason reason = Reason::AutomatonAcyclic;
  std::optional<std::vector<PairWord>> generating_set;
  std::optional<WitnessFamily> witness;
  std::string detail;
};

inline constexpr std::size_t kWitnessInstances = 5;

/// Throws UnsupportedError for free commutative quotients in monoid mode and
/// for tables without identity in monoid mode. Non-f.g. verdicts carry the
/// first witness_instances members of their witness family.
Decision decide(const FiberInstance& inst, std::size_t witness_instances = kWitnessInstances);

/// F = Z/n with φ(A) = {xᵖ}, ψ(B) = {x^q}, x the chosen generator.
struct CyclicParameters {
  std::size_t n = 1;
  std::size_t p = 0;
  std::size_t q = 0;
};

/// Parameters of a monoid-mode instance over a cyclic group with singleton
/// image sets; nullopt otherwise.
std::optional<CyclicParameters> cyclic_parameters(const FiberInstance& inst);

/// {(u,v) : p|u| ≡ q|v| (mod n), |u|,|v| ≤ n} minus |u| = |v| = n and minus
/// (ε,ε), sorted.
std::vector<PairWord> generating_set_cyclic(const AlphabetPtr& a, const AlphabetPtr& b,
                                            std::size_t n, std::size_t p, std::size_t q);

/// Rank-1 free commutative semigroup quotient with a singleton image set on
/// one side: all (u, b) with |u| = ψ(b), or mirrored.
std::vector<PairWord> generating_set_N(const FiberInstance& inst);

struct Diagnostics {
  std::vector<Element> idempotents;
  JTriviality j_triviality;
  /// Set when an idempotent exists or J is non-trivial.
  bool semigroup_not_fg = false;
};

Diagnostics diagnostics(const FiberInstance& inst);

/// Writes p as a product of generators (none equal to (ε,ε)) by depth-first
/// search over prefix positions; nullopt if impossible.
std::optional<std::vector<PairWord>> factor_over(const PairWord& p,
                                                 const std::vector<PairWord>& gens);

}  // namespace fiberprod
