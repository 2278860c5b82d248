#include "fiberprod/decide.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "fiberprod/automaton.hpp"

namespace fiberprod {

std::string to_string(Reason reason) {
  switch (reason) {
    case Reason::SemigroupFiniteQuotient:
      return "SEMIGROUP_FINITE_QUOTIENT";
    case Reason::NotGroup:
      return "NOT_GROUP";
    case Reason::NotCyclic:
      return "NOT_CYCLIC";
    case Reason::ImageNotSingleton:
      return "IMAGE_NOT_SINGLETON";
    case Reason::CyclicSingletonImages:
      return "CYCLIC_SINGLETON_IMAGES";
    case Reason::AutomatonAcyclic:
      return "AUTOMATON_ACYCLIC";
    case Reason::AutomatonCycle:
      return "AUTOMATON_CYCLE";
    case Reason::NSingletonImage:
      return "N_SINGLETON_IMAGE";
    case Reason::NBothImagesLarge:
      return "N_BOTH_IMAGES_LARGE";
    case Reason::FreeCommRankGe2:
      return "FREECOMM_RANK_GE_2";
  }
  return "UNKNOWN";
}

namespace {

Element table_image(const HomSpec& h, Letter x) {
  return std::get<TableElement>(h.image(x)).index;
}

std::uint64_t rank1_image(const HomSpec& h, Letter x) {
  return std::get<CommVector>(h.image(x)).at(0);
}

LetterString repeat(const LetterString& w, std::size_t n) {
  LetterString out;
  for (std::size_t i = 0; i < n; ++i) out.insert(out.end(), w.begin(), w.end());
  return out;
}

LetterString letters_of(std::initializer_list<LetterString> parts) {
  LetterString out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

// Shortest (then least) word over h's source with image target; the empty
// word counts only when allow_empty.
std::optional<LetterString> shortest_word_for(const HomSpec& h, Element target, bool allow_empty) {
  const auto& t = h.target().table();
  if (allow_empty && t.identity() && *t.identity() == target) return LetterString{};
  std::vector<std::optional<LetterString>> best(t.size());
  std::deque<Element> queue;
  for (Letter x = 0; x < h.source()->size(); ++x) {
    const auto e = table_image(h, x);
    if (!best[e]) {
      best[e] = LetterString{x};
      queue.push_back(e);
    }
  }
  while (!queue.empty()) {
    const auto e = queue.front();
    queue.pop_front();
    for (Letter x = 0; x < h.source()->size(); ++x) {
      const auto f = t.multiply(e, table_image(h, x));
      if (!best[f]) {
        best[f] = letters_of({*best[e], {x}});
        queue.push_back(f);
      }
    }
  }
  return best[target];
}

std::string render(const AlphabetPtr& alphabet, const LetterString& w) {
  return w.empty() ? "ε" : alphabet->render(w);
}

// Factors (a^k, v^{kn}) for growing n and keeps the factor with the longest
// right component whenever that length increases.
WitnessFamily idempotent_power_family(const FiberInstance& inst, Letter a, std::size_t count) {
  const auto& t = inst.quotient().table();
  const Element x = table_image(inst.phi(), a);
  std::size_t k = 1;
  while (true) {
    const auto e = t.power(x, k);
    if (t.multiply(e, e) == e) break;
    ++k;
  }
  const auto v = shortest_word_for(inst.psi(), x, false);
  if (!v) throw std::logic_error("right map misses a left image");

  WitnessFamily family;
  const auto& A = inst.left_alphabet();
  family.description = "indecomposable factor with the longest right component of (" +
                       A->token(a) + "^" + std::to_string(k) + ", (" +
                       render(inst.right_alphabet(), *v) + ")^{" + std::to_string(k) +
                       "n}), n >= 1";
  std::size_t last = 0;
  for (std::size_t n = 1; n <= 64 + 16 * count && family.instances.size() < count; ++n) {
    const PairWord p = inst.make_pair(LetterString(k, a), repeat(*v, k * n));
    const auto factors = factor_into_indecomposables(inst, p);
    const PairWord* longest = nullptr;
    for (const auto& f : factors) {
      if (!longest || f.right.size() > longest->right.size()) longest = &f;
    }
    if (longest && longest->right.size() > last) {
      last = longest->right.size();
      family.instances.push_back(*longest);
    }
  }
  return family;
}

bool in_cyclic_subgroup(const FiniteAlgebra& t, Element x, Element y) {
  for (std::size_t k = 0; k <= t.order(y); ++k) {
    if (t.power(y, k) == x) return true;
  }
  return false;
}

WitnessFamily not_cyclic_family(const FiberInstance& inst, std::size_t count) {
  const auto& t = inst.quotient().table();
  const auto& psi = inst.psi();
  const auto nb = inst.right_alphabet()->size();
  for (Letter a = 0; a < nb; ++a) {
    for (Letter b = 0; b < nb; ++b) {
      const auto g = table_image(psi, a);
      const auto h = table_image(psi, b);
      if (in_cyclic_subgroup(t, g, h) || in_cyclic_subgroup(t, h, g)) continue;
      const std::size_t j = t.order(g);
      const std::size_t k = t.order(h);
      const auto& B = inst.right_alphabet();
      WitnessFamily family;
      family.description = "(ε, " + B->token(a) + " " + B->token(b) + "^{" + std::to_string(k) +
                           "n} " + B->token(a) + "^" + std::to_string(j - 1) + "), n >= 1";
      for (std::size_t n = 1; n <= count; ++n) {
        family.instances.push_back(inst.make_pair(
            {}, letters_of({{a}, LetterString(n * k, b), LetterString(j - 1, a)})));
      }
      return family;
    }
  }
  throw std::logic_error("non-cyclic group generated by pairwise comparable cyclic subgroups");
}

// One side has two letters with different images: a prefix walk that never
// hits the identity, closed by the shortest word returning to it.
WitnessFamily image_not_singleton_family(const FiberInstance& inst, std::size_t count) {
  const bool left_side = inst.phi().image_set().size() >= 2;
  const HomSpec& h = left_side ? inst.phi() : inst.psi();
  const auto& alphabet = h.source();
  const auto& t = h.target().table();
  const Element one = *t.identity();
  Letter a = 0;
  while (table_image(h, a) == one) ++a;
  Letter a2 = 0;
  while (table_image(h, a2) == table_image(h, a)) ++a2;

  WitnessFamily family;
  family.description = std::string(left_side ? "(w_n u_n, ε)" : "(ε, w_n u_n)") +
                       ": w_n the length-n word over {" + alphabet->token(a) + "," +
                       alphabet->token(a2) + "} choosing " + alphabet->token(a) +
                       " unless that returns to the identity, u_n the shortest word with image "
                       "inverse to w_n";
  for (std::size_t n = 1; n <= count; ++n) {
    LetterString w;
    Element x = one;
    for (std::size_t i = 0; i < n; ++i) {
      const Letter next = t.multiply(x, table_image(h, a)) != one ? a : a2;
      w.push_back(next);
      x = t.multiply(x, table_image(h, next));
    }
    const auto tail = shortest_word_for(h, *t.inverse(x), true);
    w.insert(w.end(), tail->begin(), tail->end());
    family.instances.push_back(left_side ? inst.make_pair(w, {}) : inst.make_pair({}, w));
  }
  return family;
}

WitnessFamily n_both_large_family(const FiberInstance& inst, std::size_t count) {
  const auto& phi = inst.phi();
  const auto& psi = inst.psi();
  auto max_image = [](const HomSpec& h) {
    std::uint64_t m = 0;
    for (Letter x = 0; x < h.source()->size(); ++x) m = std::max(m, rank1_image(h, x));
    return m;
  };
  auto letter_with = [](const HomSpec& h, std::uint64_t value) {
    Letter x = 0;
    while (rank1_image(h, x) != value) ++x;
    return x;
  };
  const bool left_big = max_image(phi) >= max_image(psi);
  const HomSpec& big = left_big ? phi : psi;
  const HomSpec& small = left_big ? psi : phi;
  const std::uint64_t m = max_image(big);
  const std::uint64_t n = max_image(small);
  const Letter x = letter_with(big, 1);
  const Letter a = letter_with(big, m);
  const Letter y = letter_with(small, 1);
  const Letter b = letter_with(small, n);
  const std::size_t q = m / n;
  const std::size_t r = m % n;
  const auto& big_alpha = big.source();
  const auto& small_alpha = small.source();
  const std::string long_side = big_alpha->token(x) + " " + big_alpha->token(a) + "^k";
  auto power = [](const std::string& token, std::size_t e) {
    return e == 0 ? std::string{} : e == 1 ? token : token + "^" + std::to_string(e);
  };
  std::string block = power(small_alpha->token(b), q);
  if (r > 0) block += " " + power(small_alpha->token(y), r);
  const std::string short_side = "(" + block + ")^k " + small_alpha->token(y);
  WitnessFamily family;
  family.description = left_big ? "(" + long_side + ", " + short_side + "), k >= 1"
                                 : "(" + short_side + ", " + long_side + "), k >= 1";
  for (std::size_t k = 1; k <= count; ++k) {
    LetterString big_word = letters_of({{x}, LetterString(k, a)});
    LetterString block = letters_of({LetterString(q, b), LetterString(r, y)});
    LetterString small_word = letters_of({repeat(block, k), {y}});
    family.instances.push_back(left_big ? inst.make_pair(big_word, small_word)
                                        : inst.make_pair(small_word, big_word));
  }
  return family;
}

WitnessFamily freecomm_family(const FiberInstance& inst, std::size_t count) {
  auto unit = [](const HomSpec& h, std::size_t i) {
    for (Letter x = 0; x < h.source()->size(); ++x) {
      const auto& v = std::get<CommVector>(h.image(x));
      bool ok = true;
      for (std::size_t k = 0; k < v.size(); ++k) ok = ok && v[k] == (k == i ? 1U : 0U);
      if (ok) return x;
    }
    throw std::logic_error("surjective map misses a unit vector");
  };
  const Letter a = unit(inst.phi(), 0);
  const Letter a2 = unit(inst.phi(), 1);
  const Letter b = unit(inst.psi(), 0);
  const Letter b2 = unit(inst.psi(), 1);
  const auto& A = inst.left_alphabet();
  const auto& B = inst.right_alphabet();
  WitnessFamily family;
  family.description = "(" + A->token(a) + "^n " + A->token(a2) + ", " + B->token(b2) + " " +
                       B->token(b) + "^n), n >= 1";
  for (std::size_t n = 1; n <= count; ++n) {
    family.instances.push_back(inst.make_pair(letters_of({LetterString(n, a), {a2}}),
                                              letters_of({{b2}, LetterString(n, b)})));
  }
  return family;
}

Decision decide_table(const FiberInstance& inst, std::size_t count) {
  const auto& t = inst.quotient().table();
  Decision d;
  d.finitely_generated = false;
  if (inst.mode() == Mode::Semigroup) {
    d.reason = Reason::SemigroupFiniteQuotient;
    d.witness = idempotent_power_family(inst, 0, count);
    d.detail = "finite quotient of order " + std::to_string(t.size()) + " in semigroup mode";
    return d;
  }
  if (!t.identity()) {
    throw UnsupportedError("monoid mode over a finite table without identity");
  }
  if (!t.is_group()) {
    d.reason = Reason::NotGroup;
    Letter a = 0;
    while (t.inverse(table_image(inst.phi(), a))) ++a;
    d.witness = idempotent_power_family(inst, a, count);
    d.detail = "quotient is a monoid but not a group; " + t.name(table_image(inst.phi(), a)) +
               " is not a unit";
    return d;
  }
  if (!t.is_cyclic_group()) {
    d.reason = Reason::NotCyclic;
    d.witness = not_cyclic_family(inst, count);
    d.detail = "quotient is a non-cyclic group of order " + std::to_string(t.size());
    return d;
  }
  auto params = cyclic_parameters(inst);
  if (!params) {
    d.reason = Reason::ImageNotSingleton;
    d.witness = image_not_singleton_family(inst, count);
    d.detail = "image sets have sizes " + std::to_string(inst.phi().image_set().size()) + " and " +
               std::to_string(inst.psi().image_set().size());
    return d;
  }
  d.finitely_generated = true;
  d.reason = Reason::CyclicSingletonImages;
  d.generating_set = generating_set_cyclic(inst.left_alphabet(), inst.right_alphabet(),
                                           params->n, params->p, params->q);
  d.detail = "cyclic group of order " + std::to_string(params->n) + ", p = " +
             std::to_string(params->p) + ", q = " + std::to_string(params->q);
  return d;
}

Decision decide_commutative(const FiberInstance& inst, std::size_t count) {
  if (inst.mode() == Mode::Monoid) {
    throw UnsupportedError("free commutative quotients are only decided in semigroup mode");
  }
  Decision d;
  const auto rank = inst.quotient().rank();
  if (rank >= 2) {
    d.reason = Reason::FreeCommRankGe2;
    d.witness = freecomm_family(inst, count);
    d.detail = "free commutative quotient of rank " + std::to_string(rank);
    return d;
  }
  const auto left = inst.phi().image_set().size();
  const auto right = inst.psi().image_set().size();
  if (left == 1 || right == 1) {
    d.finitely_generated = true;
    d.reason = Reason::NSingletonImage;
    d.generating_set = generating_set_N(inst);
    d.detail = left == 1 ? "left image set is {1}" : "right image set is {1}";
    return d;
  }
  d.reason = Reason::NBothImagesLarge;
  d.witness = n_both_large_family(inst, count);
  d.detail = "image sets have sizes " + std::to_string(left) + " and " + std::to_string(right);
  return d;
}

Decision decide_free(const FiberInstance& inst, std::size_t count) {
  const auto aut = inst.mode() == Mode::Monoid ? TwoTapeAutomaton::build(inst)
                                               : TwoTapeAutomaton::build_semigroup(inst);
  Decision d;
  const std::string size = std::to_string(aut.states().size()) + " states, " +
                           std::to_string(aut.transitions().size()) + " transitions";
  if (auto cycle = has_cycle(aut)) {
    d.reason = Reason::AutomatonCycle;
    const auto loop = cycle_label(aut, *cycle);
    WitnessFamily family;
    family.description = "entry · " + loop.display() + "^n · exit through " +
                         aut.state_name(aut.transitions()[cycle->transitions.front()].from) +
                         ", n >= 1";
    for (std::size_t n = 1; n <= count; ++n) {
      family.instances.push_back(pump_witness(aut, *cycle, n));
    }
    d.witness = std::move(family);
    d.detail = size + "; cycle of length " + std::to_string(cycle->transitions.size());
    return d;
  }
  d.finitely_generated = true;
  d.reason = Reason::AutomatonAcyclic;
  d.generating_set = language(aut);
  d.detail = size;
  return d;
}

}  // namespace

Decision decide(const FiberInstance& inst, std::size_t witness_instances) {
  const std::size_t count = witness_instances;
  switch (inst.quotient().kind()) {
    case QuotientKind::Free:
      return decide_free(inst, count);
    case QuotientKind::FiniteTable:
      return decide_table(inst, count);
    case QuotientKind::FreeCommutative:
      return decide_commutative(inst, count);
  }
  throw UnsupportedError("unknown quotient kind");
}

std::optional<CyclicParameters> cyclic_parameters(const FiberInstance& inst) {
  if (inst.mode() != Mode::Monoid || inst.quotient().kind() != QuotientKind::FiniteTable) {
    return std::nullopt;
  }
  const auto& t = inst.quotient().table();
  const auto g = t.cyclic_generator();
  if (!g) return std::nullopt;
  const auto left = inst.phi().image_set();
  const auto right = inst.psi().image_set();
  if (left.size() != 1 || right.size() != 1) return std::nullopt;
  const std::size_t n = t.size();
  auto dlog = [&](const QuotientElement& e) {
    const auto target = std::get<TableElement>(e).index;
    for (std::size_t k = 1; k <= n; ++k) {
      if (t.power(*g, k) == target) return k;
    }
    throw std::logic_error("element outside the cyclic group");
  };
  return CyclicParameters{n, dlog(left.front()), dlog(right.front())};
}

std::vector<PairWord> generating_set_cyclic(const AlphabetPtr& a, const AlphabetPtr& b,
                                            std::size_t n, std::size_t p, std::size_t q) {
  if (n == 0) throw PreconditionError("cyclic group order must be positive");
  if (std::gcd(p, n) != 1 || std::gcd(q, n) != 1) {
    throw PreconditionError("gcd(p, n) and gcd(q, n) must be 1");
  }
  std::function<void(std::size_t, std::size_t, LetterString&, std::vector<LetterString>&)> words =
      [&](std::size_t size, std::size_t max, LetterString& cur, std::vector<LetterString>& out) {
        out.push_back(cur);
        if (cur.size() == max) return;
        for (Letter x = 0; x < size; ++x) {
          cur.push_back(x);
          words(size, max, cur, out);
          cur.pop_back();
        }
      };
  std::vector<LetterString> us, vs;
  LetterString scratch;
  words(a->size(), n, scratch, us);
  words(b->size(), n, scratch, vs);
  std::vector<PairWord> out;
  for (const auto& u : us) {
    for (const auto& v : vs) {
      if ((p * u.size()) % n != (q * v.size()) % n) continue;
      if (u.size() == n && v.size() == n) continue;
      if (u.empty() && v.empty()) continue;
      out.push_back({Word(a, u), Word(b, v)});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PairWord> generating_set_N(const FiberInstance& inst) {
  if (inst.mode() != Mode::Semigroup || inst.quotient().kind() != QuotientKind::FreeCommutative ||
      inst.quotient().rank() != 1) {
    throw PreconditionError("generating_set_N needs a rank-1 free commutative semigroup quotient");
  }
  const bool left_single = inst.phi().image_set().size() == 1;
  if (!left_single && inst.psi().image_set().size() != 1) {
    throw PreconditionError("generating_set_N needs a singleton image set");
  }
  // One side maps every letter to 1; pair each letter of the other side
  // with all words of its weight.
  const HomSpec& unit_side = left_single ? inst.phi() : inst.psi();
  const HomSpec& letter_side = left_single ? inst.psi() : inst.phi();
  const std::size_t k = unit_side.source()->size();
  std::vector<PairWord> out;
  for (Letter x = 0; x < letter_side.source()->size(); ++x) {
    const auto len = rank1_image(letter_side, x);
    std::size_t count = 1;
    for (std::uint64_t i = 0; i < len; ++i) count *= k;
    for (std::size_t idx = 0; idx < count; ++idx) {
      LetterString w(len);
      std::size_t rest = idx;
      for (std::size_t pos = len; pos-- > 0;) {
        w[pos] = static_cast<Letter>(rest % k);
        rest /= k;
      }
      out.push_back(left_single ? inst.make_pair(w, {x}) : inst.make_pair({x}, w));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Diagnostics diagnostics(const FiberInstance& inst) {
  if (inst.quotient().kind() != QuotientKind::FiniteTable) {
    throw PreconditionError("diagnostics need a finite quotient");
  }
  const auto& t = inst.quotient().table();
  Diagnostics d;
  d.idempotents = t.idempotents();
  d.j_triviality = t.is_j_trivial();
  d.semigroup_not_fg = !d.idempotents.empty() || !d.j_triviality.trivial;
  return d;
}

std::optional<std::vector<PairWord>> factor_over(const PairWord& p,
                                                 const std::vector<PairWord>& gens) {
  const auto& u = p.left.letters();
  const auto& v = p.right.letters();
  std::set<std::pair<std::size_t, std::size_t>> dead;
  std::vector<PairWord> chosen;
  std::function<bool(std::size_t, std::size_t)> go = [&](std::size_t i, std::size_t j) {
    if (i == u.size() && j == v.size()) return true;
    if (dead.count({i, j})) return false;
    for (const auto& g : gens) {
      if (g.is_identity()) continue;
      const auto& gl = g.left.letters();
      const auto& gr = g.right.letters();
      if (i + gl.size() > u.size() || j + gr.size() > v.size()) continue;
      if (!std::equal(gl.begin(), gl.end(), u.begin() + static_cast<std::ptrdiff_t>(i))) continue;
      if (!std::equal(gr.begin(), gr.end(), v.begin() + static_cast<std::ptrdiff_t>(j))) continue;
      chosen.push_back(g);
      if (go(i + gl.size(), j + gr.size())) return true;
      chosen.pop_back();
    }
    dead.insert({i, j});
    return false;
  };
  if (!go(0, 0)) return std::nullopt;
  return chosen;
}

}  // namespace fiberprod
