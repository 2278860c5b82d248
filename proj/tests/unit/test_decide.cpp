#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "fiberprod/decide.hpp"
#include "support/fixtures.hpp"

namespace fiberprod {
namespace {

using testing::as_strings;
using Strings = std::vector<std::pair<std::string, std::string>>;

TEST(Decide, Examples) {
  const auto z3 = testing::corpus("cyclic_z3");
  const auto d = decide(z3);
  EXPECT_TRUE(d.finitely_generated);
  EXPECT_EQ(d.reason, Reason::CyclicSingletonImages);
  EXPECT_TRUE(d.generating_set.has_value());
  EXPECT_FALSE(d.witness.has_value());

  const auto semi = decide(z3.with_mode(Mode::Semigroup));
  EXPECT_FALSE(semi.finitely_generated);
  EXPECT_EQ(semi.reason, Reason::SemigroupFiniteQuotient);
  EXPECT_TRUE(semi.witness.has_value());

  const auto n = decide(testing::corpus("naturals_singleton"));
  EXPECT_TRUE(n.finitely_generated);
  EXPECT_EQ(n.reason, Reason::NSingletonImage);
}

TEST(Decide, ReasonPerCorpusInstance) {
  const std::vector<std::pair<std::string, Reason>> expected{
      {"chain_semilattice", Reason::SemigroupFiniteQuotient},
      {"cyclic_automaton", Reason::AutomatonCycle},
      {"cyclic_z1", Reason::CyclicSingletonImages},
      {"cyclic_z2", Reason::CyclicSingletonImages},
      {"cyclic_z3", Reason::CyclicSingletonImages},
      {"cyclic_z3_two_images", Reason::ImageNotSingleton},
      {"cyclic_z4", Reason::CyclicSingletonImages},
      {"cyclic_z6", Reason::CyclicSingletonImages},
      {"diagonal", Reason::AutomatonAcyclic},
      {"first_example", Reason::AutomatonAcyclic},
      {"free_commutative_rank2", Reason::FreeCommRankGe2},
      {"idempotent_monoid", Reason::NotGroup},
      {"klein_four", Reason::NotCyclic},
      {"left_zero", Reason::SemigroupFiniteQuotient},
      {"naturals_both_large", Reason::NBothImagesLarge},
      {"naturals_singleton", Reason::NSingletonImage},
      {"second_example", Reason::AutomatonAcyclic},
  };
  for (const auto& [name, reason] : expected) {
    const auto d = decide(testing::corpus(name));
    EXPECT_EQ(d.reason, reason) << name;
    EXPECT_EQ(d.generating_set.has_value(), d.finitely_generated) << name;
    EXPECT_EQ(d.witness.has_value(), !d.finitely_generated) << name;
    EXPECT_FALSE(to_string(d.reason).empty());
  }
}

TEST(Decide, UnsupportedCombinations) {
  const auto n = testing::corpus("naturals_singleton");
  EXPECT_THROW(decide(FiberInstance(HomSpec(n.left_alphabet(), Mode::Monoid, n.quotient(),
                                            n.phi().images()),
                                    HomSpec(n.right_alphabet(), Mode::Monoid, n.quotient(),
                                            n.psi().images()))),
               UnsupportedError);
  const auto lz = testing::corpus("left_zero");
  EXPECT_THROW(decide(lz.with_mode(Mode::Monoid)), UnsupportedError);
}

TEST(Decide, ReasonCodes) {
  EXPECT_EQ(to_string(Reason::AutomatonAcyclic), "AUTOMATON_ACYCLIC");
  EXPECT_EQ(to_string(Reason::SemigroupFiniteQuotient), "SEMIGROUP_FINITE_QUOTIENT");
  EXPECT_EQ(to_string(Reason::FreeCommRankGe2), "FREECOMM_RANK_GE_2");
  EXPECT_EQ(to_string(Reason::NBothImagesLarge), "N_BOTH_IMAGES_LARGE");
}

TEST(GeneratingSetCyclic, Examples) {
  const auto a = Alphabet::make("A", {"a"});
  const auto b = Alphabet::make("B", {"b"});
  EXPECT_EQ(as_strings(generating_set_cyclic(a, b, 2, 1, 1)),
            (Strings{{"", "bb"}, {"a", "b"}, {"aa", ""}}));
  EXPECT_EQ(as_strings(generating_set_cyclic(a, b, 1, 1, 1)), (Strings{{"", "b"}, {"a", ""}}));
  const auto ab = Alphabet::make("A", {"a", "b"});
  const auto c = Alphabet::make("B", {"c"});
  const auto gens = as_strings(generating_set_cyclic(ab, c, 2, 1, 1));
  for (const auto& w : {"aa", "ab", "ba", "bb"}) {
    EXPECT_NE(std::find(gens.begin(), gens.end(), std::pair<std::string, std::string>{w, ""}),
              gens.end())
        << w;
  }
  EXPECT_THROW(generating_set_cyclic(a, b, 4, 2, 1), PreconditionError);
}

TEST(GeneratingSetCyclic, MatchesSetDefinition) {
  const auto a = Alphabet::make("A", {"a", "b"});
  const auto b = Alphabet::make("B", {"c"});
  for (std::size_t n = 1; n <= 5; ++n) {
    for (std::size_t p = 1; p <= n; ++p) {
      for (std::size_t q = 1; q <= n; ++q) {
        if (std::gcd(p, n) != 1 || std::gcd(q, n) != 1) continue;
        std::vector<PairWord> expected;
        for (const auto& u : testing::words_upto(2, n)) {
          for (const auto& v : testing::words_upto(1, n)) {
            if ((p * u.size()) % n != (q * v.size()) % n) continue;
            if (u.size() == v.size() && (u.empty() || u.size() == n)) continue;
            expected.push_back({Word(a, u), Word(b, v)});
          }
        }
        std::sort(expected.begin(), expected.end());
        ASSERT_EQ(generating_set_cyclic(a, b, n, p, q), expected) << n << " " << p << " " << q;
      }
    }
  }
}

TEST(CyclicParameters, DiscreteLogs) {
  const auto z6 = testing::corpus("cyclic_z6");
  const auto params = cyclic_parameters(z6);
  ASSERT_TRUE(params.has_value());
  EXPECT_EQ(params->n, 6U);
  EXPECT_EQ(std::gcd(params->p, params->n), 1U);
  EXPECT_FALSE(cyclic_parameters(testing::corpus("klein_four")).has_value());
  const auto z5 = testing::table_instance(testing::cyclic_table(5), {"a"}, {2}, {"b"}, {3});
  const auto p5 = cyclic_parameters(z5);
  ASSERT_TRUE(p5.has_value());
  // x^p and x^q for the chosen generator x must be the two images.
  const auto& t = z5.quotient().table();
  const auto x = *t.cyclic_generator();
  EXPECT_EQ(t.power(x, p5->p), Element{2});
  EXPECT_EQ(t.power(x, p5->q), Element{3});
}

TEST(GeneratingSetN, Examples) {
  const auto inst = testing::rank1_instance({"a"}, {1}, {"b", "c"}, {1, 2});
  EXPECT_EQ(as_strings(generating_set_N(inst)), (Strings{{"a", "b"}, {"aa", "c"}}));
  // ψ(b) = 2 never reaches 1, so this one is admitted without the
  // surjectivity check.
  const auto q = Quotient::free_commutative(1);
  const FiberInstance two(
      HomSpec(Alphabet::make("A", {"a", "a'"}), Mode::Semigroup, q, {CommVector{1}, CommVector{1}}),
      HomSpec(Alphabet::make("B", {"b"}), Mode::Semigroup, q, {CommVector{2}}), false);
  EXPECT_EQ(as_strings(generating_set_N(two)),
            (Strings{{"a.a", "b"}, {"a.a'", "b"}, {"a'.a", "b"}, {"a'.a'", "b"}}));
  const auto mirrored = testing::rank1_instance({"a", "b"}, {1, 2}, {"c"}, {1});
  EXPECT_EQ(as_strings(generating_set_N(mirrored)), (Strings{{"a", "c"}, {"b", "cc"}}));
  EXPECT_THROW(generating_set_N(testing::corpus("naturals_both_large")), PreconditionError);
}

TEST(Decide, CyclicOrderFourSemigroupGaps) {
  // Over Z/4 with a, b ↦ x every member (aⁱ, bʲ) with i, j ≥ 2 splits off
  // (a, b), so the indecomposables are (a^{4k+1}, b) and (a, b^{4k+1}).
  const auto inst = testing::corpus("cyclic_z4").with_mode(Mode::Semigroup);
  EXPECT_EQ(decide(inst).reason, Reason::SemigroupFiniteQuotient);
  for (std::size_t bound = 1; bound <= 12; ++bound) {
    std::vector<PairWord> expected;
    for (std::size_t len = 1; len <= bound; len += 4) {
      expected.push_back(inst.make_pair(LetterString(len, 0), {0}));
      if (len > 1) expected.push_back(inst.make_pair({0}, LetterString(len, 0)));
    }
    std::sort(expected.begin(), expected.end());
    ASSERT_EQ(indecomposables_upto(inst, bound, bound), expected) << bound;
  }
  EXPECT_EQ(count_indecomposables_upto(inst, 6, 6), count_indecomposables_upto(inst, 8, 8));
}

TEST(Diagnostics, Examples) {
  const auto z2 = diagnostics(testing::corpus("cyclic_z2"));
  EXPECT_EQ(z2.idempotents, std::vector<Element>{0});
  EXPECT_TRUE(z2.semigroup_not_fg);
  const auto lz = diagnostics(testing::corpus("left_zero"));
  EXPECT_FALSE(lz.j_triviality.trivial);
  ASSERT_TRUE(lz.j_triviality.witness.has_value());
  EXPECT_EQ(*lz.j_triviality.witness, (std::pair<Element, Element>{0, 1}));
  const auto z1 = diagnostics(testing::corpus("cyclic_z1"));
  EXPECT_EQ(z1.idempotents.size(), 1U);
  EXPECT_TRUE(z1.semigroup_not_fg);
}

TEST(FactorOver, Examples) {
  const auto inst = testing::corpus("second_example");
  const std::vector<PairWord> gens{inst.pair("a", "a"), inst.pair("b", "b")};
  const auto f = factor_over(inst.pair("abba", "abba"), gens);
  ASSERT_TRUE(f.has_value());
  EXPECT_EQ(f->size(), 4U);
  EXPECT_FALSE(factor_over(inst.pair("c", "ab"), gens).has_value());
  EXPECT_TRUE(factor_over(inst.pair("", ""), gens).has_value());
}

std::size_t max_image_length(const FiberInstance& inst) {
  if (inst.quotient().kind() != QuotientKind::Free) return 1;
  std::size_t m = 1;
  for (const HomSpec* h : {&inst.phi(), &inst.psi()}) {
    for (Letter x = 0; x < h->source()->size(); ++x) m = std::max(m, h->free_image(x).size());
  }
  return m;
}

TEST(DecideProperty, GeneratingSetsGenerateMembers) {
  const EnumerationOptions big{.max_candidates = 100'000'000};
  for (const auto& name : testing::corpus_names()) {
    const auto inst = testing::corpus(name);
    const auto d = decide(inst);
    if (!d.finitely_generated) continue;
    std::size_t bound = 4 * max_image_length(inst);
    // Keep the member list at desk scale for three-letter alphabets.
    if (inst.left_alphabet()->size() >= 3) bound = std::min<std::size_t>(bound, 6);
    for (const auto& g : *d.generating_set) ASSERT_TRUE(inst.member(g)) << name;
    for (const auto& p : enumerate(inst, bound, bound, big)) {
      ASSERT_TRUE(factor_over(p, *d.generating_set).has_value()) << name << " " << p.display();
    }
  }
}

TEST(DecideProperty, WitnessInstancesAreIndecomposable) {
  for (const auto& name : testing::corpus_names()) {
    const auto inst = testing::corpus(name);
    const auto d = decide(inst);
    if (d.finitely_generated) continue;
    ASSERT_EQ(d.witness->instances.size(), kWitnessInstances) << name;
    EXPECT_FALSE(d.witness->description.empty()) << name;
    for (const auto& p : d.witness->instances) {
      ASSERT_TRUE(testing::brute_is_indecomposable(inst, p)) << name << " " << p.display();
    }
  }
}

TEST(DecideProperty, WitnessInstancesAreDistinct) {
  for (const auto& name : testing::corpus_names()) {
    const auto d = decide(testing::corpus(name));
    if (d.finitely_generated) continue;
    auto ws = d.witness->instances;
    std::sort(ws.begin(), ws.end());
    EXPECT_EQ(std::adjacent_find(ws.begin(), ws.end()), ws.end()) << name;
  }
}

TEST(DecideProperty, FreeVerdictMatchesOracleGrowth) {
  const EnumerationOptions big{.max_candidates = 1'000'000'000};
  constexpr std::size_t L = 8;
  for (const auto& name : testing::corpus_names()) {
    const auto inst = testing::corpus(name);
    if (inst.quotient().kind() != QuotientKind::Free) continue;
    const auto small = count_indecomposables_upto(inst, L, L, big);
    const auto large = count_indecomposables_upto(inst, L + 1, L + 1, big);
    if (decide(inst).finitely_generated) {
      EXPECT_EQ(small, large) << name;
    } else {
      EXPECT_LT(small, large) << name;
    }
  }
}

// Decision over a monoid table recomputed from the raw multiplication table.
bool independent_table_verdict(const std::vector<std::vector<Element>>& t,
                               const std::vector<Element>& phi, const std::vector<Element>& psi) {
  const std::size_t n = t.size();
  Element one = n;
  for (Element e = 0; e < n && one == n; ++e) {
    bool ok = true;
    for (Element x = 0; x < n; ++x) ok = ok && t[e][x] == x && t[x][e] == x;
    if (ok) one = e;
  }
  bool group = one < n;
  for (Element x = 0; x < n && group; ++x) {
    bool inv = false;
    for (Element y = 0; y < n; ++y) inv = inv || (t[x][y] == one && t[y][x] == one);
    group = inv;
  }
  bool cyclic = false;
  for (Element g = 0; g < n && group && !cyclic; ++g) {
    std::vector<bool> seen(n, false);
    Element x = one;
    for (std::size_t k = 0; k < n; ++k, x = t[x][g]) seen[x] = true;
    cyclic = std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
  }
  auto singleton = [](std::vector<Element> v) {
    std::sort(v.begin(), v.end());
    return std::unique(v.begin(), v.end()) - v.begin() == 1;
  };
  return group && cyclic && singleton(phi) && singleton(psi);
}

TEST(DecideProperty, FiniteMonoidMatrixIndependentRecheck) {
  struct Case {
    std::vector<std::vector<Element>> table;
    std::vector<Element> phi;
    std::vector<Element> psi;
  };
  std::vector<Case> cases;
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto rows = testing::cyclic_table(n)->rows();
    for (Element g = 0; g < n; ++g) {
      for (Element h = 0; h < n; ++h) {
        cases.push_back({rows, {g}, {h}});
        cases.push_back({rows, {g, h}, {g}});
      }
    }
  }
  const std::vector<std::vector<Element>> klein{
      {0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  cases.push_back({klein, {1, 2}, {1, 2}});
  cases.push_back({klein, {1, 2}, {3, 1}});
  const std::vector<std::vector<Element>> one_e{{0, 1}, {1, 1}};
  cases.push_back({one_e, {1}, {1}});
  cases.push_back({one_e, {0, 1}, {1}});
  const std::vector<std::vector<Element>> chain{{0, 0, 0}, {0, 1, 1}, {0, 1, 2}};
  cases.push_back({chain, {0, 1}, {1, 0}});

  std::size_t checked = 0;
  for (const auto& c : cases) {
    const auto table = std::make_shared<const FiniteAlgebra>(FiniteAlgebra::validate(c.table));
    std::vector<std::string> a, b;
    for (std::size_t i = 0; i < c.phi.size(); ++i) a.push_back("a" + std::to_string(i));
    for (std::size_t i = 0; i < c.psi.size(); ++i) b.push_back("b" + std::to_string(i));
    std::optional<FiberInstance> inst;
    try {
      inst.emplace(testing::table_instance(table, a, c.phi, b, c.psi));
    } catch (const ValidationError&) {
      continue;  // images do not generate the table
    }
    ASSERT_EQ(decide(*inst).finitely_generated, independent_table_verdict(c.table, c.phi, c.psi));
    ++checked;
  }
  EXPECT_GT(checked, 20U);
}

}  // namespace
}  // namespace fiberprod
