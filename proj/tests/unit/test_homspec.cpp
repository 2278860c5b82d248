#include <gtest/gtest.h>

#include <set>

#include "fiberprod/homspec.hpp"
#include "support/fixtures.hpp"

namespace fiberprod {
namespace {

const auto kXY = Alphabet::make("C", {"x", "y"});

HomSpec second_phi() {
  return HomSpec(Alphabet::make("A", {"a", "b", "c"}), Mode::Monoid, Quotient::free(kXY),
                 {Word::parse(kXY, "x"), Word::parse(kXY, "y"), Word::parse(kXY, "xy")});
}

HomSpec rank1(std::vector<std::uint64_t> weights) {
  std::vector<std::string> tokens;
  std::vector<QuotientElement> images;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    tokens.push_back(std::string(1, static_cast<char>('b' + i)));
    images.push_back(CommVector{weights[i]});
  }
  return HomSpec(Alphabet::make("B", tokens), Mode::Semigroup, Quotient::free_commutative(1),
                 images);
}

TEST(HomSpec, ApplyExamples) {
  const auto phi = second_phi();
  EXPECT_EQ(std::get<Word>(phi.apply(Word::parse(phi.source(), "cb"))).str(), "xyy");
  EXPECT_EQ(std::get<Word>(phi.apply(Word::parse(phi.source(), ""))).str(), "");
  const auto psi = rank1({1, 2});
  EXPECT_EQ(std::get<CommVector>(psi.apply(Word::parse(psi.source(), "cbb"))), CommVector{4});
}

TEST(HomSpec, ApplyErrors) {
  const auto psi = rank1({1, 2});
  EXPECT_THROW(psi.apply(Word(psi.source())), PreconditionError);
  const auto phi = second_phi();
  EXPECT_THROW(phi.apply(Word::parse(psi.source(), "b")), AlphabetMismatch);
}

TEST(HomSpec, SurjectivityExamples) {
  EXPECT_TRUE(second_phi().is_surjective().surjective);
  const auto x = Alphabet::make("C", {"x"});
  const HomSpec xx(Alphabet::make("A", {"a"}), Mode::Monoid, Quotient::free(x),
                   {Word::parse(x, "xx")});
  const auto s = xx.is_surjective();
  EXPECT_FALSE(s.surjective);
  EXPECT_FALSE(s.reason.empty());
  EXPECT_TRUE(rank1({1, 2}).is_surjective().surjective);
  EXPECT_FALSE(rank1({2, 3}).is_surjective().surjective);
}

TEST(HomSpec, SurjectivityOverTables) {
  const auto z4 = testing::cyclic_table(4);
  const auto q = Quotient::finite(z4);
  const auto a = Alphabet::make("A", {"a"});
  EXPECT_TRUE(HomSpec(a, Mode::Monoid, q, {TableElement{1}}).is_surjective().surjective);
  EXPECT_TRUE(HomSpec(a, Mode::Monoid, q, {TableElement{3}}).is_surjective().surjective);
  EXPECT_FALSE(HomSpec(a, Mode::Monoid, q, {TableElement{2}}).is_surjective().surjective);
}

TEST(HomSpec, ImageSetExamples) {
  const auto x = Alphabet::make("C", {"x"});
  const HomSpec same(Alphabet::make("A", {"a", "b"}), Mode::Monoid, Quotient::free(x),
                     {Word::parse(x, "x"), Word::parse(x, "x")});
  EXPECT_EQ(same.image_set().size(), 1U);
  const HomSpec two(Alphabet::make("A", {"a", "b"}), Mode::Monoid, Quotient::free(kXY),
                    {Word::parse(kXY, "x"), Word::parse(kXY, "y")});
  EXPECT_EQ(two.image_set().size(), 2U);
  const HomSpec z2(Alphabet::make("A", {"a", "b"}), Mode::Monoid,
                   Quotient::finite(testing::cyclic_table(2)), {TableElement{1}, TableElement{1}});
  EXPECT_EQ(z2.image_set().size(), 1U);
}

TEST(HomSpec, ValidationErrors) {
  const auto x = Alphabet::make("C", {"x"});
  EXPECT_THROW(HomSpec(Alphabet::make("A", {"a"}), Mode::Semigroup, Quotient::free(x),
                       {Word(x)}),
               ValidationError);
  EXPECT_THROW(HomSpec(Alphabet::make("A", {"a"}), Mode::Semigroup,
                       Quotient::free_commutative(1), {CommVector{0}}),
               ValidationError);
  EXPECT_THROW(HomSpec(Alphabet::make("A", {"a", "b"}), Mode::Monoid, Quotient::free(x),
                       {Word::parse(x, "x")}),
               ValidationError);
  EXPECT_THROW(HomSpec(Alphabet::make("A", {"a"}), Mode::Monoid,
                       Quotient::free_commutative(2), {CommVector{1}}),
               ValidationError);
}

// Products of images, computed through the quotient rather than apply.
QuotientElement fold(const HomSpec& h, const LetterString& w) {
  QuotientElement acc = h.image(w.front());
  for (std::size_t i = 1; i < w.size(); ++i) acc = h.target().multiply(acc, h.image(w[i]));
  return acc;
}

TEST(HomSpecProperty, ApplyIsAHomomorphism) {
  for (const auto& name : testing::corpus_names()) {
    const auto inst = testing::corpus(name);
    for (const HomSpec* h : {&inst.phi(), &inst.psi()}) {
      const bool semi = h->mode() == Mode::Semigroup;
      const auto words = testing::words_upto(h->source()->size(), 3, semi);
      for (const auto& u : words) {
        const auto hu = h->apply(u);
        if (!u.empty()) ASSERT_EQ(hu, fold(*h, u)) << name;
        for (const auto& v : words) {
          ASSERT_EQ(h->apply(letters::concat(u, v)), h->target().multiply(hu, h->apply(v)))
              << name;
        }
      }
    }
  }
}

// Closure of the image set inside a bounded window of the quotient.
bool brute_surjective(const HomSpec& h) {
  const auto& q = h.target();
  std::set<QuotientElement> reached(h.images().begin(), h.images().end());
  if (h.mode() == Mode::Monoid && q.identity()) reached.insert(*q.identity());
  auto small = [&](const QuotientElement& e) {
    switch (q.kind()) {
      case QuotientKind::Free:
        return std::get<Word>(e).size() <= 4;
      case QuotientKind::FreeCommutative: {
        std::uint64_t s = 0;
        for (auto c : std::get<CommVector>(e)) s += c;
        return s <= 4;
      }
      case QuotientKind::FiniteTable:
        return true;
    }
    return false;
  };
  for (bool grew = true; grew;) {
    grew = false;
    const std::vector<QuotientElement> now(reached.begin(), reached.end());
    for (const auto& x : now) {
      for (const auto& img : h.images()) {
        auto y = q.multiply(x, img);
        if (small(y) && reached.insert(y).second) grew = true;
      }
    }
  }
  switch (q.kind()) {
    case QuotientKind::Free:
      for (Letter c = 0; c < q.alphabet()->size(); ++c) {
        if (!reached.contains(Word(q.alphabet(), {c}))) return false;
      }
      return true;
    case QuotientKind::FreeCommutative:
      for (std::size_t i = 0; i < q.rank(); ++i) {
        CommVector e(q.rank(), 0);
        e[i] = 1;
        if (!reached.contains(e)) return false;
      }
      return true;
    case QuotientKind::FiniteTable:
      for (Element x = 0; x < q.table().size(); ++x) {
        if (!reached.contains(TableElement{x})) {
          // The identity of a monoid quotient is the empty product.
          if (!(h.mode() == Mode::Monoid && q.table().identity() == x)) return false;
        }
      }
      return true;
  }
  return false;
}

TEST(HomSpecProperty, SurjectivityAgreesWithClosure) {
  const auto x = Alphabet::make("C", {"x", "y"});
  std::vector<HomSpec> specs;
  for (const auto& name : testing::corpus_names()) {
    const auto inst = testing::corpus(name);
    specs.push_back(inst.phi());
    specs.push_back(inst.psi());
  }
  for (const std::string img : {"x", "xy", "yx", "xx", "y"}) {
    specs.emplace_back(Alphabet::make("A", {"a", "b"}), Mode::Monoid, Quotient::free(x),
                       std::vector<QuotientElement>{Word::parse(x, img), Word::parse(x, "xy")});
  }
  for (std::uint64_t w1 = 1; w1 <= 3; ++w1) {
    for (std::uint64_t w2 = 1; w2 <= 3; ++w2) specs.push_back(rank1({w1, w2}));
  }
  for (std::size_t n = 2; n <= 6; ++n) {
    for (Element g = 0; g < n; ++g) {
      specs.emplace_back(Alphabet::make("A", {"a"}), Mode::Monoid,
                         Quotient::finite(testing::cyclic_table(n)),
                         std::vector<QuotientElement>{TableElement{g}});
    }
  }
  for (const auto& h : specs) {
    ASSERT_EQ(h.is_surjective().surjective, brute_surjective(h));
  }
}

}  // namespace
}  // namespace fiberprod
