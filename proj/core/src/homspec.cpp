#include "fiberprod/homspec.hpp"

#include <algorithm>
#include <numeric>

namespace fiberprod {

std::string to_string(Mode mode) {
  return mode == Mode::Monoid ? "monoid" : "semigroup";
}

Quotient Quotient::free(AlphabetPtr alphabet) {
  if (!alphabet || alphabet->empty()) {
    throw ValidationError("free quotient needs a non-empty alphabet");
  }
  Quotient q;
  q.kind_ = QuotientKind::Free;
  q.alphabet_ = std::move(alphabet);
  return q;
}

Quotient Quotient::finite(std::shared_ptr<const FiniteAlgebra> table) {
  if (!table) throw ValidationError("finite quotient without a table");
  Quotient q;
  q.kind_ = QuotientKind::FiniteTable;
  q.table_ = std::move(table);
  return q;
}

Quotient Quotient::free_commutative(std::size_t rank) {
  if (rank == 0) throw ValidationError("free commutative quotient needs rank >= 1");
  Quotient q;
  q.kind_ = QuotientKind::FreeCommutative;
  q.rank_ = rank;
  return q;
}

const AlphabetPtr& Quotient::alphabet() const {
  if (kind_ != QuotientKind::Free) throw PreconditionError("quotient is not free");
  return alphabet_;
}

const FiniteAlgebra& Quotient::table() const {
  if (kind_ != QuotientKind::FiniteTable) throw PreconditionError("quotient is not a finite table");
  return *table_;
}

std::size_t Quotient::rank() const {
  if (kind_ != QuotientKind::FreeCommutative) {
    throw PreconditionError("quotient is not free commutative");
  }
  return rank_;
}

std::optional<QuotientElement> Quotient::identity() const {
  switch (kind_) {
    case QuotientKind::Free:
      return QuotientElement{Word(alphabet_)};
    case QuotientKind::FiniteTable:
      if (auto e = table_->identity()) return QuotientElement{TableElement{*e}};
      return std::nullopt;
    case QuotientKind::FreeCommutative:
      return QuotientElement{CommVector(rank_, 0)};
  }
  return std::nullopt;
}

QuotientElement Quotient::multiply(const QuotientElement& x, const QuotientElement& y) const {
  switch (kind_) {
    case QuotientKind::Free:
      return concat(std::get<Word>(x), std::get<Word>(y));
    case QuotientKind::FiniteTable:
      return TableElement{
          table_->multiply(std::get<TableElement>(x).index, std::get<TableElement>(y).index)};
    case QuotientKind::FreeCommutative: {
      CommVector out = std::get<CommVector>(x);
      const auto& other = std::get<CommVector>(y);
      for (std::size_t i = 0; i < out.size(); ++i) out[i] += other[i];
      return out;
    }
  }
  throw PreconditionError("unknown quotient kind");
}

void Quotient::check(const QuotientElement& x) const {
  switch (kind_) {
    case QuotientKind::Free: {
      const auto* w = std::get_if<Word>(&x);
      if (!w || !same_alphabet(w->alphabet(), alphabet_)) {
        throw ValidationError("expected a word over the quotient alphabet");
      }
      return;
    }
    case QuotientKind::FiniteTable: {
      const auto* e = std::get_if<TableElement>(&x);
      if (!e || e->index >= table_->size()) {
        throw ValidationError("expected an element of the quotient table");
      }
      return;
    }
    case QuotientKind::FreeCommutative: {
      const auto* v = std::get_if<CommVector>(&x);
      if (!v || v->size() != rank_) {
        throw ValidationError("expected an exponent vector of length " + std::to_string(rank_));
      }
      return;
    }
  }
}

std::string Quotient::display(const QuotientElement& x) const {
  if (const auto* w = std::get_if<Word>(&x)) return w->display();
  if (const auto* e = std::get_if<TableElement>(&x)) {
    return table_ ? table_->name(e->index) : "e" + std::to_string(e->index);
  }
  const auto& v = std::get<CommVector>(x);
  if (v.size() == 1) return std::to_string(v[0]);
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(v[i]);
  }
  return out + ")";
}

bool operator==(const Quotient& lhs, const Quotient& rhs) {
  if (lhs.kind_ != rhs.kind_) return false;
  switch (lhs.kind_) {
    case QuotientKind::Free:
      return same_alphabet(lhs.alphabet_, rhs.alphabet_);
    case QuotientKind::FiniteTable:
      return lhs.table_ == rhs.table_ || *lhs.table_ == *rhs.table_;
    case QuotientKind::FreeCommutative:
      return lhs.rank_ == rhs.rank_;
  }
  return false;
}

HomSpec::HomSpec(AlphabetPtr source, Mode mode, Quotient target,
                 std::vector<QuotientElement> images)
    : source_(std::move(source)),
      mode_(mode),
      target_(std::move(target)),
      images_(std::move(images)) {
  if (!source_ || source_->empty()) {
    throw ValidationError("homomorphism source alphabet must be non-empty");
  }
  if (images_.size() != source_->size()) {
    throw ValidationError("alphabet '" + source_->name() + "' has " +
                          std::to_string(source_->size()) + " letters but " +
                          std::to_string(images_.size()) + " images were given");
  }
  for (std::size_t i = 0; i < images_.size(); ++i) {
    target_.check(images_[i]);
    if (mode_ != Mode::Semigroup) continue;
    const auto& tok = source_->token(static_cast<Letter>(i));
    if (target_.kind() == QuotientKind::Free && std::get<Word>(images_[i]).empty()) {
      throw ValidationError("semigroup mode: image of '" + tok + "' is the empty word");
    }
    if (target_.kind() == QuotientKind::FreeCommutative) {
      const auto& v = std::get<CommVector>(images_[i]);
      if (std::all_of(v.begin(), v.end(), [](auto c) { return c == 0; })) {
        throw ValidationError("semigroup mode: image of '" + tok + "' is the zero vector");
      }
    }
  }
  if (target_.kind() == QuotientKind::Free) {
    for (const auto& img : images_) free_images_.push_back(std::get<Word>(img).letters());
  }
}

QuotientElement HomSpec::apply(const Word& w) const {
  if (!same_alphabet(w.alphabet(), source_)) {
    throw AlphabetMismatch("apply: word is not over alphabet '" + source_->name() + "'");
  }
  return apply(std::span<const Letter>(w.letters()));
}

QuotientElement HomSpec::apply(std::span<const Letter> w) const {
  if (w.empty()) {
    auto id = target_.identity();
    if (mode_ == Mode::Semigroup && target_.kind() != QuotientKind::Free) {
      // A⁺ has no empty word; only the free extension φ' is defined on ε.
      if (!id || target_.kind() == QuotientKind::FreeCommutative) {
        throw PreconditionError("apply: empty word in semigroup mode");
      }
    }
    if (!id) throw PreconditionError("apply: empty word but the quotient has no identity");
    return *id;
  }
  if (target_.kind() == QuotientKind::Free) {
    return Word(target_.alphabet(), apply_free(w));
  }
  QuotientElement acc = images_.at(w[0]);
  for (std::size_t i = 1; i < w.size(); ++i) acc = target_.multiply(acc, images_.at(w[i]));
  return acc;
}

LetterString HomSpec::apply_free(std::span<const Letter> w) const {
  LetterString out;
  for (Letter a : w) {
    const auto& img = free_images_.at(a);
    out.insert(out.end(), img.begin(), img.end());
  }
  return out;
}

Surjectivity HomSpec::is_surjective() const {
  switch (target_.kind()) {
    case QuotientKind::Free: {
      // Every letter of C is indecomposable, hence must occur as an image.
      const auto& c = *target_.alphabet();
      for (Letter x = 0; x < c.size(); ++x) {
        bool hit = std::any_of(free_images_.begin(), free_images_.end(), [&](const auto& img) {
          return img.size() == 1 && img[0] == x;
        });
        if (!hit) {
          return {false, "letter '" + c.token(x) + "' of the quotient is not the image of a letter"};
        }
      }
      return {true, ""};
    }
    case QuotientKind::FiniteTable: {
      std::vector<Element> gens;
      for (const auto& img : images_) gens.push_back(std::get<TableElement>(img).index);
      const auto& table = target_.table();
      auto reached = table.closure(gens, mode_ == Mode::Monoid);
      for (Element x = 0; x < table.size(); ++x) {
        if (!reached[x]) {
          return {false, "element '" + table.name(x) + "' is not generated by the images"};
        }
      }
      return {true, ""};
    }
    case QuotientKind::FreeCommutative: {
      // The unit vectors are indecomposable, hence must be images.
      for (std::size_t i = 0; i < target_.rank(); ++i) {
        CommVector unit(target_.rank(), 0);
        unit[i] = 1;
        bool hit = std::any_of(images_.begin(), images_.end(), [&](const auto& img) {
          return std::get<CommVector>(img) == unit;
        });
        if (!hit) {
          return {false, "generator " + target_.display(unit) + " is not the image of a letter"};
        }
      }
      return {true, ""};
    }
  }
  return {false, "unknown quotient kind"};
}

std::vector<QuotientElement> HomSpec::image_set() const {
  std::vector<QuotientElement> out = images_;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace fiberprod
