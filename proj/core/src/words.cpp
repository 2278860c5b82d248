#include "fiberprod/words.hpp"

#include <algorithm>
#include <unordered_set>

#include "fiberprod/error.hpp"

namespace fiberprod {

namespace {

// Number of UTF-8 code points in s.
std::size_t code_points(std::string_view s) {
  return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char c) {
    return (static_cast<unsigned char>(c) & 0xC0U) != 0x80U;
  }));
}

// Splits s into UTF-8 code points.
std::vector<std::string_view> split_code_points(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 1; i <= s.size(); ++i) {
    if (i == s.size() || (static_cast<unsigned char>(s[i]) & 0xC0U) != 0x80U) {
      out.push_back(s.substr(start, i - start));
      start = i;
    }
  }
  return out;
}

}  // namespace

Alphabet::Alphabet(std::string name, std::vector<std::string> tokens)
    : name_(std::move(name)), tokens_(std::move(tokens)) {
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    const auto& t = tokens_[i];
    if (t.empty()) {
      throw ValidationError("alphabet '" + name_ + "': empty letter token");
    }
    if (t.find_first_of(" \t\n\".,()") != std::string::npos || t == "ε") {
      throw ValidationError("alphabet '" + name_ + "': reserved character in token '" +
                            t + "'");
    }
    if (!index_.emplace(t, static_cast<Letter>(i)).second) {
      throw ValidationError("alphabet '" + name_ + "': duplicate letter '" + t + "'");
    }
    compact_ = compact_ && code_points(t) == 1;
  }
}

std::shared_ptr<const Alphabet> Alphabet::make(std::string name,
                                               std::vector<std::string> tokens) {
  return std::make_shared<const Alphabet>(std::move(name), std::move(tokens));
}

const std::string& Alphabet::token(Letter letter) const {
  if (letter >= tokens_.size()) {
    throw ValidationError("alphabet '" + name_ + "': letter index " +
                          std::to_string(letter) + " out of range");
  }
  return tokens_[letter];
}

std::optional<Letter> Alphabet::find(std::string_view token) const {
  auto it = index_.find(std::string(token));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string Alphabet::render(std::span<const Letter> letters) const {
  std::string out;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (i > 0 && !compact_) out += '.';
    out += token(letters[i]);
  }
  return out;
}

LetterString Alphabet::parse(std::string_view text) const {
  LetterString out;
  if (text.empty() || text == "ε") return out;
  auto lookup = [&](std::string_view tok) {
    auto letter = find(tok);
    if (!letter) {
      throw ValidationError("alphabet '" + name_ + "': unknown letter '" +
                            std::string(tok) + "' in word '" + std::string(text) + "'");
    }
    out.push_back(*letter);
  };
  if (compact_ && text.find('.') == std::string_view::npos) {
    for (auto cp : split_code_points(text)) lookup(cp);
    return out;
  }
  std::size_t start = 0;
  while (start <= text.size()) {
    auto dot = text.find('.', start);
    if (dot == std::string_view::npos) dot = text.size();
    lookup(text.substr(start, dot - start));
    start = dot + 1;
  }
  return out;
}

bool same_alphabet(const AlphabetPtr& lhs, const AlphabetPtr& rhs) noexcept {
  if (lhs == rhs) return true;
  if (!lhs || !rhs) return false;
  return lhs->same_letters(*rhs);
}

Word::Word(AlphabetPtr alphabet, LetterString letters)
    : alphabet_(std::move(alphabet)), letters_(std::move(letters)) {
  if (!alphabet_) throw ValidationError("word without alphabet");
  for (Letter l : letters_) {
    if (l >= alphabet_->size()) {
      throw ValidationError("letter index " + std::to_string(l) +
                            " out of range for alphabet '" + alphabet_->name() + "'");
    }
  }
}

Word Word::parse(AlphabetPtr alphabet, std::string_view text) {
  auto letters = alphabet->parse(text);
  return Word(std::move(alphabet), std::move(letters));
}

Word Word::prefix(std::size_t length) const {
  length = std::min(length, letters_.size());
  return Word(alphabet_, LetterString(letters_.begin(),
                                      letters_.begin() + static_cast<std::ptrdiff_t>(length)));
}

Word Word::suffix_from(std::size_t start) const {
  start = std::min(start, letters_.size());
  return Word(alphabet_, letters::drop(letters_, start));
}

std::string Word::str() const { return alphabet_ ? alphabet_->render(letters_) : ""; }

std::string Word::display() const { return letters_.empty() ? "ε" : str(); }

bool operator==(const Word& lhs, const Word& rhs) noexcept {
  return lhs.letters_ == rhs.letters_ && same_alphabet(lhs.alphabet_, rhs.alphabet_);
}

std::strong_ordering operator<=>(const Word& lhs, const Word& rhs) noexcept {
  if (auto c = std::lexicographical_compare_three_way(
          lhs.letters_.begin(), lhs.letters_.end(), rhs.letters_.begin(),
          rhs.letters_.end());
      c != 0) {
    return c;
  }
  if (same_alphabet(lhs.alphabet_, rhs.alphabet_)) return std::strong_ordering::equal;
  const auto& lt = lhs.alphabet_ ? lhs.alphabet_->tokens() : std::vector<std::string>{};
  const auto& rt = rhs.alphabet_ ? rhs.alphabet_->tokens() : std::vector<std::string>{};
  return lt <=> rt;
}

namespace {

void require_same(const Word& u, const Word& w, const char* op) {
  if (!same_alphabet(u.alphabet(), w.alphabet())) {
    throw AlphabetMismatch(std::string(op) + ": words over different alphabets");
  }
}

}  // namespace

Word concat(const Word& u, const Word& v) {
  require_same(u, v, "concat");
  return Word(u.alphabet(), letters::concat(u.letters(), v.letters()));
}

std::optional<Word> strip_prefix(const Word& u, const Word& w) {
  require_same(u, w, "strip_prefix");
  if (!letters::is_prefix(u.letters(), w.letters())) return std::nullopt;
  return w.suffix_from(u.size());
}

std::optional<Word> strip_suffix(const Word& v, const Word& w) {
  require_same(v, w, "strip_suffix");
  if (!letters::is_suffix(v.letters(), w.letters())) return std::nullopt;
  return w.prefix(w.size() - v.size());
}

bool is_prefix(const Word& u, const Word& w) {
  require_same(u, w, "is_prefix");
  return letters::is_prefix(u.letters(), w.letters());
}

bool is_proper_prefix(const Word& u, const Word& w) {
  return is_prefix(u, w) && u.size() != w.size();
}

bool is_suffix(const Word& v, const Word& w) {
  require_same(v, w, "is_suffix");
  return letters::is_suffix(v.letters(), w.letters());
}

bool is_proper_suffix(const Word& v, const Word& w) {
  return is_suffix(v, w) && v.size() != w.size();
}

}  // namespace fiberprod
