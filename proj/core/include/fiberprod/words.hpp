#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace fiberprod {

using Letter = std::uint32_t;
using LetterString = std::vector<Letter>;

/// A finite ordered set of letter tokens. Tokens are arbitrary non-empty
/// strings, so "a", "a'" and "x1" can live in the same alphabet.
class Alphabet {
 public:
  Alphabet(std::string name, std::vector<std::string> tokens);

  static std::shared_ptr<const Alphabet> make(std::string name,
                                              std::vector<std::string> tokens);

  const std::string& name() const noexcept { return name_; }
  std::size_t size() const noexcept { return tokens_.size(); }
  bool empty() const noexcept { return tokens_.empty(); }
  const std::vector<std::string>& tokens() const noexcept { return tokens_; }
  const std::string& token(Letter letter) const;
  std::optional<Letter> find(std::string_view token) const;

  /// True when every token is a single character; words then render without
  /// separators ("xyy"), otherwise tokens are joined with '.' ("a.a'").
  bool compact() const noexcept { return compact_; }

  std::string render(std::span<const Letter> letters) const;
  LetterString parse(std::string_view text) const;

  bool same_letters(const Alphabet& other) const noexcept {
    return tokens_ == other.tokens_;
  }

 private:
  std::string name_;
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, Letter> index_;
  bool compact_ = true;
};

using AlphabetPtr = std::shared_ptr<const Alphabet>;

bool same_alphabet(const AlphabetPtr& lhs, const AlphabetPtr& rhs) noexcept;

/// A finite word over an alphabet, stored as letter indices.
class Word {
 public:
  Word() = default;
  explicit Word(AlphabetPtr alphabet, LetterString letters = {});

  static Word parse(AlphabetPtr alphabet, std::string_view text);

  const AlphabetPtr& alphabet() const noexcept { return alphabet_; }
  const LetterString& letters() const noexcept { return letters_; }
  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }

  Word prefix(std::size_t length) const;
  Word suffix_from(std::size_t start) const;

  /// Rendering used in data files: the empty word is "".
  std::string str() const;
  /// Rendering used in reports: the empty word is "ε".
  std::string display() const;

  friend bool operator==(const Word& lhs, const Word& rhs) noexcept;
  friend std::strong_ordering operator<=>(const Word& lhs,
                                          const Word& rhs) noexcept;

 private:
  AlphabetPtr alphabet_;
  LetterString letters_;
};

Word concat(const Word& u, const Word& v);

/// u⁻¹w: the word w with prefix u removed, if u is a prefix of w.
std::optional<Word> strip_prefix(const Word& u, const Word& w);
/// w v⁻¹: the word w with suffix v removed, if v is a suffix of w.
std::optional<Word> strip_suffix(const Word& v, const Word& w);

bool is_prefix(const Word& u, const Word& w);
bool is_proper_prefix(const Word& u, const Word& w);
bool is_suffix(const Word& v, const Word& w);
bool is_proper_suffix(const Word& v, const Word& w);

// Letter-level helpers shared by the automaton and oracle hot paths.
namespace letters {

inline bool is_prefix(std::span<const Letter> u, std::span<const Letter> w) {
  return u.size() <= w.size() && std::equal(u.begin(), u.end(), w.begin());
}

inline bool is_suffix(std::span<const Letter> v, std::span<const Letter> w) {
  return v.size() <= w.size() &&
         std::equal(v.begin(), v.end(), w.end() - static_cast<std::ptrdiff_t>(v.size()));
}

inline LetterString concat(std::span<const Letter> u, std::span<const Letter> v) {
  LetterString out;
  out.reserve(u.size() + v.size());
  out.insert(out.end(), u.begin(), u.end());
  out.insert(out.end(), v.begin(), v.end());
  return out;
}

inline LetterString drop(std::span<const Letter> w, std::size_t count) {
  return LetterString(w.begin() + static_cast<std::ptrdiff_t>(count), w.end());
}

}  // namespace letters

}  // namespace fiberprod
