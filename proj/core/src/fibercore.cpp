#include "fiberprod/fibercore.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <unordered_map>

namespace fiberprod {

PairWord operator*(const PairWord& p, const PairWord& q) {
  return {concat(p.left, q.left), concat(p.right, q.right)};
}

FiberInstance::FiberInstance(HomSpec phi, HomSpec psi, bool require_surjective)
    : phi_(std::move(phi)), psi_(std::move(psi)), surjectivity_checked_(require_surjective) {
  if (phi_.mode() != psi_.mode()) {
    throw ValidationError("left and right homomorphisms disagree on mode");
  }
  if (!(phi_.target() == psi_.target())) {
    throw ValidationError("left and right homomorphisms have different quotients");
  }
  if (!require_surjective) return;
  if (auto s = phi_.is_surjective(); !s.surjective) {
    throw ValidationError("left homomorphism is not surjective: " + s.reason);
  }
  if (auto s = psi_.is_surjective(); !s.surjective) {
    throw ValidationError("right homomorphism is not surjective: " + s.reason);
  }
}

FiberInstance FiberInstance::with_mode(Mode mode) const {
  return FiberInstance(HomSpec(phi_.source(), mode, phi_.target(), phi_.images()),
                       HomSpec(psi_.source(), mode, psi_.target(), psi_.images()),
                       surjectivity_checked_);
}

PairWord FiberInstance::pair(std::string_view left, std::string_view right) const {
  return {Word::parse(left_alphabet(), left), Word::parse(right_alphabet(), right)};
}

PairWord FiberInstance::make_pair(LetterString left, LetterString right) const {
  return {Word(left_alphabet(), std::move(left)), Word(right_alphabet(), std::move(right))};
}

bool FiberInstance::member(const PairWord& p) const {
  if (!same_alphabet(p.left.alphabet(), left_alphabet()) ||
      !same_alphabet(p.right.alphabet(), right_alphabet())) {
    throw AlphabetMismatch("member: pair is not over the instance alphabets");
  }
  if (mode() == Mode::Semigroup && (p.left.empty() || p.right.empty())) return false;
  return phi_.apply(p.left) == psi_.apply(p.right);
}

// ---------------------------------------------------------------------------
// Bounded enumeration.
//
// Every word of a side is summarised by its image and its split signature:
// for each split point i the pair (image of w[..i], image of w[i..]) plus
// flags recording whether i is the start and/or the end of w. Two member
// words (u, v) decompose exactly when their signatures share a split pair
// whose flags do not make one factor the identity. Words with equal image and
// signature are interchangeable, so pairs are formed between classes.

namespace {

using Key = std::vector<std::uint32_t>;

struct KeyHash {
  std::size_t operator()(const Key& k) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto x : k) {
      h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

// Flag value f ∈ {0..3}: bit 0 = split at start, bit 1 = split at end.
// A signature entry stores the set of flag values seen as a 4-bit mask.
constexpr bool flags_compatible(std::uint32_t mask_l, std::uint32_t mask_r) {
  for (std::uint32_t fl = 0; fl < 4; ++fl) {
    if (!(mask_l & (1U << fl))) continue;
    for (std::uint32_t fr = 0; fr < 4; ++fr) {
      if ((mask_r & (1U << fr)) && (fl & fr) == 0) return true;
    }
  }
  return false;
}

struct Signature {
  std::size_t width = 1;
  Key data;  // sorted entries of width key words followed by one mask word
};

struct WordClass {
  Key image;
  Signature sig;
  std::vector<std::uint32_t> words;
};

struct Side {
  std::vector<LetterString> words;
  std::vector<WordClass> classes;
};

class Profiler {
 public:
  Profiler(const HomSpec& hom, Mode mode) : hom_(hom), mode_(mode) {
    const auto& q = hom.target();
    kind_ = q.kind();
    switch (kind_) {
      case QuotientKind::Free:
        width_ = 1;
        break;
      case QuotientKind::FiniteTable:
        width_ = 2;
        if (mode_ == Mode::Monoid && !q.table().identity()) {
          throw UnsupportedError("monoid mode over a finite table without identity");
        }
        break;
      case QuotientKind::FreeCommutative:
        width_ = q.rank();
        break;
    }
  }

  std::size_t width() const { return width_; }

  // Image key and signature of w.
  std::pair<Key, Signature> profile(const LetterString& w, bool with_signature) const {
    switch (kind_) {
      case QuotientKind::Free:
        return profile_free(w, with_signature);
      case QuotientKind::FiniteTable:
        return profile_table(w, with_signature);
      case QuotientKind::FreeCommutative:
        return profile_comm(w, with_signature);
    }
    return {};
  }

 private:
  std::uint32_t flags(std::size_t i, std::size_t n) const {
    return (i == 0 ? 1U : 0U) | (i == n ? 2U : 0U);
  }

  std::pair<std::size_t, std::size_t> split_range(std::size_t n) const {
    if (mode_ == Mode::Monoid) return {0, n};
    return {1, n == 0 ? 0 : n - 1};
  }

  Signature finish(std::vector<std::pair<Key, std::uint32_t>> entries) const {
    std::sort(entries.begin(), entries.end());
    Signature sig;
    sig.width = width_;
    for (std::size_t i = 0; i < entries.size();) {
      std::uint32_t mask = 0;
      std::size_t j = i;
      while (j < entries.size() && entries[j].first == entries[i].first) {
        mask |= 1U << entries[j].second;
        ++j;
      }
      sig.data.insert(sig.data.end(), entries[i].first.begin(), entries[i].first.end());
      sig.data.push_back(mask);
      i = j;
    }
    return sig;
  }

  std::pair<Key, Signature> profile_free(const LetterString& w, bool with_sig) const {
    Key image;
    std::vector<std::pair<Key, std::uint32_t>> entries;
    auto [lo, hi] = split_range(w.size());
    for (std::size_t i = 0; i <= w.size(); ++i) {
      if (with_sig && i >= lo && i <= hi) {
        entries.push_back({Key{static_cast<std::uint32_t>(image.size())}, flags(i, w.size())});
      }
      if (i < w.size()) {
        const auto& img = hom_.free_image(w[i]);
        image.insert(image.end(), img.begin(), img.end());
      }
    }
    return {std::move(image), with_sig ? finish(std::move(entries)) : Signature{}};
  }

  std::pair<Key, Signature> profile_table(const LetterString& w, bool with_sig) const {
    const auto& t = hom_.target().table();
    const std::size_t n = w.size();
    auto img = [&](Letter a) { return std::get<TableElement>(hom_.image(a)).index; };
    // prefix[i] = image of w[..i], suffix[i] = image of w[i..]; index n marks
    // the identity / "empty" slot.
    const auto none = static_cast<std::uint32_t>(t.size());
    const std::uint32_t id = t.identity() ? static_cast<std::uint32_t>(*t.identity()) : none;
    std::vector<std::uint32_t> prefix(n + 1, id), suffix(n + 1, id);
    for (std::size_t i = 0; i < n; ++i) {
      prefix[i + 1] = i == 0 ? static_cast<std::uint32_t>(img(w[0]))
                             : static_cast<std::uint32_t>(t.multiply(prefix[i], img(w[i])));
    }
    for (std::size_t i = n; i-- > 0;) {
      suffix[i] = i == n - 1 ? static_cast<std::uint32_t>(img(w[i]))
                             : static_cast<std::uint32_t>(t.multiply(img(w[i]), suffix[i + 1]));
    }
    Key image{n == 0 ? id : prefix[n]};
    std::vector<std::pair<Key, std::uint32_t>> entries;
    if (with_sig) {
      auto [lo, hi] = split_range(n);
      for (std::size_t i = lo; i <= hi && i <= n; ++i) {
        entries.push_back({Key{prefix[i], suffix[i]}, flags(i, n)});
      }
    }
    return {std::move(image), with_sig ? finish(std::move(entries)) : Signature{}};
  }

  std::pair<Key, Signature> profile_comm(const LetterString& w, bool with_sig) const {
    Key acc(width_, 0);
    std::vector<std::pair<Key, std::uint32_t>> entries;
    auto [lo, hi] = split_range(w.size());
    for (std::size_t i = 0; i <= w.size(); ++i) {
      if (with_sig && i >= lo && i <= hi) entries.push_back({acc, flags(i, w.size())});
      if (i < w.size()) {
        const auto& v = std::get<CommVector>(hom_.image(w[i]));
        for (std::size_t k = 0; k < width_; ++k) acc[k] += static_cast<std::uint32_t>(v[k]);
      }
    }
    return {std::move(acc), with_sig ? finish(std::move(entries)) : Signature{}};
  }

  const HomSpec& hom_;
  Mode mode_;
  QuotientKind kind_ = QuotientKind::Free;
  std::size_t width_ = 1;
};

bool decomposable(const Signature& l, const Signature& r) {
  const std::size_t stride = l.width + 1;
  std::size_t i = 0, j = 0;
  while (i < l.data.size() && j < r.data.size()) {
    auto cmp = std::lexicographical_compare_three_way(
        l.data.begin() + static_cast<std::ptrdiff_t>(i),
        l.data.begin() + static_cast<std::ptrdiff_t>(i + l.width),
        r.data.begin() + static_cast<std::ptrdiff_t>(j),
        r.data.begin() + static_cast<std::ptrdiff_t>(j + r.width));
    if (cmp < 0) {
      i += stride;
    } else if (cmp > 0) {
      j += stride;
    } else {
      if (flags_compatible(l.data[i + l.width], r.data[j + r.width])) return true;
      i += stride;
      j += stride;
    }
  }
  return false;
}

void check_guard(const FiberInstance& inst, std::size_t max_left, std::size_t max_right,
                 const EnumerationOptions& opts) {
  if (inst.mode() == Mode::Semigroup && (max_left == 0 || max_right == 0)) {
    throw PreconditionError("semigroup mode enumeration needs bounds >= 1");
  }
  const long double candidates =
      std::pow(static_cast<long double>(inst.left_alphabet()->size()),
               static_cast<long double>(max_left)) *
      std::pow(static_cast<long double>(inst.right_alphabet()->size()),
               static_cast<long double>(max_right));
  if (candidates > static_cast<long double>(opts.max_candidates)) {
    throw GuardExceeded("enumeration bound (" + std::to_string(max_left) + "," +
                        std::to_string(max_right) + ") gives about " +
                        std::to_string(static_cast<double>(candidates)) +
                        " candidate pairs; cap is " + std::to_string(opts.max_candidates));
  }
}

std::vector<LetterString> all_words(std::size_t alphabet_size, std::size_t min_len,
                                    std::size_t max_len) {
  std::vector<LetterString> out;
  LetterString current;
  std::function<void()> rec = [&] {
    if (current.size() >= min_len) out.push_back(current);
    if (current.size() == max_len) return;
    for (Letter a = 0; a < alphabet_size; ++a) {
      current.push_back(a);
      rec();
      current.pop_back();
    }
  };
  rec();
  return out;
}

Side build_side(const HomSpec& hom, Mode mode, std::size_t max_len, bool with_sig) {
  Side side;
  const std::size_t min_len = mode == Mode::Semigroup ? 1 : 0;
  side.words = all_words(hom.source()->size(), min_len, max_len);
  Profiler profiler(hom, mode);
  std::unordered_map<Key, std::uint32_t, KeyHash> index;
  for (std::uint32_t w = 0; w < side.words.size(); ++w) {
    auto [image, sig] = profiler.profile(side.words[w], with_sig);
    Key class_key;
    class_key.reserve(image.size() + sig.data.size() + 1);
    class_key.push_back(static_cast<std::uint32_t>(image.size()));
    class_key.insert(class_key.end(), image.begin(), image.end());
    class_key.insert(class_key.end(), sig.data.begin(), sig.data.end());
    auto [it, inserted] = index.try_emplace(std::move(class_key),
                                            static_cast<std::uint32_t>(side.classes.size()));
    if (inserted) side.classes.push_back({std::move(image), std::move(sig), {}});
    side.classes[it->second].words.push_back(w);
  }
  return side;
}

enum class Want { Members, Indecomposables };

// Calls visit(left_class, right_class) for every pair of classes with equal
// image, filtered per want.
template <typename Visit>
void join(const FiberInstance& inst, std::size_t max_left, std::size_t max_right,
          const EnumerationOptions& opts, Want want, const Side*& out_left,
          const Side*& out_right, Side& left, Side& right, Visit&& visit) {
  check_guard(inst, max_left, max_right, opts);
  const bool with_sig = want == Want::Indecomposables;
  left = build_side(inst.phi(), inst.mode(), max_left, with_sig);
  right = build_side(inst.psi(), inst.mode(), max_right, with_sig);
  out_left = &left;
  out_right = &right;
  std::unordered_map<Key, std::vector<std::uint32_t>, KeyHash> by_image;
  for (std::uint32_t c = 0; c < left.classes.size(); ++c) {
    by_image[left.classes[c].image].push_back(c);
  }
  for (std::uint32_t rc = 0; rc < right.classes.size(); ++rc) {
    auto it = by_image.find(right.classes[rc].image);
    if (it == by_image.end()) continue;
    for (auto lc : it->second) {
      if (want == Want::Indecomposables &&
          decomposable(left.classes[lc].sig, right.classes[rc].sig)) {
        continue;
      }
      visit(lc, rc);
    }
  }
}

std::vector<PairWord> collect(const FiberInstance& inst, std::size_t max_left,
                              std::size_t max_right, const EnumerationOptions& opts, Want want) {
  Side left, right;
  const Side* lp = nullptr;
  const Side* rp = nullptr;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> raw;
  join(inst, max_left, max_right, opts, want, lp, rp, left, right,
       [&](std::uint32_t lc, std::uint32_t rc) {
         for (auto lw : left.classes[lc].words) {
           for (auto rw : right.classes[rc].words) {
             if (want == Want::Indecomposables && left.words[lw].empty() &&
                 right.words[rw].empty()) {
               continue;
             }
             raw.emplace_back(lw, rw);
           }
         }
       });
  std::sort(raw.begin(), raw.end(), [&](const auto& x, const auto& y) {
    if (left.words[x.first] != left.words[y.first]) return left.words[x.first] < left.words[y.first];
    return right.words[x.second] < right.words[y.second];
  });
  std::vector<PairWord> out;
  out.reserve(raw.size());
  for (auto [lw, rw] : raw) out.push_back(inst.make_pair(left.words[lw], right.words[rw]));
  return out;
}

}  // namespace

std::vector<PairWord> enumerate(const FiberInstance& inst, std::size_t max_left,
                                std::size_t max_right, const EnumerationOptions& opts) {
  return collect(inst, max_left, max_right, opts, Want::Members);
}

std::vector<PairWord> indecomposables_upto(const FiberInstance& inst, std::size_t max_left,
                                           std::size_t max_right,
                                           const EnumerationOptions& opts) {
  return collect(inst, max_left, max_right, opts, Want::Indecomposables);
}

std::uint64_t count_indecomposables_upto(const FiberInstance& inst, std::size_t max_left,
                                         std::size_t max_right,
                                         const EnumerationOptions& opts) {
  Side left, right;
  const Side* lp = nullptr;
  const Side* rp = nullptr;
  std::uint64_t count = 0;
  join(inst, max_left, max_right, opts, Want::Indecomposables, lp, rp, left, right,
       [&](std::uint32_t lc, std::uint32_t rc) {
         const auto& l = left.classes[lc];
         const auto& r = right.classes[rc];
         std::uint64_t n = static_cast<std::uint64_t>(l.words.size()) * r.words.size();
         // The identity pair is never indecomposable; it sits alone in its class.
         if (left.words[l.words.front()].empty() && right.words[r.words.front()].empty()) {
           n -= 1;
         }
         count += n;
       });
  return count;
}

// ---------------------------------------------------------------------------
// Direct split search, independent of the signature machinery above.

std::optional<std::pair<PairWord, PairWord>> find_split(const FiberInstance& inst,
                                                        const PairWord& p) {
  if (!inst.member(p)) return std::nullopt;
  const std::size_t nu = p.left.size();
  const std::size_t nv = p.right.size();
  const bool monoid = inst.mode() == Mode::Monoid;
  for (std::size_t i = 0; i <= nu; ++i) {
    for (std::size_t j = 0; j <= nv; ++j) {
      if (monoid) {
        if ((i == 0 && j == 0) || (i == nu && j == nv)) continue;
      } else if (i == 0 || i == nu || j == 0 || j == nv) {
        continue;
      }
      PairWord first{p.left.prefix(i), p.right.prefix(j)};
      PairWord second{p.left.suffix_from(i), p.right.suffix_from(j)};
      if (inst.member(first) && inst.member(second)) return std::make_pair(first, second);
    }
  }
  return std::nullopt;
}

bool is_indecomposable(const FiberInstance& inst, const PairWord& p) {
  if (p.is_identity() || !inst.member(p)) return false;
  return !find_split(inst, p).has_value();
}

std::vector<PairWord> factor_into_indecomposables(const FiberInstance& inst, const PairWord& p) {
  if (!inst.member(p)) {
    throw PreconditionError("factor_into_indecomposables: " + p.display() + " is not a member");
  }
  if (p.is_identity()) return {};
  auto split = find_split(inst, p);
  if (!split) return {p};
  auto out = factor_into_indecomposables(inst, split->first);
  auto rest = factor_into_indecomposables(inst, split->second);
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

// ---------------------------------------------------------------------------
// Letter sets.

LetterSet::LetterSet(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), bits_(rows * cols, false) {
  if (rows == 0 || cols == 0) throw ValidationError("letter set needs non-empty alphabets");
}

LetterSet::LetterSet(const std::vector<std::vector<int>>& matrix)
    : LetterSet(matrix.size(), matrix.empty() ? 0 : matrix.front().size()) {
  for (std::size_t i = 0; i < rows_; ++i) {
    if (matrix[i].size() != cols_) throw ValidationError("letter set matrix is ragged");
    for (std::size_t j = 0; j < cols_; ++j) {
      if (matrix[i][j] != 0 && matrix[i][j] != 1) {
        throw ValidationError("letter set matrix entries must be 0 or 1");
      }
      set(i, j, matrix[i][j] == 1);
    }
  }
}

LetterSet LetterSet::from_mask(std::size_t rows, std::size_t cols, std::uint64_t mask) {
  LetterSet x(rows, cols);
  for (std::size_t k = 0; k < rows * cols; ++k) x.bits_[k] = ((mask >> k) & 1U) != 0;
  return x;
}

std::vector<std::pair<std::size_t, std::size_t>> LetterSet::pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (at(i, j)) out.emplace_back(i, j);
    }
  }
  return out;
}

bool is_subdirect_letterset(const LetterSet& x) {
  for (std::size_t i = 0; i < x.rows(); ++i) {
    bool any = false;
    for (std::size_t j = 0; j < x.cols() && !any; ++j) any = x.at(i, j);
    if (!any) return false;
  }
  for (std::size_t j = 0; j < x.cols(); ++j) {
    bool any = false;
    for (std::size_t i = 0; i < x.rows() && !any; ++i) any = x.at(i, j);
    if (!any) return false;
  }
  return true;
}

bool is_fiber_letterset(const LetterSet& x) {
  if (!is_subdirect_letterset(x)) throw PreconditionError("letter set is not subdirect");
  for (std::size_t i = 0; i < x.rows(); ++i) {
    for (std::size_t i2 = i + 1; i2 < x.rows(); ++i2) {
      for (std::size_t j = 0; j < x.cols(); ++j) {
        for (std::size_t j2 = j + 1; j2 < x.cols(); ++j2) {
          const int ones = x.at(i, j) + x.at(i, j2) + x.at(i2, j) + x.at(i2, j2);
          if (ones == 3) return false;
        }
      }
    }
  }
  return true;
}

bool is_fiber_letterset_by_kernels(const LetterSet& x) {
  if (!is_subdirect_letterset(x)) throw PreconditionError("letter set is not subdirect");
  const auto elems = x.pairs();
  const std::size_t n = elems.size();
  // ker π_A relates pairs in the same row, ker π_B pairs in the same column.
  auto same_row = [&](std::size_t p, std::size_t q) { return elems[p].first == elems[q].first; };
  auto same_col = [&](std::size_t p, std::size_t q) { return elems[p].second == elems[q].second; };
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t r = 0; r < n; ++r) {
      bool ab = false, ba = false;
      for (std::size_t q = 0; q < n; ++q) {
        ab = ab || (same_row(p, q) && same_col(q, r));
        ba = ba || (same_col(p, q) && same_row(q, r));
      }
      if (ab != ba) return false;
    }
  }
  return true;
}

std::size_t letterset_blocks(const LetterSet& x) {
  // Union-find over rows (0..m-1) and columns (m..m+n-1).
  std::vector<std::size_t> parent(x.rows() + x.cols());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = i;
  std::function<std::size_t(std::size_t)> find = [&](std::size_t a) {
    return parent[a] == a ? a : parent[a] = find(parent[a]);
  };
  for (auto [i, j] : x.pairs()) parent[find(i)] = find(x.rows() + j);
  std::size_t blocks = 0;
  for (std::size_t i = 0; i < parent.size(); ++i) blocks += find(i) == i ? 1 : 0;
  return blocks;
}

}  // namespace fiberprod
