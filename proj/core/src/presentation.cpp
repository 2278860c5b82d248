#include "fiberprod/presentation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace fiberprod {

std::string to_string(RelationFamily family) {
  switch (family) {
    case RelationFamily::R1:
      return "R1";
    case RelationFamily::R2:
      return "R2";
    case RelationFamily::R3:
      return "R3";
    case RelationFamily::R4:
      return "R4";
  }
  return "R?";
}

namespace {

std::vector<LetterString> words_of_length(std::size_t alphabet, std::size_t len) {
  std::vector<LetterString> out{LetterString{}};
  for (std::size_t i = 0; i < len; ++i) {
    std::vector<LetterString> next;
    next.reserve(out.size() * alphabet);
    for (const auto& w : out) {
      for (Letter x = 0; x < alphabet; ++x) {
        next.push_back(w);
        next.back().push_back(x);
      }
    }
    out = std::move(next);
  }
  return out;
}

LetterString join(const LetterString& x, const LetterString& y) {
  LetterString out = x;
  out.insert(out.end(), y.begin(), y.end());
  return out;
}

LetterString slice(const LetterString& w, std::size_t from, std::size_t to) {
  return LetterString(w.begin() + static_cast<std::ptrdiff_t>(from),
                      w.begin() + static_cast<std::ptrdiff_t>(to));
}

}  // namespace

Presentation Presentation::build(AlphabetPtr a, AlphabetPtr b, std::size_t n, std::size_t p,
                                 std::size_t q, std::size_t max_symbols) {
  if (!a || !b || a->empty() || b->empty()) {
    throw PreconditionError("presentation needs non-empty alphabets");
  }
  if (n == 0 || std::gcd(p, n) != 1 || std::gcd(q, n) != 1) {
    throw PreconditionError("presentation needs n >= 1 and gcd(p, n) = gcd(q, n) = 1");
  }
  auto congruent = [&](std::size_t i, std::size_t j) { return (p * i) % n == (q * j) % n; };
  long double expected = 0;
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = 0; j <= n; ++j) {
      if (!congruent(i, j) || (i == n && j == n) || (i == 0 && j == 0)) continue;
      expected += std::pow(static_cast<long double>(a->size()), static_cast<long double>(i)) *
                  std::pow(static_cast<long double>(b->size()), static_cast<long double>(j));
    }
  }
  if (expected > static_cast<long double>(max_symbols)) {
    throw GuardExceeded("presentation would have " + std::to_string(static_cast<double>(expected)) +
                        " symbols; limit is " + std::to_string(max_symbols));
  }

  Presentation pres;
  pres.a_ = std::move(a);
  pres.b_ = std::move(b);
  pres.n_ = n;
  pres.p_ = p;
  pres.q_ = q;

  std::vector<std::vector<LetterString>> us(n + 1), vs(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    us[i] = words_of_length(pres.a_->size(), i);
    vs[i] = words_of_length(pres.b_->size(), i);
  }
  std::vector<std::pair<LetterString, LetterString>> raw;
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = 0; j <= n; ++j) {
      if (!congruent(i, j) || (i == n && j == n) || (i == 0 && j == 0)) continue;
      for (const auto& u : us[i]) {
        for (const auto& v : vs[j]) raw.emplace_back(u, v);
      }
    }
  }
  std::sort(raw.begin(), raw.end());
  for (const auto& [u, v] : raw) {
    pres.index_[{u, v}] = pres.symbols_.size();
    pres.symbols_.push_back({Word(pres.a_, u), Word(pres.b_, v)});
  }

  std::vector<std::size_t> phi_types, left_blocks, right_blocks;
  for (std::size_t s = 0; s < pres.symbols_.size(); ++s) {
    const auto& g = pres.symbols_[s];
    if (g.phi_type()) {
      phi_types.push_back(s);
    } else if (g.v.empty()) {
      left_blocks.push_back(s);
    } else {
      right_blocks.push_back(s);
    }
  }
  auto u_of = [&](std::size_t s) -> const LetterString& { return pres.symbols_[s].u.letters(); };
  auto v_of = [&](std::size_t s) -> const LetterString& { return pres.symbols_[s].v.letters(); };
  auto add = [&](GammaWord lhs, GammaWord rhs, RelationFamily family) {
    pres.by_lhs_[lhs] = pres.relations_.size();
    pres.relations_.push_back({std::move(lhs), std::move(rhs), family});
  };

  for (auto r : right_blocks) {
    for (auto l : left_blocks) add({r, l}, {l, r}, RelationFamily::R1);
  }
  for (auto r : right_blocks) {
    for (auto s : phi_types) {
      const auto whole = join(v_of(r), v_of(s));
      const auto k = v_of(s).size();
      add({r, s},
          {pres.symbol(u_of(s), slice(whole, 0, k)), pres.symbol({}, slice(whole, k, whole.size()))},
          RelationFamily::R2);
    }
  }
  for (auto l : left_blocks) {
    for (auto s : phi_types) {
      const auto whole = join(u_of(l), u_of(s));
      const auto k = u_of(s).size();
      add({l, s},
          {pres.symbol(slice(whole, 0, k), v_of(s)), pres.symbol(slice(whole, k, whole.size()), {})},
          RelationFamily::R3);
    }
  }
  for (auto s1 : phi_types) {
    for (auto s2 : phi_types) {
      const auto uu = join(u_of(s1), u_of(s2));
      const auto vv = join(v_of(s1), v_of(s2));
      GammaWord rhs;
      if (uu.size() == n && vv.size() == n) {
        rhs = {pres.symbol(uu, {}), pres.symbol({}, vv)};
      } else {
        const bool long_u = uu.size() > n;
        const bool long_v = vv.size() > n;
        const auto u3 = long_u ? slice(uu, 0, uu.size() - n) : uu;
        const auto v3 = long_v ? slice(vv, 0, vv.size() - n) : vv;
        rhs.push_back(pres.symbol(u3, v3));
        if (long_u) rhs.push_back(pres.symbol(slice(uu, uu.size() - n, uu.size()), {}));
        if (long_v) rhs.push_back(pres.symbol({}, slice(vv, vv.size() - n, vv.size())));
      }
      add({s1, s2}, std::move(rhs), RelationFamily::R4);
    }
  }

  for (const auto& rel : pres.relations_) {
    if (pres.eval_pi(rel.lhs) != pres.eval_pi(rel.rhs)) {
      throw std::logic_error("relation " + pres.render(rel.lhs) + " = " + pres.render(rel.rhs) +
                             " does not hold");
    }
  }
  return pres;
}

Presentation Presentation::build(const FiberInstance& inst, std::size_t max_symbols) {
  const auto params = cyclic_parameters(inst);
  if (!params) {
    throw PreconditionError(
        "presentations need a monoid-mode instance over a cyclic group with singleton images");
  }
  return build(inst.left_alphabet(), inst.right_alphabet(), params->n, params->p, params->q,
               max_symbols);
}

std::size_t Presentation::symbol(const LetterString& u, const LetterString& v) const {
  auto it = index_.find({u, v});
  if (it == index_.end()) {
    throw std::logic_error("(" + a_->render(u) + "," + b_->render(v) + ") is not a symbol");
  }
  return it->second;
}

std::optional<std::size_t> Presentation::find(const Word& u, const Word& v) const {
  if (!same_alphabet(u.alphabet(), a_) || !same_alphabet(v.alphabet(), b_)) {
    throw AlphabetMismatch("symbol is not over the presentation alphabets");
  }
  auto it = index_.find({u.letters(), v.letters()});
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void Presentation::check(const GammaWord& w) const {
  for (auto s : w) {
    if (s >= symbols_.size()) {
      throw ValidationError("symbol index " + std::to_string(s) + " is foreign to the presentation");
    }
  }
}

PairWord Presentation::eval_pi(const GammaWord& w) const {
  check(w);
  LetterString l, r;
  for (auto s : w) {
    const auto& g = symbols_[s];
    l.insert(l.end(), g.u.letters().begin(), g.u.letters().end());
    r.insert(r.end(), g.v.letters().begin(), g.v.letters().end());
  }
  return {Word(a_, std::move(l)), Word(b_, std::move(r))};
}

GammaWord Presentation::rewrite(const GammaWord& lhs) const {
  auto it = by_lhs_.find(lhs);
  if (it == by_lhs_.end()) throw std::logic_error("no relation with left side " + render(lhs));
  return relations_[it->second].rhs;
}

GammaWord Presentation::normal_form(const GammaWord& input) const {
  check(input);
  GammaWord w = input;
  auto phi = [&](std::size_t s) { return symbols_[s].phi_type(); };
  auto splice = [&](std::size_t at, const GammaWord& replacement) {
    w.erase(w.begin() + static_cast<std::ptrdiff_t>(at),
            w.begin() + static_cast<std::ptrdiff_t>(at + 2));
    w.insert(w.begin() + static_cast<std::ptrdiff_t>(at), replacement.begin(), replacement.end());
  };
  while (true) {
    // Move every φ-type symbol in front of the ε-type ones.
    for (bool moved = true; moved;) {
      moved = false;
      for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        if (!phi(w[i]) && phi(w[i + 1])) {
          splice(i, rewrite({w[i], w[i + 1]}));
          moved = true;
          break;
        }
      }
    }
    std::size_t k = 0;
    while (k < w.size() && phi(w[k])) ++k;
    if (k < 2) break;
    splice(k - 2, rewrite({w[k - 2], w[k - 1]}));
  }
  const auto first = !w.empty() && phi(w.front()) ? w.begin() + 1 : w.begin();
  std::stable_partition(first, w.end(), [&](std::size_t s) { return symbols_[s].v.empty(); });
  return w;
}

bool Presentation::equal(const GammaWord& w, const GammaWord& w2) const {
  return normal_form(w) == normal_form(w2);
}

std::string Presentation::render(const GammaWord& w) const {
  if (w.empty()) return "ε";
  std::string out;
  for (auto s : w) out += symbols_.at(s).display();
  return out;
}

GammaWord Presentation::parse(std::string_view text) const {
  auto trim = [](std::string_view s) {
    const auto* ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return std::string_view{};
    return s.substr(b, s.find_last_not_of(ws) - b + 1);
  };
  text = trim(text);
  GammaWord out;
  if (text.empty() || text == "ε") return out;
  constexpr std::string_view kGamma = "γ";
  std::size_t pos = 0;
  while (pos < text.size()) {
    if (text[pos] == ' ' || text[pos] == '\t') {
      ++pos;
      continue;
    }
    if (text.substr(pos, kGamma.size()) == kGamma) pos += kGamma.size();
    if (pos >= text.size() || text[pos] != '(') {
      throw ValidationError("expected '(' at byte " + std::to_string(pos) + " of γ-word");
    }
    const auto comma = text.find(',', pos);
    const auto close = text.find(')', pos);
    if (comma == std::string_view::npos || close == std::string_view::npos || comma > close) {
      throw ValidationError("malformed symbol at byte " + std::to_string(pos) + " of γ-word");
    }
    const Word u = Word::parse(a_, trim(text.substr(pos + 1, comma - pos - 1)));
    const Word v = Word::parse(b_, trim(text.substr(comma + 1, close - comma - 1)));
    const auto s = find(u, v);
    if (!s) {
      throw ValidationError("(" + u.display() + "," + v.display() + ") is not a generator");
    }
    out.push_back(*s);
    pos = close + 1;
  }
  return out;
}

std::string Presentation::to_text() const {
  std::ostringstream out;
  out << "Mon⟨ ";
  for (std::size_t s = 0; s < symbols_.size(); ++s) {
    out << (s ? ", " : "") << symbols_[s].display();
  }
  out << " | ";
  for (std::size_t r = 0; r < relations_.size(); ++r) {
    out << (r ? ", " : "") << render(relations_[r].lhs) << " = " << render(relations_[r].rhs);
  }
  out << " ⟩";
  return out.str();
}

}  // namespace fiberprod
