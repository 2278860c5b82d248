#include "fiberprod/finalg.hpp"

#include <deque>
#include <numeric>

namespace fiberprod {

FiniteAlgebra FiniteAlgebra::validate(const std::vector<std::vector<Element>>& table,
                                      std::vector<std::string> names,
                                      std::size_t max_size) {
  const std::size_t n = table.size();
  if (n == 0) throw ValidationError("multiplication table is empty");
  if (n > max_size) {
    throw GuardExceeded("multiplication table has " + std::to_string(n) +
                        " elements; limit is " + std::to_string(max_size));
  }
  FiniteAlgebra alg;
  alg.n_ = n;
  alg.table_.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (table[i].size() != n) {
      throw ValidationError("multiplication table row " + std::to_string(i) + " has " +
                            std::to_string(table[i].size()) + " entries, expected " +
                            std::to_string(n));
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (table[i][j] >= n) {
        throw ValidationError("multiplication table entry [" + std::to_string(i) + "][" +
                              std::to_string(j) + "] = " + std::to_string(table[i][j]) +
                              " out of range");
      }
      alg.table_.push_back(table[i][j]);
    }
  }
  for (Element x = 0; x < n; ++x) {
    for (Element y = 0; y < n; ++y) {
      for (Element z = 0; z < n; ++z) {
        if (alg.multiply(alg.multiply(x, y), z) != alg.multiply(x, alg.multiply(y, z))) {
          throw NonAssociativeError(
              {x, y, z}, "multiplication table is not associative: (e" + std::to_string(x) +
                             "·e" + std::to_string(y) + ")·e" + std::to_string(z) + " ≠ e" +
                             std::to_string(x) + "·(e" + std::to_string(y) + "·e" +
                             std::to_string(z) + ")");
        }
      }
    }
  }
  if (names.empty()) {
    for (Element x = 0; x < n; ++x) names.push_back("e" + std::to_string(x));
  }
  if (names.size() != n) {
    throw ValidationError("expected " + std::to_string(n) + " element names, got " +
                          std::to_string(names.size()));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (names[i] == names[j]) throw ValidationError("duplicate element name '" + names[i] + "'");
    }
  }
  alg.names_ = std::move(names);
  for (Element e = 0; e < n && !alg.identity_; ++e) {
    bool ok = true;
    for (Element x = 0; x < n && ok; ++x) {
      ok = alg.multiply(e, x) == x && alg.multiply(x, e) == x;
    }
    if (ok) alg.identity_ = e;
  }
  return alg;
}

std::optional<Element> FiniteAlgebra::find(const std::string& name) const {
  for (Element x = 0; x < n_; ++x) {
    if (names_[x] == name) return x;
  }
  return std::nullopt;
}

std::vector<std::vector<Element>> FiniteAlgebra::rows() const {
  std::vector<std::vector<Element>> out(n_);
  for (Element x = 0; x < n_; ++x) {
    out[x].assign(table_.begin() + static_cast<std::ptrdiff_t>(x * n_),
                  table_.begin() + static_cast<std::ptrdiff_t>((x + 1) * n_));
  }
  return out;
}

std::vector<Element> FiniteAlgebra::idempotents() const {
  std::vector<Element> out;
  for (Element x = 0; x < n_; ++x) {
    if (multiply(x, x) == x) out.push_back(x);
  }
  return out;
}

std::optional<Element> FiniteAlgebra::inverse(Element x) const {
  if (!identity_) return std::nullopt;
  for (Element y = 0; y < n_; ++y) {
    if (multiply(x, y) == *identity_ && multiply(y, x) == *identity_) return y;
  }
  return std::nullopt;
}

bool FiniteAlgebra::is_group() const {
  if (!identity_) return false;
  for (Element x = 0; x < n_; ++x) {
    if (!inverse(x)) return false;
  }
  return true;
}

Element FiniteAlgebra::power(Element x, std::size_t k) const {
  if (k == 0) {
    if (!identity_) throw PreconditionError("zeroth power in a semigroup without identity");
    return *identity_;
  }
  Element acc = x;
  for (std::size_t i = 1; i < k; ++i) acc = multiply(acc, x);
  return acc;
}

std::size_t FiniteAlgebra::order(Element x) const {
  if (!identity_) throw PreconditionError("element order requires an identity");
  Element acc = x;
  for (std::size_t k = 1; k <= n_; ++k) {
    if (acc == *identity_) return k;
    acc = multiply(acc, x);
  }
  throw PreconditionError("element " + names_[x] + " has no finite order (not a unit)");
}

std::optional<Element> FiniteAlgebra::cyclic_generator() const {
  if (!is_group()) return std::nullopt;
  for (Element g = 0; g < n_; ++g) {
    if (order(g) == n_) return g;
  }
  return std::nullopt;
}

std::vector<bool> FiniteAlgebra::closure(const std::vector<Element>& gens,
                                         bool with_identity) const {
  std::vector<bool> seen(n_, false);
  std::deque<Element> queue;
  auto push = [&](Element x) {
    if (!seen[x]) {
      seen[x] = true;
      queue.push_back(x);
    }
  };
  for (Element g : gens) push(g);
  if (with_identity && identity_) push(*identity_);
  while (!queue.empty()) {
    Element x = queue.front();
    queue.pop_front();
    for (Element g : gens) push(multiply(x, g));
  }
  return seen;
}

std::vector<std::vector<bool>> FiniteAlgebra::j_relation() const {
  // Reachability in the graph t -> g·t, t -> t·g over S; the reflexive
  // closure accounts for the adjoined identity of S¹.
  std::vector<std::vector<bool>> reach(n_, std::vector<bool>(n_, false));
  for (Element s = 0; s < n_; ++s) {
    std::deque<Element> queue{s};
    reach[s][s] = true;
    while (!queue.empty()) {
      Element t = queue.front();
      queue.pop_front();
      for (Element g = 0; g < n_; ++g) {
        for (Element next : {multiply(g, t), multiply(t, g)}) {
          if (!reach[s][next]) {
            reach[s][next] = true;
            queue.push_back(next);
          }
        }
      }
    }
  }
  std::vector<std::vector<bool>> rel(n_, std::vector<bool>(n_, false));
  for (Element s = 0; s < n_; ++s) {
    for (Element t = 0; t < n_; ++t) rel[s][t] = reach[s][t] && reach[t][s];
  }
  return rel;
}

std::vector<std::vector<bool>> FiniteAlgebra::j_relation_by_ideals() const {
  // S¹ as explicit list of "multipliers": nullopt stands for the adjoined 1.
  std::vector<std::optional<Element>> s1;
  for (Element x = 0; x < n_; ++x) s1.emplace_back(x);
  if (!identity_) s1.emplace_back(std::nullopt);
  auto mul = [&](const std::optional<Element>& x, Element s) {
    return x ? multiply(*x, s) : s;
  };
  auto mul_r = [&](Element s, const std::optional<Element>& y) {
    return y ? multiply(s, *y) : s;
  };
  std::vector<std::vector<bool>> ideal(n_, std::vector<bool>(n_, false));
  for (Element s = 0; s < n_; ++s) {
    for (const auto& x : s1) {
      for (const auto& y : s1) ideal[s][mul_r(mul(x, s), y)] = true;
    }
  }
  std::vector<std::vector<bool>> rel(n_, std::vector<bool>(n_, false));
  for (Element s = 0; s < n_; ++s) {
    for (Element t = 0; t < n_; ++t) rel[s][t] = ideal[s] == ideal[t];
  }
  return rel;
}

JTriviality FiniteAlgebra::is_j_trivial() const {
  const auto rel = j_relation();
  for (Element s = 0; s < n_; ++s) {
    for (Element t = s + 1; t < n_; ++t) {
      if (rel[s][t]) return {false, std::make_pair(s, t)};
    }
  }
  return {true, std::nullopt};
}

}  // namespace fiberprod
