#include "fiberprod/automaton.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fiberprod {

namespace {

constexpr std::string_view kEpsilon = "ε";

std::span<const Letter> as_span(const LetterString& w) { return {w.data(), w.size()}; }

LetterString power(const LetterString& w, std::size_t n) {
  LetterString out;
  out.reserve(w.size() * n);
  for (std::size_t i = 0; i < n; ++i) out.insert(out.end(), w.begin(), w.end());
  return out;
}

// Shortest factorisation of target as a product of non-empty images, least
// letters first among the shortest.
std::optional<LetterString> factor_word(const LetterString& target,
                                        const std::vector<LetterString>& images) {
  const std::size_t n = target.size();
  constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(n + 1, kInf);
  dist[n] = 0;
  auto fits = [&](std::size_t pos, const LetterString& img) {
    return !img.empty() && pos + img.size() <= n &&
           std::equal(img.begin(), img.end(), target.begin() + static_cast<std::ptrdiff_t>(pos));
  };
  for (std::size_t pos = n; pos-- > 0;) {
    for (const auto& img : images) {
      if (fits(pos, img) && dist[pos + img.size()] != kInf) {
        dist[pos] = std::min(dist[pos], dist[pos + img.size()] + 1);
      }
    }
  }
  if (dist[0] == kInf) return std::nullopt;
  LetterString out;
  for (std::size_t pos = 0; pos < n;) {
    for (Letter x = 0; x < images.size(); ++x) {
      if (fits(pos, images[x]) && dist[pos + images[x].size()] + 1 == dist[pos]) {
        out.push_back(x);
        pos += images[x].size();
        break;
      }
    }
  }
  return out;
}

std::vector<LetterString> free_images(const HomSpec& h) {
  std::vector<LetterString> out;
  for (Letter a = 0; a < h.source()->size(); ++a) out.push_back(h.free_image(a));
  return out;
}

// The state the closed form predicts after reading a path with label images
// Φ and Ψ; nullopt when neither is a prefix of the other.
std::optional<State> closed_form(const LetterString& big_phi, const LetterString& big_psi) {
  if (letters::is_prefix(as_span(big_psi), as_span(big_phi))) {
    return State::left(letters::drop(as_span(big_phi), big_psi.size()));
  }
  if (letters::is_prefix(as_span(big_phi), as_span(big_psi))) {
    return State::right(letters::drop(as_span(big_psi), big_phi.size()));
  }
  return std::nullopt;
}

// φ(α)v = ψ(β)u for state (u, v).
bool label_identity(const State& s, const LetterString& big_phi, const LetterString& big_psi) {
  LetterString u, v;
  if (s.kind == State::Kind::LeftResidue) u = s.residue;
  if (s.kind == State::Kind::RightResidue) v = s.residue;
  return letters::concat(as_span(big_phi), as_span(v)) ==
         letters::concat(as_span(big_psi), as_span(u));
}

}  // namespace

State State::left(LetterString u) {
  if (u.empty()) return done();
  return {Kind::LeftResidue, std::move(u)};
}

State State::right(LetterString v) {
  if (v.empty()) return done();
  return {Kind::RightResidue, std::move(v)};
}

std::string State::display(const Alphabet& c) const {
  switch (kind) {
    case Kind::Iota:
      return "ι";
    case Kind::LeftResidue:
      return "(" + c.render(residue) + "," + std::string(kEpsilon) + ")";
    case Kind::RightResidue:
      return "(" + std::string(kEpsilon) + "," + c.render(residue) + ")";
    case Kind::Done:
      return "(ε,ε)";
  }
  return {};
}

std::string Label::display(const Alphabet& a, const Alphabet& b) const {
  return "(" + (left ? a.token(*left) : std::string(kEpsilon)) + "," +
         (right ? b.token(*right) : std::string(kEpsilon)) + ")";
}

std::string Transition::families() const {
  std::string out;
  for (int i = 0; i < 8; ++i) {
    if (provenance & (1U << i)) {
      if (!out.empty()) out += ' ';
      out += "Δ" + std::to_string(i + 1);
    }
  }
  return out;
}

TwoTapeAutomaton TwoTapeAutomaton::build(const FiberInstance& inst) {
  if (inst.mode() != Mode::Monoid) {
    throw PreconditionError("build expects a monoid-mode instance; use build_semigroup");
  }
  TwoTapeAutomaton aut(inst);
  aut.construct();
  return aut;
}

TwoTapeAutomaton TwoTapeAutomaton::build_semigroup(const FiberInstance& inst) {
  if (inst.mode() != Mode::Semigroup) {
    throw PreconditionError("build_semigroup expects a semigroup-mode instance");
  }
  TwoTapeAutomaton aut(inst);
  aut.construct();
  return aut;
}

void TwoTapeAutomaton::construct() {
  if (inst_.quotient().kind() != QuotientKind::Free) {
    throw PreconditionError("the two-tape automaton needs a free quotient");
  }
  const auto phi = free_images(inst_.phi());
  const auto psi = free_images(inst_.psi());

  std::set<State> states{State::iota(), State::done()};
  std::vector<State> q1, q2;
  for (const auto& img : phi) {
    for (std::size_t k = 1; k < img.size(); ++k) {
      states.insert(State::left(letters::drop(as_span(img), k)));
    }
  }
  for (const auto& img : psi) {
    for (std::size_t k = 1; k < img.size(); ++k) {
      states.insert(State::right(letters::drop(as_span(img), k)));
    }
  }
  for (const auto& s : states) {
    if (s.kind == State::Kind::LeftResidue) q1.push_back(s);
    if (s.kind == State::Kind::RightResidue) q2.push_back(s);
  }

  std::map<std::tuple<State, Label, State>, std::uint8_t> delta;
  auto add = [&](const State& from, Label label, const State& to, int family) {
    delta[{from, label, to}] |= static_cast<std::uint8_t>(1U << (family - 1));
  };
  const State iota = State::iota();
  for (Letter a = 0; a < phi.size(); ++a) {
    if (phi[a].empty()) add(iota, {a, std::nullopt}, State::done(), 1);
  }
  for (Letter b = 0; b < psi.size(); ++b) {
    if (psi[b].empty()) add(iota, {std::nullopt, b}, State::done(), 2);
  }
  for (Letter a = 0; a < phi.size(); ++a) {
    for (Letter b = 0; b < psi.size(); ++b) {
      const auto fa = as_span(phi[a]);
      const auto gb = as_span(psi[b]);
      if (!gb.empty() && letters::is_prefix(gb, fa)) {
        add(iota, {a, b}, State::left(letters::drop(fa, gb.size())), 3);
      }
      if (!fa.empty() && letters::is_prefix(fa, gb)) {
        add(iota, {a, b}, State::right(letters::drop(gb, fa.size())), 4);
      }
    }
  }
  for (const auto& s : q1) {
    const auto u = as_span(s.residue);
    for (Letter b = 0; b < psi.size(); ++b) {
      const auto gb = as_span(psi[b]);
      if (letters::is_prefix(gb, u)) {
        add(s, {std::nullopt, b}, State::left(letters::drop(u, gb.size())), 5);
      }
      if (letters::is_prefix(u, gb)) {
        add(s, {std::nullopt, b}, State::right(letters::drop(gb, u.size())), 6);
      }
    }
  }
  for (const auto& s : q2) {
    const auto v = as_span(s.residue);
    for (Letter a = 0; a < phi.size(); ++a) {
      const auto fa = as_span(phi[a]);
      if (letters::is_prefix(fa, v)) {
        add(s, {a, std::nullopt}, State::right(letters::drop(v, fa.size())), 7);
      }
      if (letters::is_prefix(v, fa)) {
        add(s, {a, std::nullopt}, State::left(letters::drop(fa, v.size())), 8);
      }
    }
  }

  states_.assign(states.begin(), states.end());
  out_.assign(states_.size(), {});
  for (const auto& [key, prov] : delta) {
    const auto& [from, label, to] = key;
    Transition t{*find(from), label, *find(to), prov};
    out_[t.from].push_back(transitions_.size());
    transitions_.push_back(t);
  }
}

std::optional<std::size_t> TwoTapeAutomaton::find(const State& s) const {
  auto it = std::lower_bound(states_.begin(), states_.end(), s);
  if (it == states_.end() || *it != s) return std::nullopt;
  return static_cast<std::size_t>(it - states_.begin());
}

std::string TwoTapeAutomaton::state_name(std::size_t s) const {
  return states_.at(s).display(*inst_.quotient().alphabet());
}

std::string TwoTapeAutomaton::label_name(const Label& l) const {
  return l.display(*inst_.left_alphabet(), *inst_.right_alphabet());
}

std::optional<Cycle> has_cycle(const TwoTapeAutomaton& aut) {
  const auto& ts = aut.transitions();
  const std::size_t n = aut.states().size();
  std::optional<Cycle> best;
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<std::optional<std::size_t>> via(n);
    std::vector<bool> seen(n, false);
    std::deque<std::size_t> queue{s};
    seen[s] = true;
    std::optional<std::size_t> closing;
    while (!queue.empty() && !closing) {
      const auto x = queue.front();
      queue.pop_front();
      for (auto t : aut.out(x)) {
        const auto y = ts[t].to;
        if (y == s) {
          closing = t;
          break;
        }
        if (!seen[y]) {
          seen[y] = true;
          via[y] = t;
          queue.push_back(y);
        }
      }
    }
    if (!closing) continue;
    std::vector<std::size_t> walk{*closing};
    for (auto x = ts[*closing].from; x != s; x = ts[*via[x]].from) walk.push_back(*via[x]);
    std::reverse(walk.begin(), walk.end());
    if (!best || walk.size() < best->transitions.size()) best = Cycle{std::move(walk)};
  }
  return best;
}

std::vector<PairWord> language(const TwoTapeAutomaton& aut, std::size_t max_paths) {
  if (has_cycle(aut)) {
    throw PreconditionError("automaton has a cycle; its language is infinite");
  }
  const auto& ts = aut.transitions();
  struct Frame {
    std::size_t state;
    LetterString left;
    LetterString right;
  };
  std::vector<Frame> stack{{aut.iota(), {}, {}}};
  std::set<std::pair<LetterString, LetterString>> found;
  std::size_t paths = 0;
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    if (f.state == aut.done()) {
      if (++paths > max_paths) {
        throw GuardExceeded("more than " + std::to_string(max_paths) + " accepting paths");
      }
      found.emplace(std::move(f.left), std::move(f.right));
      continue;
    }
    for (auto t : aut.out(f.state)) {
      Frame next{ts[t].to, f.left, f.right};
      if (ts[t].label.left) next.left.push_back(*ts[t].label.left);
      if (ts[t].label.right) next.right.push_back(*ts[t].label.right);
      stack.push_back(std::move(next));
    }
  }
  std::vector<PairWord> out;
  for (const auto& [l, r] : found) out.push_back(aut.instance().make_pair(l, r));
  std::sort(out.begin(), out.end());
  return out;
}

RunResult run(const TwoTapeAutomaton& aut, const PairWord& p) {
  const auto& inst = aut.instance();
  if (!same_alphabet(p.left.alphabet(), inst.left_alphabet()) ||
      !same_alphabet(p.right.alphabet(), inst.right_alphabet())) {
    throw AlphabetMismatch("run: input is not over the instance alphabets");
  }
  const auto& u = p.left.letters();
  const auto& v = p.right.letters();
  RunResult result;
  std::size_t state = aut.iota();
  std::size_t i = 0, j = 0;
  result.path.push_back({state, std::nullopt, 0, 0});
  while (true) {
    const State& s = aut.states()[state];
    if (s.kind == State::Kind::Done) {
      result.accepted = i == u.size() && j == v.size();
      break;
    }
    Label want;
    if (s.kind == State::Kind::Iota) {
      if (i < u.size()) want.left = u[i];
      if (j < v.size()) want.right = v[j];
      if (!want.left && !want.right) break;
    } else if (s.kind == State::Kind::LeftResidue) {
      if (j == v.size()) break;
      want.right = v[j];
    } else {
      if (i == u.size()) break;
      want.left = u[i];
    }
    std::optional<std::size_t> taken;
    for (auto t : aut.out(state)) {
      if (aut.transitions()[t].label != want) continue;
      if (taken) {
        result.violations.push_back("two transitions from " + aut.state_name(state) + " on " +
                                    aut.label_name(want));
      } else {
        taken = t;
      }
    }
    if (!taken) break;
    const auto& t = aut.transitions()[*taken];
    i += t.label.left ? 1 : 0;
    j += t.label.right ? 1 : 0;
    state = t.to;
    result.path.push_back({state, taken, i, j});

    const auto big_phi = inst.phi().apply_free(std::span<const Letter>(u.data(), i));
    const auto big_psi = inst.psi().apply_free(std::span<const Letter>(v.data(), j));
    const State& now = aut.states()[state];
    if (!label_identity(now, big_phi, big_psi)) {
      result.violations.push_back("label identity fails at " + aut.state_name(state) +
                                  " after " + std::to_string(result.path.size() - 1) + " steps");
    }
    if (auto predicted = closed_form(big_phi, big_psi); !predicted || *predicted != now) {
      result.violations.push_back("closed form disagrees at " + aut.state_name(state) +
                                  " after " + std::to_string(result.path.size() - 1) + " steps");
    }
  }
  return result;
}

PairWord cycle_label(const TwoTapeAutomaton& aut, const Cycle& cycle) {
  LetterString l, r;
  for (auto t : cycle.transitions) {
    const auto& label = aut.transitions().at(t).label;
    if (label.left) l.push_back(*label.left);
    if (label.right) r.push_back(*label.right);
  }
  return aut.instance().make_pair(std::move(l), std::move(r));
}

PairWord pump_witness(const TwoTapeAutomaton& aut, const Cycle& cycle, std::size_t n) {
  if (n == 0) throw PreconditionError("pump_witness needs n >= 1");
  const auto& ts = aut.transitions();
  if (cycle.transitions.empty()) throw PreconditionError("empty cycle");
  for (std::size_t k = 0; k < cycle.transitions.size(); ++k) {
    const auto t = cycle.transitions[k];
    const auto next = cycle.transitions[(k + 1) % cycle.transitions.size()];
    if (t >= ts.size() || next >= ts.size() || ts[t].to != ts[next].from) {
      throw PreconditionError("cycle is not a closed walk of this automaton");
    }
  }
  const auto& inst = aut.instance();
  const auto phi = free_images(inst.phi());
  const auto psi = free_images(inst.psi());
  const State& base = aut.states()[ts[cycle.transitions.front()].from];
  const PairWord loop = cycle_label(aut, cycle);

  LetterString left, right, exit_left, exit_right;
  auto proper_suffix_of = [](const LetterString& r, const LetterString& img) {
    return r.size() < img.size() && letters::is_suffix(as_span(r), as_span(img));
  };
  if (base.kind == State::Kind::LeftResidue) {
    const auto& u = base.residue;
    Letter a = 0;
    while (a < phi.size() && !proper_suffix_of(u, phi[a])) ++a;
    if (a == phi.size()) throw std::logic_error("residue is not a suffix of any image");
    const LetterString head(phi[a].begin(), phi[a].end() - static_cast<std::ptrdiff_t>(u.size()));
    auto entry = factor_word(head, psi);
    auto exit = factor_word(u, psi);
    if (!entry || !exit) throw std::logic_error("right images do not factor the residue");
    left = {a};
    right = *entry;
    exit_right = *exit;
  } else if (base.kind == State::Kind::RightResidue) {
    const auto& v = base.residue;
    Letter b = 0;
    while (b < psi.size() && !proper_suffix_of(v, psi[b])) ++b;
    if (b == psi.size()) throw std::logic_error("residue is not a suffix of any image");
    const LetterString head(psi[b].begin(), psi[b].end() - static_cast<std::ptrdiff_t>(v.size()));
    auto entry = factor_word(head, phi);
    auto exit = factor_word(v, phi);
    if (!entry || !exit) throw std::logic_error("left images do not factor the residue");
    left = *entry;
    right = {b};
    exit_left = *exit;
  } else {
    throw PreconditionError("a cycle cannot pass through ι or (ε,ε)");
  }
  const auto loop_left = power(loop.left.letters(), n);
  const auto loop_right = power(loop.right.letters(), n);
  left.insert(left.end(), loop_left.begin(), loop_left.end());
  left.insert(left.end(), exit_left.begin(), exit_left.end());
  right.insert(right.end(), loop_right.begin(), loop_right.end());
  right.insert(right.end(), exit_right.begin(), exit_right.end());
  PairWord witness = inst.make_pair(std::move(left), std::move(right));
  if (!run(aut, witness).accepted) {
    throw std::logic_error("pumped word " + witness.display() + " is not accepted");
  }
  return witness;
}

std::string to_dot(const TwoTapeAutomaton& aut) {
  std::ostringstream out;
  out << "digraph fiberprod {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (std::size_t s = 0; s < aut.states().size(); ++s) {
    out << "  q" << s << " [label=\"" << aut.state_name(s) << "\"";
    if (s == aut.done()) out << ", shape=doublecircle";
    out << "];\n";
  }
  for (const auto& t : aut.transitions()) {
    out << "  q" << t.from << " -> q" << t.to << " [label=\"" << aut.label_name(t.label)
        << "\", tooltip=\"" << t.families() << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

InvariantReport verify_invariants(const TwoTapeAutomaton& aut, std::size_t depth) {
  InvariantReport report;
  const auto& ts = aut.transitions();
  for (std::size_t s = 0; s < aut.states().size(); ++s) {
    const auto kind = aut.states()[s].kind;
    std::set<Label> keys;
    for (auto t : aut.out(s)) {
      Label key = ts[t].label;
      if (kind == State::Kind::LeftResidue && key.left) {
        report.violations.push_back(aut.state_name(s) + " reads the left tape");
      }
      if (kind == State::Kind::RightResidue && key.right) {
        report.violations.push_back(aut.state_name(s) + " reads the right tape");
      }
      if (kind == State::Kind::Done) {
        report.violations.push_back("(ε,ε) has an outgoing transition");
      }
      if (!keys.insert(key).second) {
        report.violations.push_back(aut.state_name(s) + " has two transitions on " +
                                    aut.label_name(key));
      }
    }
  }

  const auto& inst = aut.instance();
  struct Frame {
    std::size_t state;
    LetterString alpha;
    LetterString beta;
    std::size_t steps;
  };
  std::vector<Frame> stack{{aut.iota(), {}, {}, 0}};
  while (!stack.empty()) {
    Frame f = std::move(stack.back());
    stack.pop_back();
    if (f.steps > 0) {
      ++report.paths_checked;
      const auto big_phi = inst.phi().apply_free(f.alpha);
      const auto big_psi = inst.psi().apply_free(f.beta);
      const State& now = aut.states()[f.state];
      if (!label_identity(now, big_phi, big_psi)) {
        report.violations.push_back("label identity fails for path " +
                                    inst.make_pair(f.alpha, f.beta).display());
      }
      if (auto predicted = closed_form(big_phi, big_psi); !predicted || *predicted != now) {
        report.violations.push_back("closed form disagrees for path " +
                                    inst.make_pair(f.alpha, f.beta).display());
      }
      // Each path label must also drive run along exactly this path.
      const auto r = run(aut, inst.make_pair(f.alpha, f.beta));
      if (r.path.back().state != f.state || r.path.back().consumed_left != f.alpha.size() ||
          r.path.back().consumed_right != f.beta.size()) {
        report.violations.push_back("run leaves the path labelled " +
                                    inst.make_pair(f.alpha, f.beta).display());
      }
      report.violations.insert(report.violations.end(), r.violations.begin(), r.violations.end());
    }
    if (f.steps == depth) continue;
    for (auto t : aut.out(f.state)) {
      Frame next{ts[t].to, f.alpha, f.beta, f.steps + 1};
      if (ts[t].label.left) next.alpha.push_back(*ts[t].label.left);
      if (ts[t].label.right) next.beta.push_back(*ts[t].label.right);
      stack.push_back(std::move(next));
    }
  }
  return report;
}

}  // namespace fiberprod
