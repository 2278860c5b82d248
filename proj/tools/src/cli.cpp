#include "fiberprod_cli/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <ostream>

#include "CLI11.hpp"
#include "fiberprod/automaton.hpp"
#include "fiberprod/counting.hpp"
#include "fiberprod/decide.hpp"
#include "fiberprod/error.hpp"
#include "fiberprod/presentation.hpp"
#include "fiberprod_cli/instance_io.hpp"

namespace fiberprod::cli {

namespace {

using nlohmann::json;

std::uint64_t env_limit(const char* name, std::uint64_t fallback) {
  const char* raw = std::getenv(name);
  if (!raw || !*raw) return fallback;
  try {
    std::size_t used = 0;
    const auto value = std::stoull(raw, &used);
    if (used != std::string(raw).size()) throw std::invalid_argument(raw);
    return value;
  } catch (const std::exception&) {
    throw ValidationError(std::string(name) + " must be a non-negative integer, got '" + raw + "'");
  }
}

json pairs_json(const std::vector<PairWord>& pairs) {
  json out = json::array();
  for (const auto& p : pairs) out.push_back(to_json(p));
  return out;
}

struct Context {
  std::ostream& out;
  bool as_json = false;

  void emit(const json& record) const { out << record.dump() << '\n'; }
};

void cmd_decide(const Context& ctx, const InstanceFile& file) {
  const auto& inst = file.instance;
  const Decision d = decide(inst);
  std::optional<Diagnostics> diag;
  if (inst.quotient().kind() == QuotientKind::FiniteTable) diag = diagnostics(inst);
  if (ctx.as_json) {
    json rec = {{"command", "decide"},
                {"instance", file.name},
                {"finitely_generated", d.finitely_generated},
                {"reason", to_string(d.reason)},
                {"detail", d.detail}};
    if (d.generating_set) rec["generating_set"] = pairs_json(*d.generating_set);
    if (d.witness) {
      rec["witness"] = {{"description", d.witness->description},
                        {"instances", pairs_json(d.witness->instances)}};
    }
    if (diag) {
      json idem = json::array();
      for (auto e : diag->idempotents) idem.push_back(inst.quotient().table().name(e));
      rec["diagnostics"] = {{"idempotents", idem},
                            {"j_trivial", diag->j_triviality.trivial},
                            {"semigroup_not_fg", diag->semigroup_not_fg}};
    }
    ctx.emit(rec);
    return;
  }
  ctx.out << "finitely generated: " << (d.finitely_generated ? "true" : "false") << " ("
          << to_string(d.reason) << ")";
  if (d.generating_set) {
    ctx.out << "; " << d.generating_set->size()
            << (d.reason == Reason::AutomatonAcyclic ? " indecomposable generators" : " generators");
  }
  ctx.out << '\n' << "detail: " << d.detail << '\n';
  if (d.generating_set) {
    for (const auto& g : *d.generating_set) ctx.out << "  " << g.display() << '\n';
  }
  if (d.witness) {
    ctx.out << "witness family: " << d.witness->description << '\n';
    for (const auto& w : d.witness->instances) ctx.out << "  " << w.display() << '\n';
  }
  if (diag) {
    const auto& t = inst.quotient().table();
    ctx.out << "idempotents:";
    for (auto e : diag->idempotents) ctx.out << ' ' << t.name(e);
    ctx.out << "\nJ-trivial: " << (diag->j_triviality.trivial ? "true" : "false");
    if (diag->j_triviality.witness) {
      ctx.out << " (" << t.name(diag->j_triviality.witness->first) << " J "
              << t.name(diag->j_triviality.witness->second) << ")";
    }
    ctx.out << "\nnecessarily not f.g. as a semigroup fiber product: "
            << (diag->semigroup_not_fg ? "true" : "false") << '\n';
  }
}

TwoTapeAutomaton build_automaton(const FiberInstance& inst) {
  return inst.mode() == Mode::Monoid ? TwoTapeAutomaton::build(inst)
                                     : TwoTapeAutomaton::build_semigroup(inst);
}

void cmd_automaton(const Context& ctx, const InstanceFile& file, const std::string& dot_path) {
  const auto aut = build_automaton(file.instance);
  const auto cycle = has_cycle(aut);
  if (!dot_path.empty()) {
    const auto dot = to_dot(aut);
    if (dot_path == "-") {
      ctx.out << dot;
      return;
    }
    std::ofstream f(dot_path);
    if (!f) throw ValidationError(dot_path + ": cannot write file");
    f << dot;
  }
  if (ctx.as_json) {
    json states = json::array();
    for (std::size_t s = 0; s < aut.states().size(); ++s) states.push_back(aut.state_name(s));
    json edges = json::array();
    for (const auto& t : aut.transitions()) {
      edges.push_back({{"from", t.from},
                       {"to", t.to},
                       {"label", aut.label_name(t.label)},
                       {"families", t.families()}});
    }
    json rec = {{"command", "automaton"}, {"instance", file.name}, {"states", states},
                {"transitions", edges},   {"acyclic", !cycle}};
    if (cycle) rec["cycle"] = cycle->transitions;
    ctx.emit(rec);
    return;
  }
  ctx.out << aut.states().size() << " states, " << aut.transitions().size() << " transitions, "
          << (cycle ? "cyclic" : "acyclic") << '\n';
  for (std::size_t s = 0; s < aut.states().size(); ++s) {
    ctx.out << "  q" << s << ' ' << aut.state_name(s) << '\n';
  }
  for (const auto& t : aut.transitions()) {
    ctx.out << "  " << aut.state_name(t.from) << " -> " << aut.state_name(t.to) << " on "
            << aut.label_name(t.label) << "  [" << t.families() << "]\n";
  }
  if (cycle) {
    ctx.out << "cycle:";
    for (auto t : cycle->transitions) ctx.out << ' ' << aut.state_name(aut.transitions()[t].from);
    ctx.out << " on " << cycle_label(aut, *cycle).display() << '\n';
  }
}

void cmd_indecomposables(const Context& ctx, const InstanceFile& file, std::size_t max_left,
                         std::size_t max_right, const std::string& via) {
  const auto& inst = file.instance;
  std::vector<PairWord> pairs;
  if (via == "automaton") {
    for (auto& p : language(build_automaton(inst))) {
      if (p.left.size() <= max_left && p.right.size() <= max_right) pairs.push_back(std::move(p));
    }
  } else {
    EnumerationOptions opts;
    opts.max_candidates = env_limit("FIBERPROD_MAX_ENUM", opts.max_candidates);
    pairs = indecomposables_upto(inst, max_left, max_right, opts);
  }
  if (ctx.as_json) {
    ctx.emit({{"command", "indecomposables"},
              {"instance", file.name},
              {"via", via},
              {"max_left", max_left},
              {"max_right", max_right},
              {"count", pairs.size()},
              {"pairs", pairs_json(pairs)}});
    return;
  }
  for (const auto& p : pairs) ctx.out << p.display() << '\n';
  ctx.out << pairs.size() << " indecomposables with |u| <= " << max_left << ", |v| <= " << max_right
          << '\n';
}

void cmd_member(const Context& ctx, const InstanceFile& file, const std::string& u,
                const std::string& v) {
  const auto p = file.instance.pair(u, v);
  const bool m = file.instance.member(p);
  if (ctx.as_json) {
    ctx.emit({{"command", "member"}, {"pair", to_json(p)}, {"member", m}});
    return;
  }
  ctx.out << (m ? "true" : "false") << '\n';
}

void cmd_presentation(const Context& ctx, const InstanceFile& file) {
  const auto pres = Presentation::build(file.instance);
  if (ctx.as_json) {
    json gens = json::array();
    for (const auto& g : pres.symbols()) gens.push_back(json::array({g.u.str(), g.v.str()}));
    json rels = json::array();
    for (const auto& r : pres.relations()) {
      rels.push_back({{"family", to_string(r.family)},
                      {"lhs", pres.render(r.lhs)},
                      {"rhs", pres.render(r.rhs)}});
    }
    ctx.emit({{"command", "presentation"},
              {"instance", file.name},
              {"n", pres.n()},
              {"p", pres.p()},
              {"q", pres.q()},
              {"generators", gens},
              {"relations", rels}});
    return;
  }
  ctx.out << pres.symbols().size() << " generators, " << pres.relations().size()
          << " relations\n"
          << pres.to_text() << '\n';
}

void cmd_normal_form(const Context& ctx, const InstanceFile& file, const std::string& word) {
  const auto pres = Presentation::build(file.instance);
  const auto w = pres.parse(word);
  const auto nf = pres.normal_form(w);
  if (ctx.as_json) {
    ctx.emit({{"command", "normal-form"},
              {"input", pres.render(w)},
              {"normal_form", pres.render(nf)},
              {"value", to_json(pres.eval_pi(nf))}});
    return;
  }
  ctx.out << pres.render(nf) << '\n';
}

void cmd_count(const Context& ctx, unsigned m, unsigned n) {
  const auto s = count_subdirect(m, n);
  const auto f = count_fiber(m, n);
  if (ctx.as_json) {
    ctx.emit({{"command", "count"},
              {"m", m},
              {"n", n},
              {"subdirect", s.str()},
              {"fiber", f.str()}});
    return;
  }
  ctx.out << "subdirect " << s << ", fiber " << f << '\n';
}

void cmd_census(const Context& ctx, unsigned m, unsigned n) {
  const auto max_cells =
      static_cast<unsigned>(env_limit("FIBERPROD_MAX_CENSUS", kMaxCensusCells));
  const auto r = census(m, n, max_cells);
  const bool agree = r.subdirect_count == r.formula_subdirect && r.fiber_count == r.formula_fiber &&
                     r.test_disagreements == 0;
  if (ctx.as_json) {
    json blocks = json::object();
    for (const auto& [k, c] : r.blocks) blocks[std::to_string(k)] = c.str();
    ctx.emit({{"command", "census"},
              {"m", m},
              {"n", n},
              {"subdirect", r.subdirect_count.str()},
              {"fiber", r.fiber_count.str()},
              {"formula_subdirect", r.formula_subdirect.str()},
              {"formula_fiber", r.formula_fiber.str()},
              {"fiber_over_subdirect", r.fiber_over_subdirect.str()},
              {"subdirect_over_all", r.subdirect_over_all.str()},
              {"test_disagreements", r.test_disagreements},
              {"blocks", blocks},
              {"agree", agree}});
    return;
  }
  ctx.out << "m  n  subdirect  fiber  fiber/subdirect  subdirect/2^mn\n"
          << r.m << "  " << r.n << "  " << r.subdirect_count << "  " << r.fiber_count << "  "
          << r.fiber_over_subdirect << "  " << r.subdirect_over_all << '\n'
          << "formulas: subdirect " << r.formula_subdirect << ", fiber " << r.formula_fiber
          << (agree ? " (agree)" : " (DISAGREE)") << '\n'
          << "fiber matrices by block count:";
  for (const auto& [k, c] : r.blocks) ctx.out << ' ' << k << ':' << c;
  ctx.out << '\n';
}

void cmd_witness(const Context& ctx, const InstanceFile& file, std::size_t n) {
  if (n == 0) throw PreconditionError("--n must be at least 1");
  const Decision d = decide(file.instance, n);
  if (!d.witness) {
    throw PreconditionError("instance is finitely generated (" + to_string(d.reason) +
                            "); there is no witness family");
  }
  if (d.witness->instances.size() < n) {
    throw GuardExceeded("witness search produced only " +
                        std::to_string(d.witness->instances.size()) + " instances");
  }
  const auto& w = d.witness->instances[n - 1];
  if (ctx.as_json) {
    ctx.emit({{"command", "witness"},
              {"instance", file.name},
              {"reason", to_string(d.reason)},
              {"description", d.witness->description},
              {"n", n},
              {"witness", to_json(w)}});
    return;
  }
  ctx.out << w.display() << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite generation of fiber products of free semigroups and monoids", "fiberprod"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.fallthrough();

  std::string file, dot_path, via = "oracle", u, v, word;
  std::size_t max_left = 4, max_right = 4, witness_n = 1;
  unsigned m = 0, n = 0;
  std::function<void(const Context&)> action;

  auto* decide_cmd = app.add_subcommand("decide", "Decide finite generation");
  decide_cmd->add_option("file", file, "Instance file")->required();
  decide_cmd->callback([&] {
    action = [&](const Context& c) { cmd_decide(c, load_instance(file)); };
  });

  auto* aut_cmd = app.add_subcommand("automaton", "Build the two-tape automaton");
  aut_cmd->add_option("file", file, "Instance file")->required();
  aut_cmd->add_option("--dot", dot_path, "Write Graphviz DOT to this path ('-' for stdout)");
  aut_cmd->callback([&] {
    action = [&](const Context& c) { cmd_automaton(c, load_instance(file), dot_path); };
  });

  auto* ind_cmd = app.add_subcommand("indecomposables", "List indecomposable members");
  ind_cmd->add_option("file", file, "Instance file")->required();
  ind_cmd->add_option("--max-left", max_left, "Bound on |u|")->capture_default_str();
  ind_cmd->add_option("--max-right", max_right, "Bound on |v|")->capture_default_str();
  ind_cmd->add_option("--via", via, "Source of truth")
      ->check(CLI::IsMember({"oracle", "automaton"}))
      ->capture_default_str();
  ind_cmd->callback([&] {
    action = [&](const Context& c) {
      cmd_indecomposables(c, load_instance(file), max_left, max_right, via);
    };
  });

  auto* member_cmd = app.add_subcommand("member", "Test membership of (u, v)");
  member_cmd->add_option("file", file, "Instance file")->required();
  member_cmd->add_option("u", u, "Left word ('' or ε for empty)")->required();
  member_cmd->add_option("v", v, "Right word ('' or ε for empty)")->required();
  member_cmd->callback([&] {
    action = [&](const Context& c) { cmd_member(c, load_instance(file), u, v); };
  });

  auto* pres_cmd = app.add_subcommand("presentation", "Print the finite presentation");
  pres_cmd->add_option("file", file, "Instance file")->required();
  pres_cmd->callback([&] {
    action = [&](const Context& c) { cmd_presentation(c, load_instance(file)); };
  });

  auto* nf_cmd = app.add_subcommand("normal-form", "Normal form of a word over the generators");
  nf_cmd->add_option("file", file, "Instance file")->required();
  nf_cmd->add_option("word", word, "Word such as '(a,b)(aa,)'")->required();
  nf_cmd->callback([&] {
    action = [&](const Context& c) { cmd_normal_form(c, load_instance(file), word); };
  });

  auto* count_cmd = app.add_subcommand("count", "Closed-form subdirect and fiber counts");
  count_cmd->add_option("--m", m, "|A|")->required()->check(CLI::PositiveNumber);
  count_cmd->add_option("--n", n, "|B|")->required()->check(CLI::PositiveNumber);
  count_cmd->callback([&] { action = [&](const Context& c) { cmd_count(c, m, n); }; });

  auto* census_cmd = app.add_subcommand("census", "Exhaustive matrix census");
  census_cmd->add_option("--m", m, "|A|")->required()->check(CLI::PositiveNumber);
  census_cmd->add_option("--n", n, "|B|")->required()->check(CLI::PositiveNumber);
  census_cmd->callback([&] { action = [&](const Context& c) { cmd_census(c, m, n); }; });

  auto* witness_cmd = app.add_subcommand("witness", "n-th member of the witness family");
  witness_cmd->add_option("file", file, "Instance file")->required();
  witness_cmd->add_option("--n", witness_n, "Index, starting at 1")->capture_default_str();
  witness_cmd->callback([&] {
    action = [&](const Context& c) { cmd_witness(c, load_instance(file), witness_n); };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    action(Context{out, format == "json"});
    return kExitOk;
  } catch (const GuardExceeded& e) {
    err << "guard exceeded: " << e.what() << '\n';
    return kExitGuard;
  } catch (const UnsupportedError& e) {
    err << "unsupported: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
}

}  // namespace fiberprod::cli
