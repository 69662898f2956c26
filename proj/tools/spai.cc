// spai: command-line front end.

#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "spai/abstraction.hh"
#include "spai/equivalence.hh"
#include "spai/fixtures.hh"
#include "spai/io.hh"
#include "spai/example_suite.hh"
#include "spai/shells.hh"

using namespace spai;

namespace {

struct Options {
  std::string model;
  std::string lang;
  std::string formula;
  std::string domain;
  std::string partition;
  std::string relation;
  std::string ops;
  std::string from = "labels";
  std::string kind;
  std::string property;
  std::string mode = "all";
  std::string suite = "paper";
  std::string format = "text";
  std::size_t capacity = kDefaultStateCapacity;
};

struct Report {
  Json json;
  std::string text;
  int exit = 0;
};

KripkeModel load(const Options& o) {
  if (o.model.empty()) throw UsageError("--model is required");
  if (!std::filesystem::exists(o.model)) {
    // Built-in fixtures may be named directly.
    for (auto n : fixtures::names())
      if (n == o.model) return fixtures::by_name(n);
  }
  return load_model(o.model, o.capacity);
}

Language language(const Options& o, const KripkeModel& k) {
  return bind(load_language(o.lang.empty() ? "CTL" : o.lang), k);
}

std::string set_text(const StateSpace& sp, Mask m) { return format_set(sp, m); }

std::string family_text(const SetFamily& f) {
  std::string out;
  for (Mask m : f.masks()) out += format_set(*f.space(), m) + "\n";
  return out;
}

Partition partition_arg(const Options& o, const KripkeModel& k) {
  const std::string& p = o.partition;
  if (p.empty() || p == "computed") return coarsest_sp_partition(language(o, k), k);
  if (p == "labels") return label_partition(k);
  if (p == "bisim") return bisim_partition(k);
  if (p == "dbs") return dbs_partition(k);
  if (p == "simeq") return simeq_partition(k);
  if (std::filesystem::exists(p)) return parse_partition(k.space(), read_json_file(p).dump());
  return parse_partition(k.space(), p);
}

AbstractDomain domain_arg(const Options& o, const KripkeModel& k) {
  if (!o.domain.empty()) {
    if (o.domain == "sp") return ad_of_language(language(o, k), k);
    if (o.domain == "powerset") return AbstractDomain::powerset(k.space());
    Json j;
    if (std::filesystem::exists(o.domain)) {
      j = read_json_file(o.domain);
    } else {
      try {
        j = Json::parse(o.domain);
      } catch (const Json::parse_error& e) {
        throw ParseError(std::string("--domain: ") + e.what(), e.byte);
      }
    }
    std::vector<Mask> sets;
    for (const auto& s : j) {
      Mask m = 0;
      for (const auto& n : s) m |= bits::single(k.space()->index_of(n.get<std::string>()));
      sets.push_back(m);
    }
    return AbstractDomain::from_moore_family(SetFamily(k.space(), std::move(sets)));
  }
  if (!o.partition.empty()) return adp(partition_arg(o, k));
  throw UsageError("a --domain or --partition is required");
}

std::vector<Operator> ops_arg(const Options& o, const KripkeModel& k) {
  if (o.ops.empty()) throw UsageError("--ops is required");
  std::vector<Operator> out;
  std::stringstream in(o.ops);
  std::string name;
  while (std::getline(in, name, ';')) {
    // Commas also separate, except inside EF[lo,hi].
    std::size_t start = 0, depth = 0;
    for (std::size_t i = 0; i <= name.size(); ++i) {
      if (i < name.size() && name[i] == '[') ++depth;
      if (i < name.size() && name[i] == ']') --depth;
      if (i == name.size() || (name[i] == ',' && depth == 0)) {
        std::string n = name.substr(start, i - start);
        start = i + 1;
        if (n.empty()) continue;
        if (n == "atoms") {
          for (auto& a : atom_operators(k)) out.push_back(std::move(a));
        } else {
          out.push_back(builtin_operator(n));
        }
      }
    }
  }
  return out;
}

Preorder relation_arg(const Options& o, const KripkeModel& k) {
  if (o.relation.empty() || o.relation == "largest") return largest_simulation(k);
  if (o.relation == "identity") return Preorder::identity(k.space());
  Json j = std::filesystem::exists(o.relation) ? read_json_file(o.relation) : Json::parse(o.relation);
  std::vector<Mask> rows(k.size(), 0);
  for (const auto& pr : j)
    rows[k.space()->index_of(pr.at(0).get<std::string>())] |=
        bits::single(k.space()->index_of(pr.at(1).get<std::string>()));
  return {k.space(), transitive_closure(std::move(rows))};
}

Report boolean(const std::string& cmd, bool value, std::string note = {}) {
  Report r;
  r.json = {{"command", cmd}, {"result", value}};
  r.text = std::string(value ? "true" : "false") + (note.empty() ? "" : "\n" + note) + "\n";
  if (!note.empty()) r.json["witness"] = note;
  r.exit = value ? 0 : 1;
  return r;
}

Report run(const std::string& cmd, const Options& o) {
  Report r;
  r.json["command"] = cmd;
  if (cmd == "verify") {
    if (o.suite != "paper") throw UsageError("unknown suite '" + o.suite + "'");
    const auto entries = run_example_suite();
    Json rows = Json::array();
    bool all = true;
    for (const auto& e : entries) {
      rows.push_back({{"name", e.name}, {"passed", e.passed}, {"detail", e.detail}});
      r.text += std::string(e.passed ? "PASS  " : "FAIL  ") + e.name +
                (e.passed ? "" : "  (" + e.detail + ")") + "\n";
      all = all && e.passed;
    }
    r.json["result"] = rows;
    r.exit = all ? 0 : 1;
    return r;
  }

  const KripkeModel k = load(o);
  const auto& sp = *k.space();
  if (cmd == "eval" || cmd == "abs-eval") {
    if (o.formula.empty()) throw UsageError("--formula is required");
    const Language l = language(o, k);
    const Formula f = parse_formula(o.formula);
    const Mask m = cmd == "eval" ? eval_concrete(f, k, l) : eval_abstract(f, domain_arg(o, k), k, l);
    r.json["result"] = set_to_json(sp, m);
    r.text = set_text(sp, m) + "\n";
  } else if (cmd == "shell") {
    const Language l = language(o, k);
    AbstractDomain start = AbstractDomain::top(k.space());
    if (!o.domain.empty() || (!o.partition.empty() && o.from == "labels")) {
      start = domain_arg(o, k);
    } else if (o.from == "labels") {
      start = moore_close(SetFamily(k.space(), label_partition(k).blocks()));
    } else if (o.from == "atoms") {
      std::vector<Mask> ms;
      for (const auto& a : l.atoms()) ms.push_back(a.denotation);
      start = moore_close(SetFamily(k.space(), std::move(ms)));
    } else if (o.from != "top") {
      throw UsageError("--from must be labels, atoms or top");
    }
    ShellTrace trace;
    const auto ops = ops_arg(o, k);
    const auto shell = forward_complete_shell(start, ops, k, l, &trace);
    r.json["result"] = family_to_json(shell.image());
    Json t = Json::array();
    for (const auto& d : trace.iterations) t.push_back(family_to_json(d.image()));
    r.json["trace"] = t;
    r.text = family_text(shell.image());
  } else if (cmd == "sp-domain") {
    const auto ad = ad_of_language(language(o, k), k);
    r.json["result"] = family_to_json(ad.image());
    r.text = family_text(ad.image());
  } else if (cmd == "sp-partition") {
    const auto p = coarsest_sp_partition(language(o, k), k);
    r.json["result"] = partition_to_json(p);
    r.text = p.str() + "\n";
  } else if (cmd == "equiv") {
    const auto kind = parse_equivalence_kind(o.kind);
    if (!kind) throw UsageError("--kind must be bisim, dbs, sim or simeq");
    const auto rep = equivalence_report(*kind, k);
    if (!rep.consistent) throw ConsistencyError("computation routes disagree");
    if (rep.partition) {
      r.json["result"] = partition_to_json(*rep.partition);
      r.text = rep.partition->str() + "\n";
    } else {
      r.json["result"] = preorder_to_json(*rep.preorder);
      r.text = rep.preorder->str() + "\n";
    }
    r.json["routes"] = rep.routes;
  } else if (cmd == "check") {
    const std::string& p = o.property;
    if (p == "sp") return boolean(cmd, is_sp_domain(domain_arg(o, k), language(o, k), k));
    if (p == "bisim") return boolean(cmd, check_bisimulation(partition_arg(o, k), k));
    if (p == "dbs") return boolean(cmd, check_dbs(partition_arg(o, k), k));
    if (p == "sim") return boolean(cmd, check_simulation(relation_arg(o, k), k));
    if (p == "partitioning") return boolean(cmd, is_partitioning(domain_arg(o, k)));
    if (p == "disjunctive") return boolean(cmd, is_disjunctive(domain_arg(o, k)));
    if (p == "fwd-complete" || p == "bwd-complete") {
      const Language l = language(o, k);
      const auto ops = ops_arg(o, k);
      const auto rep = completeness_check(
          p == "fwd-complete" ? CompletenessDirection::forward : CompletenessDirection::backward,
          domain_arg(o, k), ops, k, l);
      std::string note;
      if (!rep.complete) {
        note = rep.op + "(";
        for (std::size_t i = 0; i < rep.args.size(); ++i)
          note += (i ? ", " : "") + set_text(sp, rep.args[i]);
        note += "): " + set_text(sp, rep.lhs) + " != " + set_text(sp, rep.rhs);
      }
      return boolean(cmd, rep.complete, note);
    }
    throw UsageError("unknown --property '" + p + "'");
  } else if (cmd == "search-abstract-kripke") {
    const Language l = language(o, k);
    const Partition p = partition_arg(o, k);
    if (o.mode != "all" && o.mode != "first") throw UsageError("--mode must be first or all");
    const auto res = sp_abstract_kripke_search(p, l, k, o.mode == "first" ? SearchMode::first
                                                                           : SearchMode::all);
    const auto blocks = block_space(p);
    Json rels = Json::array();
    for (const auto& rel : res.strong) {
      Json edges = Json::array();
      std::string line;
      for (std::size_t i = 0; i < rel.size(); ++i)
        bits::for_each(rel[i], [&](std::size_t j) {
          edges.push_back({blocks->name(i), blocks->name(j)});
          line += "[" + blocks->name(i) + "]->[" + blocks->name(j) + "] ";
        });
      rels.push_back(edges);
      r.text += line + "\n";
    }
    r.json["result"] = rels;
    r.json["partition"] = partition_to_json(p);
    r.json["candidates"] = res.candidates;
    if (res.strong.empty()) {
      r.text = "no strongly preserving abstract relation exists\n";
      r.exit = 1;
    }
  } else if (cmd == "quotient") {
    QuotientKind kind;
    if (o.kind == "ee") kind = QuotientKind::exists_exists;
    else if (o.kind == "ae") kind = QuotientKind::forall_exists;
    else throw UsageError("--kind must be ee or ae");
    const Options po = [&] {
      Options c = o;
      if (c.partition.empty()) c.partition = "bisim";
      return c;
    }();
    const auto q = quotient(kind, k, partition_arg(po, k));
    r.json["result"] = model_to_json(q.model);
    r.json["total"] = q.total;
    r.text = model_to_json(q.model).dump(2) + "\n" + (q.total ? "" : "(not total)\n");
  } else {
    throw UsageError("unknown command '" + cmd + "'");
  }
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Abstract domains, strong preservation and behavioural equivalences"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* s, bool needs_model = true) {
    if (needs_model)
      s->add_option("--model", o.model, "model JSON file (or fixture name tl, kf2, k5, k3)");
    s->add_option("--lang", o.lang, "language preset (L1 L2 L3 CTL semaforo exef) or file");
    s->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json"}));
    s->add_option("--capacity", o.capacity, "maximum number of states");
  };
  auto domain_opts = [&](CLI::App* s) {
    s->add_option("--domain", o.domain, "JSON list of sets (file or inline), 'sp' or 'powerset'");
    s->add_option("--partition", o.partition,
                  "partition: {a,b},{c} or JSON, or labels|bisim|dbs|simeq|computed");
  };

  auto* eval = app.add_subcommand("eval", "concrete semantics of a formula");
  common(eval);
  eval->add_option("--formula", o.formula)->required();
  auto* abs_eval = app.add_subcommand("abs-eval", "abstract semantics of a formula");
  common(abs_eval);
  domain_opts(abs_eval);
  abs_eval->add_option("--formula", o.formula)->required();
  auto* shell = app.add_subcommand("shell", "forward complete shell");
  common(shell);
  domain_opts(shell);
  shell->add_option("--ops", o.ops, "operators, e.g. not,EX or EF[0,2]")->required();
  shell->add_option("--from", o.from, "initial domain when no --domain: labels, atoms or top");
  auto* spd = app.add_subcommand("sp-domain", "most abstract strongly preserving domain");
  common(spd);
  auto* spp = app.add_subcommand("sp-partition", "coarsest strongly preserving partition");
  common(spp);
  auto* equiv = app.add_subcommand("equiv", "behavioural equivalences");
  common(equiv);
  equiv->add_option("--kind", o.kind)->required()->check(
      CLI::IsMember({"bisim", "dbs", "sim", "simeq"}));
  auto* check = app.add_subcommand("check", "decide a property");
  common(check);
  domain_opts(check);
  check->add_option("--property", o.property)
      ->required()
      ->check(CLI::IsMember({"sp", "bisim", "dbs", "sim", "partitioning", "disjunctive",
                             "fwd-complete", "bwd-complete"}));
  check->add_option("--ops", o.ops, "operators for completeness checks");
  check->add_option("--relation", o.relation, "preorder as JSON pairs, 'identity' or 'largest'");
  auto* search = app.add_subcommand("search-abstract-kripke",
                                    "strongly preserving abstract transition relations");
  common(search);
  search->add_option("--partition", o.partition, "partition or 'computed'");
  search->add_option("--mode", o.mode)->check(CLI::IsMember({"first", "all"}));
  auto* quot = app.add_subcommand("quotient", "quotient by a partition");
  common(quot);
  quot->add_option("--kind", o.kind)->required()->check(CLI::IsMember({"ee", "ae"}));
  quot->add_option("--partition", o.partition, "partition (default: bisim)");
  auto* verify = app.add_subcommand("verify", "run the worked-example regression table");
  verify->add_option("--suite", o.suite)->check(CLI::IsMember({"paper"}));
  verify->add_option("--format", o.format)->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    const Report r = run(cmd, o);
    if (o.format == "json")
      std::cout << r.json.dump(2) << "\n";
    else
      std::cout << r.text;
    return r.exit;
  } catch (const ConsistencyError& e) {
    std::cerr << "internal inconsistency: " << e.what() << "\n";
    return 3;
  } catch (const ValidationError& e) {
    std::cerr << "invalid model: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
