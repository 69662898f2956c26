#include "spai/example_suite.hh"

#include <functional>

#include "spai/abstraction.hh"
#include "spai/equivalence.hh"
#include "spai/fixtures.hh"
#include "spai/shells.hh"

namespace spai {

namespace {

using Check = std::function<std::string()>;  // empty string = pass

std::string expect(const std::string& actual, const std::string& expected) {
  if (actual == expected) return {};
  return "expected " + expected + ", got " + actual;
}

std::string fam(const AbstractDomain& a) {
  std::string out = "{";
  for (std::size_t i = 0; i < a.image().masks().size(); ++i) {
    if (i) out += ',';
    out += format_set(*a.space(), a.image().masks()[i]);
  }
  return out + "}";
}

std::string set(const SpaceRef& sp, Mask m) { return format_set(*sp, m); }

}  // namespace

std::vector<SuiteEntry> run_example_suite() {
  using namespace fixtures;
  std::vector<std::pair<std::string, Check>> checks;
  auto add = [&](std::string name, Check c) { checks.emplace_back(std::move(name), std::move(c)); };

  const auto closures = four_state_closures();
  const auto sp4 = closures[0].space();

  add("moore closure of {12,123,124} is the fourth closure", [&] {
    const auto a = moore_close(SetFamily(sp4, {set_of(*sp4, "12"), set_of(*sp4, "123"),
                                               set_of(*sp4, "124")}));
    return expect(fam(a), fam(closures[3]));
  });
  // {4} is contained in the member 124, so its closure is 124.
  add("fifth closure maps {3} to {1,2,3} and {4} to {1,2,4}", [&] {
    const auto& m5 = closures[4];
    return expect(set(sp4, m5.closure(set_of(*sp4, "3"))) + " " +
                      set(sp4, m5.closure(set_of(*sp4, "4"))),
                  "{1,2,3} {1,2,4}");
  });
  add("adp({12,3,4}) is the third closure", [&] {
    const Partition p(sp4, {set_of(*sp4, "12"), set_of(*sp4, "3"), set_of(*sp4, "4")});
    return expect(fam(adp(p)), fam(closures[2]));
  });
  add("every closure induces the partition {12,3,4}", [&] {
    std::string out;
    for (const auto& c : closures) out += pr(c).str();
    std::string expected;
    for (int i = 0; i < 5; ++i) expected += "{{4},{3},{1,2}}";
    return expect(out, expected);
  });
  add("only the third closure is partitioning", [&] {
    std::string flags;
    for (const auto& c : closures) flags += is_partitioning(c) ? '1' : '0';
    return expect(flags, "00100");
  });

  const KripkeModel kf2 = five_state_pqr();
  const AbstractDomain seven = seven_point_domain(kf2.space());
  add("seven-point domain is neither partitioning nor disjunctive", [&] {
    return expect(std::string(is_partitioning(seven) ? "P" : "-") +
                      (is_disjunctive(seven) ? "D" : "-"),
                  "--");
  });
  add("pre on the five-state model", [&] {
    return expect(set(kf2.space(), pre(kf2, set_of(*kf2.space(), "34"))) + " " +
                      set(kf2.space(), pre(kf2, set_of(*kf2.space(), "3"))),
                  "{1,2,3,5} {1,2}");
  });
  add("abstract EX r and EX (p & q) on the seven-point domain", [&] {
    const Language l = bind(pqr_conj_ex(), kf2);
    return expect(set(kf2.space(), eval_abstract(parse_formula("EX r"), seven, kf2, l)) + " " +
                      set(kf2.space(), eval_abstract(parse_formula("EX (p & q)"), seven, kf2, l)),
                  "{1,2,3,4,5} {1,2}");
  });
  add("seven-point domain is not strongly preserving for p,q,r,&,EX", [&] {
    const Language l = bind(pqr_conj_ex(), kf2);
    return expect(is_sp_domain(seven, l, kf2) ? "true" : "false", "false");
  });

  const KripkeModel tl = traffic_light();
  const Language sem = bind(preset("semaforo"), tl);
  add("AXX go on the traffic light", [&] {
    return expect(set(tl.space(), eval_concrete(parse_formula("AXX(go)"), tl, sem)), "{R,RY}");
  });
  add("most abstract s.p. domain for the traffic-light language", [&] {
    return expect(fam(ad_of_language(sem, tl)), "{{},{G,Y},{R,RY},{R,RY,G,Y}}");
  });
  add("coarsest s.p. partition for the traffic-light language", [&] {
    return expect(coarsest_sp_partition(sem, tl).str(), "{{G,Y},{R,RY}}");
  });
  add("best correct approximation of AXX", [&] {
    const auto ad = ad_of_language(sem, tl);
    const Operator& axx = sem.operators().at(0);
    std::string out;
    for (Mask m : ad.image().masks()) {
      const Mask arg[] = {m};
      out += set(tl.space(), m) + "->" + set(tl.space(), bca_apply(ad, axx, tl, sem, arg)) + " ";
    }
    return expect(out, "{}->{} {G,Y}->{R,RY} {R,RY}->{G,Y} {R,RY,G,Y}->{R,RY,G,Y} ");
  });
  add("AD of the traffic-light language is strongly preserving", [&] {
    return expect(is_sp_domain(ad_of_language(sem, tl), sem, tl) ? "true" : "false", "true");
  });
  add("swapping block relation fails at AXX go", [&] {
    const Partition p = coarsest_sp_partition(sem, tl);
    // Blocks are {G,Y}, {R,RY}: each one moves to the other.
    const auto s = kripke_structure(p, {bits::single(1), bits::single(0)}, tl, sem);
    const auto r = paired_sp_check(tl, sem, s);
    const Formula f = parse_formula("AXX(go)");
    return expect(to_string(r.verdict) + " " +
                      set(tl.space(), eval_in_structure(f, s, sem)) + " vs " +
                      set(tl.space(), eval_concrete(f, tl, sem)),
                  "neither {G,Y} vs {R,RY}");
  });
  add("no strongly preserving abstract relation on the traffic light", [&] {
    const auto r = sp_abstract_kripke_search(coarsest_sp_partition(sem, tl), sem, tl);
    return expect(std::to_string(r.strong.size()), "0");
  });

  const KripkeModel k5 = five_state_pq();
  add("five-state model validates", [&] {
    validate_model(k5);
    return std::string{};
  });
  add("label partition of the five-state model", [&] {
    return expect(label_partition(k5).str(), "{{5},{1,2,3,4}}");
  });
  const Language exef = bind(preset("exef"), k5);
  add("EF[0,2] q and p & EF[0,2] q", [&] {
    return expect(set(k5.space(), eval_concrete(parse_formula("EF[0,2] q"), k5, exef)) + " " +
                      set(k5.space(), eval_concrete(parse_formula("p & EF[0,2] q"), k5, exef)),
                  "{3,4,5} {3,4}");
  });
  add("most abstract s.p. domain for atoms p,q with & and EF[0,2]", [&] {
    return expect(fam(ad_of_language(exef, k5)), "{{},{5},{3,4},{3,4,5},{1,2,3,4},{1,2,3,4,5}}");
  });
  add("coarsest s.p. partition for atoms p,q with & and EF[0,2]", [&] {
    return expect(coarsest_sp_partition(exef, k5).str(), "{{5},{3,4},{1,2}}");
  });
  add("EF[0,2]-complete shell of M({1234,5})", [&] {
    const auto start = moore_close(SetFamily(k5.space(), label_partition(k5).blocks()));
    const Operator ops[] = {builtin_operator("EF[0,2]")};
    return expect(fam(forward_complete_shell(start, ops, k5, exef)),
                  "{{},{5},{3,4},{3,4,5},{1,2,3,4},{1,2,3,4,5}}");
  });
  add("no strongly preserving abstract relation on {12,34,5}", [&] {
    const auto r = sp_abstract_kripke_search(coarsest_sp_partition(exef, k5), exef, k5);
    return expect(std::to_string(r.strong.size()), "0");
  });
  add("bisimulation partition of the five-state model", [&] {
    const Partition p = bisim_partition(k5);
    return expect(p.str() + (check_bisimulation(p, k5) ? " ok" : " not a bisimulation"),
                  "{{5},{4},{3},{1,2}}" + std::string(" ok"));
  });
  add("coarsest s.p. partition for L1 on the five-state model", [&] {
    return expect(coarsest_sp_partition(bind(preset("L1"), k5), k5).str(), "{{5},{4},{3},{1,2}}");
  });
  add("adp of the bisimulation partition has 16 members", [&] {
    return expect(std::to_string(adp(bisim_partition(k5)).size()), "16");
  });
  add("existential quotient by the bisimulation partition", [&] {
    const auto q = quotient(QuotientKind::exists_exists, k5, bisim_partition(k5));
    std::string edges;
    const auto& sp = *q.model.space();
    for (std::size_t s = 0; s < sp.size(); ++s)
      bits::for_each(q.model.successors(s),
                     [&](std::size_t t) { edges += sp.name(s) + ">" + sp.name(t) + " "; });
    return expect(edges, "5>4 4>5 3>4 12>3 12>12 ");
  });
  add("unique strongly preserving relation on the bisimulation partition", [&] {
    const Partition p = bisim_partition(k5);
    const Language l1 = bind(preset("L1"), k5);
    const auto r = sp_abstract_kripke_search(p, l1, k5);
    const auto q = quotient(QuotientKind::exists_exists, k5, p);
    if (r.strong.size() != 1) return "expected one relation, got " + std::to_string(r.strong.size());
    return expect(r.strong[0] == q.model.successors() ? "quotient" : "other", "quotient");
  });

  const KripkeModel k3 = three_state_chain();
  const Language pex = bind(p_ex(), k3);
  const Partition p3(k3.space(), {set_of(*k3.space(), "12"), set_of(*k3.space(), "3")});
  add("best correct approximation of EX at {1,2}", [&] {
    const Mask arg[] = {set_of(*k3.space(), "12")};
    return expect(set(k3.space(), bca_apply(adp(p3), builtin_operator("EX"), k3, pex, arg)),
                  "{1,2}");
  });
  add("adp({12,3}) is not forward complete for pre on the chain", [&] {
    const Operator ops[] = {builtin_operator("EX")};
    const auto r = completeness_check(CompletenessDirection::forward, adp(p3), ops, k3, pex);
    return expect(std::string(r.complete ? "complete" : "incomplete") + " " +
                      (r.args.empty() ? "" : set(k3.space(), r.args[0])) + " " +
                      set(k3.space(), r.lhs) + " " + set(k3.space(), r.rhs),
                  "incomplete {3} {2,3} {1,2,3}");
  });
  add("both abstract structures on {12,3} are strongly preserving for p, EX", [&] {
    const auto bca = bca_structure(adp(p3), k3, pex);
    // Blocks are {3}, {1,2}; both move to {3}.
    const auto ks = kripke_structure(p3, {bits::single(0), bits::single(0)}, k3, pex);
    return expect(to_string(paired_sp_check(k3, pex, bca).verdict) + " " +
                      to_string(paired_sp_check(k3, pex, ks).verdict),
                  "strong strong");
  });

  std::vector<SuiteEntry> out;
  for (auto& [name, check] : checks) {
    SuiteEntry e{name, false, {}};
    try {
      e.detail = check();
      e.passed = e.detail.empty();
    } catch (const std::exception& ex) {
      e.detail = std::string("error: ") + ex.what();
    }
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace spai
