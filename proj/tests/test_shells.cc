#include <doctest.h>

#include <functional>

#include "spai/abstraction.hh"
#include "spai/equivalence.hh"
#include "spai/fixtures.hh"
#include "spai/shells.hh"
#include "support.hh"

using namespace spai;
using namespace spai::test;

namespace {

std::vector<Operator> ops_of(std::initializer_list<const char*> names) {
  std::vector<Operator> out;
  for (const char* n : names) out.push_back(builtin_operator(n));
  return out;
}

// Members of `a` as atoms a0, a1, ... with the given operators.
Language atoms_language(const AbstractDomain& a, std::vector<Operator> ops) {
  std::vector<BoundAtom> atoms;
  for (Mask m : a.image().masks()) {
    const std::string name = "a" + std::to_string(atoms.size());
    atoms.push_back({name, fml::atom(name), m});
  }
  return Language("members", a.space(), std::move(atoms), std::move(ops));
}

// Closes the atom denotations under every operator by plain iteration.
std::set<Mask> naive_semantic_closure(const Language& l, const KripkeModel& k) {
  std::set<Mask> out;
  for (const auto& a : l.atoms()) out.insert(a.denotation);
  for (bool grew = true; grew;) {
    grew = false;
    const std::vector<Mask> cur(out.begin(), out.end());
    for (const auto& op : l.operators()) {
      if (op.arity == 1) {
        for (Mask x : cur) {
          const Mask arg[] = {x};
          grew |= out.insert(apply_operator(op, k, l, arg)).second;
        }
      } else {
        for (Mask x : cur)
          for (Mask y : cur) {
            const Mask arg[] = {x, y};
            grew |= out.insert(apply_operator(op, k, l, arg)).second;
          }
      }
    }
  }
  return out;
}

bool closed_under(const std::vector<Mask>& ms, const std::function<Mask(Mask)>& f) {
  const std::set<Mask> s(ms.begin(), ms.end());
  for (Mask m : ms)
    if (!s.count(f(m))) return false;
  return true;
}

AbstractDomain random_domain(Rng& rng, const SpaceRef& sp, std::size_t gens) {
  return moore_close(SetFamily(sp, random_sets(rng, sp->size(), gens)));
}

}  // namespace

TEST_CASE("most abstract strongly preserving domains of the examples") {
  const auto tl = fixtures::traffic_light();
  const auto sem = bind(preset("semaforo"), tl);
  CHECK(family_str(ad_of_language(sem, tl).image()) == "{{},{G,Y},{R,RY},{R,RY,G,Y}}");
  CHECK(coarsest_sp_partition(sem, tl).str() == "{{G,Y},{R,RY}}");

  const auto k5 = fixtures::five_state_pq();
  const auto exef = bind(preset("exef"), k5);
  CHECK(family_str(ad_of_language(exef, k5).image()) ==
        "{{},{5},{3,4},{3,4,5},{1,2,3,4},{1,2,3,4,5}}");
  CHECK(coarsest_sp_partition(exef, k5).str() == "{{5},{3,4},{1,2}}");
  CHECK(coarsest_sp_partition(bind(preset("L1"), k5), k5).str() == "{{5},{4},{3},{1,2}}");
}

TEST_CASE("adp of the bisimulation partition is all unions of its blocks") {
  const auto k5 = fixtures::five_state_pq();
  const Partition p(k5.space(), {3, 4, 8, 16});
  const auto a = adp(p);
  CHECK(a.size() == 16);
  for (Mask m = 0; m < 32; ++m) CHECK(a.contains(m) == (p.cover(m) == m));
  // The printed list has 122 where 123 must be: {1,2} ∪ {3}.
  CHECK(a.contains(fixtures::set_of(*k5.space(), "123")));
}

TEST_CASE("shell trace on the five-state model") {
  const auto k5 = fixtures::five_state_pq();
  const auto exef = bind(preset("exef"), k5);
  const auto start = moore_close(SetFamily(k5.space(), label_partition(k5).blocks()));
  const auto ops = ops_of({"EF[0,2]"});
  ShellTrace trace;
  const auto s = forward_complete_shell(start, ops, k5, exef, &trace);
  CHECK(s == ad_of_language(exef, k5));
  REQUIRE(trace.converged);
  REQUIRE(trace.iterations.size() >= 2);
  CHECK(trace.iterations.front() == start);
  CHECK(trace.iterations.back() == trace.iterations[trace.iterations.size() - 2]);
  for (std::size_t i = 0; i + 2 < trace.iterations.size(); ++i)
    CHECK(trace.iterations[i].size() < trace.iterations[i + 1].size());
}

TEST_CASE("shells are forward complete and contain the input") {
  Rng rng(61);
  for (int round = 0; round < 60; ++round) {
    const auto k = random_model(rng, 2 + rng() % 4, 2);
    const auto l = bind(preset("CTL"), k);
    const auto a = random_domain(rng, k.space(), 1 + rng() % 3);
    const auto ops = ops_of({"not", "EX", "AX", "EU", "or"});
    for (std::size_t take = 1; take <= ops.size(); ++take) {
      const std::span<const Operator> f(ops.data(), take);
      ShellTrace trace;
      const auto s = forward_complete_shell(a, f, k, l, &trace);
      CHECK(completeness_check(CompletenessDirection::forward, s, f, k, l).complete);
      CHECK(domain_leq(s, a));
      CHECK(forward_complete_shell(s, f, k, l) == s);
      CHECK(trace.iterations.back() == s);
    }
  }
}

TEST_CASE("shells are the most abstract complete refinements on three states") {
  const auto all = all_moore_families(3);
  Rng rng(67);
  std::vector<KripkeModel> models{fixtures::three_state_chain()};
  for (int i = 0; i < 4; ++i) models.push_back(random_model(rng, 3, 1, 0.4));
  for (const auto& k0 : models) {
    const KripkeModel k(all[0].space(), k0.successors(), k0.labels());
    const auto l = label_language(k);
    for (const auto& f : {ops_of({"EX"}), ops_of({"AX", "or"})}) {
      const bool binary = f.size() == 2;
      std::vector<bool> complete(all.size());
      for (std::size_t i = 0; i < all.size(); ++i) {
        const auto& ms = all[i].image().masks();
        bool ok = closed_under(ms, [&](Mask m) { return binary ? pre_dual(k, m) : pre(k, m); });
        if (binary)
          for (Mask x : ms)
            for (Mask y : ms) ok = ok && all[i].contains(x | y);
        complete[i] = ok;
      }
      for (const auto& a : all) {
        const auto s = forward_complete_shell(a, f, k, l);
        bool found = false;
        for (std::size_t i = 0; i < all.size(); ++i) {
          if (!complete[i] || !domain_leq(all[i], a)) continue;
          CHECK(domain_leq(all[i], s));
          found = found || all[i] == s;
        }
        CHECK(found);
      }
    }
  }
}

TEST_CASE("semantic closure agrees with naive iteration") {
  Rng rng(71);
  for (int round = 0; round < 60; ++round) {
    const auto k = random_model(rng, 2 + rng() % 4, 2);
    for (const char* name : {"L1", "L2", "L3", "exef"}) {
      const auto l = bind(preset(name), k);
      const auto expected = naive_semantic_closure(l, k);
      CHECK(semantic_closure(l, k).masks() ==
            SetFamily(k.space(), std::vector<Mask>(expected.begin(), expected.end())).masks());
      CHECK(ad_of_language(l, k) ==
            moore_close(SetFamily(k.space(), std::vector<Mask>(expected.begin(), expected.end()))));
    }
  }
}

TEST_CASE("AD of the members language is the shell") {
  Rng rng(73);
  const std::vector<const char*> pool{"EX", "AX", "or"};
  for (int round = 0; round < 80; ++round) {
    const auto k = random_model(rng, 2 + rng() % 4, 1);
    const auto a = random_domain(rng, k.space(), 1 + rng() % 3);
    std::vector<Operator> f;
    for (const char* n : pool)
      if (rng() % 2) f.push_back(builtin_operator(n));
    auto with_and = f;
    with_and.push_back(builtin_operator("and"));
    const auto l = atoms_language(a, with_and);
    CHECK(ad_of_language(l, k) == forward_complete_shell(a, f, k, l));
  }
}

TEST_CASE("CTL operators and {not, EX} give the same shells") {
  Rng rng(79);
  const auto ctl = preset("CTL").operators;
  const auto small = ops_of({"not", "EX"});
  for (int round = 0; round < 60; ++round) {
    const auto k = random_model(rng, 2 + rng() % 4, 2);
    const auto l = bind(preset("CTL"), k);
    const auto a = random_domain(rng, k.space(), 1 + rng() % 3);
    CHECK(forward_complete_shell(a, ctl, k, l) == forward_complete_shell(a, small, k, l));
  }
}

TEST_CASE("AD_L is partitioning exactly for negation-closed presets") {
  Rng rng(83);
  for (int round = 0; round < 40; ++round) {
    const auto k = random_model(rng, 2 + rng() % 4, 2);
    for (const char* name : {"L1", "L2", "CTL"}) {
      const auto ad = ad_of_language(bind(preset(name), k), k);
      CHECK(is_partitioning(ad));
      CHECK(adp(pr(ad)) == ad);
    }
  }
  // Conjunction-closed but not negation-closed: a proper loss.
  const auto k5 = fixtures::five_state_pq();
  const auto exef = bind(preset("exef"), k5);
  const auto ad = ad_of_language(exef, k5);
  const auto p = coarsest_sp_partition(exef, k5);
  CHECK_FALSE(is_partitioning(ad));
  CHECK(adp(p) == structural_shell(StructuralKind::partitioning, ad));
  CHECK(domain_leq(adp(p), ad));
  CHECK_FALSE(adp(p) == ad);

  // No conjunction, but go is the complement of stop and AXX swaps them,
  // so the denotations are closed under complement anyway.
  const auto tl = fixtures::traffic_light();
  const auto sem = bind(preset("semaforo"), tl);
  const auto tl_ad = ad_of_language(sem, tl);
  CHECK(is_partitioning(tl_ad));
  CHECK(adp(coarsest_sp_partition(sem, tl)) == tl_ad);
}

TEST_CASE("is_sp_domain on the examples") {
  const auto tl = fixtures::traffic_light();
  const auto sem = bind(preset("semaforo"), tl);
  CHECK(is_sp_domain(ad_of_language(sem, tl), sem, tl));
  CHECK(is_sp_domain(AbstractDomain::powerset(tl.space()), sem, tl));
  CHECK_FALSE(is_sp_domain(AbstractDomain::top(tl.space()), sem, tl));
}

TEST_CASE("abstract Kripke structure searches") {
  const auto tl = fixtures::traffic_light();
  const auto sem = bind(preset("semaforo"), tl);
  const auto r = sp_abstract_kripke_search(coarsest_sp_partition(sem, tl), sem, tl);
  CHECK(r.strong.empty());
  CHECK(r.candidates == 16);

  const auto k5 = fixtures::five_state_pq();
  const auto l1 = bind(preset("L1"), k5);
  const Partition bis(k5.space(), {3, 4, 8, 16});
  const auto all = sp_abstract_kripke_search(bis, l1, k5);
  REQUIRE(all.strong.size() == 1);
  CHECK(all.strong[0] == quotient(QuotientKind::exists_exists, k5, bis).model.successors());
  CHECK(all.candidates == 65536);
  const auto first = sp_abstract_kripke_search(bis, l1, k5, SearchMode::first);
  CHECK(first.strong == all.strong);

  // The discrete partition of the chain: its own relation is strong.
  const auto k3 = fixtures::three_state_chain();
  const auto pex = bind(fixtures::p_ex(), k3);
  const auto d = sp_abstract_kripke_search(Partition::discrete(k3.space()), pex, k3);
  REQUIRE_FALSE(d.strong.empty());
  CHECK(std::find(d.strong.begin(), d.strong.end(),
                  quotient(QuotientKind::exists_exists, k3, Partition::discrete(k3.space()))
                      .model.successors()) != d.strong.end());

  Rng rng(1);
  const auto k = random_model(rng, 6, 1);
  CHECK_THROWS_AS(sp_abstract_kripke_search(Partition::discrete(k.space()), bind(preset("L1"), k), k),
                  CapacityError);
}
