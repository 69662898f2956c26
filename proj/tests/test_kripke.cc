#include <doctest.h>

#include <functional>

#include "spai/fixtures.hh"
#include "spai/io.hh"
#include "support.hh"

using namespace spai;
using namespace spai::test;

namespace {

// Knaster-Tarski over all subsets: lfp is the meet of the prefixed points,
// gfp the join of the postfixed points.
Mask brute_lfp(std::size_t n, const std::function<Mask(Mask)>& f) {
  Mask out = bits::full(n);
  for (Mask z = 0; z <= bits::full(n); ++z)
    if (bits::subset(f(z), z)) out &= z;
  return out;
}

Mask brute_gfp(std::size_t n, const std::function<Mask(Mask)>& f) {
  Mask out = 0;
  for (Mask z = 0; z <= bits::full(n); ++z)
    if (bits::subset(z, f(z))) out |= z;
  return out;
}

Mask brute_pre(const KripkeModel& k, Mask s) {
  Mask out = 0;
  for (auto [a, b] : edges(k))
    if (bits::test(s, b)) out |= bits::single(a);
  return out;
}

Mask brute_pre_dual(const KripkeModel& k, Mask s) {
  Mask out = bits::full(k.size());
  for (auto [a, b] : edges(k))
    if (!bits::test(s, b)) out &= ~bits::single(a);
  return out;
}

// s satisfies E[a U b] iff some path s = s0 .. sk has sk in b and the
// earlier states in a. Simple paths are enough.
bool eu_path(const KripkeModel& k, std::size_t s, Mask a, Mask b, Mask visited) {
  if (bits::test(b, s)) return true;
  if (!bits::test(a, s)) return false;
  for (std::size_t t = 0; t < k.size(); ++t)
    if (k.has_edge(s, t) && !bits::test(visited, t) &&
        eu_path(k, t, a, b, visited | bits::single(t)))
      return true;
  return false;
}

// States with a path of exactly `len` steps into s.
Mask reach_in(const KripkeModel& k, std::size_t len, Mask s) {
  Mask out = 0;
  for (std::size_t x = 0; x < k.size(); ++x) {
    Mask frontier = bits::single(x);
    for (std::size_t i = 0; i < len; ++i) {
      Mask next = 0;
      for (std::size_t y = 0; y < k.size(); ++y)
        if (bits::test(frontier, y)) next |= k.successors(y);
      frontier = next;
    }
    if (frontier & s) out |= bits::single(x);
  }
  return out;
}

}  // namespace

TEST_CASE("transformers on the five-state model") {
  const auto k = fixtures::five_state_pqr();
  const auto& sp = *k.space();
  auto S = [&](std::string_view c) { return fixtures::set_of(sp, c); };
  CHECK(pre(k, S("34")) == S("1235"));
  CHECK(pre(k, S("3")) == S("12"));
  CHECK(post(k, S("1")) == S("23"));
  CHECK(pre_dual(k, S("4")) == S("35"));
  CHECK(transformer(TransformerKind::post_dual, k, S("5")) == post_dual(k, S("5")));
  CHECK(transformer(TransformerKind::pre, k, StateSet(k.space(), {"3"})).str() == "{1,2}");
}

TEST_CASE("transformers agree with edge enumeration") {
  Rng rng(5);
  for (int round = 0; round < 100; ++round) {
    const auto k = random_model(rng, 1 + rng() % 6, 1);
    const std::size_t n = k.size();
    for (Mask s = 0; s <= bits::full(n); ++s) {
      CHECK(pre(k, s) == brute_pre(k, s));
      CHECK(pre_dual(k, s) == brute_pre_dual(k, s));
      CHECK(pre_dual(k, s) == (bits::full(n) & ~pre(k, bits::full(n) & ~s)));
      CHECK(post_dual(k, s) == (bits::full(n) & ~post(k, bits::full(n) & ~s)));
      for (Mask t = 0; t <= bits::full(n); t += 3) {
        CHECK(pre(k, s | t) == (pre(k, s) | pre(k, t)));
        CHECK(post(k, s | t) == (post(k, s) | post(k, t)));
        CHECK(pre_dual(k, s & t) == (pre_dual(k, s) & pre_dual(k, t)));
        // post ⊣ pre~
        CHECK(bits::subset(post(k, s), t) == bits::subset(s, pre_dual(k, t)));
        CHECK(bits::subset(pre(k, s), t) == bits::subset(s, post_dual(k, t)));
      }
    }
  }
}

TEST_CASE("fixpoint operators agree with brute-force fixpoints") {
  Rng rng(9);
  for (int round = 0; round < 60; ++round) {
    const auto k = random_model(rng, 1 + rng() % 4, 1);
    const std::size_t n = k.size();
    for (Mask a = 0; a <= bits::full(n); ++a)
      for (Mask b = 0; b <= bits::full(n); ++b) {
        CHECK(eu(k, a, b) == brute_lfp(n, [&](Mask z) { return b | (a & brute_pre(k, z)); }));
        CHECK(au(k, a, b) == brute_lfp(n, [&](Mask z) { return b | (a & brute_pre_dual(k, z)); }));
        CHECK(er(k, a, b) == brute_gfp(n, [&](Mask z) { return b & (a | brute_pre(k, z)); }));
        CHECK(ar(k, a, b) == brute_gfp(n, [&](Mask z) { return b & (a | brute_pre_dual(k, z)); }));
      }
  }
}

TEST_CASE("EU agrees with path search") {
  Rng rng(13);
  for (int round = 0; round < 100; ++round) {
    const auto k = random_model(rng, 2 + rng() % 5, 1, 0.25);
    const std::size_t n = k.size();
    for (Mask a = 0; a <= bits::full(n); a += 1 + rng() % 3)
      for (Mask b = 0; b <= bits::full(n); b += 1 + rng() % 5) {
        Mask expected = 0;
        for (std::size_t s = 0; s < n; ++s)
          if (eu_path(k, s, a, b, bits::single(s))) expected |= bits::single(s);
        CHECK(eu(k, a, b) == expected);
      }
  }
}

TEST_CASE("bounded EF is a union of exact-length reachability") {
  const auto k5 = fixtures::five_state_pq();
  CHECK(format_set(*k5.space(), ef_bounded(k5, 0, 2, k5.label("q"))) == "{3,4,5}");
  Rng rng(17);
  for (int round = 0; round < 50; ++round) {
    const auto k = random_model(rng, 2 + rng() % 5, 1);
    const Mask s = rng() & bits::full(k.size());
    for (std::size_t lo = 0; lo < 3; ++lo)
      for (std::size_t hi = lo; hi < 5; ++hi) {
        Mask expected = 0;
        for (std::size_t i = lo; i <= hi; ++i) expected |= reach_in(k, i, s);
        CHECK(ef_bounded(k, lo, hi, s) == expected);
      }
  }
}

TEST_CASE("model validation names the offending state") {
  const KripkeModel stuck(StateSpace::make({"a", "b"}), {2, 0}, {});
  CHECK_FALSE(stuck.is_total());
  CHECK(stuck.stuck_states() == 2);
  try {
    validate_model(stuck);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(e.state() == "b");
  }
  CHECK_THROWS_AS(validate_model(KripkeModel(StateSpace::make({"a"}), {1}, {{"p", 2}})),
                  ValidationError);
  for (auto name : fixtures::names()) CHECK_NOTHROW(validate_model(fixtures::by_name(name)));
  CHECK_THROWS_AS(fixtures::five_state_pq().label("r"), ResolutionError);
}

TEST_CASE("dangling transition target in a model file") {
  try {
    load_model(std::string(SPAI_FIXTURE_DIR) + "/k5_dangling.json");
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(e.state() == "6");
    CHECK(std::string(e.what()).find('6') != std::string::npos);
  }
}

TEST_CASE("labels and negated labels") {
  const auto k = fixtures::five_state_pqr();
  CHECK(k.label_of(2) == std::vector<std::string>{"p", "q"});
  const auto n = with_negated_labels(k);
  CHECK(n.label("!r") == (bits::full(5) & ~k.label("r")));
  CHECK(n.labels().size() == 6);
  CHECK(label_partition(n) == label_partition(k));
}

TEST_CASE("quotients agree with their definitions") {
  Rng rng(21);
  for (int round = 0; round < 100; ++round) {
    const auto k = random_model(rng, 2 + rng() % 5, 2);
    const auto parts = all_partitions(k.space());
    const Partition& p = parts[rng() % parts.size()];
    const auto ee = quotient(QuotientKind::exists_exists, k, p);
    const auto fe = quotient(QuotientKind::forall_exists, k, p);
    for (std::size_t b = 0; b < p.size(); ++b)
      for (std::size_t c = 0; c < p.size(); ++c) {
        bool some = false, all = true;
        for (std::size_t s = 0; s < k.size(); ++s) {
          if (!bits::test(p.blocks()[b], s)) continue;
          const bool hits = (k.successors(s) & p.blocks()[c]) != 0;
          some = some || hits;
          all = all && hits;
        }
        CHECK(ee.model.has_edge(b, c) == some);
        CHECK(fe.model.has_edge(b, c) == all);
      }
    CHECK(ee.total);
    for (const auto& [atom, m] : k.labels())
      for (std::size_t b = 0; b < p.size(); ++b)
        CHECK(bits::test(ee.model.label(atom), b) == ((m & p.blocks()[b]) != 0));
  }
}

TEST_CASE("quotient block names") {
  const auto tl = fixtures::traffic_light();
  const Partition p(tl.space(), {fixtures::set_of(*tl.space(), "GY") | bits::single(0), bits::single(1)});
  CHECK(block_space(p)->name(p.block_index_of(1)) == "RY");
  CHECK(block_space(p)->name(p.block_index_of(0)) == "R,G,Y");
  const auto k5 = fixtures::five_state_pq();
  const Partition q(k5.space(), {3, 4, 8, 16});
  CHECK(block_space(q)->name(q.block_index_of(0)) == "12");
}
