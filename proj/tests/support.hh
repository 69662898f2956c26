#pragma once

// Random generators and brute-force oracles shared by the tests. The
// oracles deliberately avoid the library's algorithms.

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "spai/kripke.hh"
#include "spai/lattice.hh"

namespace spai::test {

using Rng = std::mt19937_64;

/// A random model with a total transition relation.
inline KripkeModel random_model(Rng& rng, std::size_t n, std::size_t atoms,
                                double edge_prob = 0.3) {
  std::bernoulli_distribution edge(edge_prob), lab(0.5);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  auto sp = StateSpace::numbered(n);
  std::vector<Mask> succ(n, 0);
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = 0; t < n; ++t)
      if (edge(rng)) succ[s] |= bits::single(t);
    if (succ[s] == 0) succ[s] = bits::single(pick(rng));
  }
  std::map<std::string, Mask> labels;
  const char* names[] = {"p", "q", "r", "s"};
  for (std::size_t a = 0; a < atoms; ++a) {
    Mask m = 0;
    for (std::size_t s = 0; s < n; ++s)
      if (lab(rng)) m |= bits::single(s);
    labels[names[a]] = m;
  }
  return {sp, std::move(succ), std::move(labels)};
}

inline std::vector<Mask> random_sets(Rng& rng, std::size_t n, std::size_t count) {
  std::vector<Mask> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(rng() & bits::full(n));
  return out;
}

/// Every intersection of a subfamily (the empty subfamily gives Σ).
inline std::set<Mask> all_subset_meets(std::size_t n, const std::vector<Mask>& family) {
  std::set<Mask> out;
  const std::size_t k = family.size();
  for (std::uint64_t sel = 0; sel < (std::uint64_t{1} << k); ++sel) {
    Mask m = bits::full(n);
    for (std::size_t i = 0; i < k; ++i)
      if ((sel >> i) & 1U) m &= family[i];
    out.insert(m);
  }
  return out;
}

/// Closure by definition: intersection of all members containing s.
inline Mask closure_by_definition(const std::vector<Mask>& members, std::size_t n, Mask s) {
  Mask m = bits::full(n);
  for (Mask x : members)
    if ((s & ~x) == 0) m &= x;
  return m;
}

/// All Moore families over n states by filtering every family of subsets.
inline std::vector<std::vector<Mask>> brute_moore_families(std::size_t n) {
  const std::size_t subsets = std::size_t{1} << n;
  std::vector<std::vector<Mask>> out;
  for (std::uint64_t fam = 0; fam < (std::uint64_t{1} << subsets); ++fam) {
    if (!((fam >> bits::full(n)) & 1U)) continue;
    bool ok = true;
    for (std::size_t a = 0; a < subsets && ok; ++a)
      for (std::size_t b = 0; b < subsets && ok; ++b)
        if (((fam >> a) & 1U) && ((fam >> b) & 1U) && !((fam >> (a & b)) & 1U)) ok = false;
    if (!ok) continue;
    std::vector<Mask> members;
    for (std::size_t a = 0; a < subsets; ++a)
      if ((fam >> a) & 1U) members.push_back(a);
    out.push_back(std::move(members));
  }
  return out;
}

inline std::vector<Mask> sorted(std::vector<Mask> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

inline std::vector<Mask> sorted_masks(const AbstractDomain& a) { return sorted(a.image().masks()); }

/// "{{},{a},{a,b}}" rendering of a family.
inline std::string family_str(const SetFamily& f) {
  std::string out = "{";
  for (std::size_t i = 0; i < f.masks().size(); ++i) {
    if (i) out += ',';
    out += format_set(*f.space(), f.masks()[i]);
  }
  return out + "}";
}

/// Least family containing `gens` and ∅, closed under pairwise union.
inline std::vector<Mask> union_closure(std::vector<Mask> gens) {
  std::set<Mask> out{0};
  for (Mask g : gens) out.insert(g);
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<Mask> cur(out.begin(), out.end());
    for (Mask a : cur)
      for (Mask b : cur)
        if (out.insert(a | b).second) grew = true;
  }
  return {out.begin(), out.end()};
}

/// Successor relation of a model as explicit edge list (s, t).
inline std::vector<std::pair<std::size_t, std::size_t>> edges(const KripkeModel& k) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t s = 0; s < k.size(); ++s)
    for (std::size_t t = 0; t < k.size(); ++t)
      if (k.has_edge(s, t)) out.emplace_back(s, t);
  return out;
}

}  // namespace spai::test
