#include "spai/shells.hh"

#include <algorithm>
#include <unordered_set>

#include "spai/detail/closure.hh"

namespace spai {

AbstractDomain forward_complete_shell(const AbstractDomain& a, std::span<const Operator> ops,
                                      const KripkeModel& k, const Language& l,
                                      ShellTrace* trace, std::size_t capacity) {
  require_same_space(a.space(), k.space(), "forward complete shell");
  std::vector<const Operator*> order;
  for (const auto& op : ops) order.push_back(&op);
  std::stable_sort(order.begin(), order.end(),
                   [](const Operator* x, const Operator* y) { return x->arity < y->arity; });

  AbstractDomain x = a;
  if (trace) {
    trace->iterations = {x};
    trace->new_sets.clear();
    trace->converged = false;
  }
  for (;;) {
    const auto& members = x.image().masks();
    std::unordered_set<Mask> known(members.begin(), members.end());
    std::vector<Mask> next = members;
    std::vector<Mask> args;
    std::vector<std::size_t> idx;
    for (const Operator* op : order) {
      idx.assign(op->arity, 0);
      args.assign(op->arity, 0);
      for (;;) {
        for (std::size_t j = 0; j < op->arity; ++j) args[j] = members[idx[j]];
        const Mask v = apply_operator(*op, k, l, args);
        if (known.insert(v).second) next.push_back(v);
        std::size_t j = op->arity;
        bool done = true;
        while (j-- > 0) {
          if (++idx[j] < members.size()) {
            done = false;
            break;
          }
          idx[j] = 0;
        }
        if (done) break;
      }
    }
    if (next.size() == members.size()) {
      if (trace) {
        // The last step changes nothing; record it so the trace ends in a
        // repeated entry.
        trace->new_sets.push_back(0);
        trace->iterations.push_back(x);
        trace->converged = true;
      }
      return x;
    }
    AbstractDomain y = moore_close(SetFamily(x.space(), std::move(next)), capacity);
    if (y.size() <= x.size()) throw ConsistencyError("shell iteration made no progress");
    if (trace) {
      trace->new_sets.push_back(y.size() - x.size());
      trace->iterations.push_back(y);
    }
    x = std::move(y);
  }
}

SetFamily semantic_closure(const Language& l, const KripkeModel& k, std::size_t capacity) {
  require_same_space(l.space(), k.space(), "semantic closure");
  std::vector<Mask> seeds;
  for (const auto& a : l.atoms()) seeds.push_back(a.denotation);
  std::vector<std::size_t> arities;
  for (const auto& op : l.operators()) arities.push_back(op.arity);
  std::vector<Mask> args;
  auto r = detail::close_under<Mask, std::hash<Mask>>(
      seeds, arities,
      [&](std::size_t op, const std::vector<const Mask*>& ps) {
        args.clear();
        for (const Mask* p : ps) args.push_back(*p);
        return apply_operator(l.operators()[op], k, l, args);
      },
      [](std::size_t, Mask) { return true; }, capacity);
  return SetFamily(k.space(), std::move(r.values));
}

AbstractDomain ad_of_language(const Language& l, const KripkeModel& k) {
  return moore_close(semantic_closure(l, k));
}

Partition coarsest_sp_partition(const Language& l, const KripkeModel& k) {
  return pr(ad_of_language(l, k));
}

bool is_sp_domain(const AbstractDomain& a, const Language& l, const KripkeModel& k) {
  require_same_space(a.space(), k.space(), "strong preservation");
  return ad_of_language(l, k).image().subset_of(a.image());
}

SearchResult sp_abstract_kripke_search(const Partition& p, const Language& l,
                                       const KripkeModel& k, SearchMode mode) {
  const std::size_t b = p.size();
  if (b * b > kMaxSearchPairs)
    throw CapacityError("searching relations on " + std::to_string(b) +
                        " blocks exceeds the bound of " + std::to_string(kMaxSearchPairs) +
                        " block pairs");
  const SpaceRef blocks = block_space(p);
  const AbstractDomain domain = adp(p);
  SearchResult res;
  const std::uint64_t total = std::uint64_t{1} << (b * b);
  for (std::uint64_t rel = 0; rel < total; ++rel) {
    BlockRelation rows(b, 0);
    for (std::size_t i = 0; i < b; ++i)
      rows[i] = (rel >> (i * b)) & bits::full(b);
    ++res.candidates;
    const auto s = kripke_structure(p, rows, k, l, blocks, &domain);
    if (paired_sp_check(k, l, s, true).verdict == Preservation::strong) {
      res.strong.push_back(std::move(rows));
      if (mode == SearchMode::first) break;
    }
  }
  return res;
}

}  // namespace spai
