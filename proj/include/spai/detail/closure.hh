#pragma once

// Semi-naive closure of a set of values under operators of fixed arity.

#include <cstddef>
#include <string>
#include <unordered_map>
#include <vector>

#include "spai/error.hh"

namespace spai::detail {

/// How a closure element was first obtained: from seed `seed`, or by
/// applying operator `op` to earlier elements `args`.
struct Derivation {
  std::size_t seed = 0;
  std::size_t op = static_cast<std::size_t>(-1);
  std::vector<std::size_t> args;
  bool is_seed() const { return op == static_cast<std::size_t>(-1); }
};

template <typename Value, typename Hash>
struct ClosureResult {
  std::vector<Value> values;
  std::vector<Derivation> derivations;
  bool stopped = false;  // visit() asked to stop early
};

/// Elements are processed in discovery order; each tuple of elements is
/// offered to each operator exactly once. `apply(op, args)` computes a new
/// value; `visit(index, value)` is called on every new element and may
/// return false to stop.
template <typename Value, typename Hash, typename Apply, typename Visit>
ClosureResult<Value, Hash> close_under(const std::vector<Value>& seeds,
                                       const std::vector<std::size_t>& arities, Apply apply,
                                       Visit visit, std::size_t capacity) {
  ClosureResult<Value, Hash> r;
  std::unordered_map<Value, std::size_t, Hash> index;
  auto add = [&](const Value& v, Derivation d) -> bool {
    if (index.count(v)) return true;
    if (r.values.size() >= capacity)
      throw CapacityError("closure exceeds " + std::to_string(capacity) + " elements");
    index.emplace(v, r.values.size());
    r.values.push_back(v);
    r.derivations.push_back(std::move(d));
    return visit(r.values.size() - 1, r.values.back());
  };
  for (std::size_t s = 0; s < seeds.size(); ++s) {
    Derivation d;
    d.seed = s;
    if (!add(seeds[s], d)) {
      r.stopped = true;
      return r;
    }
  }
  // Constants (arity 0) are applied once up front.
  std::vector<const Value*> argp;
  for (std::size_t op = 0; op < arities.size(); ++op) {
    if (arities[op] != 0) continue;
    Derivation d;
    d.op = op;
    if (!add(apply(op, argp), d)) {
      r.stopped = true;
      return r;
    }
  }
  std::vector<std::size_t> tuple;
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    for (std::size_t op = 0; op < arities.size(); ++op) {
      const std::size_t m = arities[op];
      if (m == 0) continue;
      // Tuples over [0, i] in which i occurs, with `first` the position of
      // its first occurrence: earlier positions range over [0, i), later
      // ones over [0, i].
      for (std::size_t first = 0; first < m; ++first) {
        tuple.assign(m, 0);
        tuple[first] = i;
        if (first > 0 && i == 0) continue;
        for (;;) {
          argp.clear();
          for (std::size_t j = 0; j < m; ++j) argp.push_back(&r.values[tuple[j]]);
          Value v = apply(op, argp);
          Derivation d;
          d.op = op;
          d.args = tuple;
          if (!add(v, std::move(d))) {
            r.stopped = true;
            return r;
          }
          // Advance the odometer, skipping position `first`.
          std::size_t j = m;
          bool done = true;
          while (j-- > 0) {
            if (j == first) continue;
            const std::size_t limit = j < first ? i : i + 1;
            if (++tuple[j] < limit) {
              done = false;
              break;
            }
            tuple[j] = 0;
          }
          if (done) break;
        }
      }
    }
  }
  return r;
}

}  // namespace spai::detail
