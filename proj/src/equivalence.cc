#include "spai/equivalence.hh"

#include "spai/abstraction.hh"
#include "spai/shells.hh"

namespace spai {

Language label_language(const KripkeModel& k) {
  std::vector<BoundAtom> atoms;
  for (const auto& [name, m] : k.labels()) atoms.push_back({name, fml::atom(name), m});
  return {"labels", k.space(), std::move(atoms), {}};
}

std::vector<Operator> atom_operators(const KripkeModel& k) {
  std::vector<Operator> out;
  for (const auto& [name, m] : k.labels()) out.push_back(Operator::make(name, 0, fml::atom(name)));
  return out;
}

namespace {

/// Splits the first block B1 (lowest index) for which some splitter B2
/// yields a proper nonempty subset. Returns false when stable.
template <typename Splitter>
bool split_once(std::vector<Mask>& blocks, Splitter splitter) {
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    for (std::size_t j = 0; j < blocks.size(); ++j) {
      const auto part = splitter(blocks[i], blocks[j], i == j);
      if (part && *part != 0 && *part != blocks[i]) {
        const Mask rest = blocks[i] & ~*part;
        blocks[i] = *part;
        blocks.push_back(rest);
        return true;
      }
    }
  }
  return false;
}

template <typename Splitter>
Partition refine(const KripkeModel& k, Splitter splitter) {
  std::vector<Mask> blocks = label_partition(k).blocks();
  while (split_once(blocks, splitter)) {
    Partition canon(k.space(), blocks);  // keep the lowest-index order canonical
    blocks = canon.blocks();
  }
  return {k.space(), std::move(blocks)};
}

bool respects_labels(const Partition& p, const KripkeModel& k) {
  for (Mask b : p.blocks())
    for (const auto& [name, m] : k.labels())
      if ((b & m) != 0 && !bits::subset(b, m)) return false;
  return true;
}

bool agree(bool definitional, bool completeness, const std::string& what) {
  if (definitional != completeness)
    throw ConsistencyError(what + ": the definition says " + (definitional ? "yes" : "no") +
                           " but the completeness characterization says " +
                           (completeness ? "yes" : "no"));
  return definitional;
}

bool forward_complete(const AbstractDomain& a, std::vector<Operator> ops, const KripkeModel& k) {
  const Language l = label_language(k);
  return completeness_check(CompletenessDirection::forward, a, ops, k, l).complete;
}

std::vector<Operator> with_atoms(const KripkeModel& k, std::initializer_list<const char*> names) {
  auto ops = atom_operators(k);
  for (const char* n : names) ops.push_back(builtin_operator(n));
  return ops;
}

/// States reachable from `from` along paths whose intermediate states
/// (including `from`) stay in `inside`, ending in `target`.
bool stutter_path(const KripkeModel& k, std::size_t from, Mask inside, Mask target) {
  Mask seen = bits::single(from);
  Mask frontier = seen;
  while (frontier != 0) {
    Mask next = 0;
    bits::for_each(frontier, [&](std::size_t s) { next |= k.successors(s); });
    if ((next & target) != 0) return true;
    next &= inside & ~seen;
    seen |= next;
    frontier = next;
  }
  return false;
}

Partition shell_partition(const KripkeModel& k, std::vector<Mask> seed,
                          std::initializer_list<const char*> ops) {
  const Language l = label_language(k);
  std::vector<Operator> f;
  for (const char* n : ops) f.push_back(builtin_operator(n));
  const auto start = moore_close(SetFamily(k.space(), std::move(seed)));
  return pr(forward_complete_shell(start, f, k, l));
}

}  // namespace

// ---------------------------------------------------------------------------

Partition bisim_partition(const KripkeModel& k) {
  return refine(k, [&](Mask b1, Mask b2, bool) -> std::optional<Mask> {
    return pre(k, b2) & b1;
  });
}

bool check_bisimulation(const Partition& p, const KripkeModel& k) {
  require_same_space(p.space(), k.space(), "bisimulation check");
  bool def = respects_labels(p, k);
  for (Mask b : p.blocks()) {
    if (!def) break;
    for (Mask c : p.blocks()) {
      // Either every member of b has a successor in c or none has.
      const Mask hit = pre(k, c) & b;
      if (hit != 0 && hit != b) {
        def = false;
        break;
      }
    }
  }
  // Pairwise form of the definition, independent of the block criterion.
  bool pairwise = respects_labels(p, k);
  for (std::size_t s = 0; s < k.size() && pairwise; ++s)
    for (std::size_t t = 0; t < k.size() && pairwise; ++t) {
      if (p.block_index_of(s) != p.block_index_of(t)) continue;
      bits::for_each(k.successors(s), [&](std::size_t u) {
        if ((k.successors(t) & p.block_of(u)) == 0) pairwise = false;
      });
    }
  agree(def, pairwise, "bisimulation");
  return agree(pairwise, forward_complete(adp(p), with_atoms(k, {"EX"}), k), "bisimulation");
}

Partition dbs_partition(const KripkeModel& k) {
  return refine(k, [&](Mask b1, Mask b2, bool same) -> std::optional<Mask> {
    if (same) return std::nullopt;
    return eu(k, b1, b2) & b1;
  });
}

bool check_dbs(const Partition& p, const KripkeModel& k) {
  require_same_space(p.space(), k.space(), "stuttering check");
  // s ~ s′ and s → t: some path from s′ stays in [s] and then enters [t].
  bool def = respects_labels(p, k);
  for (std::size_t s = 0; s < k.size() && def; ++s)
    for (std::size_t s2 = 0; s2 < k.size() && def; ++s2) {
      if (p.block_index_of(s) != p.block_index_of(s2)) continue;
      bits::for_each(k.successors(s), [&](std::size_t t) {
        if (!def || p.block_index_of(t) == p.block_index_of(s)) return;
        if (!stutter_path(k, s2, p.block_of(s), p.block_of(t))) def = false;
      });
    }
  return agree(def, forward_complete(adp(p), with_atoms(k, {"EU"}), k), "stuttering equivalence");
}

Preorder largest_simulation(const KripkeModel& k) {
  const std::size_t n = k.size();
  std::vector<Mask> rows(n, 0);
  for (std::size_t s = 0; s < n; ++s) {
    const auto ls = k.label_of(s);
    for (std::size_t t = 0; t < n; ++t) {
      const auto lt = k.label_of(t);
      if (std::includes(ls.begin(), ls.end(), lt.begin(), lt.end())) rows[s] |= bits::single(t);
    }
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t s = 0; s < n; ++s) {
      Mask keep = 0;
      bits::for_each(rows[s], [&](std::size_t s2) {
        bool ok = true;
        bits::for_each(k.successors(s), [&](std::size_t t) {
          if ((k.successors(s2) & rows[t]) == 0) ok = false;
        });
        if (ok) keep |= bits::single(s2);
      });
      if (keep != rows[s]) {
        rows[s] = keep;
        changed = true;
      }
    }
  }
  return {k.space(), std::move(rows)};
}

bool check_simulation(const Preorder& r, const KripkeModel& k) {
  require_same_space(r.space(), k.space(), "simulation check");
  bool def = true;
  for (std::size_t s = 0; s < k.size() && def; ++s) {
    const auto ls = k.label_of(s);
    bits::for_each(r.rows()[s], [&](std::size_t s2) {
      if (!def) return;
      const auto l2 = k.label_of(s2);
      if (!std::includes(ls.begin(), ls.end(), l2.begin(), l2.end())) def = false;
      bits::for_each(k.successors(s), [&](std::size_t t) {
        if ((k.successors(s2) & r.rows()[t]) == 0) def = false;
      });
    });
  }
  return agree(def, forward_complete(add(r), with_atoms(k, {"AX"}), k), "simulation");
}

Partition shell_bisim_partition(const KripkeModel& k) {
  return shell_partition(k, label_partition(k).blocks(), {"not", "EX"});
}

Partition shell_dbs_partition(const KripkeModel& k) {
  return shell_partition(k, label_partition(k).blocks(), {"not", "EU"});
}

Partition shell_simeq_partition(const KripkeModel& k) {
  std::vector<Mask> seed;
  for (const auto& [name, m] : k.labels()) {
    seed.push_back(m);
    seed.push_back(k.space()->full() & ~m);
  }
  return shell_partition(k, std::move(seed), {"or", "AX"});
}

Partition simeq_partition(const KripkeModel& k) {
  Partition kernel = largest_simulation(with_negated_labels(k)).kernel();
  const Partition shell = shell_simeq_partition(k);
  if (!(kernel == shell))
    throw ConsistencyError("simulation equivalence: kernel " + kernel.str() +
                           " differs from shell route " + shell.str());
  return kernel;
}

std::optional<EquivalenceKind> parse_equivalence_kind(std::string_view name) {
  if (name == "bisim") return EquivalenceKind::bisim;
  if (name == "dbs") return EquivalenceKind::dbs;
  if (name == "sim") return EquivalenceKind::sim;
  if (name == "simeq") return EquivalenceKind::simeq;
  return std::nullopt;
}

std::string to_string(EquivalenceKind kind) {
  switch (kind) {
    case EquivalenceKind::bisim: return "bisim";
    case EquivalenceKind::dbs: return "dbs";
    case EquivalenceKind::sim: return "sim";
    case EquivalenceKind::simeq: return "simeq";
  }
  return "?";
}

EquivalenceReport equivalence_report(EquivalenceKind kind, const KripkeModel& k) {
  EquivalenceReport rep{kind, std::nullopt, std::nullopt, {}, true};
  switch (kind) {
    case EquivalenceKind::bisim: {
      const Partition p = bisim_partition(k);
      const Partition s = shell_bisim_partition(k);
      rep.routes["refinement"] = p.str();
      rep.routes["shell"] = s.str();
      rep.routes["checker"] = check_bisimulation(p, k) ? "true" : "false";
      rep.consistent = p == s && check_bisimulation(p, k);
      rep.partition = p;
      break;
    }
    case EquivalenceKind::dbs: {
      const Partition p = dbs_partition(k);
      const Partition s = shell_dbs_partition(k);
      rep.routes["refinement"] = p.str();
      rep.routes["shell"] = s.str();
      rep.routes["checker"] = check_dbs(p, k) ? "true" : "false";
      rep.consistent = p == s && check_dbs(p, k);
      rep.partition = p;
      break;
    }
    case EquivalenceKind::sim: {
      const Preorder r = largest_simulation(k);
      rep.routes["refinement"] = r.str();
      rep.routes["checker"] = check_simulation(r, k) ? "true" : "false";
      rep.consistent = check_simulation(r, k);
      rep.preorder = r;
      break;
    }
    case EquivalenceKind::simeq: {
      const Partition kernel = largest_simulation(with_negated_labels(k)).kernel();
      const Partition s = shell_simeq_partition(k);
      rep.routes["kernel"] = kernel.str();
      rep.routes["shell"] = s.str();
      rep.consistent = kernel == s;
      rep.partition = kernel;
      break;
    }
  }
  return rep;
}

}  // namespace spai
