#include "spai/abstraction.hh"

#include <random>

#include "spai/detail/closure.hh"

namespace spai {

namespace {

void require_closed(const AbstractDomain& a, std::span<const Mask> args, const std::string& op) {
  for (Mask m : args)
    if (!a.contains(m))
      throw UsageError("argument " + format_set(*a.space(), m) + " of '" + op +
                       "' is not closed in the domain");
}

/// The node with its immediate subformulas replaced by #1..#n.
Formula shallow(const Formula& f) {
  auto n = std::make_shared<FormulaNode>(*f);
  for (std::size_t i = 0; i < n->args.size(); ++i) n->args[i] = fml::placeholder(i + 1);
  return n;
}

struct PairHash {
  std::size_t operator()(const std::pair<Mask, Mask>& p) const {
    return std::hash<Mask>{}(p.first * 0x9E3779B97F4A7C15ULL ^ p.second);
  }
};

}  // namespace

Mask bca_apply(const AbstractDomain& a, const Operator& op, const KripkeModel& k,
               const Language& l, std::span<const Mask> args) {
  require_closed(a, args, op.name);
  return a.closure(apply_operator(op, k, l, args));
}

Mask eval_abstract(const Formula& f, const AbstractDomain& a, const KripkeModel& k,
                   const Language& l) {
  if (f->kind == FormulaKind::atom) return a.closure(eval_concrete(f, k, l));
  if (f->kind == FormulaKind::placeholder)
    throw UsageError("placeholders cannot be evaluated abstractly");
  std::vector<Mask> vals;
  for (const auto& g : f->args) vals.push_back(eval_abstract(g, a, k, l));
  return a.closure(eval_concrete(shallow(f), k, l, vals));
}

// ---------------------------------------------------------------------------

CompletenessReport completeness_check(CompletenessDirection dir, const AbstractDomain& a,
                                      std::span<const Operator> ops, const KripkeModel& k,
                                      const Language& l, const CompletenessOptions& options) {
  require_same_space(a.space(), k.space(), "completeness check");
  CompletenessReport rep;
  const std::size_t n = k.size();
  const auto& image = a.image().masks();

  auto tuples_of = [](std::uint64_t base, std::size_t arity, std::uint64_t limit) {
    std::uint64_t t = 1;
    for (std::size_t i = 0; i < arity; ++i) {
      if (base != 0 && t > limit / base) return limit + 1;
      t *= base;
    }
    return t;
  };

  for (const auto& op : ops) {
    if (dir == CompletenessDirection::forward) {
      if (tuples_of(image.size(), op.arity, options.tuple_limit) > options.tuple_limit)
        throw CapacityError("forward completeness check for '" + op.name +
                            "' exceeds the tuple limit");
      std::vector<std::size_t> idx(op.arity, 0);
      std::vector<Mask> args(op.arity);
      for (;;) {
        for (std::size_t j = 0; j < op.arity; ++j) args[j] = image[idx[j]];
        const Mask v = apply_operator(op, k, l, args);
        ++rep.checked;
        if (!a.contains(v)) {
          rep.complete = false;
          rep.op = op.name;
          rep.args = args;
          rep.lhs = v;
          rep.rhs = a.closure(v);
          return rep;
        }
        std::size_t j = op.arity;
        bool done = true;
        while (j-- > 0) {
          if (++idx[j] < image.size()) {
            done = false;
            break;
          }
          idx[j] = 0;
        }
        if (done) break;
      }
      continue;
    }

    // Backward.
    auto check = [&](const std::vector<Mask>& args) {
      std::vector<Mask> closed(args.size());
      for (std::size_t j = 0; j < args.size(); ++j) closed[j] = a.closure(args[j]);
      const Mask lhs = a.closure(apply_operator(op, k, l, args));
      const Mask rhs = a.closure(apply_operator(op, k, l, closed));
      ++rep.checked;
      if (lhs != rhs) {
        rep.complete = false;
        rep.op = op.name;
        rep.args = args;
        rep.lhs = lhs;
        rep.rhs = rhs;
        return false;
      }
      return true;
    };
    const std::uint64_t subsets = std::uint64_t{1} << n;
    const bool exhaustive =
        n <= options.exhaustive_states &&
        tuples_of(subsets, op.arity, options.tuple_limit) <= options.tuple_limit;
    std::vector<Mask> args(op.arity, 0);
    if (exhaustive) {
      for (;;) {
        if (!check(args)) return rep;
        std::size_t j = op.arity;
        bool done = true;
        while (j-- > 0) {
          if (++args[j] < subsets) {
            done = false;
            break;
          }
          args[j] = 0;
        }
        if (done) break;
      }
    } else {
      rep.exhaustive = false;
      std::mt19937_64 rng(options.seed);
      for (std::size_t s = 0; s < options.samples; ++s) {
        for (auto& m : args) m = rng() & k.space()->full();
        if (!check(args)) return rep;
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------

AbstractSemanticStructure bca_structure(const AbstractDomain& a, const KripkeModel& k,
                                        const Language& l) {
  require_same_space(a.space(), k.space(), "abstract structure");
  AbstractSemanticStructure s{a, {}, {}};
  for (const auto& at : l.atoms()) s.atoms.push_back(a.closure(at.denotation));
  for (const auto& op : l.operators()) {
    s.operators.push_back([a, op, &k, &l](std::span<const Mask> args) {
      return a.closure(apply_operator(op, k, l, args));
    });
  }
  return s;
}

AbstractSemanticStructure kripke_structure(const Partition& p, std::vector<Mask> block_successors,
                                           const KripkeModel& k, const Language& l,
                                           SpaceRef blocks, const AbstractDomain* domain) {
  require_same_space(p.space(), k.space(), "abstract Kripke structure");
  if (!blocks) blocks = block_space(p);
  auto model = std::make_shared<const KripkeModel>(blocks, std::move(block_successors));
  std::vector<BoundAtom> block_atoms;
  for (const auto& at : l.atoms())
    block_atoms.push_back({at.name, at.syntax, p.abstract(at.denotation)});
  auto lang = std::make_shared<const Language>(l.with_atoms(blocks, block_atoms));
  AbstractSemanticStructure s{domain ? *domain : adp(p), {}, {}};
  for (const auto& at : l.atoms()) s.atoms.push_back(p.cover(at.denotation));
  for (const auto& op : l.operators()) {
    s.operators.push_back([p, op, model, lang](std::span<const Mask> args) {
      std::vector<Mask> abs(args.size());
      for (std::size_t i = 0; i < args.size(); ++i) abs[i] = p.abstract(args[i]);
      return p.concretize(apply_operator(op, *model, *lang, abs));
    });
  }
  return s;
}

Mask eval_in_structure(const Formula& f, const AbstractSemanticStructure& s, const Language& l) {
  const auto& atoms = l.atoms();
  const auto& ops = l.operators();
  if (f->kind == FormulaKind::atom) {
    for (std::size_t i = 0; i < atoms.size(); ++i)
      if (atoms[i].name == f->name) return s.atoms[i];
    throw ResolutionError("unknown atom '" + f->name + "'");
  }
  std::vector<Mask> vals;
  for (const auto& g : f->args) vals.push_back(eval_in_structure(g, s, l));
  if (f->kind == FormulaKind::call) {
    for (std::size_t i = 0; i < ops.size(); ++i)
      if (ops[i].name == f->name && ops[i].arity == vals.size()) return s.operators[i](vals);
    throw ResolutionError("unknown operator '" + f->name + "'");
  }
  const Formula pattern = shallow(f);
  for (std::size_t i = 0; i < ops.size(); ++i)
    if (ops[i].inline_syntax && same_formula(ops[i].body, pattern)) return s.operators[i](vals);
  throw ResolutionError("'" + to_string(pattern) + "' is not an operator of language '" +
                        l.name() + "'");
}

std::string to_string(Preservation p) {
  switch (p) {
    case Preservation::strong: return "strong";
    case Preservation::weak_only: return "weak-only";
    case Preservation::neither: return "neither";
  }
  return "?";
}

PairedCheckResult paired_sp_check(const KripkeModel& k, const Language& l,
                                  const AbstractSemanticStructure& s, bool stop_early,
                                  std::size_t capacity) {
  require_same_space(k.space(), s.domain.space(), "strong preservation check");
  using Pair = std::pair<Mask, Mask>;
  std::vector<Pair> seeds;
  for (std::size_t i = 0; i < l.atoms().size(); ++i)
    seeds.emplace_back(l.atoms()[i].denotation, s.atoms.at(i));
  std::vector<std::size_t> arities;
  for (const auto& op : l.operators()) arities.push_back(op.arity);

  PairedCheckResult res;
  std::optional<std::size_t> first_not_strong, first_not_weak;
  std::vector<Mask> cargs, aargs;
  auto apply = [&](std::size_t op, const std::vector<const Pair*>& args) {
    cargs.clear();
    aargs.clear();
    for (const Pair* p : args) {
      cargs.push_back(p->first);
      aargs.push_back(p->second);
    }
    return Pair{apply_operator(l.operators()[op], k, l, cargs), s.operators[op](aargs)};
  };
  auto visit = [&](std::size_t i, const Pair& p) {
    if (p.first != p.second) {
      if (!first_not_strong) first_not_strong = i;
      if (!first_not_weak && !bits::subset(p.second, p.first)) first_not_weak = i;
      if (stop_early) return false;
    }
    return true;
  };
  auto r = detail::close_under<Pair, PairHash>(seeds, arities, apply, visit, capacity);

  // Witness formulas follow the first derivation of each pair.
  std::vector<Formula> formulas(r.values.size());
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    const auto& d = r.derivations[i];
    if (d.is_seed()) {
      formulas[i] = l.atoms()[d.seed].syntax;
    } else {
      std::vector<Formula> args;
      for (std::size_t j : d.args) args.push_back(formulas[j]);
      formulas[i] = l.operators()[d.op].apply_syntax(std::move(args));
    }
  }

  res.pairs = r.values.size();
  if (first_not_weak) res.verdict = Preservation::neither;
  else if (first_not_strong) res.verdict = Preservation::weak_only;
  if (first_not_strong) {
    const std::size_t w = first_not_weak ? *first_not_weak : *first_not_strong;
    res.witness = formulas[w];
    res.concrete = r.values[w].first;
    res.abstract = r.values[w].second;
  }
  res.semantics = std::move(r.values);
  res.formulas = std::move(formulas);
  return res;
}

FixpointTransferReport gfp_transfer_check(const AbstractDomain& a, const Operator& f,
                                          const KripkeModel& k, const Language& l) {
  if (f.arity != 1) throw UsageError("fixpoint transfer needs a unary operator");
  FixpointTransferReport rep;
  const Operator ops[] = {f};
  rep.hypothesis =
      completeness_check(CompletenessDirection::forward, a, ops, k, l).complete;
  auto iterate = [](Mask z, auto step) {
    for (;;) {
      const Mask next = step(z);
      if (next == z) return z;
      z = next;
    }
  };
  auto concrete = [&](Mask z) {
    const Mask arg[] = {z};
    return apply_operator(f, k, l, arg);
  };
  auto abstract = [&](Mask z) {
    const Mask arg[] = {z};
    return a.closure(apply_operator(f, k, l, arg));
  };
  const Mask full = k.space()->full();
  rep.alpha_gfp = a.closure(iterate(full, concrete));
  rep.abstract_gfp = iterate(full, abstract);
  rep.gfp_equal = rep.alpha_gfp == rep.abstract_gfp;
  if (a.contains(0)) {
    rep.lfp_checked = true;
    rep.alpha_lfp = a.closure(iterate(Mask{0}, concrete));
    rep.abstract_lfp = iterate(Mask{0}, abstract);
    rep.lfp_equal = rep.alpha_lfp == rep.abstract_lfp;
  }
  return rep;
}

}  // namespace spai
