#include "oreext/core_algebra.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include "oreext/parallel.hpp"

namespace oreext {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotAGroup: return "NotAGroup";
    case ErrorKind::NotEndomorphism: return "NotEndomorphism";
    case ErrorKind::BadZeroOperator: return "BadZeroOperator";
    case ErrorKind::EmptySet: return "EmptySet";
    case ErrorKind::NotStable: return "NotStable";
    case ErrorKind::MismatchedOperators: return "MismatchedOperators";
    case ErrorKind::NotAdditive: return "NotAdditive";
    case ErrorKind::NotAStable: return "NotAStable";
    case ErrorKind::SortMismatch: return "SortMismatch";
    case ErrorKind::MissingCompanionMaps: return "MissingCompanionMaps";
    case ErrorKind::HypothesisNotMet: return "HypothesisNotMet";
    case ErrorKind::DegreeTooHigh: return "DegreeTooHigh";
    case ErrorKind::NotLeftDistributive: return "NotLeftDistributive";
    case ErrorKind::NotRightIdeal: return "NotRightIdeal";
    case ErrorKind::UnknownId: return "UnknownId";
    case ErrorKind::BadParams: return "BadParams";
    case ErrorKind::ClaimFailed: return "ClaimFailed";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::SemanticError: return "SemanticError";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

AlgebraError::AlgebraError(ErrorKind kind, const std::string& message,
                           std::vector<std::string> witness)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      witness_(std::move(witness)) {}

// ---------------------------------------------------------------------------
// FiniteAbelianGroup

struct FiniteAbelianGroup::Data {
  std::vector<std::string> names;
  std::vector<Elem> add;
  std::vector<Elem> neg;
  Elem zero = 0;
  std::unordered_map<std::string, Elem> index;
};

FiniteAbelianGroup::FiniteAbelianGroup()
    : FiniteAbelianGroup(std::make_shared<const Data>(Data{{"0"}, {0}, {0}, 0, {{"0", 0}}})) {}

FiniteAbelianGroup::FiniteAbelianGroup(std::shared_ptr<const Data> data)
    : data_(std::move(data)),
      add_(data_->add.data()),
      neg_(data_->neg.data()),
      n_(data_->names.size()) {}

FiniteAbelianGroup FiniteAbelianGroup::trusted(std::vector<std::string> names,
                                               std::vector<Elem> add, std::vector<Elem> neg,
                                               Elem zero) {
  Data d;
  d.index.reserve(names.size());
  for (Elem i = 0; i < names.size(); ++i) d.index.emplace(names[i], i);
  d.names = std::move(names);
  d.add = std::move(add);
  d.neg = std::move(neg);
  d.zero = zero;
  return FiniteAbelianGroup(std::make_shared<const Data>(std::move(d)));
}

FiniteAbelianGroup FiniteAbelianGroup::from_tables(std::vector<std::string> names,
                                                   std::vector<Elem> add, std::vector<Elem> neg,
                                                   Elem zero) {
  const std::size_t n = names.size();
  if (n == 0) throw AlgebraError(ErrorKind::NotAGroup, "empty element list");
  {
    std::set<std::string> seen;
    for (const auto& nm : names)
      if (!seen.insert(nm).second)
        throw AlgebraError(ErrorKind::NotAGroup, "duplicate element '" + nm + "'", {nm});
  }
  if (add.size() != n * n || neg.size() != n)
    throw AlgebraError(ErrorKind::NotAGroup, "tables are not total");
  if (zero >= n) throw AlgebraError(ErrorKind::NotAGroup, "zero is not a listed element");
  for (Elem v : add)
    if (v >= n) throw AlgebraError(ErrorKind::NotAGroup, "add table entry out of range");
  for (Elem v : neg)
    if (v >= n) throw AlgebraError(ErrorKind::NotAGroup, "neg table entry out of range");

  auto A = [&](Elem a, Elem b) { return add[a * n + b]; };
  for (Elem a = 0; a < n; ++a)
    if (A(zero, a) != a || A(a, zero) != a)
      throw AlgebraError(ErrorKind::NotAGroup, "identity axiom fails", {names[zero], names[a]});
  for (Elem a = 0; a < n; ++a)
    if (A(a, neg[a]) != zero)
      throw AlgebraError(ErrorKind::NotAGroup, "inverse axiom fails", {names[a], names[neg[a]]});
  for (Elem a = 0; a < n; ++a)
    for (Elem b = a + 1; b < n; ++b)
      if (A(a, b) != A(b, a))
        throw AlgebraError(ErrorKind::NotAGroup, "commutativity fails", {names[a], names[b]});
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      const Elem ab = A(a, b);
      for (Elem c = 0; c < n; ++c)
        if (A(ab, c) != A(a, A(b, c)))
          throw AlgebraError(ErrorKind::NotAGroup, "associativity fails",
                             {names[a], names[b], names[c]});
    }
  return trusted(std::move(names), std::move(add), std::move(neg), zero);
}

FiniteAbelianGroup FiniteAbelianGroup::cyclic(unsigned n) {
  if (n == 0) throw AlgebraError(ErrorKind::BadParams, "cyclic group of order 0");
  std::vector<std::string> names(n);
  std::vector<Elem> add(static_cast<std::size_t>(n) * n), neg(n);
  for (unsigned a = 0; a < n; ++a) {
    names[a] = std::to_string(a);
    neg[a] = (n - a) % n;
    for (unsigned b = 0; b < n; ++b) add[a * n + b] = (a + b) % n;
  }
  return trusted(std::move(names), std::move(add), std::move(neg), 0);
}

FiniteAbelianGroup FiniteAbelianGroup::cyclic_product(std::span<const unsigned> orders) {
  if (orders.empty()) return FiniteAbelianGroup();
  if (orders.size() == 1) return cyclic(orders[0]);
  std::size_t n = 1;
  for (unsigned o : orders) {
    if (o == 0) throw AlgebraError(ErrorKind::BadParams, "cyclic factor of order 0");
    n *= o;
  }
  const std::size_t k = orders.size();
  auto decode = [&](std::size_t idx) {
    std::vector<unsigned> digits(k);
    for (std::size_t i = k; i-- > 0;) {
      digits[i] = static_cast<unsigned>(idx % orders[i]);
      idx /= orders[i];
    }
    return digits;
  };
  auto encode = [&](const std::vector<unsigned>& digits) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < k; ++i) idx = idx * orders[i] + digits[i];
    return static_cast<Elem>(idx);
  };
  std::vector<std::vector<unsigned>> coords(n);
  std::vector<std::string> names(n);
  for (std::size_t e = 0; e < n; ++e) {
    coords[e] = decode(e);
    std::string s = "(";
    for (std::size_t i = 0; i < k; ++i) s += (i ? "," : "") + std::to_string(coords[e][i]);
    names[e] = s + ")";
  }
  std::vector<Elem> add(n * n), neg(n);
  std::vector<unsigned> tmp(k);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t i = 0; i < k; ++i) tmp[i] = (orders[i] - coords[a][i]) % orders[i];
    neg[a] = encode(tmp);
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t i = 0; i < k; ++i) tmp[i] = (coords[a][i] + coords[b][i]) % orders[i];
      add[a * n + b] = encode(tmp);
    }
  }
  return trusted(std::move(names), std::move(add), std::move(neg), 0);
}

std::size_t FiniteAbelianGroup::order() const noexcept { return n_; }
Elem FiniteAbelianGroup::zero() const noexcept { return data_->zero; }

Elem FiniteAbelianGroup::times(long long z, Elem b) const {
  Elem base = z < 0 ? neg(b) : b;
  unsigned long long k = z < 0 ? static_cast<unsigned long long>(-(z + 1)) + 1ULL
                               : static_cast<unsigned long long>(z);
  Elem acc = zero();
  while (k) {
    if (k & 1ULL) acc = add(acc, base);
    base = add(base, base);
    k >>= 1;
  }
  return acc;
}

std::size_t FiniteAbelianGroup::order_of(Elem b) const {
  std::size_t k = 1;
  for (Elem x = b; x != zero(); x = add(x, b)) ++k;
  return k;
}

const std::string& FiniteAbelianGroup::name(Elem e) const { return data_->names.at(e); }
const std::vector<std::string>& FiniteAbelianGroup::names() const { return data_->names; }

std::optional<Elem> FiniteAbelianGroup::find(std::string_view name) const {
  auto it = data_->index.find(std::string(name));
  if (it == data_->index.end()) return std::nullopt;
  return it->second;
}

Elem FiniteAbelianGroup::parse(std::string_view name) const {
  if (auto e = find(name)) return *e;
  throw AlgebraError(ErrorKind::UnknownId, "unknown element '" + std::string(name) + "'",
                     {std::string(name)});
}

bool FiniteAbelianGroup::same_tables(const FiniteAbelianGroup& other) const {
  return data_->names == other.data_->names && data_->add == other.data_->add &&
         data_->neg == other.data_->neg && data_->zero == other.data_->zero;
}

// ---------------------------------------------------------------------------
// OperatorSet / GroupWithOperators

std::optional<Elem> OperatorSet::find(std::string_view name) const {
  for (Elem i = 0; i < names.size(); ++i)
    if (names[i] == name) return i;
  return std::nullopt;
}

Elem OperatorSet::parse(std::string_view name) const {
  if (auto e = find(name)) return *e;
  throw AlgebraError(ErrorKind::UnknownId, "unknown operator '" + std::string(name) + "'",
                     {std::string(name)});
}

GroupWithOperators::GroupWithOperators(FiniteAbelianGroup group,
                                       std::shared_ptr<const OperatorSet> ops,
                                       std::shared_ptr<const std::vector<Elem>> action)
    : group_(std::move(group)),
      ops_(std::move(ops)),
      action_store_(std::move(action)),
      action_(action_store_->data()) {}

GroupWithOperators GroupWithOperators::trusted(FiniteAbelianGroup group, OperatorSet ops,
                                               std::vector<Elem> action) {
  return GroupWithOperators(std::move(group), std::make_shared<const OperatorSet>(std::move(ops)),
                            std::make_shared<const std::vector<Elem>>(std::move(action)));
}

GroupWithOperators GroupWithOperators::zero_action(FiniteAbelianGroup group) {
  std::vector<Elem> action(group.order(), group.zero());
  return trusted(std::move(group), OperatorSet{{"eps"}, 0}, std::move(action));
}

GroupWithOperators GroupWithOperators::validate(FiniteAbelianGroup group,
                                                std::vector<std::string> op_names,
                                                std::optional<std::string> zero_op,
                                                std::vector<Table> action_rows) {
  const std::size_t n = group.order();
  if (op_names.size() != action_rows.size())
    throw AlgebraError(ErrorKind::BadParams, "one action row per operator is required");
  {
    std::set<std::string> seen;
    for (const auto& nm : op_names)
      if (!seen.insert(nm).second)
        throw AlgebraError(ErrorKind::BadParams, "duplicate operator '" + nm + "'", {nm});
  }
  for (Elem a = 0; a < action_rows.size(); ++a) {
    if (action_rows[a].size() != n)
      throw AlgebraError(ErrorKind::BadParams, "action row of '" + op_names[a] + "' is not total");
    for (Elem v : action_rows[a])
      if (v >= n) throw AlgebraError(ErrorKind::BadParams, "action entry out of range");
  }

  OperatorSet ops;
  if (zero_op) {
    auto it = std::find(op_names.begin(), op_names.end(), *zero_op);
    if (it == op_names.end())
      throw AlgebraError(ErrorKind::BadZeroOperator, "zero operator is not listed", {*zero_op});
    ops.zero = static_cast<Elem>(it - op_names.begin());
  } else {
    std::string eps = "eps";
    while (std::find(op_names.begin(), op_names.end(), eps) != op_names.end()) eps += "'";
    op_names.push_back(eps);
    action_rows.emplace_back(n, group.zero());
    ops.zero = static_cast<Elem>(op_names.size() - 1);
  }
  ops.names = std::move(op_names);

  for (Elem b = 0; b < n; ++b)
    if (action_rows[ops.zero][b] != group.zero())
      throw AlgebraError(ErrorKind::BadZeroOperator, "zero operator does not annihilate",
                         {ops.names[ops.zero], group.name(b)});

  for (Elem a = 0; a < ops.size(); ++a) {
    const Table& row = action_rows[a];
    for (Elem b = 0; b < n; ++b)
      for (Elem c = 0; c < n; ++c)
        if (row[group.add(b, c)] != group.add(row[b], row[c]))
          throw AlgebraError(ErrorKind::NotEndomorphism,
                             "operator '" + ops.names[a] + "' is not an endomorphism",
                             {ops.names[a], group.name(b), group.name(c)});
  }

  std::vector<Elem> flat;
  flat.reserve(ops.size() * n);
  for (const auto& row : action_rows) flat.insert(flat.end(), row.begin(), row.end());
  return trusted(std::move(group), std::move(ops), std::move(flat));
}

// ---------------------------------------------------------------------------
// Sets and closures

bool Subgroup::contains(Elem e) const {
  return std::binary_search(members.begin(), members.end(), e);
}

ElementSet make_set(std::vector<Elem> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  return elems;
}

bool is_subset(const ElementSet& small, const ElementSet& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

namespace {

ElementSet from_mask(const std::vector<char>& mask) {
  ElementSet out;
  for (Elem i = 0; i < mask.size(); ++i)
    if (mask[i]) out.push_back(i);
  return out;
}

}  // namespace

ElementSet operator_images(const ActionView& action, std::span<const Elem> set, unsigned n) {
  ElementSet cur = make_set({set.begin(), set.end()});
  for (unsigned step = 0; step < n; ++step) {
    std::vector<char> mask(action.target->order(), 0);
    for (Elem a = 0; a < action.num_ops; ++a)
      for (Elem s : cur) mask[action.act(a, s)] = 1;
    cur = from_mask(mask);
  }
  return cur;
}

ElementSet stable_closure(const ActionView& action, std::span<const Elem> set) {
  if (set.empty()) throw AlgebraError(ErrorKind::EmptySet, "stable closure of the empty set");
  std::vector<char> in(action.target->order(), 0);
  std::deque<Elem> queue;
  for (Elem s : set)
    if (!in[s]) {
      in[s] = 1;
      queue.push_back(s);
    }
  while (!queue.empty()) {
    const Elem x = queue.front();
    queue.pop_front();
    for (Elem a = 0; a < action.num_ops; ++a) {
      const Elem y = action.act(a, x);
      if (!in[y]) {
        in[y] = 1;
        queue.push_back(y);
      }
    }
  }
  return from_mask(in);
}

ElementSet stable_closure(const GroupWithOperators& g, std::span<const Elem> set) {
  return stable_closure(g.view(), set);
}

Subgroup additive_span(const FiniteAbelianGroup& group, std::span<const Elem> set) {
  std::vector<char> in(group.order(), 0);
  std::vector<Elem> gens = make_set({set.begin(), set.end()});
  std::deque<Elem> queue{group.zero()};
  in[group.zero()] = 1;
  while (!queue.empty()) {
    const Elem x = queue.front();
    queue.pop_front();
    for (Elem g : gens) {
      const Elem y = group.add(x, g);
      if (!in[y]) {
        in[y] = 1;
        queue.push_back(y);
      }
    }
  }
  return Subgroup{from_mask(in)};
}

Subgroup generated_stable_subgroup(const ActionView& action, std::span<const Elem> set,
                                   SpanMode mode) {
  if (set.empty()) throw AlgebraError(ErrorKind::EmptySet, "generated subgroup of the empty set");
  ElementSet seeds;
  if (mode == SpanMode::full) {
    seeds = stable_closure(action, set);
  } else {
    seeds = stable_closure(action, operator_images(action, set, 1));
  }
  return additive_span(*action.target, seeds);
}

Subgroup generated_stable_subgroup(const GroupWithOperators& g, std::span<const Elem> set,
                                   SpanMode mode) {
  Subgroup out = generated_stable_subgroup(g.view(), set, mode);
  if (auto w = stability_violation(g.view(), out.members))
    throw AlgebraError(ErrorKind::Internal, "generated subgroup is not stable", w->tuple);
  return out;
}

std::optional<Witness> stability_violation(const ActionView& action, const ElementSet& set) {
  std::vector<char> in(action.target->order(), 0);
  for (Elem e : set) in[e] = 1;
  for (Elem a = 0; a < action.num_ops; ++a)
    for (Elem c : set)
      if (!in[action.act(a, c)])
        return Witness{"a*c escapes the set", {std::to_string(a), action.target->name(c)}};
  return std::nullopt;
}

std::optional<Witness> subgroup_violation(const FiniteAbelianGroup& group, const ElementSet& set) {
  std::vector<char> in(group.order(), 0);
  for (Elem e : set) in[e] = 1;
  if (!in[group.zero()]) return Witness{"zero missing", {group.name(group.zero())}};
  for (Elem a : set) {
    if (!in[group.neg(a)]) return Witness{"not closed under negation", {group.name(a)}};
    for (Elem b : set)
      if (!in[group.add(a, b)])
        return Witness{"not closed under addition", {group.name(a), group.name(b)}};
  }
  return std::nullopt;
}

std::optional<Witness> additivity_violation(const FiniteAbelianGroup& source,
                                            const FiniteAbelianGroup& target,
                                            std::span<const Elem> f) {
  const std::size_t n = source.order();
  for (Elem b = 0; b < n; ++b)
    for (Elem c = 0; c < n; ++c)
      if (f[source.add(b, c)] != target.add(f[b], f[c]))
        return Witness{"f(b+c) != f(b)+f(c)", {source.name(b), source.name(c)}};
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// s-unitality

namespace {

using Mask = std::uint32_t;

Mask span_mask(const FiniteAbelianGroup& group, Mask gens) {
  Mask in = Mask{1} << group.zero();
  Elem queue[32];
  std::size_t head = 0, tail = 0;
  queue[tail++] = group.zero();
  while (head < tail) {
    const Elem x = queue[head++];
    for (Mask g = gens; g; g &= g - 1) {
      const Elem y = group.add(x, static_cast<Elem>(__builtin_ctz(g)));
      if (!(in >> y & 1U)) {
        in |= Mask{1} << y;
        queue[tail++] = y;
      }
    }
  }
  return in;
}

Mask to_mask(const ElementSet& s) {
  Mask m = 0;
  for (Elem e : s) m |= Mask{1} << e;
  return m;
}

}  // namespace

SUnitalityReport sunitality_report(const GroupWithOperators& g, std::size_t exhaustive_limit) {
  const auto& B = g.group();
  const std::size_t n = B.order();
  SUnitalityReport r;

  r.s_unital = true;
  for (Elem b = 0; b < n && r.s_unital; ++b) {
    bool found = false;
    for (Elem a = 0; a < g.num_ops() && !found; ++a) found = g.act(a, b) == b;
    if (!found) {
      r.s_unital = false;
      r.s_witness = Witness{"b not in Ab", {B.name(b)}};
    }
  }

  std::vector<Subgroup> full(n), bracket(n);
  r.weakly_s_unital = true;
  for (Elem b = 0; b < n; ++b) {
    const Elem one[] = {b};
    full[b] = generated_stable_subgroup(g, one, SpanMode::full);
    bracket[b] = generated_stable_subgroup(g, one, SpanMode::bracket);
    if (r.weakly_s_unital && !bracket[b].contains(b)) {
      r.weakly_s_unital = false;
      r.weak_witness = Witness{"b not in [b]", {B.name(b)}};
    }
  }

  bool all_equal = true;
  for (Elem b = 0; b < n && all_equal; ++b) {
    ++r.subsets_checked;
    if (full[b] != bracket[b]) {
      all_equal = false;
      r.equality_witness = Witness{"<S> != [S]", {B.name(b)}};
    }
  }

  if (all_equal && n <= exhaustive_limit && n <= 31) {
    r.subsets_exhaustive = true;
    std::vector<Mask> closure_of(n), bracket_seed_of(n);
    for (Elem b = 0; b < n; ++b) {
      const Elem one[] = {b};
      closure_of[b] = to_mask(stable_closure(g, one));
      bracket_seed_of[b] = to_mask(stable_closure(g.view(), operator_images(g.view(), one, 1)));
    }
    const std::size_t total = (std::size_t{1} << n) - 1;
    auto differs = [&](std::size_t idx) {
      const Mask subset = static_cast<Mask>(idx + 1);
      Mask seeds_full = 0, seeds_bracket = 0;
      for (Mask m = subset; m; m &= m - 1) {
        const auto e = static_cast<Elem>(__builtin_ctz(m));
        seeds_full |= closure_of[e];
        seeds_bracket |= bracket_seed_of[e];
      }
      return span_mask(B, seeds_full) != span_mask(B, seeds_bracket);
    };
    if (auto bad = find_first(total, differs)) {
      all_equal = false;
      std::vector<std::string> tuple;
      for (Mask m = static_cast<Mask>(*bad + 1); m; m &= m - 1)
        tuple.push_back(B.name(static_cast<Elem>(__builtin_ctz(m))));
      r.equality_witness = Witness{"<S> != [S]", tuple};
      r.subsets_checked = *bad + 1;
    } else {
      r.subsets_checked = total;
    }
  }
  r.equivalence_consistent = (all_equal == r.weakly_s_unital);
  return r;
}

// ---------------------------------------------------------------------------
// Quotients, products, subgroup lattices

Quotient quotient(const GroupWithOperators& g, const Subgroup& c) {
  const auto& B = g.group();
  if (auto w = subgroup_violation(B, c.members))
    throw AlgebraError(ErrorKind::NotStable, "C is not a subgroup: " + w->what, w->tuple);
  if (auto w = stability_violation(g.view(), c.members)) {
    std::vector<std::string> tuple{g.ops().names[std::stoul(w->tuple[0])], w->tuple[1]};
    throw AlgebraError(ErrorKind::NotStable, "C is not stable", tuple);
  }
  const std::size_t n = B.order();
  constexpr Elem unset = ~Elem{0};
  Table proj(n, unset);
  std::vector<Elem> reps;
  for (Elem b = 0; b < n; ++b) {
    if (proj[b] != unset) continue;
    const auto k = static_cast<Elem>(reps.size());
    reps.push_back(b);
    for (Elem m : c.members) proj[B.add(b, m)] = k;
  }
  const std::size_t q = reps.size();
  std::vector<std::string> names(q);
  std::vector<Elem> add(q * q), neg(q);
  for (Elem i = 0; i < q; ++i) {
    names[i] = "[" + B.name(reps[i]) + "]";
    neg[i] = proj[B.neg(reps[i])];
    for (Elem j = 0; j < q; ++j) add[i * q + j] = proj[B.add(reps[i], reps[j])];
  }
  auto group = FiniteAbelianGroup::trusted(std::move(names), std::move(add), std::move(neg),
                                           proj[B.zero()]);
  std::vector<Elem> action(g.num_ops() * q);
  for (Elem a = 0; a < g.num_ops(); ++a)
    for (Elem i = 0; i < q; ++i) action[a * q + i] = proj[g.act(a, reps[i])];
  return Quotient{GroupWithOperators::trusted(std::move(group), g.ops(), std::move(action)),
                  std::move(proj), std::move(reps)};
}

GroupWithOperators direct_product(std::span<const GroupWithOperators> factors) {
  if (factors.empty()) throw AlgebraError(ErrorKind::BadParams, "empty product");
  for (const auto& f : factors)
    if (f.ops() != factors[0].ops())
      throw AlgebraError(ErrorKind::MismatchedOperators, "factors use different operator sets");
  if (factors.size() == 1) return factors[0];

  const std::size_t k = factors.size();
  std::size_t n = 1;
  for (const auto& f : factors) n *= f.group().order();
  std::vector<std::vector<Elem>> coords(n, std::vector<Elem>(k));
  for (std::size_t e = 0; e < n; ++e) {
    std::size_t idx = e;
    for (std::size_t i = k; i-- > 0;) {
      const std::size_t o = factors[i].group().order();
      coords[e][i] = static_cast<Elem>(idx % o);
      idx /= o;
    }
  }
  auto encode = [&](const std::vector<Elem>& c) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < k; ++i) idx = idx * factors[i].group().order() + c[i];
    return static_cast<Elem>(idx);
  };
  std::vector<std::string> names(n);
  std::vector<Elem> add(n * n), neg(n);
  std::vector<Elem> tmp(k);
  for (std::size_t a = 0; a < n; ++a) {
    std::string s = "(";
    for (std::size_t i = 0; i < k; ++i) s += (i ? "," : "") + factors[i].group().name(coords[a][i]);
    names[a] = s + ")";
    for (std::size_t i = 0; i < k; ++i) tmp[i] = factors[i].group().neg(coords[a][i]);
    neg[a] = encode(tmp);
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t i = 0; i < k; ++i) tmp[i] = factors[i].group().add(coords[a][i], coords[b][i]);
      add[a * n + b] = encode(tmp);
    }
  }
  for (std::size_t i = 0; i < k; ++i) tmp[i] = factors[i].group().zero();
  const Elem zero = encode(tmp);
  const OperatorSet& ops = factors[0].ops();
  std::vector<Elem> action(ops.size() * n);
  for (Elem a = 0; a < ops.size(); ++a)
    for (std::size_t e = 0; e < n; ++e) {
      for (std::size_t i = 0; i < k; ++i) tmp[i] = factors[i].act(a, coords[e][i]);
      action[a * n + e] = encode(tmp);
    }
  return GroupWithOperators::trusted(
      FiniteAbelianGroup::trusted(std::move(names), std::move(add), std::move(neg), zero), ops,
      std::move(action));
}

std::vector<Subgroup> all_subgroups(const FiniteAbelianGroup& group, std::size_t limit) {
  if (group.order() > limit)
    throw AlgebraError(ErrorKind::BadParams,
                       "subgroup enumeration is limited to order " + std::to_string(limit));
  std::vector<Subgroup> out{additive_span(group, {})};
  std::set<ElementSet> seen{out[0].members};
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (Elem g = 0; g < group.order(); ++g) {
      if (out[i].contains(g)) continue;
      std::vector<Elem> gens = out[i].members;
      gens.push_back(g);
      Subgroup next = additive_span(group, gens);
      if (seen.insert(next.members).second) out.push_back(std::move(next));
    }
  }
  return out;
}

std::vector<Subgroup> stable_subgroups(const GroupWithOperators& g, std::size_t limit) {
  std::vector<Subgroup> out;
  for (auto& s : all_subgroups(g.group(), limit))
    if (!stability_violation(g.view(), s.members)) out.push_back(std::move(s));
  return out;
}

// ---------------------------------------------------------------------------
// Homomorphisms

HomReport hom_predicates(const GroupHom& f, std::optional<std::span<const Elem>> tau) {
  const auto& S = *f.source;
  const auto& T = *f.target;
  if (S.ops() != T.ops())
    throw AlgebraError(ErrorKind::MismatchedOperators, "source and target operator sets differ");
  HomReport r;
  r.additive_witness = additivity_violation(S.group(), T.group(), f.map);
  r.additive = !r.additive_witness;

  r.a_stable = true;
  for (Elem b = 0; b < S.group().order() && r.a_stable; ++b) {
    const Elem fb = f.map[b];
    for (Elem a = 0; a < S.num_ops(); ++a) {
      const Elem target = f.map[S.act(a, b)];
      bool found = false;
      for (Elem a2 = 0; a2 < T.num_ops() && !found; ++a2) found = T.act(a2, fb) == target;
      if (!found) {
        r.a_stable = false;
        r.a_stable_witness =
            Witness{"f(ab) not in A f(b)", {S.ops().names[a], S.group().name(b)}};
        break;
      }
    }
  }

  if (tau) {
    bool twisted = true;
    for (Elem a = 0; a < S.num_ops() && twisted; ++a)
      for (Elem b = 0; b < S.group().order(); ++b)
        if (f.map[S.act(a, b)] != T.act((*tau)[a], f.map[b])) {
          twisted = false;
          r.tau_witness = Witness{"f(ab) != tau(a) f(b)", {S.ops().names[a], S.group().name(b)}};
          break;
        }
    r.tau_twisted = twisted;
    r.implication_consistent = !twisted || r.a_stable;
  }
  return r;
}

KernelChainReport kernel_chain_analysis(const GroupWithOperators& g, std::span<const Elem> f) {
  const auto& B = g.group();
  const std::size_t n = B.order();
  if (auto w = additivity_violation(B, B, f))
    throw AlgebraError(ErrorKind::NotAdditive, "f is not additive", w->tuple);
  GroupHom hom{&g, &g, Table(f.begin(), f.end())};
  if (auto rep = hom_predicates(hom); !rep.a_stable)
    throw AlgebraError(ErrorKind::NotAStable, "f is not A-stable", rep.a_stable_witness->tuple);

  auto kernel_of = [&](const Table& power) {
    Subgroup k;
    for (Elem b = 0; b < n; ++b)
      if (power[b] == B.zero()) k.members.push_back(b);
    return k;
  };

  KernelChainReport r;
  Table power(f.begin(), f.end());
  r.kernels.push_back(kernel_of(power));
  for (std::size_t m = 1;; ++m) {
    Table next(n);
    for (Elem b = 0; b < n; ++b) next[b] = f[power[b]];
    r.kernels.push_back(kernel_of(next));
    if (r.kernels[m] == r.kernels[m - 1]) {
      r.n_stable = m;
      break;
    }
    power = std::move(next);
  }
  // power now holds f^n_stable.
  for (const auto& k : r.kernels)
    if (stability_violation(g.view(), k.members)) r.kernels_stable = false;

  std::vector<char> image(n, 0);
  for (Elem b = 0; b < n; ++b) image[power[b]] = 1;
  r.kernel_image_trivial = true;
  for (Elem b : r.kernels[r.n_stable - 1].members)
    if (b != B.zero() && image[b]) r.kernel_image_trivial = false;

  std::vector<char> im1(n, 0);
  for (Elem b = 0; b < n; ++b) im1[f[b]] = 1;
  r.surjective = std::all_of(im1.begin(), im1.end(), [](char c) { return c != 0; });
  if (r.surjective) r.bijective = r.kernels[0].size() == 1;
  return r;
}

std::string format_set(const FiniteAbelianGroup& group, std::span<const Elem> set) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < set.size(); ++i) os << (i ? ", " : "") << group.name(set[i]);
  os << '}';
  return os.str();
}

}  // namespace oreext
