#include "oreext/ore_extension.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>

#include "oreext/kernels.hpp"
#include "oreext/parallel.hpp"

namespace oreext {

namespace {

void check_table(const Table& t, std::size_t len, std::size_t range, const char* what) {
  if (t.size() != len)
    throw AlgebraError(ErrorKind::BadParams, std::string(what) + " has the wrong size");
  for (Elem v : t)
    if (v >= range) throw AlgebraError(ErrorKind::BadParams, std::string(what) + " is out of range");
}

Table zero_map(const FiniteAbelianGroup& g) { return Table(g.order(), g.zero()); }

void add_into(const FiniteAbelianGroup& g, Table& acc, std::span<const Elem> rhs) {
  kernels::table_add(g.add_table(), g.order(), acc, rhs, acc);
}

Table composed(std::span<const Elem> outer, std::span<const Elem> inner) {
  Table out(inner.size());
  kernels::compose(outer, inner, out);
  return out;
}

std::uint64_t saturating_pow(std::uint64_t base, unsigned exp) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && r > UINT64_MAX / base) return UINT64_MAX;
    r *= base;
  }
  return r;
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

void decode_digits(std::uint64_t index, std::size_t base, std::span<Elem> digits) {
  for (auto& d : digits) {
    d = static_cast<Elem>(index % base);
    index /= base;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Endomorphism pairs

EndoPair make_endo_pair(const FiniteAbelianGroup& group, Table sigma, Table delta,
                        std::optional<Table> sigma_A, std::optional<Table> delta_A,
                        std::size_t num_ops) {
  const std::size_t n = group.order();
  check_table(sigma, n, n, "sigma");
  check_table(delta, n, n, "delta");
  if (sigma_A) check_table(*sigma_A, num_ops, num_ops, "sigma_A");
  if (delta_A) check_table(*delta_A, num_ops, num_ops, "delta_A");
  if (auto w = additivity_violation(group, group, sigma))
    throw AlgebraError(ErrorKind::NotEndomorphism, "sigma is not additive", w->tuple);
  if (auto w = additivity_violation(group, group, delta))
    throw AlgebraError(ErrorKind::NotEndomorphism, "delta is not additive", w->tuple);
  return EndoPair{std::move(sigma), std::move(delta), std::move(sigma_A), std::move(delta_A)};
}

Table identity_map(std::size_t n) {
  Table t(n);
  for (Elem i = 0; i < n; ++i) t[i] = i;
  return t;
}

EndoPair plain_pair(const GroupWithOperators& g) {
  return EndoPair{identity_map(g.group().order()), zero_map(g.group()),
                  identity_map(g.num_ops()), Table(g.num_ops(), g.ops().zero)};
}

Table scalar_map(const FiniteAbelianGroup& group, long long z) {
  Table t(group.order());
  for (Elem b = 0; b < group.order(); ++b) t[b] = group.times(z, b);
  return t;
}

// ---------------------------------------------------------------------------
// pi-maps

PiOperator pi_map(const FiniteAbelianGroup& group, const EndoPair& pair, unsigned i, unsigned j,
                  PiBuilder builder) {
  const std::size_t n = group.order();
  PiOperator op{i, j, zero_map(group), builder};
  if (j > i) return op;
  if (builder == PiBuilder::dp) {
    PiCalculus pi(group, pair);
    op.table = pi(i, j);
    return op;
  }
  // Enumerate every placement of j sigmas among i letters. Letter 0 is applied last.
  std::vector<char> is_sigma(i, 0);
  std::fill(is_sigma.end() - j, is_sigma.end(), 1);
  do {
    for (Elem b = 0; b < n; ++b) {
      Elem x = b;
      for (unsigned pos = i; pos-- > 0;) x = is_sigma[pos] ? pair.sigma[x] : pair.delta[x];
      op.table[b] = group.add(op.table[b], x);
    }
  } while (std::next_permutation(is_sigma.begin(), is_sigma.end()));
  return op;
}

PiCalculus::PiCalculus(FiniteAbelianGroup group, Table sigma, Table delta)
    : group_(std::move(group)),
      sigma_(std::move(sigma)),
      delta_(std::move(delta)),
      zero_(zero_map(group_)) {
  rows_.push_back({identity_map(group_.order())});
}

void PiCalculus::ensure(unsigned max_i) {
  while (rows_.size() <= max_i) {
    const auto& prev = rows_.back();
    const unsigned k = static_cast<unsigned>(rows_.size()) - 1;
    std::vector<Table> next(k + 2, zero_);
    for (unsigned j = 0; j <= k + 1; ++j) {
      Table& out = next[j];
      if (j >= 1) kernels::compose(prev[j - 1], sigma_, out);
      if (j <= k) {
        Table via_delta = composed(prev[j], delta_);
        add_into(group_, out, via_delta);
      }
    }
    rows_.push_back(std::move(next));
  }
}

const Table& PiCalculus::at(unsigned i, unsigned j) const {
  if (j > i) return zero_;
  return rows_.at(i)[j];
}

// ---------------------------------------------------------------------------
// Polynomials

GroupPolynomial GroupPolynomial::from_dense(std::span<const Elem> coeffs, Elem zero, PolySort sort) {
  GroupPolynomial p(sort);
  for (unsigned d = 0; d < coeffs.size(); ++d)
    if (coeffs[d] != zero) p.terms_.emplace(d, coeffs[d]);
  return p;
}

GroupPolynomial GroupPolynomial::monomial(Elem coeff, unsigned degree, Elem zero, PolySort sort) {
  GroupPolynomial p(sort);
  p.set(degree, coeff, zero);
  return p;
}

void GroupPolynomial::set(unsigned degree, Elem coeff, Elem zero) {
  if (coeff == zero)
    terms_.erase(degree);
  else
    terms_[degree] = coeff;
}

Elem GroupPolynomial::coeff(unsigned degree, Elem zero) const {
  auto it = terms_.find(degree);
  return it == terms_.end() ? zero : it->second;
}

int GroupPolynomial::degree() const noexcept {
  return terms_.empty() ? -1 : static_cast<int>(terms_.rbegin()->first);
}

std::vector<Elem> GroupPolynomial::dense(Elem zero, std::size_t length) const {
  std::vector<Elem> out(length, zero);
  for (auto [d, c] : terms_)
    if (d < length) out[d] = c;
  return out;
}

std::string format_poly(const GroupPolynomial& p, const std::vector<std::string>& names) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto [d, c] : p.terms()) {
    if (!first) os << " + ";
    first = false;
    os << names.at(c);
    if (d == 1) os << "*x";
    if (d > 1) os << "*x^" << d;
  }
  return os.str();
}

std::string format_dense(std::span<const Elem> coeffs, Elem zero,
                         const std::vector<std::string>& names) {
  return format_poly(GroupPolynomial::from_dense(coeffs, zero, PolySort::overB), names);
}

void ore_act_dense(const ActionView& action, const PiCalculus& pi, std::span<const Elem> alpha,
                   Elem alpha_zero, std::span<const Elem> beta, std::span<Elem> out) {
  const FiniteAbelianGroup& B = *action.target;
  const Elem zero = B.zero();
  for (unsigned i = 0; i < alpha.size(); ++i) {
    const Elem a = alpha[i];
    if (a == alpha_zero) continue;
    const auto row = action.row(a);
    for (unsigned j = 0; j < beta.size(); ++j) {
      const Elem b = beta[j];
      if (b == zero) continue;
      for (unsigned k = 0; k <= i; ++k) {
        const Elem v = pi.at(i, k)[b];
        if (v == zero) continue;
        out[k + j] = B.add(out[k + j], row[v]);
      }
    }
  }
}

GroupPolynomial ore_act(const GroupPolynomial& alpha, const GroupPolynomial& beta,
                        const GroupWithOperators& g, const EndoPair& pair) {
  if (alpha.sort() != PolySort::overA || beta.sort() == PolySort::overA)
    throw AlgebraError(ErrorKind::SortMismatch, "expected an A-polynomial acting on a B-polynomial");
  if (alpha.is_zero() || beta.is_zero()) return GroupPolynomial(beta.sort());
  const auto la = static_cast<std::size_t>(alpha.degree()) + 1;
  const auto lb = static_cast<std::size_t>(beta.degree()) + 1;
  PiCalculus pi(g.group(), pair);
  pi.ensure(static_cast<unsigned>(la - 1));
  const auto a = alpha.dense(g.ops().zero, la);
  const auto b = beta.dense(g.group().zero(), lb);
  std::vector<Elem> out(la + lb - 1, g.group().zero());
  ore_act_dense(g.view(), pi, a, g.ops().zero, b, out);
  return GroupPolynomial::from_dense(out, g.group().zero(), beta.sort());
}

// ---------------------------------------------------------------------------
// Vandermonde and one-shift

VandermondeReport check_vandermonde(const FiniteAbelianGroup& group, const EndoPair& pair,
                                    unsigned max_index) {
  const std::size_t n = group.order();
  PiCalculus pi(group, pair);
  pi.ensure(max_index + 1);

  // Right-hand sides come from the independent word-enumeration builder.
  std::map<std::pair<unsigned, unsigned>, Table> brute;
  auto oracle = [&](unsigned i, unsigned j) -> const Table& {
    auto key = std::make_pair(i, j);
    auto it = brute.find(key);
    if (it == brute.end())
      it = brute.emplace(key, pi_map(group, pair, i, j, PiBuilder::bruteforce).table).first;
    return it->second;
  };

  VandermondeReport r;
  Table lhs(n), term(n);
  for (unsigned j = 0; j <= max_index && r.vandermonde.passed; ++j)
    for (unsigned k = 0; k <= max_index && r.vandermonde.passed; ++k)
      for (unsigned m = 0; m <= max_index; ++m) {
        std::fill(lhs.begin(), lhs.end(), group.zero());
        for (unsigned i = 0; i <= std::min(j, k); ++i) {
          if (j - i > m) continue;
          kernels::compose(pi.at(k, i), pi.at(m, j - i), term);
          add_into(group, lhs, term);
        }
        const Table& rhs = oracle(k + m, j);
        r.vandermonde.checks += n;
        const std::size_t bad = kernels::first_mismatch(lhs, rhs);
        if (bad != n) {
          r.vandermonde.passed = false;
          r.vandermonde.witness =
              Witness{"Vandermonde fails at (j, k, n, b)",
                      {std::to_string(j), std::to_string(k), std::to_string(m),
                       group.name(static_cast<Elem>(bad))}};
          break;
        }
      }

  for (unsigned j = 0; j <= max_index + 1 && r.one_shift.passed; ++j)
    for (unsigned k = 0; k <= max_index; ++k) {
      std::fill(lhs.begin(), lhs.end(), group.zero());
      if (j >= 1) {
        kernels::compose(pi.at(k, j - 1), pair.sigma, term);
        add_into(group, lhs, term);
      }
      kernels::compose(pi.at(k, j), pair.delta, term);
      add_into(group, lhs, term);
      const Table& rhs = oracle(k + 1, j);
      r.one_shift.checks += n;
      const std::size_t bad = kernels::first_mismatch(lhs, rhs);
      if (bad != n) {
        r.one_shift.passed = false;
        r.one_shift.witness = Witness{
            "one-shift fails at (j, k, b)",
            {std::to_string(j), std::to_string(k), group.name(static_cast<Elem>(bad))}};
        break;
      }
    }
  return r;
}

// ---------------------------------------------------------------------------
// Twist predicates, formal words, Leibniz and mixed identities

TwistReport twist_predicates(const GroupWithOperators& g, const EndoPair& pair) {
  if (!pair.has_companions())
    throw AlgebraError(ErrorKind::MissingCompanionMaps, "sigma_A and delta_A are required");
  const auto& B = g.group();
  const auto& sA = *pair.sigma_A;
  const auto& dA = *pair.delta_A;
  TwistReport r{true, true, std::nullopt, std::nullopt};
  for (Elem a = 0; a < g.num_ops(); ++a)
    for (Elem b = 0; b < B.order(); ++b) {
      const Elem ab = g.act(a, b);
      if (r.sigma_twisted && pair.sigma[ab] != g.act(sA[a], pair.sigma[b])) {
        r.sigma_twisted = false;
        r.sigma_witness = Witness{"sigma_B(ab) != sigma_A(a) sigma_B(b)", {g.ops().names[a], B.name(b)}};
      }
      if (r.twisted_derivation &&
          pair.delta[ab] != B.add(g.act(sA[a], pair.delta[b]), g.act(dA[a], b))) {
        r.twisted_derivation = false;
        r.delta_witness = Witness{"delta_B(ab) != sigma_A(a) delta_B(b) + delta_A(a) b",
                                  {g.ops().names[a], B.name(b)}};
      }
    }
  return r;
}

FormalPiWord formal_pi(unsigned m, unsigned k, Elem base) {
  FormalPiWord w{m, k, {}, base};
  if (k > m) return w;
  std::string word(m - k, 'd');
  word.append(k, 's');
  do {
    w.words.push_back(word);
  } while (std::next_permutation(word.begin(), word.end()));
  return w;
}

std::vector<Elem> evaluate_words(const FormalPiWord& word, const EndoPair& pair) {
  if (!pair.has_companions())
    throw AlgebraError(ErrorKind::MissingCompanionMaps, "sigma_A and delta_A are required");
  std::vector<Elem> out;
  out.reserve(word.words.size());
  for (const auto& w : word.words) {
    Elem x = word.base;
    for (auto it = w.rbegin(); it != w.rend(); ++it)
      x = (*it == 's') ? (*pair.sigma_A)[x] : (*pair.delta_A)[x];
    out.push_back(x);
  }
  return out;
}

Elem act_formal(const GroupWithOperators& g, const EndoPair& pair, const FormalPiWord& word, Elem c) {
  Elem acc = g.group().zero();
  for (Elem op : evaluate_words(word, pair)) acc = g.group().add(acc, g.act(op, c));
  return acc;
}

LeibnizReport check_leibniz_mixed(const GroupWithOperators& g, const EndoPair& pair,
                                  unsigned max_index) {
  const TwistReport twist = twist_predicates(g, pair);
  if (!twist.holds()) {
    const Witness& w = twist.sigma_twisted ? *twist.delta_witness : *twist.sigma_witness;
    throw AlgebraError(ErrorKind::HypothesisNotMet,
                       twist.sigma_twisted ? "delta_B is not a twisted derivation"
                                           : "sigma_B is not sigma_A-twisted",
                       w.tuple);
  }
  const auto& B = g.group();
  const std::size_t n = B.order();
  const std::size_t num_ops = g.num_ops();
  PiCalculus pi(B, pair);
  pi.ensure(2 * max_index);

  // formal[m][k][a] is the table c -> sum_w w(a) c of the formal pi_k^m(a).
  std::vector<std::vector<std::vector<Table>>> formal(max_index + 1);
  for (unsigned m = 0; m <= max_index; ++m) {
    formal[m].resize(m + 1);
    for (unsigned k = 0; k <= m; ++k) {
      formal[m][k].assign(num_ops, zero_map(B));
      for (Elem a = 0; a < num_ops; ++a)
        for (Elem op : evaluate_words(formal_pi(m, k, a), pair)) add_into(B, formal[m][k][a], g.row(op));
    }
  }

  struct PerOp {
    std::uint64_t leibniz_checks = 0, mixed_checks = 0;
    std::optional<Witness> leibniz, mixed;
  };
  std::vector<PerOp> per(num_ops);

  parallel_for(num_ops, [&](std::size_t ai) {
    const auto a = static_cast<Elem>(ai);
    PerOp& out = per[ai];
    Table lhs(n), rhs(n), term(n), inner(n);
    const auto row = g.row(a);
    for (unsigned m = 0; m <= max_index && !out.leibniz; ++m)
      for (unsigned i = 0; i <= max_index; ++i) {
        kernels::compose(pi.at(m, i), row, lhs);
        std::fill(rhs.begin(), rhs.end(), B.zero());
        for (unsigned k = i; k <= m; ++k) {
          kernels::compose(formal[m][k][a], pi.at(k, i), term);
          add_into(B, rhs, term);
        }
        out.leibniz_checks += n;
        const std::size_t bad = kernels::first_mismatch(lhs, rhs);
        if (bad != n) {
          out.leibniz = Witness{"Leibniz fails at (a, b, i, m)",
                                {g.ops().names[a], B.name(static_cast<Elem>(bad)),
                                 std::to_string(i), std::to_string(m)}};
          break;
        }
      }
    for (unsigned m = 0; m <= max_index && !out.mixed; ++m)
      for (unsigned nn = 0; nn <= max_index && !out.mixed; ++nn)
        for (unsigned j = 0; j <= max_index; ++j) {
          std::fill(lhs.begin(), lhs.end(), B.zero());
          for (unsigned i = 0; i <= std::min(m, j); ++i) {
            kernels::compose(row, pi.at(nn, j - i), inner);
            kernels::compose(pi.at(m, i), inner, term);
            add_into(B, lhs, term);
          }
          std::fill(rhs.begin(), rhs.end(), B.zero());
          for (unsigned i = 0; i <= m; ++i) {
            kernels::compose(formal[m][i][a], pi.at(i + nn, j), term);
            add_into(B, rhs, term);
          }
          out.mixed_checks += n;
          const std::size_t bad = kernels::first_mismatch(lhs, rhs);
          if (bad != n) {
            out.mixed = Witness{"mixed identity fails at (a, b, j, m, n)",
                                {g.ops().names[a], B.name(static_cast<Elem>(bad)),
                                 std::to_string(j), std::to_string(m), std::to_string(nn)}};
            break;
          }
        }
  });

  LeibnizReport r;
  for (const auto& p : per) {
    r.leibniz.checks += p.leibniz_checks;
    r.mixed.checks += p.mixed_checks;
    if (p.leibniz && r.leibniz.passed) {
      r.leibniz.passed = false;
      r.leibniz.witness = p.leibniz;
    }
    if (p.mixed && r.mixed.passed) {
      r.mixed.passed = false;
      r.mixed.witness = p.mixed;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Associative triples

AssocTriple make_triple(GroupWithOperators b, FiniteAbelianGroup c, std::vector<Elem> act_A_on_C,
                        std::vector<Elem> act_B_on_C, EndoPair pair_B, EndoPair pair_C) {
  const std::size_t nA = b.num_ops(), nB = b.group().order(), nC = c.order();
  check_table(act_A_on_C, nA * nC, nC, "action of A on C");
  check_table(act_B_on_C, nB * nC, nC, "action of B on C");
  pair_B = make_endo_pair(b.group(), std::move(pair_B.sigma), std::move(pair_B.delta),
                          std::move(pair_B.sigma_A), std::move(pair_B.delta_A), nA);
  pair_C = make_endo_pair(c, std::move(pair_C.sigma), std::move(pair_C.delta));

  auto check_action = [&](const std::vector<Elem>& act, std::size_t ops, Elem zero_op,
                          const std::function<std::string(Elem)>& op_name) {
    for (Elem x = 0; x < nC; ++x)
      if (act[zero_op * nC + x] != c.zero())
        throw AlgebraError(ErrorKind::BadZeroOperator, "zero operator does not annihilate C",
                           {op_name(zero_op), c.name(x)});
    for (Elem a = 0; a < ops; ++a)
      for (Elem x = 0; x < nC; ++x)
        for (Elem y = 0; y < nC; ++y)
          if (act[a * nC + c.add(x, y)] != c.add(act[a * nC + x], act[a * nC + y]))
            throw AlgebraError(ErrorKind::NotEndomorphism, "operator on C is not an endomorphism",
                               {op_name(a), c.name(x), c.name(y)});
  };
  check_action(act_A_on_C, nA, b.ops().zero, [&](Elem a) { return b.ops().names[a]; });
  check_action(act_B_on_C, nB, b.group().zero(), [&](Elem e) { return b.group().name(e); });

  return AssocTriple{std::move(b), std::move(c), std::move(act_A_on_C), std::move(act_B_on_C),
                     std::move(pair_B), std::move(pair_C)};
}

Subgroup annihilator(const ActionView& action) {
  const auto& C = *action.target;
  Subgroup s;
  for (Elem c = 0; c < C.order(); ++c) {
    bool killed = true;
    for (Elem a = 0; a < action.num_ops && killed; ++a) killed = action.act(a, c) == C.zero();
    if (killed) s.members.push_back(c);
  }
  if (auto w = subgroup_violation(C, s.members))
    throw AlgebraError(ErrorKind::Internal, "annihilator is not a subgroup", w->tuple);
  return s;
}

namespace {

// Evaluates both sides of (alpha beta) gamma = alpha (beta gamma) on dense
// coefficient vectors of length d + 1.
class TripleEvaluator {
 public:
  TripleEvaluator(const AssocTriple& t, unsigned d)
      : t_(t), d_(d), piB_(t.B.group(), t.pair_B), piC_(t.C, t.pair_C) {
    piB_.ensure(d);
    piC_.ensure(2 * d);
  }

  unsigned len() const { return d_ + 1; }

  void alpha_beta(std::span<const Elem> a, std::span<const Elem> b, std::span<Elem> out) const {
    std::fill(out.begin(), out.end(), t_.B.group().zero());
    ore_act_dense(t_.B.view(), piB_, a, t_.A().zero, b, out);
  }
  void beta_gamma(std::span<const Elem> b, std::span<const Elem> c, std::span<Elem> out) const {
    std::fill(out.begin(), out.end(), t_.C.zero());
    ore_act_dense(t_.b_on_c(), piC_, b, t_.B.group().zero(), c, out);
  }
  void ab_then_c(std::span<const Elem> ab, std::span<const Elem> c, std::span<Elem> out) const {
    std::fill(out.begin(), out.end(), t_.C.zero());
    ore_act_dense(t_.b_on_c(), piC_, ab, t_.B.group().zero(), c, out);
  }
  void a_then_bc(std::span<const Elem> a, std::span<const Elem> bc, std::span<Elem> out) const {
    std::fill(out.begin(), out.end(), t_.C.zero());
    ore_act_dense(t_.a_on_c(), piC_, a, t_.A().zero, bc, out);
  }

  Witness witness(std::span<const Elem> a, std::span<const Elem> b, std::span<const Elem> c) const {
    return Witness{"(alpha beta) gamma != alpha (beta gamma)",
                   {format_poly(GroupPolynomial::from_dense(a, t_.A().zero, PolySort::overA),
                                t_.A().names),
                    format_dense(b, t_.B.group().zero(), t_.B.group().names()),
                    format_dense(c, t_.C.zero(), t_.C.names())}};
  }

 private:
  const AssocTriple& t_;
  unsigned d_;
  PiCalculus piB_;
  PiCalculus piC_;
};

}  // namespace

TripleReport check_triple_associativity(const AssocTriple& t, unsigned max_degree,
                                        std::uint64_t budget, std::uint64_t seed) {
  const auto& A = t.A();
  const auto& B = t.B.group();
  const auto& C = t.C;
  const auto ac = t.a_on_c();
  const auto bc = t.b_on_c();
  TripleReport r;
  r.seed = seed;

  // Phase 1.
  r.triple_associative = r.sigma_twisted = r.delta_twisted_derivation = true;
  for (Elem a = 0; a < A.size() && r.triple_associative; ++a)
    for (Elem b = 0; b < B.order() && r.triple_associative; ++b)
      for (Elem c = 0; c < C.order(); ++c)
        if (bc.act(t.B.act(a, b), c) != ac.act(a, bc.act(b, c))) {
          r.triple_associative = false;
          r.assoc_witness = Witness{"(ab)c != a(bc)", {A.names[a], B.name(b), C.name(c)}};
          break;
        }
  const auto& sB = t.pair_B.sigma;
  const auto& dB = t.pair_B.delta;
  const auto& sC = t.pair_C.sigma;
  const auto& dC = t.pair_C.delta;
  for (Elem b = 0; b < B.order(); ++b)
    for (Elem c = 0; c < C.order(); ++c) {
      const Elem prod = bc.act(b, c);
      if (r.sigma_twisted && sC[prod] != bc.act(sB[b], sC[c])) {
        r.sigma_twisted = false;
        r.sigma_witness = Witness{"sigma_C(bc) != sigma_B(b) sigma_C(c)", {B.name(b), C.name(c)}};
      }
      if (r.delta_twisted_derivation &&
          dC[prod] != C.add(bc.act(sB[b], dC[c]), bc.act(dB[b], c))) {
        r.delta_twisted_derivation = false;
        r.delta_witness = Witness{"delta_C(bc) != sigma_B(b) delta_C(c) + delta_B(b) c",
                                  {B.name(b), C.name(c)}};
      }
    }
  r.annihilator_trivial = annihilator(ac).size() == 1;

  // Phase 1 failure with a trivial annihilator: the converse guarantees a
  // counterexample among alpha in {a, a x}, beta = b, gamma = c.
  if (!r.phase1()) {
    TripleEvaluator ev(t, 1);
    std::vector<Elem> alpha(2), beta{B.zero(), B.zero()}, gamma{C.zero(), C.zero()};
    std::vector<Elem> ab(3), bcv(3), lhs(4), rhs(4);
    bool found = false;
    for (unsigned deg = 0; deg <= 1 && !found; ++deg)
      for (Elem a = 0; a < A.size() && !found; ++a)
        for (Elem b = 0; b < B.order() && !found; ++b)
          for (Elem c = 0; c < C.order() && !found; ++c) {
            alpha = {A.zero, A.zero};
            alpha[deg] = a;
            beta[0] = b;
            gamma[0] = c;
            ++r.tuples_checked;
            ev.alpha_beta(alpha, beta, ab);
            ev.ab_then_c(ab, gamma, lhs);
            ev.beta_gamma(beta, gamma, bcv);
            ev.a_then_bc(alpha, bcv, rhs);
            if (lhs != rhs) {
              found = true;
              r.phase2_witness = ev.witness(alpha, beta, gamma);
              r.witness_degree = static_cast<int>(deg);
            }
          }
    if (found) {
      r.phase2_passed = false;
      r.tuples_total = r.tuples_checked;
      return r;
    }
    if (r.annihilator_trivial) r.consistent = false;
    r.tuples_checked = 0;
  }

  // Phase 2.
  const unsigned L = max_degree + 1;
  const std::uint64_t NA = saturating_pow(A.size(), L);
  const std::uint64_t NB = saturating_pow(B.order(), L);
  const std::uint64_t NC = saturating_pow(C.order(), L);
  r.tuples_total = saturating_mul(saturating_mul(NA, NB), NC);
  r.exhaustive = r.tuples_total <= budget;
  TripleEvaluator ev(t, max_degree);

  std::vector<std::uint64_t> samples;
  std::uint64_t count = r.tuples_total;
  if (!r.exhaustive) {
    std::mt19937_64 gen(seed);
    samples.resize(3 * budget);
    for (std::uint64_t s = 0; s < budget; ++s) {
      samples[3 * s] = gen() % NA;
      samples[3 * s + 1] = gen() % NB;
      samples[3 * s + 2] = gen() % NC;
    }
    count = budget;
  }

  const std::size_t lab = 2 * max_degree + 1, lout = 3 * max_degree + 1;
  // beta*gamma is shared by every alpha; cache it when the table is small.
  std::vector<Elem> bc_cache;
  const bool cache_bc = r.exhaustive && NB * NC * lab <= (std::uint64_t{1} << 24);
  if (cache_bc) {
    bc_cache.resize(NB * NC * lab);
    parallel_for(NB * NC, [&](std::size_t idx) {
      std::vector<Elem> b(L), c(L);
      decode_digits(idx / NC, B.order(), b);
      decode_digits(idx % NC, C.order(), c);
      ev.beta_gamma(b, c, std::span<Elem>(bc_cache.data() + idx * lab, lab));
    });
  }

  auto fails = [&](std::size_t idx) {
    std::uint64_t ia, ib, ic;
    if (r.exhaustive) {
      ia = idx / (NB * NC);
      ib = (idx / NC) % NB;
      ic = idx % NC;
    } else {
      ia = samples[3 * idx];
      ib = samples[3 * idx + 1];
      ic = samples[3 * idx + 2];
    }
    Elem abuf[32], bbuf[32], cbuf[32], ab[64], bcv[64], lhs[96], rhs[96];
    std::span<Elem> a(abuf, L), b(bbuf, L), c(cbuf, L);
    decode_digits(ia, A.size(), a);
    decode_digits(ib, B.order(), b);
    decode_digits(ic, C.order(), c);
    ev.alpha_beta(a, b, {ab, lab});
    ev.ab_then_c({ab, lab}, c, {lhs, lout});
    std::span<const Elem> bc_span;
    if (cache_bc) {
      bc_span = {bc_cache.data() + (ib * NC + ic) * lab, lab};
    } else {
      ev.beta_gamma(b, c, {bcv, lab});
      bc_span = {bcv, lab};
    }
    ev.a_then_bc(a, bc_span, {rhs, lout});
    return !std::equal(lhs, lhs + lout, rhs);
  };
  if (L > 32) throw AlgebraError(ErrorKind::BadParams, "max_degree is limited to 31");

  const auto bad = find_first(count, fails);
  r.phase2_passed = !bad;
  r.tuples_checked += bad ? *bad + 1 : count;
  if (bad) {
    std::uint64_t ia, ib, ic;
    if (r.exhaustive) {
      ia = *bad / (NB * NC);
      ib = (*bad / NC) % NB;
      ic = *bad % NC;
    } else {
      ia = samples[3 * *bad];
      ib = samples[3 * *bad + 1];
      ic = samples[3 * *bad + 2];
    }
    std::vector<Elem> a(L), b(L), c(L);
    decode_digits(ia, A.size(), a);
    decode_digits(ib, B.order(), b);
    decode_digits(ic, C.order(), c);
    r.phase2_witness = ev.witness(a, b, c);
    int deg = -1;
    for (unsigned i = 0; i < L; ++i)
      if (a[i] != A.zero || b[i] != B.zero() || c[i] != C.zero()) deg = static_cast<int>(i);
    r.witness_degree = deg;
  }
  if (r.phase1() && !r.phase2_passed) r.consistent = false;
  return r;
}

}  // namespace oreext
