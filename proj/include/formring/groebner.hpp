#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "formring/errors.hpp"
#include "formring/polynomial.hpp"

namespace formring {

class GroebnerBasis {
 public:
  GroebnerBasis() = default;
  GroebnerBasis(RingPtr ring, TermOrder order, std::vector<Polynomial> elements, bool reduced)
      : ring_(std::move(ring)), order_(order), elements_(std::move(elements)), reduced_(reduced) {}

  const RingPtr& ring() const { return ring_; }
  const TermOrder& order() const { return order_; }
  const std::vector<Polynomial>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool reduced() const { return reduced_; }
  bool is_unit() const { return elements_.size() == 1 && elements_[0].is_constant(); }

  std::vector<Monomial> leading_monomials() const {
    std::vector<Monomial> out;
    out.reserve(elements_.size());
    for (const auto& g : elements_) out.push_back(g.leading_monomial());
    return out;
  }

  bool leading_ideal_contains(const Monomial& m) const {
    for (const auto& g : elements_)
      if (g.leading_monomial().divides(m)) return true;
    return false;
  }

 private:
  RingPtr ring_;
  TermOrder order_;
  std::vector<Polynomial> elements_;
  bool reduced_ = false;
};

// Full reduction of f by a list of monic divisors sorted in `order`.
inline Polynomial reduce_fully(const Polynomial& f, std::span<const Polynomial> divisors, TermOrder order) {
  Polynomial p = f.with_order(order);
  std::vector<Term> rest;
  while (!p.is_zero()) {
    const Term lt = p.leading_term();
    const Polynomial* div = nullptr;
    for (const auto& g : divisors)
      if (g.leading_monomial().divides(lt.mono)) {
        div = &g;
        break;
      }
    if (div) {
      p = p.minus_scaled(*div, lt.mono / div->leading_monomial(), lt.coeff);
    } else {
      rest.push_back(lt);
      p.pop_leading();
    }
  }
  return Polynomial::from_sorted(f.ring(), std::move(rest), order);
}

inline Polynomial normal_form(const Polynomial& f, const GroebnerBasis& basis) {
  if (!same_ring(f.ring(), basis.ring())) throw AmbientMismatch();
  return reduce_fully(f, basis.elements(), basis.order()).with_order(f.order());
}

inline Polynomial s_polynomial(const Polynomial& f, const Polynomial& g) {
  const Monomial l = lcm(f.leading_monomial(), g.leading_monomial());
  const auto& F = f.ring()->field();
  Polynomial a = f.times_monomial(l / f.leading_monomial(), F.inv(f.leading_coeff()));
  return a.minus_scaled(g, l / g.leading_monomial(), F.inv(g.leading_coeff()));
}

namespace detail {

struct CriticalPair {
  std::size_t i, j;
  Monomial lcm;
};

// Drops redundant leading terms, tail-reduces, sorts ascending by leading
// monomial.
inline std::vector<Polynomial> reduce_basis(std::vector<Polynomial> g, TermOrder order) {
  std::vector<Polynomial> minimal;
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < g.size() && !redundant; ++j) {
      if (i == j) continue;
      const auto& mi = g[i].leading_monomial();
      const auto& mj = g[j].leading_monomial();
      if (mj.divides(mi) && (!(mi == mj) || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(g[i]);
  }
  std::vector<Polynomial> out;
  out.reserve(minimal.size());
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Polynomial> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    Polynomial head = Polynomial::monomial(minimal[i].ring(), minimal[i].leading_monomial(), 1, order);
    Polynomial tail = minimal[i].monic();
    tail.pop_leading();
    out.push_back(head + reduce_fully(tail, others, order));
  }
  std::sort(out.begin(), out.end(), [&](const Polynomial& a, const Polynomial& b) {
    return order.greater(b.leading_monomial(), a.leading_monomial());
  });
  return out;
}

}  // namespace detail

// Reduced Gröbner basis. Pair selection: smallest lcm degree first, ties by
// (i, j) lexicographically; product and chain criteria skip pairs.
inline GroebnerBasis buchberger(const RingPtr& ring, std::span<const Polynomial> generators, TermOrder order) {
  std::vector<Polynomial> basis;
  for (const auto& f : generators) {
    if (!same_ring(f.ring(), ring)) throw AmbientMismatch();
    if (f.is_zero()) continue;
    Polynomial g = f.with_order(order).monic();
    if (g.is_constant()) return GroebnerBasis(ring, order, {Polynomial::constant(ring, 1, order)}, true);
    if (std::find(basis.begin(), basis.end(), g) == basis.end()) basis.push_back(std::move(g));
  }

  std::vector<detail::CriticalPair> pending;
  std::set<std::pair<std::size_t, std::size_t>> pending_keys;
  auto add_pairs_for = [&](std::size_t k) {
    for (std::size_t i = 0; i < k; ++i) {
      pending.push_back({i, k, lcm(basis[i].leading_monomial(), basis[k].leading_monomial())});
      pending_keys.insert({i, k});
    }
  };
  for (std::size_t k = 0; k < basis.size(); ++k) add_pairs_for(k);

  auto is_pending = [&](std::size_t a, std::size_t b) {
    return pending_keys.count({std::min(a, b), std::max(a, b)}) > 0;
  };

  while (!pending.empty()) {
    auto best = std::min_element(pending.begin(), pending.end(), [](const auto& a, const auto& b) {
      if (a.lcm.degree() != b.lcm.degree()) return a.lcm.degree() < b.lcm.degree();
      return std::pair(a.i, a.j) < std::pair(b.i, b.j);
    });
    detail::CriticalPair pair = *best;
    pending.erase(best);
    pending_keys.erase({pair.i, pair.j});

    const auto& fi = basis[pair.i];
    const auto& fj = basis[pair.j];
    if (coprime(fi.leading_monomial(), fj.leading_monomial())) continue;
    bool chain = false;
    for (std::size_t k = 0; k < basis.size() && !chain; ++k) {
      if (k == pair.i || k == pair.j) continue;
      if (basis[k].leading_monomial().divides(pair.lcm) && !is_pending(pair.i, k) && !is_pending(pair.j, k))
        chain = true;
    }
    if (chain) continue;

    Polynomial r = reduce_fully(s_polynomial(fi, fj), basis, order);
    if (r.is_zero()) continue;
    r = r.monic();
    if (r.is_constant()) return GroebnerBasis(ring, order, {Polynomial::constant(ring, 1, order)}, true);
    basis.push_back(std::move(r));
    add_pairs_for(basis.size() - 1);
  }
  return GroebnerBasis(ring, order, detail::reduce_basis(std::move(basis), order), true);
}

// Every S-polynomial of the basis reduces to zero.
inline bool satisfies_buchberger_criterion(const GroebnerBasis& b) {
  const auto& e = b.elements();
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = i + 1; j < e.size(); ++j)
      if (!reduce_fully(s_polynomial(e[i], e[j]), e, b.order()).is_zero()) return false;
  return true;
}

// Exact quotient f / g; throws DomainError if g does not divide f.
inline Polynomial divide_exact(const Polynomial& f, const Polynomial& g) {
  if (g.is_zero()) throw DomainError("division by the zero polynomial");
  const TermOrder order = kDegRevLex;
  Polynomial p = f.with_order(order);
  Polynomial gg = g.with_order(order);
  const auto& F = f.ring()->field();
  const Residue inv = F.inv(gg.leading_coeff());
  std::vector<Term> q;
  while (!p.is_zero()) {
    const Term lt = p.leading_term();
    if (!gg.leading_monomial().divides(lt.mono)) throw DomainError("inexact polynomial division");
    Monomial m = lt.mono / gg.leading_monomial();
    Residue c = F.mul(lt.coeff, inv);
    p = p.minus_scaled(gg, m, c);
    q.push_back({std::move(m), c});
  }
  return Polynomial::from_sorted(f.ring(), std::move(q), order).with_order(f.order());
}

// Ideal of a polynomial ring with write-once cached Gröbner bases.
class Ideal {
 public:
  Ideal() = default;
  Ideal(RingPtr ring, std::vector<Polynomial> generators) : ring_(std::move(ring)), cache_(std::make_shared<Cache>()) {
    for (auto& g : generators) {
      if (!same_ring(g.ring(), ring_)) throw AmbientMismatch();
      if (!g.is_zero()) gens_.push_back(g.with_order(kDegRevLex));
    }
  }

  static Ideal unit(const RingPtr& ring) { return Ideal(ring, {Polynomial::constant(ring, 1)}); }
  static Ideal zero(const RingPtr& ring) { return Ideal(ring, {}); }

  // The ideal generated by all variables.
  static Ideal irrelevant(const RingPtr& ring) {
    std::vector<Polynomial> v;
    for (std::size_t i = 0; i < ring->nvars(); ++i) v.push_back(Polynomial::variable(ring, i));
    return Ideal(ring, std::move(v));
  }

  const RingPtr& ring() const { return ring_; }
  const std::vector<Polynomial>& generators() const { return gens_; }

  const GroebnerBasis& groebner(TermOrder order = kDegRevLex) const {
    std::lock_guard lock(cache_->mutex);
    auto it = cache_->bases.find(static_cast<int>(order.kind));
    if (it == cache_->bases.end())
      it = cache_->bases.emplace(static_cast<int>(order.kind), buchberger(ring_, gens_, order)).first;
    return it->second;
  }

  bool contains(const Polynomial& f) const { return normal_form(f, groebner()).is_zero(); }

  bool contains(const Ideal& other) const {
    if (!same_ring(ring_, other.ring_)) throw AmbientMismatch();
    for (const auto& g : other.gens_)
      if (!contains(g)) return false;
    return true;
  }

  bool is_zero() const { return gens_.empty(); }
  bool is_unit() const { return groebner().is_unit(); }

  // Homogeneous iff the reduced degrevlex basis consists of forms.
  bool is_homogeneous() const {
    for (const auto& g : groebner().elements())
      if (!g.is_homogeneous()) return false;
    return true;
  }

  // No generator has a constant term, i.e. the ideal lies in (x_1..x_n).
  bool in_irrelevant_ideal() const {
    for (const auto& g : gens_)
      for (const auto& t : g.terms())
        if (t.mono.is_one()) return false;
    return true;
  }

  // Same generators as the reduced degrevlex basis.
  Ideal canonical() const { return Ideal(ring_, groebner().elements()); }

  friend Ideal operator+(const Ideal& a, const Ideal& b) {
    if (!same_ring(a.ring_, b.ring_)) throw AmbientMismatch();
    auto g = a.gens_;
    g.insert(g.end(), b.gens_.begin(), b.gens_.end());
    return Ideal(a.ring_, std::move(g));
  }

  friend Ideal operator*(const Ideal& a, const Ideal& b) {
    if (!same_ring(a.ring_, b.ring_)) throw AmbientMismatch();
    std::vector<Polynomial> g;
    for (const auto& f : a.gens_)
      for (const auto& h : b.gens_) g.push_back(f * h);
    return Ideal(a.ring_, std::move(g));
  }

  friend bool operator==(const Ideal& a, const Ideal& b) {
    if (!same_ring(a.ring_, b.ring_)) return false;
    const auto& ea = a.groebner().elements();
    const auto& eb = b.groebner().elements();
    return ea.size() == eb.size() && std::equal(ea.begin(), ea.end(), eb.begin());
  }

  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < gens_.size(); ++i) s += (i ? ", " : "") + gens_[i].to_string();
    return s + ")";
  }

 private:
  struct Cache {
    std::mutex mutex;
    std::map<int, GroebnerBasis> bases;
  };

  RingPtr ring_;
  std::vector<Polynomial> gens_;
  std::shared_ptr<Cache> cache_;
};

// I ∩ J by eliminating an auxiliary variable from t*I + (1-t)*J.
inline Ideal intersect(const Ideal& a, const Ideal& b) {
  if (!same_ring(a.ring(), b.ring())) throw AmbientMismatch();
  const RingPtr& ring = a.ring();
  if (a.is_zero() || b.is_zero()) return Ideal::zero(ring);
  const TermOrder elim{OrderKind::eliminate_last};
  RingPtr ext = ring->extended("_t");
  const std::size_t t_index = ring->nvars();
  Polynomial t = Polynomial::variable(ext, t_index, elim);
  Polynomial one_minus_t = Polynomial::constant(ext, 1, elim) - t;
  std::vector<Polynomial> gens;
  for (const auto& f : a.generators()) gens.push_back(t * embed(f, ext, elim));
  for (const auto& g : b.generators()) gens.push_back(one_minus_t * embed(g, ext, elim));
  GroebnerBasis gb = buchberger(ext, gens, elim);
  std::vector<Polynomial> kept;
  for (const auto& g : gb.elements()) {
    bool free_of_t = std::all_of(g.terms().begin(), g.terms().end(),
                                 [&](const Term& term) { return term.mono[t_index] == 0; });
    if (free_of_t) kept.push_back(specialize_trailing(g, ring));
  }
  return Ideal(ring, std::move(kept)).canonical();
}

// (I : g) = (I ∩ (g)) / g.
inline Ideal quotient_by_element(const Ideal& ideal, const Polynomial& g) {
  if (g.is_zero()) return Ideal::unit(ideal.ring());
  if (ideal.contains(g)) return Ideal::unit(ideal.ring());
  Ideal meet = intersect(ideal, Ideal(ideal.ring(), {g}));
  std::vector<Polynomial> q;
  for (const auto& h : meet.generators()) q.push_back(divide_exact(h, g));
  return Ideal(ideal.ring(), std::move(q)).canonical();
}

// (I : J) = {f : fJ ⊆ I}.
inline Ideal ideal_quotient(const Ideal& ideal, const Ideal& by) {
  if (!same_ring(ideal.ring(), by.ring())) throw AmbientMismatch();
  std::optional<Ideal> acc;
  for (const auto& g : by.generators()) {
    Ideal q = quotient_by_element(ideal, g);
    acc = acc ? intersect(*acc, q) : q;
  }
  if (!acc) return Ideal::unit(ideal.ring());
  return acc->canonical();
}

struct SaturationResult {
  Ideal ideal;
  // Smallest s with (I : J^s) = (I : J^(s+1)).
  int exponent = 0;
  // I, I:J, I:J^2, ..., I:J^(s+1).
  std::vector<Ideal> chain;
};

inline constexpr int kDefaultSaturationCap = 50;

inline SaturationResult saturate(const Ideal& ideal, const Ideal& by, int max_exponent = kDefaultSaturationCap) {
  SaturationResult out;
  out.chain.push_back(ideal.canonical());
  for (int s = 0; s <= max_exponent; ++s) {
    Ideal next = ideal_quotient(out.chain.back(), by);
    out.chain.push_back(next);
    if (next == out.chain[out.chain.size() - 2]) {
      out.exponent = s;
      out.ideal = next;
      return out;
    }
  }
  throw GuardExceeded("saturation did not stabilize within exponent " + std::to_string(max_exponent));
}

// Ideal of lowest-degree forms of all elements of I (the tangent cone at the
// origin). Homogenize with a trailing variable h, take a Gröbner basis where
// within a degree the larger power of h wins, set h = 1, keep initial forms.
inline Ideal initial_forms_ideal(const Ideal& ideal) {
  const RingPtr& ring = ideal.ring();
  if (!ideal.in_irrelevant_ideal()) throw DomainError("ideal is not contained in the irrelevant ideal");
  if (ideal.is_zero()) return Ideal::zero(ring);
  const TermOrder order{OrderKind::degrevlex_homogenizer_last};
  RingPtr ext = ring->extended("_h");
  std::vector<Polynomial> hom;
  for (const auto& f : ideal.generators()) hom.push_back(homogenize(f, ext, order));
  GroebnerBasis gb = buchberger(ext, hom, order);
  std::vector<Polynomial> forms;
  for (const auto& g : gb.elements()) forms.push_back(specialize_trailing(g, ring).initial_form());
  return Ideal(ring, std::move(forms)).canonical();
}

// dim_k [S/I]_n for homogeneous I.
inline std::size_t hilbert_function(const Ideal& ideal, int n) {
  if (!ideal.is_homogeneous()) throw DomainError("hilbert_function requires a homogeneous ideal");
  const GroebnerBasis& gb = ideal.groebner();
  std::size_t count = 0;
  for (const auto& m : monomials_of_degree(ideal.ring()->nvars(), n))
    if (!gb.leading_ideal_contains(m)) ++count;
  return count;
}

// For I ⊆ J with dim_k J/I finite: the monomials that are standard for I but
// not for J, grouped by degree. Their count is dim_k J/I (degree-compatible
// order). Each one is a leading monomial of J times a cofactor; cofactors are
// explored upward until they land in in(I), which happens for all of them
// exactly when J/I has finite length.
inline std::map<int, std::vector<Monomial>> relative_standard_monomials(const Ideal& small, const Ideal& big,
                                                                        std::size_t cap = 200000) {
  const GroebnerBasis& gi = small.groebner();
  const GroebnerBasis& gj = big.groebner();
  const std::size_t n = small.ring()->nvars();
  std::unordered_set<Monomial, MonomialHash> seen;
  std::vector<Monomial> frontier;
  for (const auto& lm : gj.leading_monomials())
    if (!gi.leading_ideal_contains(lm) && seen.insert(lm).second) frontier.push_back(lm);
  std::size_t head = 0;
  while (head < frontier.size()) {
    Monomial m = frontier[head++];
    for (std::size_t v = 0; v < n; ++v) {
      Monomial next = m * Monomial::variable(n, v);
      if (gi.leading_ideal_contains(next) || seen.count(next)) continue;
      seen.insert(next);
      frontier.push_back(next);
      if (seen.size() > cap) throw GuardExceeded("quotient J/I does not have finite length (monomial cap reached)");
    }
  }
  std::map<int, std::vector<Monomial>> out;
  for (const auto& m : frontier) out[static_cast<int>(m.degree())].push_back(m);
  for (auto& [d, v] : out)
    std::sort(v.begin(), v.end(), [](const Monomial& a, const Monomial& b) { return kDegRevLex.greater(a, b); });
  return out;
}

}  // namespace formring
