#pragma once

#include <algorithm>
#include <climits>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "formring/errors.hpp"
#include "formring/field.hpp"
#include "formring/monomial.hpp"

namespace formring {

// Polynomial ring k[x_1..x_n] over GF(p). Variable order is declaration order.
class Ring {
 public:
  Ring(std::vector<std::string> vars, std::uint64_t characteristic)
      : vars_(std::move(vars)), field_(characteristic) {}

  static std::shared_ptr<const Ring> make(std::vector<std::string> vars,
                                          std::uint64_t characteristic = PrimeField::kDefaultCharacteristic) {
    return std::make_shared<const Ring>(std::move(vars), characteristic);
  }

  std::size_t nvars() const { return vars_.size(); }
  const std::vector<std::string>& variables() const { return vars_; }
  const std::string& variable_name(std::size_t i) const { return vars_[i]; }
  const PrimeField& field() const { return field_; }
  std::uint32_t characteristic() const { return field_.characteristic(); }

  std::ptrdiff_t index_of(std::string_view name) const {
    auto it = std::find(vars_.begin(), vars_.end(), name);
    return it == vars_.end() ? -1 : it - vars_.begin();
  }

  // Same ring with one more variable appended last.
  std::shared_ptr<const Ring> extended(const std::string& extra) const {
    auto v = vars_;
    v.push_back(extra);
    return make(std::move(v), field_.characteristic());
  }

  friend bool operator==(const Ring& a, const Ring& b) { return a.vars_ == b.vars_ && a.field_ == b.field_; }

 private:
  std::vector<std::string> vars_;
  PrimeField field_;
};

using RingPtr = std::shared_ptr<const Ring>;

inline bool same_ring(const RingPtr& a, const RingPtr& b) { return a == b || (a && b && *a == *b); }

struct Term {
  Monomial mono;
  Residue coeff;
};

inline constexpr int kDegreeOfZero = INT_MIN;

// Sparse polynomial. Terms are kept sorted descending in order() with no
// zero coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(RingPtr ring, TermOrder order = kDegRevLex) : ring_(std::move(ring)), order_(order) {}

  static Polynomial constant(RingPtr ring, std::int64_t c, TermOrder order = kDegRevLex) {
    Polynomial p(ring, order);
    Residue r = ring->field().from_int(c);
    if (r) p.terms_.push_back({Monomial(ring->nvars()), r});
    return p;
  }

  static Polynomial variable(RingPtr ring, std::size_t i, TermOrder order = kDegRevLex) {
    Polynomial p(ring, order);
    p.terms_.push_back({Monomial::variable(ring->nvars(), i), 1});
    return p;
  }

  static Polynomial monomial(RingPtr ring, Monomial m, Residue c = 1, TermOrder order = kDegRevLex) {
    Polynomial p(ring, order);
    if (c) p.terms_.push_back({std::move(m), c});
    return p;
  }

  // Combines like terms, drops zeros, sorts.
  static Polynomial from_terms(RingPtr ring, std::vector<Term> terms, TermOrder order = kDegRevLex) {
    Polynomial p(std::move(ring), order);
    const auto& F = p.ring_->field();
    std::unordered_map<Monomial, Residue, MonomialHash> acc;
    acc.reserve(terms.size());
    for (auto& t : terms) {
      auto [it, fresh] = acc.try_emplace(std::move(t.mono), t.coeff);
      if (!fresh) it->second = F.add(it->second, t.coeff);
    }
    p.terms_.reserve(acc.size());
    for (auto& [m, c] : acc)
      if (c) p.terms_.push_back({m, c});
    p.sort_terms();
    return p;
  }

  // Precondition: terms strictly descending in `order`, coefficients nonzero.
  static Polynomial from_sorted(RingPtr ring, std::vector<Term> terms, TermOrder order) {
    Polynomial p(std::move(ring), order);
    p.terms_ = std::move(terms);
    return p;
  }

  void pop_leading() { terms_.erase(terms_.begin()); }

  const RingPtr& ring() const { return ring_; }
  const TermOrder& order() const { return order_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }

  const Term& leading_term() const { return terms_.front(); }
  const Monomial& leading_monomial() const { return terms_.front().mono; }
  Residue leading_coeff() const { return terms_.front().coeff; }

  // Total degree; kDegreeOfZero for the zero polynomial.
  int degree() const {
    int d = kDegreeOfZero;
    for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.mono.degree()));
    return d;
  }

  int low_degree() const {
    if (terms_.empty()) return kDegreeOfZero;
    int d = INT_MAX;
    for (const auto& t : terms_) d = std::min(d, static_cast<int>(t.mono.degree()));
    return d;
  }

  bool is_homogeneous() const {
    for (const auto& t : terms_)
      if (t.mono.degree() != terms_.front().mono.degree()) return false;
    return true;
  }

  Polynomial with_order(TermOrder order) const {
    Polynomial p = *this;
    if (order == order_) return p;
    p.order_ = order;
    p.sort_terms();
    return p;
  }

  // Degree -> homogeneous component. Zero polynomial gives an empty map.
  std::map<int, Polynomial> homogeneous_components() const {
    std::map<int, Polynomial> out;
    for (const auto& t : terms_) {
      auto [it, fresh] = out.try_emplace(static_cast<int>(t.mono.degree()), ring_, order_);
      it->second.terms_.push_back(t);
    }
    return out;
  }

  // Lowest-degree homogeneous component (the initial form at the origin).
  Polynomial initial_form() const {
    Polynomial p(ring_, order_);
    int d = low_degree();
    for (const auto& t : terms_)
      if (static_cast<int>(t.mono.degree()) == d) p.terms_.push_back(t);
    return p;
  }

  Polynomial monic() const {
    if (is_zero() || leading_coeff() == 1) return *this;
    return scaled(ring_->field().inv(leading_coeff()));
  }

  Polynomial scaled(Residue c) const {
    Polynomial p(ring_, order_);
    if (c == 0) return p;
    const auto& F = ring_->field();
    p.terms_.reserve(terms_.size());
    for (const auto& t : terms_) p.terms_.push_back({t.mono, F.mul(t.coeff, c)});
    return p;
  }

  Polynomial times_monomial(const Monomial& m, Residue c = 1) const {
    Polynomial p(ring_, order_);
    if (c == 0) return p;
    const auto& F = ring_->field();
    p.terms_.reserve(terms_.size());
    for (const auto& t : terms_) p.terms_.push_back({t.mono * m, F.mul(t.coeff, c)});
    return p;
  }

  // this - c*m*g, order preserved (monomial multiplication is order-compatible).
  Polynomial minus_scaled(const Polynomial& g, const Monomial& m, Residue c) const {
    check_ring(g);
    if (c == 0 || g.is_zero()) return *this;
    const auto& F = ring_->field();
    Polynomial out(ring_, order_);
    out.terms_.reserve(terms_.size() + g.terms_.size());
    std::size_t i = 0, j = 0;
    Polynomial reordered;
    if (!(g.order_ == order_)) reordered = g.with_order(order_);
    const auto& gt = g.order_ == order_ ? g.terms_ : reordered.terms_;
    while (i < terms_.size() || j < gt.size()) {
      if (j == gt.size()) {
        out.terms_.push_back(terms_[i++]);
        continue;
      }
      Monomial gm = gt[j].mono * m;
      int cmp = i == terms_.size() ? -1 : order_.compare(terms_[i].mono, gm);
      if (cmp > 0) {
        out.terms_.push_back(terms_[i++]);
      } else if (cmp < 0) {
        out.terms_.push_back({std::move(gm), F.neg(F.mul(c, gt[j].coeff))});
        ++j;
      } else {
        Residue v = F.sub_mul(terms_[i].coeff, c, gt[j].coeff);
        if (v) out.terms_.push_back({terms_[i].mono, v});
        ++i;
        ++j;
      }
    }
    return out;
  }

  friend Polynomial operator+(const Polynomial& f, const Polynomial& g) {
    f.check_ring(g);
    return f.minus_scaled(g, Monomial(f.ring_->nvars()), f.ring_->field().neg(1));
  }

  friend Polynomial operator-(const Polynomial& f, const Polynomial& g) {
    f.check_ring(g);
    return f.minus_scaled(g, Monomial(f.ring_->nvars()), 1);
  }

  friend Polynomial operator-(const Polynomial& f) { return f.scaled(f.ring_->field().neg(1)); }

  friend Polynomial operator*(const Polynomial& f, const Polynomial& g) {
    f.check_ring(g);
    if (f.is_zero() || g.is_zero()) return Polynomial(f.ring_, f.order_);
    if (g.size() == 1) return f.times_monomial(g.terms_[0].mono, g.terms_[0].coeff);
    if (f.size() == 1) return g.with_order(f.order_).times_monomial(f.terms_[0].mono, f.terms_[0].coeff);
    const auto& F = f.ring_->field();
    std::unordered_map<Monomial, Residue, MonomialHash> acc;
    acc.reserve(f.size() * g.size());
    for (const auto& a : f.terms_)
      for (const auto& b : g.terms_) {
        auto [it, fresh] = acc.try_emplace(a.mono * b.mono, 0);
        it->second = F.add(it->second, F.mul(a.coeff, b.coeff));
      }
    Polynomial p(f.ring_, f.order_);
    for (auto& [m, c] : acc)
      if (c) p.terms_.push_back({m, c});
    p.sort_terms();
    return p;
  }

  Polynomial pow(unsigned e) const {
    Polynomial r = constant(ring_, 1, order_);
    Polynomial b = *this;
    while (e) {
      if (e & 1) r = r * b;
      e >>= 1;
      if (e) b = b * b;
    }
    return r;
  }

  // Equality as elements of the ring (independent of the stored order).
  friend bool operator==(const Polynomial& f, const Polynomial& g) {
    if (!same_ring(f.ring_, g.ring_)) return false;
    if (f.terms_.size() != g.terms_.size()) return false;
    Polynomial reordered;
    if (!(f.order_ == g.order_)) reordered = g.with_order(f.order_);
    const auto& gt = f.order_ == g.order_ ? g.terms_ : reordered.terms_;
    for (std::size_t i = 0; i < gt.size(); ++i)
      if (!(f.terms_[i].mono == gt[i].mono) || f.terms_[i].coeff != gt[i].coeff) return false;
    return true;
  }

  // Canonical text: terms descending in degrevlex, symmetric coefficients.
  std::string to_string() const {
    if (!ring_ || terms_.empty()) return "0";
    Polynomial canon = with_order(kDegRevLex);
    const auto& F = ring_->field();
    std::string out;
    bool first = true;
    for (const auto& t : canon.terms_) {
      std::int64_t c = F.to_signed(t.coeff);
      bool negative = c < 0;
      std::uint64_t mag = negative ? static_cast<std::uint64_t>(-c) : static_cast<std::uint64_t>(c);
      if (first) {
        if (negative) out += "-";
      } else {
        out += negative ? " - " : " + ";
      }
      first = false;
      std::string mono = monomial_string(t.mono);
      if (mono.empty()) {
        out += std::to_string(mag);
      } else {
        if (mag != 1) out += std::to_string(mag) + "*";
        out += mono;
      }
    }
    return out;
  }

  std::string monomial_string(const Monomial& m) const {
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (!m[i]) continue;
      if (!s.empty()) s += "*";
      s += ring_->variable_name(i);
      if (m[i] > 1) s += "^" + std::to_string(m[i]);
    }
    return s;
  }

 private:
  void check_ring(const Polynomial& g) const {
    if (!same_ring(ring_, g.ring_)) throw AmbientMismatch();
  }

  void sort_terms() {
    std::sort(terms_.begin(), terms_.end(),
              [this](const Term& a, const Term& b) { return order_.greater(a.mono, b.mono); });
  }

  RingPtr ring_;
  TermOrder order_ = kDegRevLex;
  std::vector<Term> terms_;
};

// Maps f into `target`, whose variables extend f's ring by trailing ones.
inline Polynomial embed(const Polynomial& f, const RingPtr& target, TermOrder order) {
  std::vector<Term> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) {
    auto e = t.mono.exponents();
    e.resize(target->nvars(), 0);
    terms.push_back({Monomial(std::move(e)), t.coeff});
  }
  return Polynomial::from_terms(target, std::move(terms), order);
}

// Drops the trailing variables of f's ring by setting them to 1.
inline Polynomial specialize_trailing(const Polynomial& f, const RingPtr& target, TermOrder order = kDegRevLex) {
  std::vector<Term> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) {
    auto e = t.mono.exponents();
    e.resize(target->nvars());
    terms.push_back({Monomial(std::move(e)), t.coeff});
  }
  return Polynomial::from_terms(target, std::move(terms), order);
}

// Homogenizes f with the last variable of `target` (target = f's ring + 1 var).
inline Polynomial homogenize(const Polynomial& f, const RingPtr& target, TermOrder order) {
  const int d = f.degree();
  std::vector<Term> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) {
    auto e = t.mono.exponents();
    e.push_back(static_cast<std::uint32_t>(d - static_cast<int>(t.mono.degree())));
    terms.push_back({Monomial(std::move(e)), t.coeff});
  }
  return Polynomial::from_terms(target, std::move(terms), order);
}

}  // namespace formring
