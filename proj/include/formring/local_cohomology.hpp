#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "formring/errors.hpp"
#include "formring/graded_ring.hpp"
#include "formring/koszul.hpp"
#include "formring/verdict.hpp"

namespace formring {

struct StabilizationConfig {
  int n_lo = -6;
  int n_hi = 6;
  int t_max = 12;
  // Consecutive isomorphic transitions required before a piece is declared
  // stable.
  int margin = 2;

  // Window [-(dim+3), 2*(max generator degree)+3].
  static StabilizationConfig defaults_for(const GradedQuotientRing& g) {
    StabilizationConfig c;
    c.n_lo = -(g.krull_dimension() + 3);
    c.n_hi = 2 * g.max_generator_degree() + 3;
    c.t_max = default_t_max(g, c.n_lo, c.margin);
    return c;
  }

  // At least 12, and enough for the bottom of the window to pass its
  // warm-up (LocalCohomology::warm_up) plus `margin` transitions.
  static int default_t_max(const GradedQuotientRing& g, int n_lo, int margin) {
    const int warm = std::max(1, g.polynomial_range_start() - n_lo - static_cast<int>(g.nvars()) + 1);
    return std::max(12, warm + margin);
  }

  void validate() const {
    if (n_lo > n_hi) throw DomainError("degree window is empty");
    if (t_max < 2) throw DomainError("t_max must be at least 2");
    if (margin < 1) throw DomainError("margin must be at least 1");
  }
};

// [H^i_M(G)]_n as a stabilized Koszul colimit.
struct LocalPiece {
  int index = 0;
  int degree = 0;
  std::size_t dim = 0;
  // Power from which the transitions were observed to be isomorphisms.
  int power = 0;
  bool stable = false;
  std::vector<std::size_t> dims_by_power;  // entry k is dim at power k+1
};

struct TableEntry {
  std::size_t dim = 0;
  int power = 0;
  bool stable = true;
};

// Dimensions of [H^i]_n indexed by cohomological index and internal degree.
// A synthetic table is exact: every entry not listed is zero.
class CohomologyTable {
 public:
  CohomologyTable() = default;
  CohomologyTable(int n_lo, int n_hi, int i_max) : lo_(n_lo), hi_(n_hi), i_max_(i_max) {}

  static CohomologyTable synthetic(std::span<const std::tuple<int, int, std::size_t>> entries) {
    CohomologyTable t;
    t.synthetic_ = true;
    bool first = true;
    for (auto [i, n, d] : entries) {
      if (i < 0) throw DomainError("cohomological index must be non-negative");
      t.entries_[{i, n}] = TableEntry{d, 0, true};
      t.lo_ = first ? n : std::min(t.lo_, n);
      t.hi_ = first ? n : std::max(t.hi_, n);
      t.i_max_ = first ? i : std::max(t.i_max_, i);
      first = false;
    }
    return t;
  }

  // Diagonal coordinate used by the descent criteria: a class in
  // [H^i]_{internal} sits at position internal + i.
  static int position(int i, int internal_degree) { return internal_degree + i; }
  static int internal_degree(int i, int position) { return position - i; }

  void set(int i, int n, TableEntry e) { entries_[{i, n}] = e; }

  int lo() const { return lo_; }
  int hi() const { return hi_; }
  int i_max() const { return i_max_; }
  bool is_synthetic() const { return synthetic_; }
  const std::map<std::pair<int, int>, TableEntry>& entries() const { return entries_; }

  bool covers_row(int i) const { return i >= 0 && (synthetic_ || i <= i_max_); }

  std::optional<TableEntry> entry(int i, int n) const {
    auto it = entries_.find({i, n});
    if (it != entries_.end()) return it->second;
    if (synthetic_ && i >= 0) return TableEntry{};
    return std::nullopt;
  }

  bool row_stable(int i) const {
    for (const auto& [key, e] : entries_)
      if (key.first == i && !e.stable) return false;
    return true;
  }

  // Degrees with nonzero dimension.
  std::vector<int> support(int i) const {
    std::vector<int> out;
    for (const auto& [key, e] : entries_)
      if (key.first == i && e.dim > 0) out.push_back(key.second);
    return out;
  }

  bool boundary_zero_low(int i) const {
    if (synthetic_) return true;
    auto e = entry(i, lo_);
    return e && e->stable && e->dim == 0;
  }
  bool boundary_zero_high(int i) const {
    if (synthetic_) return true;
    auto e = entry(i, hi_);
    return e && e->stable && e->dim == 0;
  }

  // All nonzero entries interior to the window and both boundary entries
  // zero: the row is taken to have finite length.
  bool row_finite_length(int i) const {
    return covers_row(i) && row_stable(i) && boundary_zero_low(i) && boundary_zero_high(i);
  }

  std::size_t row_length(int i) const {
    std::size_t s = 0;
    for (const auto& [key, e] : entries_)
      if (key.first == i) s += e.dim;
    return s;
  }

 private:
  int lo_ = 0, hi_ = 0, i_max_ = -1;
  bool synthetic_ = false;
  std::map<std::pair<int, int>, TableEntry> entries_;
};

struct SurjectivityInfo {
  int index = 0;
  int degree = 0;
  std::size_t source_dim = 0;
  std::size_t target_dim = 0;
  std::size_t rank = 0;
  bool surjective() const { return rank == target_dim; }
};

struct AnnihilatorWitness {
  int index = 0;
  std::size_t variable = 0;  // position in the Koszul sequence
  int degree = 0;
  int power = 0;
  Vector cocycle;
  std::string element;
};

struct AnnihilatorResult {
  Truth truth = Truth::yes;
  std::optional<AnnihilatorWitness> witness;
  std::string note;
};

// Local cohomology H^i_M(G) of G with respect to the ideal generated by the
// Koszul sequence (default: all variables, M = G_+). Holds a reference to G.
class LocalCohomology {
 public:
  explicit LocalCohomology(const GradedQuotientRing& g)
      : LocalCohomology(g, StabilizationConfig::defaults_for(g)) {}

  LocalCohomology(const GradedQuotientRing& g, StabilizationConfig cfg)
      : LocalCohomology(KoszulComplex(g), cfg) {}

  // The sequence must be a basis of the linear forms.
  LocalCohomology(KoszulComplex k, StabilizationConfig cfg)
      : koszul_(std::move(k)), cfg_(cfg), cache_(std::make_unique<Cache>()) {
    cfg_.validate();
    const std::size_t nv = ring().nvars();
    Matrix coeffs(koszul_.sequence().size(), nv);
    for (std::size_t r = 0; r < koszul_.sequence().size(); ++r)
      for (const auto& term : koszul_.sequence()[r].terms()) {
        const auto& e = term.mono.exponents();
        coeffs(r, static_cast<std::size_t>(std::find(e.begin(), e.end(), 1u) - e.begin())) = term.coeff;
      }
    if (koszul_.sequence().size() != nv || rank(coeffs, ring().field()) != nv)
      throw DomainError("local cohomology needs a Koszul sequence spanning the linear forms");
    shift_bound_ = ring().polynomial_range_start();
  }

  const KoszulComplex& koszul() const { return koszul_; }
  const GradedQuotientRing& ring() const { return koszul_.ring(); }
  const StabilizationConfig& config() const { return cfg_; }

  bool transition_is_iso(int i, int n, int t) const {
    const auto& a = koszul_.cohomology(i, n, t);
    const auto& b = koszul_.cohomology(i, n, t + 1);
    if (a.dim() != b.dim()) return false;
    if (a.dim() == 0) return true;
    return rank(koszul_.transition_map(i, n, t), ring().field()) == a.dim();
  }

  // With N variables, [H^i(x^t; G)]_n = Tor_{N-i}(S/(x^t), G) in degree
  // n + tN, dual to [Ext^{N-i}(G, S)]_{-n-N} once t > a - n - N for every
  // shift a of a free resolution of G. Shifts are at most the degree of the
  // lcm of the leading monomials, so from warm_up(n) on the transitions are
  // isomorphisms and the margin count starts there.
  int warm_up(int n) const {
    return std::max(1, shift_bound_ - n - static_cast<int>(ring().nvars()) + 1);
  }

  const LocalPiece& piece(int i, int n) const {
    if (i < 0 || i > koszul_.length()) throw DomainError("local cohomology index " + std::to_string(i) + " out of range");
    {
      std::lock_guard lock(cache_->mutex);
      auto it = cache_->pieces.find({i, n});
      if (it != cache_->pieces.end()) return it->second;
    }
    LocalPiece p;
    p.index = i;
    p.degree = n;
    p.dims_by_power.push_back(koszul_.cohomology(i, n, 1).dim());
    int run = 0;
    for (int t = 1; t < cfg_.t_max; ++t) {
      bool iso = transition_is_iso(i, n, t);
      p.dims_by_power.push_back(koszul_.cohomology(i, n, t + 1).dim());
      run = (iso && t >= warm_up(n)) ? run + 1 : 0;
      if (run == cfg_.margin) {
        p.power = t + 1 - cfg_.margin;
        p.stable = true;
        p.dim = p.dims_by_power[p.power - 1];
        break;
      }
    }
    if (!p.stable) {
      p.power = cfg_.t_max;
      p.dim = p.dims_by_power.back();
    }
    std::lock_guard lock(cache_->mutex);
    return cache_->pieces.emplace(std::pair(i, n), std::move(p)).first->second;
  }

  CohomologyTable table(int i_max) const {
    if (i_max < 0 || i_max > koszul_.length()) throw DomainError("i_max out of range");
    CohomologyTable t(cfg_.n_lo, cfg_.n_hi, i_max);
    for (int i = 0; i <= i_max; ++i)
      for (int n = cfg_.n_lo; n <= cfg_.n_hi; ++n) {
        const auto& p = piece(i, n);
        t.set(i, n, TableEntry{p.dim, p.power, p.stable});
      }
    return t;
  }

  // All transitions between powers a and b are isomorphisms.
  bool stable_between(int i, int n, int a, int b) const {
    for (int t = a; t < b; ++t)
      if (!transition_is_iso(i, n, t)) return false;
    return true;
  }

  // [f^i_G]_n : [H^i(x; G)]_n -> [H^i_M(G)]_n in representative bases.
  Matrix f_map(int i, int n) const {
    const auto& p = piece(i, n);
    if (!p.stable) throw GuardExceeded("target [H^" + std::to_string(i) + "]_" + std::to_string(n) + " not stabilized");
    return formring::f_map(koszul_, i, n, p.power);
  }

  SurjectivityInfo f_surjectivity(int i, int n) const {
    Matrix m = f_map(i, n);
    SurjectivityInfo s{i, n, m.cols(), piece(i, n).dim, 0};
    s.rank = rank(m, ring().field());
    return s;
  }

  // M * [H^i_M(G)] = 0 over the window: every x_j sends each stabilized
  // representative in degree n to a coboundary in degree n + 1.
  AnnihilatorResult annihilator_is_irrelevant(int i) const {
    AnnihilatorResult out;
    for (int n = cfg_.n_lo; n <= cfg_.n_hi; ++n) {
      const auto& src = piece(i, n);
      if (!src.stable) return {Truth::inconclusive, std::nullopt, "unstable entry at degree " + std::to_string(n)};
      if (src.dim == 0) continue;
      const auto& dst = piece(i, n + 1);
      if (!dst.stable)
        return {Truth::inconclusive, std::nullopt, "unstable entry at degree " + std::to_string(n + 1)};
      const int power = std::max(src.power, dst.power);
      if (!stable_between(i, n, src.power, power) || !stable_between(i, n + 1, dst.power, power))
        return {Truth::inconclusive, std::nullopt, "transitions not isomorphic up to power " + std::to_string(power)};
      const auto& hs = koszul_.cohomology(i, n, power);
      const auto& ht = koszul_.cohomology(i, n + 1, power);
      for (int j = 0; j < koszul_.length(); ++j) {
        Matrix mult = koszul_.multiplication(i, n, power, koszul_.sequence()[j]);
        for (const auto& rep : hs.representatives()) {
          auto coords = ht.quotient.coordinates(apply(mult, rep, ring().field()));
          if (!coords) throw std::logic_error("multiplication does not preserve cocycles");
          if (!is_zero_vector(*coords)) {
            out.truth = Truth::no;
            out.witness = AnnihilatorWitness{i, static_cast<std::size_t>(j), n, power, rep,
                                             koszul_.describe(i, n, power, rep)};
            return out;
          }
        }
      }
    }
    return out;
  }

 private:
  struct Cache {
    std::mutex mutex;
    std::map<std::pair<int, int>, LocalPiece> pieces;
  };

  KoszulComplex koszul_;
  StabilizationConfig cfg_;
  std::unique_ptr<Cache> cache_;
  int shift_bound_ = 0;
};

inline std::map<int, std::size_t> count_by_degree(const std::map<int, std::vector<Monomial>>& m) {
  std::map<int, std::size_t> out;
  for (const auto& [d, v] : m) out[d] = v.size();
  return out;
}

// Graded dimensions of (I : M^∞)/I = H^0_M(G), computed by ideal arithmetic.
inline std::map<int, std::size_t> h0_via_saturation(const GradedQuotientRing& g,
                                                   int max_exponent = kDefaultSaturationCap) {
  const Ideal& I = g.ideal();
  Ideal sat = saturate(I, Ideal::irrelevant(I.ring()), max_exponent).ideal;
  return count_by_degree(relative_standard_monomials(I, sat));
}

// Graded dimensions of (I : M)/I = 0 :_G M, the socle.
inline std::map<int, std::size_t> socle_via_quotient(const GradedQuotientRing& g) {
  const Ideal& I = g.ideal();
  Ideal q = ideal_quotient(I, Ideal::irrelevant(I.ring()));
  return count_by_degree(relative_standard_monomials(I, q));
}

}  // namespace formring
