#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "formring/errors.hpp"
#include "formring/graded_ring.hpp"
#include "formring/groebner.hpp"
#include "formring/local_cohomology.hpp"
#include "formring/verdict.hpp"

namespace formring {

// A table entry named by a witness: row i, internal degree, diagonal position.
struct EntryWitness {
  int index = 0;
  int degree = 0;
  int position = 0;
  std::size_t dim = 0;
};

namespace detail {

struct RowScan {
  std::vector<EntryWitness> nonzero;  // stable nonzero entries
  std::vector<EntryWitness> unstable;
  bool covered = true;
  bool complete = true;  // boundary entries are stable zeros

  std::set<int> positions() const {
    std::set<int> out;
    for (const auto& w : nonzero) out.insert(w.position);
    return out;
  }
};

inline RowScan scan_row(const CohomologyTable& table, int i) {
  RowScan r;
  if (!table.covers_row(i)) {
    r.covered = r.complete = false;
    return r;
  }
  for (const auto& [key, e] : table.entries()) {
    if (key.first != i) continue;
    EntryWitness w{i, key.second, CohomologyTable::position(i, key.second), e.dim};
    if (!e.stable) {
      r.unstable.push_back(w);
    } else if (e.dim > 0) {
      r.nonzero.push_back(w);
    }
  }
  r.complete = table.row_finite_length(i);
  return r;
}

}  // namespace detail

// Set of integers: a finite list, optionally extended by every k >= from.
struct AdmissibleSet {
  std::vector<int> values;
  std::optional<int> from;
  bool all_integers = false;

  bool empty() const { return values.empty() && !from && !all_integers; }
  bool contains(int k) const {
    return all_integers || (from && k >= *from) || std::find(values.begin(), values.end(), k) != values.end();
  }

  std::string to_string() const {
    if (all_integers) return "all";
    if (from) return "k >= " + std::to_string(*from);
    std::string s = "[";
    for (std::size_t i = 0; i < values.size(); ++i) s += (i ? ", " : "") + std::to_string(values[i]);
    return s + "]";
  }
};

struct Thm12Result {
  int t = 0;
  Truth truth = Truth::inconclusive;
  AdmissibleSet admissible;
  std::vector<EntryWitness> violating;
  std::string note;
};

// Integers k with [H^i]_{n-i} = 0 for n ∉ {k-1, k}, i < t, and
// [H^t]_{n-t} = 0 for n > k, in diagonal positions n.
inline Thm12Result check_thm12_hypothesis(const CohomologyTable& table, int t) {
  if (t < 0) throw DomainError("t must be non-negative");
  Thm12Result out;
  out.t = t;
  std::vector<EntryWitness> below;
  bool below_unknown = false;
  for (int i = 0; i < t; ++i) {
    auto row = detail::scan_row(table, i);
    below.insert(below.end(), row.nonzero.begin(), row.nonzero.end());
    if (!row.covered || !row.unstable.empty() || !row.complete) below_unknown = true;
  }
  std::set<int> P;
  for (const auto& w : below) P.insert(w.position);
  if (!P.empty() && *P.rbegin() - *P.begin() >= 2) {
    out.truth = Truth::no;
    out.violating = below;
    out.note = "nonzero positions below row t span more than two adjacent values";
    return out;
  }
  if (below_unknown) {
    out.note = "rows below t not stabilized or not window-complete";
    return out;
  }

  std::vector<int> candidates;
  if (!P.empty()) {
    const int a = *P.begin(), b = *P.rbegin();
    if (a == b) candidates = {a, a + 1};
    else candidates = {b};
  }

  auto top = detail::scan_row(table, t);
  if (!top.covered) {
    out.note = "row t not computed";
    return out;
  }
  const bool top_zero = table.boundary_zero_high(t);
  std::optional<int> max_nonzero, max_unstable;
  for (const auto& w : top.nonzero) max_nonzero = std::max(max_nonzero.value_or(w.position), w.position);
  for (const auto& w : top.unstable) max_unstable = std::max(max_unstable.value_or(w.position), w.position);

  if (P.empty()) {
    if (max_unstable || !top_zero) {
      out.note = "row t tail not determined on the window";
      return out;
    }
    if (max_nonzero) out.admissible.from = *max_nonzero;
    else out.admissible.all_integers = true;
    out.truth = Truth::yes;
    return out;
  }

  bool unknown = false;
  for (int k : candidates) {
    std::vector<EntryWitness> blocking;
    for (const auto& w : top.nonzero)
      if (w.position > k) blocking.push_back(w);
    if (!blocking.empty()) {
      out.violating.insert(out.violating.end(), blocking.begin(), blocking.end());
      continue;
    }
    if ((max_unstable && *max_unstable > k) || !top_zero) {
      unknown = true;
      continue;
    }
    out.admissible.values.push_back(k);
  }
  if (!out.admissible.empty()) {
    out.truth = Truth::yes;
    out.violating.clear();
  } else if (unknown) {
    out.note = "row t tail not determined on the window";
  } else {
    out.truth = Truth::no;
    out.note = "row t is nonzero above every candidate k";
  }
  return out;
}

struct GapViolation {
  int i = 0, j = 0, p = 0, q = 0;
  friend bool operator==(const GapViolation&, const GapViolation&) = default;
};

struct GapResult {
  int t = 0;
  Truth truth = Truth::inconclusive;  // yes: no pair with p - q = 1
  std::vector<GapViolation> violations;
  std::string note;
};

// All (i, j, p, q) with i < j < t, [H^i]_{p-i} ≠ 0, [H^j]_{q-j} ≠ 0, p - q = 1.
inline GapResult check_thm13_gap(const CohomologyTable& table, int t) {
  if (t < 0) throw DomainError("t must be non-negative");
  GapResult out;
  out.t = t;
  std::vector<detail::RowScan> rows;
  bool unknown = false;
  for (int i = 0; i < t; ++i) {
    rows.push_back(detail::scan_row(table, i));
    if (!rows.back().covered || !rows.back().unstable.empty() || !rows.back().complete) unknown = true;
  }
  for (int i = 0; i < t; ++i)
    for (int j = i + 1; j < t; ++j)
      for (int p : rows[i].positions())
        if (rows[j].positions().contains(p - 1)) out.violations.push_back({i, j, p, p - 1});
  if (!out.violations.empty()) {
    out.truth = Truth::no;
  } else if (unknown) {
    out.note = "rows below t not stabilized or not window-complete";
  } else {
    out.truth = Truth::yes;
  }
  return out;
}

struct SurjectivityReport {
  Truth truth = Truth::inconclusive;
  int dimension = 0;
  std::vector<SurjectivityInfo> maps;  // every stable (i, n) with i < d
  std::vector<SurjectivityInfo> failures;
  std::vector<std::pair<int, int>> unstable;
};

// G is Buchsbaum iff [f^i_G]_n is surjective for all i < dim G and all n.
// Decided on the configured window.
inline SurjectivityReport stuckrad_test(const LocalCohomology& lc) {
  SurjectivityReport out;
  out.dimension = lc.ring().krull_dimension();
  const auto& cfg = lc.config();
  for (int i = 0; i < out.dimension; ++i)
    for (int n = cfg.n_lo; n <= cfg.n_hi; ++n) {
      if (!lc.piece(i, n).stable) {
        out.unstable.emplace_back(i, n);
        continue;
      }
      auto s = lc.f_surjectivity(i, n);
      out.maps.push_back(s);
      if (!s.surjective()) out.failures.push_back(s);
    }
  out.truth = !out.failures.empty() ? Truth::no : !out.unstable.empty() ? Truth::inconclusive : Truth::yes;
  return out;
}

struct QuasiBuchsbaumReport {
  Truth truth = Truth::yes;
  int dimension = 0;
  std::vector<AnnihilatorResult> rows;  // one per i < d
};

inline QuasiBuchsbaumReport quasi_buchsbaum_test(const LocalCohomology& lc) {
  QuasiBuchsbaumReport out;
  out.dimension = lc.ring().krull_dimension();
  bool unknown = false;
  for (int i = 0; i < out.dimension; ++i) {
    out.rows.push_back(lc.annihilator_is_irrelevant(i));
    if (out.rows.back().truth == Truth::no) out.truth = Truth::no;
    if (out.rows.back().truth == Truth::inconclusive) unknown = true;
  }
  if (out.truth != Truth::no && unknown) out.truth = Truth::inconclusive;
  return out;
}

struct TorsionCertificate {
  Polynomial element;
  int exponent = 0;  // smallest s with element * m^s ⊆ I
};

// H^0 of A = S_m / I S_m at the maximal ideal m of the origin, from ideal
// arithmetic in S. Degrees index a monomial basis, so for inhomogeneous I
// they are filtration degrees.
struct LocalH0Report {
  Ideal ideal;
  Ideal socle;       // I : m
  Ideal saturation;  // I : m^∞
  int saturation_exponent = 0;
  std::map<int, std::size_t> socle_dims;
  std::map<int, std::size_t> saturation_dims;
  std::vector<TorsionCertificate> certificates;
  std::vector<Polynomial> witnesses;  // in I : m^∞ but not in I : m

  bool f0_surjective() const { return socle == saturation; }
  std::size_t socle_length() const { return total(socle_dims); }
  std::size_t length() const { return total(saturation_dims); }

 private:
  static std::size_t total(const std::map<int, std::size_t>& m) {
    std::size_t s = 0;
    for (const auto& [d, c] : m) s += c;
    return s;
  }
};

// Smallest s >= 0 with f * (all monomials of degree s) ⊆ I, up to `cap`.
inline std::optional<int> annihilating_power(const Polynomial& f, const Ideal& I, int cap) {
  const auto& ring = I.ring();
  for (int s = 0; s <= cap; ++s) {
    bool all = true;
    for (const auto& m : monomials_of_degree(ring->nvars(), s))
      if (!I.contains(f.times_monomial(m))) {
        all = false;
        break;
      }
    if (all) return s;
  }
  return std::nullopt;
}

inline LocalH0Report local_h0_report(const Ideal& I, int max_exponent = kDefaultSaturationCap) {
  if (!I.in_irrelevant_ideal()) throw DomainError("ideal is not contained in the irrelevant ideal");
  const Ideal m = Ideal::irrelevant(I.ring());
  Ideal socle = ideal_quotient(I, m);
  SaturationResult sat = saturate(I, m, max_exponent);
  LocalH0Report r{I, socle, sat.ideal, sat.exponent, {}, {}, {}, {}};
  r.socle_dims = count_by_degree(relative_standard_monomials(I, socle));
  r.saturation_dims = count_by_degree(relative_standard_monomials(I, sat.ideal));
  for (const auto& g : sat.ideal.groebner().elements()) {
    if (I.contains(g)) continue;
    auto s = annihilating_power(g, I, sat.exponent);
    if (!s) throw std::logic_error("saturation element not annihilated by m^s");
    r.certificates.push_back({g, *s});
    if (!socle.contains(g)) r.witnesses.push_back(g);
  }
  return r;
}

struct LengthCheck {
  Truth truth = Truth::inconclusive;
  std::optional<std::size_t> g_length;
  std::size_t a_length = 0;
};

// L(H^0_M(G)) >= L(H^0_m(A)).
inline LengthCheck length_inequality_check(const CohomologyTable& g_table, const LocalH0Report& a) {
  LengthCheck out;
  out.a_length = a.length();
  if (!g_table.row_finite_length(0)) return out;
  out.g_length = g_table.row_length(0);
  out.truth = truth_of(*out.g_length >= out.a_length);
  return out;
}

struct DescentReport {
  Ideal a_ideal;
  Ideal g_ideal;
  int dimension = 0;
  StabilizationConfig config;
  CohomologyTable table;
  Thm12Result thm12;
  GapResult gap;
  SurjectivityReport g_buchsbaum;
  QuasiBuchsbaumReport g_quasi_buchsbaum;
  LocalH0Report a_h0;
  LengthCheck length;
  // Finite length of H^i_M(G), i < d, on the window; the same for
  // H^i_m(A) then follows.
  Truth finiteness_hypothesis = Truth::inconclusive;
  bool descent_applicable = false;
  Truth a_buchsbaum = Truth::inconclusive;
  std::string a_buchsbaum_source;
  std::optional<bool> h0_length_equal;  // set when descent applies
};

inline StabilizationConfig config_for(const GradedQuotientRing& g, std::optional<StabilizationConfig> over) {
  return over ? *over : StabilizationConfig::defaults_for(g);
}

inline DescentReport corollary41_verdict(const Ideal& a_ideal, std::optional<StabilizationConfig> cfg = std::nullopt) {
  Ideal in = initial_forms_ideal(a_ideal);
  GradedQuotientRing g(in);
  const int d = g.krull_dimension();
  StabilizationConfig c = config_for(g, cfg);
  LocalCohomology lc(g, c);
  CohomologyTable table = lc.table(std::min<int>(d, static_cast<int>(g.nvars())));

  DescentReport r{a_ideal, in, d, c, table, check_thm12_hypothesis(table, d), check_thm13_gap(table, d),
                  stuckrad_test(lc), quasi_buchsbaum_test(lc), local_h0_report(a_ideal),
                  {}, Truth::inconclusive, false, Truth::inconclusive, {}, std::nullopt};
  r.length = length_inequality_check(table, r.a_h0);

  bool finite = true, unknown = false;
  for (int i = 0; i < d; ++i) {
    if (!table.row_stable(i)) unknown = true;
    else if (!table.row_finite_length(i)) finite = false;
  }
  r.finiteness_hypothesis = !finite ? Truth::no : unknown ? Truth::inconclusive : Truth::yes;

  r.descent_applicable = r.thm12.truth == Truth::yes;
  // Buchsbaum means f^i_A surjective for i < d; for d = 1 that is f^0_A alone.
  const Truth direct = d == 0 ? Truth::yes : d == 1 ? truth_of(r.a_h0.f0_surjective()) : Truth::inconclusive;
  if (r.descent_applicable && r.g_buchsbaum.truth != Truth::inconclusive) {
    r.a_buchsbaum = r.g_buchsbaum.truth;
    r.a_buchsbaum_source = "descent";
    if (r.length.g_length) r.h0_length_equal = *r.length.g_length == r.length.a_length;
    if (direct != Truth::inconclusive && direct != r.a_buchsbaum)
      throw std::logic_error("descent conclusion contradicts f^0_A");
  } else if (direct != Truth::inconclusive) {
    r.a_buchsbaum = direct;
    r.a_buchsbaum_source = d == 0 ? "dimension 0" : "f0_A";
  } else if (!r.a_h0.f0_surjective()) {
    r.a_buchsbaum = Truth::no;
    r.a_buchsbaum_source = "f0_A";
  } else if (a_ideal.is_homogeneous() && r.g_buchsbaum.truth != Truth::inconclusive) {
    // A is the localization of G at its irrelevant ideal.
    r.a_buchsbaum = r.g_buchsbaum.truth;
    r.a_buchsbaum_source = "homogeneous";
  } else {
    r.a_buchsbaum_source = "undetermined";
  }
  return r;
}

// Premise: [H^i]_{k+1-i} = 0 for every row of the table. Conclusion:
// [f^i_G]_{k-i} surjective for every row. Returns the (k, i) pairs where the
// premise holds on stable entries and the conclusion fails.
struct ConsistencyResult {
  std::size_t premises = 0;
  std::vector<std::pair<int, int>> violations;
};

inline ConsistencyResult prop32_consistency(const LocalCohomology& lc, const CohomologyTable& table) {
  ConsistencyResult out;
  const auto& cfg = lc.config();
  for (int k = cfg.n_lo - 1; k <= cfg.n_hi + table.i_max(); ++k) {
    bool premise = true;
    for (int i = 0; i <= table.i_max() && premise; ++i) {
      const int n = k + 1 - i, m = k - i;
      if (n < cfg.n_lo || n > cfg.n_hi || m < cfg.n_lo || m > cfg.n_hi) premise = false;
      else {
        auto e = table.entry(i, n);
        premise = e && e->stable && e->dim == 0 && table.entry(i, m)->stable;
      }
    }
    if (!premise) continue;
    ++out.premises;
    for (int i = 0; i <= table.i_max(); ++i)
      if (!lc.f_surjectivity(i, k - i).surjective()) out.violations.emplace_back(k, i);
  }
  return out;
}

}  // namespace formring
