#pragma once

// Corpus rings, independent oracles and randomized property routines shared by
// the unit suites and the acceptance binary.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "formring/checks.hpp"
#include "formring/koszul.hpp"
#include "formring/linalg.hpp"
#include "formring/session.hpp"

namespace fr_test {

using namespace formring;

// Ideal from a comma-separated generator list, through the session grammar.
inline Ideal ideal_of(const std::vector<std::string>& vars, const std::string& gens, std::uint32_t p = 32003) {
  std::string text = "char " + std::to_string(p) + "; vars ";
  for (std::size_t i = 0; i < vars.size(); ++i) text += (i ? ", " : "") + vars[i];
  text += "; ideal I = " + gens + ";";
  Session s = parse_session(text);
  const auto& decl = std::get<IdealDecl>(s.statements.back());
  auto ring = Ring::make(vars, p);
  std::vector<Polynomial> out;
  for (const auto& g : decl.generators) out.push_back(eval_polynomial(g, ring, {}));
  return Ideal(ring, std::move(out));
}

inline Polynomial poly_of(const RingPtr& ring, const std::string& text) {
  std::string src = "char " + std::to_string(ring->characteristic()) + "; vars ";
  for (std::size_t i = 0; i < ring->nvars(); ++i) src += (i ? ", " : "") + ring->variable_name(i);
  src += "; ideal I = " + text + ";";
  Session s = parse_session(src);
  return eval_polynomial(std::get<IdealDecl>(s.statements.back()).generators.at(0), ring, {});
}

inline std::string family_a(int r) {
  const std::string rs = std::to_string(r), r1 = std::to_string(r + 1);
  return "x^2, x*y, x*z - y^" + rs + ", y^" + r1 + ", x*z^2";
}

inline std::string family_g(int r) {
  const std::string rs = std::to_string(r), r1 = std::to_string(r + 1);
  return "x^2, x*y, x*z, y^" + r1 + ", y^" + rs + "*z";
}

struct CorpusRing {
  std::string name;
  std::vector<std::string> vars;
  std::string gens;  // homogeneous; "0" for the polynomial ring
};

inline std::vector<CorpusRing> corpus() {
  const std::vector<std::string> xyz{"x", "y", "z"}, xy{"x", "y"};
  return {
      {"k[x,y,z]", xyz, "0"},
      {"k[x,y]", xy, "0"},
      {"k[x]/(x^3)", {"x"}, "x^3"},
      {"k[x,y]/(x^2,xy)", xy, "x^2, x*y"},
      {"k[x,y]/(x^3,x^2y^2)", xy, "x^3, x^2*y^2"},
      {"family G r=3", xyz, family_g(3)},
      {"family G r=4", xyz, family_g(4)},
      {"family G r=5", xyz, family_g(5)},
      {"k[x,y]/(x^2)", xy, "x^2"},
      {"k[x,y,z]/(x^2,xy,xz)", xyz, "x^2, x*y, x*z"},
      {"k[x,y,z]/(xy,xz)", xyz, "x*y, x*z"},
      {"k[x,y,z,w]/(xz,xw,yz,yw)", {"x", "y", "z", "w"}, "x*z, x*w, y*z, y*w"},
      {"k[x,y,z]/(x)", xyz, "x"},
      {"k[x,y,z]/(x^2,y^2)", xyz, "x^2, y^2"},
  };
}

// dim_k [S/I]_n by linear algebra on S_n: rank of {m*g : deg m + deg g = n}.
// Independent of Gröbner bases; homogeneous generators only.
inline std::size_t hilbert_oracle(const Ideal& I, int n) {
  const auto& ring = I.ring();
  const auto basis = monomials_of_degree(ring->nvars(), n);
  std::map<std::vector<std::uint32_t>, std::size_t> index;
  for (std::size_t k = 0; k < basis.size(); ++k) index[basis[k].exponents()] = k;
  Subspace in_n(basis.size(), ring->field());
  for (const auto& g : I.generators()) {
    if (g.degree() > n) continue;
    for (const auto& m : monomials_of_degree(ring->nvars(), n - g.degree())) {
      Vector v(basis.size(), 0);
      for (const auto& t : g.terms()) v[index.at((t.mono * m).exponents())] = t.coeff;
      in_n.insert(std::move(v));
    }
  }
  return basis.size() - in_n.rank();
}

// dim_k [(I : M)/I]_n by linear algebra: forms f of degree n with x_j f ∈ I_{n+1}
// for all j, modulo I_n.
inline std::size_t socle_oracle(const Ideal& I, int n) {
  const auto& ring = I.ring();
  const auto& F = ring->field();
  const std::size_t nv = ring->nvars();
  auto span_of = [&](int d) {
    const auto basis = monomials_of_degree(nv, d);
    std::map<std::vector<std::uint32_t>, std::size_t> index;
    for (std::size_t k = 0; k < basis.size(); ++k) index[basis[k].exponents()] = k;
    Subspace s(basis.size(), F);
    for (const auto& g : I.generators()) {
      if (g.degree() > d) continue;
      for (const auto& m : monomials_of_degree(nv, d - g.degree())) {
        Vector v(basis.size(), 0);
        for (const auto& t : g.terms()) v[index.at((t.mono * m).exponents())] = t.coeff;
        s.insert(std::move(v));
      }
    }
    return std::tuple(basis, index, s);
  };
  if (n < 0) return 0;
  auto [src, src_index, In] = span_of(n);
  auto [dst, dst_index, In1] = span_of(n + 1);
  // Kernel of S_n -> ⊕_j S_{n+1}/I_{n+1}, f -> (x_j f).
  Matrix big(nv * dst.size(), src.size());
  for (std::size_t c = 0; c < src.size(); ++c)
    for (std::size_t j = 0; j < nv; ++j) {
      Vector v(dst.size(), 0);
      v[dst_index.at((src[c] * Monomial::variable(nv, j)).exponents())] = 1;
      In1.reduce(v);
      for (std::size_t r = 0; r < dst.size(); ++r) big(j * dst.size() + r, c) = v[r];
    }
  const std::size_t kernel = src.size() - rank(big, F);
  return kernel - In.rank();
}

struct Rng {
  std::mt19937 gen;
  explicit Rng(std::uint32_t seed) : gen(seed) {}
  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(gen); }
};

inline Monomial random_monomial(Rng& rng, std::size_t nv, int max_deg) {
  std::vector<std::uint32_t> e(nv, 0);
  int d = rng.uniform(0, max_deg);
  for (int k = 0; k < d; ++k) ++e[rng.uniform(0, static_cast<int>(nv) - 1)];
  return Monomial(e);
}

inline Monomial random_monomial_of_degree(Rng& rng, std::size_t nv, int d) {
  std::vector<std::uint32_t> e(nv, 0);
  for (int k = 0; k < d; ++k) ++e[rng.uniform(0, static_cast<int>(nv) - 1)];
  return Monomial(e);
}

inline Polynomial random_polynomial(Rng& rng, const RingPtr& ring, int terms, int max_deg) {
  std::vector<Term> ts;
  for (int k = 0; k < terms; ++k)
    ts.push_back({random_monomial(rng, ring->nvars(), max_deg),
                  static_cast<Residue>(rng.uniform(1, static_cast<int>(ring->characteristic()) - 1))});
  return Polynomial::from_terms(ring, std::move(ts));
}

inline Polynomial random_form(Rng& rng, const RingPtr& ring, int terms, int deg) {
  std::vector<Term> ts;
  for (int k = 0; k < terms; ++k)
    ts.push_back({random_monomial_of_degree(rng, ring->nvars(), deg),
                  static_cast<Residue>(rng.uniform(1, static_cast<int>(ring->characteristic()) - 1))});
  return Polynomial::from_terms(ring, std::move(ts));
}

// Homogeneous ideal with a few generators of degree 2..3: monomials or
// binomials at random.
inline Ideal random_homogeneous_ideal(Rng& rng, const RingPtr& ring) {
  std::vector<Polynomial> gens;
  const int count = rng.uniform(1, 3);
  for (int k = 0; k < count; ++k) gens.push_back(random_form(rng, ring, rng.uniform(1, 2), rng.uniform(2, 3)));
  return Ideal(ring, gens);
}

inline RingPtr small_ring(Rng& rng, std::uint32_t p = 32003) {
  static const std::vector<std::vector<std::string>> names{{"x", "y"}, {"x", "y", "z"}};
  return Ring::make(names[rng.uniform(0, 1)], p);
}

// Outcome of one property routine: cases run and failures seen, with the
// first failure described.
struct PropertyOutcome {
  std::string name;
  int cases = 0;
  int failures = 0;
  std::string first_failure;

  void fail(const std::string& what) {
    if (failures++ == 0) first_failure = what;
  }
};

inline PropertyOutcome property_d_squared(int cases, std::uint32_t seed) {
  PropertyOutcome out;
  out.name = "koszul d∘d = 0";
  Rng rng(seed);
  for (int c = 0; c < cases; ++c) {
    auto ring = small_ring(rng);
    GradedQuotientRing g(random_homogeneous_ideal(rng, ring));
    KoszulComplex k(g);
    const int n = rng.uniform(-3, 3), t = rng.uniform(1, 3);
    for (int p = 0; p + 1 < k.length(); ++p) {
      ++out.cases;
      auto dd = multiply(k.differential(p + 1, n, t), k.differential(p, n, t), g.field());
      if (!dd.is_zero()) out.fail(g.ideal().to_string() + " p=" + std::to_string(p));
    }
  }
  return out;
}

// Σ (-1)^p dim [K^p]_n = Σ (-1)^i dim [H^i]_n.
inline PropertyOutcome property_euler(int cases, std::uint32_t seed) {
  PropertyOutcome out;
  out.name = "Euler characteristic per degree";
  Rng rng(seed);
  for (int c = 0; c < cases; ++c) {
    auto ring = small_ring(rng);
    GradedQuotientRing g(random_homogeneous_ideal(rng, ring));
    KoszulComplex k(g);
    const int n = rng.uniform(-4, 3), t = rng.uniform(1, 3);
    long long chain = 0, coh = 0;
    for (int p = 0; p <= k.length(); ++p) {
      long long sign = p % 2 ? -1 : 1;
      chain += sign * static_cast<long long>(k.component_dim(p, n, t));
      coh += sign * static_cast<long long>(k.cohomology(p, n, t).dim());
    }
    ++out.cases;
    if (chain != coh) out.fail(g.ideal().to_string() + " n=" + std::to_string(n));
  }
  return out;
}

// Cohomology dimensions do not depend on the order of the sequence, nor on
// replacing it by an invertible triangular change of the linear forms.
inline PropertyOutcome property_basis_invariance(int cases, std::uint32_t seed) {
  PropertyOutcome out;
  out.name = "basis-permutation invariance";
  Rng rng(seed);
  for (int c = 0; c < cases; ++c) {
    auto ring = small_ring(rng);
    GradedQuotientRing g(random_homogeneous_ideal(rng, ring));
    auto vars = KoszulComplex::variables_of(g);
    auto perm = vars;
    std::shuffle(perm.begin(), perm.end(), rng.gen);
    auto changed = perm;
    for (std::size_t a = 0; a < changed.size(); ++a)
      for (std::size_t b = a + 1; b < changed.size(); ++b)
        changed[a] = changed[a] + perm[b].scaled(static_cast<Residue>(rng.uniform(0, 5)));
    KoszulComplex k0(g, vars), k1(g, perm), k2(g, changed);
    const int n = rng.uniform(-3, 3);
    for (int i = 0; i <= k0.length(); ++i) {
      ++out.cases;
      auto d0 = k0.cohomology(i, n, 1).dim(), d1 = k1.cohomology(i, n, 1).dim(), d2 = k2.cohomology(i, n, 1).dim();
      if (d0 != d1 || d0 != d2)
        out.fail(g.ideal().to_string() + " i=" + std::to_string(i) + " n=" + std::to_string(n));
    }
  }
  return out;
}

// Reduced Gröbner basis output: every S-pair reduces to zero, generators
// reduce to zero, elements are monic with no leading term dividing another.
inline PropertyOutcome property_buchberger(int cases, std::uint32_t seed) {
  PropertyOutcome out;
  out.name = "Buchberger S-pair criterion";
  Rng rng(seed);
  const TermOrder orders[] = {kDegRevLex, kLex};
  for (int c = 0; c < cases; ++c) {
    auto ring = small_ring(rng, c % 3 == 0 ? 7 : 32003);
    std::vector<Polynomial> gens;
    const int count = rng.uniform(1, 3);
    for (int k = 0; k < count; ++k) gens.push_back(random_polynomial(rng, ring, rng.uniform(1, 3), 3));
    const TermOrder ord = orders[c % 2];
    auto gb = buchberger(ring, gens, ord);
    ++out.cases;
    bool ok = satisfies_buchberger_criterion(gb);
    for (const auto& g : gens) ok = ok && normal_form(g.with_order(ord), gb).is_zero();
    const auto& el = gb.elements();
    for (std::size_t a = 0; a < el.size(); ++a) {
      ok = ok && el[a].leading_coeff() == 1;
      for (std::size_t b = 0; b < el.size(); ++b)
        if (a != b) ok = ok && !el[a].leading_monomial().divides(el[b].leading_monomial());
    }
    if (!ok) {
      std::string s;
      for (const auto& g : gens) s += g.to_string() + "; ";
      out.fail(s);
    }
  }
  return out;
}

// I = Q_0 ⊆ Q_1 ⊆ ... with Q_s = I : J^s, and the chain stops where it
// first repeats.
inline PropertyOutcome property_saturation_chain(int cases, std::uint32_t seed) {
  PropertyOutcome out;
  out.name = "saturation chain containments";
  Rng rng(seed);
  for (int c = 0; c < cases; ++c) {
    auto ring = small_ring(rng);
    Ideal I = random_homogeneous_ideal(rng, ring);
    Ideal J = c % 2 ? Ideal::irrelevant(ring) : Ideal(ring, {Polynomial::variable(ring, 0)});
    auto sat = saturate(I, J);
    ++out.cases;
    bool ok = sat.chain.front() == I && sat.chain.back() == sat.ideal;
    for (std::size_t s = 0; s + 1 < sat.chain.size(); ++s) ok = ok && sat.chain[s + 1].contains(sat.chain[s]);
    for (std::size_t s = 0; s + 2 < sat.chain.size(); ++s) ok = ok && !(sat.chain[s] == sat.chain[s + 1]);
    // Q_2 = I : J^2 directly.
    if (sat.chain.size() > 2) ok = ok && sat.chain[2] == ideal_quotient(I, J * J);
    if (!ok) out.fail(I.to_string() + " : " + J.to_string());
  }
  return out;
}

}  // namespace fr_test
