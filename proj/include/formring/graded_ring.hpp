#pragma once

#include <algorithm>
#include <bit>
#include <optional>
#include <span>
#include <string>
#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <utility>
#include <vector>

#include "formring/errors.hpp"
#include "formring/groebner.hpp"
#include "formring/linalg.hpp"

namespace formring {

// Sparse coordinate vector in a degree basis.
using SparseCoords = std::vector<std::pair<std::size_t, Residue>>;

struct GradedVectorSpaceMap {
  int source_degree = 0;
  int target_degree = 0;
  Matrix matrix;  // dim [G]_target x dim [G]_source
};

// G = S/I for a homogeneous ideal I, all variables of degree 1.
// Degree bases and monomial normal forms are memoized; the caches are
// guarded so concurrent readers are safe.
class GradedQuotientRing {
 public:
  explicit GradedQuotientRing(Ideal ideal) : ideal_(std::move(ideal)), cache_(std::make_unique<Cache>()) {
    if (!ideal_.is_homogeneous()) throw DomainError("graded quotient ring requires a homogeneous ideal");
  }

  const RingPtr& ring() const { return ideal_.ring(); }
  const Ideal& ideal() const { return ideal_; }
  const GroebnerBasis& groebner() const { return ideal_.groebner(); }
  const PrimeField& field() const { return ring()->field(); }
  std::size_t nvars() const { return ring()->nvars(); }
  bool is_zero_ring() const { return ideal_.is_unit(); }

  // Standard monomials of degree n, descending in degrevlex.
  const std::vector<Monomial>& graded_basis(int n) const { return degree_data(n).basis; }

  std::size_t hilbert(int n) const { return graded_basis(n).size(); }

  std::optional<std::size_t> basis_index(const Monomial& m) const {
    const auto& d = degree_data(static_cast<int>(m.degree()));
    auto it = d.index.find(m);
    if (it == d.index.end()) return std::nullopt;
    return it->second;
  }

  // Coordinates of the normal form of a monomial in its degree basis.
  SparseCoords monomial_coordinates(const Monomial& m) const {
    {
      std::lock_guard lock(cache_->mutex);
      auto it = cache_->monomial_nf.find(m);
      if (it != cache_->monomial_nf.end()) return it->second;
    }
    SparseCoords out;
    if (!groebner().leading_ideal_contains(m)) {
      out.emplace_back(*basis_index(m), 1);
    } else {
      Polynomial nf = normal_form(Polynomial::monomial(ring(), m), groebner());
      for (const auto& t : nf.terms()) out.emplace_back(*basis_index(t.mono), t.coeff);
      std::sort(out.begin(), out.end());
    }
    std::lock_guard lock(cache_->mutex);
    cache_->monomial_nf.emplace(m, out);
    return out;
  }

  // Dense coordinates of a form of degree n (reduced modulo I).
  Vector coordinates(const Polynomial& f, int n) const {
    Vector v(hilbert(n), 0);
    const auto& F = field();
    for (const auto& t : f.terms()) {
      if (static_cast<int>(t.mono.degree()) != n) throw DomainError("coordinates: polynomial is not a form of degree " + std::to_string(n));
      for (auto [idx, c] : monomial_coordinates(t.mono)) v[idx] = F.add(v[idx], F.mul(c, t.coeff));
    }
    return v;
  }

  // Form of degree n with the given coordinates.
  Polynomial element(std::span<const Residue> coords, int n) const {
    const auto& basis = graded_basis(n);
    std::vector<Term> terms;
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (coords[i]) terms.push_back({basis[i], coords[i]});
    return Polynomial::from_terms(ring(), std::move(terms));
  }

  // The map [G]_n -> [G]_{n+e}, b -> f*b, for a form f of degree e.
  GradedVectorSpaceMap mult_matrix(const Polynomial& f, int n) const {
    if (!same_ring(f.ring(), ring())) throw AmbientMismatch();
    if (!f.is_homogeneous()) throw DomainError("mult_matrix requires a homogeneous polynomial");
    const int e = f.is_zero() ? 0 : f.degree();
    const auto& src = graded_basis(n);
    GradedVectorSpaceMap out{n, n + e, Matrix(hilbert(n + e), src.size())};
    const auto& F = field();
    for (std::size_t c = 0; c < src.size(); ++c)
      for (const auto& t : f.terms())
        for (auto [idx, v] : monomial_coordinates(src[c] * t.mono))
          out.matrix(idx, c) = F.add(out.matrix(idx, c), F.mul(v, t.coeff));
    return out;
  }

  // Krull dimension of S/I = S/in(I): the largest set of variables no
  // leading monomial of I is supported on.
  int krull_dimension() const {
    if (is_zero_ring()) throw DomainError("Krull dimension of the zero ring");
    const auto lms = groebner().leading_monomials();
    const std::size_t n = nvars();
    int best = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      int size = std::popcount(mask);
      if (size <= best) continue;
      bool independent = std::none_of(lms.begin(), lms.end(), [&](const Monomial& m) {
        for (std::size_t i = 0; i < n; ++i)
          if (m[i] && !(mask >> i & 1)) return false;
        return true;
      });
      if (independent) best = size;
    }
    return best;
  }

  // Degree of the Hilbert polynomial read off a finite-difference table over
  // [start, start + 2*nvars]: the smallest order whose differences vanish,
  // minus one. Returns -1 when the Hilbert function vanishes on the window.
  int hilbert_polynomial_degree(int start) const {
    const int len = 2 * static_cast<int>(nvars()) + 1;
    std::vector<long long> row;
    for (int k = 0; k <= len; ++k) row.push_back(static_cast<long long>(hilbert(start + k)));
    for (int order = 0; order <= len; ++order) {
      if (std::all_of(row.begin(), row.end(), [](long long v) { return v == 0; })) return order - 1;
      std::vector<long long> next;
      for (std::size_t i = 0; i + 1 < row.size(); ++i) next.push_back(row[i + 1] - row[i]);
      row = std::move(next);
    }
    throw GuardExceeded("Hilbert function did not become polynomial on the window");
  }

  // The Hilbert function agrees with its polynomial from the degree of the
  // lcm of the leading monomials on.
  int hilbert_polynomial_degree() const { return hilbert_polynomial_degree(polynomial_range_start()); }

  int polynomial_range_start() const {
    const auto lms = groebner().leading_monomials();
    if (lms.empty()) return 0;
    Monomial l = lms.front();
    for (const auto& m : lms) l = lcm(l, m);
    return static_cast<int>(l.degree());
  }

  int max_generator_degree() const {
    int d = 0;
    for (const auto& g : groebner().elements()) d = std::max(d, g.degree());
    return d;
  }

 private:
  struct DegreeData {
    std::vector<Monomial> basis;
    std::unordered_map<Monomial, std::size_t, MonomialHash> index;
  };

  const DegreeData& degree_data(int n) const {
    std::lock_guard lock(cache_->mutex);
    auto it = cache_->degrees.find(n);
    if (it != cache_->degrees.end()) return it->second;
    DegreeData d;
    if (n >= 0 && !is_zero_ring_unlocked()) {
      for (auto& m : monomials_of_degree(nvars(), n))
        if (!groebner().leading_ideal_contains(m)) d.basis.push_back(std::move(m));
      for (std::size_t i = 0; i < d.basis.size(); ++i) d.index.emplace(d.basis[i], i);
    }
    return cache_->degrees.emplace(n, std::move(d)).first->second;
  }

  bool is_zero_ring_unlocked() const { return groebner().is_unit(); }

  struct Cache {
    std::mutex mutex;
    std::map<int, DegreeData> degrees;
    std::unordered_map<Monomial, SparseCoords, MonomialHash> monomial_nf;
  };

  Ideal ideal_;
  std::unique_ptr<Cache> cache_;
};

}  // namespace formring
