#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "formring/errors.hpp"
#include "formring/graded_ring.hpp"
#include "formring/linalg.hpp"

namespace formring {

// [H^i(x^t; G)]_n: dimension plus cocycle representatives, in coordinates of
// the degree-n graded basis of K^i.
struct CohomologyPiece {
  int index = 0;
  int degree = 0;
  int power = 1;
  std::size_t cocycle_dim = 0;
  std::size_t coboundary_rank = 0;
  QuotientSpace quotient;

  std::size_t dim() const { return quotient.dim(); }
  const std::vector<Vector>& representatives() const { return quotient.representatives(); }
};

// Koszul cochain complex K(x_1^t..x_m^t; G) for a sequence of linear forms.
//
// K^p is G(tp)^C(m,p) with basis e_J, J a sorted p-subset of {0..m-1}, so
// [K^p]_n = ⊕_J [G]_{n+tp} and the differential preserves n:
//   d(g e_J) = Σ_{j∉J} (-1)^{#{i∈J : i<j}} x_j^t g e_{J∪j}.
// The map K(x^t) -> K(x^{t+1}) multiplies the e_J component by Π_{j∈J} x_j;
// it commutes with d under the same sign rule, and its colimit is the Čech
// complex.
//
// Holds a reference to the ring, which must outlive the complex.
class KoszulComplex {
 public:
  explicit KoszulComplex(const GradedQuotientRing& ring) : KoszulComplex(ring, variables_of(ring)) {}

  KoszulComplex(const GradedQuotientRing& ring, std::vector<Polynomial> sequence)
      : ring_(&ring), seq_(std::move(sequence)), cache_(std::make_unique<Cache>()) {
    for (const auto& f : seq_) {
      if (!same_ring(f.ring(), ring.ring())) throw AmbientMismatch();
      if (f.is_zero() || !f.is_homogeneous() || f.degree() != 1)
        throw DomainError("Koszul sequence elements must be nonzero linear forms");
    }
    const int m = length();
    subsets_.resize(m + 1);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
      std::vector<std::size_t> s;
      for (int j = 0; j < m; ++j)
        if (mask >> j & 1) s.push_back(j);
      subsets_[s.size()].push_back(std::move(s));
    }
    for (auto& level : subsets_) {
      std::sort(level.begin(), level.end());
      for (std::size_t k = 0; k < level.size(); ++k) subset_index_.emplace(level[k], k);
    }
  }

  static std::vector<Polynomial> variables_of(const GradedQuotientRing& ring) {
    std::vector<Polynomial> v;
    for (std::size_t i = 0; i < ring.nvars(); ++i) v.push_back(Polynomial::variable(ring.ring(), i));
    return v;
  }

  const GradedQuotientRing& ring() const { return *ring_; }
  const std::vector<Polynomial>& sequence() const { return seq_; }
  int length() const { return static_cast<int>(seq_.size()); }

  const std::vector<std::vector<std::size_t>>& subsets(int p) const {
    static const std::vector<std::vector<std::size_t>> none;
    return p < 0 || p > length() ? none : subsets_[p];
  }

  // Degree of G carrying the e_J blocks of [K^p_t]_n.
  static int block_degree(int p, int n, int t) { return n + t * p; }

  std::size_t component_dim(int p, int n, int t) const {
    return subsets(p).size() * ring_->hilbert(block_degree(p, n, t));
  }

  // [K^p]_n -> [K^{p+1}]_n.
  Matrix differential(int p, int n, int t) const {
    Matrix d(component_dim(p + 1, n, t), component_dim(p, n, t));
    if (p < 0 || p >= length()) return d;
    const auto& F = ring_->field();
    const auto& src = ring_->graded_basis(block_degree(p, n, t));
    const std::size_t src_block = src.size();
    const std::size_t dst_block = ring_->hilbert(block_degree(p + 1, n, t));
    const auto& subs = subsets(p);
    for (std::size_t a = 0; a < subs.size(); ++a) {
      const auto& J = subs[a];
      for (int j = 0; j < length(); ++j) {
        if (std::binary_search(J.begin(), J.end(), static_cast<std::size_t>(j))) continue;
        std::size_t below = 0;
        for (auto i : J) below += i < static_cast<std::size_t>(j);
        const Residue sign = below % 2 ? F.neg(1) : 1;
        auto K = J;
        K.insert(std::upper_bound(K.begin(), K.end(), static_cast<std::size_t>(j)), j);
        const std::size_t b = subset_index_.at(K);
        const Polynomial& xt = power(j, t);
        for (std::size_t c = 0; c < src_block; ++c)
          accumulate(d, b * dst_block, a * src_block + c, xt, src[c], sign);
      }
    }
    return d;
  }

  // [K^p(x^t)]_n -> [K^p(x^{t+1})]_n.
  Matrix transition(int p, int n, int t) const {
    Matrix m(component_dim(p, n, t + 1), component_dim(p, n, t));
    if (p < 0 || p > length()) return m;
    const auto& src = ring_->graded_basis(block_degree(p, n, t));
    const std::size_t dst_block = ring_->hilbert(block_degree(p, n, t + 1));
    const auto& subs = subsets(p);
    for (std::size_t a = 0; a < subs.size(); ++a) {
      const Polynomial& xj = product(subs[a]);
      for (std::size_t c = 0; c < src.size(); ++c) accumulate(m, a * dst_block, a * src.size() + c, xj, src[c], 1);
    }
    return m;
  }

  // Componentwise multiplication by a form f of degree e:
  // [K^p(x^t)]_n -> [K^p(x^t)]_{n+e}. Commutes with d.
  Matrix multiplication(int p, int n, int t, const Polynomial& f) const {
    if (!f.is_homogeneous() || f.is_zero()) throw DomainError("multiplication requires a nonzero form");
    const int e = f.degree();
    Matrix m(component_dim(p, n + e, t), component_dim(p, n, t));
    if (p < 0 || p > length()) return m;
    const auto& src = ring_->graded_basis(block_degree(p, n, t));
    const std::size_t dst_block = ring_->hilbert(block_degree(p, n + e, t));
    for (std::size_t a = 0; a < subsets(p).size(); ++a)
      for (std::size_t c = 0; c < src.size(); ++c) accumulate(m, a * dst_block, a * src.size() + c, f, src[c], 1);
    return m;
  }

  // [H^i(x^t; G)]_n. Memoized.
  const CohomologyPiece& cohomology(int i, int n, int t) const {
    if (i < 0 || i > length()) throw DomainError("Koszul cohomology index " + std::to_string(i) + " out of range");
    if (t < 1) throw DomainError("Koszul power must be at least 1");
    auto key = std::tuple(i, n, t);
    {
      std::lock_guard lock(cache_->mutex);
      auto it = cache_->pieces.find(key);
      if (it != cache_->pieces.end()) return *it->second;
    }
    const auto& F = ring_->field();
    Matrix out = differential(i, n, t);
    Matrix in = differential(i - 1, n, t);
    if (in.cols() && out.rows() && !multiply(out, in, F).is_zero())
      throw std::logic_error("Koszul differential does not square to zero");
    std::vector<Vector> cocycles = kernel_basis(out, F);
    std::vector<Vector> boundaries;
    boundaries.reserve(in.cols());
    for (std::size_t c = 0; c < in.cols(); ++c) boundaries.push_back(in.column(c));
    auto piece = std::make_unique<CohomologyPiece>(CohomologyPiece{
        i, n, t, cocycles.size(), 0, QuotientSpace(component_dim(i, n, t), F, boundaries, cocycles)});
    piece->coboundary_rank = piece->quotient.relation_rank();
    std::lock_guard lock(cache_->mutex);
    return *cache_->pieces.emplace(key, std::move(piece)).first->second;
  }

  // Induced map [H^i(x^t)]_n -> [H^i(x^{t+1})]_n in the representative bases.
  Matrix transition_map(int i, int n, int t) const {
    const auto& src = cohomology(i, n, t);
    const auto& dst = cohomology(i, n, t + 1);
    Matrix phi = transition(i, n, t);
    Matrix m(dst.dim(), src.dim());
    for (std::size_t c = 0; c < src.dim(); ++c) {
      auto coords = dst.quotient.coordinates(apply(phi, src.representatives()[c], ring_->field()));
      if (!coords) throw std::logic_error("transition map does not send cocycles to cocycles");
      m.set_column(c, *coords);
    }
    return m;
  }

  // Human-readable cochain: Σ_J g_J*e{..}.
  std::string describe(int p, int n, int t, const Vector& v) const {
    const int deg = block_degree(p, n, t);
    const std::size_t block = ring_->hilbert(deg);
    std::string out;
    const auto& subs = subsets(p);
    for (std::size_t a = 0; a < subs.size(); ++a) {
      std::span<const Residue> part(v.data() + a * block, block);
      if (is_zero_vector(part)) continue;
      std::string g = ring_->element(part, deg).to_string();
      std::string label;
      for (auto j : subs[a]) label += (label.empty() ? "" : ",") + seq_[j].to_string();
      if (!out.empty()) out += " + ";
      if (p == 0) {
        out += g;
      } else {
        out += "(" + g + ")*e{" + label + "}";
      }
    }
    return out.empty() ? "0" : out;
  }

 private:
  // Adds sign * NF(f * mono) into column `col`, rows offset by `row_base`.
  void accumulate(Matrix& m, std::size_t row_base, std::size_t col, const Polynomial& f, const Monomial& mono,
                  Residue sign) const {
    const auto& F = ring_->field();
    for (const auto& term : f.terms()) {
      Residue c = F.mul(sign, term.coeff);
      for (auto [idx, v] : ring_->monomial_coordinates(term.mono * mono))
        m(row_base + idx, col) = F.add(m(row_base + idx, col), F.mul(c, v));
    }
  }

  const Polynomial& power(int j, int t) const {
    std::lock_guard lock(cache_->mutex);
    auto key = std::pair(j, t);
    auto it = cache_->powers.find(key);
    if (it == cache_->powers.end()) it = cache_->powers.emplace(key, seq_[j].pow(t)).first;
    return it->second;
  }

  const Polynomial& product(const std::vector<std::size_t>& J) const {
    std::lock_guard lock(cache_->mutex);
    auto it = cache_->products.find(J);
    if (it == cache_->products.end()) {
      Polynomial p = Polynomial::constant(ring_->ring(), 1);
      for (auto j : J) p = p * seq_[j];
      it = cache_->products.emplace(J, std::move(p)).first;
    }
    return it->second;
  }

  struct Cache {
    std::mutex mutex;
    std::map<std::tuple<int, int, int>, std::unique_ptr<CohomologyPiece>> pieces;
    std::map<std::pair<int, int>, Polynomial> powers;
    std::map<std::vector<std::size_t>, Polynomial> products;
  };

  const GradedQuotientRing* ring_;
  std::vector<Polynomial> seq_;
  std::vector<std::vector<std::vector<std::size_t>>> subsets_;
  std::map<std::vector<std::size_t>, std::size_t> subset_index_;
  std::unique_ptr<Cache> cache_;
};

// [f^i_G]_n: composite of transition maps from power 1 to `stable_power`.
inline Matrix f_map(const KoszulComplex& k, int i, int n, int stable_power) {
  Matrix m = Matrix::identity(k.cohomology(i, n, 1).dim());
  for (int t = 1; t < stable_power; ++t) m = multiply(k.transition_map(i, n, t), m, k.ring().field());
  return m;
}

}  // namespace formring
