#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "formring/errors.hpp"

namespace formring {

// Exponent vector over a fixed variable list; total degree is cached.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exp_(nvars, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exps) : exp_(std::move(exps)) { recount(); }
  Monomial(std::initializer_list<std::uint32_t> exps) : exp_(exps) { recount(); }

  static Monomial variable(std::size_t nvars, std::size_t index, std::uint32_t power = 1) {
    Monomial m(nvars);
    m.exp_[index] = power;
    m.deg_ = power;
    return m;
  }

  std::size_t size() const { return exp_.size(); }
  std::uint32_t operator[](std::size_t i) const { return exp_[i]; }
  std::uint32_t degree() const { return deg_; }
  bool is_one() const { return deg_ == 0; }
  const std::vector<std::uint32_t>& exponents() const { return exp_; }

  void set(std::size_t i, std::uint32_t e) {
    deg_ = deg_ - exp_[i] + e;
    exp_[i] = e;
  }

  bool divides(const Monomial& other) const {
    if (deg_ > other.deg_) return false;
    for (std::size_t i = 0; i < exp_.size(); ++i)
      if (exp_[i] > other.exp_[i]) return false;
    return true;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r.exp_[i] = a.exp_[i] + b.exp_[i];
    r.deg_ = a.deg_ + b.deg_;
    return r;
  }

  // Exact quotient; requires b | a.
  friend Monomial operator/(const Monomial& a, const Monomial& b) {
    Monomial r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r.exp_[i] = a.exp_[i] - b.exp_[i];
    r.deg_ = a.deg_ - b.deg_;
    return r;
  }

  friend Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r.exp_[i] = std::max(a.exp_[i], b.exp_[i]);
    r.recount();
    return r;
  }

  friend bool coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a.exp_[i] && b.exp_[i]) return false;
    return true;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exp_ == b.exp_; }

  std::size_t hash() const {
    std::size_t h = 0xcbf29ce484222325ull;
    for (auto e : exp_) h = (h ^ e) * 0x100000001b3ull;
    return h;
  }

 private:
  void recount() {
    deg_ = 0;
    for (auto e : exp_) deg_ += e;
  }

  std::vector<std::uint32_t> exp_;
  std::uint32_t deg_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

enum class OrderKind {
  degrevlex,
  lex,
  // Degree first, then a larger power of the last variable wins, then
  // degrevlex on the remaining variables. On homogenized polynomials the
  // leading term comes from the lowest-degree form of the dehomogenization.
  degrevlex_homogenizer_last,
  // Block order: exponent of the last variable first (larger wins), then
  // degrevlex on the rest. Eliminates the last variable.
  eliminate_last,
};

// Monomial order. compare() is a pure function of the two exponent vectors.
struct TermOrder {
  OrderKind kind = OrderKind::degrevlex;

  static int revlex_tail(const Monomial& a, const Monomial& b, std::size_t end) {
    for (std::size_t i = end; i-- > 0;) {
      if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    }
    return 0;
  }

  // Returns 1 when a > b, -1 when a < b, 0 when equal.
  int compare(const Monomial& a, const Monomial& b) const {
    const std::size_t n = a.size();
    switch (kind) {
      case OrderKind::lex:
        for (std::size_t i = 0; i < n; ++i)
          if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
        return 0;
      case OrderKind::degrevlex:
        if (a.degree() != b.degree()) return a.degree() > b.degree() ? 1 : -1;
        return revlex_tail(a, b, n);
      case OrderKind::degrevlex_homogenizer_last:
        if (a.degree() != b.degree()) return a.degree() > b.degree() ? 1 : -1;
        if (n == 0) return 0;
        if (a[n - 1] != b[n - 1]) return a[n - 1] > b[n - 1] ? 1 : -1;
        return revlex_tail(a, b, n - 1);
      case OrderKind::eliminate_last: {
        if (n == 0) return 0;
        if (a[n - 1] != b[n - 1]) return a[n - 1] > b[n - 1] ? 1 : -1;
        std::uint32_t da = a.degree() - a[n - 1], db = b.degree() - b[n - 1];
        if (da != db) return da > db ? 1 : -1;
        return revlex_tail(a, b, n - 1);
      }
    }
    return 0;
  }

  bool greater(const Monomial& a, const Monomial& b) const { return compare(a, b) > 0; }

  bool degree_compatible() const {
    return kind == OrderKind::degrevlex || kind == OrderKind::degrevlex_homogenizer_last;
  }

  std::string_view name() const {
    switch (kind) {
      case OrderKind::degrevlex: return "degrevlex";
      case OrderKind::lex: return "lex";
      case OrderKind::degrevlex_homogenizer_last: return "degrevlex-with-homogenizer-last";
      case OrderKind::eliminate_last: return "eliminate-last";
    }
    return "?";
  }

  friend bool operator==(const TermOrder&, const TermOrder&) = default;
};

inline constexpr TermOrder kDegRevLex{OrderKind::degrevlex};
inline constexpr TermOrder kLex{OrderKind::lex};

// All monomials of total degree n in nvars variables, descending in degrevlex.
inline std::vector<Monomial> monomials_of_degree(std::size_t nvars, int n) {
  std::vector<Monomial> out;
  if (n < 0) return out;
  if (nvars == 0) {
    if (n == 0) out.emplace_back(0);
    return out;
  }
  std::vector<std::uint32_t> e(nvars, 0);
  std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t i, std::uint32_t left) {
    if (i + 1 == nvars) {
      e[i] = left;
      out.emplace_back(e);
      return;
    }
    for (std::uint32_t k = left + 1; k-- > 0;) {
      e[i] = k;
      rec(i + 1, left - k);
    }
  };
  rec(0, static_cast<std::uint32_t>(n));
  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) { return kDegRevLex.greater(a, b); });
  return out;
}

}  // namespace formring
