// Tangent cone, local cohomology table and descent verdict for one ring,
// through the library API.

#include <iostream>

#include "formring/checks.hpp"

using namespace formring;

int main() {
  auto S = Ring::make({"x", "y", "z"});
  auto x = Polynomial::variable(S, 0), y = Polynomial::variable(S, 1), z = Polynomial::variable(S, 2);
  const unsigned r = 3;
  Ideal I(S, {x * x, x * y, x * z - y.pow(r), y.pow(r + 1), x * z * z});

  Ideal in = initial_forms_ideal(I);
  std::cout << "in_*(I) = " << in.canonical().to_string() << "\n";

  GradedQuotientRing G(in);
  LocalCohomology lc(G, {-5, 7, 12, 2});
  auto table = lc.table(1);
  for (const auto& [key, e] : table.entries())
    if (e.dim) std::cout << "[H^" << key.first << "]_" << key.second << " = " << e.dim << "\n";

  auto rep = corollary41_verdict(I);
  std::cout << "G Buchsbaum: " << to_string(rep.g_buchsbaum.truth) << "\n"
            << "admissible k: " << rep.thm12.admissible.to_string() << "\n"
            << "A Buchsbaum: " << to_string(rep.a_buchsbaum) << "\n";
}
