// Expands the small-degree covariants as polynomials in the coefficients
// A_i and prints the base-locus structure report: every monomial must obey
// the torus weight equations, and at most one of its four first-slot
// exponents may reach the threshold.

#include <iostream>

#include "scorza/covariants.hpp"

int main() {
  using namespace scorza;
  struct Item {
    CovariantKind kind;
    int d;
  };
  for (Item it : {Item{CovariantKind::S, 4}, Item{CovariantKind::S, 7},
                  Item{CovariantKind::T, 5}, Item{CovariantKind::T, 8}}) {
    TripleStructureReport rep = check_triple_structure(it.kind, it.d);
    std::cout << (it.kind == CovariantKind::S ? "S_" : "T_") << it.d << ": "
              << rep.monomial_count << " monomials, threshold " << rep.threshold
              << ", weight violations " << rep.weight_violations << ", structure violations "
              << rep.structure_violations << (rep.passed() ? "  [ok]" : "  [FAILED]") << "\n";
  }
  return 0;
}
