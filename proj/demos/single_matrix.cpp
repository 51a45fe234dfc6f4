// Builds one matrix M(n) for the quartic case and prints it mod p together
// with its rank.

#include <cstdlib>
#include <iostream>

#include "scorza/certifier.hpp"

int main(int argc, char** argv) {
  using namespace scorza;
  const int n = argc > 1 ? std::atoi(argv[1]) : 12;
  CoeffEngine engine(GConfig::standard(CaseTag::D1));
  FpMatrix M = build_matrix(engine, n);
  std::cout << "M(" << n << ") over F_" << M.p << ", " << M.rows << "x" << M.cols << ":\n";
  for (int r = 0; r < M.rows; ++r) {
    for (int c = 0; c < M.cols; ++c) std::cout << M.at(r, c) << (c + 1 < M.cols ? ' ' : '\n');
  }
  std::cout << "rank = " << rank_mod_p(M) << "\n";
  return 0;
}
