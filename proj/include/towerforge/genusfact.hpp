#ifndef TOWERFORGE_GENUSFACT_HPP
#define TOWERFORGE_GENUSFACT_HPP

#include <vector>

#include "towerforge/intarith.hpp"

namespace tf {

enum class FactorKind { C4, D4, H8 };

// A splitting of a fundamental discriminant into coprime discriminant parts
// satisfying the defining Kronecker-symbol conditions of its kind. For D4
// the first two parts form the embedded C4 pair.
struct Factorization {
  FactorKind kind;
  std::vector<i64> parts;
};

std::vector<Factorization> c4_factorizations(i64 d);
std::vector<Factorization> d4_factorizations(i64 d);
std::vector<Factorization> h8_factorizations(i64 d);

// n with Cl_2(-4qq') of shape (2, 2^n); cross-checked against the quartic
// splitting criterion. Sets t.n. Throws std::runtime_error when the 2-Sylow
// subgroup does not have the expected two-generator shape.
int tower_parameter_n(PrimeTriple& t);

}  // namespace tf

#endif
