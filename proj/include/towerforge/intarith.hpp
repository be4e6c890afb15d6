#ifndef TOWERFORGE_INTARITH_HPP
#define TOWERFORGE_INTARITH_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tf {

using i64 = std::int64_t;
using u64 = std::uint64_t;

// floor(sqrt(n)) for n >= 0, exact.
i64 isqrt(i64 n);
bool is_square(i64 n, i64* root = nullptr);

// Deterministic Miller-Rabin (fixed base set, valid for the whole 64-bit
// range). Inputs below 2 are rejected.
bool is_prime(i64 x);

// Extended Kronecker symbol (a/b), total except for a = b = 0.
// (a/2) is 0, +1, -1 for a even, a = ±1 (8), a = ±3 (8);
// (a/-1) is +1 for a >= 0 and -1 otherwise.
int kronecker(i64 a, i64 b);

// Prime factors of |n| with multiplicity, ascending. n must be nonzero.
std::vector<i64> factorize(i64 n);
bool is_squarefree(i64 n);

// Fundamental discriminants: 1 is excluded; d = 1 (mod 4) squarefree, or
// d = 4m with m = 2, 3 (mod 4) squarefree.
bool is_fundamental_discriminant(i64 d);

// -4, ±8, or (-1)^((l-1)/2) l for an odd prime l: the atoms of the
// fundamental-discriminant factorization.
bool is_prime_discriminant(i64 d);

// The unique decomposition of a fundamental discriminant into prime
// discriminants (-4, ±8, (-1)^((l-1)/2) l), ascending by value.
// Throws std::domain_error on non-fundamental input.
std::vector<i64> prime_disc_factorization(i64 d);

enum class TripleDefect { NotPrime, NotDistinct, WrongResidue, SymbolCondition };
std::string to_string(TripleDefect defect);

struct InvalidTriple : std::runtime_error {
  TripleDefect defect;
  InvalidTriple(TripleDefect def, const std::string& msg)
      : std::runtime_error(msg), defect(def) {}
};

enum class CaseLabel { A, B };
inline char case_char(CaseLabel c) { return c == CaseLabel::A ? 'A' : 'B'; }

// A validated (p, q, q') with p = 5, q = 3, q' = 7 (mod 8) prime and
// (q/p) = (q'/p) = -1.  Case A iff (q/q') = -1.  The tower parameter n
// (defined by the 2-class group (2, 2^n) of disc -4qq') starts unset and is
// filled by genusfact::tower_parameter_n.
struct PrimeTriple {
  i64 p = 0;
  i64 q = 0;
  i64 qprime = 0;
  i64 m = 0;  // p*q*q'
  i64 d = 0;  // -4m, the field discriminant
  CaseLabel case_label = CaseLabel::A;
  int n = 0;  // 0 = unset
};

// Throws InvalidTriple with the matching defect code, or std::domain_error
// when p*q*q' would not fit the supported 64-bit discriminant range.
PrimeTriple validate_triple(i64 p, i64 q, i64 qprime);

// Non-throwing probe; nullopt means the triple is valid.
std::optional<TripleDefect> triple_defect(i64 p, i64 q, i64 qprime);

}  // namespace tf

#endif
