#ifndef TOWERFORGE_QUADUNITS_HPP
#define TOWERFORGE_QUADUNITS_HPP

#include <gmpxx.h>

#include <optional>
#include <utility>

#include "towerforge/intarith.hpp"

namespace tf {

using Int = mpz_class;

// Fundamental unit of the maximal order of Q(sqrt(m)), m squarefree > 1:
// (x + y*sqrt(m))/2 when half, else x + y*sqrt(m); minimal y > 0.
struct FundamentalUnit {
  i64 m = 0;
  Int x, y;
  int norm = 0;  // ±1
  bool half = false;

  // The same unit in the X^2 - m Y^2 = ±4 normalization.
  std::pair<Int, Int> pell4() const {
    return half ? std::pair<Int, Int>{x, y} : std::pair<Int, Int>{2 * x, 2 * y};
  }
  std::string str() const;
};

// Exact, via the continued fraction of sqrt(m). Throws std::domain_error for
// non-squarefree or m < 2.
FundamentalUnit fundamental_unit(i64 m);
int unit_norm(i64 m);

// Minimal (T, U), T, U > 0, with T^2 - m U^2 = 4 (norm +1 Pell solution).
std::pair<Int, Int> pell_plus_four(i64 m);

// a x^2 - b y^2 = N over nonnegative x, y.
struct NormFormResult {
  enum class Status {
    Solved,
    NoneCongruence,      // no solution mod `modulus`
    NoneUnitNorm,        // |N| = 4 route: fundamental unit has the wrong norm
    NoneSquareCriterion, // |N| = 4 route: unit square-root criterion fails
    NoneExhausted,       // exhaustive search below the Pell bound found nothing
  };
  Status status;
  std::optional<std::pair<Int, Int>> solution;
  i64 modulus = 0;  // for NoneCongruence
  Int bound;        // for NoneExhausted: the y bound that was exhausted

  bool solved() const { return status == Status::Solved; }
  std::string certificate() const;  // short machine-readable tag
};

// a, b >= 1 coprime, N != 0. Congruence obstructions are scanned first; the
// |N| = 4 case with squarefree ab is decided exactly through the fundamental
// unit; everything else falls back to an exhaustive search below the
// Pell-derived bound (throws std::runtime_error when that bound is
// infeasibly large).
NormFormResult solve_norm_form(i64 a, i64 b, i64 N);

// Witness for the family identity p x^2 - q q' y^2 = -4 together with the
// odd exponent u such that ((x sqrt(p) + y sqrt(qq'))/2)^2 = eps_m^u.
struct UnitSquareWitness {
  i64 p = 0, q = 0, qprime = 0;
  Int x, y;
  i64 u = 0;
  FundamentalUnit eps;  // eps_m, m = p q q'
};

// Throws std::runtime_error if the witness cannot be produced (which would
// contradict the arithmetic the family is built on).
UnitSquareWitness eta_witness(const PrimeTriple& t);

}  // namespace tf

#endif
