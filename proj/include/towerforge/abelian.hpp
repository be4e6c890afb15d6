#ifndef TOWERFORGE_ABELIAN_HPP
#define TOWERFORGE_ABELIAN_HPP

#include <functional>
#include <string>
#include <vector>

#include "towerforge/intarith.hpp"

namespace tf {

// Canonical invariant-factor list of a finite abelian group: nondecreasing,
// each factor divides the next, trivial group = empty list.
struct AbelianType {
  std::vector<i64> factors;

  bool operator==(const AbelianType&) const = default;
  i64 order() const {
    i64 o = 1;
    for (i64 f : factors) o *= f;
    return o;
  }
  // "(2,4)"; trivial group prints "(1)".
  std::string str() const;
};

AbelianType make_type(std::vector<i64> factors);  // sorts and canonicalizes

// The 2-primary part: (2,6) -> (2,2); trivial when the order is odd.
AbelianType two_primary(const AbelianType& t);

// Invariant factors of an explicit finite abelian group given by an
// index-based multiplication oracle. Elements are 0..order-1, id given.
// Intended for the small groups arising here (order a few thousand).
using MulFn = std::function<std::size_t(std::size_t, std::size_t)>;
AbelianType invariant_factors(std::size_t order, std::size_t id, const MulFn& mul);

// Invariant factors of the p-Sylow subgroup only (cheaper than the full
// decomposition when just one primary part is wanted).
AbelianType sylow_type(std::size_t order, std::size_t id, const MulFn& mul, i64 p);

}  // namespace tf

#endif
