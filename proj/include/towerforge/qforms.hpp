#ifndef TOWERFORGE_QFORMS_HPP
#define TOWERFORGE_QFORMS_HPP

#include <gmpxx.h>

#include <array>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "towerforge/abelian.hpp"
#include "towerforge/intarith.hpp"

namespace tf {

using Int = mpz_class;

// Primitive integral binary quadratic form a x^2 + b xy + c y^2 of
// fundamental discriminant b^2 - 4ac (a > 0 when the discriminant is
// negative).
struct QuadForm {
  Int a, b, c;

  Int disc() const { return b * b - 4 * a * c; }
  bool operator==(const QuadForm&) const = default;
  bool operator<(const QuadForm& o) const {
    if (int r = cmp(a, o.a)) return r < 0;
    if (int r = cmp(b, o.b)) return r < 0;
    return cmp(c, o.c) < 0;
  }
  std::string str() const {
    return "(" + a.get_str() + "," + b.get_str() + "," + c.get_str() + ")";
  }
};

// For disc < 0 the unique Gauss-reduced equivalent form; for disc > 0 the
// lexicographically least member of the reduction cycle. Rejects imprimitive
// forms and non-fundamental discriminants.
QuadForm reduce(const QuadForm& f);

// Gauss/Dirichlet composition; the result is reduced/canonical. Rejects
// mismatched discriminants.
QuadForm compose(const QuadForm& f, const QuadForm& g);

QuadForm principal_form(i64 disc);
QuadForm inverse(const QuadForm& f);

// The form class group of a fundamental discriminant: the narrow group when
// disc > 0. Complete enumeration of reduced forms; composition closes on the
// canonical representatives.
class FormClassGroup {
 public:
  static FormClassGroup enumerate(i64 disc);

  i64 disc() const { return disc_; }
  i64 h() const { return static_cast<i64>(classes_.size()); }
  const std::vector<QuadForm>& classes() const { return classes_; }

  std::size_t identity() const { return id_; }
  std::size_t index_of(const QuadForm& f) const;  // canonicalizes first
  std::size_t mul(std::size_t i, std::size_t j) const;
  std::size_t pow(std::size_t i, i64 e) const;
  std::size_t inv(std::size_t i) const;
  i64 order_of(std::size_t i) const;

  const AbelianType& invariants() const;  // computed on first use
  AbelianType two_sylow() const;
  i64 ambiguous_count() const;

 private:
  std::size_t index_of_raw(const QuadForm& f) const;  // no disc re-check

  i64 disc_ = 0;
  std::vector<QuadForm> classes_;          // sorted canonical representatives
  std::size_t id_ = 0;
  std::map<std::array<i64, 3>, std::size_t> index_;  // all reduced forms -> class
  mutable std::optional<AbelianType> invariants_;
  mutable std::optional<AbelianType> two_sylow_;
};

// Class of a form with leading coefficient ell (ell ramified or split in
// Q(sqrt(disc))). Throws std::domain_error for inert ell.
std::size_t ideal_class_of_prime(const FormClassGroup& G, i64 ell);

// x^2 - disc y^2 = 4N over x, y >= 0; for disc > 0 the search is exhaustive
// below the Pell-derived bound, so "nullopt" certifies insolvability.
std::optional<std::pair<Int, Int>> is_principal_rep(i64 disc, i64 N);

// 2-part of the class number in the usual (wide) sense; for disc > 0 this
// divides the narrow 2-part by 2 exactly when the fundamental unit has
// norm +1.
i64 wide_h2(i64 disc);

}  // namespace tf

#endif
