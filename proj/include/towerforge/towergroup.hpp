#ifndef TOWERFORGE_TOWERGROUP_HPP
#define TOWERFORGE_TOWERGROUP_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "towerforge/abelian.hpp"
#include "towerforge/intarith.hpp"

namespace tf {

// The finite 2-group G(n) = <r, s, t> of order 2^(n+4) with
//   r^4 = s^(2^(n+1)) = t^4 = 1,  r^2 = s^(2^n) t^2,
//   [s,t] = 1,  [r,s] = s^2,  [r,t] = s^(2^n) t^2.
// Elements carry the unique normal form r^e s^b t^c. Conjugation by r acts
// on the abelian subgroup <s, t> by s -> s^-1, t -> s^(2^n) t^-1.
class TowerGroup {
 public:
  struct Elem {
    std::uint8_t r = 0;   // mod 2
    std::uint32_t s = 0;  // mod 2^(n+1)
    std::uint8_t t = 0;   // mod 4
    auto operator<=>(const Elem&) const = default;
    std::string str() const;
  };

  explicit TowerGroup(int n);

  int n() const { return n_; }
  i64 order() const { return i64(8) * smod_; }

  Elem identity() const { return {}; }
  Elem r() const { return {1, 0, 0}; }
  Elem s() const { return {0, 1, 0}; }
  Elem t() const { return {0, 0, 1}; }

  Elem mul(Elem x, Elem y) const;
  Elem inv(Elem x) const;
  Elem pow(Elem x, i64 e) const;
  Elem conj(Elem x, Elem g) const;  // g^-1 x g
  Elem comm(Elem x, Elem y) const;  // x^-1 y^-1 x y
  i64 elem_order(Elem x) const;

  std::vector<Elem> elements() const;
  std::size_t index(Elem e) const;  // dense 0..order-1

  // Image in G^ab identified with F_2^3 over (r, s, t): bit0 = r, bit1 = s,
  // bit2 = t.
  std::uint8_t ab_image(Elem e) const {
    return static_cast<std::uint8_t>((e.r & 1) | ((e.s & 1) << 1) |
                                     ((e.t & 1) << 2));
  }

 private:
  friend struct ConsistencyProbe;
  TowerGroup(int n, std::uint32_t conj_t_s_exp);  // variant construction

  int n_ = 1;
  std::uint32_t smod_ = 4;        // 2^(n+1)
  std::uint32_t half_ = 2;        // 2^n
  std::uint32_t conj_t_s_exp_ = 2;  // s-exponent in r^-1 t r = s^k t^-1
};

struct Subgroup {
  const TowerGroup* G = nullptr;
  std::vector<TowerGroup::Elem> elems;  // sorted
  std::vector<TowerGroup::Elem> gens;

  i64 order() const { return static_cast<i64>(elems.size()); }
  bool contains(TowerGroup::Elem e) const;
};

Subgroup closure(const TowerGroup& G, std::vector<TowerGroup::Elem> gens);
Subgroup whole_group(const TowerGroup& G);
Subgroup derived_subgroup(const TowerGroup& G, const Subgroup& H);
Subgroup derived_subgroup(const TowerGroup& G);

AbelianType abelianization(const TowerGroup& G, const Subgroup& H);
AbelianType abelianization(const TowerGroup& G);

i64 exponent(const TowerGroup& G);

// The seven index-2 subgroups, as preimages of the hyperplanes
// {v : dot(v, normal) = 0} of G^ab; normal runs 1..7 in bit order.
Subgroup hyperplane_subgroup(const TowerGroup& G, std::uint8_t normal);
std::vector<Subgroup> index2_subgroups(const TowerGroup& G);

// Transfer map G^ab -> H^ab for [G : H] = 2 (throws otherwise); returns the
// kernel as a sorted list of F_2^3 vectors. Computed with two different
// transversals and cross-checked.
std::vector<std::uint8_t> transfer_kernel(const TowerGroup& G, const Subgroup& H);

// True iff the transfer G^ab -> H^ab is the zero map (any finite index).
bool transfer_is_zero(const TowerGroup& G, const Subgroup& H);

// Case-dependent change of basis between Cl_2(k) in the ideal-class basis
// ([z], [p], [q]) and G^ab in the (r, s, t) basis: [z] -> r, [p] -> s, and
// [q] -> r+s+t (case A) or r+t (case B).
struct ArtinMap {
  std::array<std::uint8_t, 3> cols;  // images of [z], [p], [q]
  std::uint8_t apply(std::uint8_t ideal_vec) const;
  std::uint8_t preimage(std::uint8_t ab_vec) const;
};
ArtinMap artin_correspondence(CaseLabel c);

// Consistency evaluation of the presentation: both commutator exponent
// variants (2^n and 2^(n-1)) in both orientations. A variant is realizable
// iff conjugation-by-r extends to an automorphism phi of <s, t> with
// phi^2 = id fixing r^2; when realizable the group is built and all
// relations, the order and the abelianization are verified.
struct VariantReport {
  std::string name;         // "s^(2^n) t^2" or "s^(2^(n-1)) t^2"
  std::string orientation;  // "[r,t]" or "[t,r]"
  bool phi_endomorphism = false;
  bool phi_bijective = false;
  bool phi_involution = false;
  bool phi_fixes_rsq = false;
  bool consistent = false;  // all of the above
  bool order_ok = false;
  bool relations_ok = false;
  bool ab_ok = false;
};
struct ConsistencyReport {
  int n = 0;
  std::vector<VariantReport> variants;
  bool adopted_ok = false;  // the 2^n variant passes everything
};
ConsistencyReport presentation_consistency(int n);

}  // namespace tf

#endif
