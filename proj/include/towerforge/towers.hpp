#ifndef TOWERFORGE_TOWERS_HPP
#define TOWERFORGE_TOWERS_HPP

#include <array>
#include <string>
#include <vector>

#include "towerforge/genusfact.hpp"
#include "towerforge/qforms.hpp"
#include "towerforge/quadunits.hpp"
#include "towerforge/towergroup.hpp"

namespace tf {

// One of the fourteen unramified extension steps attached to a triple: the
// seven quadratic k_j (a coprime splitting d = part1 * part2) and the seven
// quartic K_j (identified by the order-2 image of their Galois group).
struct FieldNode {
  enum class Level { QuadraticExt, QuarticExt };
  int j = 0;
  Level level = Level::QuadraticExt;
  i64 part1 = 0, part2 = 0;             // quadratic splitting
  std::array<i64, 3> subfield_discs{};  // (part1, part2, d)
  std::uint8_t normal = 0;              // quadratic: hyperplane normal in G^ab
  std::uint8_t image_vec = 0;           // quartic: image generator in G^ab
  std::vector<std::string> gen_names;   // generators of Gal(k^2 / field)

  std::vector<TowerGroup::Elem> gens(const TowerGroup& G) const;
};

std::vector<FieldNode> quadratic_nodes(const PrimeTriple& t);
std::vector<FieldNode> quartic_nodes(const PrimeTriple& t);

// Class-number-formula value h_2(k_j) = h2(part1) h2(part2) h2(d) / 2 with
// wide 2-class numbers for the real subfield (unit index 1 throughout).
i64 kuroda_h2_quadratic_ext(const FieldNode& node, const PrimeTriple& t);

// Subgroups of Cl_2(k) = (2,2,2) are sorted lists of F_2^3 vectors in the
// ideal-class basis (bit0 = [z], bit1 = [p], bit2 = [q]).
using ClassVecSet = std::vector<std::uint8_t>;
std::string class_vec_name(std::uint8_t v);
std::string class_set_str(const ClassVecSet& s);
ClassVecSet span_of(std::vector<std::uint8_t> gens);

// Norm subgroup N_j Cl_2(k_j) decided by genus-character evaluation at the
// ramified generator primes.
ClassVecSet norm_class_subgroup(const FieldNode& node, const PrimeTriple& t);

// Capitulation kernel kappa_j: transfer kernel on the gamma side pulled back
// through the Artin correspondence. Requires t.n (computed if unset).
ClassVecSet capitulation_kernel(const FieldNode& node, const PrimeTriple& t);

// Unit index q(K_j/k) in {1, 2, 4} solved from the relative class number
// formula h2(K_j) = (q/4) h2(k_a) h2(k_b) h2(k_c) / h2(k)^2.
i64 kuroda_q_index_quartic(const FieldNode& node, const PrimeTriple& t);

struct CheckRecord {
  std::string table;  // "core", "lemma", "T1".."T4"
  int row = 0;        // j, or 0
  std::string col;
  std::string expected;
  std::string computed;
  bool pass = false;
};

struct TowerCertificate {
  PrimeTriple triple;
  AbelianType cl2_k;
  i64 gamma_order = 0;
  std::vector<CheckRecord> checks;

  // norm-equation witness block
  std::string witness_x, witness_y;
  i64 witness_u = 0;
  std::string eps;
  int eps_norm = 0;
  std::string q_insolvable, qprime_insolvable;  // certificates

  bool pass = false;
  std::vector<std::string> discrepancies;
};

// Runs the whole pipeline for one triple. Invalid triples throw
// InvalidTriple; everything downstream is reported as structured
// discrepancies inside the certificate instead of escaping.
TowerCertificate verify_tower(i64 p, i64 q, i64 qprime);

// All valid triples with p <= max_p, q <= max_q, q' <= max_qp, ordered by
// (p, q, q').
std::vector<PrimeTriple> enumerate_valid_triples(i64 max_p, i64 max_q, i64 max_qp);

}  // namespace tf

#endif
