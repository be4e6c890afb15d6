#include "towerforge/genusfact.hpp"

#include <algorithm>

#include "towerforge/qforms.hpp"

namespace tf {

namespace {

// Underlying rational primes of a product of prime discriminants.
std::vector<i64> primes_of_part(i64 part) {
  std::vector<i64> out;
  if (part % 2 == 0) out.push_back(2);
  for (i64 p : factorize(part))
    if (p != 2) out.push_back(p);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// All cross symbols (d1/p2) = (d2/p1) = +1?
bool c4_pair(i64 d1, i64 d2) {
  for (i64 p : primes_of_part(d2))
    if (kronecker(d1, p) != 1) return false;
  for (i64 p : primes_of_part(d1))
    if (kronecker(d2, p) != 1) return false;
  return true;
}

i64 product_of(const std::vector<i64>& discs, unsigned mask) {
  i64 prod = 1;
  for (std::size_t i = 0; i < discs.size(); ++i)
    if (mask & (1u << i)) prod *= discs[i];
  return prod;
}

}  // namespace

std::vector<Factorization> c4_factorizations(i64 d) {
  auto discs = prime_disc_factorization(d);
  unsigned t = static_cast<unsigned>(discs.size());
  std::vector<Factorization> out;
  unsigned full = (1u << t) - 1;
  for (unsigned mask = 1; mask < full; ++mask) {
    if (!(mask & 1u)) continue;  // unordered: keep the side containing discs[0]
    i64 d1 = product_of(discs, mask);
    i64 d2 = product_of(discs, full & ~mask);
    if (!c4_pair(d1, d2)) continue;
    std::vector<i64> parts{d1, d2};
    std::sort(parts.begin(), parts.end());
    out.push_back({FactorKind::C4, parts});
  }
  std::sort(out.begin(), out.end(),
            [](const Factorization& a, const Factorization& b) { return a.parts < b.parts; });
  return out;
}

std::vector<Factorization> d4_factorizations(i64 d) {
  auto discs = prime_disc_factorization(d);
  unsigned t = static_cast<unsigned>(discs.size());
  std::vector<Factorization> out;
  unsigned full = (1u << t) - 1;
  // Partitions into three nonempty blocks (B1, B2, B3) with {B1, B2} the
  // marked unordered pair whose product splitting is C4.
  for (unsigned m12 = 1; m12 < full; ++m12) {
    unsigned m3 = full & ~m12;
    if (m3 == 0) continue;
    for (unsigned m1 = (m12 - 1) & m12; m1 > 0; m1 = (m1 - 1) & m12) {
      unsigned m2 = m12 & ~m1;
      if (m2 == 0) continue;
      // dedupe the unordered pair: m1 contains the lowest bit of m12
      if (!(m1 & (m12 & -m12))) continue;
      i64 d1 = product_of(discs, m1);
      i64 d2 = product_of(discs, m2);
      if (!c4_pair(d1, d2)) continue;
      i64 d3 = product_of(discs, m3);
      std::vector<i64> pair{d1, d2};
      std::sort(pair.begin(), pair.end());
      out.push_back({FactorKind::D4, {pair[0], pair[1], d3}});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const Factorization& a, const Factorization& b) { return a.parts < b.parts; });
  return out;
}

std::vector<Factorization> h8_factorizations(i64 d) {
  auto discs = prime_disc_factorization(d);
  unsigned t = static_cast<unsigned>(discs.size());
  std::vector<Factorization> out;
  unsigned full = (1u << t) - 1;
  for (unsigned m1 = 1; m1 < full; ++m1) {
    if (!(m1 & 1u)) continue;  // block containing discs[0] first
    unsigned rest = full & ~m1;
    for (unsigned m2 = (rest - 1) & rest; m2 > 0; m2 = (m2 - 1) & rest) {
      unsigned m3 = rest & ~m2;
      if (m3 == 0) continue;
      if (!(m2 & (rest & -rest))) continue;  // unordered {B2, B3}
      i64 d1 = product_of(discs, m1);
      i64 d2 = product_of(discs, m2);
      i64 d3 = product_of(discs, m3);
      bool ok = true;
      for (i64 p : primes_of_part(d3))
        if (kronecker(d / d3, p) != 1) ok = false;  // (d1 d2 / p3)
      for (i64 p : primes_of_part(d1))
        if (kronecker(d / d1, p) != 1) ok = false;  // (d2 d3 / p1)
      for (i64 p : primes_of_part(d2))
        if (kronecker(d / d2, p) != 1) ok = false;  // (d3 d1 / p2)
      if (!ok) continue;
      std::vector<i64> parts{d1, d2, d3};
      std::sort(parts.begin(), parts.end());
      out.push_back({FactorKind::H8, parts});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const Factorization& a, const Factorization& b) { return a.parts < b.parts; });
  out.erase(std::unique(out.begin(), out.end(),
                        [](const Factorization& a, const Factorization& b) {
                          return a.parts == b.parts;
                        }),
            out.end());
  return out;
}

int tower_parameter_n(PrimeTriple& t) {
  i64 dq = -4 * t.q * t.qprime;
  FormClassGroup G = FormClassGroup::enumerate(dq);
  AbelianType syl = G.two_sylow();
  if (syl.factors.size() != 2 || syl.factors[0] != 2)
    throw std::runtime_error("tower_parameter_n: Cl_2(" + std::to_string(dq) +
                             ") is not of shape (2, 2^n): " + syl.str());
  i64 big = syl.factors[1];
  int n = 0;
  while (big > 1) {
    big /= 2;
    ++n;
  }
  if (n < 1) throw std::runtime_error("tower_parameter_n: n < 1");

  // Quartic-splitting criterion: n >= 2 iff (q'/q) = -1 iff case B.
  bool crit = kronecker(t.qprime, t.q) == -1;
  bool has_c4 = !c4_factorizations(dq).empty();
  if ((n >= 2) != crit || (n >= 2) != (t.case_label == CaseLabel::B) ||
      (n >= 2) != has_c4)
    throw std::runtime_error("tower_parameter_n: criterion mismatch for n");

  t.n = n;
  return n;
}

}  // namespace tf
