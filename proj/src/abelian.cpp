#include "towerforge/abelian.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace tf {

std::string AbelianType::str() const {
  if (factors.empty()) return "(1)";
  std::string s = "(";
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(factors[i]);
  }
  return s + ")";
}

AbelianType make_type(std::vector<i64> factors) {
  std::erase(factors, 1);
  std::sort(factors.begin(), factors.end());
  for (std::size_t i = 0; i + 1 < factors.size(); ++i) {
    if (factors[i + 1] % factors[i] != 0)
      throw std::invalid_argument("make_type: not an invariant-factor chain");
  }
  return AbelianType{std::move(factors)};
}

AbelianType two_primary(const AbelianType& t) {
  std::vector<i64> out;
  for (i64 f : t.factors) {
    i64 two = 1;
    while (f % 2 == 0) {
      two *= 2;
      f /= 2;
    }
    if (two > 1) out.push_back(two);
  }
  return AbelianType{std::move(out)};
}

namespace {

std::size_t pow_idx(const MulFn& mul, std::size_t id, std::size_t g, i64 e) {
  std::size_t acc = id, base = g;
  while (e > 0) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return acc;
}

// Invariant factors of an abelian p-group given as explicit global ids, by
// peeling a cyclic subgroup of maximal order (a direct summand in an abelian
// p-group). Appends p-power factors in descending order.
void peel_p_group(const std::vector<std::size_t>& elems, std::size_t id, i64 p,
                  const MulFn& mul, std::vector<i64>& out) {
  if (elems.size() <= 1) return;

  i64 best_ord = 1;
  std::size_t best = id;
  for (std::size_t g : elems) {
    i64 ord = 1;
    std::size_t x = g;
    while (x != id) {
      x = pow_idx(mul, id, x, p);
      ord *= p;
    }
    if (ord > best_ord) {
      best_ord = ord;
      best = g;
    }
  }
  out.push_back(best_ord);

  // Quotient by <best>; coset represented by its minimal member.
  std::vector<std::size_t> cyc;
  {
    std::size_t x = id;
    do {
      cyc.push_back(x);
      x = mul(x, best);
    } while (x != id);
  }
  std::map<std::size_t, std::size_t> coset_of;
  std::set<std::size_t> reps;
  for (std::size_t g : elems) {
    if (coset_of.count(g)) continue;
    std::size_t rep = g;
    std::vector<std::size_t> orbit;
    orbit.reserve(cyc.size());
    for (std::size_t c : cyc) {
      std::size_t y = mul(g, c);
      orbit.push_back(y);
      rep = std::min(rep, y);
    }
    for (std::size_t y : orbit) coset_of[y] = rep;
    reps.insert(rep);
  }
  if (reps.size() * cyc.size() != elems.size())
    throw std::logic_error("peel_p_group: quotient size mismatch");
  if (reps.size() == 1) return;

  MulFn qmul = [mul, coset_of = std::move(coset_of)](std::size_t a, std::size_t b) {
    return coset_of.at(mul(a, b));
  };
  std::size_t qid = qmul(id, id);
  peel_p_group(std::vector<std::size_t>(reps.begin(), reps.end()), qid, p, qmul,
               out);
}

std::vector<i64> sylow_factors_desc(std::size_t order, std::size_t id,
                                    const MulFn& mul, i64 p, i64 pv) {
  i64 cof = static_cast<i64>(order) / pv;
  std::set<std::size_t> sy;
  for (std::size_t g = 0; g < order; ++g) sy.insert(pow_idx(mul, id, g, cof));
  std::vector<i64> fac;
  peel_p_group(std::vector<std::size_t>(sy.begin(), sy.end()), id, p, mul, fac);
  return fac;
}

}  // namespace

AbelianType sylow_type(std::size_t order, std::size_t id, const MulFn& mul, i64 p) {
  i64 pv = 1;
  i64 o = static_cast<i64>(order);
  while (o % p == 0) {
    pv *= p;
    o /= p;
  }
  if (pv == 1) return AbelianType{};
  auto fac = sylow_factors_desc(order, id, mul, p, pv);
  std::reverse(fac.begin(), fac.end());
  return make_type(std::move(fac));
}

AbelianType invariant_factors(std::size_t order, std::size_t id, const MulFn& mul) {
  if (order == 0) throw std::invalid_argument("invariant_factors: empty group");
  if (order == 1) return AbelianType{};

  std::map<i64, i64> mult;  // p -> p^v
  for (i64 p : factorize(static_cast<i64>(order))) {
    auto [it, inserted] = mult.try_emplace(p, p);
    if (!inserted) it->second *= p;
  }

  std::vector<std::vector<i64>> sylow_lists;
  for (auto [p, pv] : mult) {
    auto fac = sylow_factors_desc(order, id, mul, p, pv);
    if (!fac.empty()) sylow_lists.push_back(std::move(fac));
  }

  std::size_t rank = 0;
  for (auto& v : sylow_lists) rank = std::max(rank, v.size());
  std::vector<i64> inv(rank, 1);
  for (auto& v : sylow_lists)
    for (std::size_t i = 0; i < v.size(); ++i) inv[i] *= v[i];
  std::reverse(inv.begin(), inv.end());
  return make_type(std::move(inv));
}

}  // namespace tf
