#include "towerforge/towergroup.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace tf {

std::string TowerGroup::Elem::str() const {
  if (!r && !s && !t) return "1";
  std::string out;
  auto append = [&out](const std::string& piece) {
    if (!out.empty()) out += "*";
    out += piece;
  };
  if (r) append("r");
  if (s == 1) append("s");
  else if (s) append("s^" + std::to_string(s));
  if (t == 1) append("t");
  else if (t) append("t^" + std::to_string(t));
  return out;
}

TowerGroup::TowerGroup(int n) : TowerGroup(n, 0) {
  conj_t_s_exp_ = half_;  // adopted relation [r,t] = s^(2^n) t^2
}

TowerGroup::TowerGroup(int n, std::uint32_t conj_t_s_exp) {
  if (n < 1 || n > 24) throw std::domain_error("TowerGroup: need 1 <= n <= 24");
  n_ = n;
  smod_ = 1u << (n + 1);
  half_ = 1u << n;
  conj_t_s_exp_ = conj_t_s_exp % smod_;
}

TowerGroup::Elem TowerGroup::mul(Elem x, Elem y) const {
  if (x.r > 1 || x.s >= smod_ || x.t > 3 || y.r > 1 || y.s >= smod_ || y.t > 3)
    throw std::invalid_argument("TowerGroup::mul: element not in this group");
  std::uint32_t b, c;
  std::uint8_t e;
  if (y.r == 0) {
    e = x.r;
    b = x.s + y.s;
    c = x.t + y.t;
  } else {
    // s^b t^c * r = r * s^(-b + c k) t^(-c), k = conj_t_s_exp_
    e = x.r ^ 1;
    b = y.s + (smod_ - x.s) + (x.t * conj_t_s_exp_) % smod_;
    c = y.t + (4 - x.t);
    if (x.r) {
      // r^2 = s^(2^n) t^2 is central
      b += half_;
      c += 2;
    }
  }
  return {e, b % smod_, static_cast<std::uint8_t>(c % 4)};
}

TowerGroup::Elem TowerGroup::inv(Elem x) const {
  if (x.r == 0)
    return {0, (smod_ - x.s) % smod_, static_cast<std::uint8_t>((4 - x.t) % 4)};
  // (r s^b t^c)^-1 = r * s^(b - c k + 2^n) t^(c + 2)
  std::uint32_t b =
      (x.s + smod_ - (x.t * conj_t_s_exp_) % smod_ + half_) % smod_;
  return {1, b, static_cast<std::uint8_t>((x.t + 2) % 4)};
}

TowerGroup::Elem TowerGroup::pow(Elem x, i64 e) const {
  if (e < 0) return pow(inv(x), -e);
  Elem acc = identity(), base = x;
  while (e) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return acc;
}

TowerGroup::Elem TowerGroup::conj(Elem x, Elem g) const {
  return mul(mul(inv(g), x), g);
}

TowerGroup::Elem TowerGroup::comm(Elem x, Elem y) const {
  return mul(mul(inv(x), inv(y)), mul(x, y));
}

i64 TowerGroup::elem_order(Elem x) const {
  Elem y = x;
  i64 o = 1;
  while (!(y == identity())) {
    y = mul(y, x);
    ++o;
    if (o > order()) throw std::logic_error("elem_order: runaway");
  }
  return o;
}

std::vector<TowerGroup::Elem> TowerGroup::elements() const {
  std::vector<Elem> out;
  out.reserve(static_cast<std::size_t>(order()));
  for (std::uint8_t e = 0; e < 2; ++e)
    for (std::uint32_t b = 0; b < smod_; ++b)
      for (std::uint8_t c = 0; c < 4; ++c) out.push_back({e, b, c});
  return out;
}

std::size_t TowerGroup::index(Elem e) const {
  return (static_cast<std::size_t>(e.r) * smod_ + e.s) * 4 + e.t;
}

bool Subgroup::contains(TowerGroup::Elem e) const {
  return std::binary_search(elems.begin(), elems.end(), e);
}

Subgroup closure(const TowerGroup& G, std::vector<TowerGroup::Elem> gens) {
  std::vector<char> seen(static_cast<std::size_t>(G.order()), 0);
  std::vector<TowerGroup::Elem> frontier{G.identity()};
  seen[G.index(G.identity())] = 1;
  std::vector<TowerGroup::Elem> all{G.identity()};
  while (!frontier.empty()) {
    std::vector<TowerGroup::Elem> next;
    for (const auto& x : frontier) {
      for (const auto& g : gens) {
        TowerGroup::Elem y = G.mul(x, g);
        if (!seen[G.index(y)]) {
          seen[G.index(y)] = 1;
          next.push_back(y);
          all.push_back(y);
        }
      }
    }
    frontier = std::move(next);
  }
  std::sort(all.begin(), all.end());
  return {&G, std::move(all), std::move(gens)};
}

Subgroup whole_group(const TowerGroup& G) {
  Subgroup H{&G, G.elements(), {G.r(), G.s(), G.t()}};
  std::sort(H.elems.begin(), H.elems.end());
  return H;
}

Subgroup derived_subgroup(const TowerGroup& G, const Subgroup& H) {
  std::set<TowerGroup::Elem> comms;
  for (const auto& x : H.elems)
    for (const auto& y : H.elems) comms.insert(G.comm(x, y));
  std::vector<TowerGroup::Elem> gens(comms.begin(), comms.end());
  return closure(G, gens);
}

Subgroup derived_subgroup(const TowerGroup& G) {
  return derived_subgroup(G, whole_group(G));
}

namespace {

// Quotient of H by a normal N contained in H, as an explicit abelian-style
// index group (used for H/H' which is abelian).
struct Quotient {
  std::vector<TowerGroup::Elem> reps;            // canonical (minimal) coset reps
  std::map<TowerGroup::Elem, std::size_t> coset; // element -> rep index

  std::size_t size() const { return reps.size(); }
};

Quotient quotient_by(const TowerGroup& G, const Subgroup& H, const Subgroup& N) {
  Quotient Q;
  std::map<TowerGroup::Elem, TowerGroup::Elem> rep_of;
  for (const auto& h : H.elems) {
    if (rep_of.count(h)) continue;
    TowerGroup::Elem best = h;
    std::vector<TowerGroup::Elem> orbit;
    orbit.reserve(N.elems.size());
    for (const auto& nn : N.elems) {
      TowerGroup::Elem y = G.mul(h, nn);
      orbit.push_back(y);
      best = std::min(best, y);
    }
    for (const auto& y : orbit) rep_of[y] = best;
  }
  std::set<TowerGroup::Elem> reps;
  for (auto& [e, rp] : rep_of) reps.insert(rp);
  Q.reps.assign(reps.begin(), reps.end());
  std::map<TowerGroup::Elem, std::size_t> idx;
  for (std::size_t i = 0; i < Q.reps.size(); ++i) idx[Q.reps[i]] = i;
  for (auto& [e, rp] : rep_of) Q.coset[e] = idx[rp];
  return Q;
}

}  // namespace

AbelianType abelianization(const TowerGroup& G, const Subgroup& H) {
  if (H.G != &G)
    throw std::invalid_argument("abelianization: subgroup of a different group");
  Subgroup Hd = derived_subgroup(G, H);
  Quotient Q = quotient_by(G, H, Hd);
  auto mul = [&](std::size_t i, std::size_t j) {
    return Q.coset.at(G.mul(Q.reps[i], Q.reps[j]));
  };
  std::size_t id = Q.coset.at(Hd.elems.front());  // identity is minimal in H'
  return invariant_factors(Q.size(), id, mul);
}

AbelianType abelianization(const TowerGroup& G) {
  return abelianization(G, whole_group(G));
}

i64 exponent(const TowerGroup& G) {
  i64 best = 1;
  for (const auto& e : G.elements()) best = std::max(best, G.elem_order(e));
  return best;
}

Subgroup hyperplane_subgroup(const TowerGroup& G, std::uint8_t normal) {
  if (normal == 0 || normal > 7)
    throw std::domain_error("hyperplane_subgroup: normal must be 1..7");
  std::vector<TowerGroup::Elem> elems;
  for (const auto& e : G.elements()) {
    std::uint8_t v = G.ab_image(e) & normal;
    if (__builtin_parity(v) == 0) elems.push_back(e);
  }
  std::sort(elems.begin(), elems.end());
  return {&G, std::move(elems), {}};
}

std::vector<Subgroup> index2_subgroups(const TowerGroup& G) {
  std::vector<Subgroup> out;
  for (std::uint8_t w = 1; w <= 7; ++w) out.push_back(hyperplane_subgroup(G, w));
  return out;
}

namespace {

std::vector<std::uint8_t> transfer_kernel_with(const TowerGroup& G,
                                               const Subgroup& H,
                                               const Subgroup& Hd,
                                               TowerGroup::Elem rr) {
  std::vector<std::uint8_t> kernel;
  for (std::uint8_t v = 0; v < 8; ++v) {
    TowerGroup::Elem g{static_cast<std::uint8_t>(v & 1),
                       static_cast<std::uint32_t>((v >> 1) & 1),
                       static_cast<std::uint8_t>((v >> 2) & 1)};
    TowerGroup::Elem w;
    if (H.contains(g)) {
      w = G.mul(g, G.conj(g, rr));
    } else {
      w = G.mul(g, g);
    }
    if (Hd.contains(w)) kernel.push_back(v);
  }
  return kernel;
}

}  // namespace

std::vector<std::uint8_t> transfer_kernel(const TowerGroup& G, const Subgroup& H) {
  if (H.G != &G)
    throw std::invalid_argument("transfer_kernel: subgroup of a different group");
  if (H.order() * 2 != G.order())
    throw std::domain_error("transfer_kernel: subgroup index is not 2");
  Subgroup Hd = derived_subgroup(G, H);
  TowerGroup::Elem r1{}, r2{};
  bool have1 = false, have2 = false;
  for (const auto& e : G.elements()) {
    if (H.contains(e)) continue;
    if (!have1) {
      r1 = e;
      have1 = true;
    } else {
      r2 = e;
      have2 = true;
      break;
    }
  }
  if (!have1 || !have2) throw std::logic_error("transfer_kernel: no transversal");
  auto k1 = transfer_kernel_with(G, H, Hd, r1);
  auto k2 = transfer_kernel_with(G, H, Hd, r2);
  if (k1 != k2)
    throw std::logic_error("transfer_kernel: transversal dependence detected");
  return k1;
}

bool transfer_is_zero(const TowerGroup& G, const Subgroup& H) {
  Subgroup Hd = derived_subgroup(G, H);
  // Transversal: minimal representative per left coset gH.
  std::map<TowerGroup::Elem, std::size_t> coset_of;
  std::vector<TowerGroup::Elem> reps;
  for (const auto& g : G.elements()) {
    if (coset_of.count(g)) continue;
    TowerGroup::Elem best = g;
    std::vector<TowerGroup::Elem> orbit;
    for (const auto& h : H.elems) orbit.push_back(G.mul(g, h));
    for (const auto& y : orbit) best = std::min(best, y);
    std::size_t id = reps.size();
    reps.push_back(best);
    for (const auto& y : orbit) coset_of[y] = id;
  }
  for (std::uint8_t v = 0; v < 8; ++v) {
    TowerGroup::Elem g{static_cast<std::uint8_t>(v & 1),
                       static_cast<std::uint32_t>((v >> 1) & 1),
                       static_cast<std::uint8_t>((v >> 2) & 1)};
    TowerGroup::Elem w = G.identity();
    for (const auto& ti : reps) {
      TowerGroup::Elem gti = G.mul(g, ti);
      TowerGroup::Elem tj = reps[coset_of.at(gti)];
      w = G.mul(w, G.mul(G.inv(tj), gti));
    }
    if (!Hd.contains(w)) return false;
  }
  return true;
}

std::uint8_t ArtinMap::apply(std::uint8_t ideal_vec) const {
  std::uint8_t out = 0;
  for (int i = 0; i < 3; ++i)
    if (ideal_vec & (1 << i)) out ^= cols[static_cast<std::size_t>(i)];
  return out;
}

std::uint8_t ArtinMap::preimage(std::uint8_t ab_vec) const {
  for (std::uint8_t v = 0; v < 8; ++v)
    if (apply(v) == ab_vec) return v;
  throw std::logic_error("ArtinMap: not invertible");
}

ArtinMap artin_correspondence(CaseLabel c) {
  // bits: 1 = r, 2 = s, 4 = t
  if (c == CaseLabel::A) return {{1, 2, 1 | 2 | 4}};
  return {{1, 2, 1 | 4}};
}

namespace {

struct PhiProbe {
  // phi(s^b t^c) = s^(-b + c k) t^(-c) on Z_(2^(n+1)) x Z_4.
  std::uint32_t smod, k;
  std::pair<std::uint32_t, std::uint8_t> apply(std::uint32_t b, std::uint8_t c) const {
    std::uint32_t nb = (smod - b % smod + (c * k) % smod) % smod;
    std::uint8_t nc = static_cast<std::uint8_t>((4 - c) % 4);
    return {nb, nc};
  }
};

}  // namespace

struct ConsistencyProbe {
  static VariantReport evaluate(int n, std::uint32_t kappa0, bool orient_rt) {
    VariantReport rep;
    std::uint32_t smod = 1u << (n + 1);
    std::uint32_t half = 1u << n;
    rep.name = (kappa0 == half) ? "s^(2^n) t^2" : "s^(2^(n-1)) t^2";
    rep.orientation = orient_rt ? "[r,t]" : "[t,r]";
    // [r,t] = s^k0 t^2 gives phi(t) = s^(-k0) t^-1; [t,r] = s^k0 t^2 gives
    // phi(t) = s^(+k0) t^-1.
    std::uint32_t k = orient_rt ? (smod - kappa0 % smod) % smod : kappa0 % smod;
    PhiProbe phi{smod, k};

    // endomorphism well-defined: phi(s)^smod = 1 automatic; phi(t)^4 = 1
    // needs 4k = 0 mod smod.
    rep.phi_endomorphism = (4 * k) % smod == 0;
    if (rep.phi_endomorphism) {
      std::set<std::pair<std::uint32_t, std::uint8_t>> image;
      bool involution = true;
      for (std::uint32_t b = 0; b < smod; ++b)
        for (std::uint8_t c = 0; c < 4; ++c) {
          auto [nb, nc] = phi.apply(b, c);
          image.insert({nb, nc});
          auto [bb, cc] = phi.apply(nb, nc);
          if (bb != b || cc != c) involution = false;
        }
      rep.phi_bijective = image.size() == smod * 4;
      rep.phi_involution = involution;
      auto [fb, fc] = phi.apply(half, 2);  // r^2 = s^(2^n) t^2
      rep.phi_fixes_rsq = (fb == half && fc == 2);
    }
    rep.consistent = rep.phi_endomorphism && rep.phi_bijective &&
                     rep.phi_involution && rep.phi_fixes_rsq;
    if (!rep.consistent) return rep;

    TowerGroup G(n, k);
    rep.order_ok = G.order() == (i64(1) << (n + 4));
    auto R = G.r(), S = G.s(), T = G.t();
    auto id = G.identity();
    bool rel = true;
    rel &= G.pow(R, 4) == id;
    rel &= G.pow(S, i64(smod)) == id;
    rel &= G.pow(T, 4) == id;
    rel &= G.mul(R, R) == G.mul(G.pow(S, half), G.mul(T, T));
    rel &= G.comm(S, T) == id;
    rel &= G.comm(R, S) == G.mul(S, S);
    TowerGroup::Elem value = G.mul(G.pow(S, kappa0), G.mul(T, T));
    rel &= orient_rt ? (G.comm(R, T) == value) : (G.comm(T, R) == value);
    // noted relations
    rel &= G.pow(G.mul(R, S), 2) == G.mul(R, R);
    rel &= G.pow(G.mul(G.mul(R, S), T), 2) == G.mul(T, T);
    rel &= G.pow(G.mul(R, T), 2) == G.mul(T, T);
    rel &= G.comm(R, G.mul(T, T)) == id;
    rep.relations_ok = rel;
    rep.ab_ok = abelianization(G) == make_type({2, 2, 2});
    return rep;
  }
};

ConsistencyReport presentation_consistency(int n) {
  if (n < 1) throw std::domain_error("presentation_consistency: n < 1");
  ConsistencyReport out;
  out.n = n;
  std::uint32_t half = 1u << n;
  std::uint32_t halfm1 = 1u << (n - 1);
  for (std::uint32_t kappa0 : {half, halfm1})
    for (bool orient : {true, false})
      out.variants.push_back(ConsistencyProbe::evaluate(n, kappa0, orient));
  out.adopted_ok = out.variants[0].consistent && out.variants[0].order_ok &&
                   out.variants[0].relations_ok && out.variants[0].ab_ok;
  return out;
}

}  // namespace tf
