#include "towerforge/qforms.hpp"

#include <algorithm>
#include <numeric>
#include <array>

#include "towerforge/quadunits.hpp"

namespace tf {

namespace {

Int gcd3(const Int& a, const Int& b, const Int& c) {
  Int g = gcd(a, b);
  return gcd(g, c);
}

void check_input_form(const QuadForm& f) {
  if (gcd3(f.a, f.b, f.c) != 1)
    throw std::domain_error("form is imprimitive: " + f.str());
  Int D = f.disc();
  if (!D.fits_slong_p() || !is_fundamental_discriminant(D.get_si()))
    throw std::domain_error("form has non-fundamental discriminant: " + f.str());
}

// b' = b (mod 2a) mapped into (-a, a], a > 0.
Int center_mod(const Int& b, const Int& a) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), b.get_mpz_t(), Int(2 * a).get_mpz_t());
  if (r > a) r -= 2 * a;
  return r;
}

QuadForm reduce_definite(QuadForm f) {
  if (f.a < 0) throw std::domain_error("negative definite form: " + f.str());
  Int D = f.disc();
  for (int guard = 0; guard < 1 << 22; ++guard) {
    f.b = center_mod(f.b, f.a);
    f.c = (f.b * f.b - D) / (4 * f.a);
    if (f.a > f.c) {
      f = {f.c, -f.b, f.a};
      continue;
    }
    break;
  }
  if (f.c < f.a) throw std::logic_error("reduce_definite: did not terminate");
  if (f.b < 0 && (f.a == f.c || f.b == -f.a)) f.b = -f.b;
  return f;
}

bool indefinite_reduced(const QuadForm& f, i64 s) {
  if (f.b <= 0 || f.b > s) return false;
  Int aa2 = 2 * abs(f.a);
  return aa2 > s - f.b && aa2 <= s + f.b;
}

// b' = b (mod 2|a|) in the reduction window.
Int window_mod(const Int& b, const Int& absa, i64 s) {
  Int w = 2 * absa;
  if (absa > s) return center_mod(b, absa);
  // r in (s - w, s]
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), Int(s - b).get_mpz_t(), w.get_mpz_t());
  return s - r;
}

QuadForm rho_indefinite(const QuadForm& f, i64 s) {
  Int a2 = f.c;
  Int b2 = window_mod(-f.b, abs(a2), s);
  Int c2 = (b2 * b2 - f.disc()) / (4 * a2);
  return {a2, b2, c2};
}

QuadForm reduce_indefinite_some(QuadForm f, i64 s) {
  Int D = f.disc();
  f.b = window_mod(f.b, abs(f.a), s);
  f.c = (f.b * f.b - D) / (4 * f.a);
  for (int guard = 0; guard < 1 << 22; ++guard) {
    if (indefinite_reduced(f, s)) return f;
    f = rho_indefinite(f, s);
  }
  throw std::logic_error("reduce_indefinite: did not terminate");
}

QuadForm cycle_canonical(const QuadForm& reduced, i64 s) {
  QuadForm best = reduced;
  QuadForm g = rho_indefinite(reduced, s);
  for (int guard = 0; guard < 1 << 22; ++guard) {
    if (g == reduced) return best;
    if (g < best) best = g;
    g = rho_indefinite(g, s);
  }
  throw std::logic_error("cycle_canonical: cycle did not close");
}

QuadForm reduce_some(const QuadForm& f) {
  Int D = f.disc();
  if (D < 0) return reduce_definite(f);
  return reduce_indefinite_some(f, isqrt(D.get_si()));
}

QuadForm reduce_canonical(const QuadForm& f) {
  Int D = f.disc();
  if (D < 0) return reduce_definite(f);
  i64 s = isqrt(D.get_si());
  return cycle_canonical(reduce_indefinite_some(f, s), s);
}

// Gauss composition, unreduced output. Both inputs primitive, same disc.
QuadForm compose_raw(const QuadForm& f, const QuadForm& g) {
  Int D = f.disc();
  Int s = (f.b + g.b) / 2;
  Int d0, u0, v0;
  mpz_gcdext(d0.get_mpz_t(), u0.get_mpz_t(), v0.get_mpz_t(), f.a.get_mpz_t(),
             g.a.get_mpz_t());
  Int d1, x1, w;
  mpz_gcdext(d1.get_mpz_t(), x1.get_mpz_t(), w.get_mpz_t(), d0.get_mpz_t(),
             s.get_mpz_t());
  Int u = x1 * u0, v = x1 * v0;

  Int A = (f.a / d1) * (g.a / d1);
  Int Bnum = u * f.a * g.b + v * g.a * f.b + w * (f.b * g.b + D) / 2;
  if (Bnum % d1 != 0) throw std::logic_error("compose: inexact division");
  Int B = Bnum / d1;
  mpz_fdiv_r(B.get_mpz_t(), B.get_mpz_t(), Int(2 * abs(A)).get_mpz_t());
  if ((B * B - D) % (4 * A) != 0) throw std::logic_error("compose: bad B");
  Int C = (B * B - D) / (4 * A);
  if (gcd3(A, B, C) != 1) throw std::logic_error("compose: imprimitive result");
  return {A, B, C};
}

}  // namespace

QuadForm reduce(const QuadForm& f) {
  check_input_form(f);
  return reduce_canonical(f);
}

QuadForm principal_form(i64 disc) {
  if (!is_fundamental_discriminant(disc))
    throw std::domain_error("principal_form: non-fundamental discriminant");
  i64 b0 = ((disc % 2) + 2) % 2;
  QuadForm f{1, b0, Int(b0 * b0 - disc) / 4};
  return reduce_canonical(f);
}

QuadForm inverse(const QuadForm& f) { return reduce({f.a, -f.b, f.c}); }

QuadForm compose(const QuadForm& f, const QuadForm& g) {
  if (g.disc() != f.disc())
    throw std::invalid_argument("compose: discriminant mismatch");
  check_input_form(f);
  check_input_form(g);
  return reduce_canonical(compose_raw(f, g));
}

FormClassGroup FormClassGroup::enumerate(i64 disc) {
  if (!is_fundamental_discriminant(disc))
    throw std::domain_error("class_group: non-fundamental discriminant " +
                            std::to_string(disc));
  FormClassGroup G;
  G.disc_ = disc;

  if (disc < 0) {
    i64 amax = isqrt((-disc) / 3);
    for (i64 a = 1; a <= amax; ++a) {
      i64 bstart = -a + 1;
      if (((bstart - disc) % 2) != 0) ++bstart;
      for (i64 b = bstart; b <= a; b += 2) {
        i64 num = b * b - disc;
        if (num % (4 * a) != 0) continue;
        i64 c = num / (4 * a);
        if (c < a) continue;
        if (b < 0 && a == c) continue;  // keep the b >= 0 representative
        if (std::gcd(std::gcd(a, std::abs(b)), c) != 1) continue;
        G.classes_.push_back({a, b, c});
      }
    }
    std::sort(G.classes_.begin(), G.classes_.end());
    for (std::size_t i = 0; i < G.classes_.size(); ++i) {
      const auto& f = G.classes_[i];
      G.index_[{f.a.get_si(), f.b.get_si(), f.c.get_si()}] = i;
    }
  } else {
    i64 s = isqrt(disc);
    std::vector<QuadForm> reduced;
    i64 b0 = (disc % 2 == 0) ? 2 : 1;
    for (i64 b = b0; b <= s; b += 2) {
      i64 N = (disc - b * b) / 4;
      i64 lo = (s - b) / 2 + 1, hi = (s + b) / 2;
      for (i64 aa = lo; aa <= hi; ++aa) {
        if (N % aa != 0) continue;
        i64 cc = N / aa;
        if (std::gcd(std::gcd(aa, b), cc) != 1) continue;
        reduced.push_back({aa, b, -cc});
        reduced.push_back({-aa, b, cc});
      }
    }
    // Partition the reduced forms into rho-cycles.
    std::sort(reduced.begin(), reduced.end());
    std::map<std::array<i64, 3>, std::size_t> seen;
    std::vector<std::vector<QuadForm>> cycles;
    for (const auto& f : reduced) {
      std::array<i64, 3> key{f.a.get_si(), f.b.get_si(), f.c.get_si()};
      if (seen.count(key)) continue;
      std::vector<QuadForm> cyc;
      QuadForm g = f;
      do {
        cyc.push_back(g);
        seen[{g.a.get_si(), g.b.get_si(), g.c.get_si()}] = cycles.size();
        g = rho_indefinite(g, s);
      } while (!(g == f));
      cycles.push_back(std::move(cyc));
    }
    std::vector<QuadForm> canon;
    for (auto& cyc : cycles) canon.push_back(*std::min_element(cyc.begin(), cyc.end()));
    std::vector<std::size_t> order(cycles.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return canon[i] < canon[j]; });
    std::vector<std::size_t> rank(cycles.size());
    for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;
    for (std::size_t i = 0; i < order.size(); ++i)
      G.classes_.push_back(canon[order[i]]);
    for (auto& [key, cyc_id] : seen) G.index_[key] = rank[cyc_id];
  }

  if (G.classes_.empty()) throw std::logic_error("class_group: empty enumeration");
  G.id_ = G.index_of(principal_form(disc));

  // Internal sanity: ambiguous classes count 2^(t-1) and a closure spot-check.
  i64 t = static_cast<i64>(prime_disc_factorization(disc).size());
  i64 expected_ambiguous = i64(1) << (t - 1);
  if (G.ambiguous_count() != expected_ambiguous)
    throw std::logic_error("class_group: ambiguous class count mismatch for " +
                           std::to_string(disc));
  std::size_t probe = std::min<std::size_t>(G.classes_.size(), 3);
  for (std::size_t i = 0; i < probe; ++i)
    for (std::size_t j = 0; j < probe; ++j) G.mul(i, j);

  return G;
}

std::size_t FormClassGroup::index_of_raw(const QuadForm& f) const {
  QuadForm r = reduce_some(f);
  auto it = index_.find({r.a.get_si(), r.b.get_si(), r.c.get_si()});
  if (it == index_.end()) throw std::logic_error("index_of: unknown reduced form");
  return it->second;
}

std::size_t FormClassGroup::index_of(const QuadForm& f) const {
  if (f.disc() != disc_)
    throw std::invalid_argument("index_of: discriminant mismatch");
  return index_of_raw(f);
}

std::size_t FormClassGroup::mul(std::size_t i, std::size_t j) const {
  return index_of_raw(compose_raw(classes_[i], classes_[j]));
}

std::size_t FormClassGroup::pow(std::size_t i, i64 e) const {
  if (e < 0) return pow(inv(i), -e);
  std::size_t acc = id_, base = i;
  while (e > 0) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return acc;
}

std::size_t FormClassGroup::inv(std::size_t i) const {
  const QuadForm& f = classes_[i];
  return index_of_raw({f.a, -f.b, f.c});
}

i64 FormClassGroup::order_of(std::size_t i) const {
  i64 e = h();
  for (i64 p : factorize(e)) {
    if (pow(i, e / p) == id_) e /= p;
  }
  // factorize lists multiplicity, so each division is attempted per power.
  return e;
}

const AbelianType& FormClassGroup::invariants() const {
  if (!invariants_) {
    invariants_ = invariant_factors(
        classes_.size(), id_,
        [this](std::size_t i, std::size_t j) { return mul(i, j); });
  }
  return *invariants_;
}

AbelianType FormClassGroup::two_sylow() const {
  if (!two_sylow_) {
    if (invariants_) {
      two_sylow_ = two_primary(*invariants_);
    } else {
      two_sylow_ = sylow_type(
          classes_.size(), id_,
          [this](std::size_t i, std::size_t j) { return mul(i, j); }, 2);
    }
  }
  return *two_sylow_;
}

i64 FormClassGroup::ambiguous_count() const {
  i64 count = 0;
  for (std::size_t i = 0; i < classes_.size(); ++i)
    if (inv(i) == i) ++count;
  return count;
}

std::size_t ideal_class_of_prime(const FormClassGroup& G, i64 ell) {
  if (ell < 2) throw std::domain_error("ideal_class_of_prime: ell < 2");
  i64 D = G.disc();
  for (i64 b = 0; b < 2 * ell; ++b) {
    __int128 num = static_cast<__int128>(b) * b - D;
    if (num % (4 * ell) != 0) continue;
    i64 c = static_cast<i64>(num / (4 * ell));
    if (std::gcd(std::gcd(ell, b), c) != 1) continue;
    return G.index_of({ell, b, c});
  }
  throw std::domain_error("ideal_class_of_prime: " + std::to_string(ell) +
                          " is inert in disc " + std::to_string(D));
}

std::optional<std::pair<Int, Int>> is_principal_rep(i64 disc, i64 N) {
  if (!is_fundamental_discriminant(disc))
    throw std::domain_error("is_principal_rep: non-fundamental discriminant");
  if (N == 0) throw std::domain_error("is_principal_rep: N = 0");

  if (disc < 0) {
    if (N < 0) return std::nullopt;
    i64 ymax = isqrt(4 * N / (-disc)) + 1;
    for (i64 y = 0; y <= ymax; ++y) {
      i64 xx = 4 * N + disc * y * y;
      if (xx < 0) continue;
      i64 r;
      if (is_square(xx, &r)) return {{Int(r), Int(y)}};
    }
    return std::nullopt;
  }

  auto [T, U] = pell_plus_four(disc % 4 == 1 ? disc : disc / 4);
  if (disc % 4 != 1) {
    // scale the unit of Q(sqrt(disc/4)) to the X^2 - disc Y^2 = 4 form
    // (T + U sqrt(m))/2 = (T + (U/2) sqrt(4m))/2; U odd forces doubling.
    if (U % 2 != 0) {
      Int T2 = (T * T + (disc / 4) * U * U) / 2;
      Int U2 = T * U;
      T = T2;
      U = U2;
    }
    U = U / 2;
  }
  i64 s = isqrt(disc);
  Int four_n = abs(Int(4) * N);
  Int sq;
  mpz_sqrt(sq.get_mpz_t(), four_n.get_mpz_t());
  Int ymax = ((sq + 1) * (T + U * (s + 1) + 2)) / (4 * s) + 2;
  if (ymax > 50'000'000)
    throw std::runtime_error("is_principal_rep: search bound infeasible");
  i64 cap = ymax.get_si();
  for (i64 y = 0; y <= cap; ++y) {
    Int xx = Int(4) * N + Int(disc) * y * y;
    if (xx < 0) continue;
    if (!mpz_perfect_square_p(xx.get_mpz_t())) continue;
    Int x;
    mpz_sqrt(x.get_mpz_t(), xx.get_mpz_t());
    return {{x, Int(y)}};
  }
  return std::nullopt;
}

i64 wide_h2(i64 disc) {
  FormClassGroup G = FormClassGroup::enumerate(disc);
  i64 h2 = 1;
  i64 h = G.h();
  while (h % 2 == 0) {
    h2 *= 2;
    h /= 2;
  }
  if (disc < 0) return h2;
  i64 m = (disc % 4 == 1) ? disc : disc / 4;
  if (unit_norm(m) == 1) {
    if (h2 % 2 != 0)
      throw std::logic_error("wide_h2: narrow 2-part odd with norm +1 unit");
    return h2 / 2;
  }
  return h2;
}

}  // namespace tf
