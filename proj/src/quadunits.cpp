#include "towerforge/quadunits.hpp"

#include <algorithm>
#include <numeric>
#include <map>
#include <mutex>
#include <set>
#include <vector>

namespace tf {

namespace {

// Exact comparison of (x1 + y1*sqrt(m))/c1 < (x2 + y2*sqrt(m))/c2 for
// nonnegative coefficients.
bool unit_less(const Int& x1, const Int& y1, int c1, const Int& x2,
               const Int& y2, int c2, i64 m) {
  Int L = x1 * c2 - x2 * c1;        // compare L < R*sqrt(m)
  Int R = y2 * c1 - y1 * c2;
  if (R >= 0) {
    if (L < 0) return !(L == 0 && R == 0);
    return L * L < R * R * m;
  }
  return L < 0 && L * L > R * R * m;
}

struct UnitHit {
  Int x, y;
  int value;  // ±1 or ±4
};

// Continued-fraction state for sqrt(m): alpha_k = (M_k + sqrt(m)) / d_k.
struct CfState {
  i64 m, s, M, d, a;
  void init(i64 m_) {
    m = m_;
    s = isqrt(m);
    M = 0;
    d = 1;
    a = s;
  }
  void step() {
    M = d * a - M;
    d = (m - M * M) / d;
    a = (s + M) / d;
  }
};

FundamentalUnit unit_from_hit(i64 m, const UnitHit& h) {
  FundamentalUnit u;
  u.m = m;
  u.norm = h.value > 0 ? 1 : -1;
  if (h.value == 1 || h.value == -1) {
    u.x = h.x;
    u.y = h.y;
    u.half = false;
  } else {
    u.x = h.x;
    u.y = h.y;
    u.half = true;
  }
  return u;
}

const UnitHit* min_hit(const std::vector<UnitHit>& hits, i64 m) {
  const UnitHit* best = nullptr;
  int cb = 1;
  for (const auto& h : hits) {
    int c = (h.value == 4 || h.value == -4) ? 2 : 1;
    if (!best || unit_less(h.x, h.y, c, best->x, best->y, cb, m)) {
      best = &h;
      cb = c;
    }
  }
  return best;
}

// m in [2, 16]: the convergent criterion needs 4 < sqrt(m), so search the
// candidates directly.
FundamentalUnit small_fundamental_unit(i64 m) {
  std::vector<UnitHit> hits;
  for (i64 y = 1; y <= 128; ++y) {
    i64 r;
    if (m % 4 == 1 && is_square(m * y * y - 4, &r) && (r % 2) == (y % 2))
      hits.push_back({Int(r), Int(y), -4});
    if (m % 4 == 1 && is_square(m * y * y + 4, &r) && (r % 2) == (y % 2))
      hits.push_back({Int(r), Int(y), 4});
    if (is_square(m * y * y - 1, &r)) hits.push_back({Int(r), Int(y), -1});
    if (is_square(m * y * y + 1, &r)) hits.push_back({Int(r), Int(y), 1});
  }
  if (hits.empty()) throw std::logic_error("small_fundamental_unit: no unit found");
  return unit_from_hit(m, *min_hit(hits, m));
}

std::mutex g_unit_cache_mutex;
std::map<i64, FundamentalUnit> g_unit_cache;

}  // namespace

std::string FundamentalUnit::str() const {
  std::string core = x.get_str() + "+" + y.get_str() + "*sqrt(" +
                     std::to_string(m) + ")";
  return half ? "(" + core + ")/2" : core;
}

FundamentalUnit fundamental_unit(i64 m) {
  if (m < 2) throw std::domain_error("fundamental_unit: m must be > 1");
  if (m > 1'000'000'000'000)
    throw std::domain_error("fundamental_unit: m beyond the supported bound");
  if (!is_squarefree(m)) throw std::domain_error("fundamental_unit: m not squarefree");
  {
    std::lock_guard<std::mutex> lock(g_unit_cache_mutex);
    auto it = g_unit_cache.find(m);
    if (it != g_unit_cache.end()) return it->second;
  }

  FundamentalUnit result;
  if (m < 17) {
    result = small_fundamental_unit(m);
  } else {
    // Every unit of the maximal order corresponds to a coprime solution of
    // x^2 - m y^2 = v with |v| in {1, 4} < sqrt(m), hence to a convergent of
    // sqrt(m). Scan two full periods and take the minimal hit. The value of
    // the k-th convergent is (-1)^(k+1) d_{k+1}, so no big multiplication is
    // needed to test it.
    CfState cf;
    cf.init(m);
    Int h2 = 0, h1 = 1;  // h_{k-2}, h_{k-1}
    Int k2 = 1, k1 = 0;
    std::vector<UnitHit> hits;
    int period_marks = 0;
    for (long k = 0; k < 40'000'000; ++k) {
      if (k > 0) cf.step();
      Int h = cf.a * h1 + h2;
      Int q = cf.a * k1 + k2;
      i64 dn = (m - (cf.d * cf.a - cf.M) * (cf.d * cf.a - cf.M)) / cf.d;
      i64 v = (k % 2 == 0) ? -dn : dn;
      if (v == 1 || v == -1) {
        hits.push_back({h, q, static_cast<int>(v)});
      } else if ((v == 4 || v == -4) && m % 4 == 1 && mpz_odd_p(h.get_mpz_t()) &&
                 mpz_odd_p(q.get_mpz_t())) {
        hits.push_back({h, q, static_cast<int>(v)});
      }
      h2 = h1;
      h1 = h;
      k2 = k1;
      k1 = q;
      if (dn == 1) {
        ++period_marks;
        if (period_marks == 2) break;
      }
    }
    if (hits.empty()) throw std::logic_error("fundamental_unit: no unit in window");
    result = unit_from_hit(m, *min_hit(hits, m));
  }

  std::lock_guard<std::mutex> lock(g_unit_cache_mutex);
  if (g_unit_cache.size() > 20000) g_unit_cache.clear();
  g_unit_cache.emplace(m, result);
  return result;
}

int unit_norm(i64 m) { return fundamental_unit(m).norm; }

std::pair<Int, Int> pell_plus_four(i64 m) {
  FundamentalUnit u = fundamental_unit(m);
  auto [a, b] = u.pell4();
  if (u.norm == 1) return {a, b};
  // Square the unit: ((a + b sqrt m)/2)^2 in the same normalization.
  return {(a * a + m * b * b) / 2, a * b};
}

namespace {

// Minimal (t, u) with t^2 - D u^2 = 1; D > 1 non-square (not necessarily
// squarefree).
std::pair<Int, Int> pell_one(i64 D) {
  CfState cf;
  cf.init(D);
  Int h2 = 0, h1 = 1, k2 = 1, k1 = 0;
  for (long k = 0; k < 80'000'000; ++k) {
    if (k > 0) cf.step();
    Int h = cf.a * h1 + h2;
    Int q = cf.a * k1 + k2;
    i64 dn = (D - (cf.d * cf.a - cf.M) * (cf.d * cf.a - cf.M)) / cf.d;
    if (dn == 1 && k % 2 == 1) return {h, q};
    h2 = h1;
    h1 = h;
    k2 = k1;
    k1 = q;
  }
  throw std::logic_error("pell_one: no solution in window");
}

bool congruence_solvable(i64 a, i64 b, i64 N, i64 M) {
  std::vector<char> lhs(M, 0);
  for (i64 x = 0; x < M; ++x) lhs[static_cast<std::size_t>(((a % M) * ((x * x) % M)) % M)] = 1;
  for (i64 y = 0; y < M; ++y) {
    i64 rhs = ((N % M) + ((b % M) * ((y * y) % M))) % M;
    rhs = ((rhs % M) + M) % M;
    if (lhs[static_cast<std::size_t>(rhs)]) return true;
  }
  return false;
}

std::vector<i64> obstruction_moduli(i64 a, i64 b) {
  std::set<i64> mods;
  for (i64 p : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47})
    mods.insert(p);
  for (i64 pp : {8, 9, 16, 25, 27, 32, 49}) mods.insert(pp);
  // prime divisors of 4ab (the natural obstruction moduli)
  for (i64 v : {a, b})
    for (i64 p : factorize(v == 0 ? 1 : v))
      if (p <= 100000) mods.insert(p);
  return {mods.begin(), mods.end()};
}

}  // namespace

std::string NormFormResult::certificate() const {
  switch (status) {
    case Status::Solved: return "solved";
    case Status::NoneCongruence:
      return "congruence_obstruction mod " + std::to_string(modulus);
    case Status::NoneUnitNorm: return "unit_norm_obstruction";
    case Status::NoneSquareCriterion: return "unit_square_criterion";
    case Status::NoneExhausted:
      return "exhausted_bound " + bound.get_str();
  }
  return "unknown";
}

NormFormResult solve_norm_form(i64 a, i64 b, i64 N) {
  if (a < 1 || b < 1 || N == 0)
    throw std::domain_error("solve_norm_form: need a, b >= 1 and N != 0");
  if (std::gcd(a, b) != 1)
    throw std::domain_error("solve_norm_form: a and b must be coprime");

  // Quick direct scan for small solutions.
  for (i64 y = 0; y <= 512; ++y) {
    __int128 t = static_cast<__int128>(N) + static_cast<__int128>(b) * y * y;
    if (t < 0 || t % a != 0) continue;
    __int128 xx = t / a;
    if (xx > static_cast<__int128>(1) << 62) break;
    i64 r;
    if (is_square(static_cast<i64>(xx), &r))
      return {NormFormResult::Status::Solved, {{Int(r), Int(y)}}, 0, 0};
  }

  // Congruence obstructions, smallest modulus first.
  for (i64 M : obstruction_moduli(a, b)) {
    if (!congruence_solvable(a, b, N, M))
      return {NormFormResult::Status::NoneCongruence, std::nullopt, M, 0};
  }

  // |N| = 4 with squarefree ab: exact decision through the fundamental unit.
  // If eps^u = eta^2 for eta = (x sqrt(a) + y sqrt(b))/2 and some odd u, then
  // eps itself is such a square (multiply eta by eps^((1-u)/2)), so testing
  // the fundamental unit alone is complete. A unit of norm -1 rules out
  // eta entirely: eta would have (N eta)^2 = N(eps)^u = -1.
  __int128 ab128 = static_cast<__int128>(a) * b;
  if ((N == 4 || N == -4) && a > 1 && b > 1 &&
      ab128 < (static_cast<__int128>(1) << 62) && is_squarefree(a * b)) {
    i64 m = a * b;
    FundamentalUnit eps = fundamental_unit(m);
    if (eps.norm == -1)
      return {NormFormResult::Status::NoneUnitNorm, std::nullopt, 0, 0};
    auto [A, B] = eps.pell4();  // A^2 - m B^2 = 4
    Int xa = (N == -4) ? Int(A - 2) : Int(A + 2);  // a x^2
    Int yb = (N == -4) ? Int(A + 2) : Int(A - 2);  // b y^2
    if (xa % a == 0 && yb % b == 0) {
      Int xs = xa / a, ys = yb / b;
      if (mpz_perfect_square_p(xs.get_mpz_t()) &&
          mpz_perfect_square_p(ys.get_mpz_t())) {
        Int x, y;
        mpz_sqrt(x.get_mpz_t(), xs.get_mpz_t());
        mpz_sqrt(y.get_mpz_t(), ys.get_mpz_t());
        if (a * x * x - b * y * y != N)
          throw std::logic_error("solve_norm_form: unit route inconsistency");
        return {NormFormResult::Status::Solved, {{x, y}}, 0, 0};
      }
    }
    return {NormFormResult::Status::NoneSquareCriterion, std::nullopt, 0, 0};
  }

  // General bounded search below the Pell bound for X^2 - ab y^2 = aN, X = ax.
  i64 D64;
  {
    if (ab128 >= (static_cast<__int128>(1) << 62))
      throw std::runtime_error("solve_norm_form: ab out of range");
    D64 = a * b;
  }
  i64 root;
  if (is_square(D64, &root)) {
    // Degenerate: (X - y root)(X + y root) = aN, finitely many divisor pairs.
    Int aN = Int(a) * N;
    Int bound = abs(aN);
    for (Int u = 1; u * u <= abs(aN); ++u) {
      if (aN % u != 0) continue;
      for (const Int& uu : {u, Int(-u)}) {
        Int vv = aN / uu;
        if ((uu + vv) % 2 != 0 || (vv - uu) % (2 * root) != 0) continue;
        Int X = (uu + vv) / 2, Y = (vv - uu) / (2 * root);
        if (X >= 0 && Y >= 0 && X % a == 0)
          return {NormFormResult::Status::Solved, {{X / a, Y}}, 0, 0};
      }
    }
    return {NormFormResult::Status::NoneExhausted, std::nullopt, 0, bound};
  }

  auto [T, U] = pell_one(D64);
  i64 s = isqrt(D64);
  Int aN = Int(a) * N;
  Int absaN = abs(aN);
  Int sq;
  mpz_sqrt(sq.get_mpz_t(), absaN.get_mpz_t());
  Int ymax = ((sq + 1) * (T + U * (s + 1) + 1)) / (2 * s) + 1;
  if (ymax > 50'000'000)
    throw std::runtime_error("solve_norm_form: search bound infeasible (" +
                             ymax.get_str() + ")");
  i64 ycap = ymax.get_si();
  for (i64 y = 0; y <= ycap; ++y) {
    Int XX = aN + Int(D64) * y * y;
    if (XX < 0) continue;
    if (!mpz_perfect_square_p(XX.get_mpz_t())) continue;
    Int X;
    mpz_sqrt(X.get_mpz_t(), XX.get_mpz_t());
    if (X % a == 0)
      return {NormFormResult::Status::Solved, {{X / a, Int(y)}}, 0, 0};
  }
  return {NormFormResult::Status::NoneExhausted, std::nullopt, 0, ymax};
}

UnitSquareWitness eta_witness(const PrimeTriple& t) {
  UnitSquareWitness w;
  w.p = t.p;
  w.q = t.q;
  w.qprime = t.qprime;
  w.eps = fundamental_unit(t.m);
  if (w.eps.norm != 1)
    throw std::runtime_error("eta_witness: fundamental unit has norm -1");

  NormFormResult res = solve_norm_form(t.p, t.q * t.qprime, -4);
  if (!res.solved())
    throw std::runtime_error("eta_witness: p x^2 - qq' y^2 = -4 not solvable");
  w.x = res.solution->first;
  w.y = res.solution->second;

  // eta^2 = (S + 2P sqrt(m))/4 with S = p x^2 + qq' y^2, P = x y; match it
  // against odd powers of eps in the (A + B sqrt(m))/2 normalization.
  Int S = t.p * w.x * w.x + t.q * t.qprime * w.y * w.y;
  Int P = w.x * w.y;
  auto [A1, B1] = w.eps.pell4();
  Int A = A1, B = B1;
  for (i64 u = 1; u <= 199; u += 2) {
    if (S == 2 * A && P == B) {
      w.u = u;
      return w;
    }
    // multiply twice by eps to reach the next odd power
    for (int step = 0; step < 2; ++step) {
      Int A2 = (A * A1 + t.m * B * B1);
      Int B2 = (A * B1 + B * A1);
      if (A2 % 2 != 0 || B2 % 2 != 0)
        throw std::logic_error("eta_witness: unit power parity violation");
      A = A2 / 2;
      B = B2 / 2;
    }
  }
  throw std::runtime_error("eta_witness: no odd exponent u ≤ 199 matches");
}

}  // namespace tf
