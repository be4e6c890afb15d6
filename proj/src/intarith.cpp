#include "towerforge/intarith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tf {

i64 isqrt(i64 n) {
  if (n < 0) throw std::domain_error("isqrt: negative input");
  if (n == 0) return 0;
  i64 r = static_cast<i64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_square(i64 n, i64* root) {
  if (n < 0) return false;
  i64 r = isqrt(n);
  if (r * r != n) return false;
  if (root) *root = r;
  return true;
}

namespace {

u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

// Witnesses covering the full 64-bit range (and well beyond, < 3.3e24).
constexpr u64 kMrBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

bool miller_rabin(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull,
                29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : kMrBases) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

u64 pollard_brent(u64 n) {
  if (n % 2 == 0) return 2;
  u64 seed = 1;
  while (true) {
    ++seed;
    u64 y = seed, c = seed ^ 0x9e3779b9u, m = 128, g = 1, r = 1, q = 1, x = 0,
        ys = 0;
    c %= n;
    if (c == 0) c = 1;
    while (g == 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = (mulmod(y, y, n) + c) % n;
      u64 k = 0;
      while (k < r && g == 1) {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = (mulmod(y, y, n) + c) % n;
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      }
      r <<= 1;
    }
    if (g == n) {
      g = 1;
      while (g == 1) {
        ys = (mulmod(ys, ys, n) + c) % n;
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      }
    }
    if (g != n) return g;
  }
}

void factor_rec(u64 n, std::vector<i64>& out) {
  if (n == 1) return;
  if (miller_rabin(n)) {
    out.push_back(static_cast<i64>(n));
    return;
  }
  u64 f = pollard_brent(n);
  factor_rec(f, out);
  factor_rec(n / f, out);
}

}  // namespace

bool is_prime(i64 x) {
  if (x < 2) throw std::domain_error("is_prime: input below 2");
  return miller_rabin(static_cast<u64>(x));
}

int kronecker(i64 a, i64 b) {
  if (a == 0 && b == 0) throw std::domain_error("kronecker(0, 0) undefined");
  int result = 1;
  if (b == 0) return (a == 1 || a == -1) ? 1 : 0;
  if (b < 0) {
    b = -b;
    if (a < 0) result = -result;
  }
  if (b % 2 == 0) {
    if (a % 2 == 0) return 0;
    int twos = 0;
    while (b % 2 == 0) {
      b /= 2;
      ++twos;
    }
    if (twos % 2 == 1) {
      i64 am8 = ((a % 8) + 8) % 8;
      if (am8 == 3 || am8 == 5) result = -result;
    }
  }
  // b odd and positive from here: Jacobi with reciprocity.
  a %= b;
  if (a < 0) a += b;
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      i64 bm8 = b % 8;
      if (bm8 == 3 || bm8 == 5) result = -result;
    }
    std::swap(a, b);
    if (a % 4 == 3 && b % 4 == 3) result = -result;
    a %= b;
  }
  return b == 1 ? result : 0;
}

std::vector<i64> factorize(i64 n) {
  if (n == 0) throw std::domain_error("factorize: zero input");
  u64 v = static_cast<u64>(n < 0 ? -n : n);
  std::vector<i64> out;
  if (v == 1) return out;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
    while (v % p == 0) {
      out.push_back(static_cast<i64>(p));
      v /= p;
    }
  }
  if (v > 1) factor_rec(v, out);
  std::sort(out.begin(), out.end());
  return out;
}

bool is_squarefree(i64 n) {
  if (n == 0) return false;
  auto f = factorize(n);
  return std::adjacent_find(f.begin(), f.end()) == f.end();
}

bool is_fundamental_discriminant(i64 d) {
  if (d == 0 || d == 1) return false;
  i64 r4 = ((d % 4) + 4) % 4;
  if (r4 == 1) return is_squarefree(d);
  if (r4 != 0) return false;
  i64 m = d / 4;
  i64 rm = ((m % 4) + 4) % 4;
  return (rm == 2 || rm == 3) && is_squarefree(m);
}

bool is_prime_discriminant(i64 d) {
  if (d == -4 || d == 8 || d == -8) return true;
  i64 ell = d > 0 ? d : -d;
  if (ell < 3 || ell % 2 == 0 || !is_prime(ell)) return false;
  return d == ((ell % 4 == 1) ? ell : -ell);
}

std::vector<i64> prime_disc_factorization(i64 d) {
  if (!is_fundamental_discriminant(d))
    throw std::domain_error("prime_disc_factorization: not a fundamental discriminant");
  std::vector<i64> parts;
  i64 odd_product = 1;
  for (i64 ell : factorize(d)) {
    if (ell == 2) continue;
    i64 star = (ell % 4 == 1) ? ell : -ell;
    parts.push_back(star);
    odd_product *= star;
  }
  i64 even_part = d / odd_product;
  if (even_part != 1) parts.push_back(even_part);  // one of -4, 8, -8
  std::sort(parts.begin(), parts.end());
  i64 check = 1;
  for (i64 v : parts) {
    if (!is_prime_discriminant(v))
      throw std::logic_error("prime_disc_factorization: non-atomic part");
    check *= v;
  }
  if (check != d)
    throw std::logic_error("prime_disc_factorization: decomposition mismatch");
  return parts;
}

std::string to_string(TripleDefect defect) {
  switch (defect) {
    case TripleDefect::NotPrime: return "not_prime";
    case TripleDefect::NotDistinct: return "not_distinct";
    case TripleDefect::WrongResidue: return "wrong_residue";
    case TripleDefect::SymbolCondition: return "symbol_condition";
  }
  return "unknown";
}

std::optional<TripleDefect> triple_defect(i64 p, i64 q, i64 qprime) {
  for (i64 v : {p, q, qprime})
    if (v < 2 || !is_prime(v)) return TripleDefect::NotPrime;
  if (p == q || p == qprime || q == qprime) return TripleDefect::NotDistinct;
  if (p % 8 != 5 || q % 8 != 3 || qprime % 8 != 7)
    return TripleDefect::WrongResidue;
  if (kronecker(q, p) != -1 || kronecker(qprime, p) != -1)
    return TripleDefect::SymbolCondition;
  return std::nullopt;
}

PrimeTriple validate_triple(i64 p, i64 q, i64 qprime) {
  if (auto defect = triple_defect(p, q, qprime)) {
    throw InvalidTriple(*defect, "invalid triple (" + std::to_string(p) + ", " +
                                     std::to_string(q) + ", " +
                                     std::to_string(qprime) +
                                     "): " + to_string(*defect));
  }
  __int128 m128 = static_cast<__int128>(p) * q * qprime;
  if (m128 > ((static_cast<__int128>(1) << 61) - 1))
    throw std::domain_error("triple exceeds supported discriminant range");
  PrimeTriple t;
  t.p = p;
  t.q = q;
  t.qprime = qprime;
  t.m = p * q * qprime;
  t.d = -4 * t.m;
  t.case_label = kronecker(q, qprime) == -1 ? CaseLabel::A : CaseLabel::B;
  t.n = 0;
  return t;
}

}  // namespace tf
