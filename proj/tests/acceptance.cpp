// Acceptance suite: one line per criterion, exit 0 iff everything passes.
// Each criterion pins its expected values and runtime budget in code.

#include <atomic>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <thread>
#include <vector>

#include "towerforge/cli.hpp"
#include "towerforge/report.hpp"
#include "unit_oracle.hpp"

using namespace tf;

namespace tf {
inline std::ostream& operator<<(std::ostream& os, const AbelianType& t) {
  return os << t.str();
}
}  // namespace tf

namespace {

struct Failure {
  std::string what;
};

void expect(bool ok, const std::string& what) {
  if (!ok) throw Failure{what};
}

template <typename T>
void expect_eq(const T& got, const T& want, const std::string& what) {
  if (!(got == want)) {
    std::ostringstream os;
    os << what << ": expected " << want << ", got " << got;
    throw Failure{os.str()};
  }
}

std::vector<TowerCertificate> g_scan_certs;  // shared by criteria 3 and 7

// ---------------------------------------------------------------- criterion 1
void criterion_flagship() {
  std::ostringstream out, err;
  int code = run_cli({"verify", "--p", "5", "--q", "3", "--qprime", "7",
                      "--format", "json", "--no-timestamp"},
                     out, err);
  expect_eq(code, 0, "verify (5,3,7) exit code");
  Json j = Json::parse(out.str());
  const Json& c = j["payload"];
  expect_eq<int>(c["n"], 1, "n");
  expect_eq<i64>(c["gamma_order"], 32, "gamma_order");
  expect_eq<std::string>(c["cl2_k"], "(2,2,2)", "Cl_2(k)");
  expect(c["pass"].get<bool>(), "certificate pass flag");

  std::map<std::pair<std::string, int>, std::string> cols;
  for (const auto& ck : c["checks"]) {
    expect(ck["pass"].get<bool>(),
           "check " + ck["table"].get<std::string>() + "/" +
               ck["col"].get<std::string>() + " row " +
               std::to_string(ck["row"].get<int>()));
    cols[{ck["table"].get<std::string>() + "/" + ck["col"].get<std::string>(),
          ck["row"].get<int>()}] = ck["computed"].get<std::string>();
  }
  const i64 hrow[7] = {8, 8, 8, 16, 8, 8, 8};
  const i64 krow[7] = {4, 4, 4, 2, 4, 4, 4};
  const i64 qrow[7] = {2, 4, 4, 2, 2, 4, 4};
  for (int j7 = 1; j7 <= 7; ++j7) {
    expect_eq(cols[{"T1/h_j", j7}], std::to_string(hrow[j7 - 1]),
              "T1 h_" + std::to_string(j7));
    expect_eq(cols[{"T1/kappa_order", j7}], std::to_string(krow[j7 - 1]),
              "T1 #kappa_" + std::to_string(j7));
    expect_eq(cols[{"T4/q_index", j7}], std::to_string(qrow[j7 - 1]),
              "T4 q_" + std::to_string(j7));
  }
}

// ---------------------------------------------------------------- criterion 2
void criterion_case_b() {
  std::ostringstream out, err;
  int code = run_cli({"verify", "--p", "5", "--q", "3", "--qprime", "23",
                      "--format", "json", "--no-timestamp"},
                     out, err);
  expect_eq(code, 0, "verify (5,3,23) exit code");
  Json j = Json::parse(out.str());
  const Json& c = j["payload"];
  expect_eq<int>(c["n"], 2, "n");
  expect_eq<std::string>(c["case"], "B", "case");
  expect_eq<i64>(c["gamma_order"], 64, "gamma_order");
  expect(c["pass"].get<bool>(), "certificate pass flag");
  bool saw_h4 = false, saw_k5 = false;
  for (const auto& ck : c["checks"]) {
    if (ck["table"] == "T1" && ck["row"] == 4 && ck["col"] == "h_j") {
      expect_eq<std::string>(ck["computed"], "32", "h_4 = 2^(n+3)");
      saw_h4 = true;
    }
    if (ck["table"] == "T3" && ck["row"] == 5 && ck["col"] == "cl2_Kj") {
      expect_eq<std::string>(ck["computed"], "(4,4)", "Cl_2(K_5) = (4,2^n)");
      saw_k5 = true;
    }
  }
  expect(saw_h4 && saw_k5, "expected T1/T3 cells present");
}

// ---------------------------------------------------------------- criterion 3
void criterion_scan() {
  auto triples = enumerate_valid_triples(250, 250, 250);
  // regression baseline recorded on the first full run
  expect_eq<std::size_t>(triples.size(), 852, "triple count at bound 250");
  expect(triples.size() >= 50, "at least 50 triples in range");

  g_scan_certs.assign(triples.size(), {});
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= triples.size()) break;
      g_scan_certs[i] =
          verify_tower(triples[i].p, triples[i].q, triples[i].qprime);
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < 4; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();

  for (const auto& cert : g_scan_certs) {
    std::ostringstream id;
    id << "(" << cert.triple.p << "," << cert.triple.q << ","
       << cert.triple.qprime << ")";
    expect(cert.pass, "certificate fails for " + id.str() +
                          (cert.discrepancies.empty()
                               ? ""
                               : ": " + cert.discrepancies.front()));
    bool crit = kronecker(cert.triple.qprime, cert.triple.q) == -1;
    expect_eq((cert.triple.n >= 2), crit,
              "n >= 2 iff (q'/q) = -1 for " + id.str());
    expect_eq((cert.triple.n >= 2), cert.triple.case_label == CaseLabel::B,
              "n >= 2 iff case B for " + id.str());
  }
}

// ---------------------------------------------------------------- criterion 4
void criterion_group_engine() {
  for (int n = 1; n <= 8; ++n) {
    TowerGroup G(n);
    expect_eq(G.order(), i64(1) << (n + 4), "group order");
    expect_eq(abelianization(G), make_type({2, 2, 2}), "abelianization");
    Subgroup Gd = derived_subgroup(G);
    expect_eq(abelianization(G, Gd), make_type({2, i64(1) << n}),
              "derived subgroup type");
    expect_eq(derived_subgroup(G, Gd).order(), i64(1),
              "second derived subgroup trivial");
    expect_eq(exponent(G), std::max<i64>(4, i64(1) << (n + 1)), "exponent");

    auto R = G.r(), S = G.s(), T = G.t();
    expect(G.pow(G.mul(R, S), 2) == G.mul(R, R), "(rs)^2 = r^2");
    expect(G.pow(G.mul(G.mul(R, S), T), 2) == G.mul(T, T), "(rst)^2 = t^2");
    expect(G.pow(G.mul(R, T), 2) == G.mul(T, T), "(rt)^2 = t^2");
    expect(G.comm(R, G.mul(T, T)) == G.identity(), "[r, t^2] = 1");
    // every element against the group axioms
    for (const auto& e : G.elements()) {
      expect(G.mul(e, G.inv(e)) == G.identity(), "inverse law");
      expect(G.mul(e, G.identity()) == e, "identity law");
    }

    auto rep = presentation_consistency(n);
    expect(rep.adopted_ok, "adopted presentation consistent");
    if (n >= 2) {
      expect(!rep.variants[2].consistent && !rep.variants[3].consistent,
             "halved-exponent variant must fail for n >= 2");
    }
  }
}

// ---------------------------------------------------------------- criterion 5
void criterion_form_oracle() {
  for (i64 d = -3; d > -10000; --d) {
    if (!is_fundamental_discriminant(d)) continue;
    FormClassGroup G = FormClassGroup::enumerate(d);
    std::size_t h = static_cast<std::size_t>(G.h());
    std::size_t id = G.identity();
    for (std::size_t i = 0; i < h; ++i) {
      expect(G.mul(id, i) == i, "identity law");
      expect(G.mul(G.inv(i), i) == id, "inverse law");
      for (std::size_t j = i; j < h; ++j) {
        std::size_t ij = G.mul(i, j);
        expect(ij < h, "closure");
        expect(ij == G.mul(j, i), "commutativity");
      }
    }
    // deterministic associativity sample
    u64 seed = static_cast<u64>(-d);
    for (int k = 0; k < 60; ++k) {
      seed = seed * 6364136223846793005ull + 1442695040888963407ull;
      std::size_t a = (seed >> 16) % h;
      seed = seed * 6364136223846793005ull + 1442695040888963407ull;
      std::size_t b = (seed >> 16) % h;
      seed = seed * 6364136223846793005ull + 1442695040888963407ull;
      std::size_t c = (seed >> 16) % h;
      expect(G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c)), "associativity");
    }
    i64 t = static_cast<i64>(prime_disc_factorization(d).size());
    expect_eq(G.ambiguous_count(), i64(1) << (t - 1),
              "ambiguous class count at d = " + std::to_string(d));
  }
}

// ---------------------------------------------------------------- criterion 6
struct FrozenUnit {
  i64 m;
  u64 x, y;
  int norm;
  bool half;
};

// First-hit values for the m whose minimal y is too deep to rescan live;
// computed by the same brute-force oracle via tests/gen_unit_oracle.cpp.
const std::vector<FrozenUnit>& frozen_units();

void criterion_unit_oracle() {
  constexpr unit_oracle::u64 kLiveCap = 200'000'000;
  std::map<i64, FrozenUnit> frozen;
  for (const auto& f : frozen_units()) frozen[f.m] = f;

  std::vector<i64> ms;
  for (i64 m = 2; m <= 300; ++m)
    if (is_squarefree(m)) ms.push_back(m);

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::string first_failure;
  std::mutex mu;
  auto work = [&] {
    while (!failed.load()) {
      std::size_t i = next.fetch_add(1);
      if (i >= ms.size()) break;
      i64 m = ms[i];
      FundamentalUnit u = fundamental_unit(m);
      unit_oracle::OracleUnit want;
      if (auto it = frozen.find(m); it != frozen.end()) {
        want = {it->second.x, it->second.y, it->second.norm, it->second.half};
      } else {
        auto hit = unit_oracle::brute_unit_scan(m, kLiveCap);
        if (!hit) {
          std::lock_guard<std::mutex> lock(mu);
          failed = true;
          first_failure = "oracle found no unit below the live cap for m = " +
                          std::to_string(m) + " (table regeneration needed)";
          return;
        }
        want = *hit;
      }
      bool ok = u.x == want.x && u.y == want.y && u.norm == want.norm &&
                u.half == want.half;
      if (!ok) {
        std::lock_guard<std::mutex> lock(mu);
        failed = true;
        first_failure = "unit mismatch at m = " + std::to_string(m) +
                        ": oracle (" + std::to_string(want.x) + "," +
                        std::to_string(want.y) + ") implementation (" +
                        u.x.get_str() + "," + u.y.get_str() + ")";
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < 4; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  expect(!failed.load(), first_failure);
}

// ---------------------------------------------------------------- criterion 7
void criterion_lemma_witnesses() {
  expect(!g_scan_certs.empty(), "scan certificates available (criterion 3)");
  std::size_t i = 0;
  for (const auto& cert : g_scan_certs) {
    std::ostringstream id;
    id << "(" << cert.triple.p << "," << cert.triple.q << ","
       << cert.triple.qprime << ")";
    // substitution check of the produced solution, in exact arithmetic
    Int x(cert.witness_x), y(cert.witness_y);
    Int lhs = cert.triple.p * x * x - cert.triple.q * cert.triple.qprime * y * y;
    expect(lhs == -4, "p x^2 - qq' y^2 = -4 fails for " + id.str());
    expect(cert.witness_u % 2 == 1, "even eta exponent for " + id.str());
    expect(cert.eps_norm == 1, "eps_m norm not +1 for " + id.str());
    expect(cert.q_insolvable.find("solved") == std::string::npos,
           "q-class equation unexpectedly solvable for " + id.str());
    expect(cert.qprime_insolvable.find("solved") == std::string::npos,
           "q'-class equation unexpectedly solvable for " + id.str());
    for (const auto& c : cert.checks)
      if (c.table == "lemma")
        expect(c.pass, "lemma check " + c.col + " fails for " + id.str());
    // every 25th triple: recompute the witness and re-expand eta^2 = eps^u
    if (i++ % 25 == 0) {
      UnitSquareWitness w = eta_witness(cert.triple);
      expect(w.u % 2 == 1, "recomputed exponent odd for " + id.str());
      auto [A, B] = w.eps.pell4();
      Int Au = A, Bu = B;
      for (i64 k = 1; k < w.u; k += 2) {
        for (int step = 0; step < 2; ++step) {
          Int A2 = (Au * A + cert.triple.m * Bu * B) / 2;
          Int B2 = (Au * B + Bu * A) / 2;
          Au = A2;
          Bu = B2;
        }
      }
      Int S = cert.triple.p * w.x * w.x +
              cert.triple.q * cert.triple.qprime * w.y * w.y;
      expect(S == 2 * Au && w.x * w.y == Bu,
             "eta^2 = eps^u expansion fails for " + id.str());
    }
  }
}

struct Criterion {
  int id;
  std::string name;
  double limit_s;
  std::function<void()> fn;
};

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "flagship d=-420: cmd_verify(5,3,7), tables T1/T4 exact", 5.0,
       criterion_flagship},
      {2, "case B: cmd_verify(5,3,23), n=2, h4=32, Cl2(K5)=(4,4)", 5.0,
       criterion_case_b},
      {3, "bulk scan p,q,q' <= 250: all certificates pass", 120.0,
       criterion_scan},
      {4, "group engine n=1..8: orders, types, noted relations, variants",
       10.0, criterion_group_engine},
      {5, "form-class oracle: all fundamental -10^4 < d < 0", 120.0,
       criterion_form_oracle},
      {6, "unit oracle: squarefree m <= 300 against brute-force search", 30.0,
       criterion_unit_oracle},
      {7, "norm-equation witnesses for every scanned triple", 120.0,
       criterion_lemma_witnesses},
  };

  bool all_ok = true;
  for (const auto& c : criteria) {
    auto t0 = std::chrono::steady_clock::now();
    std::string failure;
    try {
      c.fn();
    } catch (const Failure& f) {
      failure = f.what;
    } catch (const std::exception& e) {
      failure = std::string("exception: ") + e.what();
    }
    double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    bool ok = failure.empty() && dt < c.limit_s;
    all_ok = all_ok && ok;
    std::printf("[%d] %-62s %s (%.2fs, limit %.0fs)\n", c.id, c.name.c_str(),
                ok ? "PASS" : "FAIL", dt, c.limit_s);
    if (!failure.empty()) std::printf("    -> %s\n", failure.c_str());
    if (failure.empty() && dt >= c.limit_s)
      std::printf("    -> runtime budget exceeded\n");
  }
  std::printf("%s\n", all_ok ? "acceptance: ALL CRITERIA PASS"
                             : "acceptance: FAILURES PRESENT");
  return all_ok ? 0 : 1;
}

namespace {

const std::vector<FrozenUnit>& frozen_units() {
  // Values produced by tests/gen_unit_oracle.cpp (deep scans beyond the
  // live budget).
  static const std::vector<FrozenUnit> table = {
      {199, 16266196520ull, 1153080099ull, 1, false},
      {211, 278354373650ull, 19162705353ull, 1, false},
      {214, 695359189925ull, 47533775646ull, 1, false},
      {271, 115974983600ull, 7044978537ull, 1, false},
  };
  return table;
}

}  // namespace
