// Regenerates the frozen oracle table in acceptance.cpp: scans every
// squarefree 2 <= m <= 300 with the brute-force unit oracle. Entries whose
// first hit lies beyond the live-scan budget (2e8) are printed in full so
// they can be frozen; everything else is verified on every acceptance run.
//
//   g++ -O2 -std=c++20 -Iinclude -Itests tests/gen_unit_oracle.cpp src/*.cpp
//       -lgmpxx -lgmp -pthread -o gen_unit_oracle && ./gen_unit_oracle

#include <chrono>
#include <iostream>
#include <mutex>
#include <thread>
#include <vector>

#include "towerforge/intarith.hpp"
#include "unit_oracle.hpp"

int main() {
  using namespace unit_oracle;
  constexpr u64 kLiveCap = 200'000'000;

  std::vector<long long> deep;
  for (long long m = 2; m <= 300; ++m) {
    if (!tf::is_squarefree(m) || m == 1) continue;
    auto t0 = std::chrono::steady_clock::now();
    auto hit = brute_unit_scan(m, kLiveCap);
    auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0);
    if (hit) {
      std::cout << "m=" << m << " y=" << hit->y << " x=" << hit->x
                << " norm=" << hit->norm << " half=" << hit->half << "  ("
                << dt.count() << "s)\n";
    } else {
      std::cout << "m=" << m << " EXCEEDS live cap, scheduling deep scan\n";
      deep.push_back(m);
    }
  }

  std::cout << "--- deep scans ---\n";
  std::vector<std::thread> pool;
  std::mutex mu;
  for (long long m : deep) {
    pool.emplace_back([m, &mu] {
      auto t0 = std::chrono::steady_clock::now();
      auto hit = brute_unit_scan(m, ~u64(0));
      auto dt =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0);
      std::lock_guard<std::mutex> lock(mu);
      if (hit)
        std::cout << "FROZEN {" << m << ", " << hit->x << "ull, " << hit->y
                  << "ull, " << hit->norm << ", " << (hit->half ? "true" : "false")
                  << "},  // " << dt.count() << "s\n";
      else
        std::cout << "m=" << m << " NOT FOUND (impossible)\n";
    });
  }
  for (auto& th : pool) th.join();
  return 0;
}
