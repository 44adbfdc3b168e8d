#include <doctest.h>

#include <atomic>
#include <cstdint>
#include <set>
#include <vector>

#include "mcssa/errors.hpp"
#include "mcssa/parallel.hpp"
#include "mcssa/rng.hpp"

using namespace mcssa;

TEST_CASE("derived seeds are deterministic and spread out") {
  CHECK(derive_seed(42, 0) == derive_seed(42, 0));
  CHECK(derive_seed(42, 0) != derive_seed(42, 1));
  CHECK(derive_seed(42, 0) != derive_seed(43, 0));

  std::set<std::uint64_t> seen;
  for (std::uint64_t base : {0ull, 1ull, 42ull, 0xDEADBEEFull})
    for (std::uint64_t index = 0; index < 1000; ++index)
      seen.insert(derive_seed(base, index));
  CHECK(seen.size() == 4000);
}

TEST_CASE("engines from equal seeds produce equal streams") {
  RngEngine a = make_engine(derive_seed(7, 3));
  RngEngine b = make_engine(derive_seed(7, 3));
  for (int i = 0; i < 100; ++i) CHECK(a() == b());
}

TEST_CASE("parallel_for covers every index exactly once") {
  const std::size_t n = 1000;
  for (int workers : {1, 2, 3, 7}) {
    std::vector<std::atomic<int>> hits(n);
    parallel_for(n, workers, [&](std::size_t i) { hits[i]++; });
    for (std::size_t i = 0; i < n; ++i) CHECK(hits[i].load() == 1);
  }
}

TEST_CASE("parallel_for result slots are schedule independent") {
  const std::size_t n = 500;
  std::vector<std::uint64_t> serial(n), threaded(n);
  parallel_for(n, 1, [&](std::size_t i) {
    serial[i] = derive_seed(9, i);
  });
  parallel_for(n, 5, [&](std::size_t i) {
    threaded[i] = derive_seed(9, i);
  });
  CHECK(serial == threaded);
}

TEST_CASE("parallel_for rethrows a worker exception") {
  auto boom = [&](std::size_t i) {
    if (i == 137) throw ParameterError("boom");
  };
  CHECK_THROWS_AS(parallel_for(400, 4, boom), ParameterError);
  CHECK_THROWS_AS(parallel_for(400, 1, boom), ParameterError);
}
