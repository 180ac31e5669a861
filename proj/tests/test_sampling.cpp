#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "rnl/sampling.hpp"

using namespace rnl;
using Catch::Matchers::WithinAbs;

TEST_CASE("splitmix64 reference vectors", "[sampling]") {
  // frozen from the published algorithm; pins bit-reproducibility
  {
    SplitMix64 rng(0);
    REQUIRE(rng.next() == 0xe220a8397b1dcdafULL);
    REQUIRE(rng.next() == 0x6e789e6aa1b965f4ULL);
    REQUIRE(rng.next() == 0x06c45d188009454fULL);
    REQUIRE(rng.next() == 0xf88bb8a8724c81ecULL);
  }
  {
    SplitMix64 rng(42);
    REQUIRE(rng.next() == 0xbdd732262feb6e95ULL);
    REQUIRE(rng.next() == 0x28efe333b266f103ULL);
  }
  {
    SplitMix64 rng(0xdeadbeefcafef00dULL);
    REQUIRE(rng.next() == 0x901d4f652fb472cbULL);
  }
}

TEST_CASE("unit draws are in [0,1) and frozen", "[sampling]") {
  SplitMix64 rng(42);
  REQUIRE(rng.next_unit() == 0.7415648787718233);
  REQUIRE(rng.next_unit() == 0.1599103928769201);
  REQUIRE(rng.next_unit() == 0.27860113025513866);
  REQUIRE(rng.next_unit() == 0.34419071652363753);

  SplitMix64 walker(987654321);
  for (int i = 0; i < 10000; ++i) {
    const double u = walker.next_unit();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
  }
}

TEST_CASE("advance_seed jumps the stream", "[sampling]") {
  SplitMix64 rng(42);
  for (int i = 0; i < 7; ++i) rng.next();
  SplitMix64 jumped(SplitMix64::advance_seed(42, 7));
  REQUIRE(rng.next() == jumped.next());
}

TEST_CASE("sample_pairs basics", "[sampling]") {
  SECTION("a deterministic distribution yields one bucket") {
    const auto record = sample_pairs({1.0, 0.0, 0.0, 0.0}, 1000, 9);
    REQUIRE(record.pp == 1000);
    REQUIRE(record.pm == 0);
    REQUIRE(record.sum() == record.total);
  }

  SECTION("identical inputs yield identical records") {
    const auto a = sample_pairs(uniform_joint(), 5000, 1234);
    const auto b = sample_pairs(uniform_joint(), 5000, 1234);
    REQUIRE(a == b);
  }

  SECTION("zero pairs is a domain error") {
    REQUIRE_THROWS_AS(sample_pairs(uniform_joint(), 0, 1), DomainError);
  }

  SECTION("invalid distribution is rejected") {
    REQUIRE_THROWS_AS(sample_pairs({0.5, 0.5, 0.5, -0.5}, 10, 1), ValidationError);
  }

  SECTION("uniform counts stay within the binomial envelope") {
    const std::uint64_t n = 1000000;
    const auto record = sample_pairs(uniform_joint(), n, 20260809);
    // 5 sigma of Binomial(n, 1/4)
    const double bound = 5.0 * std::sqrt(n * 0.25 * 0.75);
    for (std::uint64_t count : {record.pp, record.pm, record.mp, record.mm}) {
      REQUIRE(std::abs(static_cast<double>(count) - 250000.0) < bound);
    }
  }
}

TEST_CASE("estimate", "[sampling]") {
  SECTION("perfect correlation") {
    const auto est = estimate({500, 0, 0, 500, 1000, 0});
    REQUIRE(est.correlation_estimate == 1.0);
    REQUIRE(est.standard_error == 0.0);
    REQUIRE(est.frequencies.pp == 0.5);
  }

  SECTION("uniform counts") {
    const auto est = estimate({250, 250, 250, 250, 1000, 0});
    REQUIRE(est.correlation_estimate == 0.0);
    REQUIRE_THAT(est.standard_error, WithinAbs(0.031622776601683794, 1e-15));
  }

  SECTION("mixed counts") {
    const auto est = estimate({600, 150, 150, 100, 1000, 0});
    REQUIRE_THAT(est.correlation_estimate, WithinAbs(0.4, 1e-15));
  }

  SECTION("empty record is a domain error") {
    REQUIRE_THROWS_AS(estimate({0, 0, 0, 0, 0, 0}), DomainError);
  }
}

TEST_CASE("discrimination power", "[sampling]") {
  REQUIRE_THAT(discrimination_power(1.0, 0.0, 10000), WithinAbs(100.0, 1e-12));
  REQUIRE(discrimination_power(0.37, 0.37, 123456) == 0.0);
  REQUIRE_THAT(discrimination_power(0.5, 0.0, 10000), WithinAbs(37.79644730092272, 1e-12));
  REQUIRE_THROWS_AS(discrimination_power(0.1, 0.2, 0), DomainError);
}

TEST_CASE("chunked sampling reproduces the single stream exactly", "[sampling]") {
  SplitMix64 rng(303);
  const auto joint = test::random_joint(rng);
  const std::uint64_t n = 10000;
  const std::uint64_t seed = 424242;
  const auto whole = sample_pairs(joint, n, seed);

  for (std::uint64_t chunk : {1000ULL, 2333ULL, 9999ULL}) {
    CountRecord merged{0, 0, 0, 0, 0, seed};
    std::uint64_t offset = 0;
    while (offset < n) {
      const std::uint64_t take = std::min<std::uint64_t>(chunk, n - offset);
      merged = merge(merged, sample_pairs(joint, take, SplitMix64::advance_seed(seed, offset)));
      offset += take;
    }
    REQUIRE(merged == whole);
  }
}

TEST_CASE("merging distinct seeds pools the estimator exactly", "[sampling]") {
  SplitMix64 rng(305);
  const auto joint = test::random_joint(rng);
  const auto a = sample_pairs(joint, 4000, 11);
  const auto b = sample_pairs(joint, 6000, 22);
  const auto merged = merge(a, b);
  REQUIRE(merged.total == 10000);
  REQUIRE(merged.sum() == 10000);

  const double pooled_signed =
      static_cast<double>(merged.pp + merged.mm) - static_cast<double>(merged.pm + merged.mp);
  REQUIRE(estimate(merged).correlation_estimate == pooled_signed / 10000.0);
}

TEST_CASE("estimator is consistent at fixed seeds", "[sampling]") {
  SplitMix64 rng(307);
  for (int trial = 0; trial < 5; ++trial) {
    const auto joint = test::random_joint(rng);
    const double e = correlation(joint);
    for (std::uint64_t seed : {101ULL, 202ULL, 303ULL}) {
      const auto est = estimate(sample_pairs(joint, 100000, seed));
      REQUIRE(std::abs(est.correlation_estimate - e) <= 4.5 * est.standard_error);
    }
  }
}
