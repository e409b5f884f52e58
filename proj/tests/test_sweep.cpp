#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ceresa/sweep.hpp"

using namespace ceresa;

namespace {
std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}
std::string temp_path(const std::string& name) { return (std::filesystem::temp_directory_path() / name).string(); }
}  // namespace

TEST(Sweep, CmRedExceptionsForFirstRow) {
  ClassSpec spec = cm_reduction_rows()[0].cls.spec();
  SweepOptions o;
  auto recs = run_sweep(SweepMode::CmRed, primes_in_class(2000, spec), o);
  auto s = summarize(recs);
  EXPECT_EQ(s.exceptions, (std::vector<u64>{7, 31}));
  EXPECT_EQ(s.records, recs.size());
}

TEST(Sweep, ParallelOutputIsIdentical) {
  auto primes = primes_in_class(3000, ClassSpec::parse("12:7"));
  SweepOptions one, many;
  many.jobs = 4;
  std::string a, b;
  run_sweep(SweepMode::Certify, primes, one, [&](const SweepRecord& r) { a += r.to_json().dump() + "\n"; });
  run_sweep(SweepMode::Certify, primes, many, [&](const SweepRecord& r) { b += r.to_json().dump() + "\n"; });
  EXPECT_EQ(a, b);
  EXPECT_EQ(std::count(a.begin(), a.end(), '\n'), static_cast<long>(primes.size()));
}

TEST(Sweep, ResumeSkipsCompletedPrimes) {
  auto primes = primes_in_class(5000, ClassSpec::parse("24:23"));
  SweepOptions o;
  std::string full = temp_path("ceresa_full.jsonl"), part = temp_path("ceresa_part.jsonl");
  run_sweep_to_file(SweepMode::WpInequality, primes, o, full, false);
  std::string text = slurp(full);
  // Keep a prefix that ends mid-record.
  std::ofstream(part, std::ios::trunc) << text.substr(0, text.size() / 2);
  auto recs = run_sweep_to_file(SweepMode::WpInequality, primes, o, part, true);
  EXPECT_EQ(recs.size(), primes.size());
  EXPECT_EQ(slurp(part), text);
}

TEST(Sweep, RecordJsonRoundTrip) {
  SweepRecord r;
  r.prime = 103;
  r.route = Route::CMRed;
  r.verdict = Verdict::NonVanishing;
  r.digest = "0123456789abcdef";
  EXPECT_EQ(SweepRecord::from_json(r.to_json()).to_json(), r.to_json());
  EXPECT_FALSE(r.to_json().contains("wall_ms"));
}

TEST(Sweep, BezoutCandidatesSmallRange) {
  auto c = bezout_candidates(primes_in_class(5000, ClassSpec::parse("24:1;7:1,2,4")));
  ASSERT_FALSE(c.empty());
  for (u64 p : c) {
    EXPECT_EQ(p % 24, 1u);
    EXPECT_TRUE(residue_mod7(static_cast<i64>(p)));
  }
}

TEST(Sweep, Fnv1aKnownVector) {
  EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
  EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
}

TEST(ClassNumberCacheTest, PersistsAcrossInstances) {
  auto dir = std::filesystem::temp_directory_path() / "ceresa_cache_test";
  std::filesystem::remove_all(dir);
  auto path = dir / "class_numbers.json";
  {
    ClassNumberCache c(path);
    EXPECT_EQ(c(-47), 5);
    EXPECT_EQ(c(-23), 3);
  }
  ASSERT_TRUE(std::filesystem::exists(path));
  ClassNumberCache again(path);
  EXPECT_EQ(again.size(), 2u);
  EXPECT_EQ(again(-47), 5);
}
