#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "ceresa/certify.hpp"

namespace ceresa {

enum class SweepMode {
  Certify,       // full dispatch per prime
  CmRed,         // the CM-reduction test alone
  WpInequality,  // h(-p) + h(-4p) < p/96
  Bezout,        // f1/f2 tests on the small-genus primes of the 1 mod 24 class
};

inline std::string to_string(SweepMode m) {
  switch (m) {
    case SweepMode::Certify: return "certify";
    case SweepMode::CmRed: return "cmred";
    case SweepMode::WpInequality: return "wp-inequality";
    case SweepMode::Bezout: return "bezout";
  }
  return "certify";
}

inline SweepMode parse_sweep_mode(const std::string& s) {
  for (SweepMode m : {SweepMode::Certify, SweepMode::CmRed, SweepMode::WpInequality, SweepMode::Bezout})
    if (to_string(m) == s) return m;
  throw Error(ErrorCode::SchemaError, "unknown sweep mode '" + s + "'");
}

/// 64-bit FNV-1a, printed as 16 hex digits.
inline std::string fnv1a_hex(const std::string& s) {
  u64 h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

struct SweepRecord {
  u64 prime = 0;
  Route route = Route::Unknown;
  Verdict verdict = Verdict::Inconclusive;
  std::string digest;
  std::optional<double> wall_ms;  // only written when timing is requested

  nlohmann::json to_json() const {
    nlohmann::json j = {{"prime", prime}, {"route", to_string(route)}, {"verdict", to_string(verdict)},
                        {"digest", digest}};
    if (wall_ms) j["wall_ms"] = *wall_ms;
    return j;
  }
  static SweepRecord from_json(const nlohmann::json& j) {
    SweepRecord r;
    try {
      r.prime = j.at("prime").get<u64>();
      r.route = parse_route(j.at("route").get<std::string>());
      r.verdict = parse_verdict(j.at("verdict").get<std::string>());
      r.digest = j.at("digest").get<std::string>();
      if (j.contains("wall_ms")) r.wall_ms = j["wall_ms"].get<double>();
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::SchemaError, e.what());
    }
    return r;
  }
};

inline SweepRecord record_from(const Certificate& c, u64 p) {
  SweepRecord r;
  r.prime = p;
  r.route = c.route;
  r.verdict = c.verdict;
  r.digest = fnv1a_hex(c.to_json().dump());
  return r;
}

/// Evaluates one prime under a sweep mode.
inline Certificate sweep_one(SweepMode mode, u64 p, const CertifyOptions& opt) {
  const i64 q = static_cast<i64>(p);
  switch (mode) {
    case SweepMode::Certify: return certify_prime(q, opt);
    case SweepMode::CmRed: return cmred_test(q, opt);
    case SweepMode::WpInequality: {
      Certificate c;
      c.level = p;
      c.seed = opt.seed;
      c.route = Route::WpInequality;
      const i64 s = wp_class_sum(q);
      c.verdict = 96 * s < q ? Verdict::NonVanishing : Verdict::Inconclusive;
      c.witnesses = {{"p", q}, {"class_sum", s}};
      return c;
    }
    case SweepMode::Bezout: return bezout_route(q, opt);
  }
  throw Error(ErrorCode::SchemaError, "unknown sweep mode");
}

/// Primes of the 1 mod 24 class whose X_0^+ genus is at most the Bezout intersection bound
/// (79^2 for non-residues mod 11, 79 * 129 for residues).
inline std::vector<u64> bezout_candidates(const std::vector<u64>& primes) {
  std::vector<u64> out;
  for (u64 p : primes) {
    const i64 q = static_cast<i64>(p);
    if (q % 24 != 1 || !residue_mod7(q)) continue;
    const i64 cap = residue_mod11(q) ? 79 * 129 : 79 * 79;
    if (bezout_genus_times24(q, class_number(-4 * q)) <= 24 * cap) out.push_back(p);
  }
  return out;
}

struct SweepSummary {
  std::size_t records = 0;
  std::map<std::string, std::size_t> by_verdict;
  std::vector<u64> exceptions;  // primes without a NonVanishing verdict
  u64 largest = 0;

  nlohmann::json to_json() const {
    nlohmann::json v = nlohmann::json::object();
    for (const auto& [k, n] : by_verdict) v[k] = n;
    return {{"records", records}, {"by_verdict", v}, {"exceptions", exceptions},
            {"exception_count", exceptions.size()}, {"largest_prime", largest}};
  }
};

inline SweepSummary summarize(const std::vector<SweepRecord>& records) {
  SweepSummary s;
  std::vector<SweepRecord> sorted = records;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.prime < b.prime; });
  for (const auto& r : sorted) {
    ++s.records;
    ++s.by_verdict[to_string(r.verdict)];
    if (r.verdict != Verdict::NonVanishing) s.exceptions.push_back(r.prime);
    s.largest = std::max(s.largest, r.prime);
  }
  return s;
}

/// Reads the complete records of a JSONL file. A truncated final line is ignored.
inline std::vector<SweepRecord> read_records(const std::string& path) {
  std::vector<SweepRecord> out;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded()) continue;
    out.push_back(SweepRecord::from_json(j));
  }
  return out;
}

struct SweepOptions {
  CertifyOptions certify;
  unsigned jobs = 1;
  bool timing = false;
};

/// Evaluates every prime and hands records to `sink` in ascending prime order, so the
/// output is identical for any number of workers.
inline std::vector<SweepRecord> run_sweep(SweepMode mode, const std::vector<u64>& primes, const SweepOptions& opt,
                                          const std::function<void(const SweepRecord&)>& sink = {}) {
  const std::size_t n = primes.size();
  std::vector<std::optional<SweepRecord>> slots(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::condition_variable cv;

  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      auto t0 = std::chrono::steady_clock::now();
      std::optional<SweepRecord> rec;
      std::exception_ptr err;
      try {
        rec = record_from(sweep_one(mode, primes[i], opt.certify), primes[i]);
        if (opt.timing)
          rec->wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      } catch (...) {
        err = std::current_exception();
      }
      std::lock_guard<std::mutex> lock(mu);
      slots[i] = std::move(rec);
      errors[i] = err;
      cv.notify_all();
    }
  };

  unsigned jobs = std::max(1u, opt.jobs);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);

  std::vector<SweepRecord> out;
  out.reserve(n);
  std::exception_ptr first_error;
  {
    std::unique_lock<std::mutex> lock(mu);
    for (std::size_t i = 0; i < n; ++i) {
      cv.wait(lock, [&] { return slots[i].has_value() || errors[i]; });
      if (errors[i]) {
        if (!first_error) first_error = errors[i];
        continue;
      }
      if (first_error) continue;
      out.push_back(*slots[i]);
      if (sink) {
        lock.unlock();
        sink(out.back());
        lock.lock();
      }
    }
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
  return out;
}

/// Sweep persisted to a JSONL file. With resume, primes already present are skipped and
/// new records are appended; the returned list covers the whole file.
inline std::vector<SweepRecord> run_sweep_to_file(SweepMode mode, const std::vector<u64>& primes,
                                                  const SweepOptions& opt, const std::string& path, bool resume) {
  std::vector<SweepRecord> existing;
  if (resume && std::filesystem::exists(path)) {
    existing = read_records(path);
    // Drop a partial trailing line before appending.
    std::string kept;
    for (const auto& r : existing) kept += r.to_json().dump() + "\n";
    std::ofstream(path, std::ios::trunc) << kept;
  }
  std::set<u64> seen;
  for (const auto& r : existing) seen.insert(r.prime);
  std::vector<u64> todo;
  for (u64 p : primes)
    if (!seen.count(p)) todo.push_back(p);

  std::ofstream out(path, resume ? std::ios::app : std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  auto fresh = run_sweep(mode, todo, opt, [&](const SweepRecord& r) {
    out << r.to_json().dump() << '\n';
    out.flush();
    if (!out) throw std::runtime_error("write to " + path + " failed");
  });
  existing.insert(existing.end(), fresh.begin(), fresh.end());
  return existing;
}

/// Class-number memo persisted as a JSON object {"<D>": h} in $CERESA_CACHE_DIR/class_numbers.json.
class ClassNumberCache {
 public:
  static std::optional<std::filesystem::path> default_path() {
    const char* dir = std::getenv("CERESA_CACHE_DIR");
    if (!dir || !*dir) return std::nullopt;
    return std::filesystem::path(dir) / "class_numbers.json";
  }

  explicit ClassNumberCache(std::optional<std::filesystem::path> path = default_path()) : path_(std::move(path)) {
    if (!path_ || !std::filesystem::exists(*path_)) return;
    std::ifstream in(*path_);
    auto j = nlohmann::json::parse(in, nullptr, false);
    if (!j.is_object()) return;
    for (const auto& [k, v] : j.items())
      if (v.is_number_integer()) memo_[std::stoll(k)] = v.get<i64>();
  }

  i64 operator()(i64 D) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = memo_.find(D);
    if (it != memo_.end()) return it->second;
    i64 h = class_number(D);
    memo_[D] = h;
    dirty_ = true;
    return h;
  }

  std::size_t size() const { return memo_.size(); }

  void save() {
    std::lock_guard<std::mutex> lock(mu_);
    if (!path_ || !dirty_) return;
    std::filesystem::create_directories(path_->parent_path());
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [D, h] : memo_) j[std::to_string(D)] = h;
    auto tmp = *path_;
    tmp += ".tmp";
    std::ofstream(tmp) << j.dump() << '\n';
    std::filesystem::rename(tmp, *path_);
    dirty_ = false;
  }

  ~ClassNumberCache() {
    try {
      save();
    } catch (...) {
    }
  }

 private:
  std::optional<std::filesystem::path> path_;
  std::map<i64, i64> memo_;
  std::mutex mu_;
  bool dirty_ = false;
};

}  // namespace ceresa
