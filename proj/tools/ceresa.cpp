// Command-line front end: certificates, sweeps, and thin wrappers over the library.

#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "ceresa/ceresa.hpp"

namespace {

using namespace ceresa;

constexpr int kExitNonVanishing = 0;
constexpr int kExitFailure = 1;
constexpr int kExitVanishing = 2;
constexpr int kExitUndecided = 3;
constexpr int kExitUsage = 64;

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::NonVanishing: return kExitNonVanishing;
    case Verdict::Vanishing: return kExitVanishing;
    case Verdict::Inconclusive: return kExitUndecided;
  }
  return kExitUndecided;
}

bool is_usage_error(ErrorCode c) {
  switch (c) {
    case ErrorCode::BadPrime:
    case ErrorCode::BadClass:
    case ErrorCode::BadDiscriminant:
    case ErrorCode::BadModulus:
    case ErrorCode::UnsupportedHeckePrime:
    case ErrorCode::NoCatalogEntry:
    case ErrorCode::SchemaError:
      return true;
    default:
      return false;
  }
}

struct Common {
  u64 seed = kDefaultSeed;
  std::string format = "json";
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--seed", c.seed, "seed for randomized root finding")->capture_default_str();
  cmd->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
}

std::string certificate_text(const Certificate& c) {
  std::ostringstream os;
  os << "level " << c.level << ": " << to_string(c.verdict) << " (" << to_string(c.route) << ")";
  if (c.witnesses.contains("reason")) os << " " << c.witnesses["reason"].get<std::string>();
  return os.str();
}

std::string summary_text(const nlohmann::json& s) {
  std::ostringstream os;
  os << "mode " << s["mode"].get<std::string>() << ", class " << s["class"].get<std::string>() << ", bound "
     << s["bound"] << ": " << s["records"] << " primes, " << s["exception_count"] << " exceptions";
  if (s["exception_count"].get<std::size_t>() <= 32) os << " " << s["exceptions"].dump();
  os << ", largest prime " << s["largest_prime"];
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certify non-torsion of Ceresa cycles of X_0(N)"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  // certify
  Common certify_opts;
  u64 level = 0;
  auto* certify = app.add_subcommand("certify", "certify a level N");
  certify->add_option("level", level, "level N >= 1")->required();
  add_common(certify, certify_opts);

  // verify
  std::string verify_path;
  auto* verify = app.add_subcommand("verify", "re-check a certificate JSON file ('-' for stdin)");
  verify->add_option("file", verify_path)->required();

  // sweep
  Common sweep_opts;
  std::string class_spec, mode_name = "certify", out_path;
  u64 bound = 0;
  unsigned jobs = 1;
  bool resume = false, timing = false;
  auto* sweep = app.add_subcommand("sweep", "run a test over the primes of a congruence class");
  sweep->add_option("class", class_spec, "class spec, e.g. '12:7;8:7;7:3,5,6' ('' for all primes)")->required();
  sweep->add_option("bound", bound, "largest prime considered")->required();
  sweep->add_option("--mode", mode_name, "test per prime")
      ->check(CLI::IsMember({"certify", "cmred", "wp-inequality", "bezout"}))
      ->capture_default_str();
  sweep->add_option("--jobs,-j", jobs, "worker threads")->capture_default_str();
  sweep->add_option("--out,-o", out_path, "JSONL output file");
  sweep->add_flag("--resume", resume, "skip primes already present in --out");
  sweep->add_flag("--timing", timing, "record wall time per prime");
  add_common(sweep, sweep_opts);

  // ss-graph
  Common ss_opts;
  u64 ss_p = 0;
  bool dot = false;
  auto* ss = app.add_subcommand("ss-graph", "supersingular 2-isogeny graph in characteristic p");
  ss->add_option("p", ss_p)->required();
  ss->add_flag("--dot", dot, "emit Graphviz DOT");
  add_common(ss, ss_opts);

  // class-number
  std::string disc_text;
  auto* cn = app.add_subcommand("class-number", "class number of an imaginary quadratic discriminant");
  cn->add_option("D", disc_text, "negative discriminant")->required();
  cn->allow_extras(false);

  // shadow
  std::string kind_name;
  i64 shadow_p = 0;
  bool derive = false;
  auto* shadow = app.add_subcommand("shadow", "catalogued shadow divisor");
  shadow->add_option("kind", kind_name, "T2, T3, Wp or Composite")->required();
  shadow->add_option("p", shadow_p)->required();
  shadow->add_flag("--derive", derive, "derive from fixed points and the canonical divisor");

  // bounds
  auto* bounds = app.add_subcommand("bounds", "print the explicit bounds used by the sweeps");
  std::string bounds_format = "json";
  bounds->add_option("--format", bounds_format)->check(CLI::IsMember({"json", "text"}));

  // isotypic
  std::string data_path;
  std::vector<i64> image_primes = {2};
  auto* iso = app.add_subcommand("isotypic", "Hecke-isotypic components of shadow points");
  iso->add_option("--data", data_path, "eigen-data JSON")->required();
  iso->add_option("--images", image_primes, "Hecke primes applied to each shadow")->capture_default_str();

  // A leading '-' would read as an option; accept "class-number -47".
  std::vector<std::string> args(argv + 1, argv + argc);
  if (args.size() >= 2 && args[0] == "class-number" && args[1].size() > 1 && args[1][0] == '-' &&
      std::isdigit(static_cast<unsigned char>(args[1][1])))
    args.insert(args.begin() + 1, "--");
  std::reverse(args.begin(), args.end());

  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*certify) {
      if (level < 1) {
        std::cerr << "error: level must be >= 1\n";
        return kExitUsage;
      }
      CertifyOptions opt;
      opt.seed = certify_opts.seed;
      Certificate c = certify_level(level, opt);
      if (certify_opts.format == "json") std::cout << c.to_json().dump() << "\n";
      else std::cout << certificate_text(c) << "\n";
      return exit_code(c.verdict);
    }

    if (*verify) {
      nlohmann::json j;
      if (verify_path == "-") {
        j = nlohmann::json::parse(std::cin);
      } else {
        std::ifstream in(verify_path);
        if (!in) throw Error(ErrorCode::SchemaError, verify_path + ": cannot open");
        j = nlohmann::json::parse(in);
      }
      Certificate c = Certificate::from_json(j);
      bool ok = verify_certificate(c);
      std::cout << (ok ? "verified" : "not verified") << "\n";
      return ok ? 0 : kExitFailure;
    }

    if (*sweep) {
      ClassSpec spec = ClassSpec::parse(class_spec);
      SweepMode mode = parse_sweep_mode(mode_name);
      std::vector<u64> primes = primes_in_class(bound, spec);
      std::size_t class_primes = primes.size();
      if (mode == SweepMode::Bezout) primes = bezout_candidates(primes);
      if (mode == SweepMode::WpInequality) {
        std::erase_if(primes, [](u64 p) { return p % 12 != 11; });
        class_primes = primes.size();
      }
      SweepOptions so;
      so.certify.seed = sweep_opts.seed;
      so.jobs = jobs;
      so.timing = timing;
      std::vector<SweepRecord> records;
      if (!out_path.empty()) {
        records = run_sweep_to_file(mode, primes, so, out_path, resume);
      } else {
        records = run_sweep(mode, primes, so, [&](const SweepRecord& r) {
          if (sweep_opts.format == "json") std::cout << r.to_json().dump() << "\n";
        });
      }
      nlohmann::json s = summarize(records).to_json();
      s["mode"] = mode_name;
      s["class"] = spec.to_string();
      s["bound"] = bound;
      s["class_primes"] = class_primes;
      s["seed"] = sweep_opts.seed;
      s["tool_version"] = kToolVersion;
      if (sweep_opts.format == "json") std::cout << nlohmann::json{{"summary", s}}.dump() << "\n";
      else std::cout << summary_text(s) << "\n";
      return 0;
    }

    if (*ss) {
      if (!is_prime(ss_p) || ss_p < 5) throw Error(ErrorCode::BadPrime, "p must be a prime >= 5");
      SSGraph g = enumerate_ss(ss_p, ss_opts.seed);
      if (dot) {
        std::cout << to_dot(g);
        return 0;
      }
      if (ss_opts.format == "text") {
        std::cout << g.nodes.size() << " supersingular j-invariants mod " << ss_p << "\n";
        for (const auto& j : g.nodes) std::cout << j.to_string() << "\n";
        return 0;
      }
      nlohmann::json nodes = nlohmann::json::array(), edges = nlohmann::json::array();
      for (const auto& j : g.nodes) nodes.push_back({j.re, j.im});
      for (std::size_t i = 0; i < g.nodes.size(); ++i)
        for (const auto& [k, m] : g.edges[i])
          if (k >= i) edges.push_back({i, k, m});
      std::cout << nlohmann::json{{"p", ss_p},     {"field_m", g.field.m}, {"count", g.nodes.size()},
                                  {"nodes", nodes}, {"edges", edges},       {"seed", ss_opts.seed}}
                       .dump()
                << "\n";
      return 0;
    }

    if (*cn) {
      i64 D = 0;
      try {
        std::size_t pos = 0;
        D = std::stoll(disc_text, &pos);
        if (pos != disc_text.size()) throw std::invalid_argument(disc_text);
      } catch (const std::exception&) {
        std::cerr << "error: '" << disc_text << "' is not an integer\n";
        return kExitUsage;
      }
      require_discriminant(D);
      ClassNumberCache cache;
      std::cout << cache(D) << "\n";
      return 0;
    }

    if (*shadow) {
      ShadowKind kind = parse_shadow_kind(kind_name);
      if (derive) {
        ScaledShadow sh;
        switch (kind) {
          case ShadowKind::T2: sh = shadow_derive(2, shadow_p); break;
          case ShadowKind::T3: sh = shadow_derive(3, shadow_p); break;
          case ShadowKind::Wp: sh = shadow_derive_wp(shadow_p); break;
          case ShadowKind::Composite:
            throw Error(ErrorCode::NoCatalogEntry, "composite shadows are catalogued only");
        }
        std::cout << sh.to_string() << "\n";
      } else {
        std::cout << shadow_catalog(kind, shadow_p).to_string() << "\n";
      }
      return 0;
    }

    if (*bounds) {
      std::ostringstream b;
      b << theorem2_bound();
      double nr = bezout_prime_bound(false), r = bezout_prime_bound(true);
      if (bounds_format == "json") {
        std::cout << nlohmann::json{{"theorem2_bound", b.str()},
                                    {"bezout_bound_nonresidue11", static_cast<i64>(nr)},
                                    {"bezout_bound_residue11", static_cast<i64>(r)}}
                         .dump()
                  << "\n";
      } else {
        std::cout << "theorem2_bound " << b.str() << "\n"
                  << "bezout_bound_nonresidue11 " << static_cast<i64>(nr) << "\n"
                  << "bezout_bound_residue11 " << static_cast<i64>(r) << "\n";
      }
      return 0;
    }

    if (*iso) {
      EigenData data = ingest_eigendata(data_path);
      if (data.shadows.empty()) throw Error(ErrorCode::SchemaError, data_path + ": no shadows given");
      IsotypicSolution sol = isotypic_solve(data, data.shadows, image_primes);
      nlohmann::json comps = nlohmann::json::array();
      for (const auto& s : sol.sources)
        for (const auto& t : sol.targets) {
          nlohmann::json coords = nlohmann::json::array();
          for (const auto& x : sol.value.at({s, t})) coords.push_back(x.to_string());
          comps.push_back({{"s", s}, {"t", t}, {"zero", sol.is_zero(s, t)}, {"coordinates", coords}});
        }
      std::cout << nlohmann::json{{"level", data.level}, {"shadow_scale", data.shadow_scale}, {"components", comps}}
                       .dump(2)
                << "\n";
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
    return is_usage_error(e.code()) ? kExitUsage : kExitFailure;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}
