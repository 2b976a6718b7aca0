#pragma once

// harmonic-census command-line front end. Kept in a header so the tests can
// drive it in-process; tools/main.cpp is a thin wrapper.
//
// Exit codes: 0 ok/equivalent, 1 mismatch/inequivalent, 2 usage,
// 3 budget exceeded, 4 conjecture counterexample found.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "harmonic/harmonic.hpp"

namespace harmonic::cli {

enum ExitCode : int { kOk = 0, kMismatch = 1, kUsage = 2, kBudget = 3, kCounterexample = 4 };

struct RunConfig {
  std::string command;
  std::int64_t n = 0;
  std::optional<std::int64_t> d;
  std::string gens;
  std::string gens_a;
  std::string gens_b;
  std::string format;
  std::string output_path;
  std::uint64_t max_subsets = 10'000'000;
  std::int64_t max_symmetry_n = 31;
  unsigned threads = 0;
  bool seed_check = false;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

namespace detail {

using ordered_json = nlohmann::ordered_json;

inline std::vector<std::int64_t> parse_int_list(const std::string& text, const char* what) {
  std::vector<std::int64_t> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    std::int64_t value = 0;
    try {
      value = std::stoll(item, &used);
    } catch (const std::exception&) {
      throw UsageError(std::string("malformed ") + what + ": '" + text + "'");
    }
    if (used != item.size()) throw UsageError(std::string("malformed ") + what + ": '" + text + "'");
    out.push_back(value);
  }
  if (out.empty()) throw UsageError(std::string("missing ") + what);
  return out;
}

inline PrimeModulus parse_modulus(std::int64_t n) {
  if (n < 2 || n > PrimeModulus::kMaxValue || !is_prime(static_cast<std::uint64_t>(n))) {
    throw UsageError("N must be prime (got " + std::to_string(n) + ")");
  }
  return PrimeModulus(n);
}

inline std::int64_t require_dimension(const RunConfig& cfg, const PrimeModulus& modulus) {
  if (!cfg.d) throw UsageError("--d is required for '" + cfg.command + "'");
  if (*cfg.d < 1 || *cfg.d > modulus.value()) {
    throw UsageError("d must satisfy 1 <= d <= N (got d=" + std::to_string(*cfg.d) + ")");
  }
  return *cfg.d;
}

inline GeneratorSet parse_generators(const RunConfig& cfg, const PrimeModulus& modulus, const std::string& text,
                                     const char* what) {
  auto values = parse_int_list(text, what);
  try {
    GeneratorSet s(modulus, std::move(values));
    if (cfg.d && static_cast<std::int64_t>(s.size()) != *cfg.d) {
      throw UsageError(std::string(what) + " must have exactly d elements");
    }
    return s;
  } catch (const DomainError& e) {
    throw UsageError(std::string(what) + ": " + e.what());
  }
}

inline std::vector<std::int64_t> to_vector(std::span<const std::int64_t> xs) { return {xs.begin(), xs.end()}; }

inline std::string join(std::span<const std::int64_t> xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + std::to_string(xs[i]);
  return out + "]";
}

inline std::string format_or(const RunConfig& cfg, const char* fallback) {
  return cfg.format.empty() ? fallback : cfg.format;
}

inline void require_format(const std::string& format, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (format == a) return;
  }
  throw UsageError("unsupported --format '" + format + "' for this command");
}

inline EnumerationOptions enumeration_options(const RunConfig& cfg) { return {cfg.max_subsets, cfg.threads}; }

inline int cmd_count(const RunConfig& cfg, std::ostream& out) {
  const auto modulus = parse_modulus(cfg.n);
  const auto d = require_dimension(cfg, modulus);
  const auto format = format_or(cfg, "table");
  require_format(format, {"table", "json"});

  const Census census = compute_census(modulus, d);
  const BigInt total = count_harmonic_frames(modulus, d);
  const char* note = d == 1 ? "d = 1: the orbits of [0] and [1]"
                     : d == modulus.value() ? "d = N: a single orbit"
                                            : nullptr;

  auto beta_of = [&](std::int64_t c) -> std::string {
    if (c == 1) return to_decimal(BigInt(census.gamma.at(1) * modulus.units_order()));
    return to_decimal(census.beta.at(c));
  };

  if (format == "json") {
    ordered_json doc;
    doc["N"] = modulus.value();
    doc["d"] = d;
    doc["total"] = to_decimal(total);
    auto rows = ordered_json::array();
    for (const auto& [c, g] : census.gamma) {
      rows.push_back({{"c", c}, {"orbit_size", census.orbit_size(c)}, {"beta", beta_of(c)}, {"gamma", to_decimal(g)}});
    }
    doc["rows"] = std::move(rows);
    if (note) doc["note"] = note;
    out << doc.dump() << "\n";
  } else {
    out << "N=" << modulus.value() << " d=" << d << " total=" << total << "\n";
    out << "c\torbit_size\tbeta\tgamma\n";
    for (const auto& [c, g] : census.gamma) {
      out << c << "\t" << census.orbit_size(c) << "\t" << beta_of(c) << "\t" << g << "\n";
    }
    if (note) out << "note: " << note << "\n";
  }
  return kOk;
}

inline ordered_json record_json(const OrbitRecord& r) {
  const StructuredForm form = structured_form(r.rep);
  ordered_json doc;
  doc["rep"] = to_vector(r.rep.elems());
  doc["size"] = r.size;
  doc["c"] = r.stab_order;
  doc["stabilizer"] = r.stabilizer;
  doc["form"] = {{"kind", to_string(form.kind)}, {"c", form.c}, {"leaders", form.block_leaders}};
  return doc;
}

inline int cmd_enumerate(const RunConfig& cfg, std::ostream& out) {
  const auto modulus = parse_modulus(cfg.n);
  const auto d = require_dimension(cfg, modulus);
  const auto format = format_or(cfg, "table");
  require_format(format, {"table", "json"});

  const auto records = enumerate_orbits(modulus, d, enumeration_options(cfg));
  if (format == "json") {
    for (const auto& r : records) out << record_json(r).dump() << "\n";
  } else {
    out << "rep\tsize\tc\tform\n";
    for (const auto& r : records) {
      const StructuredForm form = structured_form(r.rep);
      out << r.rep.to_string() << "\t" << r.size << "\t" << r.stab_order << "\t" << to_string(form.kind)
          << " c=" << form.c << " leaders=" << join(form.block_leaders) << "\n";
    }
  }
  return kOk;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  const auto modulus = parse_modulus(cfg.n);
  const auto d = require_dimension(cfg, modulus);
  const auto format = format_or(cfg, "table");
  require_format(format, {"table", "json"});

  const Census census = compute_census(modulus, d);
  const BigInt formula_total = count_harmonic_frames(modulus, d);
  const auto records = enumerate_orbits(modulus, d, enumeration_options(cfg));

  std::map<std::int64_t, BigInt> enumerated;
  for (const auto& [c, g] : census.gamma) enumerated[c] = 0;
  for (const auto& r : records) enumerated[r.stab_order] += 1;
  std::map<std::int64_t, BigInt> formula;
  for (const auto& [c, g] : census.gamma) formula[c] = g;
  for (const auto& [c, g] : enumerated) formula.try_emplace(c, 0);

  const BigInt enumerated_total = records.size();
  const bool match = formula == enumerated && formula_total == enumerated_total;

  if (format == "json") {
    ordered_json doc;
    doc["N"] = modulus.value();
    doc["d"] = d;
    doc["match"] = match;
    doc["formula_total"] = to_decimal(formula_total);
    doc["enumerated_total"] = to_decimal(enumerated_total);
    auto rows = ordered_json::array();
    for (const auto& [c, g] : formula) {
      rows.push_back({{"c", c},
                      {"orbit_size", modulus.units_order() / c},
                      {"formula", to_decimal(g)},
                      {"enumerated", to_decimal(enumerated.at(c))}});
    }
    doc["rows"] = std::move(rows);
    out << doc.dump() << "\n";
  } else {
    out << "N=" << modulus.value() << " d=" << d << "\n";
    out << "c\torbit_size\tformula\tenumerated\n";
    for (const auto& [c, g] : formula) {
      out << c << "\t" << modulus.units_order() / c << "\t" << g << "\t" << enumerated.at(c)
          << (g == enumerated.at(c) ? "" : "\tDIFF") << "\n";
    }
    out << "total\t-\t" << formula_total << "\t" << enumerated_total << "\n";
    out << (match ? "match" : "MISMATCH") << " total=" << formula_total << "\n";
  }
  return match ? kOk : kMismatch;
}

inline int cmd_frame(const RunConfig& cfg, std::ostream& out) {
  const auto modulus = parse_modulus(cfg.n);
  const auto s = parse_generators(cfg, modulus, cfg.gens, "--gens");
  const auto format = format_or(cfg, "json");
  require_format(format, {"json", "csv"});
  out << export_frame(build_frame(s), parse_export_format(format));
  return kOk;
}

inline int cmd_equivalent(const RunConfig& cfg, std::ostream& out) {
  const auto modulus = parse_modulus(cfg.n);
  const auto a = parse_generators(cfg, modulus, cfg.gens_a, "--a");
  const auto b = parse_generators(cfg, modulus, cfg.gens_b, "--b");
  require_format(format_or(cfg, "json"), {"json"});
  if (a.size() != b.size()) throw UsageError("--a and --b must have the same number of generators");

  const EquivalenceVerdict verdict = are_equivalent(a, b);
  ordered_json doc;
  doc["N"] = modulus.value();
  doc["a"] = to_vector(a.elems());
  doc["b"] = to_vector(b.elems());
  doc["equivalent"] = verdict.equivalent;
  if (verdict.witness) {
    doc["m0"] = verdict.witness->m0;
    doc["coordinate_perm"] = verdict.witness->coordinate_perm;
  } else {
    doc["certificate"] = to_string(*verdict.certificate);
    doc["canonical_a"] = to_vector(canonical_rep(a).elems());
    doc["canonical_b"] = to_vector(canonical_rep(b).elems());
    doc["angles_differ"] = verdict.angles_differ;
  }
  out << doc.dump() << "\n";
  return verdict.equivalent ? kOk : kMismatch;
}

inline SymmetryOptions symmetry_options(const RunConfig& cfg) {
  SymmetryOptions options;
  options.max_n = cfg.max_symmetry_n;
  return options;
}

inline int cmd_symmetry(const RunConfig& cfg, std::ostream& out) {
  const auto modulus = parse_modulus(cfg.n);
  const auto s = parse_generators(cfg, modulus, cfg.gens, "--gens");
  require_format(format_or(cfg, "json"), {"json"});

  const SymmetryReport report = full_symmetry_group(s, symmetry_options(cfg));
  ordered_json doc;
  doc["N"] = modulus.value();
  doc["d"] = s.size();
  doc["generators"] = to_vector(s.elems());
  doc["stabilizer_order"] = report.stab_order;
  doc["diagonal_generator"] = report.diagonal_generator;
  doc["q_slot_perm"] = report.q_slot_perm;
  doc["q_order"] = report.q_order;
  doc["conjugation_relation"] = report.conjugation_relation;
  doc["subgroup_order"] = report.subgroup_order;
  doc["full_group_order"] = to_decimal(*report.full_group_order);
  doc["conjecture_holds"] = *report.conjecture_holds;
  out << doc.dump() << "\n";
  return kOk;
}

inline ordered_json scan_row_json(const ScanRow& row) {
  return {{"rep", to_vector(row.rep.elems())},
          {"c", row.stab_order},
          {"subgroup_order", row.subgroup_order},
          {"full_group_order", to_decimal(row.full_group_order)},
          {"conjecture_holds", row.conjecture_holds}};
}

inline int cmd_scan(const RunConfig& cfg, std::ostream& out) {
  const auto modulus = parse_modulus(cfg.n);
  const auto d = require_dimension(cfg, modulus);
  const auto format = format_or(cfg, "table");
  require_format(format, {"table", "json"});

  const ConjectureScan scan = conjecture_scan(modulus, d, enumeration_options(cfg), symmetry_options(cfg));
  if (format == "json") {
    for (const auto& row : scan.rows) out << scan_row_json(row).dump() << "\n";
  } else {
    out << "rep\tc\tsubgroup_order\tfull_group_order\tconjecture_holds\n";
    for (const auto& row : scan.rows) {
      out << row.rep.to_string() << "\t" << row.stab_order << "\t" << row.subgroup_order << "\t"
          << row.full_group_order << "\t" << (row.conjecture_holds ? "yes" : "NO") << "\n";
    }
  }
  for (const auto& row : scan.counterexamples) {
    ordered_json record;
    record["counterexample"] = scan_row_json(row);
    record["counterexample"]["N"] = modulus.value();
    record["counterexample"]["d"] = d;
    out << record.dump() << "\n";
  }
  return scan.counterexamples.empty() ? kOk : kCounterexample;
}

/// Reproduces the closed forms for d = 2 and d = 3 and the worked d = 3 census.
inline int seed_check(std::ostream& out) {
  int failures = 0;
  auto report = [&](const std::string& name, bool ok) {
    out << (ok ? "ok      " : "MISMATCH ") << name << "\n";
    if (!ok) ++failures;
  };

  bool d2 = true;
  bool d3 = true;
  for (std::int64_t n = 3; n <= 997; ++n) {
    if (!is_prime(static_cast<std::uint64_t>(n))) continue;
    const PrimeModulus modulus(n);
    d2 = d2 && count_harmonic_frames(modulus, 2) == (n + 1) / 2;
    if (n >= 5) {
      const std::int64_t expected = n % 3 == 1 ? (n * n - 2 * n + 7) / 6 : (n * n - 2 * n + 3) / 6;
      d3 = d3 && count_harmonic_frames(modulus, 3) == expected;
    }
  }
  report("d=2 count (N+1)/2 for primes 3..997", d2);
  report("d=3 count by N mod 3 for primes 5..997", d3);

  for (std::int64_t n : {7, 13, 19, 31}) {
    const PrimeModulus modulus(n);
    const Census c = compute_census(modulus, 3);
    const bool ok = c.beta.at(3) == BigRational(n - 1, 3) && c.beta.at(2) == BigRational(n - 1, 2) &&
                    c.gamma.at(3) == 1 && c.gamma.at(2) == 1 && c.gamma.at(1) == (n * n - 2 * n - 5) / 6;
    report("d=3 census at N=" + std::to_string(n), ok);
  }

  for (auto [n, d] : {std::pair<std::int64_t, std::int64_t>{5, 2}, {7, 3}, {11, 4}, {13, 4}}) {
    const PrimeModulus modulus(n);
    const auto records = enumerate_orbits(modulus, d);
    report("enumeration agrees with census at N=" + std::to_string(n) + " d=" + std::to_string(d),
           BigInt(records.size()) == count_harmonic_frames(modulus, d));
  }
  return failures == 0 ? kOk : kMismatch;
}

inline int dispatch(const RunConfig& cfg, std::ostream& out) {
  if (cfg.command == "count") return cmd_count(cfg, out);
  if (cfg.command == "enumerate") return cmd_enumerate(cfg, out);
  if (cfg.command == "verify") return cmd_verify(cfg, out);
  if (cfg.command == "frame") return cmd_frame(cfg, out);
  if (cfg.command == "equivalent") return cmd_equivalent(cfg, out);
  if (cfg.command == "symmetry") return cmd_symmetry(cfg, out);
  if (cfg.command == "scan") return cmd_scan(cfg, out);
  throw UsageError("unknown command '" + cfg.command + "'");
}

}  // namespace detail

/// Parses `args` (without the program name) and runs the command.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  if (const char* env = std::getenv("HC_MAX_SUBSETS")) {
    try {
      cfg.max_subsets = std::stoull(env);
    } catch (const std::exception&) {
      err << "error: HC_MAX_SUBSETS must be a nonnegative integer\n";
      return kUsage;
    }
  }

  CLI::App app{"Count, enumerate and analyze harmonic frames of prime order", "harmonic-census"};
  app.add_flag("--seed-check", cfg.seed_check, "Run the built-in reference checks")->group("");
  app.require_subcommand(0, 1);

  struct Spec {
    const char* name;
    const char* help;
    bool needs_d;
    bool gens;
    bool pair;
  };
  const Spec specs[] = {
      {"count", "Orbit census by stabilizer order", true, false, false},
      {"enumerate", "List every orbit by brute force", true, false, false},
      {"verify", "Compare the census against brute-force enumeration", true, false, false},
      {"frame", "Export the frame for a generator set", false, true, false},
      {"equivalent", "Decide unitary equivalence of two generator sets", false, false, true},
      {"symmetry", "Guaranteed subgroup and full symmetry group", false, true, false},
      {"scan", "Symmetry groups of every orbit representative", true, false, false},
  };
  std::int64_t d_value = 0;
  for (const Spec& spec : specs) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.help);
    sub->add_option("--N", cfg.n, "Prime number of frame vectors")->required();
    auto* d_opt = sub->add_option("--d", d_value, "Dimension");
    if (spec.needs_d) d_opt->required();
    if (spec.gens) sub->add_option("--gens", cfg.gens, "Comma-separated generators")->required();
    if (spec.pair) {
      sub->add_option("--a", cfg.gens_a, "First generator set")->required();
      sub->add_option("--b", cfg.gens_b, "Second generator set")->required();
    }
    sub->add_option("--format", cfg.format, "json, csv or table");
    sub->add_option("--out", cfg.output_path, "Write output to PATH");
    sub->add_option("--max-subsets", cfg.max_subsets, "Enumeration budget (subsets)");
    sub->add_option("--max-symmetry-n", cfg.max_symmetry_n, "Largest N for brute-force symmetry groups");
    sub->add_option("--threads", cfg.threads, "Worker threads (default: all cores)");
    sub->callback([&cfg, &d_value, d_opt, name = std::string(spec.name)] {
      cfg.command = name;
      if (d_opt->count() > 0) cfg.d = d_value;
    });
  }

  std::vector<std::string> argv_storage{"harmonic-census"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (!cfg.output_path.empty()) {
    file.open(cfg.output_path, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << cfg.output_path << "\n";
      return kUsage;
    }
    sink = &file;
  }

  try {
    if (cfg.seed_check) return detail::seed_check(*sink);
    if (cfg.command.empty()) {
      err << app.help();
      return kUsage;
    }
    return detail::dispatch(cfg, *sink);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const BudgetExceededError& e) {
    err << "error: " << e.what() << "\n";
    return kBudget;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace harmonic::cli
