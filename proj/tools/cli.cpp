#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "wiresafe/audit.hpp"
#include "wiresafe/bench.hpp"
#include "wiresafe/coset.hpp"
#include "wiresafe/netsim.hpp"
#include "wiresafe/random.hpp"
#include "wiresafe/rankmetric.hpp"
#include "wiresafe/serialize.hpp"

namespace wiresafe {

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kInsecure = 2;

struct UsageError : Error {
  using Error::Error;
};

struct RunConfig {
  std::string subcommand;
  std::optional<int> m;
  std::optional<std::string> modulus;
  std::optional<std::size_t> n;
  std::optional<std::size_t> mu;
  std::optional<std::size_t> k;
  std::optional<std::string> graph;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> budget;
  std::vector<int> wiretap;
  std::optional<std::string> out;
  std::optional<std::string> code;
  std::string scheme = "gabidulin";
  std::vector<std::string> generators;
  std::vector<std::string> message;
  std::size_t iters = 2000;
  std::size_t batches = 15;
  std::vector<std::size_t> lengths{8, 16, 32};
};

Budget resolve_budget(const RunConfig& cfg) {
  if (cfg.budget) return Budget::uniform(*cfg.budget);
  if (const char* env = std::getenv("WIRESAFE_BUDGET"); env != nullptr && *env != '\0') {
    try {
      std::size_t pos = 0;
      const auto value = std::stoull(env, &pos);
      if (pos != std::string(env).size()) throw std::invalid_argument(env);
      return Budget::uniform(value);
    } catch (const std::exception&) {
      throw UsageError(std::string("WIRESAFE_BUDGET is not a number: '") + env + "'");
    }
  }
  return {};
}

FieldSpec resolve_field(const RunConfig& cfg, int default_m = 3) {
  const int m = cfg.m.value_or(default_m);
  if (cfg.modulus) return FieldSpec(m, parse_hex(*cfg.modulus));
  return FieldSpec::standard(m);
}

/// Fills in n, k and mu. Defaults: n = 3 (or `default_n`), mu = n - 1.
struct CodeParams {
  std::size_t n, k, mu;
};

CodeParams resolve_params(const RunConfig& cfg, std::optional<std::size_t> default_n = std::nullopt) {
  const std::size_t n = cfg.n.value_or(default_n.value_or(3));
  if (n == 0) throw UsageError("--n must be positive");
  if (cfg.k && cfg.mu && *cfg.k + *cfg.mu != n) throw UsageError("--k and --mu must add up to --n");
  std::size_t k;
  if (cfg.k) k = *cfg.k;
  else if (cfg.mu) {
    if (*cfg.mu > n) throw UsageError("--mu exceeds --n");
    k = n - *cfg.mu;
  } else k = 1;
  if (k > n) throw UsageError("--k exceeds --n");
  return {n, k, n - k};
}

/// Scheme named by --scheme over the configured field.
struct BuiltScheme {
  CosetScheme scheme;
  Json doc;
};

BuiltScheme build_scheme(const RunConfig& cfg, const FieldSpec& spec, const CodeParams& p, const Budget& budget) {
  if (cfg.scheme == "gabidulin") {
    std::optional<std::vector<Word>> gens;
    if (!cfg.generators.empty()) {
      gens.emplace();
      for (const auto& g : cfg.generators) gens->push_back(parse_hex(g));
    }
    GabidulinCode code = build_gabidulin(spec, p.n, p.k, std::move(gens));
    Json doc = scheme_to_json(code);
    return {CosetScheme(code), std::move(doc)};
  }
  if (cfg.scheme == "cleartext") {
    CosetScheme s = cleartext_scheme(spec, p.n, p.k);
    return {s, scheme_to_json("cleartext", s.parity_check())};
  }
  if (cfg.scheme == "mds") {
    CosetScheme s = build_mds_baseline(spec, p.n, p.mu, budget.enumeration);
    return {s, scheme_to_json("mds", s.parity_check())};
  }
  throw UsageError("unknown --scheme '" + cfg.scheme + "' (expected gabidulin, cleartext or mds)");
}

Json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot open '" + path + "'");
  try {
    return Json::parse(f);
  } catch (const Json::exception& e) {
    throw UsageError("'" + path + "' is not valid JSON: " + e.what());
  }
}

CosetScheme load_or_build_scheme(const RunConfig& cfg, const Budget& budget) {
  if (cfg.code) return scheme_from_json(read_json_file(*cfg.code));
  const FieldSpec spec = resolve_field(cfg);
  return build_scheme(cfg, spec, resolve_params(cfg), budget).scheme;
}

Network load_network(const RunConfig& cfg) {
  const std::string source = cfg.graph.value_or("butterfly");
  if (std::filesystem::exists(source)) return network_from_json(read_json_file(source));
  if (source == "butterfly" || source == "line" || source == "diamond") return builtin_network(source);
  throw UsageError("--graph '" + source + "' is neither a file nor a built-in network (butterfly, line, diamond)");
}

/// Writes `text` to --out when given, otherwise to `out`.
void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
  if (!cfg.out) {
    out << text;
    return;
  }
  std::ofstream f(*cfg.out, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + *cfg.out + "'");
  f << text;
}

Json config_json(const CosetScheme& s, std::uint64_t seed) {
  return {{"field", field_to_json(s.spec())}, {"n", s.n()}, {"k", s.k()}, {"mu", s.mu()}, {"seed", seed}};
}

Json bits_json(std::uint64_t mask, std::size_t n) {
  Json row = Json::array();
  for (std::size_t i = 0; i < n; ++i) row.push_back(static_cast<int>((mask >> i) & 1U));
  return row;
}

int cmd_construct(const RunConfig& cfg, std::ostream& out, const Budget& budget) {
  const FieldSpec spec = resolve_field(cfg);
  const BuiltScheme built = build_scheme(cfg, spec, resolve_params(cfg), budget);
  const std::string text = built.doc.dump(2) + "\n";
  if (cfg.out) {
    emit(cfg, out, text);
    for (const auto& row : built.doc.at("H")) {
      for (std::size_t c = 0; c < row.size(); ++c) out << (c ? " " : "") << row.at(c).get<std::string>();
      out << "\n";
    }
  } else {
    out << text;
  }
  return kOk;
}

/// Line-by-line transform; malformed lines are reported and skipped.
template <typename Fn>
int stream_lines(const RunConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err, Fn&& fn) {
  std::ostringstream buffer;
  std::string line;
  std::size_t line_no = 0;
  bool failed = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      buffer << fn(Json::parse(line)).dump() << "\n";
    } catch (const std::exception& e) {
      err << "line " << line_no << ": " << e.what() << "\n";
      failed = true;
    }
  }
  emit(cfg, out, buffer.str());
  return failed ? kUsage : kOk;
}

ExtVector message_vector(const Json& j, const FieldSpec& spec, std::size_t expected, const char* what) {
  const Json& values = j.is_object() && j.contains(what) ? j.at(what) : j;
  ExtVector v = vector_from_json(values, spec);
  if (v.size() != expected)
    throw Error(std::string(what) + " has " + std::to_string(v.size()) + " symbols, expected " + std::to_string(expected));
  for (auto w : v.values())
    if (!spec.contains(w)) throw Error("symbol " + to_hex(w) + " is not in GF(2^" + std::to_string(spec.m()) + ")");
  return v;
}

int cmd_encode(const RunConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err, const Budget& budget) {
  const CosetScheme scheme = load_or_build_scheme(cfg, budget);
  Rng rng(cfg.seed);
  return stream_lines(cfg, in, out, err, [&](const Json& j) {
    return vector_to_json(scheme.encode(message_vector(j, scheme.spec(), scheme.k(), "message"), rng));
  });
}

int cmd_decode(const RunConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err, const Budget& budget) {
  const CosetScheme scheme = load_or_build_scheme(cfg, budget);
  return stream_lines(cfg, in, out, err, [&](const Json& j) {
    return vector_to_json(scheme.decode(message_vector(j, scheme.spec(), scheme.n(), "codeword")));
  });
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out, const Budget& budget) {
  const Network net = load_network(cfg);
  if (!net.topological_order()) throw Error("network has a cycle");
  const std::size_t cut = mincut(net);
  const FieldSpec spec = resolve_field(cfg);
  const CodeParams p = resolve_params(cfg, cut == 0 ? 1 : cut);
  const CosetScheme scheme = build_scheme(cfg, spec, p, budget).scheme;
  const LinearNetworkCode code = assign_random_code(net, p.n, cfg.seed);

  Rng rng(cfg.seed);
  ExtVector message = cfg.message.empty() ? draw_vector(rng, spec, p.k)
                                          : message_vector(Json(cfg.message), spec, p.k, "message");
  const ExtVector x = scheme.encode(message, rng);
  const Transmission tx = transmit(code, x);

  Json doc = config_json(scheme, cfg.seed);
  doc["network"] = network_to_json(net);
  doc["mincut"] = cut;
  Json edges = Json::array();
  for (std::size_t e = 0; e < net.edge_count(); ++e)
    edges.push_back({{"id", net.edges()[e].id},
                     {"global", bits_json(code.global(e), p.n)},
                     {"packet", to_hex(tx.edge_packets[e])}});
  doc["edges"] = std::move(edges);
  doc["message"] = vector_to_json(message);
  doc["codeword"] = vector_to_json(x);

  bool all_ok = true;
  Json sinks = Json::array();
  for (std::size_t i = 0; i < net.sinks().size(); ++i) {
    const std::size_t t = net.sinks()[i];
    Json row = {{"sink", net.nodes()[t]},
                {"max_flow", max_flow(net, t)},
                {"rank", rank_base_matrix(code.transfer_matrix(t))},
                {"received", vector_to_json(tx.received[i])}};
    bool ok = false;
    try {
      const ExtVector decoded = scheme.decode(sink_decode(code, t, tx.received[i]));
      row["decoded"] = vector_to_json(decoded);
      ok = decoded == message;
    } catch (const SingularMatrix&) {
      row["decoded"] = nullptr;
    }
    row["success"] = ok;
    all_ok = all_ok && ok;
    sinks.push_back(std::move(row));
  }
  doc["feasible"] = is_feasible(code);
  doc["sinks"] = std::move(sinks);

  if (!cfg.wiretap.empty()) {
    const BaseMatrix b = wiretap_matrix(code, cfg.wiretap);
    std::vector<int> ids = cfg.wiretap;
    std::sort(ids.begin(), ids.end());
    doc["wiretap"] = {{"edges", ids}, {"B", matrix_to_json(b)}, {"W", vector_to_json(multiply(b, x))}};
  }
  doc["success"] = all_ok;
  emit(cfg, out, doc.dump(2) + "\n");
  return all_ok ? kOk : kInsecure;
}

int cmd_audit(const RunConfig& cfg, std::ostream& out, const Budget& budget) {
  Json doc;
  SecrecyReport report;
  if (cfg.graph) {
    const Network net = load_network(cfg);
    const std::size_t cut = mincut(net);
    const CosetScheme scheme = cfg.code ? scheme_from_json(read_json_file(*cfg.code))
                                        : build_scheme(cfg, resolve_field(cfg), resolve_params(cfg, cut == 0 ? 1 : cut),
                                                       budget).scheme;
    const LinearNetworkCode code = assign_random_code(net, scheme.n(), cfg.seed);
    doc = config_json(scheme, cfg.seed);
    doc["network"] = network_to_json(net);
    doc["feasible"] = is_feasible(code);
    if (cfg.wiretap.empty()) {
      report = audit_network(code, scheme, scheme.mu(), budget);
    } else {
      SecrecyEntry e = exhaustive_secrecy(scheme, wiretap_matrix(code, cfg.wiretap), budget.joint);
      e.edges = cfg.wiretap;
      std::sort(e.edges.begin(), e.edges.end());
      report.sets_audited = 1;
      report.singular_stacks = e.stack_nonsingular ? 0 : 1;
      report.secure = e.independent;
      if (!e.independent) report.failures.push_back(0);
      report.entries.push_back(std::move(e));
    }
  } else {
    const CosetScheme scheme = load_or_build_scheme(cfg, budget);
    doc = config_json(scheme, cfg.seed);
    report = audit_full_rank(scheme, scheme.mu(), budget);
  }
  const Json r = report_to_json(report);
  doc["entries"] = r.at("entries");
  doc["summary"] = r.at("summary");
  emit(cfg, out, doc.dump(2) + "\n");
  return report.secure ? kOk : kInsecure;
}

int cmd_bench(const RunConfig& cfg, std::ostream& out) {
  const FieldSpec spec = resolve_field(cfg, 8);
  BenchConfig bc;
  bc.lengths = cfg.lengths;
  bc.iterations = cfg.iters;
  bc.batches = cfg.batches;
  bc.seed = cfg.seed;
  const BenchResult r = run_bench(spec, bc);
  Json points = Json::array();
  for (const auto& p : r.points)
    points.push_back({{"n", p.n}, {"k", p.k}, {"work", p.work()}, {"encode_ns", p.encode_ns}, {"decode_ns", p.decode_ns}});
  auto fit = [](const LinearFit& f) { return Json{{"slope", f.slope}, {"intercept", f.intercept}, {"r2", f.r2}}; };
  Json doc = {{"field", field_to_json(spec)},
              {"iterations", bc.iterations},
              {"batches", bc.batches},
              {"seed", bc.seed},
              {"mul_ns", r.mul_ns},
              {"points", std::move(points)},
              {"encode_fit", fit(r.encode_fit)},
              {"decode_fit", fit(r.decode_fit)}};
  emit(cfg, out, doc.dump(2) + "\n");
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Universal secure network coding: Gabidulin coset schemes, network simulation and exact audits",
               "wiresafe"};
  app.fallthrough();
  app.require_subcommand(1, 1);

  app.add_option("--m", cfg.m, "Extension degree m of GF(2^m) (default 3; 8 for bench)");
  app.add_option("--modulus", cfg.modulus, "Irreducible modulus as hex (default: built-in table)");
  app.add_option("--n", cfg.n, "Number of packets n (default 3; mincut for network commands)");
  app.add_option("--mu", cfg.mu, "Wiretap links mu (default n - 1)");
  app.add_option("--k", cfg.k, "Secret symbols k (default n - mu)");
  app.add_option("--graph", cfg.graph, "Network JSON file or built-in name: butterfly, line, diamond");
  app.add_option("--seed", cfg.seed, "64-bit seed")->capture_default_str();
  app.add_option("--budget", cfg.budget, "Cap on every enumeration (overrides WIRESAFE_BUDGET)");
  app.add_option("--wiretap", cfg.wiretap, "Tapped edge ids")->delimiter(',');
  app.add_option("--out", cfg.out, "Write the output document to this path");
  app.add_option("--code", cfg.code, "Scheme JSON written by construct");
  app.add_option("--scheme", cfg.scheme, "gabidulin, cleartext or mds")->capture_default_str();
  app.add_option("--generators", cfg.generators, "Gabidulin generators as hex")->delimiter(',');
  app.add_option("--message", cfg.message, "Message symbols as hex (simulate)")->delimiter(',');
  app.add_option("--iters", cfg.iters, "Operations per timed batch (bench)")->capture_default_str();
  app.add_option("--batches", cfg.batches, "Timed batches; the median is reported (bench)")->capture_default_str();
  app.add_option("--lengths", cfg.lengths, "Code lengths n (bench)")->delimiter(',');

  for (const char* name : {"construct", "encode", "decode", "simulate", "audit", "bench"}) {
    static const std::map<std::string, std::string> help = {
        {"construct", "Build a scheme and write it as JSON"},
        {"encode", "Encode JSON-line messages from stdin"},
        {"decode", "Decode JSON-line codewords from stdin"},
        {"simulate", "Send one message over a random linear network code"},
        {"audit", "Exhaustive secrecy audit over all wiretap matrices or edge sets"},
        {"bench", "Time encode/decode over an (n, k) grid"}};
    app.add_subcommand(name, help.at(name))->callback([&cfg, name] { cfg.subcommand = name; });
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    const Budget budget = resolve_budget(cfg);
    if (cfg.subcommand == "construct") return cmd_construct(cfg, out, budget);
    if (cfg.subcommand == "encode") return cmd_encode(cfg, in, out, err, budget);
    if (cfg.subcommand == "decode") return cmd_decode(cfg, in, out, err, budget);
    if (cfg.subcommand == "simulate") return cmd_simulate(cfg, out, budget);
    if (cfg.subcommand == "audit") return cmd_audit(cfg, out, budget);
    if (cfg.subcommand == "bench") return cmd_bench(cfg, out);
    err << "no subcommand\n";
    return kUsage;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << " (required " << e.required() << ", budget " << e.budget()
        << "; raise with --budget or WIRESAFE_BUDGET)\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n" << "run 'wiresafe --help' for usage\n";
    return kUsage;
  }
}

}  // namespace wiresafe
