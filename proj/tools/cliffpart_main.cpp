#include <chrono>
#include <complex>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cliffpart/errors.hpp"
#include "cliffpart/potts.hpp"
#include "cliffpart/report.hpp"
#include "cliffpart/verify.hpp"

namespace {

using namespace cliffpart;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitCapacity = 2;
constexpr int kExitUsage = 64;

struct Options {
  int n = 2;
  int p = 1;
  int q = 1;
  double a = 0.0;
  double b = 0.0;
  std::vector<std::string> methods = {"all"};
  std::string format = "json";
  std::uint64_t seed = 12345;
  std::string config;
  int guard_bits = 0;
  std::vector<std::string> word;
  std::string fault;
};

void apply_config(const Options& opt, Options& out, const CLI::App* sub) {
  if (opt.config.empty()) return;
  std::ifstream in(opt.config);
  if (!in) throw std::invalid_argument("cannot open config file " + opt.config);
  json j = json::parse(in);
  auto given = [&](const std::string& flag) {
    auto* o = sub->get_option_no_throw(flag);
    return o != nullptr && o->count() > 0;
  };
  if (j.contains("n") && !given("--n")) out.n = j["n"].get<int>();
  if (j.contains("p") && !given("--p")) out.p = j["p"].get<int>();
  if (j.contains("q") && !given("--q")) out.q = j["q"].get<int>();
  if (j.contains("a") && !given("--a")) out.a = j["a"].get<double>();
  if (j.contains("b") && !given("--b")) out.b = j["b"].get<double>();
  if (j.contains("seed") && !given("--seed"))
    out.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("format") && !given("--format"))
    out.format = j["format"].get<std::string>();
  if (j.contains("guard_bits") && !given("--guard-bits"))
    out.guard_bits = j["guard_bits"].get<int>();
  if (j.contains("method") && !given("--method"))
    out.methods = j["method"].get<std::vector<std::string>>();
}

SizeGuards resolve_guards(const Options& opt) {
  SizeGuards g = guards_from_env();
  if (opt.guard_bits != 0) {
    if (opt.guard_bits < 1 || opt.guard_bits > 40)
      throw std::invalid_argument("guard bits must be in [1, 40]");
    g.brute = 1LL << opt.guard_bits;
    g.multisum = 1LL << opt.guard_bits;
  }
  return g;
}

TimedResult timed(const std::function<PartitionResult()>& fn) {
  auto t0 = std::chrono::steady_clock::now();
  PartitionResult r = fn();
  auto t1 = std::chrono::steady_clock::now();
  return {r, std::chrono::duration<double, std::milli>(t1 - t0).count()};
}

int run_partition(const Options& opt) {
  LatticeModel model{opt.n, opt.p, opt.q, opt.a, opt.b};
  validate(model);
  SizeGuards guards = resolve_guards(opt);

  bool all = false;
  std::vector<std::string> methods;
  for (const auto& m : opt.methods) {
    if (m == "all") {
      all = true;
    } else if (m == "brute" || m == "transfer" || m == "decomposed" ||
               m == "multisum" || m == "closed-form") {
      methods.push_back(m);
    } else {
      throw std::invalid_argument("unknown method " + m);
    }
  }
  if (all)
    methods = {"brute", "transfer", "decomposed", "multisum", "closed-form"};

  PartitionReport report;
  report.model = model;
  report.methods = methods;
  report.seed = opt.seed;

  for (const auto& m : methods) {
    try {
      if (m == "brute") {
        report.results.push_back(
            timed([&] { return brute_force_partition(model, guards); }));
      } else if (m == "transfer") {
        report.results.push_back(
            timed([&] { return transfer_partition(model, guards); }));
      } else if (m == "decomposed") {
        report.results.push_back(timed([&] {
          TransferOperators ops = build_transfer(model, guards);
          Matrix mq = decomposed_power(ops);
          return PartitionResult{"decomposed", mq.trace(), ops.sig.dim};
        }));
      } else if (m == "multisum") {
        report.results.push_back(timed([&] {
          MultisumResult ms = multisum_power(model, guards);
          if (!ms.traces_pure)
            throw std::logic_error("multisum produced an impure term trace");
          return PartitionResult{"multisum", ms.z, ms.tuples};
        }));
      } else if (m == "closed-form") {
        if (model.n != 2 || model.a < 0.0 || model.b < 0.0) {
          if (!all)
            throw std::invalid_argument(
                model.n != 2 ? "closed-form method requires n = 2"
                             : "closed-form method requires nonnegative "
                               "couplings");
          report.notes.push_back(
              model.n != 2
                  ? "closed-form skipped: requires n = 2"
                  : "closed-form skipped: requires nonnegative couplings");
          continue;
        }
        report.results.push_back(timed([&] { return ising_closed_form(model); }));
      }
    } catch (const CapacityError& e) {
      if (!all) throw;
      report.notes.push_back(std::string(m) + " skipped: " + e.what());
    }
  }

  if (report.results.empty())
    throw std::invalid_argument("no method produced a result");

  const TimedResult& ref = report.results.front();
  for (size_t i = 1; i < report.results.size(); ++i) {
    const TimedResult& other = report.results[i];
    double tol = (other.result.method == "closed-form" ||
                  ref.result.method == "closed-form")
                     ? 1e-6
                     : 1e-9;
    Deviation d;
    d.first = ref.result.method;
    d.second = other.result.method;
    d.rel = scalar_rel_dev(other.result.z, ref.result.z);
    d.tol = tol;
    d.pass = d.rel < tol;
    report.deviations.push_back(d);
    if (!d.pass) report.pass = false;
  }

  std::cout << (opt.format == "csv" ? to_csv_text(report)
                                    : to_json_text(report));
  return report.pass ? kExitOk : kExitMismatch;
}

int run_trace(const Options& opt) {
  if (opt.n < 2 || opt.p < 1)
    throw std::invalid_argument("trace requires n >= 2 and p >= 1");
  SizeGuards guards = resolve_guards(opt);
  std::vector<int> word;
  for (const auto& label : opt.word) {
    if (label.size() < 2 || label[0] != 'g')
      throw std::invalid_argument("word labels look like g1..g" +
                                  std::to_string(2 * opt.p));
    int idx = std::stoi(label.substr(1));
    if (idx < 1 || idx > 2 * opt.p)
      throw std::invalid_argument("label " + label + " out of range for p=" +
                                  std::to_string(opt.p));
    word.push_back(idx - 1);
  }

  AlgebraSignature sig = make_signature(opt.n, opt.p, guards.dense);
  PhaseExponent by_pairing = trace_pairing_sum(sig, word, guards.partitions);

  GammaMonomial mono = monomial_identity(sig);
  for (int letter : word) {
    int blocked = letter % 2 == 0 ? letter / 2 : opt.p + letter / 2;
    mono = monomial_mul(sig, mono, monomial_generator(sig, blocked));
  }
  PhaseExponent by_normal = trace_normal_form(sig, mono);
  if (!(by_pairing == by_normal)) {
    std::cerr << json{{"error", "internal"},
                      {"what", "trace routes disagree"}}
                     .dump()
              << "\n";
    return kExitMismatch;
  }

  TraceReport tr;
  tr.n = opt.n;
  tr.p = opt.p;
  tr.word = opt.word;
  tr.value = by_pairing.value();
  tr.is_zero = by_pairing.is_zero();
  tr.omega_exponent = by_pairing.is_zero() ? 0 : by_pairing.omega_exponent();
  tr.partitions = pairing_partition_count(opt.n, word);
  std::cout << to_json_text(tr);
  return kExitOk;
}

int run_verify(const Options& opt) {
  SizeGuards guards = resolve_guards(opt);
  FaultInjection fault;
  if (!opt.fault.empty()) {
    std::istringstream ss(opt.fault);
    char comma = 0;
    if (!(ss >> fault.i >> comma >> fault.j) || comma != ',')
      throw std::invalid_argument("fault argument looks like i,j");
    fault.active = true;
  }
  VerifyReport report = run_all_suites(opt.seed, guards, fault);
  std::cout << to_json_text(report);
  return report.pass ? kExitOk : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Partition function of the cyclic vector model on a torus, computed by "
      "independent routes that check one another"};
  app.require_subcommand(1);
  Options opt;

  CLI::App* partition =
      app.add_subcommand("partition", "compute the partition function");
  partition->add_option("--n", opt.n, "spin states per site");
  partition->add_option("--p", opt.p, "rows (transfer width)");
  partition->add_option("--q", opt.q, "columns (transfer steps)");
  partition->add_option("--a", opt.a, "horizontal coupling");
  partition->add_option("--b", opt.b, "vertical coupling");
  partition->add_option("--method", opt.methods,
                        "brute|transfer|decomposed|multisum|closed-form|all");
  partition->add_option("--format", opt.format, "json|csv");
  partition->add_option("--seed", opt.seed, "seed echoed into the report");
  partition->add_option("--config", opt.config, "JSON config file");
  partition->add_option("--guard-bits", opt.guard_bits,
                        "override brute/multisum guards to 2^bits");

  CLI::App* trace =
      app.add_subcommand("trace", "trace of a generator word");
  trace->add_option("--n", opt.n, "algebra order");
  trace->add_option("--p", opt.p, "sites");
  trace->add_option("--config", opt.config, "JSON config file");
  trace->add_option("--guard-bits", opt.guard_bits,
                    "override brute/multisum guards to 2^bits");
  trace->add_option("word", opt.word,
                    "labels g1..g2p, interleaved: g1,g3,... clock-type, "
                    "g2,g4,... twisted");

  CLI::App* verify =
      app.add_subcommand("verify", "run the full consistency suites");
  verify->add_option("--seed", opt.seed, "seed for the random draws");
  verify->add_option("--config", opt.config, "JSON config file");
  verify->add_option("--guard-bits", opt.guard_bits,
                     "override brute/multisum guards to 2^bits");
  verify->add_option("--fault-commutation", opt.fault,
                     "deliberately corrupt one commutation entry i,j")
      ->group("");  // hidden

  try {
    app.parse(argc, argv);
    CLI::App* sub = app.get_subcommands().front();
    apply_config(opt, opt, sub);
    if (opt.format != "json" && opt.format != "csv")
      throw std::invalid_argument("format must be json or csv");
    if (sub == partition) return run_partition(opt);
    if (sub == trace) return run_trace(opt);
    return run_verify(opt);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << nlohmann::json{{"error", "usage"}, {"what", e.what()}}.dump()
              << "\n";
    return kExitUsage;
  } catch (const cliffpart::CapacityError& e) {
    std::cerr << nlohmann::json{{"error", "capacity"},
                                {"what", e.what()},
                                {"requested", e.requested()},
                                {"limit", e.limit()}}
                     .dump()
              << "\n";
    return kExitCapacity;
  } catch (const std::invalid_argument& e) {
    std::cerr << nlohmann::json{{"error", "usage"}, {"what", e.what()}}.dump()
              << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << nlohmann::json{{"error", "internal"}, {"what", e.what()}}.dump()
              << "\n";
    return kExitMismatch;
  }
}
