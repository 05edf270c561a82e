#include "cliffpart/report.hpp"

#include <cstdio>

#include <json.hpp>

namespace cliffpart {

using nlohmann::json;

std::string dtext(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double scalar_rel_dev(std::complex<double> x, std::complex<double> y) {
  return std::abs(x - y) / std::max(1.0, std::abs(y));
}

namespace {

json model_json(const LatticeModel& m) {
  return json{{"n", m.n}, {"p", m.p}, {"q", m.q}, {"a", m.a}, {"b", m.b}};
}

LatticeModel model_from(const json& j) {
  LatticeModel m;
  m.n = j.at("n").get<int>();
  m.p = j.at("p").get<int>();
  m.q = j.at("q").get<int>();
  m.a = j.at("a").get<double>();
  m.b = j.at("b").get<double>();
  return m;
}

json result_json(const TimedResult& t) {
  return json{{"method", t.result.method},
              {"z_re", t.result.z.real()},
              {"z_im", t.result.z.imag()},
              {"z_text", dtext(t.result.z.real()) + (t.result.z.imag() < 0 ? "" : "+") +
                             dtext(t.result.z.imag()) + "i"},
              {"terms", t.result.terms},
              {"wall_ms", t.wall_ms}};
}

TimedResult result_from(const json& j) {
  TimedResult t;
  t.result.method = j.at("method").get<std::string>();
  t.result.z = {j.at("z_re").get<double>(), j.at("z_im").get<double>()};
  t.result.terms = j.at("terms").get<long long>();
  t.wall_ms = j.at("wall_ms").get<double>();
  return t;
}

json suite_json(const SuiteResult& s) {
  return json{{"name", s.name},
              {"pass", s.pass},
              {"max_dev", s.max_dev},
              {"checks", s.checks},
              {"detail", s.detail}};
}

SuiteResult suite_from(const json& j) {
  SuiteResult s;
  s.name = j.at("name").get<std::string>();
  s.pass = j.at("pass").get<bool>();
  s.max_dev = j.at("max_dev").get<double>();
  s.checks = j.at("checks").get<long long>();
  s.detail = j.at("detail").get<std::string>();
  return s;
}

}  // namespace

std::string to_json_text(const PartitionReport& r) {
  json j;
  j["command"] = "partition";
  j["model"] = model_json(r.model);
  j["methods"] = r.methods;
  j["seed"] = r.seed;
  j["results"] = json::array();
  for (const auto& t : r.results) j["results"].push_back(result_json(t));
  j["deviations"] = json::array();
  for (const auto& d : r.deviations)
    j["deviations"].push_back(json{{"first", d.first},
                                   {"second", d.second},
                                   {"rel", d.rel},
                                   {"tol", d.tol},
                                   {"pass", d.pass}});
  j["notes"] = r.notes;
  j["pass"] = r.pass;
  return j.dump(2) + "\n";
}

std::string to_json_text(const VerifyReport& r) {
  json j;
  j["command"] = "verify";
  j["seed"] = r.seed;
  j["suites"] = json::array();
  for (const auto& s : r.suites) j["suites"].push_back(suite_json(s));
  j["pass"] = r.pass;
  return j.dump(2) + "\n";
}

std::string to_json_text(const TraceReport& r) {
  json j;
  j["command"] = "trace";
  j["n"] = r.n;
  j["p"] = r.p;
  j["word"] = r.word;
  j["value_re"] = r.value.real();
  j["value_im"] = r.value.imag();
  j["value_text"] = dtext(r.value.real()) + (r.value.imag() < 0 ? "" : "+") +
                    dtext(r.value.imag()) + "i";
  j["is_zero"] = r.is_zero;
  j["omega_exponent"] = r.omega_exponent;
  j["partitions"] = r.partitions;
  return j.dump(2) + "\n";
}

std::string to_csv_text(const PartitionReport& r) {
  std::string out = "method,n,p,q,a,b,Z_re,Z_im,wall_ms,terms\n";
  for (const auto& t : r.results) {
    out += t.result.method + "," + std::to_string(r.model.n) + "," +
           std::to_string(r.model.p) + "," + std::to_string(r.model.q) + "," +
           dtext(r.model.a) + "," + dtext(r.model.b) + "," +
           dtext(t.result.z.real()) + "," + dtext(t.result.z.imag()) + "," +
           dtext(t.wall_ms) + "," + std::to_string(t.result.terms) + "\n";
  }
  return out;
}

PartitionReport partition_report_from_json(const std::string& text) {
  json j = json::parse(text);
  PartitionReport r;
  r.model = model_from(j.at("model"));
  r.methods = j.at("methods").get<std::vector<std::string>>();
  r.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& t : j.at("results")) r.results.push_back(result_from(t));
  for (const auto& d : j.at("deviations")) {
    Deviation dev;
    dev.first = d.at("first").get<std::string>();
    dev.second = d.at("second").get<std::string>();
    dev.rel = d.at("rel").get<double>();
    dev.tol = d.at("tol").get<double>();
    dev.pass = d.at("pass").get<bool>();
    r.deviations.push_back(dev);
  }
  r.notes = j.at("notes").get<std::vector<std::string>>();
  r.pass = j.at("pass").get<bool>();
  return r;
}

VerifyReport verify_report_from_json(const std::string& text) {
  json j = json::parse(text);
  VerifyReport r;
  r.seed = j.at("seed").get<std::uint64_t>();
  for (const auto& s : j.at("suites")) r.suites.push_back(suite_from(s));
  r.pass = j.at("pass").get<bool>();
  return r;
}

}  // namespace cliffpart
