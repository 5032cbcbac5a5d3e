// SPDX-License-Identifier: Apache-2.0
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "tht/tht.h"

namespace {

enum Exit { kNegative = 0, kInternal = 1, kInputError = 2, kWitness = 3, kUnknown = 4 };

using Json = nlohmann::ordered_json;

struct Owned {
  char* s = nullptr;
  ~Owned() { tht_string_free(s); }
  std::string str() const { return s ? s : ""; }
};

using InstancePtr = std::unique_ptr<tht_instance, decltype(&tht_instance_free)>;

int report_error(tht_status st) {
  std::cerr << "error: " << tht_last_error() << "\n";
  return st == THT_ERR_INTERNAL ? kInternal : kInputError;
}

std::optional<InstancePtr> open(const std::string& path, int& code) {
  tht_instance* raw = nullptr;
  tht_status st = tht_instance_from_file(path.c_str(), &raw);
  if (st != THT_OK) {
    code = report_error(st);
    return std::nullopt;
  }
  return InstancePtr(raw, tht_instance_free);
}

bool write_out(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << "\n";
    return true;
  }
  std::ofstream out(path);
  out << text << "\n";
  if (!out) {
    std::cerr << "error: cannot write '" << path << "'\n";
    return false;
  }
  return true;
}

std::string rational(const Json& q) {
  auto part = [](const Json& x) { return x.is_string() ? x.get<std::string>() : std::to_string(x.get<long long>()); };
  return part(q["num"]) + "/" + part(q["den"]);
}

std::string text_summary(const Json& j) {
  std::ostringstream o;
  if (j.contains("instance")) o << "instance: " << j["instance"].get<std::string>() << "\n";
  o << "verdict: " << j["verdict"].get<std::string>() << "\n";
  o << "flags: cellular=" << j["flags"]["cellular"] << " combinatorial=" << j["flags"]["combinatorial"]
    << " immersion=" << j["flags"]["immersion"] << "\n";
  o << "pi1-injective: " << j["pi1_injective"] << "\n";
  const Json& h = j["directed_height"];
  o << "directed height: "
    << (h["kind"] == "finite" ? std::to_string(h["value"].get<int>())
                              : h["kind"] == "infinite" ? std::string("infinite")
                                                        : "unknown (cap " + std::to_string(h["cap"].get<int>()) + ")")
    << "\n";
  if (j.contains("negative_immersions")) {
    const Json& n = j["negative_immersions"];
    o << "c = " << rational(n["c"]) << "  (m=" << n["m"] << ", norm=" << n["norm"] << ", M=" << n["M"].get<std::string>()
      << ", N=" << n["N"].get<std::string>() << ")\n";
    if (n.contains("malnormal")) o << "c' = " << rational(n["malnormal"]["c"]) << "\n";
  }
  if (j.contains("witness"))
    o << "witness: chi(Y)=" << j["witness"]["chi"] << ", period " << j["witness"]["period"] << ", "
      << j["witness"]["complex"]["faces"].size() << " faces\n";
  if (j.contains("reducibility"))
    o << "reducibility: n=" << j["reducibility"]["n"] << " verified=" << j["reducibility"]["verified"]
      << " proper=" << j["reducibility"]["proper"] << "\n";
  if (j.contains("diagnostic")) o << "diagnostic: " << j["diagnostic"].get<std::string>() << "\n";
  std::string s = o.str();
  if (!s.empty()) s.pop_back();
  return s;
}

int effective_cap(int cap, bool& ok) {
  ok = true;
  const char* env = std::getenv("TORUS_HEIGHT_CAP");
  if (!env) return cap;
  try {
    std::size_t used = 0;
    int v = std::stoi(env, &used);
    if (used == std::string(env).size() && v > 0) return v;
  } catch (const std::exception&) {
  }
  std::cerr << "error: TORUS_HEIGHT_CAP must be a positive integer\n";
  ok = false;
  return cap;
}

int cmd_analyze(const std::string& path, int cap, const std::string& format, const std::string& out) {
  bool cap_ok = true;
  cap = effective_cap(cap, cap_ok);
  if (!cap_ok) return kInputError;
  int code = 0;
  auto inst = open(path, code);
  if (!inst) return code;
  tht_verdict verdict{};
  Owned report;
  tht_status st = tht_analyze(inst->get(), cap, &verdict, &report.s);
  if (st == THT_ERR_UNSUPPORTED) {
    std::cerr << "unknown: " << tht_last_error() << "\n";
    return kUnknown;
  }
  if (st != THT_OK) return report_error(st);
  Json j = Json::parse(report.str());
  if (!write_out(out, format == "text" ? text_summary(j) : j.dump(2))) return kInternal;
  switch (verdict) {
    case THT_VERDICT_NEGATIVE_IMMERSIONS: return kNegative;
    case THT_VERDICT_ZERO_EULER_WITNESS: return kWitness;
    case THT_VERDICT_NOT_PI1_INJECTIVE:
      std::cerr << j.value("diagnostic", "not pi1-injective") << "\n";
      return kUnknown;
    case THT_VERDICT_UNKNOWN: return kUnknown;
  }
  return kInternal;
}

int cmd_audit(const std::string& path, const tht_audit_options& options, const std::string& out,
              const std::string& counterexamples) {
  int code = 0;
  auto inst = open(path, code);
  if (!inst) return code;
  int ok = 0;
  Owned report;
  tht_status st = tht_audit(inst->get(), &options, &ok, &report.s);
  if (st == THT_ERR_CONTRACT) {
    std::cerr << "error: " << tht_last_error()
              << "\nthe audit needs finite directed height; run `analyze` on this instance for its verdict\n";
    return kInputError;
  }
  if (st != THT_OK) return report_error(st);
  if (!write_out(out, report.str())) return kInternal;
  if (!ok && !counterexamples.empty()) {
    Json j = Json::parse(report.str());
    std::filesystem::create_directories(counterexamples);
    int i = 0;
    for (const Json& f : j["failures"]) {
      Json dump{{"reason", f["reason"]}, {"complex", f["complex"]}};
      write_out((std::filesystem::path(counterexamples) / ("counterexample_" + std::to_string(i++) + ".json")).string(),
                dump.dump(2));
    }
  }
  return ok ? kNegative : kInternal;
}

int cmd_fold(const std::string& path, const std::string& out) {
  int code = 0;
  auto inst = open(path, code);
  if (!inst) return code;
  int injective = 0;
  Owned report;
  tht_status st = tht_fold(inst->get(), &injective, &report.s);
  if (st != THT_OK) return report_error(st);
  return write_out(out, report.str()) ? kNegative : kInternal;
}

int cmd_export(const std::string& path, const std::string& dot_dir, const std::string& json_out) {
  int code = 0;
  auto inst = open(path, code);
  if (!inst) return code;
  Owned f, x;
  tht_status st = tht_export_dot(inst->get(), THT_DOT_F, &f.s);
  if (st == THT_OK) st = tht_export_dot(inst->get(), THT_DOT_X, &x.s);
  if (st != THT_OK) return report_error(st);
  if (dot_dir.empty()) {
    std::cout << f.str() << x.str();
  } else {
    std::filesystem::create_directories(dot_dir);
    std::filesystem::path dir(dot_dir);
    if (!write_out((dir / "F.dot").string(), f.str()) || !write_out((dir / "X.dot").string(), x.str())) return kInternal;
  }
  if (!json_out.empty()) {
    Owned j;
    st = tht_instance_to_json(inst->get(), &j.s);
    if (st != THT_OK) return report_error(st);
    if (!write_out(json_out, j.str())) return kInternal;
  }
  return kNegative;
}

int cmd_random(std::uint64_t seed, int count, int petals, int h_edges, int max_len, const std::string& dir) {
  Json all = Json::array();
  int written = 0;
  for (std::uint64_t s = seed; written < count; ++s) {
    tht_instance* raw = nullptr;
    tht_status st = tht_instance_random(s, petals, h_edges, max_len, &raw);
    if (st == THT_ERR_EXHAUSTED) continue;
    if (st != THT_OK) return report_error(st);
    InstancePtr inst(raw, tht_instance_free);
    Owned j;
    st = tht_instance_to_json(inst.get(), &j.s);
    if (st != THT_OK) return report_error(st);
    if (dir.empty()) {
      all.push_back(Json::parse(j.str()));
    } else {
      std::filesystem::create_directories(dir);
      if (!write_out((std::filesystem::path(dir) / ("random-" + std::to_string(s) + ".json")).string(), j.str()))
        return kInternal;
    }
    ++written;
  }
  if (dir.empty()) std::cout << all.dump(2) << "\n";
  return kNegative;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Negative immersions for mapping tori of free group endomorphisms"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tht_version());

  std::string path, out, format = "json", counterexamples, dot_dir, json_out;
  int cap = 0;
  tht_audit_options audit{4, 1, 0, 0};
  bool timings = false;

  auto* analyze = app.add_subcommand("analyze", "Decide negative immersions and print the certificate");
  analyze->add_option("instance", path, "Instance file (JSON)")->required();
  analyze->add_option("--cap", cap, "Cap on the directed height search (0 = default)");
  analyze->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
  analyze->add_option("-o,--out", out, "Write the report here instead of stdout");

  auto* audit_cmd = app.add_subcommand("audit", "Check the bound on every immersed complex up to a size");
  audit_cmd->add_option("instance", path, "Instance file (JSON)")->required();
  audit_cmd->add_option("--max-cells", audit.max_faces, "Largest number of 2-cells enumerated")->check(CLI::Range(0, 12));
  audit_cmd->add_option("--jobs", audit.jobs, "Worker threads for the enumeration")->check(CLI::Range(1, 256));
  audit_cmd->add_option("--isolated-edges", audit.isolated_edge_cap, "Also add up to this many isolated edges")
      ->check(CLI::Range(0, 4));
  audit_cmd->add_flag("--timings", timings, "Include elapsed time in the report");
  audit_cmd->add_option("-o,--out", out, "Write the report here instead of stdout");
  audit_cmd->add_option("--counterexamples", counterexamples, "Directory for failing complexes");

  auto* fold = app.add_subcommand("fold", "Fold the map to an immersion and dump the moves");
  fold->add_option("instance", path, "Instance file (JSON)")->required();
  fold->add_option("-o,--out", out, "Write the dump here instead of stdout");

  auto* exp = app.add_subcommand("export", "DOT drawings of F with H and of the 1-skeleton of X");
  exp->add_option("instance", path, "Instance file (JSON)")->required();
  exp->add_option("--dot", dot_dir, "Directory for F.dot and X.dot (default: stdout)");
  exp->add_option("--json", json_out, "Also re-serialise the instance here");

  std::uint64_t seed = 1;
  int count = 1, petals = 2, h_edges = 1, max_len = 2;
  auto* random = app.add_subcommand("random", "Generate random immersion instances");
  random->add_option("--seed", seed, "First seed");
  random->add_option("--count", count, "Number of instances")->check(CLI::Range(1, 100000));
  random->add_option("--petals", petals, "Rank of F")->check(CLI::Range(1, 26));
  random->add_option("--h-edges", h_edges, "Rank of H")->check(CLI::Range(1, 26));
  random->add_option("--max-len", max_len, "Longest image word")->check(CLI::Range(1, 16));
  random->add_option("--out", dot_dir, "Directory for instance files (default: JSON array on stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kInputError;
  }

  if (*analyze) return cmd_analyze(path, cap, format, out);
  if (*audit_cmd) {
    audit.include_timings = timings ? 1 : 0;
    return cmd_audit(path, audit, out, counterexamples);
  }
  if (*fold) return cmd_fold(path, out);
  if (*exp) return cmd_export(path, dot_dir, json_out);
  if (*random) return cmd_random(seed, count, petals, h_edges, max_len, dot_dir);
  return kInputError;
}
