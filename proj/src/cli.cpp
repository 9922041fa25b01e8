// Copyright 2026 The Evoproof Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "evoproof/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "evoproof/archive.hpp"
#include "evoproof/coq.hpp"
#include "evoproof/operators.hpp"
#include "evoproof/report_io.hpp"
#include "evoproof/toy.hpp"

namespace evoproof::cli {

namespace fs = std::filesystem;

namespace {

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

class ArchiveSink : public ReportSink {
 public:
  void on_proof(const ProofRecord& rec) override { archive.record(rec); }
  ProofArchive archive;
};

std::string transcript_text(const ScriptResult& r) {
  std::string out;
  for (const auto& e : r.transcript) {
    out += "> " + e.sent + "\n";
    std::istringstream lines(e.response);
    for (std::string l; std::getline(lines, l);) out += "< " + l + "\n";
    out += "= " + e.classification + "\n";
  }
  return out;
}

std::string proof_name(std::size_t k) {
  std::ostringstream ss;
  ss << "proof-" << std::setw(3) << std::setfill('0') << k;
  return ss.str();
}

}  // namespace

std::unique_ptr<Backend> make_backend(const std::string& name,
                                      const std::string& coq_executable,
                                      double step_timeout) {
  if (name == "toy") return std::make_unique<toy::ToyBackend>();
  if (name == "coq") {
    coq::SessionConfig cfg;
    cfg.executable = coq::resolve_executable(coq_executable);
    cfg.step_timeout_seconds = step_timeout;
    return std::make_unique<coq::CoqBackend>(std::move(cfg));
  }
  throw ConfigError("unknown backend '" + name + "' (expected toy or coq)", "backend");
}

int cmd_run(const RunManifest& m, std::ostream& out, std::ostream& err) {
  TacticBase base = load_tactic_base_file(m.tactic_base);
  std::vector<std::pair<std::string, TheoremStatement>> theorems;
  for (const auto& path : m.theorems) theorems.emplace_back(path, load_theorem_file(path));

  std::unique_ptr<Backend> backend;
  try {
    backend = make_backend(m.backend, m.coq_executable, m.step_timeout);
    // A script with no tactics exercises the preamble and declaration.
    for (const auto& [path, st] : theorems) {
      const auto probe = backend->run_script(st, {});
      if (probe.failure == FailureKind::backend_fault) {
        err << "error: " << path << ": " << probe.fault_message << "\n";
        return kFailure;
      }
    }
  } catch (const BackendUnavailable& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }

  int status = kOk;
  for (const auto& [path, statement] : theorems) {
    for (const auto seed : m.seeds) {
      EAConfig cfg = m.ea;
      cfg.seed = seed;
      cfg.backend_id = m.backend;
      ArchiveSink sink;
      RunReport report = evolve(cfg, base, statement, *backend, sink, m.workers);
      report.settings = {{"theorem_file", path},
                         {"tactic_base", m.tactic_base},
                         {"step_timeout", std::to_string(m.step_timeout)},
                         {"workers", std::to_string(m.workers)}};

      const fs::path dir =
          fs::path(m.out_dir) / statement.id / ("seed-" + std::to_string(seed));
      fs::create_directories(dir);

      // Re-check each distinct proof tactic by tactic and keep the exchange.
      ProofArchive archive;
      std::size_t k = 0;
      for (auto rec : sink.archive.records()) {
        ++k;
        const auto name = proof_name(k);
        write_text(dir / "proofs" / (name + ".v"), render_tactics(rec.tactics, statement));
        try {
          const auto replay = backend->run_script(statement, rec.tactics, true);
          rec.verified = score_script(replay, rec.tactics.size(), false).complete;
          write_text(dir / "transcripts" / (name + ".txt"), transcript_text(replay));
        } catch (const BackendUnavailable& e) {
          rec.verified = false;
          report.error = e.what();
        }
        archive.record(rec);
      }

      write_text(dir / "report.json", report_to_json(report));
      write_text(dir / "generations.csv", generations_csv(report));
      write_text(dir / "archive.jsonl", archive.to_jsonl());

      out << statement.id << " seed " << seed << ": ";
      if (report.first_proof) {
        out << "first proof at generation " << report.first_proof->generation
            << " (length " << report.first_proof->length << "), "
            << report.distinct_proofs << " distinct";
      } else {
        out << "no complete proof";
      }
      out << " -> " << dir.string() << "\n";
      if (!report.finished) {
        err << "error: run aborted: " << report.error << "\n";
        status = kFailure;
      }
    }
  }
  return status;
}

std::vector<std::string> parse_proof_script(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) {
    const auto b = l.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = l.find_last_not_of(" \t\r");
    lines.push_back(l.substr(b, e - b + 1));
  }
  const auto proof = std::find(lines.begin(), lines.end(), "Proof.");
  if (proof == lines.end() || proof + 1 == lines.end() || *(proof + 1) != "intros.")
    throw std::runtime_error("proof script must contain 'Proof.' followed by 'intros.'");
  const auto qed = std::find(proof + 2, lines.end(), "Qed.");
  if (qed == lines.end()) throw std::runtime_error("proof script has no 'Qed.'");
  std::vector<std::string> tactics;
  for (auto it = proof + 2; it != qed; ++it) {
    if (it->back() != '.') throw std::runtime_error("tactic line without period: " + *it);
    tactics.push_back(it->substr(0, it->size() - 1));
  }
  return tactics;
}

int cmd_verify(const std::string& script_path, const std::string& theorem_path,
               Backend& backend, std::ostream& out, std::ostream& err) {
  std::vector<std::string> tactics;
  TheoremStatement statement;
  try {
    tactics = parse_proof_script(read_text(script_path));
    statement = load_theorem_file(theorem_path);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  ScriptResult result;
  try {
    result = backend.run_script(statement, tactics, true);
  } catch (const BackendUnavailable& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  if (result.failure == FailureKind::backend_fault) {
    err << "error: backend fault: " << result.fault_message << "\n";
    return kFailure;
  }
  const auto outcome = score_script(result, tactics.size(), false);

  out << statement.id << " (" << backend.id() << " " << backend.version() << ")\n";
  out << std::left << std::setw(6) << "step" << std::setw(20) << "status" << "tactic\n";
  for (const auto& step : result.steps) {
    out << std::left << std::setw(6) << step.position + 1 << std::setw(20)
        << to_string(step.status) << tactics[step.position] << "\n";
  }
  if (result.qed_accepted)
    out << std::left << std::setw(6) << "-" << std::setw(20)
        << (*result.qed_accepted ? "accepted" : "rejected") << "Qed\n";

  // A replayed file must use every tactic; extra ones after closing fail in Coq.
  if (outcome.complete && static_cast<std::size_t>(outcome.passed) == tactics.size()) {
    out << "verified: " << outcome.passed << " tactic(s)\n";
    return kOk;
  }
  if (outcome.complete)
    out << "rejected at step " << outcome.passed + 1 << ": " << tactics[outcome.passed]
        << " (no goals remain)\n";
  else if (outcome.failure == FailureKind::timeout)
    out << "rejected: timeout at step " << outcome.passed + 1 << "\n";
  else if (static_cast<std::size_t>(outcome.passed) < tactics.size())
    out << "rejected at step " << outcome.passed + 1 << ": " << tactics[outcome.passed] << "\n";
  else
    out << "rejected: goals remain after the last tactic\n";
  return kRejected;
}

int cmd_stats(const std::vector<std::string>& paths, const std::string& csv_path,
              std::ostream& out, std::ostream& err) {
  std::vector<std::string> report_paths;
  for (const auto& p : paths) {
    if (fs::is_directory(p)) {
      for (const auto& e : fs::recursive_directory_iterator(p))
        if (e.is_regular_file() && e.path().filename() == "report.json")
          report_paths.push_back(e.path().string());
    } else if (fs::exists(p)) {
      report_paths.push_back(p);
    } else {
      err << "error: no such file or directory: " << p << "\n";
      return kFailure;
    }
  }
  std::sort(report_paths.begin(), report_paths.end());
  if (report_paths.empty()) {
    err << "error: no run reports found\n";
    return kFailure;
  }

  struct Group {
    std::vector<RunReport> runs;
    ProofArchive archive;
  };
  std::map<std::string, Group> groups;
  std::set<std::string> hashes;
  try {
    for (const auto& p : report_paths) {
      auto r = report_from_json(read_text(p));
      hashes.insert(config_hash(r.config, r.tactic_base_size));
      auto& g = groups[r.theorem_id];
      const auto archive_path = fs::path(p).parent_path() / "archive.jsonl";
      if (fs::exists(archive_path))
        g.archive.merge(ProofArchive::from_jsonl(read_text(archive_path.string())));
      g.runs.push_back(std::move(r));
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  if (hashes.size() > 1) {
    err << "error: reports come from " << hashes.size()
        << " incompatible configurations; refusing to aggregate\n";
    return kFailure;
  }

  std::ostringstream csv;
  csv << "theorem,generation,runs,best_fitness_max,best_fitness_mean,mean_fitness_mean,"
         "complete_count_mean,distinct_complete_mean\n";
  csv << std::fixed << std::setprecision(6);
  for (const auto& [theorem, g] : groups) {
    const auto runs_with_proof = std::count_if(
        g.runs.begin(), g.runs.end(), [](const RunReport& r) { return r.first_proof.has_value(); });
    out << "theorem " << theorem << ": " << g.runs.size() << " run(s), " << runs_with_proof
        << " with a complete proof\n";
    const auto summary = diversity_summary(g.archive, theorem);
    if (!summary.known) {
      out << "  no complete proofs\n";
    } else {
      out << "  distinct proofs: " << summary.distinct << "; lengths:";
      for (const auto& [len, n] : summary.length_histogram) out << " " << len << "x" << n;
      out << "; first found at generation " << *summary.first_generation << "\n";
    }
    const RunReport* earliest = nullptr;
    for (const auto& r : g.runs)
      if (r.first_proof && (!earliest || r.first_proof->generation < earliest->first_proof->generation))
        earliest = &r;
    if (earliest) {
      const auto evals =
          std::max<std::int64_t>(earliest->first_proof->generation, 1) * earliest->config.pop_size;
      const auto len = std::max<std::int64_t>(earliest->first_proof->length, 1);
      const auto p = random_search_probability(
          evals, static_cast<std::int64_t>(earliest->tactic_base_size), len);
      out << "  random search baseline: " << evals << " evaluations / "
          << earliest->tactic_base_size << "^" << len << " = " << p.formatted << "\n";
    }

    std::map<std::int64_t, std::vector<const GenerationStats*>> rows;
    for (const auto& r : g.runs)
      for (const auto& s : r.generations) rows[s.generation].push_back(&s);
    for (const auto& [gen, list] : rows) {
      const double n = static_cast<double>(list.size());
      std::int64_t best_max = list.front()->best_fitness;
      double best = 0, mean = 0, complete = 0, distinct = 0;
      for (const auto* s : list) {
        best_max = std::max(best_max, s->best_fitness);
        best += static_cast<double>(s->best_fitness);
        mean += s->mean_fitness;
        complete += static_cast<double>(s->complete_count);
        distinct += static_cast<double>(s->distinct_complete);
      }
      csv << theorem << ',' << gen << ',' << list.size() << ',' << best_max << ','
          << best / n << ',' << mean / n << ',' << complete / n << ',' << distinct / n << "\n";
    }
  }
  if (csv_path.empty()) {
    out << "\n" << csv.str();
  } else {
    write_text(csv_path, csv.str());
    out << "csv written to " << csv_path << "\n";
  }
  return kOk;
}

namespace {

// Flag values as parsed; `set` tells whether the user passed the flag.
struct RunFlags {
  std::string config;
  std::vector<std::string> theorems;
  std::string tactic_base, backend, coq, out, tie_break;
  std::int64_t pop_size = 0, max_gen = 0, len_min = 0, len_max = 0, completion_base = 0;
  double mut_rate = 0, step_timeout = 0;
  unsigned workers = 1;
  std::vector<std::uint64_t> seeds;
};

std::vector<std::uint64_t> parse_seed_list(const ConfigFile::Value& v, const std::string& origin) {
  std::vector<std::uint64_t> out;
  std::istringstream in(v.text);
  for (std::string item; std::getline(in, item, ',');) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoull(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError(origin + ":" + std::to_string(v.line) + ": bad seed '" + item + "'");
    }
  }
  return out;
}

RunManifest build_manifest(const RunFlags& f, const CLI::App& run) {
  RunManifest m;
  ConfigFile cf;
  if (!f.config.empty()) {
    cf = ConfigFile::load(f.config);
    m.config_path = f.config;
  }
  auto given = [&](const char* flag) { return run.count(flag) > 0; };

  m.backend = given("--backend") ? f.backend : cf.has("backend") ? cf.last("backend").text : "toy";
  const std::string data = default_data_dir();
  const std::string backend_dir = data + "/" + (m.backend == "coq" ? "coq" : "toy");

  if (given("--theorem")) {
    m.theorems = f.theorems;
  } else if (cf.has("theorem")) {
    for (std::size_t i = 0; i < cf.all("theorem").size(); ++i) {
      fs::path p(cf.all("theorem")[i].text);
      if (p.is_relative() && !cf.directory().empty()) p = fs::path(cf.directory()) / p;
      m.theorems.push_back(p.string());
    }
  } else {
    m.theorems = {backend_dir + (m.backend == "coq" ? "/theorems" : "/suite")};
  }
  m.tactic_base = given("--tactic-base") ? f.tactic_base
                  : cf.has("tactic-base")  ? cf.get_path("tactic-base")
                                           : backend_dir + "/tactic_base.txt";
  m.coq_executable = given("--coq") ? f.coq : cf.has("coq") ? cf.last("coq").text : "";
  m.out_dir = given("--out") ? f.out : cf.has("out") ? cf.get_path("out") : "evoproof-out";

  auto pick_int = [&](const char* flag, const char* key, std::int64_t flag_value,
                      std::int64_t fallback) {
    return given(flag) ? flag_value : cf.has(key) ? cf.get_int(key) : fallback;
  };
  EAConfig defaults;
  m.ea.pop_size = pick_int("--pop-size", "pop-size", f.pop_size, defaults.pop_size);
  m.ea.max_gen = pick_int("--max-gen", "max-gen", f.max_gen, defaults.max_gen);
  m.ea.l_lower = pick_int("--len-min", "len-min", f.len_min, defaults.l_lower);
  m.ea.l_upper = pick_int("--len-max", "len-max", f.len_max, defaults.l_upper);
  m.ea.completion_base =
      pick_int("--completion-base", "completion-base", f.completion_base, defaults.completion_base);
  m.ea.mut_rat = given("--mut-rate") ? f.mut_rate
                 : cf.has("mut-rate")  ? cf.get_double("mut-rate")
                                       : defaults.mut_rat;
  m.step_timeout = given("--step-timeout") ? f.step_timeout
                   : cf.has("step-timeout")  ? cf.get_double("step-timeout")
                                             : 5.0;
  m.workers = given("--workers") ? f.workers
              : cf.has("workers")  ? static_cast<unsigned>(cf.get_int("workers"))
                                   : 1u;
  if (given("--seed")) {
    m.seeds = f.seeds;
  } else if (cf.has("seed")) {
    m.seeds.clear();
    for (const auto& v : cf.all("seed")) {
      const auto list = parse_seed_list(v, cf.origin());
      m.seeds.insert(m.seeds.end(), list.begin(), list.end());
    }
  }
  m.ea.backend_id = m.backend;

  try {
    if (given("--tie-break"))
      m.ea.tie_break = parse_tie_break(f.tie_break);
    else if (cf.has("tie-break"))
      m.ea.tie_break = parse_tie_break(cf.last("tie-break").text);
    validate_config(m.ea);
    if (m.step_timeout <= 0) throw ConfigError("step-timeout must be positive", "step-timeout");
    if (m.workers < 1) throw ConfigError("workers must be at least 1", "workers");
    if (m.backend != "toy" && m.backend != "coq")
      throw ConfigError("unknown backend '" + m.backend + "' (expected toy or coq)", "backend");
  } catch (const ConfigError& e) {
    // Point at the config line when the offending value came from the file.
    const std::string flag = "--" + e.key();
    if (!e.key().empty() && !given(flag.c_str()) && cf.has(e.key()))
      throw ConfigError(cf.origin() + ":" + std::to_string(cf.last(e.key()).line) + ": " +
                        e.what());
    throw;
  }

  m.theorems = expand_theorem_paths(m.theorems);
  if (m.theorems.empty()) throw ConfigError("no theorem files given");
  for (const auto& t : m.theorems)
    if (!fs::is_regular_file(t)) throw ConfigError("theorem file not found: " + t);
  if (!fs::is_regular_file(m.tactic_base))
    throw ConfigError("tactic base not found: " + m.tactic_base);
  std::error_code ec;
  fs::create_directories(m.out_dir, ec);
  if (ec || !fs::is_directory(m.out_dir))
    throw ConfigError("output directory not writable: " + m.out_dir);
  return m;
}

}  // namespace

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"evoproof: evolutionary search for proof-assistant tactic sequences"};
  app.require_subcommand(1);

  RunFlags f;
  auto* run = app.add_subcommand("run", "evolve proofs for one or more theorems");
  run->add_option("--config", f.config, "key=value config file");
  run->add_option("--theorem", f.theorems, "theorem file or directory of *.thm (repeatable)");
  run->add_option("--tactic-base", f.tactic_base, "tactic base file");
  run->add_option("--backend", f.backend, "toy or coq");
  run->add_option("--coq", f.coq, "Coq top-level executable");
  run->add_option("--pop-size", f.pop_size, "population size (default 1000)");
  run->add_option("--max-gen", f.max_gen, "offspring generations (default 100)");
  run->add_option("--mut-rate", f.mut_rate, "mutation rate (default 0.25)");
  run->add_option("--len-min", f.len_min, "minimum initial length (default 4)");
  run->add_option("--len-max", f.len_max, "maximum initial length (default 15)");
  run->add_option("--completion-base", f.completion_base, "complete-proof score base (default 1000)");
  run->add_option("--seed", f.seeds, "random seed (repeatable)");
  run->add_option("--out", f.out, "output directory");
  run->add_option("--workers", f.workers, "parallel evaluation workers");
  run->add_option("--tie-break", f.tie_break, "rank ties: shorter (default) or stable");
  run->add_option("--step-timeout", f.step_timeout, "per-tactic timeout in seconds (Coq)");

  std::string script, theorem, vbackend = "toy", vcoq;
  double vtimeout = 5.0;
  auto* verify = app.add_subcommand("verify", "replay a proof script through a backend");
  verify->add_option("script", script, "proof script")->required();
  verify->add_option("--theorem", theorem, "theorem file")->required();
  verify->add_option("--backend", vbackend, "toy or coq");
  verify->add_option("--coq", vcoq, "Coq top-level executable");
  verify->add_option("--step-timeout", vtimeout, "per-tactic timeout in seconds");

  std::vector<std::string> stat_paths;
  std::string csv_path;
  auto* stats = app.add_subcommand("stats", "aggregate run reports and archives");
  stats->add_option("paths", stat_paths, "report.json files or output directories")->required();
  stats->add_option("--csv", csv_path, "write the per-generation CSV here");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kFailure;
  }

  try {
    if (run->parsed()) return cmd_run(build_manifest(f, *run), out, err);
    if (verify->parsed()) {
      auto backend = make_backend(vbackend, vcoq, vtimeout);
      return cmd_verify(script, theorem, *backend, out, err);
    }
    if (stats->parsed()) return cmd_stats(stat_paths, csv_path, out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  } catch (const BackendUnavailable& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  } catch (const LoadError& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}

}  // namespace evoproof::cli
