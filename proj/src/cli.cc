// Copyright 2026 The Solmorph Authors
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

#include "solmorph/cli.h"

#include <CLI11.hpp>

#include <filesystem>
#include <optional>

#include "solmorph/pipeline.h"

namespace solmorph {
namespace {

namespace fs = std::filesystem;

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
  std::string out;
  std::string corpus;
  std::string hosts;
  std::string operators;
  std::string chains;
  std::string mode;
  std::string compiler;
  std::vector<std::string> datasets;
  std::vector<std::string> reports;
};

std::string OneLine(std::string text) {
  for (char& c : text) {
    if (c == '\n' || c == '\r') {
      c = ' ';
    }
  }
  return text;
}

RunConfig BuildConfig(const Flags& flags) {
  RunConfig config = flags.config.empty() ? RunConfig{}
                                          : LoadConfig(flags.config);
  if (flags.seed) {
    config.seed = *flags.seed;
  }
  if (flags.jobs) {
    if (*flags.jobs < 1) {
      throw ConfigError("--jobs must be at least 1");
    }
    config.jobs = *flags.jobs;
  }
  if (!flags.out.empty()) {
    config.out_dir = flags.out;
  }
  if (!flags.corpus.empty()) {
    config.corpus_dir = flags.corpus;
  }
  if (!flags.hosts.empty()) {
    config.hosts_dir = flags.hosts;
  }
  if (!flags.operators.empty()) {
    config.operators.clear();
    std::stringstream in(flags.operators);
    for (std::string op; std::getline(in, op, ',');) {
      config.operators.push_back(op);
    }
  }
  if (!flags.chains.empty()) {
    auto set = ParseChainSet(flags.chains);
    if (!set) {
      throw ConfigError("--chains must be singletons or all_valid");
    }
    config.chains = *set;
  }
  if (!flags.mode.empty()) {
    auto mode = ParseInjectionMode(flags.mode);
    if (!mode) {
      throw ConfigError("--mode must be all_locations or single_location");
    }
    config.mode = *mode;
  }
  if (!flags.compiler.empty()) {
    config.compiler.command = flags.compiler;
  }
  for (const std::string& spec : flags.reports) {
    std::size_t eq = spec.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
      throw ConfigError("--report expects tool=path, got '" + spec + "'");
    }
    config.reports[spec.substr(0, eq)] = spec.substr(eq + 1);
  }
  SelectedGroups(config.operators);
  return config;
}

int Fail(std::ostream& err, std::string_view category,
         const std::string& message, int code) {
  err << "solmorph: error: " << category << ": " << OneLine(message) << "\n";
  return code;
}

int Transform(const RunConfig& config, RunLog& log, std::ostream& out) {
  TransformSummary s = CmdTransform(config, log);
  out << "transform: " << s.variants << " variants, " << s.baselines
      << " baselines, " << s.failures << " failures\n";
  return kExitOk;
}

int Verify(const RunConfig& config, RunLog& log, std::ostream& out,
           std::ostream& err) {
  VerifySummary s = CmdVerify(config, log);
  out << "verify: " << s.checked << " checked, " << s.failed << " failed, "
      << s.flagged << " flagged\n";
  if (s.failed > 0) {
    return Fail(err, "verify",
                std::to_string(s.failed) + " variant(s) failed the oracle; see " +
                    (config.out_dir / "verify.json").string(),
                kExitVerify);
  }
  return kExitOk;
}

int Inject(const RunConfig& config, RunLog& log, std::ostream& out) {
  Dataset d = CmdInject(config, log);
  std::size_t valid = std::count_if(
      d.records.begin(), d.records.end(),
      [](const InjectionRecord& r) { return r.valid; });
  out << "inject: " << d.records.size() << " records, " << valid
      << " valid (" << d.validation << ")\n";
  return kExitOk;
}

int EvaluateCmd(const RunConfig& config, const Flags& flags, RunLog& log,
                std::ostream& out) {
  std::vector<fs::path> datasets(flags.datasets.begin(), flags.datasets.end());
  if (datasets.empty()) {
    datasets.push_back(config.out_dir);
  }
  EvaluateSummary s = CmdEvaluate(config, datasets, config.out_dir, log);
  out << s.text;
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Semantic-preserving Solidity transformation and bug injection",
               "solmorph"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags flags;
  app.add_option("--config", flags.config, "TOML run configuration")
      ->check(CLI::ExistingFile);
  app.add_option("--seed", flags.seed, "seed for fresh names");
  app.add_option("--jobs", flags.jobs, "worker threads");
  app.add_option("--out", flags.out, "output directory");

  auto add_transform_flags = [&](CLI::App* cmd) {
    cmd->add_option("--corpus", flags.corpus, "snippet corpus directory");
    cmd->add_option("--operators", flags.operators,
                    "comma-separated operators, or all");
    cmd->add_option("--chains", flags.chains, "singletons or all_valid");
  };
  auto add_inject_flags = [&](CLI::App* cmd) {
    cmd->add_option("--hosts", flags.hosts, "host contract directory");
    cmd->add_option("--mode", flags.mode, "all_locations or single_location");
    cmd->add_option("--compiler", flags.compiler,
                    "compiler command template with {file}");
  };
  auto add_report_flags = [&](CLI::App* cmd) {
    cmd->add_option("--report", flags.reports, "detector report as tool=path");
  };

  CLI::App* transform = app.add_subcommand("transform", "generate variants");
  add_transform_flags(transform);
  CLI::App* inject = app.add_subcommand("inject", "inject variants into hosts");
  add_inject_flags(inject);
  CLI::App* verify = app.add_subcommand("verify", "check variants");
  verify->add_option("--corpus", flags.corpus, "snippet corpus directory");
  CLI::App* evaluate = app.add_subcommand("evaluate", "score detector reports");
  evaluate->add_option("--dataset", flags.datasets,
                       "dataset directory (repeatable)");
  add_report_flags(evaluate);
  CLI::App* run = app.add_subcommand("run", "the full pipeline");
  add_transform_flags(run);
  add_inject_flags(run);
  add_report_flags(run);

  std::vector<std::string> argv_store = {"solmorph"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& a : argv_store) {
    argv.push_back(a.data());
  }
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    return Fail(err, "usage", e.what(), kExitUsage);
  }

  try {
    RunConfig config = BuildConfig(flags);
    RunLog log(config.out_dir);
    if (*transform) {
      log.Line("command: transform");
      return Transform(config, log, out);
    }
    if (*inject) {
      log.Line("command: inject");
      return Inject(config, log, out);
    }
    if (*verify) {
      log.Line("command: verify");
      return Verify(config, log, out, err);
    }
    if (*evaluate) {
      log.Line("command: evaluate");
      return EvaluateCmd(config, flags, log, out);
    }
    log.Line("command: run");
    Transform(config, log, out);
    if (int code = Verify(config, log, out, err); code != kExitOk) {
      return code;
    }
    Inject(config, log, out);
    if (!config.reports.empty()) {
      return EvaluateCmd(config, flags, log, out);
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    return Fail(err, "usage", e.what(), kExitUsage);
  } catch (const std::exception& e) {
    return Fail(err, "data", e.what(), kExitData);
  }
}

}  // namespace solmorph
