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

#include "solmorph/inject.h"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include "solmorph/identifiers.h"
#include "solmorph/lexer.h"
#include "solmorph/parser.h"
#include "solmorph/printer.h"
#include "solmorph/substitution.h"
#include "solmorph/syntax_utils.h"

namespace solmorph {
namespace {

constexpr std::string_view kDefaultIndent = "    ";

bool Injectable(const ContractDef& c) {
  return c.kind == ContractKind::kContract ||
         c.kind == ContractKind::kAbstractContract;
}

// Where a contract starts in the printed host.
struct ContractPlace {
  const ContractDef* contract;
  std::size_t body_open;  // just after `{`
};

std::vector<ContractPlace> Places(const Host& host) {
  std::vector<ContractPlace> out;
  std::size_t pos = 0;
  for (const TopLevelItem& item : host.unit.items) {
    pos += item.leading.size();
    if (const auto* c = std::get_if<ContractDef>(&item.node)) {
      out.push_back({c, pos + c->header.size() + 1});
      pos += Print(*c).size();
    } else {
      pos += std::get<RawRegion>(item.node).text.size();
    }
  }
  return out;
}

const ContractPlace& FindContract(const std::vector<ContractPlace>& places,
                                  const InjectionLocation& loc) {
  for (const ContractPlace& p : places) {
    if (p.contract->name == loc.contract) {
      return p;
    }
  }
  throw std::invalid_argument("no contract " + loc.contract + " in " +
                              loc.host_file);
}

std::size_t MemberStart(const ContractPlace& place, int index) {
  std::size_t pos = place.body_open;
  for (int i = 0; i < index; ++i) {
    const Member& m = place.contract->members[i];
    pos += m.leading.size() + PrintMember(m).size();
  }
  return pos;
}

std::string Indented(std::string_view text, const std::string& indent) {
  std::size_t begin = 0;
  while (true) {
    std::size_t nl = text.find('\n', begin);
    if (nl == std::string_view::npos ||
        text.substr(begin, nl - begin).find_first_not_of(" \t\r") !=
            std::string_view::npos) {
      break;
    }
    begin = nl + 1;
  }
  std::size_t end = text.find_last_not_of(" \t\r\n");
  if (end == std::string_view::npos || end < begin) {
    return "";
  }
  std::string_view body = text.substr(begin, end + 1 - begin);
  std::string out;
  std::size_t pos = 0;
  while (pos <= body.size()) {
    std::size_t nl = body.find('\n', pos);
    std::string_view line =
        body.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    if (line.find_first_not_of(" \t\r") != std::string_view::npos) {
      out += indent;
      out += line;
    }
    if (nl == std::string_view::npos) {
      break;
    }
    out += '\n';
    pos = nl + 1;
  }
  return out;
}

std::string Csv(const InjectionRecord& r) {
  return r.generated_file + "," + std::to_string(r.start_line) + "," +
         std::to_string(r.end_line) + "," + std::string(ToString(r.vuln_type)) +
         "," + r.chain;
}

void WriteFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
}

}  // namespace

Host MakeHost(std::string name, std::string text) {
  Host host;
  host.name = std::move(name);
  host.unit = Parse(text);
  host.text = Print(host.unit);
  return host;
}

std::vector<Host> LoadHosts(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.path().extension() == ".sol") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<Host> hosts;
  for (const auto& path : files) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
      hosts.push_back(MakeHost(path.stem().string(), ss.str()));
    } catch (const ParseError& e) {
      throw CorpusError(path.string() + ": " + e.what());
    }
  }
  return hosts;
}

std::vector<InjectionLocation> EnumerateLocations(const Host& host,
                                                  FragmentKind kind) {
  std::vector<InjectionLocation> out;
  for (const ContractDef* c : host.unit.Contracts()) {
    if (!Injectable(*c)) {
      continue;
    }
    int members = static_cast<int>(c->members.size());
    if (kind == FragmentKind::kFunctionLevel) {
      for (int k = 0; k <= members; ++k) {
        out.push_back({host.name, c->name, k, -1});
      }
      continue;
    }
    for (int i = 0; i < members; ++i) {
      const auto* fn = c->members[i].As<FunctionDef>();
      if (fn == nullptr) {
        continue;
      }
      int statements = static_cast<int>(fn->body->As<Block>()->statements.size());
      for (int k = 0; k <= statements; ++k) {
        out.push_back({host.name, c->name, i, k});
      }
    }
  }
  return out;
}

nlohmann::json ToJson(const InjectionRecord& r) {
  nlohmann::json j;
  j["generated_file"] = r.generated_file;
  j["snippet_id"] = r.snippet_id;
  j["chain"] = r.chain;
  j["vuln_type"] = ToString(r.vuln_type);
  j["start_line"] = r.start_line;
  j["end_line"] = r.end_line;
  j["location"] = {{"host_file", r.location.host_file},
                   {"contract", r.location.contract},
                   {"member_index", r.location.member_index},
                   {"statement_index", r.location.statement_index}};
  j["valid"] = r.valid;
  j["splice_offset"] = r.splice_offset;
  j["splice_length"] = r.splice_length;
  j["collision_renames"] = r.collision_renames;
  j["syntax_ok"] = r.syntax_ok;
  j["compile_ok"] = r.compile_ok ? nlohmann::json(*r.compile_ok)
                                 : nlohmann::json(nullptr);
  return j;
}

InjectionRecord RecordFromJson(const nlohmann::json& j) {
  InjectionRecord r;
  r.generated_file = j.at("generated_file").get<std::string>();
  r.snippet_id = j.at("snippet_id").get<std::string>();
  r.chain = j.at("chain").get<std::string>();
  auto type = ParseVulnType(j.at("vuln_type").get<std::string>());
  if (!type) {
    throw CorpusError("unknown vuln_type in manifest: " +
                      j.at("vuln_type").get<std::string>());
  }
  r.vuln_type = *type;
  r.start_line = j.at("start_line").get<int>();
  r.end_line = j.at("end_line").get<int>();
  const auto& loc = j.at("location");
  r.location.host_file = loc.at("host_file").get<std::string>();
  r.location.contract = loc.at("contract").get<std::string>();
  r.location.member_index = loc.at("member_index").get<int>();
  r.location.statement_index = loc.value("statement_index", -1);
  r.valid = j.at("valid").get<bool>();
  r.splice_offset = j.value("splice_offset", std::size_t{0});
  r.splice_length = j.value("splice_length", std::size_t{0});
  if (j.contains("collision_renames")) {
    r.collision_renames =
        j["collision_renames"].get<std::map<std::string, std::string>>();
  }
  r.syntax_ok = j.value("syntax_ok", r.valid);
  if (j.contains("compile_ok") && !j["compile_ok"].is_null()) {
    r.compile_ok = j["compile_ok"].get<bool>();
  }
  return r;
}

std::string GeneratedFileName(const std::string& host,
                              const std::string& snippet_id,
                              const std::string& chain, int location) {
  return host + "__" + snippet_id + "__" + chain + "__loc" +
         std::to_string(location) + ".sol";
}

std::vector<std::string> DeclaredNames(const Fragment& fragment) {
  std::vector<std::string> out;
  auto add = [&](const std::string& name) {
    if (!name.empty() &&
        std::find(out.begin(), out.end(), name) == out.end()) {
      out.push_back(name);
    }
  };
  if (fragment.kind == FragmentKind::kStatementLevel) {
    for (const StmtPtr& s : fragment.statements) {
      VisitStmts(s, [&](const Stmt& x) {
        if (const auto* decl = x.As<VarDecl>()) {
          for (const auto& d : decl->declarators) {
            if (d) {
              add(d->name);
            }
          }
        }
      });
    }
    return out;
  }
  for (const Member& m : fragment.members) {
    if (const auto* fn = m.As<FunctionDef>()) {
      add(fn->name);
    } else if (const auto* decl = m.As<StateVarDecl>()) {
      add(decl->name);
    } else {
      std::vector<Token> tokens = Lex(std::get<RawRegion>(m.node).text);
      for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
        for (std::string_view kw :
             {"event", "modifier", "struct", "enum", "error"}) {
          if (tokens[i].Is(kw) && tokens[i + 1].IsIdentifier()) {
            add(std::string(tokens[i + 1].text));
          }
        }
      }
    }
  }
  return out;
}

Variant ResolveCollisions(const Variant& variant, const Host& host,
                          std::uint64_t seed,
                          std::map<std::string, std::string>* renamed) {
  std::set<std::string> host_names = CollectIdentifiers(host.text);
  std::set<std::string> forbidden = host_names;
  std::set<std::string> variant_names = CollectIdentifiers(variant.fragment);
  forbidden.insert(variant_names.begin(), variant_names.end());
  Substitution subst;
  for (const std::string& name : DeclaredNames(variant.fragment)) {
    if (!host_names.contains(name)) {
      continue;
    }
    NameGenerator names(name + "_", seed);
    std::string fresh;
    for (int attempt = 0; attempt < 1000 && fresh.empty(); ++attempt) {
      std::string candidate = names.Fresh(forbidden);
      if (IsValidIdentifier(candidate)) {
        fresh = candidate;
      }
    }
    if (fresh.empty()) {
      throw CollisionUnresolvable("no fresh name for " + name);
    }
    forbidden.insert(fresh);
    subst.names[name] = fresh;
    subst.function_names.insert(name);
  }
  if (renamed != nullptr) {
    renamed->clear();
    for (const auto& [from, to] : subst.names) {
      (*renamed)[to] = from;
    }
  }
  if (subst.Empty()) {
    return variant;
  }
  Variant out = variant;
  out.fragment = Substitute(variant.fragment, subst);
  std::map<std::string, std::string> composed;
  for (const auto& [from, to] : subst.names) {
    auto it = variant.renames.find(from);
    composed[to] = it == variant.renames.end() ? from : it->second;
  }
  for (const auto& [fresh, original] : variant.renames) {
    if (!subst.names.contains(fresh)) {
      composed[fresh] = original;
    }
  }
  out.renames = std::move(composed);
  return out;
}

Injection Inject(const Host& host, const Variant& variant,
                 const InjectionLocation& location, int location_ordinal,
                 std::uint64_t seed) {
  bool statement_level = location.statement_index >= 0;
  if (statement_level !=
      (variant.fragment.kind == FragmentKind::kStatementLevel)) {
    throw KindMismatch("variant kind " +
                       std::string(ToString(variant.fragment.kind)) +
                       " does not match the location");
  }
  std::vector<ContractPlace> places = Places(host);
  const ContractPlace& place = FindContract(places, location);
  const ContractDef& contract = *place.contract;
  if (location.member_index < 0 ||
      location.member_index > static_cast<int>(contract.members.size())) {
    throw std::out_of_range("member index out of range");
  }

  std::size_t p = 0;
  std::string indent(kDefaultIndent);
  if (!statement_level) {
    p = MemberStart(place, location.member_index);
    for (const Member& m : contract.members) {
      if (m.leading.find('\n') != std::string::npos) {
        indent = IndentOf(m.leading);
        break;
      }
    }
  } else {
    const Member& member = contract.members.at(location.member_index);
    const auto* fn = member.As<FunctionDef>();
    if (fn == nullptr) {
      throw std::invalid_argument("statement location outside a function");
    }
    const auto& statements = fn->body->As<Block>()->statements;
    if (location.statement_index > static_cast<int>(statements.size())) {
      throw std::out_of_range("statement index out of range");
    }
    std::string fn_indent = IndentOf(member.leading);
    indent = fn_indent + std::string(kDefaultIndent);
    if (!statements.empty() &&
        statements.front()->leading.find('\n') != std::string::npos) {
      indent = IndentOf(statements.front()->leading);
    }
    p = MemberStart(place, location.member_index) + member.leading.size() +
        fn->header.size() + 1;
    for (int i = 0; i < location.statement_index; ++i) {
      p += statements[i]->leading.size() +
           PrintStmt(statements[i], fn_indent).size();
    }
  }

  std::map<std::string, std::string> collisions;
  Variant resolved = ResolveCollisions(variant, host, seed, &collisions);

  Injection out;
  out.variant_text = Indented(Print(resolved.fragment), indent);
  std::string insertion = "\n" + out.variant_text + "\n";
  std::size_t offset = p;
  std::size_t nl = host.text.find('\n', p);
  if (nl != std::string::npos) {
    std::string_view rest(host.text.data() + p, nl - p);
    std::size_t code = rest.find_first_not_of(" \t\r");
    if (code == std::string_view::npos || rest.substr(code).starts_with("//")) {
      offset = nl + 1;
    }
  }
  out.text = host.text.substr(0, offset) + insertion + host.text.substr(offset);

  InjectionRecord& r = out.record;
  r.generated_file = "contracts/" + GeneratedFileName(host.name,
                                                      variant.snippet_id,
                                                      ChainToken(variant.chain),
                                                      location_ordinal);
  r.snippet_id = variant.snippet_id;
  r.chain = ChainToken(variant.chain);
  r.vuln_type = variant.vuln_type;
  r.start_line = LineAt(out.text, offset) + 1;
  r.end_line = r.start_line + static_cast<int>(std::count(
                                  out.variant_text.begin(),
                                  out.variant_text.end(), '\n'));
  r.location = location;
  r.splice_offset = offset;
  r.splice_length = insertion.size();
  r.collision_renames = std::move(collisions);
  return out;
}

std::string_view ToString(InjectionMode mode) {
  return mode == InjectionMode::kAllLocations ? "all_locations"
                                              : "single_location";
}

std::optional<InjectionMode> ParseInjectionMode(std::string_view token) {
  if (token == "all_locations" || token == "all") {
    return InjectionMode::kAllLocations;
  }
  if (token == "single_location" || token == "single") {
    return InjectionMode::kSingleLocation;
  }
  return std::nullopt;
}

Dataset GenerateDataset(const std::vector<Host>& hosts,
                        const std::vector<Variant>& variants,
                        const DatasetOptions& options,
                        const std::filesystem::path& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  fs::remove_all(out_dir / "contracts");
  fs::create_directories(out_dir / "contracts");

  struct Pair {
    const Host* host;
    const Variant* variant;
  };
  std::vector<Pair> pairs;
  for (const Host& h : hosts) {
    for (const Variant& v : variants) {
      pairs.push_back({&h, &v});
    }
  }

  auto attempt = [&](const Pair& pair, const InjectionLocation& loc, int k) {
    Injection inj = Inject(*pair.host, *pair.variant, loc, k, options.seed);
    fs::path file = out_dir / inj.record.generated_file;
    WriteFile(file, inj.text);
    SpliceLines lines{inj.record.start_line, inj.record.end_line,
                      pair.variant->fragment.kind};
    ValidationOutcome outcome = CompileCheck(
        file, options.compiler,
        CheckSyntax(file.filename().string(), inj.text, lines));
    inj.record.syntax_ok = outcome.syntax_ok;
    inj.record.compile_ok = outcome.compile_ok;
    inj.record.valid = outcome.Valid();
    return inj.record;
  };

  std::vector<std::vector<InjectionRecord>> results(pairs.size());
  std::vector<std::string> errors(pairs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < pairs.size(); i = next++) {
      const Pair& pair = pairs[i];
      try {
        std::vector<InjectionLocation> locations =
            EnumerateLocations(*pair.host, pair.variant->fragment.kind);
        for (std::size_t k = 0; k < locations.size(); ++k) {
          InjectionRecord r = attempt(pair, locations[k], static_cast<int>(k));
          if (options.mode == InjectionMode::kAllLocations) {
            results[i].push_back(std::move(r));
            continue;
          }
          if (r.valid || results[i].empty()) {
            if (!results[i].empty()) {
              fs::remove(out_dir / results[i].front().generated_file);
              results[i].clear();
            }
            results[i].push_back(std::move(r));
          } else {
            fs::remove(out_dir / r.generated_file);
          }
          if (results[i].front().valid) {
            break;
          }
        }
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  int workers = std::max({1, options.jobs,
                          options.compiler.Configured()
                              ? options.compiler.parallelism
                              : 1});
  workers = std::min<int>(workers, std::max<std::size_t>(1, pairs.size()));
  std::vector<std::thread> pool;
  for (int i = 1; i < workers; ++i) {
    pool.emplace_back(worker);
  }
  worker();
  for (std::thread& t : pool) {
    t.join();
  }
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (!errors[i].empty()) {
      throw std::runtime_error(pairs[i].host->name + " / " +
                               pairs[i].variant->snippet_id + ": " +
                               errors[i]);
    }
  }

  Dataset dataset;
  for (auto& rs : results) {
    for (auto& r : rs) {
      dataset.records.push_back(std::move(r));
    }
  }
  dataset.validation = options.compiler.Configured() ? "compiled"
                                                     : "syntax-validated only";
  dataset.compiler_version = CompilerVersion(options.compiler);

  std::string jsonl;
  std::string csv = "file,start_line,end_line,vuln_type,chain\n";
  std::size_t valid = 0;
  for (const InjectionRecord& r : dataset.records) {
    jsonl += ToJson(r).dump() + "\n";
    csv += Csv(r) + "\n";
    valid += r.valid ? 1 : 0;
  }
  WriteFile(out_dir / "manifest.jsonl", jsonl);
  WriteFile(out_dir / "manifest.csv", csv);
  nlohmann::json header = {
      {"validation", dataset.validation},
      {"compiler_version", dataset.compiler_version
                               ? nlohmann::json(*dataset.compiler_version)
                               : nlohmann::json(nullptr)},
      {"mode", ToString(options.mode)},
      {"seed", options.seed},
      {"hosts", hosts.size()},
      {"variants", variants.size()},
      {"records", dataset.records.size()},
      {"valid_records", valid},
  };
  WriteFile(out_dir / "dataset.json", header.dump(2) + "\n");
  return dataset;
}

std::vector<InjectionRecord> ReadManifest(const std::filesystem::path& jsonl) {
  std::ifstream in(jsonl);
  if (!in) {
    throw CorpusError("cannot read manifest " + jsonl.string());
  }
  std::vector<InjectionRecord> out;
  int line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    try {
      out.push_back(RecordFromJson(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw CorpusError(jsonl.string() + ":" + std::to_string(line_no) + ": " +
                        e.what());
    }
  }
  return out;
}

}  // namespace solmorph
