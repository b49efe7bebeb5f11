// invbench: generate instances, run agents, export reports, analyze the
// human-AI experiment and serve the game.
//
// Settings resolve as flags > --config file > INVBENCH_* environment > defaults.
// Exit codes: 0 ok, 1 invalid input, 2 runtime failure, 3 too many failed episodes.

#include <CLI11.hpp>

#include <atomic>
#include <csignal>
#include <cstdlib>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "invbench/common/error.hpp"
#include "invbench/common/json_util.hpp"
#include "invbench/eval/aggregate.hpp"
#include "invbench/eval/record_store.hpp"
#include "invbench/eval/report.hpp"
#include "invbench/eval/runner.hpp"
#include "invbench/game/experiment.hpp"
#include "invbench/game/http_api.hpp"
#include "invbench/game/service.hpp"
#include "invbench/instances/benchmark.hpp"
#include "invbench/instances/csv.hpp"
#include "invbench/instances/instance_io.hpp"
#include "invbench/instances/real_data.hpp"
#include "invbench/policy/agent.hpp"
#include "invbench/policy/chat.hpp"
#include "invbench/policy/response_parser.hpp"
#include "invbench/stats/analysis.hpp"

namespace fs = std::filesystem;
using namespace invbench;

namespace {

enum Exit { kOk = 0, kInvalid = 1, kRuntime = 2, kOverThreshold = 3 };

// One subcommand's settings with the layer each value came from.
class Settings {
 public:
  struct Param {
    std::string name;
    std::string fallback;
    std::string help;
    bool is_flag = false;
  };

  Settings(CLI::App* cmd, std::string section, std::vector<Param> params)
      : section_(std::move(section)), params_(std::move(params)) {
    for (const auto& p : params_) {
      if (p.is_flag)
        flags_[p.name] = cmd->add_flag("--" + p.name, p.help);
      else
        flags_[p.name] = cmd->add_option("--" + p.name, raw_[p.name], p.help + " [default: " + p.fallback + "]");
    }
  }

  void resolve(const std::optional<Json>& file) {
    for (const auto& p : params_) {
      if (flags_[p.name]->count() > 0) {
        set(p.name, p.is_flag ? "true" : raw_[p.name], "flag");
        continue;
      }
      if (file) {
        const Json* found = nullptr;
        if (file->contains(section_) && (*file)[section_].contains(p.name)) found = &(*file)[section_][p.name];
        else if (file->contains(p.name)) found = &(*file)[p.name];
        if (found) {
          set(p.name, found->is_string() ? found->get<std::string>() : found->dump(), "config");
          continue;
        }
      }
      std::string env = "INVBENCH_" + p.name;
      for (auto& c : env) c = c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      if (const char* v = std::getenv(env.c_str())) {
        set(p.name, v, "env");
        continue;
      }
      set(p.name, p.fallback, "default");
    }
  }

  void print(std::ostream& os) const {
    os << "invbench " << section_ << " settings:\n";
    for (const auto& p : params_) os << "  " << p.name << " = " << values_.at(p.name) << "  (" << source_.at(p.name) << ")\n";
  }

  Json to_json() const {
    Json j = Json::object();
    for (const auto& p : params_) j[p.name] = values_.at(p.name);
    return j;
  }

  const std::string& str(const std::string& name) const { return values_.at(name); }
  bool has(const std::string& name) const { return !values_.at(name).empty(); }
  bool flag(const std::string& name) const {
    const auto& v = values_.at(name);
    return v == "true" || v == "1" || v == "yes" || v == "on";
  }
  long long integer(const std::string& name) const { return parse_number<long long>(name); }
  double real(const std::string& name) const { return parse_number<double>(name); }
  std::vector<std::string> list(const std::string& name) const {
    std::vector<std::string> out;
    std::stringstream ss(values_.at(name));
    for (std::string item; std::getline(ss, item, ',');)
      if (!item.empty()) out.push_back(item);
    return out;
  }

 private:
  template <class T>
  T parse_number(const std::string& name) const {
    const auto& v = values_.at(name);
    std::size_t used = 0;
    try {
      T out;
      if constexpr (std::is_same_v<T, double>) out = std::stod(v, &used);
      else out = std::stoll(v, &used);
      if (used == v.size()) return out;
    } catch (const std::exception&) {
    }
    throw ValidationError(name, "expected a number, got '" + v + "'");
  }
  void set(const std::string& name, std::string value, const char* source) {
    values_[name] = std::move(value);
    source_[name] = source;
  }

  std::string section_;
  std::vector<Param> params_;
  std::map<std::string, std::string> raw_;
  std::map<std::string, CLI::Option*> flags_;
  std::map<std::string, std::string> values_;
  std::map<std::string, std::string> source_;
};

std::string normalize_lead(std::string s) {
  static const std::map<std::string, std::string> alias = {
      {"fixed0", "L0"}, {"fixed4", "L4"}, {"stochastic", "LS"}, {"l0", "L0"}, {"l4", "L4"}, {"ls", "LS"}};
  if (const auto it = alias.find(s); it != alias.end()) return it->second;
  return s;
}

std::string normalize_pattern(const std::string& s) {
  if (!s.empty() && std::isdigit(static_cast<unsigned char>(s[0]))) {
    const int n = std::stoi(s);
    char buf[8];
    std::snprintf(buf, sizeof buf, "p%02d", n);
    return buf;
  }
  return s;
}

std::vector<sim::Instance> filter_instances(std::vector<sim::Instance> all, const Settings& s) {
  std::set<std::string> leads, patterns, families;
  for (const auto& l : s.list("leadtime"))
    if (l != "all") leads.insert(normalize_lead(l));
  for (const auto& p : s.list("pattern"))
    if (p != "all") patterns.insert(normalize_pattern(p));
  for (const auto& f : s.list("family"))
    if (f != "all") families.insert(f);
  std::vector<sim::Instance> out;
  for (auto& in : all) {
    if (!leads.empty() && !leads.count(in.provenance.lead_config)) continue;
    if (!patterns.empty() && !patterns.count(in.provenance.pattern)) continue;
    if (!families.empty() && !families.count(sim::to_string(in.provenance.family))) continue;
    out.push_back(std::move(in));
  }
  return out;
}

std::shared_ptr<policy::ChatBackend> make_backend(const std::string& spec, const Settings& s) {
  if (spec.rfind("mock:", 0) == 0) return policy::MockChatBackend::from_spec(spec.substr(5));
  if (spec == "http" || spec.rfind("http:", 0) == 0) {
    policy::HttpBackendConfig cfg;
    if (s.has("base-url")) cfg.base_url = s.str("base-url");
    cfg.model = spec.size() > 5 ? spec.substr(5) : s.str("model");
    cfg.temperature = s.real("temperature");
    if (cfg.model.empty()) throw ValidationError("backend", "http backend needs a model (http:<model> or --model)");
    return std::make_shared<policy::HttpChatBackend>(cfg);
  }
  throw ValidationError("backend", "unknown backend '" + spec + "' (expected mock:<script> or http:<model>)");
}

// "or", "mock:<script>" (OR->LLM against a mock), "<method>" or "<method>=<backend>".
policy::Agent make_agent(const std::string& spec, const Settings& s) {
  policy::AgentConfig cfg;
  cfg.temperature = s.real("temperature");
  cfg.label = spec;
  if (spec.rfind("mock:", 0) == 0) {
    cfg.method = policy::Method::OR_TO_LLM;
    cfg.backend = make_backend(spec, s);
    return policy::Agent(cfg);
  }
  const auto eq = spec.find('=');
  cfg.method = policy::method_from_string(spec.substr(0, eq));
  if (policy::uses_llm(cfg.method)) cfg.backend = make_backend(eq == std::string::npos ? s.str("backend") : spec.substr(eq + 1), s);
  return policy::Agent(cfg);
}

std::optional<Json> load_config(const std::string& path) {
  if (path.empty()) return std::nullopt;
  Json j = read_json_file(path);
  if (!j.is_object()) throw ValidationError("config", "config file must hold a JSON object");
  return j;
}

int cmd_generate(const Settings& s) {
  instances::BenchmarkOptions opts;
  opts.base_seed = static_cast<std::uint64_t>(s.integer("seed"));
  opts.realizations_per_variant = static_cast<int>(s.integer("realizations"));
  opts.horizon = static_cast<int>(s.integer("horizon"));
  auto list = filter_instances(instances::build_benchmark(opts), s);

  if (s.has("real-sales") != s.has("real-meta"))
    throw ValidationError("real-sales", "--real-sales and --real-meta go together");
  if (s.has("real-sales")) {
    instances::PreprocessOptions pre;
    pre.top_k = static_cast<std::size_t>(s.integer("real-top-k"));
    const auto result =
        instances::preprocess_real(instances::read_csv(s.str("real-sales")), instances::read_csv(s.str("real-meta")), pre);
    for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
    instances::RealInstanceOptions ropts;
    ropts.seed = opts.base_seed;
    auto real = filter_instances(instances::build_real_instances(result.series, ropts), s);
    std::cout << "real articles: " << result.articles_seen << " seen, " << result.series.size() << " kept\n";
    list.insert(list.end(), std::make_move_iterator(real.begin()), std::make_move_iterator(real.end()));
  }
  if (list.empty()) throw ValidationError("filters", "no instances match the filters");

  const fs::path out = s.str("out");
  if (s.flag("single-file")) instances::save_instances(list, out);
  else instances::write_instance_directory(list, out);

  std::map<std::string, int> by_lead;
  for (const auto& in : list) ++by_lead[in.provenance.lead_config];
  std::cout << "wrote " << list.size() << " instances to " << out.string() << "\n";
  for (const auto& [lead, n] : by_lead) std::cout << "  " << lead << ": " << n << "\n";
  return kOk;
}

int cmd_run(const Settings& s) {
  // Numeric settings are checked before any file is touched.
  const long long limit = s.integer("limit");
  const long long parallelism = s.integer("parallelism");
  const double max_failures = s.real("max-failure-fraction");
  const auto seed = static_cast<std::uint64_t>(s.integer("seed"));

  auto list = filter_instances(instances::load_instances(s.str("instances")), s);
  if (limit > 0 && list.size() > static_cast<std::size_t>(limit)) list.resize(static_cast<std::size_t>(limit));
  if (list.empty()) throw ValidationError("instances", "no instances to run");

  std::vector<policy::Agent> agents;
  for (const auto& spec : s.list("methods")) agents.push_back(make_agent(spec, s));
  if (agents.empty()) throw ValidationError("methods", "at least one method is required");

  const fs::path out = s.str("out");
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  Json persisted = {{"command", "run"}, {"settings", s.to_json()}};
  write_text_file(fs::path(out).replace_extension(".config.json"), persisted.dump(2) + "\n");

  eval::RecordStore store(out);
  eval::RunOptions opts;
  opts.parallelism = static_cast<std::size_t>(std::max<long long>(1, parallelism));
  opts.max_failure_fraction = max_failures;
  opts.seed = seed;
  opts.store = &store;
  opts.record_timing = s.flag("timing");
  if (!s.flag("quiet")) {
    opts.progress = [](std::size_t done, std::size_t total) {
      if (done == total || done % 100 == 0) std::cerr << "\r" << done << "/" << total << std::flush;
      if (done == total) std::cerr << "\n";
    };
  }
  const auto summary = eval::run_benchmark(list, agents, opts);

  std::vector<std::string> warnings;
  const auto cells = eval::aggregate(summary.records, {eval::Facet::Method}, &warnings);
  std::cout << eval::render_cells(cells, {eval::Facet::Method}, eval::ReportFormat::Markdown);
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  std::cout << summary.records.size() << " episodes, " << summary.resumed << " resumed, " << summary.failures
            << " failed\n";
  if (summary.over_threshold) {
    std::cerr << "error: failure fraction above " << opts.max_failure_fraction << "\n";
    return kOverThreshold;
  }
  return kOk;
}

int cmd_report(const Settings& s) {
  const auto records = eval::load_records(s.str("records"));
  const auto format = eval::report_format_from_string(s.str("format"));
  std::string text;
  if (s.has("by")) {
    std::vector<eval::Facet> facets;
    for (const auto& f : s.list("by")) facets.push_back(eval::facet_from_string(f));
    std::vector<std::string> warnings;
    text = eval::render_cells(eval::aggregate(records, facets, &warnings), facets, format);
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  } else {
    text = eval::render_table(eval::make_table(records, eval::table_shape_from_string(s.str("shape"))), format);
  }
  if (s.has("out")) write_text_file(s.str("out"), text);
  else std::cout << text;
  return kOk;
}

int cmd_analyze(const Settings& s) {
  const auto samples = stats::load_samples(s.str("samples"));
  const auto runs = stats::load_automated_runs(s.str("runs"));
  stats::AnalysisOptions opts;
  opts.replicates = static_cast<int>(s.integer("replicates"));
  opts.seed = static_cast<std::uint64_t>(s.integer("seed"));
  opts.ci_level = s.real("ci-level");
  opts.baseline_instance = s.str("baseline");
  opts.parallelism = static_cast<std::size_t>(std::max<long long>(1, s.integer("parallelism")));
  opts.deltas.clear();
  for (const auto& d : s.list("deltas")) {
    try {
      opts.deltas.push_back(std::stod(d));
    } catch (const std::exception&) {
      throw ValidationError("deltas", "not a number: '" + d + "'");
    }
  }
  const std::string text = stats::analyze(samples, runs, opts).dump(2) + "\n";
  if (s.has("out")) write_text_file(s.str("out"), text);
  else std::cout << text;
  return kOk;
}

std::atomic<bool> g_stop{false};
extern "C" void on_signal(int) { g_stop = true; }

int cmd_serve(const Settings& s) {
  game::ExperimentOptions eopts;
  eopts.seed = static_cast<std::uint64_t>(s.integer("seed"));
  game::ServiceConfig cfg;
  cfg.instances = s.has("instances") ? instances::load_instances(s.str("instances")) : game::default_experiment_instances(eopts);
  cfg.seed = eopts.seed;
  if (s.str("assignment") == "balanced") cfg.assignment = game::AssignmentPolicy::Balanced;
  else if (s.str("assignment") != "hashed") throw ValidationError("assignment", "expected hashed or balanced");
  cfg.pause_every = static_cast<int>(s.integer("pause-every"));
  cfg.two_stage_feedback = s.flag("feedback");
  cfg.backend = make_backend(s.str("backend"), s);
  if (s.has("log")) cfg.log_path = fs::path(s.str("log"));
  game::GameService service(std::move(cfg));

  game::HttpApiOptions hopts;
  if (s.has("static-dir")) hopts.static_dir = fs::path(s.str("static-dir"));
  game::HttpApi api(service, hopts);
  const std::string host = s.str("host");
  const bool fixed = s.integer("port") != 0;
  // A fixed port binds inside listen(); port 0 binds first so the chosen port can be printed.
  const int port = fixed ? static_cast<int>(s.integer("port")) : api.bind_to_any_port(host);
  if (port < 0) throw std::runtime_error("cannot bind " + host);

  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::atomic<bool> ok{true};
  std::thread server([&] { ok = fixed ? api.listen(host, port) : api.listen_after_bind(); });
  api.wait_until_ready();
  if (!ok) {
    server.join();
    throw std::runtime_error("cannot listen on " + host + ":" + std::to_string(port));
  }
  std::cout << "listening on http://" << host << ":" << port << "/api/v1" << std::endl;
  while (!g_stop && api.running()) std::this_thread::sleep_for(std::chrono::milliseconds(100));
  api.stop();
  server.join();
  return ok ? kOk : kRuntime;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Inventory-control benchmark: instances, agents, reports and the human-AI game"};
  app.require_subcommand(1);
  std::string config_path;
  bool quiet_config = false;
  app.add_option("--config", config_path, "JSON settings file; keys per subcommand section or top level");
  app.add_flag("--no-print-config", quiet_config, "do not print resolved settings at startup");

  using P = Settings::Param;
  const std::vector<P> filters = {{"leadtime", "all", "lead-time configs, comma separated (L0,L4,LS or fixed0,fixed4,stochastic)"},
                                  {"pattern", "all", "demand patterns, comma separated (p01..p10)"},
                                  {"family", "all", "instance families (synthetic, real, custom)"}};
  auto with = [&](std::vector<P> ps, const std::vector<P>& extra) {
    ps.insert(ps.end(), extra.begin(), extra.end());
    return ps;
  };

  auto* gen = app.add_subcommand("generate", "write benchmark instances and a manifest");
  Settings gen_s(gen, "generate",
                 with({{"out", "instances", "output directory (or file with --single-file)"},
                       {"seed", "42", "base seed"},
                       {"realizations", "2", "realizations per pattern variant"},
                       {"horizon", "50", "periods per synthetic instance"},
                       {"real-sales", "", "weekly sales CSV for real instances"},
                       {"real-meta", "", "article metadata CSV for real instances"},
                       {"real-top-k", "200", "articles kept by volume"},
                       {"single-file", "", "write one JSON collection instead of a directory", true}},
                      filters));

  auto* run = app.add_subcommand("run", "run agents over instances into a resumable record store");
  Settings run_s(run, "run",
                 with({{"instances", "instances", "instance directory or collection file"},
                       {"methods", "or", "agents: or, mock:<script>, <method> or <method>=<backend>"},
                       {"backend", "mock:follow-or", "default backend for LLM methods (mock:<script> or http:<model>)"},
                       {"base-url", "", "chat completions base URL"},
                       {"model", "", "model name for the http backend"},
                       {"temperature", "0", "sampling temperature"},
                       {"out", "results/records.jsonl", "record store (JSON lines)"},
                       {"parallelism", "1", "worker threads"},
                       {"seed", "42", "run seed"},
                       {"max-failure-fraction", "0", "failed-episode share tolerated before exit code 3"},
                       {"limit", "0", "run at most this many instances (0: all)"},
                       {"timing", "", "store wall-clock timings", true},
                       {"quiet", "", "no progress output", true}},
                      filters));

  auto* rep = app.add_subcommand("report", "aggregate a record store into tables");
  Settings rep_s(rep, "report",
                 {{"records", "results/records.jsonl", "record store"},
                  {"shape", "overall", "overall, table2, leadtime or fractile"},
                  {"by", "", "facets instead of a fixed shape (method,family,pattern,variant,lead,rho)"},
                  {"format", "markdown", "markdown, csv or json"},
                  {"out", "", "output file (default stdout)"}});

  auto* ana = app.add_subcommand("analyze", "complementarity analysis of the experiment log");
  Settings ana_s(ana, "analyze",
                 {{"samples", "experiment.jsonl", "experiment log with sample records"},
                  {"runs", "automated_runs.json", "automated AI and OR rewards per scenario"},
                  {"replicates", "10000", "bootstrap replicates"},
                  {"seed", "42", "bootstrap seed"},
                  {"deltas", "0", "KS-bound margins, comma separated"},
                  {"ci-level", "0.95", "confidence level"},
                  {"baseline", "", "baseline scenario for fixed effects"},
                  {"parallelism", "1", "bootstrap threads"},
                  {"out", "", "output file (default stdout)"}});

  auto* srv = app.add_subcommand("serve", "serve the human-AI game over HTTP");
  Settings srv_s(srv, "serve",
                 {{"host", "127.0.0.1", "bind address"},
                  {"port", "8080", "port (0 picks a free one)"},
                  {"seed", "42", "instance and assignment seed"},
                  {"instances", "", "three instances to use instead of the defaults"},
                  {"assignment", "hashed", "hashed or balanced mode ordering"},
                  {"pause-every", "4", "Mode C guidance interval"},
                  {"feedback", "", "enable the Mode B revision endpoint", true},
                  {"backend", "mock:follow-or", "chat backend for Modes B and C"},
                  {"base-url", "", "chat completions base URL"},
                  {"model", "", "model name for the http backend"},
                  {"temperature", "0", "sampling temperature"},
                  {"log", "experiment.jsonl", "event log (JSON lines)"},
                  {"static-dir", "", "serve a built web UI from this directory"}});

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    const auto file = load_config(config_path);
    const std::vector<std::tuple<CLI::App*, Settings*, int (*)(const Settings&)>> table = {
        {gen, &gen_s, cmd_generate}, {run, &run_s, cmd_run}, {rep, &rep_s, cmd_report},
        {ana, &ana_s, cmd_analyze},  {srv, &srv_s, cmd_serve}};
    for (auto& [cmd, settings, fn] : table) {
      if (!cmd->parsed()) continue;
      settings->resolve(file);
      if (!quiet_config) settings->print(std::cerr);
      return fn(*settings);
    }
    return kInvalid;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const SchemaError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntime;
  }
}
