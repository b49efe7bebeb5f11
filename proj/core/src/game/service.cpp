#include "invbench/game/service.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <set>

#include "invbench/common/error.hpp"
#include "invbench/common/rng.hpp"
#include "invbench/sim/metrics.hpp"

namespace invbench::game {
namespace {

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) h = (h ^ c) * 0x100000001b3ULL;
  return h;
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::now();
  const auto secs = std::chrono::system_clock::to_time_t(now);
  const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
  char out[48];
  std::snprintf(out, sizeof out, "%s.%03dZ", buf, static_cast<int>(ms));
  return out;
}

double in_transit(const sim::SimState& s) {
  double total = 0.0;
  for (const auto& o : s.orders)
    if (!o.arrival) total += o.quantity;
  return total;
}

Json advice_json(const policy::ORAdvice& a) {
  return {{"quantity", a.quantity},
          {"display_quantity", std::llround(a.quantity)},
          {"base_stock", a.base_stock},
          {"inventory_position", a.inventory_position},
          {"mean_demand", a.mean_demand},
          {"std_demand", a.std_demand},
          {"cap", a.cap},
          {"z", a.z}};
}

}  // namespace

struct GameService::Session {
  std::string id;
  std::string token;
  int index = 0;
  GameMode mode = GameMode::A;
  const sim::Instance* instance = nullptr;
  sim::SimState state;
  policy::InsightStore insights;
  policy::ORAdvice advice;
  std::optional<policy::AgentTurn> proposal;
  bool proposal_revised = false;
  bool awaiting_guidance = false;
  std::optional<std::string> active_guidance;
  Json guidance_history = Json::array();
  std::vector<sim::PeriodRecord> periods;
  Json inventory_history = Json::array();
  std::mutex mutex;
};

GameService::GameService(ServiceConfig config) : config_(std::move(config)) {
  if (config_.instances.size() != 3) throw ValidationError("instances", "the experiment needs exactly three instances");
  for (const auto& in : config_.instances) in.validate();
  if (config_.pause_every < 1) throw ValidationError("pause_every", "must be positive");
  if (!config_.backend) throw ValidationError("backend", "Modes B and C need a chat backend (use a mock offline)");
  agent_ = std::make_unique<policy::Agent>(policy::AgentConfig{policy::Method::OR_TO_LLM, config_.backend, 0.0, 1, "or_to_llm"});
  if (config_.log_path) {
    if (config_.log_path->has_parent_path()) std::filesystem::create_directories(config_.log_path->parent_path());
    log_file_.open(*config_.log_path, std::ios::app);
    if (!log_file_) throw std::runtime_error("cannot open event log " + config_.log_path->string());
  }
}

GameService::~GameService() = default;

std::string GameService::now() const { return config_.clock ? config_.clock() : utc_now(); }

void GameService::log(const std::string& session_id, const std::string& kind, Json payload) {
  std::lock_guard lock(log_mutex_);
  EventRecord e{events_.size() + 1, session_id, now(), kind, std::move(payload)};
  if (log_file_.is_open()) {
    log_file_ << Json{{"record", "event"}, {"seq", e.seq}, {"session_id", e.session_id}, {"timestamp", e.timestamp},
                      {"kind", e.kind}, {"payload", e.payload}}.dump()
              << '\n';
    log_file_.flush();
  }
  events_.push_back(std::move(e));
}

Json GameService::health() const {
  std::lock_guard lock(mutex_);
  Json ids = Json::array();
  for (const auto& in : config_.instances) ids.push_back(in.id);
  return {{"status", "ok"}, {"instances", ids}, {"sessions", sessions_.size()}, {"assignments", assignments_.size()}};
}

Assignment GameService::create_assignment(const std::string& token) {
  if (token.empty() || token.size() > 128) throw ServiceError(400, "invalid_token", "token must be 1 to 128 characters");
  Assignment a;
  {
    std::lock_guard lock(mutex_);
    if (const auto it = assignments_.find(token); it != assignments_.end()) return it->second;
    a.token = token;
    if (config_.assignment == AssignmentPolicy::Hashed) {
      a.permutation = derive_seed(config_.seed, {fnv1a(token)}) % 6;
    } else {
      // Each block of six consecutive tokens uses every ordering once, in a seeded order.
      const std::size_t k = assignment_order_.size();
      if (k % 6 == 0) {
        balanced_block_ = {0, 1, 2, 3, 4, 5};
        Rng rng(derive_seed(config_.seed, {0xBA1A, k / 6}));
        for (std::size_t i = 6; i > 1; --i) std::swap(balanced_block_[i - 1], balanced_block_[rng.below(i)]);
      }
      a.permutation = balanced_block_[k % 6];
    }
    a.modes = mode_permutations()[a.permutation];
    assignments_[token] = a;
    assignment_order_.push_back(token);
  }
  log("", "assignment",
      {{"token", token}, {"modes", {to_string(a.modes[0]), to_string(a.modes[1]), to_string(a.modes[2])}}});
  return a;
}

Json GameService::assignment_view(const std::string& token) const {
  std::lock_guard lock(mutex_);
  const auto it = assignments_.find(token);
  if (it == assignments_.end()) throw ServiceError(404, "assignment_not_found", "no assignment for this token");
  Json slots = Json::array();
  for (int i = 0; i < 3; ++i) {
    const auto s = session_by_slot_.find({token, i});
    const std::string status =
        s == session_by_slot_.end()
            ? "not_started"
            : (sim::finished(sessions_.at(s->second)->state, *sessions_.at(s->second)->instance) ? "finished" : "active");
    slots.push_back({{"instance_index", i},
                     {"instance_id", config_.instances[static_cast<std::size_t>(i)].id},
                     {"mode", to_string(it->second.modes[static_cast<std::size_t>(i)])},
                     {"session_id", s == session_by_slot_.end() ? Json(nullptr) : Json(s->second)},
                     {"status", status}});
  }
  return {{"token", token}, {"permutation", it->second.permutation}, {"instances", slots}};
}

GameService::Session& GameService::find(const std::string& id) const {
  std::lock_guard lock(mutex_);
  const auto it = sessions_.find(id);
  if (it == sessions_.end()) throw ServiceError(404, "session_not_found", "unknown session '" + id + "'");
  return *it->second;
}

Json GameService::start_session(const std::string& token, int index) {
  Session* s = nullptr;
  {
    std::lock_guard lock(mutex_);
    const auto a = assignments_.find(token);
    if (a == assignments_.end()) throw ServiceError(404, "assignment_not_found", "create an assignment first");
    if (index < 0 || index > 2) throw ServiceError(400, "invalid_instance_index", "instance_index must be 0, 1 or 2");
    if (const auto prior = session_by_slot_.find({token, index}); prior != session_by_slot_.end())
      throw ServiceError(409, "already_started", "this instance was already started for this token",
                         {{"session_id", prior->second}});
    auto session = std::make_unique<Session>();
    char id[32];
    std::snprintf(id, sizeof id, "s%06llu", static_cast<unsigned long long>(next_session_++));
    session->id = id;
    session->token = token;
    session->index = index;
    session->mode = a->second.modes[static_cast<std::size_t>(index)];
    session->instance = &config_.instances[static_cast<std::size_t>(index)];
    session->state = sim::new_session(*session->instance);
    s = session.get();
    session_by_slot_[{token, index}] = s->id;
    sessions_[s->id] = std::move(session);
  }
  std::lock_guard lock(s->mutex);
  log(s->id, "session_start",
      {{"token", token}, {"instance_index", index}, {"instance_id", s->instance->id}, {"mode", to_string(s->mode)}});
  const auto obs = sim::observe(s->state, *s->instance);
  s->advice = policy::or_recommendation(obs);
  log(s->id, "observe", {{"period", obs.period}, {"on_hand", obs.on_hand}, {"in_transit", obs.in_transit}});
  if (s->mode == GameMode::C) {
    s->awaiting_guidance = true;
  } else {
    log(s->id, "or_advice", {{"period", obs.period}, {"advice", advice_json(s->advice)}});
    if (s->mode == GameMode::B) propose(*s, std::nullopt);
  }
  return view(*s);
}

void GameService::propose(Session& s, const std::optional<std::string>& feedback) {
  const auto obs = sim::observe(s.state, *s.instance);
  policy::DecideOptions opts;
  opts.prompt.human_mode = policy::HumanMode::B;
  opts.prompt.two_stage_feedback = config_.two_stage_feedback;
  if (feedback) {
    opts.human_feedback = feedback;
    if (s.proposal) opts.initial_proposal = s.proposal->decision.quantity;
  }
  try {
    s.proposal = agent_->decide(obs, s.insights, opts);
  } catch (const std::exception& e) {
    policy::AgentTurn fallback;
    fallback.advice = s.advice;
    fallback.decision.quantity = s.advice.quantity;
    fallback.decision.short_rationale_for_human = "The AI assistant is unavailable; showing the OR recommendation.";
    fallback.fell_back = true;
    s.proposal = fallback;
    log(s.id, "agent_error", {{"period", obs.period}, {"error", e.what()}});
  }
  s.proposal_revised = feedback.has_value();
  log(s.id, "ai_proposal",
      {{"period", obs.period},
       {"quantity", s.proposal->decision.quantity},
       {"short_rationale", s.proposal->decision.short_rationale_for_human},
       {"rationale", s.proposal->decision.rationale},
       {"revised", s.proposal_revised},
       {"fell_back", s.proposal->fell_back}});
}

void GameService::play_period(Session& s, double quantity, const char* order_kind) {
  (void)order_kind;
  const auto outcome = sim::step(s.state, *s.instance, quantity);
  s.periods.push_back({quantity, outcome, {}, 0.0});
  s.inventory_history.push_back(
      {{"period", outcome.period}, {"on_hand", outcome.ending_inventory}, {"in_transit", in_transit(s.state)}});
  log(s.id, "outcome",
      {{"period", outcome.period},
       {"order", quantity},
       {"arrivals", outcome.arrivals},
       {"demand", outcome.demand},
       {"sales", outcome.sales},
       {"ending_inventory", outcome.ending_inventory},
       {"reward", outcome.reward},
       {"cumulative_reward", s.state.cumulative_reward},
       {"conclude_message", outcome.conclude_message}});
  s.proposal.reset();
  if (sim::finished(s.state, *s.instance)) {
    sim::Trajectory traj{s.instance->id, s.periods, s.state.cumulative_reward};
    log(s.id, "session_finished",
        {{"total_reward", s.state.cumulative_reward}, {"normalized_reward", sim::normalized_reward(traj, *s.instance)}});
    return;
  }
  const auto obs = sim::observe(s.state, *s.instance);
  s.advice = policy::or_recommendation(obs);
  log(s.id, "observe", {{"period", obs.period}, {"on_hand", obs.on_hand}, {"in_transit", obs.in_transit}});
  if (s.mode != GameMode::C) log(s.id, "or_advice", {{"period", obs.period}, {"advice", advice_json(s.advice)}});
  if (s.mode == GameMode::B) propose(s, std::nullopt);
}

Json GameService::submit_order(const std::string& id, const Json& quantity) {
  Session& s = find(id);
  std::lock_guard lock(s.mutex);
  if (s.mode == GameMode::C)
    throw ServiceError(405, "method_not_allowed", "Mode C sessions take guidance, not orders");
  if (sim::finished(s.state, *s.instance)) throw ServiceError(409, "session_finished", "the session is over");
  if (quantity.is_null()) throw ServiceError(400, "invalid_quantity", "quantity is required");
  if (!quantity.is_number()) throw ServiceError(400, "invalid_quantity", "quantity must be a number");
  const double q = quantity.get<double>();
  if (!std::isfinite(q) || q < 0.0 || q != std::floor(q) || q > 1e12)
    throw ServiceError(400, "invalid_quantity", "quantity must be a non-negative integer");
  Json order = {{"period", s.state.period}, {"quantity", q}, {"or_quantity", s.advice.quantity}};
  if (s.proposal) order["ai_quantity"] = s.proposal->decision.quantity;
  log(s.id, "human_order", order);
  play_period(s, q, "human_order");
  return view(s);
}

Json GameService::submit_guidance(const std::string& id, const std::string& text) {
  Session& s = find(id);
  std::lock_guard lock(s.mutex);
  if (s.mode != GameMode::C)
    throw ServiceError(405, "method_not_allowed", "guidance is only accepted in Mode C sessions");
  if (sim::finished(s.state, *s.instance)) throw ServiceError(409, "session_finished", "the session is over");
  if (!s.awaiting_guidance) {
    const int next = ((s.state.period - 1) / config_.pause_every + 1) * config_.pause_every + 1;
    throw ServiceError(409, "not_at_pause", "guidance is only accepted at a pause",
                       {{"next_pause_period", next}, {"period", s.state.period}});
  }
  const int before = s.state.period;
  log(s.id, "guidance", {{"before_period", before}, {"text", text}});
  s.guidance_history.push_back({{"before_period", before}, {"text", text}});
  // The latest guidance steers the following block; empty guidance clears it.
  s.active_guidance = text.empty() ? std::nullopt : std::optional<std::string>(text);
  s.awaiting_guidance = false;

  int played = 0;
  while (played < config_.pause_every && !sim::finished(s.state, *s.instance)) {
    const auto obs = sim::observe(s.state, *s.instance);
    policy::DecideOptions opts;
    opts.prompt.human_mode = policy::HumanMode::C;
    opts.guidance = s.active_guidance;
    double q = s.advice.quantity;
    Json auto_order = {{"period", obs.period}, {"or_quantity", s.advice.quantity}};
    try {
      const auto turn = agent_->decide(obs, s.insights, opts);
      q = turn.decision.quantity;
      auto_order["short_rationale"] = turn.decision.short_rationale_for_human;
      auto_order["fell_back"] = turn.fell_back;
    } catch (const std::exception& e) {
      log(s.id, "agent_error", {{"period", obs.period}, {"error", e.what()}});
      auto_order["fell_back"] = true;
    }
    auto_order["quantity"] = q;
    log(s.id, "auto_order", auto_order);
    play_period(s, q, "auto_order");
    ++played;
  }
  if (!sim::finished(s.state, *s.instance)) s.awaiting_guidance = true;
  Json v = view(s);
  v["auto_played"] = played;
  return v;
}

Json GameService::submit_feedback(const std::string& id, const std::string& text) {
  Session& s = find(id);
  std::lock_guard lock(s.mutex);
  if (s.mode != GameMode::B) throw ServiceError(405, "method_not_allowed", "feedback is only accepted in Mode B sessions");
  if (!config_.two_stage_feedback) throw ServiceError(405, "feedback_disabled", "two-stage feedback is not enabled");
  if (sim::finished(s.state, *s.instance)) throw ServiceError(409, "session_finished", "the session is over");
  if (s.proposal_revised) throw ServiceError(409, "already_revised", "the proposal for this period was already revised");
  log(s.id, "feedback", {{"period", s.state.period}, {"text", text}});
  propose(s, text);
  return view(s);
}

Json GameService::session_view(const std::string& id) const {
  Session& s = find(id);
  std::lock_guard lock(s.mutex);
  return view(s);
}

Json GameService::view(const Session& s) const {
  const auto& in = *s.instance;
  const bool done = sim::finished(s.state, in);
  Json v = {{"session_id", s.id},
            {"token", s.token},
            {"instance_index", s.index},
            {"instance_id", in.id},
            {"mode", to_string(s.mode)},
            {"status", done ? "finished" : "active"},
            {"period", s.state.period},
            {"horizon", in.horizon()},
            {"product_description", in.product_description},
            {"parameters",
             {{"profit", in.profit},
              {"holding", in.holding},
              {"promised_lead", in.promised_lead},
              {"critical_fractile", in.critical_fractile()}}},
            {"on_hand", s.state.on_hand},
            {"in_transit", in_transit(s.state)},
            {"cumulative_reward", s.state.cumulative_reward},
            {"inventory_history", s.inventory_history}};
  v["context"] = done ? std::string() : in.contexts[static_cast<std::size_t>(s.state.period - 1)];
  v["last_conclude"] = s.state.last_conclude ? Json(*s.state.last_conclude) : Json(nullptr);

  Json demand = Json::array();
  for (std::size_t i = 0; i < in.history.size(); ++i)
    demand.push_back({{"period", static_cast<int>(i) - static_cast<int>(in.history.size()) + 1}, {"demand", in.history[i]}});
  for (int t = 1; t < s.state.period; ++t) demand.push_back({{"period", t}, {"demand", in.demands[static_cast<std::size_t>(t - 1)]}});
  v["demand_history"] = demand;
  if (!done) {
    const auto stats = policy::demand_stats(sim::observe(s.state, in).demand_history);
    v["demand_stats"] = {{"mean", stats.mean}, {"std", stats.stddev}, {"count", stats.count}};
  }

  Json orders = Json::array();
  for (const auto& o : s.state.orders)
    orders.push_back({{"placed", o.placed}, {"quantity", o.quantity}, {"arrived_period", o.arrival ? Json(*o.arrival) : Json(nullptr)}});
  v["orders"] = orders;

  if (!done) v["or_recommendation"] = advice_json(s.advice);
  if (s.mode == GameMode::B) {
    v["feedback_enabled"] = config_.two_stage_feedback;
    if (s.proposal)
      v["ai_proposal"] = {{"quantity", s.proposal->decision.quantity},
                          {"display_quantity", std::llround(s.proposal->decision.quantity)},
                          {"short_rationale", s.proposal->decision.short_rationale_for_human},
                          {"revised", s.proposal_revised}};
  }
  if (s.mode == GameMode::C) {
    const int next = s.awaiting_guidance ? s.state.period
                                         : ((s.state.period - 1) / config_.pause_every + 1) * config_.pause_every + 1;
    v["guidance"] = {{"awaiting", s.awaiting_guidance},
                     {"next_pause_period", done ? Json(nullptr) : Json(next)},
                     {"pause_every", config_.pause_every},
                     {"history", s.guidance_history}};
  }
  if (done) {
    sim::Trajectory traj{in.id, s.periods, s.state.cumulative_reward};
    v["normalized_reward"] = sim::normalized_reward(traj, in);
  }
  return v;
}

std::vector<EventRecord> GameService::events(const std::optional<std::string>& session_id) const {
  std::lock_guard lock(log_mutex_);
  if (!session_id) return events_;
  std::vector<EventRecord> out;
  for (const auto& e : events_)
    if (e.session_id == *session_id) out.push_back(e);
  return out;
}

std::string GameService::export_log(const ExportFilter& filter) const {
  std::set<std::string> wanted;
  std::vector<Json> samples;
  {
    std::lock_guard lock(mutex_);
    for (const auto& [id, s] : sessions_) {
      if (filter.token && s->token != *filter.token) continue;
      wanted.insert(id);
      std::lock_guard slock(s->mutex);
      if (!sim::finished(s->state, *s->instance)) continue;
      sim::Trajectory traj{s->instance->id, s->periods, s->state.cumulative_reward};
      samples.push_back({{"record", "sample"},
                         {"participant", s->token},
                         {"scenario", s->instance->id},
                         {"mode", sample_mode(s->mode)},
                         {"reward", sim::normalized_reward(traj, *s->instance)},
                         {"session_id", id}});
    }
  }
  std::string out;
  if (filter.events) {
    for (const auto& e : events()) {
      if (filter.token && !wanted.count(e.session_id)) continue;
      out += Json{{"record", "event"}, {"seq", e.seq}, {"session_id", e.session_id}, {"timestamp", e.timestamp},
                  {"kind", e.kind}, {"payload", e.payload}}.dump() + "\n";
    }
  }
  if (filter.samples)
    for (const auto& j : samples) out += j.dump() + "\n";
  return out;
}

}  // namespace invbench::game
