#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "invbench/common/json_util.hpp"
#include "invbench/game/experiment.hpp"
#include "invbench/policy/agent.hpp"
#include "invbench/sim/simulator.hpp"

namespace invbench::game {

/// Request-level failure with an HTTP-style status (400, 404, 405, 409).
class ServiceError : public std::runtime_error {
 public:
  ServiceError(int status, std::string code, const std::string& what, Json details = nullptr)
      : std::runtime_error(what), status_(status), code_(std::move(code)), details_(std::move(details)) {}
  int status() const noexcept { return status_; }
  const std::string& code() const noexcept { return code_; }
  const Json& details() const noexcept { return details_; }

 private:
  int status_;
  std::string code_;
  Json details_;
};

struct Assignment {
  std::string token;
  std::array<GameMode, 3> modes{};  // modes[i] is the mode for instance i
  std::size_t permutation = 0;      // index into mode_permutations()
};

struct EventRecord {
  std::uint64_t seq = 0;
  std::string session_id;
  std::string timestamp;
  std::string kind;  // observe, or_advice, ai_proposal, human_order, guidance, auto_order, outcome, ...
  Json payload;
};

enum class AssignmentPolicy { Hashed, Balanced };

struct ServiceConfig {
  std::vector<sim::Instance> instances;  // exactly three
  std::uint64_t seed = 42;
  AssignmentPolicy assignment = AssignmentPolicy::Hashed;
  int pause_every = 4;
  bool two_stage_feedback = false;  // Mode B revision endpoint
  std::shared_ptr<policy::ChatBackend> backend;  // OR->LLM pipeline for Modes B and C
  std::optional<std::filesystem::path> log_path;  // JSON lines, flushed per event
  std::function<std::string()> clock;             // ISO-8601 timestamps; defaults to UTC now
};

struct ExportFilter {
  std::optional<std::string> token;
  bool events = true;
  bool samples = true;
};

/// Hosts Mode A/B/C sessions. Thread-safe; requests on one session are serialized.
class GameService {
 public:
  explicit GameService(ServiceConfig config);
  ~GameService();
  GameService(const GameService&) = delete;
  GameService& operator=(const GameService&) = delete;

  /// Idempotent per token.
  Assignment create_assignment(const std::string& token);
  Json assignment_view(const std::string& token) const;

  /// Starts instance `index` for `token`; 409 if it was started before.
  Json start_session(const std::string& token, int index);
  Json session_view(const std::string& session_id) const;
  /// Modes A and B; `quantity` must be a non-negative integer.
  Json submit_order(const std::string& session_id, const Json& quantity);
  /// Mode C, at a pause only; then the agent plays until the next pause or the end.
  Json submit_guidance(const std::string& session_id, const std::string& text);
  /// Mode B with two-stage feedback enabled: revises the pending proposal.
  Json submit_feedback(const std::string& session_id, const std::string& text);

  std::vector<EventRecord> events(const std::optional<std::string>& session_id = std::nullopt) const;
  /// JSON lines: {"record": "event", ...} and, per finished session,
  /// {"record": "sample", "participant", "scenario", "mode", "reward"}.
  std::string export_log(const ExportFilter& filter = {}) const;

  const ServiceConfig& config() const { return config_; }
  Json health() const;

 private:
  struct Session;
  Session& find(const std::string& id) const;
  void log(const std::string& session_id, const std::string& kind, Json payload);
  Json view(const Session& s) const;
  void propose(Session& s, const std::optional<std::string>& feedback);
  void play_period(Session& s, double quantity, const char* order_kind);
  std::string now() const;

  ServiceConfig config_;
  std::unique_ptr<policy::Agent> agent_;
  mutable std::mutex mutex_;
  std::map<std::string, Assignment> assignments_;
  std::vector<std::string> assignment_order_;
  std::vector<std::size_t> balanced_block_;
  std::map<std::string, std::unique_ptr<Session>> sessions_;
  std::map<std::pair<std::string, int>, std::string> session_by_slot_;
  mutable std::mutex log_mutex_;
  std::vector<EventRecord> events_;
  std::ofstream log_file_;
  std::uint64_t next_session_ = 1;
};

}  // namespace invbench::game
