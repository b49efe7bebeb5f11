#include "invbench/eval/record_store.hpp"

#include "invbench/common/error.hpp"

namespace invbench::eval {

Json record_to_json(const ResultRecord& r) {
  Json j = {{"instance_id", r.instance_id},
            {"method", r.method},
            {"family", r.family},
            {"pattern", r.pattern},
            {"variant", r.variant},
            {"lead", r.lead},
            {"cost", r.cost},
            {"rho", r.rho},
            {"normalized_reward", r.normalized_reward},
            {"total_reward", r.total_reward},
            {"implicit_fractile", r.implicit_fractile},
            {"seed", r.seed},
            {"elapsed_ms", r.elapsed_ms},
            {"ok", r.ok},
            {"periods_completed", r.periods_completed},
            {"fallbacks", r.fallbacks},
            {"llm_calls", r.llm_calls}};
  if (!r.ok) j["error"] = r.error;
  return j;
}

ResultRecord record_from_json(const Json& j) {
  try {
    ResultRecord r;
    r.instance_id = j.at("instance_id").get<std::string>();
    r.method = j.at("method").get<std::string>();
    r.family = j.value("family", std::string{});
    r.pattern = j.value("pattern", std::string{});
    r.variant = j.value("variant", std::string{});
    r.lead = j.value("lead", std::string{});
    r.cost = j.value("cost", std::string{});
    r.rho = j.value("rho", 0.5);
    r.normalized_reward = j.value("normalized_reward", 0.0);
    r.total_reward = j.value("total_reward", 0.0);
    r.implicit_fractile = j.value("implicit_fractile", 0.0);
    r.seed = j.value("seed", std::uint64_t{0});
    r.elapsed_ms = j.value("elapsed_ms", 0.0);
    r.ok = j.value("ok", true);
    r.error = j.value("error", std::string{});
    r.periods_completed = j.value("periods_completed", 0);
    r.fallbacks = j.value("fallbacks", 0);
    r.llm_calls = j.value("llm_calls", 0);
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(std::string("malformed result record: ") + e.what());
  }
}

RecordStore::RecordStore(std::filesystem::path path) : path_(std::move(path)) {
  if (std::filesystem::exists(path_)) {
    for (const auto& j : read_jsonl(path_)) {
      auto r = record_from_json(j);
      auto key = std::make_pair(r.instance_id, r.method);
      if (!index_.count(key)) order_.push_back(key);
      index_[key] = std::move(r);
    }
  } else if (path_.has_parent_path()) {
    std::filesystem::create_directories(path_.parent_path());
  }
  out_.open(path_, std::ios::app);
  if (!out_) throw std::runtime_error("cannot open record store " + path_.string());
}

std::optional<ResultRecord> RecordStore::find(const std::string& instance_id, const std::string& method) const {
  std::lock_guard lock(mutex_);
  const auto it = index_.find({instance_id, method});
  if (it == index_.end() || !it->second.ok) return std::nullopt;
  return it->second;
}

void RecordStore::append(const ResultRecord& record) {
  std::lock_guard lock(mutex_);
  out_ << record_to_json(record).dump() << '\n';
  out_.flush();
  auto key = std::make_pair(record.instance_id, record.method);
  if (!index_.count(key)) order_.push_back(key);
  index_[key] = record;
}

std::vector<ResultRecord> RecordStore::records() const {
  std::lock_guard lock(mutex_);
  std::vector<ResultRecord> out;
  for (const auto& k : order_) out.push_back(index_.at(k));
  return out;
}

std::vector<ResultRecord> load_records(const std::filesystem::path& path) {
  std::vector<ResultRecord> out;
  for (const auto& j : read_jsonl(path)) out.push_back(record_from_json(j));
  return out;
}

}  // namespace invbench::eval
