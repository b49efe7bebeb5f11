#include "invbench/instances/instance_io.hpp"

#include <map>

#include "invbench/common/error.hpp"

namespace invbench::instances {
namespace {

void check_version(const Json& doc) {
  if (!doc.is_object() || !doc.contains("schema_version"))
    throw SchemaError("document has no schema_version");
  const auto& v = doc.at("schema_version");
  if (!v.is_number_integer() || v.get<int>() != kInstanceSchemaVersion)
    throw SchemaError("unsupported instance schema_version " + v.dump() + " (this build reads " +
                      std::to_string(kInstanceSchemaVersion) + ")");
}

template <typename T>
T field(const Json& doc, const char* name) {
  if (!doc.contains(name)) throw SchemaError(std::string("instance is missing field '") + name + "'");
  try {
    return doc.at(name).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw SchemaError(std::string("instance field '") + name + "' has the wrong type");
  }
}

}  // namespace

Json instance_to_json(const sim::Instance& in) {
  Json lead = Json::array();
  for (const auto& l : in.lead_times) {
    if (l.is_lost())
      lead.push_back("lost");
    else
      lead.push_back(l.periods());
  }
  const auto& pv = in.provenance;
  Json prov = {{"family", sim::to_string(pv.family)}};
  if (!pv.pattern.empty()) prov["pattern"] = pv.pattern;
  if (!pv.variant.empty()) prov["variant"] = pv.variant;
  if (pv.realization) prov["realization"] = pv.realization;
  if (!pv.article.empty()) prov["article"] = pv.article;
  if (!pv.lead_config.empty()) prov["lead_config"] = pv.lead_config;
  if (!pv.cost_config.empty()) prov["cost_config"] = pv.cost_config;
  return Json{{"schema_version", kInstanceSchemaVersion},
              {"id", in.id},
              {"horizon", in.horizon()},
              {"demands", in.demands},
              {"history", in.history},
              {"lead_times", lead},
              {"promised_lead", in.promised_lead},
              {"profit", in.profit},
              {"holding", in.holding},
              {"contexts", in.contexts},
              {"product_description", in.product_description},
              {"provenance", prov}};
}

sim::Instance instance_from_json(const Json& doc) {
  check_version(doc);
  sim::Instance in;
  in.id = field<std::string>(doc, "id");
  in.demands = field<std::vector<std::int64_t>>(doc, "demands");
  in.history = field<std::vector<std::int64_t>>(doc, "history");
  if (doc.contains("horizon") && field<int>(doc, "horizon") != in.horizon())
    throw ValidationError("horizon", "does not match the number of demands");
  if (!doc.contains("lead_times")) throw SchemaError("instance is missing field 'lead_times'");
  const auto& lead = doc.at("lead_times");
  if (!lead.is_array()) throw SchemaError("instance field 'lead_times' has the wrong type");
  for (const auto& l : lead) {
    if (l.is_string() && l.get<std::string>() == "lost")
      in.lead_times.push_back(sim::LeadTime::lost());
    else if (l.is_number_integer())
      in.lead_times.push_back(sim::LeadTime::fixed(l.get<int>()));
    else
      throw SchemaError("lead time entries must be integers or \"lost\", got " + l.dump());
  }
  in.promised_lead = field<int>(doc, "promised_lead");
  in.profit = field<double>(doc, "profit");
  in.holding = field<double>(doc, "holding");
  in.contexts = doc.contains("contexts") ? field<std::vector<std::string>>(doc, "contexts") : std::vector<std::string>{};
  in.product_description = doc.value("product_description", std::string{});
  if (doc.contains("provenance")) {
    const auto& p = doc.at("provenance");
    in.provenance.family = sim::family_from_string(p.value("family", std::string("custom")));
    in.provenance.pattern = p.value("pattern", std::string{});
    in.provenance.variant = p.value("variant", std::string{});
    in.provenance.realization = p.value("realization", 0);
    in.provenance.article = p.value("article", std::string{});
    in.provenance.lead_config = p.value("lead_config", std::string{});
    in.provenance.cost_config = p.value("cost_config", std::string{});
  }
  in.validate();
  return in;
}

std::string serialize_instances(const std::vector<sim::Instance>& instances) {
  Json arr = Json::array();
  for (const auto& in : instances) {
    Json j = instance_to_json(in);
    j.erase("schema_version");
    arr.push_back(std::move(j));
  }
  return Json{{"schema_version", kInstanceSchemaVersion}, {"instances", arr}}.dump(1) + "\n";
}

void save_instances(const std::vector<sim::Instance>& instances, const std::filesystem::path& path) {
  write_text_file(path, serialize_instances(instances));
}

std::vector<sim::Instance> load_instances(const std::filesystem::path& path) {
  namespace fs = std::filesystem;
  std::vector<sim::Instance> out;
  if (fs::is_directory(path)) {
    const Json manifest = read_json_file(path / "manifest.json");
    check_version(manifest);
    for (const auto& id : manifest.at("instances")) {
      out.push_back(instance_from_json(read_json_file(path / (id.get<std::string>() + ".json"))));
    }
    return out;
  }
  const Json doc = read_json_file(path);
  check_version(doc);
  if (!doc.contains("instances") || !doc.at("instances").is_array())
    throw SchemaError(path.string() + ": expected an 'instances' array");
  for (Json item : doc.at("instances")) {
    item["schema_version"] = kInstanceSchemaVersion;
    out.push_back(instance_from_json(item));
  }
  return out;
}

void write_instance_directory(const std::vector<sim::Instance>& instances, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  Json ids = Json::array();
  std::map<std::string, int> by_lead, by_cost, by_family;
  for (const auto& in : instances) {
    write_text_file(dir / (in.id + ".json"), instance_to_json(in).dump(1) + "\n");
    ids.push_back(in.id);
    ++by_lead[in.provenance.lead_config];
    ++by_cost[in.provenance.cost_config];
    ++by_family[sim::to_string(in.provenance.family)];
  }
  const Json manifest = {{"schema_version", kInstanceSchemaVersion},
                         {"count", instances.size()},
                         {"instances", ids},
                         {"by_lead_config", by_lead},
                         {"by_cost_config", by_cost},
                         {"by_family", by_family}};
  write_text_file(dir / "manifest.json", manifest.dump(1) + "\n");
}

}  // namespace invbench::instances
