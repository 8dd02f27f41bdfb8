#include <fstream>
#include <sstream>
#include <stdexcept>

#include "divex/harness.hpp"
#include "json.hpp"

namespace divex {

namespace {

using nlohmann::json;

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const char* where) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* a : allowed)
      if (item.key() == a) {
        known = true;
        break;
      }
    if (!known)
      throw std::invalid_argument("config: unknown field '" + item.key() +
                                  "' in " + where);
  }
}

Box parse_box(const json& j, const char* where) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument(std::string("config: ") + where +
                                " must be an array of [lo, hi] pairs");
  Box box;
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2)
      throw std::invalid_argument(std::string("config: each ") + where +
                                  " axis needs exactly [lo, hi]");
    box.lo.push_back(pair.at(0).get<double>());
    box.hi.push_back(pair.at(1).get<double>());
  }
  return box;
}

json box_to_json(const Box& b) {
  json j = json::array();
  for (std::size_t i = 0; i < b.dim(); ++i)
    j.push_back(json::array({b.lo[i], b.hi[i]}));
  return j;
}

}  // namespace

ExperimentConfig parse_experiment(const std::string& json_text) {
  const json j = json::parse(json_text);
  if (!j.is_object())
    throw std::invalid_argument("config: top level must be an object");
  check_keys(j,
             {"arm", "strategies", "selector", "n_steps", "eval_tau",
              "cell_size", "coverage_bounds", "repetitions", "master_seed"},
             "the top level");

  ExperimentConfig cfg = default_experiment();

  if (j.contains("arm")) {
    const json& a = j.at("arm");
    check_keys(a, {"joint_count", "segment_length", "joint_limit"}, "arm");
    if (a.contains("joint_count"))
      cfg.arm.joint_count = a.at("joint_count").get<int>();
    if (a.contains("segment_length"))
      cfg.arm.segment_length = a.at("segment_length").get<double>();
    if (a.contains("joint_limit"))
      cfg.arm.joint_limit = a.at("joint_limit").get<double>();
  }

  if (j.contains("strategies")) {
    const json& arr = j.at("strategies");
    if (!arr.is_array())
      throw std::invalid_argument("config: strategies must be an array");
    cfg.strategies.clear();
    for (const json& s : arr) {
      check_keys(s, {"type", "d", "goal_bounds"}, "a strategy");
      StrategyConfig sc;
      sc.type = s.at("type").get<std::string>();
      if (s.contains("d")) sc.d = s.at("d").get<double>();
      if (s.contains("goal_bounds"))
        sc.goal_bounds = parse_box(s.at("goal_bounds"), "goal_bounds");
      cfg.strategies.push_back(std::move(sc));
    }
  }

  if (j.contains("selector")) {
    const json& s = j.at("selector");
    check_keys(s, {"type", "alpha", "window", "fictitious_count", "strategy",
                   "p"},
               "selector");
    cfg.selector = SelectorConfig{};
    if (s.contains("type")) cfg.selector.type = s.at("type").get<std::string>();
    if (s.contains("alpha"))
      cfg.selector.adapt.alpha = s.at("alpha").get<double>();
    if (s.contains("window"))
      cfg.selector.adapt.window = s.at("window").get<int>();
    if (s.contains("fictitious_count"))
      cfg.selector.adapt.fictitious_count = s.at("fictitious_count").get<int>();
    if (s.contains("strategy"))
      cfg.selector.pure_strategy = s.at("strategy").get<std::size_t>();
    if (s.contains("p")) cfg.selector.p = s.at("p").get<double>();
  }

  if (j.contains("n_steps")) cfg.n_steps = j.at("n_steps").get<int>();
  if (j.contains("eval_tau")) cfg.eval_tau = j.at("eval_tau").get<double>();
  if (j.contains("cell_size")) cfg.cell_size = j.at("cell_size").get<double>();
  if (j.contains("coverage_bounds"))
    cfg.coverage_bounds =
        parse_box(j.at("coverage_bounds"), "coverage_bounds");
  if (j.contains("repetitions"))
    cfg.repetitions = j.at("repetitions").get<int>();
  if (j.contains("master_seed"))
    cfg.master_seed = j.at("master_seed").get<std::uint64_t>();

  cfg.validate();
  return cfg;
}

ExperimentConfig load_experiment(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_experiment(buf.str());
}

std::string experiment_to_json(const ExperimentConfig& cfg) {
  cfg.validate();
  json j;
  j["arm"] = {{"joint_count", cfg.arm.joint_count},
              {"segment_length", cfg.arm.segment_length},
              {"joint_limit", cfg.arm.joint_limit}};

  json strategies = json::array();
  for (const auto& s : cfg.strategies) {
    json sj;
    sj["type"] = s.type;
    if (s.type == "rgb") {
      sj["d"] = s.d;
      sj["goal_bounds"] = box_to_json(s.goal_bounds);
    }
    strategies.push_back(std::move(sj));
  }
  j["strategies"] = std::move(strategies);

  // the ledger parameters are written for every selector type so a replay of
  // the emitted snapshot reconstructs identical diversity estimates
  json sel;
  sel["type"] = cfg.selector.type;
  sel["alpha"] = cfg.selector.adapt.alpha;
  sel["window"] = cfg.selector.adapt.window;
  sel["fictitious_count"] = cfg.selector.adapt.fictitious_count;
  if (cfg.selector.type == "pure") sel["strategy"] = cfg.selector.pure_strategy;
  if (cfg.selector.type == "mixture") sel["p"] = cfg.selector.p;
  j["selector"] = std::move(sel);

  j["n_steps"] = cfg.n_steps;
  j["eval_tau"] = cfg.eval_tau;
  if (cfg.cell_size) j["cell_size"] = *cfg.cell_size;
  if (cfg.coverage_bounds)
    j["coverage_bounds"] = box_to_json(*cfg.coverage_bounds);
  j["repetitions"] = cfg.repetitions;
  j["master_seed"] = cfg.master_seed;
  return j.dump(2) + "\n";
}

void save_experiment(const ExperimentConfig& cfg,
                     const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  const std::string text = experiment_to_json(cfg);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("failed writing " + file.string());
}

}  // namespace divex
