#include "rabs/serialize.h"

#include <fstream>
#include <sstream>

#include "rabs/error.h"

namespace rabs {
namespace {

template <typename T>
void read_opt(const Json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

template <typename T>
std::vector<T> one_or_many(const Json& j) {
  if (j.is_array()) return j.get<std::vector<T>>();
  return {j.get<T>()};
}

Scenario scenario_section(const Json& j, const RadioParams& radio) {
  if (j.contains("scenario")) {
    Scenario s = scenario_from_json(j.at("scenario"));
    if (j.contains("radio")) s.radio = radio;
    return s;
  }
  double side = 250.0, spacing = 50.0, radius = 25.0;
  GridAnchor anchor = GridAnchor::kCellCenter;
  if (j.contains("grid")) {
    const Json& g = j.at("grid");
    read_opt(g, "side_m", side);
    read_opt(g, "spacing_m", spacing);
    read_opt(g, "access_cell_radius_m", radius);
    if (g.contains("anchor")) {
      const std::string a = g.at("anchor").get<std::string>();
      if (a == "corner") {
        anchor = GridAnchor::kCornerAnchored;
      } else if (a != "cell_center") {
        throw InvalidConfig("grid.anchor must be 'cell_center' or 'corner'");
      }
    }
  }
  return build_manhattan_grid(side, spacing, radio, radius, anchor);
}

}  // namespace

Json to_json(const RadioParams& r) {
  return Json{{"carrier_frequency_hz", r.carrier_frequency_hz},
              {"rb_bandwidth_hz", r.rb_bandwidth_hz},
              {"per_rb_tx_power_w", r.per_rb_tx_power_w},
              {"noise_psd_dbm_per_hz", r.noise_psd_dbm_per_hz},
              {"se_max_bps_per_hz", r.se_max_bps_per_hz},
              {"main_lobe_gain_db", r.main_lobe_gain_db},
              {"los_exponent", r.los_exponent},
              {"nlos_exponent", r.nlos_exponent},
              {"pathloss_threshold_db", r.pathloss_threshold_db},
              {"cap_access_se", r.cap_access_se}};
}

RadioParams radio_from_json(const Json& j) {
  RadioParams r;
  read_opt(j, "carrier_frequency_hz", r.carrier_frequency_hz);
  read_opt(j, "rb_bandwidth_hz", r.rb_bandwidth_hz);
  read_opt(j, "per_rb_tx_power_w", r.per_rb_tx_power_w);
  read_opt(j, "noise_psd_dbm_per_hz", r.noise_psd_dbm_per_hz);
  read_opt(j, "se_max_bps_per_hz", r.se_max_bps_per_hz);
  read_opt(j, "main_lobe_gain_db", r.main_lobe_gain_db);
  read_opt(j, "los_exponent", r.los_exponent);
  read_opt(j, "nlos_exponent", r.nlos_exponent);
  read_opt(j, "pathloss_threshold_db", r.pathloss_threshold_db);
  read_opt(j, "cap_access_se", r.cap_access_se);
  r.validate();
  return r;
}

Json to_json(const Scenario& s) {
  Json sites = Json::array();
  for (const Site& site : s.sites) {
    sites.push_back({{"id", site.id}, {"x_m", site.pos.x_m}, {"y_m", site.pos.y_m}});
  }
  return Json{{"sites", sites},
              {"macro_bs", {{"x_m", s.macro_bs.x_m}, {"y_m", s.macro_bs.y_m}}},
              {"radio", to_json(s.radio)},
              {"access_cell_radius_m", s.access_cell_radius_m}};
}

Scenario scenario_from_json(const Json& j) {
  Scenario s;
  for (const Json& site : j.at("sites")) {
    s.sites.push_back({site.at("id").get<int>(),
                       {site.at("x_m").get<double>(), site.at("y_m").get<double>()}});
  }
  const Json& mbs = j.at("macro_bs");
  s.macro_bs = {mbs.at("x_m").get<double>(), mbs.at("y_m").get<double>()};
  if (j.contains("radio")) s.radio = radio_from_json(j.at("radio"));
  read_opt(j, "access_cell_radius_m", s.access_cell_radius_m);
  s.validate();
  return s;
}

Json to_json(const DemandVector& d) {
  Json out = Json::object();
  for (int i = 0; i < d.size(); ++i) out[std::to_string(i)] = d[i];
  return out;
}

DemandVector demands_from_json(const Json& j, int site_count) {
  DemandVector d;
  d.demands_bps.assign(site_count, 0.0);
  std::vector<bool> seen(site_count, false);
  for (const auto& [key, value] : j.items()) {
    int id = -1;
    try {
      std::size_t used = 0;
      id = std::stoi(key, &used);
      if (used != key.size()) id = -1;
    } catch (const std::exception&) {
      id = -1;
    }
    if (id < 0 || id >= site_count) throw InvalidInput("demand for unknown site '" + key + "'");
    const double v = value.get<double>();
    if (!(v >= 0.0)) throw InvalidInput("demand for site " + key + " must be nonnegative");
    d.demands_bps[id] = v;
    seen[id] = true;
  }
  for (int i = 0; i < site_count; ++i) {
    if (!seen[i]) throw InvalidInput("missing demand for site " + std::to_string(i));
  }
  return d;
}

std::string to_csv(const DemandVector& d) {
  std::ostringstream os;
  os.precision(12);
  os << "site_id,demand_mbps\n";
  for (int i = 0; i < d.size(); ++i) os << i << ',' << d[i] / 1e6 << '\n';
  return os.str();
}

Json to_json(const LinkBudget& b) {
  return Json{{"distance_m", b.distance_m},
              {"pathloss_linear", b.pathloss_linear},
              {"pathloss_db", b.pathloss_db},
              {"snr_linear", b.snr_linear},
              {"unit_rate_bps", b.unit_rate_bps}};
}

Json to_json(const Plan& p) {
  Json bh = Json::array(), ac = Json::array(), flows = Json::array();
  for (const auto& b : p.backhaul_rbs) bh.push_back({{"i", b.i}, {"j", b.j}, {"rbs", b.rbs}});
  for (const auto& a : p.access_rbs) ac.push_back({{"i", a.site}, {"rbs", a.rbs}});
  for (const auto& f : p.flows) flows.push_back({{"route_index", f.route_index}, {"bps", f.bps}});
  return Json{{"deployment", p.deployment},
              {"backhaul_rbs", bh},
              {"access_rbs", ac},
              {"flows", flows},
              {"served_bps", p.served_bps}};
}

Plan plan_from_json(const Json& j) {
  Plan p;
  p.deployment = j.at("deployment").get<std::vector<int>>();
  for (const Json& b : j.at("backhaul_rbs")) {
    p.backhaul_rbs.push_back({b.at("i").get<int>(), b.at("j").get<int>(), b.at("rbs").get<int>()});
  }
  for (const Json& a : j.at("access_rbs")) {
    p.access_rbs.push_back({a.at("i").get<int>(), a.at("rbs").get<int>()});
  }
  for (const Json& f : j.at("flows")) {
    p.flows.push_back({f.at("route_index").get<int>(), f.at("bps").get<double>()});
  }
  p.served_bps = j.at("served_bps").get<double>();
  return p;
}

PlanConfig plan_config_from_json(const Json& j) {
  try {
    PlanConfig c = default_plan_config();
    RadioParams radio;
    if (j.contains("radio")) radio = radio_from_json(j.at("radio"));
    c.scenario = scenario_section(j, radio);
    if (j.contains("traffic")) {
      const Json& t = j.at("traffic");
      read_opt(t, "mu_bps", c.traffic.mu_bps);
      read_opt(t, "sigma", c.traffic.sigma);
      read_opt(t, "seed", c.traffic.seed);
      c.traffic.validate();
    }
    if (j.contains("demands_bps")) {
      c.demands = demands_from_json(j.at("demands_bps"), c.scenario.site_count());
    }
    read_opt(j, "N", c.rabs_budget);
    read_opt(j, "K", c.rb_budget);
    read_opt(j, "H", c.max_hops);
    read_opt(j, "route_ceiling", c.route_ceiling);
    read_opt(j, "placement_seed", c.placement_seed);
    read_opt(j, "redistribute_rounding_slack", c.options.redistribute_rounding_slack);
    if (j.contains("oracle_limits")) {
      const Json& l = j.at("oracle_limits");
      read_opt(l, "max_sites", c.oracle_limits.max_sites);
      read_opt(l, "max_K", c.oracle_limits.max_K);
      read_opt(l, "max_routes", c.oracle_limits.max_routes);
      read_opt(l, "max_enumerations", c.oracle_limits.max_enumerations);
    }
    if (c.rabs_budget < 0 || c.rb_budget < 0) throw InvalidConfig("N and K must be nonnegative");
    if (c.max_hops < 1) throw InvalidConfig("H must be >= 1");
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidConfig(std::string("malformed config: ") + e.what());
  }
}

Json to_json(const PlanConfig& c) {
  Json j{{"scenario", to_json(c.scenario)},
         {"traffic", {{"mu_bps", c.traffic.mu_bps}, {"sigma", c.traffic.sigma}, {"seed", c.traffic.seed}}},
         {"N", c.rabs_budget},
         {"K", c.rb_budget},
         {"H", c.max_hops},
         {"route_ceiling", c.route_ceiling},
         {"placement_seed", c.placement_seed},
         {"redistribute_rounding_slack", c.options.redistribute_rounding_slack},
         {"oracle_limits",
          {{"max_sites", c.oracle_limits.max_sites},
           {"max_K", c.oracle_limits.max_K},
           {"max_routes", c.oracle_limits.max_routes},
           {"max_enumerations", c.oracle_limits.max_enumerations}}}};
  if (c.demands) j["demands_bps"] = to_json(*c.demands);
  return j;
}

ExperimentSpec experiment_spec_from_json(const Json& j) {
  try {
    ExperimentSpec s;
    RadioParams radio;
    if (j.contains("radio")) radio = radio_from_json(j.at("radio"));
    s.scenario = scenario_section(j, radio);
    if (j.contains("traffic")) {
      const Json& t = j.at("traffic");
      read_opt(t, "mu_bps", s.mu_bps);
      if (t.contains("sigmas")) s.sigmas = one_or_many<double>(t.at("sigmas"));
      if (t.contains("sigma")) s.sigmas = one_or_many<double>(t.at("sigma"));
      if (t.contains("seeds")) {
        s.seeds = one_or_many<std::uint64_t>(t.at("seeds"));
      } else if (t.contains("replications")) {
        const int reps = t.at("replications").get<int>();
        if (reps < 1) throw InvalidConfig("replications must be >= 1");
        std::uint64_t base = 0;
        read_opt(t, "seed_base", base);
        s.seeds.clear();
        for (int k = 0; k < reps; ++k) s.seeds.push_back(base + k);
      }
    }
    if (j.contains("K")) s.K = one_or_many<int>(j.at("K"));
    if (j.contains("N")) s.N = one_or_many<int>(j.at("N"));
    if (j.contains("H")) s.H = one_or_many<int>(j.at("H"));
    if (j.contains("methods")) {
      s.methods.clear();
      for (const auto& m : one_or_many<std::string>(j.at("methods"))) s.methods.push_back(parse_method(m));
    }
    read_opt(j, "placement_seed_offset", s.placement_seed_offset);
    read_opt(j, "redistribute_rounding_slack", s.options.redistribute_rounding_slack);
    read_opt(j, "route_ceiling", s.route_ceiling);
    read_opt(j, "threads", s.threads);
    read_opt(j, "output", s.output);
    if (j.contains("oracle_limits")) {
      const Json& l = j.at("oracle_limits");
      read_opt(l, "max_sites", s.oracle_limits.max_sites);
      read_opt(l, "max_K", s.oracle_limits.max_K);
      read_opt(l, "max_routes", s.oracle_limits.max_routes);
      read_opt(l, "max_enumerations", s.oracle_limits.max_enumerations);
    }
    s.validate();
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidConfig(std::string("malformed experiment spec: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot open " + path + " for writing");
  out << text;
}

}  // namespace rabs
