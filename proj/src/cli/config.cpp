#include "cplearn/cli/config.hpp"

#include <cstdio>
#include <fstream>

#include "cplearn/core/errors.hpp"
#include "cplearn/core/hash.hpp"

namespace cplearn::cli {

namespace {

using nlohmann::json;

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ConfigError("missing '" + where + key + "'");
  return j.at(key);
}

template <class T>
T number(const json& j, const char* key, const std::string& where) {
  const json& v = field(j, key, where);
  if (!v.is_number()) throw ConfigError("'" + where + key + "' must be a number");
  if constexpr (std::is_integral_v<T>) {
    if (!v.is_number_integer()) throw ConfigError("'" + where + key + "' must be an integer");
  }
  return v.get<T>();
}

template <class T>
T number_or(const json& j, const char* key, const std::string& where, T fallback) {
  return j.contains(key) ? number<T>(j, key, where) : fallback;
}

std::string text(const json& j, const char* key, const std::string& where) {
  const json& v = field(j, key, where);
  if (!v.is_string()) throw ConfigError("'" + where + key + "' must be a string");
  return v.get<std::string>();
}

bool flag_or(const json& j, const char* key, const std::string& where, bool fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_boolean()) throw ConfigError("'" + where + key + "' must be true or false");
  return j.at(key).get<bool>();
}

NoiseModel parse_noise(const json& j) {
  return NoiseModel(noise_kind_from_string(text(j, "kind", "network.noise.")),
                    number<double>(j, "omega", "network.noise."));
}

NetworkSpec parse_network(const json& j) {
  const std::string w = "network.";
  const int n = number<int>(j, "n", w);
  const int d = number<int>(j, "d", w);
  const double h = number<double>(j, "h", w);
  const double r0 = number_or<double>(j, "R0", w, 0.0);
  const NoiseModel noise = parse_noise(field(j, "noise", w));

  Eigen::VectorXd offset;
  if (j.contains("offset")) {
    const json& o = j.at("offset");
    if (o.is_object()) {
      if (text(o, "kind", "network.offset.") != "chain") throw ConfigError("unknown offset kind");
      offset = chain_offset(n, d, number<double>(o, "spacing", "network.offset."));
    } else if (o.is_array()) {
      const auto values = o.get<std::vector<double>>();
      offset = Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
    } else {
      throw ConfigError("'network.offset' must be an object or an array");
    }
  }

  const std::string topology = text(j, "topology", w);
  if (topology == "complete" || topology == "chain") {
    if (n < 1) throw ConfigError("'network.n' must be positive");
    const double weight = number_or<double>(j, "weight", w, 1.0);
    if (topology == "complete") {
      auto spec = NetworkSpec::complete(n, d, h, weight, noise, r0);
      return offset.size() ? NetworkSpec(n, d, h, spec.weights(), noise, r0, offset) : spec;
    }
    return NetworkSpec::chain(n, d, h, weight, noise, r0, offset);
  }
  if (topology == "weights") {
    const auto rows = field(j, "weights", w).get<std::vector<std::vector<double>>>();
    Eigen::MatrixXd k(static_cast<Eigen::Index>(rows.size()), n);
    if (static_cast<int>(rows.size()) != n) throw ConfigError("'network.weights' must be n x n");
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != n) {
        throw ConfigError("'network.weights' must be n x n");
      }
      for (int c = 0; c < n; ++c) k(i, c) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
    }
    return NetworkSpec(n, d, h, k, noise, r0, offset);
  }
  throw ConfigError("unknown topology '" + topology + "'");
}

CouplingFunction parse_coupling(const json& j, double domain) {
  const std::string w = "coupling.";
  const std::string kind = text(j, "kind", w);
  if (kind == "cucker-smale") {
    return CouplingFunction::cucker_smale(number<double>(j, "gamma", w), number<double>(j, "eta", w),
                                          domain);
  }
  if (kind == "formation-repulsive") {
    return CouplingFunction::formation_repulsive(number<double>(j, "gamma", w),
                                                 number<double>(j, "eta", w),
                                                 number<double>(j, "r0", w),
                                                 number<double>(j, "a", w), domain);
  }
  throw ConfigError("unknown coupling kind '" + kind + "'");
}

std::vector<SweepPanel> parse_sweep(const json& j) {
  std::vector<SweepPanel> panels;
  if (!j.is_array()) throw ConfigError("'sweep' must be an array of panels");
  for (const json& p : j) {
    SweepPanel panel{text(p, "name", "sweep."), text(p, "parameter", "sweep."), {},
                     number<double>(p, "domain", "sweep.")};
    const json& values = field(p, "values", "sweep.");
    if (!values.is_array() || values.empty()) throw ConfigError("'sweep.values' must be a non-empty array");
    panel.values.assign(values.begin(), values.end());
    if (!(panel.domain > 0.0)) throw ConfigError("'sweep.domain' must be positive");
    panels.push_back(std::move(panel));
  }
  return panels;
}

}  // namespace

ExperimentConfig parse_config(const json& source) {
  if (!source.is_object()) throw ConfigError("config must be a JSON object");
  try {
    const double domain = number<double>(source, "domain", "");
    if (!(domain > 0.0)) throw ConfigError("'domain' must be positive");
    NetworkSpec network = parse_network(field(source, "network", ""));
    CouplingFunction coupling = parse_coupling(field(source, "coupling", ""), domain);
    const json& b = field(source, "basis", "");
    BasisFamily basis(basis_kind_from_string(text(b, "kind", "basis.")), number<int>(b, "Q", "basis."),
                      domain);

    const auto t_list = field(source, "T_list", "").get<std::vector<long long>>();
    if (t_list.empty()) throw ConfigError("'T_list' must not be empty");
    for (long long t : t_list) {
      if (t < 1) throw ConfigError("'T_list' entries must be >= 1");
    }
    const auto seeds = field(source, "seeds", "").get<std::vector<std::uint64_t>>();
    if (seeds.empty()) throw ConfigError("'seeds' must not be empty");
    const int bins = number_or<int>(source, "bins", "", 100);
    if (bins < 1) throw ConfigError("'bins' must be >= 1");
    const long long burn_in = number_or<long long>(source, "burn_in", "", 1000);
    if (burn_in < 0) throw ConfigError("'burn_in' must be >= 0");
    const long long thin = number_or<long long>(source, "thin", "", 1);
    if (thin < 1) throw ConfigError("'thin' must be >= 1");
    const long long resim_T = number_or<long long>(source, "resim_T", "", 0);
    if (resim_T < 0) throw ConfigError("'resim_T' must be >= 0");
    std::vector<SweepPanel> sweep;
    if (source.contains("sweep")) sweep = parse_sweep(source.at("sweep"));

    const std::string canonical = source.dump();
    return {source,
            Fnv1a().text(canonical).digest(),
            source.value("name", std::string("custom")),
            std::move(network),
            std::move(coupling),
            domain,
            std::move(basis),
            t_list,
            seeds,
            bins,
            burn_in,
            thin,
            flag_or(source, "kl", "", true),
            resim_T,
            flag_or(source, "project_perp", "", false),
            std::move(sweep)};
  } catch (const json::exception& err) {
    throw ConfigError(std::string("invalid config: ") + err.what());
  } catch (const DomainError& err) {
    throw ConfigError(std::string("invalid config: ") + err.what());
  }
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path.string());
  try {
    return parse_config(json::parse(in));
  } catch (const json::parse_error& err) {
    throw ConfigError(path.string() + ": " + err.what());
  }
}

ExperimentConfig with_override(const ExperimentConfig& config, const std::string& pointer,
                               const nlohmann::json& value) {
  json source = config.source;
  try {
    source[json::json_pointer(pointer)] = value;
  } catch (const json::exception& err) {
    throw ConfigError("bad parameter path '" + pointer + "': " + err.what());
  }
  return parse_config(source);
}

std::string hash_hex(std::uint64_t hash) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace cplearn::cli
