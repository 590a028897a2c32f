#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "app/app.hpp"

namespace qillum::app {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ';')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? ";" : "") + items[i];
  return out;
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || trim(value.substr(used)) != "") throw DomainError("bad number for " + key + ": '" + value + "'");
  return v;
}

std::string normalise_key(std::string key) {
  std::replace(key.begin(), key.end(), '-', '_');
  return key;
}

}  // namespace

std::string format_number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

double SweepConfig::idler() const {
  if (n_idler >= 0.0) return n_idler;
  return method == Method::Coincidence ? 1e6 : 1.0;
}

std::vector<double> SweepConfig::ns_grid() const {
  std::vector<double> g(ns_count);
  const double la = std::log(ns_min), lb = std::log(ns_max);
  for (int i = 0; i < ns_count; ++i) g[i] = std::exp(la + (lb - la) * i / (ns_count - 1));
  g.front() = ns_min;
  g.back() = ns_max;
  return g;
}

void SweepConfig::validate() const {
  if (!(ns_min > 0.0 && ns_min < ns_max)) throw DomainError("N_S grid needs 0 < ns_min < ns_max");
  if (ns_count < 2) throw DomainError("ns_count must be >= 2");
  require_kappa(kappa);
  require_bath(n_bath);
  if (modes < 1) throw DomainError("modes must be >= 1");
  if (!(split >= 0.0 && split <= 1.0)) throw DomainError("split must lie in [0, 1]");
  for (const auto& s : states) family_for(s, *this);
}

std::vector<std::pair<std::string, std::string>> SweepConfig::entries() const {
  return {
      {"states", join(states)},
      {"pairs", join(pairs)},
      {"detector", std::string(to_string(detector))},
      {"method", std::string(to_string(method))},
      {"kappa", format_number(kappa)},
      {"nb", format_number(n_bath)},
      {"ni", format_number(idler())},
      {"modes", std::to_string(modes)},
      {"split", format_number(split)},
      {"ns_min", format_number(ns_min)},
      {"ns_max", format_number(ns_max)},
      {"ns_count", std::to_string(ns_count)},
  };
}

void apply_entry(SweepConfig& c, const std::string& raw_key, const std::string& raw_value) {
  const std::string key = normalise_key(trim(raw_key));
  const std::string value = trim(raw_value);
  if (key == "states" || key == "state") c.states = split_list(value);
  else if (key == "pairs") c.pairs = split_list(value);
  else if (key == "detector") c.detector = parse_detector(value);
  else if (key == "method") c.method = parse_method(value);
  else if (key == "kappa") c.kappa = parse_double(key, value);
  else if (key == "nb") c.n_bath = parse_double(key, value);
  else if (key == "ni") c.n_idler = parse_double(key, value);
  else if (key == "split") c.split = parse_double(key, value);
  else if (key == "ns_min") c.ns_min = parse_double(key, value);
  else if (key == "ns_max") c.ns_max = parse_double(key, value);
  else if (key == "ns_count") c.ns_count = static_cast<int>(parse_double(key, value));
  else if (key == "modes") {
    const double m = parse_double(key, value);
    if (!(m >= 1.0) || m != std::floor(m)) throw DomainError("modes must be a positive integer");
    c.modes = static_cast<std::uint64_t>(m);
  } else if (key == "out") c.out = value;
  else throw DomainError("unknown config key '" + key + "'");
}

void load_config(std::istream& in, SweepConfig& config) {
  std::string line;
  while (std::getline(in, line)) {
    bool comment = false;
    std::string body = trim(line);
    if (!body.empty() && body[0] == '#') {
      comment = true;
      body = trim(body.substr(1));
    }
    const auto eq = body.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = body.substr(0, eq);
    try {
      apply_entry(config, key, body.substr(eq + 1));
    } catch (const DomainError& e) {
      if (!comment || std::string(e.what()).rfind("unknown config key", 0) != 0) throw;
    }
  }
}

void load_config_file(const std::string& path, SweepConfig& config) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read config '" + path + "'");
  load_config(in, config);
}

ProbeFamily family_for(const std::string& state, const SweepConfig& config) {
  if (state == "ds") return ProbeFamily::ds(config.split);
  return ProbeFamily::parse(state, config.idler());
}

}  // namespace qillum::app
