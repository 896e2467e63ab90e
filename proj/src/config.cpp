#include "chlab/config.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>
#include <thread>

#include "chlab/csv.hpp"
#include "chlab/params.hpp"

namespace chlab {

namespace {

double to_double(const std::string& v, int line, const std::string& key) {
  double out = 0.0;
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end || v.empty()) {
    throw ConfigError("value '" + v + "' for " + key + " is not a number", line);
  }
  return out;
}

long to_integer(const std::string& v, int line, const std::string& key) {
  long out = 0;
  const char* end = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end || v.empty()) {
    throw ConfigError("value '" + v + "' for " + key + " is not an integer", line);
  }
  return out;
}

std::vector<double> to_list(const std::string& v, int line, const std::string& key) {
  std::vector<double> out;
  for (const auto& part : split(v, ',')) out.push_back(to_double(part, line, key));
  return out;
}

std::string join(const std::vector<double>& v) {
  std::vector<std::string> cells;
  for (double x : v) cells.push_back(format_double(x));
  return csv_row(cells);
}

}  // namespace

std::vector<std::string> parse_experiment_list(const std::string& text) {
  static const std::set<std::string> known{"e1", "e2", "e3", "e4", "e5"};
  if (trim(text) == "all") return {known.begin(), known.end()};
  std::set<std::string> picked;
  for (const auto& id : split(text, ',')) {
    if (!known.count(id)) throw ConfigError("unknown experiment '" + id + "' (expected e1..e5 or all)", 0);
    picked.insert(id);
  }
  if (picked.empty()) throw ConfigError("experiment list is empty", 0);
  return {picked.begin(), picked.end()};
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view body = raw;
    if (auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
    body = trim(body);
    if (body.empty()) continue;
    if (body.front() == '[') {
      if (body.back() != ']' || body.size() < 3) throw ConfigError("malformed section header", line);
      section = std::string(trim(body.substr(1, body.size() - 2)));
      continue;
    }
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected 'key = value'", line);
    std::string key(trim(body.substr(0, eq)));
    const std::string value(trim(body.substr(eq + 1)));
    if (key.empty()) throw ConfigError("empty key", line);
    if (!section.empty()) key = section + "." + key;

    if (key == "experiments" || key == "run.experiments") {
      try {
        cfg.experiments = parse_experiment_list(value);
      } catch (const ConfigError& e) {
        throw ConfigError(e.what(), line);
      }
    } else if (key == "ladder.lambdas") {
      cfg.ladder.lambdas = to_list(value, line, key);
    } else if (key == "ladder.s") {
      cfg.ladder.s = to_double(value, line, key);
    } else if (key == "ladder.delta") {
      cfg.ladder.delta = to_double(value, line, key);
    } else if (key == "ladder.omega_pair") {
      const auto w = to_list(value, line, key);
      if (w.size() != 2) throw ConfigError("ladder.omega_pair needs exactly two values", line);
      cfg.ladder.omega_pair = {w[0], w[1]};
    } else if (key == "ladder.t_samples") {
      cfg.ladder.t_samples = to_list(value, line, key);
    } else if (key == "ladder.top_k") {
      cfg.ladder.top_k = static_cast<std::size_t>(to_integer(value, line, key));
    } else if (key == "solver.cfl") {
      cfg.solver.cfl = to_double(value, line, key);
    } else if (key == "solver.dealias_fraction") {
      cfg.solver.dealias_fraction = to_double(value, line, key);
    } else if (key == "solver.t_end") {
      cfg.solver.t_end = to_double(value, line, key);
    } else if (key == "solver.record_every") {
      cfg.solver.record_every = to_double(value, line, key);
    } else if (key == "solver.max_dt") {
      cfg.solver.max_dt = to_double(value, line, key);
    } else if (key == "solver.blowup_c1_threshold") {
      cfg.solver.blowup_c1_threshold = to_double(value, line, key);
    } else if (key == "output.dir") {
      cfg.output_dir = value;
    } else if (key == "run.workers") {
      const long w = to_integer(value, line, key);
      if (w < 0) throw ConfigError("run.workers must be >= 0", line);
      cfg.workers = static_cast<unsigned>(w);
    } else if (key == "run.resolution") {
      const long r = to_integer(value, line, key);
      if (r < 1) throw ConfigError("run.resolution must be >= 1", line);
      cfg.ladder.resolution = static_cast<int>(r);
    } else {
      throw ConfigError("unknown key '" + key + "'", line);
    }
  }
  try {
    validate(cfg);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what(), 0);
  }
  return cfg;
}

void validate(const RunConfig& cfg) {
  if (auto err = check_regularity(cfg.ladder.s, cfg.ladder.delta); !err.empty()) throw ConfigError(err, 0);
  validate(cfg.ladder);
  validate(cfg.solver);
  if (cfg.solver.t_end > 1.0) throw ConfigError("solver.t_end must not exceed 1", 0);
  if (cfg.output_dir.empty()) throw ConfigError("output.dir must not be empty", 0);
}

std::string serialize_config(const RunConfig& cfg) {
  std::ostringstream os;
  std::string ids;
  for (const auto& e : cfg.experiments) ids += (ids.empty() ? "" : ",") + e;
  os << "experiments = " << ids << '\n';
  os << "ladder.lambdas = " << join(cfg.ladder.lambdas) << '\n';
  os << "ladder.s = " << format_double(cfg.ladder.s) << '\n';
  os << "ladder.delta = " << format_double(cfg.ladder.delta) << '\n';
  os << "ladder.omega_pair = " << format_double(cfg.ladder.omega_pair.first) << ','
     << format_double(cfg.ladder.omega_pair.second) << '\n';
  os << "ladder.t_samples = " << join(cfg.ladder.t_samples) << '\n';
  os << "ladder.top_k = " << cfg.ladder.top_k << '\n';
  os << "solver.cfl = " << format_double(cfg.solver.cfl) << '\n';
  os << "solver.dealias_fraction = " << format_double(cfg.solver.dealias_fraction) << '\n';
  os << "solver.t_end = " << format_double(cfg.solver.t_end) << '\n';
  os << "solver.record_every = " << format_double(cfg.solver.record_every) << '\n';
  os << "solver.max_dt = " << format_double(cfg.solver.max_dt) << '\n';
  os << "solver.blowup_c1_threshold = " << format_double(cfg.solver.blowup_c1_threshold) << '\n';
  os << "output.dir = " << cfg.output_dir << '\n';
  os << "run.workers = " << cfg.workers << '\n';
  os << "run.resolution = " << cfg.ladder.resolution << '\n';
  return os.str();
}

unsigned effective_workers(const RunConfig& cfg) {
  if (cfg.workers > 0) return cfg.workers;
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace chlab
