#include "lipgrad/run.hpp"

#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace lipgrad {

const char *to_string(StopReason reason) {
  switch (reason) {
  case StopReason::budget: return "budget";
  case StopReason::target_found: return "target_found";
  case StopReason::diagonal: return "diagonal";
  case StopReason::resolution: return "resolution";
  }
  return "?";
}

const char *to_string(Phase phase) {
  switch (phase) {
  case Phase::init: return "init";
  case Phase::exploration: return "explore";
  case Phase::record: return "record";
  case Phase::direct: return "direct";
  }
  return "?";
}

void OptConfig::validate() const {
  if (!(epsilon >= 0.0)) throw std::invalid_argument("epsilon must be non-negative");
  if (max_trials < 1) throw std::invalid_argument("max_trials must be at least 1");
  if (target && !(target->delta > 0.0 && target->delta <= 1.0))
    throw std::invalid_argument("delta must lie in (0, 1]");
  if (diagonal_fraction && !(*diagonal_fraction > 0.0))
    throw std::invalid_argument("diagonal fraction must be positive");
}

namespace {

std::string trim(const std::string &s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

} // namespace

OptConfig parse_config(std::istream &in) {
  OptConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "epsilon") {
        cfg.epsilon = std::stod(value);
      } else if (key == "max_trials") {
        cfg.max_trials = std::stoull(value);
      } else if (key == "start") {
        if (value == "a") cfg.start = StartVertex::a;
        else if (value == "b") cfg.start = StartVertex::b;
        else throw std::invalid_argument("start must be a or b");
      } else if (key == "delta") {
        if (!cfg.target) cfg.target.emplace();
        cfg.target->delta = std::stod(value);
      } else if (key == "diagonal") {
        cfg.diagonal_fraction = std::stod(value);
      } else {
        throw std::invalid_argument("unknown key '" + key + "'");
      }
    } catch (const std::logic_error &e) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return cfg;
}

void write_trace(std::ostream &out, const std::vector<TraceRecord> &trace) {
  std::ostringstream line;
  line << std::setprecision(17);
  for (const TraceRecord &r : trace) {
    line.str({});
    line << "trial " << r.trial << ' ';
    for (std::size_t j = 0; j < r.x.size(); ++j) line << (j ? "," : "") << r.x[j];
    line << ' ' << r.f << ' ' << r.f_min << ' ' << to_string(r.phase) << '\n';
    out << line.str();
  }
}

} // namespace lipgrad
