#include "pwc/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace pwc {

namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double parse_number(const std::string& text, const char* what) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() ||
      !std::isfinite(v)) {
    raise(ErrorCode::config,
          std::string("cannot parse ") + what + " '" + text + "'");
  }
  return v;
}

long parse_integer(const std::string& text, const char* what) {
  char* end = nullptr;
  const long v = std::strtol(text.c_str(), &end, 10);
  if (text.empty() || end != text.c_str() + text.size()) {
    raise(ErrorCode::config,
          std::string("cannot parse ") + what + " '" + text + "'");
  }
  return v;
}

}  // namespace

double RunConfig::parse_time(const std::string& spec) const {
  const std::string s = trim(spec);
  if (s.empty()) raise(ErrorCode::config, "empty time value");
  const double period = params.period();
  if (s == "T") return period;
  if (s.rfind("T/", 0) == 0) {
    const double denom = parse_number(s.substr(2), "time divisor");
    if (denom == 0.0) raise(ErrorCode::config, "time divisor is zero");
    return period / denom;
  }
  if (s.back() == 'T') {
    return period * parse_number(s.substr(0, s.size() - 1), "time fraction");
  }
  return parse_number(s, "time");
}

std::vector<double> RunConfig::lags() const {
  std::vector<double> out;
  out.reserve(lag_specs.size());
  for (const std::string& spec : lag_specs) {
    const double tau = parse_time(spec);
    if (tau < 0.0) raise(ErrorCode::config, "lags must be nonnegative");
    out.push_back(tau);
  }
  if (out.empty()) raise(ErrorCode::config, "at least one lag is required");
  return out;
}

std::string RunConfig::scheme_name() const {
  return scheme == SamplingScheme::quantile ? "quantile" : "random";
}

void RunConfig::set(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  if (key == "mass") {
    params.mass = parse_number(v, "mass");
  } else if (key == "omega") {
    params.omega = parse_number(v, "omega");
  } else if (key == "hbar") {
    params.hbar = parse_number(v, "hbar");
  } else if (key == "x_min") {
    x_min = parse_number(v, "x_min");
  } else if (key == "x_max") {
    x_max = parse_number(v, "x_max");
  } else if (key == "n_points") {
    n_points = static_cast<int>(parse_integer(v, "n_points"));
  } else if (key == "dt") {
    dt_spec = v;
  } else if (key == "state") {
    state_spec = v;
  } else if (key == "ensemble_n") {
    const long n = parse_integer(v, "ensemble_n");
    if (n < 1) raise(ErrorCode::config, "ensemble_n must be >= 1");
    ensemble_n = static_cast<int>(n);
  } else if (key == "ensemble_scheme") {
    if (v == "quantile") {
      scheme = SamplingScheme::quantile;
    } else if (v == "random") {
      scheme = SamplingScheme::random;
    } else {
      raise(ErrorCode::config,
            "ensemble_scheme must be quantile or random, got '" + v + "'");
    }
  } else if (key == "ensemble_seed") {
    seed = static_cast<std::uint64_t>(parse_integer(v, "ensemble_seed"));
  } else if (key == "lags") {
    std::vector<std::string> specs;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const std::string lag = trim(item);
      if (!lag.empty()) specs.push_back(lag);
    }
    if (specs.empty()) raise(ErrorCode::config, "lags list is empty");
    lag_specs = std::move(specs);
  } else if (key == "t_final") {
    t_final_spec = v;
  } else if (key == "out_dir") {
    out_dir = v;
  } else {
    raise(ErrorCode::config, "unknown configuration key '" + key + "'");
  }
}

std::string RunConfig::get(const std::string& key) const {
  if (key == "mass") return format_double(params.mass);
  if (key == "omega") return format_double(params.omega);
  if (key == "hbar") return format_double(params.hbar);
  if (key == "x_min") return format_double(x_min);
  if (key == "x_max") return format_double(x_max);
  if (key == "n_points") return std::to_string(n_points);
  if (key == "dt") return dt_spec;
  if (key == "state") return state_spec;
  if (key == "ensemble_n") return std::to_string(ensemble_n);
  if (key == "ensemble_scheme") return scheme_name();
  if (key == "ensemble_seed") return std::to_string(seed);
  if (key == "lags") {
    std::string out;
    for (size_t i = 0; i < lag_specs.size(); ++i) {
      if (i > 0) out += ", ";
      out += lag_specs[i];
    }
    return out;
  }
  if (key == "t_final") return t_final_spec;
  if (key == "out_dir") return out_dir;
  raise(ErrorCode::config, "unknown configuration key '" + key + "'");
}

RunConfig RunConfig::from_text(const std::string& text) {
  RunConfig cfg;
  std::stringstream ss(text);
  std::string line;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      raise(ErrorCode::config, "line " + std::to_string(line_no) +
                                   ": expected key = value, got '" + line +
                                   "'");
    }
    cfg.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

RunConfig RunConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::io, "cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return from_text(buffer.str());
}

void RunConfig::validate() const {
  params.validate();
  grid();
  state().validate();
  const double step = dt();
  if (!(step > 0.0)) raise(ErrorCode::config, "dt must be positive");
  if (step > params.period() / 10.0) {
    raise(ErrorCode::config, "dt must not exceed a tenth of the period");
  }
  if (!(t_final() > 0.0)) {
    raise(ErrorCode::config, "t_final must be positive");
  }
  lags();
  if (ensemble_n < 1) raise(ErrorCode::config, "ensemble_n must be >= 1");
}

}  // namespace pwc
