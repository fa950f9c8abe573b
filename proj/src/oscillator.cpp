#include "pwc/oscillator.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>

namespace pwc {

double OscillatorParams::period() const {
  return 2.0 * std::numbers::pi / omega;
}

double OscillatorParams::energy_level(int n) const {
  return hbar * omega * (n + 0.5);
}

void OscillatorParams::validate() const {
  if (!(mass > 0.0) || !(omega > 0.0) || !(hbar > 0.0)) {
    raise(ErrorCode::config, "mass, omega and hbar must be strictly positive");
  }
}

StateSpec StateSpec::eigenstate(int n) {
  StateSpec s;
  s.kind = Kind::eigenstate;
  s.level = n;
  return s;
}

StateSpec StateSpec::coherent(complex alpha) {
  StateSpec s;
  s.kind = Kind::coherent;
  s.alpha = alpha;
  return s;
}

StateSpec StateSpec::superposition(std::vector<complex> coefficients) {
  StateSpec s;
  s.kind = Kind::superposition;
  s.coefficients = std::move(coefficients);
  return s;
}

void StateSpec::validate() const {
  switch (kind) {
    case Kind::eigenstate:
      if (level < 0) raise(ErrorCode::config, "eigenstate index must be >= 0");
      return;
    case Kind::coherent:
      if (std::abs(alpha) > 3.0) {
        raise(ErrorCode::config,
              "coherent amplitude |alpha| must not exceed 3");
      }
      return;
    case Kind::superposition: {
      if (coefficients.empty()) {
        raise(ErrorCode::config, "superposition needs coefficients");
      }
      double sum = 0.0;
      for (const complex& c : coefficients) sum += std::norm(c);
      if (std::abs(sum - 1.0) > 1e-12) {
        raise(ErrorCode::config,
              "superposition coefficients must have unit norm, got " +
                  format_double(sum));
      }
      return;
    }
  }
}

namespace {

// Parses "a", "a+bi", "a-bi" or "bi".
complex parse_complex(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  if (s.empty()) raise(ErrorCode::config, "empty complex literal");

  bool has_i = s.back() == 'i' || s.back() == 'j';
  if (has_i) s.pop_back();

  auto parse_real = [](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size()) {
      raise(ErrorCode::config, "cannot parse number '" + t + "'");
    }
    return v;
  };

  // Split at the last +/- that is not an exponent sign and not leading.
  size_t split = std::string::npos;
  for (size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (!has_i) {
    return complex{parse_real(s), 0.0};
  }
  if (split == std::string::npos) {
    return complex{0.0, parse_real(s)};
  }
  return complex{parse_real(s.substr(0, split)), parse_real(s.substr(split))};
}

}  // namespace

StateSpec StateSpec::parse(const std::string& text) {
  const size_t colon = text.find(':');
  if (colon == std::string::npos) {
    raise(ErrorCode::config, "state spec needs the form kind:value, got '" +
                                 text + "'");
  }
  const std::string kind = text.substr(0, colon);
  const std::string rest = text.substr(colon + 1);

  StateSpec spec;
  if (kind == "eigenstate") {
    char* end = nullptr;
    const long n = std::strtol(rest.c_str(), &end, 10);
    if (end != rest.c_str() + rest.size() || n < 0) {
      raise(ErrorCode::config, "bad eigenstate index '" + rest + "'");
    }
    spec = eigenstate(static_cast<int>(n));
  } else if (kind == "coherent") {
    spec = coherent(parse_complex(rest));
  } else if (kind == "superposition") {
    if (rest.size() < 2 || rest.front() != '[' || rest.back() != ']') {
      raise(ErrorCode::config, "superposition expects [c0,c1,...]");
    }
    std::vector<complex> cs;
    std::stringstream ss(rest.substr(1, rest.size() - 2));
    std::string item;
    while (std::getline(ss, item, ',')) cs.push_back(parse_complex(item));
    spec = superposition(std::move(cs));
  } else {
    raise(ErrorCode::config, "unknown state kind '" + kind + "'");
  }
  spec.validate();
  return spec;
}

std::string StateSpec::to_string() const {
  std::string out;
  switch (kind) {
    case Kind::eigenstate:
      return "eigenstate:" + std::to_string(level);
    case Kind::coherent:
      return "coherent:" + format_double(alpha.real()) +
             (alpha.imag() < 0.0 ? "" : "+") + format_double(alpha.imag()) +
             "i";
    case Kind::superposition: {
      out = "superposition:[";
      for (size_t i = 0; i < coefficients.size(); ++i) {
        if (i > 0) out += ',';
        out += format_double(coefficients[i].real());
        if (coefficients[i].imag() != 0.0) {
          if (coefficients[i].imag() >= 0.0) out += '+';
          out += format_double(coefficients[i].imag());
          out += 'i';
        }
      }
      out += ']';
      return out;
    }
  }
  return out;
}

RealField oscillator_potential(const OscillatorParams& params,
                               const Grid& grid) {
  params.validate();
  RealField v = RealField::zero(grid);
  const double c = 0.5 * params.omega * params.omega * params.mass;
  for (int k = 0; k < grid.n_points; ++k) {
    const double x = grid.point(k);
    v.values[k] = c * x * x;
  }
  return v;
}

namespace {

// Normalized Hermite functions up to order n_max via the stable three-term
// recurrence on the functions themselves (not the raw polynomials).
std::vector<std::vector<double>> hermite_functions(
    int n_max, const OscillatorParams& params, const Grid& grid) {
  const double scale = std::sqrt(params.mass * params.omega / params.hbar);
  const double norm0 =
      std::pow(params.mass * params.omega / (std::numbers::pi * params.hbar),
               0.25);
  std::vector<std::vector<double>> h(n_max + 1,
                                     std::vector<double>(grid.n_points));
  for (int k = 0; k < grid.n_points; ++k) {
    const double y = scale * grid.point(k);
    h[0][k] = norm0 * std::exp(-0.5 * y * y);
    if (n_max >= 1) h[1][k] = std::sqrt(2.0) * y * h[0][k];
    for (int n = 1; n < n_max; ++n) {
      h[n + 1][k] = std::sqrt(2.0 / (n + 1)) * y * h[n][k] -
                    std::sqrt(static_cast<double>(n) / (n + 1)) * h[n - 1][k];
    }
  }
  return h;
}

double edge_amplitude(const Wavefunction& psi) {
  return std::max(std::abs(psi.amplitudes.front()),
                  std::abs(psi.amplitudes.back()));
}

Wavefunction from_real_samples(const std::vector<double>& samples,
                               const Grid& grid) {
  Wavefunction psi = Wavefunction::zero(grid);
  for (int k = 0; k < grid.n_points; ++k) {
    psi.amplitudes[k] = complex{samples[k], 0.0};
  }
  return psi;
}

}  // namespace

Wavefunction eigenstate(int n, const OscillatorParams& params,
                        const Grid& grid) {
  params.validate();
  if (n < 0) raise(ErrorCode::config, "eigenstate index must be >= 0");
  Wavefunction psi = from_real_samples(hermite_functions(n, params, grid)[n],
                                       grid);
  if (edge_amplitude(psi) >= 1e-12) {
    raise(ErrorCode::domain,
          "domain too narrow for eigenstate " + std::to_string(n) +
              ": edge amplitude " + format_double(edge_amplitude(psi)));
  }
  psi.normalize();
  return psi;
}

Wavefunction build_state(const StateSpec& spec, const OscillatorParams& params,
                         const Grid& grid) {
  params.validate();
  spec.validate();

  switch (spec.kind) {
    case StateSpec::Kind::eigenstate:
      return eigenstate(spec.level, params, grid);

    case StateSpec::Kind::coherent: {
      // Glauber expansion c_n = e^{-|alpha|^2/2} alpha^n / sqrt(n!),
      // truncated once the remaining tail weight drops below 1e-14.
      const double a2 = std::norm(spec.alpha);
      constexpr int kMaxLevels = 64;
      std::vector<complex> cs;
      complex c{std::exp(-0.5 * a2), 0.0};
      double used = 0.0;
      for (int n = 0; n <= kMaxLevels; ++n) {
        cs.push_back(c);
        used += std::norm(c);
        if (1.0 - used < 1e-14) break;
        c *= spec.alpha / std::sqrt(static_cast<double>(n + 1));
      }
      if (1.0 - used >= 1e-14) {
        raise(ErrorCode::domain,
              "coherent expansion tail too heavy after " +
                  std::to_string(kMaxLevels) + " levels");
      }
      const int n_max = static_cast<int>(cs.size()) - 1;
      const auto h = hermite_functions(n_max, params, grid);
      Wavefunction psi = Wavefunction::zero(grid);
      for (int n = 0; n <= n_max; ++n) {
        for (int k = 0; k < grid.n_points; ++k) {
          psi.amplitudes[k] += cs[n] * h[n][k];
        }
      }
      if (edge_amplitude(psi) >= 1e-6) {
        raise(ErrorCode::domain,
              "coherent state support reaches the domain edges");
      }
      psi.normalize();
      return psi;
    }

    case StateSpec::Kind::superposition: {
      const int n_max = static_cast<int>(spec.coefficients.size()) - 1;
      const auto h = hermite_functions(n_max, params, grid);
      Wavefunction psi = Wavefunction::zero(grid);
      for (int n = 0; n <= n_max; ++n) {
        for (int k = 0; k < grid.n_points; ++k) {
          psi.amplitudes[k] += spec.coefficients[n] * h[n][k];
        }
      }
      if (edge_amplitude(psi) >= 1e-12) {
        raise(ErrorCode::domain,
              "domain too narrow for the requested superposition");
      }
      psi.normalize();
      return psi;
    }
  }
  raise(ErrorCode::internal, "unknown state kind");
}

}  // namespace pwc
