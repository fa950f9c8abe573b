#include "pwc/report.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "pwc/correlators.hpp"
#include "pwc/evolution.hpp"

namespace pwc {

namespace {

using json = nlohmann::ordered_json;

json config_echo(const RunConfig& cfg) {
  return json{{"mass", cfg.params.mass},
              {"omega", cfg.params.omega},
              {"hbar", cfg.params.hbar},
              {"period", cfg.params.period()},
              {"x_min", cfg.x_min},
              {"x_max", cfg.x_max},
              {"n_points", cfg.n_points},
              {"dt", cfg.dt()},
              {"dt_spec", cfg.dt_spec},
              {"state", cfg.state_spec},
              {"ensemble_n", cfg.ensemble_n},
              {"ensemble_scheme", cfg.scheme_name()},
              {"ensemble_seed", cfg.seed},
              {"lags", cfg.lags()},
              {"lag_specs", cfg.lag_specs},
              {"t_final", cfg.t_final()},
              {"out_dir", cfg.out_dir}};
}

// Report fields for a lag table: params, grid, lags[] with one row per lag.
void merge_table_json(json& doc, const ContradictionReport& table) {
  doc["params"] = json{{"mass", table.params.mass},
                       {"omega", table.params.omega},
                       {"hbar", table.params.hbar},
                       {"period", table.params.period()}};
  doc["grid"] = json{{"x_min", table.grid.x_min},
                     {"x_max", table.grid.x_max},
                     {"n_points", table.grid.n_points},
                     {"dx", table.grid.dx}};
  doc["state"] = table.state.to_string();
  doc["dt"] = table.dt;
  doc["ensemble_n"] = table.ensemble_size;
  json lags = json::array();
  for (const ContradictionRow& row : table.rows) {
    lags.push_back(json{{"tau", row.tau},
                        {"qm_re", row.qm.real()},
                        {"qm_im", row.qm.imag()},
                        {"qm_sym", row.qm_symmetrized},
                        {"bohm", row.bohm_symmetrized},
                        {"fock_re", row.fock.real()},
                        {"fock_im", row.fock.imag()},
                        {"flag", sign_flag_name(row.flag)}});
  }
  doc["lags"] = std::move(lags);
}

std::string table_csv(const ContradictionReport& table) {
  std::string out = "tau,qm_re,qm_im,qm_sym,bohm,fock_re,fock_im,flag\n";
  for (const ContradictionRow& row : table.rows) {
    out += format_double(row.tau) + ',' + format_double(row.qm.real()) + ',' +
           format_double(row.qm.imag()) + ',' +
           format_double(row.qm_symmetrized) + ',' +
           format_double(row.bohm_symmetrized) + ',' +
           format_double(row.fock.real()) + ',' +
           format_double(row.fock.imag()) + ',' + sign_flag_name(row.flag) +
           '\n';
  }
  return out;
}

json checks_json(const std::vector<CheckGroup>& groups) {
  json out = json::array();
  for (const CheckGroup& group : groups) {
    json items = json::array();
    for (const CheckItem& i : group.items) {
      items.push_back(json{{"name", i.name},
                           {"measured", i.measured},
                           {"tolerance", i.tolerance},
                           {"passed", i.passed}});
    }
    out.push_back(json{{"id", group.id},
                       {"title", group.title},
                       {"passed", group.passed()},
                       {"items", items}});
  }
  return out;
}

}  // namespace

const std::string* RunReport::artifact(const std::string& name) const {
  for (const auto& [key, content] : artifacts) {
    if (key == name) return &content;
  }
  return nullptr;
}

RunReport run_verify(const RunConfig& cfg) {
  cfg.validate();
  std::vector<CheckGroup> groups = acceptance_checks(cfg);
  const std::vector<CheckGroup> invariants = invariant_checks(cfg);
  groups.insert(groups.end(), invariants.begin(), invariants.end());

  int failures = 0;
  for (const CheckGroup& g : groups) {
    if (!g.passed()) ++failures;
  }

  json doc{{"command", "verify"},
           {"config", config_echo(cfg)},
           {"checks", checks_json(groups)},
           {"failed_groups", failures},
           {"passed", failures == 0}};

  RunReport report;
  report.exit_status = failures == 0 ? 0 : 1;
  doc["exit_status"] = report.exit_status;
  report.artifacts.emplace_back("verify.json", doc.dump(2) + "\n");
  report.summary = failures == 0
                       ? "all checks passed"
                       : std::to_string(failures) + " check group(s) failed";
  return report;
}

RunReport run_contradiction_demo(const RunConfig& cfg) {
  cfg.validate();
  const StateSpec state = cfg.state();
  if (state.kind != StateSpec::Kind::eigenstate || state.level != 0) {
    raise(ErrorCode::config,
          "demo-contradiction needs state = eigenstate:0; the opposite-sign "
          "derivation holds for stationary ground-state trajectories only");
  }
  const ContradictionReport table =
      contradiction_report(cfg.params, cfg.grid(), cfg.lags(), cfg.dt(),
                           cfg.ensemble_n);

  const double scale = cfg.params.hbar / (cfg.params.mass * cfg.params.omega);
  const double half = 0.5 * cfg.params.period();
  const ContradictionRow* row = table.row_at(half);

  bool pass = false;
  std::string reason;
  if (row == nullptr) {
    reason = "lag list does not contain T/2";
  } else {
    const bool qm_ok = std::abs(row->qm_symmetrized + scale) <= 2e-4 * scale;
    const bool bohm_ok =
        std::abs(row->bohm_symmetrized - scale) <= 1e-3 * scale;
    const bool flagged = row->flag == SignFlag::contradiction;
    pass = qm_ok && bohm_ok && flagged;
    if (!qm_ok) reason = "quantum side is off -2<q^2>";
    if (!bohm_ok) reason += std::string(reason.empty() ? "" : "; ") +
                            "trajectory side is off +2<q^2>";
    if (!flagged) reason += std::string(reason.empty() ? "" : "; ") +
                            "sign flag is not CONTRADICTION";
  }

  json doc{{"command", "demo-contradiction"}, {"config", config_echo(cfg)}};
  merge_table_json(doc, table);
  doc["half_period_lag"] = half;
  doc["contradiction_confirmed"] = pass;
  if (!pass) doc["reason"] = reason;

  RunReport report;
  report.exit_status = pass ? 0 : 1;
  doc["exit_status"] = report.exit_status;
  report.artifacts.emplace_back("contradiction.json", doc.dump(2) + "\n");
  report.artifacts.emplace_back("contradiction.csv", table_csv(table));
  report.summary =
      pass ? "opposite signs confirmed at lag T/2" : "demo failed: " + reason;
  return report;
}

RunReport run_correlate(const RunConfig& cfg) {
  cfg.validate();
  const ContradictionReport table =
      correlation_table(cfg.params, cfg.grid(), cfg.state(), cfg.lags(),
                        cfg.dt(), cfg.ensemble_n);
  json doc{{"command", "correlate"}, {"config", config_echo(cfg)}};
  merge_table_json(doc, table);
  doc["exit_status"] = 0;

  RunReport report;
  report.exit_status = 0;
  report.artifacts.emplace_back("correlate.json", doc.dump(2) + "\n");
  report.artifacts.emplace_back("correlate.csv", table_csv(table));
  report.summary = std::to_string(table.rows.size()) + " lags computed";
  return report;
}

RunReport run_trajectories(const RunConfig& cfg) {
  cfg.validate();
  const Grid grid = cfg.grid();
  const StateSpec state = cfg.state();
  const Wavefunction psi0 = build_state(state, cfg.params, grid);
  const RealField potential = oscillator_potential(cfg.params, grid);

  TrajectoryEnsemble ens = sample_initial_positions(psi0, cfg.ensemble_n,
                                                    cfg.scheme, cfg.seed,
                                                    state);
  integrate_trajectories(ens, psi0, potential, cfg.t_final(), cfg.dt(),
                         cfg.params.hbar, cfg.params.mass);

  std::string csv = "particle_id,xi,t,x\n";
  for (int j = 0; j < ens.size(); ++j) {
    for (size_t f = 0; f < ens.times.size(); ++f) {
      csv += std::to_string(j) + ',' + format_double(ens.xi[j]) + ',' +
             format_double(ens.times[f]) + ',' +
             format_double(ens.frames[f][j]) + '\n';
    }
  }

  const Wavefunction psi_final = evolve_by(psi0, potential, cfg.t_final(),
                                           cfg.dt(), cfg.params.hbar,
                                           cfg.params.mass);

  json doc{{"command", "trajectories"},
           {"config", config_echo(cfg)},
           {"particles", ens.size()},
           {"recorded_steps", ens.times.size()},
           {"horizon", ens.horizon()},
           {"exit_status", 0}};

  RunReport report;
  report.exit_status = 0;
  report.artifacts.emplace_back("trajectories.json", doc.dump(2) + "\n");
  report.artifacts.emplace_back("trajectories.csv", std::move(csv));
  report.artifacts.emplace_back("state_initial.csv", wavefunction_csv(psi0));
  report.artifacts.emplace_back("state_final.csv",
                                wavefunction_csv(psi_final));
  report.summary = std::to_string(ens.size()) + " particles over " +
                   std::to_string(ens.times.size()) + " recorded steps";
  return report;
}

RunReport run_command(const RunConfig& cfg, const std::string& command) {
  if (command == "verify") return run_verify(cfg);
  if (command == "demo-contradiction") return run_contradiction_demo(cfg);
  if (command == "correlate") return run_correlate(cfg);
  if (command == "trajectories") return run_trajectories(cfg);
  raise(ErrorCode::config, "unknown command '" + command + "'");
}

std::vector<std::string> write_artifacts(const RunReport& report,
                                         const std::string& directory,
                                         const std::string& format) {
  if (format != "csv" && format != "json" && format != "both") {
    raise(ErrorCode::config, "format must be csv, json or both");
  }
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(directory, ec);
  if (ec) {
    raise(ErrorCode::io, "cannot create output directory '" + directory +
                             "': " + ec.message());
  }
  std::vector<std::string> written;
  for (const auto& [name, content] : report.artifacts) {
    const bool is_json = name.ends_with(".json");
    if (format == "json" && !is_json) continue;
    if (format == "csv" && is_json) continue;
    const fs::path path = fs::path(directory) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) raise(ErrorCode::io, "cannot write '" + path.string() + "'");
    out << content;
    written.push_back(path.string());
  }
  return written;
}

}  // namespace pwc
