#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "altpd/chain.hpp"
#include "altpd/dynamics.hpp"
#include "altpd/errors.hpp"
#include "altpd/payoff.hpp"
#include "altpd/random.hpp"
#include "altpd/torus.hpp"
#include "cli.hpp"
#include "output.hpp"

namespace altpd::cli {

using nlohmann::json;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void validate(const RunConfig& cfg) {
  PayoffParams(cfg.b, cfg.c);  // 0 < C < B
  if (cfg.n < 1 || cfg.n > 3) throw std::invalid_argument("--n must be 1, 2 or 3");
  if (!(cfg.dt > 0.0)) throw std::invalid_argument("--dt must be positive");
  if (!(cfg.t > 0.0)) throw std::invalid_argument("--t must be positive");
  if (cfg.rounds < 1) throw std::invalid_argument("--rounds must be positive");
  if (cfg.grid < 2) throw std::invalid_argument("--grid must be at least 2");
  if (cfg.stride < 1) throw std::invalid_argument("--stride must be positive");
  if (cfg.format != "csv" && cfg.format != "json") throw std::invalid_argument("--format must be csv or json");
  method_from_string(cfg.method);
}

json to_json(const RunConfig& cfg) {
  return json{{"b", cfg.b},           {"c", cfg.c},           {"n", cfg.n},         {"p", cfg.p},
              {"q", cfg.q},           {"t", cfg.t},           {"dt", cfg.dt},       {"method", cfg.method},
              {"seed", cfg.seed},     {"rounds", cfg.rounds}, {"c1", cfg.c1},       {"c2", cfg.c2},
              {"grid", cfg.grid},     {"out", cfg.out},       {"format", cfg.format}, {"stride", cfg.stride}};
}

Strategy parse_strategy(std::string_view spec, int memory) {
  const std::size_t n = state_count(memory);
  if (spec == "allc") return Strategy::constant(memory, 1.0);
  if (spec == "alld") return Strategy::constant(memory, 0.0);
  if (spec == "tft") {
    std::vector<double> probs(n);
    for (std::size_t i = 0; i < n; ++i) probs[i] = (i & 1u) ? 0.0 : 1.0;
    return Strategy(memory, std::move(probs));
  }
  if (spec.rfind("random:", 0) == 0) {
    const std::string seed_text(spec.substr(7));
    std::size_t used = 0;
    unsigned long long seed = 0;
    try {
      seed = std::stoull(seed_text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (seed_text.empty() || used != seed_text.size()) throw std::invalid_argument("bad random seed in '" + std::string(spec) + "'");
    Rng rng(seed);
    return random_strategy(memory, rng);
  }
  std::vector<double> probs;
  std::stringstream ss{std::string(spec)};
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    while (used < item.size() && item[used] == ' ') ++used;
    if (item.empty() || used != item.size()) throw std::invalid_argument("bad probability '" + item + "'");
    probs.push_back(v);
  }
  if (probs.size() != n) {
    throw std::invalid_argument("strategy '" + std::string(spec) + "' needs " + std::to_string(n) + " entries");
  }
  return Strategy(memory, std::move(probs));
}

namespace {

json provenance(const std::string& command, const RunConfig& cfg) {
  return json{{"command", command}, {"config", to_json(cfg)}, {"seed", cfg.seed}};
}

std::vector<std::string> state_labels(int memory) {
  std::vector<std::string> labels;
  for (StateIndex i = 0; i < state_count(memory); ++i) labels.push_back(state_label(i, memory));
  return labels;
}

json as_json(std::span<const double> v) {
  json arr = json::array();
  for (double x : v) arr.push_back(number(x));
  return arr;
}

}  // namespace

int cmd_matrix(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  validate(cfg);
  const PayoffParams params(cfg.b, cfg.c);
  const Strategy p = parse_strategy(cfg.p, cfg.n);
  const Strategy q = parse_strategy(cfg.q, cfg.n);
  const TransitionMatrix m = build_matrix_direct(p, q);
  const PayoffVector f = build_payoff_vector(params, cfg.n);
  const auto labels = state_labels(cfg.n);
  const std::filesystem::path dir = prepare_output_dir(cfg.out);
  const json prov = provenance("matrix", cfg);

  json summary{{"command", "matrix"}, {"config", to_json(cfg)}, {"row_sum_defect", m.row_sum_defect()}};
  if (cfg.n >= 2) {
    const TransitionMatrix r = build_matrix_recursive(p, q);
    summary["recursive_max_difference"] = (r.entries() - m.entries()).cwiseAbs().maxCoeff();
  }
  std::vector<std::string> absorbing;
  for (StateIndex i = 0; i < m.size(); ++i) {
    if (m(i, i) == 1.0) absorbing.push_back(labels[i]);
  }
  summary["absorbing_states"] = absorbing;

  std::vector<std::string> files;
  if (cfg.format == "csv") {
    std::vector<std::string> cols{"state"};
    cols.insert(cols.end(), labels.begin(), labels.end());
    CsvWriter w(dir / "matrix.csv", prov, cols);
    for (StateIndex i = 0; i < m.size(); ++i) {
      std::vector<double> row(m.entries().cols());
      for (Eigen::Index j = 0; j < m.entries().cols(); ++j) row[j] = m.entries()(i, j);
      w.row(labels[i], row);
    }
    files.push_back(w.path().string());
  }

  int code = kOk;
  std::vector<double> nu;
  try {
    const StationaryDistribution s = stationary(m);
    nu.assign(s.values().begin(), s.values().end());
    double by_stationary = 0.0;
    for (std::size_t i = 0; i < nu.size(); ++i) by_stationary += nu[i] * f[i];
    summary["payoff_stationary"] = by_stationary;
    summary["stationary_residual"] = stationarity_residual(m, nu);
    try {
      const double by_det = payoff_by_determinant(p, q, params);
      summary["payoff_determinant"] = by_det;
      summary["payoff_difference"] = std::abs(by_det - by_stationary);
    } catch (const MathError& e) {
      summary["payoff_determinant"] = nullptr;
      summary["determinant_note"] = e.what();
    }
  } catch (const MathError& e) {
    summary["stationary"] = nullptr;
    summary["error"] = e.what();
    err << "matrix: " << e.what() << " (reducible chain; try interior strategies)\n";
    code = kDegenerate;
  }

  if (cfg.format == "csv") {
    if (!nu.empty()) {
      CsvWriter w(dir / "stationary.csv", prov, {"state", "nu", "f"});
      for (std::size_t i = 0; i < nu.size(); ++i) w.row(labels[i], {nu[i], f[i]});
      files.push_back(w.path().string());
    }
  } else {
    json doc{{"provenance", prov}, {"states", labels}, {"payoff_vector", as_json(f.values())}};
    json rows = json::array();
    for (StateIndex i = 0; i < m.size(); ++i) {
      json row = json::array();
      for (Eigen::Index j = 0; j < m.entries().cols(); ++j) row.push_back(m.entries()(i, j));
      rows.push_back(row);
    }
    doc["matrix"] = rows;
    doc["stationary"] = nu.empty() ? json(nullptr) : as_json(nu);
    write_json(dir / "matrix.json", doc);
    files.push_back((dir / "matrix.json").string());
  }
  summary["files"] = files;
  out << summary.dump(2) << '\n';
  return code;
}

int cmd_integrate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  validate(cfg);
  const PayoffParams params(cfg.b, cfg.c);
  const Strategy x0 = parse_strategy(cfg.p, cfg.n);
  IntegrateOptions opts;
  opts.t_end = cfg.t;
  opts.dt = cfg.dt;
  opts.method = method_from_string(cfg.method);
  opts.record_every = cfg.stride;
  const Trajectory traj = integrate(x0.probs(), params, opts);
  const bool memory_one = cfg.n == 1;

  json summary{{"command", "integrate"},
               {"config", to_json(cfg)},
               {"status", to_string(traj.status)},
               {"message", traj.message},
               {"t_final", traj.times.back()},
               {"final_state", traj.states.back()},
               {"samples", traj.times.size()}};

  double displacement = 0.0;
  for (const auto& s : traj.states)
    for (std::size_t i = 0; i < s.size(); ++i) displacement = std::max(displacement, std::abs(s[i] - x0[i]));
  summary["max_displacement"] = displacement;

  if (memory_one) {
    const InvariantPair start = invariants(traj.states.front());
    double d1 = 0.0, d2 = 0.0;
    for (const auto& s : traj.states) {
      const InvariantPair v = invariants(s);
      d1 = std::max(d1, std::abs(v.F1 - start.F1));
      d2 = std::max(d2, std::abs(v.F2 - start.F2));
    }
    summary["max_drift_F1"] = d1;
    summary["max_drift_F2"] = d2;

    // phi(x(t)) must coincide with the backward trajectory from phi(x0).
    if (opts.method == Method::rk4) {
      IntegrateOptions back = opts;
      back.t_end = -cfg.t;
      const std::vector<double> image = time_reversal_image(x0.probs());
      const Trajectory mirror = integrate(image, params, back);
      const std::size_t n = std::min(mirror.states.size(), traj.states.size());
      double worst = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const std::vector<double> expect = time_reversal_image(traj.states[i]);
        for (std::size_t k = 0; k < 4; ++k) worst = std::max(worst, std::abs(expect[k] - mirror.states[i][k]));
      }
      summary["mirror_match"] = worst;
      summary["mirror_status"] = to_string(mirror.status);
    }
  }

  const std::filesystem::path dir = prepare_output_dir(cfg.out);
  const json prov = provenance("integrate", cfg);
  std::vector<std::string> cols{"t"};
  if (memory_one) {
    cols.insert(cols.end(), {"p1", "p2", "p3", "p4", "F1", "F2"});
  } else {
    for (StateIndex i = 0; i < x0.size(); ++i) cols.push_back("x" + std::to_string(i + 1));
  }
  std::string file;
  if (cfg.format == "csv") {
    CsvWriter w(dir / "trajectory.csv", prov, cols);
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
      std::vector<double> row{traj.times[i]};
      row.insert(row.end(), traj.states[i].begin(), traj.states[i].end());
      if (memory_one) {
        const InvariantPair v = invariants(traj.states[i]);
        row.push_back(v.F1);
        row.push_back(v.F2);
      }
      w.row(row);
    }
    file = w.path().string();
  } else {
    json rows = json::array();
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
      json row = json::array({traj.times[i]});
      for (double v : traj.states[i]) row.push_back(v);
      if (memory_one) {
        const InvariantPair v = invariants(traj.states[i]);
        row.push_back(v.F1);
        row.push_back(v.F2);
      }
      rows.push_back(row);
    }
    file = (dir / "trajectory.json").string();
    write_json(file, json{{"provenance", prov}, {"columns", cols}, {"rows", rows}});
  }
  summary["files"] = json::array({file});
  out << summary.dump(2) << '\n';
  if (traj.status == IntegrationStatus::singular) {
    err << "integrate: " << traj.message << '\n';
    return kDegenerate;
  }
  return kOk;
}

namespace {

// Points where `factor` changes sign along grid edges, linearly interpolated.
template <typename Factor>
std::vector<std::pair<double, double>> zero_samples(int grid, Factor factor) {
  std::vector<std::pair<double, double>> pts;
  const double h = kTwoPi / grid;
  std::vector<double> values((grid + 1) * (grid + 1));
  auto at = [&](int i, int j) -> double& { return values[i * (grid + 1) + j]; };
  for (int i = 0; i <= grid; ++i)
    for (int j = 0; j <= grid; ++j) at(i, j) = factor(i * h, j * h);
  for (int i = 0; i <= grid; ++i) {
    for (int j = 0; j <= grid; ++j) {
      const double v = at(i, j);
      if (i < grid && (v < 0) != (at(i + 1, j) < 0)) {
        const double s = v / (v - at(i + 1, j));
        pts.emplace_back((i + s) * h, j * h);
      }
      if (j < grid && (v < 0) != (at(i, j + 1) < 0)) {
        const double s = v / (v - at(i, j + 1));
        pts.emplace_back(i * h, (j + s) * h);
      }
    }
  }
  return pts;
}

}  // namespace

int cmd_torus(const RunConfig& cfg, std::ostream& out, std::ostream& /*err*/) {
  validate(cfg);
  if (cfg.b != 1.0) throw std::invalid_argument("torus requires --b 1 (the toric formulas use B = 1)");
  if (!(cfg.c1 > 0.0 && cfg.c1 < 2.0 && cfg.c2 > 0.0 && cfg.c2 < 2.0)) {
    throw std::invalid_argument("--c1 and --c2 must lie in (0, 2)");
  }
  const PayoffParams params(cfg.b, cfg.c);
  const TorusLevel level{cfg.c1, cfg.c2};
  const AdmissibleRectangle rect = admissible_rectangle(level);
  const std::filesystem::path dir = prepare_output_dir(cfg.out);
  const json prov = provenance("torus", cfg);
  const int g = cfg.grid;
  const double h = kTwoPi / g;

  // Field grid.
  std::vector<std::vector<double>> field_rows;
  field_rows.reserve(static_cast<std::size_t>(g) * g);
  int singular_points = 0;
  for (int i = 0; i < g; ++i) {
    for (int j = 0; j < g; ++j) {
      const TorusPoint pt{i * h, j * h, level};
      double fp = std::nan(""), fs = std::nan("");
      try {
        const AngleRates v = torus_field(pt, params);
        fp = v.phi_dot;
        fs = v.psi_dot;
      } catch (const MathError&) {
        ++singular_points;
      }
      const AngleRates d = desingularized_field(pt, params);
      field_rows.push_back({pt.phi, pt.psi, fp, fs, d.phi_dot, d.psi_dot, toric_denominator(pt),
                            rect.contains(pt.phi, pt.psi) ? 1.0 : 0.0});
    }
  }
  const std::vector<std::string> field_cols{"phi", "psi", "phi_dot", "psi_dot", "des_phi_dot", "des_psi_dot", "G",
                                            "in_rectangle"};

  // Rectangle polyline (closed).
  const std::vector<std::vector<double>> rect_rows{{rect.phi.lo, rect.psi.lo},
                                                   {rect.phi.hi, rect.psi.lo},
                                                   {rect.phi.hi, rect.psi.hi},
                                                   {rect.phi.lo, rect.psi.hi},
                                                   {rect.phi.lo, rect.psi.lo}};

  // G = 4 u^2 w: zero curves of u and of w, sampled on a grid 4x finer.
  std::vector<std::vector<double>> zero_rows;
  for (int factor = 1; factor <= 2; ++factor) {
    const auto pts = zero_samples(4 * g, [&](double ph, double ps) {
      const auto uw = toric_denominator_factors({ph, ps, level});
      return factor == 1 ? uw.first : uw.second;
    });
    for (const auto& [ph, ps] : pts) zero_rows.push_back({static_cast<double>(factor), ph, ps});
  }

  // Equilibria.
  const std::vector<TorusPoint> eq = torus_equilibria(level, params);
  json eq_json = json::array();
  std::vector<std::pair<std::string, std::vector<double>>> eq_rows;
  for (const TorusPoint& pt : eq) {
    const Point4 x = to_cube(pt);
    std::string kind = "other";
    double l1 = std::nan(""), l2 = std::nan("");
    try {
      const EquilibriumPoint e = classify_equilibrium(x, params);
      kind = std::string(to_string(e.kind));
      l1 = e.lambda1.real();
      l2 = e.lambda2.real();
    } catch (const MathError& e) {
      kind = e.what();
    }
    eq_json.push_back({{"phi", pt.phi}, {"psi", pt.psi}, {"x", x}, {"kind", kind}, {"lambda1", number(l1)},
                       {"lambda2", number(l2)}});
    eq_rows.push_back({kind, {pt.phi, pt.psi, x[0], x[1], x[2], x[3], l1, l2}});
  }
  const std::vector<std::string> eq_cols{"kind", "phi", "psi", "p1", "p2", "p3", "p4", "lambda1", "lambda2"};

  std::vector<std::string> files;
  if (cfg.format == "csv") {
    {
      CsvWriter w(dir / "torus_field.csv", prov, field_cols);
      for (const auto& r : field_rows) w.row(r);
      files.push_back(w.path().string());
    }
    {
      CsvWriter w(dir / "torus_rectangle.csv", prov, {"phi", "psi"});
      for (const auto& r : rect_rows) w.row(r);
      files.push_back(w.path().string());
    }
    {
      CsvWriter w(dir / "torus_denominator_zeros.csv", prov, {"factor", "phi", "psi"});
      for (const auto& r : zero_rows) w.row(r);
      files.push_back(w.path().string());
    }
    {
      CsvWriter w(dir / "torus_equilibria.csv", prov, eq_cols);
      for (const auto& [kind, r] : eq_rows) w.row(kind, r);
      files.push_back(w.path().string());
    }
  } else {
    auto table = [](const std::vector<std::vector<double>>& rows) {
      json t = json::array();
      for (const auto& r : rows) t.push_back(as_json(r));
      return t;
    };
    json doc{{"provenance", prov},
             {"field", {{"columns", field_cols}, {"rows", table(field_rows)}}},
             {"rectangle", table(rect_rows)},
             {"denominator_zeros", {{"columns", {"factor", "phi", "psi"}}, {"rows", table(zero_rows)}}},
             {"equilibria", eq_json}};
    write_json(dir / "torus.json", doc);
    files.push_back((dir / "torus.json").string());
  }

  json summary{{"command", "torus"},
               {"config", to_json(cfg)},
               {"rectangle", {{"phi", {rect.phi.lo, rect.phi.hi}}, {"psi", {rect.psi.lo, rect.psi.hi}}}},
               {"rectangle_empty", rect.empty()},
               {"grid_points", field_rows.size()},
               {"singular_grid_points", singular_points},
               {"denominator_zero_samples", zero_rows.size()},
               {"equilibria_count", eq.size()},
               {"equilibria", eq_json},
               {"files", files}};
  out << summary.dump(2) << '\n';
  return kOk;
}

}  // namespace altpd::cli
