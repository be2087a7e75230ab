#include "kramers/cli.hpp"

#include "kramers/errors.hpp"
#include "kramers/experiments.hpp"
#include "kramers/fp_solver.hpp"
#include "kramers/functionals.hpp"
#include "kramers/io.hpp"
#include "kramers/limit_system.hpp"
#include "kramers/micro_m.hpp"
#include "kramers/particles.hpp"
#include "kramers/recovery.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

namespace kramers {

namespace {

using nlohmann::json;

struct Common {
  std::string potential = "default";
  std::string out;
};

PotentialSpec potential_of(const Common& c) {
  if (c.potential == "default")
    return default_potential();
  return polynomial_potential(parse_number_list(c.potential));
}

std::optional<std::string> out_dir(const Common& c) {
  const std::string d = resolve_out_dir(c.out);
  if (d.empty())
    return std::nullopt;
  return d;
}

ContextPtr context(const Common& c, double eps) {
  return std::make_shared<const EpsilonContext>(build_context(potential_of(c), eps));
}

std::string csv_text(const std::string& header, const std::vector<std::vector<double>>& rows) {
  std::ostringstream os;
  os << header << '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i)
      os << (i ? "," : "") << format_double(r[i]);
    os << '\n';
  }
  return os.str();
}

// stdout always; a file as well when an output directory is set
void emit_csv(std::ostream& out, const Common& c, const std::string& name,
              const std::string& header, const std::vector<std::vector<double>>& rows) {
  const std::string text = csv_text(header, rows);
  out << text;
  if (auto d = out_dir(c))
    write_text(*d + "/" + name, text);
}

void emit_json(std::ostream& out, const Common& c, const std::string& name, const json& j) {
  out << j.dump(2) << '\n';
  if (auto d = out_dir(c))
    write_text(*d + "/" + name, j.dump(2) + "\n");
}

json breakdown_json(const ActionBreakdown& a) {
  return {{"entropy_start", json_number(a.entropy_start)},
          {"entropy_end", json_number(a.entropy_end)},
          {"kinetic", json_number(a.kinetic)},
          {"slope", json_number(a.slope)},
          {"J", json_number(a.J)},
          {"A", json_number(a.A)}};
}

// Long-format trajectory CSV (t, x, u) back into a Trajectory on a fresh grid.
Trajectory read_trajectory(const std::string& path, ContextPtr ctx) {
  std::ifstream in(path);
  if (!in)
    throw ValidationError("cannot open '" + path + "'");
  std::string header;
  std::getline(in, header);
  Space space;
  if (header.rfind("t,s,u", 0) == 0)
    space = Space::s;
  else if (header.rfind("t,xi,u", 0) == 0)
    space = Space::xi;
  else
    throw ValidationError("trajectory: header must be t,s,u or t,xi,u");
  in.close();
  const auto cols = read_columns(path, 3);
  const auto& t = cols[0];
  const auto& x = cols[1];
  const auto& u = cols[2];
  std::size_t n = 0;
  while (n < t.size() && t[n] == t[0])
    ++n;
  if (n < 3 || t.size() % n != 0)
    throw ValidationError("trajectory: every stamp must list the same number of nodes");
  auto grid = make_grid(ctx, space, static_cast<int>(n));
  Trajectory tr;
  tr.grid = grid;
  for (std::size_t k = 0; k * n < t.size(); ++k) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t r = k * n + i;
      if (t[r] != t[k * n])
        throw ValidationError("trajectory: stamp rows are not contiguous");
      if (std::abs(x[r] - grid->nodes[i]) > 1e-9 * (1.0 + std::abs(grid->nodes[i])))
        throw ValidationError("trajectory: node positions do not match a uniform grid");
      v[i] = u[r];
    }
    tr.t.push_back(t[k * n]);
    tr.u.push_back(make_field(grid, std::move(v)).u);
  }
  if (tr.stamps() >= 2)
    tr.dt = (tr.t.back() - tr.t.front()) / (tr.stamps() - 1);
  return tr;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Kramers diffusion-to-reaction laboratory"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--potential", common.potential,
                 "\"default\" or polynomial coefficients c0,c1,... of H");
  app.add_option("--out", common.out, "directory for CSV/JSON artifacts (env KRAMERS_OUT wins)");

  // constants
  auto* c_const = app.add_subcommand("constants", "Z, tau, k, kappa and the Watson ratio");
  double eps = 0.1;
  c_const->add_option("--eps", eps, "epsilon")->required();

  // transform
  auto* c_tr = app.add_subcommand("transform", "table xi, s, ghat");
  int nodes = 2000;
  c_tr->add_option("--eps", eps)->required();
  c_tr->add_option("--nodes", nodes, "table nodes on [0, 1]");

  // solve
  auto* c_solve = app.add_subcommand("solve", "Fokker-Planck solve in s or xi coordinates");
  std::string space = "s", init = "step:2,0", format = "csv";
  int grid = 401, steps = 2000, every = 1;
  std::optional<double> T;
  c_solve->add_option("--eps", eps)->required();
  c_solve->add_option("--space", space)->check(CLI::IsMember({"s", "xi"}));
  c_solve->add_option("--grid", grid);
  c_solve->add_option("--steps", steps);
  c_solve->add_option("--T", T, "horizon (default 1/k)");
  c_solve->add_option("--init", init, "step:a,b | smooth:a,b | const:c | file:<csv>");
  c_solve->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
  c_solve->add_option("--every", every, "keep every n-th stamp in the CSV");

  // action
  auto* c_act = app.add_subcommand("action", "entropy, dissipation and action of a trajectory CSV");
  std::string traj_path;
  c_act->add_option("--traj", traj_path)->required();
  c_act->add_option("--eps", eps, "epsilon the trajectory was computed at")->required();

  // micro
  auto* c_micro = app.add_subcommand("micro", "micro problem M(w; u-, u+)");
  double w = 0.0, um = 1.0, up = 1.0;
  std::optional<double> kappa;
  bool profile = false;
  int points = 201;
  c_micro->add_option("--w", w)->required();
  c_micro->add_option("--um", um)->required();
  c_micro->add_option("--up", up)->required();
  c_micro->add_option("--kappa", kappa, "half-length (default 1/k of the potential)");
  c_micro->add_flag("--profile", profile, "also emit the profile as CSV s,u");
  c_micro->add_option("--points", points, "profile samples");

  // limit
  auto* c_lim = app.add_subcommand("limit", "two-state limit ODE");
  std::string u0 = "2,0";
  bool with_action = false;
  c_lim->add_option("--u0", u0, "u-,u+ at t = 0");
  c_lim->add_option("--T", T, "horizon (default 1/k)");
  c_lim->add_option("--steps", steps);
  c_lim->add_flag("--action", with_action, "append the limit action as JSON");

  // recover
  auto* c_rec = app.add_subcommand("recover", "recovery sequence for a limit curve");
  std::string curve, eps_list = "0.2,0.1,0.05";
  RecoveryConfig rcfg;
  bool fixed = false;
  c_rec->add_option("--curve", curve, "CSV t,um,up (default: limit ODE from 1.8,0.2 on [0, 1/k])");
  c_rec->add_option("--eps-list", eps_list);
  c_rec->add_option("--eta", rcfg.eta, "clamp coefficient");
  c_rec->add_option("--width", rcfg.width, "mollifier width coefficient (time units)");
  c_rec->add_option("--grid", rcfg.grid);
  c_rec->add_flag("--fixed", fixed, "use eta and width as given instead of scaling them by eps");

  // particles
  auto* c_part = app.add_subcommand("particles", "independent particles vs Fokker-Planck");
  long long n_part = 10000;
  double dt = 1e-4;
  std::uint64_t seed = 1;
  int bins = 400;
  std::string scheme = "em", snaps;
  c_part->add_option("--eps", eps)->required();
  c_part->add_option("--n", n_part);
  c_part->add_option("--T", T, "horizon (default 1/k)");
  c_part->add_option("--dt", dt);
  c_part->add_option("--seed", seed);
  c_part->add_option("--bins", bins);
  c_part->add_option("--scheme", scheme, "em | lm")->check(CLI::IsMember({"em", "lm"}));
  c_part->add_option("--snapshots", snaps, "extra snapshot times, comma separated");
  c_part->add_option("--grid", grid, "nodes of the reference Fokker-Planck solve");

  // converge
  auto* c_conv = app.add_subcommand("converge", "epsilon sweep against the limit ODE");
  std::string config_path;
  c_conv->add_option("--config", config_path, "JSON run config");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    if (*c_const) {
      const auto spec = potential_of(common);
      const auto ctx = context(common, eps);
      emit_json(out, common, "constants.json",
                {{"eps", eps},
                 {"Z", ctx->Z},
                 {"tau", ctx->tau},
                 {"k", ctx->rc.k},
                 {"kappa", ctx->rc.kappa},
                 {"watson_ratio", watson_ratio(spec, eps)}});
    } else if (*c_tr) {
      const auto spec = potential_of(common);
      auto ctx = std::make_shared<const EpsilonContext>(build_context(spec, eps, nodes));
      std::vector<std::vector<double>> rows;
      for (const auto& [xi, s] : ctx->table.nodes())
        rows.push_back({xi, s, hat_density(*ctx, s)});
      emit_csv(out, common, "transform.csv", "xi,s,ghat", rows);
    } else if (*c_solve) {
      const auto ctx = context(common, eps);
      const Space sp = space == "s" ? Space::s : Space::xi;
      auto g = make_grid(ctx, sp, grid);
      const auto f0 = initial_field(parse_init(init), g);
      const double horizon = T.value_or(1.0 / ctx->rc.k);
      const auto tr = sp == Space::s ? solve_s(f0, horizon, steps) : solve_xi(f0, horizon, steps);
      if (every < 1)
        throw ValidationError("--every must be at least 1");
      if (format == "csv") {
        std::vector<std::vector<double>> rows;
        for (std::size_t k = 0; k < tr.stamps(); ++k) {
          if (k % every != 0 && k + 1 != tr.stamps())
            continue;
          for (std::size_t i = 0; i < g->size(); ++i)
            rows.push_back({tr.t[k], g->nodes[i], tr.u[k][i]});
        }
        emit_csv(out, common, "trajectory.csv", sp == Space::s ? "t,s,u" : "t,xi,u", rows);
      } else {
        json stamps = json::array();
        for (std::size_t k = 0; k < tr.stamps(); ++k) {
          if (k % every != 0 && k + 1 != tr.stamps())
            continue;
          const auto f = tr.at(k);
          stamps.push_back({{"t", tr.t[k]},
                            {"trace_minus", f.u.front()},
                            {"trace_plus", f.u.back()},
                            {"mass", f.mass()},
                            {"entropy", entropy(f)}});
        }
        emit_json(out, common, "solve.json",
                  {{"eps", eps},
                   {"space", space},
                   {"grid", grid},
                   {"steps", steps},
                   {"T", horizon},
                   {"dt", tr.dt},
                   {"stamps", stamps}});
      }
    } else if (*c_act) {
      const auto ctx = context(common, eps);
      const auto tr = read_trajectory(traj_path, ctx);
      emit_json(out, common, "action.json", breakdown_json(action(tr)));
    } else if (*c_micro) {
      const double kap = kappa.value_or(reaction_constants(potential_of(common)).kappa);
      const auto p = minimize_profile(w, um, up, kap);
      const auto [lo, hi] = m_bounds(w, um, up, kap);
      emit_json(out, common, "micro.json",
                {{"M", p.value}, {"lower", lo}, {"upper", hi}, {"A", p.A}, {"B", p.B}, {"C", p.C}});
      if (profile) {
        if (points < 2)
          throw ValidationError("--points must be at least 2");
        std::vector<std::vector<double>> rows;
        for (int i = 0; i < points; ++i) {
          const double s = -kap + 2.0 * kap * i / (points - 1);
          rows.push_back({s, p(s)});
        }
        emit_csv(out, common, "profile.csv", "s,u", rows);
      }
    } else if (*c_lim) {
      const auto rc = reaction_constants(potential_of(common));
      const auto v = parse_number_list(u0);
      if (v.size() != 2)
        throw ValidationError("--u0 expects two values");
      const auto lim = solve_limit(v[0], v[1], rc.k, T.value_or(1.0 / rc.k), steps);
      std::vector<std::vector<double>> rows;
      for (std::size_t n = 0; n < lim.stamps(); ++n) {
        const auto st = lim.at(n);
        double M = std::numeric_limits<double>::infinity();
        if (st.um > 0.0 && st.up > 0.0)
          M = m_value(lim.w[n], st.um, st.up, rc.kappa);
        else if (lim.w[n] == 0.0)
          M = std::pow(std::sqrt(st.up) - std::sqrt(st.um), 2) / rc.kappa;
        rows.push_back({lim.t[n], st.um, st.up, lim.w[n], entropy0(st), M});
      }
      emit_csv(out, common, "limit.csv", "t,um,up,w,E0,M", rows);
      if (with_action) {
        const auto a = action0(lim, rc.kappa);
        emit_json(out, common, "limit_action.json",
                  {{"entropy_start", a.entropy_start},
                   {"entropy_end", a.entropy_end},
                   {"J0", json_number(a.J0)},
                   {"A0", json_number(a.A0)}});
      }
    } else if (*c_rec) {
      const auto spec = potential_of(common);
      const auto rc = reaction_constants(spec);
      std::vector<double> t;
      WellSeries u;
      if (curve.empty()) {
        const auto lim = solve_limit(1.8, 0.2, rc.k, 1.0 / rc.k, 400);
        t = lim.t;
        u = {lim.um, lim.up};
      } else {
        const auto cols = read_columns(curve, 3);
        t = cols[0];
        u = {cols[1], cols[2]};
      }
      rcfg.eps_list = parse_number_list(eps_list);
      rcfg.scale_with_eps = !fixed;
      json rows = json::array();
      for (const auto& r : recovery_sweep(spec, t, u, rcfg))
        rows.push_back({{"eps", r.eps},
                        {"traceL1", json_number(r.trace_L1)},
                        {"J_eps", json_number(r.J_eps)},
                        {"J0", json_number(r.J0)},
                        {"E_start_gap", json_number(r.E_start_gap)},
                        {"E_end_gap", json_number(r.E_end_gap)}});
      emit_json(out, common, "recover.json", rows);
    } else if (*c_part) {
      if (n_part < 1)
        throw ValidationError("--n must be at least 1");
      const auto ctx = context(common, eps);
      const double horizon = T.value_or(1.0 / ctx->rc.k);
      ParticleOptions po;
      po.bins = bins;
      po.scheme = scheme == "lm" ? SdeScheme::leimkuhler_matthews : SdeScheme::euler_maruyama;
      if (!snaps.empty())
        po.snapshots = parse_number_list(snaps);
      auto x0 = sample_left_well(*ctx, static_cast<std::size_t>(n_part), seed);
      const auto run = simulate(*ctx, std::move(x0), horizon, dt, seed, po);

      // reference: u = 2 on the left well, 0 on the right
      auto g = make_grid(ctx, Space::xi, grid);
      const int fp_steps = 2000;
      const auto fp = solve_xi(step_field(g, 2.0, 0.0), horizon, fp_steps);
      std::vector<std::vector<double>> rows;
      json summary = json::array();
      for (const auto& h : run.histograms) {
        for (std::size_t b = 0; b < h.counts.size(); ++b)
          rows.push_back({h.t, 0.5 * (h.edges[b] + h.edges[b + 1]),
                          static_cast<double>(h.counts[b])});
        const auto k = static_cast<std::size_t>(std::lround(h.t / horizon * fp_steps));
        summary.push_back({{"t", h.t}, {"W1", empirical_distance(h, fp.at(std::min<std::size_t>(k, fp_steps)))}});
      }
      emit_csv(out, common, "particles.csv", "t,bin_center,count", rows);
      emit_json(out, common, "particles.json",
                {{"eps", eps}, {"n", n_part}, {"dt", run.dt}, {"seed", seed}, {"snapshots", summary}});
    } else if (*c_conv) {
      RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
      if (!common.out.empty())
        cfg.out_dir = common.out;
      if (common.potential != "default")
        cfg.potential = potential_of(common);
      const std::string dir = resolve_out_dir(cfg.out_dir);
      const auto rep = converge_sweep(cfg);
      write_report_csv(rep, dir + "/report.csv");
      out << report_json(rep).dump(2) << '\n';
    }
  } catch (const ValidationError& e) {
    err << "validation error: " << e.what() << '\n';
    return 1;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i)
    args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

} // namespace kramers
