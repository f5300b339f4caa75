// Command-line front end: reproducible residual verification, potential
// inference, field maps, trajectories, the channel-array device simulator,
// and the degeneracy-breaking sweep. Every output embeds the resolved spec,
// the seed, and the artifact version; identical inputs produce identical
// bytes.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "degsol/degeneracy.hpp"
#include "degsol/device.hpp"
#include "degsol/dynamics.hpp"
#include "degsol/errors.hpp"
#include "degsol/families.hpp"
#include "degsol/fields.hpp"
#include "degsol/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace degsol;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_tolerance = 1;
constexpr int exit_invalid = 2;

struct CommonOptions {
  std::string spec_path;
  std::string out_dir = "out";
  std::uint64_t seed = 1;
  double tol = 1e-8;
  std::string scheme = "exact";
  int points = 100;
};

void add_common(CLI::App* cmd, CommonOptions& opt) {
  cmd->add_option("--spec", opt.spec_path, "family descriptor JSON file");
  cmd->add_option("--out", opt.out_dir, "output directory");
  cmd->add_option("--seed", opt.seed, "sampling seed");
  cmd->add_option("--tol", opt.tol, "tolerance for pass/fail");
  cmd->add_option("--scheme", opt.scheme, "derivative scheme: exact|fd2|fd4");
  cmd->add_option("--points", opt.points, "number of sample points");
}

void write_text(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << content;
}

std::string csv_header(const json& resolved_spec, std::uint64_t seed) {
  std::ostringstream os;
  os << "# degsol " << artifact_version << "\n";
  os << "# spec: " << resolved_spec.dump() << "\n";
  os << "# seed: " << seed << "\n";
  return os.str();
}

json with_provenance(json j, const json& resolved_spec, std::uint64_t seed) {
  j["artifact_version"] = artifact_version;
  j["resolved_spec"] = resolved_spec;
  j["seed"] = seed;
  return j;
}

// Flag-level family parameters; slot functions come from --spec JSON or the
// built-in defaults below.
struct FamilyFlags {
  std::string family;
  double xi = pi / 2;
  double alpha = 0.3, beta = 0.9;
  double theta = 0.7, phi = 1.1;
  double m = 1.0;
  double q = 1.0;
  double c1_re = 1.0, c1_im = 0.0;
  double c2_re = 0.0, c2_im = 0.0;
};

void add_family_flags(CLI::App* cmd, FamilyFlags& f) {
  cmd->add_option("--family", f.family, "family name");
  cmd->add_option("--xi", f.xi, "tunneling angle");
  cmd->add_option("--alpha", f.alpha, "first spinor angle");
  cmd->add_option("--beta", f.beta, "second spinor angle");
  cmd->add_option("--theta", f.theta, "polar angle");
  cmd->add_option("--phi", f.phi, "azimuthal angle");
  cmd->add_option("--m", f.m, "mass (natural units)");
  cmd->add_option("--q", f.q, "charge (natural units)");
  cmd->add_option("--c1-re", f.c1_re, "Re c1");
  cmd->add_option("--c1-im", f.c1_im, "Im c1");
  cmd->add_option("--c2-re", f.c2_re, "Re c2");
  cmd->add_option("--c2-im", f.c2_im, "Im c2");
}

ScalarField default_h() {
  return 0.4 * sin(ScalarField::linear(0.3, -0.5, 0.2, -0.7, 0.1)) +
         0.2 * ScalarField::linear(1.0, 0.0, 0.0, -1.0);
}

FamilyDescriptor family_from_flags(const FamilyFlags& f) {
  const cd c1(f.c1_re, f.c1_im), c2(f.c2_re, f.c2_im);
  const ScalarField s0 = ScalarField::var(0);
  switch (family_from_name(f.family)) {
    case FamilyId::massless_general:
      return FamilyDescriptor::massless_general(f.theta, f.phi, c1, c2,
                                                default_h());
    case FamilyId::tunneling:
      return FamilyDescriptor::tunneling(f.xi, default_h(), c1, f.m);
    case FamilyId::barrier_pair:
      return FamilyDescriptor::barrier_pair(c1, c2, Species::particle, f.m);
    case FamilyId::wavelike:
      return FamilyDescriptor::wavelike(f.alpha, f.beta, default_h(), c1, f.m);
    case FamilyId::general_massive:
      return FamilyDescriptor::general_massive(
          f.m, cd(0.8, 0.3), f.phi, gaussian(0.5 * s0),
          0.3 * s0 * ScalarField::var(1), 0.25 * s0, -0.4 * s0);
    case FamilyId::general_massless:
      return FamilyDescriptor::general_massless(
          f.phi, cd(0.9, 0.1) * exp(cd(0.0, -1.3) * s0),
          cd(0.5, -0.7) * exp(cd(0.0, -1.3) * s0),
          0.3 * s0 * ScalarField::var(1), 0.25 * s0, -0.4 * s0);
    case FamilyId::weyl_localized:
      return FamilyDescriptor::weyl_localized(0.9 * s0 + 0.2, 0.5 * s0 + 0.3,
                                              default_h());
    case FamilyId::weyl_from_massless: {
      const auto parent = FamilyDescriptor::general_massless(
          f.phi, cd(0.9, 0.1) * exp(cd(0.0, -1.3) * s0), ScalarField(),
          0.3 * s0 * ScalarField::var(1), 0.25 * s0, -0.4 * s0);
      return FamilyDescriptor::weyl_from_massless(parent, WeylSide::T);
    }
  }
  throw UnknownFamily("unknown family '" + f.family + "'");
}

FamilyDescriptor resolve_family(const CommonOptions& opt,
                                const FamilyFlags& flags) {
  if (!opt.spec_path.empty()) {
    std::ifstream in(opt.spec_path);
    if (!in) throw Error("cannot read spec file " + opt.spec_path);
    json j;
    in >> j;
    return FamilyDescriptor::from_json(j).with_charge(flags.q);
  }
  if (flags.family.empty())
    throw Error("either --spec or --family is required");
  return family_from_flags(flags).with_charge(flags.q);
}

ResidualReport base_residual(const FamilyDescriptor& fam,
                             std::span<const SpacetimePoint> pts, Scheme scheme) {
  if (fam.is_weyl()) {
    const WeylForm form = fam.equation() == EquationKind::weyl_positive
                              ? WeylForm::positive
                              : WeylForm::negative;
    return weyl_residual(fam.weyl_spinor(), fam.potential(), pts, form, scheme);
  }
  return dirac_residual(fam.spinor(), fam.potential(), fam.mass(), pts, scheme);
}

ResidualReport extended_residual(const FamilyDescriptor& fam,
                                 const ScalarField& s,
                                 std::span<const SpacetimePoint> pts) {
  const FourPotential b = extend_potential(fam.potential(), s, fam.direction());
  if (fam.is_weyl()) {
    const WeylForm form = fam.equation() == EquationKind::weyl_positive
                              ? WeylForm::positive
                              : WeylForm::negative;
    return weyl_residual(fam.weyl_spinor(), b, pts, form);
  }
  return dirac_residual(fam.spinor(), b, fam.mass(), pts);
}

int run_verify(const CommonOptions& opt, const FamilyFlags& flags,
               const std::string& extend_s) {
  const FamilyDescriptor fam = resolve_family(opt, flags);
  const Scheme scheme = scheme_from_name(opt.scheme);
  const auto pts = sample_points(fam.sampling_box(), opt.points, opt.seed);

  ResidualReport base = base_residual(fam, pts, scheme);
  base.label = family_name(fam.id()) + ":base";
  base.seed = opt.seed;

  json extensions = json::array();
  bool pass = base.max_relative <= opt.tol;
  if (!extend_s.empty()) {
    int n = 0;
    if (extend_s.rfind("random:", 0) == 0)
      n = std::stoi(extend_s.substr(7));
    else
      throw Error("--extend-s expects random:<count>");
    std::uint64_t state = opt.seed;
    for (int i = 0; i < n; ++i) {
      const ScalarField s = ScalarField::random_catalog(state);
      ResidualReport ext = extended_residual(fam, s, pts);
      ext.label = family_name(fam.id()) + ":extend:" + std::to_string(i);
      ext.seed = opt.seed;
      pass = pass && ext.max_relative <= opt.tol;
      json je;
      je["index"] = i;
      je["max_relative"] = ext.max_relative;
      je["median_relative"] = ext.median_relative;
      je["shift"] = s.to_json();
      extensions.push_back(je);
    }
  }

  json report;
  report["tolerance"] = opt.tol;
  report["base"] = base.to_json();
  report["extensions"] = extensions;
  report["pass"] = pass;
  report = with_provenance(std::move(report), fam.to_json(), opt.seed);
  write_text(fs::path(opt.out_dir) / "report.json", report.dump(2) + "\n");

  std::cout << (pass ? "PASS" : "FAIL") << " max_relative "
            << format_double(base.max_relative) << "\n";
  return pass ? exit_ok : exit_tolerance;
}

int run_potential(const CommonOptions& opt, const FamilyFlags& flags,
                  const std::vector<double>& at, const std::string& probe) {
  SpacetimePoint pt{0.25, 0.5, -0.35, 0.15};
  if (at.size() == 4) pt = {at[0], at[1], at[2], at[3]};

  if (!probe.empty()) {
    // Reference spinors without a family: a nondegenerate plane wave and a
    // deliberate non-solution.
    SpinorField psi = [&]() {
      if (probe == "rest_wave") {
        const ScalarField phase =
            exp(cd(0.0, -flags.m) * ScalarField::var(0));
        return SpinorField(
            {phase, ScalarField(), ScalarField(), ScalarField()});
      }
      if (probe == "non_solution")
        return SpinorField({ScalarField::constant(1.0), ScalarField::var(0),
                            ScalarField(), ScalarField()});
      throw Error("unknown probe '" + probe + "'");
    }();
    const InferenceResult inf = infer_potentials(psi, flags.m, pt);
    json report;
    report["point"] = {pt.t, pt.x, pt.y, pt.z};
    report["inference"] = inf.to_json();
    report["nullspace_dimension"] = inf.nullspace.size();
    report = with_provenance(std::move(report),
                             json{{"probe", probe}, {"mass", flags.m}},
                             opt.seed);
    write_text(fs::path(opt.out_dir) / "inference.json", report.dump(2) + "\n");
    std::cout << "nullspace dimension " << inf.nullspace.size() << "\n";
    return exit_ok;
  }

  const FamilyDescriptor fam = resolve_family(opt, flags);
  const SpinorField psi = fam.spinor();
  const InferenceResult inf = infer_potentials(psi, fam.mass(), pt);
  const DirectionMatch match =
      validate_direction(psi, fam.mass(), fam.direction(), pt, opt.tol);

  json report;
  report["point"] = {pt.t, pt.x, pt.y, pt.z};
  report["inference"] = inf.to_json();
  report["nullspace_dimension"] = match.nullspace_dimension;
  report["closed_form_direction"] = match.closed_form;
  report["direction_matched"] = match.matched;
  report["max_component_diff"] = match.max_component_diff;
  report = with_provenance(std::move(report), fam.to_json(), opt.seed);
  write_text(fs::path(opt.out_dir) / "inference.json", report.dump(2) + "\n");

  std::cout << "nullspace dimension " << match.nullspace_dimension
            << (match.matched ? " (direction matched)" : " (MISMATCH)")
            << "\n";
  return match.matched ? exit_ok : exit_tolerance;
}

int run_fields(const CommonOptions& opt, const FamilyFlags& flags,
               const std::string& extend_s_const) {
  const FamilyDescriptor fam = resolve_family(opt, flags);
  FourPotential pot = fam.potential();
  if (!extend_s_const.empty()) {
    pot = extend_potential(pot, ScalarField::constant(std::stod(extend_s_const)),
                           fam.direction());
  }

  const auto pts = sample_points(fam.sampling_box(), opt.points, opt.seed);
  std::ostringstream os;
  os << csv_header(fam.to_json(), opt.seed);
  os << "t,x,y,z,Ex,Ey,Ez,Bx,By,Bz,Sx,Sy,Sz\n";
  for (const auto& pt : pts) {
    const FieldSample f = em_fields(pot, fam.charge(), pt);
    const Vec3 s = poynting(f.E, f.B);
    os << format_double(pt.t) << ',' << format_double(pt.x) << ','
       << format_double(pt.y) << ',' << format_double(pt.z) << ','
       << format_double(f.E.x) << ',' << format_double(f.E.y) << ','
       << format_double(f.E.z) << ',' << format_double(f.B.x) << ','
       << format_double(f.B.y) << ',' << format_double(f.B.z) << ','
       << format_double(s.x) << ',' << format_double(s.y) << ','
       << format_double(s.z) << "\n";
  }
  write_text(fs::path(opt.out_dir) / "fields.csv", os.str());
  std::cout << "wrote " << pts.size() << " field samples\n";
  return exit_ok;
}

struct TrajectoryFlags {
  std::string preset;
  std::vector<double> theta_poly{0.0};
  std::vector<double> phi_poly{0.0};
  std::vector<double> r0{0.0, 0.0, 0.0};
  double t0 = 0.0, t1 = 10.0, dt = 2e-4;
};

ScalarField polynomial_in_t(const std::vector<double>& coeffs) {
  ScalarField f = ScalarField::constant(coeffs.empty() ? 0.0 : coeffs[0]);
  const ScalarField t = ScalarField::var(0);
  for (std::size_t k = 1; k < coeffs.size(); ++k) {
    if (coeffs[k] == 0.0) continue;
    const ScalarField power = k == 1 ? t : t.pow(static_cast<int>(k));
    f = f + coeffs[k] * power;
  }
  return f;
}

int run_trajectory(const CommonOptions& opt, TrajectoryFlags& tf) {
  ScalarField theta_t, phi_t;
  if (tf.preset == "fig3" || tf.preset == "fig4") {
    theta_t = ScalarField::constant(pi / 4);
    phi_t = polynomial_in_t({0.0, 10.0, -1.0});
  } else if (tf.preset == "fig5") {
    theta_t = polynomial_in_t({0.0, 10.0, -1.0});
    phi_t = ScalarField::constant(pi / 2);
  } else if (tf.preset.empty()) {
    theta_t = polynomial_in_t(tf.theta_poly);
    phi_t = polynomial_in_t(tf.phi_poly);
  } else {
    throw Error("unknown preset '" + tf.preset + "'");
  }

  const Trajectory traj =
      integrate_trajectory(theta_t, phi_t, {tf.r0[0], tf.r0[1], tf.r0[2]},
                           tf.t0, tf.t1, tf.dt);

  json spec;
  spec["preset"] = tf.preset;
  spec["theta_t"] = theta_t.to_json();
  spec["phi_t"] = phi_t.to_json();
  spec["t0"] = tf.t0;
  spec["t1"] = tf.t1;
  spec["dt"] = tf.dt;
  spec["r0"] = tf.r0;

  std::ostringstream os;
  os << csv_header(spec, opt.seed);
  os << "t,x,y,z,vx,vy,vz\n";
  for (const auto& s : traj.samples) {
    os << format_double(s.t) << ',' << format_double(s.r.x) << ','
       << format_double(s.r.y) << ',' << format_double(s.r.z) << ','
       << format_double(s.v.x) << ',' << format_double(s.v.y) << ','
       << format_double(s.v.z) << "\n";
  }
  write_text(fs::path(opt.out_dir) / "trajectory.csv", os.str());
  std::cout << "integrated " << traj.samples.size() << " samples, final z "
            << format_double(traj.samples.back().r.z) << "\n";
  return exit_ok;
}

struct DeviceFlags {
  std::string config_path;
  std::string schedule_path;
  std::int64_t channels = 0;
  double clock = 0.0;
  int samples = 16;
  bool report = false;
};

std::vector<ScheduleEntry> load_schedule(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read schedule " + path);
  std::vector<ScheduleEntry> entries;
  if (path.size() > 5 && path.substr(path.size() - 5) == ".json") {
    json j;
    in >> j;
    for (const auto& e : j)
      entries.push_back({e.at("time_s").get<double>(),
                         e.at("channel").get<std::int64_t>(),
                         e.at("on").get<bool>()});
    return entries;
  }
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string time_s, channel, state;
    std::getline(ls, time_s, ',');
    std::getline(ls, channel, ',');
    std::getline(ls, state, ',');
    if (time_s == "time_s") continue;  // header
    entries.push_back({std::stod(time_s), std::stoll(channel), state == "on"});
  }
  return entries;
}

int run_device(const CommonOptions& opt, const DeviceFlags& df) {
  DeviceConfig config;
  if (!df.config_path.empty()) {
    std::ifstream in(df.config_path);
    if (!in) throw Error("cannot read config " + df.config_path);
    json j;
    in >> j;
    config = DeviceConfig::from_json(j);
  }
  if (df.channels > 0) config.n_channels = df.channels;
  if (df.clock > 0.0) config.clock_period_s = df.clock;
  config.validate();

  json summary;
  summary["config"] = config.to_json();
  summary["latency_s"] = config.latency_s();
  summary["throughput_bits_per_s"] = throughput(config);

  if (!df.schedule_path.empty() || !df.report) {
    Device dev(config);
    std::vector<ScheduleEntry> schedule;
    if (!df.schedule_path.empty()) schedule = load_schedule(df.schedule_path);
    dev.apply_schedule(schedule);

    double horizon = config.clock_period_s * (df.samples + 2);
    for (const auto& e : schedule)
      horizon = std::max(horizon, e.time_s + 2 * config.latency_s() +
                                      config.clock_period_s);
    dev.step(horizon);

    std::vector<double> sample_times;
    for (int i = 0; i < df.samples; ++i)
      sample_times.push_back((i + 0.5) * config.clock_period_s);
    const auto bits = dev.readout(sample_times);

    std::ostringstream os;
    os << csv_header(config.to_json(), opt.seed);
    os << "channel";
    for (double t : sample_times) os << ',' << format_double(t);
    os << "\n";
    for (std::int64_t c = 0; c < config.n_channels; ++c) {
      os << c;
      for (int b : bits[static_cast<std::size_t>(c)]) os << ',' << b;
      os << "\n";
    }
    write_text(fs::path(opt.out_dir) / "readout.csv", os.str());
    summary["events"] = dev.event_log().size();
  }

  summary = with_provenance(std::move(summary), config.to_json(), opt.seed);
  write_text(fs::path(opt.out_dir) / "device.json", summary.dump(2) + "\n");
  std::cout << "throughput " << format_double(throughput(config))
            << " bit/s\n";
  return exit_ok;
}

int run_sweep(const CommonOptions& opt, const std::vector<double>& e_values) {
  std::uint64_t state = opt.seed;
  const ScalarField s = ScalarField::random_catalog(state);
  ScanParams params;
  params.seed = opt.seed;
  params.n_points = opt.points;
  const auto rows = degeneracy_breaking_scan(e_values, s, params);

  json spec;
  spec["e_values"] = e_values;
  spec["shift"] = s.to_json();

  json jrows = json::array();
  std::ostringstream os;
  os << csv_header(spec, opt.seed);
  os << "e,normalized_residual,closed_form_factor\n";
  for (const auto& row : rows) {
    os << format_double(row.e) << ',' << format_double(row.normalized_residual)
       << ',' << format_double(row.closed_form_factor) << "\n";
    jrows.push_back({{"e", row.e},
                     {"normalized_residual", row.normalized_residual},
                     {"closed_form_factor", row.closed_form_factor}});
  }
  write_text(fs::path(opt.out_dir) / "sweep.csv", os.str());

  json report;
  report["rows"] = jrows;
  report = with_provenance(std::move(report), spec, opt.seed);
  write_text(fs::path(opt.out_dir) / "sweep.json", report.dump(2) + "\n");
  std::cout << "swept " << rows.size() << " values\n";
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"degsol: degenerate spinor laboratory"};
  app.require_subcommand(1);

  CommonOptions opt;
  FamilyFlags flags;

  auto* verify_cmd = app.add_subcommand("verify", "residual verification");
  add_common(verify_cmd, opt);
  add_family_flags(verify_cmd, flags);
  std::string extend_s;
  verify_cmd->add_option("--extend-s", extend_s,
                         "also check shifted potentials, e.g. random:20");

  auto* potential_cmd =
      app.add_subcommand("potential", "potential inference and null space");
  add_common(potential_cmd, opt);
  add_family_flags(potential_cmd, flags);
  std::vector<double> at;
  potential_cmd->add_option("--at", at, "evaluation point t,x,y,z")
      ->expected(4);
  std::string probe;
  potential_cmd->add_option("--probe", probe,
                            "built-in spinor: rest_wave | non_solution");

  auto* fields_cmd = app.add_subcommand("fields", "field maps as CSV");
  add_common(fields_cmd, opt);
  add_family_flags(fields_cmd, flags);
  std::string extend_s_const;
  fields_cmd->add_option("--extend-s-const", extend_s_const,
                         "constant shift along the degeneracy direction");

  auto* traj_cmd = app.add_subcommand("trajectory", "expectation trajectories");
  add_common(traj_cmd, opt);
  TrajectoryFlags tf;
  traj_cmd->add_option("--preset", tf.preset, "fig3 | fig4 | fig5");
  traj_cmd->add_option("--theta-poly", tf.theta_poly,
                       "polynomial coefficients of theta(t)");
  traj_cmd->add_option("--phi-poly", tf.phi_poly,
                       "polynomial coefficients of phi(t)");
  traj_cmd->add_option("--r0", tf.r0, "initial position")->expected(3);
  traj_cmd->add_option("--t0", tf.t0, "start time");
  traj_cmd->add_option("--t1", tf.t1, "end time");
  traj_cmd->add_option("--dt", tf.dt, "integration step");

  auto* device_cmd = app.add_subcommand("device", "channel-array simulator");
  add_common(device_cmd, opt);
  DeviceFlags df;
  device_cmd->add_option("--config", df.config_path, "device config JSON");
  device_cmd->add_option("--schedule", df.schedule_path,
                         "gate schedule CSV (time_s,channel,on|off) or JSON");
  device_cmd->add_option("--channels", df.channels, "override channel count");
  device_cmd->add_option("--clock", df.clock, "override clock period (s)");
  device_cmd->add_option("--samples", df.samples, "readout samples");
  device_cmd->add_flag("--report", df.report, "summary only, no readout");

  auto* sweep_cmd =
      app.add_subcommand("sweep", "degeneracy breaking vs rest-energy fraction");
  add_common(sweep_cmd, opt);
  std::vector<double> e_values{0.0, 0.01, 0.05, 0.1, 0.25, 0.5};
  sweep_cmd->add_option("--e-values", e_values, "rest/total energy ratios");

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify_cmd->parsed()) return run_verify(opt, flags, extend_s);
    if (potential_cmd->parsed()) return run_potential(opt, flags, at, probe);
    if (fields_cmd->parsed()) return run_fields(opt, flags, extend_s_const);
    if (traj_cmd->parsed()) return run_trajectory(opt, tf);
    if (device_cmd->parsed()) return run_device(opt, df);
    if (sweep_cmd->parsed()) return run_sweep(opt, e_values);
  } catch (const NoSolution& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_tolerance;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_invalid;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_invalid;
  }
  return exit_invalid;
}
