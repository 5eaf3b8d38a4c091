// SPDX-FileCopyrightText: 2026 spde-lab contributors
// SPDX-License-Identifier: Apache-2.0
#include "spde/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "spde/csv.hpp"

namespace spde {

namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  const std::string last = trim(cur);
  if (!last.empty() || !out.empty()) out.push_back(last);
  if (out.size() == 1 && out[0].empty()) out.clear();
  return out;
}

double to_double(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw std::invalid_argument(key + ": not a number: '" + v + "'");
  }
}

long long to_int(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    const long long x = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw std::invalid_argument(key + ": not an integer: '" + v + "'");
  }
}

std::size_t to_size(const std::string& v, const std::string& key) {
  const long long x = to_int(v, key);
  if (x < 0) throw std::invalid_argument(key + ": must be >= 0");
  return static_cast<std::size_t>(x);
}

std::uint64_t to_u64(const std::string& v, const std::string& key) {
  try {
    std::size_t pos = 0;
    const unsigned long long x = std::stoull(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw std::invalid_argument(key + ": not an unsigned integer: '" + v + "'");
  }
}

std::vector<double> to_list(const std::string& v, const std::string& key) {
  std::vector<double> out;
  for (const std::string& tok : split(v, ','))
    out.push_back(to_double(tok, key));
  return out;
}

std::vector<std::pair<std::size_t, double>> to_pairs(const std::string& v,
                                                     const std::string& key) {
  std::vector<std::pair<std::size_t, double>> out;
  for (const std::string& tok : split(v, ',')) {
    const auto parts = split(tok, ':');
    if (parts.size() != 2)
      throw std::invalid_argument(key + ": expected mode:value, got '" + tok + "'");
    out.emplace_back(to_size(parts[0], key), to_double(parts[1], key));
  }
  return out;
}

std::vector<Scenario::AtomCfg> to_atoms(const std::string& v,
                                        const std::string& key) {
  std::vector<Scenario::AtomCfg> out;
  for (const std::string& tok : split(v, ',')) {
    const auto parts = split(tok, ':');
    if (parts.size() != 3)
      throw std::invalid_argument(key + ": expected mode:weight:amp, got '" +
                                  tok + "'");
    Scenario::AtomCfg a;
    a.mode = to_size(parts[0], key);
    a.weight = to_double(parts[1], key);
    a.amp = to_double(parts[2], key);
    out.push_back(a);
  }
  return out;
}

std::string join(std::span<const double> v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += g17(v[i]);
  }
  return s;
}

std::string join_pairs(const std::vector<std::pair<std::size_t, double>>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i].first) + ":" + g17(v[i].second);
  }
  return s;
}

std::string join_atoms(const std::vector<Scenario::AtomCfg>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i].mode) + ":" + g17(v[i].weight) + ":" +
         g17(v[i].amp);
  }
  return s;
}

void set_key(Scenario& s, const std::string& sec, const std::string& key,
             const std::string& val) {
  const std::string full = sec + "." + key;
  if (sec == "space") {
    if (key == "n_modes") s.n_modes = to_size(val, full);
    else if (key == "grid_factor") s.grid_factor = to_size(val, full);
    else throw std::invalid_argument("unknown key: " + full);
  } else if (sec == "drift") {
    if (key == "name") s.drift_name = val;
    else if (key == "c") s.drift_c = to_double(val, full);
    else if (key == "p") s.drift_p = to_double(val, full);
    else throw std::invalid_argument("unknown key: " + full);
  } else if (sec == "wiener") {
    if (key == "sigma") s.sigma = to_double(val, full);
    else if (key == "beta") s.beta = to_double(val, full);
    else throw std::invalid_argument("unknown key: " + full);
  } else if (sec == "jumps") {
    if (key == "atoms") s.atoms = to_atoms(val, full);
    else throw std::invalid_argument("unknown key: " + full);
  } else if (sec == "initial") {
    if (key == "u0") s.u0 = to_pairs(val, full);
    else throw std::invalid_argument("unknown key: " + full);
  } else if (sec == "time") {
    if (key == "T") s.T = to_double(val, full);
    else if (key == "dt") s.dt = to_double(val, full);
    else throw std::invalid_argument("unknown key: " + full);
  } else if (sec == "solver") {
    if (key == "tol_picard") s.tol_picard = to_double(val, full);
    else if (key == "max_picard") s.max_picard = static_cast<int>(to_int(val, full));
    else if (key == "tol_root") s.tol_root = to_double(val, full);
    else if (key == "max_root") s.max_root = static_cast<int>(to_int(val, full));
    else if (key == "kappa") s.kappa = to_double(val, full);
    else if (key == "route") s.route = val;
    else throw std::invalid_argument("unknown key: " + full);
  } else if (sec == "lambda") {
    if (key == "schedule") s.lambdas = to_list(val, full);
    else throw std::invalid_argument("unknown key: " + full);
  } else if (sec == "mc") {
    if (key == "samples") s.samples = to_size(val, full);
    else if (key == "seed") s.seed = to_u64(val, full);
    else if (key == "gauss_draws") s.gauss_draws = to_size(val, full);
    else throw std::invalid_argument("unknown key: " + full);
  } else if (sec == "verify") {
    if (key == "apriori_band") s.apriori_band = to_double(val, full);
    else if (key == "cauchy_slope_min") s.cauchy_slope_min = to_double(val, full);
    else if (key == "cauchy_ci_floor") s.cauchy_ci_floor = to_double(val, full);
    else if (key == "bj_thetas") s.bj_thetas = to_list(val, full);
    else if (key == "bj_amps") s.bj_amps = to_list(val, full);
    else if (key == "bj_qs") s.bj_qs = to_list(val, full);
    else if (key == "bj_spearman_max") s.bj_spearman_max = to_double(val, full);
    else if (key == "bj_homog_tol") s.bj_homog_tol = to_double(val, full);
    else if (key == "continuity_scales") s.continuity_scales = to_list(val, full);
    else if (key == "continuity_lambda") s.continuity_lambda = to_double(val, full);
    else if (key == "continuity_band") s.continuity_band = to_double(val, full);
    else if (key == "gen_levels") s.gen_levels = to_size(val, full);
    else if (key == "gen_clip0") s.gen_clip0 = to_double(val, full);
    else if (key == "gen_cut0") s.gen_cut0 = to_size(val, full);
    else if (key == "gen_band") s.gen_band = to_double(val, full);
    else if (key == "oracle_refinements") s.oracle_refinements = to_size(val, full);
    else if (key == "oracle_samples") s.oracle_samples = to_size(val, full);
    else if (key == "oracle_lambda") s.oracle_lambda = to_double(val, full);
    else if (key == "oracle_gap_factor") s.oracle_gap_factor = to_double(val, full);
    else if (key == "oracle_ratio_lo") s.oracle_ratio_lo = to_double(val, full);
    else if (key == "oracle_ratio_hi") s.oracle_ratio_hi = to_double(val, full);
    else throw std::invalid_argument("unknown key: " + full);
  } else if (sec == "perturb") {
    if (key == "u0") s.perturb_u0 = to_pairs(val, full);
    else if (key == "b") s.perturb_b = to_pairs(val, full);
    else if (key == "mark_scale") s.perturb_mark_scale = to_double(val, full);
    else throw std::invalid_argument("unknown key: " + full);
  } else if (sec == "regime") {
    if (key == "declared") s.regime = val;
    else throw std::invalid_argument("unknown key: " + full);
  } else {
    throw std::invalid_argument("unknown section: [" + sec + "]");
  }
}

}  // namespace

Scenario parse_scenario_ini(const std::string& text) {
  Scenario s;
  std::istringstream in(text);
  std::string line, section;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find_first_of("#;");
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::invalid_argument("line " + std::to_string(lineno) +
                                    ": malformed section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("line " + std::to_string(lineno) +
                                  ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (section.empty())
      throw std::invalid_argument("line " + std::to_string(lineno) +
                                  ": key outside any [section]");
    set_key(s, section, key, val);
  }
  return s;
}

void apply_override(Scenario& s, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos)
    throw std::invalid_argument("override must be section.key=value: " +
                                assignment);
  const std::string lhs = trim(assignment.substr(0, eq));
  const std::string val = trim(assignment.substr(eq + 1));
  const auto dot = lhs.find('.');
  if (dot == std::string::npos)
    throw std::invalid_argument("override must be section.key=value: " +
                                assignment);
  set_key(s, lhs.substr(0, dot), lhs.substr(dot + 1), val);
}

std::vector<std::string> validate(const Scenario& s) {
  std::vector<std::string> bad;
  const auto err = [&](const std::string& m) { bad.push_back(m); };

  if (s.n_modes < 1) err("space.n_modes: must be >= 1");
  if (s.grid_factor < 2) err("space.grid_factor: must be >= 2");
  if (s.drift_name != "linear" && s.drift_name != "power" &&
      s.drift_name != "cubic" && s.drift_name != "linear_plus_cubic")
    err("drift.name: unknown drift '" + s.drift_name + "'");
  if (s.drift_c < 0.0) err("drift.c: must be >= 0");
  if (s.drift_p < 2.0) err("drift.p: must be >= 2");
  if (s.sigma < 0.0) err("wiener.sigma: must be >= 0");
  for (const auto& a : s.atoms) {
    if (a.mode < 1 || a.mode > s.n_modes)
      err("jumps.atoms: mode " + std::to_string(a.mode) + " out of range");
    if (a.weight < 0.0) err("jumps.atoms: weight must be >= 0");
  }
  for (const auto& [k, v] : s.u0)
    if (k < 1 || k > s.n_modes)
      err("initial.u0: mode " + std::to_string(k) + " out of range");
  if (!(s.T > 0.0)) err("time.T: must be > 0");
  if (!(s.dt > 0.0)) err("time.dt: must be > 0");
  if (s.dt > s.T && s.T > 0.0) err("time.dt: must be <= time.T");
  if (!(s.tol_picard > 0.0)) err("solver.tol_picard: must be > 0");
  if (s.max_picard < 1) err("solver.max_picard: must be >= 1");
  if (!(s.tol_root > 0.0)) err("solver.tol_root: must be > 0");
  if (s.max_root < 1) err("solver.max_root: must be >= 1");
  if (!(s.kappa > 0.0 && s.kappa < 1.0)) err("solver.kappa: must lie in (0,1)");
  if (s.route != "shifted" && s.route != "direct")
    err("solver.route: must be 'shifted' or 'direct'");
  if (s.lambdas.empty()) err("lambda.schedule: must not be empty");
  for (double l : s.lambdas)
    if (!(l > 0.0)) err("lambda.schedule: entries must be > 0");
  for (std::size_t i = 0; i + 1 < s.lambdas.size(); ++i)
    if (!(s.lambdas[i + 1] < s.lambdas[i])) {
      err("lambda.schedule: must strictly decrease");
      break;
    }
  if (!s.lambdas.empty() && s.dt > 0.0) {
    const double window = s.kappa * s.lambdas.back() / 2.0;
    if (window < s.dt) {
      char buf[192];
      std::snprintf(buf, sizeof buf,
                    "lambda.schedule: smallest value %g gives contraction "
                    "window %g below time.dt %g; raise lambda or refine dt",
                    s.lambdas.back(), window, s.dt);
      err(buf);
    }
  }
  if (s.samples < 2) err("mc.samples: must be >= 2");
  if (s.gauss_draws < 2) err("mc.gauss_draws: must be >= 2");
  if (!(s.apriori_band > 1.0)) err("verify.apriori_band: must be > 1");
  if (s.bj_thetas.empty()) err("verify.bj_thetas: must not be empty");
  for (double t : s.bj_thetas)
    if (!(t > 0.0)) err("verify.bj_thetas: entries must be > 0");
  if (s.bj_amps.empty()) err("verify.bj_amps: must not be empty");
  for (double a : s.bj_amps)
    if (!(a > 0.0)) err("verify.bj_amps: entries must be > 0");
  if (s.bj_qs.empty()) err("verify.bj_qs: must not be empty");
  for (double q : s.bj_qs)
    if (!(q >= 2.0)) err("verify.bj_qs: entries must be >= 2");
  if (!(s.bj_spearman_max >= -1.0 && s.bj_spearman_max <= 1.0))
    err("verify.bj_spearman_max: must lie in [-1,1]");
  if (!(s.bj_homog_tol > 0.0)) err("verify.bj_homog_tol: must be > 0");
  if (s.continuity_scales.empty()) err("verify.continuity_scales: must not be empty");
  for (double sc : s.continuity_scales)
    if (!(sc > 0.0)) err("verify.continuity_scales: entries must be > 0");
  if (!(s.continuity_lambda > 0.0)) err("verify.continuity_lambda: must be > 0");
  else if (s.dt > 0.0 && s.kappa * s.continuity_lambda / 2.0 < s.dt)
    err("verify.continuity_lambda: contraction window below time.dt");
  if (!(s.continuity_band > 1.0)) err("verify.continuity_band: must be > 1");
  if (s.gen_levels < 2) err("verify.gen_levels: must be >= 2");
  if (!(s.gen_clip0 > 0.0)) err("verify.gen_clip0: must be > 0");
  if (s.gen_cut0 < 1) err("verify.gen_cut0: must be >= 1");
  if (!(s.gen_band > 1.0)) err("verify.gen_band: must be > 1");
  if (s.oracle_refinements < 1) err("verify.oracle_refinements: must be >= 1");
  if (s.oracle_samples < 2) err("verify.oracle_samples: must be >= 2");
  if (!(s.oracle_lambda > 0.0)) err("verify.oracle_lambda: must be > 0");
  else if (s.dt > 0.0 && s.kappa * s.oracle_lambda / 2.0 < s.dt)
    err("verify.oracle_lambda: contraction window below time.dt");
  if (!(s.oracle_gap_factor > 0.0)) err("verify.oracle_gap_factor: must be > 0");
  if (!(s.oracle_ratio_lo > 0.0 && s.oracle_ratio_hi > s.oracle_ratio_lo))
    err("verify.oracle_ratio_lo/hi: need 0 < lo < hi");
  for (const auto& [k, v] : s.perturb_u0)
    if (k < 1 || k > s.n_modes)
      err("perturb.u0: mode " + std::to_string(k) + " out of range");
  for (const auto& [k, v] : s.perturb_b)
    if (k < 1 || k > s.n_modes)
      err("perturb.b: mode " + std::to_string(k) + " out of range");
  if (s.regime != "strong" && s.regime != "l2")
    err("regime.declared: must be 'strong' or 'l2'");
  return bad;
}

std::string serialize_ini(const Scenario& s) {
  std::ostringstream o;
  o << "[space]\n";
  o << "grid_factor = " << s.grid_factor << "\n";
  o << "n_modes = " << s.n_modes << "\n";
  o << "\n[drift]\n";
  o << "c = " << g17(s.drift_c) << "\n";
  o << "name = " << s.drift_name << "\n";
  o << "p = " << g17(s.drift_p) << "\n";
  o << "\n[wiener]\n";
  o << "beta = " << g17(s.beta) << "\n";
  o << "sigma = " << g17(s.sigma) << "\n";
  o << "\n[jumps]\n";
  o << "atoms = " << join_atoms(s.atoms) << "\n";
  o << "\n[initial]\n";
  o << "u0 = " << join_pairs(s.u0) << "\n";
  o << "\n[time]\n";
  o << "T = " << g17(s.T) << "\n";
  o << "dt = " << g17(s.dt) << "\n";
  o << "\n[solver]\n";
  o << "kappa = " << g17(s.kappa) << "\n";
  o << "max_picard = " << s.max_picard << "\n";
  o << "max_root = " << s.max_root << "\n";
  o << "route = " << s.route << "\n";
  o << "tol_picard = " << g17(s.tol_picard) << "\n";
  o << "tol_root = " << g17(s.tol_root) << "\n";
  o << "\n[lambda]\n";
  o << "schedule = " << join(s.lambdas) << "\n";
  o << "\n[mc]\n";
  o << "gauss_draws = " << s.gauss_draws << "\n";
  o << "samples = " << s.samples << "\n";
  o << "seed = " << s.seed << "\n";
  o << "\n[verify]\n";
  o << "apriori_band = " << g17(s.apriori_band) << "\n";
  o << "bj_amps = " << join(s.bj_amps) << "\n";
  o << "bj_homog_tol = " << g17(s.bj_homog_tol) << "\n";
  o << "bj_qs = " << join(s.bj_qs) << "\n";
  o << "bj_spearman_max = " << g17(s.bj_spearman_max) << "\n";
  o << "bj_thetas = " << join(s.bj_thetas) << "\n";
  o << "cauchy_ci_floor = " << g17(s.cauchy_ci_floor) << "\n";
  o << "cauchy_slope_min = " << g17(s.cauchy_slope_min) << "\n";
  o << "continuity_band = " << g17(s.continuity_band) << "\n";
  o << "continuity_lambda = " << g17(s.continuity_lambda) << "\n";
  o << "continuity_scales = " << join(s.continuity_scales) << "\n";
  o << "gen_band = " << g17(s.gen_band) << "\n";
  o << "gen_clip0 = " << g17(s.gen_clip0) << "\n";
  o << "gen_cut0 = " << s.gen_cut0 << "\n";
  o << "gen_levels = " << s.gen_levels << "\n";
  o << "oracle_gap_factor = " << g17(s.oracle_gap_factor) << "\n";
  o << "oracle_lambda = " << g17(s.oracle_lambda) << "\n";
  o << "oracle_ratio_hi = " << g17(s.oracle_ratio_hi) << "\n";
  o << "oracle_ratio_lo = " << g17(s.oracle_ratio_lo) << "\n";
  o << "oracle_refinements = " << s.oracle_refinements << "\n";
  o << "oracle_samples = " << s.oracle_samples << "\n";
  o << "\n[perturb]\n";
  o << "b = " << join_pairs(s.perturb_b) << "\n";
  o << "mark_scale = " << g17(s.perturb_mark_scale) << "\n";
  o << "u0 = " << join_pairs(s.perturb_u0) << "\n";
  o << "\n[regime]\n";
  o << "declared = " << s.regime << "\n";
  return o.str();
}

Problem build_problem(const Scenario& s) {
  Problem p;
  p.basis = SpectralBasis::make(s.n_modes, s.grid_factor);
  p.f = drift_by_name(s.drift_name, s.drift_c, s.drift_p);
  p.wiener = WienerSpec::decay(s.n_modes, s.sigma, s.beta);
  for (const auto& a : s.atoms) {
    JumpSpec::Atom atom;
    atom.weight = a.weight;
    const std::pair<std::size_t, double> one[] = {{a.mode, a.amp}};
    atom.mark = Field::from_modes(p.basis, one);
    p.jumps.atoms.push_back(std::move(atom));
  }
  p.u0 = Field::from_modes(p.basis, s.u0);
  p.T = s.T;
  p.dt = s.dt;
  return p;
}

PicardOptions build_picard_options(const Scenario& s) {
  PicardOptions o;
  o.tol = s.tol_picard;
  o.max_iter = s.max_picard;
  o.kappa = s.kappa;
  o.root.tol = s.tol_root;
  o.root.max_iter = s.max_root;
  o.route = s.route == "direct" ? PicardRoute::direct : PicardRoute::shifted;
  return o;
}

Perturbation build_perturbation(const Scenario& s, const Problem& p) {
  Perturbation d;
  d.du0 = Field::from_modes(p.basis, s.perturb_u0);
  d.db.assign(p.basis->n_modes, 0.0);
  for (const auto& [k, v] : s.perturb_b) d.db[k - 1] = v;
  d.mark_scale = s.perturb_mark_scale;
  return d;
}

std::vector<ApproxLevel> build_levels(const Scenario& s) {
  std::vector<ApproxLevel> ls;
  double clip = s.gen_clip0;
  std::size_t cut = s.gen_cut0;
  for (std::size_t l = 0; l < s.gen_levels; ++l) {
    ApproxLevel lvl;
    lvl.clip_u0 = clip;
    lvl.clip_mark = clip;
    lvl.mode_cut = std::min(cut, s.n_modes);
    ls.push_back(lvl);
    clip *= 2.0;
    cut *= 2;
  }
  return ls;
}

RegimeEcho regime_echo(const Scenario& s, const Problem& p) {
  RegimeEcho e;
  e.declared = s.regime;
  e.p = p.f.growth_p;
  e.p_star = conjugate_growth(e.p);
  e.u0_norm_p = lp_norm(p.u0, e.p);
  e.B_norm = norm_B_gamma(p.wiener, e.p, e.p, *p.basis, p.T, s.gauss_draws,
                          s.seed);
  e.G_norm_pstar = norm_G_Lmq(p.jumps, e.p_star, p.T);
  return e;
}

}  // namespace spde
