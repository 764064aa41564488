// Copyright 2026 The ecdn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Command-line front end. run() parses arguments, dispatches to the library
// and writes one JSON document (single results) or CSV table (sweeps) to
// `out`. Exit status: 0 success, 2 invalid input, 3 infeasible problem.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ecdn/bounds.hpp"
#include "ecdn/ecd_norm.hpp"
#include "ecdn/experiments.hpp"
#include "ecdn/info.hpp"
#include "ecdn/json_io.hpp"
#include "ecdn/parallel.hpp"
#include "ecdn/zoo.hpp"

namespace ecdn::cli {

using Doc = nlohmann::ordered_json;

struct Config {
  std::string command;
  std::string kind;  // positional selector of bound / zoo / experiment
  std::string phi, psi, ham, ham_out, ensemble, state, table;
  std::string fhat = "osc:1:1";
  double energy = std::numeric_limits<double>::quiet_NaN();
  double eps = std::numeric_limits<double>::quiet_NaN();
  double t = std::numeric_limits<double>::quiet_NaN();
  double k = 1.0;
  double omega = 1.0;
  double eta = 0.7;
  double eta2 = 0.69;
  double theta = 0.5;
  double p = 1.0;
  std::size_t n = 1;
  std::size_t levels = 0;
  std::size_t restarts = 32;
  std::size_t rdim = 0;
  std::size_t threads = 0;
  std::size_t ensemble_size = 0;
  std::size_t sweep = 0;
  std::uint64_t seed = 0;
  bool optimize = false;
  bool log_shift = false;
  std::vector<std::size_t> dims;
  std::vector<std::size_t> bipartite;
  std::vector<double> energies;
  std::vector<double> thetas;
};

inline std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline Doc jnum(double x) {
  if (std::isfinite(x)) return x;
  return num(x);
}

inline std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + num(v[i]);
  return s;
}

inline std::string join(const std::vector<std::size_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

class Output {
 public:
  Output(const Config& c, std::ostream& out) : c_(c), out_(out) {}

  void param(const std::string& key, double v) {
    params_[key] = jnum(v);
    header_.push_back(key + "=" + num(v));
  }
  void param(const std::string& key, std::size_t v) {
    params_[key] = v;
    header_.push_back(key + "=" + std::to_string(v));
  }
  void param(const std::string& key, const std::string& v) {
    params_[key] = v;
    header_.push_back(key + "=" + v);
  }

  void json(Doc result) const {
    Doc d;
    d["command"] = c_.kind.empty() ? c_.command : c_.command + " " + c_.kind;
    d["seed"] = c_.seed;
    d["params"] = params_;
    d["result"] = std::move(result);
    out_ << d.dump(2) << "\n";
  }

  /// Header keys next to the fields of `body`, so the document stays a
  /// valid channel or Hamiltonian file.
  void json_flat(const Doc& body) const {
    Doc d;
    d["command"] = c_.command + " " + c_.kind;
    d["seed"] = c_.seed;
    d["params"] = params_;
    for (const auto& [key, value] : body.items()) d[key] = value;
    out_ << d.dump(2) << "\n";
  }

  void csv(const std::vector<std::string>& columns, const std::vector<std::vector<std::string>>& rows) const {
    out_ << "# command: " << (c_.kind.empty() ? c_.command : c_.command + " " + c_.kind) << "\n";
    out_ << "# seed: " << c_.seed << "\n";
    out_ << "# params:";
    for (const auto& h : header_) out_ << " " << h;
    out_ << "\n";
    for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
    out_ << "\n";
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) out_ << (i ? "," : "") << r[i];
      out_ << "\n";
    }
  }

 private:
  const Config& c_;
  std::ostream& out_;
  Doc params_ = Doc::object();
  std::vector<std::string> header_;
};

inline void require_set(double v, const char* flag) {
  if (std::isnan(v)) throw ValidationError(std::string("missing required flag ") + flag);
}

inline EstimatorOptions estimator(const Config& c) {
  EstimatorOptions o;
  o.restarts = c.restarts;
  o.seed = c.seed;
  o.threads = c.threads == 0 ? default_thread_count() : c.threads;
  return o;
}

inline Hamiltonian hamiltonian_or_oscillator(const std::string& path, std::size_t dim, double omega) {
  if (!path.empty()) {
    Hamiltonian h = io::hamiltonian_from_json(io::read_file(path));
    if (h.dim() != dim) {
      throw ValidationError("Hamiltonian " + path + " has dimension " + std::to_string(h.dim()) + ", expected " +
                            std::to_string(dim));
    }
    return h;
  }
  return TruncatedOscillator(dim, omega).hamiltonian();
}

inline HermitianPreservingMap load_map(const Config& c) {
  if (c.phi.empty()) throw ValidationError("missing required flag --phi");
  const Channel phi = io::channel_from_json(io::read_file(c.phi));
  if (c.psi.empty()) return HermitianPreservingMap::from_channel(phi);
  return HermitianPreservingMap::difference(phi, io::channel_from_json(io::read_file(c.psi)));
}

/// osc:l:w (l identical modes) or osc:l:w1:...:wl, shifted:<hamiltonian.json>,
/// table:<{"energies": [...], "values": [...]}>.
inline Fhat parse_fhat(const std::string& spec) {
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string tok; std::getline(ss, tok, ':');) parts.push_back(tok);
  if (parts.empty()) throw ValidationError("--fhat: empty selector");
  if (parts[0] == "osc") {
    if (parts.size() < 3) throw ValidationError("--fhat osc needs osc:<modes>:<omega>[:<omega>...]");
    std::size_t modes = 0;
    std::vector<double> w;
    try {
      modes = std::stoul(parts[1]);
      for (std::size_t i = 2; i < parts.size(); ++i) w.push_back(std::stod(parts[i]));
    } catch (const std::exception&) {
      throw ValidationError("--fhat: cannot parse numbers in " + spec);
    }
    if (modes == 0) throw ValidationError("--fhat: at least one mode required");
    if (w.size() == 1) return FhatOscillator::uniform(modes, w.front());
    if (w.size() != modes) throw ValidationError("--fhat: give one frequency or one per mode");
    return FhatOscillator(std::move(w));
  }
  const std::string rest = spec.substr(spec.find(':') == std::string::npos ? spec.size() : spec.find(':') + 1);
  if (parts[0] == "shifted") return ShiftedFhat{io::hamiltonian_from_json(io::read_file(rest))};
  if (parts[0] == "table") {
    const auto j = io::read_file(rest);
    if (!j.contains("energies") || !j.contains("values")) {
      throw ValidationError("--fhat table file needs \"energies\" and \"values\"");
    }
    return FhatTable(j["energies"].get<std::vector<double>>(), j["values"].get<std::vector<double>>());
  }
  throw ValidationError("--fhat: unknown selector " + parts[0] + " (use osc, shifted or table)");
}

inline BoundKind parse_kind(const std::string& s) {
  if (s == "chi") return BoundKind::Chi;
  if (s == "qmi") return BoundKind::Qmi;
  if (s == "cchi") return BoundKind::HolevoCap;
  if (s == "ccap") return BoundKind::ClassicalCap;
  if (s == "eacap-in") return BoundKind::EaCapInput;
  if (s == "eacap-out") return BoundKind::EaCapOutput;
  throw ValidationError("unknown bound " + s + " (chi, qmi, cchi, ccap, eacap-in, eacap-out)");
}

inline Doc bound_doc(const BoundValue& v) {
  Doc d;
  d["t"] = jnum(v.t_used);
  d["total"] = jnum(v.total);
  d["main"] = jnum(v.main_term);
  d["g"] = jnum(v.g_term);
  d["h2"] = jnum(v.h2_term);
  d["fhat_argument"] = jnum(v.fhat_argument);
  d["fhat_valid_limit"] = jnum(v.fhat_valid_limit);
  return d;
}

inline Doc estimate_doc(const EcdEstimate& e) {
  Doc d;
  d["lower"] = jnum(e.lower);
  d["upper"] = jnum(e.upper);
  d["witness_energy"] = jnum(e.witness_energy);
  return d;
}

// ---------------------------------------------------------------------------

inline void cmd_ecd(const Config& c, Output& o) {
  require_set(c.energy, "--E");
  const HermitianPreservingMap map = load_map(c);
  const EcdProblem p{map, hamiltonian_or_oscillator(c.ham, map.in_dim(), c.omega), c.energy, c.rdim};
  o.param("E", c.energy);
  o.param("omega", c.omega);
  o.param("restarts", c.restarts);
  o.param("rdim", p.reference_dim());
  const EcdEstimate est = ecd_norm_estimate(p, estimator(c));
  const UpperBounds ub = ecd_upper_bounds(p);
  Doc r = estimate_doc(est);
  r["certificates"] = {{"choi", jnum(ub.choi)},
                       {"channel_pair", jnum(ub.channel_pair)},
                       {"energy_choi", jnum(ub.energy_choi)},
                       {"truncation", jnum(ub.truncation)}};
  o.json(std::move(r));
}

inline void cmd_diamond(const Config& c, Output& o) {
  const HermitianPreservingMap map = load_map(c);
  o.param("restarts", c.restarts);
  o.param("rdim", c.rdim == 0 ? map.in_dim() : c.rdim);
  o.json(estimate_doc(diamond_norm_estimate(map, estimator(c), c.rdim)));
}

inline void cmd_qn(const Config& c, Output& o) {
  const HermitianPreservingMap map = load_map(c);
  const Hamiltonian h = hamiltonian_or_oscillator(c.ham, map.in_dim(), c.omega);
  o.param("n", c.n);
  o.param("omega", c.omega);
  o.param("restarts", c.restarts);
  Doc r;
  r["qn"] = jnum(q_n(map, h, c.n, estimator(c)));
  r["qn_upper"] = jnum(qn_upper_bound(map, h, c.n));
  if (!std::isnan(c.energy)) {
    o.param("E", c.energy);
    r["truncation_bound"] = jnum(truncation_norm_bound(map, h, c.energy, c.n, estimator(c)));
  }
  o.json(std::move(r));
}

inline void cmd_gibbs(const Config& c, Output& o) {
  require_set(c.energy, "--E");
  const std::size_t d = c.levels == 0 ? 2 : c.levels;
  const Hamiltonian h = c.ham.empty() ? TruncatedOscillator(d, c.omega).hamiltonian()
                                      : io::hamiltonian_from_json(io::read_file(c.ham));
  o.param("E", c.energy);
  if (c.ham.empty()) {
    o.param("d", d);
    o.param("omega", c.omega);
  }
  Doc r;
  r["max_entropy"] = jnum(max_entropy(h, c.energy));
  r["uniform_mean"] = jnum(h.uniform_mean());
  if (c.energy > h.ground_energy() && c.energy < h.max_energy()) {
    const GibbsSolution gs = gibbs_lambda(h, c.energy);
    r["lambda"] = jnum(gs.lambda);
    r["mean_energy"] = jnum(gs.mean_energy);
    r["gibbs_entropy"] = jnum(gs.entropy);
  }
  o.json(std::move(r));
}

inline void cmd_fbound(const Config& c, Output& o) {
  const Fhat f = parse_fhat(c.fhat);
  o.param("fhat", c.fhat);
  if (c.sweep > 0) {
    require_set(c.energy, "--E");
    o.param("E", c.energy);
    o.param("sweep", c.sweep);
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 1; i <= c.sweep; ++i) {
      const double e = c.energy * static_cast<double>(i) / static_cast<double>(c.sweep);
      rows.push_back({num(e), num(evaluate_fhat(f, e))});
    }
    o.csv({"E", "fhat"}, rows);
    return;
  }
  require_set(c.energy, "--E");
  o.param("E", c.energy);
  Doc r;
  r["fhat"] = jnum(evaluate_fhat(f, c.energy));
  r["valid_limit"] = jnum(fhat_valid_limit(f));
  o.json(std::move(r));
}

inline void cmd_chi(const Config& c, Output& o) {
  if (c.ensemble.empty()) throw ValidationError("missing required flag --ensemble");
  Ensemble mu = io::ensemble_from_json(io::read_file(c.ensemble));
  if (!c.phi.empty()) mu = mu.through(io::channel_from_json(io::read_file(c.phi)));
  Doc r;
  r["chi"] = jnum(holevo_chi(mu));
  r["chi_relative"] = jnum(holevo_chi_relative(mu));
  r["average_entropy"] = jnum(entropy(mu.average()));
  o.json(std::move(r));
}

inline void cmd_qmi(const Config& c, Output& o) {
  if (c.state.empty()) throw ValidationError("missing required flag --state");
  if (c.bipartite.size() != 2) throw ValidationError("--dims needs two factors, e.g. --dims 2,2");
  const DensityOperator rho(io::matrix_from_json(io::read_file(c.state), "state"));
  if (rho.dim() != c.bipartite[0] * c.bipartite[1]) throw ValidationError("--dims product differs from state dimension");
  o.param("dims", join(c.bipartite));
  Doc r;
  r["qmi"] = jnum(qmi(rho, {c.bipartite[0], c.bipartite[1]}));
  r["qmi_relative"] = jnum(qmi_relative(rho, {c.bipartite[0], c.bipartite[1]}));
  o.json(std::move(r));
}

inline void cmd_cap(const Config& c, Output& o) {
  require_set(c.energy, "--E");
  if (c.phi.empty()) throw ValidationError("missing required flag --phi");
  const Channel phi = io::channel_from_json(io::read_file(c.phi));
  const Hamiltonian h = hamiltonian_or_oscillator(c.ham, phi.in_dim(), c.omega);
  CapacityOptions opt;
  opt.ensemble_size = c.ensemble_size;
  opt.search = estimator(c);
  o.param("E", c.energy);
  o.param("omega", c.omega);
  o.param("restarts", c.restarts);
  o.param("ensemble_size", c.ensemble_size == 0 ? 2 * phi.in_dim() : c.ensemble_size);
  const CapacityEstimate est = holevo_capacity_estimate(phi, h, c.energy, opt);
  Doc r;
  r["cchi_lower"] = jnum(est.value);
  r["average_energy"] = jnum(est.average_energy);
  r["ensemble"] = io::ensemble_to_json(est.ensemble);
  o.json(std::move(r));
}

inline void cmd_gain(const Config& c, Output& o) {
  require_set(c.energy, "--E");
  if (c.phi.empty()) throw ValidationError("missing required flag --phi");
  const Channel phi = io::channel_from_json(io::read_file(c.phi));
  const Hamiltonian h_in = hamiltonian_or_oscillator(c.ham, phi.in_dim(), c.omega);
  const Hamiltonian h_out = hamiltonian_or_oscillator(c.ham_out, phi.out_dim(), c.omega);
  o.param("E", c.energy);
  o.param("omega", c.omega);
  Doc r;
  r["k"] = jnum(energy_gain(phi, h_in, h_out, c.energy));
  o.json(std::move(r));
}

inline BoundInputs bound_inputs(const Config& c, BoundKind kind, Output& o) {
  require_set(c.eps, "--eps");
  require_set(c.energy, "--E");
  BoundInputs in;
  in.epsilon = c.eps;
  const bool output_side_k =
      kind == BoundKind::HolevoCap || kind == BoundKind::ClassicalCap || kind == BoundKind::EaCapOutput;
  in.energy = output_side_k ? c.k * c.energy : c.energy;
  in.n = c.n;
  in.fhat = parse_fhat(c.fhat);
  in.log_shift = c.log_shift;
  o.param("eps", c.eps);
  o.param("E", c.energy);
  o.param("k", c.k);
  o.param("n", c.n);
  o.param("fhat", c.fhat);
  o.param("log_shift", std::string(c.log_shift ? "true" : "false"));
  return in;
}

inline void cmd_bound(const Config& c, Output& o, bool force_optimize) {
  const BoundKind kind = parse_kind(c.kind);
  BoundInputs in = bound_inputs(c, kind, o);
  if (c.sweep > 0) {
    o.param("sweep", c.sweep);
    const double lo = std::log(1e-9 / c.eps);
    const double hi = std::log(0.5 / c.eps);
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < c.sweep; ++i) {
      const double u = c.sweep == 1 ? hi : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(c.sweep - 1);
      in.t = std::min(std::exp(u), 0.5 / c.eps);
      const BoundValue v = evaluate_bound(kind, in);
      rows.push_back({num(v.t_used), num(v.total), num(v.main_term), num(v.g_term), num(v.h2_term)});
    }
    o.csv({"t", "total", "main", "g", "h2"}, rows);
    return;
  }
  BoundValue v;
  if (force_optimize || c.optimize) {
    o.param("optimize_t", std::string("true"));
    v = optimize_t(kind, in);
  } else {
    require_set(c.t, "--t (or --optimize-t)");
    o.param("t", c.t);
    in.t = c.t;
    v = evaluate_bound(kind, in);
  }
  o.json(bound_doc(v));
}

inline void cmd_zoo(const Config& c, Output& o) {
  const std::size_t d = c.levels == 0 ? 2 : c.levels;
  o.param("d", d);
  if (c.kind == "oscillator") {
    o.param("omega", c.omega);
    o.json_flat(io::hamiltonian_to_json(TruncatedOscillator(d, c.omega).hamiltonian()));
    return;
  }
  Channel ch = identity_channel(d);
  if (c.kind == "depolarize") {
    o.param("p", c.p);
    ch = depolarize_to(DensityOperator::basis(d, 0), c.p);
  } else if (c.kind == "phase") {
    o.param("theta", c.theta);
    ch = phase_rotation(d, c.theta);
  } else if (c.kind == "attenuator") {
    o.param("eta", c.eta);
    ch = attenuator(d, c.eta);
  } else if (c.kind != "identity") {
    throw ValidationError("unknown zoo entry " + c.kind + " (identity, depolarize, phase, attenuator, oscillator)");
  }
  o.json_flat(io::channel_to_json(ch));
}

inline void cmd_experiment(const Config& c, Output& o) {
  const EstimatorOptions opt = estimator(c);
  if (c.kind == "strong-convergence") {
    const std::size_t d = c.levels == 0 ? 16 : c.levels;
    o.param("d", d);
    o.param("restarts", c.restarts);
    std::vector<experiments::PhaseRow> rows;
    if (!c.energies.empty()) {
      o.param("theta", c.theta);
      o.param("energies", join(c.energies));
      rows = experiments::strong_convergence_energy(d, c.theta, c.energies, opt);
    } else {
      const double e = std::isnan(c.energy) ? 2.0 : c.energy;
      const auto thetas = c.thetas.empty() ? experiments::kThetaLadder : c.thetas;
      o.param("E", e);
      o.param("thetas", join(thetas));
      rows = experiments::strong_convergence(d, e, thetas, opt);
    }
    std::vector<std::vector<std::string>> out;
    for (const auto& r : rows) out.push_back({num(r.theta), num(r.energy), num(r.lower), num(r.upper)});
    o.csv({"theta", "E", "ecd_lower", "ecd_upper"}, out);
  } else if (c.kind == "attenuator-pair") {
    const double e = std::isnan(c.energy) ? 2.0 : c.energy;
    const auto dims = c.dims.empty() ? std::vector<std::size_t>{8, 16, 24} : c.dims;
    o.param("eta", c.eta);
    o.param("eta2", c.eta2);
    o.param("E", e);
    o.param("dims", join(dims));
    o.param("restarts", c.restarts);
    std::vector<std::vector<std::string>> out;
    for (const auto& r : experiments::attenuator_pair(c.eta, c.eta2, e, dims, opt)) {
      out.push_back({std::to_string(r.d), num(r.ecd_lower), num(r.ecd_upper), num(r.diamond_lower),
                     num(r.diamond_upper)});
    }
    o.csv({"d", "ecd_lower", "ecd_upper", "diamond_lower", "diamond_upper"}, out);
  } else if (c.kind == "tightness-cchi") {
    const std::size_t d = c.levels == 0 ? 12 : c.levels;
    const auto es = c.energies.empty() ? std::vector<double>{std::isnan(c.energy) ? 2.0 : c.energy} : c.energies;
    CapacityOptions copt;
    copt.ensemble_size = c.ensemble_size;
    copt.search = opt;
    o.param("d", d);
    o.param("energies", join(es));
    o.param("restarts", c.restarts);
    o.param("ensemble_size", c.ensemble_size == 0 ? 2 * d : c.ensemble_size);
    std::vector<std::vector<std::string>> out;
    for (const auto& r : experiments::tightness_cchi(d, es, copt)) {
      out.push_back({num(r.energy), num(r.cchi_identity), num(r.cchi_depolarizer), num(r.difference),
                     num(r.max_entropy), num(r.gain), num(r.bound_total), num(r.t_star)});
    }
    o.csv({"E", "cchi_identity", "cchi_depolarizer", "difference", "max_entropy", "k", "bound_eps1", "t_star"}, out);
  } else if (c.kind == "tightness-ea") {
    const std::size_t d = c.levels == 0 ? 12 : c.levels;
    const auto es = c.energies.empty() ? std::vector<double>{std::isnan(c.energy) ? 2.0 : c.energy} : c.energies;
    o.param("d", d);
    o.param("energies", join(es));
    std::vector<std::vector<std::string>> out;
    for (const auto& r : experiments::tightness_ea(d, es)) {
      out.push_back({num(r.energy), num(r.cea_identity), num(r.twice_max_entropy), num(r.cea_depolarizer),
                     num(r.bound_total), num(r.t_star)});
    }
    o.csv({"E", "cea_identity", "twice_max_entropy", "cea_depolarizer", "bound_eps1", "t_star"}, out);
  } else if (c.kind == "truncation-ladder") {
    const std::size_t d = c.levels == 0 ? 6 : c.levels;
    const double e = std::isnan(c.energy) ? 1.0 : c.energy;
    o.param("d", d);
    o.param("E", e);
    o.param("restarts", c.restarts);
    std::vector<std::vector<std::string>> out;
    for (const auto& r : experiments::truncation_ladder(d, e, c.seed, opt)) {
      out.push_back({std::to_string(r.n), num(r.level_energy), num(r.qn), num(r.bound), num(r.ecd_lower),
                     num(r.ecd_upper)});
    }
    o.csv({"n", "E_n", "qn", "truncation_bound", "ecd_lower", "ecd_upper"}, out);
  } else {
    throw ValidationError("unknown experiment " + c.kind +
                          " (strong-convergence, attenuator-pair, tightness-cchi, tightness-ea, truncation-ladder)");
  }
}

// ---------------------------------------------------------------------------

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Energy-constrained diamond norms and continuity bounds"};
  app.require_subcommand(1);

  auto seed_opts = [&](CLI::App* s) {
    s->add_option("--restarts", c.restarts, "Multi-start restarts")->capture_default_str();
    s->add_option("--seed", c.seed, "Base seed")->capture_default_str();
    s->add_option("--threads", c.threads, "Worker threads (0: ECDN_THREADS or hardware)");
  };
  auto map_opts = [&](CLI::App* s) {
    s->add_option("--phi", c.phi, "Channel JSON file");
    s->add_option("--psi", c.psi, "Second channel; the map is phi - psi");
    s->add_option("--ham", c.ham, "Input Hamiltonian JSON (default: truncated oscillator)");
    s->add_option("--omega", c.omega, "Oscillator frequency for the default Hamiltonian")->capture_default_str();
  };
  auto bound_opts = [&](CLI::App* s) {
    s->add_option("kind", c.kind, "chi | qmi | cchi | ccap | eacap-in | eacap-out")->required();
    s->add_option("--eps", c.eps, "Half ECD distance");
    s->add_option("--E", c.energy, "Energy");
    s->add_option("--k", c.k, "Energy amplification factor")->capture_default_str();
    s->add_option("--n", c.n, "Copies (qmi)")->capture_default_str();
    s->add_option("--fhat", c.fhat, "osc:<modes>:<omega>... | shifted:<file> | table:<file>")->capture_default_str();
    s->add_flag("--log-shift", c.log_shift, "Oscillator form F(E) - l ln(eps t)");
    s->add_option("--sweep", c.sweep, "Emit a CSV of this many log-spaced t values");
  };

  auto* ecd = app.add_subcommand("ecd-norm", "Bracket for the energy-constrained diamond norm");
  map_opts(ecd);
  seed_opts(ecd);
  ecd->add_option("--E", c.energy, "Energy budget");
  ecd->add_option("--rdim", c.rdim, "Reference dimension (0: input dimension)");

  auto* dia = app.add_subcommand("diamond", "Unconstrained diamond-norm bracket");
  map_opts(dia);
  seed_opts(dia);
  dia->add_option("--rdim", c.rdim, "Reference dimension (0: input dimension)");

  auto* qn = app.add_subcommand("qn", "Subspace seminorm q_n");
  map_opts(qn);
  seed_opts(qn);
  qn->add_option("--n", c.n, "Subspace size")->capture_default_str();
  qn->add_option("--E", c.energy, "Energy (adds the truncation bound)");

  auto* gibbs = app.add_subcommand("gibbs", "Gibbs state and maximal entropy at energy E");
  gibbs->add_option("--ham", c.ham, "Hamiltonian JSON (default: truncated oscillator)");
  gibbs->add_option("--d", c.levels, "Oscillator levels for the default Hamiltonian");
  gibbs->add_option("--omega", c.omega, "Oscillator frequency")->capture_default_str();
  gibbs->add_option("--E", c.energy, "Energy");

  auto* fb = app.add_subcommand("fbound", "Evaluate an entropy upper bound F");
  fb->add_option("--fhat", c.fhat, "osc:<modes>:<omega>... | shifted:<file> | table:<file>")->capture_default_str();
  fb->add_option("--E", c.energy, "Energy");
  fb->add_option("--sweep", c.sweep, "Emit a CSV on this many points in (0, E]");

  auto* chi = app.add_subcommand("chi", "Holevo quantity of an ensemble");
  chi->add_option("--ensemble", c.ensemble, "Ensemble JSON");
  chi->add_option("--phi", c.phi, "Apply this channel first");

  auto* qmi_cmd = app.add_subcommand("qmi", "Quantum mutual information of a bipartite state");
  qmi_cmd->add_option("--state", c.state, "Density matrix JSON");
  qmi_cmd->add_option("--dims", c.bipartite, "Factor dimensions a,b")->delimiter(',');

  auto* cap = app.add_subcommand("cap-est", "Lower estimate of the constrained Holevo capacity");
  map_opts(cap);
  seed_opts(cap);
  cap->add_option("--E", c.energy, "Energy budget");
  cap->add_option("--ensemble-size", c.ensemble_size, "Ensemble size (0: twice the input dimension)");

  auto* gain = app.add_subcommand("energy-gain", "Energy amplification factor k");
  gain->add_option("--phi", c.phi, "Channel JSON");
  gain->add_option("--ham", c.ham, "Input Hamiltonian JSON (default: truncated oscillator)");
  gain->add_option("--ham-out", c.ham_out, "Output Hamiltonian JSON (default: truncated oscillator)");
  gain->add_option("--omega", c.omega, "Oscillator frequency")->capture_default_str();
  gain->add_option("--E", c.energy, "Input energy");

  auto* bound = app.add_subcommand("bound", "Evaluate a continuity bound");
  bound_opts(bound);
  bound->add_option("--t", c.t, "Free parameter t in (0, 1/(2 eps)]");
  bound->add_flag("--optimize-t", c.optimize, "Minimize over t");

  auto* opt_t = app.add_subcommand("optimize-t", "Minimize a continuity bound over t");
  bound_opts(opt_t);

  auto* zoo = app.add_subcommand("zoo", "Emit a channel (or oscillator Hamiltonian) as JSON");
  zoo->add_option("kind", c.kind, "identity | depolarize | phase | attenuator | oscillator")->required();
  zoo->add_option("--d", c.levels, "Levels")->capture_default_str();
  zoo->add_option("--eta", c.eta, "Attenuator transmissivity")->capture_default_str();
  zoo->add_option("--theta", c.theta, "Phase angle")->capture_default_str();
  zoo->add_option("--p", c.p, "Depolarizing weight (output: ground state)")->capture_default_str();
  zoo->add_option("--omega", c.omega, "Oscillator frequency")->capture_default_str();

  auto* exp = app.add_subcommand("experiment", "Run a named experiment (CSV output)");
  exp->add_option("kind", c.kind,
                  "strong-convergence | attenuator-pair | tightness-cchi | tightness-ea | truncation-ladder")
      ->required();
  seed_opts(exp);
  exp->add_option("--d", c.levels, "Levels");
  exp->add_option("--E", c.energy, "Energy");
  exp->add_option("--energies", c.energies, "Energy ladder")->delimiter(',');
  exp->add_option("--thetas", c.thetas, "Phase ladder")->delimiter(',');
  exp->add_option("--theta", c.theta, "Fixed phase for an energy ladder")->capture_default_str();
  exp->add_option("--eta", c.eta, "First transmissivity")->capture_default_str();
  exp->add_option("--eta2", c.eta2, "Second transmissivity")->capture_default_str();
  exp->add_option("--dims", c.dims, "Truncation levels")->delimiter(',');
  exp->add_option("--ensemble-size", c.ensemble_size, "Ensemble size for capacity estimates");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  c.command = app.get_subcommands().front()->get_name();
  Output o(c, out);
  try {
    if (c.command == "ecd-norm") cmd_ecd(c, o);
    else if (c.command == "diamond") cmd_diamond(c, o);
    else if (c.command == "qn") cmd_qn(c, o);
    else if (c.command == "gibbs") cmd_gibbs(c, o);
    else if (c.command == "fbound") cmd_fbound(c, o);
    else if (c.command == "chi") cmd_chi(c, o);
    else if (c.command == "qmi") cmd_qmi(c, o);
    else if (c.command == "cap-est") cmd_cap(c, o);
    else if (c.command == "energy-gain") cmd_gain(c, o);
    else if (c.command == "bound") cmd_bound(c, o, false);
    else if (c.command == "optimize-t") cmd_bound(c, o, true);
    else if (c.command == "zoo") cmd_zoo(c, o);
    else if (c.command == "experiment") cmd_experiment(c, o);
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << "\n";
    return 3;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    err << "invalid input: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace ecdn::cli
