// Copyright 2026 The qdescent Authors
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

#include "qdescent/scenario.hpp"

#include <deque>
#include <fstream>
#include <sstream>
#include <type_traits>

#include "qdescent/minimize.hpp"
#include "qdescent/tracker.hpp"

namespace qdescent {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

Vec parse_vec(const std::string& s) {
  Vec out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(trim(item)));
  return out;
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  for (double v : parse_vec(s)) out.push_back(static_cast<int>(v));
  return out;
}

template <typename T>
void maybe(const std::map<std::string, std::string>& kv, const std::string& key,
           T& target) {
  auto it = kv.find(key);
  if (it == kv.end()) return;
  if constexpr (std::is_same_v<T, std::string>) {
    target = it->second;
  } else if constexpr (std::is_same_v<T, bool>) {
    target = it->second == "true" || it->second == "1";
  } else if constexpr (std::is_same_v<T, Vec>) {
    target = parse_vec(it->second);
  } else if constexpr (std::is_same_v<T, std::vector<int>>) {
    target = parse_ints(it->second);
  } else if constexpr (std::is_integral_v<T>) {
    target = static_cast<T>(std::stoll(it->second));
  } else {
    target = static_cast<T>(std::stod(it->second));
  }
}

}  // namespace

std::map<std::string, std::string> parse_flat_config(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::stringstream ss(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::invalid_argument("line " + std::to_string(lineno) +
                                    ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("line " + std::to_string(lineno) +
                                  ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    kv[section.empty() ? key : section + "." + key] = val;
  }
  return kv;
}

std::map<std::string, std::string> load_flat_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open config: " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_flat_config(ss.str());
}

ScenarioConfig ScenarioConfig::from_map(
    const std::map<std::string, std::string>& kv) {
  ScenarioConfig c;
  maybe(kv, "scenario.id", c.id);
  if (c.id == "two_timescale") c.id = "fig5";

  if (c.id == "link") {
    c.alpha = 0.1;
    c.rates = {0.5};
    c.tau_bar = 5;
    c.steps = 1000;
  } else if (c.id == "unsync_queues") {
    c.alpha = 0.05;
    c.beta = 0.1;
    c.rates = {0.5, 1.5};
    c.n = 2;
    c.d = 8;
    c.tau_bar = 0;
    c.steps = 5000;
  } else if (c.id == "fig1") {
    c.alpha = 1.0;
    c.beta = 0.1;
    c.rates = {0.5};
    c.steps = 1000;
  } else if (c.id == "fig2" || c.id == "fig5") {
    c.steps = 1000;
  }

  maybe(kv, "scenario.steps", c.steps);
  maybe(kv, "scenario.seed", c.seed);
  maybe(kv, "scenario.rng", c.rng);
  maybe(kv, "preset.alpha", c.alpha);
  maybe(kv, "preset.beta", c.beta);
  maybe(kv, "preset.gamma", c.gamma);
  maybe(kv, "preset.gamma1", c.gamma1);
  maybe(kv, "preset.eps_prime", c.eps_prime);
  maybe(kv, "preset.sbar", c.sbar);
  maybe(kv, "preset.tau_bar", c.tau_bar);
  maybe(kv, "preset.delays", c.delays);
  maybe(kv, "preset.rates", c.rates);
  maybe(kv, "preset.n", c.n);
  maybe(kv, "preset.d", c.d);
  maybe(kv, "preset.hold", c.hold);
  maybe(kv, "output.dir", c.out_dir);
  maybe(kv, "output.format", c.format);
  maybe(kv, "output.strict", c.strict);
  return c;
}

namespace {

// Curvature and geometry constants for the parallel-queue scenario, where the
// objective has known bounded curvature.
struct UnsyncConstants {
  double mu_f = 2.0;
  double diam = 0.0;
  double gbar = 0.0;
  int covering = 0;

  explicit UnsyncConstants(const ScenarioConfig& c) {
    covering = c.n;
    diam = static_cast<double>(c.d) * std::sqrt(static_cast<double>(c.n));
    for (int i = 0; i < c.n; ++i) {
      double b = c.rates[static_cast<std::size_t>(i)];
      gbar = std::max(gbar, std::max(b, static_cast<double>(c.d) - b));
    }
  }
};

double unsync_default_eps(const ScenarioConfig& c) {
  UnsyncConstants u(c);
  // Smallest tolerance for which the averaging-step cap admits beta, with 5%
  // headroom.
  return 1.05 * c.beta * u.covering * u.mu_f * u.diam * u.diam /
         ((1.0 - c.gamma) * c.gamma);
}

}  // namespace

void ScenarioConfig::validate() const {
  if (rng != Rng::kAlgorithm)
    throw std::invalid_argument("unknown rng algorithm: " + rng);
  if (alpha <= 0.0) throw std::invalid_argument("alpha must be positive");
  if (beta <= 0.0 || beta >= 1.0)
    throw std::invalid_argument("beta must lie in (0,1)");
  if (gamma <= 0.0 || gamma >= 1.0)
    throw std::invalid_argument("gamma must lie in (0,1)");
  if (gamma1 <= 0.0 || gamma1 >= gamma / 2.0)
    throw std::invalid_argument("gamma1 must lie in (0, gamma/2)");
  if (sbar < 1.0) throw std::invalid_argument("sbar must be at least 1");
  if (tau_bar < 0) throw std::invalid_argument("tau_bar must be non-negative");
  if (steps == 0) throw std::invalid_argument("steps must be positive");
  if (rates.empty() && (id == "link" || id == "unsync_queues" || id == "fig1"))
    throw std::invalid_argument("empty arrival rates");
  parse_emit_format(format);
  if (id != "link" && id != "unsync_queues" && id != "fig1" && id != "fig2" &&
      id != "fig5")
    throw std::invalid_argument("unknown scenario id: " + id);

  if (id == "unsync_queues") {
    if (static_cast<int>(rates.size()) != n)
      throw std::invalid_argument("need one arrival rate per queue");
    UnsyncConstants u(*this);
    const double eps = eps_prime > 0.0 ? eps_prime : unsync_default_eps(*this);
    const double beta_cap =
        (1.0 - gamma) * gamma *
        std::min(eps / (u.covering * u.mu_f * u.diam * u.diam), 1.0);
    if (beta > beta_cap)
      throw std::invalid_argument(
          "beta <= (1-gamma)*gamma*min{eps_prime/(N*mu_F*diam^2), 1} is "
          "violated: beta=" +
          std::to_string(beta) + ", cap=" + std::to_string(beta_cap));
    const double alpha_cap = gamma1 * gamma * beta * eps / (2.0 * u.gbar);
    if (alpha > alpha_cap)
      throw std::invalid_argument(
          "alpha <= gamma1*gamma*beta*eps_prime/(2*gbar) is violated: alpha=" +
          std::to_string(alpha) + ", cap=" + std::to_string(alpha_cap));
  }
  if (id == "link" && !delays.empty()) {
    if (delays.size() != 2)
      throw std::invalid_argument("link scenario takes two delays");
    for (int tau : delays)
      if (tau < 0 || tau > tau_bar)
        throw std::invalid_argument("delay outside [0, tau_bar]");
  }
}

double ScenarioResult::metric(const std::string& name) const {
  for (const auto& [k, v] : metrics)
    if (k == name) return v;
  throw std::out_of_range("no metric named " + name);
}

namespace {

void push_row(Trajectory& traj, const Vec& z, const Vec& x, const Vec& lambda,
              const Vec& mu, double alpha, double f_avg, double g_max) {
  traj.z.push_back(z);
  traj.x.push_back(x);
  traj.lambda.push_back(lambda);
  traj.mu.push_back(mu);
  traj.q_scaled.push_back(scale(mu, 1.0 / alpha));
  traj.f_avg.push_back(f_avg);
  traj.g_violation_max.push_back(g_max);
}

double link_objective(const Vec& z) {
  const double pi = 3.14159265358979323846;
  return z[0] + std::max(std::exp(z[1]), pi * z[1]);
}

Vec link_constraints(const Vec& z, double b) {
  return {b - z[0], z[0] - z[1]};
}

}  // namespace

ScenarioResult run_link_scenario(const ScenarioConfig& config) {
  config.validate();
  const double alpha = config.alpha;
  const double b = config.rates[0];
  const double pi = 3.14159265358979323846;
  const std::size_t K = config.steps;
  const auto depth = static_cast<std::size_t>(config.tau_bar) + 1;

  Rng rng(config.seed);
  ArrivalProcess arrivals(ArrivalKind::kDither, {b});

  Vec Q = {0.0, 0.0};
  std::deque<Vec> hist = {Q};
  Vec lambda = {0.0, 0.0};
  Vec pz = {0.0, 0.0}, px = {0.0, 0.0};
  Vec z_sum = {0.0, 0.0}, z_tail = {0.0, 0.0};
  Vec q_tail = {0.0, 0.0}, l_tail = {0.0, 0.0};
  const std::size_t burn = burn_in(K);

  ScenarioResult res;
  res.trajectory.alpha = alpha;

  for (std::size_t k = 1; k <= K; ++k) {
    const int tau1 = config.delays.empty()
                         ? rng.uniform_int(0, config.tau_bar)
                         : config.delays[0];
    const int tau2 = config.delays.empty()
                         ? rng.uniform_int(0, config.tau_bar)
                         : config.delays[1];
    auto stale = [&](int tau, std::size_t coord) {
      auto idx = std::min(static_cast<std::size_t>(tau), hist.size() - 1);
      return hist[idx][coord];
    };
    // mu^u = alpha [Q1_k, Q2_{k-tau1}], mu^v = alpha [Q1_{k-tau2}, Q2_k]
    const double mu_u2 = alpha * stale(tau1, 1);
    const double mu_u1 = alpha * Q[0];
    const double mu_v2 = alpha * Q[1];

    // Node 1: minimise w + (mu2 - mu1) w over [0,1].
    const double coeff = 1.0 + mu_u2 - mu_u1;
    Vec z(2);
    z[0] = coeff < 0.0 ? 1.0 : 0.0;
    // Node 2: minimise max{exp(w), pi w} - mu2 w over [0,1].
    z[1] = minimize_scalar_convex(
        [&](double w) { return std::max(std::exp(w), pi * w) - mu_v2 * w; },
        0.0, 1.0);

    // Discrete action: follow the running sums to the nearest integer.
    Vec x(2);
    for (std::size_t i = 0; i < 2; ++i) {
      const double t = pz[i] + z[i] - px[i];
      x[i] = t > 0.5 ? 1.0 : 0.0;
      pz[i] += z[i];
      px[i] += x[i];
    }

    const double bk = arrivals.at(k)[0];
    Vec Q_next = {std::max(0.0, Q[0] - x[0] + bk),
                  std::max(0.0, Q[1] - x[1] + x[0])};
    lambda = add(lambda, scale(link_constraints(z, b), alpha));
    for (double& l : lambda) l = std::max(0.0, l);

    Q = Q_next;
    hist.push_front(Q);
    while (hist.size() > depth) hist.pop_back();

    for (std::size_t i = 0; i < 2; ++i) {
      z_sum[i] += z[i];
      if (k > burn) {
        z_tail[i] += z[i];
        q_tail[i] += Q[i];
        l_tail[i] += lambda[i];
      }
    }
    Vec zd = scale(z_sum, 1.0 / static_cast<double>(k));
    Vec gz = link_constraints(zd, b);
    push_row(res.trajectory, z, x, lambda, scale(Q, alpha), alpha,
             link_objective(zd), *std::max_element(gz.begin(), gz.end()));
  }

  const auto tail_n = static_cast<double>(K - burn);
  Vec zt = scale(z_tail, 1.0 / tail_n);
  Vec gt = link_constraints(zt, b);
  res.metrics = {
      {"f_diamond", res.trajectory.f_avg.back()},
      {"f_diamond_burnin", link_objective(zt)},
      {"g_violation_burnin", *std::max_element(gt.begin(), gt.end())},
      {"alpha_q1_tail", alpha * q_tail[0] / tail_n},
      {"alpha_q2_tail", alpha * q_tail[1] / tail_n},
      {"lambda1_tail", l_tail[0] / tail_n},
      {"lambda2_tail", l_tail[1] / tail_n},
      {"arrival_prefix_dev", arrivals.max_prefix_deviation()},
  };
  return res;
}

ScenarioResult run_unsync_queues_scenario(const ScenarioConfig& config) {
  config.validate();
  const auto n = static_cast<std::size_t>(config.n);
  const double d = config.d;
  const double alpha = config.alpha;
  const double beta = config.beta;
  const std::size_t K = config.steps;
  const Vec& b = config.rates;

  ArrivalProcess arrivals(ArrivalKind::kDither, b, config.seed);

  Vec z(n, 0.0), mu(n, 0.0), lambda(n, 0.0);
  Vec pz(n, 0.0), px(n, 0.0);
  Vec z_sum(n, 0.0), z_tail(n, 0.0), mu_tail(n, 0.0), l_tail(n, 0.0);
  const std::size_t burn = burn_in(K);

  ScenarioResult res;
  res.trajectory.alpha = alpha;

  for (std::size_t k = 1; k <= K; ++k) {
    const std::size_t u = (k - 1) % n;
    // Direct coordinate step on L(z, mu): pick the level whose averaged
    // iterate minimises w^2 - mu_u w, the block Lagrangian for constraint
    // b_u - z_u <= 0.
    double best_v = std::numeric_limits<double>::infinity();
    double best_y = 0.0;
    for (int level = 0; level <= config.d; ++level) {
      const double w = z[u] + beta * (level - z[u]);
      const double v = w * w - mu[u] * w;
      if (v < best_v) {
        best_v = v;
        best_y = level;
      }
    }
    z[u] += beta * (best_y - z[u]);

    Vec x(n);
    for (std::size_t i = 0; i < n; ++i) {
      pz[i] += z[i];
      // Nearest level in {0,...,d}; half-way ties to the lower level.
      x[i] = std::min(d, std::max(0.0, std::ceil(pz[i] - px[i] - 0.5)));
      px[i] += x[i];
    }

    Vec bk = arrivals.at(k);
    for (std::size_t i = 0; i < n; ++i) {
      mu[i] = std::max(0.0, mu[i] + alpha * (bk[i] - x[i]));
      lambda[i] = std::max(0.0, lambda[i] + alpha * (b[i] - z[i]));
      z_sum[i] += z[i];
      if (k > burn) {
        z_tail[i] += z[i];
        mu_tail[i] += mu[i];
        l_tail[i] += lambda[i];
      }
    }
    Vec zd = scale(z_sum, 1.0 / static_cast<double>(k));
    double f_avg = dot(zd, zd);
    double g_max = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) g_max = std::max(g_max, b[i] - zd[i]);
    push_row(res.trajectory, z, x, lambda, mu, alpha, f_avg, g_max);
  }

  const auto tail_n = static_cast<double>(K - burn);
  Vec zt = scale(z_tail, 1.0 / tail_n);
  double g_max = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) g_max = std::max(g_max, b[i] - zt[i]);
  res.metrics = {
      {"f_diamond", res.trajectory.f_avg.back()},
      {"f_diamond_burnin", dot(zt, zt)},
      {"g_violation_burnin", g_max},
      {"arrival_prefix_dev", arrivals.max_prefix_deviation()},
  };
  for (std::size_t i = 0; i < n; ++i) {
    res.metrics.emplace_back("mu" + std::to_string(i + 1) + "_tail",
                             mu_tail[i] / tail_n);
    res.metrics.emplace_back("lambda" + std::to_string(i + 1) + "_tail",
                             l_tail[i] / tail_n);
  }
  return res;
}

namespace {

ScenarioResult run_fig1(const ScenarioConfig& config) {
  const double alpha = config.alpha, beta = config.beta, b = config.rates[0];
  Rng rng(config.seed);
  double z = 0.0, lambda = 0.0, mu = 0.0, max_gap = 0.0;
  ScenarioResult res;
  res.trajectory.alpha = alpha;
  for (std::size_t k = 1; k <= config.steps; ++k) {
    const double x = rng.bernoulli(0.5) ? 1.0 : 0.0;
    z = (1.0 - beta) * z + beta * x;
    lambda = std::max(0.0, lambda + alpha * (z - b));
    mu = std::max(0.0, mu + alpha * (x - b));
    max_gap = std::max(max_gap, std::fabs(lambda - mu));
    push_row(res.trajectory, {z}, {x}, {lambda}, {mu}, alpha, 0.0, 0.0);
  }
  // sigma1 = 2 max |A z| over [0,1]; arrivals are constant so sigma2 = 0.
  const double bound = 2.0 * alpha * (2.0 / beta + 0.0);
  res.metrics = {{"max_multiplier_gap", max_gap}, {"gap_bound", bound}};
  return res;
}

ScenarioResult run_fig2(const ScenarioConfig& config, int hold) {
  ActionTracker tracker({{0.0}, {1.0}}, config.sbar);
  std::vector<Vec> zs;
  const std::size_t slow = hold > 1
                               ? config.steps / static_cast<std::size_t>(hold)
                               : config.steps;
  for (std::size_t k = 1; k <= slow; ++k)
    zs.push_back({0.75 / static_cast<double>(k) + 0.25});
  TrackReport rep = hold > 1 ? two_timescale_track(tracker, zs, hold)
                             : track_sequence(tracker, zs);
  ScenarioResult res;
  res.trajectory.alpha = config.alpha;
  std::size_t k = 0;
  for (const Vec& x : rep.xs) {
    const Vec& z = zs[hold > 1 ? k / static_cast<std::size_t>(hold) : k];
    push_row(res.trajectory, z, x, {}, {}, config.alpha, 0.0, 0.0);
    ++k;
  }
  res.metrics = {{"max_prefix_deviation", rep.max_prefix_deviation},
                 {"deviation_bound", rep.bound}};
  return res;
}

}  // namespace

ScenarioResult run_fig_demo(const ScenarioConfig& config) {
  config.validate();
  if (config.id == "fig1") return run_fig1(config);
  if (config.id == "fig2") return run_fig2(config, 1);
  if (config.id == "fig5") return run_fig2(config, config.hold);
  throw std::invalid_argument("not a figure demo: " + config.id);
}

ScenarioResult run_scenario(const ScenarioConfig& config) {
  if (config.id == "link") return run_link_scenario(config);
  if (config.id == "unsync_queues") return run_unsync_queues_scenario(config);
  return run_fig_demo(config);
}

double estimate_fstar(ScenarioConfig config, std::size_t horizon) {
  config.steps = horizon;
  ScenarioResult res = run_scenario(config);
  return res.metric("f_diamond_burnin");
}

}  // namespace qdescent
