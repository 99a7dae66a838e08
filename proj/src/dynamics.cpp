#include "domino/dynamics.hpp"

#include <string>
#include <utility>

namespace domino {

namespace {

int default_sequential_sweeps(int n) { return 10 * n; }
int default_synchronous_sweeps(int n) { return 2 * n; }

/// Energy from the maintained field vector: E = -sum_i s_i h_i.
double energy_from_fields(const SpinConfiguration& s, const std::vector<double>& h) {
  double acc = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) acc += s.spin(static_cast<int>(i)) * h[i];
  const double e = -acc;
  return e == 0.0 ? 0.0 : e;  // never hand out -0
}

/// In-place single-spin descent over a maintained field vector.
/// state/h/energy are kept consistent; the caller owns their setup.
void descend_spins(const ConnectionMatrix& J, SpinConfiguration& state, std::vector<double>& h,
                   double& energy_now, Rng& rng, Trajectory& traj, const RunOptions& options) {
  const int n = J.size();
  const int max_sweeps = options.max_sweeps > 0 ? options.max_sweeps : default_sequential_sweeps(n);
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[i] = i;

  bool changed = true;
  while (changed) {
    if (traj.sweeps >= max_sweeps) {
      throw Error(ErrorCode::NoConvergence,
                  "random dynamics did not settle within " + std::to_string(max_sweeps) +
                      " sweeps");
    }
    ++traj.sweeps;
    changed = false;
    rng.shuffle(order);
    for (int i : order) {
      const double product = state.spin(i) * h[i];
      if (satisfied(product)) continue;
      // Flipping an unsatisfied spin lowers the energy by exactly 4 s_i h_i.
      const double delta = 4.0 * product;
      energy_now += delta;
      state.flip(i);
      const double two_s = 2.0 * state.spin(i);
      const double* row = J.row(i);
      for (int j = 0; j < n; ++j) h[j] += two_s * row[j];  // J_ii = 0 keeps h_i intact
      ++traj.steps;
      changed = true;
      if (options.record_energy_trace) traj.energy_trace.push_back(energy_now);
      if (options.record_flips) traj.flips.push_back({i, delta});
    }
  }
  traj.final_energy = energy_now;
}

/// Stability F_l of one domain from the maintained fields.
double stability_from_fields(const ConnectionMatrix& J, const SpinConfiguration& state,
                             const std::vector<double>& h,
                             const std::vector<std::int32_t>& members) {
  double f = 0.0;
  for (std::int32_t i : members) {
    const double* row = J.row(i);
    double inner = 0.0;
    for (std::int32_t j : members) inner += row[j] * state.spin(j);
    f += state.spin(i) * (h[i] - inner);
  }
  return f;
}

/// In-place whole-domain descent, mirroring descend_spins.
void descend_domains(const ConnectionMatrix& J, SpinConfiguration& state, std::vector<double>& h,
                     const DomainPartition& p, double& energy_now, Rng& rng, Trajectory& traj,
                     const RunOptions& options) {
  const int n = J.size();
  const int domains = p.domain_count();
  const int max_sweeps =
      options.max_sweeps > 0 ? options.max_sweeps : default_sequential_sweeps(domains);
  std::vector<int> order(static_cast<std::size_t>(domains));
  for (int l = 0; l < domains; ++l) order[l] = l;

  bool changed = true;
  while (changed) {
    if (traj.sweeps >= max_sweeps) {
      throw Error(ErrorCode::NoConvergence,
                  "domain dynamics did not settle within " + std::to_string(max_sweeps) +
                      " sweeps");
    }
    ++traj.sweeps;
    changed = false;
    rng.shuffle(order);
    for (int l : order) {
      const auto& members = p.members(l);
      const double f = stability_from_fields(J, state, h, members);
      if (f >= -kTieTolerance) continue;
      // Turning the domain over lowers the energy by exactly 4 |F_l|.
      const double delta = 4.0 * f;
      energy_now += delta;
      for (std::int32_t i : members) {
        const double shift = -2.0 * state.spin(i);
        const double* row = J.row(i);
        for (int j = 0; j < n; ++j) h[j] += shift * row[j];
      }
      for (std::int32_t i : members) state.flip(i);
      ++traj.steps;
      changed = true;
      if (options.record_energy_trace) traj.energy_trace.push_back(energy_now);
      if (options.record_flips) traj.flips.push_back({l, delta});
    }
  }
  traj.final_energy = energy_now;
}

}  // namespace

std::pair<SpinConfiguration, Trajectory> run_random_dynamics(const ConnectionMatrix& J,
                                                             const SpinConfiguration& start,
                                                             std::uint64_t seed,
                                                             const RunOptions& options) {
  require_dimension_match(J, start);
  SpinConfiguration state = start;
  std::vector<double> h = local_fields(J, state);
  double energy_now = energy_from_fields(state, h);
  Rng rng(seed);
  Trajectory traj;
  descend_spins(J, state, h, energy_now, rng, traj, options);
  return {std::move(state), std::move(traj)};
}

SynchronousOutcome run_synchronous_dynamics(const ConnectionMatrix& J,
                                            const SpinConfiguration& start, int max_sweeps) {
  require_dimension_match(J, start);
  const int n = J.size();
  if (max_sweeps < 1) max_sweeps = default_synchronous_sweeps(n);

  SynchronousOutcome out;
  SpinConfiguration prev2 = start;  // state at t-1 once two states exist
  SpinConfiguration prev1 = start;  // state at t
  bool have_prev2 = false;
  for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
    const std::vector<double> h = local_fields(J, prev1);
    SpinConfiguration next = prev1;
    for (int i = 0; i < n; ++i) {
      if (!satisfied(prev1.spin(i) * h[i])) next.flip(i);
    }
    out.sweeps = sweep;
    if (next == prev1) {
      out.kind = SynchronousKind::FixedPoint;
      out.states = {std::move(next)};
      return out;
    }
    if (have_prev2 && next == prev2) {
      out.kind = SynchronousKind::TwoCycle;
      out.states = {prev2, prev1};
      return out;
    }
    prev2 = std::move(prev1);
    prev1 = std::move(next);
    have_prev2 = true;
  }
  throw Error(ErrorCode::NoConvergence,
              "synchronous dynamics found neither a fixed point nor a 2-cycle within " +
                  std::to_string(max_sweeps) + " sweeps");
}

std::pair<SpinConfiguration, Trajectory> run_domain_dynamics(const ConnectionMatrix& J,
                                                             const SpinConfiguration& start,
                                                             const DomainPartition& p,
                                                             std::uint64_t seed,
                                                             const RunOptions& options) {
  require_dimension_match(J, start);
  require_partition_match(J, p);
  SpinConfiguration state = start;
  std::vector<double> h = local_fields(J, state);
  double energy_now = energy_from_fields(state, h);
  Rng rng(seed);
  Trajectory traj;
  descend_domains(J, state, h, p, energy_now, rng, traj, options);
  return {std::move(state), std::move(traj)};
}

RunOutcome minimize_two_phase(const ConnectionMatrix& J, const SpinConfiguration& start,
                              const DomainPartition& p, std::uint64_t seed,
                              const RunOptions& options) {
  require_dimension_match(J, start);
  require_partition_match(J, p);

  SpinConfiguration state = start;
  std::vector<double> h = local_fields(J, state);
  double energy_now = energy_from_fields(state, h);
  Rng rng(seed);

  RunOutcome out{.domain_minimum_energy = 0.0,
                 .final_energy = 0.0,
                 .final_state = start,
                 .d_share = {},
                 .r_share = {},
                 .shares_undefined = false,
                 .domain_trajectory = {},
                 .random_trajectory = {}};

  descend_domains(J, state, h, p, energy_now, rng, out.domain_trajectory, options);
  out.domain_minimum_energy = energy_now;

  // Defrost: the random phase starts from exactly the domain-phase
  // output, reusing its fields.
  descend_spins(J, state, h, energy_now, rng, out.random_trajectory, options);
  out.final_energy = energy_now;
  out.final_state = std::move(state);

  const double D = out.domain_minimum_energy;
  const double E = out.final_energy;
  if (D < 0.0 && E != 0.0) {
    const double gap = E - D;
    const double r = gap == 0.0 ? 0.0 : gap / E;
    out.r_share = r;
    out.d_share = 1.0 - r;
  } else {
    out.shares_undefined = true;
  }
  return out;
}

}  // namespace domino
