#ifndef DOMINO_DYNAMICS_HPP
#define DOMINO_DYNAMICS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "domino/model.hpp"
#include "domino/rng.hpp"

namespace domino {

/// One accepted flip: the spin (or domain) index that turned over and
/// the predicted energy decrement 4 * s_i * h_i (or 4 * F_m) at flip time.
struct FlipRecord {
  int unit = 0;
  double predicted_delta = 0.0;
};

struct RunOptions {
  /// 0 means the per-dynamics default (10 * N sweeps for sequential
  /// dynamics). Exceeding the bound throws Error{NoConvergence}.
  int max_sweeps = 0;
  bool record_energy_trace = false;
  bool record_flips = false;
};

struct Trajectory {
  std::int64_t steps = 0;   // accepted flips
  std::int64_t sweeps = 0;  // full passes, including the final clean one
  std::vector<double> energy_trace;  // energy after each accepted flip, if recorded
  std::vector<FlipRecord> flips;     // if recorded
  double final_energy = 0.0;         // incrementally tracked energy at termination
};

enum class SynchronousKind { FixedPoint, TwoCycle };

struct SynchronousOutcome {
  SynchronousKind kind = SynchronousKind::FixedPoint;
  /// One state for a fixed point, the two alternating states for a cycle.
  std::vector<SpinConfiguration> states;
  std::int64_t sweeps = 0;
};

/// Result of the two-phase minimization: domain phase down to energy D,
/// defrost into random dynamics down to energy E <= D.
struct RunOutcome {
  double domain_minimum_energy = 0.0;  // D
  double final_energy = 0.0;           // E
  SpinConfiguration final_state;
  /// d = D/E and r = (E-D)/E, absent when D >= 0 or E == 0.
  std::optional<double> d_share;
  std::optional<double> r_share;
  bool shares_undefined = false;
  Trajectory domain_trajectory;
  Trajectory random_trajectory;
};

/// Sequential single-spin descent: a fresh random permutation of the
/// spins per sweep, every unsatisfied spin flips when visited.
/// Terminates after a full sweep with no accepted flip; the returned
/// state is a local minimum.
std::pair<SpinConfiguration, Trajectory> run_random_dynamics(const ConnectionMatrix& J,
                                                             const SpinConfiguration& start,
                                                             std::uint64_t seed,
                                                             const RunOptions& options = {});

/// Parallel update of all unsatisfied spins at once; detects a fixed
/// point or a length-2 limit cycle by comparing with the previous two
/// states. Throws Error{NoConvergence} past max_sweeps (default 2 * N).
SynchronousOutcome run_synchronous_dynamics(const ConnectionMatrix& J,
                                            const SpinConfiguration& start, int max_sweeps = 0);

/// Sequential whole-domain descent: a fresh random permutation of the
/// domains per sweep, domain l flips when F_l < 0. The returned state
/// has F_l >= 0 for every l.
std::pair<SpinConfiguration, Trajectory> run_domain_dynamics(const ConnectionMatrix& J,
                                                             const SpinConfiguration& start,
                                                             const DomainPartition& p,
                                                             std::uint64_t seed,
                                                             const RunOptions& options = {});

/// Domain dynamics to a domain local minimum (energy D), then defrost:
/// random dynamics from exactly that state down to a local minimum
/// (energy E). A single RNG stream drives both phases.
RunOutcome minimize_two_phase(const ConnectionMatrix& J, const SpinConfiguration& start,
                              const DomainPartition& p, std::uint64_t seed,
                              const RunOptions& options = {});

}  // namespace domino

#endif
