#ifndef QEP_HARNESS_HPP
#define QEP_HARNESS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "qep/projection.hpp"

namespace qep {

// One verification trial: solver output compared against the closed form
// (or whatever the experiment's notion of deviation is).
struct TrialRow {
  std::string theorem;
  int dim = 0;
  std::uint64_t seed = 0;
  double deviation = 0.0;
  int iterations = 0;
  bool converged = false;
  bool pass = false;
  std::string note;  // free-form context: case label, epsilon, order, ...
};

struct HarnessReport {
  std::string theorem;
  std::vector<int> dims;
  int trials = 0;
  std::uint64_t seed = 0;
  double threshold = 0.0;  // pass threshold on deviation; <0 = exploratory
  std::vector<TrialRow> rows;
  double max_deviation = 0.0;
  bool all_pass = false;
};

// Runs the named experiment (T1..T11). Trials are independent and may run
// in parallel; per-trial seeds derive from the master seed, so the report
// is identical for any job count.
HarnessReport verify(const std::string& theorem_id,
                     const std::vector<int>& dims, int trials,
                     std::uint64_t seed, const SolverConfig& cfg = {},
                     int jobs = 1);

// Per-theorem default protocol (dimensions and trial counts).
std::vector<int> default_dims(const std::string& theorem_id);
int default_trials(const std::string& theorem_id);

// CSV with one row per trial: theorem,dim,seed,deviation,iterations,converged.
std::string report_csv(const HarnessReport& report);

// Fixed nonpure instance for the T6 counter-check (L1 projection onto a face
// does not reproduce the strong Lueders rule for mixed states).
void diu_counterexample(DensityOperator* psi, Projector* P);

}  // namespace qep

#endif  // QEP_HARNESS_HPP
