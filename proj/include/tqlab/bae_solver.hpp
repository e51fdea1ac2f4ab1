#ifndef TQLAB_BAE_SOLVER_HPP
#define TQLAB_BAE_SOLVER_HPP

#include <span>
#include <vector>

#include "tqlab/chain_spec.hpp"
#include "tqlab/spectral_oracle.hpp"
#include "tqlab/tq_engine.hpp"
#include "tqlab/types.hpp"

namespace tqlab {

// Unscaled (holomorphic) BAE residual map
//   F_j = e^{i phi} a(mu_j) Q(mu_j-1) + e^{-i phi} d(mu_j) Q(mu_j+1)
//           + 2(1-cos phi) a(mu_j) d(mu_j),
// with Q = prod_k (u - mu_k). The Newton iteration runs on this map; the
// scaled defect from bae_residuals drives convergence thresholds.
Vec bae_residual_raw(const ChainSpec& spec, std::span<const Cplx> mu);

// Analytic Jacobian dF_j/dmu_k assembled from the product form.
Mat bae_jacobian(const ChainSpec& spec, std::span<const Cplx> mu);

struct NewtonOptions {
  double tol = 1e-10;           // converged when scaled defect drops below
  int max_iterations = 200;
  int max_halvings = 30;
  double selection_margin = 1e-8;  // iterate aborts inside this margin
  double divergence = 1e6;
};

enum class NewtonStatus { kConverged, kSelectionAbort, kDiverged, kStalled, kMaxIterations };

struct NewtonResult {
  BetheRootSet roots;
  NewtonStatus status = NewtonStatus::kStalled;
};

// Damped Newton from mu0. Precondition: mu0 satisfies the selection rules
// with margin >= 1e-6 (throws std::invalid_argument otherwise).
NewtonResult newton_solve(const ChainSpec& spec, std::span<const Cplx> mu0,
                          const NewtonOptions& opts = {});

struct EnumerationOptions {
  int budget = 1000;
  std::uint64_t seed = kDefaultSeed;
  bool parallel = true;
  double dedup_tol = 1e-6;
  NewtonOptions newton;
};

// Multistart driver: low-discrepancy starts in the box
// Re in [-(N+1), 1], Im in [-(N+1), N+1] per coordinate, plus caller-supplied
// seed starts (e.g. roots of reconstructed Q polynomials). Distinct converged
// solutions, deduplicated on canonically ordered roots.
std::vector<BetheRootSet> enumerate_solutions(
    const ChainSpec& spec, const EnumerationOptions& opts,
    std::span<const std::vector<Cplx>> seed_starts = {});

struct MatchEntry {
  int solution = -1;
  int record = -1;
  double distance = 0.0;
  ComplexPoly lambda;
  Cplx energy{};        // from the solution's Lambda (homogeneous chains)
  bool has_energy = false;
};

struct Matching {
  std::vector<MatchEntry> matched;
  std::vector<int> unmatched_solutions;
  std::vector<int> unmatched_records;
  std::vector<std::string> failures;  // per-solution Lambda construction errors
};

// Builds Lambda for each solution via lambda_poly_from_tq and matches it to
// the oracle record minimizing the max-norm coefficient distance; a match is
// accepted below 1e-6 relative.
Matching classify(const std::vector<BetheRootSet>& solutions,
                  const std::vector<SpectrumRecord>& records, const ChainSpec& spec);

}  // namespace tqlab

#endif
