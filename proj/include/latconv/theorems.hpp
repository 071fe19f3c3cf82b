#pragma once

#include <string>
#include <vector>

#include "latconv/certificates.hpp"

namespace latconv {

/// Outcome of one theorem family run over seeded random instances.
struct TheoremResult {
  std::string name;
  int trials = 0;
  int passes = 0;
  std::vector<std::string> failures;  // diagnostics for the first few failing trials

  bool ok() const { return passes == trials; }
};

/// The built-in corpus: lattice identity sweeps, density oracle sweeps, the
/// two worked examples, and one derive-and-recheck sweep per theorem.  The
/// same sweep functions back the acceptance harness at larger sizes.
std::vector<TheoremResult> theorem_suite(long long seed, int trials);

TheoremResult riesz_identity_sweep(long long seed, int trials);
TheoremResult density_oracle_sweep(long long seed, int trials);
TheoremResult cube_example_instance();
TheoremResult flagged_example_instance();
TheoremResult linear_derivation_sweep(long long seed, int trials);
TheoremResult lattice_derivation_sweep(long long seed, int trials);
TheoremResult equal_mod_null_sweep(long long seed, int trials);
TheoremResult subsequence_sweep(long long seed, int trials);
TheoremResult stat_implies_deferred_sweep(long long seed, int trials);
TheoremResult monotone_sweep(long long seed, int trials);
TheoremResult ideal_sweep(long long seed, int trials);
TheoremResult order_preservation_sweep(long long seed, int trials);
TheoremResult uniqueness_sweep(long long seed, int trials);
TheoremResult cesaro_specialization_sweep(long long seed, int trials);
TheoremResult stat_specialization_corpus(long long seed);

/// Shared random-instance builders (used by the sweeps and by tests).
namespace gen {

struct Rng {
  unsigned long long state;
  explicit Rng(long long seed, unsigned long long salt);
  unsigned long long next();
  long long range(long long lo, long long hi);  // inclusive bounds
};

Rational rand_rational(Rng& rng, long long mag, long long den_cap);
LatticeVector rand_vector(Rng& rng, int dim, long long mag, long long den_cap);
IndexSet rand_set(Rng& rng, int depth);

/// A valid certificate instance: x = limit + alpha * z on a density-one set
/// K, arbitrary off K; z a strictly positive single-rule dominator.
DStatOrderCert rand_base_cert(Rng& rng, int dim, const DeferredPair& pair);

/// Reduced-size options used by the sweeps for throughput; the checkers are
/// exact at any prefix size.
CheckOptions sweep_options();

}  // namespace gen

}  // namespace latconv
