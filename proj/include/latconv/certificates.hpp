#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "latconv/deferred.hpp"
#include "latconv/index_set.hpp"
#include "latconv/riesz.hpp"
#include "latconv/sequence.hpp"

namespace latconv {

/// Claim: delta_{p,q}(set) = 1, z restricted to set is nonincreasing, and the
/// infimum of z over set is the zero vector.
struct DecreaseCert {
  RuleSequence z;
  IndexSet set;
  DeferredPair pair;
};

/// Claim: |x_n - limit| <= dominator_n for every n, with dominator
/// nonincreasing to 0 on all of N.
struct OrderConvCert {
  RuleSequence x;
  LatticeVector limit;
  RuleSequence dominator;
};

/// Claim: x is deferred statistically order convergent to limit, witnessed by
/// the density-1 set and the dominator z, which is itself deferred
/// statistically order decreasing on decrease_set (defaults to set).
struct DStatOrderCert {
  RuleSequence x;
  LatticeVector limit;
  RuleSequence dominator;
  IndexSet set;
  DeferredPair pair;
  std::optional<IndexSet> decrease_set;

  const IndexSet& decrease_on() const { return decrease_set ? *decrease_set : set; }
};

/// Outcome of a certificate check.  `Verified` means every asymptotic claim
/// was discharged symbolically and the finite prefix passed exactly;
/// `Refuted` carries a finite witness (an index reproducible by eval, or a
/// density witness spelled out in witness_detail); `Inconclusive` names the
/// claim that could not be decided; `PreconditionFailed` reports an unmet
/// hypothesis, distinct from a refutation of the claim itself.
struct CheckVerdict {
  enum class Kind { Verified, Refuted, Inconclusive, PreconditionFailed };
  Kind kind = Kind::Inconclusive;
  std::string reason;
  std::optional<long long> witness;
  std::string witness_detail;
  std::vector<std::pair<std::string, std::string>> evidence;

  bool verified() const { return kind == Kind::Verified; }
  static const char* kind_name(Kind k);
};

struct CheckOptions {
  long long prefix_n = 100'000;   // exact prefix scan length
  long long n_max = 1'000'000;    // largest window index for density work
  long long budget_units = Budget::kDefault;
};

CheckVerdict check_decrease(const DecreaseCert& cert, const CheckOptions& opts = {});
CheckVerdict check_order_conv(const OrderConvCert& cert, const CheckOptions& opts = {});
CheckVerdict check_dstat_order_conv(const DStatOrderCert& cert, const CheckOptions& opts = {});

/// Statistical order convergence: the same claim specialized to the natural
/// pair (0, n), decided through natural_density as an independent code path.
CheckVerdict check_stat_order_conv(const DStatOrderCert& cert, const CheckOptions& opts = {});

/// Order convergence implies deferred statistical order convergence for every
/// valid pair, witnessed with set = All.
DStatOrderCert lift_order_cert(const OrderConvCert& cert, const DeferredPair& pair);

/// Certificate for la * a.x + mu * b.x with dominator |la| z_a + |mu| z_b on
/// K_a intersect K_b.  Requires matching pairs and dimensions.
DStatOrderCert derive_linear_cert(const DStatOrderCert& a, const DStatOrderCert& b,
                                  const Rational& la, const Rational& mu);

enum class LatticeCertOp { Join, Meet, Pos, Neg, Abs };

/// Certificate for a lattice combination, using
/// |u v v - a v b| <= |u - a| + |v - b| and its relatives: dominator
/// z_a + z_b on K_a intersect K_b (unary ops use only a).
DStatOrderCert derive_lattice_cert(const DStatOrderCert& a, const DStatOrderCert& b,
                                   LatticeCertOp op);

/// Limits of two certificates for the same sequence must agree; when they do
/// not, an index j in both witness sets exhibits z_a(j) + z_b(j) below
/// |limit_a - limit_b|, contradicting the triangle inequality.
CheckVerdict uniqueness_probe(const DStatOrderCert& a, const DStatOrderCert& b,
                              const CheckOptions& opts = {});

/// Monotone + deferred statistically order convergent implies order
/// convergent: checks monotonicity, then verifies the order-convergence
/// certificate with dominator |x_n - limit|.
CheckVerdict monotone_order_check(const DStatOrderCert& cert, const CheckOptions& opts = {});

/// Restriction to a subset of indices with positive windowed liminf density.
CheckVerdict subsequence_check(const DStatOrderCert& cert, const IndexSet& kprime,
                               const CheckOptions& opts = {});

/// Statistical order convergence transfers to a deferred pair whose ratio
/// p_n / (q_n - p_n) is bounded: re-verifies the certificate under the pair.
CheckVerdict stat_implies_deferred_check(const DStatOrderCert& cert,
                                         const DeferredPair& target,
                                         const CheckOptions& opts = {});

/// A certificate with limit 0 whose terms and dominator all lie in the ideal
/// is simultaneously valid in the ideal and the ambient space.
CheckVerdict ideal_check(const DStatOrderCert& cert, const OrderIdeal& ideal,
                         const CheckOptions& opts = {});

/// For each candidate limit, tries K = complement of the violation set
/// { k : |x_k - limit| not<= z_k } and runs the full checker.  decrease_set
/// (default All) is where z must be decreasing.
std::vector<CheckVerdict> class_membership(const RuleSequence& x, const RuleSequence& z,
                                           const DeferredPair& pair,
                                           const std::vector<LatticeVector>& candidates,
                                           const std::optional<IndexSet>& decrease_set = {},
                                           const CheckOptions& opts = {});

/// If x agrees with y off a density-0 set, x inherits y's certificate on
/// K_y minus the disagreement set.
CheckVerdict equal_mod_null_transfer(const RuleSequence& x, const RuleSequence& y,
                                     const DStatOrderCert& cert_y,
                                     const CheckOptions& opts = {});

/// a.x >= b.x pointwise plus both certificates verified forces
/// limit_a >= limit_b.
CheckVerdict order_preservation_check(const DStatOrderCert& a, const DStatOrderCert& b,
                                      const CheckOptions& opts = {});

/// The set { k : |x_k - limit| not<= z_k }, assembled exactly from the piece
/// structure when every per-region sign can be certified; nullopt otherwise.
std::optional<IndexSet> violation_set(const RuleSequence& x, const LatticeVector& limit,
                                      const RuleSequence& z);

/// Bounded falsification against the dominator whitelist c / n^e,
/// e in {1,2,3}, c in {1..10}: a candidate is eliminated when its violation
/// set has exact positive density, so no density-1 witness set can avoid it.
struct FalsifyCandidate {
  std::string dominator;
  DensityResult exceedance;
  bool eliminated = false;
};
struct FalsifyReport {
  std::vector<FalsifyCandidate> candidates;
  bool all_eliminated = false;
  std::string label;  // names the whitelist; this is not a completeness claim
};
FalsifyReport falsify_with_whitelist(const RuleSequence& x, const LatticeVector& limit,
                                     const DeferredPair& pair, const CheckOptions& opts = {});

}  // namespace latconv
