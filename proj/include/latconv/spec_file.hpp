#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "latconv/certificates.hpp"
#include "latconv/errors.hpp"

namespace latconv {

/// Parse failure with 1-based line/column coordinates into the source text.
class SpecParseError : public Error {
 public:
  SpecParseError(int line, int col, const std::string& what)
      : Error("line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + what),
        line_(line),
        col_(col) {}
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  int line_, col_;
};

/// One CERT declaration. Sequences are referenced by name; sets are stored
/// resolved (their textual form round-trips through IndexSet::str()).
struct CertDef {
  enum class Kind { Decrease, Order, DStat };
  std::string name;
  Kind kind = Kind::Decrease;
  std::string seq;                     // DECREASE: the dominator; ORDER/DSTAT: x
  std::string dom;                     // ORDER/DSTAT: the dominator
  std::optional<LatticeVector> limit;  // ORDER/DSTAT
  std::optional<IndexSet> set;         // DECREASE: witness set; DSTAT: K
  std::optional<IndexSet> zset;        // DSTAT: separate decrease witness set

  bool operator==(const CertDef&) const = default;
};

/// One TASK line. `op` selects the operation; the remaining fields carry the
/// arguments that operation uses and stay empty otherwise.
struct SpecTask {
  std::string id;
  std::string op;
  std::string target;                  // first name argument (set/seq/cert)
  std::string second;                  // second name argument
  std::optional<IndexSet> set;         // density target / subseq K' / member zset
  std::optional<long long> at_n;       // cesaro window index
  std::optional<LatticeVector> vec;    // falsify limit
  std::vector<LatticeVector> vectors;  // member candidate limits
  std::optional<Rational> la, mu;      // linear coefficients; scalar limit/tol/eps slots
  std::string word;                    // lattice op name
  std::optional<IndexRule> rp, rq;     // refine / retarget pair rules
  std::vector<int> support;            // ideal support coordinates (1-based)
  int line = 0;                        // source line, for diagnostics only

  friend bool operator==(const SpecTask& a, const SpecTask& b) {
    return a.id == b.id && a.op == b.op && a.target == b.target && a.second == b.second &&
           a.set == b.set && a.at_n == b.at_n && a.vec == b.vec && a.vectors == b.vectors &&
           a.la == b.la && a.mu == b.mu && a.word == b.word && a.rp == b.rp && a.rq == b.rq &&
           a.support == b.support;  // `line` is diagnostic, not identity
  }
};

/// A parsed analysis document: one space, one deferred pair, named sets,
/// sequences and certificates, and an ordered task list.
struct AnalysisSpec {
  int dim = 1;
  DeferredPair pair = DeferredPair::natural();
  std::vector<std::pair<std::string, IndexSet>> sets;
  std::vector<std::pair<std::string, RuleSequence>> sequences;
  std::vector<CertDef> certs;
  std::vector<SpecTask> tasks;

  const IndexSet* find_set(const std::string& name) const;
  const RuleSequence* find_seq(const std::string& name) const;
  const CertDef* find_cert(const std::string& name) const;

  DecreaseCert decrease_cert(const CertDef& def) const;
  OrderConvCert order_cert(const CertDef& def) const;
  /// DStat view of a convergence certificate; ORDER definitions are lifted
  /// with K = ALL under the spec's pair. Throws on DECREASE definitions.
  DStatOrderCert dstat_cert(const CertDef& def) const;

  std::string serialize() const;

  bool operator==(const AnalysisSpec&) const = default;
};

/// Parse an analysis document. Throws SpecParseError on the first problem;
/// unknown keywords and trailing tokens are errors, never ignored.
AnalysisSpec parse_spec(const std::string& text);

}  // namespace latconv
