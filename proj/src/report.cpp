#include "latconv/report.hpp"

#include <chrono>
#include <future>

#include "json.hpp"

#include "latconv/theorems.hpp"

namespace latconv {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

ordered_json density_json(const DensityResult& d) {
  ordered_json j;
  switch (d.kind) {
    case DensityResult::Kind::Exact:
      j["kind"] = "exact";
      j["value"] = d.value.str();
      break;
    case DensityResult::Kind::Estimated:
      j["kind"] = "estimated";
      j["value"] = d.value.str();
      j["at_n"] = d.at_n;
      j["oscillation"] = d.oscillation.str();
      break;
    case DensityResult::Kind::NoLimit:
      j["kind"] = "no-limit";
      j["cluster_lo"] = d.cluster_lo.str();
      j["cluster_hi"] = d.cluster_hi.str();
      break;
    case DensityResult::Kind::Inconclusive:
      j["kind"] = "inconclusive";
      break;
  }
  if (!d.note.empty()) j["note"] = d.note;
  return j;
}

ordered_json verdict_json(const CheckVerdict& v) {
  ordered_json j;
  j["verdict"] = CheckVerdict::kind_name(v.kind);
  j["reason"] = v.reason;
  if (v.witness) j["witness"] = *v.witness;
  if (!v.witness_detail.empty()) j["witness_detail"] = v.witness_detail;
  if (!v.evidence.empty()) {
    ordered_json ev = ordered_json::array();
    for (const auto& [k, val] : v.evidence) ev.push_back(ordered_json::array({k, val}));
    j["evidence"] = ev;
  }
  return j;
}

const char* growth_name(GapGrowth g) {
  switch (g) {
    case GapGrowth::Zero: return "zero";
    case GapGrowth::Bounded: return "bounded";
    case GapGrowth::Growing: return "growing";
  }
  return "?";
}

/// Task classification for the summary and the exit code.
enum Cls { kOk = 0, kRefuted, kInconclusive, kError };

int cls_of(const CheckVerdict& v) {
  switch (v.kind) {
    case CheckVerdict::Kind::Verified: return kOk;
    case CheckVerdict::Kind::Refuted: return kRefuted;
    case CheckVerdict::Kind::Inconclusive:
    case CheckVerdict::Kind::PreconditionFailed: return kInconclusive;
  }
  return kError;
}

struct TaskOutcome {
  ordered_json j;
  int cls = kOk;
};

CheckOptions check_options(const RunOptions& o) { return {o.prefix_n, o.n_max, o.budget}; }

TaskOutcome execute_task(const AnalysisSpec& spec, const SpecTask& t, const RunOptions& opts) {
  TaskOutcome out;
  ordered_json& j = out.j;
  j["id"] = t.id;
  j["op"] = t.op;
  CheckOptions copts = check_options(opts);

  auto put_verdict = [&](const CheckVerdict& v) {
    j["result"] = verdict_json(v);
    out.cls = cls_of(v);
  };

  if (t.op == "density") {
    j["set"] = t.set->str();
    DensityResult d = deferred_density(*t.set, spec.pair, opts.n_max, opts.budget);
    j["result"] = density_json(d);
    if (d.is(DensityResult::Kind::Inconclusive)) out.cls = kInconclusive;
  } else if (t.op == "cesaro") {
    j["sequence"] = t.target;
    j["at"] = *t.at_n;
    Budget budget(opts.budget);
    j["mean"] = deferred_cesaro(*spec.find_seq(t.target), spec.pair, *t.at_n, budget).str();
  } else if (t.op == "check") {
    const CertDef& def = *spec.find_cert(t.target);
    j["certificate"] = t.target;
    switch (def.kind) {
      case CertDef::Kind::Decrease:
        j["kind"] = "decrease";
        put_verdict(check_decrease(spec.decrease_cert(def), copts));
        break;
      case CertDef::Kind::Order:
        j["kind"] = "order";
        put_verdict(check_order_conv(spec.order_cert(def), copts));
        break;
      case CertDef::Kind::DStat:
        j["kind"] = "dstat";
        put_verdict(check_dstat_order_conv(spec.dstat_cert(def), copts));
        break;
    }
  } else if (t.op == "member") {
    j["sequence"] = t.target;
    j["dominator"] = t.second;
    ordered_json cands = ordered_json::array();
    for (const auto& v : t.vectors) cands.push_back(v.str());
    j["candidates"] = cands;
    std::vector<CheckVerdict> vs = class_membership(*spec.find_seq(t.target),
                                                    *spec.find_seq(t.second), spec.pair,
                                                    t.vectors, t.set, copts);
    ordered_json results = ordered_json::array();
    for (const auto& v : vs) {
      results.push_back(verdict_json(v));
      out.cls = std::max(out.cls, cls_of(v));
    }
    j["results"] = results;
  } else if (t.op == "falsify") {
    j["sequence"] = t.target;
    j["limit"] = t.vec->str();
    FalsifyReport rep =
        falsify_with_whitelist(*spec.find_seq(t.target), *t.vec, spec.pair, copts);
    j["label"] = rep.label;
    j["all_eliminated"] = rep.all_eliminated;
    ordered_json cands = ordered_json::array();
    for (const auto& c : rep.candidates) {
      ordered_json cj;
      cj["dominator"] = c.dominator;
      cj["eliminated"] = c.eliminated;
      cj["exceedance"] = density_json(c.exceedance);
      cands.push_back(cj);
    }
    j["candidates"] = cands;
  } else if (t.op == "strongdpq") {
    j["sequence"] = t.target;
    j["limit"] = t.la->str();
    Rational tol = t.mu.value_or(Rational{BigInt(1), BigInt(1000)});
    j["tol"] = tol.str();
    EmpiricalCheck c = strong_dpq_check(*spec.find_seq(t.target), *t.la, spec.pair, opts.n_max,
                                        tol, opts.budget);
    const char* kind = c.kind == EmpiricalCheck::Kind::Consistent ? "consistent"
                       : c.kind == EmpiricalCheck::Kind::Refuted  ? "refuted"
                                                                  : "inconclusive";
    j["kind"] = kind;
    j["final_value"] = c.final_value.str();
    j["at_n"] = c.at_n;
    if (c.lower_bound) j["lower_bound"] = c.lower_bound->str();
    if (!c.note.empty()) j["note"] = c.note;
    if (c.kind == EmpiricalCheck::Kind::Refuted) out.cls = kRefuted;
    if (c.kind == EmpiricalCheck::Kind::Inconclusive) out.cls = kInconclusive;
  } else if (t.op == "dstatreal") {
    j["sequence"] = t.target;
    j["limit"] = t.la->str();
    j["eps"] = t.mu->str();
    RealStatCheck c = deferred_stat_check_real(*spec.find_seq(t.target), *t.la, *t.mu, spec.pair,
                                               opts.n_max, opts.budget);
    const char* kind = c.kind == RealStatCheck::Kind::ConvergentExact      ? "convergent"
                       : c.kind == RealStatCheck::Kind::NotConvergentExact ? "not-convergent"
                       : c.kind == RealStatCheck::Kind::Estimated          ? "estimated"
                                                                           : "inconclusive";
    j["kind"] = kind;
    j["exceedance"] = density_json(c.exceedance);
    if (!c.exceedance_set.empty()) j["exceedance_set"] = c.exceedance_set;
    if (!c.note.empty()) j["note"] = c.note;
    if (c.kind == RealStatCheck::Kind::NotConvergentExact) out.cls = kRefuted;
    if (c.kind == RealStatCheck::Kind::Estimated ||
        c.kind == RealStatCheck::Kind::Inconclusive)
      out.cls = kInconclusive;
  } else if (t.op == "ratio") {
    RatioBound rb = ratio_bounded(spec.pair);
    j["bounded"] = rb.bounded;
    if (rb.bounded) j["supremum"] = rb.supremum.str();
  } else if (t.op == "refine") {
    DeferredPair inner = DeferredPair::make(*t.rp, *t.rq);
    j["inner"] = inner.str();
    j["outer"] = spec.pair.str();
    RefinementReport rep = refinement_check(inner, spec.pair);
    j["nested"] = rep.nested;
    if (!rep.nested) {
      j["condition"] = rep.condition;
      j["at_n"] = rep.at_n;
    }
    j["p_gap"] = growth_name(rep.p_gap);
    j["q_gap"] = growth_name(rep.q_gap);
    if (rep.width_ratio) j["width_ratio"] = rep.width_ratio->str();
  } else if (t.op == "linear") {
    j["a"] = t.target;
    j["b"] = t.second;
    j["la"] = t.la->str();
    j["mu"] = t.mu->str();
    DStatOrderCert derived = derive_linear_cert(spec.dstat_cert(*spec.find_cert(t.target)),
                                                spec.dstat_cert(*spec.find_cert(t.second)),
                                                *t.la, *t.mu);
    j["derived_limit"] = derived.limit.str();
    j["derived_set"] = derived.set.str();
    put_verdict(check_dstat_order_conv(derived, copts));
  } else if (t.op == "lattice") {
    j["a"] = t.target;
    if (!t.second.empty()) j["b"] = t.second;
    j["lattice_op"] = t.word;
    LatticeCertOp op = t.word == "join"   ? LatticeCertOp::Join
                       : t.word == "meet" ? LatticeCertOp::Meet
                       : t.word == "pos"  ? LatticeCertOp::Pos
                       : t.word == "neg"  ? LatticeCertOp::Neg
                                          : LatticeCertOp::Abs;
    DStatOrderCert a = spec.dstat_cert(*spec.find_cert(t.target));
    DStatOrderCert b =
        t.second.empty() ? a : spec.dstat_cert(*spec.find_cert(t.second));
    DStatOrderCert derived = derive_lattice_cert(a, b, op);
    j["derived_limit"] = derived.limit.str();
    put_verdict(check_dstat_order_conv(derived, copts));
  } else if (t.op == "unique") {
    j["a"] = t.target;
    j["b"] = t.second;
    put_verdict(uniqueness_probe(spec.dstat_cert(*spec.find_cert(t.target)),
                                 spec.dstat_cert(*spec.find_cert(t.second)), copts));
  } else if (t.op == "monotone") {
    j["certificate"] = t.target;
    put_verdict(monotone_order_check(spec.dstat_cert(*spec.find_cert(t.target)), copts));
  } else if (t.op == "subseq") {
    j["certificate"] = t.target;
    j["subset"] = t.set->str();
    put_verdict(subsequence_check(spec.dstat_cert(*spec.find_cert(t.target)), *t.set, copts));
  } else if (t.op == "retarget") {
    j["certificate"] = t.target;
    DeferredPair target = DeferredPair::make(*t.rp, *t.rq);
    j["target_pair"] = target.str();
    put_verdict(
        stat_implies_deferred_check(spec.dstat_cert(*spec.find_cert(t.target)), target, copts));
  } else if (t.op == "ideal") {
    j["certificate"] = t.target;
    ordered_json sup = ordered_json::array();
    for (int c : t.support) sup.push_back(c);
    j["support"] = sup;
    OrderIdeal ideal(spec.dim, std::set<int>(t.support.begin(), t.support.end()));
    put_verdict(ideal_check(spec.dstat_cert(*spec.find_cert(t.target)), ideal, copts));
  } else if (t.op == "eqnull") {
    j["sequence"] = t.target;
    j["certificate"] = t.second;
    const CertDef& def = *spec.find_cert(t.second);
    put_verdict(equal_mod_null_transfer(*spec.find_seq(t.target), *spec.find_seq(def.seq),
                                        spec.dstat_cert(def), copts));
  } else if (t.op == "orderpres") {
    j["a"] = t.target;
    j["b"] = t.second;
    put_verdict(order_preservation_check(spec.dstat_cert(*spec.find_cert(t.target)),
                                         spec.dstat_cert(*spec.find_cert(t.second)), copts));
  } else {
    throw Error("unhandled task operation '" + t.op + "'");
  }
  j["status"] = "ok";
  return out;
}

TaskOutcome run_task(const AnalysisSpec& spec, const SpecTask& t, const RunOptions& opts) {
  auto start = std::chrono::steady_clock::now();
  TaskOutcome out;
  try {
    out = execute_task(spec, t, opts);
  } catch (const std::exception& e) {
    out.j = ordered_json();
    out.j["id"] = t.id;
    out.j["op"] = t.op;
    out.j["status"] = "error";
    out.j["error"] = e.what();
    out.cls = kError;
  }
  if (opts.timings) {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    out.j["wall_ms"] = ms;
  }
  return out;
}

ordered_json options_json(const RunOptions& opts) {
  ordered_json j;
  j["prefix_n"] = opts.prefix_n;
  j["n_max"] = opts.n_max;
  j["budget"] = opts.budget;
  j["seed"] = opts.seed;
  return j;
}

RunResult assemble(ordered_json doc, std::vector<TaskOutcome> outcomes, bool timings,
                   std::chrono::steady_clock::time_point started) {
  RunResult res;
  ordered_json tasks = ordered_json::array();
  for (auto& o : outcomes) {
    switch (o.cls) {
      case kRefuted: ++res.refuted; break;
      case kInconclusive: ++res.inconclusive; break;
      case kError: ++res.errors; break;
      default: break;
    }
    tasks.push_back(std::move(o.j));
  }
  doc["tasks"] = std::move(tasks);
  ordered_json summary;
  summary["tasks"] = outcomes.size();
  summary["refuted"] = res.refuted;
  summary["inconclusive"] = res.inconclusive;
  summary["errors"] = res.errors;
  doc["summary"] = std::move(summary);
  if (timings) {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - started)
                  .count();
    doc["total_wall_ms"] = ms;
  }
  res.json = doc.dump(2) + "\n";
  return res;
}

}  // namespace

RunResult run(const AnalysisSpec& spec, const RunOptions& opts) {
  auto started = std::chrono::steady_clock::now();
  ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["space"] = ordered_json{{"dim", spec.dim}};
  doc["pair"] = spec.pair.str();
  doc["options"] = options_json(opts);

  std::vector<TaskOutcome> outcomes;
  outcomes.reserve(spec.tasks.size());
  if (opts.jobs > 1 && spec.tasks.size() > 1) {
    std::vector<std::future<TaskOutcome>> futures;
    futures.reserve(spec.tasks.size());
    for (const auto& t : spec.tasks)
      futures.push_back(std::async(std::launch::async,
                                   [&spec, &t, &opts] { return run_task(spec, t, opts); }));
    for (auto& f : futures) outcomes.push_back(f.get());
  } else {
    for (const auto& t : spec.tasks) outcomes.push_back(run_task(spec, t, opts));
  }
  return assemble(std::move(doc), std::move(outcomes), opts.timings, started);
}

RunResult theorem_report(long long seed, int trials, const RunOptions& opts) {
  auto started = std::chrono::steady_clock::now();
  ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["suite"] = "theorems";
  doc["seed"] = seed;
  doc["trials"] = trials;

  std::vector<TheoremResult> results = theorem_suite(seed, trials);
  RunResult res;
  ordered_json arr = ordered_json::array();
  int failed_families = 0;
  for (const auto& t : results) {
    ordered_json j;
    j["name"] = t.name;
    j["trials"] = t.trials;
    j["passes"] = t.passes;
    j["ok"] = t.ok();
    if (!t.failures.empty()) {
      ordered_json fs = ordered_json::array();
      for (const auto& f : t.failures) fs.push_back(f);
      j["failures"] = fs;
    }
    if (!t.ok()) ++failed_families;
    arr.push_back(std::move(j));
  }
  doc["theorems"] = std::move(arr);
  ordered_json summary;
  summary["families"] = results.size();
  summary["failed_families"] = failed_families;
  doc["summary"] = std::move(summary);
  if (opts.timings) {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - started)
                  .count();
    doc["total_wall_ms"] = ms;
  }
  res.refuted = failed_families;  // a failing family exits nonzero
  res.json = doc.dump(2) + "\n";
  return res;
}

}  // namespace latconv
