#include "latconv/spec_file.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace latconv {

namespace {

const std::set<std::string> kReservedNames = {"ALL", "EMPTY", "FIN", "AP",  "POW",
                                              "NOT", "AND",   "OR",  "n"};

/// Character-level cursor over one source line with 1-based diagnostics.
class LineParser {
 public:
  LineParser(const AnalysisSpec& spec, std::string text, int line)
      : spec_(spec), s_(std::move(text)), line_(line) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw SpecParseError(line_, static_cast<int>(pos_) + 1, msg);
  }

  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t')) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= s_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool try_char(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect_char(char c) {
    if (!try_char(c)) fail(std::string("expected '") + c + "'");
  }
  void expect_end() {
    if (!at_end()) fail("unexpected trailing text");
  }

  std::string ident() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
                                s_[pos_] == '_'))
      ++pos_;
    if (pos_ == start || std::isdigit(static_cast<unsigned char>(s_[start])))
      fail("expected a name");
    return s_.substr(start, pos_ - start);
  }
  std::optional<std::string> try_ident() {
    skip_ws();
    std::size_t save = pos_;
    char c = peek();
    if (!std::isalpha(static_cast<unsigned char>(c)) && c != '_') return std::nullopt;
    std::string id = ident();
    if (id.empty()) {
      pos_ = save;
      return std::nullopt;
    }
    return id;
  }
  /// Consume `kw` if it is the next identifier.
  bool try_keyword(const std::string& kw) {
    std::size_t save = pos_;
    auto id = try_ident();
    if (id && *id == kw) return true;
    pos_ = save;
    return false;
  }
  void expect_keyword(const std::string& kw) {
    if (!try_keyword(kw)) fail("expected '" + kw + "'");
  }

  long long integer() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected an integer");
    try {
      return std::stoll(s_.substr(start, pos_ - start));
    } catch (const std::exception&) {
      pos_ = start;
      fail("integer out of range");
    }
  }

  Rational rational() {
    bool neg = try_char('-');
    long long num = integer();
    long long den = 1;
    if (try_char('/')) den = integer();
    if (den == 0) fail("zero denominator");
    Rational r{BigInt(num), BigInt(den)};
    return neg ? -r : r;
  }

  /// Affine rule: "0", "4", "n", "2n", "2n+1", "n+3".
  IndexRule rule() {
    skip_ws();
    IndexRule r;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      long long v = integer();
      if (pos_ < s_.size() && s_[pos_] == 'n') {
        ++pos_;
        r.a = v;
      } else {
        r.b = v;
        return r;
      }
    } else if (try_char('n')) {
      r.a = 1;
    } else {
      fail("expected an index rule like 0, n, 2n or 2n+1");
    }
    if (try_char('+')) r.b = integer();
    return r;
  }

  LatticeVector vector_literal(int dim) {
    expect_char('(');
    std::vector<Rational> coords;
    if (peek() != ')') {
      coords.push_back(rational());
      while (try_char(',')) coords.push_back(rational());
    }
    expect_char(')');
    if (static_cast<int>(coords.size()) != dim)
      fail("vector has " + std::to_string(coords.size()) + " coordinates, the space has " +
           std::to_string(dim));
    return LatticeVector(std::move(coords));
  }

  // ---- index-set expressions ------------------------------------------
  IndexSet set_expr() {
    std::size_t start = pos_;
    std::string head = ident();
    if (head == "ALL") return IndexSet::all();
    if (head == "EMPTY") return IndexSet::empty();
    if (head == "FIN") {
      expect_char('(');
      std::vector<long long> elems;
      if (peek() != ')') {
        elems.push_back(integer());
        while (try_char(',')) elems.push_back(integer());
      }
      expect_char(')');
      return guard(start, [&] { return IndexSet::finite(elems); });
    }
    if (head == "AP") {
      expect_char('(');
      long long c = integer();
      expect_char(',');
      long long r = integer();
      expect_char(')');
      return guard(start, [&] { return IndexSet::ap(c, r); });
    }
    if (head == "POW") {
      expect_char('(');
      long long e = integer();
      expect_char(')');
      return guard(start, [&] { return IndexSet::power(static_cast<int>(e)); });
    }
    if (head == "NOT") {
      expect_char('(');
      IndexSet a = set_expr();
      expect_char(')');
      return guard(start, [&] { return IndexSet::complement(a); });
    }
    if (head == "AND" || head == "OR") {
      expect_char('(');
      IndexSet acc = set_expr();
      if (!try_char(',')) fail("'" + head + "' needs at least two arguments");
      do {
        IndexSet next = set_expr();
        acc = guard(start, [&] {
          return head == "AND" ? IndexSet::set_intersection(acc, next)
                               : IndexSet::set_union(acc, next);
        });
      } while (try_char(','));
      expect_char(')');
      return acc;
    }
    const IndexSet* named = spec_.find_set(head);
    if (!named) {
      pos_ = start;
      fail("unknown index set '" + head + "'");
    }
    return *named;
  }

  // ---- term expressions -----------------------------------------------
  TermExpr expr() {
    std::size_t start = pos_;
    TermExpr acc = term();
    for (;;) {
      if (try_char('+'))
        acc = guard(start, [&] { return acc + term(); });
      else if (try_char('-'))
        acc = guard(start, [&] { return acc - term(); });
      else
        return acc;
    }
  }

 private:
  TermExpr term() {
    std::size_t start = pos_;
    TermExpr acc = factor();
    for (;;) {
      if (try_char('*'))
        acc = guard(start, [&] { return acc * factor(); });
      else if (try_char('/'))
        acc = guard(start, [&] { return acc / factor(); });
      else
        return acc;
    }
  }

  TermExpr factor() {
    if (try_char('-')) return -factor();
    TermExpr base = atom();
    if (try_char('^')) {
      std::size_t start = pos_;
      long long e = integer();
      if (e > 50) {
        pos_ = start;
        fail("exponent too large");
      }
      return base.pow(static_cast<int>(e));
    }
    return base;
  }

  TermExpr atom() {
    if (try_char('(')) {
      TermExpr e = expr();
      expect_char(')');
      return e;
    }
    skip_ws();
    char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c)))
      return TermExpr::constant(Rational(BigInt(integer())));
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      std::string id = ident();
      if (id == "n") return TermExpr::variable();
      pos_ = start;
      fail("unknown symbol '" + id + "' (only 'n' may appear in terms)");
    }
    fail("expected a term");
  }

  /// Run `f`, converting domain errors (vanishing divisors, depth caps) into
  /// positioned parse errors anchored at `start`.
  template <typename F>
  auto guard(std::size_t start, F&& f) -> decltype(f()) {
    try {
      return f();
    } catch (const SpecParseError&) {
      throw;
    } catch (const Error& e) {
      pos_ = start;
      fail(e.what());
    }
  }

  const AnalysisSpec& spec_;
  std::string s_;
  int line_;
  std::size_t pos_ = 0;
};

bool guard_is_all(const IndexSet& s) { return s.kind() == IndexSet::Kind::All; }

std::string render_piece(const SeqPiece& p) {
  std::string out = "(";
  for (std::size_t c = 0; c < p.coords.size(); ++c) {
    if (c) out += ", ";
    out += p.coords[c].str();
  }
  out += ")";
  if (!guard_is_all(p.guard)) out += " if " + p.guard.str();
  return out;
}

std::string render_vector(const LatticeVector& v) { return v.str(); }

std::string render_rational(const Rational& r) { return r.str(); }

}  // namespace

const IndexSet* AnalysisSpec::find_set(const std::string& name) const {
  for (const auto& [n, s] : sets)
    if (n == name) return &s;
  return nullptr;
}

const RuleSequence* AnalysisSpec::find_seq(const std::string& name) const {
  for (const auto& [n, s] : sequences)
    if (n == name) return &s;
  return nullptr;
}

const CertDef* AnalysisSpec::find_cert(const std::string& name) const {
  for (const auto& c : certs)
    if (c.name == name) return &c;
  return nullptr;
}

DecreaseCert AnalysisSpec::decrease_cert(const CertDef& def) const {
  if (def.kind != CertDef::Kind::Decrease) throw Error("not a decrease certificate");
  return {*find_seq(def.seq), *def.set, pair};
}

OrderConvCert AnalysisSpec::order_cert(const CertDef& def) const {
  if (def.kind != CertDef::Kind::Order) throw Error("not an order-convergence certificate");
  return {*find_seq(def.seq), *def.limit, *find_seq(def.dom)};
}

DStatOrderCert AnalysisSpec::dstat_cert(const CertDef& def) const {
  switch (def.kind) {
    case CertDef::Kind::Order:
      return lift_order_cert(order_cert(def), pair);
    case CertDef::Kind::DStat:
      return {*find_seq(def.seq), *def.limit, *find_seq(def.dom), *def.set, pair, def.zset};
    case CertDef::Kind::Decrease:
      break;
  }
  throw Error("certificate '" + def.name + "' is a decrease certificate, not a convergence one");
}

std::string AnalysisSpec::serialize() const {
  std::ostringstream out;
  out << "SPACE dim=" << dim << "\n";
  out << "PAIR p=" << pair.p_rule().str() << " q=" << pair.q_rule().str() << "\n";
  for (const auto& [name, s] : sets) out << "SET " << name << " = " << s.str() << "\n";
  for (const auto& [name, seq] : sequences) {
    out << "SEQ " << name << " = ";
    const auto& pieces = seq.pieces();
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      if (i) out << "; ";
      out << render_piece(pieces[i]);
    }
    out << "\n";
  }
  for (const auto& c : certs) {
    out << "CERT " << c.name << " = ";
    switch (c.kind) {
      case CertDef::Kind::Decrease:
        out << "DECREASE " << c.seq << " on " << c.set->str();
        break;
      case CertDef::Kind::Order:
        out << "ORDER " << c.seq << " limit " << render_vector(*c.limit) << " dom " << c.dom;
        break;
      case CertDef::Kind::DStat:
        out << "DSTAT " << c.seq << " limit " << render_vector(*c.limit) << " dom " << c.dom
            << " on " << c.set->str();
        if (c.zset) out << " zset " << c.zset->str();
        break;
    }
    out << "\n";
  }
  for (const auto& t : tasks) {
    out << "TASK " << t.id << " " << t.op;
    if (t.op == "density") out << " " << t.set->str();
    else if (t.op == "cesaro") out << " " << t.target << " at " << *t.at_n;
    else if (t.op == "check" || t.op == "monotone") out << " " << t.target;
    else if (t.op == "member") {
      out << " " << t.target << " dom " << t.second << " candidates";
      for (const auto& v : t.vectors) out << " " << render_vector(v);
      if (t.set) out << " zset " << t.set->str();
    } else if (t.op == "falsify") {
      out << " " << t.target << " limit " << render_vector(*t.vec);
    } else if (t.op == "strongdpq") {
      out << " " << t.target << " limit " << render_rational(*t.la);
      if (t.mu) out << " tol " << render_rational(*t.mu);
    } else if (t.op == "dstatreal") {
      out << " " << t.target << " limit " << render_rational(*t.la) << " eps "
          << render_rational(*t.mu);
    } else if (t.op == "ratio") {
      // no arguments
    } else if (t.op == "refine" || t.op == "retarget") {
      if (!t.target.empty()) out << " " << t.target;
      out << " p=" << t.rp->str() << " q=" << t.rq->str();
    } else if (t.op == "linear") {
      out << " " << t.target << " " << t.second << " la " << render_rational(*t.la) << " mu "
          << render_rational(*t.mu);
    } else if (t.op == "lattice") {
      out << " " << t.target;
      if (!t.second.empty()) out << " " << t.second;
      out << " op " << t.word;
    } else if (t.op == "unique" || t.op == "orderpres" || t.op == "eqnull") {
      out << " " << t.target << " " << t.second;
    } else if (t.op == "subseq") {
      out << " " << t.target << " on " << t.set->str();
    } else if (t.op == "ideal") {
      out << " " << t.target << " support (";
      for (std::size_t i = 0; i < t.support.size(); ++i) {
        if (i) out << ",";
        out << t.support[i];
      }
      out << ")";
    }
    out << "\n";
  }
  return out.str();
}

namespace {

void check_fresh_name(const AnalysisSpec& spec, LineParser& lp, const std::string& name) {
  if (kReservedNames.count(name)) lp.fail("'" + name + "' is a reserved name");
  if (spec.find_set(name) || spec.find_seq(name) || spec.find_cert(name))
    lp.fail("name '" + name + "' is already defined");
}

const CertDef& resolve_cert(const AnalysisSpec& spec, LineParser& lp, const std::string& name,
                            bool convergence_only) {
  const CertDef* def = spec.find_cert(name);
  if (!def) lp.fail("unknown certificate '" + name + "'");
  if (convergence_only && def->kind == CertDef::Kind::Decrease)
    lp.fail("certificate '" + name + "' is a decrease certificate; a convergence certificate "
            "is required here");
  return *def;
}

void resolve_seq(const AnalysisSpec& spec, LineParser& lp, const std::string& name) {
  if (!spec.find_seq(name)) lp.fail("unknown sequence '" + name + "'");
}

void parse_cert_line(AnalysisSpec& spec, LineParser& lp) {
  CertDef def;
  def.name = lp.ident();
  check_fresh_name(spec, lp, def.name);
  lp.expect_char('=');
  std::string kind = lp.ident();
  if (kind == "DECREASE") {
    def.kind = CertDef::Kind::Decrease;
    def.seq = lp.ident();
    resolve_seq(spec, lp, def.seq);
    lp.expect_keyword("on");
    def.set = lp.set_expr();
  } else if (kind == "ORDER" || kind == "DSTAT") {
    def.kind = kind == "ORDER" ? CertDef::Kind::Order : CertDef::Kind::DStat;
    def.seq = lp.ident();
    resolve_seq(spec, lp, def.seq);
    lp.expect_keyword("limit");
    def.limit = lp.vector_literal(spec.dim);
    lp.expect_keyword("dom");
    def.dom = lp.ident();
    resolve_seq(spec, lp, def.dom);
    if (def.kind == CertDef::Kind::DStat) {
      lp.expect_keyword("on");
      def.set = lp.set_expr();
      if (lp.try_keyword("zset")) def.zset = lp.set_expr();
    }
  } else {
    lp.fail("unknown certificate kind '" + kind + "' (DECREASE, ORDER or DSTAT)");
  }
  lp.expect_end();
  spec.certs.push_back(std::move(def));
}

void parse_task_line(AnalysisSpec& spec, LineParser& lp, int line) {
  SpecTask t;
  t.line = line;
  t.id = lp.ident();
  for (const auto& prev : spec.tasks)
    if (prev.id == t.id) lp.fail("duplicate task id '" + t.id + "'");
  t.op = lp.ident();

  auto scalar_only = [&](const char* what) {
    if (spec.dim != 1) lp.fail(std::string(what) + " needs a 1-dimensional space");
  };

  if (t.op == "density") {
    t.set = lp.set_expr();
  } else if (t.op == "cesaro") {
    scalar_only("cesaro");
    t.target = lp.ident();
    resolve_seq(spec, lp, t.target);
    lp.expect_keyword("at");
    t.at_n = lp.integer();
    if (*t.at_n < 1) lp.fail("window index must be at least 1");
  } else if (t.op == "check" || t.op == "monotone") {
    t.target = lp.ident();
    resolve_cert(spec, lp, t.target, t.op == "monotone");
  } else if (t.op == "member") {
    t.target = lp.ident();
    resolve_seq(spec, lp, t.target);
    lp.expect_keyword("dom");
    t.second = lp.ident();
    resolve_seq(spec, lp, t.second);
    lp.expect_keyword("candidates");
    do t.vectors.push_back(lp.vector_literal(spec.dim));
    while (lp.peek() == '(');
    if (lp.try_keyword("zset")) t.set = lp.set_expr();
  } else if (t.op == "falsify") {
    t.target = lp.ident();
    resolve_seq(spec, lp, t.target);
    lp.expect_keyword("limit");
    t.vec = lp.vector_literal(spec.dim);
  } else if (t.op == "strongdpq") {
    scalar_only("strongdpq");
    t.target = lp.ident();
    resolve_seq(spec, lp, t.target);
    lp.expect_keyword("limit");
    t.la = lp.rational();
    if (lp.try_keyword("tol")) t.mu = lp.rational();
  } else if (t.op == "dstatreal") {
    scalar_only("dstatreal");
    t.target = lp.ident();
    resolve_seq(spec, lp, t.target);
    lp.expect_keyword("limit");
    t.la = lp.rational();
    lp.expect_keyword("eps");
    t.mu = lp.rational();
    if (t.mu->sign() <= 0) lp.fail("eps must be positive");
  } else if (t.op == "ratio") {
    // no arguments
  } else if (t.op == "refine") {
    lp.expect_char('p');
    lp.expect_char('=');
    t.rp = lp.rule();
    lp.expect_char('q');
    lp.expect_char('=');
    t.rq = lp.rule();
    if (auto v = DeferredPair::violation(*t.rp, *t.rq))
      lp.fail("invalid deferred pair: " + v->condition);
  } else if (t.op == "linear") {
    t.target = lp.ident();
    resolve_cert(spec, lp, t.target, true);
    t.second = lp.ident();
    resolve_cert(spec, lp, t.second, true);
    lp.expect_keyword("la");
    t.la = lp.rational();
    lp.expect_keyword("mu");
    t.mu = lp.rational();
  } else if (t.op == "lattice") {
    t.target = lp.ident();
    resolve_cert(spec, lp, t.target, true);
    if (auto id = lp.try_ident()) {
      if (*id == "op") {
        t.word = lp.ident();
      } else {
        t.second = *id;
        resolve_cert(spec, lp, t.second, true);
        lp.expect_keyword("op");
        t.word = lp.ident();
      }
    } else {
      lp.fail("expected a certificate name or 'op'");
    }
    static const std::set<std::string> kOps = {"join", "meet", "pos", "neg", "abs"};
    if (!kOps.count(t.word))
      lp.fail("unknown lattice op '" + t.word + "' (join, meet, pos, neg, abs)");
    bool binary = t.word == "join" || t.word == "meet";
    if (binary && t.second.empty()) lp.fail("'" + t.word + "' needs two certificates");
    if (!binary && !t.second.empty()) lp.fail("'" + t.word + "' takes one certificate");
  } else if (t.op == "unique" || t.op == "orderpres") {
    t.target = lp.ident();
    resolve_cert(spec, lp, t.target, true);
    t.second = lp.ident();
    resolve_cert(spec, lp, t.second, true);
  } else if (t.op == "subseq") {
    t.target = lp.ident();
    resolve_cert(spec, lp, t.target, true);
    lp.expect_keyword("on");
    t.set = lp.set_expr();
  } else if (t.op == "retarget") {
    t.target = lp.ident();
    resolve_cert(spec, lp, t.target, true);
    lp.expect_char('p');
    lp.expect_char('=');
    t.rp = lp.rule();
    lp.expect_char('q');
    lp.expect_char('=');
    t.rq = lp.rule();
    if (auto v = DeferredPair::violation(*t.rp, *t.rq))
      lp.fail("invalid deferred pair: " + v->condition);
  } else if (t.op == "ideal") {
    t.target = lp.ident();
    resolve_cert(spec, lp, t.target, true);
    lp.expect_keyword("support");
    lp.expect_char('(');
    if (lp.peek() != ')') {
      do {
        long long c = lp.integer();
        if (c < 1 || c > spec.dim)
          lp.fail("support coordinate " + std::to_string(c) + " outside 1.." +
                  std::to_string(spec.dim));
        t.support.push_back(static_cast<int>(c));
      } while (lp.try_char(','));
    }
    lp.expect_char(')');
  } else if (t.op == "eqnull") {
    t.target = lp.ident();
    resolve_seq(spec, lp, t.target);
    t.second = lp.ident();
    resolve_cert(spec, lp, t.second, true);
  } else {
    lp.fail("unknown task operation '" + t.op + "'");
  }
  lp.expect_end();
  spec.tasks.push_back(std::move(t));
}

}  // namespace

AnalysisSpec parse_spec(const std::string& text) {
  AnalysisSpec spec;
  int state = 0;  // 0 = expect SPACE, 1 = expect PAIR, 2 = body
  int line_no = 0;
  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    bool blank = raw.find_first_not_of(" \t") == std::string::npos;
    if (blank) continue;

    LineParser lp(spec, raw, line_no);
    std::string section = lp.ident();
    if (state == 0) {
      if (section != "SPACE") lp.fail("the first directive must be SPACE");
      lp.expect_keyword("dim");
      lp.expect_char('=');
      long long d = lp.integer();
      if (d < 1 || d > 32) lp.fail("dim must be between 1 and 32");
      spec.dim = static_cast<int>(d);
      lp.expect_end();
      state = 1;
      continue;
    }
    if (state == 1) {
      if (section != "PAIR") lp.fail("the second directive must be PAIR");
      lp.expect_char('p');
      lp.expect_char('=');
      IndexRule p = lp.rule();
      lp.expect_char('q');
      lp.expect_char('=');
      IndexRule q = lp.rule();
      if (auto v = DeferredPair::violation(p, q)) {
        std::string at = v->at_n > 0 ? " (first violated at n = " + std::to_string(v->at_n) + ")"
                                     : "";
        lp.fail("invalid deferred pair: " + v->condition + at);
      }
      spec.pair = DeferredPair::make(p, q);
      lp.expect_end();
      state = 2;
      continue;
    }
    if (section == "SPACE" || section == "PAIR") lp.fail("duplicate " + section + " directive");
    if (section == "SET") {
      std::string name = lp.ident();
      check_fresh_name(spec, lp, name);
      lp.expect_char('=');
      IndexSet s = lp.set_expr();
      lp.expect_end();
      spec.sets.emplace_back(std::move(name), std::move(s));
    } else if (section == "SEQ") {
      std::string name = lp.ident();
      check_fresh_name(spec, lp, name);
      lp.expect_char('=');
      std::vector<SeqPiece> pieces;
      do {
        lp.expect_char('(');
        std::vector<TermExpr> coords;
        coords.push_back(lp.expr());
        while (lp.try_char(',')) coords.push_back(lp.expr());
        lp.expect_char(')');
        if (static_cast<int>(coords.size()) != spec.dim)
          lp.fail("rule has " + std::to_string(coords.size()) + " coordinates, the space has " +
                  std::to_string(spec.dim));
        IndexSet guard = lp.try_keyword("if") ? lp.set_expr() : IndexSet::all();
        pieces.push_back({std::move(guard), std::move(coords)});
      } while (lp.try_char(';'));
      lp.expect_end();
      try {
        spec.sequences.emplace_back(std::move(name), RuleSequence(spec.dim, std::move(pieces)));
      } catch (const Error& e) {
        lp.fail(e.what());
      }
    } else if (section == "CERT") {
      parse_cert_line(spec, lp);
    } else if (section == "TASK") {
      parse_task_line(spec, lp, line_no);
    } else {
      lp.fail("unknown directive '" + section + "'");
    }
  }
  if (state == 0) throw SpecParseError(line_no + 1, 1, "missing SPACE directive");
  if (state == 1) throw SpecParseError(line_no + 1, 1, "missing PAIR directive");
  return spec;
}

}  // namespace latconv
