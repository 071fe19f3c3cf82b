#include "latconv/index_set.hpp"

#include <algorithm>
#include <numeric>

namespace latconv {

namespace {

// Overflow-checked r^e clamped to cap+1 (enough to compare against cap).
long long pow_clamped(long long r, int e, long long cap) {
  unsigned __int128 acc = 1;
  for (int i = 0; i < e; ++i) {
    acc *= static_cast<unsigned __int128>(r);
    if (acc > static_cast<unsigned __int128>(cap)) return cap + 1;
  }
  return static_cast<long long>(acc);
}

}  // namespace

long long integer_root(long long x, int e) {
  if (x < 0) throw Error("integer_root of negative value");
  if (e < 2 || e > 62) throw Error("integer_root exponent outside [2,62]");
  if (x < 2) return x;
  int bits = 0;
  for (long long t = x; t > 0; t >>= 1) ++bits;
  long long r = 1LL << ((bits + e - 1) / e);  // >= true root
  while (true) {
    long long rp = pow_clamped(r, e - 1, x);
    long long q = rp > x ? 0 : x / rp;
    long long next = ((e - 1) * r + q) / e;
    if (next >= r) break;
    r = next;
  }
  while (r > 0 && pow_clamped(r, e, x) > x) --r;
  while (pow_clamped(r + 1, e, x) <= x) ++r;
  // Certified: r^e <= x < (r+1)^e.
  return r;
}

namespace detail {

struct SetNode {
  IndexSet::Kind kind;
  int depth = 1;
  std::vector<long long> elems;        // Finite (sorted, unique)
  long long modulus = 0, residue = 0;  // AP
  int exponent = 0;                    // PowerImage
  std::shared_ptr<const SetNode> a, b;
};

}  // namespace detail

namespace {

using Kind = IndexSet::Kind;
using detail::SetNode;
using NodePtr = std::shared_ptr<const SetNode>;

NodePtr make_leaf(Kind k) {
  auto n = std::make_shared<SetNode>();
  n->kind = k;
  return n;
}

NodePtr make_finite_raw(std::vector<long long> elems) {
  auto n = std::make_shared<SetNode>();
  n->kind = Kind::Finite;
  n->elems = std::move(elems);
  return n;
}

NodePtr make_ap_raw(long long modulus, long long residue) {
  auto n = std::make_shared<SetNode>();
  n->kind = Kind::AP;
  n->modulus = modulus;
  n->residue = residue;
  return n;
}

NodePtr make_unary(Kind k, NodePtr c, bool enforce_depth) {
  auto n = std::make_shared<SetNode>();
  n->kind = k;
  n->depth = c->depth + 1;
  n->a = std::move(c);
  if (enforce_depth && n->depth > IndexSet::kMaxDepth)
    throw Error("index set nesting deeper than " + std::to_string(IndexSet::kMaxDepth));
  return n;
}

NodePtr make_binary(Kind k, NodePtr a, NodePtr b, bool enforce_depth) {
  auto n = std::make_shared<SetNode>();
  n->kind = k;
  n->depth = std::max(a->depth, b->depth) + 1;
  n->a = std::move(a);
  n->b = std::move(b);
  if (enforce_depth && n->depth > IndexSet::kMaxDepth)
    throw Error("index set nesting deeper than " + std::to_string(IndexSet::kMaxDepth));
  return n;
}

bool node_contains(const SetNode* n, long long k) {
  switch (n->kind) {
    case Kind::All: return true;
    case Kind::Empty: return false;
    case Kind::Finite: return std::binary_search(n->elems.begin(), n->elems.end(), k);
    case Kind::AP: return k % n->modulus == n->residue % n->modulus;
    case Kind::PowerImage: {
      long long r = integer_root(k, n->exponent);
      return pow_clamped(r, n->exponent, k) == k;
    }
    case Kind::Complement: return !node_contains(n->a.get(), k);
    case Kind::Union: return node_contains(n->a.get(), k) || node_contains(n->b.get(), k);
    case Kind::Intersection:
      return node_contains(n->a.get(), k) && node_contains(n->b.get(), k);
  }
  throw Error("corrupt index set node");
}

// Members of the base families in [1, x] (x >= 0), in closed form.
long long count_upto_base(const SetNode* n, long long x) {
  switch (n->kind) {
    case Kind::All: return x;
    case Kind::Empty: return 0;
    case Kind::Finite: {
      auto it = std::upper_bound(n->elems.begin(), n->elems.end(), x);
      return static_cast<long long>(it - n->elems.begin());
    }
    case Kind::AP: {
      // Least member is residue if residue >= 1, else modulus (members are >= 1).
      long long least = n->residue >= 1 ? n->residue : n->modulus;
      if (x < least) return 0;
      return (x - least) / n->modulus + 1;
    }
    case Kind::PowerImage: return x >= 1 ? integer_root(x, n->exponent) : 0;
    default: throw Error("count_upto_base on composite node");
  }
}

bool is_base(const SetNode* n) {
  switch (n->kind) {
    case Kind::All:
    case Kind::Empty:
    case Kind::Finite:
    case Kind::AP:
    case Kind::PowerImage: return true;
    default: return false;
  }
}

NodePtr simplify(const NodePtr& n);

// Closed-form count over (lo, hi] where available; expects a simplified tree.
std::optional<long long> closed_count(const SetNode* n, long long lo, long long hi) {
  if (is_base(n)) return count_upto_base(n, hi) - count_upto_base(n, lo);
  switch (n->kind) {
    case Kind::Complement: {
      auto inner = closed_count(n->a.get(), lo, hi);
      if (!inner) return std::nullopt;
      return (hi - lo) - *inner;
    }
    case Kind::Union: {
      auto ca = closed_count(n->a.get(), lo, hi);
      auto cb = closed_count(n->b.get(), lo, hi);
      if (!ca || !cb) return std::nullopt;
      // Inclusion-exclusion; the simplified intersection may itself compose.
      NodePtr inter = simplify(make_binary(Kind::Intersection, n->a, n->b, false));
      auto cab = closed_count(inter.get(), lo, hi);
      if (!cab) return std::nullopt;
      return *ca + *cb - *cab;
    }
    case Kind::Intersection: {
      // Simplification already merged what it could; a surviving intersection
      // composes here only through a Finite side.
      const SetNode* fin = n->a->kind == Kind::Finite   ? n->a.get()
                           : n->b->kind == Kind::Finite ? n->b.get()
                                                        : nullptr;
      if (!fin) return std::nullopt;
      const SetNode* other = fin == n->a.get() ? n->b.get() : n->a.get();
      long long c = 0;
      for (long long e : fin->elems)
        if (e > lo && e <= hi && node_contains(other, e)) ++c;
      return c;
    }
    default: return std::nullopt;
  }
}

// x = r1 mod c1 and x = r2 mod c2 merged into one congruence.  empty flags an
// unsatisfiable pair; modulus 0 flags an lcm overflow (caller keeps the pair).
struct CrtResult {
  bool empty;
  long long modulus, residue;
};

CrtResult crt_merge(long long c1, long long r1, long long c2, long long r2) {
  long long g = std::gcd(c1, c2);
  if (c1 / g > 2'000'000'000'000LL / c2) return CrtResult{false, 0, 0};
  long long l = c1 / g * c2;
  if (((r2 - r1) % g + g) % g != 0) return CrtResult{true, 0, 0};
  // Solve r1 + c1*t = r2 (mod c2): t = (r2-r1)/g * inv(c1/g) mod (c2/g).
  long long m = c2 / g;
  if (m == 1) {
    long long res = ((r1 % l) + l) % l;
    return CrtResult{false, l, res};
  }
  long long a = (c1 / g) % m;
  long long target = (((r2 - r1) / g) % m + m) % m;
  long long old_r = a, r = m, old_s = 1, s = 0;
  while (r != 0) {
    long long q = old_r / r;
    long long tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  long long inv = ((old_s % m) + m) % m;
  long long t = static_cast<long long>(static_cast<__int128>(target) * inv % m);
  __int128 x = (static_cast<__int128>(r1) + static_cast<__int128>(c1) * t) % l;
  long long res = static_cast<long long>((x % l + l) % l);
  return CrtResult{false, l, res};
}

bool nodes_equal(const SetNode* x, const SetNode* y) {
  if (x == y) return true;
  if (x->kind != y->kind) return false;
  switch (x->kind) {
    case Kind::All:
    case Kind::Empty: return true;
    case Kind::Finite: return x->elems == y->elems;
    case Kind::AP: return x->modulus == y->modulus && x->residue == y->residue;
    case Kind::PowerImage: return x->exponent == y->exponent;
    case Kind::Complement: return nodes_equal(x->a.get(), y->a.get());
    case Kind::Union:
    case Kind::Intersection:
      return nodes_equal(x->a.get(), y->a.get()) && nodes_equal(x->b.get(), y->b.get());
  }
  return false;
}

// True certifies x is a subset of y; false only means the test is undecided.
bool subset_of(const SetNode* x, const SetNode* y) {
  if (nodes_equal(x, y)) return true;
  if (x->kind == Kind::Empty || y->kind == Kind::All) return true;
  if (x->kind == Kind::Finite) {
    for (long long e : x->elems)
      if (!node_contains(y, e)) return false;
    return true;
  }
  if (x->kind == Kind::PowerImage && y->kind == Kind::PowerImage)
    return x->exponent % y->exponent == 0;
  if (x->kind == Kind::AP && y->kind == Kind::AP)
    return x->modulus % y->modulus == 0 && x->residue % y->modulus == y->residue;
  if (x->kind == Kind::Union)
    return subset_of(x->a.get(), y) && subset_of(x->b.get(), y);
  if (x->kind == Kind::Intersection &&
      (subset_of(x->a.get(), y) || subset_of(x->b.get(), y)))
    return true;
  if (y->kind == Kind::Intersection)
    return subset_of(x, y->a.get()) && subset_of(x, y->b.get());
  if (y->kind == Kind::Union) {
    if (subset_of(x, y->a.get()) || subset_of(x, y->b.get())) return true;
    // A branch of the union may cover x except for finitely many points — the
    // shape OR(AND(NOT(F),S),...) with x inside S.  The leftover points are
    // then checked against the whole union semantically.
    std::vector<const SetNode*> branches, stack{y};
    while (!stack.empty()) {
      const SetNode* n = stack.back();
      stack.pop_back();
      if (n->kind == Kind::Union) {
        stack.push_back(n->a.get());
        stack.push_back(n->b.get());
      } else {
        branches.push_back(n);
      }
    }
    auto patched = [&](const std::vector<long long>& holes) {
      for (long long e : holes)
        if (node_contains(x, e) && !node_contains(y, e)) return false;
      return true;
    };
    for (const SetNode* br : branches) {
      if (br->kind == Kind::Complement && br->a->kind == Kind::Finite && patched(br->a->elems))
        return true;
      if (br->kind != Kind::Intersection) continue;
      const SetNode* u = br->a.get();
      const SetNode* v = br->b.get();
      for (int side = 0; side < 2; ++side, std::swap(u, v))
        if (u->kind == Kind::Complement && u->a->kind == Kind::Finite && subset_of(x, v) &&
            patched(u->a->elems))
          return true;
    }
  }
  return false;
}

void flatten(Kind k, const NodePtr& n, std::vector<NodePtr>& out) {
  if (n->kind == k) {
    flatten(k, n->a, out);
    flatten(k, n->b, out);
  } else {
    out.push_back(n);
  }
}

NodePtr fold(Kind k, std::vector<NodePtr> parts, Kind empty_value) {
  if (parts.empty()) return make_leaf(empty_value);
  NodePtr acc = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) acc = make_binary(k, acc, parts[i], false);
  return acc;
}

NodePtr simplify_union(std::vector<NodePtr> parts) {
  std::vector<NodePtr> keep;
  std::vector<long long> finite_elems;
  for (auto& p : parts) {
    if (p->kind == Kind::All) return make_leaf(Kind::All);
    if (p->kind == Kind::Empty) continue;
    if (p->kind == Kind::Finite) {
      finite_elems.insert(finite_elems.end(), p->elems.begin(), p->elems.end());
      continue;
    }
    bool dup = false;
    for (auto& q : keep) dup = dup || nodes_equal(p.get(), q.get());
    if (!dup) keep.push_back(p);
  }
  // NOT(S) together with any superset of S covers everything.
  for (auto& p : keep)
    for (auto& q : keep)
      if (p->kind == Kind::Complement && subset_of(p->a.get(), q.get()))
        return make_leaf(Kind::All);
  if (!finite_elems.empty()) {
    std::sort(finite_elems.begin(), finite_elems.end());
    finite_elems.erase(std::unique(finite_elems.begin(), finite_elems.end()),
                       finite_elems.end());
    std::vector<long long> rest;  // drop elements another disjunct already covers
    for (long long e : finite_elems) {
      bool covered = false;
      for (auto& q : keep) covered = covered || node_contains(q.get(), e);
      if (!covered) rest.push_back(e);
    }
    if (!rest.empty()) keep.push_back(make_finite_raw(std::move(rest)));
  }
  return fold(Kind::Union, std::move(keep), Kind::Empty);
}

NodePtr simplify_intersection(std::vector<NodePtr> parts) {
  std::vector<NodePtr> keep;
  for (auto& p : parts) {
    if (p->kind == Kind::Empty) return make_leaf(Kind::Empty);
    if (p->kind == Kind::All) continue;
    bool dup = false;
    for (auto& q : keep) dup = dup || nodes_equal(p.get(), q.get());
    if (!dup) keep.push_back(p);
  }
  // NOT(S) together with any subset of S has no common element.
  for (auto& p : keep)
    for (auto& q : keep)
      if (p->kind == Kind::Complement && subset_of(q.get(), p->a.get()))
        return make_leaf(Kind::Empty);
  // Merge AP conjuncts by CRT.
  std::vector<NodePtr> merged;
  std::optional<std::pair<long long, long long>> apacc;
  for (auto& p : keep) {
    if (p->kind != Kind::AP) {
      merged.push_back(p);
      continue;
    }
    if (!apacc) {
      apacc = {p->modulus, p->residue};
      continue;
    }
    CrtResult crt = crt_merge(apacc->first, apacc->second, p->modulus, p->residue);
    if (crt.empty) return make_leaf(Kind::Empty);
    if (crt.modulus > 0)
      apacc = {crt.modulus, crt.residue};
    else
      merged.push_back(p);  // lcm overflow: keep unmerged
  }
  if (apacc && apacc->first > 1) merged.push_back(make_ap_raw(apacc->first, apacc->second));
  keep = std::move(merged);
  // j^a- and j^b-images intersect in lcm(a,b)-powers.
  merged.clear();
  std::optional<long long> powacc;
  for (auto& p : keep) {
    if (p->kind != Kind::PowerImage) {
      merged.push_back(p);
      continue;
    }
    if (!powacc) {
      powacc = p->exponent;
      continue;
    }
    long long l = std::lcm(*powacc, static_cast<long long>(p->exponent));
    if (l <= 62)
      powacc = l;
    else
      merged.push_back(p);
  }
  if (powacc) {
    auto pw = std::make_shared<SetNode>();
    pw->kind = Kind::PowerImage;
    pw->exponent = static_cast<int>(*powacc);
    merged.push_back(pw);
  }
  keep = std::move(merged);
  // A Finite conjunct resolves the whole intersection pointwise.
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i]->kind != Kind::Finite) continue;
    std::vector<long long> kept_elems;
    for (long long e : keep[i]->elems) {
      bool in_all = true;
      for (std::size_t j = 0; j < keep.size(); ++j)
        if (j != i) in_all = in_all && node_contains(keep[j].get(), e);
      if (in_all) kept_elems.push_back(e);
    }
    if (kept_elems.empty()) return make_leaf(Kind::Empty);
    return make_finite_raw(std::move(kept_elems));
  }
  return fold(Kind::Intersection, std::move(keep), Kind::All);
}

NodePtr simplify(const NodePtr& n) {
  switch (n->kind) {
    case Kind::All:
    case Kind::Empty:
    case Kind::PowerImage: return n;
    case Kind::Finite: return n->elems.empty() ? make_leaf(Kind::Empty) : n;
    case Kind::AP: return n->modulus == 1 ? make_leaf(Kind::All) : n;
    case Kind::Complement: {
      NodePtr s = simplify(n->a);
      if (s->kind == Kind::All) return make_leaf(Kind::Empty);
      if (s->kind == Kind::Empty) return make_leaf(Kind::All);
      if (s->kind == Kind::Complement) return s->a;
      return make_unary(Kind::Complement, s, false);
    }
    case Kind::Union: {
      std::vector<NodePtr> parts;
      flatten(Kind::Union, simplify(n->a), parts);
      flatten(Kind::Union, simplify(n->b), parts);
      return simplify_union(std::move(parts));
    }
    case Kind::Intersection: {
      std::vector<NodePtr> parts;
      flatten(Kind::Intersection, simplify(n->a), parts);
      flatten(Kind::Intersection, simplify(n->b), parts);
      return simplify_intersection(std::move(parts));
    }
  }
  throw Error("corrupt index set node");
}

}  // namespace

IndexSet::IndexSet(std::shared_ptr<const detail::SetNode> node) : node_(std::move(node)) {}

IndexSet IndexSet::all() { return IndexSet(make_leaf(Kind::All)); }
IndexSet IndexSet::empty() { return IndexSet(make_leaf(Kind::Empty)); }

IndexSet IndexSet::finite(std::vector<long long> elems) {
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  if (!elems.empty() && elems.front() < 1) throw Error("finite set elements must be >= 1");
  if (elems.size() > kMaxFiniteElems)
    throw Error("finite set larger than " + std::to_string(kMaxFiniteElems) + " elements");
  return IndexSet(make_finite_raw(std::move(elems)));
}

IndexSet IndexSet::ap(long long modulus, long long residue) {
  if (modulus < 1) throw Error("AP modulus must be >= 1");
  if (residue < 0 || residue >= modulus) throw Error("AP residue must lie in [0, modulus)");
  return IndexSet(make_ap_raw(modulus, residue));
}

IndexSet IndexSet::power(int exponent) {
  if (exponent < 2 || exponent > 62) throw Error("power image exponent outside [2,62]");
  auto n = std::make_shared<SetNode>();
  n->kind = Kind::PowerImage;
  n->exponent = exponent;
  return IndexSet(n);
}

IndexSet IndexSet::complement(IndexSet s) {
  return IndexSet(make_unary(Kind::Complement, std::move(s.node_), true));
}

IndexSet IndexSet::set_union(IndexSet a, IndexSet b) {
  return IndexSet(make_binary(Kind::Union, std::move(a.node_), std::move(b.node_), true));
}

IndexSet IndexSet::set_intersection(IndexSet a, IndexSet b) {
  return IndexSet(make_binary(Kind::Intersection, std::move(a.node_), std::move(b.node_), true));
}

IndexSet::Kind IndexSet::kind() const { return node_->kind; }
int IndexSet::depth() const { return node_->depth; }

const std::vector<long long>& IndexSet::elements() const {
  if (node_->kind != Kind::Finite) throw Error("elements() on non-Finite set");
  return node_->elems;
}

long long IndexSet::modulus() const {
  if (node_->kind != Kind::AP) throw Error("modulus() on non-AP set");
  return node_->modulus;
}

long long IndexSet::residue() const {
  if (node_->kind != Kind::AP) throw Error("residue() on non-AP set");
  return node_->residue;
}

int IndexSet::exponent() const {
  if (node_->kind != Kind::PowerImage) throw Error("exponent() on non-PowerImage set");
  return node_->exponent;
}

IndexSet IndexSet::child(int i) const {
  const auto& p = (i == 0) ? node_->a : node_->b;
  if (!p) throw Error("child() index out of range");
  return IndexSet(p);
}

bool IndexSet::contains(long long n) const {
  if (n < 1) throw Error("index set membership is defined for n >= 1");
  return node_contains(node_.get(), n);
}

WindowCount IndexSet::count_window(long long lo, long long hi, Budget& budget) const {
  if (lo < 0 || hi < lo) throw Error("count_window requires 0 <= lo <= hi");
  NodePtr s = simplify(node_);
  if (auto c = closed_count(s.get(), lo, hi)) return WindowCount{lo, hi, *c};
  budget.charge(hi - lo, "window counting");
  long long c = 0;
  for (long long k = lo + 1; k <= hi; ++k)
    if (node_contains(s.get(), k)) ++c;
  return WindowCount{lo, hi, c};
}

IndexSet IndexSet::simplified() const { return IndexSet(simplify(node_)); }

bool IndexSet::operator==(const IndexSet& o) const {
  return nodes_equal(node_.get(), o.node_.get());
}

std::string IndexSet::str() const {
  const SetNode* n = node_.get();
  switch (n->kind) {
    case Kind::All: return "ALL";
    case Kind::Empty: return "EMPTY";
    case Kind::Finite: {
      std::string out = "FIN(";
      for (std::size_t i = 0; i < n->elems.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(n->elems[i]);
      }
      return out + ")";
    }
    case Kind::AP:
      return "AP(" + std::to_string(n->modulus) + "," + std::to_string(n->residue) + ")";
    case Kind::PowerImage: return "POW(" + std::to_string(n->exponent) + ")";
    case Kind::Complement: return "NOT(" + IndexSet(n->a).str() + ")";
    case Kind::Union: return "OR(" + IndexSet(n->a).str() + "," + IndexSet(n->b).str() + ")";
    case Kind::Intersection:
      return "AND(" + IndexSet(n->a).str() + "," + IndexSet(n->b).str() + ")";
  }
  throw Error("corrupt index set node");
}

IndexSet::Periodicity IndexSet::periodicity() const {
  constexpr long long kPeriodCap = 1'000'000;
  struct Rec {
    static Periodicity go(const SetNode* n) {
      switch (n->kind) {
        case Kind::All:
        case Kind::Empty: return {true, 1, 0};
        case Kind::Finite: return {true, 1, n->elems.empty() ? 0 : n->elems.back()};
        case Kind::AP: return {true, n->modulus, 0};
        case Kind::PowerImage: return {false, 0, 0};
        case Kind::Complement: return go(n->a.get());
        case Kind::Union:
        case Kind::Intersection: {
          Periodicity pa = go(n->a.get()), pb = go(n->b.get());
          if (!pa.known || !pb.known) return {false, 0, 0};
          long long l = std::lcm(pa.period, pb.period);
          if (l > kPeriodCap) return {false, 0, 0};
          return {true, l, std::max(pa.transient, pb.transient)};
        }
      }
      return {false, 0, 0};
    }
  };
  return Rec::go(node_.get());
}

WindowCount oracle_count(const IndexSet& s, long long lo, long long hi) {
  if (lo < 0 || hi < lo) throw Error("oracle_count requires 0 <= lo <= hi");
  if (hi - lo > 10'000'000) throw Error("oracle_count window wider than 1e7");
  long long c = 0;
  for (long long k = lo + 1; k <= hi; ++k)
    if (s.contains(k)) ++c;
  return WindowCount{lo, hi, c};
}

}  // namespace latconv
