#include "conlat/algebra.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace conlat {

namespace {

struct UnionFind {
  std::vector<int> parent;

  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }

  // Returns true if the two classes were distinct.
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);  // keep the least element as root
    parent[b] = a;
    return true;
  }

  Congruence to_congruence() {
    std::vector<int> rep(parent.size());
    for (int e = 0; e < static_cast<int>(parent.size()); ++e) rep[e] = find(e);
    return Congruence::from_block_map(rep);
  }
};

void check_same_size(int a, int b) {
  if (a != b) throw std::invalid_argument("size mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}

long long checked_pow(long long base, int exp, long long cap) {
  long long r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && r > cap / base) return cap + 1;
    r *= base;
  }
  return r;
}

}  // namespace

int Operation::apply(std::span<const int> args, int n) const {
  long long idx = 0;
  for (int v : args) idx = idx * n + v;
  return table[static_cast<size_t>(idx)];
}

std::string FiniteAlgebra::elem_name(int e) const {
  if (e >= 0 && e < static_cast<int>(elem_names.size())) return elem_names[e];
  return std::to_string(e + 1);
}

int FiniteAlgebra::apply(const Operation& op, std::span<const int> args) const {
  return op.apply(args, size);
}

void FiniteAlgebra::validate() const {
  if (size <= 0) throw std::invalid_argument("algebra size must be positive");
  for (const auto& op : ops) {
    if (op.arity < 0) throw std::invalid_argument("operation " + op.name + ": negative arity");
    long long expect = checked_pow(size, op.arity, kMaxTableEntries);
    if (expect > kMaxTableEntries)
      throw LimitError("operation " + op.name + ": table too large");
    if (static_cast<long long>(op.table.size()) != expect)
      throw std::invalid_argument("operation " + op.name + ": table has " +
                                  std::to_string(op.table.size()) + " entries, expected " +
                                  std::to_string(expect));
    for (int v : op.table)
      if (v < 0 || v >= size)
        throw std::invalid_argument("operation " + op.name + ": table entry out of range");
  }
}

Congruence Congruence::identity(int n) {
  Congruence c;
  c.rep_.resize(n);
  std::iota(c.rep_.begin(), c.rep_.end(), 0);
  return c;
}

Congruence Congruence::total(int n) {
  Congruence c;
  c.rep_.assign(n, 0);
  return c;
}

Congruence Congruence::from_block_map(const std::vector<int>& assignment) {
  int n = static_cast<int>(assignment.size());
  std::map<int, int> least;  // block id -> least member
  for (int e = 0; e < n; ++e) {
    auto [it, fresh] = least.emplace(assignment[e], e);
    if (!fresh && e < it->second) it->second = e;
  }
  Congruence c;
  c.rep_.resize(n);
  for (int e = 0; e < n; ++e) c.rep_[e] = least.at(assignment[e]);
  return c;
}

int Congruence::block_count() const {
  int k = 0;
  for (int e = 0; e < size(); ++e)
    if (rep_[e] == e) ++k;
  return k;
}

std::vector<std::vector<int>> Congruence::blocks() const {
  std::vector<std::vector<int>> out;
  std::vector<int> where(size(), -1);
  for (int e = 0; e < size(); ++e) {
    int r = rep_[e];
    if (where[r] < 0) {
      where[r] = static_cast<int>(out.size());
      out.emplace_back();
    }
    out[where[r]].push_back(e);
  }
  return out;
}

bool Congruence::is_identity() const {
  for (int e = 0; e < size(); ++e)
    if (rep_[e] != e) return false;
  return true;
}

bool refines(const Congruence& fine, const Congruence& coarse) {
  check_same_size(fine.size(), coarse.size());
  for (int e = 0; e < fine.size(); ++e)
    if (!coarse.related(e, fine.rep(e))) return false;
  return true;
}

bool comparable(const Congruence& a, const Congruence& b) {
  return refines(a, b) || refines(b, a);
}

Congruence meet(const Congruence& a, const Congruence& b) {
  check_same_size(a.size(), b.size());
  int n = a.size();
  std::map<std::pair<int, int>, int> least;
  std::vector<int> rep(n);
  for (int e = 0; e < n; ++e) {
    auto [it, fresh] = least.emplace(std::make_pair(a.rep(e), b.rep(e)), e);
    rep[e] = it->second;
  }
  return Congruence::from_block_map(rep);
}

Congruence join(const Congruence& a, const Congruence& b) {
  check_same_size(a.size(), b.size());
  UnionFind uf(a.size());
  for (int e = 0; e < a.size(); ++e) {
    uf.unite(e, a.rep(e));
    uf.unite(e, b.rep(e));
  }
  return uf.to_congruence();
}

BinaryRelation::BinaryRelation(int n) : n_(n), words_((n + 63) / 64), bits_(static_cast<size_t>(n) * words_, 0) {}

BinaryRelation BinaryRelation::from(const Congruence& c) {
  BinaryRelation r(c.size());
  for (int a = 0; a < c.size(); ++a)
    for (int b = 0; b < c.size(); ++b)
      if (c.related(a, b)) r.add(a, b);
  return r;
}

BinaryRelation BinaryRelation::identity(int n) {
  BinaryRelation r(n);
  for (int a = 0; a < n; ++a) r.add(a, a);
  return r;
}

bool BinaryRelation::contains(int a, int b) const {
  return (bits_[static_cast<size_t>(a) * words_ + b / 64] >> (b % 64)) & 1;
}

void BinaryRelation::add(int a, int b) {
  bits_[static_cast<size_t>(a) * words_ + b / 64] |= uint64_t{1} << (b % 64);
}

bool BinaryRelation::subset_of(const BinaryRelation& other) const {
  check_same_size(n_, other.n_);
  for (size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] & ~other.bits_[i]) return false;
  return true;
}

BinaryRelation BinaryRelation::reflexive_closure() const {
  BinaryRelation r = *this;
  for (int a = 0; a < n_; ++a) r.add(a, a);
  return r;
}

std::vector<std::pair<int, int>> BinaryRelation::pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int a = 0; a < n_; ++a)
    for (int b = 0; b < n_; ++b)
      if (contains(a, b)) out.emplace_back(a, b);
  return out;
}

BinaryRelation compose(const BinaryRelation& r, const BinaryRelation& s) {
  check_same_size(r.n_, s.n_);
  BinaryRelation out(r.n_);
  for (int a = 0; a < r.n_; ++a) {
    uint64_t* dst = &out.bits_[static_cast<size_t>(a) * out.words_];
    for (int b = 0; b < r.n_; ++b) {
      if (!r.contains(a, b)) continue;
      const uint64_t* row = &s.bits_[static_cast<size_t>(b) * s.words_];
      for (int w = 0; w < s.words_; ++w) dst[w] |= row[w];
    }
  }
  return out;
}

BinaryRelation alternating_product(const Congruence& theta, const Congruence& phi, int k) {
  BinaryRelation t = BinaryRelation::from(theta);
  BinaryRelation p = BinaryRelation::from(phi);
  BinaryRelation acc = t;
  for (int i = 1; i < k; ++i) acc = compose(acc, i % 2 == 1 ? p : t);
  return acc;
}

bool permute_check(const Congruence& theta, const Congruence& phi, int k) {
  if (k < 2) throw std::invalid_argument("permute_check requires k >= 2");
  return alternating_product(theta, phi, k) == alternating_product(phi, theta, k);
}

bool is_congruence(const FiniteAlgebra& a, const Congruence& c) {
  if (c.size() != a.size) return false;
  int n = a.size;
  std::vector<int> args, alt;
  for (const auto& op : a.ops) {
    int k = op.arity;
    if (k == 0) continue;
    args.assign(k, 0);
    // Changing one coordinate at a time suffices: compatibility for full
    // tuples follows by chaining single-coordinate replacements.
    while (true) {
      int base = op.apply(args, n);
      for (int pos = 0; pos < k; ++pos) {
        for (int v = args[pos] + 1; v < n; ++v) {
          if (!c.related(args[pos], v)) continue;
          alt = args;
          alt[pos] = v;
          if (!c.related(base, op.apply(alt, n))) return false;
        }
      }
      int i = k - 1;
      while (i >= 0 && args[i] == n - 1) args[i--] = 0;
      if (i < 0) break;
      ++args[i];
    }
  }
  return true;
}

Congruence principal_congruence(const FiniteAlgebra& a, int x, int y) {
  int n = a.size;
  if (x < 0 || x >= n || y < 0 || y >= n)
    throw std::invalid_argument("principal_congruence: element out of range");
  UnionFind uf(n);
  std::vector<std::pair<int, int>> stack;
  if (uf.unite(x, y)) stack.emplace_back(x, y);

  std::vector<int> args;
  while (!stack.empty()) {
    auto [u, v] = stack.back();
    stack.pop_back();
    for (const auto& op : a.ops) {
      int k = op.arity;
      if (k == 0) continue;
      for (int pos = 0; pos < k; ++pos) {
        // All unary translations with the varying argument at `pos`.
        args.assign(k, 0);
        while (true) {
          args[pos] = u;
          int fu = op.apply(args, n);
          args[pos] = v;
          int fv = op.apply(args, n);
          if (uf.unite(fu, fv)) stack.emplace_back(fu, fv);
          int i = k - 1;
          while (i >= 0 && (i == pos || args[i] == n - 1)) {
            if (i != pos) args[i] = 0;
            --i;
          }
          if (i < 0) break;
          ++args[i];
        }
      }
    }
  }
  return uf.to_congruence();
}

std::vector<Congruence> enumerate_con(const FiniteAlgebra& a, long long limit) {
  int n = a.size;
  std::set<Congruence> principals;
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) principals.insert(principal_congruence(a, x, y));

  std::set<Congruence> all;
  all.insert(Congruence::identity(n));
  std::vector<Congruence> queue(all.begin(), all.end());
  for (const auto& p : principals)
    if (all.insert(p).second) queue.push_back(p);

  while (!queue.empty()) {
    Congruence c = std::move(queue.back());
    queue.pop_back();
    for (const auto& p : principals) {
      Congruence j = join(c, p);
      if (all.insert(j).second) {
        if (static_cast<long long>(all.size()) > limit)
          throw LimitError("enumerate_con: more than " + std::to_string(limit) + " congruences");
        queue.push_back(j);
      }
    }
  }
  return {all.begin(), all.end()};
}

int PowerSubalgebra::index_of(std::span<const int> tuple) const {
  std::vector<int> key(tuple.begin(), tuple.end());
  auto it = std::lower_bound(tuples.begin(), tuples.end(), key);
  if (it == tuples.end() || *it != key) throw std::invalid_argument("tuple not in power subalgebra");
  return static_cast<int>(it - tuples.begin());
}

PowerSubalgebra power_subalgebra(const FiniteAlgebra& a, const Congruence& alpha, int n,
                                 long long max_universe) {
  if (n < 2) throw std::invalid_argument("power_subalgebra requires n >= 2");
  if (alpha.size() != a.size) throw std::invalid_argument("congruence size does not match algebra");
  if (!is_congruence(a, alpha))
    throw std::invalid_argument("power_subalgebra: alpha is not a congruence of the algebra");

  // Tuples with pairwise alpha-related coordinates are exactly the tuples
  // inside one alpha-block; enumerate them block by block, then sort.
  long long count = 0;
  for (const auto& block : alpha.blocks()) {
    long long c = checked_pow(static_cast<long long>(block.size()), n, max_universe);
    count += c;
    if (count > max_universe)
      throw LimitError("power_subalgebra: universe exceeds bound " + std::to_string(max_universe));
  }

  PowerSubalgebra out;
  for (const auto& block : alpha.blocks()) {
    std::vector<int> idx(n, 0);
    while (true) {
      std::vector<int> tuple(n);
      for (int i = 0; i < n; ++i) tuple[i] = block[idx[i]];
      out.tuples.push_back(std::move(tuple));
      int i = n - 1;
      while (i >= 0 && idx[i] == static_cast<int>(block.size()) - 1) idx[i--] = 0;
      if (i < 0) break;
      ++idx[i];
    }
  }
  std::sort(out.tuples.begin(), out.tuples.end());

  int m = static_cast<int>(out.tuples.size());
  FiniteAlgebra& p = out.algebra;
  p.name = a.name + "^" + std::to_string(n) + "(alpha)";
  p.size = m;
  p.elem_names.reserve(m);
  for (const auto& t : out.tuples) {
    std::string s = "(";
    for (size_t i = 0; i < t.size(); ++i) {
      if (i) s += ",";
      s += a.elem_name(t[i]);
    }
    s += ")";
    p.elem_names.push_back(std::move(s));
  }

  for (const auto& op : a.ops) {
    int k = op.arity;
    long long entries = checked_pow(m, k, kMaxTableEntries);
    if (entries > kMaxTableEntries) throw LimitError("power_subalgebra: operation table too large");
    Operation pop;
    pop.name = op.name;
    pop.arity = k;
    pop.table.reserve(static_cast<size_t>(entries));
    std::vector<int> args(k, 0);
    std::vector<int> coords(n), result(n);
    while (true) {
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < k; ++j) coords[j] = out.tuples[args[j]][i];
        result[i] = op.apply(std::span<const int>(coords.data(), k), a.size);
      }
      pop.table.push_back(out.index_of(result));
      if (k == 0) break;
      int i = k - 1;
      while (i >= 0 && args[i] == m - 1) args[i--] = 0;
      if (i < 0) break;
      ++args[i];
    }
    p.ops.push_back(std::move(pop));
  }
  return out;
}

}  // namespace conlat
