#include "conlat/lattice.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "conlat/io.hpp"

namespace conlat {

FiniteLattice FiniteLattice::from_leq(int n, const std::vector<bool>& leq,
                                      std::vector<std::string> labels) {
  if (n <= 0) throw std::invalid_argument("lattice must be nonempty");
  if (static_cast<int>(leq.size()) != n * n) throw std::invalid_argument("leq matrix has wrong size");

  auto at = [&](int a, int b) { return leq[static_cast<size_t>(a) * n + b]; };
  for (int a = 0; a < n; ++a) {
    if (!at(a, a)) throw std::invalid_argument("leq is not reflexive");
    for (int b = 0; b < n; ++b) {
      if (a != b && at(a, b) && at(b, a)) throw std::invalid_argument("leq is not antisymmetric");
      for (int c = 0; c < n; ++c)
        if (at(a, b) && at(b, c) && !at(a, c)) throw std::invalid_argument("leq is not transitive");
    }
  }

  FiniteLattice l;
  l.n_ = n;
  l.leq_ = leq;
  if (labels.empty()) {
    labels.resize(n);
    for (int e = 0; e < n; ++e) labels[e] = std::to_string(e);
  }
  if (static_cast<int>(labels.size()) != n) throw std::invalid_argument("wrong number of labels");
  l.labels_ = std::move(labels);

  int bottom = -1, top = -1;
  for (int e = 0; e < n; ++e) {
    bool is_bot = true, is_top = true;
    for (int x = 0; x < n; ++x) {
      if (!at(e, x)) is_bot = false;
      if (!at(x, e)) is_top = false;
    }
    if (is_bot) bottom = e;
    if (is_top) top = e;
  }
  if (bottom < 0 || top < 0) throw std::invalid_argument("order has no unique bottom or top");
  l.bottom_ = bottom;
  l.top_ = top;

  l.meet_.assign(static_cast<size_t>(n) * n, -1);
  l.join_.assign(static_cast<size_t>(n) * n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      int m = bottom, j = top;
      for (int z = 0; z < n; ++z) {
        if (at(z, a) && at(z, b) && at(m, z)) m = z;
        if (at(a, z) && at(b, z) && at(z, j)) j = z;
      }
      for (int z = 0; z < n; ++z) {
        if (at(z, a) && at(z, b) && !at(z, m))
          throw std::invalid_argument("order is not a lattice: no greatest lower bound");
        if (at(a, z) && at(b, z) && !at(j, z))
          throw std::invalid_argument("order is not a lattice: no least upper bound");
      }
      l.meet_[static_cast<size_t>(a) * n + b] = m;
      l.join_[static_cast<size_t>(a) * n + b] = j;
    }
  }

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (!at(a, b) || a == b) continue;
      bool cover = true;
      for (int z = 0; z < n; ++z)
        if (z != a && z != b && at(a, z) && at(z, b)) {
          cover = false;
          break;
        }
      if (cover) l.covers_.emplace_back(a, b);
    }
  std::sort(l.covers_.begin(), l.covers_.end());

  l.height_.assign(n, 0);
  l.depth_.assign(n, 0);
  // Longest chains via DP over the order (process by number of elements below).
  std::vector<int> order(n);
  for (int e = 0; e < n; ++e) order[e] = e;
  std::vector<int> below(n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (a != b && at(b, a)) ++below[a];
  std::sort(order.begin(), order.end(), [&](int x, int y) { return below[x] < below[y]; });
  for (int e : order)
    for (auto [lo, hi] : l.covers_)
      if (hi == e) l.height_[e] = std::max(l.height_[e], l.height_[lo] + 1);
  std::reverse(order.begin(), order.end());
  for (int e : order)
    for (auto [lo, hi] : l.covers_)
      if (lo == e) l.depth_[e] = std::max(l.depth_[e], l.depth_[hi] + 1);

  return l;
}

FiniteLattice FiniteLattice::from_covers(int n, const std::vector<std::pair<int, int>>& covers,
                                         std::vector<std::string> labels) {
  std::vector<bool> leq(static_cast<size_t>(n) * n, false);
  for (int e = 0; e < n; ++e) leq[static_cast<size_t>(e) * n + e] = true;
  for (auto [a, b] : covers) {
    if (a < 0 || a >= n || b < 0 || b >= n) throw std::invalid_argument("cover index out of range");
    leq[static_cast<size_t>(a) * n + b] = true;
  }
  // Warshall transitive closure.
  for (int k = 0; k < n; ++k)
    for (int a = 0; a < n; ++a) {
      if (!leq[static_cast<size_t>(a) * n + k]) continue;
      for (int b = 0; b < n; ++b)
        if (leq[static_cast<size_t>(k) * n + b]) leq[static_cast<size_t>(a) * n + b] = true;
    }
  return from_leq(n, leq, std::move(labels));
}

std::optional<int> FiniteLattice::find_label(const std::string& s) const {
  for (int e = 0; e < n_; ++e)
    if (labels_[e] == s) return e;
  return std::nullopt;
}

std::vector<int> FiniteLattice::upper_covers(int e) const {
  std::vector<int> out;
  for (auto [lo, hi] : covers_)
    if (lo == e) out.push_back(hi);
  return out;
}

std::vector<int> FiniteLattice::lower_covers(int e) const {
  std::vector<int> out;
  for (auto [lo, hi] : covers_)
    if (hi == e) out.push_back(lo);
  return out;
}

bool is_modular(const FiniteLattice& l) {
  int n = l.size();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (l.leq(c, a) && !l.leq(l.meet(a, l.join(b, c)), l.join(l.meet(a, b), c))) return false;
  return true;
}

bool is_distributive(const FiniteLattice& l) {
  int n = l.size();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (l.meet(a, l.join(b, c)) != l.join(l.meet(a, b), l.meet(a, c))) return false;
  return true;
}

bool is_meet_semidistributive(const FiniteLattice& l) {
  int n = l.size();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (l.meet(a, b) == l.meet(a, c) && l.meet(a, b) != l.meet(a, l.join(b, c))) return false;
  return true;
}

bool is_join_semidistributive(const FiniteLattice& l) {
  int n = l.size();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (l.join(a, b) == l.join(a, c) && l.join(a, b) != l.join(a, l.meet(b, c))) return false;
  return true;
}

bool is_semidistributive(const FiniteLattice& l) {
  return is_meet_semidistributive(l) && is_join_semidistributive(l);
}

bool whitman_w(const FiniteLattice& l) {
  int n = l.size();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int ab = l.meet(a, b);
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          int cd = l.join(c, d);
          if (!l.leq(ab, cd)) continue;
          if (!(l.leq(a, cd) || l.leq(b, cd) || l.leq(ab, c) || l.leq(ab, d))) return false;
        }
    }
  return true;
}

FiniteAlgebra lattice_as_algebra(const FiniteLattice& l) {
  FiniteAlgebra a;
  a.name = "lattice";
  a.size = l.size();
  Operation m{"meet", 2, {}}, j{"join", 2, {}};
  m.table.reserve(static_cast<size_t>(a.size) * a.size);
  j.table.reserve(static_cast<size_t>(a.size) * a.size);
  for (int x = 0; x < a.size; ++x)
    for (int y = 0; y < a.size; ++y) {
      m.table.push_back(l.meet(x, y));
      j.table.push_back(l.join(x, y));
    }
  a.ops.push_back(std::move(m));
  a.ops.push_back(std::move(j));
  return a;
}

bool is_subdirectly_irreducible(const FiniteLattice& l) {
  auto cons = enumerate_con(lattice_as_algebra(l));
  std::vector<const Congruence*> nonzero;
  for (const auto& c : cons)
    if (!c.is_identity()) nonzero.push_back(&c);
  int atoms = 0;
  for (const auto* c : nonzero) {
    bool minimal = true;
    for (const auto* d : nonzero)
      if (d != c && refines(*d, *c)) {
        minimal = false;
        break;
      }
    if (minimal) ++atoms;
  }
  return atoms == 1;
}

Sublattice generated_sublattice(const FiniteLattice& l, const std::vector<int>& subset) {
  if (subset.empty()) throw std::invalid_argument("generated_sublattice: empty generating set");
  std::set<int> members(subset.begin(), subset.end());
  std::vector<int> queue(members.begin(), members.end());
  while (!queue.empty()) {
    int x = queue.back();
    queue.pop_back();
    std::vector<int> snapshot(members.begin(), members.end());
    for (int y : snapshot) {
      for (int z : {l.meet(x, y), l.join(x, y)})
        if (members.insert(z).second) queue.push_back(z);
    }
  }

  Sublattice out;
  out.embedding.assign(members.begin(), members.end());
  int m = static_cast<int>(out.embedding.size());
  std::vector<bool> leq(static_cast<size_t>(m) * m, false);
  std::vector<std::string> labels(m);
  for (int i = 0; i < m; ++i) {
    labels[i] = l.label(out.embedding[i]);
    for (int j = 0; j < m; ++j) leq[static_cast<size_t>(i) * m + j] = l.leq(out.embedding[i], out.embedding[j]);
  }
  out.lattice = FiniteLattice::from_leq(m, leq, std::move(labels));
  return out;
}

Sublattice interval(const FiniteLattice& l, int a, int b) {
  if (!l.leq(a, b)) throw std::invalid_argument("interval: a is not below b");
  std::vector<int> elems;
  for (int x = 0; x < l.size(); ++x)
    if (l.leq(a, x) && l.leq(x, b)) elems.push_back(x);
  return generated_sublattice(l, elems);
}

bool covers(const FiniteLattice& l, int a, int b) {
  if (!l.leq(a, b) || a == b) return false;
  for (int z = 0; z < l.size(); ++z)
    if (z != a && z != b && l.leq(a, z) && l.leq(z, b)) return false;
  return true;
}

std::pair<int, int> find_cover_in_interval(const FiniteLattice& l, int a, int b) {
  if (!l.leq(a, b)) throw std::invalid_argument("find_cover_in_interval: a is not below b");
  if (a == b) throw std::invalid_argument("find_cover_in_interval: interval is trivial");
  for (int g = 0; g < l.size(); ++g) {
    if (!l.leq(a, g) || !l.leq(g, b)) continue;
    for (int h = 0; h < l.size(); ++h) {
      if (!l.leq(h, b)) continue;
      if (covers(l, g, h)) return {g, h};
    }
  }
  throw std::logic_error("finite interval without covering pair");  // unreachable
}

namespace {

// Iterated invariant refinement. Color ids are assigned by sorted key
// order so that isomorphic lattices get identical colorings regardless
// of element numbering.
std::vector<int> refine_colors(const FiniteLattice& l) {
  int n = l.size();
  std::vector<int> color(n);
  {
    std::map<std::tuple<int, int, int, int>, std::vector<int>> groups;
    for (int e = 0; e < n; ++e)
      groups[std::make_tuple(l.height(e), l.depth(e), static_cast<int>(l.upper_covers(e).size()),
                             static_cast<int>(l.lower_covers(e).size()))]
          .push_back(e);
    int id = 0;
    for (const auto& [key, elems] : groups) {
      for (int e : elems) color[e] = id;
      ++id;
    }
  }
  while (true) {
    std::map<std::tuple<int, std::vector<int>, std::vector<int>>, std::vector<int>> groups;
    for (int e = 0; e < n; ++e) {
      std::vector<int> up, down;
      for (int u : l.upper_covers(e)) up.push_back(color[u]);
      for (int d : l.lower_covers(e)) down.push_back(color[d]);
      std::sort(up.begin(), up.end());
      std::sort(down.begin(), down.end());
      groups[std::make_tuple(color[e], std::move(up), std::move(down))].push_back(e);
    }
    std::vector<int> fresh(n);
    int id = 0;
    for (const auto& [key, elems] : groups) {
      for (int e : elems) fresh[e] = id;
      ++id;
    }
    if (fresh == color) break;
    color = std::move(fresh);
  }
  return color;
}

bool extend_isomorphism(const FiniteLattice& l, const FiniteLattice& m, const std::vector<int>& cl,
                        const std::vector<int>& cm, std::vector<int>& map, std::vector<bool>& used,
                        int next) {
  int n = l.size();
  if (next == n) return true;
  for (int cand = 0; cand < n; ++cand) {
    if (used[cand] || cm[cand] != cl[next]) continue;
    bool ok = true;
    for (int prev = 0; prev < next && ok; ++prev) {
      if (l.leq(next, prev) != m.leq(cand, map[prev])) ok = false;
      if (l.leq(prev, next) != m.leq(map[prev], cand)) ok = false;
    }
    if (!ok) continue;
    map[next] = cand;
    used[cand] = true;
    if (extend_isomorphism(l, m, cl, cm, map, used, next + 1)) return true;
    used[cand] = false;
  }
  return false;
}

}  // namespace

std::optional<std::vector<int>> isomorphic(const FiniteLattice& l, const FiniteLattice& m) {
  if (l.size() != m.size()) return std::nullopt;
  int n = l.size();
  auto cl = refine_colors(l);
  auto cm = refine_colors(m);
  {
    auto a = cl, b = cm;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return std::nullopt;
  }
  std::vector<int> map(n, -1);
  std::vector<bool> used(n, false);
  if (!extend_isomorphism(l, m, cl, cm, map, used, 0)) return std::nullopt;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (map[l.meet(a, b)] != m.meet(map[a], map[b])) return std::nullopt;
      if (map[l.join(a, b)] != m.join(map[a], map[b])) return std::nullopt;
    }
  return map;
}

std::optional<std::vector<int>> isomorphic_by_labels(const FiniteLattice& l, const FiniteLattice& m) {
  if (l.size() != m.size()) return std::nullopt;
  int n = l.size();
  std::vector<int> map(n, -1);
  std::vector<bool> used(n, false);
  for (int e = 0; e < n; ++e) {
    auto target = m.find_label(l.label(e));
    if (!target || used[*target]) return std::nullopt;
    map[e] = *target;
    used[*target] = true;
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (l.leq(a, b) != m.leq(map[a], map[b])) return std::nullopt;
  return map;
}

std::string dot(const FiniteLattice& l, const std::string& name) {
  std::ostringstream out;
  out << "digraph \"" << name << "\" {\n";
  out << "  rankdir=BT;\n";
  out << "  node [shape=none, fontsize=11];\n";
  for (int e = 0; e < l.size(); ++e) {
    std::string label = l.label(e);
    std::string escaped;
    for (char ch : label) {
      if (ch == '"' || ch == '\\') escaped += '\\';
      escaped += ch;
    }
    out << "  n" << e << " [label=\"" << escaped << "\"];\n";
  }
  int max_h = 0;
  for (int e = 0; e < l.size(); ++e) max_h = std::max(max_h, l.height(e));
  for (int h = 0; h <= max_h; ++h) {
    std::vector<int> level;
    for (int e = 0; e < l.size(); ++e)
      if (l.height(e) == h) level.push_back(e);
    if (level.size() < 2) continue;
    out << "  { rank=same;";
    for (int e : level) out << " n" << e << ";";
    out << " }\n";
  }
  for (auto [a, b] : l.cover_pairs()) out << "  n" << a << " -> n" << b << ";\n";
  out << "}\n";
  return out.str();
}

std::optional<int> ConLattice::index_of(const Congruence& c) const {
  auto it = std::lower_bound(congruences.begin(), congruences.end(), c);
  if (it == congruences.end() || !(*it == c)) return std::nullopt;
  return static_cast<int>(it - congruences.begin());
}

ConLattice close_partitions(std::vector<Congruence> gens, long long max_lattice) {
  if (gens.empty()) throw std::invalid_argument("empty generating set");
  std::set<Congruence> members(gens.begin(), gens.end());
  std::vector<Congruence> queue(members.begin(), members.end());
  while (!queue.empty()) {
    Congruence x = std::move(queue.back());
    queue.pop_back();
    std::vector<Congruence> snapshot(members.begin(), members.end());
    for (const auto& y : snapshot) {
      for (Congruence z : {meet(x, y), join(x, y)}) {
        if (members.insert(z).second) {
          if (static_cast<long long>(members.size()) > max_lattice)
            throw LimitError("lattice closure exceeds bound " + std::to_string(max_lattice));
          queue.push_back(std::move(z));
        }
      }
    }
  }

  ConLattice out;
  out.congruences.assign(members.begin(), members.end());
  int m = static_cast<int>(out.congruences.size());
  std::vector<bool> leq(static_cast<size_t>(m) * m, false);
  std::vector<std::string> labels(m);
  for (int i = 0; i < m; ++i) {
    labels[i] = format_partition(out.congruences[i]);
    for (int j = 0; j < m; ++j)
      leq[static_cast<size_t>(i) * m + j] = refines(out.congruences[i], out.congruences[j]);
  }
  out.lattice = FiniteLattice::from_leq(m, leq, std::move(labels));
  return out;
}

ConLattice lattice_of_congruences(const FiniteAlgebra& a, const std::vector<Congruence>& gens,
                                  long long max_lattice) {
  for (const auto& g : gens) {
    if (g.size() != a.size) throw std::invalid_argument("generator size does not match algebra");
    if (!is_congruence(a, g)) throw std::invalid_argument("generator is not a congruence of the algebra");
  }
  return close_partitions(gens, max_lattice);
}

}  // namespace conlat
