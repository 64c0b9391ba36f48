#include "conlat/catalog.hpp"

#include <algorithm>
#include <cctype>

namespace conlat {

namespace {

FiniteLattice build_n5() {
  // 0 < gamma < alpha < delta on one side, 0 < beta < delta on the other.
  return FiniteLattice::from_covers(
      5, {{0, 1}, {1, 2}, {2, 4}, {0, 3}, {3, 4}}, {"0", "gamma", "alpha", "beta", "delta"});
}

FiniteLattice build_m3() {
  return FiniteLattice::from_covers(5, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}},
                                    {"eta", "alpha", "beta", "gamma", "delta"});
}

FiniteLattice build_l14() {
  // Nine elements arising from duplicating a pentagon over gamma: the two
  // projection kernels, both beta lifts, and the identified gamma/alpha/
  // delta lifts.
  std::vector<std::string> labels = {"0",       "eta_0",  "eta_1",  "beta_0^beta_1", "gamma_0",
                                     "beta_0",  "beta_1", "alpha_0", "delta_0"};
  std::vector<std::pair<int, int>> covers = {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {1, 5},
                                             {3, 5}, {2, 6}, {3, 6}, {4, 7}, {7, 8}, {5, 8},
                                             {6, 8}};
  return FiniteLattice::from_covers(9, covers, labels);
}

FiniteLattice build_m1() {
  std::vector<std::string> labels = {"0",       "eta_0",          "eta_1",  "gamma_0^gamma_1",
                                     "gamma_0", "gamma_1",        "alpha_0^alpha_1", "beta_0",
                                     "alpha_0", "alpha_1",        "delta_0"};
  std::vector<std::pair<int, int>> covers = {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {1, 7}, {2, 5},
                                             {2, 7}, {3, 4}, {3, 5}, {3, 6}, {4, 8}, {5, 9},
                                             {6, 8}, {6, 9}, {7, 10}, {8, 10}, {9, 10}};
  return FiniteLattice::from_covers(11, covers, labels);
}

FiniteLattice build_k() {
  std::vector<std::string> labels = {"0",
                                     "eta_0",
                                     "eta_1",
                                     "gamma_0^gamma_1",
                                     "gamma_0^alpha_1",
                                     "alpha_0^gamma_1",
                                     "theta",
                                     "alpha_0^alpha_1",
                                     "gamma_0",
                                     "gamma_1",
                                     "beta_0",
                                     "alpha_0",
                                     "alpha_1",
                                     "delta_0"};
  std::vector<std::pair<int, int>> covers = {
      {0, 1},  {0, 2},  {0, 3},  {3, 4},  {3, 5},  {4, 6},  {4, 8},  {5, 6},   {5, 9},
      {6, 7},  {7, 11}, {7, 12}, {1, 8},  {1, 10}, {2, 9},  {2, 10}, {8, 11},  {9, 12},
      {10, 13}, {11, 13}, {12, 13}};
  return FiniteLattice::from_covers(14, covers, labels);
}

FiniteLattice build_d1() {
  // The filter of M1 above gamma_0^gamma_1.
  std::vector<std::string> labels = {"gamma_0^gamma_1", "gamma_0", "gamma_1", "alpha_0^alpha_1",
                                     "alpha_0",         "alpha_1", "delta_0"};
  std::vector<std::pair<int, int>> covers = {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {3, 4},
                                             {3, 5}, {2, 5}, {4, 6}, {5, 6}};
  return FiniteLattice::from_covers(7, covers, labels);
}

// Two diamonds stacked loosely: the top edge of each copy covers the
// bottom edge of the next instead of being identified with it.
FiniteLattice build_loose_chain(const std::string& glue) {
  int copies = static_cast<int>(glue.size()) + 1;
  int n = 5 * copies;
  std::vector<std::string> labels(n);
  std::vector<std::pair<int, int>> covers;
  auto id = [&](int copy, int off) { return 5 * copy + off; };  // off: 0=eta 1=alpha 2=beta 3=gamma 4=delta
  for (int c = 0; c < copies; ++c) {
    std::string suffix = "_" + std::to_string(c + 1);
    labels[id(c, 0)] = "eta" + suffix;
    labels[id(c, 1)] = "alpha" + suffix;
    labels[id(c, 2)] = "beta" + suffix;
    labels[id(c, 3)] = "gamma" + suffix;
    labels[id(c, 4)] = "delta" + suffix;
    for (int a = 1; a <= 3; ++a) {
      covers.emplace_back(id(c, 0), id(c, a));
      covers.emplace_back(id(c, a), id(c, 4));
    }
  }
  for (int c = 0; c + 1 < copies; ++c) {
    if (glue[c] == 'R') {
      covers.emplace_back(id(c, 3), id(c + 1, 0));  // gamma_c < eta_{c+1}
      covers.emplace_back(id(c, 4), id(c + 1, 1));  // delta_c < alpha_{c+1}
    } else {
      covers.emplace_back(id(c, 1), id(c + 1, 0));  // alpha_c < eta_{c+1}
      covers.emplace_back(id(c, 4), id(c + 1, 3));  // delta_c < gamma_{c+1}
    }
  }
  return FiniteLattice::from_covers(n, covers, labels);
}

// Chain of diamonds glued edge to edge. Letter i says how copy i+1 sits on
// copy i: 'R' identifies the gamma/top edge with the new eta/alpha edge,
// 'L' identifies the alpha/top edge with the new eta/gamma edge.
FiniteLattice build_glued_chain(const std::string& glue) {
  for (char c : glue)
    if (c != 'L' && c != 'R') throw std::invalid_argument("glue string may only contain L and R");

  std::vector<std::string> labels = {"eta", "alpha_1", "beta_1", "gamma_1", ""};
  std::vector<std::pair<int, int>> covers = {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}};
  int top = 4, alpha_top = 1, gamma_top = 3;

  int copy = 2;
  for (char move : glue) {
    std::string suffix = "_" + std::to_string(copy);
    int b = static_cast<int>(labels.size());
    labels.push_back("beta" + suffix);
    int o = b + 1;  // the new off-side atom
    int t = b + 2;
    if (move == 'R') {
      labels[top] = "alpha" + suffix;
      labels.push_back("gamma" + suffix);
      labels.emplace_back();
      covers.emplace_back(gamma_top, b);
      covers.emplace_back(gamma_top, o);
      covers.emplace_back(top, t);
      covers.emplace_back(b, t);
      covers.emplace_back(o, t);
      alpha_top = top;
      gamma_top = o;
    } else {
      labels[top] = "gamma" + suffix;
      labels.push_back("alpha" + suffix);
      labels.emplace_back();
      covers.emplace_back(alpha_top, b);
      covers.emplace_back(alpha_top, o);
      covers.emplace_back(top, t);
      covers.emplace_back(b, t);
      covers.emplace_back(o, t);
      gamma_top = top;
      alpha_top = o;
    }
    top = t;
    ++copy;
  }
  labels[top] = "delta";
  return FiniteLattice::from_covers(static_cast<int>(labels.size()), covers, labels);
}

}  // namespace

std::string rod_glue_string(int n) { return std::string(n - 1, 'R'); }

std::string snake_glue_string(int n) {
  std::string s;
  for (int i = 0; i < n - 1; ++i) s += (i % 2 == 0 ? 'R' : 'L');
  return s;
}

ShapeId ShapeId::parse(const std::string& text) {
  ShapeId s;
  if (text == "N5") return s.tag = Tag::N5, s;
  if (text == "M3") return s.tag = Tag::M3, s;
  if (text == "M1") return s.tag = Tag::M1, s;
  if (text == "K") return s.tag = Tag::K, s;
  if (text == "L14") return s.tag = Tag::L14, s;
  if (text == "M33") return s.tag = Tag::M33, s;
  if (text == "M33*") return s.tag = Tag::M33Star, s;
  if (text == "D1") return s.tag = Tag::D1, s;
  if (text == "D2") return s.tag = Tag::D2, s;
  if (text.rfind("G:", 0) == 0) {
    s.tag = Tag::Glue;
    s.glue = text.substr(2);
    for (char c : s.glue)
      if (c != 'L' && c != 'R') throw std::invalid_argument("bad shape: " + text);
    s.n = static_cast<int>(s.glue.size()) + 1;
    return s;
  }
  if (!text.empty() && (text[0] == 'R' || text[0] == 'S')) {
    std::string rest = text.substr(1);
    bool star = !rest.empty() && rest.back() == '*';
    if (star) rest.pop_back();
    if (!rest.empty() && std::all_of(rest.begin(), rest.end(), [](unsigned char c) { return std::isdigit(c); })) {
      s.n = std::stoi(rest);
      if (s.n < 1) throw std::invalid_argument("bad shape: " + text);
      if (text[0] == 'R')
        s.tag = star ? Tag::RodStar : Tag::Rod;
      else
        s.tag = star ? Tag::SnakeStar : Tag::Snake;
      return s;
    }
  }
  throw std::invalid_argument("unknown shape: " + text);
}

std::string ShapeId::to_string() const {
  switch (tag) {
    case Tag::N5: return "N5";
    case Tag::M3: return "M3";
    case Tag::M1: return "M1";
    case Tag::K: return "K";
    case Tag::L14: return "L14";
    case Tag::M33: return "M33";
    case Tag::M33Star: return "M33*";
    case Tag::D1: return "D1";
    case Tag::D2: return "D2";
    case Tag::Rod: return "R" + std::to_string(n);
    case Tag::Snake: return "S" + std::to_string(n);
    case Tag::RodStar: return "R" + std::to_string(n) + "*";
    case Tag::SnakeStar: return "S" + std::to_string(n) + "*";
    case Tag::Glue: return "G:" + glue;
  }
  return "?";
}

FiniteLattice build_shape(const ShapeId& shape, const CatalogOptions& opts) {
  switch (shape.tag) {
    case ShapeId::Tag::N5: return build_n5();
    case ShapeId::Tag::M3: return build_m3();
    case ShapeId::Tag::M1: return build_m1();
    case ShapeId::Tag::K: return build_k();
    case ShapeId::Tag::L14: return build_l14();
    case ShapeId::Tag::M33: return build_glued_chain("R");
    case ShapeId::Tag::M33Star: return build_loose_chain("R");
    case ShapeId::Tag::D1: return build_d1();
    case ShapeId::Tag::D2: return dual(build_d1());
    case ShapeId::Tag::Rod: return build_glued_chain(rod_glue_string(shape.n));
    case ShapeId::Tag::Snake: return build_glued_chain(snake_glue_string(shape.n));
    case ShapeId::Tag::RodStar:
    case ShapeId::Tag::SnakeStar: {
      if (shape.n > 2 && !opts.allow_loose_families)
        throw std::invalid_argument(
            shape.to_string() +
            ": loosely glued families beyond n=2 are an extrapolation; pass --loose to build them");
      std::string g = shape.tag == ShapeId::Tag::RodStar ? rod_glue_string(shape.n)
                                                         : snake_glue_string(shape.n);
      return build_loose_chain(g);
    }
    case ShapeId::Tag::Glue: return build_glued_chain(shape.glue);
  }
  throw std::invalid_argument("unknown shape tag");
}

FiniteLattice build_shape(const std::string& text, const CatalogOptions& opts) {
  return build_shape(ShapeId::parse(text), opts);
}

FiniteLattice dual(const FiniteLattice& l) {
  int n = l.size();
  std::vector<bool> leq(static_cast<size_t>(n) * n, false);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (l.leq(b, a)) leq[static_cast<size_t>(a) * n + b] = true;
  return FiniteLattice::from_leq(n, leq, l.labels());
}

}  // namespace conlat
