#include "conlat/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace conlat {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

struct LineReader {
  std::istream& in;
  int line_no = 0;

  bool next(std::string& out) {
    std::string raw;
    while (std::getline(in, raw)) {
      ++line_no;
      std::string t = trim(raw);
      if (t.empty() || t[0] == '#') continue;
      out = t;
      return true;
    }
    return false;
  }
};

}  // namespace

FiniteAlgebra parse_algebra(std::istream& in) {
  LineReader rd{in};
  std::string line;

  if (!rd.next(line) || line.rfind("algebra", 0) != 0)
    throw ParseError(rd.line_no, "expected 'algebra <name>'");
  FiniteAlgebra a;
  a.name = trim(line.substr(7));
  if (a.name.empty()) throw ParseError(rd.line_no, "algebra name missing");

  if (!rd.next(line) || line.rfind("size", 0) != 0)
    throw ParseError(rd.line_no, "expected 'size <n>'");
  try {
    a.size = std::stoi(trim(line.substr(4)));
  } catch (const std::exception&) {
    throw ParseError(rd.line_no, "bad size value");
  }
  if (a.size <= 0) throw ParseError(rd.line_no, "size must be positive");

  while (rd.next(line)) {
    if (line == "end") {
      a.validate();
      return a;
    }
    if (line.rfind("op", 0) != 0) throw ParseError(rd.line_no, "expected 'op <name> <arity>' or 'end'");
    std::istringstream hdr(line);
    std::string kw;
    Operation op;
    hdr >> kw >> op.name >> op.arity;
    if (hdr.fail() || op.name.empty() || op.arity < 0)
      throw ParseError(rd.line_no, "bad operation header");

    long long expect = 1;
    for (int i = 0; i < op.arity; ++i) {
      expect *= a.size;
      if (expect > kMaxTableEntries) throw ParseError(rd.line_no, "operation table too large");
    }
    while (static_cast<long long>(op.table.size()) < expect) {
      if (!rd.next(line)) throw ParseError(rd.line_no, "unexpected end of file inside operation table");
      if (line == "endop") break;
      std::istringstream row(line);
      long long v;
      while (row >> v) {
        if (v < 1 || v > a.size)
          throw ParseError(rd.line_no, "table entry " + std::to_string(v) + " out of range 1.." +
                                           std::to_string(a.size));
        op.table.push_back(static_cast<int>(v - 1));
      }
      std::string rest;
      row.clear();
      row >> rest;
      if (!rest.empty()) throw ParseError(rd.line_no, "unexpected token '" + rest + "' in table");
    }
    if (static_cast<long long>(op.table.size()) != expect)
      throw ParseError(rd.line_no, "operation " + op.name + ": expected " + std::to_string(expect) +
                                       " table entries, got " + std::to_string(op.table.size()));
    if (!rd.next(line) || line != "endop") throw ParseError(rd.line_no, "expected 'endop'");
    a.ops.push_back(std::move(op));
  }
  throw ParseError(rd.line_no, "unexpected end of file, missing 'end'");
}

FiniteAlgebra parse_algebra(const std::string& text) {
  std::istringstream in(text);
  return parse_algebra(in);
}

FiniteAlgebra load_algebra(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open algebra file: " + path);
  return parse_algebra(in);
}

std::string emit_algebra(const FiniteAlgebra& a) {
  std::ostringstream out;
  out << "algebra " << a.name << "\n";
  out << "size " << a.size << "\n";
  for (const auto& op : a.ops) {
    out << "op " << op.name << " " << op.arity << "\n";
    int per_line = op.arity >= 1 ? a.size : 1;
    for (size_t i = 0; i < op.table.size(); ++i) {
      out << op.table[i] + 1;
      out << ((static_cast<int>(i) % per_line == per_line - 1) ? "\n" : " ");
    }
    if (!op.table.empty() && static_cast<int>(op.table.size()) % per_line != 0) out << "\n";
    out << "endop\n";
  }
  out << "end\n";
  return out.str();
}

Congruence parse_partition(const std::string& text, int n) {
  std::string t = trim(text);
  if (t.empty()) throw ParseError("empty partition literal");
  if (t.front() != '|' || t.back() != '|')
    throw ParseError("partition literal must start and end with '|': " + text);

  std::vector<int> rep(n);
  for (int e = 0; e < n; ++e) rep[e] = e;
  std::vector<bool> seen(n, false);

  size_t pos = 1;
  while (pos < t.size()) {
    size_t bar = t.find('|', pos);
    if (bar == std::string::npos) bar = t.size();
    std::string block = trim(t.substr(pos, bar - pos));
    pos = bar + 1;
    if (block.empty()) continue;

    std::vector<int> members;
    std::istringstream bs(block);
    std::string item;
    while (std::getline(bs, item, ',')) {
      item = trim(item);
      if (item.empty()) throw ParseError("empty element in partition block: " + text);
      int v;
      try {
        v = std::stoi(item);
      } catch (const std::exception&) {
        throw ParseError("bad element '" + item + "' in partition literal");
      }
      if (v < 1 || v > n)
        throw ParseError("partition element " + std::to_string(v) + " out of range 1.." +
                         std::to_string(n));
      if (seen[v - 1])
        throw ParseError("element " + std::to_string(v) + " appears in two blocks");
      seen[v - 1] = true;
      members.push_back(v - 1);
    }
    int least = *std::min_element(members.begin(), members.end());
    for (int m : members) rep[m] = least;
  }
  return Congruence::from_block_map(rep);
}

std::string format_partition(const Congruence& c) {
  std::string out = "|";
  for (const auto& block : c.blocks()) {
    if (block.size() < 2) continue;
    for (size_t i = 0; i < block.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(block[i] + 1);
    }
    out += "|";
  }
  return out;
}

std::string format_pair(const FiniteAlgebra& a, int x, int y) {
  return "(" + a.elem_name(x) + "," + a.elem_name(y) + ")";
}

}  // namespace conlat
