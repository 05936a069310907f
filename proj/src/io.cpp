#include "cubemill/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "cubemill/errors.hpp"

namespace cubemill {

using nlohmann::json;

namespace {

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // count lines up to the reported byte
    std::size_t line = 1;
    for (std::size_t i = 0; i < e.byte && i < text.size(); ++i) line += text[i] == '\n';
    fail(ErrorCode::ParseError, "line " + std::to_string(line) + ": malformed JSON");
  }
}

VertexId vertex_of(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(ErrorCode::ParseError, "field " + where + ": expected an integer vertex id");
  return j.get<VertexId>();
}

VertexId vertex_key(const std::string& key) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(key, &used);
    if (used == key.size()) return v;
  } catch (const std::exception&) {
  }
  fail(ErrorCode::ParseError, "field labels: key '" + key + "' is not a vertex id");
}

}  // namespace

ComplexFile parse_complex_file(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object()) fail(ErrorCode::ParseError, "top level: expected an object");
  ComplexFile out;
  if (!j.contains("kind") || !j["kind"].is_string()) fail(ErrorCode::ParseError, "field kind: missing or not a string");
  const auto kind = j["kind"].get<std::string>();
  if (kind == "cubical") out.kind = ComplexKind::Cubical;
  else if (kind == "simplicial") out.kind = ComplexKind::Simplicial;
  else fail(ErrorCode::ParseError, "field kind: unknown kind '" + kind + "'");
  if (!j.contains("cells") || !j["cells"].is_array()) fail(ErrorCode::ParseError, "field cells: missing or not an array");
  for (std::size_t i = 0; i < j["cells"].size(); ++i) {
    const json& c = j["cells"][i];
    const std::string where = "cells[" + std::to_string(i) + "]";
    if (!c.is_array()) fail(ErrorCode::ParseError, "field " + where + ": expected an array");
    std::vector<VertexId> cell;
    for (std::size_t k = 0; k < c.size(); ++k) cell.push_back(vertex_of(c[k], where + "[" + std::to_string(k) + "]"));
    out.cells.push_back(std::move(cell));
  }
  return out;
}

CellComplex parse_complex(const std::string& text) {
  auto f = parse_complex_file(text);
  return CellComplex::from_cells(f.kind, std::move(f.cells));
}

std::string serialize_complex(const CellComplex& k) {
  json j;
  j["kind"] = to_string(k.kind());
  j["cells"] = k.maximal_corner_lists();
  return j.dump() + "\n";
}

Folding parse_folding(const std::string& text, ComplexKind kind, int target_dim) {
  const json j = parse_json(text);
  if (!j.is_object() || !j.contains("labels") || !j["labels"].is_object())
    fail(ErrorCode::ParseError, "field labels: missing or not an object");
  Folding f;
  f.kind = kind;
  f.target_dim = target_dim;
  for (const auto& [key, value] : j["labels"].items()) {
    const VertexId v = vertex_key(key);
    std::uint32_t label = 0;
    if (value.is_number_unsigned() || value.is_number_integer()) {
      label = value.get<std::uint32_t>();
    } else if (value.is_array() && kind == ComplexKind::Cubical) {
      if (static_cast<int>(value.size()) != target_dim)
        fail(ErrorCode::ParseError, "field labels." + key + ": expected " + std::to_string(target_dim) + " coordinates");
      for (std::size_t i = 0; i < value.size(); ++i) {
        if (!value[i].is_number_integer() || (value[i] != 0 && value[i] != 1))
          fail(ErrorCode::ParseError, "field labels." + key + ": coordinates must be 0 or 1");
        label |= value[i].get<std::uint32_t>() << i;
      }
    } else {
      fail(ErrorCode::ParseError, "field labels." + key + ": bad label");
    }
    f.labels[v] = label;
  }
  return f;
}

std::string serialize_folding(const Folding& f) {
  // keys sorted numerically, so the object is written by hand
  std::ostringstream out;
  out << "{\"labels\":{";
  bool first = true;
  for (const auto& [v, label] : f.labels) {
    out << (first ? "" : ",") << '"' << v << "\":";
    first = false;
    if (f.kind == ComplexKind::Simplicial) {
      out << label;
      continue;
    }
    out << '[';
    for (int i = 0; i < f.target_dim; ++i) out << (i ? "," : "") << ((label >> i) & 1u);
    out << ']';
  }
  out << "}}\n";
  return out.str();
}

std::string serialize_dual(const DualComplex& d) {
  std::ostringstream out;
  json cells = d.cubes().maximal_corner_lists();
  out << "{\"kind\":\"cubical\",\"cells\":" << cells.dump() << ",\"heights\":{";
  for (std::size_t v = 0; v < d.vertex_count(); ++v)
    out << (v ? "," : "") << '"' << v << "\":" << d.height(static_cast<VertexId>(v));
  out << "}}\n";
  return out.str();
}

EdgePath parse_loop(const std::string& text) {
  EdgePath p;
  std::stringstream in(text);
  std::string item;
  std::size_t field = 0;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      p.v.push_back(std::stoll(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      fail(ErrorCode::ParseError, "loop entry " + std::to_string(field) + ": '" + item + "' is not a vertex id");
    }
    ++field;
  }
  if (p.v.empty()) fail(ErrorCode::ParseError, "loop: empty");
  return p;
}

std::string format_path(const EdgePath& p) {
  std::string s;
  for (std::size_t i = 0; i < p.v.size(); ++i) s += (i ? "," : "") + std::to_string(p.v[i]);
  return s;
}

namespace {

std::string join(const std::vector<VertexId>& v) { return format_path(EdgePath{v}); }

void write_node(const ContractionNode& node, std::ostream& out) {
  out << "node " << format_path(node.loop) << '\n';
  for (const Move& m : node.moves) {
    out << to_string(m.kind) << ' ' << m.index;
    if (m.kind == MoveKind::SquareSlide) out << ' ' << m.replacement << ' ' << join(m.square);
    if (m.kind == MoveKind::InsertDetour) out << ' ' << join(m.detour);
    out << '\n';
  }
  if (node.split) out << "split " << *node.split << '\n';
  for (const auto& c : node.children) write_node(c, out);
  out << "end\n";
}

struct LineReader {
  std::vector<std::string> lines;
  std::size_t at = 0;

  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorCode::ParseError, "line " + std::to_string(at) + ": " + what);
  }
  bool next(std::string& word, std::istringstream& rest) {
    while (at < lines.size()) {
      const std::string& l = lines[at++];
      if (l.empty() || l[0] == '#') continue;
      rest = std::istringstream(l);
      rest >> word;
      return true;
    }
    return false;
  }
};

std::size_t read_index(LineReader& r, std::istringstream& in) {
  long long k = -1;
  if (!(in >> k) || k < 0) r.error("expected a non-negative index");
  return static_cast<std::size_t>(k);
}

std::vector<VertexId> read_list(LineReader& r, std::istringstream& in) {
  std::string s;
  if (!(in >> s)) r.error("expected a vertex list");
  try {
    return parse_loop(s).v;
  } catch (const Error&) {
    r.error("bad vertex list '" + s + "'");
  }
}

ContractionNode read_node(LineReader& r, std::istringstream& head) {
  ContractionNode node;
  node.loop.v = read_list(r, head);
  std::string word;
  std::istringstream in;
  while (r.next(word, in)) {
    if (word == "end") {
      if (node.split && node.children.size() != 2) r.error("split node needs two children");
      return node;
    }
    if (word == "node") {
      if (!node.split) r.error("child node before split");
      node.children.push_back(read_node(r, in));
      continue;
    }
    if (node.split) r.error("move after split");
    if (word == "split") {
      node.split = read_index(r, in);
      continue;
    }
    Move m;
    if (word == "rotate") m.kind = MoveKind::Rotate;
    else if (word == "backtrack") m.kind = MoveKind::BacktrackRemoval;
    else if (word == "slide") m.kind = MoveKind::SquareSlide;
    else if (word == "insert") m.kind = MoveKind::InsertDetour;
    else r.error("unknown keyword '" + word + "'");
    m.index = read_index(r, in);
    if (m.kind == MoveKind::SquareSlide) {
      long long w = 0;
      if (!(in >> w)) r.error("slide needs a replacement vertex");
      m.replacement = w;
      m.square = read_list(r, in);
    }
    if (m.kind == MoveKind::InsertDetour) m.detour = read_list(r, in);
    node.moves.push_back(std::move(m));
  }
  r.error("missing end");
}

}  // namespace

std::string serialize_contraction(const ContractionNode& node) {
  std::ostringstream out;
  write_node(node, out);
  return out.str();
}

ContractionNode parse_contraction(const std::string& text) {
  LineReader r;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) r.lines.push_back(l);
  std::string word;
  std::istringstream rest;
  if (!r.next(word, rest) || word != "node") r.error("expected 'node'");
  auto node = read_node(r, rest);
  if (r.next(word, rest)) r.error("trailing content");
  return node;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::InvalidArgument, "cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) fail(ErrorCode::InvalidArgument, "cannot write " + path);
}

}  // namespace cubemill
