#include "hurwitz/tree_io.hpp"

#include <climits>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace hurwitz::io {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void syntax(const std::string& where, const std::string& msg) {
  throw Error(ErrorCode::SyntaxError, where + ": " + msg);
}

std::string line_col(const std::string& text, size_t byte) {
  size_t line = 1, col = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

long get_int(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) syntax(where, "missing field '" + key + "'");
  const json& v = obj.at(key);
  if (v.is_number_unsigned()) {
    if (v.get<std::uint64_t>() > static_cast<std::uint64_t>(LONG_MAX))
      throw Error(ErrorCode::OutOfRange, where + "/" + key + ": integer does not fit in 64 bits");
    return static_cast<long>(v.get<std::uint64_t>());
  }
  if (v.is_number_integer()) return v.get<long>();
  if (v.is_number_float()) {
    // integers beyond 64 bits arrive as doubles
    if (std::fabs(v.get<double>()) >= 9.2e18)
      throw Error(ErrorCode::OutOfRange, where + "/" + key + ": integer does not fit in 64 bits");
    syntax(where + "/" + key, "expected an exact integer");
  }
  syntax(where + "/" + key, "expected an integer");
}

std::string get_string(const json& obj, const std::string& key, const std::string& where, bool required = true) {
  if (!obj.contains(key)) {
    if (required) syntax(where, "missing field '" + key + "'");
    return {};
  }
  const json& v = obj.at(key);
  if (!v.is_string()) syntax(where + "/" + key, "expected a string");
  return v.get<std::string>();
}

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

TreeDocument parse_tree_file(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    std::string msg = e.what();
    auto pos = msg.find("syntax error");
    syntax(line_col(text, e.byte == 0 ? 0 : e.byte - 1), pos == std::string::npos ? msg : msg.substr(pos));
  }
  if (!j.is_object()) syntax("/", "expected an object");
  static const std::set<std::string> top_keys{"p", "N", "d0", "root", "vertices", "edges", "notes"};
  for (const auto& [k, v] : j.items())
    if (!top_keys.count(k)) syntax("/" + k, "unknown field");

  TreeDocument doc;
  doc.p = get_int(j, "p", "");
  doc.N = get_int(j, "N", "");
  doc.d0 = get_int(j, "d0", "");
  if (!is_prime(doc.p) || doc.p > (1 << 20)) throw Error(ErrorCode::OutOfRange, "/p: not a supported prime");
  if (doc.N < 1) throw Error(ErrorCode::OutOfRange, "/N: must be positive");
  doc.root = get_string(j, "root", "");

  if (!j.contains("vertices") || !j["vertices"].is_array()) syntax("/vertices", "expected an array of strings");
  std::set<std::string> seen;
  for (size_t i = 0; i < j["vertices"].size(); ++i) {
    const json& v = j["vertices"][i];
    std::string where = "/vertices/" + std::to_string(i);
    if (!v.is_string()) syntax(where, "expected a string");
    std::string id = v.get<std::string>();
    if (!seen.insert(id).second) throw Error(ErrorCode::DuplicateId, where + ": vertex '" + id + "' repeated");
    doc.vertices.push_back(id);
  }
  if (!seen.count(doc.root)) throw Error(ErrorCode::DanglingEdge, "/root: '" + doc.root + "' is not a declared vertex");

  if (!j.contains("edges") || !j["edges"].is_array()) syntax("/edges", "expected an array of objects");
  static const std::set<std::string> edge_keys{"id", "from", "to", "eps", "m", "h", "note"};
  std::set<std::string> edge_ids;
  for (size_t i = 0; i < j["edges"].size(); ++i) {
    const json& e = j["edges"][i];
    std::string where = "/edges/" + std::to_string(i);
    if (!e.is_object()) syntax(where, "expected an object");
    for (const auto& [k, v] : e.items())
      if (!edge_keys.count(k)) syntax(where + "/" + k, "unknown field");
    DocEdge d;
    d.id = get_string(e, "id", where, false);
    d.from = get_string(e, "from", where);
    d.to = get_string(e, "to", where);
    d.eps = get_int(e, "eps", where);
    d.m = get_int(e, "m", where);
    d.h = get_int(e, "h", where);
    d.note = get_string(e, "note", where, false);
    if (!seen.count(d.from)) throw Error(ErrorCode::DanglingEdge, where + "/from: unknown vertex '" + d.from + "'");
    if (!seen.count(d.to)) throw Error(ErrorCode::DanglingEdge, where + "/to: unknown vertex '" + d.to + "'");
    if (d.eps < 0) throw Error(ErrorCode::OutOfRange, where + "/eps: must be nonnegative");
    std::string key = d.id.empty() ? d.from + "->" + d.to : d.id;
    if (!edge_ids.insert(key).second) throw Error(ErrorCode::DuplicateId, where + ": edge '" + key + "' repeated");
    if (d.h < 0 || d.h >= doc.p) {
      long r = d.h % doc.p;
      if (r < 0) r += doc.p;
      doc.warnings.push_back(where + "/h: " + std::to_string(d.h) + " reduced to " + std::to_string(r) + " mod p");
      d.h = r;
    }
    doc.edges.push_back(std::move(d));
  }
  if (j.contains("notes")) {
    const json& n = j["notes"];
    if (!n.is_array()) syntax("/notes", "expected an array of strings");
    for (size_t i = 0; i < n.size(); ++i) {
      if (!n[i].is_string()) syntax("/notes/" + std::to_string(i), "expected a string");
      doc.notes.push_back(n[i].get<std::string>());
    }
  }
  return doc;
}

TreeDocument read_tree_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_tree_file(ss.str());
}

std::string serialize(const TreeDocument& doc) {
  ordered_json j;
  j["p"] = doc.p;
  j["N"] = doc.N;
  j["d0"] = doc.d0;
  j["root"] = doc.root;
  j["vertices"] = doc.vertices;
  j["edges"] = ordered_json::array();
  for (const auto& e : doc.edges) {
    ordered_json o;
    if (!e.id.empty()) o["id"] = e.id;
    o["from"] = e.from;
    o["to"] = e.to;
    o["eps"] = e.eps;
    o["m"] = e.m;
    o["h"] = e.h;
    if (!e.note.empty()) o["note"] = e.note;
    j["edges"].push_back(std::move(o));
  }
  if (!doc.notes.empty()) j["notes"] = doc.notes;
  return j.dump(2) + "\n";
}

tree::HurwitzTree to_tree(const TreeDocument& doc) {
  std::vector<tree::Edge> edges;
  for (const auto& e : doc.edges) edges.push_back({e.id, e.from, e.to, e.eps, e.m, e.h});
  return tree::HurwitzTree(static_cast<int>(doc.p), doc.N, doc.d0, doc.root, doc.vertices, std::move(edges));
}

TreeDocument from_tree(const tree::HurwitzTree& t) {
  TreeDocument doc;
  doc.p = t.p();
  doc.N = t.N();
  doc.d0 = t.d0();
  doc.root = t.root();
  doc.vertices = t.vertices();
  for (size_t k = 0; k < t.edges().size(); ++k) {
    const auto& e = t.edges()[k];
    doc.edges.push_back({e.id, e.from, e.to, e.eps, e.m, e.h, ""});
    auto r = t.reverse_records().find(k);
    if (r != t.reverse_records().end()) {
      const auto& o = r->second;
      doc.edges.push_back({o.id, o.from, o.to, o.eps, o.m, o.h, ""});
    }
  }
  return doc;
}

std::string to_dot(const tree::HurwitzTree& t) {
  std::ostringstream os;
  os << "digraph hurwitz {\n";
  for (const auto& v : t.vertices()) {
    os << "  " << json(v).dump() << " [label=" << json(v + "\nd=" + std::to_string(tree::differente(t, v))).dump()
       << (v == t.root() ? ", shape=box" : "") << "];\n";
  }
  for (const auto& e : t.edges()) {
    os << "  " << json(e.from).dump() << " -> " << json(e.to).dump() << " [label="
       << json(e.id + " eps=" + std::to_string(e.eps) + " m=" + std::to_string(e.m) + " h=" + std::to_string(e.h)).dump()
       << (tree::is_leaf(e) ? ", style=dashed" : "") << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace hurwitz::io
