#pragma once

// Tree documents: JSON text <-> TreeDocument <-> HurwitzTree.

#include <string>
#include <vector>

#include "hurwitz/hurwitz_tree.hpp"

namespace hurwitz::io {

struct DocEdge {
  std::string id;  // optional in the file
  std::string from;
  std::string to;
  long eps = 0;
  long m = 0;
  long h = 0;
  std::string note;  // optional free text
  bool operator==(const DocEdge&) const = default;
};

struct TreeDocument {
  long p = 0;
  long N = 0;
  long d0 = 0;
  std::string root;
  std::vector<std::string> vertices;
  std::vector<DocEdge> edges;
  std::vector<std::string> notes;
  /// Load-time diagnostics such as reduced h values; not serialized.
  std::vector<std::string> warnings;

  bool operator==(const TreeDocument& o) const {
    return p == o.p && N == o.N && d0 == o.d0 && root == o.root && vertices == o.vertices && edges == o.edges &&
           notes == o.notes;
  }
};

/// Throws SyntaxError (with line:column or a JSON path), DuplicateId,
/// DanglingEdge or OutOfRange. h is reduced mod p with a warning.
TreeDocument parse_tree_file(const std::string& text);
TreeDocument read_tree_file(const std::string& path);
std::string serialize(const TreeDocument& doc);

tree::HurwitzTree to_tree(const TreeDocument& doc);
TreeDocument from_tree(const tree::HurwitzTree& t);

/// Graphviz rendering.
std::string to_dot(const tree::HurwitzTree& t);

}  // namespace hurwitz::io
