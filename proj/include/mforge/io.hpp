#pragma once

#include <iosfwd>
#include <string>

#include "mforge/graph.hpp"
#include "mforge/matroid.hpp"
#include "mforge/vspace.hpp"

namespace mforge {

// ---------------------------------------------------------------------------
// Matrix files
//
//   field rational          (or: field gf <p>)
//   cols a b c
//   1 0 2/3
//   0 1 -1
//
// Entries are integers or a/b rationals; gf entries are integers reduced
// modulo p. Writers emit the canonical row-reduced form, so a written file
// re-parses to a bit-identical space.
// ---------------------------------------------------------------------------

// A parsed matrix file before the caller commits to a scalar type. Exactly
// one of qrows/prows is meaningful, matching field.rational.
struct MatrixFile {
  FieldDesc field;
  Labels cols;
  std::vector<std::vector<Rat>> qrows;
  std::vector<std::vector<Gfp>> prows;
};

MatrixFile parse_matrix(std::istream& in, const std::string& origin);
MatrixFile read_matrix_file(const std::string& path);

QSpace qspace_of(const MatrixFile& mf);
PSpace pspace_of(const MatrixFile& mf);

std::string format_matrix(const QSpace& V);
std::string format_matrix(const PSpace& V);
void write_matrix_file(const std::string& path, const QSpace& V);
void write_matrix_file(const std::string& path, const PSpace& V);

// ---------------------------------------------------------------------------
// Graph files
//
//   vertices a b c d
//   e1 a b
//   e2 b c
//
// One edge per line: label, tail vertex, head vertex.
// ---------------------------------------------------------------------------

Graph parse_graph(std::istream& in, const std::string& origin);
Graph read_graph_file(const std::string& path);

std::string format_graph(const Graph& g);
void write_graph_file(const std::string& path, const Graph& g);

// ---------------------------------------------------------------------------
// Matroid files
//
//   ground e1 e2 e3
//   bases {e1 e2} {e1 e3}
//
// The body line is one of:
//   bases {..} {..} ...        explicit base list (validated)
//   linear <matrix-file>       column matroid of the matrix
//   graphic <graph-file>       cycle matroid of the graph
//   uniform <k> | free | zero
//   dual <file>
//   minor <file> T1 T2         restrict to T1, then contract onto T2 ⊆ T1
//                              (comma-separated label lists)
//   union <file1> <file2>
//   link <file1> <file2>
//   completion <file> S Q      S,Q comma-separated, partitioning the ground
//
// File references resolve relative to the referencing file's directory.
// Writers always emit the explicit `bases` form (enumeration guard applies).
// ---------------------------------------------------------------------------

Matroid parse_matroid(std::istream& in, const std::string& origin,
                      const std::string& base_dir);
Matroid read_matroid_file(const std::string& path);

std::string format_matroid(const Matroid& m);
void write_matroid_file(const std::string& path, const Matroid& m);

// Splits a comma-separated label list ("e1,e2,e3"); rejects empty items.
Labels split_labels(const std::string& csv, const std::string& what);

}  // namespace mforge
