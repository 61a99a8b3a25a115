#include "mforge/io.hpp"

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "mforge/mlink.hpp"
#include "mforge/munion.hpp"
#include "mforge/sqcomplete.hpp"

namespace mforge {

namespace {

// One meaningful line of a file, already whitespace-tokenized. `#` starts a
// comment; blank and comment-only lines are dropped.
struct TokLine {
  int number = 0;
  std::vector<std::string> toks;
};

std::vector<TokLine> tokenize(std::istream& in, const std::string& origin,
                              bool split_braces) {
  std::vector<TokLine> lines;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    if (split_braces) {
      std::string spaced;
      spaced.reserve(raw.size() + 8);
      for (char c : raw) {
        if (c == '{' || c == '}') {
          spaced += ' ';
          spaced += c;
          spaced += ' ';
        } else {
          spaced += c;
        }
      }
      raw = std::move(spaced);
    }
    std::istringstream ls(raw);
    TokLine tl;
    tl.number = lineno;
    std::string t;
    while (ls >> t) tl.toks.push_back(t);
    if (!tl.toks.empty()) lines.push_back(std::move(tl));
  }
  if (in.bad()) throw ParseError(origin + ": read error");
  return lines;
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& msg) {
  throw ParseError(origin + ":" + std::to_string(line) + ": " + msg);
}

std::int64_t parse_int(const std::string& tok, const std::string& origin, int line) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    fail(origin, line, "expected an integer, got '" + tok + "'");
  }
}

Rat parse_rat(const std::string& tok, const std::string& origin, int line) {
  // Accept "a" or "a/b" with optional leading '-' on a (and on b).
  mpq_class q;
  if (q.set_str(tok, 10) != 0)
    fail(origin, line, "bad rational entry '" + tok + "'");
  if (q.get_den() == 0) fail(origin, line, "zero denominator in '" + tok + "'");
  q.canonicalize();
  return q;
}

std::string path_dir(const std::string& path) {
  auto d = std::filesystem::path(path).parent_path();
  return d.empty() ? std::string(".") : d.string();
}

std::string resolve(const std::string& ref, const std::string& base_dir) {
  std::filesystem::path p(ref);
  if (p.is_absolute()) return p.string();
  return (std::filesystem::path(base_dir) / p).string();
}

// Matroid files can reference other files; a stack of canonical paths guards
// against reference cycles.
thread_local std::vector<std::string> g_matroid_stack;

struct StackGuard {
  explicit StackGuard(const std::string& canon) { g_matroid_stack.push_back(canon); }
  ~StackGuard() { g_matroid_stack.pop_back(); }
};

Matroid read_matroid_at(const std::string& path) {
  std::error_code ec;
  auto canon = std::filesystem::weakly_canonical(path, ec);
  std::string key = ec ? path : canon.string();
  for (const auto& seen : g_matroid_stack)
    if (seen == key)
      throw ParseError(path + ": matroid file references form a cycle");
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open matroid file '" + path + "'");
  StackGuard guard(key);
  return parse_matroid(in, path, path_dir(path));
}

}  // namespace

// --------------------------------------------------------------------------
// matrix
// --------------------------------------------------------------------------

MatrixFile parse_matrix(std::istream& in, const std::string& origin) {
  auto lines = tokenize(in, origin, /*split_braces=*/false);
  if (lines.size() < 2)
    throw ParseError(origin + ": matrix file needs a field line and a cols line");

  MatrixFile mf;
  {
    const auto& fl = lines[0];
    if (fl.toks[0] != "field")
      fail(origin, fl.number, "expected 'field ...', got '" + fl.toks[0] + "'");
    if (fl.toks.size() == 2 && fl.toks[1] == "rational") {
      mf.field = rational_field();
    } else if (fl.toks.size() == 3 && fl.toks[1] == "gf") {
      std::int64_t p = parse_int(fl.toks[2], origin, fl.number);
      if (p < 2) fail(origin, fl.number, "gf modulus must be >= 2");
      mf.field = gf(p);
    } else {
      fail(origin, fl.number, "field line must be 'field rational' or 'field gf <p>'");
    }
  }
  {
    const auto& cl = lines[1];
    if (cl.toks[0] != "cols")
      fail(origin, cl.number, "expected 'cols ...', got '" + cl.toks[0] + "'");
    mf.cols.assign(cl.toks.begin() + 1, cl.toks.end());
    try {
      require_distinct(mf.cols, "matrix columns");
    } catch (const PreconditionError& e) {
      fail(origin, cl.number, e.what());
    }
  }
  const std::size_t nc = mf.cols.size();
  for (std::size_t i = 2; i < lines.size(); ++i) {
    const auto& rl = lines[i];
    if (rl.toks.size() != nc)
      fail(origin, rl.number,
           "row has " + std::to_string(rl.toks.size()) + " entries, expected " +
               std::to_string(nc));
    if (mf.field.rational) {
      std::vector<Rat> row;
      row.reserve(nc);
      for (const auto& t : rl.toks) row.push_back(parse_rat(t, origin, rl.number));
      mf.qrows.push_back(std::move(row));
    } else {
      std::vector<Gfp> row;
      row.reserve(nc);
      for (const auto& t : rl.toks)
        row.emplace_back(parse_int(t, origin, rl.number), mf.field.p);
      mf.prows.push_back(std::move(row));
    }
  }
  return mf;
}

MatrixFile read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open matrix file '" + path + "'");
  return parse_matrix(in, path);
}

QSpace qspace_of(const MatrixFile& mf) {
  if (!mf.field.rational)
    throw PreconditionError("matrix file is over gf(" + std::to_string(mf.field.p) +
                            "), not the rationals");
  return QSpace::make(mf.field, mf.cols, mf.qrows);
}

PSpace pspace_of(const MatrixFile& mf) {
  if (mf.field.rational)
    throw PreconditionError("matrix file is rational, not a gf space");
  return PSpace::make(mf.field, mf.cols, mf.prows);
}

namespace {
template <class K>
std::string format_matrix_impl(const Space<K>& V) {
  std::ostringstream out;
  if (V.field().rational)
    out << "field rational\n";
  else
    out << "field gf " << V.field().p << "\n";
  out << "cols";
  for (const auto& c : V.cols()) out << ' ' << c;
  out << '\n';
  for (const auto& row : V.matrix()) {
    bool first = true;
    for (const auto& e : row) {
      if (!first) out << ' ';
      first = false;
      out << to_string(e);
    }
    out << '\n';
  }
  return out.str();
}

void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open '" + path + "' for writing");
  out << body;
  if (!out) throw ParseError("write to '" + path + "' failed");
}
}  // namespace

std::string format_matrix(const QSpace& V) { return format_matrix_impl(V); }
std::string format_matrix(const PSpace& V) { return format_matrix_impl(V); }
void write_matrix_file(const std::string& path, const QSpace& V) {
  write_text_file(path, format_matrix(V));
}
void write_matrix_file(const std::string& path, const PSpace& V) {
  write_text_file(path, format_matrix(V));
}

// --------------------------------------------------------------------------
// graph
// --------------------------------------------------------------------------

Graph parse_graph(std::istream& in, const std::string& origin) {
  auto lines = tokenize(in, origin, /*split_braces=*/false);
  if (lines.empty()) throw ParseError(origin + ": graph file needs a vertices line");
  const auto& vl = lines[0];
  if (vl.toks[0] != "vertices")
    fail(origin, vl.number, "expected 'vertices ...', got '" + vl.toks[0] + "'");
  std::vector<Vertex> vertices(vl.toks.begin() + 1, vl.toks.end());
  std::vector<Edge> edges;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& el = lines[i];
    if (el.toks.size() != 3)
      fail(origin, el.number, "edge line must be '<label> <tail> <head>'");
    edges.push_back(Edge{el.toks[0], el.toks[1], el.toks[2]});
  }
  try {
    return Graph::make(std::move(vertices), std::move(edges));
  } catch (const PreconditionError& e) {
    throw ParseError(origin + ": " + e.what());
  }
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open graph file '" + path + "'");
  return parse_graph(in, path);
}

std::string format_graph(const Graph& g) {
  std::ostringstream out;
  out << "vertices";
  for (const auto& v : g.vertices()) out << ' ' << v;
  out << '\n';
  for (const auto& e : g.edges())
    out << e.label << ' ' << e.tail << ' ' << e.head << '\n';
  return out.str();
}

void write_graph_file(const std::string& path, const Graph& g) {
  write_text_file(path, format_graph(g));
}

// --------------------------------------------------------------------------
// matroid
// --------------------------------------------------------------------------

Labels split_labels(const std::string& csv, const std::string& what) {
  Labels out;
  std::string item;
  std::istringstream ss(csv);
  while (std::getline(ss, item, ',')) {
    if (item.empty())
      throw ParseError(what + ": empty label in list '" + csv + "'");
    out.push_back(item);
  }
  if (out.empty()) throw ParseError(what + ": empty label list");
  return out;
}

Matroid parse_matroid(std::istream& in, const std::string& origin,
                      const std::string& base_dir) {
  auto lines = tokenize(in, origin, /*split_braces=*/true);
  if (lines.size() < 2)
    throw ParseError(origin + ": matroid file needs a ground line and a body line");
  const auto& gl = lines[0];
  if (gl.toks[0] != "ground")
    fail(origin, gl.number, "expected 'ground ...', got '" + gl.toks[0] + "'");
  Labels ground(gl.toks.begin() + 1, gl.toks.end());
  try {
    require_distinct(ground, "matroid ground");
  } catch (const PreconditionError& e) {
    fail(origin, gl.number, e.what());
  }

  // Body: the first token of line 2 is the form; `bases` consumes every
  // remaining line, all other forms are single-line.
  const auto& bl = lines[1];
  const std::string& form = bl.toks[0];
  auto arity = [&](std::size_t want) {
    if (bl.toks.size() != want)
      fail(origin, bl.number,
           "'" + form + "' form takes " + std::to_string(want - 1) + " argument(s)");
  };
  auto single_line = [&]() {
    if (lines.size() > 2)
      fail(origin, lines[2].number, "unexpected content after '" + form + "' line");
  };

  try {
    if (form == "bases") {
      std::vector<std::string> toks(bl.toks.begin() + 1, bl.toks.end());
      for (std::size_t i = 2; i < lines.size(); ++i)
        toks.insert(toks.end(), lines[i].toks.begin(), lines[i].toks.end());
      std::vector<Labels> bases;
      std::size_t i = 0;
      while (i < toks.size()) {
        if (toks[i] != "{")
          fail(origin, bl.number, "expected '{' to open a base, got '" + toks[i] + "'");
        ++i;
        Labels b;
        while (i < toks.size() && toks[i] != "}") {
          if (toks[i] == "{")
            fail(origin, bl.number, "nested '{' inside a base");
          b.push_back(toks[i]);
          ++i;
        }
        if (i == toks.size()) fail(origin, bl.number, "unclosed '{' in base list");
        ++i;
        bases.push_back(std::move(b));
      }
      if (bases.empty())
        fail(origin, bl.number, "'bases' form needs at least one base");
      return explicit_matroid(ground, bases);
    }
    if (form == "linear") {
      arity(2);
      single_line();
      MatrixFile mf = read_matrix_file(resolve(bl.toks[1], base_dir));
      Matroid m = mf.field.rational ? linear_matroid(qspace_of(mf))
                                    : linear_matroid(pspace_of(mf));
      if (!same_label_set(m.ground(), ground))
        fail(origin, bl.number, "matrix columns do not match the ground line");
      return m;
    }
    if (form == "graphic") {
      arity(2);
      single_line();
      Graph g = read_graph_file(resolve(bl.toks[1], base_dir));
      Matroid m = graphic_matroid(g);
      if (!same_label_set(m.ground(), ground))
        fail(origin, bl.number, "graph edges do not match the ground line");
      return m;
    }
    if (form == "uniform") {
      arity(2);
      single_line();
      std::int64_t k = parse_int(bl.toks[1], origin, bl.number);
      if (k < 0 || k > static_cast<std::int64_t>(ground.size()))
        fail(origin, bl.number, "uniform rank out of range");
      return uniform_matroid(ground, static_cast<int>(k));
    }
    if (form == "free") {
      arity(1);
      single_line();
      return free_matroid(ground);
    }
    if (form == "zero") {
      arity(1);
      single_line();
      return zero_matroid(ground);
    }
    if (form == "dual") {
      arity(2);
      single_line();
      Matroid m = read_matroid_at(resolve(bl.toks[1], base_dir));
      if (!same_label_set(m.ground(), ground))
        fail(origin, bl.number, "referenced matroid's ground does not match");
      return dual(m);
    }
    if (form == "minor") {
      arity(4);
      single_line();
      Matroid m = read_matroid_at(resolve(bl.toks[1], base_dir));
      Labels t1 = split_labels(bl.toks[2], origin + " minor T1");
      Labels t2 = split_labels(bl.toks[3], origin + " minor T2");
      Matroid r = minor_of(m, t1, t2);
      if (!same_label_set(r.ground(), ground))
        fail(origin, bl.number, "minor's ground does not match the ground line");
      return r;
    }
    if (form == "union") {
      arity(3);
      single_line();
      Matroid a = read_matroid_at(resolve(bl.toks[1], base_dir));
      Matroid b = read_matroid_at(resolve(bl.toks[2], base_dir));
      Matroid u = union_matroid(a, b);
      if (!same_label_set(u.ground(), ground))
        fail(origin, bl.number, "union's ground does not match the ground line");
      return u;
    }
    if (form == "link") {
      arity(3);
      single_line();
      Matroid a = read_matroid_at(resolve(bl.toks[1], base_dir));
      Matroid b = read_matroid_at(resolve(bl.toks[2], base_dir));
      Matroid l = link(a, b);
      if (!same_label_set(l.ground(), ground))
        fail(origin, bl.number, "link's ground does not match the ground line");
      return l;
    }
    if (form == "completion") {
      arity(4);
      single_line();
      Matroid m = read_matroid_at(resolve(bl.toks[1], base_dir));
      Labels s = split_labels(bl.toks[2], origin + " completion S");
      Labels q = split_labels(bl.toks[3], origin + " completion Q");
      Matroid c = completion(m, s, q);
      if (!same_label_set(c.ground(), ground))
        fail(origin, bl.number, "completion's ground does not match the ground line");
      return c;
    }
  } catch (const ParseError&) {
    throw;
  } catch (const PreconditionError& e) {
    fail(origin, bl.number, e.what());
  }
  fail(origin, bl.number, "unknown matroid form '" + form + "'");
}

Matroid read_matroid_file(const std::string& path) { return read_matroid_at(path); }

std::string format_matroid(const Matroid& m) {
  ExplicitBases eb = enumerate_bases(m);
  Labels ground = sorted_shortlex(m.ground());
  std::ostringstream out;
  out << "ground";
  for (const auto& x : ground) out << ' ' << x;
  out << '\n';
  std::vector<Labels> bases;
  for (Mask b : eb.bases) {
    Labels lb;
    for (std::size_t i = 0; i < eb.ground.size(); ++i)
      if (b & (Mask{1} << i)) lb.push_back(eb.ground[i]);
    bases.push_back(sorted_shortlex(lb));
  }
  std::sort(bases.begin(), bases.end(), [](const Labels& a, const Labels& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(),
                                        shortlex_less);
  });
  out << "bases";
  for (const auto& b : bases) {
    out << " {";
    bool first = true;
    for (const auto& x : b) {
      if (!first) out << ' ';
      first = false;
      out << x;
    }
    out << '}';
  }
  out << '\n';
  return out.str();
}

void write_matroid_file(const std::string& path, const Matroid& m) {
  write_text_file(path, format_matroid(m));
}

}  // namespace mforge
