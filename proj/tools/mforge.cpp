// mforge: exact composition/decomposition calculus for labeled vector
// spaces, graphs, and matroids. Every command reads the text formats
// documented in README.md, prints a deterministic result, and maps failures
// to exit codes: 2 parse, 3 precondition, 4 enumeration guard, 5 internal
// invariant breach. `--verify` re-derives the result along an independent
// route and compares.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "mforge/io.hpp"
#include "mforge/mlink.hpp"
#include "mforge/munion.hpp"
#include "mforge/oracle.hpp"
#include "mforge/sqcomplete.hpp"
#include "mforge/vcompose.hpp"

namespace {

using namespace mforge;

struct Opts {
  bool verify = false;
  std::uint64_t seed = 0;  // accepted for script uniformity; no command
                           // draws randomness
  std::string file, left, right;
  std::string s_csv, q_csv, of_csv, t1_csv, t2_csv, a_csv, b_csv, base_csv;
  std::string kind, overlay, out_left, out_right, out_port;
  bool space_only = false, general = false, multiport = false;
  int k = -1;
};

std::string braced(const Labels& xs) {
  std::string out = "{";
  bool first = true;
  for (const auto& x : sorted_shortlex(xs)) {
    if (!first) out += ' ';
    first = false;
    out += x;
  }
  return out + "}";
}

[[noreturn]] void verify_mismatch(const std::string& what, const std::string& dump) {
  throw InternalError("verify: " + what + " disagrees with the independent route\n" +
                      dump);
}

void verify_ok() { std::cout << "verify: ok\n"; }

// Independent explicit copy: enumerate the bases, re-validate the exchange
// axiom, and serve ranks from the base list alone.
Matroid reconstruction(const Matroid& m) { return explicit_matroid(enumerate_bases(m)); }

void validate_partition(const Labels& ground, const Labels& S, const Labels& Q) {
  require_distinct(S, "--S");
  require_distinct(Q, "--Q");
  for (const auto& x : S)
    if (!contains_label(ground, x))
      throw PreconditionError("--S label '" + x + "' is not in the ground set");
  for (const auto& x : Q)
    if (!contains_label(ground, x))
      throw PreconditionError("--Q label '" + x + "' is not in the ground set");
  if (!disjoint(S, Q)) throw PreconditionError("--S and --Q overlap");
  if (S.size() + Q.size() != ground.size())
    throw PreconditionError("--S and --Q must cover the ground set");
}

std::pair<Labels, Labels> resolve_partition(const Labels& ground,
                                            const std::string& s_csv,
                                            const std::string& q_csv) {
  if (s_csv.empty() && q_csv.empty())
    throw PreconditionError("a partition is required: pass --S and/or --Q");
  Labels S = s_csv.empty() ? Labels{} : split_labels(s_csv, "--S");
  Labels Q = q_csv.empty() ? Labels{} : split_labels(q_csv, "--Q");
  if (s_csv.empty()) S = minus(ground, Q);
  if (q_csv.empty()) Q = minus(ground, S);
  validate_partition(ground, S, Q);
  return {S, Q};
}

template <class Fn>
void with_space_pair(const std::string& lpath, const std::string& rpath, Fn&& fn) {
  MatrixFile a = read_matrix_file(lpath);
  MatrixFile b = read_matrix_file(rpath);
  if (!(a.field == b.field))
    throw PreconditionError("matrix files use different fields");
  if (a.field.rational)
    fn(qspace_of(a), qspace_of(b));
  else
    fn(pspace_of(a), pspace_of(b));
}

template <class Fn>
void with_space(const std::string& path, Fn&& fn) {
  MatrixFile a = read_matrix_file(path);
  if (a.field.rational)
    fn(qspace_of(a));
  else
    fn(pspace_of(a));
}

VertexMap read_vertex_map(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open vertex map '" + path + "'");
  VertexMap vm;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::istringstream ls(raw);
    std::string r, l, extra;
    if (!(ls >> r)) continue;
    if (!(ls >> l) || (ls >> extra))
      throw ParseError(path + ":" + std::to_string(lineno) +
                       ": vertex map line must be '<right-vertex> <left-vertex>'");
    vm.emplace_back(r, l);
  }
  return vm;
}

void emit_labels_comment(const std::string& tag, const Labels& xs) {
  std::cout << "# " << tag;
  for (const auto& x : sorted_shortlex(xs)) std::cout << ' ' << x;
  std::cout << '\n';
}

// ---------------------------------------------------------------------------
// matroid verbs
// ---------------------------------------------------------------------------

void cmd_rank(const Opts& o) {
  Matroid m = read_matroid_file(o.file);
  int r = o.of_csv.empty() ? m.rank_all() : m.rank(split_labels(o.of_csv, "--of"));
  std::cout << r << '\n';
  if (o.verify) {
    Matroid me = reconstruction(m);
    int rv = o.of_csv.empty() ? me.rank_all() : me.rank(split_labels(o.of_csv, "--of"));
    if (rv != r)
      verify_mismatch("rank", "handle: " + std::to_string(r) +
                                  "\nexplicit reconstruction: " + std::to_string(rv));
    verify_ok();
  }
}

void cmd_bases(const Opts& o) {
  Matroid m = read_matroid_file(o.file);
  std::cout << format_matroid(m);
  if (o.verify) {
    ExplicitBases eb = enumerate_bases(m);
    if (auto w = brute_exchange_check(eb))
      verify_mismatch("base list",
                      "exchange axiom fails for b1=" + braced(w->b1) + " b2=" +
                          braced(w->b2) + " e1=" + w->e1 + " (" + w->reason + ")");
    verify_ok();
  }
}

void cmd_dual(const Opts& o) {
  Matroid m = read_matroid_file(o.file);
  Matroid d = dual(m);
  std::cout << format_matroid(d);
  if (o.verify) {
    ExplicitBases eb = enumerate_bases(m);
    Mask full = eb.ground.empty() ? 0 : (eb.ground.size() >= 64
                                             ? ~Mask{0}
                                             : ((Mask{1} << eb.ground.size()) - 1));
    ExplicitBases comp;
    comp.ground = eb.ground;
    for (Mask b : eb.bases) comp.bases.push_back(full ^ b);
    std::sort(comp.bases.begin(), comp.bases.end());
    if (!matroid_equal(d, explicit_matroid(std::move(comp))))
      verify_mismatch("dual", "complement-of-bases reconstruction differs:\n" +
                                  format_matroid(d));
    verify_ok();
  }
}

void cmd_minor(const Opts& o) {
  Matroid m = read_matroid_file(o.file);
  Labels t1 = split_labels(o.t1_csv, "minor T1");
  Labels t2 = split_labels(o.t2_csv, "minor T2");
  Matroid r = minor_of(m, t1, t2);
  std::cout << format_matroid(r);
  if (o.verify) {
    Matroid rv = minor_of(reconstruction(m), t1, t2);
    if (!matroid_equal(r, rv))
      verify_mismatch("minor", "handle:\n" + format_matroid(r) +
                                   "explicit reconstruction:\n" + format_matroid(rv));
    verify_ok();
  }
}

void cmd_link(const Opts& o) {
  LinkInstance inst =
      make_link_instance(read_matroid_file(o.left), read_matroid_file(o.right));
  Matroid l = link(inst);
  std::cout << format_matroid(l);
  if (o.verify) {
    Matroid lb = explicit_matroid(brute_link(inst));
    if (!matroid_equal(l, lb))
      verify_mismatch("link", "handle:\n" + format_matroid(l) + "brute link:\n" +
                                  format_matroid(lb));
    verify_ok();
  }
}

void cmd_minimize(const Opts& o) {
  LinkInstance inst =
      make_link_instance(read_matroid_file(o.left), read_matroid_file(o.right));
  bool conditional = !o.general && check_condition(inst);
  LinkInstance mini = conditional ? conditional_minimize(inst) : general_minimize(inst);
  std::cout << "# route " << (conditional ? "conditional" : "general") << '\n';
  emit_labels_comment("overlap", mini.overlap);
  std::cout << "# left\n" << format_matroid(mini.left);
  std::cout << "# right\n" << format_matroid(mini.right);
  if (!o.out_left.empty()) write_matroid_file(o.out_left, mini.left);
  if (!o.out_right.empty()) write_matroid_file(o.out_right, mini.right);
  if (o.verify) {
    Matroid before = link(inst);
    Matroid after = link(mini);
    if (!matroid_equal(before, after))
      verify_mismatch("minimized link", "before:\n" + format_matroid(before) +
                                            "after:\n" + format_matroid(after));
    verify_ok();
  }
}

void cmd_connectivity(const Opts& o) {
  Matroid m = read_matroid_file(o.file);
  if (o.s_csv.empty()) throw PreconditionError("connectivity needs --S");
  Labels S = split_labels(o.s_csv, "--S");
  int c = connectivity(m, S);
  std::cout << c << '\n';
  if (o.verify) {
    int cv = connectivity(reconstruction(m), S);
    if (cv != c)
      verify_mismatch("connectivity", "handle: " + std::to_string(c) +
                                          "\nexplicit reconstruction: " +
                                          std::to_string(cv));
    verify_ok();
  }
}

// ---------------------------------------------------------------------------
// completion verbs
// ---------------------------------------------------------------------------

void cmd_complete(const Opts& o) {
  Matroid m = read_matroid_file(o.file);
  auto [S, Q] = resolve_partition(m.ground(), o.s_csv, o.q_csv);
  Matroid c = completion(m, S, Q);
  std::cout << format_matroid(c);
  if (o.verify) {
    Matroid cb = explicit_matroid(completion_bruteforce(m, S, Q));
    if (!matroid_equal(c, cb))
      verify_mismatch("completion", "lazy handle:\n" + format_matroid(c) +
                                        "brute force:\n" + format_matroid(cb));
    verify_ok();
  }
}

void cmd_complete_check(const Opts& o) {
  Matroid m = read_matroid_file(o.file);
  auto [S, Q] = resolve_partition(m.ground(), o.s_csv, o.q_csv);
  bool ok = is_complete(m, S, Q);
  std::cout << (ok ? "complete" : "incomplete") << '\n';
  if (o.verify) {
    Matroid cb = explicit_matroid(completion_bruteforce(m, S, Q));
    bool okv = matroid_equal(cb, reconstruction(m));
    if (okv != ok)
      verify_mismatch("completeness check",
                      std::string("handle: ") + (ok ? "complete" : "incomplete") +
                          "\nbrute force: " + (okv ? "complete" : "incomplete"));
    verify_ok();
  }
}

void cmd_decompose(const Opts& o) {
  Matroid m = read_matroid_file(o.file);
  auto [S, Q] = resolve_partition(m.ground(), o.s_csv, o.q_csv);
  if (o.multiport) {
    MultiportInstance inst = multiport_decompose_complete(m, S, Q);
    emit_labels_comment("p1", inst.p1);
    emit_labels_comment("p2", inst.p2);
    std::cout << "# left\n" << format_matroid(inst.left);
    std::cout << "# right\n" << format_matroid(inst.right);
    std::cout << "# port\n" << format_matroid(inst.port);
    if (!o.out_left.empty()) write_matroid_file(o.out_left, inst.left);
    if (!o.out_right.empty()) write_matroid_file(o.out_right, inst.right);
    if (!o.out_port.empty()) write_matroid_file(o.out_port, inst.port);
    if (o.verify) {
      Matroid back = multiport_compose(inst);
      if (!matroid_equal(back, m))
        verify_mismatch("multiport decomposition",
                        "recomposed:\n" + format_matroid(back) + "original:\n" +
                            format_matroid(m));
      verify_ok();
    }
  } else {
    LinkInstance inst = decompose_complete(m, S, Q);
    emit_labels_comment("overlap", inst.overlap);
    std::cout << "# left\n" << format_matroid(inst.left);
    std::cout << "# right\n" << format_matroid(inst.right);
    if (!o.out_left.empty()) write_matroid_file(o.out_left, inst.left);
    if (!o.out_right.empty()) write_matroid_file(o.out_right, inst.right);
    if (o.verify) {
      Matroid back = link(inst);
      if (!matroid_equal(back, m))
        verify_mismatch("decomposition", "recomposed:\n" + format_matroid(back) +
                                             "original:\n" + format_matroid(m));
      verify_ok();
    }
  }
}

void cmd_free_product(const Opts& o) {
  Matroid ms = read_matroid_file(o.left);
  Matroid mq = read_matroid_file(o.right);
  Matroid fp;
  if (o.kind == "rr" || o.kind == "cc") {
    if (o.k < 0)
      throw PreconditionError("free-product kind '" + o.kind + "' needs --k");
    fp = (o.kind == "rr") ? free_rr(ms, mq, o.k) : free_cc(ms, mq, o.k);
  } else {  // rc
    if (o.k >= 0)
      throw PreconditionError("free-product kind 'rc' takes no --k");
    fp = free_rc(ms, mq);
  }
  std::cout << format_matroid(fp);
  if (o.verify) {
    Matroid mse = reconstruction(ms);
    Matroid mqe = reconstruction(mq);
    if (o.kind == "rr") {
      check_guard(fp.size(), oracle_guard(), "free-product verify");
      Mask full = fp.full_mask();
      for (Mask x = 0;; ++x) {
        Labels xs, xq;
        for (const auto& lab : fp.labels_of(x))
          (contains_label(ms.ground(), lab) ? xs : xq).push_back(lab);
        int want = std::min(o.k, mse.rank(xs) + mqe.rank(xq));
        if (fp.rank(x) != want)
          verify_mismatch("free product",
                          "rank of " + braced(fp.labels_of(x)) + " is " +
                              std::to_string(fp.rank(x)) + ", expected " +
                              std::to_string(want));
        if (x == full) break;
      }
    } else if (o.kind == "cc") {
      Matroid ref = dual(free_rr(dual(mse), dual(mqe), o.k));
      if (!matroid_equal(fp, ref))
        verify_mismatch("free product", "handle:\n" + format_matroid(fp) +
                                            "dual route:\n" + format_matroid(ref));
    } else {
      if (!matroid_equal(restrict_to(fp, ms.ground()), mse))
        verify_mismatch("free product",
                        "restriction to the left ground differs from the left operand");
      if (!matroid_equal(contract_to(fp, mq.ground()), mqe))
        verify_mismatch(
            "free product",
            "contraction onto the right ground differs from the right operand");
    }
    verify_ok();
  }
}

void cmd_principal_sum(const Opts& o) {
  Matroid ms = read_matroid_file(o.left);
  Matroid mq = read_matroid_file(o.right);
  Labels A = split_labels(o.a_csv, "--A");
  Labels B = split_labels(o.b_csv, "--B");
  Matroid ps = principal_sum(ms, mq, A, B);
  std::cout << format_matroid(ps);
  if (o.verify) {
    Matroid ref = principal_sum(reconstruction(ms), reconstruction(mq), A, B);
    if (!matroid_equal(ps, ref))
      verify_mismatch("principal sum",
                      "handle:\n" + format_matroid(ps) +
                          "explicit-operand recomputation:\n" + format_matroid(ref));
    verify_ok();
  }
}

void cmd_witness(const Opts& o) {
  Matroid m = read_matroid_file(o.file);
  auto [S, Q] = resolve_partition(m.ground(), o.s_csv, o.q_csv);
  Labels cand;
  if (!o.base_csv.empty()) {
    cand = split_labels(o.base_csv, "--base");
  } else {
    ExplicitBases orig = enumerate_bases(m);
    std::set<Labels> have;
    for (Mask b : orig.bases) have.insert(sorted_shortlex(orig.labels(b)));
    Matroid comp = completion(m, S, Q);
    ExplicitBases ce = enumerate_bases(comp);
    for (Mask b : ce.bases) {
      Labels lb = sorted_shortlex(ce.labels(b));
      if (!have.count(lb)) {
        cand = lb;
        break;
      }
    }
    if (cand.empty()) {
      std::cout << "already complete: every base of the completion is a base of "
                   "the input\n";
      return;
    }
  }
  CompletionWitness w = completion_witness(m, S, Q, cand);
  std::cout << "candidate " << braced(cand) << '\n';
  std::cout << "witness " << braced(w.base_bb) << '\n';
  std::cout << "cross-s " << braced(w.base_hb) << '\n';
  std::cout << "cross-q " << braced(w.base_bh) << '\n';
  if (o.verify) {
    Matroid me = reconstruction(m);
    for (const Labels* corner : {&w.base_bb, &w.base_hb, &w.base_bh}) {
      if (me.rank(*corner) != static_cast<int>(corner->size()) ||
          static_cast<int>(corner->size()) != me.rank_all())
        verify_mismatch("witness", "corner " + braced(*corner) +
                                       " is not a base of the input matroid");
    }
    verify_ok();
  }
}

// ---------------------------------------------------------------------------
// vector-space verbs
// ---------------------------------------------------------------------------

void cmd_vs_compose(const Opts& o) {
  with_space_pair(o.left, o.right, [&](const auto& A, const auto& B) {
    auto C = matched_compose(A, B);
    std::cout << format_matrix(C);
    if (o.verify) {
      auto C2 = matched_compose_sum_route(A, B);
      if (!(C == C2))
        verify_mismatch("composition", "intersection route:\n" + format_matrix(C) +
                                           "sum route:\n" + format_matrix(C2));
      verify_ok();
    }
  });
}

void cmd_vs_minimize(const Opts& o) {
  with_space_pair(o.left, o.right, [&](const auto& A, const auto& B) {
    auto pr = make_space_pair(A, B);
    auto mini = min_overlap(pr);
    emit_labels_comment("overlap", mini.overlap);
    std::cout << "# left\n" << format_matrix(mini.left);
    std::cout << "# right\n" << format_matrix(mini.right);
    if (!o.out_left.empty()) write_matrix_file(o.out_left, mini.left);
    if (!o.out_right.empty()) write_matrix_file(o.out_right, mini.right);
    if (o.verify) {
      auto before = compose(pr);
      auto after = compose(mini);
      if (!(before == after))
        verify_mismatch("minimized composition",
                        "before:\n" + format_matrix(before) + "after:\n" +
                            format_matrix(after));
      int target = ext_sum(A, B).rank() - ext_intersect(A, B).rank();
      if (static_cast<int>(mini.overlap.size()) != target)
        verify_mismatch("overlap size",
                        "got " + std::to_string(mini.overlap.size()) + ", expected " +
                            std::to_string(target));
      verify_ok();
    }
  });
}

void cmd_vs_decompose(const Opts& o) {
  with_space(o.file, [&](const auto& V) {
    auto [S, Q] = resolve_partition(V.cols(), o.s_csv, o.q_csv);
    auto dec = space_decompose(V, S);
    emit_labels_comment("overlap", dec.pair.overlap);
    std::cout << "# left\n" << format_matrix(dec.pair.left);
    std::cout << "# right\n" << format_matrix(dec.pair.right);
    if (!o.out_left.empty()) write_matrix_file(o.out_left, dec.pair.left);
    if (!o.out_right.empty()) write_matrix_file(o.out_right, dec.pair.right);
    if (o.verify) {
      auto back = compose(dec.pair);
      if (!(back == V))
        verify_mismatch("decomposition", "recomposed:\n" + format_matrix(back) +
                                             "original:\n" + format_matrix(V));
      verify_ok();
    }
  });
}

void cmd_graph_compose(const Opts& o) {
  Graph gl = read_graph_file(o.left);
  Graph gr = read_graph_file(o.right);
  if (o.space_only == o.overlay.empty())
    throw PreconditionError("graph-compose needs exactly one of --overlay <map> or "
                            "--space-only");
  if (o.space_only) {
    QSpace C = compose_space(gl, gr);
    std::cout << format_matrix(C);
    if (o.verify) {
      QSpace C2 = matched_compose_sum_route(incidence_space(gl), incidence_space(gr));
      if (!(C == C2))
        verify_mismatch("composed space", "intersection route:\n" + format_matrix(C) +
                                              "sum route:\n" + format_matrix(C2));
      verify_ok();
    }
  } else {
    VertexMap vm = read_vertex_map(o.overlay);
    Graph g = overlay_compose(gl, gr, vm);
    std::cout << format_graph(g);
    if (o.verify) {
      QSpace want = compose_space(gl, gr);
      QSpace got = incidence_space(g);
      if (!(got == want))
        verify_mismatch("overlay", "overlay incidence space:\n" + format_matrix(got) +
                                       "matched composition:\n" + format_matrix(want));
      verify_ok();
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact composition/decomposition calculus for labeled vector "
               "spaces, graphs, and matroids"};
  app.require_subcommand(1);
  Opts o;

  auto common = [&](CLI::App* s) {
    s->add_flag("--verify", o.verify,
                "re-derive the result along an independent route and compare");
    s->add_option("--seed", o.seed, "accepted for script uniformity; unused");
    return s;
  };

  auto* rank = common(app.add_subcommand("rank", "rank of a matroid (or a subset)"));
  rank->add_option("file", o.file, "matroid file")->required();
  rank->add_option("--of", o.of_csv, "comma-separated subset to rank");
  rank->callback([&] { cmd_rank(o); });

  auto* bases = common(app.add_subcommand("bases", "emit a matroid's base list"));
  bases->add_option("file", o.file, "matroid file")->required();
  bases->callback([&] { cmd_bases(o); });

  auto* dualc = common(app.add_subcommand("dual", "dual matroid"));
  dualc->add_option("file", o.file, "matroid file")->required();
  dualc->callback([&] { cmd_dual(o); });

  auto* minor = common(app.add_subcommand(
      "minor", "restrict to T1, then contract onto T2 (T2 inside T1)"));
  minor->add_option("file", o.file, "matroid file")->required();
  minor->add_option("T1", o.t1_csv, "comma-separated restriction set")->required();
  minor->add_option("T2", o.t2_csv, "comma-separated surviving set")->required();
  minor->callback([&] { cmd_minor(o); });

  auto* linkc = common(app.add_subcommand(
      "link", "link two matroids along their shared labels"));
  linkc->add_option("left", o.left, "left matroid file")->required();
  linkc->add_option("right", o.right, "right matroid file")->required();
  linkc->callback([&] { cmd_link(o); });

  auto* minimize = common(app.add_subcommand(
      "minimize", "shrink the shared label set without changing the link"));
  minimize->add_option("left", o.left, "left matroid file")->required();
  minimize->add_option("right", o.right, "right matroid file")->required();
  minimize->add_flag("--general", o.general,
                     "force the general route even when the matching condition holds");
  minimize->add_option("--out-left", o.out_left, "write the new left matroid here");
  minimize->add_option("--out-right", o.out_right, "write the new right matroid here");
  minimize->callback([&] { cmd_minimize(o); });

  auto* conn = common(app.add_subcommand(
      "connectivity", "lambda(S) = r(restriction to S) - r(contraction onto S)"));
  conn->add_option("file", o.file, "matroid file")->required();
  conn->add_option("--S", o.s_csv, "comma-separated subset")->required();
  conn->callback([&] { cmd_connectivity(o); });

  auto* complete = common(app.add_subcommand(
      "complete", "completion of a matroid across the partition (S, Q)"));
  complete->add_option("file", o.file, "matroid file")->required();
  complete->add_option("--S", o.s_csv, "comma-separated left side");
  complete->add_option("--Q", o.q_csv, "comma-separated right side");
  complete->callback([&] { cmd_complete(o); });

  auto* ccheck = common(app.add_subcommand(
      "complete-check", "is the matroid complete across the partition (S, Q)?"));
  ccheck->add_option("file", o.file, "matroid file")->required();
  ccheck->add_option("--S", o.s_csv, "comma-separated left side");
  ccheck->add_option("--Q", o.q_csv, "comma-separated right side");
  ccheck->callback([&] { cmd_complete_check(o); });

  auto* decompose = common(app.add_subcommand(
      "decompose", "minimal factorization of a complete matroid across (S, Q)"));
  decompose->add_option("file", o.file, "matroid file")->required();
  decompose->add_option("--S", o.s_csv, "comma-separated left side");
  decompose->add_option("--Q", o.q_csv, "comma-separated right side");
  decompose->add_flag("--multiport", o.multiport,
                      "three-factor form with an explicit coupling matroid");
  decompose->add_option("--out-left", o.out_left, "write the left factor here");
  decompose->add_option("--out-right", o.out_right, "write the right factor here");
  decompose->add_option("--out-port", o.out_port,
                        "write the coupling matroid here (with --multiport)");
  decompose->callback([&] { cmd_decompose(o); });

  auto* freep = common(app.add_subcommand(
      "free-product", "freest matroid with the given restriction/contraction sides"));
  freep->add_option("left", o.left, "left matroid file")->required();
  freep->add_option("right", o.right, "right matroid file")->required();
  freep->add_option("--kind", o.kind,
                    "rr: both sides restrictions; cc: both contractions; rc: left "
                    "restriction, right contraction")
      ->required()
      ->check(CLI::IsMember({"rr", "cc", "rc"}));
  freep->add_option("--k", o.k, "total rank (rr/cc kinds only)");
  freep->callback([&] { cmd_free_product(o); });

  auto* psum = common(app.add_subcommand(
      "principal-sum", "union with rank growth along the flat spanned by A"));
  psum->add_option("left", o.left, "left matroid file")->required();
  psum->add_option("right", o.right, "right matroid file")->required();
  psum->add_option("--A", o.a_csv, "comma-separated flat-spanning set (left ground)")
      ->required();
  psum->add_option("--B", o.b_csv, "comma-separated attachment set (right ground)")
      ->required();
  psum->callback([&] { cmd_principal_sum(o); });

  auto* witness = common(app.add_subcommand(
      "witness", "corner bases forcing a base of the completion"));
  witness->add_option("file", o.file, "matroid file")->required();
  witness->add_option("--S", o.s_csv, "comma-separated left side");
  witness->add_option("--Q", o.q_csv, "comma-separated right side");
  witness->add_option("--base", o.base_csv,
                      "comma-separated candidate base of the completion "
                      "(default: first forced base)");
  witness->callback([&] { cmd_witness(o); });

  auto* vsc = common(app.add_subcommand(
      "vs-compose", "matched composition of two row spaces"));
  vsc->add_option("left", o.left, "left matrix file")->required();
  vsc->add_option("right", o.right, "right matrix file")->required();
  vsc->callback([&] { cmd_vs_compose(o); });

  auto* vsm = common(app.add_subcommand(
      "vs-minimize", "shrink the shared columns without changing the composition"));
  vsm->add_option("left", o.left, "left matrix file")->required();
  vsm->add_option("right", o.right, "right matrix file")->required();
  vsm->add_option("--out-left", o.out_left, "write the new left matrix here");
  vsm->add_option("--out-right", o.out_right, "write the new right matrix here");
  vsm->callback([&] { cmd_vs_minimize(o); });

  auto* vsd = common(app.add_subcommand(
      "vs-decompose", "minimal factorization of a row space across (S, Q)"));
  vsd->add_option("file", o.file, "matrix file")->required();
  vsd->add_option("--S", o.s_csv, "comma-separated left columns");
  vsd->add_option("--Q", o.q_csv, "comma-separated right columns");
  vsd->add_option("--out-left", o.out_left, "write the left factor here");
  vsd->add_option("--out-right", o.out_right, "write the right factor here");
  vsd->callback([&] { cmd_vs_decompose(o); });

  auto* gc = common(app.add_subcommand(
      "graph-compose", "compose two graphs along their shared edges"));
  gc->add_option("left", o.left, "left graph file")->required();
  gc->add_option("right", o.right, "right graph file")->required();
  gc->add_option("--overlay", o.overlay,
                 "vertex map file ('<right-vertex> <left-vertex>' per line); "
                 "glue, then delete the shared edges");
  gc->add_flag("--space-only", o.space_only,
               "emit the composed incidence row space instead of a graph");
  gc->callback([&] { cmd_graph_compose(o); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << '\n';
    return 3;
  } catch (const GuardError& e) {
    std::cerr << "guard exceeded: " << e.what() << '\n';
    return 4;
  } catch (const InternalError& e) {
    std::cerr << "internal invariant breach: " << e.what() << '\n';
    return 5;
  }
  return 0;
}
