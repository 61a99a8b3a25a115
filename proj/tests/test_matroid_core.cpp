#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <thread>

#include "helpers.hpp"

using namespace mforge;
using namespace mtest;

TEST_CASE("explicit base families") {
  Labels g4 = ground_n(4);
  Matroid z = explicit_matroid(g4, {Labels{}});
  REQUIRE(z.rank_all() == 0);
  REQUIRE(matroid_equal(z, zero_matroid(g4)));

  Matroid f = explicit_matroid(g4, {g4});
  REQUIRE(matroid_equal(f, free_matroid(g4)));

  std::vector<Labels> two_subsets;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) two_subsets.push_back({g4[i], g4[j]});
  REQUIRE(matroid_equal(explicit_matroid(g4, two_subsets), uniform_matroid(g4, 2)));

  // violating the exchange axiom is rejected with a witness
  REQUIRE_THROWS_AS(explicit_matroid(g4, {{"e1", "e2"}, {"e3", "e4"}}),
                    PreconditionError);
  Matroid probe = uniform_matroid(g4, 2);
  auto viol = exchange_violation(g4, {probe.mask_of({"e1", "e2"}),
                                      probe.mask_of({"e3", "e4"})});
  REQUIRE(viol.has_value());
  REQUIRE_FALSE(viol->reason.empty());
  REQUIRE(exchange_violation(g4, enumerate_bases(probe).bases) == std::nullopt);

  // unequal cardinalities are rejected up front
  REQUIRE_THROWS_AS(explicit_matroid(g4, {{"e1"}, {"e2", "e3"}}),
                    PreconditionError);
}

TEST_CASE("linear and graphic constructors") {
  Labels g3 = ground_n(3);
  REQUIRE(matroid_equal(linear_matroid(free_space<Rat>(rational_field(), g3)),
                        free_matroid(g3)));
  REQUIRE(matroid_equal(linear_matroid(zero_space<Rat>(rational_field(), g3)),
                        zero_matroid(g3)));

  Graph tri = Graph::make({"a", "b", "c"},
                          {{"e1", "a", "b"}, {"e2", "b", "c"}, {"e3", "c", "a"}});
  REQUIRE(matroid_equal(linear_matroid(incidence_space(tri)), graphic_matroid(tri)));

  Matroid dt = doubled_triangle();
  REQUIRE(dt.rank_all() == 2);
  REQUIRE(dt.rank(Labels{"e1", "e6"}) == 1);
  auto eb = enumerate_bases(dt);
  REQUIRE(eb.bases.size() == 12);
  std::set<Labels> expect;
  Labels g6 = ground_n(6);
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) expect.insert({g6[i], g6[j]});
  for (Labels pr : {Labels{"e1", "e6"}, Labels{"e2", "e4"}, Labels{"e3", "e5"}})
    expect.erase(pr);
  REQUIRE(base_sets(eb) == expect);

  Graph loop = Graph::make({"a"}, {{"l1", "a", "a"}});
  REQUIRE(matroid_equal(graphic_matroid(loop), zero_matroid({"l1"})));
  Graph path = Graph::make({"a", "b", "c"}, {{"e1", "a", "b"}, {"e2", "b", "c"}});
  REQUIRE(matroid_equal(graphic_matroid(path), free_matroid({"e1", "e2"})));
}

TEST_CASE("uniform family") {
  Labels g5 = ground_n(5);
  REQUIRE(matroid_equal(uniform_matroid(g5, 0), zero_matroid(g5)));
  REQUIRE(matroid_equal(uniform_matroid(g5, 5), free_matroid(g5)));
  REQUIRE(uniform_matroid(ground_n(4), 2).rank(Labels{"e1", "e2", "e3"}) == 2);
  REQUIRE_THROWS_AS(uniform_matroid(g5, 6), PreconditionError);
  REQUIRE_THROWS_AS(uniform_matroid(g5, -1), PreconditionError);
}

TEST_CASE("duals, minors, sums, relabeling") {
  Rng rng(401);
  Labels g5 = ground_n(5);
  REQUIRE(matroid_equal(dual(uniform_matroid(g5, 2)), uniform_matroid(g5, 3)));

  for (int it = 0; it < 20; ++it) {
    int n = rnd_int(rng, 1, 6);
    Labels g = ground_n(n);
    Matroid m = random_matroid(rng, g);
    Matroid md = dual(m);
    REQUIRE(matroid_equal(dual(md), m));
    REQUIRE(m.rank_all() + md.rank_all() == n);

    // complement-rank formula for the dual
    auto [X, rest] = random_split(rng, g, rnd_int(rng, 1, n));
    (void)rest;
    REQUIRE(md.rank(X) == static_cast<int>(X.size()) - m.rank_all() +
                              m.rank(minus(g, X)));

    // contraction rank formula
    auto [T, out] = random_split(rng, g, rnd_int(rng, 1, n));
    (void)out;
    Matroid mc = contract_to(m, T);
    Labels co = minus(g, T);
    auto [Y, o2] = random_split(rng, T, rnd_int(rng, 1, (int)T.size()));
    (void)o2;
    REQUIRE(mc.rank(Y) == m.rank(concat(Y, co)) - m.rank(co));

    REQUIRE(matroid_equal(minor_of(m, g, g), m));
  }

  Matroid a = uniform_matroid({"a1", "a2"}, 1);
  Matroid b = free_matroid({"b1"});
  Matroid s = direct_sum(a, b);
  REQUIRE(s.ground() == Labels{"a1", "a2", "b1"});
  REQUIRE(s.rank_all() == 2);
  REQUIRE(s.rank(Labels{"a1", "a2"}) == 1);

  Matroid r = relabel(a, {{"a1", "x"}, {"a2", "y"}});
  REQUIRE(r.ground() == Labels{"x", "y"});
  REQUIRE(matroid_equal(relabel(r, {{"x", "a1"}, {"y", "a2"}}), a));
  Matroid p = primed_copy(a, {"a2"});
  REQUIRE(p.ground() == Labels{"a1", "a2'"});
  REQUIRE_THROWS_AS(relabel(a, {{"a1", "a2"}}), PreconditionError);
}

TEST_CASE("rank oracle identity family") {
  Rng rng(402);
  for (int it = 0; it < 25; ++it) {
    int n = rnd_int(rng, 2, 6);
    Labels g = ground_n(n);
    Matroid m = random_matroid(rng, g);
    auto [S, P] = random_split(rng, g, rnd_int(rng, 1, n - 1));

    REQUIRE(m.rank_all() ==
            restrict_to(m, S).rank_all() + contract_to(m, P).rank_all());

    Matroid md = dual(m);
    REQUIRE(matroid_equal(restrict_to(md, P), dual(contract_to(m, P))));
    REQUIRE(matroid_equal(contract_to(md, S), dual(restrict_to(m, S))));

    // nested minors in either order
    auto [T1, o1] = random_split(rng, g, rnd_int(rng, 1, n));
    (void)o1;
    auto [T2, o2] = random_split(rng, T1, rnd_int(rng, 1, (int)T1.size()));
    (void)o2;
    REQUIRE(matroid_equal(contract_to(restrict_to(m, T1), T2),
                          restrict_to(contract_to(m, minus(g, minus(T1, T2))), T2)));

    // bases of the matroid are exactly the cobases of the dual
    if (n <= 5) {
      for (Mask x = 0; x <= m.full_mask(); ++x) {
        bool base_m = m.indep(x) && popcount(x) == m.rank_all();
        Mask comp = m.full_mask() ^ x;
        bool cobase = md.indep(comp) && popcount(comp) == md.rank_all();
        REQUIRE(base_m == cobase);
      }
    }
  }
}

TEST_CASE("constructors commute with minors and duals") {
  Rng rng(403);
  for (int it = 0; it < 15; ++it) {
    int n = rnd_int(rng, 2, 5);
    Labels g = ground_n(n);
    PSpace V = random_space<Gfp>(rng, gf(7), g, rnd_int(rng, 0, n));
    Matroid mv = linear_matroid(V);
    auto [T, rest] = random_split(rng, g, rnd_int(rng, 1, n));
    (void)rest;
    REQUIRE(matroid_equal(linear_matroid(restrict_to(V, T)), restrict_to(mv, T)));
    REQUIRE(matroid_equal(linear_matroid(contract_to(V, T)), contract_to(mv, T)));
    REQUIRE(matroid_equal(linear_matroid(orthogonal(V)), dual(mv)));

    Graph gr = random_graph(rng, g, rnd_int(rng, 2, 4));
    Matroid mg = graphic_matroid(gr);
    REQUIRE(matroid_equal(graphic_matroid(graph_restrict(gr, T)),
                          restrict_to(mg, T)));
    REQUIRE(matroid_equal(graphic_matroid(graph_contract(gr, T)),
                          contract_to(mg, T)));
  }
}

TEST_CASE("enumeration, equality, guards") {
  Labels g4 = ground_n(4);
  REQUIRE(enumerate_bases(free_matroid(g4)).bases.size() == 1);
  REQUIRE(enumerate_bases(uniform_matroid(g4, 2)).bases.size() == 6);

  // the empty ground set is legal everywhere
  Matroid empty = free_matroid({});
  REQUIRE(empty.rank_all() == 0);
  REQUIRE(enumerate_bases(empty).bases == std::vector<Mask>{0});
  REQUIRE(matroid_equal(dual(empty), empty));

  Graph cyc = Graph::make({"a", "b", "c", "d"}, {{"e1", "a", "b"},
                                                 {"e2", "b", "c"},
                                                 {"e3", "c", "d"},
                                                 {"e4", "d", "a"}});
  REQUIRE_FALSE(matroid_equal(uniform_matroid(g4, 2), graphic_matroid(cyc)));

  REQUIRE_THROWS_AS(enumerate_bases(uniform_matroid(ground_n(23), 2)), GuardError);
  setenv("MFORGE_GUARD", "5", 1);
  REQUIRE_THROWS_AS(enumerate_bases(uniform_matroid(ground_n(6), 2)), GuardError);
  REQUIRE(enumerate_bases(uniform_matroid(ground_n(5), 2)).bases.size() == 10);
  unsetenv("MFORGE_GUARD");
  REQUIRE(enumerate_bases(uniform_matroid(ground_n(6), 2)).bases.size() == 15);

  // mask/label plumbing
  auto eb = enumerate_bases(uniform_matroid(g4, 2));
  REQUIRE(eb.labels(eb.bases.front()) == Labels{"e1", "e2"});
  REQUIRE(eb.as_label_sets().size() == 6);

  int seen = 0;
  Mask last = 0;
  for_each_subset_of_size(0b11111, 2, [&](Mask m) {
    REQUIRE(m > last);
    last = m;
    ++seen;
  });
  REQUIRE(seen == 10);
}

TEST_CASE("call counting and concurrent queries") {
  auto counter = std::make_shared<std::atomic<long long>>(0);
  Matroid u = uniform_matroid(ground_n(6), 3);
  Matroid counted = counting_adapter(u, counter);
  REQUIRE(counted.rank(Labels{"e1", "e2"}) == 2);
  REQUIRE(counted.rank(Labels{"e1", "e2"}) == 2);
  REQUIRE(counter->load() >= 2);  // the adapter never caches

  // a shared handle answers consistently under parallel readers
  Matroid m = dual(restrict_to(uniform_matroid(ground_n(8), 4), ground_n(7)));
  std::vector<int> expect;
  for (Mask x = 0; x <= m.full_mask(); ++x) expect.push_back(m.rank(x));
  std::vector<std::thread> pool;
  std::atomic<bool> ok{true};
  for (int t = 0; t < 4; ++t)
    pool.emplace_back([&] {
      for (Mask x = 0; x <= m.full_mask(); ++x)
        if (m.rank(x) != expect[x]) ok = false;
    });
  for (auto& th : pool) th.join();
  REQUIRE(ok.load());
}
