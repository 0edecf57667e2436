#include "doctest.h"

#include "generators.hpp"
#include "oracles.hpp"
#include "schemata/multigraph.hpp"

using namespace schemata;

namespace {

VertexId v(const char* id) { return VertexId{id}; }
EdgeId e(const char* id) { return EdgeId{id}; }

GeneralizedMultigraph three_cycle() {
  GeneralizedMultigraph g;
  g.vertices = {v("a"), v("b"), v("c")};
  g.edges.emplace(e("ab"), Attachment::closed(v("a"), v("b")));
  g.edges.emplace(e("bc"), Attachment::closed(v("b"), v("c")));
  g.edges.emplace(e("ca"), Attachment::closed(v("c"), v("a")));
  return g;
}

GeneralizedMultigraph random_graph(testgen::Rng& rng, int max_vertices, int max_edges,
                                   double open_prob) {
  GeneralizedMultigraph g;
  const int n = 1 + rng.below(max_vertices);
  std::vector<VertexId> vs;
  for (int i = 0; i < n; ++i) {
    VertexId vertex{"v" + std::to_string(i)};
    vs.push_back(vertex);
    g.vertices.insert(vertex);
  }
  const int m = rng.below(max_edges + 1);
  for (int i = 0; i < m; ++i) {
    EdgeId edge{"e" + std::to_string(i)};
    if (rng.chance(open_prob)) {
      if (rng.chance(0.5)) g.edges.emplace(edge, Attachment::begin_only(rng.pick(vs)));
      else g.edges.emplace(edge, Attachment::end_only(rng.pick(vs)));
    } else {
      g.edges.emplace(edge, Attachment::closed(rng.pick(vs), rng.pick(vs)));
    }
  }
  return g;
}

}  // namespace

TEST_CASE("conventionality distinguishes open graphs") {
  GeneralizedMultigraph g = three_cycle();
  CHECK(is_conventional(g));
  CHECK(open_edges(g).empty());

  g.edges.emplace(e("loose"), Attachment::end_only(v("a")));
  CHECK_FALSE(is_conventional(g));
  CHECK(open_edges(g).end_open == std::set<EdgeId>{e("loose")});

  CHECK(is_conventional(GeneralizedMultigraph{}));
}

TEST_CASE("conventionality agrees with the open-edge partition") {
  testgen::Rng rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    GeneralizedMultigraph g = random_graph(rng, 5, 6, 0.3);
    CHECK(is_conventional(g) == open_edges(g).empty());
  }
}

TEST_CASE("open edges partition by attachment side") {
  GeneralizedMultigraph g;
  g.vertices = {v("a"), v("b")};
  g.edges.emplace(e("b1"), Attachment::begin_only(v("a")));
  g.edges.emplace(e("e1"), Attachment::end_only(v("b")));
  OpenEdges open = open_edges(g);
  CHECK(open.begin_open == std::set<EdgeId>{e("b1")});
  CHECK(open.end_open == std::set<EdgeId>{e("e1")});
}

TEST_CASE("simplicity means an injective incidence mapping") {
  GeneralizedMultigraph g = three_cycle();
  CHECK(is_simple(g));
  g.edges.emplace(e("ab2"), Attachment::closed(v("a"), v("b")));
  CHECK_FALSE(is_simple(g));
}

TEST_CASE("components: weak connectivity, open edges connect nothing") {
  GeneralizedMultigraph path;
  path.vertices = {v("a"), v("b"), v("c")};
  path.edges.emplace(e("ab"), Attachment::closed(v("a"), v("b")));
  path.edges.emplace(e("bc"), Attachment::closed(v("b"), v("c")));
  CHECK(components(path).size() == 1);

  GeneralizedMultigraph two;
  two.vertices = {v("a"), v("b"), v("c"), v("d")};
  two.edges.emplace(e("ab"), Attachment::closed(v("a"), v("b")));
  two.edges.emplace(e("cd"), Attachment::closed(v("c"), v("d")));
  CHECK(components(two).size() == 2);

  GeneralizedMultigraph open_graph;
  open_graph.vertices = {v("a"), v("b")};
  open_graph.edges.emplace(e("x"), Attachment::begin_only(v("a")));
  CHECK(components(open_graph).size() == 2);
}

TEST_CASE("component count matches a union-find oracle") {
  testgen::Rng rng(202);
  for (int trial = 0; trial < 300; ++trial) {
    GeneralizedMultigraph g = random_graph(rng, 6, 7, 0.25);
    CHECK(components(g).size() == oracles::union_find_components(g));
  }
}

TEST_CASE("fan degrees count attachment sides") {
  GeneralizedMultigraph g;
  g.vertices = {v("a"), v("b"), v("c")};
  CHECK(fan_degrees(g, v("a")) == FanDegrees{0, 0});

  g.edges.emplace(e("loop"), Attachment::closed(v("a"), v("a")));
  CHECK(fan_degrees(g, v("a")) == FanDegrees{1, 1});

  g.edges.clear();
  g.edges.emplace(e("in1"), Attachment::closed(v("b"), v("a")));
  g.edges.emplace(e("in2"), Attachment::closed(v("c"), v("a")));
  g.edges.emplace(e("out"), Attachment::begin_only(v("a")));
  CHECK(fan_degrees(g, v("a")) == FanDegrees{2, 1});

  CHECK_THROWS_WITH_AS(fan_degrees(g, v("zz")), doctest::Contains("zz"), Error);
}

TEST_CASE("graph morphism check: identity, collapse, case mismatch") {
  GeneralizedMultigraph g = three_cycle();
  CHECK(check_graph_morphism(g, g, identity_graph_morphism(g)));

  GeneralizedMultigraph path;
  path.vertices = {v("a"), v("b")};
  path.edges.emplace(e("ab"), Attachment::closed(v("a"), v("b")));
  GeneralizedMultigraph loop;
  loop.vertices = {v("x")};
  loop.edges.emplace(e("xx"), Attachment::closed(v("x"), v("x")));
  GraphMorphism collapse;
  collapse.vertex_map = {{v("a"), v("x")}, {v("b"), v("x")}};
  collapse.edge_map = {{e("ab"), e("xx")}};
  CHECK(check_graph_morphism(path, loop, collapse));

  GeneralizedMultigraph open_target;
  open_target.vertices = {v("x")};
  open_target.edges.emplace(e("bo"), Attachment::begin_only(v("x")));
  GraphMorphism mismatch;
  mismatch.vertex_map = {{v("a"), v("x")}, {v("b"), v("x")}};
  mismatch.edge_map = {{e("ab"), e("bo")}};
  CHECK_FALSE(check_graph_morphism(path, open_target, mismatch));

  GraphMorphism partial;
  partial.vertex_map = {{v("a"), v("x")}};
  CHECK_THROWS_AS((void)check_graph_morphism(path, loop, partial), Error);
}

TEST_CASE("morphism enumeration: counts on small instances") {
  GeneralizedMultigraph dot;
  dot.vertices = {v("a")};
  CHECK(enumerate_graph_morphisms(dot, dot).size() == 1);

  GeneralizedMultigraph edge_graph;
  edge_graph.vertices = {v("a"), v("b")};
  edge_graph.edges.emplace(e("ab"), Attachment::closed(v("a"), v("b")));
  CHECK(enumerate_graph_morphisms(edge_graph, three_cycle()).size() == 3);

  GeneralizedMultigraph edgeless;
  edgeless.vertices = {v("x"), v("y")};
  CHECK(enumerate_graph_morphisms(edge_graph, edgeless).empty());
}

TEST_CASE("enumeration is ordered, reproducible and guarded") {
  GeneralizedMultigraph edge_graph;
  edge_graph.vertices = {v("a"), v("b")};
  edge_graph.edges.emplace(e("ab"), Attachment::closed(v("a"), v("b")));
  auto first = enumerate_graph_morphisms(edge_graph, three_cycle());
  auto second = enumerate_graph_morphisms(edge_graph, three_cycle());
  CHECK(first == second);
  for (std::size_t i = 1; i < first.size(); ++i)
    CHECK(first[i - 1].vertex_map <= first[i].vertex_map);

  GeneralizedMultigraph big;
  for (int i = 0; i < 10; ++i) big.vertices.insert(VertexId{"v" + std::to_string(i)});
  CHECK_THROWS_AS((void)enumerate_graph_morphisms(big, big), Error);
}

TEST_CASE("enumeration agrees with a permutation-based injective search") {
  testgen::Rng rng(303);
  for (int trial = 0; trial < 60; ++trial) {
    GeneralizedMultigraph g = random_graph(rng, 3, 3, 0.2);
    GeneralizedMultigraph h = random_graph(rng, 4, 4, 0.2);
    std::size_t injective = 0;
    for (const auto& m : enumerate_graph_morphisms(g, h)) {
      std::set<VertexId> images;
      bool mono = true;
      for (const auto& [a, b] : m.vertex_map)
        if (!images.insert(b).second) mono = false;
      if (mono) ++injective;
    }
    CHECK(injective == oracles::count_injective_graph_morphisms(g, h));
  }
}

TEST_CASE("checked morphisms compose; identity passes") {
  testgen::Rng rng(404);
  int composed = 0;
  for (int trial = 0; trial < 80 && composed < 25; ++trial) {
    GeneralizedMultigraph g = random_graph(rng, 3, 3, 0.25);
    GeneralizedMultigraph h = random_graph(rng, 3, 3, 0.25);
    GeneralizedMultigraph k = random_graph(rng, 3, 3, 0.25);
    CHECK(check_graph_morphism(g, g, identity_graph_morphism(g)));
    auto first = enumerate_graph_morphisms(g, h);
    auto second = enumerate_graph_morphisms(h, k);
    if (first.empty() || second.empty()) continue;
    GraphMorphism chained = compose(first.front(), second.front());
    CHECK(check_graph_morphism(g, k, chained));
    ++composed;
  }
  CHECK(composed > 0);
}

TEST_CASE("edge-surjective quotients never gain components") {
  // Corollary at the graph level, exercised on quotient images where every
  // codomain vertex is covered.
  testgen::Rng rng(505);
  for (int trial = 0; trial < 120; ++trial) {
    GeneralizedMultigraph g = random_graph(rng, 5, 5, 0.2);
    std::vector<VertexId> vs(g.vertices.begin(), g.vertices.end());
    if (vs.empty()) continue;
    GraphMorphism m;
    GeneralizedMultigraph h;
    std::vector<VertexId> reps;
    for (const auto& vertex : vs) {
      if (!reps.empty() && rng.chance(0.4)) {
        m.vertex_map[vertex] = rng.pick(reps);
      } else {
        reps.push_back(vertex);
        m.vertex_map[vertex] = vertex;
      }
      h.vertices.insert(m.vertex_map[vertex]);
    }
    for (const auto& [edge, att] : g.edges) {
      Attachment mapped;
      mapped.kind = att.kind;
      if (att.begin) mapped.begin = m.vertex_map.at(*att.begin);
      if (att.end) mapped.end = m.vertex_map.at(*att.end);
      h.edges.emplace(edge, mapped);
      m.edge_map[edge] = edge;
    }
    REQUIRE(check_graph_morphism(g, h, m));
    CHECK(components(h).size() <= components(g).size());
  }
}

TEST_CASE("variable multigraphs: determinism and submultigraph checks") {
  VariableMultigraph g;
  g.vertices = {v("a"), v("b")};
  g.edges[e("x")] = {Attachment::closed(v("a"), v("b"))};
  CHECK(g.is_deterministic());
  CHECK(g.to_deterministic().has_value());

  g.edges[e("x")].insert(Attachment::end_only(v("b")));
  CHECK_FALSE(g.is_deterministic());
  CHECK_FALSE(g.to_deterministic().has_value());

  VariableMultigraph sub;
  sub.vertices = {v("a"), v("b")};
  sub.edges[e("x")] = {Attachment::end_only(v("b"))};
  CHECK(is_submultigraph(sub, g));
  sub.edges[e("x")] = {Attachment::begin_only(v("a"))};
  CHECK_FALSE(is_submultigraph(sub, g));
}

TEST_CASE("achievable openness matches brute-force resolution") {
  testgen::Rng rng(606);
  for (int trial = 0; trial < 200; ++trial) {
    VariableMultigraph g;
    const int n = 1 + rng.below(3);
    std::vector<VertexId> vs;
    for (int i = 0; i < n; ++i) {
      VertexId vertex{"v" + std::to_string(i)};
      vs.push_back(vertex);
      g.vertices.insert(vertex);
    }
    const int m = rng.below(4);
    for (int i = 0; i < m; ++i) {
      std::set<Attachment> options;
      const int count = 1 + rng.below(3);
      while (static_cast<int>(options.size()) < count) {
        int kind = rng.below(3);
        if (kind == 0) options.insert(Attachment::closed(rng.pick(vs), rng.pick(vs)));
        if (kind == 1) options.insert(Attachment::begin_only(rng.pick(vs)));
        if (kind == 2) options.insert(Attachment::end_only(rng.pick(vs)));
      }
      g.edges.emplace(EdgeId{"e" + std::to_string(i)}, std::move(options));
    }

    std::set<std::pair<bool, bool>> expected;
    std::vector<std::vector<Attachment>> options;
    for (const auto& [edge, atts] : g.edges) options.emplace_back(atts.begin(), atts.end());
    std::vector<std::size_t> pick(options.size(), 0);
    while (true) {
      bool has_end = false, has_begin = false;
      for (std::size_t i = 0; i < options.size(); ++i) {
        if (options[i][pick[i]].kind == AttachmentCase::EndOnly) has_end = true;
        if (options[i][pick[i]].kind == AttachmentCase::BeginOnly) has_begin = true;
      }
      expected.insert({has_end, has_begin});
      std::size_t i = options.size();
      bool advanced = false;
      while (i > 0) {
        --i;
        if (++pick[i] < options[i].size()) {
          advanced = true;
          break;
        }
        pick[i] = 0;
      }
      if (!advanced) break;
    }
    CHECK(achievable_openness(g) == expected);
  }
}
