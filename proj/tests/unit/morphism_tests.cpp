#include "doctest.h"

#include "fixtures.hpp"
#include "generators.hpp"
#include "oracles.hpp"
#include "schemata/morphism.hpp"
#include "schemata/transform.hpp"

using namespace schemata;
using namespace schemata::fixtures;

namespace {

const KindPath kAlpha{{"machine", "alpha"}};
const KindPath kBeta{{"machine", "beta"}};

// Three nodes, two parallel-ish links: a -> b twice via n collapse target c.
BasicSchema collapse_domain() {
  BasicSchema s;
  s.name = "collapse_domain";
  s.universe = testgen::small_universe();
  s.nodes.emplace(NodeId{"a"}, SchemaElement::constant(kAlpha));
  s.nodes.emplace(NodeId{"b"}, SchemaElement::constant(kAlpha));
  s.nodes.emplace(NodeId{"c"}, SchemaElement::constant(kBeta));
  s.links.emplace(LinkId{"l1"}, LinkSlot{LinkClass::Information, ChannelKind::Simple,
                                         SchemaElement::constant(generic_link_kind(0))});
  s.links.emplace(LinkId{"l2"}, LinkSlot{LinkClass::Information, ChannelKind::Simple,
                                         SchemaElement::constant(generic_link_kind(0))});
  s.node_adjacency[LinkId{"l1"}] = {NodeAttachment::closed(NodeId{"a"}, NodeId{"c"})};
  s.node_adjacency[LinkId{"l2"}] = {NodeAttachment::closed(NodeId{"b"}, NodeId{"c"})};
  return s;
}

BasicSchema collapse_codomain() {
  BasicSchema s;
  s.name = "collapse_codomain";
  s.universe = testgen::small_universe();
  s.nodes.emplace(NodeId{"ab"}, SchemaElement::constant(kAlpha));
  s.nodes.emplace(NodeId{"c"}, SchemaElement::constant(kBeta));
  s.links.emplace(LinkId{"l"}, LinkSlot{LinkClass::Information, ChannelKind::Simple,
                                        SchemaElement::constant(generic_link_kind(0))});
  s.node_adjacency[LinkId{"l"}] = {NodeAttachment::closed(NodeId{"ab"}, NodeId{"c"})};
  return s;
}

}  // namespace

TEST_CASE("structural check: identity, collapse, broken endpoints") {
  Schema program{control_program_schema()};
  MorphismFlags id_flags = check_structural(program, program, identity_morphism(program));
  CHECK(id_flags.structural);
  CHECK(id_flags.weak);
  CHECK(id_flags.typed);
  CHECK(id_flags.ve_mono());
  CHECK(id_flags.ve_epi());

  Schema dom{collapse_domain()}, cod{collapse_codomain()};
  SchemaMorphism collapse;
  collapse.domain = "collapse_domain";
  collapse.codomain = "collapse_codomain";
  collapse.node_map = {{NodeId{"a"}, NodeId{"ab"}},
                       {NodeId{"b"}, NodeId{"ab"}},
                       {NodeId{"c"}, NodeId{"c"}}};
  collapse.edge_map = {{LinkId{"l1"}, LinkId{"l"}}, {LinkId{"l2"}, LinkId{"l"}}};
  MorphismFlags flags = check_structural(dom, cod, collapse);
  CHECK(flags.structural);
  CHECK(flags.v_epi);
  CHECK_FALSE(flags.v_mono);
  CHECK(flags.e_epi);
  CHECK_FALSE(flags.e_mono);

  SUBCASE("breaking an endpoint image breaks structurality") {
    collapse.node_map[NodeId{"c"}] = NodeId{"ab"};
    CHECK_FALSE(check_structural(dom, cod, collapse).structural);
  }

  SUBCASE("missing entries raise a partial-map error") {
    collapse.node_map.erase(NodeId{"c"});
    CHECK_THROWS_AS((void)check_structural(dom, cod, collapse), Error);
  }
}

TEST_CASE("type conditions: variables into range constants, constants keep kinds") {
  BasicSchema dom;
  dom.name = "var_dom";
  dom.universe = testgen::small_universe();
  dom.nodes.emplace(NodeId{"a"}, SchemaElement::variable(
                                     "x", RangeDescriptor::kind_set(Sort::Node, {kAlpha})));

  BasicSchema cod;
  cod.name = "const_cod";
  cod.universe = testgen::small_universe();
  cod.nodes.emplace(NodeId{"b"}, SchemaElement::constant(kAlpha));

  SchemaMorphism m;
  m.node_map = {{NodeId{"a"}, NodeId{"b"}}};
  CHECK(check_typed(Schema{dom}, Schema{cod}, m));

  SUBCASE("out-of-range constant image") {
    cod.nodes.at(NodeId{"b"}) = SchemaElement::constant(kBeta);
    CHECK_FALSE(check_typed(Schema{dom}, Schema{cod}, m));
  }

  SUBCASE("constants cannot change kind") {
    dom.nodes.at(NodeId{"a"}) = SchemaElement::constant(kBeta);
    CHECK_FALSE(check_typed(Schema{dom}, Schema{cod}, m));
  }

  SUBCASE("constants cannot map to variables") {
    dom.nodes.at(NodeId{"a"}) = SchemaElement::constant(kAlpha);
    cod.nodes.at(NodeId{"b"}) = SchemaElement::variable(
        "y", RangeDescriptor::kind_set(Sort::Node, {kAlpha}));
    CHECK_FALSE(check_typed(Schema{dom}, Schema{cod}, m));
  }
}

TEST_CASE("composition: identity laws, flag preservation, associativity") {
  testgen::Rng rng(2323);
  testgen::GenOptions options;
  int tried = 0;
  for (int trial = 0; trial < 60 && tried < 30; ++trial) {
    Schema s = testgen::random_schema(rng, options, trial);
    auto [t, f] = testgen::random_quotient(rng, s);
    auto [u, g] = testgen::random_quotient(rng, t);

    SchemaMorphism id_s = identity_morphism(s);
    CHECK(compose(id_s, f) == f);
    SchemaMorphism id_t = identity_morphism(t);
    CHECK(compose(f, id_t) == f);

    MorphismFlags f_flags = check_structural(s, t, f);
    MorphismFlags g_flags = check_structural(t, u, g);
    REQUIRE(f_flags.structural);
    REQUIRE(g_flags.structural);
    SchemaMorphism gf = compose(f, g);
    MorphismFlags gf_flags = check_structural(s, u, gf);
    CHECK(gf_flags.structural);
    if (f_flags.typed && g_flags.typed) CHECK(gf_flags.typed);
    if (f_flags.weak && g_flags.weak) CHECK(gf_flags.weak);

    auto [w, h] = testgen::random_quotient(rng, u);
    CHECK(compose(compose(f, g), h) == compose(f, compose(g, h)));
    ++tried;
  }
  CHECK(tried > 0);
}

TEST_CASE("image: epimorphic image is the whole codomain") {
  testgen::Rng rng(2424);
  testgen::GenOptions options;
  options.deterministic_only = true;
  for (int trial = 0; trial < 60; ++trial) {
    Schema s = testgen::random_schema(rng, options, trial);
    auto [t, f] = testgen::random_quotient(rng, s);
    MorphismFlags flags = check_structural(s, t, f);
    REQUIRE(flags.ve_epi());
    ImageResult result = image(s, t, f);
    CHECK(result.image == t);
    MorphismFlags onto_flags = check_structural(s, result.image, result.onto);
    CHECK(onto_flags.ve_epi());
    CHECK(subschema_check(result.image, t).subschema);
  }
}

TEST_CASE("images of closed schemas are closed, images of connected schemas connected") {
  testgen::Rng rng(2525);
  testgen::GenOptions options;
  for (int trial = 0; trial < 120; ++trial) {
    Schema s = testgen::random_schema(rng, options, trial);
    auto [t, f] = testgen::random_quotient(rng, s);
    REQUIRE(check_structural(s, t, f).structural);
    ImageResult result = image(s, t, f);

    SchemaClassification source = classify_schema(s);
    if (source.roles == std::set<Role>{Role::Closed})
      CHECK(classify_schema(result.image).roles == std::set<Role>{Role::Closed});

    VariableMultigraph source_grid = schema_grid(s);
    auto det = source_grid.to_deterministic();
    auto image_det = schema_grid(result.image).to_deterministic();
    if (det && image_det && is_connected(*det)) CHECK(is_connected(*image_det));
  }
}

TEST_CASE("homomorphism search always finds the identity") {
  Schema fragment{grasp_subschema()};
  auto found = find_homomorphisms(fragment, fragment, {});
  CHECK(std::find(found.begin(), found.end(), identity_morphism(fragment)) != found.end());

  // On the full control program the typed mono search stays tractable.
  Schema s{control_program_schema()};
  HomSearchOptions options;
  options.typed = true;
  options.mono = true;
  auto typed_monos = find_homomorphisms(s, s, options);
  CHECK(std::find(typed_monos.begin(), typed_monos.end(), identity_morphism(s)) !=
        typed_monos.end());
}

TEST_CASE("homomorphism search equals brute-force enumeration") {
  testgen::Rng rng(2626);
  testgen::GenOptions options;
  options.max_nodes = 3;
  options.max_links = 3;
  options.max_extra_ports = 1;
  for (int trial = 0; trial < 40; ++trial) {
    Schema s, t;
    if (trial % 2 == 0) {
      s = testgen::random_basic_schema(rng, options, trial);
      t = testgen::random_basic_schema(rng, options, trial + 1000);
    } else {
      s = testgen::random_port_schema(rng, options, trial);
      t = testgen::random_port_schema(rng, options, trial + 1000);
    }

    for (bool typed : {false, true}) {
      HomSearchOptions search;
      search.typed = typed;
      auto found = find_homomorphisms(s, t, search);
      CHECK(found == find_homomorphisms(s, t, search));  // deterministic output
      auto expected = oracles::brute_force_homomorphisms(s, t, search);
      std::sort(found.begin(), found.end());
      std::sort(expected.begin(), expected.end());
      CHECK(found == expected);
    }

    HomSearchOptions weak;
    weak.weak_only = true;
    auto weak_found = find_homomorphisms(s, t, weak);
    auto weak_expected = oracles::brute_force_homomorphisms(s, t, weak);
    std::sort(weak_found.begin(), weak_found.end());
    std::sort(weak_expected.begin(), weak_expected.end());
    CHECK(weak_found == weak_expected);
  }
}

TEST_CASE("the search budget guard trips on demand") {
  Schema s{control_program_schema()};
  HomSearchOptions options;
  options.budget = 10;
  CHECK_THROWS_AS((void)find_homomorphisms(s, s, options), Error);
}

TEST_CASE("the grasp fragment embeds into the control program with mono search") {
  Schema part{grasp_subschema()};
  Schema whole{control_program_schema()};
  HomSearchOptions options;
  options.mono = true;
  auto found = find_homomorphisms(part, whole, options);
  REQUIRE_FALSE(found.empty());
  SchemaMorphism inclusion = *subschema_check(part, whole).witness;
  CHECK(std::find(found.begin(), found.end(), inclusion) != found.end());
}

TEST_CASE("subschema checks on the fixture family") {
  Schema part{grasp_subschema()};
  Schema lookalike{lookalike_subschema()};
  Schema whole{control_program_schema()};

  SubschemaResult grasp = subschema_check(part, whole);
  CHECK(grasp.subschema);
  CHECK(grasp.structural);

  SubschemaResult shape_only = subschema_check(lookalike, whole);
  CHECK(shape_only.structural);
  CHECK_FALSE(shape_only.subschema);

  SubschemaResult self = subschema_check(whole, whole);
  CHECK(self.subschema);
  CHECK(self.structural);
  CHECK(self.strong_structural);
}

TEST_CASE("strong structural subschemas are structural (ordering enforced)") {
  testgen::Rng rng(2727);
  testgen::GenOptions options;
  for (int trial = 0; trial < 100; ++trial) {
    Schema r = testgen::random_schema(rng, options, trial);
    Schema p = testgen::random_subschema(rng, r);
    SubschemaResult result = subschema_check(p, r);
    REQUIRE(result.subschema);
    if (result.strong_structural) CHECK(result.structural);
  }
}

TEST_CASE("subschema relations are transitive") {
  testgen::Rng rng(2828);
  testgen::GenOptions options;
  for (int trial = 0; trial < 100; ++trial) {
    Schema r = testgen::random_schema(rng, options, trial);
    Schema q = testgen::random_subschema(rng, r);
    Schema p = testgen::random_subschema(rng, q);
    SubschemaResult pq = subschema_check(p, q);
    SubschemaResult qr = subschema_check(q, r);
    SubschemaResult pr = subschema_check(p, r);
    if (pq.subschema && qr.subschema) CHECK(pr.subschema);
    if (pq.structural && qr.structural) CHECK(pr.structural);
  }
}

TEST_CASE("structural subschemas admit structural VE-monomorphisms") {
  testgen::Rng rng(2929);
  testgen::GenOptions options;
  options.max_nodes = 3;
  options.max_links = 3;
  for (int trial = 0; trial < 60; ++trial) {
    Schema r = testgen::random_schema(rng, options, trial);
    Schema p = testgen::random_subschema(rng, r);
    if (!subschema_check(p, r).structural) continue;
    HomSearchOptions search;
    search.mono = true;
    auto found = find_homomorphisms(p, r, search);
    bool structural_mono = false;
    for (const auto& m : found) {
      MorphismFlags flags = check_structural(p, r, m);
      if (flags.structural && flags.ve_mono()) structural_mono = true;
    }
    CHECK(structural_mono);
  }
}

TEST_CASE("completeness flags") {
  Schema whole{control_program_schema()};

  SUBCASE("the whole schema is complete in every way") {
    CompletenessFlags flags = completeness_flags(whole, whole);
    CHECK(flags.v_complete);
    CHECK(flags.e_complete);
    CHECK(flags.p_complete);
  }

  SUBCASE("dropping one incident edge breaks e-completeness only") {
    BasicSchema q = control_program_schema();
    q.links.erase(LinkId{"l10"});
    q.node_adjacency.erase(LinkId{"l10"});
    CompletenessFlags flags = completeness_flags(Schema{q}, whole);
    CHECK(flags.v_complete);
    CHECK_FALSE(flags.e_complete);
  }

  SUBCASE("all three flags force coincidence on deterministic schemas") {
    testgen::Rng rng(3030);
    testgen::GenOptions options;
    options.deterministic_only = true;
    for (int trial = 0; trial < 100; ++trial) {
      Schema r = testgen::random_schema(rng, options, trial);
      Schema q = testgen::random_subschema(rng, r);
      CompletenessFlags flags = completeness_flags(q, r);
      if (flags.v_complete && flags.e_complete && flags.p_complete) CHECK(q == r);
      const bool equal = q == r;
      if (equal) {
        CHECK(flags.v_complete);
        CHECK(flags.e_complete);
        CHECK(flags.p_complete);
      }
    }
  }

  SUBCASE("keeping all ports of a port-covered schema keeps its edges") {
    // Every edge of a port schema hangs on ports, so a subschema that keeps
    // all ports and every link those ports carry is e-complete; dropping a
    // link is detected.
    testgen::Rng rng(3232);
    testgen::GenOptions options;
    for (int trial = 0; trial < 100; ++trial) {
      Schema r = testgen::random_schema(rng, options, trial);
      const auto* rp = std::get_if<PortSchema>(&r);
      if (!rp || rp->links.empty()) continue;
      Schema q = r;  // all ports, all links
      CompletenessFlags flags = completeness_flags(q, r);
      REQUIRE(flags.p_complete);
      CHECK(flags.e_complete);

      PortSchema dropped = *rp;
      LinkId gone = dropped.links.begin()->first;
      dropped.links.erase(gone);
      dropped.adjacency.erase(gone);
      // Dropping the link can strand external assignments to it.
      for (auto it = dropped.external_assignment.begin();
           it != dropped.external_assignment.end();) {
        std::set<ExternalTarget> kept;
        for (const auto& target : it->second)
          if (target.kind != ExternalTarget::Kind::Link || target.id != gone.value)
            kept.insert(target);
        if (kept.empty()) it = dropped.external_assignment.erase(it);
        else {
          it->second = std::move(kept);
          ++it;
        }
      }
      CompletenessFlags partial = completeness_flags(Schema{dropped}, r);
      CHECK(partial.p_complete);
      CHECK_FALSE(partial.e_complete);
    }
  }

  SUBCASE("ports force their owners: p-complete implies v-complete") {
    testgen::Rng rng(3131);
    testgen::GenOptions options;
    for (int trial = 0; trial < 100; ++trial) {
      Schema r = testgen::random_schema(rng, options, trial);
      if (!std::holds_alternative<PortSchema>(r)) continue;
      // Only meaningful when every node carries a port.
      const PortSchema& rp = std::get<PortSchema>(r);
      std::set<NodeId> with_ports;
      for (const auto& [p, owners] : rp.internal_assignment)
        for (const auto& n : owners) with_ports.insert(n);
      if (with_ports.size() != rp.nodes.size()) continue;
      Schema q = testgen::random_subschema(rng, r);
      CompletenessFlags flags = completeness_flags(q, r);
      if (flags.p_complete) CHECK(flags.v_complete);
    }
  }
}

TEST_CASE("preimages and their completeness transfer") {
  testgen::Rng rng(3232);
  testgen::GenOptions options;
  options.deterministic_only = true;
  int checked_v = 0, checked_e = 0;
  for (int trial = 0; trial < 120; ++trial) {
    Schema s = testgen::random_schema(rng, options, trial);
    auto [t, f] = testgen::random_quotient(rng, s, true, /*preserve_determinism=*/true);
    MorphismFlags flags = check_structural(s, t, f);
    REQUIRE(flags.structural);

    Schema whole_preimage = preimage(s, t, f, t);
    CHECK(whole_preimage == s);

    Schema q = testgen::random_subschema(rng, t);
    Schema back = preimage(s, t, f, q);
    CompletenessFlags q_flags = completeness_flags(q, t);
    CompletenessFlags back_flags = completeness_flags(back, s);
    if (flags.v_epi && q_flags.v_complete) {
      CHECK(back_flags.v_complete);
      ++checked_v;
    }
    if (flags.e_epi && q_flags.e_complete) {
      CHECK(back_flags.e_complete);
      ++checked_e;
    }
  }
  CHECK(checked_v > 0);
  CHECK(checked_e > 0);
}

TEST_CASE("restriction preserves structure and monomorphy") {
  testgen::Rng rng(3333);
  testgen::GenOptions options;
  for (int trial = 0; trial < 80; ++trial) {
    Schema s = testgen::random_schema(rng, options, trial);
    Schema q = testgen::random_subschema(rng, s);
    SchemaMorphism id_restricted = restrict_morphism(s, s, identity_morphism(s), q);
    MorphismFlags flags = check_structural(q, s, id_restricted);
    CHECK(flags.structural);
    CHECK(flags.ve_mono());
  }

  SUBCASE("an epimorphism restricted to a proper part can lose epi-ness") {
    BasicSchema dom = collapse_domain();
    BasicSchema cod = collapse_codomain();
    SchemaMorphism collapse;
    collapse.node_map = {{NodeId{"a"}, NodeId{"ab"}},
                         {NodeId{"b"}, NodeId{"ab"}},
                         {NodeId{"c"}, NodeId{"c"}}};
    collapse.edge_map = {{LinkId{"l1"}, LinkId{"l"}}, {LinkId{"l2"}, LinkId{"l"}}};
    REQUIRE(check_structural(Schema{dom}, Schema{cod}, collapse).ve_epi());

    BasicSchema part;
    part.name = "part";
    part.universe = dom.universe;
    part.nodes.emplace(NodeId{"a"}, dom.nodes.at(NodeId{"a"}));
    SchemaMorphism restricted =
        restrict_morphism(Schema{dom}, Schema{cod}, collapse, Schema{part});
    CHECK_FALSE(check_structural(Schema{part}, Schema{cod}, restricted).ve_epi());
  }
}

TEST_CASE("concretizations induce slot-identity structural morphisms") {
  testgen::Rng rng(3434);
  testgen::GenOptions options;
  for (int trial = 0; trial < 80; ++trial) {
    Schema s = testgen::random_schema(rng, options, trial);
    Binding b = testgen::random_partial_binding(rng, s, 0.6);
    Schema con = concretize(s, b);
    // Con s -> s is structural; so is the abstraction direction s -> Con s at
    // the slot level whenever it is checked the other way round.
    SchemaMorphism down = slot_identity_morphism(con, s);
    CHECK(check_structural(con, s, down).structural);
    SchemaMorphism up = slot_identity_morphism(s, con);
    MorphismFlags up_flags = check_structural(s, con, up);
    CHECK(up_flags.structural);
    CHECK(type_conditions_hold(s, con, up));  // variables land inside their ranges
  }
}

TEST_CASE("the basic reduction is a weak homomorphism") {
  testgen::Rng rng(3535);
  testgen::GenOptions options;
  for (int trial = 0; trial < 60; ++trial) {
    PortSchema s = testgen::random_port_schema(rng, options, trial);
    BasicSchema basic = derive_basic_schema(s);
    SchemaMorphism m = slot_identity_morphism(Schema{s}, Schema{basic});
    MorphismFlags flags = check_structural(Schema{s}, Schema{basic}, m);
    CHECK(flags.weak);
    CHECK(type_conditions_hold(Schema{s}, Schema{basic}, m));
  }
}

TEST_CASE("connectivity and component counts under epimorphisms") {
  testgen::Rng rng(3636);
  testgen::GenOptions options;
  options.deterministic_only = true;
  options.open_prob = 0.1;
  for (int trial = 0; trial < 120; ++trial) {
    Schema s = testgen::random_schema(rng, options, trial);
    auto [t, f] = testgen::random_quotient(rng, s, true, /*preserve_determinism=*/true);
    MorphismFlags flags = check_structural(s, t, f);
    REQUIRE(flags.ve_epi());

    auto s_grid = schema_grid(s).to_deterministic();
    auto t_grid = schema_grid(t).to_deterministic();
    REQUIRE(s_grid.has_value());
    REQUIRE(t_grid.has_value());
    if (is_connected(*s_grid)) CHECK(is_connected(*t_grid));
    if (!is_connected(*t_grid)) CHECK_FALSE(is_connected(*s_grid));
    CHECK(components(*s_grid).size() >= components(*t_grid).size());
  }
}

TEST_CASE("fan-degree bounds transfer under vertex-injective edge-epimorphisms") {
  // Parallel links merge, nodes stay distinct: fan-in and fan-out in the
  // codomain bound those in the domain from below.
  testgen::Rng rng(3737);
  testgen::GenOptions options;
  options.deterministic_only = true;
  for (int trial = 0; trial < 120; ++trial) {
    Schema s = testgen::random_schema(rng, options, trial);
    auto [t, f] =
        testgen::random_quotient(rng, s, /*merge_nodes=*/false, /*preserve_determinism=*/true);
    MorphismFlags flags = check_structural(s, t, f);
    REQUIRE(flags.v_mono);
    REQUIRE(flags.e_epi);

    auto s_grid = schema_grid(s).to_deterministic();
    auto t_grid = schema_grid(t).to_deterministic();
    REQUIRE(s_grid.has_value());
    REQUIRE(t_grid.has_value());
    const auto& node_map = f.node_map;
    for (const auto& [a, b] : node_map) {
      if (!s_grid->has_vertex(vertex_of(a))) continue;
      FanDegrees domain_deg = fan_degrees(*s_grid, vertex_of(a));
      FanDegrees codomain_deg = fan_degrees(*t_grid, vertex_of(b));
      CHECK(codomain_deg.fan_in <= domain_deg.fan_in);
      CHECK(codomain_deg.fan_out <= domain_deg.fan_out);
    }
  }
}
