// Regenerates the fixture documents under fixtures/ from the canonical
// builders. Run after changing tests/support/fixtures.cpp; the io unit tests
// pin the files to the builders.

#include <fstream>
#include <iostream>

#include "fixtures.hpp"
#include "schemata/text_format.hpp"

using namespace schemata;
using namespace schemata::fixtures;

namespace {

void write(const std::string& dir, const std::string& name, const std::string& text) {
  std::ofstream out(dir + "/" + name, std::ios::binary);
  out << text;
  std::cout << "wrote " << name << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: write_fixtures FIXTURE_DIR\n";
    return 2;
  }
  const std::string dir = argv[1];
  write(dir, "fig21_automaton.gsf", serialize(reference_automaton()));
  write(dir, "fig51_schema.gsf", serialize(reference_schema()));
  write(dir, "fig52_schema.gsf", serialize(control_program_schema()));
  write(dir, "fig58_schema.gsf", serialize(grasp_subschema()));
  write(dir, "fig56_schema.gsf", serialize(lookalike_subschema()));
  write(dir, "fig53_automaton.gsf", serialize(gate_fixture().automaton));
  write(dir, "kinds.universe", serialize_kind_universe(fixture_universe()));
  return 0;
}
