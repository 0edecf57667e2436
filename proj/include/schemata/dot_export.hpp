#pragma once

#include <string>

#include "schemata/schema.hpp"

namespace schemata {

struct DotOptions {
  std::string rankdir = "LR";
};

// One digraph in the graphical form: nodes labeled by kind or variable,
// information links solid, control links dashed, process links dotted, open
// edge sides drawn against point-shaped phantom terminals (named __env_*).
std::string export_dot(const PortSchema& s, const DotOptions& options = {});
std::string export_dot(const BasicSchema& s, const DotOptions& options = {});
std::string export_dot(const Schema& s, const DotOptions& options = {});
std::string export_dot(const GridAutomaton& ga, const DotOptions& options = {});
std::string export_dot(const BasicGridAutomaton& ga, const DotOptions& options = {});

}  // namespace schemata
