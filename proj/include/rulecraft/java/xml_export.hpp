#pragma once

#include <string>

#include "rulecraft/java/code_tree.hpp"

namespace rulecraft::java {

// Canonical XML: one element per node, tag = node kind name, attributes as
// documented in docs/xml-schema.md, two-space indentation, trailing newline.
std::string export_xml(const CodeTree& tree);

} // namespace rulecraft::java
