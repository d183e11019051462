#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "erg/graph.hpp"

namespace erg {

// PEG text format:
//   peg 1
//   n <num_vertices>
//   v <id> <e1> ... <ek>      (one line per vertex; `*` marks an erased entry)
// Vertex lines may be omitted for degree-0 vertices. The writer always emits
// every vertex line in id order, so its output round-trips byte for byte.

PartiallyErasedGraph parse_peg(std::string_view text);
PartiallyErasedGraph read_peg(std::istream& in);
PartiallyErasedGraph read_peg_file(const std::filesystem::path& path);

std::string to_peg(const PartiallyErasedGraph& g);
void write_peg(std::ostream& out, const PartiallyErasedGraph& g);
void write_peg_file(const std::filesystem::path& path, const PartiallyErasedGraph& g);

}  // namespace erg
