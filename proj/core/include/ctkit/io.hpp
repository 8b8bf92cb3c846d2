#pragma once

// Text formats for groups and modules.
//
// Group file:
//   format: 1
//   p: 2                (optional unless the group is trivial)
//   order: 4
//   name: ...           (optional)
//   generators: 1 2     (optional; computed when absent)
//   table:
//   <order rows of order indices, 0 = identity>
//
// Module file:
//   format: 1
//   p: 2
//   e: 8
//   group: catalog dihedral 8 | file path/to/group.txt | inline
//   (for inline: order, name, generators, table as above)
//   torsion: 1 1 2
//   free_rank: 0
//   action:
//   <dim rows of dim entries, one matrix per group generator>
//
// '#' starts a comment. Entries may be any integers; they are reduced modulo p^e.

#include <filesystem>
#include <string>
#include <string_view>

#include "ctkit/group.hpp"
#include "ctkit/module.hpp"

namespace ctkit {

GroupPtr parse_group(std::string_view text);
std::string serialize_group(const PGroup& g);
GroupPtr read_group_file(const std::filesystem::path& path);

/// "catalog <name> <params>" or "file <path>"; relative paths resolve against `base`.
GroupPtr resolve_group_reference(const std::string& reference, const std::filesystem::path& base = {});

FgModule parse_module(std::string_view text, const std::filesystem::path& base = {});
/// Canonical form with the group inline; parse_module(serialize_module(a)) reproduces a exactly.
std::string serialize_module(const FgModule& a);
FgModule read_module_file(const std::filesystem::path& path);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace ctkit
