#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "umt/tree.hpp"

namespace umt {

/// Parses exactly one `Tree := Node ";"`. Internal labels take the form
/// `Label`, `#Rank` or `Label#Rank`; `:length` suffixes are skipped.
/// Throws ParseError (byte offset) on malformed text or duplicate labels.
PhyloTree parse_newick(std::string_view text);

/// Parses every tree in `text` (trees are `;`-terminated).
std::vector<PhyloTree> parse_newick_forest(std::string_view text);

std::string to_newick(const PhyloTree& tree);

/// True for `[A-Za-z0-9_.-]+`.
bool is_valid_label(std::string_view label);

}  // namespace umt
