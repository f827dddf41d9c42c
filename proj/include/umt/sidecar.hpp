#pragma once

#include <string_view>
#include <vector>

#include "umt/supertree.hpp"

namespace umt {

/// Line-oriented side constraints:
///   predates a b c d    -> M_ab < M_cd
///   bounds a b LO HI    -> LO <= M_ab <= HI
/// Blank lines and `#` comments are ignored. Throws ParseError with the
/// 1-based line number.
std::vector<SideConstraint> parse_sidecar(std::string_view text);

}  // namespace umt
