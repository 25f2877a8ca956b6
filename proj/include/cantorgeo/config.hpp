#pragma once

#include <string>

#include "cantorgeo/cantor.hpp"

namespace cantorgeo {

/*
 * Flat key=value spec files, one pair per line, '#' starts a comment.
 *
 *   kind = constant        q = 1/3
 *   kind = explicit        values = 0.5, 0.2, 0.7   [repeat = true]
 *   kind = recursive-i     q1 = 0.5
 *   kind = composite-ii    p = half-pi-sq-over-log | explicit   [p_values = ...]
 *                          a = geometric | explicit             [a_values = ...]
 *                          d = 1/2
 *   horizon_hint = 50      (any kind)
 */
OmegaSpec parse_spec_text(const std::string& text);
OmegaSpec parse_spec(const std::string& path);

}  // namespace cantorgeo
