#pragma once

// Text format: a params header `n=5 k=3` followed by whitespace-separated
// letters `{1,2,3} {1,4,5}`; the empty word is `e`. `#` starts a comment.

#include <string>
#include <string_view>

#include "gnk/group.hpp"

namespace gnk {

std::string format_generator(Generator g);
/// Letters only, `e` for the identity.
std::string format_word(const Word& w);
/// Header line plus letters, as read by parse_word_file.
std::string format_word_file(const Word& w);
std::string format_parity(const ParityVector& parity);

/// Parses letters against known params.
Word parse_word(std::string_view text, const GroupParams& params);
/// Parses `n=.. k=..` followed by the letters. Throws ParseError or the
/// generator validation errors.
Word parse_word_file(std::string_view text);

}  // namespace gnk
