#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace adr {

// Splits text into lowercased tokens on every non-alphanumeric byte.
// No stopword removal and no stemming. ASCII letters are lowercased;
// bytes >= 0x80 (UTF-8 continuation and lead bytes) are kept verbatim,
// so multi-byte characters pass through unchanged.
std::vector<std::string> tokenize(std::string_view text);

} // namespace adr
