#pragma once

#include <string>

#include "hardattn/transformer/model.hpp"

namespace hardattn::transformer {

/// JSON weight file. Scalars are "p/q" strings; matrices are written as
/// {"shape": [rows, cols], "entries": [[row, col, "p/q"], ...]} and may also
/// be given densely as arrays of rows.
std::string print_transformer(const Transformer& t);
Transformer parse_transformer(const std::string& json_text);

}  // namespace hardattn::transformer
