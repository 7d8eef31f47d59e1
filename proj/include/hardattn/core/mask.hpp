#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace hardattn {

enum class MaskKind { None, FutureStrict, PastStrict, FutureNonStrict, PastNonStrict };

/// Which extremal position wins: leftmost or rightmost.
enum class Direction { Leftmost, Rightmost };

/// Whether query position i may see key position j.
inline bool mask_allows(MaskKind mask, std::size_t i, std::size_t j) {
  switch (mask) {
    case MaskKind::None: return true;
    case MaskKind::FutureStrict: return j < i;
    case MaskKind::PastStrict: return j > i;
    case MaskKind::FutureNonStrict: return j <= i;
    case MaskKind::PastNonStrict: return j >= i;
  }
  return false;
}

bool is_strict(MaskKind mask);
MaskKind nonstrict_of(MaskKind mask);

/// Text forms: none, j<i, j>i, j<=i, j>=i.
std::string mask_text(MaskKind mask);
MaskKind parse_mask(std::string_view text);

/// Text forms: leftmost, rightmost.
std::string direction_text(Direction dir);
Direction parse_direction(std::string_view text);

}  // namespace hardattn
