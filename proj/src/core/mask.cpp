#include "hardattn/core/mask.hpp"

#include "hardattn/core/error.hpp"

namespace hardattn {

bool is_strict(MaskKind mask) {
  return mask == MaskKind::FutureStrict || mask == MaskKind::PastStrict;
}

MaskKind nonstrict_of(MaskKind mask) {
  switch (mask) {
    case MaskKind::FutureStrict: return MaskKind::FutureNonStrict;
    case MaskKind::PastStrict: return MaskKind::PastNonStrict;
    default: return mask;
  }
}

std::string mask_text(MaskKind mask) {
  switch (mask) {
    case MaskKind::None: return "none";
    case MaskKind::FutureStrict: return "j<i";
    case MaskKind::PastStrict: return "j>i";
    case MaskKind::FutureNonStrict: return "j<=i";
    case MaskKind::PastNonStrict: return "j>=i";
  }
  return "none";
}

MaskKind parse_mask(std::string_view text) {
  if (text == "none") return MaskKind::None;
  if (text == "j<i") return MaskKind::FutureStrict;
  if (text == "j>i") return MaskKind::PastStrict;
  if (text == "j<=i") return MaskKind::FutureNonStrict;
  if (text == "j>=i") return MaskKind::PastNonStrict;
  throw Error("unknown mask '" + std::string(text) + "'");
}

std::string direction_text(Direction dir) {
  return dir == Direction::Leftmost ? "leftmost" : "rightmost";
}

Direction parse_direction(std::string_view text) {
  if (text == "leftmost") return Direction::Leftmost;
  if (text == "rightmost") return Direction::Rightmost;
  throw Error("unknown direction '" + std::string(text) + "'");
}

}  // namespace hardattn
