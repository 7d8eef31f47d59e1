#pragma once

#include "hardattn/transformer/model.hpp"

namespace hardattn::transformer {

/// T1 (+) T2: width d1 + d2, depth max(L1, L2) with identity layers padding
/// the shallower side, heads side by side, block-diagonal FFNs. Activations
/// are the concatenation [T1(w); T2(w)]. The output layer of T1 is kept
/// (padded with zeros) when present, else that of T2.
Transformer parallel_compose(const Transformer& t1, const Transformer& t2);

}  // namespace hardattn::transformer
