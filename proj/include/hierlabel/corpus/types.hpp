#pragma once

#include <cstdint>

namespace hierlabel {

using DocId = std::uint32_t;
using TermId = std::uint32_t;
using NodeId = std::uint32_t;
/// Term counts are 64-bit: collection totals of large corpora overflow 32 bits.
using Count = std::uint64_t;

}  // namespace hierlabel
