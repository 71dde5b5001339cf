#pragma once

#include <cstdint>

namespace fastsax {

/// Tally of abstract operation classes executed by the search logic.
/// Counters are bumped where the arithmetic happens, once per conceptual
/// add/subtract, multiply/divide, comparison, square root, absolute value,
/// or breakpoint-table lookup. Loop bookkeeping is not counted.
struct OpCounts {
    std::uint64_t adds = 0;
    std::uint64_t mults = 0;
    std::uint64_t compares = 0;
    std::uint64_t sqrts = 0;
    std::uint64_t abss = 0;
    std::uint64_t lookups = 0;

    OpCounts& operator+=(const OpCounts& o) {
        adds += o.adds;
        mults += o.mults;
        compares += o.compares;
        sqrts += o.sqrts;
        abss += o.abss;
        lookups += o.lookups;
        return *this;
    }

    std::uint64_t total() const {
        return adds + mults + compares + sqrts + abss + lookups;
    }

    bool operator==(const OpCounts&) const = default;
};

}  // namespace fastsax
