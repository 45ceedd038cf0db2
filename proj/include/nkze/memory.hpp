#pragma once

#include "nkze/bits.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace nkze {

struct MemoryEntry {
    SearchPolicy g;
    ShapePolicy e;
    double fitness = 0.0;
};

enum class MemorizeResult {
    Inserted, ///< new shape string, room available
    Replaced, ///< same shape string, candidate fitter
    Evicted,  ///< new shape string at capacity, worst entry evicted
    Rejected,
};

/// Bounded archive of elite policies, at most one per shape string.
class MemoryDB {
  public:
    explicit MemoryDB(std::size_t capacity = 50);

    MemorizeResult memorize(MemoryEntry candidate);

    /// Highest fitness, earliest insertion on ties. nullptr when empty.
    const MemoryEntry* best() const;
    /// Lowest fitness, earliest insertion on ties. nullptr when empty.
    const MemoryEntry* worst() const;

    std::size_t size() const noexcept { return slots_.size(); }
    std::size_t capacity() const noexcept { return capacity_; }
    bool empty() const noexcept { return slots_.empty(); }

    std::vector<MemoryEntry> entries() const;

  private:
    struct Slot {
        MemoryEntry entry;
        std::uint64_t seq;
    };
    std::size_t best_slot() const;
    std::size_t worst_slot() const;

    std::size_t capacity_;
    std::uint64_t next_seq_ = 0;
    std::vector<Slot> slots_;
};

} // namespace nkze
