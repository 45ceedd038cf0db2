#include "nkze/memory.hpp"

#include "nkze/error.hpp"

namespace nkze {

MemoryDB::MemoryDB(std::size_t capacity) : capacity_(capacity) {
    if (capacity_ == 0) throw ConfigError("memory capacity (theta) must be >= 1");
    slots_.reserve(capacity_);
}

MemorizeResult MemoryDB::memorize(MemoryEntry candidate) {
    for (auto& slot : slots_) {
        if (slot.entry.e == candidate.e) {
            if (candidate.fitness > slot.entry.fitness) {
                slot.entry = std::move(candidate);
                slot.seq = next_seq_++;
                return MemorizeResult::Replaced;
            }
            return MemorizeResult::Rejected;
        }
    }
    if (slots_.size() < capacity_) {
        slots_.push_back({std::move(candidate), next_seq_++});
        return MemorizeResult::Inserted;
    }
    auto& worst = slots_[worst_slot()];
    if (candidate.fitness > worst.entry.fitness) {
        worst = {std::move(candidate), next_seq_++};
        return MemorizeResult::Evicted;
    }
    return MemorizeResult::Rejected;
}

std::size_t MemoryDB::best_slot() const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < slots_.size(); ++i) {
        const auto& a = slots_[i];
        const auto& b = slots_[best];
        if (a.entry.fitness > b.entry.fitness || (a.entry.fitness == b.entry.fitness && a.seq < b.seq)) best = i;
    }
    return best;
}

std::size_t MemoryDB::worst_slot() const {
    std::size_t worst = 0;
    for (std::size_t i = 1; i < slots_.size(); ++i) {
        const auto& a = slots_[i];
        const auto& b = slots_[worst];
        if (a.entry.fitness < b.entry.fitness || (a.entry.fitness == b.entry.fitness && a.seq < b.seq)) worst = i;
    }
    return worst;
}

const MemoryEntry* MemoryDB::best() const { return slots_.empty() ? nullptr : &slots_[best_slot()].entry; }

const MemoryEntry* MemoryDB::worst() const { return slots_.empty() ? nullptr : &slots_[worst_slot()].entry; }

std::vector<MemoryEntry> MemoryDB::entries() const {
    std::vector<MemoryEntry> out;
    out.reserve(slots_.size());
    for (const auto& s : slots_) out.push_back(s.entry);
    return out;
}

} // namespace nkze
