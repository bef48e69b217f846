#pragma once

#include "algorithms.hpp"
#include "tango.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bstlab {

enum class AlgorithmId {
    splay,
    move_to_root,
    static_balanced,
    lucas_greedy, // offline: rearrangement consults future searches
    tango,
};

inline const std::vector<AlgorithmId> &all_algorithms() {
    static const std::vector<AlgorithmId> ids{
        AlgorithmId::splay,        AlgorithmId::move_to_root, AlgorithmId::static_balanced,
        AlgorithmId::lucas_greedy, AlgorithmId::tango,
    };
    return ids;
}

inline std::string to_string(AlgorithmId id) {
    switch (id) {
    case AlgorithmId::splay:
        return "splay";
    case AlgorithmId::move_to_root:
        return "move_to_root";
    case AlgorithmId::static_balanced:
        return "static_balanced";
    case AlgorithmId::lucas_greedy:
        return "lucas_greedy";
    case AlgorithmId::tango:
        return "tango";
    }
    return "unknown";
}

inline std::optional<AlgorithmId> algorithm_from_name(std::string_view name) {
    for (AlgorithmId id : all_algorithms())
        if (to_string(id) == name)
            return id;
    return std::nullopt;
}

// Online algorithms decide each search from the past alone, so they are the
// only ones usable as epoch experts.
inline bool is_online(AlgorithmId id) { return id != AlgorithmId::lucas_greedy; }

inline Trace run_algorithm(AlgorithmId id, const SearchSequence &x) {
    switch (id) {
    case AlgorithmId::splay:
        return splay_execute(x);
    case AlgorithmId::move_to_root:
        return move_to_root_execute(x);
    case AlgorithmId::static_balanced:
        return static_balanced_execute(x);
    case AlgorithmId::lucas_greedy:
        return lucas_greedy_execute(x);
    case AlgorithmId::tango:
        return tango_execute(x);
    }
    throw std::invalid_argument("unknown algorithm id");
}

} // namespace bstlab
