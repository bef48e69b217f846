#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace bstlab {

using Key = int;
using Time = int;

// A sequence of searches over the key universe [1..n]. Keys may repeat; the
// universe size n is part of the value because costs and bounds depend on it.
struct SearchSequence {
    int n = 0;
    std::vector<Key> keys;

    int length() const { return static_cast<int>(keys.size()); }

    friend bool operator==(const SearchSequence &, const SearchSequence &) = default;
};

inline void validate(const SearchSequence &x) {
    if (x.n <= 0)
        throw std::invalid_argument("search sequence: universe size must be positive");
    for (Key k : x.keys)
        if (k < 1 || k > x.n)
            throw std::invalid_argument("search sequence: key " + std::to_string(k) +
                                        " outside [1.." + std::to_string(x.n) + "]");
}

inline SearchSequence make_sequence(int n, std::vector<Key> keys) {
    SearchSequence x{n, std::move(keys)};
    validate(x);
    return x;
}

} // namespace bstlab
