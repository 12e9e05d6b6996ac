// Choice sequences: the raw randomness of a uniform attachment graph.
// Vertices are 1-indexed; vertex i in [2,n] owns a block of k choices, each in [1, i-1].
#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "uag/rng.hpp"

namespace uag {

struct ChoiceSequence {
    int n = 1;
    int k = 1;
    // Block of vertex i occupies entries[(i-2)*k .. (i-2)*k + k - 1].
    std::vector<int> entries;

    std::span<const int> block(int vertex) const {
        return {entries.data() + static_cast<std::size_t>(vertex - 2) * k,
                static_cast<std::size_t>(k)};
    }
    int at(int vertex, int j) const {  // j in [0, k)
        return entries[static_cast<std::size_t>(vertex - 2) * k + j];
    }
    int& at(int vertex, int j) {
        return entries[static_cast<std::size_t>(vertex - 2) * k + j];
    }

    bool operator==(const ChoiceSequence&) const = default;
};

// Throws std::invalid_argument unless every entry obeys z_{i,j} in [1, i-1]
// and the entry count is exactly k(n-1).
void validate(const ChoiceSequence& z);

ChoiceSequence sample_choice_sequence(int n, int k, const RngSpec& rng);

inline constexpr std::uint64_t kDefaultEnumerationCap = 100'000'000ull;

// ((n-1)!)^k with overflow detection; anything that overflows is treated as
// exceeding any reasonable cap.
struct EnumerationCapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};
std::uint64_t enumeration_count(int n, int k,
                                std::uint64_t cap = kDefaultEnumerationCap);

// Yields every legal sequence exactly once (odometer order). Refuses up front
// if the support exceeds the cap.
template <typename Fn>
void for_each_choice_sequence(int n, int k, Fn&& fn,
                              std::uint64_t cap = kDefaultEnumerationCap) {
    enumeration_count(n, k, cap);  // throws on cap violation
    ChoiceSequence z;
    z.n = n;
    z.k = k;
    z.entries.assign(static_cast<std::size_t>(k) * (n - 1), 1);
    if (n == 1) {
        fn(static_cast<const ChoiceSequence&>(z));
        return;
    }
    for (;;) {
        fn(static_cast<const ChoiceSequence&>(z));
        // Advance the odometer: entry (i,j) counts in [1, i-1].
        int i = n, j = k - 1;
        for (;;) {
            if (z.at(i, j) < i - 1) {
                ++z.at(i, j);
                break;
            }
            z.at(i, j) = 1;
            if (j > 0) {
                --j;
            } else if (i > 2) {
                --i;
                j = k - 1;
            } else {
                return;  // wrapped past the first block
            }
        }
    }
}

// Line-oriented text format: header "n k", then one line per vertex in [2,n]
// with k space-separated choices.
std::string to_text(const ChoiceSequence& z);
ChoiceSequence choice_sequence_from_text(std::istream& in);

}  // namespace uag
