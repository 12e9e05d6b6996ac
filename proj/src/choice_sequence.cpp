#include "uag/choice_sequence.hpp"

#include <istream>
#include <sstream>

namespace uag {

void validate(const ChoiceSequence& z) {
    if (z.n < 1 || z.k < 1)
        throw std::invalid_argument("ChoiceSequence: n and k must be >= 1");
    if (z.entries.size() != static_cast<std::size_t>(z.k) * (z.n - 1))
        throw std::invalid_argument("ChoiceSequence: entry count must be k(n-1)");
    for (int i = 2; i <= z.n; ++i)
        for (int j = 0; j < z.k; ++j) {
            int v = z.at(i, j);
            if (v < 1 || v > i - 1)
                throw std::invalid_argument("ChoiceSequence: choice of vertex " +
                                            std::to_string(i) + " out of [1, i-1]");
        }
}

ChoiceSequence sample_choice_sequence(int n, int k, const RngSpec& rng) {
    if (n < 1 || k < 1)
        throw std::invalid_argument("sample_choice_sequence: n and k must be >= 1");
    ChoiceSequence z;
    z.n = n;
    z.k = k;
    z.entries.resize(static_cast<std::size_t>(k) * (n - 1));
    auto eng = make_engine(rng);
    std::size_t idx = 0;
    for (int i = 2; i <= n; ++i)
        for (int j = 0; j < k; ++j) z.entries[idx++] = uniform_vertex(eng, i - 1);
    return z;
}

std::uint64_t enumeration_count(int n, int k, std::uint64_t cap) {
    if (n < 1 || k < 1)
        throw std::invalid_argument("enumeration_count: n and k must be >= 1");
    std::uint64_t count = 1;
    for (int i = 2; i <= n; ++i) {
        std::uint64_t base = static_cast<std::uint64_t>(i - 1);
        for (int j = 0; j < k; ++j) {
            if (count > cap / (base == 0 ? 1 : base))
                throw EnumerationCapExceeded(
                    "enumeration refused: (n-1)!^k exceeds cap " + std::to_string(cap));
            count *= base;
        }
    }
    if (count > cap)
        throw EnumerationCapExceeded("enumeration refused: (n-1)!^k exceeds cap " +
                                     std::to_string(cap));
    return count;
}

std::string to_text(const ChoiceSequence& z) {
    std::ostringstream out;
    out << z.n << ' ' << z.k << '\n';
    for (int i = 2; i <= z.n; ++i) {
        for (int j = 0; j < z.k; ++j) {
            if (j) out << ' ';
            out << z.at(i, j);
        }
        out << '\n';
    }
    return out.str();
}

ChoiceSequence choice_sequence_from_text(std::istream& in) {
    ChoiceSequence z;
    if (!(in >> z.n >> z.k))
        throw std::runtime_error("choice sequence parse: missing 'n k' header");
    if (z.n < 1 || z.k < 1)
        throw std::runtime_error("choice sequence parse: invalid header");
    z.entries.resize(static_cast<std::size_t>(z.k) * (z.n - 1));
    for (auto& e : z.entries)
        if (!(in >> e)) throw std::runtime_error("choice sequence parse: truncated entries");
    validate(z);
    return z;
}

}  // namespace uag
