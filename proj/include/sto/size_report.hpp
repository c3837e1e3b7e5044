#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace sto {

// Exact machine-word count of a built structure, by part. Accounting rules
// are documented on each structure; referenced input instances are never
// counted, only words the structure itself owns. Boolean table entries count
// one word each regardless of physical packing.
struct OracleSizeReport {
    std::vector<std::pair<std::string, uint64_t>> parts;
    uint64_t total_words = 0;

    void add(std::string name, uint64_t words) {
        parts.emplace_back(std::move(name), words);
        total_words += words;
    }

    uint64_t part(std::string_view name) const {
        for (const auto& [n, w] : parts)
            if (n == name) return w;
        return 0;
    }
};

}  // namespace sto
