#include "qset/generate.hpp"

#include <algorithm>

namespace qset {

std::uint64_t uniform(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

namespace {

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& pool) {
    return pool[uniform(rng, 0, pool.size() - 1)];
}

Qset random_body(Rng& rng, const GeneratorOptions& o, int depth, std::uint64_t max_qc) {
    std::uint64_t budget = uniform(rng, 0, max_qc);
    std::vector<Entry> entries;
    while (budget > 0 && entries.size() < o.max_classes) {
        const std::uint64_t kinds = depth > 0 ? 3 : 2;
        const std::uint64_t kind = uniform(rng, 0, kinds - 1);
        if (kind == 1 && !o.macros.empty()) {
            entries.push_back({Shape::macro(pick(rng, o.macros)), 1});
            budget -= 1;
            continue;
        }
        if (kind == 2) {
            Shape nested = Shape::of(random_body(rng, o, depth - 1, std::min(o.nested_qc, max_qc)));
            const std::uint64_t n = is_ding(nested) ? 1 : uniform(rng, 1, budget);
            entries.push_back({std::move(nested), n});
            budget -= n;
            continue;
        }
        const std::uint64_t n = uniform(rng, 1, budget);
        entries.push_back({Shape::micro(pick(rng, o.species)), n});
        budget -= n;
    }
    return Qset::canonical(std::move(entries));
}

} // namespace

Qset random_qset(Rng& rng, const GeneratorOptions& options) {
    return random_body(rng, options, options.max_depth, options.max_qc);
}

Qset random_subqset(Rng& rng, const Qset& x) {
    std::vector<Entry> out;
    for (const auto& e : x.entries()) {
        if (auto k = uniform(rng, 0, e.count); k > 0)
            out.push_back({e.shape, k});
    }
    return Qset::canonical(std::move(out));
}

Shape random_shape(Rng& rng, const GeneratorOptions& options) {
    switch (uniform(rng, 0, 2)) {
    case 0: return Shape::micro(pick(rng, options.species));
    case 1:
        if (!options.macros.empty())
            return Shape::macro(pick(rng, options.macros));
        return Shape::micro(pick(rng, options.species));
    default: {
        GeneratorOptions nested = options;
        nested.max_qc = options.nested_qc;
        nested.max_depth = std::max(0, options.max_depth - 1);
        return Shape::of(random_qset(rng, nested));
    }
    }
}

} // namespace qset
