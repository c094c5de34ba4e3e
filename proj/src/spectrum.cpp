#include "diffam/spectrum.hpp"

#include <numeric>
#include <optional>

namespace diffam {

long long Spectrum::total() const {
    return std::accumulate(counts.begin(), counts.end(), 0LL);
}

std::vector<Elem> Spectrum::support() const {
    std::vector<Elem> out;
    for (Elem g = 0; g < static_cast<Elem>(counts.size()); ++g)
        if (counts[g] != 0) out.push_back(g);
    return out;
}

bool Spectrum::constant_on(const std::vector<Elem>& where, long long value) const {
    for (Elem g : where)
        if (counts[g] != value) return false;
    return true;
}

std::optional<long long> Spectrum::uniform_value(const std::vector<Elem>& where) const {
    if (where.empty()) return std::nullopt;
    long long v = counts[where.front()];
    for (Elem g : where)
        if (counts[g] != v) return std::nullopt;
    return v;
}

namespace {

void require_block(const FiniteGroup& group, const std::vector<Elem>& block) {
    for (Elem x : block)
        if (x < 0 || x >= group.order())
            throw Error(ErrorKind::invalid_parameter,
                        "block element index " + std::to_string(x) + " out of range");
}

} // namespace

Spectrum internal_differences(const FiniteGroup& group, const std::vector<Elem>& block) {
    require_block(group, block);
    Spectrum s;
    s.counts.assign(group.order(), 0);
    for (Elem x : block)
        for (Elem y : block)
            if (x != y) ++s.counts[group.difference(x, y)];
    return s;
}

Spectrum external_differences(const FiniteGroup& group, const std::vector<Elem>& a,
                              const std::vector<Elem>& b) {
    require_block(group, a);
    require_block(group, b);
    Spectrum s;
    s.counts.assign(group.order(), 0);
    for (Elem x : a)
        for (Elem y : b) ++s.counts[group.difference(x, y)];
    return s;
}

Spectrum family_internal(const FiniteGroup& group, const std::vector<std::vector<Elem>>& blocks) {
    Spectrum s;
    s.counts.assign(group.order(), 0);
    for (const auto& block : blocks) {
        require_block(group, block);
        for (Elem x : block)
            for (Elem y : block)
                if (x != y) ++s.counts[group.difference(x, y)];
    }
    return s;
}

Spectrum family_external(const FiniteGroup& group, const std::vector<std::vector<Elem>>& blocks) {
    Spectrum s;
    s.counts.assign(group.order(), 0);
    for (size_t i = 0; i < blocks.size(); ++i) require_block(group, blocks[i]);
    for (size_t i = 0; i < blocks.size(); ++i)
        for (size_t j = 0; j < blocks.size(); ++j) {
            if (i == j) continue;
            for (Elem x : blocks[i])
                for (Elem y : blocks[j]) ++s.counts[group.difference(x, y)];
        }
    return s;
}

} // namespace diffam
