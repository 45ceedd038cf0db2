#include "nkze/guide.hpp"

#include <algorithm>
#include <stdexcept>

namespace nkze {

GuidingVector GuidingVector::random(std::size_t n, Rng& rng) {
    GuidingVector out;
    out.p.resize(n);
    for (auto& v : out.p) v = rng.uniform01();
    out.clamp();
    return out;
}

void GuidingVector::clamp() {
    for (auto& v : p) v = std::clamp(v, kProbFloor, kProbCeil);
}

GuidingVector learn_towards(GuidingVector guide, const SearchPolicy& target, double alpha) {
    if (guide.size() != target.size()) throw std::logic_error("learn_towards: length mismatch");
    for (std::size_t i = 0; i < guide.p.size(); ++i)
        guide.p[i] = (1.0 - alpha) * guide.p[i] + alpha * static_cast<double>(target[i]);
    guide.clamp();
    return guide;
}

SearchPolicy sample_policy(const GuidingVector& guide, Rng& rng) {
    SearchPolicy g(guide.size());
    for (std::size_t i = 0; i < guide.p.size(); ++i) g.set(i, rng.uniform01() < guide.p[i]);
    return g;
}

} // namespace nkze
