#include "helical/planar.hpp"

#include <algorithm>
#include <stdexcept>

namespace helical {

DiscreteOperator assemble_planar_poisson(std::shared_ptr<const GridDomain> domain) {
    if (!domain) {
        throw std::invalid_argument("assemble_planar_poisson: null domain");
    }
    const GridDomain& dom = *domain;
    const double inv_h2 = 1.0 / (dom.h() * dom.h());
    std::vector<CsrMatrix::Entry> entries;
    entries.reserve(5 * dom.interior_count());
    for (const std::size_t p : dom.interior_nodes()) {
        const std::int64_t row = dom.unknown(p);
        const int i = dom.col(p);
        const int j = dom.row(p);
        double diag = 0.0;
        for (int k = 0; k < 4; ++k) {
            const std::size_t q = dom.node(i + kNeighbourOffsets[k][0], j + kNeighbourOffsets[k][1]);
            if (dom.is_interior(q)) {
                diag += inv_h2;
                entries.push_back({row, dom.unknown(q), -inv_h2});
            } else {
                diag += inv_h2 / std::max(dom.crossing_fraction(p, q), kMinCrossingFraction);
            }
        }
        entries.push_back({row, row, diag});
    }
    return DiscreteOperator(std::move(domain), CsrMatrix(dom.interior_count(), std::move(entries)),
                            std::nullopt);
}

}  // namespace helical
