#pragma once

#include <bit>

namespace qcl {

template <typename Piece, typename CoeffMap>
Element map_factorwise(const Element& x, const ContextPtr& target, Piece&& piece, CoeffMap&& coeff_map, bool reversed) {
    const int n = x.context()->n();
    Element out(target);
    Terms acc;
    std::vector<const Rank1Expansion*> lists(n);
    for (const auto& [m, c] : x.terms()) {
        bool zero = false;
        for (int a = 0; a < n; ++a) {
            lists[a] = &piece(a, m.p_at(a), m.d_at(a), static_cast<int>(m.v[a]));
            if (lists[a]->empty()) zero = true;
        }
        if (zero) continue;
        Scalar base = coeff_map(c);
        if (reversed) {
            // Reversing n factors of which P are odd costs (-1)^{P(P-1)/2}.
            const int odd = std::popcount(m.odd());
            if ((odd * (odd - 1) / 2) % 2 == 1) base = -base;
        }
        // Odometer over one term from each index.
        std::vector<std::size_t> pos(n, 0);
        while (true) {
            Monomial r;
            Scalar coeff = base;
            for (int a = 0; a < n; ++a) {
                const Rank1Term& t = (*lists[a])[pos[a]];
                if (t.p) r.p |= 1U << a;
                if (t.d) r.d |= 1U << a;
                r.v[a] = t.v;
                coeff *= t.coeff;
            }
            auto [it, inserted] = acc.try_emplace(r, coeff);
            if (!inserted) {
                it->second += coeff;
            }
            int a = 0;
            while (a < n && ++pos[a] == lists[a]->size()) pos[a++] = 0;
            if (a == n) break;
        }
    }
    for (auto& [m, c] : acc) out.add_term(m, c);
    return out;
}

}  // namespace qcl
