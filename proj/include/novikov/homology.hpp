#ifndef NOVIKOV_HOMOLOGY_HPP
#define NOVIKOV_HOMOLOGY_HPP

#include "novikov/cone.hpp"
#include "novikov/smith.hpp"

namespace novikov {

/// Ranks of homology per degree over a declared field.
struct BettiTable {
    std::vector<int> ranks;

    int rank(int i) const {
        return (i < 0 || i >= static_cast<int>(ranks.size())) ? 0 : ranks[i];
    }

    long euler_characteristic() const {
        long chi = 0;
        for (size_t i = 0; i < ranks.size(); ++i) chi += (i & 1) ? -ranks[i] : ranks[i];
        return chi;
    }

    /// Equality as graded rank functions: missing degrees count as zero.
    bool operator==(const BettiTable& o) const {
        const size_t n = std::max(ranks.size(), o.ranks.size());
        for (size_t i = 0; i < n; ++i)
            if (rank(static_cast<int>(i)) != o.rank(static_cast<int>(i))) return false;
        return true;
    }
    bool operator!=(const BettiTable& o) const { return !(*this == o); }
};

namespace homologydetail {

template <typename T>
void require_field(const BasedComplex<T>& c) {
    if constexpr (std::is_same_v<T, GroundElement>) {
        if (c.proto().ring()->kind() != RingKind::Rationals)
            throw unsupported_ring_error("homology ranks need a field: use Q or Q(z)");
    } else if constexpr (!std::is_same_v<T, RationalFunction>) {
        throw unsupported_ring_error("homology ranks need a field: use Q or Q(z)");
    }
}

} // namespace homologydetail

/// Betti numbers over a field: rank H_i = rank C_i - rank d_i - rank d_{i+1}.
template <typename T>
BettiTable betti(const BasedComplex<T>& c) {
    homologydetail::require_field(c);
    BettiTable t;
    std::vector<int> dr(c.top_degree() + 2, 0);
    for (int i = 1; i <= c.top_degree(); ++i) dr[i] = rank(c.d(i));
    long chi_c = 0;
    for (int i = 0; i <= c.top_degree(); ++i) {
        t.ranks.push_back(c.rank(i) - dr[i] - dr[i + 1]);
        chi_c += (i & 1) ? -c.rank(i) : c.rank(i);
    }
    for (int r : t.ranks)
        if (r < 0) throw internal_check_error("negative homology rank");
    if (t.euler_characteristic() != chi_c)
        throw internal_check_error("Euler characteristic identity failed");
    return t;
}

/// Integral homology of one degree via Smith normal form: free rank and
/// torsion divisors of H_i = ker d_i / im d_{i+1}.
struct IntegralHomology {
    int free_rank = 0;
    std::vector<Int> torsion; ///< divisors > 1
};

inline IntegralHomology integral_homology(const BasedComplex<GroundElement>& c, int i) {
    if (c.proto().ring()->kind() != RingKind::Integers)
        throw unsupported_ring_error("integral homology needs coefficient ring Z");
    SmithResult di = smith_normal_form(c.d(i));
    SmithResult di1 = smith_normal_form(c.d(i + 1));
    IntegralHomology h;
    const int kernel_rank = c.rank(i) - di.rank();
    h.free_rank = kernel_rank - di1.rank();
    for (const Int& d : di1.divisors)
        if (d > 1) h.torsion.push_back(d);
    return h;
}

/// Prop-1.1-style comparison: the cone and the cokernel of an embedding
/// have the same homology.  Returns the comparison verdict; any false on
/// valid input is a defect upstream.
template <typename T>
bool compare_cone_coker(const ChainMap<T>& phi) {
    ConeProjection<T> cp = cone_projection(phi);
    return betti(cp.cone) == betti(cp.coker.complex);
}

} // namespace novikov

#endif
