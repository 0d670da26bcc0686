#pragma once

// Images of the twisted quantum groups U_q(g,k), g = sl_n, so_2n, so_2n+1,
// inside Cl_q(n,k), together with checkers for the defining relations of
// U_q(g,k), the degree pattern of the images, and the induced involutions.

#include <string>
#include <vector>

#include "qcl/algebra.hpp"

namespace qcl {

enum class CartanFamily { A, B, D };

std::string family_name(CartanFamily f);

/// A symmetrizable Cartan matrix a with root lengths d (d_i a_ij = d_j a_ji).
struct CartanDatum {
    CartanFamily family;
    int rank;
    std::vector<std::vector<int>> a;
    std::vector<int> d;

    /// The datum realized inside Cl_q(n,k): A_{n-1}, B_n or D_n.
    static CartanDatum for_clifford_rank(CartanFamily family, int n);
};

struct ThetaImage {
    CartanDatum datum;
    ContextPtr ctx;
    /// q_i = base^{d_i}; base is q, or q^{1/2} for type B.
    Scalar base;
    std::vector<Element> E, F, K, Kinv;

    Scalar q_i(int i) const { return base.pow(datum.d[i]); }
};

/// Type B needs a context with QSpec::sqrt_formal, so that q^{1/2} = s.
ThetaImage theta_image(const ContextPtr& ctx, CartanFamily family);

struct RelationCheck {
    std::string id;
    Element residual;
    bool pass() const { return residual.is_zero(); }
};

/// K commutation and inverses, K-conjugation, [E_i, F_j], and the q-Serre relations.
std::vector<RelationCheck> check_uqgk_relations(const ThetaImage& img);

/// deg E_i against e_i - e_{i+1}, e_{n-1} + e_n (type D) or e_n (type B), and deg F_i = -deg E_i.
std::vector<std::pair<std::string, bool>> degree_bookkeeping(const ThetaImage& img);

/// The commutator identities for psi-products used to verify the morphisms.
std::vector<RelationCheck> lemma_identities(const ContextPtr& ctx);

/// E^dagger = F, K^dagger = K; E^vee = F, K^vee = K^{-1}; E^t = E, K^t = K^{-1}.
std::vector<RelationCheck> induced_involution_check(const ThetaImage& img);

}  // namespace qcl
