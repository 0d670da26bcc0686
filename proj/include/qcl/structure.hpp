#pragma once

// Structural elements of Cl_q(n,k): brackets, the central generators z_a,
// volume elements f_r, standardized coordinates, the tensor factorization
// Gamma, the center, and the Takeuchi splitting into classical algebras.

#include <map>
#include <string>
#include <vector>

#include "qcl/algebra.hpp"
#include "qcl/classical.hpp"
#include "qcl/relations.hpp"

namespace qcl {

/// x*y - t*y*x.
Element bracket(const Element& x, const Element& y, const Scalar& t);

/// The odd generators psi_a, psi_a^* (or phi_a, phi_a^*) and omega_a, for a = 1..n.
std::vector<Element> algebra_generators(const ContextPtr& ctx);
bool is_central(const Element& x);

/// z_a = q w_a - (q-1) psi_a psi_a^* w_a^{k+1}; in the phi presentation q w_a - (q-1) phi_a phi_a^* w_a.
Element central_generator(const ContextPtr& ctx, int a);
/// f_r = [x_1, x_1^*] ... [x_r, x_r^*] for 0 <= r <= n (f_0 = 1).
Element volume_element(const ContextPtr& ctx, int r);
/// eps_{2j-1} = x_j^* - x_j, eps_{2j} = x_j^* + x_j.
Element standardized_coordinate(const ContextPtr& ctx, int j);

GeneratorImages<Element> identity_images(const ContextPtr& ctx);
std::vector<RelationResidual<Element>> defining_relations(const ContextPtr& ctx);

struct TupleLess {
    bool operator()(const std::vector<Monomial>& x, const std::vector<Monomial>& y) const;
};

/// An element of the ordinary tensor power Cl_q(n,k)^{(x) m}.
class TensorElement {
   public:
    using Map = std::map<std::vector<Monomial>, Scalar, TupleLess>;

    TensorElement(ContextPtr factor, int m);
    /// x_1 (x) ... (x) x_m.
    static TensorElement pure(const std::vector<Element>& factors);

    const ContextPtr& factor_context() const noexcept { return factor_; }
    int m() const noexcept { return m_; }
    const Map& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    void add_term(const std::vector<Monomial>& tuple, const Scalar& c);
    TensorElement& operator+=(const TensorElement& rhs);
    friend TensorElement operator+(TensorElement a, const TensorElement& b) { return a += b; }
    TensorElement& operator*=(const Scalar& c);
    /// Componentwise product, no signs.
    friend TensorElement operator*(const TensorElement& a, const TensorElement& b);
    friend bool operator==(const TensorElement& a, const TensorElement& b) {
        return a.m_ == b.m_ && a.factor_->same_algebra(*b.factor_) && a.terms_ == b.terms_;
    }

    std::string to_string() const;

   private:
    ContextPtr factor_;
    int m_;
    Map terms_;
};

/// Gamma_q: Cl_q(n,k)^{(x) m} -> Cl_q(nm,k).
Element gamma(const TensorElement& t);
TensorElement gamma_inverse(const Element& x, int n, int m);

/// Solutions of [x, g] = 0 for every generator g, as elements.
std::vector<Element> center_basis(const ContextPtr& ctx);

struct CenterReport {
    std::size_t dimension = 0;   // dimension of the centralizer solve
    std::size_t expected = 0;    // (2k)^n
    std::size_t z_rank = 0;      // rank of the z-monomials
    bool z_central = false;      // every z-monomial commutes with all generators
    bool ok() const { return dimension == expected && z_rank == expected && z_central; }
};
CenterReport center_report(const ContextPtr& ctx);

/// prod_a z_a^{e_a} over all exponent vectors e in Z_{2k}^n.
std::vector<Element> z_monomials(const ContextPtr& ctx);

// ---------------------------------------------------------------------------
// Takeuchi splitting

/// The classical Clifford algebra, realized as the k = 1/2 phi algebra.
ContextPtr classical_context(const AlgebraContext& ctx);
/// Component labels j in Z_{2k}^n (z_a = zeta^{j_a}), row-major with index 1 slowest.
std::vector<std::vector<int>> takeuchi_labels(const AlgebraContext& ctx);
/// Images of the generators under theta_z for the label j.
GeneratorImages<Element> takeuchi_images(const ContextPtr& ctx, const std::vector<int>& label);
std::vector<Element> takeuchi(const Element& x);
Element takeuchi_inverse(const std::vector<Element>& components, const ContextPtr& target);

/// Words of the classical engine for a k = 1/2 element with rational coefficients.
classical::Combination to_classical(const Element& x);
}  // namespace qcl
