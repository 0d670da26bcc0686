#pragma once

// The algebra Cl_q(n,k): contexts, normal-form monomials and elements.
//
// A context fixes the rank n, the twist k (stored as 2k), the generator
// presentation and the value of q.  In the psi presentation the generators are
// psi_a, psi_a^*, omega_a and k must be an integer; the phi presentation uses
// phi_a = psi_a, phi_a^* = psi_a^* omega_a^k and admits half-integer k.

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qcl/scalar.hpp"

namespace qcl {

inline constexpr int kMaxRank = 16;
inline constexpr int kMaxTwiceK = 64;

enum class Convention { psi, phi };

struct QSpec {
    enum class Kind { formal, sqrt_formal, numeric };
    Kind kind = Kind::formal;
    mpq_class value;  // numeric only

    static QSpec formal() { return {}; }
    /// Scalars live in a variable s with q = s^2.
    static QSpec sqrt_formal() { return {Kind::sqrt_formal, 0}; }
    static QSpec numeric(const mpq_class& v) { return {Kind::numeric, v}; }
};

/// One term of a rank-1 product: coeff * psi^p (psi^*)^d omega^v.
struct Rank1Term {
    Scalar coeff;
    uint8_t p, d, v;
};
using Rank1Expansion = std::vector<Rank1Term>;

class AlgebraContext;
using ContextPtr = std::shared_ptr<const AlgebraContext>;

class AlgebraContext {
   public:
    static ContextPtr create(int n, int twice_k, Convention convention = Convention::psi, QSpec q = QSpec::formal());

    int n() const noexcept { return n_; }
    int twice_k() const noexcept { return twice_k_; }
    bool integer_k() const noexcept { return twice_k_ % 2 == 0; }
    /// k itself; throws DomainError for half-integer k.
    int k() const;
    std::string k_string() const;
    Convention convention() const noexcept { return convention_; }
    const QSpec& q_spec() const noexcept { return q_spec_; }
    bool formal_q() const noexcept { return q_spec_.kind != QSpec::Kind::numeric; }

    const Scalar& q() const noexcept { return q_; }
    /// The scalar indeterminate: q itself, or s when q = s^2.
    Scalar variable() const;
    const std::string& var_name() const noexcept { return var_; }
    int conductor() const noexcept { return conductor_; }
    /// zeta_{2k}^power.
    Scalar zeta(long power = 1) const;

    /// q^{2k} == 1.
    bool q_is_root_of_unity() const;
    /// The coefficient automorphism realizing q -> q^{-1}; throws when unavailable.
    Scalar invert_q(const Scalar& c) const;
    bool can_invert_q() const;

    ContextPtr with_rank(int n) const;
    ContextPtr with_convention(Convention c) const;

    bool same_algebra(const AlgebraContext& other) const;

    /// Product of rank-1 monomials (p,d,v) * (p',d',v').
    const Rank1Expansion& rank1_product(int p, int d, int v, int p2, int d2, int v2) const {
        return table_[rank1_index(p, d, v) * pieces() + rank1_index(p2, d2, v2)];
    }
    /// Normal form of psi^p (psi^*)^d omega^e for any e >= 0.
    Rank1Expansion reduce_rank1(int p, int d, long e) const;

    int pieces() const noexcept { return 4 * twice_k_; }
    int rank1_index(int p, int d, int v) const noexcept { return (p * 2 + d) * twice_k_ + v; }

    /// Per-piece images for a factorwise map, built once per key and context.
    const std::vector<Rank1Expansion>& piece_images(int key,
                                                    const std::function<std::vector<Rank1Expansion>()>& build) const;

   private:
    AlgebraContext(int n, int twice_k, Convention convention, QSpec q);
    void build_table();
    void reduce_into(int p, int d, long e, const Scalar& coeff, Rank1Expansion& out) const;

    int n_;
    int twice_k_;
    Convention convention_;
    QSpec q_spec_;
    Scalar q_;
    Scalar q_pow_minus_2k_;
    std::string var_;
    int conductor_;
    std::vector<Rank1Expansion> table_;
    mutable std::mutex cache_mutex_;
    mutable std::map<int, std::vector<Rank1Expansion>> piece_cache_;
};

/// psi^{p_a} (psi_a^*)^{d_a} omega_a^{v_a} over a = 1..n, stored as bit masks.
struct Monomial {
    uint32_t p = 0;
    uint32_t d = 0;
    std::array<uint8_t, kMaxRank> v{};

    int p_at(int a) const { return (p >> a) & 1U; }
    int d_at(int a) const { return (d >> a) & 1U; }
    /// Parity mask: bit a set when the index-a factor is odd.
    uint32_t odd() const { return p ^ d; }

    friend bool operator==(const Monomial& x, const Monomial& y) { return x.p == y.p && x.d == y.d && x.v == y.v; }
};

/// Per index ascending, compare (p, d, v) lexicographically.
struct MonomialLess {
    bool operator()(const Monomial& x, const Monomial& y) const;
};

using Terms = std::map<Monomial, Scalar, MonomialLess>;

enum class Gen { psi, psid, w, winv, phi, phid };

class Element {
   public:
    explicit Element(ContextPtr ctx);
    static Element scalar(ContextPtr ctx, const Scalar& c);
    static Element monomial(ContextPtr ctx, const Monomial& m, const Scalar& c = 1);

    const ContextPtr& context() const noexcept { return ctx_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    /// The coefficient of the identity monomial.
    Scalar constant_term() const;
    /// True when the element is a multiple of the identity.
    bool is_scalar() const;

    void add_term(const Monomial& m, const Scalar& c);

    Element operator-() const;
    Element& operator+=(const Element& rhs);
    Element& operator-=(const Element& rhs);
    Element& operator*=(const Scalar& c);

    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    friend Element operator*(const Element& a, const Element& b);
    friend Element operator*(Element a, const Scalar& c) { return a *= c; }
    friend Element operator*(const Scalar& c, Element a) { return a *= c; }
    friend bool operator==(const Element& a, const Element& b);
    friend bool operator!=(const Element& a, const Element& b) { return !(a == b); }

    Element pow(long e) const;

    /// Canonical text such as `q*w1 - q*p1*d1`.
    std::string to_string() const;

   private:
    ContextPtr ctx_;
    Terms terms_;
};

/// Signed sum of `coeff*token` terms in the canonical text style; an empty token is the identity.
std::string format_combination(const std::vector<std::pair<std::string, Scalar>>& terms, std::string_view var);

void check_same_context(const Element& a, const Element& b);

/// Accumulate c * x * y into out (x, y basis monomials).
void multiply_monomials(const AlgebraContext& ctx, const Monomial& x, const Monomial& y, const Scalar& c, Terms& out);

Element generator(const ContextPtr& ctx, Gen kind, int a);
Element omega_power(const ContextPtr& ctx, int a, long e);

/// Common Z^n degree p - d, or nullopt when inhomogeneous (zero has degree 0).
std::optional<std::vector<int>> degree(const Element& x);

std::vector<Monomial> enumerate_basis(const AlgebraContext& ctx);
bool monomial_valid(const AlgebraContext& ctx, const Monomial& m);
std::string monomial_to_string(const AlgebraContext& ctx, const Monomial& m);

/// An expansion on the basis B' (p_a + d_a < 2, omega exponents below 4k).
struct AltElement {
    ContextPtr ctx;
    Terms terms;
    std::string to_string() const;
    friend bool operator==(const AltElement& a, const AltElement& b) { return a.terms == b.terms; }
};

Element from_alt_basis(const AltElement& x);
AltElement to_alt_basis(const Element& x);
bool alt_monomial_valid(const AlgebraContext& ctx, const Monomial& m);
std::vector<Monomial> enumerate_alt_basis(const AlgebraContext& ctx);

Element convert_convention(const Element& x, Convention target);

enum class Involution {
    grade,
    grade_tilde,
    transpose,
    dagger,
    duality,
    conjugation,
    dual_dagger,
    transpose_duality,
    kappa_check
};

const std::vector<Involution>& all_involutions();
std::string involution_name(Involution kind);
std::optional<Involution> involution_from_name(const std::string& name);
/// True for maps reversing products.
bool is_anti(Involution kind);
/// Whether the map is defined for this context.
bool involution_available(const AlgebraContext& ctx, Involution kind);
Element apply_involution(Involution kind, const Element& x);

/// Image of x under a map defined index by index: each rank-1 factor
/// psi^p (psi^*)^d omega^v at index a is replaced by piece(a, p, d, v), a
/// combination of rank-1 monomials of the same parity in the target context.
/// Coefficients pass through coeff_map; reversed products pick up the Koszul sign.
template <typename Piece, typename CoeffMap>
Element map_factorwise(const Element& x, const ContextPtr& target, Piece&& piece, CoeffMap&& coeff_map, bool reversed);

}  // namespace qcl

#include "qcl/detail/factorwise.hpp"
