#pragma once

// Spinor representations pi_p of Cl_q(n,k) on the braided exterior algebra.
// Basis vectors v(l), l in {0,1}^n, are stored as bit masks with l_1 in the
// lowest bit; matrices use the same order for rows and columns.

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "qcl/algebra.hpp"
#include "qcl/linalg.hpp"
#include "qcl/relations.hpp"
#include "qcl/structure.hpp"

namespace qcl {

class FockVector {
   public:
    using Map = std::map<uint32_t, Scalar>;

    explicit FockVector(int n);
    /// v(l) for the occupancy mask l.
    static FockVector basis(int n, uint32_t occupancy);

    int n() const noexcept { return n_; }
    const Map& amplitudes() const noexcept { return amp_; }
    bool is_zero() const noexcept { return amp_.empty(); }
    void add(uint32_t occupancy, const Scalar& c);

    FockVector& operator+=(const FockVector& rhs);
    FockVector& operator*=(const Scalar& c);
    friend FockVector operator+(FockVector a, const FockVector& b) { return a += b; }
    friend FockVector operator*(FockVector a, const Scalar& c) { return a *= c; }
    friend bool operator==(const FockVector& a, const FockVector& b) { return a.n_ == b.n_ && a.amp_ == b.amp_; }

    /// Text such as `v(10) - (q)*v(01)`, digits listing l_1 ... l_n.
    std::string to_string(std::string_view var = "q") const;

   private:
    int n_;
    Map amp_;
};

/// The label p in Z_{2k}^n; entries are reduced modulo 2k on use.
using RepLabel = std::vector<int>;

/// All labels in row-major order with index 1 slowest.
std::vector<RepLabel> rep_labels(const AlgebraContext& ctx);

/// Product in the braided exterior algebra (v_j v_k = -q v_k v_j for j < k).
FockVector braided_mul(const FockVector& u, const FockVector& w, const Scalar& q);

FockVector act(const RepLabel& p, const Element& x, const FockVector& vec);
Matrix rep_matrix(const RepLabel& p, const Element& x);
/// Generator matrices of pi_p, for checking the defining relations.
GeneratorImages<Matrix> rep_images(const ContextPtr& ctx, const RepLabel& p);

/// The spinor convention with l_a and 1 - l_a interchanged.
FockVector dual_vector(const FockVector& vec);
FockVector dual_act(const RepLabel& p, const Element& x, const FockVector& vec);

FockVector quantum_inner(int j, const FockVector& vec, const Scalar& q);
FockVector quantum_exterior(int j, const FockVector& vec, const Scalar& q);

/// T: concatenates the occupancy vectors of the factors.
FockVector tensor_reshuffle(const std::vector<FockVector>& factors);
/// The diagonal sign S making Gamma and T compatible for pi_p on n-dimensional factors.
int reshuffle_sign(int n, const RepLabel& p, const std::vector<uint32_t>& occupancies);
/// Checks pi_p(Gamma(t)) (T S) = (T S) (pi_p^{(x) m}(t)) on every basis tuple.
bool gamma_compatible(const RepLabel& p, const TensorElement& t);

struct SemisimpleReport {
    int n = 0;
    std::string k;
    std::vector<RepLabel> labels;
    std::size_t rank = 0;
    std::size_t expected = 0;
    std::vector<bool> irreducible;
    bool ok() const;
};
SemisimpleReport semisimple_certificate(const ContextPtr& ctx);

/// P_+ and P_- = (1 +- pi_p(f_n)) / 2.
std::pair<Matrix, Matrix> volume_splitting(const ContextPtr& ctx, const RepLabel& p);

}  // namespace qcl
