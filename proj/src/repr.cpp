#include "qcl/repr.hpp"

#include <bit>

namespace qcl {

namespace {

void check_label(const AlgebraContext& ctx, const RepLabel& p) {
    if (static_cast<int>(p.size()) != ctx.n()) {
        throw DomainError("label has " + std::to_string(p.size()) + " entries, rank is " + std::to_string(ctx.n()));
    }
}

int label_entry(const AlgebraContext& ctx, const RepLabel& p, int a) {
    const int k2 = ctx.twice_k();
    return ((p[a] % k2) + k2) % k2;
}

int parity_below(uint32_t occupancy, int a) { return std::popcount(occupancy & ((1U << a) - 1)) % 2; }

// Per-context data for applying monomials: zeta powers and q^{-v}.
struct ActionTables {
    std::vector<Scalar> zeta;       // zeta_{2k}^i, i < 2k
    std::vector<Scalar> q_inverse;  // q^{-v}, v < 4k
    bool psi;

    explicit ActionTables(const AlgebraContext& ctx) : psi(ctx.convention() == Convention::psi) {
        for (int i = 0; i < ctx.twice_k(); ++i) zeta.push_back(ctx.zeta(i));
        const Scalar qi = ctx.q().inverse();
        Scalar x = 1;
        for (int v = 0; v < 2 * ctx.twice_k(); ++v) {
            q_inverse.push_back(x);
            x *= qi;
        }
    }
};

// Applies a basis monomial to v(l); returns false when the result vanishes.
bool apply_monomial(const AlgebraContext& ctx, const ActionTables& t, const std::vector<int>& label,
                    const Monomial& m, uint32_t& l, Scalar& coeff) {
    const int k2 = ctx.twice_k();
    int sign = 0;
    for (int a = ctx.n() - 1; a >= 0; --a) {
        const uint32_t bit = 1U << a;
        if (const int v = m.v[a]) {
            coeff *= t.zeta[(static_cast<long>(label[a]) * v) % k2];
            if (!(l & bit)) coeff *= t.q_inverse.at(v);
        }
        if (m.d_at(a)) {
            if (!(l & bit)) return false;
            sign += parity_below(l, a) + (t.psi ? label[a] : 0);
            l ^= bit;
        }
        if (m.p_at(a)) {
            if (l & bit) return false;
            sign += parity_below(l, a);
            l |= bit;
        }
    }
    if (sign % 2) coeff = -coeff;
    return true;
}

std::vector<int> reduced_label(const AlgebraContext& ctx, const RepLabel& p) {
    check_label(ctx, p);
    std::vector<int> out(p.size());
    for (int a = 0; a < ctx.n(); ++a) out[a] = label_entry(ctx, p, a);
    return out;
}

Scalar signed_power(const Scalar& base, int e) {
    Scalar r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Fock vectors

FockVector::FockVector(int n) : n_(n) {
    if (n < 1 || n > kMaxRank) throw DomainError("Fock space rank " + std::to_string(n) + " out of range");
}

FockVector FockVector::basis(int n, uint32_t occupancy) {
    FockVector v(n);
    v.add(occupancy, 1);
    return v;
}

void FockVector::add(uint32_t occupancy, const Scalar& c) {
    if (n_ < 32 && occupancy >> n_) throw DomainError("occupancy exceeds the Fock space rank");
    if (c.is_zero()) return;
    auto [it, inserted] = amp_.try_emplace(occupancy, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) amp_.erase(it);
    }
}

FockVector& FockVector::operator+=(const FockVector& rhs) {
    if (n_ != rhs.n_) throw ContextMismatch("Fock vectors of different rank");
    for (const auto& [l, c] : rhs.amp_) add(l, c);
    return *this;
}

FockVector& FockVector::operator*=(const Scalar& c) {
    if (c.is_zero()) {
        amp_.clear();
        return *this;
    }
    for (auto& [l, x] : amp_) x *= c;
    return *this;
}

std::string FockVector::to_string(std::string_view var) const {
    std::vector<std::pair<std::string, Scalar>> terms;
    for (const auto& [l, c] : amp_) {
        std::string digits;
        for (int a = 0; a < n_; ++a) digits += (l >> a) & 1U ? '1' : '0';
        terms.emplace_back("v(" + digits + ")", c);
    }
    return format_combination(terms, var);
}

std::vector<RepLabel> rep_labels(const AlgebraContext& ctx) { return takeuchi_labels(ctx); }

FockVector braided_mul(const FockVector& u, const FockVector& w, const Scalar& q) {
    if (u.n() != w.n()) throw ContextMismatch("Fock vectors of different rank");
    const Scalar swap = -q.inverse();
    FockVector out(u.n());
    for (const auto& [l, a] : u.amplitudes()) {
        for (const auto& [r, b] : w.amplitudes()) {
            if (l & r) continue;
            // Moving each v_j of the right factor past the v_i (i > j) of the left one costs -q^{-1}.
            int swaps = 0;
            for (int j = 0; j < u.n(); ++j) {
                if ((r >> j) & 1U) swaps += std::popcount(l >> (j + 1));
            }
            out.add(l | r, a * b * signed_power(swap, swaps));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Actions

FockVector act(const RepLabel& p, const Element& x, const FockVector& vec) {
    const AlgebraContext& ctx = *x.context();
    if (vec.n() != ctx.n()) throw ContextMismatch("Fock vector rank differs from the algebra rank");
    const auto label = reduced_label(ctx, p);
    const ActionTables tables(ctx);
    FockVector out(ctx.n());
    for (const auto& [m, c] : x.terms()) {
        for (const auto& [l0, a] : vec.amplitudes()) {
            uint32_t l = l0;
            Scalar coeff = c * a;
            if (apply_monomial(ctx, tables, label, m, l, coeff)) out.add(l, coeff);
        }
    }
    return out;
}

Matrix rep_matrix(const RepLabel& p, const Element& x) {
    const AlgebraContext& ctx = *x.context();
    const auto label = reduced_label(ctx, p);
    const ActionTables tables(ctx);
    const std::size_t dim = std::size_t{1} << ctx.n();
    Matrix out(dim, dim);
    for (const auto& [m, c] : x.terms()) {
        for (uint32_t col = 0; col < dim; ++col) {
            uint32_t l = col;
            Scalar coeff = c;
            if (apply_monomial(ctx, tables, label, m, l, coeff)) out(l, col) += coeff;
        }
    }
    return out;
}

GeneratorImages<Matrix> rep_images(const ContextPtr& ctx, const RepLabel& p) {
    const bool psi = ctx->convention() == Convention::psi;
    return GeneratorImages<Matrix>{
        ctx->n(),
        ctx->twice_k(),
        ctx->q(),
        Matrix::identity(std::size_t{1} << ctx->n()),
        [ctx, p, psi](int a) { return rep_matrix(p, generator(ctx, psi ? Gen::psi : Gen::phi, a)); },
        [ctx, p, psi](int a) { return rep_matrix(p, generator(ctx, psi ? Gen::psid : Gen::phid, a)); },
        [ctx, p](int a) { return rep_matrix(p, generator(ctx, Gen::w, a)); },
        [ctx, p](int a) { return rep_matrix(p, omega_power(ctx, a, -1)); }};
}

FockVector dual_vector(const FockVector& vec) {
    const uint32_t mask = vec.n() >= 32 ? ~0U : (1U << vec.n()) - 1;
    FockVector out(vec.n());
    for (const auto& [l, c] : vec.amplitudes()) out.add(l ^ mask, c);
    return out;
}

FockVector dual_act(const RepLabel& p, const Element& x, const FockVector& vec) {
    return dual_vector(act(p, x, dual_vector(vec)));
}

FockVector quantum_inner(int j, const FockVector& vec, const Scalar& q) {
    if (j < 1 || j > vec.n()) throw DomainError("index " + std::to_string(j) + " out of range");
    FockVector out(vec.n());
    const uint32_t bit = 1U << (j - 1);
    for (const auto& [l, c] : vec.amplitudes()) {
        if (!(l & bit)) continue;
        out.add(l ^ bit, c * signed_power(-q, std::popcount(l & (bit - 1))));
    }
    return out;
}

FockVector quantum_exterior(int j, const FockVector& vec, const Scalar& q) {
    if (j < 1 || j > vec.n()) throw DomainError("index " + std::to_string(j) + " out of range");
    FockVector out(vec.n());
    const uint32_t bit = 1U << (j - 1);
    const Scalar step = -q.inverse();
    for (const auto& [l, c] : vec.amplitudes()) {
        if (l & bit) continue;
        out.add(l | bit, c * signed_power(step, std::popcount(l & (bit - 1))));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Tensor compatibility

namespace {

// Expands T (optionally composed with S) over a tuple of Fock vectors.
FockVector reshuffle(const std::vector<FockVector>& factors, const RepLabel* p) {
    if (factors.empty()) throw DomainError("no tensor factors");
    const int n = factors.front().n();
    const int m = static_cast<int>(factors.size());
    for (const FockVector& f : factors) {
        if (f.n() != n) throw ContextMismatch("tensor factors of different rank");
    }
    if (n * m > kMaxRank) throw DomainError("reshuffled rank exceeds the supported maximum");
    FockVector out(n * m);
    std::vector<std::pair<std::vector<uint32_t>, Scalar>> partial{{{}, Scalar(1)}};
    for (const FockVector& f : factors) {
        std::vector<std::pair<std::vector<uint32_t>, Scalar>> next;
        for (const auto& [occ, c] : partial) {
            for (const auto& [l, a] : f.amplitudes()) {
                auto o = occ;
                o.push_back(l);
                next.emplace_back(std::move(o), c * a);
            }
        }
        partial = std::move(next);
    }
    for (const auto& [occ, c] : partial) {
        uint32_t total = 0;
        for (int j = 0; j < m; ++j) total |= occ[j] << (j * n);
        const int sign = p ? reshuffle_sign(n, *p, occ) : 1;
        out.add(total, sign > 0 ? c : -c);
    }
    return out;
}

}  // namespace

FockVector tensor_reshuffle(const std::vector<FockVector>& factors) { return reshuffle(factors, nullptr); }

int reshuffle_sign(int n, const RepLabel& p, const std::vector<uint32_t>& occupancies) {
    long weight = n;
    for (int x : p) weight += x;
    long moved = 0;
    for (std::size_t j = 0; j < occupancies.size(); ++j) moved += static_cast<long>(j) * std::popcount(occupancies[j]);
    return (weight % 2 != 0 && moved % 2 != 0) ? -1 : 1;
}

bool gamma_compatible(const RepLabel& p, const TensorElement& t) {
    const ContextPtr& factor = t.factor_context();
    const int n = factor->n(), m = t.m();
    const auto label = reduced_label(*factor, p);
    RepLabel big_label;
    for (int j = 0; j < m; ++j) big_label.insert(big_label.end(), label.begin(), label.end());
    const Element image = gamma(t);
    const uint32_t per_factor = 1U << n;
    std::vector<uint32_t> occ(m, 0);
    while (true) {
        std::vector<FockVector> inputs;
        for (int j = 0; j < m; ++j) inputs.push_back(FockVector::basis(n, occ[j]));
        const FockVector lhs = act(big_label, image, reshuffle(inputs, &label));

        FockVector rhs(n * m);
        for (const auto& [tuple, c] : t.terms()) {
            std::vector<FockVector> outputs;
            for (int j = 0; j < m; ++j) outputs.push_back(act(label, Element::monomial(factor, tuple[j]), inputs[j]));
            rhs += reshuffle(outputs, &label) * c;
        }
        if (!(lhs == rhs)) return false;

        int j = 0;
        while (j < m && ++occ[j] == per_factor) occ[j++] = 0;
        if (j == m) break;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Semisimplicity and the volume splitting

bool SemisimpleReport::ok() const {
    if (rank != expected) return false;
    for (bool b : irreducible) {
        if (!b) return false;
    }
    return true;
}

SemisimpleReport semisimple_certificate(const ContextPtr& ctx) {
    if (ctx->n() > 3 || ctx->twice_k() > 4) {
        throw DomainError("the semisimplicity certificate is limited to n <= 3 and k <= 2");
    }
    SemisimpleReport r;
    r.n = ctx->n();
    r.k = ctx->k_string();
    r.labels = rep_labels(*ctx);
    const auto basis = enumerate_basis(*ctx);
    r.expected = basis.size();
    const std::size_t dim = std::size_t{1} << ctx->n();
    const std::size_t block = dim * dim;
    std::vector<SparseVector> stacked(basis.size());
    std::vector<std::vector<SparseVector>> per_label(r.labels.size(), std::vector<SparseVector>(basis.size()));
    for (std::size_t b = 0; b < basis.size(); ++b) {
        const Element x = Element::monomial(ctx, basis[b]);
        for (std::size_t li = 0; li < r.labels.size(); ++li) {
            const Matrix mat = rep_matrix(r.labels[li], x);
            for (std::size_t i = 0; i < dim; ++i)
                for (std::size_t j = 0; j < dim; ++j) {
                    if (mat(i, j).is_zero()) continue;
                    stacked[b].emplace(li * block + i * dim + j, mat(i, j));
                    per_label[li][b].emplace(i * dim + j, mat(i, j));
                }
        }
    }
    r.rank = rank(stacked);
    for (const auto& cols : per_label) r.irreducible.push_back(rank(cols) == block);
    return r;
}

std::pair<Matrix, Matrix> volume_splitting(const ContextPtr& ctx, const RepLabel& p) {
    const Matrix f = rep_matrix(p, volume_element(ctx, ctx->n()));
    const Matrix id = Matrix::identity(f.rows());
    const Scalar half = Scalar(mpq_class(1, 2));
    return {(id + f) * half, (id - f) * half};
}

}  // namespace qcl
