#include "qcl/structure.hpp"

#include <bit>

#include "qcl/linalg.hpp"

namespace qcl {

namespace {

bool psi_presentation(const AlgebraContext& ctx) { return ctx.convention() == Convention::psi; }

Element odd_gen(const ContextPtr& ctx, int a) {
    return generator(ctx, psi_presentation(*ctx) ? Gen::psi : Gen::phi, a);
}

Element odd_star_gen(const ContextPtr& ctx, int a) {
    return generator(ctx, psi_presentation(*ctx) ? Gen::psid : Gen::phid, a);
}

Monomial shifted(const Monomial& m, int offset, int n) {
    Monomial r;
    r.p = m.p << offset;
    r.d = m.d << offset;
    for (int a = 0; a < n; ++a) r.v[a + offset] = m.v[a];
    return r;
}

Monomial block(const Monomial& m, int offset, int n) {
    Monomial r;
    const uint32_t mask = (1U << n) - 1;
    r.p = (m.p >> offset) & mask;
    r.d = (m.d >> offset) & mask;
    for (int a = 0; a < n; ++a) r.v[a] = m.v[a + offset];
    return r;
}

long checked_power(int base, int n) {
    long r = 1;
    for (int i = 0; i < n; ++i) r *= base;
    return r;
}

}  // namespace

Element bracket(const Element& x, const Element& y, const Scalar& t) { return x * y - y * x * t; }

std::vector<Element> algebra_generators(const ContextPtr& ctx) {
    std::vector<Element> out;
    for (int a = 1; a <= ctx->n(); ++a) {
        out.push_back(odd_gen(ctx, a));
        out.push_back(odd_star_gen(ctx, a));
        out.push_back(generator(ctx, Gen::w, a));
    }
    return out;
}

bool is_central(const Element& x) {
    for (const Element& g : algebra_generators(x.context())) {
        if (!bracket(x, g, 1).is_zero()) return false;
    }
    return true;
}

Element central_generator(const ContextPtr& ctx, int a) {
    const Scalar& q = ctx->q();
    const Element w = generator(ctx, Gen::w, a);
    const Element pd = odd_gen(ctx, a) * odd_star_gen(ctx, a);
    if (psi_presentation(*ctx)) {
        return w * q - pd * omega_power(ctx, a, ctx->k() + 1) * (q - Scalar(1));
    }
    return w * q - pd * w * (q - Scalar(1));
}

Element volume_element(const ContextPtr& ctx, int r) {
    if (r < 0 || r > ctx->n()) {
        throw DomainError("volume element index " + std::to_string(r) + " out of range [0, " +
                          std::to_string(ctx->n()) + "]");
    }
    Element f = Element::scalar(ctx, 1);
    for (int a = 1; a <= r; ++a) f = f * bracket(odd_gen(ctx, a), odd_star_gen(ctx, a), 1);
    return f;
}

Element standardized_coordinate(const ContextPtr& ctx, int j) {
    if (j < 1 || j > 2 * ctx->n()) {
        throw DomainError("coordinate index " + std::to_string(j) + " out of range [1, " +
                          std::to_string(2 * ctx->n()) + "]");
    }
    const int a = (j + 1) / 2;
    return j % 2 ? odd_star_gen(ctx, a) - odd_gen(ctx, a) : odd_star_gen(ctx, a) + odd_gen(ctx, a);
}

GeneratorImages<Element> identity_images(const ContextPtr& ctx) {
    GeneratorImages<Element> g{ctx->n(), ctx->twice_k(), ctx->q(), Element::scalar(ctx, 1), {}, {}, {}, {}};
    g.odd = [ctx](int a) { return odd_gen(ctx, a); };
    g.odd_star = [ctx](int a) { return odd_star_gen(ctx, a); };
    g.w = [ctx](int a) { return generator(ctx, Gen::w, a); };
    g.winv = [ctx](int a) { return omega_power(ctx, a, -1); };
    return g;
}

std::vector<RelationResidual<Element>> defining_relations(const ContextPtr& ctx) {
    const auto images = identity_images(ctx);
    return psi_presentation(*ctx) ? psi_relations(images) : phi_relations(images);
}

// ---------------------------------------------------------------------------
// Tensor powers and Gamma

bool TupleLess::operator()(const std::vector<Monomial>& x, const std::vector<Monomial>& y) const {
    MonomialLess less;
    for (std::size_t i = 0; i < x.size() && i < y.size(); ++i) {
        if (less(x[i], y[i])) return true;
        if (less(y[i], x[i])) return false;
    }
    return x.size() < y.size();
}

TensorElement::TensorElement(ContextPtr factor, int m) : factor_(std::move(factor)), m_(m) {
    if (m < 1) throw DomainError("a tensor power needs at least one factor");
}

void TensorElement::add_term(const std::vector<Monomial>& tuple, const Scalar& c) {
    if (static_cast<int>(tuple.size()) != m_) throw DomainError("tensor tuple has the wrong length");
    for (const Monomial& x : tuple) {
        if (!monomial_valid(*factor_, x)) throw DomainError("tensor component is not a basis monomial");
    }
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(tuple, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

TensorElement TensorElement::pure(const std::vector<Element>& factors) {
    if (factors.empty()) throw DomainError("a tensor power needs at least one factor");
    TensorElement out(factors.front().context(), static_cast<int>(factors.size()));
    std::vector<std::pair<std::vector<Monomial>, Scalar>> partial{{{}, Scalar(1)}};
    for (const Element& f : factors) {
        check_same_context(factors.front(), f);
        std::vector<std::pair<std::vector<Monomial>, Scalar>> next;
        for (const auto& [tuple, c] : partial) {
            for (const auto& [m, x] : f.terms()) {
                auto t = tuple;
                t.push_back(m);
                next.emplace_back(std::move(t), c * x);
            }
        }
        partial = std::move(next);
    }
    for (const auto& [tuple, c] : partial) out.add_term(tuple, c);
    return out;
}

TensorElement& TensorElement::operator+=(const TensorElement& rhs) {
    if (m_ != rhs.m_ || !factor_->same_algebra(*rhs.factor_)) throw ContextMismatch("tensor shapes differ");
    for (const auto& [t, c] : rhs.terms_) add_term(t, c);
    return *this;
}

TensorElement& TensorElement::operator*=(const Scalar& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [t, x] : terms_) x *= c;
    return *this;
}

TensorElement operator*(const TensorElement& a, const TensorElement& b) {
    if (a.m_ != b.m_ || !a.factor_->same_algebra(*b.factor_)) throw ContextMismatch("tensor shapes differ");
    TensorElement out(a.factor_, a.m_);
    for (const auto& [x, cx] : a.terms_) {
        for (const auto& [y, cy] : b.terms_) {
            std::vector<Element> parts;
            for (int i = 0; i < a.m_; ++i) {
                Terms t;
                multiply_monomials(*a.factor_, x[i], y[i], Scalar(1), t);
                Element e(a.factor_);
                for (const auto& [m, c] : t) e.add_term(m, c);
                parts.push_back(std::move(e));
            }
            TensorElement prod = TensorElement::pure(parts);
            prod *= cx * cy;
            out += prod;
        }
    }
    return out;
}

std::string TensorElement::to_string() const {
    std::vector<std::pair<std::string, Scalar>> tokens;
    for (const auto& [tuple, c] : terms_) {
        std::string factors;
        for (const Monomial& m : tuple) {
            if (!factors.empty()) factors += " @ ";
            factors += monomial_to_string(*factor_, m);
        }
        tokens.emplace_back(std::move(factors), c);
    }
    return format_combination(tokens, factor_->var_name());
}

Element gamma(const TensorElement& t) {
    const int n = t.factor_context()->n(), m = t.m();
    ContextPtr big = t.factor_context()->with_rank(n * m);
    std::vector<Element> volumes;
    for (int j = 0; j < m; ++j) volumes.push_back(volume_element(big, j * n));
    Element out(big);
    for (const auto& [tuple, c] : t.terms()) {
        Element prod = Element::scalar(big, c);
        for (int j = 0; j < m; ++j) {
            const Monomial& x = tuple[j];
            if (std::popcount(x.odd()) % 2) prod = prod * volumes[j];
            prod = prod * Element::monomial(big, shifted(x, j * n, n));
        }
        out += prod;
    }
    return out;
}

TensorElement gamma_inverse(const Element& x, int n, int m) {
    const ContextPtr& big = x.context();
    if (n < 1 || m < 1 || big->n() != n * m) {
        throw DomainError("gamma_inverse needs rank n*m = " + std::to_string(n * m) + ", got " +
                          std::to_string(big->n()));
    }
    ContextPtr factor = big->with_rank(n);
    const Element fn = volume_element(factor, n);
    TensorElement out(factor, m);
    for (const auto& [mono, c] : x.terms()) {
        std::vector<Monomial> blocks(m);
        std::vector<int> parity(m);
        for (int j = 0; j < m; ++j) {
            blocks[j] = block(mono, j * n, n);
            parity[j] = std::popcount(blocks[j].odd()) % 2;
        }
        std::vector<Element> parts;
        int later = 0;
        for (int j = m - 1; j >= 0; --j) {
            Element part = Element::monomial(factor, blocks[j]);
            if (later % 2) part = part * fn;
            parts.push_back(std::move(part));
            later += parity[j];
        }
        std::reverse(parts.begin(), parts.end());
        TensorElement term = TensorElement::pure(parts);
        term *= c;
        out += term;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Center

std::vector<Element> center_basis(const ContextPtr& ctx) {
    const auto basis = enumerate_basis(*ctx);
    std::map<Monomial, std::size_t, MonomialLess> index;
    for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], i);
    const auto gens = algebra_generators(ctx);
    std::vector<SparseVector> columns(basis.size());
    for (std::size_t c = 0; c < basis.size(); ++c) {
        const Element b = Element::monomial(ctx, basis[c]);
        for (std::size_t g = 0; g < gens.size(); ++g) {
            const Element br = bracket(b, gens[g], 1);
            for (const auto& [m, x] : br.terms()) {
                columns[c].emplace(g * basis.size() + index.at(m), x);
            }
        }
    }
    std::vector<Element> out;
    for (const SparseVector& v : nullspace(columns)) {
        Element e(ctx);
        for (const auto& [c, x] : v) e.add_term(basis[c], x);
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<Element> z_monomials(const ContextPtr& ctx) {
    const int n = ctx->n(), k2 = ctx->twice_k();
    std::vector<std::vector<Element>> powers(n);
    for (int a = 0; a < n; ++a) {
        const Element z = central_generator(ctx, a + 1);
        Element p = Element::scalar(ctx, 1);
        for (int e = 0; e < k2; ++e) {
            powers[a].push_back(p);
            p = p * z;
        }
    }
    std::vector<Element> out;
    const long total = checked_power(k2, n);
    for (long t = 0; t < total; ++t) {
        Element e = Element::scalar(ctx, 1);
        long rest = t;
        for (int a = n - 1; a >= 0; --a) {
            e = powers[a][rest % k2] * e;
            rest /= k2;
        }
        out.push_back(std::move(e));
    }
    return out;
}

CenterReport center_report(const ContextPtr& ctx) {
    CenterReport r;
    r.expected = static_cast<std::size_t>(checked_power(ctx->twice_k(), ctx->n()));
    r.dimension = center_basis(ctx).size();
    const auto zs = z_monomials(ctx);
    r.z_central = true;
    std::map<Monomial, std::size_t, MonomialLess> index;
    std::vector<SparseVector> columns;
    for (const Element& z : zs) {
        if (!is_central(z)) r.z_central = false;
        SparseVector col;
        for (const auto& [m, x] : z.terms()) {
            const std::size_t row = index.try_emplace(m, index.size()).first->second;
            col.emplace(row, x);
        }
        columns.push_back(std::move(col));
    }
    r.z_rank = rank(columns);
    return r;
}

// ---------------------------------------------------------------------------
// Takeuchi

ContextPtr classical_context(const AlgebraContext& ctx) {
    return AlgebraContext::create(ctx.n(), 1, Convention::phi, ctx.q_spec());
}

std::vector<std::vector<int>> takeuchi_labels(const AlgebraContext& ctx) {
    const int n = ctx.n(), k2 = ctx.twice_k();
    std::vector<std::vector<int>> out;
    const long total = checked_power(k2, n);
    for (long t = 0; t < total; ++t) {
        std::vector<int> label(n);
        long rest = t;
        for (int a = n - 1; a >= 0; --a) {
            label[a] = static_cast<int>(rest % k2);
            rest /= k2;
        }
        out.push_back(std::move(label));
    }
    return out;
}

namespace {

void require_takeuchi(const AlgebraContext& ctx) {
    ctx.k();
    if (ctx.q_is_root_of_unity()) throw DomainError("the Takeuchi splitting needs q^{2k} != 1");
}

}  // namespace

GeneratorImages<Element> takeuchi_images(const ContextPtr& ctx, const std::vector<int>& label) {
    require_takeuchi(*ctx);
    const int k = ctx->k();
    ContextPtr cl = classical_context(*ctx);
    GeneratorImages<Element> g{ctx->n(), ctx->twice_k(), ctx->q(), Element::scalar(cl, 1), {}, {}, {}, {}};
    g.odd = [ctx, cl, label](int a) { return generator(cl, Gen::phi, a) * ctx->zeta(label.at(a - 1)); };
    g.odd_star = [ctx, cl, label, k](int a) {
        return generator(cl, Gen::phid, a) * ctx->zeta(static_cast<long>(label.at(a - 1)) * (k - 1));
    };
    g.w = [ctx, cl, label](int a) { return generator(cl, Gen::w, a) * ctx->zeta(label.at(a - 1)); };
    g.winv = [ctx, cl, label](int a) { return omega_power(cl, a, -1) * ctx->zeta(-label.at(a - 1)); };
    return g;
}

std::vector<Element> takeuchi(const Element& input) {
    const Element x =
        input.context()->convention() == Convention::psi ? input : convert_convention(input, Convention::psi);
    const ContextPtr& ctx = x.context();
    require_takeuchi(*ctx);
    const int k = ctx->k(), k2 = ctx->twice_k();
    ContextPtr cl = classical_context(*ctx);
    ContextPtr cl1 = cl->with_rank(1);
    // pieces[j][(p,d,v)] = zeta^{j(p + (k-1)d + v)} v^p (v^*)^d w^v in the rank-1 classical algebra
    std::vector<std::vector<Rank1Expansion>> pieces(k2, std::vector<Rank1Expansion>(ctx->pieces()));
    for (int j = 0; j < k2; ++j)
        for (int p = 0; p < 2; ++p)
            for (int d = 0; d < 2; ++d)
                for (int v = 0; v < k2; ++v) {
                    Monomial m;
                    m.p = p;
                    m.d = d;
                    const Element img = Element::monomial(cl1, m) * omega_power(cl1, 1, v) *
                                        ctx->zeta(static_cast<long>(j) * (p + (k - 1) * d + v));
                    Rank1Expansion& e = pieces[j][ctx->rank1_index(p, d, v)];
                    for (const auto& [mm, c] : img.terms()) {
                        e.push_back({c, static_cast<uint8_t>(mm.p_at(0)), static_cast<uint8_t>(mm.d_at(0)), mm.v[0]});
                    }
                }
    std::vector<Element> out;
    for (const auto& label : takeuchi_labels(*ctx)) {
        out.push_back(map_factorwise(
            x, cl,
            [&](int a, int p, int d, int v) -> const Rank1Expansion& {
                return pieces[label[a]][ctx->rank1_index(p, d, v)];
            },
            [](const Scalar& c) { return c; }, false));
    }
    return out;
}

Element takeuchi_inverse(const std::vector<Element>& components, const ContextPtr& target) {
    require_takeuchi(*target);
    if (target->convention() != Convention::psi) {
        return convert_convention(takeuchi_inverse(components, target->with_convention(Convention::psi)),
                                  Convention::phi);
    }
    const int n = target->n(), k = target->k(), k2 = target->twice_k();
    const auto labels = takeuchi_labels(*target);
    if (components.size() != labels.size()) {
        throw DomainError("expected " + std::to_string(labels.size()) + " classical components");
    }
    ContextPtr cl = classical_context(*target);
    const Scalar scale = Scalar(mpq_class(1, k2));
    // V[a][j], Vs[a][j]: preimages of v_a, v_a^* on the component with z_a = zeta^j; e[a][j]: idempotents.
    std::vector<std::vector<Element>> V(n), Vs(n), E(n);
    for (int a = 1; a <= n; ++a) {
        const Element psi = generator(target, Gen::psi, a), psid = generator(target, Gen::psid, a);
        const Element z = central_generator(target, a);
        std::vector<Element> wp, zp;
        Element w = Element::scalar(target, 1), zz = Element::scalar(target, 1);
        for (int m = 0; m < k2; ++m) {
            wp.push_back(w);
            zp.push_back(zz);
            w = w * generator(target, Gen::w, a);
            zz = zz * z;
        }
        for (int j = 0; j < k2; ++j) {
            Element v(target), vs(target), e(target);
            for (int m = 0; m < k2; ++m) {
                v += psi * wp[m] * (target->zeta(-static_cast<long>(j) * (m + 1)) * target->q().pow(m));
                vs += psid * wp[m] * target->zeta(-static_cast<long>(j) * (m + k - 1));
                e += zp[m] * target->zeta(-static_cast<long>(j) * m);
            }
            V[a - 1].push_back(v * scale);
            Vs[a - 1].push_back(vs * scale);
            E[a - 1].push_back(e * scale);
        }
    }
    Element out(target);
    for (std::size_t t = 0; t < labels.size(); ++t) {
        const Element& x = components[t];
        if (!x.context()->same_algebra(*cl)) throw ContextMismatch("component is not a classical element");
        if (x.is_zero()) continue;
        const auto& label = labels[t];
        Element idem = Element::scalar(target, 1);
        for (int a = 0; a < n; ++a) idem = idem * E[a][label[a]];
        Element lifted(target);
        for (const auto& [m, c] : x.terms()) {
            Element word = Element::scalar(target, c);
            for (int a = 0; a < n; ++a) {
                if (m.p_at(a)) word = word * V[a][label[a]];
                if (m.d_at(a)) word = word * Vs[a][label[a]];
            }
            lifted += word;
        }
        out += idem * lifted;
    }
    return out;
}

classical::Combination to_classical(const Element& x) {
    const AlgebraContext& ctx = *x.context();
    if (ctx.twice_k() != 1 || ctx.convention() != Convention::phi) {
        throw DomainError("only k = 1/2 elements have a classical image");
    }
    classical::Combination out;
    for (const auto& [m, c] : x.terms()) {
        if (!c.is_constant() || !c.constant_value().is_rational()) {
            throw DomainError("classical words carry rational coefficients, got " + c.to_string(ctx.var_name()));
        }
        classical::Word w;
        for (int a = 0; a < ctx.n(); ++a) {
            if (m.p_at(a)) w.push_back(classical::letter(a + 1, false));
            if (m.d_at(a)) w.push_back(classical::letter(a + 1, true));
        }
        out.emplace(std::move(w), c.constant_value().rational());
    }
    return out;
}

}  // namespace qcl
