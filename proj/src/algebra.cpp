#include "qcl/algebra.hpp"

#include <algorithm>
#include <bit>
#include <tuple>

namespace qcl {

// ---------------------------------------------------------------------------
// Context

AlgebraContext::AlgebraContext(int n, int twice_k, Convention convention, QSpec q)
    : n_(n), twice_k_(twice_k), convention_(convention), q_spec_(std::move(q)) {
    conductor_ = twice_k_ % 2 == 0 ? twice_k_ : 2 * twice_k_;
    switch (q_spec_.kind) {
        case QSpec::Kind::formal:
            q_ = Scalar::variable();
            var_ = "q";
            break;
        case QSpec::Kind::sqrt_formal:
            q_ = Scalar::variable().pow(2);
            var_ = "s";
            break;
        case QSpec::Kind::numeric:
            q_ = Scalar(q_spec_.value);
            var_ = "q";
            break;
    }
    q_pow_minus_2k_ = q_.pow(-twice_k_);
    build_table();
}

ContextPtr AlgebraContext::create(int n, int twice_k, Convention convention, QSpec q) {
    if (n < 1 || n > kMaxRank) throw DomainError("rank must lie in [1, " + std::to_string(kMaxRank) + "]");
    if (twice_k < 1 || twice_k > kMaxTwiceK) {
        throw DomainError("twist must satisfy 0 < 2k <= " + std::to_string(kMaxTwiceK));
    }
    if (convention == Convention::psi && twice_k % 2 != 0) {
        throw DomainError("the psi presentation needs an integer twist k");
    }
    if (q.kind == QSpec::Kind::numeric && q.value == 0) throw DomainError("q must be invertible");
    // Contexts are immutable and cheap to keep, so one instance serves each parameter set.
    using Key = std::tuple<int, int, Convention, QSpec::Kind, std::string>;
    static std::mutex mutex;
    static std::map<Key, ContextPtr> interned;
    const Key key{n, twice_k, convention, q.kind, q.value.get_str()};
    std::lock_guard lock(mutex);
    auto it = interned.find(key);
    if (it == interned.end()) {
        it = interned.emplace(key, ContextPtr(new AlgebraContext(n, twice_k, convention, std::move(q)))).first;
    }
    return it->second;
}

const std::vector<Rank1Expansion>& AlgebraContext::piece_images(
    int key, const std::function<std::vector<Rank1Expansion>()>& build) const {
    {
        std::lock_guard lock(cache_mutex_);
        auto it = piece_cache_.find(key);
        if (it != piece_cache_.end()) return it->second;
    }
    std::vector<Rank1Expansion> pieces = build();
    std::lock_guard lock(cache_mutex_);
    return piece_cache_.emplace(key, std::move(pieces)).first->second;
}

int AlgebraContext::k() const {
    if (!integer_k()) throw DomainError("operation needs an integer twist k, got k = " + k_string());
    return twice_k_ / 2;
}

std::string AlgebraContext::k_string() const {
    return integer_k() ? std::to_string(twice_k_ / 2) : std::to_string(twice_k_) + "/2";
}

Scalar AlgebraContext::variable() const {
    if (!formal_q()) throw DomainError("q is numeric in this context");
    return Scalar::variable();
}

Scalar AlgebraContext::zeta(long power) const { return Scalar::zeta(conductor_, power * (conductor_ / twice_k_)); }

bool AlgebraContext::q_is_root_of_unity() const { return q_.pow(twice_k_).is_one(); }

bool AlgebraContext::can_invert_q() const { return (q_.invert_variable() * q_).is_one(); }

Scalar AlgebraContext::invert_q(const Scalar& c) const {
    if (!can_invert_q()) {
        throw DomainError("q -> q^-1 is not a field automorphism for q = " + q_.to_string(var_));
    }
    return c.invert_variable();
}

ContextPtr AlgebraContext::with_rank(int n) const { return create(n, twice_k_, convention_, q_spec_); }

ContextPtr AlgebraContext::with_convention(Convention c) const { return create(n_, twice_k_, c, q_spec_); }

bool AlgebraContext::same_algebra(const AlgebraContext& o) const {
    return n_ == o.n_ && twice_k_ == o.twice_k_ && convention_ == o.convention_ && q_spec_.kind == o.q_spec_.kind &&
           q_spec_.value == o.q_spec_.value;
}

void AlgebraContext::reduce_into(int p, int d, long e, const Scalar& coeff, Rank1Expansion& out) const {
    if (coeff.is_zero()) return;
    if (e < twice_k_) {
        out.push_back({coeff, static_cast<uint8_t>(p), static_cast<uint8_t>(d), static_cast<uint8_t>(e)});
        return;
    }
    if (p == 1 && d == 0) {
        // psi omega^{2k} = q^{-2k} psi
        reduce_into(1, 0, e - twice_k_, coeff * q_pow_minus_2k_, out);
    } else if (d == 1) {
        // psi^* omega^{2k} = psi^*, psi psi^* omega^{2k} = psi psi^*
        reduce_into(p, 1, e - twice_k_, coeff, out);
    } else {
        // omega^{2k} = (1 - q^{-2k}) psi psi^* omega^c + q^{-2k}, c = k (psi) or 0 (phi)
        const int c = convention_ == Convention::psi ? twice_k_ / 2 : 0;
        reduce_into(1, 1, e - twice_k_ + c, coeff * (Scalar(1) - q_pow_minus_2k_), out);
        reduce_into(0, 0, e - twice_k_, coeff * q_pow_minus_2k_, out);
    }
}

Rank1Expansion AlgebraContext::reduce_rank1(int p, int d, long e) const {
    Rank1Expansion raw;
    reduce_into(p, d, e, Scalar(1), raw);
    // Merge repeated monomials.
    Rank1Expansion out;
    for (auto& t : raw) {
        auto it = std::find_if(out.begin(), out.end(),
                               [&](const Rank1Term& u) { return u.p == t.p && u.d == t.d && u.v == t.v; });
        if (it == out.end()) {
            out.push_back(std::move(t));
        } else {
            it->coeff += t.coeff;
        }
    }
    std::erase_if(out, [](const Rank1Term& t) { return t.coeff.is_zero(); });
    std::sort(out.begin(), out.end(), [](const Rank1Term& a, const Rank1Term& b) {
        return std::tie(a.p, a.d, a.v) < std::tie(b.p, b.d, b.v);
    });
    return out;
}

void AlgebraContext::build_table() {
    const int count = pieces();
    table_.assign(static_cast<std::size_t>(count) * count, {});
    const bool psi = convention_ == Convention::psi;
    const Scalar alpha = psi ? q_.pow(twice_k_ / 2) : Scalar(1);
    const int c = psi ? twice_k_ / 2 : 0;
    for (int p = 0; p < 2; ++p)
        for (int d = 0; d < 2; ++d)
            for (int v = 0; v < twice_k_; ++v)
                for (int p2 = 0; p2 < 2; ++p2)
                    for (int d2 = 0; d2 < 2; ++d2)
                        for (int v2 = 0; v2 < twice_k_; ++v2) {
                            // omega^v psi^{p2} (psi^*)^{d2} = q^{v(p2-d2)} psi^{p2} (psi^*)^{d2} omega^v
                            const Scalar pre = q_.pow(static_cast<long>(v) * (p2 - d2));
                            struct Word {
                                Scalar coeff;
                                int p, d;
                                long e;
                            };
                            std::vector<Word> words;
                            if (d == 1 && p2 == 1) {
                                // psi^* psi = alpha omega^c - alpha psi psi^*
                                words.push_back({alpha * q_.pow(-static_cast<long>(c) * d2), p, d2, c});
                                if (p == 0 && d2 == 0) words.push_back({-alpha, 1, 1, 0});
                            } else if (d == 0) {
                                if (!(p == 1 && p2 == 1)) words.push_back({Scalar(1), p | p2, d2, 0});
                            } else if (d2 == 0) {
                                words.push_back({Scalar(1), p, 1, 0});
                            }
                            Rank1Expansion raw;
                            for (const auto& w : words) reduce_into(w.p, w.d, w.e + v + v2, pre * w.coeff, raw);
                            Rank1Expansion merged;
                            for (auto& t : raw) {
                                auto it = std::find_if(merged.begin(), merged.end(), [&](const Rank1Term& u) {
                                    return u.p == t.p && u.d == t.d && u.v == t.v;
                                });
                                if (it == merged.end()) {
                                    merged.push_back(std::move(t));
                                } else {
                                    it->coeff += t.coeff;
                                }
                            }
                            std::erase_if(merged, [](const Rank1Term& t) { return t.coeff.is_zero(); });
                            table_[rank1_index(p, d, v) * count + rank1_index(p2, d2, v2)] = std::move(merged);
                        }
}

// ---------------------------------------------------------------------------
// Monomials

bool MonomialLess::operator()(const Monomial& x, const Monomial& y) const {
    for (int a = 0; a < kMaxRank; ++a) {
        const int xp = x.p_at(a), yp = y.p_at(a);
        if (xp != yp) return xp < yp;
        const int xd = x.d_at(a), yd = y.d_at(a);
        if (xd != yd) return xd < yd;
        if (x.v[a] != y.v[a]) return x.v[a] < y.v[a];
    }
    return false;
}

bool monomial_valid(const AlgebraContext& ctx, const Monomial& m) {
    const uint32_t mask = ctx.n() >= 32 ? ~0U : ((1U << ctx.n()) - 1);
    if ((m.p & ~mask) || (m.d & ~mask)) return false;
    for (int a = 0; a < kMaxRank; ++a) {
        if (a < ctx.n() ? m.v[a] >= ctx.twice_k() : m.v[a] != 0) return false;
    }
    return true;
}

bool alt_monomial_valid(const AlgebraContext& ctx, const Monomial& m) {
    const uint32_t mask = (1U << ctx.n()) - 1;
    if ((m.p & ~mask) || (m.d & ~mask) || (m.p & m.d)) return false;
    for (int a = 0; a < kMaxRank; ++a) {
        if (a >= ctx.n()) {
            if (m.v[a] != 0) return false;
            continue;
        }
        const int bound = (m.p_at(a) || m.d_at(a)) ? ctx.twice_k() : 2 * ctx.twice_k();
        if (m.v[a] >= bound) return false;
    }
    return true;
}

std::string monomial_to_string(const AlgebraContext& ctx, const Monomial& m) {
    std::string out;
    auto add = [&](const std::string& token) {
        if (!out.empty()) out += "*";
        out += token;
    };
    for (int a = 0; a < ctx.n(); ++a) {
        const std::string idx = std::to_string(a + 1);
        if (m.p_at(a)) add("p" + idx);
        if (m.d_at(a)) add("d" + idx);
        if (m.v[a] == 1) add("w" + idx);
        if (m.v[a] > 1) add("w" + idx + "^" + std::to_string(m.v[a]));
    }
    return out.empty() ? "1" : out;
}

namespace {

std::vector<Monomial> enumerate_with(const AlgebraContext& ctx, bool alt) {
    std::vector<Monomial> out;
    std::vector<std::array<int, 3>> local;
    for (int p = 0; p < 2; ++p)
        for (int d = 0; d < 2; ++d) {
            if (alt && p + d == 2) continue;
            const int bound = alt && p + d == 0 ? 2 * ctx.twice_k() : ctx.twice_k();
            for (int v = 0; v < bound; ++v) local.push_back({p, d, v});
        }
    const int n = ctx.n();
    std::vector<std::size_t> pos(n, 0);
    while (true) {
        Monomial m;
        for (int a = 0; a < n; ++a) {
            const auto& [p, d, v] = local[pos[a]];
            if (p) m.p |= 1U << a;
            if (d) m.d |= 1U << a;
            m.v[a] = static_cast<uint8_t>(v);
        }
        out.push_back(m);
        int a = n - 1;
        while (a >= 0 && ++pos[a] == local.size()) pos[a--] = 0;
        if (a < 0) break;
    }
    std::sort(out.begin(), out.end(), MonomialLess{});
    return out;
}

Monomial place(int a, int p, int d, int v) {
    Monomial m;
    if (p) m.p = 1U << a;
    if (d) m.d = 1U << a;
    m.v[a] = static_cast<uint8_t>(v);
    return m;
}

Element place_expansion(const ContextPtr& ctx, int a, const Rank1Expansion& e) {
    Element out(ctx);
    for (const auto& t : e) out.add_term(place(a, t.p, t.d, t.v), t.coeff);
    return out;
}

Rank1Expansion as_rank1(const Element& x) {
    Rank1Expansion out;
    for (const auto& [m, c] : x.terms()) {
        out.push_back({c, static_cast<uint8_t>(m.p_at(0)), static_cast<uint8_t>(m.d_at(0)), m.v[0]});
    }
    return out;
}

void check_index(const AlgebraContext& ctx, int a, int bound) {
    if (a < 1 || a > bound) {
        throw DomainError("index " + std::to_string(a) + " out of range [1, " + std::to_string(bound) + "]");
    }
    (void)ctx;
}

}  // namespace

std::vector<Monomial> enumerate_basis(const AlgebraContext& ctx) { return enumerate_with(ctx, false); }

std::vector<Monomial> enumerate_alt_basis(const AlgebraContext& ctx) { return enumerate_with(ctx, true); }

// ---------------------------------------------------------------------------
// Elements

Element::Element(ContextPtr ctx) : ctx_(std::move(ctx)) {}

Element Element::scalar(ContextPtr ctx, const Scalar& c) {
    Element e(std::move(ctx));
    e.add_term(Monomial{}, c);
    return e;
}

Element Element::monomial(ContextPtr ctx, const Monomial& m, const Scalar& c) {
    Element e(std::move(ctx));
    e.add_term(m, c);
    return e;
}

Scalar Element::constant_term() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Scalar() : it->second;
}

bool Element::is_scalar() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == Monomial{}); }

void Element::add_term(const Monomial& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void check_same_context(const Element& a, const Element& b) {
    if (a.context() != b.context() && !a.context()->same_algebra(*b.context())) {
        throw ContextMismatch("elements belong to different algebras");
    }
}

Element Element::operator-() const {
    Element r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

Element& Element::operator+=(const Element& rhs) {
    check_same_context(*this, rhs);
    for (const auto& [m, c] : rhs.terms_) add_term(m, c);
    return *this;
}

Element& Element::operator-=(const Element& rhs) {
    check_same_context(*this, rhs);
    for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
    return *this;
}

Element& Element::operator*=(const Scalar& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, x] : terms_) x *= c;
    return *this;
}

void multiply_monomials(const AlgebraContext& ctx, const Monomial& x, const Monomial& y, const Scalar& c, Terms& out) {
    const int n = ctx.n();
    std::array<const Rank1Expansion*, kMaxRank> lists{};
    for (int a = 0; a < n; ++a) {
        lists[a] = &ctx.rank1_product(x.p_at(a), x.d_at(a), x.v[a], y.p_at(a), y.d_at(a), y.v[a]);
        if (lists[a]->empty()) return;
    }
    // Moving the index-b factor of y left past the index-a factors of x with a > b.
    const uint32_t ox = x.odd(), oy = y.odd();
    int swaps = 0;
    for (uint32_t bits = oy; bits; bits &= bits - 1) {
        const int b = std::countr_zero(bits);
        swaps += std::popcount(b + 1 >= 32 ? 0U : (ox >> (b + 1)));
    }
    const Scalar base = swaps % 2 ? -c : c;
    std::array<std::size_t, kMaxRank> pos{};
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
        auto [it, inserted] = out.try_emplace(r, std::move(coeff));
        if (!inserted) it->second += coeff;
        int a = 0;
        while (a < n && ++pos[a] == lists[a]->size()) pos[a++] = 0;
        if (a == n) break;
    }
}

Element operator*(const Element& a, const Element& b) {
    check_same_context(a, b);
    Terms acc;
    const AlgebraContext& ctx = *a.context();
    for (const auto& [x, cx] : a.terms_) {
        for (const auto& [y, cy] : b.terms_) multiply_monomials(ctx, x, y, cx * cy, acc);
    }
    std::erase_if(acc, [](const auto& kv) { return kv.second.is_zero(); });
    Element out(a.context());
    out.terms_ = std::move(acc);
    return out;
}

bool operator==(const Element& a, const Element& b) {
    if (a.context() != b.context() && !a.context()->same_algebra(*b.context())) return false;
    return a.terms_ == b.terms_;
}

Element Element::pow(long e) const {
    if (e < 0) {
        if (is_scalar() && !is_zero()) return scalar(ctx_, constant_term().pow(e));
        throw DomainError("negative powers are only defined for scalars, omega and z");
    }
    Element result = scalar(ctx_, 1), base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return result;
}

std::string format_combination(const std::vector<std::pair<std::string, Scalar>>& terms, std::string_view var) {
    std::string out;
    for (const auto& [token, c] : terms) {
        std::string coeff = c.to_string(var);
        bool negative = false;
        const bool compound = coeff.find(" + ") != std::string::npos || coeff.find(" - ") != std::string::npos ||
                              coeff.front() == '(';
        if (compound) {
            coeff = "(" + coeff + ")";
        } else if (coeff.front() == '-') {
            negative = true;
            coeff.erase(0, 1);
        }
        std::string term;
        if (token.empty()) {
            term = coeff;
        } else if (coeff == "1") {
            term = token;
        } else {
            term = coeff + "*" + token;
        }
        if (out.empty()) {
            out = negative ? "-" + term : term;
        } else {
            out += negative ? " - " : " + ";
            out += term;
        }
    }
    return out.empty() ? "0" : out;
}

namespace {

std::string format_terms(const AlgebraContext& ctx, const Terms& terms) {
    std::vector<std::pair<std::string, Scalar>> tokens;
    for (const auto& [m, c] : terms) tokens.emplace_back(m == Monomial{} ? "" : monomial_to_string(ctx, m), c);
    return format_combination(tokens, ctx.var_name());
}

}  // namespace

std::string Element::to_string() const { return format_terms(*ctx_, terms_); }

std::string AltElement::to_string() const { return format_terms(*ctx, terms); }

// ---------------------------------------------------------------------------
// Generators

Element omega_power(const ContextPtr& ctx, int a, long e) {
    check_index(*ctx, a, ctx->n());
    if (e >= 0) return place_expansion(ctx, a - 1, ctx->reduce_rank1(0, 0, e));
    // omega^{-1} = (q^{2k} + 1) omega^{2k-1} - q^{2k} omega^{4k-1}
    const int k2 = ctx->twice_k();
    const Scalar q2k = ctx->q().pow(k2);
    Element inv = place_expansion(ctx, a - 1, ctx->reduce_rank1(0, 0, k2 - 1)) * (q2k + Scalar(1)) -
                  place_expansion(ctx, a - 1, ctx->reduce_rank1(0, 0, 2 * k2 - 1)) * q2k;
    return inv.pow(-e);
}

Element generator(const ContextPtr& ctx, Gen kind, int a) {
    check_index(*ctx, a, ctx->n());
    const bool psi = ctx->convention() == Convention::psi;
    switch (kind) {
        case Gen::psi:
        case Gen::psid:
            if (!psi) throw DomainError("psi generators need the psi presentation");
            return Element::monomial(ctx, place(a - 1, kind == Gen::psi, kind == Gen::psid, 0));
        case Gen::phi:
        case Gen::phid:
            if (psi) throw DomainError("phi generators need the phi presentation");
            return Element::monomial(ctx, place(a - 1, kind == Gen::phi, kind == Gen::phid, 0));
        case Gen::w:
            return omega_power(ctx, a, 1);
        case Gen::winv:
            if (!psi) throw DomainError("winv needs the psi presentation");
            return omega_power(ctx, a, -1);
    }
    throw DomainError("unknown generator");
}

std::optional<std::vector<int>> degree(const Element& x) {
    const int n = x.context()->n();
    std::optional<std::vector<int>> result;
    for (const auto& [m, c] : x.terms()) {
        std::vector<int> deg(n);
        for (int a = 0; a < n; ++a) deg[a] = m.p_at(a) - m.d_at(a);
        if (!result) {
            result = std::move(deg);
        } else if (*result != deg) {
            return std::nullopt;
        }
    }
    if (!result) result = std::vector<int>(n, 0);
    return result;
}

// ---------------------------------------------------------------------------
// Basis B' and the presentation change

namespace {

Scalar identity_coeff(const Scalar& c) { return c; }

void require_alt(const AlgebraContext& ctx) {
    if (ctx.convention() != Convention::psi) throw DomainError("basis B' is defined for the psi presentation");
    ctx.k();
    if (ctx.q_is_root_of_unity()) throw DomainError("basis B' needs q^{2k} != 1");
}

}  // namespace

AltElement to_alt_basis(const Element& x) {
    const AlgebraContext& ctx = *x.context();
    require_alt(ctx);
    const int k = ctx.k(), k2 = ctx.twice_k();
    const Scalar q2k = ctx.q().pow(k2);
    const Scalar inv = (q2k - Scalar(1)).inverse();
    std::vector<Rank1Expansion> pieces(ctx.pieces());
    for (int p = 0; p < 2; ++p)
        for (int d = 0; d < 2; ++d)
            for (int v = 0; v < k2; ++v) {
                Rank1Expansion& e = pieces[ctx.rank1_index(p, d, v)];
                if (p == 1 && d == 1) {
                    if (v < k) {
                        e.push_back({q2k * inv, 0, 0, static_cast<uint8_t>(3 * k + v)});
                        e.push_back({-inv, 0, 0, static_cast<uint8_t>(k + v)});
                    } else {
                        e.push_back({-inv, 0, 0, static_cast<uint8_t>(v - k)});
                        e.push_back({q2k * inv, 0, 0, static_cast<uint8_t>(v + k)});
                    }
                } else {
                    e.push_back({Scalar(1), static_cast<uint8_t>(p), static_cast<uint8_t>(d), static_cast<uint8_t>(v)});
                }
            }
    Element image = map_factorwise(
        x, x.context(), [&](int, int p, int d, int v) -> const Rank1Expansion& { return pieces[ctx.rank1_index(p, d, v)]; },
        identity_coeff, false);
    return AltElement{x.context(), image.terms()};
}

Element from_alt_basis(const AltElement& x) {
    const AlgebraContext& ctx = *x.ctx;
    require_alt(ctx);
    const int k2 = ctx.twice_k();
    Element wrapped(x.ctx);
    for (const auto& [m, c] : x.terms) {
        if (!alt_monomial_valid(ctx, m)) throw DomainError("monomial outside basis B'");
        wrapped.add_term(m, c);
    }
    // Pieces indexed by (p, d) in {00, 01, 10} and v < 4k.
    std::vector<Rank1Expansion> pieces(3 * 2 * k2);
    for (int v = 0; v < 2 * k2; ++v) pieces[v] = ctx.reduce_rank1(0, 0, v);
    for (int v = 0; v < k2; ++v) {
        pieces[2 * k2 + v] = {{Scalar(1), 0, 1, static_cast<uint8_t>(v)}};
        pieces[4 * k2 + v] = {{Scalar(1), 1, 0, static_cast<uint8_t>(v)}};
    }
    return map_factorwise(
        wrapped, x.ctx,
        [&](int, int p, int d, int v) -> const Rank1Expansion& { return pieces[(p * 2 + d) * 2 * k2 + v]; },
        identity_coeff, false);
}

Element convert_convention(const Element& x, Convention target) {
    const ContextPtr& src = x.context();
    if (src->convention() == target) return x;
    const int k = src->k();
    const int k2 = src->twice_k();
    ContextPtr dst = src->with_convention(target);
    const auto& pieces = src->piece_images(target == Convention::phi ? -1 : -2, [&] {
        std::vector<Rank1Expansion> out(src->pieces());
        if (target == Convention::phi) {
            // psi^* = phi^* omega^{-k}
            ContextPtr one = dst->with_rank(1);
            for (int p = 0; p < 2; ++p)
                for (int d = 0; d < 2; ++d)
                    for (int v = 0; v < k2; ++v) {
                        Element e = Element::monomial(one, place(0, p, d, 0)) * omega_power(one, 1, v - k * d);
                        out[src->rank1_index(p, d, v)] = as_rank1(e);
                    }
        } else {
            // phi^* = psi^* omega^k
            for (int p = 0; p < 2; ++p)
                for (int d = 0; d < 2; ++d)
                    for (int v = 0; v < k2; ++v) out[src->rank1_index(p, d, v)] = dst->reduce_rank1(p, d, v + k * d);
        }
        return out;
    });
    return map_factorwise(
        x, dst, [&](int, int p, int d, int v) -> const Rank1Expansion& { return pieces[src->rank1_index(p, d, v)]; },
        identity_coeff, false);
}

// ---------------------------------------------------------------------------
// Involutions

const std::vector<Involution>& all_involutions() {
    static const std::vector<Involution> all = {
        Involution::grade,       Involution::grade_tilde,       Involution::transpose,
        Involution::dagger,      Involution::duality,           Involution::conjugation,
        Involution::dual_dagger, Involution::transpose_duality, Involution::kappa_check};
    return all;
}

std::string involution_name(Involution kind) {
    switch (kind) {
        case Involution::grade: return "grade";
        case Involution::grade_tilde: return "grade_tilde";
        case Involution::transpose: return "transpose";
        case Involution::dagger: return "dagger";
        case Involution::duality: return "duality";
        case Involution::conjugation: return "conjugation";
        case Involution::dual_dagger: return "dual_dagger";
        case Involution::transpose_duality: return "transpose_duality";
        case Involution::kappa_check: return "kappa_check";
    }
    return "?";
}

std::optional<Involution> involution_from_name(const std::string& name) {
    for (Involution kind : all_involutions()) {
        if (involution_name(kind) == name) return kind;
    }
    return std::nullopt;
}

bool is_anti(Involution kind) {
    switch (kind) {
        case Involution::transpose:
        case Involution::dagger:
        case Involution::duality:
        case Involution::conjugation:
            return true;
        default:
            return false;
    }
}

namespace {

bool inverts_q(Involution kind) {
    return kind == Involution::duality || kind == Involution::dual_dagger || kind == Involution::transpose_duality ||
           kind == Involution::kappa_check;
}

}  // namespace

bool involution_available(const AlgebraContext& ctx, Involution kind) {
    if (kind == Involution::grade) return true;
    if (!ctx.integer_k()) return false;
    if (kind == Involution::grade_tilde && ctx.k() % 2 != 0) return false;
    if (inverts_q(kind) && !ctx.can_invert_q()) return false;
    if (kind == Involution::kappa_check && !ctx.q_is_root_of_unity()) return false;
    return true;
}

Element apply_involution(Involution kind, const Element& x) {
    const ContextPtr& ctx = x.context();
    if (!involution_available(*ctx, kind)) {
        std::string why;
        switch (kind) {
            case Involution::grade_tilde: why = "needs an even integer twist k"; break;
            case Involution::kappa_check: why = "needs numeric q with q^{2k} = 1"; break;
            default:
                why = ctx->integer_k() ? "needs q -> q^-1 to be a field automorphism" : "needs an integer twist k";
        }
        throw DomainError(involution_name(kind) + " " + why);
    }
    if (kind == Involution::grade) {
        std::vector<Rank1Expansion> pieces(ctx->pieces());
        for (int p = 0; p < 2; ++p)
            for (int d = 0; d < 2; ++d)
                for (int v = 0; v < ctx->twice_k(); ++v) {
                    pieces[ctx->rank1_index(p, d, v)] = {{Scalar((p + d) % 2 ? -1 : 1), static_cast<uint8_t>(p),
                                                          static_cast<uint8_t>(d), static_cast<uint8_t>(v)}};
                }
        return map_factorwise(
            x, ctx, [&](int, int p, int d, int v) -> const Rank1Expansion& { return pieces[ctx->rank1_index(p, d, v)]; },
            identity_coeff, false);
    }
    if (ctx->convention() == Convention::phi) {
        return convert_convention(apply_involution(kind, convert_convention(x, Convention::psi)), Convention::phi);
    }

    const bool anti = is_anti(kind);
    const auto& pieces = ctx->piece_images(static_cast<int>(kind), [&] {
        ContextPtr one = ctx->with_rank(1);
        const Element psi = generator(one, Gen::psi, 1), psid = generator(one, Gen::psid, 1);
        const Element w = generator(one, Gen::w, 1), winv = omega_power(one, 1, -1);
        const Scalar q = ctx->q(), qinv = q.inverse();
        Element im_psi = psi, im_psid = psid, im_w = w;
        switch (kind) {
            case Involution::grade_tilde:
                im_psi = -psi;
                im_psid = -psid;
                im_w = -w;
                break;
            case Involution::transpose:
                im_w = winv * qinv;
                break;
            case Involution::dagger:
                im_psi = psid;
                im_psid = psi;
                break;
            case Involution::duality:
                im_psi = psid;
                im_psid = psi;
                im_w = winv;
                break;
            case Involution::conjugation:
                im_psi = -psi;
                im_psid = -psid;
                im_w = winv * qinv;
                break;
            case Involution::dual_dagger:
                im_w = winv;
                break;
            case Involution::transpose_duality:
                im_psi = psid;
                im_psid = psi;
                im_w = w * q;
                break;
            case Involution::kappa_check:
                im_psi = psid;
                im_psid = psi;
                im_w = w * qinv;
                break;
            case Involution::grade:
                break;
        }
        std::vector<Rank1Expansion> pieces(ctx->pieces());
        const Element unit = Element::scalar(one, 1);
        for (int p = 0; p < 2; ++p)
            for (int d = 0; d < 2; ++d)
                for (int v = 0; v < ctx->twice_k(); ++v) {
                    const Element a = p ? im_psi : unit, b = d ? im_psid : unit, c = im_w.pow(v);
                    pieces[ctx->rank1_index(p, d, v)] = as_rank1(anti ? c * b * a : a * b * c);
                }
        return pieces;
    });
    const bool flip_q = inverts_q(kind);
    return map_factorwise(
        x, ctx, [&](int, int p, int d, int v) -> const Rank1Expansion& { return pieces[ctx->rank1_index(p, d, v)]; },
        [&](const Scalar& c) { return flip_q ? ctx->invert_q(c) : c; }, anti);
}

}  // namespace qcl
