#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "qcl/classical.hpp"
#include "qcl/linalg.hpp"
#include "qcl/structure.hpp"

using namespace qcl;

namespace {

ContextPtr psi_ctx(int n, int k) { return AlgebraContext::create(n, 2 * k); }

Scalar qv() { return Scalar::variable(); }

Element gen(const ContextPtr& c, Gen g, int a = 1) { return generator(c, g, a); }

Element random_element(const ContextPtr& ctx, std::mt19937& rng, int terms) {
    const auto basis = enumerate_basis(*ctx);
    std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
    std::uniform_int_distribution<int> coeff(-3, 3);
    Element x(ctx);
    for (int i = 0; i < terms; ++i) x.add_term(basis[pick(rng)], Scalar(coeff(rng)) + qv() * Scalar(coeff(rng)));
    return x;
}

TensorElement random_tensor(const ContextPtr& factor, int m, std::mt19937& rng) {
    TensorElement t(factor, m);
    for (int i = 0; i < 2; ++i) {
        std::vector<Element> parts;
        for (int j = 0; j < m; ++j) parts.push_back(random_element(factor, rng, 2));
        t += TensorElement::pure(parts);
    }
    return t;
}

}  // namespace

TEST_CASE("brackets, n=1 k=1") {
    auto c = psi_ctx(1, 1);
    const Element p = gen(c, Gen::psi), d = gen(c, Gen::psid), w = gen(c, Gen::w);
    const Element pd = p * d;
    CHECK(bracket(p, d, -1) == pd * (Scalar(1) - qv()) + w * qv());
    CHECK(bracket(p, d, 1) == pd * (Scalar(1) + qv()) - w * qv());
    auto c2 = psi_ctx(2, 1);
    CHECK(bracket(gen(c2, Gen::w, 1), gen(c2, Gen::w, 2), 1).is_zero());
    CHECK_THROWS_AS(bracket(p, gen(c2, Gen::psi, 1), 1), ContextMismatch);
}

TEST_CASE("central generators") {
    auto c = psi_ctx(1, 1);
    const Element z = central_generator(c, 1);
    const Element p = gen(c, Gen::psi), d = gen(c, Gen::psid), w = gen(c, Gen::w);
    CHECK(z == w * qv() - p * d * (qv() - Scalar(1)));
    CHECK(z.to_string() == "q*w1 + (-q + 1)*p1*d1");
    CHECK(z * z == Element::scalar(c, 1));
    CHECK(bracket(z, p, 1).is_zero());
    CHECK_THROWS_AS(central_generator(c, 2), DomainError);

    for (int n = 1; n <= 2; ++n)
        for (int k = 1; k <= 2; ++k) {
            auto ctx = psi_ctx(n, k);
            for (int a = 1; a <= n; ++a) {
                const Element za = central_generator(ctx, a);
                CHECK(is_central(za));
                CHECK(za.pow(2 * k) == Element::scalar(ctx, 1));
                CHECK(za.pow(k) == bracket(gen(ctx, Gen::psi, a), gen(ctx, Gen::psid, a), -1));
            }
        }

    for (int twice_k : {1, 3}) {
        auto half = AlgebraContext::create(2, twice_k, Convention::phi);
        for (int a = 1; a <= 2; ++a) {
            const Element za = central_generator(half, a);
            CHECK(is_central(za));
            CHECK(za.pow(twice_k) == Element::scalar(half, 1));
        }
    }
}

TEST_CASE("volume elements") {
    auto c = psi_ctx(2, 1);
    const Element f1 = volume_element(c, 1);
    const Element p1 = gen(c, Gen::psi, 1), d1 = gen(c, Gen::psid, 1), p2 = gen(c, Gen::psi, 2);
    CHECK(f1 == p1 * d1 * (Scalar(1) + qv()) - gen(c, Gen::w, 1) * qv());
    CHECK((f1 * p1 + p1 * f1).is_zero());
    CHECK((f1 * p2 - p2 * f1).is_zero());
    CHECK(volume_element(c, 0) == Element::scalar(c, 1));
    CHECK_THROWS_AS(volume_element(c, 3), DomainError);

    for (int k = 1; k <= 2; ++k) {
        auto ctx = psi_ctx(2, k);
        for (int r = 0; r <= 2; ++r) {
            const Element f = volume_element(ctx, r);
            CHECK(f * f == Element::scalar(ctx, 1));
            for (int s = 0; s <= 2; ++s) CHECK(f * volume_element(ctx, s) == volume_element(ctx, s) * f);
            for (int a = 1; a <= 2; ++a) {
                const int sign = a <= r ? -1 : 1;
                for (Gen g : {Gen::psi, Gen::psid}) {
                    const Element x = gen(ctx, g, a);
                    CHECK(bracket(f, x, sign).is_zero());
                }
                CHECK(bracket(f, gen(ctx, Gen::w, a), 1).is_zero());
            }
        }
    }

    auto half = AlgebraContext::create(2, 1, Convention::phi);
    const Element fh = volume_element(half, 2);
    CHECK(fh * fh == Element::scalar(half, 1));
    CHECK(bracket(fh, gen(half, Gen::phi, 1), -1).is_zero());
}

TEST_CASE("standardized coordinates") {
    auto c = psi_ctx(1, 1);
    const Element p = gen(c, Gen::psi), d = gen(c, Gen::psid);
    const Element e1 = standardized_coordinate(c, 1), e2 = standardized_coordinate(c, 2);
    CHECK(e1 == d - p);
    // With these formulas the odd coordinates square to minus the anticommutator.
    CHECK(bracket(e1, e2, -1).is_zero());
    CHECK(bracket(e1, e1, -1) == bracket(p, d, -1) * Scalar(-2));
    CHECK(bracket(e2, e2, -1) == bracket(p, d, -1) * Scalar(2));
    CHECK(e1 * e2 == -bracket(p, d, 1));
    CHECK_THROWS_AS(standardized_coordinate(c, 3), DomainError);
    CHECK_THROWS_AS(standardized_coordinate(c, 0), DomainError);

    auto c2 = psi_ctx(2, 2);
    Element product = Element::scalar(c2, 1);
    for (int a = 1; a <= 4; ++a) {
        product = product * standardized_coordinate(c2, a);
        for (int b = 1; b <= 4; ++b) {
            const Element anti = bracket(standardized_coordinate(c2, a), standardized_coordinate(c2, b), -1);
            const int j = (a + 1) / 2;
            const Scalar sign = a % 2 ? -2 : 2;
            const Element expected =
                a == b ? bracket(gen(c2, Gen::psi, j), gen(c2, Gen::psid, j), -1) * sign : Element(c2);
            CHECK(anti == expected);
            CHECK(is_central(anti));
        }
    }
    CHECK(product == volume_element(c2, 2));
}

TEST_CASE("gamma examples, n=1 m=2 k=1") {
    auto c = psi_ctx(1, 1);
    const Element one = Element::scalar(c, 1), p = gen(c, Gen::psi), w = gen(c, Gen::w);
    auto big = psi_ctx(2, 1);
    CHECK(gamma(TensorElement::pure({p, one})) == gen(big, Gen::psi, 1));
    CHECK(gamma(TensorElement::pure({one, p})) == volume_element(big, 1) * gen(big, Gen::psi, 2));
    CHECK(gamma(TensorElement::pure({one, w})) == gen(big, Gen::w, 2));

    CHECK(gamma_inverse(gen(big, Gen::psi, 2), 1, 2) == TensorElement::pure({volume_element(c, 1), p}));
    CHECK(gamma_inverse(gen(big, Gen::w, 2), 1, 2) == TensorElement::pure({one, w}));
    const Element pp = gen(big, Gen::psi, 1) * gen(big, Gen::psi, 2);
    CHECK(gamma(gamma_inverse(pp, 1, 2)) == pp);
    CHECK_THROWS_AS(gamma_inverse(pp, 1, 3), DomainError);
}

TEST_CASE("gamma is an isomorphism") {
    std::mt19937 rng(7);
    for (int n = 1; n <= 2; ++n)
        for (int k = 1; k <= 2; ++k) {
            auto factor = psi_ctx(n, k);
            auto big = psi_ctx(2 * n, k);
            for (const Element& g : algebra_generators(big)) CHECK(gamma(gamma_inverse(g, n, 2)) == g);
            const Element one = Element::scalar(factor, 1);
            for (const Element& g : algebra_generators(factor)) {
                for (int slot = 0; slot < 2; ++slot) {
                    std::vector<Element> parts{one, one};
                    parts[slot] = g;
                    const TensorElement t = TensorElement::pure(parts);
                    CHECK(gamma_inverse(gamma(t), n, 2) == t);
                }
            }
            for (int trial = 0; trial < 5; ++trial) {
                const TensorElement s = random_tensor(factor, 2, rng), t = random_tensor(factor, 2, rng);
                CHECK(gamma(s * t) == gamma(s) * gamma(t));
            }
        }
}

TEST_CASE("center") {
    for (int n = 1; n <= 2; ++n)
        for (int k = 1; k <= 2; ++k) {
            auto ctx = psi_ctx(n, k);
            const CenterReport r = center_report(ctx);
            CHECK(r.expected == static_cast<std::size_t>(n == 1 ? 2 * k : 4 * k * k));
            CHECK(r.ok());
            for (const Element& x : center_basis(ctx)) CHECK(is_central(x));
        }
}

TEST_CASE("takeuchi examples, n=1 k=1") {
    auto c = psi_ctx(1, 1);
    auto cl = classical_context(*c);
    const Element v = gen(cl, Gen::phi), vd = gen(cl, Gen::phid);
    const auto psi_img = takeuchi(gen(c, Gen::psi));
    REQUIRE(psi_img.size() == 2);
    CHECK(psi_img[0] == v);
    CHECK(psi_img[1] == -v);

    const auto w_img = takeuchi(gen(c, Gen::w));
    const Element expected = v * vd * (Scalar(1) - qv().inverse()) + Element::scalar(cl, qv().inverse());
    CHECK(w_img[0] == expected);
    CHECK(w_img[1] == -expected);

    const std::vector<Element> tuple{v, Element(cl)};
    const Element pre = takeuchi_inverse(tuple, c);
    CHECK(takeuchi(pre) == tuple);
    CHECK_THROWS_AS(takeuchi(gen(AlgebraContext::create(1, 1, Convention::phi), Gen::phi)), DomainError);
}

TEST_CASE("takeuchi is an isomorphism") {
    for (int n = 1; n <= 2; ++n)
        for (int k = 1; k <= 2; ++k) {
            auto ctx = psi_ctx(n, k);
            auto cl = classical_context(*ctx);
            for (const auto& label : takeuchi_labels(*ctx)) {
                for (const auto& rel : psi_relations(takeuchi_images(ctx, label))) {
                    INFO(rel.name);
                    CHECK(rel.residual.is_zero());
                }
            }
            const std::size_t blocks = takeuchi_labels(*ctx).size();
            for (int a = 1; a <= n; ++a) {
                for (Gen g : {Gen::phi, Gen::phid}) {
                    for (std::size_t t = 0; t < blocks; ++t) {
                        std::vector<Element> tuple(blocks, Element(cl));
                        tuple[t] = gen(cl, g, a);
                        CHECK(takeuchi(takeuchi_inverse(tuple, ctx)) == tuple);
                    }
                }
            }
            for (const Element& g : algebra_generators(ctx)) {
                CHECK(takeuchi_inverse(takeuchi(g), ctx) == g);
            }
        }
}

TEST_CASE("classical engine agrees with the half-twist algebra") {
    using classical::letter;
    const classical::Word w{letter(2, true), letter(1, false), letter(2, false), letter(1, true)};
    CHECK(classical::to_string(classical::normalize(w)) == "-v1*vd1 + v1*vd1*v2*vd2");

    for (int n = 1; n <= 2; ++n) {
        auto half = AlgebraContext::create(n, 1, Convention::phi);
        const auto basis = enumerate_basis(*half);
        for (const Monomial& x : basis)
            for (const Monomial& y : basis) {
                const Element ex = Element::monomial(half, x), ey = Element::monomial(half, y);
                CHECK(to_classical(ex * ey) == classical::multiply(to_classical(ex), to_classical(ey)));
            }
    }
}
