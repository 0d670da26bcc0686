#include "qcl/qgroup.hpp"

#include "qcl/structure.hpp"

namespace qcl {

std::string family_name(CartanFamily f) {
    switch (f) {
        case CartanFamily::A: return "A";
        case CartanFamily::B: return "B";
        case CartanFamily::D: return "D";
    }
    return "?";
}

CartanDatum CartanDatum::for_clifford_rank(CartanFamily family, int n) {
    if (n < 2) throw DomainError("quantum group images need n >= 2");
    CartanDatum c{family, family == CartanFamily::A ? n - 1 : n, {}, {}};
    const int r = c.rank;
    c.a.assign(r, std::vector<int>(r, 0));
    c.d.assign(r, 1);
    for (int i = 0; i < r; ++i) c.a[i][i] = 2;
    // The chain 1 - 2 - ... - (n-1) shared by all three families.
    const int chain = family == CartanFamily::A ? r : n - 1;
    for (int i = 0; i + 1 < chain; ++i) c.a[i][i + 1] = c.a[i + 1][i] = -1;
    if (family == CartanFamily::D && n >= 3) {
        c.a[n - 3][n - 1] = c.a[n - 1][n - 3] = -1;
    }
    if (family == CartanFamily::B) {
        c.a[n - 2][n - 1] = -1;
        c.a[n - 1][n - 2] = -2;
        for (int i = 0; i < n - 1; ++i) c.d[i] = 2;
    }
    return c;
}

ThetaImage theta_image(const ContextPtr& ctx, CartanFamily family) {
    if (ctx->convention() != Convention::psi) throw DomainError("quantum group images use the psi presentation");
    const int n = ctx->n();
    ThetaImage img{CartanDatum::for_clifford_rank(family, n), ctx, ctx->q(), {}, {}, {}, {}};
    if (family == CartanFamily::B) {
        if (ctx->q_spec().kind != QSpec::Kind::sqrt_formal) {
            throw DomainError("type B needs q^{1/2}; use a context with q = s^2");
        }
        img.base = ctx->variable();
    }
    auto psi = [&](int a) { return generator(ctx, Gen::psi, a); };
    auto psid = [&](int a) { return generator(ctx, Gen::psid, a); };
    auto w = [&](int a) { return generator(ctx, Gen::w, a); };
    auto winv = [&](int a) { return omega_power(ctx, a, -1); };
    for (int i = 1; i < n; ++i) {
        img.E.push_back(psi(i) * psid(i + 1));
        img.F.push_back(psi(i + 1) * psid(i));
        img.K.push_back(w(i) * winv(i + 1));
        img.Kinv.push_back(winv(i) * w(i + 1));
    }
    const Scalar q = ctx->q();
    if (family == CartanFamily::D) {
        img.E.push_back(psi(n - 1) * psi(n));
        img.F.push_back(psid(n) * psid(n - 1));
        img.K.push_back(w(n - 1) * w(n) * q);
        img.Kinv.push_back(winv(n - 1) * winv(n) * q.inverse());
    } else if (family == CartanFamily::B) {
        img.E.push_back(psi(n));
        img.F.push_back(psid(n));
        img.K.push_back(w(n) * img.base);
        img.Kinv.push_back(winv(n) * img.base.inverse());
    }
    return img;
}

std::vector<RelationCheck> check_uqgk_relations(const ThetaImage& img) {
    const ContextPtr& ctx = img.ctx;
    const int r = img.datum.rank, k = ctx->k();
    const Element one = Element::scalar(ctx, 1);
    std::vector<RelationCheck> out;
    auto name = [](const std::string& s, int i) { return s + std::to_string(i + 1); };
    for (int i = 0; i < r; ++i) {
        out.push_back({name("K", i) + "*Kinv" + std::to_string(i + 1) + " = 1", img.K[i] * img.Kinv[i] - one});
        out.push_back({name("Kinv", i) + "*K" + std::to_string(i + 1) + " = 1", img.Kinv[i] * img.K[i] - one});
        for (int j = i + 1; j < r; ++j) {
            out.push_back({name("K", i) + "*" + name("K", j) + " = " + name("K", j) + "*" + name("K", i),
                           bracket(img.K[i], img.K[j], 1)});
        }
    }
    for (int i = 0; i < r; ++i) {
        const Scalar qi = img.q_i(i);
        for (int j = 0; j < r; ++j) {
            const Scalar t = qi.pow(img.datum.a[i][j]);
            out.push_back({name("K", i) + "*" + name("E", j) + "*" + name("Kinv", i) + " = q_i^a*" + name("E", j),
                           img.K[i] * img.E[j] * img.Kinv[i] - img.E[j] * t});
            out.push_back({name("K", i) + "*" + name("F", j) + "*" + name("Kinv", i) + " = q_i^-a*" + name("F", j),
                           img.K[i] * img.F[j] * img.Kinv[i] - img.F[j] * t.inverse()});
            Element rhs(ctx);
            if (i == j) {
                const Scalar qk = qi.pow(k);
                rhs = (img.K[i].pow(k) - img.Kinv[i].pow(k)) * (qk - qk.inverse()).inverse();
            }
            out.push_back({"[" + name("E", i) + ", " + name("F", j) + "]", bracket(img.E[i], img.F[j], 1) - rhs});
        }
    }
    for (int i = 0; i < r; ++i) {
        const Scalar qik = img.q_i(i).pow(k);
        for (int j = 0; j < r; ++j) {
            if (i == j) continue;
            const int N = 1 - img.datum.a[i][j];
            for (const auto* family : {&img.E, &img.F}) {
                const std::string letter = family == &img.E ? "E" : "F";
                const Element& xi = (*family)[i];
                const Element& xj = (*family)[j];
                std::vector<Element> powers{one};
                for (int m = 1; m <= N; ++m) powers.push_back(powers.back() * xi);
                Element sum(ctx);
                for (int m = 0; m <= N; ++m) {
                    const Scalar c = q_binomial(N, m, qik) * Scalar(m % 2 ? -1 : 1);
                    sum += powers[N - m] * xj * powers[m] * c;
                }
                out.push_back({"serre " + name(letter, i) + " " + name(letter, j), sum});
                if (N == 2) {
                    out.push_back({"serre nested " + name(letter, i) + " " + name(letter, j),
                                   bracket(xi, bracket(xi, xj, qik), qik.inverse())});
                }
            }
        }
    }
    return out;
}

std::vector<std::pair<std::string, bool>> degree_bookkeeping(const ThetaImage& img) {
    const int n = img.ctx->n(), r = img.datum.rank;
    std::vector<std::pair<std::string, bool>> out;
    for (int i = 0; i < r; ++i) {
        std::vector<int> expected(n, 0);
        if (i < n - 1) {
            expected[i] = 1;
            expected[i + 1] = -1;
        } else if (img.datum.family == CartanFamily::D) {
            expected[n - 2] = expected[n - 1] = 1;
        } else {
            expected[n - 1] = 1;
        }
        std::vector<int> negated(n);
        for (int a = 0; a < n; ++a) negated[a] = -expected[a];
        out.emplace_back("deg E" + std::to_string(i + 1), degree(img.E[i]) == expected);
        out.emplace_back("deg F" + std::to_string(i + 1), degree(img.F[i]) == negated);
    }
    return out;
}

std::vector<RelationCheck> lemma_identities(const ContextPtr& ctx) {
    const int n = ctx->n(), k = ctx->k();
    const Scalar q = ctx->q(), qk = q.pow(k);
    const Scalar denom = (qk - qk.inverse()).inverse();
    auto psi = [&](int a) { return generator(ctx, Gen::psi, a); };
    auto psid = [&](int a) { return generator(ctx, Gen::psid, a); };
    auto w = [&](int a, long e) { return omega_power(ctx, a, e); };
    std::vector<RelationCheck> out;
    for (int a = 1; a <= n; ++a) {
        const std::string sa = std::to_string(a);
        const Element pd = psi(a) * psid(a), dp = psid(a) * psi(a);
        out.push_back({"p" + sa + "*d" + sa + " + d" + sa + "*p" + sa,
                       pd + dp - (w(a, k) * qk + w(a, -k)) * (qk + Scalar(1)).inverse()});
        out.push_back({"p" + sa + "*d" + sa + " - d" + sa + "*p" + sa,
                       pd - dp - (w(a, k) * qk - w(a, -k)) * (qk - Scalar(1)).inverse()});
        for (int b = 1; b <= n; ++b) {
            if (b == a) continue;
            const std::string sb = std::to_string(b);
            const Element ratio = w(a, 1) * w(b, -1), ratio_inv = w(a, -1) * w(b, 1);
            out.push_back({"[p" + sa + "*d" + sb + ", p" + sb + "*d" + sa + "]",
                           bracket(psi(a) * psid(b), psi(b) * psid(a), 1) -
                               (ratio.pow(k) - ratio_inv.pow(k)) * denom});
            const Element prod = w(a, 1) * w(b, 1) * q, prod_inv = w(a, -1) * w(b, -1) * q.inverse();
            out.push_back({"[p" + sa + "*p" + sb + ", d" + sb + "*d" + sa + "]",
                           bracket(psi(a) * psi(b), psid(b) * psid(a), 1) - (prod.pow(k) - prod_inv.pow(k)) * denom});
            for (int c = 1; c <= n; ++c) {
                if (c == a || c == b) continue;
                for (int left = 0; left < 2; ++left)
                    for (int right = 0; right < 2; ++right) {
                        const Element x = left ? psid(a) : psi(a), z = right ? psid(c) : psi(c);
                        const std::string xs = (left ? "d" : "p") + sa, zs = (right ? "d" : "p") + std::to_string(c);
                        for (int sign : {1, -1}) {
                            const Scalar t = sign > 0 ? qk : qk.inverse();
                            out.push_back({"[" + xs + "*p" + sb + ", d" + sb + "*" + zs + "]_q^" +
                                               (sign > 0 ? "k" : "-k"),
                                           bracket(x * psi(b), psid(b) * z, t) - w(b, -sign * k) * x * z});
                        }
                    }
            }
        }
    }
    return out;
}

std::vector<RelationCheck> induced_involution_check(const ThetaImage& img) {
    std::vector<RelationCheck> out;
    for (int i = 0; i < img.datum.rank; ++i) {
        const std::string s = std::to_string(i + 1);
        const Element& E = img.E[i];
        const Element& F = img.F[i];
        const Element& K = img.K[i];
        const Element& Kinv = img.Kinv[i];
        out.push_back({"dagger(E" + s + ") = F" + s, apply_involution(Involution::dagger, E) - F});
        out.push_back({"dagger(F" + s + ") = E" + s, apply_involution(Involution::dagger, F) - E});
        out.push_back({"dagger(K" + s + ") = K" + s, apply_involution(Involution::dagger, K) - K});
        if (involution_available(*img.ctx, Involution::duality)) {
            out.push_back({"duality(E" + s + ") = F" + s, apply_involution(Involution::duality, E) - F});
            out.push_back({"duality(F" + s + ") = E" + s, apply_involution(Involution::duality, F) - E});
            out.push_back({"duality(K" + s + ") = Kinv" + s, apply_involution(Involution::duality, K) - Kinv});
        }
        out.push_back({"transpose(E" + s + ") = E" + s, apply_involution(Involution::transpose, E) - E});
        out.push_back({"transpose(F" + s + ") = F" + s, apply_involution(Involution::transpose, F) - F});
        out.push_back({"transpose(K" + s + ") = Kinv" + s, apply_involution(Involution::transpose, K) - Kinv});
    }
    return out;
}

}  // namespace qcl
