#pragma once

// The defining relations of Cl_q(n,k), evaluated on images of the generators
// in any target with ring operations (elements, classical elements, matrices).

#include <functional>
#include <string>
#include <vector>

#include "qcl/scalar.hpp"

namespace qcl {

template <typename T>
struct GeneratorImages {
    int n = 0;
    int twice_k = 2;
    Scalar q;
    T one;
    // Odd generators: psi_a, psi_a^* (or phi_a, phi_a^*), then omega_a and omega_a^{-1}.
    std::function<T(int)> odd, odd_star, w, winv;
};

template <typename T>
struct RelationResidual {
    std::string name;
    T residual;
};

template <typename T>
T power(const T& x, long e, const T& one) {
    T r = one;
    for (long i = 0; i < e; ++i) r = r * x;
    return r;
}

namespace detail {

template <typename T>
void common_relations(const GeneratorImages<T>& g, const std::string& o, const std::string& os,
                      std::vector<RelationResidual<T>>& out) {
    const Scalar& q = g.q;
    for (int a = 1; a <= g.n; ++a) {
        const std::string sa = std::to_string(a);
        out.push_back({"w" + sa + "*winv" + sa + " = 1", g.w(a) * g.winv(a) - g.one});
        for (int b = 1; b <= g.n; ++b) {
            const std::string sb = std::to_string(b);
            const Scalar t = a == b ? q : Scalar(1);
            out.push_back({"w" + sa + "*w" + sb + " = w" + sb + "*w" + sa, g.w(a) * g.w(b) - g.w(b) * g.w(a)});
            out.push_back({"w" + sa + "*" + o + sb + " = q^d*" + o + sb + "*w" + sa,
                           g.w(a) * g.odd(b) - g.odd(b) * g.w(a) * t});
            out.push_back({"w" + sa + "*" + os + sb + " = q^-d*" + os + sb + "*w" + sa,
                           g.w(a) * g.odd_star(b) - g.odd_star(b) * g.w(a) * t.inverse()});
            out.push_back({o + sa + "*" + o + sb + " + " + o + sb + "*" + o + sa + " = 0",
                           g.odd(a) * g.odd(b) + g.odd(b) * g.odd(a)});
            out.push_back({os + sa + "*" + os + sb + " + " + os + sb + "*" + os + sa + " = 0",
                           g.odd_star(a) * g.odd_star(b) + g.odd_star(b) * g.odd_star(a)});
            if (a != b) {
                out.push_back({o + sa + "*" + os + sb + " + " + os + sb + "*" + o + sa + " = 0",
                               g.odd(a) * g.odd_star(b) + g.odd_star(b) * g.odd(a)});
            }
        }
    }
}

}  // namespace detail

/// Relations of the psi presentation (integer k).
template <typename T>
std::vector<RelationResidual<T>> psi_relations(const GeneratorImages<T>& g) {
    std::vector<RelationResidual<T>> out;
    detail::common_relations(g, "psi", "psid", out);
    const int k = g.twice_k / 2;
    const Scalar qk = g.q.pow(k);
    for (int a = 1; a <= g.n; ++a) {
        const std::string sa = std::to_string(a);
        const T pd = g.odd(a) * g.odd_star(a), dp = g.odd_star(a) * g.odd(a);
        out.push_back({"psi" + sa + "*psid" + sa + " + q^k*psid" + sa + "*psi" + sa + " = w" + sa + "^-k",
                       pd + dp * qk - power(g.winv(a), k, g.one)});
        out.push_back({"psi" + sa + "*psid" + sa + " + q^-k*psid" + sa + "*psi" + sa + " = w" + sa + "^k",
                       pd + dp * qk.inverse() - power(g.w(a), k, g.one)});
    }
    return out;
}

/// Relations of the phi presentation (k in Z/2).
template <typename T>
std::vector<RelationResidual<T>> phi_relations(const GeneratorImages<T>& g) {
    std::vector<RelationResidual<T>> out;
    detail::common_relations(g, "phi", "phid", out);
    const Scalar q2k_inv = g.q.pow(-g.twice_k);
    for (int a = 1; a <= g.n; ++a) {
        const std::string sa = std::to_string(a);
        const T pd = g.odd(a) * g.odd_star(a), dp = g.odd_star(a) * g.odd(a);
        const T w2k = power(g.w(a), g.twice_k, g.one);
        out.push_back({"phi" + sa + "*phid" + sa + " + phid" + sa + "*phi" + sa + " = 1", pd + dp - g.one});
        out.push_back({"phi" + sa + "*phid" + sa + " + q^-2k*phid" + sa + "*phi" + sa + " = w" + sa + "^2k",
                       pd + dp * q2k_inv - w2k});
        out.push_back({"w" + sa + "^4k = (1 + q^-2k)*w" + sa + "^2k - q^-2k",
                       w2k * w2k - w2k * (Scalar(1) + q2k_inv) + g.one * q2k_inv});
    }
    return out;
}

}  // namespace qcl
