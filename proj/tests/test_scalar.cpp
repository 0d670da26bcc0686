#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "qcl/scalar.hpp"

using qcl::Cyclotomic;
using qcl::Scalar;

namespace {

const Scalar q = Scalar::variable();

Scalar random_scalar(std::mt19937& rng, int conductor) {
    std::uniform_int_distribution<int> coef(-3, 3), deg(0, 2), pw(0, conductor - 1);
    auto poly = [&]() {
        Scalar s;
        const int terms = deg(rng) + 1;
        for (int i = 0; i < terms; ++i) s += Scalar(coef(rng)) * Scalar::zeta(conductor, pw(rng)) * q.pow(deg(rng));
        return s;
    };
    Scalar den = poly();
    while (den.is_zero()) den = poly();
    return poly() / den;
}

}  // namespace

TEST_CASE("cyclotomic polynomials") {
    CHECK(qcl::cyclotomic_polynomial(1) == std::vector<long>{-1, 1});
    CHECK(qcl::cyclotomic_polynomial(4) == std::vector<long>{1, 0, 1});
    CHECK(qcl::cyclotomic_polynomial(6) == std::vector<long>{1, -1, 1});
    CHECK(qcl::cyclotomic_polynomial(12) == std::vector<long>{1, 0, -1, 0, 1});
    CHECK(qcl::euler_phi(8) == 4);
}

TEST_CASE("roots of unity") {
    CHECK(Scalar::zeta(2) == Scalar(-1));
    CHECK((Scalar::zeta(2) * Scalar::zeta(2)).is_one());
    CHECK(Scalar::zeta(4).pow(2) == Scalar(-1));
    CHECK(Scalar::zeta(6).pow(3) == Scalar(-1));
    for (int m : {3, 4, 5, 6, 8, 12}) {
        const Scalar z = Scalar::zeta(m);
        CHECK(z.pow(m).is_one());
        for (int j = 1; j < m; ++j) CHECK_FALSE(z.pow(j).is_one());
        // Phi_m(zeta) = 0
        Scalar value;
        const auto& phi = qcl::cyclotomic_polynomial(m);
        for (std::size_t i = 0; i < phi.size(); ++i) value += Scalar(phi[i]) * z.pow(static_cast<long>(i));
        CHECK(value.is_zero());
    }
    CHECK(Scalar::zeta(4).to_string() == "(z)");
    CHECK(Cyclotomic::root(6, 2).to_string() == "z - 1");
}

TEST_CASE("arithmetic examples") {
    CHECK(q * q == q.pow(2));
    CHECK((q * q).to_string() == "q^2");
    const Scalar r = Scalar(1) / (q - q.inverse());
    CHECK(r == q / (q * q - Scalar(1)));
    CHECK(r.to_string() == "(q)/(q^2 - 1)");
    CHECK((q - q.inverse()).to_string() == "q - q^-1");
    CHECK(Scalar(mpq_class(3, 2)).to_string() == "3/2");
    CHECK((Scalar(1) - q.pow(-2)).to_string() == "1 - q^-2");
    CHECK(Scalar().to_string() == "0");
    CHECK_THROWS_AS(Scalar(1) / Scalar(0), qcl::DivisionByZero);
    CHECK_THROWS_AS(Scalar::zeta(3) + Scalar::zeta(5), qcl::ContextMismatch);
    CHECK(Scalar::zeta(4) * Scalar::zeta(8).pow(2) == Scalar(-1));
}

TEST_CASE("q-combinatorics") {
    CHECK(qcl::q_integer(2, q) == q + q.inverse());
    CHECK(qcl::q_integer(1, q).is_one());
    CHECK(qcl::q_integer(0, q).is_zero());
    CHECK(qcl::q_binomial(2, 1, q) == q + q.inverse());
    CHECK(qcl::q_integer(3, q) == q.pow(2) + Scalar(1) + q.pow(-2));
    CHECK(qcl::q_binomial(4, 2, q) == q.pow(4) + q.pow(2) + Scalar(2) + q.pow(-2) + q.pow(-4));
    CHECK_THROWS_AS(qcl::q_integer(2, Scalar(1)), qcl::DomainError);
    CHECK_THROWS_AS(qcl::q_binomial(2, 3, q), qcl::DomainError);
}

TEST_CASE("field axioms on random samples") {
    std::mt19937 rng(7);
    for (int conductor : {1, 4, 6}) {
        for (int trial = 0; trial < 40; ++trial) {
            const Scalar a = random_scalar(rng, conductor), b = random_scalar(rng, conductor),
                         c = random_scalar(rng, conductor);
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a + b == b + a);
            CHECK(a * b == b * a);
            CHECK((a - a).is_zero());
            if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
        }
    }
}

TEST_CASE("canonical forms are unique") {
    const Scalar a = (q.pow(2) - Scalar(1)) / (q - Scalar(1));
    CHECK(a == q + Scalar(1));
    CHECK(a.to_string() == "q + 1");
    const Scalar b = (q.pow(3) + Scalar(2) * q) / (q.pow(2) * (q + Scalar(3)));
    const Scalar c = (q.pow(2) + Scalar(2)) / (q.pow(2) + Scalar(3) * q);
    CHECK(b == c);
    CHECK(b.to_string() == c.to_string());
}

TEST_CASE("field automorphisms") {
    const Scalar z = Scalar::zeta(4);
    CHECK((q + z).invert_variable() == q.inverse() + z.inverse());
    CHECK((q / (q + Scalar(2))).invert_variable() == q.inverse() / (q.inverse() + Scalar(2)));
    CHECK((q.pow(2) + Scalar(1)).evaluate(Scalar(2)) == Scalar(5));
    CHECK((q + Scalar(1)).substitute_power(2) == q.pow(2) + Scalar(1));
}
