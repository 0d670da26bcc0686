#pragma once

// Exact scalars: the field K = Q(zeta_m)(x) of rational functions in one
// indeterminate x whose coefficients lie in the m-th cyclotomic field.
//
// Elements of Q(zeta_m) are stored in the power basis 1, zeta, ..., zeta^(phi(m)-1)
// reduced modulo the cyclotomic polynomial Phi_m.  A Scalar is a quotient of two
// polynomials over Q(zeta_m) kept coprime with a monic denominator, so equal
// values always have identical representations.

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "qcl/error.hpp"

namespace qcl {

/// Integer coefficients (low degree first) of the m-th cyclotomic polynomial.
const std::vector<long>& cyclotomic_polynomial(int m);

/// Euler phi, the degree of Q(zeta_m) over Q.
int euler_phi(int m);

/// An element of the cyclotomic field Q(zeta_m).
class Cyclotomic {
   public:
    explicit Cyclotomic(int conductor = 1);
    Cyclotomic(int conductor, const mpq_class& rational);

    /// zeta_m^power, normalized.
    static Cyclotomic root(int conductor, long power = 1);

    int conductor() const noexcept { return m_; }
    const std::vector<mpq_class>& coefficients() const noexcept { return c_; }

    bool is_zero() const;
    bool is_one() const;
    bool is_rational() const;
    /// Only meaningful when is_rational().
    const mpq_class& rational() const { return c_[0]; }

    /// Re-expressed in Q(zeta_M); requires m | M.
    Cyclotomic promoted(int conductor) const;
    /// Image under zeta -> zeta^{-1}.
    Cyclotomic conjugate() const;
    Cyclotomic inverse() const;

    Cyclotomic operator-() const;
    Cyclotomic& operator+=(const Cyclotomic& rhs);
    Cyclotomic& operator-=(const Cyclotomic& rhs);
    Cyclotomic& operator*=(const Cyclotomic& rhs);
    Cyclotomic& operator/=(const Cyclotomic& rhs);

    friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
    friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
    friend Cyclotomic operator*(Cyclotomic a, const Cyclotomic& b) { return a *= b; }
    friend Cyclotomic operator/(Cyclotomic a, const Cyclotomic& b) { return a /= b; }
    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b);

    /// Descending powers of the generator, printed as `z`.
    std::string to_string() const;

   private:
    Cyclotomic(int conductor, std::vector<mpq_class> coeffs);
    void reduce_from(std::vector<mpq_class> raw);
    static int common_conductor(int a, int b);
    void align(Cyclotomic& other);

    int m_;
    std::vector<mpq_class> c_;
};

/// Polynomial in x with Q(zeta_m) coefficients, low degree first, no trailing zeros.
using CycPoly = std::vector<Cyclotomic>;

/// An element of Q(zeta_m)(x) in canonical reduced form.
class Scalar {
   public:
    Scalar();
    Scalar(long value);  // NOLINT(google-explicit-constructor): integer literals are scalars
    explicit Scalar(const mpq_class& value);
    explicit Scalar(const Cyclotomic& value);

    /// The indeterminate x.
    static Scalar variable();
    static Scalar zeta(int conductor, long power = 1);

    int conductor() const noexcept { return m_; }
    const CycPoly& numerator() const noexcept { return num_; }
    const CycPoly& denominator() const noexcept { return den_; }

    bool is_zero() const noexcept { return num_.empty(); }
    bool is_one() const;
    bool is_constant() const { return den_.size() == 1 && num_.size() <= 1; }
    /// The value of a constant scalar.
    Cyclotomic constant_value() const;

    Scalar promoted(int conductor) const;
    Scalar inverse() const;
    Scalar pow(long exponent) const;
    /// The field automorphism x -> 1/x, zeta -> zeta^{-1}.
    Scalar invert_variable() const;
    /// Evaluate at x = value (which must keep the denominator nonzero).
    Scalar evaluate(const Scalar& value) const;
    /// Substitute x -> x^e for e > 0.
    Scalar substitute_power(int e) const;

    Scalar operator-() const;
    Scalar& operator+=(const Scalar& rhs);
    Scalar& operator-=(const Scalar& rhs);
    Scalar& operator*=(const Scalar& rhs);
    Scalar& operator/=(const Scalar& rhs);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    /// Canonical text: a Laurent polynomial when the denominator is a power of x,
    /// otherwise `(num)/(den)`; descending powers, the cyclotomic generator as `z`.
    std::string to_string(std::string_view var = "q") const;
    /// Size measure used for pivot selection.
    std::size_t complexity() const;

   private:
    void normalize();
    void align(Scalar& other);

    int m_ = 1;
    CycPoly num_;
    CycPoly den_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// [n]_b = (b^n - b^{-n}) / (b - b^{-1}).
Scalar q_integer(long n, const Scalar& base);
Scalar q_factorial(long n, const Scalar& base);
Scalar q_binomial(long n, long m, const Scalar& base);

}  // namespace qcl
