#include "qcl/scalar.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>

namespace qcl {

namespace {

using QPoly = std::vector<mpq_class>;

void trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact division of integer polynomials, both low degree first, divisor monic.
std::vector<long> divide_exact(std::vector<long> a, const std::vector<long>& b) {
    const std::size_t db = b.size() - 1;
    std::vector<long> quotient(a.size() - db, 0);
    for (std::size_t i = a.size(); i-- > db;) {
        const long t = a[i];
        quotient[i - db] = t;
        if (t == 0) continue;
        for (std::size_t j = 0; j <= db; ++j) a[i - db + j] -= t * b[j];
    }
    return quotient;
}

// a mod b over Q, b nonzero.
QPoly qpoly_mod(QPoly a, const QPoly& b, QPoly* quotient = nullptr) {
    trim(a);
    const std::size_t db = b.size() - 1;
    if (quotient) quotient->assign(a.size() > db ? a.size() - db : 0, 0);
    while (!a.empty() && a.size() - 1 >= db) {
        const std::size_t shift = a.size() - 1 - db;
        const mpq_class t = a.back() / b.back();
        if (quotient) (*quotient)[shift] = t;
        for (std::size_t j = 0; j <= db; ++j) a[shift + j] -= t * b[j];
        trim(a);
    }
    return a;
}

QPoly qpoly_mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

QPoly qpoly_sub(QPoly a, const QPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

}  // namespace

const std::vector<long>& cyclotomic_polynomial(int m) {
    if (m < 1) throw DomainError("cyclotomic conductor must be positive");
    static std::mutex mutex;
    static std::map<int, std::vector<long>> cache;
    std::lock_guard lock(mutex);
    if (auto it = cache.find(m); it != cache.end()) return it->second;
    std::vector<long> poly(m + 1, 0);  // x^m - 1
    poly[0] = -1;
    poly[m] = 1;
    for (int d = 1; d < m; ++d) {
        if (m % d != 0) continue;
        // Divisors are computed recursively without holding the lock twice.
        std::vector<long> phi_d;
        if (auto it = cache.find(d); it != cache.end()) {
            phi_d = it->second;
        } else {
            mutex.unlock();
            phi_d = cyclotomic_polynomial(d);
            mutex.lock();
        }
        poly = divide_exact(poly, phi_d);
    }
    return cache.emplace(m, std::move(poly)).first->second;
}

int euler_phi(int m) { return static_cast<int>(cyclotomic_polynomial(m).size()) - 1; }

// ---------------------------------------------------------------------------
// Cyclotomic

Cyclotomic::Cyclotomic(int conductor) : m_(conductor), c_(euler_phi(conductor), 0) {}

Cyclotomic::Cyclotomic(int conductor, const mpq_class& rational) : Cyclotomic(conductor) { c_[0] = rational; }

Cyclotomic::Cyclotomic(int conductor, std::vector<mpq_class> coeffs) : m_(conductor) { reduce_from(std::move(coeffs)); }

Cyclotomic Cyclotomic::root(int conductor, long power) {
    long e = power % conductor;
    if (e < 0) e += conductor;
    std::vector<mpq_class> raw(e + 1, 0);
    raw[e] = 1;
    return Cyclotomic(conductor, std::move(raw));
}

void Cyclotomic::reduce_from(std::vector<mpq_class> raw) {
    const auto& phi = cyclotomic_polynomial(m_);
    const std::size_t deg = phi.size() - 1;
    for (std::size_t i = raw.size(); i-- > deg;) {
        if (raw[i] == 0) continue;
        const mpq_class t = raw[i];
        for (std::size_t j = 0; j <= deg; ++j) {
            if (phi[j] != 0) raw[i - deg + j] -= t * phi[j];
        }
    }
    raw.resize(deg, 0);
    c_ = std::move(raw);
}

bool Cyclotomic::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const mpq_class& x) { return x == 0; });
}

bool Cyclotomic::is_rational() const {
    return std::all_of(c_.begin() + 1, c_.end(), [](const mpq_class& x) { return x == 0; });
}

bool Cyclotomic::is_one() const { return is_rational() && c_[0] == 1; }

int Cyclotomic::common_conductor(int a, int b) {
    if (a == b) return a;
    if (euler_phi(a) == 1 && euler_phi(b) == 1) return std::max(a, b);
    if (b % a == 0 || euler_phi(a) == 1) return b;
    if (a % b == 0 || euler_phi(b) == 1) return a;
    throw ContextMismatch("cyclotomic conductors " + std::to_string(a) + " and " + std::to_string(b) +
                          " have no common embedding");
}

Cyclotomic Cyclotomic::promoted(int conductor) const {
    if (conductor == m_) return *this;
    if (is_rational()) return Cyclotomic(conductor, c_[0]);
    if (conductor % m_ != 0) {
        throw ContextMismatch("cannot embed Q(zeta_" + std::to_string(m_) + ") into Q(zeta_" +
                              std::to_string(conductor) + ")");
    }
    const int step = conductor / m_;
    std::vector<mpq_class> raw((c_.size() - 1) * step + 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) raw[i * step] = c_[i];
    return Cyclotomic(conductor, std::move(raw));
}

void Cyclotomic::align(Cyclotomic& other) {
    if (m_ == other.m_) return;
    const int m = common_conductor(m_, other.m_);
    *this = promoted(m);
    other = other.promoted(m);
}

Cyclotomic Cyclotomic::conjugate() const {
    if (is_rational()) return *this;
    std::vector<mpq_class> raw(m_, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] != 0) raw[(m_ - static_cast<int>(i)) % m_] += c_[i];
    }
    return Cyclotomic(m_, std::move(raw));
}

Cyclotomic Cyclotomic::inverse() const {
    if (is_zero()) throw DivisionByZero();
    if (is_rational()) return Cyclotomic(m_, mpq_class(1) / c_[0]);
    // Extended Euclid: track s with s * a == r (mod Phi_m).
    const auto& phi_int = cyclotomic_polynomial(m_);
    QPoly phi(phi_int.begin(), phi_int.end());
    QPoly r0 = phi, r1 = c_;
    trim(r1);
    QPoly s0, s1{1};
    while (r1.size() > 1) {
        QPoly quotient;
        QPoly r2 = qpoly_mod(r0, r1, &quotient);
        QPoly s2 = qpoly_sub(s0, qpoly_mul(quotient, s1));
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    // r1 is a nonzero constant since Phi_m is irreducible.
    for (auto& x : s1) x /= r1[0];
    return Cyclotomic(m_, std::move(s1));
}

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& rhs) {
    if (m_ != rhs.m_) {
        Cyclotomic b = rhs;
        align(b);
        return *this += b;
    }
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += rhs.c_[i];
    return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& rhs) {
    if (m_ != rhs.m_) {
        Cyclotomic b = rhs;
        align(b);
        return *this -= b;
    }
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= rhs.c_[i];
    return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& rhs) {
    if (m_ != rhs.m_) {
        Cyclotomic b = rhs;
        align(b);
        return *this *= b;
    }
    if (c_.size() == 1) {
        c_[0] *= rhs.c_[0];
        return *this;
    }
    if (rhs.is_rational()) {
        for (auto& x : c_) x *= rhs.c_[0];
        return *this;
    }
    std::vector<mpq_class> raw(2 * c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < rhs.c_.size(); ++j) {
            if (rhs.c_[j] != 0) raw[i + j] += c_[i] * rhs.c_[j];
        }
    }
    reduce_from(std::move(raw));
    return *this;
}

Cyclotomic& Cyclotomic::operator/=(const Cyclotomic& rhs) { return *this *= rhs.inverse(); }

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
    if (a.m_ == b.m_) return a.c_ == b.c_;
    Cyclotomic x = a, y = b;
    x.align(y);
    return x.c_ == y.c_;
}

std::string Cyclotomic::to_string() const {
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
        const mpq_class& c = c_[i];
        if (c == 0) continue;
        const bool negative = c < 0;
        const mpq_class mag = abs(c);
        std::string term;
        if (i == 0) {
            term = mag.get_str();
        } else {
            if (mag != 1) term = mag.get_str() + "*";
            term += "z";
            if (i > 1) term += "^" + std::to_string(i);
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

// ---------------------------------------------------------------------------
// Polynomials over Q(zeta_m)

namespace {

void trim(CycPoly& p) {
    while (!p.empty() && p.back().is_zero()) p.pop_back();
}

CycPoly constant_poly(const Cyclotomic& c) {
    if (c.is_zero()) return {};
    return {c};
}

bool is_unit_poly(const CycPoly& p) { return p.size() == 1 && p[0].is_one(); }

std::size_t valuation(const CycPoly& p) {
    std::size_t v = 0;
    while (v < p.size() && p[v].is_zero()) ++v;
    return v;
}

bool is_monomial(const CycPoly& p) { return !p.empty() && valuation(p) == p.size() - 1; }

CycPoly shift_down(const CycPoly& p, std::size_t by) { return CycPoly(p.begin() + by, p.end()); }

CycPoly shift_up(const CycPoly& p, std::size_t by, int m) {
    if (p.empty()) return {};
    CycPoly r(by, Cyclotomic(m));
    r.insert(r.end(), p.begin(), p.end());
    return r;
}

CycPoly padd(const CycPoly& a, const CycPoly& b) {
    CycPoly r = a.size() >= b.size() ? a : b;
    const CycPoly& s = a.size() >= b.size() ? b : a;
    for (std::size_t i = 0; i < s.size(); ++i) r[i] += s[i];
    trim(r);
    return r;
}

CycPoly pneg(CycPoly a) {
    for (auto& c : a) c = -c;
    return a;
}

CycPoly pmul(const CycPoly& a, const CycPoly& b, int m) {
    if (a.empty() || b.empty()) return {};
    if (a.size() == 1 && a[0].is_one()) return b;
    if (b.size() == 1 && b[0].is_one()) return a;
    CycPoly r(a.size() + b.size() - 1, Cyclotomic(m));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (!b[j].is_zero()) r[i + j] += a[i] * b[j];
        }
    }
    trim(r);
    return r;
}

CycPoly pscale(CycPoly a, const Cyclotomic& c) {
    if (c.is_one()) return a;
    for (auto& x : a) x *= c;
    trim(a);
    return a;
}

// Division with remainder; b nonzero.
CycPoly pdivmod(CycPoly a, const CycPoly& b, CycPoly* quotient, int m) {
    const std::size_t db = b.size() - 1;
    const Cyclotomic lead_inv = b.back().inverse();
    if (quotient) quotient->assign(a.size() > db ? a.size() - db : 0, Cyclotomic(m));
    while (!a.empty() && a.size() - 1 >= db) {
        const std::size_t shift = a.size() - 1 - db;
        const Cyclotomic t = a.back() * lead_inv;
        if (quotient) (*quotient)[shift] = t;
        for (std::size_t j = 0; j <= db; ++j) a[shift + j] -= t * b[j];
        a.pop_back();
        trim(a);
    }
    return a;
}

CycPoly pmonic(CycPoly a) {
    if (a.empty() || a.back().is_one()) return a;
    return pscale(std::move(a), a.back().inverse());
}

CycPoly pgcd(CycPoly a, CycPoly b, int m) {
    if (a.empty()) return pmonic(std::move(b));
    if (b.empty()) return pmonic(std::move(a));
    if (a.size() == 1 || b.size() == 1) return {Cyclotomic(m, 1)};
    const std::size_t v = std::min(valuation(a), valuation(b));
    if (is_monomial(a) || is_monomial(b)) return shift_up({Cyclotomic(m, 1)}, v, m);
    while (!b.empty()) {
        CycPoly r = pdivmod(std::move(a), b, nullptr, m);
        a = std::move(b);
        b = pmonic(std::move(r));
    }
    return pmonic(std::move(a));
}

CycPoly pexact_div(const CycPoly& a, const CycPoly& b, int m) {
    if (is_unit_poly(b)) return a;
    if (is_monomial(b)) return pscale(shift_down(a, b.size() - 1), b.back().inverse());
    CycPoly q;
    pdivmod(a, b, &q, m);
    trim(q);
    return q;
}

CycPoly ppromote(const CycPoly& p, int m) {
    CycPoly r;
    r.reserve(p.size());
    for (const auto& c : p) r.push_back(c.promoted(m));
    return r;
}

std::string format_poly(const CycPoly& p, long offset, std::string_view var) {
    std::string out;
    for (std::size_t i = p.size(); i-- > 0;) {
        const Cyclotomic& c = p[i];
        if (c.is_zero()) continue;
        const long e = static_cast<long>(i) + offset;
        std::string power;
        if (e != 0) {
            power = std::string(var);
            if (e != 1) power += "^" + std::to_string(e);
        }
        bool negative = false;
        std::string term;
        if (c.is_rational()) {
            negative = c.rational() < 0;
            const mpq_class mag = abs(c.rational());
            if (power.empty()) {
                term = mag.get_str();
            } else {
                term = (mag == 1 ? "" : mag.get_str() + "*") + power;
            }
        } else {
            term = "(" + c.to_string() + ")";
            if (!power.empty()) term += "*" + power;
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

}  // namespace

// ---------------------------------------------------------------------------
// Scalar

Scalar::Scalar() : den_{Cyclotomic(1, 1)} {}

Scalar::Scalar(long value) : Scalar(mpq_class(value)) {}

Scalar::Scalar(const mpq_class& value) : num_(constant_poly(Cyclotomic(1, value))), den_{Cyclotomic(1, 1)} {}

Scalar::Scalar(const Cyclotomic& value) : m_(value.conductor()), num_(constant_poly(value)), den_{Cyclotomic(value.conductor(), 1)} {}

Scalar Scalar::variable() {
    Scalar s;
    s.num_ = {Cyclotomic(1), Cyclotomic(1, 1)};
    return s;
}

Scalar Scalar::zeta(int conductor, long power) { return Scalar(Cyclotomic::root(conductor, power)); }

bool Scalar::is_one() const { return is_unit_poly(num_) && is_unit_poly(den_); }

Cyclotomic Scalar::constant_value() const {
    if (!is_constant()) throw DomainError("scalar " + to_string() + " is not constant");
    return num_.empty() ? Cyclotomic(m_) : num_[0];
}

Scalar Scalar::promoted(int conductor) const {
    if (conductor == m_) return *this;
    Scalar r;
    r.m_ = conductor;
    r.num_ = ppromote(num_, conductor);
    r.den_ = ppromote(den_, conductor);
    return r;
}

void Scalar::align(Scalar& other) {
    if (m_ == other.m_) return;
    Cyclotomic a(m_), b(other.m_);
    a += b;  // throws when there is no common conductor
    const int m = a.conductor();
    *this = promoted(m);
    other = other.promoted(m);
}

void Scalar::normalize() {
    if (num_.empty()) {
        den_ = {Cyclotomic(m_, 1)};
        return;
    }
    if (den_.size() == 1) {
        if (!den_[0].is_one()) {
            num_ = pscale(std::move(num_), den_[0].inverse());
            den_ = {Cyclotomic(m_, 1)};
        }
        return;
    }
    if (is_monomial(den_)) {
        const std::size_t v = std::min(valuation(num_), den_.size() - 1);
        if (!den_.back().is_one()) num_ = pscale(std::move(num_), den_.back().inverse());
        num_ = shift_down(num_, v);
        den_ = shift_up({Cyclotomic(m_, 1)}, den_.size() - 1 - v, m_);
        return;
    }
    CycPoly g = pgcd(num_, den_, m_);
    if (!is_unit_poly(g)) {
        num_ = pexact_div(num_, g, m_);
        den_ = pexact_div(den_, g, m_);
    }
    if (!den_.back().is_one()) {
        const Cyclotomic inv = den_.back().inverse();
        num_ = pscale(std::move(num_), inv);
        den_ = pscale(std::move(den_), inv);
    }
    if (den_.size() == 1) return;
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    r.num_ = pneg(std::move(r.num_));
    return r;
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
    if (rhs.is_zero()) return *this;
    if (m_ != rhs.m_) {
        Scalar b = rhs;
        align(b);
        return *this += b;
    }
    if (is_zero()) return *this = rhs;
    if (den_.size() == rhs.den_.size() && den_ == rhs.den_) {
        num_ = padd(num_, rhs.num_);
        if (den_.size() > 1) normalize();
        if (num_.empty()) den_ = {Cyclotomic(m_, 1)};
        return *this;
    }
    if (is_monomial(den_) && is_monomial(rhs.den_)) {
        const std::size_t a = den_.size() - 1, b = rhs.den_.size() - 1, top = std::max(a, b);
        num_ = padd(shift_up(num_, top - a, m_), shift_up(rhs.num_, top - b, m_));
        den_ = shift_up({Cyclotomic(m_, 1)}, top, m_);
        normalize();
        return *this;
    }
    num_ = padd(pmul(num_, rhs.den_, m_), pmul(rhs.num_, den_, m_));
    den_ = pmul(den_, rhs.den_, m_);
    normalize();
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) { return *this += -rhs; }

Scalar& Scalar::operator*=(const Scalar& rhs) {
    if (m_ != rhs.m_) {
        Scalar b = rhs;
        align(b);
        return *this *= b;
    }
    if (is_zero() || rhs.is_one()) return *this;
    if (rhs.is_zero()) return *this = rhs;
    if (is_one()) return *this = rhs;
    if (den_.size() == 1 && rhs.den_.size() == 1) {
        num_ = pmul(num_, rhs.num_, m_);
        return *this;
    }
    if (is_monomial(den_) && is_monomial(rhs.den_)) {
        num_ = pmul(num_, rhs.num_, m_);
        den_ = shift_up({Cyclotomic(m_, 1)}, den_.size() + rhs.den_.size() - 2, m_);
        normalize();
        return *this;
    }
    // Cross-cancel before multiplying to keep degrees small.
    CycPoly g1 = pgcd(num_, rhs.den_, m_);
    CycPoly g2 = pgcd(rhs.num_, den_, m_);
    num_ = pmul(pexact_div(num_, g1, m_), pexact_div(rhs.num_, g2, m_), m_);
    den_ = pmul(pexact_div(den_, g2, m_), pexact_div(rhs.den_, g1, m_), m_);
    if (!den_.back().is_one()) {
        const Cyclotomic inv = den_.back().inverse();
        num_ = pscale(std::move(num_), inv);
        den_ = pscale(std::move(den_), inv);
    }
    return *this;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw DivisionByZero();
    Scalar r;
    r.m_ = m_;
    r.num_ = den_;
    r.den_ = num_;
    r.normalize();
    return r;
}

Scalar& Scalar::operator/=(const Scalar& rhs) { return *this *= rhs.inverse(); }

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.m_ == b.m_) return a.num_ == b.num_ && a.den_ == b.den_;
    Scalar x = a, y = b;
    x.align(y);
    return x.num_ == y.num_ && x.den_ == y.den_;
}

Scalar Scalar::pow(long exponent) const {
    if (exponent < 0) return inverse().pow(-exponent);
    Scalar result(1L), base = *this;
    while (exponent > 0) {
        if (exponent & 1) result *= base;
        exponent >>= 1;
        if (exponent > 0) base *= base;
    }
    return result;
}

Scalar Scalar::invert_variable() const {
    if (is_zero()) return *this;
    auto reversed = [](const CycPoly& p) {
        CycPoly r(p.rbegin(), p.rend());
        for (auto& c : r) c = c.conjugate();
        trim(r);
        return r;
    };
    const std::size_t dn = num_.size() - 1, dd = den_.size() - 1;
    Scalar r;
    r.m_ = m_;
    r.num_ = reversed(num_);
    r.den_ = reversed(den_);
    if (dn >= dd) {
        r.den_ = shift_up(r.den_, dn - dd, m_);
    } else {
        r.num_ = shift_up(r.num_, dd - dn, m_);
    }
    r.normalize();
    return r;
}

Scalar Scalar::evaluate(const Scalar& value) const {
    auto horner = [&](const CycPoly& p) {
        Scalar acc;
        for (std::size_t i = p.size(); i-- > 0;) {
            acc *= value;
            acc += Scalar(p[i]);
        }
        return acc;
    };
    const Scalar d = horner(den_);
    if (d.is_zero()) throw DomainError("evaluation point is a pole of " + to_string());
    return horner(num_) / d;
}

Scalar Scalar::substitute_power(int e) const {
    if (e <= 0) throw DomainError("substitute_power needs a positive exponent");
    auto spread = [&](const CycPoly& p) {
        if (p.empty()) return p;
        CycPoly r((p.size() - 1) * e + 1, Cyclotomic(m_));
        for (std::size_t i = 0; i < p.size(); ++i) r[i * e] = p[i];
        return r;
    };
    Scalar r;
    r.m_ = m_;
    r.num_ = spread(num_);
    r.den_ = spread(den_);
    return r;
}

std::string Scalar::to_string(std::string_view var) const {
    if (is_zero()) return "0";
    if (den_.size() == 1) return format_poly(num_, 0, var);
    if (is_monomial(den_)) return format_poly(num_, -static_cast<long>(den_.size() - 1), var);
    return "(" + format_poly(num_, 0, var) + ")/(" + format_poly(den_, 0, var) + ")";
}

std::size_t Scalar::complexity() const {
    std::size_t size = 0;
    for (const CycPoly* p : {&num_, &den_}) {
        for (const auto& c : *p) {
            for (const auto& x : c.coefficients()) {
                if (x != 0) size += 1 + mpz_sizeinbase(x.get_num_mpz_t(), 2) + mpz_sizeinbase(x.get_den_mpz_t(), 2);
            }
        }
    }
    return size;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

Scalar q_integer(long n, const Scalar& base) {
    const Scalar denom = base - base.inverse();
    if (denom.is_zero()) throw DomainError("degenerate q-integer base " + base.to_string());
    return (base.pow(n) - base.pow(-n)) / denom;
}

Scalar q_factorial(long n, const Scalar& base) {
    if (n < 0) throw DomainError("q-factorial of a negative integer");
    Scalar r(1L);
    for (long i = 1; i <= n; ++i) r *= q_integer(i, base);
    return r;
}

Scalar q_binomial(long n, long m, const Scalar& base) {
    if (m < 0 || m > n) throw DomainError("q-binomial needs 0 <= m <= n");
    return q_factorial(n, base) / (q_factorial(m, base) * q_factorial(n - m, base));
}

}  // namespace qcl
