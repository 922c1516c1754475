#include "hitting/polynomial.hpp"

#include "hitting/errors.hpp"

#include <algorithm>

namespace hitting {

namespace {

using IntPoly = std::vector<mpz_class>;

void trim(IntPoly &p) {
    while (!p.empty() && p.back() == 0)
        p.pop_back();
}

mpz_class content(const IntPoly &p) {
    mpz_class g = 0;
    for (const auto &c : p) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1)
            break;
    }
    return g;
}

void divide_all(IntPoly &p, const mpz_class &divisor) {
    for (auto &c : p)
        mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), divisor.get_mpz_t());
}

/// Scales a rational polynomial to a primitive integer polynomial.
IntPoly primitive_integer_part(const Polynomial &p) {
    mpz_class lcm = 1;
    for (const auto &c : p.coefficients())
        mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.value().get_den_mpz_t());
    IntPoly out;
    out.reserve(p.coefficients().size());
    for (const auto &c : p.coefficients())
        out.emplace_back(c.value().get_num() * (lcm / c.value().get_den()));
    if (const mpz_class g = content(out); g > 1)
        divide_all(out, g);
    return out;
}

/// lc(b)^(deg a - deg b + 1) * a mod b, over the integers.
IntPoly pseudo_remainder(IntPoly a, const IntPoly &b) {
    const std::size_t db = b.size() - 1;
    const mpz_class &lb = b.back();
    if (a.size() < b.size())
        return a;
    long extra = static_cast<long>(a.size() - b.size()) + 1;
    while (a.size() >= b.size()) {
        const mpz_class la = a.back();
        const std::size_t shift = a.size() - 1 - db;
        for (auto &c : a)
            c *= lb;
        for (std::size_t k = 0; k <= db; ++k)
            a[shift + k] -= la * b[k];
        --extra;
        a.pop_back();
        trim(a);
    }
    if (extra > 0) {
        mpz_class f;
        mpz_pow_ui(f.get_mpz_t(), lb.get_mpz_t(), static_cast<unsigned long>(extra));
        for (auto &c : a)
            c *= f;
    }
    return a;
}

mpz_class ipow(const mpz_class &base, long exponent) {
    mpz_class out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(exponent));
    return out;
}

IntPoly subresultant_gcd(IntPoly a, IntPoly b) {
    if (a.size() < b.size())
        std::swap(a, b);
    if (b.empty())
        return a;
    const mpz_class ca = content(a);
    const mpz_class cb = content(b);
    mpz_class d;
    mpz_gcd(d.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
    divide_all(a, ca);
    divide_all(b, cb);

    mpz_class g = 1;
    mpz_class h = 1;
    for (;;) {
        const long delta = static_cast<long>(a.size()) - static_cast<long>(b.size());
        IntPoly r = pseudo_remainder(a, b);
        if (r.empty())
            break;
        if (r.size() == 1) {
            b = IntPoly{1};
            break;
        }
        a = std::move(b);
        divide_all(r, g * ipow(h, delta));
        b = std::move(r);
        g = a.back();
        if (delta == 0) {
            // h unchanged: h^(1-0) * g^0
        } else {
            h = ipow(g, delta) / ipow(h, delta - 1);
        }
    }
    const mpz_class cb_final = content(b);
    divide_all(b, cb_final);
    for (auto &c : b)
        c *= d;
    return b;
}

} // namespace

Polynomial::Polynomial(BigRational constant) {
    if (!constant.is_zero())
        coeffs_.push_back(std::move(constant));
}

Polynomial::Polynomial(std::initializer_list<BigRational> coefficients) : coeffs_(coefficients) {
    trim();
}

Polynomial::Polynomial(std::vector<BigRational> coefficients) : coeffs_(std::move(coefficients)) {
    trim();
}

Polynomial Polynomial::monomial(const BigRational &c, unsigned power) {
    std::vector<BigRational> coeffs(power + 1);
    coeffs[power] = c;
    return Polynomial(std::move(coeffs));
}

void Polynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero())
        coeffs_.pop_back();
}

BigRational Polynomial::coefficient(std::size_t k) const {
    return k < coeffs_.size() ? coeffs_[k] : BigRational();
}

BigRational Polynomial::leading() const {
    return coeffs_.empty() ? BigRational() : coeffs_.back();
}

int Polynomial::valuation() const {
    for (std::size_t k = 0; k < coeffs_.size(); ++k)
        if (!coeffs_[k].is_zero())
            return static_cast<int>(k);
    return -1;
}

BigRational Polynomial::operator()(const BigRational &s) const {
    BigRational acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc *= s;
        acc += *it;
    }
    return acc;
}

double Polynomial::evaluate(double s) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * s + it->to_double();
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() <= 1)
        return {};
    std::vector<BigRational> out(coeffs_.size() - 1);
    for (std::size_t k = 1; k < coeffs_.size(); ++k)
        out[k - 1] = coeffs_[k] * BigRational(static_cast<long>(k));
    return Polynomial(std::move(out));
}

Polynomial &Polynomial::operator+=(const Polynomial &rhs) {
    if (rhs.coeffs_.size() > coeffs_.size())
        coeffs_.resize(rhs.coeffs_.size());
    for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k)
        coeffs_[k] += rhs.coeffs_[k];
    trim();
    return *this;
}

Polynomial &Polynomial::operator-=(const Polynomial &rhs) {
    if (rhs.coeffs_.size() > coeffs_.size())
        coeffs_.resize(rhs.coeffs_.size());
    for (std::size_t k = 0; k < rhs.coeffs_.size(); ++k)
        coeffs_[k] -= rhs.coeffs_[k];
    trim();
    return *this;
}

Polynomial &Polynomial::operator*=(const Polynomial &rhs) {
    if (is_zero() || rhs.is_zero()) {
        coeffs_.clear();
        return *this;
    }
    std::vector<mpq_class> out(coeffs_.size() + rhs.coeffs_.size() - 1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < rhs.coeffs_.size(); ++j)
            out[i + j] += coeffs_[i].value() * rhs.coeffs_[j].value();
    coeffs_.clear();
    coeffs_.reserve(out.size());
    for (auto &c : out)
        coeffs_.emplace_back(std::move(c));
    trim();
    return *this;
}

Polynomial &Polynomial::operator*=(const BigRational &rhs) {
    if (rhs.is_zero()) {
        coeffs_.clear();
        return *this;
    }
    for (auto &c : coeffs_)
        c *= rhs;
    return *this;
}

Polynomial Polynomial::operator-() const {
    Polynomial out = *this;
    for (auto &c : out.coeffs_)
        c = -c;
    return out;
}

std::vector<double> Polynomial::to_doubles() const {
    std::vector<double> out;
    out.reserve(coeffs_.size());
    for (const auto &c : coeffs_)
        out.push_back(c.to_double());
    return out;
}

std::vector<std::string> Polynomial::to_strings() const {
    std::vector<std::string> out;
    out.reserve(coeffs_.size());
    for (const auto &c : coeffs_)
        out.push_back(c.to_string());
    return out;
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial &dividend, const Polynomial &divisor) {
    if (divisor.is_zero())
        throw ZeroDenominator("polynomial division by zero");
    if (dividend.degree() < divisor.degree())
        return {Polynomial(), dividend};
    std::vector<BigRational> rem = dividend.coefficients();
    const auto &den = divisor.coefficients();
    const std::size_t dd = den.size() - 1;
    const BigRational lead_inv = BigRational(1) / den.back();
    std::vector<BigRational> quot(rem.size() - dd);
    for (std::size_t k = rem.size(); k-- > dd;) {
        if (rem[k].is_zero())
            continue;
        const BigRational factor = rem[k] * lead_inv;
        quot[k - dd] = factor;
        for (std::size_t j = 0; j <= dd; ++j)
            rem[k - dd + j] -= factor * den[j];
    }
    rem.resize(dd);
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial exact_divide(const Polynomial &dividend, const Polynomial &divisor) {
    auto [q, r] = divmod(dividend, divisor);
    if (!r.is_zero())
        throw MathError("exact_divide: nonzero remainder");
    return q;
}

Polynomial gcd(const Polynomial &a, const Polynomial &b) {
    if (a.is_zero() && b.is_zero())
        return {};
    if (a.is_zero() || b.is_zero()) {
        const Polynomial &p = a.is_zero() ? b : a;
        return p * (BigRational(1) / p.leading());
    }
    if (a.degree() == 0 || b.degree() == 0)
        return Polynomial(BigRational(1));
    IntPoly g = subresultant_gcd(primitive_integer_part(a), primitive_integer_part(b));
    std::vector<BigRational> coeffs;
    coeffs.reserve(g.size());
    const mpz_class lead = g.back();
    for (const auto &c : g)
        coeffs.emplace_back(c, lead);
    return Polynomial(std::move(coeffs));
}

Polynomial from_roots(const std::vector<BigRational> &roots) {
    Polynomial out(BigRational(1));
    for (const auto &r : roots)
        out *= Polynomial{-r, BigRational(1)};
    return out;
}

std::ostream &operator<<(std::ostream &os, const Polynomial &p) {
    os << '[';
    for (std::size_t k = 0; k < p.coefficients().size(); ++k)
        os << (k ? ", " : "") << p.coefficients()[k];
    return os << ']';
}

} // namespace hitting
