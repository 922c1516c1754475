#include "hitting/rational_function.hpp"

#include "hitting/errors.hpp"

namespace hitting {

RationalFunction::RationalFunction(Polynomial numerator)
    : num_(std::move(numerator)), den_(BigRational(1)) {}

RationalFunction::RationalFunction(Polynomial numerator, Polynomial denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
    if (den_.is_zero())
        throw ZeroDenominator("rational function with zero denominator");
    normalize();
}

void RationalFunction::normalize() {
    if (num_.is_zero()) {
        den_ = Polynomial(BigRational(1));
        return;
    }
    if (den_.degree() > 0 && num_.degree() > 0) {
        const Polynomial g = gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = exact_divide(num_, g);
            den_ = exact_divide(den_, g);
        }
    }
    const BigRational c0 = den_.coefficient(0);
    const BigRational scale = BigRational(1) / (c0.is_zero() ? den_.leading() : c0);
    if (scale != BigRational(1)) {
        num_ *= scale;
        den_ *= scale;
    }
}

BigRational RationalFunction::operator()(const BigRational &s) const {
    const BigRational d = den_(s);
    if (d.is_zero())
        throw PoleAtPoint("denominator vanishes at s = " + s.to_string());
    return num_(s) / d;
}

double RationalFunction::evaluate(double s) const {
    return num_.evaluate(s) / den_.evaluate(s);
}

RationalFunction RationalFunction::derivative(unsigned order) const {
    RationalFunction out = *this;
    for (unsigned k = 0; k < order; ++k) {
        if (out.is_zero())
            break;
        out = RationalFunction(out.num_.derivative() * out.den_ - out.num_ * out.den_.derivative(),
                               out.den_ * out.den_);
    }
    return out;
}

RationalFunction &RationalFunction::operator+=(const RationalFunction &rhs) {
    if (den_ == rhs.den_) {
        num_ += rhs.num_;
    } else {
        num_ = num_ * rhs.den_ + rhs.num_ * den_;
        den_ *= rhs.den_;
    }
    normalize();
    return *this;
}

RationalFunction &RationalFunction::operator-=(const RationalFunction &rhs) {
    if (den_ == rhs.den_) {
        num_ -= rhs.num_;
    } else {
        num_ = num_ * rhs.den_ - rhs.num_ * den_;
        den_ *= rhs.den_;
    }
    normalize();
    return *this;
}

RationalFunction &RationalFunction::operator*=(const RationalFunction &rhs) {
    num_ *= rhs.num_;
    den_ *= rhs.den_;
    normalize();
    return *this;
}

RationalFunction &RationalFunction::operator/=(const RationalFunction &rhs) {
    if (rhs.is_zero())
        throw ZeroDenominator("division by the zero rational function");
    num_ *= rhs.den_;
    den_ *= rhs.num_;
    normalize();
    return *this;
}

std::vector<BigRational> series_coefficients(const RationalFunction &f, std::size_t n_max) {
    const Polynomial &den = f.denominator();
    if (den.coefficient(0).is_zero())
        throw PoleAtZero("generating function has a pole at s = 0");
    // normalize() guarantees den_0 == 1 here.
    const auto &dc = den.coefficients();
    std::vector<BigRational> a(n_max + 1);
    for (std::size_t n = 0; n <= n_max; ++n) {
        mpq_class acc = f.numerator().coefficient(n).value();
        const std::size_t kmax = std::min(n, dc.size() - 1);
        for (std::size_t k = 1; k <= kmax; ++k)
            acc -= dc[k].value() * a[n - k].value();
        a[n] = BigRational(std::move(acc));
    }
    return a;
}

} // namespace hitting
