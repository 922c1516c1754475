#include "hitting/rational.hpp"

#include "hitting/errors.hpp"

#include <cctype>
#include <cstdlib>
#include <limits>

namespace hitting {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty())
        return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c)))
            return false;
    return true;
}

mpz_class parse_integer(std::string_view digits) {
    return mpz_class(std::string(digits), 10);
}

mpz_class pow10(unsigned long exponent) {
    mpz_class out;
    mpz_ui_pow_ui(out.get_mpz_t(), 10, exponent);
    return out;
}

} // namespace

BigRational::BigRational(long numerator, long denominator)
    : BigRational(mpz_class(numerator), mpz_class(denominator)) {}

BigRational::BigRational(mpq_class value) : q_(std::move(value)) {
    if (q_.get_den() == 0)
        throw ZeroDenominator("rational with zero denominator");
    q_.canonicalize();
}

BigRational::BigRational(const mpz_class &numerator, const mpz_class &denominator) {
    if (denominator == 0)
        throw ZeroDenominator("rational with zero denominator");
    q_.get_num() = numerator;
    q_.get_den() = denominator;
    q_.canonicalize();
}

BigRational BigRational::parse(std::string_view text) {
    const std::string original(text);
    auto fail = [&]() -> BigRational {
        throw SyntaxError("not a rational number: \"" + original + "\"");
    };
    if (text.empty())
        return fail();

    bool negative = false;
    std::string_view body = text;
    if (body.front() == '+' || body.front() == '-') {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }

    if (const auto slash = body.find('/'); slash != std::string_view::npos) {
        const auto num = body.substr(0, slash);
        const auto den = body.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den))
            return fail();
        const mpz_class d = parse_integer(den);
        if (d == 0)
            return fail();
        mpz_class n = parse_integer(num);
        if (negative)
            n = -n;
        return BigRational(n, d);
    }

    long exponent = 0;
    if (const auto e = body.find_first_of("eE"); e != std::string_view::npos) {
        std::string_view exp_part = body.substr(e + 1);
        body = body.substr(0, e);
        bool exp_negative = false;
        if (!exp_part.empty() && (exp_part.front() == '+' || exp_part.front() == '-')) {
            exp_negative = exp_part.front() == '-';
            exp_part.remove_prefix(1);
        }
        if (!all_digits(exp_part) || exp_part.size() > 6)
            return fail();
        exponent = std::strtol(std::string(exp_part).c_str(), nullptr, 10);
        if (exp_negative)
            exponent = -exponent;
    }

    std::string_view int_part = body;
    std::string_view frac_part;
    if (const auto dot = body.find('.'); dot != std::string_view::npos) {
        int_part = body.substr(0, dot);
        frac_part = body.substr(dot + 1);
        if (!frac_part.empty() && !all_digits(frac_part))
            return fail();
    }
    if (!int_part.empty() && !all_digits(int_part))
        return fail();
    if (int_part.empty() && frac_part.empty())
        return fail();

    mpz_class mantissa =
        parse_integer(std::string(int_part.empty() ? "0" : int_part) + std::string(frac_part));
    if (negative)
        mantissa = -mantissa;
    exponent -= static_cast<long>(frac_part.size());
    if (exponent >= 0)
        return BigRational(mantissa * pow10(static_cast<unsigned long>(exponent)), mpz_class(1));
    return BigRational(mantissa, pow10(static_cast<unsigned long>(-exponent)));
}

std::string BigRational::to_string() const {
    if (is_integer())
        return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

double BigRational::to_double() const {
    const mpz_class &num = q_.get_num();
    const mpz_class &den = q_.get_den();
    constexpr unsigned exact_bits = std::numeric_limits<double>::digits;
    if (mpz_sizeinbase(num.get_mpz_t(), 2) <= exact_bits &&
        mpz_sizeinbase(den.get_mpz_t(), 2) <= exact_bits)
        return num.get_d() / den.get_d();

    // 40 significant decimal digits, then a correctly rounded strtod.
    if (num == 0)
        return 0.0;
    const mpz_class mag = abs(num);
    const long num_digits = static_cast<long>(mpz_sizeinbase(mag.get_mpz_t(), 10));
    const long den_digits = static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 10));
    const long shift = 42 - (num_digits - den_digits);
    mpz_class scaled;
    if (shift >= 0)
        scaled = mag * pow10(static_cast<unsigned long>(shift)) / den;
    else
        scaled = mag / (den * pow10(static_cast<unsigned long>(-shift)));
    std::string digits = scaled.get_str();
    if (sgn(num) < 0)
        digits.insert(digits.begin(), '-');
    digits += "e" + std::to_string(-shift);
    return std::strtod(digits.c_str(), nullptr);
}

BigRational &BigRational::operator+=(const BigRational &rhs) {
    q_ += rhs.q_;
    return *this;
}

BigRational &BigRational::operator-=(const BigRational &rhs) {
    q_ -= rhs.q_;
    return *this;
}

BigRational &BigRational::operator*=(const BigRational &rhs) {
    q_ *= rhs.q_;
    return *this;
}

BigRational &BigRational::operator/=(const BigRational &rhs) {
    if (rhs.is_zero())
        throw ZeroDenominator("division by zero");
    q_ /= rhs.q_;
    return *this;
}

BigRational BigRational::operator-() const {
    return BigRational(mpq_class(-q_));
}

BigRational abs(const BigRational &x) {
    return x.sign() < 0 ? -x : x;
}

BigRational pow(const BigRational &base, unsigned exponent) {
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), base.value().get_num_mpz_t(), exponent);
    mpz_pow_ui(den.get_mpz_t(), base.value().get_den_mpz_t(), exponent);
    return BigRational(num, den);
}

std::ostream &operator<<(std::ostream &os, const BigRational &x) {
    return os << x.to_string();
}

} // namespace hitting
