#include <rejsched/core/rational.hpp>

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace rejsched {

namespace {

bool valid_integer(std::string_view s, bool allow_sign) {
    if (s.empty()) {
        return false;
    }
    std::size_t i = 0;
    if (allow_sign && s[0] == '-') {
        i = 1;
    }
    if (i == s.size()) {
        return false;
    }
    for (; i < s.size(); ++i) {
        if (std::isdigit(static_cast<unsigned char>(s[i])) == 0) {
            return false;
        }
    }
    return true;
}

mpz_class to_mpz(std::string_view s) {
    return mpz_class(std::string(s), 10);
}

}  // namespace

static_assert(sizeof(long) == sizeof(std::int64_t), "LP64 platform expected");

Rational::Rational(std::int64_t value) : value_(static_cast<long>(value)) {}

Rational::Rational(std::int64_t num, std::int64_t den) {
    if (den == 0) {
        throw std::invalid_argument("Rational: zero denominator");
    }
    value_ = mpq_class(static_cast<long>(num), static_cast<long>(den));
    value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) {
    value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        if (!valid_integer(text, true)) {
            throw std::invalid_argument("Rational: malformed '" + std::string(text) + "'");
        }
        return Rational(mpq_class(to_mpz(text)));
    }
    const auto num = text.substr(0, slash);
    const auto den = text.substr(slash + 1);
    if (!valid_integer(num, true) || !valid_integer(den, false)) {
        throw std::invalid_argument("Rational: malformed '" + std::string(text) + "'");
    }
    mpz_class d = to_mpz(den);
    if (d == 0) {
        throw std::invalid_argument("Rational: zero denominator in '" + std::string(text) + "'");
    }
    return Rational(mpq_class(to_mpz(num), d));
}

std::string Rational::str() const {
    if (is_integer()) {
        return value_.get_num().get_str();
    }
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.sign() == 0) {
        throw std::domain_error("Rational: division by zero");
    }
    value_ /= o.value_;
    return *this;
}

std::int64_t Rational::ceil() const {
    mpz_class q;
    mpz_cdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
    if (!q.fits_slong_p()) {
        throw std::overflow_error("Rational::ceil out of range");
    }
    return q.get_si();
}

std::int64_t Rational::floor() const {
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), value_.get_num_mpz_t(), value_.get_den_mpz_t());
    if (!q.fits_slong_p()) {
        throw std::overflow_error("Rational::floor out of range");
    }
    return q.get_si();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
}

}  // namespace rejsched
