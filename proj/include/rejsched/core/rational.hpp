#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace rejsched {

/// Exact rational number in lowest terms with a positive denominator.
///
/// Thin value wrapper over GMP's mpq_class. Every quantity the scheduler
/// and the analysis touch (densities, residual weights, alpha values, dual
/// variables, LP costs) is carried as a Rational so that all inequalities
/// are decided exactly.
class Rational {
public:
    Rational() = default;
    Rational(std::int64_t value);  // NOLINT(google-explicit-constructor)
    Rational(std::int64_t num, std::int64_t den);
    explicit Rational(mpq_class value);

    /// Parses "n" or "n/d" (optional leading '-'). Throws std::invalid_argument
    /// on malformed text or a zero denominator.
    static Rational parse(std::string_view text);

    /// "n" for integers, "n/d" otherwise.
    [[nodiscard]] std::string str() const;
    [[nodiscard]] double to_double() const { return value_.get_d(); }

    [[nodiscard]] int sign() const { return sgn(value_); }
    [[nodiscard]] bool is_integer() const { return value_.get_den() == 1; }
    [[nodiscard]] const mpz_class& numerator() const { return value_.get_num(); }
    [[nodiscard]] const mpz_class& denominator() const { return value_.get_den(); }
    [[nodiscard]] const mpq_class& raw() const { return value_; }

    /// Smallest integer >= value. Requires the result to fit in int64.
    [[nodiscard]] std::int64_t ceil() const;
    [[nodiscard]] std::int64_t floor() const;

    Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
    Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
    Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.value_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        const int c = cmp(a.value_, b.value_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

private:
    mpq_class value_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

[[nodiscard]] inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
[[nodiscard]] inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace rejsched
