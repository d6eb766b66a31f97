#pragma once

#include <compare>
#include <map>
#include <string>
#include <string_view>

namespace sgo {

/// A finite sum of terms c * G^p with integer grades p, where G is an
/// infinite unit: positive grades are infinite, grade 0 is the ordinary
/// finite part and negative grades are infinitesimal.
///
/// Terms are kept in canonical form (unique grades, no zero coefficients).
/// When an addition cancels a coefficient to below 1e-15 of the magnitudes
/// that produced it, the term is dropped and `cancelled()` is set on the
/// result; the flag propagates through later operations. Exact zeros are
/// dropped silently.
class ExtendedNumeral {
public:
    static constexpr double kCancellationThreshold = 1e-15;

    ExtendedNumeral() = default;
    ExtendedNumeral(double finite);  // NOLINT: finite reals embed as grade 0

    /// c * G^grade.
    static ExtendedNumeral term(double coefficient, int grade);
    /// The infinite unit itself.
    static ExtendedNumeral grossone() { return term(1.0, 1); }

    friend ExtendedNumeral operator+(const ExtendedNumeral& x, const ExtendedNumeral& y);
    friend ExtendedNumeral operator-(const ExtendedNumeral& x, const ExtendedNumeral& y);
    friend ExtendedNumeral operator*(const ExtendedNumeral& x, const ExtendedNumeral& y);
    ExtendedNumeral operator-() const;

    ExtendedNumeral& operator+=(const ExtendedNumeral& y) { return *this = *this + y; }
    ExtendedNumeral& operator-=(const ExtendedNumeral& y) { return *this = *this - y; }
    ExtendedNumeral& operator*=(const ExtendedNumeral& y) { return *this = *this * y; }

    /// Division by a single nonzero term; throws UnsupportedOperation for any
    /// other divisor.
    [[nodiscard]] ExtendedNumeral div_monomial(const ExtendedNumeral& divisor) const;
    friend ExtendedNumeral operator/(const ExtendedNumeral& x, const ExtendedNumeral& m) {
        return x.div_monomial(m);
    }

    /// Total order: the sign of x - y is the sign of its highest-grade
    /// coefficient. The cancellation flag is ignored.
    friend std::weak_ordering operator<=>(const ExtendedNumeral& x, const ExtendedNumeral& y);
    friend bool operator==(const ExtendedNumeral& x, const ExtendedNumeral& y) {
        return x.terms_ == y.terms_;
    }

    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] bool is_monomial() const { return terms_.size() == 1; }
    /// Only a grade-0 term (or zero).
    [[nodiscard]] bool is_real() const;
    [[nodiscard]] int leading_grade() const;
    [[nodiscard]] double leading_coefficient() const;
    [[nodiscard]] double coefficient(int grade) const;
    /// Coefficient of grade 0.
    [[nodiscard]] double real_part() const { return coefficient(0); }
    /// Largest |c_p| over grades p != 0.
    [[nodiscard]] double non_real_magnitude() const;
    [[nodiscard]] bool cancelled() const { return cancelled_; }
    [[nodiscard]] const std::map<int, double>& terms() const { return terms_; }

    /// Canonical text such as "3*G^2 + 1.5 - 2*G^-1"; "0" for zero.
    [[nodiscard]] std::string to_string() const;
    /// Accepts sums of terms "c", "c*G", "c*G^p", "G^p", "-G" with optional
    /// spaces. Throws ParseError on malformed input.
    static ExtendedNumeral parse(std::string_view text);

private:
    std::map<int, double> terms_;
    bool cancelled_ = false;
};

}  // namespace sgo
