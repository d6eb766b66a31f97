#include "sgo/extended_numeral.hpp"

#include "sgo/errors.hpp"
#include "sgo/trace_io.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>

namespace sgo {

ExtendedNumeral::ExtendedNumeral(double finite) {
    if (!std::isfinite(finite)) throw InvalidArgument("numeral coefficients must be finite");
    if (finite != 0.0) terms_.emplace(0, finite);
}

ExtendedNumeral ExtendedNumeral::term(double coefficient, int grade) {
    if (!std::isfinite(coefficient)) throw InvalidArgument("numeral coefficients must be finite");
    ExtendedNumeral x;
    if (coefficient != 0.0) x.terms_.emplace(grade, coefficient);
    return x;
}

namespace {

// Adds `value` to grade `grade`, tracking the magnitude that contributed to it.
struct Accumulator {
    std::map<int, std::pair<double, double>> sums;  // grade -> (sum, sum of |terms|)

    void add(int grade, double value) {
        auto& [sum, mass] = sums[grade];
        sum += value;
        mass += std::abs(value);
    }
};

void collect(const Accumulator& acc, bool inherited_flag, std::map<int, double>& out, bool& flag) {
    flag = inherited_flag;
    for (const auto& [grade, sm] : acc.sums) {
        const auto [sum, mass] = sm;
        if (sum == 0.0) continue;
        if (std::abs(sum) < ExtendedNumeral::kCancellationThreshold * mass) {
            flag = true;
            continue;
        }
        out.emplace(grade, sum);
    }
}

}  // namespace

ExtendedNumeral operator+(const ExtendedNumeral& x, const ExtendedNumeral& y) {
    Accumulator acc;
    for (const auto& [p, c] : x.terms_) acc.add(p, c);
    for (const auto& [p, c] : y.terms_) acc.add(p, c);
    ExtendedNumeral r;
    collect(acc, x.cancelled_ || y.cancelled_, r.terms_, r.cancelled_);
    return r;
}

ExtendedNumeral ExtendedNumeral::operator-() const {
    ExtendedNumeral r = *this;
    for (auto& [p, c] : r.terms_) c = -c;
    return r;
}

ExtendedNumeral operator-(const ExtendedNumeral& x, const ExtendedNumeral& y) { return x + (-y); }

ExtendedNumeral operator*(const ExtendedNumeral& x, const ExtendedNumeral& y) {
    Accumulator acc;
    for (const auto& [p, c] : x.terms_) {
        for (const auto& [q, d] : y.terms_) acc.add(p + q, c * d);
    }
    ExtendedNumeral r;
    collect(acc, x.cancelled_ || y.cancelled_, r.terms_, r.cancelled_);
    return r;
}

ExtendedNumeral ExtendedNumeral::div_monomial(const ExtendedNumeral& divisor) const {
    if (!divisor.is_monomial()) {
        throw UnsupportedOperation("division is only supported by a single nonzero term, not by '" +
                                   divisor.to_string() + "'");
    }
    const auto [q, d] = *divisor.terms_.begin();
    ExtendedNumeral r;
    r.cancelled_ = cancelled_ || divisor.cancelled_;
    for (const auto& [p, c] : terms_) {
        const double v = c / d;
        if (v != 0.0) r.terms_.emplace(p - q, v);
    }
    return r;
}

std::weak_ordering operator<=>(const ExtendedNumeral& x, const ExtendedNumeral& y) {
    // Compare grade by grade from the top; the first differing coefficient
    // decides. Equivalent to the sign of the leading term of x - y, without
    // cancellation dropping a small but genuine difference.
    auto ix = x.terms_.rbegin();
    auto iy = y.terms_.rbegin();
    while (ix != x.terms_.rend() || iy != y.terms_.rend()) {
        const int gx = ix != x.terms_.rend() ? ix->first : std::numeric_limits<int>::min();
        const int gy = iy != y.terms_.rend() ? iy->first : std::numeric_limits<int>::min();
        const int g = std::max(gx, gy);
        const double cx = gx == g ? ix->second : 0.0;
        const double cy = gy == g ? iy->second : 0.0;
        if (cx < cy) return std::weak_ordering::less;
        if (cx > cy) return std::weak_ordering::greater;
        if (gx == g) ++ix;
        if (gy == g) ++iy;
    }
    return std::weak_ordering::equivalent;
}

bool ExtendedNumeral::is_real() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
}

int ExtendedNumeral::leading_grade() const {
    if (terms_.empty()) throw InvalidArgument("zero has no leading grade");
    return terms_.rbegin()->first;
}

double ExtendedNumeral::leading_coefficient() const {
    return terms_.empty() ? 0.0 : terms_.rbegin()->second;
}

double ExtendedNumeral::coefficient(int grade) const {
    const auto it = terms_.find(grade);
    return it == terms_.end() ? 0.0 : it->second;
}

double ExtendedNumeral::non_real_magnitude() const {
    double m = 0.0;
    for (const auto& [p, c] : terms_) {
        if (p != 0) m = std::max(m, std::abs(c));
    }
    return m;
}

std::string ExtendedNumeral::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto [p, c] = *it;
        const double mag = std::abs(c);
        if (first) {
            if (c < 0) out += "-";
        } else {
            out += c < 0 ? " - " : " + ";
        }
        first = false;
        if (p == 0) {
            out += format_double(mag);
            continue;
        }
        if (mag != 1.0) out += format_double(mag) + "*";
        out += "G";
        if (p != 1) out += "^" + std::to_string(p);
    }
    return out;
}

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : s_(text) {}

    ExtendedNumeral parse() {
        ExtendedNumeral total;
        skip();
        if (pos_ == s_.size()) fail("empty numeral");
        bool first = true;
        while (pos_ < s_.size()) {
            double sign = 1.0;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1.0 : 1.0;
                ++pos_;
                skip();
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            first = false;
            total += term(sign);
            skip();
        }
        return total;
    }

private:
    ExtendedNumeral term(double sign) {
        double coef = 1.0;
        bool has_number = false;
        if (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.')) {
            coef = number();
            has_number = true;
            skip();
            if (pos_ < s_.size() && peek() == '*') {
                ++pos_;
                skip();
            } else {
                return ExtendedNumeral::term(sign * coef, 0);
            }
        }
        if (pos_ >= s_.size() || peek() != 'G') fail(has_number ? "expected 'G' after '*'" : "expected a term");
        ++pos_;
        skip();
        int grade = 1;
        if (pos_ < s_.size() && peek() == '^') {
            ++pos_;
            skip();
            grade = integer();
        }
        return ExtendedNumeral::term(sign * coef, grade);
    }

    double number() {
        double v = 0.0;
        const auto res = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
        if (res.ec != std::errc{}) fail("malformed number");
        pos_ = static_cast<std::size_t>(res.ptr - s_.data());
        return v;
    }

    int integer() {
        int v = 0;
        const char* begin = s_.data() + pos_;
        if (pos_ < s_.size() && peek() == '+') ++begin;
        const auto res = std::from_chars(begin, s_.data() + s_.size(), v);
        if (res.ec != std::errc{}) fail("malformed grade");
        pos_ = static_cast<std::size_t>(res.ptr - s_.data());
        return v;
    }

    char peek() const { return s_[pos_]; }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("cannot parse numeral '" + std::string(s_) + "' at position " + std::to_string(pos_) +
                         ": " + what);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

ExtendedNumeral ExtendedNumeral::parse(std::string_view text) { return Parser(text).parse(); }

}  // namespace sgo
