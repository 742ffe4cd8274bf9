#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "hdrflow/error.hpp"

namespace hdrflow {

/// Reduced fraction with positive denominator over arbitrary-precision integers.
class ExactRational
{
    public:
        using Integer = boost::multiprecision::cpp_int;

        ExactRational() = default;
        ExactRational(long long v) : value_(v) { } // NOLINT(google-explicit-constructor)
        ExactRational(const Integer &num, const Integer &den)
        {
            if (den == 0)
                raise(ErrorKind::DivisionByZero, "rational with zero denominator");
            value_ = den < 0 ? Rep(Integer(-num), Integer(-den)) : Rep(num, den);
        }

        Integer numerator() const { return boost::multiprecision::numerator(value_); }
        Integer denominator() const { return boost::multiprecision::denominator(value_); }

        ExactRational &operator+=(const ExactRational &o) { value_ += o.value_; return *this; }
        ExactRational &operator-=(const ExactRational &o) { value_ -= o.value_; return *this; }
        ExactRational &operator*=(const ExactRational &o) { value_ *= o.value_; return *this; }
        ExactRational &operator/=(const ExactRational &o)
        {
            if (o.value_ == 0)
                raise(ErrorKind::DivisionByZero, "rational division by zero");
            value_ /= o.value_;
            return *this;
        }
        ExactRational operator-() const { ExactRational r; r.value_ = -value_; return r; }

        friend ExactRational operator+(ExactRational a, const ExactRational &b) { return a += b; }
        friend ExactRational operator-(ExactRational a, const ExactRational &b) { return a -= b; }
        friend ExactRational operator*(ExactRational a, const ExactRational &b) { return a *= b; }
        friend ExactRational operator/(ExactRational a, const ExactRational &b) { return a /= b; }

        friend bool operator==(const ExactRational &a, const ExactRational &b) { return a.value_ == b.value_; }
        friend bool operator<(const ExactRational &a, const ExactRational &b) { return a.value_ < b.value_; }

        bool is_integer() const { return denominator() == 1; }

        /// Always "num/den", e.g. "5/12", "3/1", "-1/2".
        std::string to_string() const { return numerator().str() + "/" + denominator().str(); }

        /// Accepts "n", "n/d", with optional leading '-' on n.
        static ExactRational parse(std::string_view text)
        {
            auto valid_int = [](std::string_view s, bool allow_sign) {
                if (allow_sign && !s.empty() && (s.front() == '-' || s.front() == '+'))
                    s.remove_prefix(1);
                if (s.empty())
                    return false;
                for (char ch : s)
                    if (ch < '0' || ch > '9')
                        return false;
                return true;
            };
            const auto slash = text.find('/');
            std::string_view num = text.substr(0, slash);
            std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
            if (!valid_int(num, true) || !valid_int(den, false))
                raise(ErrorKind::ParseError, "bad rational '" + std::string(text) + "'");
            std::string n(num);
            if (n.front() == '+')
                n.erase(0, 1);
            return ExactRational(Integer(n), Integer(std::string(den)));
        }

    private:
        using Rep = boost::multiprecision::cpp_rational;
        Rep value_{0};
};

} // namespace hdrflow
