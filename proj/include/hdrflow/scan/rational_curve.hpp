#pragma once

// Elliptic curves over Q given by rational coefficients, their bad primes
// and their reductions modulo good primes.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "hdrflow/arith/ntheory.hpp"
#include "hdrflow/arith/rational.hpp"
#include "hdrflow/ec/curve.hpp"

namespace hdrflow {

inline constexpr std::uint64_t kScanPrimeLimit = 10'000'000;

namespace detail {

inline const std::vector<std::uint64_t> &small_primes_to_scan_limit()
{
    static const std::vector<std::uint64_t> primes = nt::primes_in_range(2, kScanPrimeLimit);
    return primes;
}

struct CappedFactorization
{
    std::vector<std::uint64_t> primes;   // distinct, ascending
    std::optional<BigInt> unresolved;    // cofactor free of primes <= kScanPrimeLimit
};

/// Distinct prime factors of n != 0: complete when |n| < 2^64, otherwise
/// complete up to kScanPrimeLimit with any remaining large cofactor kept whole.
inline CappedFactorization factor_capped(BigInt n)
{
    if (n < 0)
        n = -n;
    if (n == 0)
        raise(ErrorKind::InvalidCurve, "cannot factor zero");
    CappedFactorization out;
    auto add_u64 = [&](std::uint64_t v) {
        for (auto [q, e] : nt::factor(v))
            out.primes.push_back(q);
    };
    if (n <= std::numeric_limits<std::uint64_t>::max()) {
        add_u64(n.convert_to<std::uint64_t>());
    } else {
        for (std::uint64_t q : small_primes_to_scan_limit()) {
            if (boost::multiprecision::integer_modulus(n, q) != 0)
                continue;
            out.primes.push_back(q);
            do
                n /= q;
            while (boost::multiprecision::integer_modulus(n, q) == 0);
            if (n <= std::numeric_limits<std::uint64_t>::max())
                break;
        }
        if (n <= std::numeric_limits<std::uint64_t>::max()) {
            if (n > 1)
                add_u64(n.convert_to<std::uint64_t>());
        } else {
            out.unresolved = n;
        }
    }
    std::sort(out.primes.begin(), out.primes.end());
    out.primes.erase(std::unique(out.primes.begin(), out.primes.end()), out.primes.end());
    return out;
}

inline std::uint64_t mod_u64(const BigInt &n, std::uint64_t p)
{
    BigInt r = n % p;
    if (r < 0)
        r += p;
    return r.convert_to<std::uint64_t>();
}

} // namespace detail

struct BadReduction
{
    std::uint64_t p;
    std::string reason;
};

class RationalCurve
{
    public:
        enum class Form { Weierstrass, Legendre };

        static RationalCurve weierstrass(const ExactRational &a, const ExactRational &b)
        {
            RationalCurve c(Form::Weierstrass, a, b);
            const ExactRational disc = c.discriminant();
            if (disc == ExactRational(0))
                raise(ErrorKind::InvalidCurve, "singular curve over Q: 4A^3 + 27B^2 = 0");
            c.collect_bad({a.denominator(), b.denominator(), disc.numerator()});
            return c;
        }

        static RationalCurve legendre(const ExactRational &t)
        {
            if (t == ExactRational(0) || t == ExactRational(1))
                raise(ErrorKind::InvalidCurve, "Legendre parameter must avoid 0 and 1");
            RationalCurve c(Form::Legendre, t, ExactRational(0));
            c.collect_bad({t.denominator(), t.numerator(), (t - ExactRational(1)).numerator()});
            return c;
        }

        /// "legendre:n/d" or "weier:a_n/a_d,b_n/b_d" (denominators optional).
        static RationalCurve parse(std::string_view text)
        {
            if (text.starts_with("legendre:"))
                return legendre(ExactRational::parse(text.substr(9)));
            if (text.starts_with("weier:")) {
                auto body = text.substr(6);
                const auto comma = body.find(',');
                if (comma == std::string_view::npos)
                    raise(ErrorKind::ParseError, "weier literal needs 'weier:A,B'");
                return weierstrass(ExactRational::parse(body.substr(0, comma)), ExactRational::parse(body.substr(comma + 1)));
            }
            raise(ErrorKind::ParseError, "unknown curve literal '" + std::string(text) + "'");
        }

        Form form() const noexcept { return form_; }
        /// Weierstrass: A; Legendre: t.
        const ExactRational &first() const noexcept { return c1_; }
        /// Weierstrass: B; Legendre: unused.
        const ExactRational &second() const noexcept { return c2_; }

        /// 4A^3 + 27B^2, or 16 t^2 (t - 1)^2 for the Legendre form.
        ExactRational discriminant() const
        {
            if (form_ == Form::Legendre) {
                const ExactRational u = c1_ * (c1_ - ExactRational(1));
                return ExactRational(16) * u * u;
            }
            return ExactRational(4) * c1_ * c1_ * c1_ + ExactRational(27) * c2_ * c2_;
        }

        /// Bad primes known completely up to kScanPrimeLimit, ascending.
        const std::vector<std::uint64_t> &bad_primes() const noexcept { return bad_; }
        /// Product of bad primes beyond kScanPrimeLimit left unfactored, if any.
        const std::vector<BigInt> &unresolved_bad_part() const noexcept { return unresolved_; }

        bool is_bad(std::uint64_t p) const
        {
            if (std::binary_search(bad_.begin(), bad_.end(), p))
                return true;
            return std::any_of(unresolved_.begin(), unresolved_.end(), [p](const BigInt &n) { return n % p == 0; });
        }

        std::string to_string() const
        {
            if (form_ == Form::Legendre)
                return "legendre:" + c1_.to_string();
            return "weier:" + c1_.to_string() + "," + c2_.to_string();
        }

    private:
        RationalCurve(Form form, ExactRational c1, ExactRational c2) : form_{form}, c1_{std::move(c1)}, c2_{std::move(c2)} { }

        void collect_bad(std::initializer_list<BigInt> numbers)
        {
            for (const BigInt &n : numbers) {
                if (n == 0)
                    continue;
                auto f = detail::factor_capped(n);
                bad_.insert(bad_.end(), f.primes.begin(), f.primes.end());
                if (f.unresolved)
                    unresolved_.push_back(*f.unresolved);
            }
            std::sort(bad_.begin(), bad_.end());
            bad_.erase(std::unique(bad_.begin(), bad_.end()), bad_.end());
        }

        Form form_;
        ExactRational c1_, c2_;
        std::vector<std::uint64_t> bad_;
        std::vector<BigInt> unresolved_;
};

/// Reduction modulo a prime p >= 5: the curve over F_p, or the reason it is bad.
inline std::variant<Curve, BadReduction> reduce_mod_p(const RationalCurve &curve, std::uint64_t p)
{
    if (p < 5)
        raise(ErrorKind::SmallCharacteristic, "reduction needs p >= 5, got " + std::to_string(p));
    const Field F = make_field(p, 1);
    auto reduce = [&](const ExactRational &r) -> std::optional<FqElement> {
        const std::uint64_t d = detail::mod_u64(r.denominator(), p);
        if (d == 0)
            return std::nullopt;
        return FqElement::from_int(*F, static_cast<std::int64_t>(detail::mod_u64(r.numerator(), p))) /
               FqElement::from_int(*F, static_cast<std::int64_t>(d));
    };
    if (curve.form() == RationalCurve::Form::Legendre) {
        auto t = reduce(curve.first());
        if (!t)
            return BadReduction{p, "parameter not p-integral"};
        if (t->is_zero() || t->is_one())
            return BadReduction{p, "parameter reduces to 0 or 1"};
        return Curve::legendre(*t);
    }
    auto a = reduce(curve.first()), b = reduce(curve.second());
    if (!a || !b)
        return BadReduction{p, "coefficient not p-integral"};
    const FqElement disc = FqElement::from_int(*F, 4) * *a * *a * *a + FqElement::from_int(*F, 27) * *b * *b;
    if (disc.is_zero())
        return BadReduction{p, "discriminant vanishes mod p"};
    return Curve::weierstrass(*a, *b);
}

} // namespace hdrflow
