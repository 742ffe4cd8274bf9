#pragma once

// Finite fields F_q, q = p^f, in a polynomial basis over the canonical modulus.
//
// Descriptors are interned: while a descriptor for (p, f) is alive, make_field
// hands out the same object, so field identity is pointer identity. Elements
// borrow their descriptor; keep the Field handle alive for as long as any
// element of it is in use.

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hdrflow/arith/ntheory.hpp"
#include "hdrflow/error.hpp"

namespace hdrflow {

using BigInt = boost::multiprecision::cpp_int;

inline constexpr int kMaxExtensionDegree = 12;
inline constexpr std::uint64_t kCharacteristicBound = 1ULL << 31;
inline constexpr std::uint64_t kSquareTableLimit = 1ULL << 20;

class FieldDescriptor;
using Field = std::shared_ptr<const FieldDescriptor>;

Field make_field(std::uint64_t p, int f);

namespace detail {

// Dense polynomials over F_p, coefficients low degree first. Only used to pick
// and certify the canonical modulus, before any FieldDescriptor exists.
using PrimePoly = std::vector<std::uint64_t>;

inline void trim(PrimePoly &a)
{
    while (!a.empty() && a.back() == 0)
        a.pop_back();
}

inline PrimePoly prime_poly_mod(PrimePoly a, const PrimePoly &m, std::uint64_t p)
{
    trim(a);
    const std::size_t dm = m.size() - 1;
    const std::uint64_t lead_inv = nt::powmod(m.back(), p - 2, p);
    while (a.size() > dm) {
        std::uint64_t coef = nt::mulmod(a.back(), lead_inv, p);
        std::size_t shift = a.size() - 1 - dm;
        for (std::size_t i = 0; i <= dm; ++i)
            a[shift + i] = (a[shift + i] + p - nt::mulmod(coef, m[i], p)) % p;
        trim(a);
    }
    return a;
}

inline PrimePoly prime_poly_mulmod(const PrimePoly &a, const PrimePoly &b, const PrimePoly &m, std::uint64_t p)
{
    if (a.empty() || b.empty())
        return {};
    PrimePoly t(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            t[i + j] = (t[i + j] + nt::mulmod(a[i], b[j], p)) % p;
    return prime_poly_mod(std::move(t), m, p);
}

inline PrimePoly prime_poly_gcd(PrimePoly a, PrimePoly b, std::uint64_t p)
{
    trim(a);
    trim(b);
    while (!b.empty()) {
        PrimePoly r = prime_poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

/// Ben-Or: a degree-f polynomial is irreducible iff it shares no factor with
/// x^{p^k} - x for 1 <= k <= f/2.
inline bool prime_poly_irreducible(const PrimePoly &m, std::uint64_t p)
{
    const std::size_t f = m.size() - 1;
    if (f == 1)
        return true;
    if (m[0] == 0)
        return false;
    PrimePoly h{0, 1};
    for (std::size_t k = 1; k <= f / 2; ++k) {
        PrimePoly base = h, acc{1};
        for (std::uint64_t e = p; e; e >>= 1) {
            if (e & 1)
                acc = prime_poly_mulmod(acc, base, m, p);
            base = prime_poly_mulmod(base, base, m, p);
        }
        h = acc;
        PrimePoly diff = h;
        if (diff.size() < 2)
            diff.resize(2, 0);
        diff[1] = (diff[1] + p - 1) % p;
        trim(diff);
        if (diff.empty())
            return false;
        if (prime_poly_gcd(m, diff, p).size() > 1)
            return false;
    }
    return true;
}

/// Lexicographically smallest monic irreducible of degree f, comparing
/// coefficients from the constant term upward.
inline PrimePoly canonical_modulus(std::uint64_t p, int f)
{
    if (f == 1)
        return {0, 1};
    PrimePoly m(f + 1, 0);
    m[f] = 1;
    m[0] = 1; // x divides every candidate with zero constant term
    while (true) {
        if (prime_poly_irreducible(m, p))
            return m;
        // the constant term is the most significant digit
        int i = f - 1;
        while (i >= 0 && ++m[i] == p)
            m[i--] = 0;
        if (i < 0)
            raise(ErrorKind::ValidationFailed, "no irreducible polynomial found");
    }
}

} // namespace detail

class FieldDescriptor : public std::enable_shared_from_this<FieldDescriptor>
{
    public:
        FieldDescriptor(const FieldDescriptor &) = delete;
        FieldDescriptor &operator=(const FieldDescriptor &) = delete;

        std::uint32_t characteristic() const noexcept { return p_; }
        int degree() const noexcept { return f_; }
        bool is_prime_field() const noexcept { return f_ == 1; }

        /// Monic modulus, f + 1 coefficients, constant term first.
        std::span<const std::uint32_t> modulus() const noexcept { return {modulus_.data(), std::size_t(f_) + 1}; }

        const BigInt &order() const noexcept { return q_; }
        /// q when it fits comfortably in 62 bits.
        std::optional<std::uint64_t> order_u64() const noexcept { return q_small_; }

        /// Quadratic-residue flags indexed by element index; only for q <= 2^20.
        const std::vector<std::uint8_t> &square_table() const;

        std::string describe() const
        {
            std::string s = "F_" + std::to_string(p_);
            if (f_ > 1)
                s += "^" + std::to_string(f_);
            return s;
        }

    private:
        friend Field make_field(std::uint64_t, int);
        friend class FqElement;

        FieldDescriptor(std::uint32_t p, int f, const detail::PrimePoly &modulus) : p_{p}, f_{f}
        {
            for (int i = 0; i <= f; ++i)
                modulus_[i] = static_cast<std::uint32_t>(modulus[i]);
            q_ = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(f));
            if (q_ < (BigInt(1) << 62))
                q_small_ = q_.convert_to<std::uint64_t>();
            q_minus_2_ = q_ - 2;
            half_q_minus_1_ = (q_ - 1) / 2;
        }

        std::uint32_t p_;
        int f_;
        std::array<std::uint32_t, kMaxExtensionDegree + 1> modulus_{};
        BigInt q_, q_minus_2_, half_q_minus_1_;
        std::optional<std::uint64_t> q_small_;

        mutable std::once_flag squares_once_;
        mutable std::vector<std::uint8_t> squares_;
};

/// Element of F_q: f coefficients in [0, p) over the basis 1, u, ..., u^{f-1}.
class FqElement
{
    public:
        using Coeffs = std::array<std::uint32_t, kMaxExtensionDegree>;

        explicit FqElement(const FieldDescriptor &field) noexcept : field_{&field}, c_{} { }

        static FqElement from_int(const FieldDescriptor &field, std::int64_t v) noexcept
        {
            FqElement r(field);
            std::int64_t m = v % static_cast<std::int64_t>(field.p_);
            r.c_[0] = static_cast<std::uint32_t>(m < 0 ? m + field.p_ : m);
            return r;
        }

        static FqElement from_big(const FieldDescriptor &field, const BigInt &v)
        {
            BigInt m = v % field.p_;
            if (m < 0)
                m += field.p_;
            return from_int(field, m.convert_to<std::int64_t>());
        }

        static FqElement from_coeffs(const FieldDescriptor &field, std::span<const std::int64_t> coeffs)
        {
            if (coeffs.size() > static_cast<std::size_t>(field.f_))
                raise(ErrorKind::UnsupportedRange, "too many coefficients for " + field.describe());
            FqElement r(field);
            const auto p = static_cast<std::int64_t>(field.p_);
            for (std::size_t i = 0; i < coeffs.size(); ++i) {
                std::int64_t m = coeffs[i] % p;
                r.c_[i] = static_cast<std::uint32_t>(m < 0 ? m + p : m);
            }
            return r;
        }

        /// Inverse of index(): base-p digits, constant coefficient least significant.
        static FqElement from_index(const FieldDescriptor &field, std::uint64_t idx) noexcept
        {
            FqElement r(field);
            for (int i = 0; i < field.f_; ++i) {
                r.c_[i] = static_cast<std::uint32_t>(idx % field.p_);
                idx /= field.p_;
            }
            return r;
        }

        /// The class u of x modulo the canonical modulus (0 in a prime field).
        static FqElement generator(const FieldDescriptor &field) noexcept
        {
            FqElement r(field);
            if (field.f_ > 1)
                r.c_[1] = 1;
            return r;
        }

        template <class Rng>
        static FqElement random(const FieldDescriptor &field, Rng &rng)
        {
            FqElement r(field);
            for (int i = 0; i < field.f_; ++i)
                r.c_[i] = static_cast<std::uint32_t>(rng() % field.p_);
            return r;
        }

        const FieldDescriptor &field() const noexcept { return *field_; }
        std::uint32_t coeff(int i) const noexcept { return c_[i]; }
        const Coeffs &coeffs() const noexcept { return c_; }

        std::uint64_t index() const noexcept
        {
            std::uint64_t idx = 0;
            for (int i = field_->f_ - 1; i >= 0; --i)
                idx = idx * field_->p_ + c_[i];
            return idx;
        }

        bool is_zero() const noexcept
        {
            for (int i = 0; i < field_->f_; ++i)
                if (c_[i])
                    return false;
            return true;
        }
        bool is_one() const noexcept { return c_[0] == 1 && in_prime_subfield(); }
        explicit operator bool() const noexcept { return !is_zero(); }

        bool in_prime_subfield() const noexcept
        {
            for (int i = 1; i < field_->f_; ++i)
                if (c_[i])
                    return false;
            return true;
        }

        /// Same value viewed in another field of the same characteristic; the
        /// value must lie in the prime subfield.
        FqElement lift_to(const FieldDescriptor &target) const
        {
            if (target.p_ != field_->p_ || !in_prime_subfield())
                raise(ErrorKind::FieldMismatch, "cannot embed " + to_string() + " into " + target.describe());
            return from_int(target, c_[0]);
        }

        FqElement &operator+=(const FqElement &o)
        {
            check_same(o);
            const std::uint32_t p = field_->p_;
            for (int i = 0; i < field_->f_; ++i) {
                std::uint32_t s = c_[i] + o.c_[i];
                c_[i] = s >= p ? s - p : s;
            }
            return *this;
        }

        FqElement &operator-=(const FqElement &o)
        {
            check_same(o);
            const std::uint32_t p = field_->p_;
            for (int i = 0; i < field_->f_; ++i)
                c_[i] = c_[i] >= o.c_[i] ? c_[i] - o.c_[i] : c_[i] + p - o.c_[i];
            return *this;
        }

        FqElement operator-() const noexcept
        {
            FqElement r(*field_);
            for (int i = 0; i < field_->f_; ++i)
                r.c_[i] = c_[i] ? field_->p_ - c_[i] : 0;
            return r;
        }

        FqElement &operator*=(const FqElement &o)
        {
            check_same(o);
            const std::uint64_t p = field_->p_;
            const int f = field_->f_;
            if (f == 1) {
                c_[0] = static_cast<std::uint32_t>(std::uint64_t(c_[0]) * o.c_[0] % p);
                return *this;
            }
            std::array<std::uint64_t, 2 * kMaxExtensionDegree - 1> t{};
            for (int i = 0; i < f; ++i) {
                if (!c_[i])
                    continue;
                for (int j = 0; j < f; ++j)
                    t[i + j] += std::uint64_t(c_[i]) * o.c_[j] % p;
            }
            for (int k = 0; k < 2 * f - 1; ++k)
                t[k] %= p;
            const auto &m = field_->modulus_;
            for (int k = 2 * f - 2; k >= f; --k) {
                const std::uint64_t coef = t[k];
                if (!coef)
                    continue;
                for (int i = 0; i < f; ++i)
                    if (m[i])
                        t[k - f + i] = (t[k - f + i] + coef * (p - m[i])) % p;
            }
            for (int i = 0; i < f; ++i)
                c_[i] = static_cast<std::uint32_t>(t[i]);
            return *this;
        }

        FqElement &operator/=(const FqElement &o) { return *this *= o.inv(); }

        friend FqElement operator+(FqElement a, const FqElement &b) { return a += b; }
        friend FqElement operator-(FqElement a, const FqElement &b) { return a -= b; }
        friend FqElement operator*(FqElement a, const FqElement &b) { return a *= b; }
        friend FqElement operator/(FqElement a, const FqElement &b) { return a /= b; }

        friend bool operator==(const FqElement &a, const FqElement &b) noexcept
        {
            return a.field_ == b.field_ && a.c_ == b.c_;
        }

        /// Total order: characteristic, degree, then coefficients from c0 upward.
        friend std::strong_ordering operator<=>(const FqElement &a, const FqElement &b) noexcept
        {
            if (auto c = a.field_->characteristic() <=> b.field_->characteristic(); c != 0)
                return c;
            if (auto c = a.field_->degree() <=> b.field_->degree(); c != 0)
                return c;
            return a.c_ <=> b.c_;
        }

        FqElement pow(std::uint64_t e) const
        {
            FqElement r = from_int(*field_, 1), base = *this;
            while (e) {
                if (e & 1)
                    r *= base;
                e >>= 1;
                if (e)
                    base *= base;
            }
            return r;
        }

        FqElement pow(const BigInt &e) const
        {
            if (e < 0)
                return inv().pow(BigInt(-e));
            FqElement r = from_int(*field_, 1);
            const auto bits = e == 0 ? 0u : static_cast<unsigned>(boost::multiprecision::msb(e)) + 1;
            for (unsigned i = bits; i-- > 0;) {
                r *= r;
                if (boost::multiprecision::bit_test(e, i))
                    r *= *this;
            }
            return r;
        }

        FqElement inv() const
        {
            if (is_zero())
                raise(ErrorKind::DivisionByZero, "inverse of zero in " + field_->describe());
            if (field_->f_ == 1) {
                std::int64_t a = c_[0], m = field_->p_, x0 = 1, x1 = 0;
                while (m) {
                    std::int64_t q = a / m, t = a - q * m;
                    a = m;
                    m = t;
                    t = x0 - q * x1;
                    x0 = x1;
                    x1 = t;
                }
                return from_int(*field_, x0);
            }
            if (field_->q_small_)
                return pow(*field_->q_small_ - 2);
            return pow(field_->q_minus_2_);
        }

        /// a^p.
        FqElement frobenius() const { return field_->f_ == 1 ? *this : pow(std::uint64_t(field_->p_)); }

        bool is_square() const
        {
            if (is_zero())
                return true;
            if (field_->q_small_ && *field_->q_small_ <= kSquareTableLimit)
                return field_->square_table()[index()] != 0;
            if (field_->f_ == 1)
                return pow((std::uint64_t(field_->p_) - 1) / 2).is_one();
            return pow(field_->half_q_minus_1_).is_one();
        }

        /// A square root, or nullopt for a non-square.
        std::optional<FqElement> sqrt_opt() const;

        std::string to_string() const
        {
            if (field_->f_ == 1)
                return std::to_string(c_[0]);
            std::string s = std::to_string(c_[0]);
            for (int i = 1; i < field_->f_; ++i) {
                s += "+" + std::to_string(c_[i]) + "*u";
                if (i > 1)
                    s += "^" + std::to_string(i);
            }
            return s;
        }

        /// Accepts to_string() output, plain integers, and sums of terms
        /// `c`, `c*u`, `c*u^k`, `u`, `u^k` in any order.
        static FqElement parse(const FieldDescriptor &field, std::string_view text);

    private:
        void check_same(const FqElement &o) const
        {
            if (field_ != o.field_)
                raise(ErrorKind::FieldMismatch, field_->describe() + " vs " + o.field_->describe());
        }

        std::optional<FqElement> sqrt_prime() const;
        std::optional<FqElement> sqrt_quadratic() const;
        std::optional<FqElement> sqrt_tonelli_shanks() const;

        const FieldDescriptor *field_;
        Coeffs c_;
};

inline const std::vector<std::uint8_t> &FieldDescriptor::square_table() const
{
    std::call_once(squares_once_, [this] {
        if (!q_small_ || *q_small_ > kSquareTableLimit)
            raise(ErrorKind::UnsupportedRange, "square table requested for large field " + describe());
        const std::uint64_t q = *q_small_;
        std::vector<std::uint8_t> table(q, 0);
        for (std::uint64_t i = 0; i < q; ++i) {
            FqElement x = FqElement::from_index(*this, i);
            table[(x * x).index()] = 1;
        }
        squares_ = std::move(table);
    });
    return squares_;
}

inline std::optional<FqElement> FqElement::sqrt_prime() const
{
    using nt::mulmod;
    using nt::powmod;
    const std::uint64_t p = field_->p_, a = c_[0];
    if (powmod(a, (p - 1) / 2, p) != 1)
        return std::nullopt;
    if (p % 4 == 3)
        return from_int(*field_, std::int64_t(powmod(a, (p + 1) / 4, p)));
    std::uint64_t s = 0, t = p - 1;
    while (t % 2 == 0) {
        t /= 2;
        ++s;
    }
    std::uint64_t z = 2;
    while (powmod(z, (p - 1) / 2, p) != p - 1)
        ++z;
    std::uint64_t m = s, c = powmod(z, t, p), x = powmod(a, (t + 1) / 2, p), b = powmod(a, t, p);
    while (b != 1) {
        std::uint64_t i = 0, b2 = b;
        while (b2 != 1) {
            b2 = mulmod(b2, b2, p);
            ++i;
        }
        std::uint64_t g = c;
        for (std::uint64_t k = 0; k + 1 < m - i; ++k)
            g = mulmod(g, g, p);
        x = mulmod(x, g, p);
        c = mulmod(g, g, p);
        b = mulmod(b, c, p);
        m = i;
    }
    return from_int(*field_, std::int64_t(x));
}

// Norm descent in F_{p^2}. With u^2 + m1 u + m0 = 0, put w = u + m1/2 so that
// w^2 = beta is a non-residue of F_p, and write a = a0 + a1 w. If n^2 = a0^2 -
// beta a1^2 is the norm, one of (a0 +- n)/2 is a square x0^2 in F_p, and then
// sqrt(a) = x0 + (a1 / 2 x0) w.
inline std::optional<FqElement> FqElement::sqrt_quadratic() const
{
    const FieldDescriptor &F = *field_;
    Field base = make_field(F.p_, 1);
    auto in_base = [&](std::uint64_t v) { return from_int(*base, std::int64_t(v)); };
    const FqElement two = in_base(2), half = two.inv();
    const FqElement m1 = in_base(F.modulus_[1]), m0 = in_base(F.modulus_[0]);
    const FqElement shift = m1 * half; // w = u + shift
    const FqElement beta = shift * shift - m0;
    const FqElement a1 = in_base(c_[1]);
    const FqElement a0 = in_base(c_[0]) - a1 * shift;
    if (a1.is_zero()) {
        if (auto r = a0.sqrt_opt())
            return from_int(F, r->c_[0]);
        // a0 = beta * t^2  =>  sqrt(a0) = t w
        auto t = (a0 / beta).sqrt_opt();
        if (!t)
            return std::nullopt;
        FqElement r(F);
        r.c_[1] = t->c_[0];
        r.c_[0] = (*t * shift).c_[0];
        return r;
    }
    const FqElement norm = a0 * a0 - beta * a1 * a1;
    auto n = norm.sqrt_opt();
    if (!n)
        return std::nullopt;
    std::optional<FqElement> x0 = ((a0 + *n) * half).sqrt_opt();
    if (!x0 || x0->is_zero())
        x0 = ((a0 - *n) * half).sqrt_opt();
    if (!x0 || x0->is_zero())
        return std::nullopt;
    const FqElement x1 = a1 / (two * *x0);
    // back to the u basis: x0 + x1 (u + shift)
    std::array<std::int64_t, 2> coeffs{std::int64_t((*x0 + x1 * shift).c_[0]), std::int64_t(x1.c_[0])};
    FqElement r = from_coeffs(F, coeffs);
    if (r * r != *this)
        return std::nullopt;
    return r;
}

inline std::optional<FqElement> FqElement::sqrt_tonelli_shanks() const
{
    const FieldDescriptor &F = *field_;
    if (!is_square())
        return std::nullopt;
    BigInt t = F.q_ - 1;
    unsigned s = 0;
    while ((t & 1) == 0) {
        t >>= 1;
        ++s;
    }
    FqElement z(F);
    for (std::uint64_t idx = 2;; ++idx) {
        z = from_index(F, idx);
        if (!z.is_square())
            break;
    }
    unsigned m = s;
    FqElement c = z.pow(t), x = pow((t + 1) / 2), b = pow(t);
    while (!b.is_one()) {
        unsigned i = 0;
        FqElement b2 = b;
        while (!b2.is_one()) {
            b2 *= b2;
            ++i;
        }
        FqElement g = c;
        for (unsigned k = 0; k + 1 < m - i; ++k)
            g *= g;
        x *= g;
        c = g * g;
        b *= c;
        m = i;
    }
    return x;
}

inline std::optional<FqElement> FqElement::sqrt_opt() const
{
    if (is_zero())
        return *this;
    if (field_->f_ == 1)
        return sqrt_prime();
    if (field_->f_ == 2)
        return sqrt_quadratic();
    return sqrt_tonelli_shanks();
}

inline FqElement FqElement::parse(const FieldDescriptor &field, std::string_view text)
{
    auto fail = [&]() -> FqElement { raise(ErrorKind::ParseError, "bad field element '" + std::string(text) + "'"); };
    std::string compact;
    for (char ch : text)
        if (ch != ' ')
            compact += ch;
    if (compact.empty())
        return fail();
    std::vector<std::int64_t> coeffs(field.degree(), 0);
    const auto p = static_cast<std::int64_t>(field.characteristic());
    std::size_t pos = 0;
    while (pos <= compact.size()) {
        std::size_t end = compact.find('+', pos);
        if (end == std::string::npos)
            end = compact.size();
        std::string_view term(compact.data() + pos, end - pos);
        if (term.empty())
            return fail();
        bool negative = false;
        if (term.front() == '-') {
            negative = true;
            term.remove_prefix(1);
        }
        std::int64_t value = 1;
        int power = 0;
        std::size_t digits = 0;
        while (digits < term.size() && term[digits] >= '0' && term[digits] <= '9')
            ++digits;
        if (digits > 0) {
            if (digits > 12)
                return fail();
            value = std::stoll(std::string(term.substr(0, digits)));
            term.remove_prefix(digits);
            if (!term.empty()) {
                if (term.front() != '*')
                    return fail();
                term.remove_prefix(1);
            }
        }
        if (!term.empty()) {
            if (term.front() != 'u')
                return fail();
            term.remove_prefix(1);
            power = 1;
            if (!term.empty()) {
                if (term.front() != '^' || term.size() < 2)
                    return fail();
                term.remove_prefix(1);
                for (char ch : term)
                    if (ch < '0' || ch > '9')
                        return fail();
                if (term.size() > 2)
                    return fail();
                power = std::stoi(std::string(term));
            }
        } else if (digits == 0) {
            return fail();
        }
        if (power >= field.degree()) {
            if (field.degree() == 1 && power == 1)
                raise(ErrorKind::ParseError, "u does not exist in the prime field " + field.describe());
            return fail();
        }
        value %= p;
        coeffs[power] = (coeffs[power] + (negative ? p - value : value)) % p;
        pos = end + 1;
        if (end == compact.size())
            break;
    }
    return from_coeffs(field, coeffs);
}

inline Field make_field(std::uint64_t p, int f)
{
    if (f < 1 || f > kMaxExtensionDegree)
        raise(ErrorKind::UnsupportedRange, "extension degree " + std::to_string(f) + " outside [1, 12]");
    if (p < 3 || p >= kCharacteristicBound)
        raise(ErrorKind::UnsupportedRange, "characteristic " + std::to_string(p) + " outside [3, 2^31)");
    if (!nt::is_prime(p))
        raise(ErrorKind::CompositeP, std::to_string(p) + " is not prime");

    static std::mutex mutex;
    static std::map<std::pair<std::uint64_t, int>, std::weak_ptr<const FieldDescriptor>> registry;
    {
        std::lock_guard lock(mutex);
        if (auto it = registry.find({p, f}); it != registry.end())
            if (auto alive = it->second.lock())
                return alive;
    }
    auto modulus = detail::canonical_modulus(p, f);
    Field fresh(new FieldDescriptor(static_cast<std::uint32_t>(p), f, modulus));
    std::lock_guard lock(mutex);
    auto &slot = registry[{p, f}];
    if (auto alive = slot.lock())
        return alive;
    slot = fresh;
    if (registry.size() > 4096)
        std::erase_if(registry, [](const auto &kv) { return kv.second.expired(); });
    return fresh;
}

/// Elements together with shared ownership of their field, for results whose
/// field would otherwise not outlive the call that created it.
struct ElementList
{
    Field field;
    std::vector<FqElement> values;

    auto begin() const noexcept { return values.begin(); }
    auto end() const noexcept { return values.end(); }
    std::size_t size() const noexcept { return values.size(); }
    bool empty() const noexcept { return values.empty(); }
    const FqElement &operator[](std::size_t i) const { return values[i]; }

    friend bool operator==(const ElementList &a, const ElementList &b) { return a.values == b.values; }
};

} // namespace hdrflow
