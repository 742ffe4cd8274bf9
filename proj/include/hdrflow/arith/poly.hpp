#pragma once

// Univariate polynomials over F_q with root finding by distinct-degree
// reduction (gcd with x^q - x) followed by equal-degree splitting.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hdrflow/arith/field.hpp"

namespace hdrflow {

class Poly
{
    public:
        explicit Poly(const FieldDescriptor &field) : field_{field.shared_from_this()} { }
        Poly(const FieldDescriptor &field, std::vector<FqElement> coeffs)
            : field_{field.shared_from_this()}, c_{std::move(coeffs)}
        {
            for (const auto &c : c_)
                if (&c.field() != field_.get())
                    raise(ErrorKind::FieldMismatch, "coefficient outside " + field_->describe());
            normalize();
        }

        static Poly from_ints(const FieldDescriptor &field, std::initializer_list<std::int64_t> coeffs)
        {
            std::vector<FqElement> c;
            for (auto v : coeffs)
                c.push_back(FqElement::from_int(field, v));
            return Poly(field, std::move(c));
        }

        static Poly constant(const FqElement &c) { return Poly(c.field(), {c}); }
        static Poly monomial(const FieldDescriptor &field, std::size_t degree)
        {
            std::vector<FqElement> c(degree + 1, FqElement(field));
            c[degree] = FqElement::from_int(field, 1);
            return Poly(field, std::move(c));
        }
        /// x - r
        static Poly linear_root(const FqElement &r) { return Poly(r.field(), {-r, FqElement::from_int(r.field(), 1)}); }

        const FieldDescriptor &field() const noexcept { return *field_; }
        bool is_zero() const noexcept { return c_.empty(); }
        /// -1 for the zero polynomial.
        int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
        const std::vector<FqElement> &coeffs() const noexcept { return c_; }
        FqElement coeff(std::size_t i) const { return i < c_.size() ? c_[i] : FqElement(*field_); }
        FqElement leading() const { return c_.empty() ? FqElement(*field_) : c_.back(); }

        FqElement operator()(const FqElement &x) const
        {
            FqElement acc(*field_);
            for (auto it = c_.rbegin(); it != c_.rend(); ++it)
                acc = acc * x + *it;
            return acc;
        }

        Poly &operator+=(const Poly &o)
        {
            check_same(o);
            if (o.c_.size() > c_.size())
                c_.resize(o.c_.size(), FqElement(*field_));
            for (std::size_t i = 0; i < o.c_.size(); ++i)
                c_[i] += o.c_[i];
            normalize();
            return *this;
        }

        Poly &operator-=(const Poly &o)
        {
            check_same(o);
            if (o.c_.size() > c_.size())
                c_.resize(o.c_.size(), FqElement(*field_));
            for (std::size_t i = 0; i < o.c_.size(); ++i)
                c_[i] -= o.c_[i];
            normalize();
            return *this;
        }

        friend Poly operator+(Poly a, const Poly &b) { return a += b; }
        friend Poly operator-(Poly a, const Poly &b) { return a -= b; }

        friend Poly operator*(const Poly &a, const Poly &b)
        {
            a.check_same(b);
            if (a.is_zero() || b.is_zero())
                return Poly(*a.field_);
            std::vector<FqElement> t(a.c_.size() + b.c_.size() - 1, FqElement(*a.field_));
            for (std::size_t i = 0; i < a.c_.size(); ++i) {
                if (a.c_[i].is_zero())
                    continue;
                for (std::size_t j = 0; j < b.c_.size(); ++j)
                    t[i + j] += a.c_[i] * b.c_[j];
            }
            return Poly(*a.field_, std::move(t));
        }

        Poly scaled(const FqElement &s) const
        {
            Poly r = *this;
            for (auto &c : r.c_)
                c *= s;
            r.normalize();
            return r;
        }

        Poly monic() const { return is_zero() ? *this : scaled(leading().inv()); }

        Poly derivative() const
        {
            if (c_.size() <= 1)
                return Poly(*field_);
            std::vector<FqElement> d;
            for (std::size_t i = 1; i < c_.size(); ++i)
                d.push_back(c_[i] * FqElement::from_int(*field_, static_cast<std::int64_t>(i % field_->characteristic())));
            return Poly(*field_, std::move(d));
        }

        /// (quotient, remainder)
        friend std::pair<Poly, Poly> divmod(const Poly &a, const Poly &b)
        {
            a.check_same(b);
            if (b.is_zero())
                raise(ErrorKind::DivisionByZero, "polynomial division by zero");
            Poly r = a;
            if (a.degree() < b.degree())
                return {Poly(*a.field_), r};
            const FqElement lead_inv = b.leading().inv();
            const std::size_t db = b.c_.size() - 1;
            std::vector<FqElement> q(a.c_.size() - db, FqElement(*a.field_));
            for (std::size_t k = r.c_.size(); k-- > db;) {
                const FqElement coef = r.c_[k] * lead_inv;
                q[k - db] = coef;
                if (coef.is_zero())
                    continue;
                for (std::size_t i = 0; i <= db; ++i)
                    r.c_[k - db + i] -= coef * b.c_[i];
            }
            r.normalize();
            return {Poly(*a.field_, std::move(q)), r};
        }

        friend Poly operator%(const Poly &a, const Poly &b) { return divmod(a, b).second; }
        friend Poly operator/(const Poly &a, const Poly &b) { return divmod(a, b).first; }

        friend bool operator==(const Poly &a, const Poly &b) noexcept { return a.field_ == b.field_ && a.c_ == b.c_; }

        /// Same polynomial over a larger field of the same characteristic;
        /// coefficients must lie in the prime subfield.
        Poly lift_to(const FieldDescriptor &target) const
        {
            std::vector<FqElement> c;
            for (const auto &x : c_)
                c.push_back(x.lift_to(target));
            return Poly(target, std::move(c));
        }

        std::string to_string(std::string_view var = "x") const
        {
            if (is_zero())
                return "0";
            std::string s;
            for (std::size_t i = c_.size(); i-- > 0;) {
                if (c_[i].is_zero())
                    continue;
                if (!s.empty())
                    s += " + ";
                bool unit = c_[i].is_one();
                if (!unit || i == 0)
                    s += field_->degree() > 1 ? "(" + c_[i].to_string() + ")" : c_[i].to_string();
                if (i > 0) {
                    if (!unit)
                        s += "*";
                    s += var;
                    if (i > 1)
                        s += "^" + std::to_string(i);
                }
            }
            return s;
        }

    private:
        void normalize()
        {
            while (!c_.empty() && c_.back().is_zero())
                c_.pop_back();
        }

        void check_same(const Poly &o) const
        {
            if (field_ != o.field_)
                raise(ErrorKind::FieldMismatch, field_->describe() + " vs " + o.field_->describe());
        }

        // keeps the descriptor alive for the coefficients
        std::shared_ptr<const FieldDescriptor> field_;
        std::vector<FqElement> c_;
};

inline Poly mul(const Poly &a, const Poly &b) { return a * b; }
inline Poly mod_reduce(const Poly &a, const Poly &m) { return a % m; }

/// Monic gcd; gcd(0, 0) = 0.
inline Poly gcd(Poly a, Poly b)
{
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

inline bool squarefree_test(const Poly &h)
{
    if (h.is_zero())
        return false;
    return gcd(h, h.derivative()).degree() == 0;
}

/// base^e mod m
inline Poly powmod(Poly base, const BigInt &e, const Poly &m)
{
    Poly acc = Poly::constant(FqElement::from_int(m.field(), 1)) % m;
    base = base % m;
    if (e <= 0)
        return acc;
    const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(e)) + 1;
    for (unsigned i = bits; i-- > 0;) {
        acc = (acc * acc) % m;
        if (boost::multiprecision::bit_test(e, i))
            acc = (acc * base) % m;
    }
    return acc;
}

struct RootMultiplicity
{
    FqElement root;
    int multiplicity;
};

namespace detail {

// g is a nonzero, squarefree, product of distinct linear factors.
inline void split_linear_factors(const Poly &g, std::mt19937_64 &rng, std::vector<FqElement> &out)
{
    if (g.degree() <= 0)
        return;
    if (g.degree() == 1) {
        const Poly m = g.monic();
        out.push_back(-m.coeff(0));
        return;
    }
    const FieldDescriptor &F = g.field();
    const BigInt half = (F.order() - 1) / 2;
    const FqElement one = FqElement::from_int(F, 1);
    while (true) {
        const FqElement delta = FqElement::random(F, rng);
        Poly shifted(F, {delta, one});
        Poly w = powmod(shifted, half, g) - Poly::constant(one);
        Poly d = gcd(g, w);
        if (d.degree() > 0 && d.degree() < g.degree()) {
            split_linear_factors(d, rng, out);
            split_linear_factors(g / d, rng, out);
            return;
        }
    }
}

} // namespace detail

/// Roots of h in its coefficient field with multiplicities, ascending by
/// element order. The zero polynomial has no well-defined root list and
/// yields an empty one.
inline std::vector<RootMultiplicity> roots_in_fq(const Poly &h)
{
    std::vector<RootMultiplicity> result;
    if (h.degree() <= 0)
        return result;
    const FieldDescriptor &F = h.field();
    const Poly x = Poly::monomial(F, 1);
    Poly xq = powmod(x, F.order(), h);
    Poly g = gcd(h, xq - x);
    std::vector<FqElement> distinct;
    std::mt19937_64 rng(0x5eed0f4007ULL ^ F.characteristic());
    detail::split_linear_factors(g, rng, distinct);
    std::sort(distinct.begin(), distinct.end());
    for (const auto &r : distinct) {
        int mult = 0;
        Poly rest = h;
        const Poly lin = Poly::linear_root(r);
        while (true) {
            auto [quot, rem] = divmod(rest, lin);
            if (!rem.is_zero())
                break;
            ++mult;
            rest = std::move(quot);
        }
        result.push_back({r, mult});
    }
    return result;
}

} // namespace hdrflow
