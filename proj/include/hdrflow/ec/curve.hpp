#pragma once

// Elliptic curves y^2 = x^3 + A x + B over F_q (p >= 5) and their points.
// Legendre curves y^2 = x(x-1)(x-lambda) are stored through their depressed
// Weierstrass model; points always use Weierstrass coordinates.

#include <compare>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "hdrflow/arith/field.hpp"

namespace hdrflow {

enum class CurveForm { Weierstrass, Legendre };

/// #E(F_q) = q + 1 - trace.
struct GroupOrder
{
    std::uint64_t order = 0;
    std::int64_t trace = 0;

    friend bool operator==(const GroupOrder &, const GroupOrder &) = default;
};

namespace detail {

struct Affine
{
    FqElement x, y;
    bool infinity;

    static Affine at_infinity(const FieldDescriptor &F) { return {FqElement(F), FqElement(F), true}; }

    friend bool operator==(const Affine &a, const Affine &b)
    {
        if (a.infinity || b.infinity)
            return a.infinity == b.infinity;
        return a.x == b.x && a.y == b.y;
    }
};

inline Affine affine_neg(const Affine &P)
{
    if (P.infinity)
        return P;
    return {P.x, -P.y, false};
}

inline Affine affine_add(const FqElement &A, const Affine &P, const Affine &Q)
{
    if (P.infinity)
        return Q;
    if (Q.infinity)
        return P;
    FqElement slope(A.field());
    if (P.x == Q.x) {
        if (P.y != Q.y || P.y.is_zero())
            return Affine::at_infinity(A.field());
        const FqElement x2 = P.x * P.x;
        slope = (x2 + x2 + x2 + A) / (P.y + P.y);
    } else {
        slope = (Q.y - P.y) / (Q.x - P.x);
    }
    FqElement x3 = slope * slope - P.x - Q.x;
    FqElement y3 = slope * (P.x - x3) - P.y;
    return {x3, y3, false};
}

inline Affine affine_mul(const FqElement &A, Affine P, std::uint64_t n)
{
    Affine acc = Affine::at_infinity(A.field());
    while (n) {
        if (n & 1)
            acc = affine_add(A, acc, P);
        n >>= 1;
        if (n)
            P = affine_add(A, P, P);
    }
    return acc;
}

inline Affine affine_mul(const FqElement &A, const Affine &P, const BigInt &n)
{
    if (n < 0)
        return affine_neg(affine_mul(A, P, BigInt(-n)));
    Affine acc = Affine::at_infinity(A.field());
    if (n == 0)
        return acc;
    const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(n)) + 1;
    for (unsigned i = bits; i-- > 0;) {
        acc = affine_add(A, acc, acc);
        if (boost::multiprecision::bit_test(n, i))
            acc = affine_add(A, acc, P);
    }
    return acc;
}

} // namespace detail

class Point;

class Curve
{
    public:
        static Curve weierstrass(const FqElement &a, const FqElement &b)
        {
            check_characteristic(a.field());
            if (&a.field() != &b.field())
                raise(ErrorKind::FieldMismatch, "curve coefficients from different fields");
            const FqElement disc = FqElement::from_int(a.field(), 4) * a * a * a + FqElement::from_int(a.field(), 27) * b * b;
            if (disc.is_zero())
                raise(ErrorKind::InvalidCurve, "singular Weierstrass curve A=" + a.to_string() + " B=" + b.to_string());
            return Curve(std::make_shared<Impl>(a.field().shared_from_this(), a, b, CurveForm::Weierstrass, std::nullopt));
        }

        static Curve legendre(const FqElement &lambda)
        {
            const FieldDescriptor &F = lambda.field();
            check_characteristic(F);
            if (lambda.is_zero() || lambda.is_one())
                raise(ErrorKind::InvalidCurve, "Legendre parameter must avoid 0 and 1");
            // y^2 = x^3 + a2 x^2 + a4 x with a2 = -(1 + lambda), a4 = lambda
            const FqElement one = FqElement::from_int(F, 1);
            const FqElement third = FqElement::from_int(F, 3).inv();
            const FqElement a2 = -(one + lambda), a4 = lambda;
            const FqElement A = a4 - a2 * a2 * third;
            const FqElement B = FqElement::from_int(F, 2) * a2 * a2 * a2 * third * third * third - a2 * a4 * third;
            return Curve(std::make_shared<Impl>(F.shared_from_this(), A, B, CurveForm::Legendre, lambda));
        }

        const FieldDescriptor &field() const noexcept { return *impl_->field; }
        Field field_handle() const noexcept { return impl_->field; }
        const FqElement &a() const noexcept { return impl_->a; }
        const FqElement &b() const noexcept { return impl_->b; }
        CurveForm form() const noexcept { return impl_->form; }
        const std::optional<FqElement> &legendre_parameter() const noexcept { return impl_->lambda; }

        /// Shift taking Legendre x-coordinates to the Weierstrass model: X = x + shift.
        FqElement legendre_x_shift() const
        {
            if (!impl_->lambda)
                return FqElement(field());
            const FqElement one = FqElement::from_int(field(), 1);
            return -(one + *impl_->lambda) * FqElement::from_int(field(), 3).inv();
        }

        FqElement rhs(const FqElement &x) const { return (x * x + a()) * x + b(); }
        bool contains(const FqElement &x, const FqElement &y) const { return y * y == rhs(x); }

        Point infinity() const;
        Point point(const FqElement &x, const FqElement &y) const;
        std::optional<Point> lift_x(const FqElement &x) const;
        template <class Rng>
        Point random_point(Rng &rng) const;

        /// Quadratic twist by a non-square d: y^2 = x^3 + d^2 A x + d^3 B.
        Curve quadratic_twist(const FqElement &d) const { return weierstrass(d * d * a(), d * d * d * b()); }

        std::optional<GroupOrder> cached_order() const
        {
            std::lock_guard lock(impl_->cache_mutex);
            return impl_->order;
        }

        /// Write-once: the first stored value wins.
        void store_order(const GroupOrder &order) const
        {
            std::lock_guard lock(impl_->cache_mutex);
            if (!impl_->order)
                impl_->order = order;
        }

        friend bool operator==(const Curve &x, const Curve &y)
        {
            return x.impl_ == y.impl_ ||
                   (x.impl_->field == y.impl_->field && x.a() == y.a() && x.b() == y.b());
        }

        std::string describe() const
        {
            std::string s = "y^2 = x^3 + (" + a().to_string() + ")*x + (" + b().to_string() + ") over " + field().describe();
            if (impl_->lambda)
                s += " [Legendre lambda=" + impl_->lambda->to_string() + "]";
            return s;
        }

        detail::Affine affine(const Point &P) const;

    private:
        friend class Point;

        struct Impl
        {
            Impl(Field f, FqElement a_, FqElement b_, CurveForm form_, std::optional<FqElement> lambda_)
                : field{std::move(f)}, a{a_}, b{b_}, form{form_}, lambda{lambda_} { }

            Field field;
            FqElement a, b;
            CurveForm form;
            std::optional<FqElement> lambda;
            mutable std::mutex cache_mutex;
            mutable std::optional<GroupOrder> order;
        };

        explicit Curve(std::shared_ptr<const Impl> impl) : impl_{std::move(impl)} { }

        static void check_characteristic(const FieldDescriptor &F)
        {
            if (F.characteristic() < 5)
                raise(ErrorKind::SmallCharacteristic, "curves need p >= 5, got " + F.describe());
        }

        std::shared_ptr<const Impl> impl_;
};

/// A point of E(F_q) in affine coordinates, or the point at infinity O.
class Point
{
    public:
        bool is_infinity() const noexcept { return pt_.infinity; }
        const FqElement &x() const noexcept { return pt_.x; }
        const FqElement &y() const noexcept { return pt_.y; }
        Curve curve() const { return Curve(curve_); }
        const detail::Affine &affine() const noexcept { return pt_; }

        friend Point operator+(const Point &P, const Point &Q)
        {
            P.check_same(Q);
            return Point(P.curve_, detail::affine_add(P.curve_->a, P.pt_, Q.pt_));
        }
        Point operator-() const { return Point(curve_, detail::affine_neg(pt_)); }
        friend Point operator-(const Point &P, const Point &Q) { return P + (-Q); }

        Point times(std::int64_t n) const
        {
            if (n < 0)
                return Point(curve_, detail::affine_neg(detail::affine_mul(curve_->a, pt_, static_cast<std::uint64_t>(-n))));
            return Point(curve_, detail::affine_mul(curve_->a, pt_, static_cast<std::uint64_t>(n)));
        }
        Point times(const BigInt &n) const { return Point(curve_, detail::affine_mul(curve_->a, pt_, n)); }

        friend bool operator==(const Point &P, const Point &Q)
        {
            return P.same_curve(Q) && P.pt_ == Q.pt_;
        }

        /// O first, then by x, then by y.
        friend std::strong_ordering operator<=>(const Point &P, const Point &Q)
        {
            if (P.pt_.infinity || Q.pt_.infinity)
                return Q.pt_.infinity <=> P.pt_.infinity;
            if (auto c = P.pt_.x <=> Q.pt_.x; c != 0)
                return c;
            return P.pt_.y <=> Q.pt_.y;
        }

        std::string to_string() const
        {
            return pt_.infinity ? std::string("inf") : pt_.x.to_string() + "," + pt_.y.to_string();
        }

    private:
        friend class Curve;

        Point(std::shared_ptr<const Curve::Impl> curve, detail::Affine pt) : curve_{std::move(curve)}, pt_{std::move(pt)} { }

        bool same_curve(const Point &Q) const { return Curve(curve_) == Curve(Q.curve_); }

        void check_same(const Point &Q) const
        {
            if (!same_curve(Q))
                raise(ErrorKind::CurveMismatch, "points on different curves");
        }

        std::shared_ptr<const Curve::Impl> curve_;
        detail::Affine pt_;
};

inline Point Curve::infinity() const { return Point(impl_, detail::Affine::at_infinity(field())); }

inline Point Curve::point(const FqElement &x, const FqElement &y) const
{
    if (&x.field() != &field() || &y.field() != &field())
        raise(ErrorKind::FieldMismatch, "point coordinates outside " + field().describe());
    if (!contains(x, y))
        raise(ErrorKind::InvalidCurve, "(" + x.to_string() + ", " + y.to_string() + ") is not on " + describe());
    return Point(impl_, {x, y, false});
}

inline std::optional<Point> Curve::lift_x(const FqElement &x) const
{
    if (auto y = rhs(x).sqrt_opt())
        return Point(impl_, {x, *y, false});
    return std::nullopt;
}

template <class Rng>
Point Curve::random_point(Rng &rng) const
{
    while (true) {
        if (auto P = lift_x(FqElement::random(field(), rng)))
            return (rng() & 1) ? -*P : *P;
    }
}

inline detail::Affine Curve::affine(const Point &P) const
{
    if (!(Curve(P.curve_) == *this))
        raise(ErrorKind::CurveMismatch, "point on a different curve");
    return P.pt_;
}

inline Point add(const Point &P, const Point &Q) { return P + Q; }
inline Point neg(const Point &P) { return -P; }
inline Point scalar_mul(const Point &P, std::int64_t n) { return P.times(n); }
inline Point scalar_mul(const Point &P, const BigInt &n) { return P.times(n); }

} // namespace hdrflow
