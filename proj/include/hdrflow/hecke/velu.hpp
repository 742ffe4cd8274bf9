#pragma once

// Velu's formulas for isogenies of degree 2 and 3 with kernels defined over
// a fixed extension of the curve's field.

#include <cstdint>
#include <string>
#include <vector>

#include "hdrflow/arith/poly.hpp"
#include "hdrflow/ec/invariants.hpp"

namespace hdrflow {

struct VeluIsogeny
{
    Field field;         // the working field, kept alive for the values below
    FqElement kernel_x;  // x-coordinate generating the kernel, in the working field
    FqElement a, b;      // codomain y^2 = x^3 + a x + b
    FqElement j;         // codomain j-invariant
};

namespace detail {

inline void check_level(int l)
{
    if (l != 2 && l != 3)
        raise(ErrorKind::UnsupportedLevel, "only levels 2 and 3 are supported, got " + std::to_string(l));
}

/// Field embedding F_{p^f} -> F_{p^w} (f | w) sending u to the smallest root
/// of the modulus of F_{p^f} in F_{p^w}.
class Embedding
{
    public:
        Embedding(const FieldDescriptor &source, const FieldDescriptor &target)
            : target_{target.shared_from_this()}, image_of_u_{target}
        {
            if (source.characteristic() != target.characteristic() || target.degree() % source.degree() != 0)
                raise(ErrorKind::FieldMismatch, source.describe() + " does not embed in " + target.describe());
            if (source.degree() == 1) {
                image_of_u_ = FqElement(target);
                return;
            }
            std::vector<FqElement> m;
            for (std::uint32_t c : source.modulus())
                m.push_back(FqElement::from_int(target, c));
            const auto roots = roots_in_fq(Poly(target, std::move(m)));
            if (roots.empty())
                raise(ErrorKind::ValidationFailed, "modulus of " + source.describe() + " has no root in " + target.describe());
            image_of_u_ = roots.front().root;
        }

        FqElement operator()(const FqElement &x) const
        {
            const FieldDescriptor &T = *target_;
            if (x.field().degree() == 1)
                return x.lift_to(T);
            FqElement acc(T), power = FqElement::from_int(T, 1);
            for (int i = 0; i < x.field().degree(); ++i) {
                acc += FqElement::from_int(T, x.coeff(i)) * power;
                power *= image_of_u_;
            }
            return acc;
        }

    private:
        Field target_;
        FqElement image_of_u_;
};

} // namespace detail

/// Degree of the field searched for kernel x-coordinates: 2f for l = 2, 4f for l = 3.
inline int velu_working_degree(const Curve &E, int l)
{
    detail::check_level(l);
    const int w = (l == 2 ? 2 : 4) * E.field().degree();
    if (w > kMaxExtensionDegree)
        raise(ErrorKind::KernelSearchExceeded,
              "kernel search needs F_p^" + std::to_string(w) + ", beyond degree " + std::to_string(kMaxExtensionDegree));
    return w;
}

/// All l-isogenies from E whose kernel has its x-coordinate in the working
/// field, ordered by that x-coordinate.
inline std::vector<VeluIsogeny> velu_isogenies(const Curve &E, int l)
{
    const std::uint64_t p = E.field().characteristic();
    if (p == static_cast<std::uint64_t>(l))
        raise(ErrorKind::UnsupportedLevel, "level must differ from the characteristic");
    const Field W = make_field(p, velu_working_degree(E, l));
    const detail::Embedding embed(E.field(), *W);
    const FqElement A = embed(E.a()), B = embed(E.b());
    auto c = [&](std::int64_t v) { return FqElement::from_int(*W, v); };

    // l = 2: roots of x^3 + A x + B; l = 3: roots of psi_3 = 3x^4 + 6A x^2 + 12B x - A^2
    Poly kernel_poly = l == 2 ? Poly(*W, {B, A, c(0), c(1)}) : Poly(*W, {-(A * A), c(12) * B, c(6) * A, c(0), c(3)});

    std::vector<VeluIsogeny> out;
    for (const auto &[x, mult] : roots_in_fq(kernel_poly)) {
        FqElement t(*W), w(*W);
        if (l == 2) {
            t = c(3) * x * x + A;
            w = x * t;
        } else {
            t = c(2) * (c(3) * x * x + A);
            const FqElement u = c(4) * ((x * x + A) * x + B);
            w = u + x * t;
        }
        const FqElement a2 = A - c(5) * t, b2 = B - c(7) * w;
        out.push_back({W, x, a2, b2, j_invariant(Curve::weierstrass(a2, b2))});
    }
    return out;
}

/// Codomain j-invariants in the working field.
inline ElementList velu_isogenous_j(const Curve &E, int l)
{
    ElementList out;
    out.field = make_field(E.field().characteristic(), velu_working_degree(E, l));
    for (const auto &iso : velu_isogenies(E, l))
        out.values.push_back(iso.j);
    return out;
}

} // namespace hdrflow
