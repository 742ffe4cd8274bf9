#pragma once

// The classical modular polynomials Phi_2 and Phi_3 with integer
// coefficients, their reductions modulo p, and a per-run check of the
// hardcoded data against Velu's formulas.

#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "hdrflow/hecke/velu.hpp"

namespace hdrflow {

class ModularPolynomial
{
    public:
        struct Term
        {
            int i, j; // X^i Y^j
            BigInt coeff;
        };

        int level() const noexcept { return l_; }
        const std::vector<Term> &terms() const noexcept { return terms_; }

        BigInt coeff(int i, int j) const
        {
            for (const Term &t : terms_)
                if (t.i == i && t.j == j)
                    return t.coeff;
            return 0;
        }

        int degree_x() const
        {
            int d = 0;
            for (const Term &t : terms_)
                d = std::max(d, t.i);
            return d;
        }

        int degree_y() const
        {
            int d = 0;
            for (const Term &t : terms_)
                d = std::max(d, t.j);
            return d;
        }

        bool is_symmetric() const
        {
            for (const Term &t : terms_)
                if (coeff(t.j, t.i) != t.coeff)
                    return false;
            return true;
        }

        /// Coefficients reduced into F, as a (l+2) x (l+2) table indexed [i][j].
        const std::vector<std::vector<FqElement>> &reduced(const FieldDescriptor &F) const
        {
            std::lock_guard lock(cache_mutex_);
            const auto key = std::make_pair(F.characteristic(), F.degree());
            auto it = cache_.find(key);
            if (it == cache_.end() || it->second.field.get() != &F) {
                Reduction r{F.shared_from_this(), {}};
                const int n = l_ + 2;
                r.table.assign(n, std::vector<FqElement>(n, FqElement(F)));
                for (const Term &t : terms_)
                    r.table[t.i][t.j] = FqElement::from_big(F, t.coeff);
                it = cache_.insert_or_assign(key, std::move(r)).first;
            }
            return it->second.table;
        }

        FqElement operator()(const FqElement &x, const FqElement &y) const
        {
            if (&x.field() != &y.field())
                raise(ErrorKind::FieldMismatch, "modular polynomial arguments from different fields");
            const auto &t = reduced(x.field());
            FqElement acc(x.field()), xp = FqElement::from_int(x.field(), 1);
            for (std::size_t i = 0; i < t.size(); ++i) {
                FqElement row(x.field()), yp = FqElement::from_int(x.field(), 1);
                for (std::size_t j = 0; j < t.size(); ++j) {
                    row += t[i][j] * yp;
                    yp *= y;
                }
                acc += row * xp;
                xp *= x;
            }
            return acc;
        }

        /// Phi_l(j, Y) as a polynomial in Y over the field of j.
        Poly specialize_x(const FqElement &j) const
        {
            const auto &t = reduced(j.field());
            std::vector<FqElement> c(t.size(), FqElement(j.field()));
            FqElement jp = FqElement::from_int(j.field(), 1);
            for (std::size_t i = 0; i < t.size(); ++i) {
                for (std::size_t k = 0; k < t.size(); ++k)
                    c[k] += t[i][k] * jp;
                jp *= j;
            }
            return Poly(j.field(), std::move(c));
        }

        /// Velu check on ordinary curves over F_101 and F_103; raises
        /// ValidationFailed if any codomain j is not a root of Phi_l(j(E), Y).
        void validate() const
        {
            if (!is_symmetric() || degree_x() != l_ + 1 || degree_y() != l_ + 1)
                raise(ErrorKind::ValidationFailed, "Phi_" + std::to_string(l_) + " is not symmetric of bidegree (l+1, l+1)");
            std::mt19937_64 rng(0x5eed0000ULL + static_cast<unsigned>(l_));
            int checked = 0;
            for (int attempt = 0; checked < kValidationCurves && attempt < 100 * kValidationCurves; ++attempt) {
                const std::uint64_t p = attempt % 2 ? 103 : 101;
                const Field F = make_field(p, 1);
                const FqElement a = FqElement::random(*F, rng), b = FqElement::random(*F, rng);
                if ((FqElement::from_int(*F, 4) * a * a * a + FqElement::from_int(*F, 27) * b * b).is_zero())
                    continue;
                const Curve E = Curve::weierstrass(a, b);
                if (is_supersingular(E))
                    continue;
                const auto isogenies = velu_isogenies(E, l_);
                if (isogenies.empty())
                    continue;
                const FieldDescriptor &W = isogenies.front().j.field();
                const FqElement j = j_invariant(E).lift_to(W);
                for (const auto &iso : isogenies)
                    if (!(*this)(j, iso.j).is_zero())
                        raise(ErrorKind::ValidationFailed, "Phi_" + std::to_string(l_) + " fails the Velu check on " + E.describe());
                ++checked;
            }
            if (checked < kValidationCurves)
                raise(ErrorKind::ValidationFailed, "too few curves with rational kernels for the Velu check");
        }

        static constexpr int kValidationCurves = 20;

        /// Builds from the upper triangle (i >= j), mirroring the rest.
        ModularPolynomial(int l, const std::vector<std::tuple<int, int, const char *>> &upper) : l_{l}
        {
            for (const auto &[i, j, text] : upper) {
                terms_.push_back({i, j, BigInt(text)});
                if (i != j)
                    terms_.push_back({j, i, BigInt(text)});
            }
        }

    private:
        struct Reduction
        {
            Field field;
            std::vector<std::vector<FqElement>> table;
        };

        int l_;
        std::vector<Term> terms_;
        mutable std::mutex cache_mutex_;
        mutable std::map<std::pair<std::uint32_t, int>, Reduction> cache_;
};

namespace detail {

inline const ModularPolynomial &phi2_data()
{
    static const ModularPolynomial phi(2, {
        {3, 0, "1"},
        {2, 2, "-1"},
        {2, 1, "1488"},
        {2, 0, "-162000"},
        {1, 1, "40773375"},
        {1, 0, "8748000000"},
        {0, 0, "-157464000000000"},
    });
    return phi;
}

inline const ModularPolynomial &phi3_data()
{
    static const ModularPolynomial phi(3, {
        {4, 0, "1"},
        {3, 3, "-1"},
        {3, 2, "2232"},
        {3, 1, "-1069956"},
        {3, 0, "36864000"},
        {2, 2, "2587918086"},
        {2, 1, "8900222976000"},
        {2, 0, "452984832000000"},
        {1, 1, "-770845966336000000"},
        {1, 0, "1855425871872000000000"},
    });
    return phi;
}

} // namespace detail

/// Phi_l for l in {2, 3}, validated against Velu once per process.
inline const ModularPolynomial &modular_polynomial(int l)
{
    detail::check_level(l);
    static std::once_flag once2, once3;
    const ModularPolynomial &phi = l == 2 ? detail::phi2_data() : detail::phi3_data();
    std::call_once(l == 2 ? once2 : once3, [&] { phi.validate(); });
    return phi;
}

} // namespace hdrflow
