// Runs the Higgs-de Rham flow on a few states over an ordinary and a
// supersingular curve and prints each trace with its verdict.

#include <cstdio>

#include "hdrflow.hpp"

namespace {

void show(const hdrflow::Curve &E, const char *state)
{
    const auto trace = hdrflow::decide_periodicity(hdrflow::HiggsState::parse(state, E), E, 8);
    std::printf("  %-18s", state);
    for (std::size_t i = 1; i < trace.states.size(); ++i)
        std::printf(" -> %s", trace.states[i].to_string().c_str());
    std::printf("   %s\n", trace.verdict.to_string().c_str());
}

} // namespace

int main()
{
    using namespace hdrflow;
    const Field F = make_field(11, 1);
    const Curve ordinary = Curve::weierstrass(FqElement::from_int(*F, 1), FqElement::from_int(*F, 1));
    const Curve super = Curve::weierstrass(FqElement::from_int(*F, 0), FqElement::from_int(*F, 1));
    for (const Curve *E : {&ordinary, &super}) {
        std::printf("%s (%s)\n", E->describe().c_str(), is_supersingular(*E) ? "supersingular" : "ordinary");
        for (const char *state : {"unif", "N", "line:inf+line:inf", "ext:1,1"})
            show(*E, state);
    }
    // line bundles from points: the period is the order of p modulo ord(P)
    std::printf("line bundles on the ordinary curve\n");
    int shown = 0;
    for (std::uint64_t i = 0; i < 11 && shown < 3; ++i) {
        const auto P = ordinary.lift_x(FqElement::from_int(*F, static_cast<std::int64_t>(i)));
        if (!P || point_order(*P) <= 2)
            continue;
        const std::string literal = "line:" + std::to_string(i) + "," + ordinary.affine(*P).y.to_string();
        std::printf("  ord(P) = %llu\n", static_cast<unsigned long long>(point_order(*P)));
        show(ordinary, literal.c_str());
        ++shown;
    }
}
