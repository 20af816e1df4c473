// fourth_order_terms.cpp — product tables for the seven fourth-order coefficients

#include "fourth_order_terms.hpp"

namespace nonmarkov::tcl::terms {

namespace {

constexpr Factor C(Arg a) { return {Fn::C, a}; }
constexpr Factor S(Arg a) { return {Fn::S, a}; }
constexpr Factor Sn(Arg a) { return {Fn::Sin, a}; }
constexpr Factor Cs(Arg a) { return {Fn::Cos, a}; }

// The two Lamb shifts differ only in the weight of the C*cos products on the first four lines
// (-3 for S+, +1 for S-).
Integrand lamb_shift(double cc_weight) {
    return {2.0,
            {
                {1.0, {S(D02), Sn(D03), C(D13), Sn(D12)}},
                {cc_weight, {C(D02), Cs(D03), C(D13), Sn(D12)}},
                {1.0, {C(D02), Sn(D03), S(D13), Sn(D12)}},
                {-1.0, {S(D02), Cs(D03), S(D13), Sn(D12)}},
                {1.0, {S(D03), Sn(D02), C(D12), Sn(D13)}},
                {cc_weight, {C(D03), Cs(D02), C(D12), Sn(D13)}},
                {1.0, {C(D03), Sn(D02), S(D12), Sn(D13)}},
                {-1.0, {S(D03), Cs(D02), S(D12), Sn(D13)}},
                {-1.0, {S(D03), Sn(D01), C(D12), Sn(D23)}},
                {-1.0, {C(D03), Cs(D01), C(D12), Sn(D23)}},
                {-1.0, {C(D03), Sn(D01), S(D12), Sn(D23)}},
                {1.0, {S(D03), Cs(D01), S(D12), Sn(D23)}},
            }};
}

Integrand transition(double pm) {
    return {-8.0,
            {
                {1.0, {C(D13), Sn(D03), C(D02), Sn(D12)}},
                {pm, {S(D13), Cs(D03), C(D02), Sn(D12)}},
                {1.0, {C(D12), Sn(D02), C(D03), Sn(D13)}},
                {pm, {S(D12), Cs(D02), C(D03), Sn(D13)}},
                {-pm, {S(D03), C(D12), Sn(D23), Cs(D01)}},
                {-pm, {C(D03), S(D12), Sn(D23), Cs(D01)}},
            }};
}

Integrand decoherence() {
    return {16.0,
            {
                {1.0, {C(D02), C(D13), Sn(D03), Sn(D12)}},
                {1.0, {S(D02), S(D13), Sn(D03), Sn(D12)}},
                {1.0, {C(D03), C(D12), Sn(D02), Sn(D13)}},
                {1.0, {S(D03), S(D12), Sn(D02), Sn(D13)}},
                {1.0, {C(D03), C(D12), Sn(D01), Sn(D23)}},
                {-1.0, {S(D03), S(D12), Sn(D01), Sn(D23)}},
            }};
}

// The alpha and beta integrands are not mirror images: alpha's first line carries S(t + t2)
// where beta's carries S(t - t2). Both are kept as written.
Integrand nonsecular_alpha() {
    return {-8.0,
            {
                {1.0, {S(P2), S(D13), Sn(P3), Sn(D12)}},
                {1.0, {S(P3), S(D12), Sn(P2), Sn(D13)}},
                {1.0, {C(D03), C(D12), Sn(P1), Sn(D23)}},
                {-1.0, {S(D03), S(D12), Sn(P1), Sn(D23)}},
            }};
}

Integrand nonsecular_beta() {
    return {8.0,
            {
                {1.0, {S(D02), S(D13), Cs(P3), Sn(D12)}},
                {1.0, {S(D03), S(D12), Cs(P2), Sn(D13)}},
                {1.0, {C(D03), C(D12), Cs(P1), Sn(D23)}},
                {-1.0, {S(D03), S(D12), Cs(P1), Sn(D23)}},
            }};
}

} // namespace

const Integrand& integrand(Selector which) {
    static const Integrand s_plus = lamb_shift(-3.0);
    static const Integrand s_minus = lamb_shift(1.0);
    static const Integrand g_plus = transition(1.0);
    static const Integrand g_minus = transition(-1.0);
    static const Integrand g_zero = decoherence();
    static const Integrand alpha = nonsecular_alpha();
    static const Integrand beta = nonsecular_beta();
    switch (which) {
    case Selector::SPlus: return s_plus;
    case Selector::SMinus: return s_minus;
    case Selector::GammaPlus: return g_plus;
    case Selector::GammaMinus: return g_minus;
    case Selector::GammaZero: return g_zero;
    case Selector::Alpha: return alpha;
    case Selector::Beta: return beta;
    }
    return g_zero;
}

} // namespace nonmarkov::tcl::terms
