// fourth_order_terms.hpp — the fourth-order integrands as a table of four-factor products
//
// Each product is coeff * f1 * f2 * f3 * f4 integrated over t >= t1 >= t2 >= t3 >= 0, where a
// factor is C or S of a time argument, or sin/cos of omega0 times it. Arguments are either the
// difference t_i - t_j (i < j, with t_0 = t) or the sum t + t_j.

#pragma once

#include "nonmarkov/tcl_coefficients.hpp"

#include <array>
#include <vector>

namespace nonmarkov::tcl::terms {

enum class Fn : unsigned char { C, S, Sin, Cos };

// Argument slots; the first six are differences, the last three sums t + t_j.
enum Arg : unsigned char { D01, D02, D03, D12, D13, D23, P1, P2, P3 };
inline constexpr int kArgCount = 9;

struct Factor {
    Fn fn;
    Arg arg;
};

struct Product {
    double coeff;
    std::array<Factor, 4> factors;
};

struct Integrand {
    double prefactor;
    std::vector<Product> products;
};

const Integrand& integrand(Selector which);

} // namespace nonmarkov::tcl::terms
