#pragma once

#include <array>

namespace rothe::quad {

// Gauss-Legendre rules mapped to the reference interval [0, 1]; weights sum to 1.
struct Rule3 {
    static constexpr int size = 3;
    static constexpr std::array<double, 3> points{
        0.11270166537925831148, 0.5, 0.88729833462074168852};
    static constexpr std::array<double, 3> weights{
        5.0 / 18.0, 8.0 / 18.0, 5.0 / 18.0};
};

struct Rule5 {
    static constexpr int size = 5;
    static constexpr std::array<double, 5> points{
        0.04691007703066800360, 0.23076534494715845448, 0.5,
        0.76923465505284154552, 0.95308992296933199640};
    static constexpr std::array<double, 5> weights{
        0.11846344252809454376, 0.23931433524968323402, 0.28444444444444444444,
        0.23931433524968323402, 0.11846344252809454376};
};

}  // namespace rothe::quad
